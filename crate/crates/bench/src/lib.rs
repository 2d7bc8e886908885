//! Inputs shared by the benchmarks.

use toric_core::families::Family;
use toric_core::SimplicialComplex;

/// Nerve complexes of the named families, tagged `family^n`.
pub fn corpus(members: &[(Family, usize)]) -> Vec<(String, SimplicialComplex)> {
    members.iter().map(|&(f, n)| (format!("{f}^{n}"), f.complex(n).expect("family member"))).collect()
}
