//! Bigraded Betti numbers of moment-angle complexes via full subcomplexes.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{bareiss_rank, rank_mod_p, FieldSpec};
use crate::vertex_set::VertexSet;

/// Ranks of reduced cohomology: entry `p + 1` is `dim H̃^p(K; F)` for `p >= -1`.
pub fn reduced_cohomology(k: &SimplicialComplex, field: FieldSpec) -> Vec<usize> {
    let faces = k.all_faces();
    reduced_cohomology_of_faces(&faces, field)
}

fn reduced_cohomology_of_faces(faces: &[VertexSet], field: FieldSpec) -> Vec<usize> {
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size: Vec<Vec<VertexSet>> = vec![Vec::new(); top + 1];
    for f in faces {
        by_size[f.len()].push(*f);
    }
    // ranks[s] = rank of the coboundary from size-s faces to size-(s+1) faces
    let mut ranks = vec![0usize; top + 2];
    for s in 0..top {
        let lower = &by_size[s];
        let upper = &by_size[s + 1];
        if lower.is_empty() || upper.is_empty() {
            continue;
        }
        let index: std::collections::HashMap<VertexSet, usize> =
            lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let rows: Vec<Vec<i64>> = upper
            .iter()
            .map(|f| {
                let mut row = vec![0i64; lower.len()];
                for (pos, v) in f.iter().enumerate() {
                    row[index[&f.without(v)]] = if pos % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        ranks[s] = match field {
            FieldSpec::Rational => bareiss_rank(&rows),
            FieldSpec::Prime(p) => rank_mod_p(&rows, p),
        };
    }
    (0..=top)
        .map(|s| by_size[s].len() - ranks[s] - if s > 0 { ranks[s - 1] } else { 0 })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    #[serde(rename = "J")]
    pub j: Vec<String>,
    pub rank: usize,
}

/// Nonzero multigraded Betti numbers `β^{-i,2J}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: Vec<(usize, VertexSet, usize)>,
    labels: Vec<String>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: &VertexSet) -> usize {
        self.entries.iter().find(|(a, b, _)| *a == i && b == j).map_or(0, |e| e.2)
    }

    pub fn to_entries(&self) -> Vec<BettiEntry> {
        self.entries
            .iter()
            .map(|(i, j, r)| BettiEntry { i: *i, j: j.iter().map(|v| self.labels[v].clone()).collect(), rank: *r })
            .collect()
    }

    /// `β^{-i,2j}` summed over `|J| = j`.
    pub fn bigraded(&self) -> Vec<(usize, usize, usize)> {
        let mut acc: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
        for (i, j, r) in &self.entries {
            *acc.entry((*i, j.len())).or_default() += r;
        }
        acc.into_iter().map(|((i, j), r)| (i, j, r)).collect()
    }
}

fn check_limit(k: &SimplicialComplex, limit: usize) -> Result<()> {
    let limit = limit.min(40);
    if k.num_vertices() > limit {
        return Err(Error::LimitExceeded { what: "vertex count", value: k.num_vertices(), limit });
    }
    Ok(())
}

/// `β^{-i,2J} = dim H̃^{|J|-i-1}(K_J)`.
pub fn betti_entry(k: &SimplicialComplex, i: usize, j: &VertexSet, field: FieldSpec) -> usize {
    let p = j.len() as isize - i as isize - 1;
    if p < -1 {
        return 0;
    }
    let h = reduced_cohomology(&k.full_subcomplex(j), field);
    h.get((p + 1) as usize).copied().unwrap_or(0)
}

pub fn multigraded_betti(k: &SimplicialComplex, field: FieldSpec, limit: usize) -> Result<BettiTable> {
    check_limit(k, limit)?;
    let m = k.num_vertices();
    let all_faces = k.all_faces();
    let mut entries: Vec<(usize, VertexSet, usize)> = (0u64..1u64 << m)
        .into_par_iter()
        .flat_map_iter(|bits| {
            let j = VertexSet::from_bits(bits);
            let faces: Vec<VertexSet> = all_faces.iter().filter(|f| f.is_subset(&j)).copied().collect();
            let h = reduced_cohomology_of_faces(&faces, field);
            let n = j.len();
            h.into_iter()
                .enumerate()
                .filter(|&(_, r)| r > 0)
                .map(move |(q, r)| (n - q, j, r))
                .collect::<Vec<_>>()
        })
        .collect();
    entries.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then(a.1.lex_cmp(&b.1)).then(a.0.cmp(&b.0)));
    Ok(BettiTable { entries, labels: k.labels().to_vec() })
}

/// Coefficients of the Poincaré polynomial of `Z_K`, indexed by degree.
pub fn moment_angle_poincare(k: &SimplicialComplex, field: FieldSpec, limit: usize) -> Result<Vec<usize>> {
    let t = multigraded_betti(k, field, limit)?;
    Ok(poincare_of_table(&t, k.num_vertices()))
}

fn poincare_of_table(t: &BettiTable, m: usize) -> Vec<usize> {
    let mut coeffs = vec![0usize; 2 * m + 1];
    for (i, j, r) in &t.entries {
        coeffs[2 * j.len() - i] += r;
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    coeffs
}

/// Palindromic Poincaré polynomial of formal dimension `m + n`, with `b1 = b2 = 0`.
pub fn poincare_duality_check(k: &SimplicialComplex, field: FieldSpec, limit: usize) -> Result<bool> {
    k.sphere_check()?;
    let p = moment_angle_poincare(k, field, limit)?;
    let top = k.num_vertices() + (k.dim() + 1) as usize;
    let coeff = |d: usize| p.get(d).copied().unwrap_or(0);
    let palindromic = p.len() == top + 1 && (0..=top).all(|d| coeff(d) == coeff(top - d));
    Ok(palindromic && coeff(1) == 0 && coeff(2) == 0)
}

/// Entries of `K_I` agree with the corresponding entries of `K`.
pub fn split_epi_shadow(k: &SimplicialComplex, i: &VertexSet, field: FieldSpec, limit: usize) -> Result<bool> {
    let sub = k.full_subcomplex(i);
    let small = multigraded_betti(&sub, field, limit)?;
    let pos: Vec<usize> = i.to_vec();
    for j_sub in VertexSet::full(pos.len()).subsets() {
        let j = j_sub.map(|v| pos[v]);
        for q in 0..=j.len() {
            if small.get(q, &j_sub) != betti_entry(k, q, &j, field) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Exact divisibility of integer polynomials over Q, coefficients by degree.
pub fn hilbert_divides(a: &[i64], b: &[i64]) -> Result<bool> {
    use num_rational::BigRational;
    use num_traits::Zero;
    let trim = |p: &[i64]| -> Vec<BigRational> {
        let mut v: Vec<BigRational> = p.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        while v.last().is_some_and(|x| x.is_zero()) {
            v.pop();
        }
        v
    };
    let a = trim(a);
    let mut r = trim(b);
    if a.is_empty() {
        return Err(Error::DivisionByZero);
    }
    let lead = a.last().unwrap().clone();
    while r.len() >= a.len() {
        let shift = r.len() - a.len();
        let c = r.last().unwrap() / &lead;
        for (k, x) in a.iter().enumerate() {
            r[shift + k] -= &c * x;
        }
        r.pop();
        while r.last().is_some_and(|x| x.is_zero()) {
            r.pop();
        }
    }
    Ok(r.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp2() -> SimplicialComplex {
        let faces: Vec<Vec<&str>> = [
            [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2],
            [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4],
        ]
        .iter()
        .map(|f| f.iter().map(|&v| ["1", "2", "3", "4", "5", "6"][v - 1]).collect())
        .collect();
        SimplicialComplex::from_label_faces(&["1", "2", "3", "4", "5", "6"], &faces).unwrap()
    }

    #[test]
    fn two_points() {
        let k = SimplicialComplex::from_label_faces(&["a", "b"], &[vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(reduced_cohomology(&k, FieldSpec::Rational), vec![0, 1]);
        let p = moment_angle_poincare(&k, FieldSpec::Rational, 20).unwrap();
        assert_eq!(p, vec![1, 0, 0, 1]);
    }

    #[test]
    fn torsion_shows_over_gf2() {
        let k = rp2();
        assert_eq!(reduced_cohomology(&k, FieldSpec::Rational), vec![0, 0, 0, 0]);
        assert_eq!(reduced_cohomology(&k, FieldSpec::Prime(2)), vec![0, 0, 1, 1]);
        let all = k.vertex_set();
        assert_eq!(betti_entry(&k, 3, &all, FieldSpec::Prime(2)), 1);
        assert_eq!(betti_entry(&k, 3, &all, FieldSpec::Rational), 0);
    }

    #[test]
    fn pentagon_poincare() {
        let labels = ["1", "2", "3", "4", "5"];
        let faces: Vec<Vec<&str>> = (0..5).map(|i| vec![labels[i], labels[(i + 1) % 5]]).collect();
        let k = SimplicialComplex::from_label_faces(&labels, &faces).unwrap();
        let p = moment_angle_poincare(&k, FieldSpec::Rational, 20).unwrap();
        // Z_K for the pentagon is a connected sum of five S^3 x S^4
        assert_eq!(p, vec![1, 0, 0, 5, 5, 0, 0, 1]);
        assert!(poincare_duality_check(&k, FieldSpec::Rational, 20).unwrap());
        assert!(split_epi_shadow(&k, &k.set_of(&["1", "2", "4"]).unwrap(), FieldSpec::Rational, 20).unwrap());
    }

    #[test]
    fn limit_enforced() {
        let k = SimplicialComplex::simplex_boundary(4);
        assert!(matches!(multigraded_betti(&k, FieldSpec::Rational, 3), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn division() {
        assert!(hilbert_divides(&[1, 1], &[1, 2, 1]).unwrap());
        assert!(!hilbert_divides(&[1, 0, 0, 1], &[1, 0, 0, 5, 5, 0, 0, 1]).unwrap());
        assert!(hilbert_divides(&[0], &[1]).is_err());
    }
}
