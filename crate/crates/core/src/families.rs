//! The named polytope families, as building sets or nerve complexes.

use std::fmt;
use std::str::FromStr;

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::nestohedra::{pgamma_building_set, pmas_building_set, BuildingSet};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Simplex,
    Cube,
    Permutohedron,
    Stellahedron,
    Cyclohedron,
    Associahedron,
    PMas,
    PGamma,
    Q,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Simplex,
        Family::Cube,
        Family::Permutohedron,
        Family::Stellahedron,
        Family::Cyclohedron,
        Family::Associahedron,
        Family::PMas,
        Family::PGamma,
        Family::Q,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Family::Simplex => "simplex",
            Family::Cube => "cube",
            Family::Permutohedron => "pe",
            Family::Stellahedron => "st",
            Family::Cyclohedron => "cy",
            Family::Associahedron => "as",
            Family::PMas => "pmas",
            Family::PGamma => "pgamma",
            Family::Q => "q",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Simplex => "Δ",
            Family::Cube => "I",
            Family::Permutohedron => "Pe",
            Family::Stellahedron => "St",
            Family::Cyclohedron => "Cy",
            Family::Associahedron => "As",
            Family::PMas => "P_Mas",
            Family::PGamma => "P_Γ",
            Family::Q => "Q",
        }
    }

    /// Smallest dimension with a member.
    pub fn min_dim(self) -> usize {
        match self {
            Family::PMas | Family::PGamma => 2,
            Family::Cyclohedron => 1,
            _ => 0,
        }
    }

    /// Building set on `[n+1]` whose nestohedron is the `n`-dimensional member.
    pub fn building_set(self, n: usize) -> Result<BuildingSet> {
        if n < self.min_dim() {
            return Err(Error::FamilyRange { family: self.symbol().into(), n, min: self.min_dim() });
        }
        let g = n + 1;
        match self {
            Family::Simplex => BuildingSet::simplex(g),
            Family::Cube => BuildingSet::cube_chain(g),
            Family::Permutohedron => {
                let edges: Vec<(usize, usize)> = (1..=g).flat_map(|a| (a + 1..=g).map(move |b| (a, b))).collect();
                BuildingSet::graphical(g, &edges)
            }
            Family::Stellahedron => {
                let edges: Vec<(usize, usize)> = (1..g).map(|a| (a, g)).collect();
                BuildingSet::graphical(g, &edges)
            }
            Family::Cyclohedron => {
                let mut edges: Vec<(usize, usize)> = (1..g).map(|a| (a, a + 1)).collect();
                if g > 2 {
                    edges.push((1, g));
                }
                BuildingSet::graphical(g, &edges)
            }
            Family::Associahedron => {
                let edges: Vec<(usize, usize)> = (1..g).map(|a| (a, a + 1)).collect();
                BuildingSet::graphical(g, &edges)
            }
            Family::PMas => pmas_building_set(n),
            Family::PGamma => pgamma_building_set(n),
            Family::Q => Err(Error::InvalidInput("Q is given by its nerve, not a building set".into())),
        }
    }

    /// Nerve complex of the `n`-dimensional member.
    pub fn complex(self, n: usize) -> Result<SimplicialComplex> {
        match self {
            Family::Q => q_complex(n),
            Family::Cube if n >= 2 => Ok(q_complex_variant(n, QVariant::Cube)),
            _ => Ok(self.building_set(n)?.nested_set_complex()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.tag() == t || f.symbol().to_ascii_lowercase() == t)
            .ok_or_else(|| Error::InvalidInput(format!("unknown family '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum QVariant {
    Cube,
    /// Truncations of `F_k ∩ F_{n+k+i}` performed in decreasing `i`.
    Standard,
    /// The relation index ranges read verbatim; not pure for `n >= 4`.
    #[cfg_attr(not(test), allow(dead_code))]
    Verbatim,
}

/// Label of the truncation vertex for the face `F_k ∩ F_j`.
pub fn q_label(k: usize, j: usize) -> String {
    format!("({k},{j})")
}

/// The nerve of the 2-truncated cube `Q^n`: vertices `1..2n` for the cube facets, then `(k, n+k+i)`.
pub fn q_complex(n: usize) -> Result<SimplicialComplex> {
    match n {
        0 => Ok(SimplicialComplex::void_sphere()),
        1 => Ok(SimplicialComplex::from_label_faces(&["1", "2"], &[vec!["1"], vec!["2"]])?),
        _ => Ok(q_complex_variant(n, QVariant::Standard)),
    }
}

pub(crate) fn q_complex_variant(n: usize, variant: QVariant) -> SimplicialComplex {
    let mut labels: Vec<String> = (1..=2 * n).map(|i| i.to_string()).collect();
    let mut trunc: Vec<(usize, usize)> = Vec::new();
    if variant != QVariant::Cube {
        for i in 1..=n.saturating_sub(2) {
            for k in 1..=n - i {
                trunc.push((k, i));
                labels.push(q_label(k, n + k + i));
            }
        }
    }
    let tv = |t: usize| 2 * n + t;
    let mut mnf: Vec<VertexSet> = Vec::new();
    let pair = |a: usize, b: usize| VertexSet::empty().with(a).with(b);
    for i in 0..=n - 2 {
        for k in 1..=n - i {
            if variant == QVariant::Cube && i > 0 {
                continue;
            }
            mnf.push(pair(k - 1, n + k + i - 1));
        }
    }
    if variant == QVariant::Cube {
        return SimplicialComplex::from_minimal_nonfaces(labels, &mnf).expect("cube nerve");
    }
    for (t, &(k, i)) in trunc.iter().enumerate() {
        let ls: Vec<usize> = match variant {
            QVariant::Standard => std::iter::once(0).chain(i + 1..=n - 2).collect(),
            _ => (0..=n - 2).filter(|&l| l != i).collect(),
        };
        for l in ls.into_iter().filter(|&l| k + l <= n) {
            mnf.push(pair(tv(t), n + k + l - 1));
        }
        let ps: Vec<usize> = match variant {
            QVariant::Standard => ((k + i + 1).saturating_sub(n - 1).max(1)..k).chain(std::iter::once(k + i)).collect(),
            _ => (1..=k + i).filter(|&p| p != k).collect(),
        };
        for p in ps {
            mnf.push(pair(tv(t), p - 1));
        }
        for (s, &(k2, i2)) in trunc.iter().enumerate().skip(t + 1) {
            let touching = k + i == k2 || k2 + i2 == k;
            // the face spanning both intervals was cut off before either of them
            let (a, b, c, d) = if k < k2 { (k, k + i, k2, k2 + i2) } else { (k2, k2 + i2, k, k + i) };
            let spanned = variant == QVariant::Standard && a < c && b < d && d - a <= n - 2;
            if touching || spanned {
                mnf.push(pair(tv(t), tv(s)));
            }
        }
    }
    mnf.sort_by(|a, b| a.lex_cmp(b));
    mnf.dedup();
    SimplicialComplex::from_minimal_nonfaces(labels, &mnf).expect("Q nerve")
}

/// `Q^n` by consecutive truncations of the faces `F_k ∩ F_{n+k+i}` of the cube, in the given order.
pub fn q_by_truncation(n: usize, order: &[(usize, usize)]) -> Result<SimplicialComplex> {
    let mut k = q_complex_variant(n, QVariant::Cube);
    for &(a, b) in order {
        let s = k.set_of(&[a.to_string(), b.to_string()])?;
        k = k.stellar_subdivision(&s, &q_label(a, b))?;
    }
    Ok(k)
}

/// Truncated faces `(k, n+k+i)` of the cube for `Q^n`, longest `i` first.
pub fn q_truncated_faces(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in (1..=n.saturating_sub(2)).rev() {
        for k in 1..=n - i {
            out.push((k, n + k + i));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_vertex_counts() {
        for n in 2..=6 {
            let q = q_complex(n).unwrap();
            assert_eq!(q.num_vertices(), n * (n + 3) / 2 - 1);
            assert!(q.is_flag());
            q.sphere_check().unwrap();
        }
    }

    #[test]
    fn q_matches_truncation() {
        for n in 2..=6 {
            let faces = q_truncated_faces(n);
            let by_ideal = q_complex(n).unwrap();
            let cut = q_by_truncation(n, &faces).unwrap();
            let mut a = by_ideal.minimal_nonfaces().iter().map(|s| by_ideal.labels_of(s).iter().map(|x| x.to_string()).collect::<std::collections::BTreeSet<_>>()).collect::<Vec<_>>();
            let mut b = cut.minimal_nonfaces().iter().map(|s| cut.labels_of(s).iter().map(|x| x.to_string()).collect::<std::collections::BTreeSet<_>>()).collect::<Vec<_>>();
            a.sort();
            b.sort();
            assert_eq!(a, b, "n={n}");
        }
    }

    #[test]
    fn truncation_order_matters_from_dimension_four() {
        let mut inc = q_truncated_faces(4);
        inc.reverse();
        assert!(q_by_truncation(3, &{ let mut f = q_truncated_faces(3); f.reverse(); f }).unwrap().is_isomorphic(&q_complex(3).unwrap()));
        assert!(!q_by_truncation(4, &inc).unwrap().is_isomorphic(&q_complex(4).unwrap()));
    }

    #[test]
    fn facet_recursion() {
        for n in 3..=6 {
            let q = q_complex(n).unwrap();
            let facet = q.link(&q.set_of(&[(n - 1).to_string()]).unwrap()).unwrap();
            assert!(facet.is_isomorphic(&q_complex(n - 1).unwrap()), "n={n}");
        }
    }

    #[test]
    fn verbatim_ranges_are_not_a_sphere() {
        assert!(!q_complex_variant(3, QVariant::Verbatim).is_isomorphic(&q_complex(3).unwrap()));
        assert!(q_complex_variant(4, QVariant::Verbatim).sphere_check().is_err());
    }

    #[test]
    fn small_families() {
        assert!(Family::Permutohedron.complex(2).unwrap().is_isomorphic(&cycle(6)));
        assert!(Family::Associahedron.complex(2).unwrap().is_isomorphic(&cycle(5)));
        assert!(Family::Cyclohedron.complex(2).unwrap().is_isomorphic(&cycle(6)));
        assert!(Family::Stellahedron.complex(2).unwrap().is_isomorphic(&cycle(5)));
        assert!(Family::PMas.complex(2).unwrap().is_isomorphic(&cycle(4)));
        assert!(Family::Cube.complex(3).unwrap().is_isomorphic(&Family::Cube.building_set(3).unwrap().nested_set_complex()));
        assert_eq!(Family::Permutohedron.complex(3).unwrap().num_vertices(), 14);
        assert_eq!("P_Mas".parse::<Family>().unwrap(), Family::PMas);
    }

    fn cycle(m: usize) -> SimplicialComplex {
        let labels: Vec<String> = (1..=m).map(|i| i.to_string()).collect();
        let faces: Vec<Vec<String>> = (0..m).map(|i| vec![labels[i].clone(), labels[(i + 1) % m].clone()]).collect();
        SimplicialComplex::from_label_faces(&labels, &faces).unwrap()
    }
}
