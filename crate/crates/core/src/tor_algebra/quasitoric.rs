//! Cohomology of a quasitoric manifold as `k[K] / (θ_1, ..., θ_n)`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::linalg::{det_i64, Echelon, Field, Rationals};

/// Exponent vector of a monomial in `v_1, ..., v_m`.
pub type Exponents = Vec<u32>;

/// Graded pieces of `H^*(M^{2n}; Q)` presented as a quotient of the face ring.
pub struct QuasitoricRing {
    m: usize,
    n: usize,
    faces: Vec<crate::VertexSet>,
    lambda: Vec<Vec<i64>>,
    degrees: Vec<Degree>,
}

struct Degree {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    relations: Echelon<Rationals>,
}

impl QuasitoricRing {
    /// `lambda` is `n × m`; column `i` is the characteristic vector of facet `i`.
    pub fn new(k: &SimplicialComplex, lambda: Vec<Vec<i64>>) -> Result<Self> {
        let m = k.num_vertices();
        let n = (k.dim() + 1) as usize;
        if lambda.len() != n || lambda.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidCharacteristic(format!("expected a {n}x{m} matrix")));
        }
        for f in k.facets() {
            let cols: Vec<usize> = f.to_vec();
            let sub: Vec<Vec<i64>> = lambda.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
            let det = det_i64(&sub);
            if !det.abs().is_one() {
                return Err(Error::InvalidCharacteristic(format!(
                    "minor on facet {} has determinant {det}",
                    k.format_set(f)
                )));
            }
        }
        let faces = k.all_faces();
        let mut ring = QuasitoricRing { m, n, faces, lambda, degrees: Vec::new() };
        for d in 0..=n + 1 {
            let deg = ring.build_degree(d);
            ring.degrees.push(deg);
        }
        Ok(ring)
    }

    fn monomials_of_degree(&self, d: usize) -> Vec<Exponents> {
        let mut out = Vec::new();
        for f in &self.faces {
            let support = f.to_vec();
            if support.len() > d || (support.is_empty() && d > 0) {
                continue;
            }
            // compositions of d into |support| positive parts
            fn rec(support: &[usize], k: usize, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
                if k == support.len() {
                    if left == 0 {
                        out.push(cur.clone());
                    }
                    return;
                }
                let remaining = support.len() - k - 1;
                for e in 1..=left.saturating_sub(remaining) {
                    cur[support[k]] = e as u32;
                    rec(support, k + 1, left - e, cur, out);
                }
                cur[support[k]] = 0;
            }
            let mut cur = vec![0u32; self.m];
            rec(&support, 0, d, &mut cur, &mut out);
        }
        out.sort();
        out
    }

    fn is_face_monomial(&self, e: &[u32]) -> bool {
        let s: crate::VertexSet = e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect();
        self.faces.binary_search_by(|f| f.len().cmp(&s.len()).then(f.lex_cmp(&s))).is_ok()
    }

    fn build_degree(&self, d: usize) -> Degree {
        let q = Rationals;
        let monomials = self.monomials_of_degree(d);
        let index: HashMap<Exponents, usize> = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut relations = Echelon::new(q, monomials.len());
        if d > 0 {
            for mu in self.monomials_of_degree(d - 1) {
                for theta in &self.lambda {
                    let mut v = vec![q.zero(); monomials.len()];
                    for (i, &c) in theta.iter().enumerate() {
                        if c == 0 {
                            continue;
                        }
                        let mut e = mu.clone();
                        e[i] += 1;
                        if let Some(&k) = index.get(&e) {
                            v[k] = q.add(&v[k], &q.from_i64(c));
                        }
                    }
                    relations.insert(&v);
                }
            }
        }
        Degree { monomials, index, relations }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    /// Ranks of `H^{2d}` for `d = 0..=n+1`.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.monomials.len() - d.relations.rank()).collect()
    }

    /// Whether a homogeneous polynomial vanishes in the quotient.
    pub fn is_zero(&self, poly: &BTreeMap<Exponents, i64>) -> Result<bool> {
        let q = Rationals;
        let Some(first) = poly.keys().next() else {
            return Ok(true);
        };
        let d: u32 = first.iter().sum();
        if poly.keys().any(|e| e.iter().sum::<u32>() != d || e.len() != self.m) {
            return Err(Error::InvalidInput("polynomial is not homogeneous".into()));
        }
        let Some(deg) = self.degrees.get(d as usize) else {
            return Ok(true);
        };
        let mut v = vec![q.zero(); deg.monomials.len()];
        for (e, &c) in poly {
            if !self.is_face_monomial(e) {
                continue;
            }
            let k = deg.index[e];
            v[k] = q.add(&v[k], &q.from_i64(c));
        }
        Ok(deg.relations.contains(&v))
    }

    pub fn square_is_zero(&self, i: usize) -> bool {
        let mut e = vec![0u32; self.m];
        e[i] = 2;
        self.is_zero(&BTreeMap::from([(e, 1)])).expect("monomial is homogeneous")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segment() {
        let k = SimplicialComplex::simplex_boundary(1);
        let r = QuasitoricRing::new(&k, vec![vec![1, 1]]).unwrap();
        assert_eq!(r.graded_dims(), vec![1, 1, 0]);
        assert!(r.square_is_zero(0));
    }

    #[test]
    fn bad_minor_rejected() {
        let k = SimplicialComplex::simplex_boundary(1);
        assert!(QuasitoricRing::new(&k, vec![vec![1, 2]]).is_err());
    }
}
