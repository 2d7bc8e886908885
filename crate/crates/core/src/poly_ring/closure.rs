//! d-closure of sets of generators, observed complexity, direct-family checks and the face cut.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{ClassId, Monomial, Provenance, Registry};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::families::{q_complex, Family};
use crate::massey::pmas_embedding_vertices;
use crate::nestohedra::format_mask;
use crate::vertex_set::VertexSet;

/// Largest dimension accepted by [`d_closure`].
pub const CLOSURE_CAP: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureClass {
    pub id: ClassId,
    pub name: String,
    pub dim: usize,
    pub facets: usize,
    /// Family tags whose member of this dimension is this class.
    pub families: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub up_to_dim: usize,
    pub classes: Vec<ClosureClass>,
    /// Smallest set of families covering every classified class.
    pub cover: Vec<String>,
    pub unclassified: Vec<ClassId>,
    /// `cover.len() + unclassified.len()`; an observed count, not a proven minimum.
    pub observed_complexity: usize,
}

/// Interns every family member up to `n` so classes reached by the closure carry their tags.
fn tag_families(reg: &Registry, n: usize) -> Result<()> {
    for f in Family::ALL {
        for d in f.min_dim().max(1)..=n {
            reg.family(f, d)?;
        }
    }
    Ok(())
}

/// Closure of `generators` under taking the irreducible factors of boundary terms.
pub fn d_closure(reg: &Registry, generators: &[Monomial], up_to_dim: usize) -> Result<ClosureReport> {
    if up_to_dim > CLOSURE_CAP {
        return Err(Error::LimitExceeded { what: "closure dimension", value: up_to_dim, limit: CLOSURE_CAP });
    }
    tag_families(reg, up_to_dim)?;
    let mut seen: BTreeSet<ClassId> = BTreeSet::new();
    let mut queue: VecDeque<ClassId> = VecDeque::new();
    for g in generators {
        for &id in g {
            if reg.class(id).dim <= up_to_dim && seen.insert(id) {
                queue.push_back(id);
            }
        }
    }
    while let Some(id) = queue.pop_front() {
        for mono in reg.boundary_class(id).terms().keys() {
            for &f in mono {
                if seen.insert(f) {
                    queue.push_back(f);
                }
            }
        }
    }
    let classes: Vec<ClosureClass> = seen
        .iter()
        .map(|&id| {
            let c = reg.class(id);
            let families: BTreeSet<String> = c
                .provenance
                .iter()
                .filter_map(|p| match p {
                    Provenance::Family { family, .. } => Some(family.clone()),
                    Provenance::Derived => None,
                })
                .collect();
            ClosureClass { id, name: c.name(), dim: c.dim, facets: c.facets, families: families.into_iter().collect() }
        })
        .collect();
    let unclassified: Vec<ClassId> = classes.iter().filter(|c| c.families.is_empty()).map(|c| c.id).collect();
    let cover = minimal_cover(&classes);
    Ok(ClosureReport { up_to_dim, observed_complexity: cover.len() + unclassified.len(), classes, cover, unclassified })
}

/// Closure of the family members of dimensions `1..=up_to_dim`.
pub fn family_closure(reg: &Registry, family: Family, up_to_dim: usize) -> Result<ClosureReport> {
    let gens: Vec<Monomial> =
        (family.min_dim().max(1)..=up_to_dim).map(|n| reg.family(family, n)).collect::<Result<_>>()?;
    d_closure(reg, &gens, up_to_dim)
}

fn minimal_cover(classes: &[ClosureClass]) -> Vec<String> {
    let names: Vec<String> =
        classes.iter().flat_map(|c| c.families.iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
    let need: Vec<u32> = classes
        .iter()
        .filter(|c| !c.families.is_empty())
        .map(|c| c.families.iter().fold(0u32, |m, f| m | 1 << names.iter().position(|n| n == f).unwrap()))
        .collect();
    let best = (0u32..1 << names.len())
        .filter(|&s| need.iter().all(|&m| m & s != 0))
        .min_by_key(|s| (s.count_ones(), *s))
        .unwrap_or(0);
    (0..names.len()).filter(|&i| best >> i & 1 == 1).map(|i| names[i].clone()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GdfpWitness {
    pub r: usize,
    pub n: usize,
    /// `restriction`, `facet-chain` or `search`.
    pub method: String,
    /// Labels of the vertices spanning a full subcomplex isomorphic to the nerve of `P^r`.
    pub vertices: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GdfpReport {
    pub family: String,
    pub up_to: usize,
    pub passed: bool,
    pub witnesses: Vec<GdfpWitness>,
    /// For `Q`: the cube facets `{1..r-1, n, n+1..n+r-1, 2n}` of `Q^n` span the same complex as `[2r]` in `Q^r`.
    pub cube_facets: Vec<(usize, usize, bool)>,
}

/// Largest number of candidate subsets tried by the exhaustive fallback.
const SEARCH_LIMIT: usize = 200_000;

/// Looks for each `r < n <= up_to` for a full subcomplex of `K_{P^n}` isomorphic to `K_{P^r}`.
pub fn gdfp_check(family: Family, up_to: usize) -> Result<GdfpReport> {
    let lo = family.min_dim().max(1);
    let mut nerves: BTreeMap<usize, SimplicialComplex> = BTreeMap::new();
    for n in lo..=up_to {
        nerves.insert(n, family.complex(n)?);
    }
    let mut witnesses = Vec::new();
    for n in lo + 1..=up_to {
        for r in lo..n {
            witnesses.push(witness(family, &nerves, r, n)?);
        }
    }
    let mut cube_facets = Vec::new();
    if family == Family::Q {
        for n in 2..=up_to {
            let k = &nerves[&n];
            for r in 2..=n {
                let names: Vec<String> =
                    (1..r).chain(std::iter::once(n)).chain(n + 1..n + r).chain(std::iter::once(2 * n)).map(|i| i.to_string()).collect();
                let (sub, _) = k.full_subcomplex_by_labels(&names);
                let small = q_complex(r)?;
                let cube: Vec<String> = (1..=2 * r).map(|i| i.to_string()).collect();
                let (target, _) = small.full_subcomplex_by_labels(&cube);
                cube_facets.push((r, n, sub.is_isomorphic(&target)));
            }
        }
    }
    let passed = witnesses.iter().all(|w| w.vertices.is_some()) && cube_facets.iter().all(|c| c.2);
    Ok(GdfpReport { family: family.tag().into(), up_to, passed, witnesses, cube_facets })
}

fn witness(family: Family, nerves: &BTreeMap<usize, SimplicialComplex>, r: usize, n: usize) -> Result<GdfpWitness> {
    let (big, small) = (&nerves[&n], &nerves[&r]);
    let found = |method: &str, set: VertexSet| GdfpWitness {
        r,
        n,
        method: method.into(),
        vertices: Some(big.labels_of(&set).iter().map(|s| s.to_string()).collect()),
    };
    if family == Family::PMas && r >= 2 {
        let set = pmas_embedding_vertices(big, r, n)?;
        if big.full_subcomplex(&set).is_isomorphic(small) {
            return Ok(found("restriction", set));
        }
    }
    if family != Family::Q && family != Family::Cube {
        let b = family.building_set(n)?;
        for &s in b.sets() {
            if s.count_ones() as usize != r + 1 || b.components().contains(&s) {
                continue;
            }
            let labels: Vec<String> = b.nerve_vertices().into_iter().filter(|&t| t & !s == 0 && t != s).map(format_mask).collect();
            let set = big.set_of(&labels)?;
            if big.full_subcomplex(&set).is_isomorphic(small) {
                return Ok(found("restriction", set));
            }
        }
    }
    if big.is_flag() {
        if let Some(set) = facet_chain(big, small, n - r) {
            return Ok(found("facet-chain", set));
        }
    }
    let m = big.num_vertices();
    let size = small.num_vertices();
    if binomial(m, size) <= SEARCH_LIMIT {
        let hit = VertexSet::full(m).subsets().into_iter().filter(|s| s.len() == size).find(|s| big.full_subcomplex(s).is_isomorphic(small));
        return Ok(GdfpWitness { r, n, method: "search".into(), vertices: hit.map(|s| big.labels_of(&s).iter().map(|x| x.to_string()).collect()) });
    }
    Ok(GdfpWitness { r, n, method: "search".into(), vertices: None })
}

/// In a flag sphere a vertex link is the full subcomplex on the neighbours; descend `steps` times.
fn facet_chain(big: &SimplicialComplex, target: &SimplicialComplex, steps: usize) -> Option<VertexSet> {
    fn go(k: &SimplicialComplex, cur: VertexSet, target: &SimplicialComplex, steps: usize) -> Option<VertexSet> {
        let sub = k.full_subcomplex(&cur);
        if steps == 0 {
            return sub.is_isomorphic(target).then_some(cur);
        }
        let adj = k.adjacency();
        let mut tried: BTreeSet<Vec<u32>> = BTreeSet::new();
        for v in cur.iter() {
            let next = adj[v].intersection(&cur);
            let next_sub = k.full_subcomplex(&next);
            if !tried.insert(next_sub.canonical_form().certificate) {
                continue;
            }
            if let Some(s) = go(k, next, target, steps - 1) {
                return Some(s);
            }
        }
        None
    }
    go(big, big.vertex_set(), target, steps)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// The face cut: `K_P * S^0`, then the stellar subdivision of the edge from `facet` to the top copy.
pub fn fc(k: &SimplicialComplex, facet: &str) -> Result<SimplicialComplex> {
    if !k.is_flag() {
        return Err(Error::InvalidInput("the face cut needs a flag polytope".into()));
    }
    let f = k.position(facet).ok_or_else(|| Error::UnknownVertex(facet.into()))?;
    let fresh = fresh_labels(k, 3);
    let ends = SimplicialComplex::from_label_faces(&fresh[..2], &[vec![fresh[0].clone()], vec![fresh[1].clone()]])?;
    let prism = k.join(&ends)?;
    let top = prism.position(&fresh[1]).expect("joined vertex");
    prism.stellar_subdivision(&VertexSet::singleton(f).with(top), &fresh[2])
}

fn fresh_labels(k: &SimplicialComplex, count: usize) -> Vec<String> {
    let mut out = Vec::new();
    let mut i = k.num_vertices() + 1;
    while out.len() < count {
        let l = i.to_string();
        if k.position(&l).is_none() {
            out.push(l);
        }
        i += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(f: Family, n: usize) -> (Vec<String>, usize) {
        let reg = Registry::new();
        let r = family_closure(&reg, f, n).unwrap();
        (r.cover, r.observed_complexity)
    }

    #[test]
    fn classical_closures() {
        assert_eq!(cover(Family::Cyclohedron, 4), (vec!["as".into(), "cy".into()], 2));
        let (c, n) = cover(Family::Stellahedron, 4);
        assert_eq!(n, 2);
        assert!(c.contains(&"st".to_string()) && c.contains(&"pe".to_string()));
        assert_eq!(cover(Family::Permutohedron, 4).1, 1);
        assert_eq!(cover(Family::Simplex, 4).1, 1);
    }

    #[test]
    fn cap_is_enforced() {
        let reg = Registry::new();
        assert!(matches!(family_closure(&reg, Family::Simplex, CLOSURE_CAP + 1), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn face_cut_of_square() {
        let sq = Family::Cube.complex(2).unwrap();
        let p = fc(&sq, "1").unwrap();
        assert_eq!(p.num_vertices(), 7);
        assert!(p.is_flag());
        p.sphere_check().unwrap();
        assert_eq!(p.face_counts()[1], 7);
    }

    #[test]
    fn direct_families() {
        assert!(gdfp_check(Family::Cube, 4).unwrap().passed);
        assert!(gdfp_check(Family::Cyclohedron, 4).unwrap().passed);
        assert!(!gdfp_check(Family::Simplex, 3).unwrap().passed);
        let q = gdfp_check(Family::Q, 4).unwrap();
        assert!(q.passed, "{q:?}");
        assert!(q.cube_facets.iter().all(|c| c.2));
    }
}
