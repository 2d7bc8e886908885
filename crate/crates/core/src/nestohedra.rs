//! Building sets, nested set complexes and the nestohedron operations.
//!
//! Subsets of the ground set `[g] = {1, ..., g}` are bit masks, bit `i`
//! standing for element `i + 1`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, ColoredGraph};
use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

pub type Mask = u32;

pub const MAX_GROUND: usize = 16;

fn full_mask(g: usize) -> Mask {
    if g == 32 {
        u32::MAX
    } else {
        (1u32 << g) - 1
    }
}

fn elems(s: Mask) -> Vec<usize> {
    (0..32).filter(|&i| s >> i & 1 == 1).collect()
}

/// Orders subsets by size, then lexicographically by their elements.
fn set_order(a: &Mask, b: &Mask) -> std::cmp::Ordering {
    a.count_ones().cmp(&b.count_ones()).then_with(|| elems(*a).cmp(&elems(*b)))
}

pub fn format_mask(s: Mask) -> String {
    let e: Vec<String> = elems(s).iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", e.join(","))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BuildingSet {
    ground: usize,
    sets: Vec<Mask>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingSetJson {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
}

impl fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sets.iter().map(|&m| format_mask(m)).collect();
        write!(f, "B[{}]{{{}}}", self.ground, s.join(" "))
    }
}

impl BuildingSet {
    /// Validates singletons and closure under unions of intersecting elements.
    pub fn new(ground: usize, sets: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if ground == 0 || ground > MAX_GROUND {
            return Err(Error::InvalidBuildingSet(format!("ground size {ground} outside 1..={MAX_GROUND}")));
        }
        let full = full_mask(ground);
        let mut v: Vec<Mask> = sets.into_iter().collect();
        for &s in &v {
            if s == 0 || s & !full != 0 {
                return Err(Error::InvalidBuildingSet(format!("{} is not a nonempty subset of the ground", format_mask(s))));
            }
        }
        v.sort_by(set_order);
        v.dedup();
        let present: HashSet<Mask> = v.iter().copied().collect();
        for i in 0..ground {
            if !present.contains(&(1 << i)) {
                return Err(Error::InvalidBuildingSet(format!("missing singleton {{{}}}", i + 1)));
            }
        }
        for (a, &s) in v.iter().enumerate() {
            for &t in &v[a + 1..] {
                if s & t != 0 && !present.contains(&(s | t)) {
                    return Err(Error::InvalidBuildingSet(format!(
                        "{} and {} intersect but their union is missing",
                        format_mask(s),
                        format_mask(t)
                    )));
                }
            }
        }
        Ok(BuildingSet { ground, sets: v })
    }

    /// From 1-based element lists.
    pub fn from_lists(ground: usize, sets: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(sets.len());
        for s in sets {
            let mut m = 0;
            for &e in s {
                if e == 0 || e > ground {
                    return Err(Error::InvalidBuildingSet(format!("element {e} outside the ground")));
                }
                m |= 1 << (e - 1);
            }
            masks.push(m);
        }
        Self::new(ground, masks)
    }

    /// Connected induced subgraphs of a graph on `[g]`; edges are 1-based.
    pub fn graphical(ground: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if ground == 0 || ground > MAX_GROUND {
            return Err(Error::InvalidBuildingSet(format!("ground size {ground} outside 1..={MAX_GROUND}")));
        }
        let mut adj = vec![0 as Mask; ground];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > ground || b > ground || a == b {
                return Err(Error::InvalidBuildingSet(format!("bad edge ({a},{b})")));
            }
            adj[a - 1] |= 1 << (b - 1);
            adj[b - 1] |= 1 << (a - 1);
        }
        let connected = |s: Mask| {
            let start = s.trailing_zeros() as usize;
            let mut seen: Mask = 1 << start;
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0;
                for v in elems(frontier) {
                    next |= adj[v] & s & !seen;
                }
                seen |= next;
                frontier = next;
            }
            seen == s
        };
        let sets: Vec<Mask> = (1..=full_mask(ground)).filter(|&s| connected(s)).collect();
        Self::new(ground, sets)
    }

    /// `{{i}, [g]}`, the simplex.
    pub fn simplex(ground: usize) -> Result<Self> {
        let mut v: Vec<Mask> = (0..ground).map(|i| 1 << i).collect();
        v.push(full_mask(ground));
        Self::new(ground, v)
    }

    /// `{{1..i}, {i}}`, the cube.
    pub fn cube_chain(ground: usize) -> Result<Self> {
        let mut v: Vec<Mask> = (0..ground).map(|i| 1 << i).collect();
        v.extend((1..=ground).map(full_mask));
        Self::new(ground, v)
    }

    /// `{{i}, {2j-1, 2j}}` on `[2k]`, a disconnected cube.
    pub fn cube_pairs(k: usize) -> Result<Self> {
        let mut v: Vec<Mask> = (0..2 * k).map(|i| 1 << i).collect();
        v.extend((0..k).map(|j| 0b11 << (2 * j)));
        Self::new(2 * k, v)
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[Mask] {
        &self.sets
    }

    pub fn contains(&self, s: Mask) -> bool {
        self.sets.binary_search_by(|x| set_order(x, &s)).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        self.contains(full_mask(self.ground))
    }

    /// Maximal elements; they partition the ground set.
    pub fn components(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = self
            .sets
            .iter()
            .copied()
            .filter(|&s| !self.sets.iter().any(|&t| t != s && s & t == s))
            .collect();
        out.sort_by_key(|s| s.trailing_zeros());
        out
    }

    /// Nested set complex vertices: every element except the maximal ones.
    pub fn nerve_vertices(&self) -> Vec<Mask> {
        let comps = self.components();
        self.sets.iter().copied().filter(|s| !comps.contains(s)).collect()
    }

    /// Renumbers the elements of `s` as `1..=|s|` in increasing order.
    fn compress(s: Mask, x: Mask) -> Mask {
        let mut out = 0;
        for (k, e) in elems(s).into_iter().enumerate() {
            if x >> e & 1 == 1 {
                out |= 1 << k;
            }
        }
        out
    }

    /// `B|_S` on `[|S|]`.
    pub fn restriction(&self, s: Mask) -> Result<BuildingSet> {
        if !self.contains(s) {
            return Err(Error::NotInBuildingSet(format_mask(s)));
        }
        let sets: Vec<Mask> = self.sets.iter().filter(|&&t| t & !s == 0).map(|&t| Self::compress(s, t)).collect();
        Ok(BuildingSet::new(s.count_ones() as usize, sets).expect("restriction of a building set"))
    }

    /// `B/S = {T ⊆ [g] ∖ S : T ∈ B or T ⊔ S ∈ B}` on `[g - |S|]`.
    pub fn contraction(&self, s: Mask) -> Result<BuildingSet> {
        if !self.contains(s) {
            return Err(Error::NotInBuildingSet(format_mask(s)));
        }
        let rest = full_mask(self.ground) & !s;
        if rest == 0 {
            return Err(Error::InvalidInput("contraction of the whole ground set".into()));
        }
        let mut out: HashSet<Mask> = HashSet::new();
        for &t in &self.sets {
            if t & s == 0 {
                out.insert(t);
            } else if t & s == s && t != s {
                out.insert(t & !s);
            }
        }
        let sets: Vec<Mask> = out.into_iter().map(|t| Self::compress(rest, t)).collect();
        Ok(BuildingSet::new(rest.count_ones() as usize, sets).expect("contraction of a building set"))
    }

    /// `B(B_1, ..., B_g)` on the concatenated ground sets.
    pub fn substitution(&self, parts: &[BuildingSet]) -> Result<BuildingSet> {
        if !self.is_connected() || parts.iter().any(|p| !p.is_connected()) {
            return Err(Error::Disconnected);
        }
        if parts.len() != self.ground {
            return Err(Error::InvalidInput(format!("substitution needs {} building sets", self.ground)));
        }
        let mut offsets = Vec::with_capacity(parts.len());
        let mut total = 0;
        for p in parts {
            offsets.push(total);
            total += p.ground;
        }
        if total > MAX_GROUND {
            return Err(Error::LimitExceeded { what: "ground size", value: total, limit: MAX_GROUND });
        }
        let mut sets = Vec::new();
        for (p, &off) in parts.iter().zip(&offsets) {
            sets.extend(p.sets.iter().map(|&s| s << off));
        }
        for &s in &self.sets {
            let mut m = 0;
            for i in elems(s) {
                m |= full_mask(parts[i].ground) << offsets[i];
            }
            sets.push(m);
        }
        BuildingSet::new(total, sets)
    }

    /// `B_1 + B_2 = B_1 ∪ B_2` when `B_1 ∩ B_2 = B_Δ` and the union is a building set.
    pub fn sum(&self, other: &BuildingSet) -> Result<BuildingSet> {
        if self.ground != other.ground {
            return Err(Error::SumUndefined("different ground sets".into()));
        }
        if !self.is_connected() || !other.is_connected() {
            return Err(Error::Disconnected);
        }
        let a: HashSet<Mask> = self.sets.iter().copied().collect();
        let common: HashSet<Mask> = other.sets.iter().copied().filter(|s| a.contains(s)).collect();
        let delta: HashSet<Mask> = BuildingSet::simplex(self.ground)?.sets.into_iter().collect();
        if common != delta {
            return Err(Error::SumUndefined("the intersection is not the simplex building set".into()));
        }
        BuildingSet::new(self.ground, self.sets.iter().chain(&other.sets).copied())
            .map_err(|e| Error::SumUndefined(e.to_string()))
    }

    /// Minimal nonfaces of the nested set complex, as masks over `nerve_vertices()` positions.
    pub fn nerve_minimal_nonfaces(&self) -> Vec<VertexSet> {
        let verts = self.nerve_vertices();
        let pos = |s: Mask| verts.iter().position(|&v| v == s).unwrap();
        let mut out = Vec::new();
        for (a, &s) in verts.iter().enumerate() {
            for (b, &t) in verts.iter().enumerate().skip(a + 1) {
                let overlapping = s & t != 0 && s & t != s && s & t != t;
                let joined = s & t == 0 && self.contains(s | t);
                if overlapping || joined {
                    out.push(VertexSet::empty().with(a).with(b));
                }
            }
        }
        for fam in self.minimal_disjoint_families(3) {
            out.push(fam.into_iter().map(pos).collect());
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(b)));
        out
    }

    /// Families of at least `min_size` pairwise disjoint nerve vertices whose union is in `B`
    /// while no union of a proper subfamily of size two or more is.
    fn minimal_disjoint_families(&self, min_size: usize) -> Vec<Vec<Mask>> {
        let verts: HashSet<Mask> = self.nerve_vertices().into_iter().collect();
        let mut out = Vec::new();
        for &u in &self.sets {
            if (u.count_ones() as usize) < min_size {
                continue;
            }
            let mut cur = Vec::new();
            self.partitions(u, u, &verts, &mut cur, &mut |blocks| {
                if blocks.len() >= min_size && self.is_minimal_family(blocks) {
                    out.push(blocks.to_vec());
                }
            });
        }
        out
    }

    fn partitions(&self, u: Mask, rest: Mask, verts: &HashSet<Mask>, cur: &mut Vec<Mask>, f: &mut dyn FnMut(&[Mask])) {
        if rest == 0 {
            f(cur);
            return;
        }
        let low = rest & rest.wrapping_neg();
        for &b in &self.sets {
            if b & low != 0 && b & !rest == 0 && b != u && verts.contains(&b) {
                cur.push(b);
                self.partitions(u, rest & !b, verts, cur, f);
                cur.pop();
            }
        }
    }

    fn is_minimal_family(&self, blocks: &[Mask]) -> bool {
        let l = blocks.len();
        for sub in 1u32..(1 << l) - 1 {
            if sub.count_ones() < 2 {
                continue;
            }
            let un = (0..l).filter(|&k| sub >> k & 1 == 1).fold(0, |a, k| a | blocks[k]);
            if self.contains(un) {
                return false;
            }
        }
        true
    }

    /// Flagness of the nestohedron, read off the building set.
    pub fn is_flag(&self) -> bool {
        self.minimal_disjoint_families(3).is_empty()
    }

    /// The nested set complex `N_B`, vertices labelled like `{1,2}`.
    pub fn nested_set_complex(&self) -> SimplicialComplex {
        let verts = self.nerve_vertices();
        let labels: Vec<String> = verts.iter().map(|&s| format_mask(s)).collect();
        if verts.is_empty() {
            return SimplicialComplex::void_sphere();
        }
        let mnf = self.nerve_minimal_nonfaces();
        SimplicialComplex::from_minimal_nonfaces(labels, &mnf).expect("nested set complex is valid")
    }

    /// Isomorphism-invariant certificate of the building set.
    pub fn canonical_key(&self) -> Vec<u32> {
        let g = self.ground;
        let mut colors = vec![0u32; g];
        colors.extend(std::iter::repeat(1).take(self.sets.len()));
        let mut graph = ColoredGraph::new(colors);
        for (k, &s) in self.sets.iter().enumerate() {
            for e in elems(s) {
                graph.add_edge(e, g + k);
            }
        }
        let mut key = vec![g as u32];
        key.extend(canonical_labeling(&graph).certificate);
        key
    }

    pub fn to_json_value(&self) -> BuildingSetJson {
        BuildingSetJson {
            ground: self.ground,
            sets: self.sets.iter().map(|&s| elems(s).into_iter().map(|e| e + 1).collect()).collect(),
        }
    }

    pub fn from_json_value(j: &BuildingSetJson) -> Result<Self> {
        Self::from_lists(j.ground, &j.sets)
    }

    pub fn mask_of(&self, elems_1based: &[usize]) -> Result<Mask> {
        let mut m = 0;
        for &e in elems_1based {
            if e == 0 || e > self.ground {
                return Err(Error::InvalidInput(format!("element {e} outside the ground")));
            }
            m |= 1 << (e - 1);
        }
        Ok(m)
    }
}

/// `B(P, n)` for `n >= 2`.
pub fn pmas_building_set(n: usize) -> Result<BuildingSet> {
    if n < 2 {
        return Err(Error::FamilyRange { family: "P_Mas building set".into(), n, min: 2 });
    }
    let g = n + 1;
    let mut sets: Vec<Mask> = (0..g).map(|i| 1 << i).collect();
    // {1,2} plus any subset of {3..n+1}
    let tail = full_mask(g) & !0b11;
    let mut sub = tail;
    loop {
        sets.push(0b11 | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & tail;
    }
    // {1} plus a nonempty subset of {3..n}
    let mid = full_mask(n) & !0b11;
    let mut sub = mid;
    while sub != 0 {
        sets.push(1 | sub);
        sub = (sub - 1) & mid;
    }
    BuildingSet::new(g, sets)
}

/// `B(Γ, n)` for `n >= 2`.
pub fn pgamma_building_set(n: usize) -> Result<BuildingSet> {
    if n < 2 {
        return Err(Error::FamilyRange { family: "P_Gamma building set".into(), n, min: 2 });
    }
    let g = n + 1;
    let mut sets: Vec<Mask> = (0..g).map(|i| 1 << i).collect();
    let low = full_mask(n);
    sets.extend((1..=low).filter(|s| s.count_ones() >= 2));
    sets.push(full_mask(g));
    let last = 1 << n;
    let mid = low & !1;
    let mut sub = mid;
    loop {
        sets.push(1 | last | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & mid;
    }
    BuildingSet::new(g, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(BuildingSet::from_lists(3, &[vec![1], vec![2], vec![3], vec![1, 2], vec![2, 3]]).is_err());
        assert!(BuildingSet::from_lists(3, &[vec![1], vec![2]]).is_err());
        assert!(BuildingSet::from_lists(3, &[vec![1], vec![2], vec![3], vec![1, 2]]).is_ok());
    }

    #[test]
    fn simplex_and_cubes() {
        let t = BuildingSet::simplex(4).unwrap().nested_set_complex();
        assert!(t.is_isomorphic(&SimplicialComplex::simplex_boundary(3)));
        let c1 = BuildingSet::cube_chain(4).unwrap().nested_set_complex();
        let c2 = BuildingSet::cube_pairs(3).unwrap().nested_set_complex();
        assert_eq!(c1.facets().len(), 8);
        assert!(c1.is_isomorphic(&c2));
    }

    #[test]
    fn pmas_vertex_counts() {
        for n in 2..=6 {
            let b = pmas_building_set(n).unwrap();
            assert!(b.is_connected());
            assert!(b.is_flag());
            assert_eq!(b.nerve_vertices().len(), 3 * (1 << (n - 2)) + n - 1);
        }
    }

    #[test]
    fn pgamma_is_graphical() {
        for n in 2..=5 {
            let mut edges = Vec::new();
            for a in 1..=n {
                for b in a + 1..=n {
                    edges.push((a, b));
                }
            }
            edges.push((1, n + 1));
            let g = BuildingSet::graphical(n + 1, &edges).unwrap();
            assert_eq!(g, pgamma_building_set(n).unwrap());
        }
    }

    #[test]
    fn restriction_and_contraction() {
        let b = pmas_building_set(4).unwrap();
        let s = b.mask_of(&[1, 3]).unwrap();
        let r = b.restriction(s).unwrap();
        assert_eq!(r.ground(), 2);
        let c = b.contraction(s).unwrap();
        assert_eq!(c.ground(), 3);
        assert!(b.restriction(b.mask_of(&[2, 3]).unwrap()).is_err());
    }

    #[test]
    fn sum_and_substitution() {
        // the two halves from the P_Mas construction
        let n = 4;
        let b = pmas_building_set(n).unwrap();
        let half1: Vec<Mask> = b.sets().iter().copied().filter(|&s| s.count_ones() == 1 || s & 0b11 == 0b11).collect();
        let half2: Vec<Mask> = b
            .sets()
            .iter()
            .copied()
            .filter(|&s| s.count_ones() == 1 || (s & 0b11 == 1) || s == full_mask(n + 1))
            .collect();
        let h1 = BuildingSet::new(n + 1, half1).unwrap();
        let h2 = BuildingSet::new(n + 1, half2).unwrap();
        assert_eq!(h1.sum(&h2).unwrap(), b);
        assert!(matches!(h1.sum(&h1), Err(Error::SumUndefined(_))));
        let seg = BuildingSet::simplex(2).unwrap();
        let sq = seg.substitution(&[seg.clone(), BuildingSet::simplex(1).unwrap()]).unwrap();
        assert_eq!(sq.ground(), 3);
        assert!(sq.is_connected());
    }

    #[test]
    fn canonical_key_invariant() {
        let a = BuildingSet::graphical(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        let b = BuildingSet::graphical(4, &[(3, 1), (1, 4), (4, 2)]).unwrap();
        let star = BuildingSet::graphical(4, &[(1, 2), (1, 3), (1, 4)]).unwrap();
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_ne!(a.canonical_key(), star.canonical_key());
    }

    #[test]
    fn json_round_trip() {
        let b = pmas_building_set(3).unwrap();
        let j = b.to_json_value();
        assert_eq!(BuildingSet::from_json_value(&j).unwrap(), b);
    }
}
