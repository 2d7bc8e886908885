//! Canonical labeling of vertex-colored graphs by individualization-refinement.
//!
//! Search-tree pruning uses node invariants compared against the best leaf
//! path and orbits of automorphisms found so far that fix the current prefix.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

#[derive(Clone, Debug)]
pub struct ColoredGraph {
    pub colors: Vec<u32>,
    pub adj: Vec<Vec<u32>>,
}

impl ColoredGraph {
    pub fn new(colors: Vec<u32>) -> Self {
        let n = colors.len();
        ColoredGraph { colors, adj: vec![Vec::new(); n] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].push(v as u32);
        self.adj[v].push(u as u32);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }
}

/// Result of canonical labeling: `labeling[v]` is the canonical index of `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub labeling: Vec<usize>,
    pub certificate: Vec<u32>,
    pub automorphisms: Vec<Vec<usize>>,
}

struct Search<'g> {
    g: &'g ColoredGraph,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

struct Leaf {
    cert: Vec<u32>,
    labeling: Vec<usize>,
    invariants: Vec<u64>,
}

#[derive(Clone, Copy, PartialEq)]
enum Track {
    Equal,
    Better,
}

pub fn canonical_labeling(g: &ColoredGraph) -> Canonical {
    for a in &g.adj {
        debug_assert!(a.iter().all(|&x| (x as usize) < g.len()));
    }
    let mut s = Search { g, best: None, autos: Vec::new() };
    let start = rank_colors(&g.colors.iter().map(|&c| vec![c as u64]).collect::<Vec<_>>());
    s.descend(start, Vec::new(), Vec::new(), Track::Equal);
    let best = s.best.expect("search tree has at least one leaf");
    Canonical { labeling: best.labeling, certificate: best.cert, automorphisms: s.autos }
}

impl<'g> Search<'g> {
    fn descend(&mut self, colors: Vec<u32>, prefix: Vec<usize>, mut invs: Vec<u64>, mut track: Track) {
        let (colors, inv) = refine(self.g, colors);
        let depth = invs.len();
        invs.push(inv);
        if track == Track::Equal {
            if let Some(b) = &self.best {
                match b.invariants.get(depth) {
                    Some(&bi) if inv > bi => return,
                    Some(&bi) if inv < bi => track = Track::Better,
                    None => return,
                    _ => {}
                }
            }
        }
        let n = colors.len();
        let ncolors = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        if ncolors == n {
            self.leaf(colors, invs, track);
            return;
        }
        let target = target_cell(&colors, ncolors);
        let mut done: Vec<usize> = Vec::new();
        for &v in &target {
            if !done.is_empty() && self.same_orbit_as_done(&prefix, &done, v) {
                continue;
            }
            done.push(v);
            let mut child = prefix.clone();
            child.push(v);
            let c = individualize(&colors, v);
            self.descend(c, child, invs.clone(), track);
            // a strictly better path only counts for the first leaf reached
            if track == Track::Better {
                track = Track::Equal;
            }
        }
    }

    fn leaf(&mut self, labeling_colors: Vec<u32>, invs: Vec<u64>, track: Track) {
        let labeling: Vec<usize> = labeling_colors.iter().map(|&c| c as usize).collect();
        let cert = certificate(self.g, &labeling);
        match &self.best {
            None => {
                self.best = Some(Leaf { cert, labeling, invariants: invs });
            }
            Some(b) => {
                if track == Track::Better || (invs == b.invariants && cert < b.cert) {
                    self.best = Some(Leaf { cert, labeling, invariants: invs });
                } else if invs == b.invariants && cert == b.cert {
                    // gamma maps v to the vertex carrying the same canonical index in best
                    let n = labeling.len();
                    let mut inv_best = vec![0; n];
                    for (v, &l) in b.labeling.iter().enumerate() {
                        inv_best[l] = v;
                    }
                    let gamma: Vec<usize> = (0..n).map(|v| inv_best[labeling[v]]).collect();
                    if gamma.iter().enumerate().any(|(i, &x)| i != x) {
                        self.autos.push(gamma);
                    }
                }
            }
        }
    }

    fn same_orbit_as_done(&self, prefix: &[usize], done: &[usize], v: usize) -> bool {
        let gens: Vec<&Vec<usize>> =
            self.autos.iter().filter(|a| prefix.iter().all(|&p| a[p] == p)).collect();
        if gens.is_empty() {
            return false;
        }
        let n = self.g.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for a in gens {
            for (i, &j) in a.iter().enumerate() {
                let (ri, rj) = (find(&mut uf, i), find(&mut uf, j));
                if ri != rj {
                    uf[ri] = rj;
                }
            }
        }
        let rv = find(&mut uf, v);
        done.iter().any(|&d| find(&mut uf, d) == rv)
    }
}

/// Dense rank of keys: equal keys share a color, colors ordered by key.
fn rank_colors(keys: &[Vec<u64>]) -> Vec<u32> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut out = vec![0u32; keys.len()];
    let mut c = 0u32;
    for w in 0..idx.len() {
        if w > 0 && keys[idx[w]] != keys[idx[w - 1]] {
            c += 1;
        }
        out[idx[w]] = c;
    }
    out
}

/// Equitable refinement; returns the refined coloring and an invariant hash of
/// the quotient structure.
fn refine(g: &ColoredGraph, mut colors: Vec<u32>) -> (Vec<u32>, u64) {
    let n = colors.len();
    let mut ncolors = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    loop {
        let keys: Vec<Vec<u64>> = (0..n)
            .map(|v| {
                let mut k = Vec::with_capacity(g.adj[v].len() + 1);
                k.push(colors[v] as u64);
                let mut nb: Vec<u64> = g.adj[v].iter().map(|&u| colors[u as usize] as u64).collect();
                nb.sort_unstable();
                k.push(nb.len() as u64);
                k.extend(nb);
                k
            })
            .collect();
        let new = rank_colors(&keys);
        let nc = new.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        if nc == ncolors {
            let mut h = DefaultHasher::new();
            let mut reps: Vec<Option<usize>> = vec![None; nc];
            for v in 0..n {
                if reps[new[v] as usize].is_none() {
                    reps[new[v] as usize] = Some(v);
                }
            }
            for (c, r) in reps.iter().enumerate() {
                let r = r.unwrap();
                c.hash(&mut h);
                keys[r][1..].hash(&mut h);
            }
            // cell sizes are implied by the keys only through counts, add them
            let mut sizes = vec![0u32; nc];
            for &c in &new {
                sizes[c as usize] += 1;
            }
            sizes.hash(&mut h);
            return (new, h.finish());
        }
        colors = new;
        ncolors = nc;
    }
}

fn target_cell(colors: &[u32], ncolors: usize) -> Vec<usize> {
    let mut sizes = vec![0usize; ncolors];
    for &c in colors {
        sizes[c as usize] += 1;
    }
    let (mut best, mut best_size) = (usize::MAX, usize::MAX);
    for (c, &s) in sizes.iter().enumerate() {
        if s > 1 && s < best_size {
            best = c;
            best_size = s;
        }
    }
    (0..colors.len()).filter(|&v| colors[v] as usize == best).collect()
}

/// Split `v` off its cell, placing it first.
fn individualize(colors: &[u32], v: usize) -> Vec<u32> {
    let keys: Vec<Vec<u64>> = colors
        .iter()
        .enumerate()
        .map(|(u, &c)| vec![c as u64, if u == v { 0 } else { 1 }])
        .collect();
    rank_colors(&keys)
}

fn certificate(g: &ColoredGraph, labeling: &[usize]) -> Vec<u32> {
    let n = g.len();
    let mut inv = vec![0usize; n];
    for (v, &l) in labeling.iter().enumerate() {
        inv[l] = v;
    }
    let mut cert = Vec::with_capacity(1 + n + 2 * g.adj.iter().map(|a| a.len()).sum::<usize>());
    cert.push(n as u32);
    for &v in &inv {
        cert.push(g.colors[v]);
    }
    for &v in &inv {
        let mut nb: Vec<u32> =
            g.adj[v].iter().map(|&u| labeling[u as usize] as u32).filter(|&u| u as usize > labeling[v]).collect();
        nb.sort_unstable();
        cert.push(nb.len() as u32);
        cert.extend(nb);
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize, shift: usize) -> ColoredGraph {
        let mut g = ColoredGraph::new(vec![0; n]);
        for i in 0..n {
            g.add_edge((i + shift) % n, (i + 1 + shift) % n);
        }
        g
    }

    #[test]
    fn relabelled_cycles_agree() {
        let a = canonical_labeling(&cycle(7, 0));
        let b = canonical_labeling(&cycle(7, 3));
        assert_eq!(a.certificate, b.certificate);
    }

    #[test]
    fn distinguishes_nonisomorphic() {
        // two triangles vs a hexagon: both 2-regular on 6 vertices
        let mut two = ColoredGraph::new(vec![0; 6]);
        for (u, v) in [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)] {
            two.add_edge(u, v);
        }
        let hex = cycle(6, 0);
        assert_ne!(canonical_labeling(&two).certificate, canonical_labeling(&hex).certificate);
    }

    #[test]
    fn petersen_permuted() {
        let edges = [
            (0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
        ];
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        let mut a = ColoredGraph::new(vec![0; 10]);
        let mut b = ColoredGraph::new(vec![0; 10]);
        for &(u, v) in &edges {
            a.add_edge(u, v);
            b.add_edge(perm[u], perm[v]);
        }
        let ca = canonical_labeling(&a);
        let cb = canonical_labeling(&b);
        assert_eq!(ca.certificate, cb.certificate);
    }
}
