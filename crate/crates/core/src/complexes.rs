//! Finite simplicial complexes on labelled vertex sets.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, ColoredGraph};
use crate::error::{Error, Result};
use crate::vertex_set::{VertexSet, MAX_VERTICES};

/// A simplicial complex stored by its maximal faces.
///
/// Vertex positions index `labels`; every vertex lies in some face. The empty
/// complex `{∅}` on an empty vertex set is allowed and plays the role of the
/// nerve of a point.
#[derive(Clone)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    facets: Vec<VertexSet>,
    flag: OnceLock<bool>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.facets == other.facets
    }
}

impl Eq for SimplicialComplex {}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: Vec<Vec<&str>> = self.facets.iter().map(|s| self.labels_of(s)).collect();
        f.debug_struct("SimplicialComplex").field("vertices", &self.labels).field("facets", &faces).finish()
    }
}

/// Stable certificate of an isomorphism class plus the canonical relabeling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub certificate: Vec<u32>,
    /// `labeling[v]` is the canonical index of vertex position `v`.
    pub labeling: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub maximal_faces: Vec<Vec<String>>,
}

fn maximal_only(mut faces: Vec<VertexSet>) -> Vec<VertexSet> {
    faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
    faces.dedup();
    let mut kept: Vec<VertexSet> = Vec::with_capacity(faces.len());
    let mut seen: HashSet<VertexSet> = HashSet::new();
    for f in faces {
        if !seen.insert(f) {
            continue;
        }
        if kept.iter().any(|k| f.is_subset(k)) {
            continue;
        }
        kept.push(f);
    }
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds a complex from labels and any generating family of faces.
    pub fn new(labels: Vec<String>, faces: Vec<VertexSet>) -> Result<Self> {
        if labels.len() > MAX_VERTICES {
            return Err(Error::LimitExceeded { what: "vertex count", value: labels.len(), limit: MAX_VERTICES });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidComplex(format!("bad vertex label `{l}`")));
            }
            if !seen.insert(l.as_str()) {
                return Err(Error::InvalidComplex(format!("duplicate vertex label `{l}`")));
            }
        }
        let all = VertexSet::full(labels.len());
        for f in &faces {
            if !f.is_subset(&all) {
                return Err(Error::InvalidComplex("face uses an unknown vertex".into()));
            }
        }
        let facets = if faces.is_empty() { vec![VertexSet::empty()] } else { maximal_only(faces) };
        let covered = facets.iter().fold(VertexSet::empty(), |a, f| a.union(f));
        if covered != all {
            let ghost = all.difference(&covered).first().unwrap();
            return Err(Error::InvalidComplex(format!("ghost vertex `{}`", labels[ghost])));
        }
        Ok(SimplicialComplex { labels, facets, flag: OnceLock::new() })
    }

    fn from_parts(labels: Vec<String>, facets: Vec<VertexSet>) -> Self {
        SimplicialComplex { labels, facets, flag: OnceLock::new() }
    }

    /// Builds a complex from labelled faces; vertices are taken in `labels` order.
    pub fn from_label_faces<S: AsRef<str>>(labels: &[S], faces: &[Vec<S>]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let mut sets = Vec::with_capacity(faces.len());
        for f in faces {
            let mut s = VertexSet::empty();
            for l in f {
                let l = l.as_ref();
                s.insert(*index.get(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?);
            }
            sets.push(s);
        }
        Self::new(labels, sets)
    }

    /// Complex on `labels` whose minimal nonfaces are exactly `mnf`.
    pub fn from_minimal_nonfaces(labels: Vec<String>, mnf: &[VertexSet]) -> Result<Self> {
        let m = labels.len();
        if mnf.iter().any(|s| s.len() < 2) {
            return Err(Error::InvalidComplex("minimal nonface of size < 2".into()));
        }
        let facets = if mnf.iter().all(|s| s.len() == 2) {
            let mut adj = vec![VertexSet::full(m); m];
            for (v, a) in adj.iter_mut().enumerate() {
                a.remove(v);
            }
            for s in mnf {
                let (a, b) = (s.first().unwrap(), s.last().unwrap());
                adj[a].remove(b);
                adj[b].remove(a);
            }
            let mut out = Vec::new();
            maximal_cliques(&adj, VertexSet::full(m), &mut |c| {
                out.push(c);
                true
            });
            out
        } else {
            maximal_independent_sets(m, mnf)
        };
        Self::new(labels, facets)
    }

    /// Full simplex on the given labels.
    pub fn simplex<S: AsRef<str>>(labels: &[S]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let n = labels.len();
        Self::new(labels, vec![VertexSet::full(n)])
    }

    /// Boundary of the simplex on `1..=n+1`, the nerve of an `n`-simplex.
    pub fn simplex_boundary(n: usize) -> Self {
        if n == 0 {
            return Self::void_sphere();
        }
        let labels: Vec<String> = (1..=n + 1).map(|i| i.to_string()).collect();
        let all = VertexSet::full(n + 1);
        let facets = (0..=n).map(|v| all.without(v)).collect();
        Self::new(labels, facets).expect("simplex boundary is valid")
    }

    /// The complex `{∅}`.
    pub fn void_sphere() -> Self {
        Self::from_parts(Vec::new(), vec![VertexSet::empty()])
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[VertexSet] {
        &self.facets
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.labels.len())
    }

    /// Dimension; `-1` for `{∅}`.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.facets[0].len();
        self.facets.iter().all(|f| f.len() == d)
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(f))
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<VertexSet> {
        let mut s = VertexSet::empty();
        for l in labels {
            let l = l.as_ref();
            s.insert(self.position(l).ok_or_else(|| Error::UnknownVertex(l.to_string()))?);
        }
        Ok(s)
    }

    pub fn labels_of(&self, s: &VertexSet) -> Vec<&str> {
        s.iter().map(|v| self.labels[v].as_str()).collect()
    }

    pub fn format_set(&self, s: &VertexSet) -> String {
        format!("{{{}}}", self.labels_of(s).join(","))
    }

    /// Every face including `∅`.
    pub fn all_faces(&self) -> Vec<VertexSet> {
        let mut seen: HashSet<VertexSet> = HashSet::new();
        for f in &self.facets {
            for s in f.subsets() {
                seen.insert(s);
            }
        }
        let mut out: Vec<VertexSet> = seen.into_iter().collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(b)));
        out
    }

    /// `f[k]` counts faces with `k` vertices, starting at `f[0] = 1`.
    pub fn face_counts(&self) -> Vec<u64> {
        let d = (self.dim() + 1) as usize;
        let mut counts = vec![0u64; d + 1];
        if self.facets.len() > 2000 && self.is_flag() {
            let adj = self.adjacency();
            fn rec(adj: &[VertexSet], cand: VertexSet, size: usize, counts: &mut [u64]) {
                counts[size] += 1;
                for v in cand.iter() {
                    let next = cand.intersection(&adj[v]).difference(&VertexSet::full(v + 1));
                    rec(adj, next, size + 1, counts);
                }
            }
            rec(&adj, self.vertex_set(), 0, &mut counts);
        } else {
            for s in self.all_faces() {
                counts[s.len()] += 1;
            }
        }
        counts
    }

    pub fn adjacency(&self) -> Vec<VertexSet> {
        let m = self.labels.len();
        let mut adj = vec![VertexSet::empty(); m];
        for f in &self.facets {
            for v in f.iter() {
                adj[v] = adj[v].union(&f.without(v));
            }
        }
        adj
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let adj = self.adjacency();
        let mut out = Vec::new();
        for (u, a) in adj.iter().enumerate() {
            for v in a.iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    /// Flag means every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> bool {
        *self.flag.get_or_init(|| {
            let facet_set: HashSet<VertexSet> = self.facets.iter().copied().collect();
            let adj = self.adjacency();
            let mut ok = true;
            maximal_cliques(&adj, self.vertex_set(), &mut |c| {
                if !facet_set.contains(&c) {
                    ok = false;
                }
                ok
            });
            ok
        })
    }

    pub fn minimal_nonfaces(&self) -> Vec<VertexSet> {
        let m = self.labels.len();
        let mut out = Vec::new();
        if self.is_flag() {
            let adj = self.adjacency();
            for u in 0..m {
                for v in u + 1..m {
                    if !adj[u].contains(v) {
                        out.push(VertexSet::empty().with(u).with(v));
                    }
                }
            }
        } else {
            let faces: HashSet<VertexSet> = self.all_faces().into_iter().collect();
            for s in &faces {
                let start = s.last().map_or(0, |x| x + 1);
                for v in start..m {
                    let cand = s.with(v);
                    if faces.contains(&cand) {
                        continue;
                    }
                    if cand.iter().all(|w| faces.contains(&cand.without(w))) {
                        out.push(cand);
                    }
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.lex_cmp(b)));
        out
    }

    /// Largest `q` with every minimal nonface of size at least `q + 1`;
    /// `None` for a simplex.
    pub fn q_connectivity(&self) -> Option<usize> {
        self.minimal_nonfaces().iter().map(|s| s.len() - 1).min()
    }

    /// Stanley-Reisner generators as label lists.
    pub fn stanley_reisner_ideal(&self) -> Vec<Vec<String>> {
        self.minimal_nonfaces()
            .iter()
            .map(|s| self.labels_of(s).into_iter().map(String::from).collect())
            .collect()
    }

    /// Full subcomplex `K_I`, vertices kept in their original order.
    pub fn full_subcomplex(&self, i: &VertexSet) -> SimplicialComplex {
        let pos: Vec<usize> = i.iter().filter(|&v| v < self.labels.len()).collect();
        let labels: Vec<String> = pos.iter().map(|&v| self.labels[v].clone()).collect();
        let mut index = vec![usize::MAX; self.labels.len()];
        for (k, &v) in pos.iter().enumerate() {
            index[v] = k;
        }
        let faces: Vec<VertexSet> =
            self.facets.iter().map(|f| f.intersection(i).map(|v| index[v])).collect();
        let facets = maximal_only(faces);
        Self::from_parts(labels, facets)
    }

    /// Full subcomplex on the named vertices; unknown labels are reported, not fatal.
    pub fn full_subcomplex_by_labels<S: AsRef<str>>(&self, names: &[S]) -> (SimplicialComplex, Vec<String>) {
        let mut set = VertexSet::empty();
        let mut missing = Vec::new();
        for n in names {
            match self.position(n.as_ref()) {
                Some(p) => set.insert(p),
                None => missing.push(n.as_ref().to_string()),
            }
        }
        (self.full_subcomplex(&set), missing)
    }

    pub fn link(&self, sigma: &VertexSet) -> Result<SimplicialComplex> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(self.format_set(sigma)));
        }
        let faces: Vec<VertexSet> =
            self.facets.iter().filter(|f| sigma.is_subset(f)).map(|f| f.difference(sigma)).collect();
        let support = faces.iter().fold(VertexSet::empty(), |a, f| a.union(f));
        let sub = Self::from_parts(self.labels.clone(), maximal_only(faces));
        Ok(sub.restrict_to(&support))
    }

    /// Whether the link of `sigma` is the full subcomplex on its own vertices.
    pub fn link_is_full(&self, sigma: &VertexSet) -> Result<bool> {
        if !self.contains(sigma) {
            return Err(Error::NotAFace(self.format_set(sigma)));
        }
        let support = self.facets.iter().filter(|f| sigma.is_subset(f)).fold(VertexSet::empty(), |a, f| a.union(&f.difference(sigma)));
        let mut link = self.link(sigma)?.facets().to_vec();
        let mut full = self.full_subcomplex(&support).facets().to_vec();
        link.sort();
        full.sort();
        Ok(link == full)
    }

    /// Nonempty faces whose link is not a full subcomplex; empty exactly when `K` is flag
    /// (for the nerve of a simple polytope).
    pub fn faces_with_nonfull_links(&self) -> Vec<VertexSet> {
        self.all_faces().into_iter().filter(|s| !s.is_empty() && !self.link_is_full(s).expect("face")).collect()
    }

    /// Drops absent vertices and renumbers positions; `support` must cover every facet.
    fn restrict_to(&self, support: &VertexSet) -> SimplicialComplex {
        let pos: Vec<usize> = support.to_vec();
        let mut index = vec![usize::MAX; self.labels.len()];
        for (k, &v) in pos.iter().enumerate() {
            index[v] = k;
        }
        let labels = pos.iter().map(|&v| self.labels[v].clone()).collect();
        let facets = maximal_only(self.facets.iter().map(|f| f.map(|v| index[v])).collect());
        Self::from_parts(labels, facets)
    }

    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let mine: HashSet<&str> = self.labels.iter().map(String::as_str).collect();
        if let Some(l) = other.labels.iter().find(|l| mine.contains(l.as_str())) {
            return Err(Error::LabelClash(l.clone()));
        }
        let m = self.labels.len();
        if m + other.labels.len() > MAX_VERTICES {
            return Err(Error::LimitExceeded {
                what: "vertex count",
                value: m + other.labels.len(),
                limit: MAX_VERTICES,
            });
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().cloned());
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.union(&b.map(|v| v + m)));
            }
        }
        facets.sort();
        Ok(Self::from_parts(labels, facets))
    }

    /// Prefixes every label, e.g. to make two complexes joinable.
    pub fn with_label_prefix(&self, prefix: &str) -> SimplicialComplex {
        let labels = self.labels.iter().map(|l| format!("{prefix}{l}")).collect();
        Self::from_parts(labels, self.facets.clone())
    }

    pub fn relabel(&self, labels: Vec<String>) -> Result<SimplicialComplex> {
        if labels.len() != self.labels.len() {
            return Err(Error::InvalidComplex("relabel with wrong number of labels".into()));
        }
        Self::new(labels, self.facets.clone())
    }

    /// Image under a permutation of positions: position `v` moves to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SimplicialComplex {
        let m = self.labels.len();
        let mut labels = vec![String::new(); m];
        for v in 0..m {
            labels[perm[v]] = self.labels[v].clone();
        }
        let mut facets: Vec<VertexSet> = self.facets.iter().map(|f| f.map(|v| perm[v])).collect();
        facets.sort();
        Self::from_parts(labels, facets)
    }

    /// Simplicial multiwedge along multiplicities `j`; vertices with
    /// multiplicity one keep their label, others become `label.1, label.2, ...`.
    pub fn multiwedge(&self, j: &[usize]) -> Result<SimplicialComplex> {
        let m = self.labels.len();
        if j.len() != m || j.iter().any(|&x| x == 0) {
            return Err(Error::InvalidInput("multiwedge needs one positive multiplicity per vertex".into()));
        }
        let total: usize = j.iter().sum();
        if total > MAX_VERTICES {
            return Err(Error::LimitExceeded { what: "vertex count", value: total, limit: MAX_VERTICES });
        }
        let mut labels = Vec::with_capacity(total);
        let mut copies: Vec<Vec<usize>> = Vec::with_capacity(m);
        for (v, &k) in j.iter().enumerate() {
            let mut c = Vec::new();
            for t in 0..k {
                c.push(labels.len());
                labels.push(if k == 1 { self.labels[v].clone() } else { format!("{}.{}", self.labels[v], t + 1) });
            }
            copies.push(c);
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            let mut base = VertexSet::empty();
            for v in f.iter() {
                for &c in &copies[v] {
                    base.insert(c);
                }
            }
            let outside: Vec<usize> = (0..m).filter(|v| !f.contains(*v)).collect();
            let mut acc = vec![base];
            for &v in &outside {
                let mut next = Vec::new();
                for s in &acc {
                    for &omit in &copies[v] {
                        let mut t = *s;
                        for &c in &copies[v] {
                            if c != omit {
                                t.insert(c);
                            }
                        }
                        next.push(t);
                    }
                }
                acc = next;
            }
            facets.extend(acc);
        }
        Self::new(labels, facets)
    }

    /// Stellar subdivision at a face `sigma`; the new vertex is appended.
    pub fn stellar_subdivision(&self, sigma: &VertexSet, new_label: &str) -> Result<SimplicialComplex> {
        if sigma.is_empty() || !self.contains(sigma) {
            return Err(Error::NotAFace(self.format_set(sigma)));
        }
        if self.position(new_label).is_some() {
            return Err(Error::LabelClash(new_label.to_string()));
        }
        let w = self.labels.len();
        if w + 1 > MAX_VERTICES {
            return Err(Error::LimitExceeded { what: "vertex count", value: w + 1, limit: MAX_VERTICES });
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            if sigma.is_subset(f) {
                for v in sigma.iter() {
                    facets.push(f.without(v).with(w));
                }
            } else {
                facets.push(*f);
            }
        }
        let mut labels = self.labels.clone();
        labels.push(new_label.to_string());
        let support = facets.iter().fold(VertexSet::empty(), |a, f| a.union(f));
        Ok(Self::from_parts(labels, maximal_only(facets)).restrict_to(&support))
    }

    /// Pure, every ridge in two facets, strongly connected, sphere Euler characteristic.
    pub fn sphere_check(&self) -> Result<()> {
        let d = self.dim();
        if d == -1 {
            return Ok(());
        }
        if !self.is_pure() {
            return Err(Error::NotASphere("complex is not pure".into()));
        }
        if d == 0 {
            return if self.facets.len() == 2 {
                Ok(())
            } else {
                Err(Error::NotASphere(format!("{} points", self.facets.len())))
            };
        }
        let mut ridges: HashMap<VertexSet, Vec<usize>> = HashMap::new();
        for (k, f) in self.facets.iter().enumerate() {
            for v in f.iter() {
                ridges.entry(f.without(v)).or_default().push(k);
            }
        }
        if let Some((r, fs)) = ridges.iter().find(|(_, fs)| fs.len() != 2) {
            return Err(Error::NotASphere(format!(
                "ridge {} lies in {} facets",
                self.format_set(r),
                fs.len()
            )));
        }
        let n = self.facets.len();
        let mut adj = vec![Vec::new(); n];
        for fs in ridges.values() {
            adj[fs[0]].push(fs[1]);
            adj[fs[1]].push(fs[0]);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::NotASphere("not strongly connected".into()));
        }
        let counts = self.face_counts();
        let chi: i64 = counts.iter().skip(1).enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        let expected = if d % 2 == 0 { 2 } else { 0 };
        if chi != expected {
            return Err(Error::NotASphere(format!("Euler characteristic {chi}")));
        }
        Ok(())
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        let m = self.labels.len();
        let flag = self.is_flag();
        let g = if flag {
            let mut g = ColoredGraph::new(vec![0; m]);
            for (u, v) in self.edges() {
                g.add_edge(u, v);
            }
            g
        } else {
            let mut colors = vec![0u32; m];
            colors.extend(std::iter::repeat(1).take(self.facets.len()));
            let mut g = ColoredGraph::new(colors);
            for (k, f) in self.facets.iter().enumerate() {
                for v in f.iter() {
                    g.add_edge(v, m + k);
                }
            }
            g
        };
        let c = canonical_labeling(&g);
        let mut certificate = vec![flag as u32, m as u32];
        certificate.extend(c.certificate);
        CanonicalForm { certificate, labeling: c.labeling[..m].to_vec() }
    }

    /// The canonical representative with labels `1..=m`.
    pub fn canonical_complex(&self) -> SimplicialComplex {
        let cf = self.canonical_form();
        let mut labels = vec![String::new(); self.labels.len()];
        for (v, &c) in cf.labeling.iter().enumerate() {
            labels[v] = (c + 1).to_string();
        }
        let p = Self::from_parts(labels, self.facets.clone());
        let perm = cf.labeling.clone();
        p.permuted(&perm)
    }

    pub fn is_isomorphic(&self, other: &SimplicialComplex) -> bool {
        self.labels.len() == other.labels.len()
            && self.facets.len() == other.facets.len()
            && self.canonical_form().certificate == other.canonical_form().certificate
    }

    /// Join factors: vertices are grouped by chains of minimal nonfaces;
    /// cone vertices form one-vertex factors.
    pub fn join_decompose(&self) -> Vec<SimplicialComplex> {
        let m = self.labels.len();
        if m == 0 {
            return vec![self.clone()];
        }
        let mut uf: Vec<usize> = (0..m).collect();
        fn find(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        for s in self.minimal_nonfaces() {
            let a = s.first().unwrap();
            for b in s.iter() {
                let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
                if ra != rb {
                    uf[rb] = ra;
                }
            }
        }
        let mut groups: Vec<VertexSet> = Vec::new();
        let mut root_of: HashMap<usize, usize> = HashMap::new();
        for v in 0..m {
            let r = find(&mut uf, v);
            let g = *root_of.entry(r).or_insert_with(|| {
                groups.push(VertexSet::empty());
                groups.len() - 1
            });
            groups[g].insert(v);
        }
        groups.iter().map(|g| self.full_subcomplex(g)).collect()
    }

    pub fn to_json_value(&self) -> ComplexJson {
        let mut vertices = self.labels.clone();
        vertices.sort();
        let mut faces: Vec<Vec<String>> = self
            .facets
            .iter()
            .map(|f| {
                let mut v: Vec<String> = self.labels_of(f).into_iter().map(String::from).collect();
                v.sort();
                v
            })
            .collect();
        faces.sort();
        ComplexJson { vertices, maximal_faces: faces }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("complex serializes")
    }

    pub fn from_json_value(j: &ComplexJson) -> Result<Self> {
        Self::from_label_faces(&j.vertices, &j.maximal_faces)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(s)?;
        Self::from_json_value(&j)
    }
}

/// Bron-Kerbosch with pivoting over `candidates`; the callback returns false to stop.
pub fn maximal_cliques(adj: &[VertexSet], candidates: VertexSet, out: &mut dyn FnMut(VertexSet) -> bool) {
    fn bk(
        adj: &[VertexSet],
        r: VertexSet,
        p: VertexSet,
        x: VertexSet,
        out: &mut dyn FnMut(VertexSet) -> bool,
    ) -> bool {
        if p.is_empty() {
            if x.is_empty() {
                return out(r);
            }
            return true;
        }
        let pivot = p
            .union(&x)
            .iter()
            .max_by_key(|&u| p.intersection(&adj[u]).len())
            .unwrap();
        let mut p = p;
        let mut x = x;
        for v in p.difference(&adj[pivot]).iter() {
            if !bk(adj, r.with(v), p.intersection(&adj[v]), x.intersection(&adj[v]), out) {
                return false;
            }
            p.remove(v);
            x.insert(v);
        }
        true
    }
    bk(adj, VertexSet::empty(), candidates, VertexSet::empty(), out);
}

/// Maximal subsets of `0..m` containing none of `forbidden`.
fn maximal_independent_sets(m: usize, forbidden: &[VertexSet]) -> Vec<VertexSet> {
    let mut out = Vec::new();
    fn rec(v: usize, m: usize, cur: VertexSet, forbidden: &[VertexSet], out: &mut Vec<VertexSet>) {
        if v == m {
            let maximal = (0..m).filter(|&u| !cur.contains(u)).all(|u| {
                let c = cur.with(u);
                forbidden.iter().any(|f| f.is_subset(&c))
            });
            if maximal {
                out.push(cur);
            }
            return;
        }
        let with = cur.with(v);
        if !forbidden.iter().any(|f| f.contains(v) && f.is_subset(&with)) {
            rec(v + 1, m, with, forbidden, out);
        }
        rec(v + 1, m, cur, forbidden, out);
    }
    rec(0, m, VertexSet::empty(), forbidden, &mut out);
    out
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let faces: BTreeSet<String> = self.facets.iter().map(|s| self.format_set(s)).collect();
        write!(f, "[{}]", faces.into_iter().collect::<Vec<_>>().join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(labels: &[&str], faces: &[&[&str]]) -> SimplicialComplex {
        let faces: Vec<Vec<&str>> = faces.iter().map(|f| f.to_vec()).collect();
        SimplicialComplex::from_label_faces(labels, &faces).unwrap()
    }

    fn pentagon() -> SimplicialComplex {
        sc(&["1", "2", "3", "4", "5"], &[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "5"], &["5", "1"]])
    }

    #[test]
    fn square_nonfaces() {
        let k = sc(&["1", "2", "3", "4"], &[&["1", "2"], &["2", "3"], &["3", "4"], &["4", "1"]]);
        let mnf: Vec<Vec<&str>> = k.minimal_nonfaces().iter().map(|s| k.labels_of(s)).collect();
        assert_eq!(mnf, vec![vec!["1", "3"], vec!["2", "4"]]);
        assert!(k.is_flag());
        assert_eq!(k.q_connectivity(), Some(1));
        assert!(k.sphere_check().is_ok());
    }

    #[test]
    fn prism_links() {
        let tri = SimplicialComplex::simplex_boundary(2);
        let ends = sc(&["b", "t"], &[&["b"], &["t"]]);
        let prism = tri.join(&ends).unwrap();
        let bad = prism.faces_with_nonfull_links();
        let names: Vec<Vec<&str>> = bad.iter().map(|s| prism.labels_of(s)).collect();
        // facets: exactly the three quadrangles; edges: where a quadrangle meets a triangle
        let facets: Vec<&Vec<&str>> = names.iter().filter(|n| n.len() == 1).collect();
        assert_eq!(facets, [&vec!["1"], &vec!["2"], &vec!["3"]]);
        assert_eq!(bad.len(), 9, "{names:?}");
        assert!(names.iter().filter(|n| n.len() == 2).all(|n| n.contains(&"t") || n.contains(&"b")));
        assert!(pentagon().faces_with_nonfull_links().is_empty());
    }

    #[test]
    fn triangle_boundary_not_flag() {
        let k = SimplicialComplex::simplex_boundary(2);
        assert!(!k.is_flag());
        assert_eq!(k.q_connectivity(), Some(2));
        assert_eq!(k.minimal_nonfaces(), vec![VertexSet::full(3)]);
    }

    #[test]
    fn pentagon_link_and_subcomplex() {
        let k = pentagon();
        let l = k.link(&k.set_of(&["1"]).unwrap()).unwrap();
        assert_eq!(l.labels(), &["2".to_string(), "5".to_string()]);
        assert_eq!(l.facets().len(), 2);
        let sub = k.full_subcomplex(&k.set_of(&["1", "3"]).unwrap());
        assert_eq!(sub.facets().len(), 2);
        assert!(k.link(&k.set_of(&["1", "3"]).unwrap()).is_err());
        let (_, missing) = k.full_subcomplex_by_labels(&["1", "9"]);
        assert_eq!(missing, vec!["9".to_string()]);
    }

    #[test]
    fn ghost_vertex_rejected() {
        let faces: Vec<Vec<&str>> = vec![vec!["1"]];
        assert!(SimplicialComplex::from_label_faces(&["1", "2"], &faces).is_err());
    }

    #[test]
    fn multiwedge_two_points() {
        let k = sc(&["1", "2"], &[&["1"], &["2"]]);
        let w = k.multiwedge(&[2, 1]).unwrap();
        let mnf: Vec<Vec<&str>> = w.minimal_nonfaces().iter().map(|s| w.labels_of(s)).collect();
        assert_eq!(mnf, vec![vec!["1.1", "1.2", "2"]]);
        assert_eq!(k.multiwedge(&[1, 1]).unwrap(), k);
    }

    #[test]
    fn join_clash() {
        let k = pentagon();
        assert!(matches!(k.join(&k), Err(Error::LabelClash(_))));
        let j = k.join(&k.with_label_prefix("b")).unwrap();
        assert_eq!(j.facets().len(), 25);
        assert_eq!(j.join_decompose().len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let k = pentagon();
        let s = k.to_json();
        assert_eq!(SimplicialComplex::from_json(&s).unwrap().to_json(), s);
    }

    #[test]
    fn canonical_pentagon_relabelled() {
        let k = pentagon();
        let p = k.permuted(&[2, 0, 4, 1, 3]);
        assert_eq!(k.canonical_form().certificate, p.canonical_form().certificate);
        assert!(!k.is_isomorphic(&SimplicialComplex::simplex_boundary(4)));
        assert_eq!(k.canonical_complex(), p.canonical_complex());
    }

    #[test]
    fn stellar_subdivision_of_edge() {
        let k = SimplicialComplex::simplex_boundary(2);
        let s = k.stellar_subdivision(&k.set_of(&["1", "2"]).unwrap(), "w").unwrap();
        assert_eq!(s.facets().len(), 4);
        assert!(s.sphere_check().is_ok());
    }

    #[test]
    fn sphere_check_rejects() {
        let path = sc(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]);
        assert!(path.sphere_check().is_err());
        let three = sc(&["1", "2", "3"], &[&["1"], &["2"], &["3"]]);
        assert!(three.sphere_check().is_err());
        assert!(SimplicialComplex::simplex_boundary(3).sphere_check().is_ok());
    }

    #[test]
    fn from_nonfaces_matches() {
        let k = pentagon();
        let back = SimplicialComplex::from_minimal_nonfaces(k.labels().to_vec(), &k.minimal_nonfaces()).unwrap();
        assert_eq!(back, k);
        let t = SimplicialComplex::simplex_boundary(3);
        let back = SimplicialComplex::from_minimal_nonfaces(t.labels().to_vec(), &t.minimal_nonfaces()).unwrap();
        assert_eq!(back, t);
    }
}
