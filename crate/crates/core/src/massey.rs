//! Massey products in `H(R(K))` through multigraded defining systems.
//!
//! Entries are indexed `c_{i,j}` with `1 <= i < j <= k+1` as in the matrix
//! picture; `c_{i,i+1}` are the inputs and `c_{1,k+1}` is never formed.
//! Each entry satisfies `d c_{i,j} = Σ_{i<r<j} c̄_{i,r} c_{r,j}` and the value
//! is `a = -Σ_{1<r<k+1} c̄_{1,r} c_{r,k+1}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::SimplicialComplex;
use crate::error::{Error, Result};
use crate::hochster::betti_entry;
use crate::linalg::{Echelon, Field, FieldSpec};
use crate::nestohedra::format_mask;
use crate::tor_algebra::{Bidegree, Dga, DgaElement, TermJson};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    #[serde(rename = "exhaustive-gf2")]
    ExhaustiveGf2,
    #[serde(rename = "vanishing")]
    Vanishing,
    #[serde(rename = "auto")]
    Auto,
}

impl FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive-gf2" | "exhaustive" => Ok(Strategy::ExhaustiveGf2),
            "vanishing" => Ok(Strategy::Vanishing),
            "auto" => Ok(Strategy::Auto),
            _ => Err(Error::InvalidInput(format!("unknown strategy '{s}'"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::ExhaustiveGf2 => "exhaustive-gf2",
            Strategy::Vanishing => "vanishing",
            Strategy::Auto => "auto",
        })
    }
}

/// Evidence level for strict definedness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strictness {
    /// Every defining system was enumerated and all values agree.
    Exhaustive,
    /// Every interior slot has zero cohomology, so the system is unique up to coboundaries.
    Vanishing,
    /// Enumeration found more than one value.
    No,
    Unknown,
}

impl Strictness {
    pub fn is_strict(self) -> bool {
        matches!(self, Strictness::Exhaustive | Strictness::Vanishing)
    }
}

#[derive(Clone, Debug)]
pub struct DefiningSystem<F: Field> {
    k: usize,
    entries: BTreeMap<(usize, usize), DgaElement<F>>,
}

impl<F: Field> DefiningSystem<F> {
    pub fn order(&self) -> usize {
        self.k
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&DgaElement<F>> {
        self.entries.get(&(i, j))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &DgaElement<F>)> {
        self.entries.iter()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MasseyReport {
    pub k: usize,
    pub defined: bool,
    pub strict: Strictness,
    /// `None` when the evidence does not settle it.
    pub nontrivial: Option<bool>,
    /// Whether some defining system gives a coboundary; `None` when not settled.
    pub contains_zero: Option<bool>,
    pub decomposable: Option<bool>,
    pub target_degree: usize,
    /// Exterior count and multidegree labels of the value.
    pub target_bidegree: (usize, Vec<String>),
    pub value_count: Option<usize>,
    /// Number of defining systems visited.
    pub systems: usize,
    pub values: Vec<Vec<TermJson>>,
}

/// Bidegree of the slot `(i, j)` and whether its multidegree has a repeated coordinate.
fn slot<F: Field>(classes: &[DgaElement<F>], i: usize, j: usize) -> (Bidegree, bool) {
    let mut support = VertexSet::empty();
    let mut degenerate = false;
    let mut deg = 0usize;
    for c in &classes[i - 1..j - 1] {
        degenerate |= c.degenerate || support.intersects(&c.bideg.j);
        support = support.union(&c.bideg.j);
        deg += c.total_degree();
    }
    let total = deg + 1 - (j - i);
    let ext = (2 * support.len()).saturating_sub(total);
    (Bidegree::new(ext, support), degenerate)
}

struct Engine<'a, 'k, F: Field> {
    dga: &'a Dga<'k, F>,
    classes: &'a [DgaElement<F>],
    k: usize,
    /// Interior slots by increasing length.
    slots: Vec<(usize, usize)>,
}

impl<'a, 'k, F: Field> Engine<'a, 'k, F> {
    fn new(dga: &'a Dga<'k, F>, classes: &'a [DgaElement<F>]) -> Result<Self> {
        let k = classes.len();
        if k < 2 {
            return Err(Error::InvalidInput("a Massey product needs at least two classes".into()));
        }
        for c in classes {
            if c.bideg.j.is_empty() {
                return Err(Error::InvalidInput("inputs must have positive degree".into()));
            }
            if !dga.is_cocycle(c) {
                return Err(Error::NotCocycle(dga.format(c)));
            }
        }
        let mut slots = Vec::new();
        for len in 2..k {
            for i in 1..=k + 1 - len {
                slots.push((i, i + len));
            }
        }
        Ok(Engine { dga, classes, k, slots })
    }

    fn initial(&self) -> BTreeMap<(usize, usize), DgaElement<F>> {
        (1..=self.k).map(|i| ((i, i + 1), self.classes[i - 1].clone())).collect()
    }

    /// `Σ_{i<r<j} c̄_{i,r} c_{r,j}`.
    fn bar_product_sum(&self, entries: &BTreeMap<(usize, usize), DgaElement<F>>, i: usize, j: usize) -> DgaElement<F> {
        let f = self.dga.field();
        let (b, degenerate) = slot(self.classes, i, j);
        let target = Bidegree::new(b.i.saturating_sub(1), b.j);
        if degenerate {
            return DgaElement::zero_degenerate(target);
        }
        let mut acc = DgaElement::zero(target);
        for r in i + 1..j {
            let p = self.dga.product(&entries[&(i, r)].bar(f), &entries[&(r, j)]);
            if !p.is_zero() {
                acc = acc.add(f, &p);
            }
        }
        acc
    }

    fn value(&self, entries: &BTreeMap<(usize, usize), DgaElement<F>>) -> DgaElement<F> {
        self.bar_product_sum(entries, 1, self.k + 1).neg(self.dga.field())
    }

    /// Particular solution for a slot, or `None` when its equation has no solution.
    fn solve_slot(&self, entries: &BTreeMap<(usize, usize), DgaElement<F>>, i: usize, j: usize) -> Result<Option<DgaElement<F>>> {
        let (b, degenerate) = slot(self.classes, i, j);
        let rhs = self.bar_product_sum(entries, i, j);
        if degenerate {
            if !rhs.is_zero() {
                return Err(Error::InvalidInput(format!("slot ({i},{j}) has a repeated coordinate but a nonzero equation")));
            }
            return Ok(Some(DgaElement::zero_degenerate(b)));
        }
        Ok(self.dga.coboundary_solve(&rhs))
    }

    /// Cohomology representatives that parametrize the solutions of a slot modulo coboundaries.
    fn freedom(&self, i: usize, j: usize) -> Vec<DgaElement<F>> {
        let (b, degenerate) = slot(self.classes, i, j);
        if degenerate || b.i > b.j.len() {
            return Vec::new();
        }
        self.dga.cohomology_basis(b)
    }

    fn first_system(&self) -> Result<Option<DefiningSystem<F>>> {
        let mut entries = self.initial();
        for &(i, j) in &self.slots {
            match self.solve_slot(&entries, i, j)? {
                Some(c) => {
                    entries.insert((i, j), c);
                }
                None => return Ok(None),
            }
        }
        Ok(Some(DefiningSystem { k: self.k, entries }))
    }

    /// Calls `f` on every defining system, one per coset of coboundaries in each slot.
    fn enumerate(&self, coeffs: &[F::Elem], f: &mut dyn FnMut(&BTreeMap<(usize, usize), DgaElement<F>>)) -> Result<()> {
        let free: Vec<Vec<DgaElement<F>>> = self.slots.iter().map(|&(i, j)| self.freedom(i, j)).collect();
        let mut entries = self.initial();
        self.explore(0, &free, coeffs, &mut entries, f)
    }

    fn explore(
        &self,
        pos: usize,
        free: &[Vec<DgaElement<F>>],
        coeffs: &[F::Elem],
        entries: &mut BTreeMap<(usize, usize), DgaElement<F>>,
        f: &mut dyn FnMut(&BTreeMap<(usize, usize), DgaElement<F>>),
    ) -> Result<()> {
        if pos == self.slots.len() {
            f(entries);
            return Ok(());
        }
        let (i, j) = self.slots[pos];
        let Some(base) = self.solve_slot(entries, i, j)? else {
            return Ok(());
        };
        let field = self.dga.field();
        let h = free[pos].len();
        let mut digits = vec![0usize; h];
        loop {
            let mut c = base.clone();
            for (t, &dgt) in digits.iter().enumerate() {
                if !field.is_zero(&coeffs[dgt]) {
                    c = c.add(field, &free[pos][t].scale(field, &coeffs[dgt]));
                }
            }
            entries.insert((i, j), c);
            self.explore(pos + 1, free, coeffs, entries, f)?;
            // next coefficient vector
            let mut t = 0;
            while t < h {
                digits[t] += 1;
                if digits[t] < coeffs.len() {
                    break;
                }
                digits[t] = 0;
                t += 1;
            }
            if t == h {
                break;
            }
        }
        entries.remove(&(i, j));
        Ok(())
    }

    fn free_dimension(&self) -> usize {
        self.slots.iter().map(|&(i, j)| self.freedom(i, j).len()).sum()
    }

    fn target(&self) -> Bidegree {
        let (b, _) = slot(self.classes, 1, self.k + 1);
        Bidegree::new(b.i.saturating_sub(1), b.j)
    }

    fn target_degree(&self) -> usize {
        self.classes.iter().map(|c| c.total_degree()).sum::<usize>() + 2 - self.k
    }
}

/// A defining system with deterministic particular solutions, if one exists along that path.
pub fn build_defining_system<F: Field>(dga: &Dga<'_, F>, classes: &[DgaElement<F>]) -> Result<Option<DefiningSystem<F>>> {
    Engine::new(dga, classes)?.first_system()
}

/// Checks every defining equation of `sys` against the given inputs.
pub fn verify_defining_system<F: Field>(dga: &Dga<'_, F>, classes: &[DgaElement<F>], sys: &DefiningSystem<F>) -> Result<bool> {
    let e = Engine::new(dga, classes)?;
    for i in 1..=e.k {
        match sys.entries.get(&(i, i + 1)) {
            Some(c) if c.bideg == classes[i - 1].bideg && c.terms == classes[i - 1].terms => {}
            _ => return Ok(false),
        }
    }
    for &(i, j) in &e.slots {
        let Some(c) = sys.entries.get(&(i, j)) else {
            return Ok(false);
        };
        let lhs = dga.differential(c);
        let rhs = e.bar_product_sum(&sys.entries, i, j);
        if !lhs.sub(dga.field(), &rhs).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `a(C)`, checked to be a cocycle.
pub fn massey_value<F: Field>(dga: &Dga<'_, F>, classes: &[DgaElement<F>], sys: &DefiningSystem<F>) -> Result<DgaElement<F>> {
    let e = Engine::new(dga, classes)?;
    let a = e.value(&sys.entries);
    if !dga.is_cocycle(&a) {
        return Err(Error::NotCocycle(dga.format(&a)));
    }
    Ok(a)
}

/// Subspace of a bidegree spanned by coboundaries and products of positive-degree classes.
pub fn decomposables<F: Field>(dga: &Dga<'_, F>, target: Bidegree) -> Echelon<F> {
    let comp = dga.component(target);
    let mut span = comp.coboundaries.clone();
    let elems = target.j.to_vec();
    if elems.len() < 2 {
        return span;
    }
    let anchor = elems[0];
    let rest = target.j.without(anchor);
    for sub in rest.subsets() {
        let a = sub.with(anchor);
        let b = target.j.difference(&a);
        if b.is_empty() {
            continue;
        }
        for ia in 0..=a.len().min(target.i) {
            let ib = target.i - ia;
            if ib > b.len() {
                continue;
            }
            let ha = dga.cohomology_basis(Bidegree::new(ia, a));
            if ha.is_empty() {
                continue;
            }
            let hb = dga.cohomology_basis(Bidegree::new(ib, b));
            for x in &ha {
                for y in &hb {
                    let p = dga.product(x, y);
                    if !p.is_zero() {
                        span.insert(&dga.to_vector(&p));
                    }
                }
            }
        }
    }
    span
}

fn check_exhaustive_field<F: Field>(dga: &Dga<'_, F>) -> Result<Vec<F::Elem>> {
    if dga.field().spec() != FieldSpec::Prime(2) {
        return Err(Error::InvalidField(format!("exhaustive enumeration runs over GF(2), not {}", dga.field().spec())));
    }
    Ok(dga.field().elements().expect("finite field"))
}

/// Classifies `⟨α_1, ..., α_k⟩`.
pub fn massey_product<F: Field>(dga: &Dga<'_, F>, classes: &[DgaElement<F>], strategy: Strategy, budget: usize) -> Result<MasseyReport> {
    let engine = Engine::new(dga, classes)?;
    let strategy = match strategy {
        Strategy::Auto if dga.field().spec() == FieldSpec::Prime(2) && engine.free_dimension() <= budget => Strategy::ExhaustiveGf2,
        Strategy::Auto => Strategy::Vanishing,
        s => s,
    };
    let target = engine.target();
    let k = dga.complex();
    let mut report = MasseyReport {
        k: classes.len(),
        defined: false,
        strict: Strictness::Unknown,
        nontrivial: None,
        contains_zero: None,
        decomposable: None,
        target_degree: engine.target_degree(),
        target_bidegree: (target.i, k.labels_of(&target.j).into_iter().map(String::from).collect()),
        value_count: None,
        systems: 0,
        values: Vec::new(),
    };
    match strategy {
        Strategy::ExhaustiveGf2 => {
            let coeffs = check_exhaustive_field(dga)?;
            let needed = engine.free_dimension();
            if needed > budget {
                return Err(Error::BudgetExceeded { needed, budget });
            }
            let mut values: HashMap<Vec<F::Elem>, DgaElement<F>> = HashMap::new();
            let mut systems = 0usize;
            let mut bad = None;
            engine.enumerate(&coeffs, &mut |entries| {
                systems += 1;
                let a = engine.value(entries);
                if !dga.is_cocycle(&a) {
                    bad = Some(dga.format(&a));
                }
                values.entry(dga.normal_form(&a)).or_insert(a);
            })?;
            if let Some(b) = bad {
                return Err(Error::NotCocycle(b));
            }
            report.systems = systems;
            report.defined = systems > 0;
            if report.defined {
                let mut vals: Vec<DgaElement<F>> = values.into_values().collect();
                vals.sort_by_key(|v| dga.format(v));
                let dec = decomposables(dga, target);
                report.value_count = Some(vals.len());
                report.strict = if vals.len() == 1 { Strictness::Exhaustive } else { Strictness::No };
                let zero = vals.iter().any(|v| dga.is_coboundary(v));
                report.nontrivial = Some(!zero);
                report.contains_zero = Some(zero);
                report.decomposable = Some(vals.iter().any(|v| v.degenerate || dec.contains(&dga.to_vector(v))));
                report.values = vals.iter().map(|v| dga.to_json(v)).collect();
            }
        }
        Strategy::Vanishing | Strategy::Auto => {
            if let Some(sys) = engine.first_system()? {
                let a = massey_value(dga, classes, &sys)?;
                let unique = engine.free_dimension() == 0;
                let zero = dga.is_coboundary(&a);
                let dec = a.degenerate || decomposables(dga, target).contains(&dga.to_vector(&a));
                report.defined = true;
                report.systems = 1;
                report.strict = if unique { Strictness::Vanishing } else { Strictness::Unknown };
                report.nontrivial = if unique || zero { Some(!zero) } else { None };
                report.contains_zero = report.nontrivial.map(|n| !n);
                report.decomposable = if unique || dec { Some(dec) } else { None };
                report.value_count = unique.then_some(1);
                report.values = vec![dga.to_json(&a)];
            }
        }
    }
    Ok(report)
}

/// Compares `⟨...⟩` over `K` restricted to `K_I` with the product of the restricted classes over `K_I`.
///
/// `small` must be the algebra of `big.complex().full_subcomplex(i)`.
pub fn massey_restriction_check<F: Field>(
    big: &Dga<'_, F>,
    small: &Dga<'_, F>,
    i: &VertexSet,
    classes: &[DgaElement<F>],
    strategy: Strategy,
    budget: usize,
) -> Result<bool> {
    if small.complex().labels() != big.complex().full_subcomplex(i).labels() {
        return Err(Error::InvalidInput("the small algebra is not over the full subcomplex".into()));
    }
    if classes.iter().any(|c| !c.bideg.j.is_subset(i)) {
        return Ok(false);
    }
    let restricted: Vec<DgaElement<F>> = classes.iter().map(|c| big.restrict(c, i)).collect();
    // entrywise restriction of a system is a system
    if let Some(sys) = build_defining_system(big, classes)? {
        let image = DefiningSystem { k: sys.k, entries: sys.entries.iter().map(|(p, c)| (*p, big.restrict(c, i))).collect() };
        if !verify_defining_system(small, &restricted, &image)? {
            return Ok(false);
        }
        let a_big = big.restrict(&massey_value(big, classes, &sys)?, i);
        let a_small = massey_value(small, &restricted, &image)?;
        if small.normal_form(&a_big) != small.normal_form(&a_small) {
            return Ok(false);
        }
    }
    let rb = massey_product(big, classes, strategy, budget)?;
    let rs = massey_product(small, &restricted, strategy, budget)?;
    if rb.defined != rs.defined {
        return Ok(false);
    }
    let normalized = |r: &MasseyReport, d: &Dga<'_, F>, map: bool| -> Result<Vec<Vec<TermJson>>> {
        let mut v = Vec::new();
        for terms in &r.values {
            if terms.is_empty() {
                v.push(Vec::new());
                continue;
            }
            let x = d.from_json(terms)?;
            let x = if map { d.restrict(&x, i) } else { x };
            v.push(normal_form_terms(small, &x));
        }
        v.sort_by_key(|t| format!("{t:?}"));
        v.dedup();
        Ok(v)
    };
    Ok(normalized(&rb, big, true)? == normalized(&rs, small, false)? && rb.strict == rs.strict)
}

fn normal_form_terms<F: Field>(dga: &Dga<'_, F>, x: &DgaElement<F>) -> Vec<TermJson> {
    if x.is_zero() || x.degenerate {
        return Vec::new();
    }
    dga.to_json(&dga.from_vector(x.bideg, &dga.normal_form(x)))
}

fn class_from_labels<F: Field>(dga: &Dga<'_, F>, v: &[String], u: &[String]) -> Result<DgaElement<F>> {
    let c = dga.monomial_by_labels(u, v)?;
    if !dga.is_cocycle(&c) {
        return Err(Error::NotCocycle(dga.format(&c)));
    }
    if dga.is_coboundary(&c) {
        return Err(Error::InvalidInput(format!("{} is a coboundary", dga.format(&c))));
    }
    Ok(c)
}

/// `α_i = [v_i u_{n+i}]` in `R(Q^n)`.
pub fn q_classes<F: Field>(dga: &Dga<'_, F>, n: usize) -> Result<Vec<DgaElement<F>>> {
    (1..=n).map(|i| class_from_labels(dga, &[i.to_string()], &[(n + i).to_string()])).collect()
}

/// The classes whose product is the top class of `Z_{Q^n}`.
pub fn q_cup_length_classes<F: Field>(dga: &Dga<'_, F>, n: usize) -> Result<Vec<DgaElement<F>>> {
    use crate::families::q_label;
    if n < 2 {
        return Err(Error::FamilyRange { family: "Q".into(), n, min: 2 });
    }
    if n == 2 {
        return q_classes(dga, 2);
    }
    let mut out = vec![class_from_labels(dga, &["1".into()], &[(n + 1).to_string()])?];
    let mut u2: Vec<String> = (n + 2..=2 * n).map(|j| j.to_string()).collect();
    u2.push(q_label(1, n + 2));
    out.push(class_from_labels(dga, &["2".into()], &u2)?);
    for k in 3..n {
        let u: Vec<String> = (1..k).rev().map(|j| q_label(j, n + k)).collect();
        out.push(class_from_labels(dga, &[k.to_string()], &u)?);
    }
    let u: Vec<String> = (2..n).rev().map(|j| q_label(j, 2 * n)).collect();
    out.push(class_from_labels(dga, &[n.to_string()], &u)?);
    Ok(out)
}

/// `α_i = [v_{{1..i}} u_{{i+1}}]` in `R(N_{B(P,n)})`.
pub fn pmas_classes<F: Field>(dga: &Dga<'_, F>, n: usize) -> Result<Vec<DgaElement<F>>> {
    pmas_classes_embedded(dga, n, n)
}

/// The classes of `P_Mas^r` carried into `N_{B(P,s)}` along `{1, ..., r, s+1}`.
pub fn pmas_classes_embedded<F: Field>(dga: &Dga<'_, F>, r: usize, s: usize) -> Result<Vec<DgaElement<F>>> {
    let lift = |e: usize| if e <= r { e } else { s + 1 };
    (1..=r)
        .map(|i| {
            let v = format_mask((1u32 << i) - 1);
            let u = format_mask(1 << (lift(i + 1) - 1));
            class_from_labels(dga, &[v], &[u])
        })
        .collect()
}

/// Vertices of `N_{B(P,s)}` that are proper subsets of `{1, ..., r, s+1}`.
pub fn pmas_embedding_vertices(k: &SimplicialComplex, r: usize, s: usize) -> Result<VertexSet> {
    let ground: u32 = ((1u32 << r) - 1) | (1 << s);
    let mut out = VertexSet::empty();
    for (p, l) in k.labels().iter().enumerate() {
        let mask = parse_mask(l)?;
        if mask & !ground == 0 && mask != ground {
            out.insert(p);
        }
    }
    Ok(out)
}

fn parse_mask(label: &str) -> Result<u32> {
    let inner = label.trim().strip_prefix('{').and_then(|s| s.strip_suffix('}')).ok_or_else(|| Error::Parse(label.into()))?;
    let mut m = 0;
    for part in inner.split(',').filter(|p| !p.is_empty()) {
        let e: u32 = part.trim().parse().map_err(|_| Error::Parse(label.into()))?;
        m |= 1 << (e - 1);
    }
    Ok(m)
}

/// A class outside the homogeneous slots that still moves the value of a triple product.
#[derive(Clone, Debug)]
pub struct UngradedWitness<F: Field> {
    /// `0` when `z` multiplies `α_1` from the right, `2` when it multiplies `α_3` from the left.
    pub side: usize,
    pub z: DgaElement<F>,
    /// `α_1 z` or `z α_3`, a nonzero class.
    pub product: DgaElement<F>,
}

/// The indeterminacy `α_1 H^{p} + H^{q} α_3` of a triple product over all multidegrees.
///
/// Homogeneous defining systems only see the slot multidegrees; this looks for
/// a cohomology class `z` of any other multidegree with `α_1 z ≠ 0` or `z α_3 ≠ 0`.
/// Returns `None` when the whole indeterminacy vanishes.
pub fn ungraded_indeterminacy<F: Field>(dga: &Dga<'_, F>, classes: &[DgaElement<F>]) -> Result<Option<UngradedWitness<F>>> {
    if classes.len() != 3 {
        return Err(Error::InvalidInput("the ungraded indeterminacy is computed for triple products".into()));
    }
    let k = dga.complex();
    let [a1, a2, a3] = [&classes[0], &classes[1], &classes[2]];
    let p = a2.total_degree() + a3.total_degree() - 1;
    let q = a1.total_degree() + a2.total_degree() - 1;
    let subsets = k.vertex_set().subsets();
    let hit = subsets.par_iter().find_map_first(|j| {
        for (side, deg, other) in [(0, p, a1), (2, q, a3)] {
            if j.intersects(&other.bideg.j) || 2 * j.len() < deg || 2 * j.len() - deg > j.len() {
                continue;
            }
            for z in dga.cohomology_basis(Bidegree::new(2 * j.len() - deg, *j)) {
                let prod = if side == 0 { dga.product(a1, &z) } else { dga.product(&z, a3) };
                if !dga.is_coboundary(&prod) {
                    return Some(UngradedWitness { side, z, product: prod });
                }
            }
        }
        None
    });
    Ok(hit)
}

/// Largest vertex count accepted by [`find_triple`].
pub const TRIPLE_SEARCH_VERTICES: usize = 20;

/// Connectivity of every full subcomplex, indexed by vertex mask.
fn connected_table(k: &SimplicialComplex) -> Vec<bool> {
    let m = k.num_vertices();
    let edges: Vec<u32> = k.edges().iter().map(|&(a, b)| 1 << a | 1 << b).collect();
    (0..1u32 << m)
        .map(|j| {
            if j == 0 {
                return false;
            }
            let mut comp = j & j.wrapping_neg();
            loop {
                let grown = edges.iter().filter(|&&e| e & !j == 0 && e & comp != 0).fold(comp, |c, &e| c | e);
                if grown == comp {
                    return comp == j;
                }
                comp = grown;
            }
        })
        .collect()
}

/// Searches for a nontrivial strictly defined triple product.
///
/// Inputs are the classes of `H̃^0(K_J)` for disconnected `K_J` with `|J| <= max_support`,
/// i.e. bidegree `(|J| - 1, J)`. Triples are kept when `K_{J1 ∪ J2}` and `K_{J2 ∪ J3}`
/// are connected and `H̃^1(K_{J1 ∪ J2 ∪ J3}) ≠ 0`, then tried in order of total support.
pub fn find_triple<F: Field>(
    dga: &Dga<'_, F>,
    strategy: Strategy,
    budget: usize,
    max_support: usize,
) -> Result<Option<(Vec<DgaElement<F>>, MasseyReport)>> {
    let k = dga.complex();
    let m = k.num_vertices();
    if m > TRIPLE_SEARCH_VERTICES {
        return Err(Error::LimitExceeded { what: "triple search vertex count", value: m, limit: TRIPLE_SEARCH_VERTICES });
    }
    let conn = connected_table(k);
    let full: u32 = ((1u64 << m) - 1) as u32;
    let small: Vec<u32> =
        (1..=full).filter(|&j| (j.count_ones() as usize) <= max_support && j.count_ones() >= 2 && !conn[j as usize]).collect();
    let mut cand: Vec<(u32, u32, u32, u32)> = Vec::new();
    for &j1 in &small {
        for &j2 in &small {
            if j1 & j2 != 0 || !conn[(j1 | j2) as usize] {
                continue;
            }
            for &j3 in &small {
                if (j1 | j2) & j3 == 0 && conn[(j2 | j3) as usize] {
                    cand.push(((j1 | j2 | j3).count_ones(), j1, j2, j3));
                }
            }
        }
    }
    cand.sort_unstable();
    let field = dga.field().spec();
    let set = |x: u32| (0..m).filter(|&i| x >> i & 1 == 1).fold(VertexSet::empty(), |s, i| s.with(i));
    let basis = |x: u32| dga.cohomology_basis(Bidegree::new(x.count_ones() as usize - 1, set(x)));
    let found = cand.par_iter().find_map_first(|&(size, j1, j2, j3)| {
        if betti_entry(k, size as usize - 2, &set(j1 | j2 | j3), field) == 0 {
            return None;
        }
        for a in basis(j1) {
            for b in basis(j2) {
                for c in basis(j3) {
                    let classes = vec![a.clone(), b.clone(), c];
                    match massey_product(dga, &classes, strategy, budget) {
                        Ok(r) if r.defined && r.strict.is_strict() && r.nontrivial == Some(true) => return Some(Ok((classes, r))),
                        Ok(_) | Err(Error::BudgetExceeded { .. }) => {}
                        Err(e) => return Some(Err(e)),
                    }
                }
            }
        }
        None
    });
    found.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::q_complex;
    use crate::linalg::{PrimeField, Rationals};

    fn square() -> SimplicialComplex {
        SimplicialComplex::from_label_faces(&["1", "2", "3", "4"], &[vec!["1", "2"], vec!["2", "3"], vec!["3", "4"], vec!["1", "4"]]).unwrap()
    }

    #[test]
    fn two_fold_is_cup_product() {
        let k = square();
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let a = q_classes(&dga, 2).unwrap();
        let r = massey_product(&dga, &a, Strategy::ExhaustiveGf2, 16).unwrap();
        assert!(r.defined && r.strict == Strictness::Exhaustive && r.nontrivial == Some(true));
        assert_eq!(r.target_degree, 6);
        let sys = build_defining_system(&dga, &a).unwrap().unwrap();
        let v = massey_value(&dga, &a, &sys).unwrap();
        let cup = dga.product(&a[0], &a[1]);
        assert_eq!(dga.normal_form(&v), dga.normal_form(&cup));
        assert_eq!(r.decomposable, Some(true));
    }

    #[test]
    fn obstruction_when_product_nonzero() {
        let k = square();
        let dga = Dga::new(&k, Rationals);
        let a = q_classes(&dga, 2).unwrap();
        let b = dga.monomial_by_labels(&["1"], &["3"]).unwrap();
        // ⟨α1, α2, α1'⟩ with α1α2 ≠ 0 cannot be defined
        let r = massey_product(&dga, &[a[0].clone(), a[1].clone(), b], Strategy::Vanishing, 16).unwrap();
        assert!(!r.defined);
    }

    #[test]
    fn q3_triple_is_strict_and_nontrivial() {
        let k = q_complex(3).unwrap();
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let a = q_classes(&dga, 3).unwrap();
        let r = massey_product(&dga, &a, Strategy::ExhaustiveGf2, 16).unwrap();
        assert!(r.defined);
        assert_eq!(r.value_count, Some(1));
        assert_eq!(r.nontrivial, Some(true));
        assert_eq!(r.target_degree, 8);
        let q = Dga::new(&k, Rationals);
        let aq = q_classes(&q, 3).unwrap();
        let rq = massey_product(&q, &aq, Strategy::Vanishing, 16).unwrap();
        assert!(rq.defined && rq.nontrivial != Some(false));
        let sys = build_defining_system(&q, &aq).unwrap().unwrap();
        assert!(verify_defining_system(&q, &aq, &sys).unwrap());
    }

    #[test]
    fn zero_class_gives_trivial_product() {
        let k = q_complex(3).unwrap();
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let mut a = q_classes(&dga, 3).unwrap();
        // a coboundary representative of the zero class
        let z = dga.differential(&dga.monomial_by_labels(&["2", "5"], &[] as &[&str]).unwrap());
        a[1] = z;
        let r = massey_product(&dga, &a, Strategy::ExhaustiveGf2, 16).unwrap();
        assert!(r.defined);
        assert_eq!(r.nontrivial, Some(false));
    }

    #[test]
    fn budget_is_enforced() {
        let k = q_complex(3).unwrap();
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let a = q_classes(&dga, 3).unwrap();
        let needed = Engine::new(&dga, &a).unwrap().free_dimension();
        if needed > 0 {
            assert!(matches!(massey_product(&dga, &a, Strategy::ExhaustiveGf2, needed - 1), Err(Error::BudgetExceeded { .. })));
        }
        let q = Dga::new(&k, Rationals);
        let aq = q_classes(&q, 3).unwrap();
        assert!(matches!(massey_product(&q, &aq, Strategy::ExhaustiveGf2, 16), Err(Error::InvalidField(_))));
    }

    #[test]
    fn restriction_to_everything() {
        let k = q_complex(3).unwrap();
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let same = Dga::new(&k, PrimeField::new(2).unwrap());
        let a = q_classes(&dga, 3).unwrap();
        assert!(massey_restriction_check(&dga, &same, &k.vertex_set(), &a, Strategy::ExhaustiveGf2, 16).unwrap());
    }

    #[test]
    fn triple_search() {
        use crate::families::Family;
        let k = Family::Associahedron.complex(3).unwrap();
        let dga = Dga::new(&k, PrimeField::new(2).unwrap());
        let (classes, r) = find_triple(&dga, Strategy::ExhaustiveGf2, 16, 3).unwrap().expect("a triple on As^3");
        assert_eq!(classes.len(), 3);
        assert_eq!((r.value_count, r.contains_zero), (Some(1), Some(false)));
        let sk = square();
        let sq = Dga::new(&sk, PrimeField::new(2).unwrap());
        assert!(find_triple(&sq, Strategy::ExhaustiveGf2, 16, 3).unwrap().is_none());
    }

    #[test]
    fn mask_labels() {
        assert_eq!(parse_mask("{1,3}").unwrap(), 0b101);
        assert!(parse_mask("1,3").is_err());
    }
}
