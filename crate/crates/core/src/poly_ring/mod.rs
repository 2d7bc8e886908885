//! The differential ring of simple polytopes `(𝒫, d)`.
//!
//! Generators are combinatorial classes of product-indecomposable simple
//! polytopes, identified through the canonical form of their nerve. A nerve
//! that is a join of spheres is the product of the factors' polytopes, so
//! interning always factors first and returns a monomial.

pub mod closure;
pub mod series;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::SimplicialComplex;
use crate::error::Result;
use crate::families::Family;
use crate::nestohedra::BuildingSet;
use crate::vertex_set::VertexSet;

pub type ClassId = usize;

/// Sorted multiset of generators; empty for the point.
pub type Monomial = Vec<ClassId>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Provenance {
    Family { family: String, n: usize },
    Derived,
}

#[derive(Clone, Debug)]
pub struct PolytopeClass {
    pub id: ClassId,
    pub dim: usize,
    /// Number of facets, the vertex count of the nerve.
    pub facets: usize,
    /// Canonical nerve with labels `1..=m`.
    pub complex: SimplicialComplex,
    pub provenance: Vec<Provenance>,
    pub building_set: Option<BuildingSet>,
}

impl PolytopeClass {
    /// Second grading `m - n`.
    pub fn k(&self) -> usize {
        self.facets - self.dim
    }

    pub fn name(&self) -> String {
        match self.provenance.iter().find_map(|p| match p {
            Provenance::Family { family, n } => Some((family, n)),
            Provenance::Derived => None,
        }) {
            Some((f, n)) => format!("{f}^{n}"),
            None => format!("P{}[{},{}]", self.id, self.dim, self.facets),
        }
    }
}

#[derive(Default)]
struct Inner {
    by_certificate: HashMap<Vec<u32>, ClassId>,
    classes: Vec<Arc<PolytopeClass>>,
    by_building_set: HashMap<Vec<u32>, Monomial>,
    boundary: HashMap<ClassId, RingElement>,
}

/// Insert-if-absent table of combinatorial classes.
#[derive(Default)]
pub struct Registry {
    inner: Mutex<Inner>,
}

/// Factor certificates and canonical complexes, computed outside the lock.
type Prepared = Vec<(Vec<u32>, SimplicialComplex)>;

fn prepare(k: &SimplicialComplex) -> Prepared {
    if k.num_vertices() == 0 {
        return Vec::new();
    }
    k.join_decompose()
        .into_iter()
        .filter(|f| f.num_vertices() > 0)
        .map(|f| (f.canonical_form().certificate, f.canonical_complex()))
        .collect()
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    fn lock(&self) -> std::sync::MutexGuard<'_, Inner> {
        self.inner.lock().expect("registry lock")
    }

    fn insert_prepared(&self, parts: Prepared, building_set: Option<&BuildingSet>) -> Monomial {
        let single = parts.len() == 1;
        let mut inner = self.lock();
        let mut mono: Monomial = parts
            .into_iter()
            .map(|(cert, cx)| match inner.by_certificate.get(&cert) {
                Some(&id) => id,
                None => {
                    let id = inner.classes.len();
                    let dim = (cx.dim() + 1) as usize;
                    let facets = cx.num_vertices();
                    inner.classes.push(Arc::new(PolytopeClass {
                        id,
                        dim,
                        facets,
                        complex: cx,
                        provenance: Vec::new(),
                        building_set: None,
                    }));
                    inner.by_certificate.insert(cert, id);
                    id
                }
            })
            .collect();
        mono.sort_unstable();
        if let (true, Some(b)) = (single, building_set) {
            let c = &mut inner.classes[mono[0]];
            if c.building_set.is_none() {
                Arc::make_mut(c).building_set = Some(b.clone());
            }
        }
        mono
    }

    /// Interns a polytope given by its nerve, which must pass the sphere check.
    pub fn intern(&self, k: &SimplicialComplex) -> Result<Monomial> {
        k.sphere_check()?;
        Ok(self.intern_unchecked(k))
    }

    fn intern_unchecked(&self, k: &SimplicialComplex) -> Monomial {
        self.insert_prepared(prepare(k), None)
    }

    /// Interns the nestohedron `P_B`; components of `B` become factors.
    pub fn intern_building_set(&self, b: &BuildingSet) -> Monomial {
        let key = b.canonical_key();
        if let Some(m) = self.lock().by_building_set.get(&key) {
            return m.clone();
        }
        let mut mono = Monomial::new();
        for c in b.components() {
            let part = b.restriction(c).expect("component is an element");
            if part.ground() == 1 {
                continue;
            }
            let prepared = prepare(&part.nested_set_complex());
            mono.extend(self.insert_prepared(prepared, Some(&part)));
        }
        mono.sort_unstable();
        self.lock().by_building_set.insert(key, mono.clone());
        mono
    }

    fn tag(&self, mono: &Monomial, p: Provenance) {
        if let [id] = mono[..] {
            let mut inner = self.lock();
            let c = &mut inner.classes[id];
            if !c.provenance.contains(&p) {
                let c = Arc::make_mut(c);
                c.provenance.push(p);
                c.provenance.sort();
            }
        }
    }

    /// The `n`-dimensional member of a family, tagged with its provenance when indecomposable.
    pub fn family(&self, family: Family, n: usize) -> Result<Monomial> {
        let mono = match family {
            Family::Q => self.intern_unchecked(&family.complex(n)?),
            _ if n == 0 => Monomial::new(),
            _ if n == 1 => self.intern_building_set(&BuildingSet::simplex(2)?),
            _ => self.intern_building_set(&family.building_set(n)?),
        };
        self.tag(&mono, Provenance::Family { family: family.tag().into(), n });
        Ok(mono)
    }

    pub fn family_element(&self, family: Family, n: usize) -> Result<RingElement> {
        Ok(RingElement::monomial(self.family(family, n)?))
    }

    pub fn class(&self, id: ClassId) -> Arc<PolytopeClass> {
        self.lock().classes[id].clone()
    }

    pub fn len(&self) -> usize {
        self.lock().classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn classes(&self) -> Vec<Arc<PolytopeClass>> {
        self.lock().classes.clone()
    }

    /// `(Σ n, Σ (m - n))` of a monomial.
    pub fn bidegree(&self, mono: &Monomial) -> (usize, usize) {
        let inner = self.lock();
        mono.iter().fold((0, 0), |(n, k), &id| (n + inner.classes[id].dim, k + inner.classes[id].k()))
    }

    /// `d` on a generator: the restriction/contraction formula when the class came from a building set, links otherwise.
    pub fn boundary_class(&self, id: ClassId) -> RingElement {
        if let Some(b) = self.lock().boundary.get(&id) {
            return b.clone();
        }
        let c = self.class(id);
        let d = match &c.building_set {
            Some(b) => self.boundary_nestohedron(b),
            None => self.boundary_by_links(&c.complex),
        };
        self.lock().boundary.insert(id, d.clone());
        d
    }

    /// Sum of the facets, each facet's nerve being a vertex link.
    pub fn boundary_by_links(&self, k: &SimplicialComplex) -> RingElement {
        let prepared: Vec<Prepared> = (0..k.num_vertices())
            .into_par_iter()
            .map(|v| prepare(&k.link(&VertexSet::singleton(v)).expect("vertex is a face")))
            .collect();
        let mut out = RingElement::zero();
        for p in prepared {
            out.add_term(self.insert_prepared(p, None), BigRational::one());
        }
        out
    }

    /// `d P_B = Σ_{S ∈ B, S ≠ [n+1]} P_{B|_S} × P_{B/S}`.
    pub fn boundary_nestohedron(&self, b: &BuildingSet) -> RingElement {
        let mut out = RingElement::zero();
        for &s in b.sets() {
            if b.components().contains(&s) {
                continue;
            }
            let mut mono = self.intern_building_set(&b.restriction(s).expect("element"));
            mono.extend(self.intern_building_set(&b.contraction(s).expect("element")));
            mono.sort_unstable();
            out.add_term(mono, BigRational::one());
        }
        out
    }

    /// Additive, unsigned Leibniz extension of `d`.
    pub fn boundary(&self, e: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for (mono, c) in &e.terms {
            for (pos, &id) in mono.iter().enumerate() {
                if pos > 0 && mono[pos - 1] == id {
                    continue;
                }
                let mult = mono.iter().filter(|&&x| x == id).count();
                let mut rest = mono.clone();
                rest.remove(pos);
                let dp = self.boundary_class(id);
                let scale = c * BigRational::from_integer(BigInt::from(mult));
                out = out.add(&dp.mul(&RingElement::monomial(rest)).scale(&scale));
            }
        }
        out
    }

    pub fn f_polynomial_class(&self, id: ClassId) -> BiPoly {
        let c = self.class(id);
        let n = c.dim as u32;
        let mut p = BiPoly::zero();
        for (size, &count) in c.complex.face_counts().iter().enumerate() {
            if count > 0 {
                p.add_term(n - size as u32, size as u32, BigRational::from_integer(BigInt::from(count)));
            }
        }
        p
    }

    /// `F(α, t) = Σ f_j α^j t^{n-j}`, extended multiplicatively.
    pub fn f_polynomial(&self, e: &RingElement) -> BiPoly {
        let mut out = BiPoly::zero();
        for (mono, c) in &e.terms {
            let mut p = BiPoly::one();
            for &id in mono {
                p = p.mul(&self.f_polynomial_class(id));
            }
            out = out.add(&p.scale(c));
        }
        out
    }

    /// `H(s, t) = F(s - t, t)`.
    pub fn h_polynomial(&self, e: &RingElement) -> BiPoly {
        self.f_polynomial(e).shift_first()
    }

    pub fn format(&self, e: &RingElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = e
            .terms
            .iter()
            .map(|(mono, c)| {
                let mut names: Vec<String> = Vec::new();
                let mut i = 0;
                while i < mono.len() {
                    let j = mono[i..].iter().take_while(|&&x| x == mono[i]).count();
                    let name = self.class(mono[i]).name();
                    names.push(if j > 1 { format!("({name})^{j}") } else { name });
                    i += j;
                }
                let body = if names.is_empty() { "1".to_string() } else { names.join("*") };
                if c.is_one() {
                    body
                } else {
                    format!("{}*{body}", format_rational(c))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// `{"terms":[...], "classes":{id: provenance}}`.
    pub fn to_json(&self, e: &RingElement) -> RingElementJson {
        let mut classes = BTreeMap::new();
        for mono in e.terms.keys() {
            for &id in mono {
                let c = self.class(id);
                classes.insert(id, ClassJson { dim: c.dim, facets: c.facets, provenance: c.provenance.clone(), name: c.name() });
            }
        }
        RingElementJson {
            terms: e.terms.iter().map(|(m, c)| TermJson { coef: format_rational(c), monomial: m.clone() }).collect(),
            classes,
        }
    }
}

pub(crate) fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coef: String,
    pub monomial: Vec<ClassId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub name: String,
    pub dim: usize,
    pub facets: usize,
    pub provenance: Vec<Provenance>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElementJson {
    pub terms: Vec<TermJson>,
    pub classes: BTreeMap<ClassId, ClassJson>,
}

/// Finite combination of monomials with rational coefficients; integral for honest ring elements.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    terms: BTreeMap<Monomial, BigRational>,
}

impl RingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::new())
    }

    pub fn monomial(mut m: Monomial) -> Self {
        m.sort_unstable();
        let mut terms = BTreeMap::new();
        terms.insert(m, BigRational::one());
        RingElement { terms }
    }

    pub fn from_int(c: i64) -> Self {
        Self::one().scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RingElement { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut m = a.clone();
                m.extend_from_slice(b);
                m.sort_unstable();
                r.add_term(m, x * y);
            }
        }
        r
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Distinct generators appearing in the element.
    pub fn generators(&self) -> BTreeSet<ClassId> {
        self.terms.keys().flatten().copied().collect()
    }
}

/// Polynomial in two variables with rational coefficients; exponents `(a, b)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut p = Self::zero();
        p.add_term(0, 0, BigRational::one());
        p
    }

    pub fn add_term(&mut self, a: u32, b: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((a, b)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn coefficient(&self, a: u32, b: u32) -> BigRational {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(a, b), c) in &o.terms {
            r.add_term(a, b, c.clone());
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut r = Self::zero();
        for (&(a, b), x) in &self.terms {
            r.add_term(a, b, x * c);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero();
        for (&(a, b), x) in &self.terms {
            for (&(c, d), y) in &o.terms {
                r.add_term(a + c, b + d, x * y);
            }
        }
        r
    }

    /// Derivative in the second variable.
    pub fn d_second(&self) -> Self {
        let mut r = Self::zero();
        for (&(a, b), x) in &self.terms {
            if b > 0 {
                r.add_term(a, b - 1, x * BigRational::from_integer(BigInt::from(b)));
            }
        }
        r
    }

    pub fn d_first(&self) -> Self {
        self.swap().d_second().swap()
    }

    pub fn swap(&self) -> Self {
        let mut r = Self::zero();
        for (&(a, b), x) in &self.terms {
            r.add_term(b, a, x.clone());
        }
        r
    }

    /// Substitutes `(x, y) -> (x - y, y)`.
    pub fn shift_first(&self) -> Self {
        let mut r = Self::zero();
        for (&(a, b), x) in &self.terms {
            // (s - t)^a = Σ C(a, i) s^i (-t)^{a-i}
            let mut binom = BigInt::one();
            for i in (0..=a).rev() {
                let sign = if (a - i) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                r.add_term(i, b + (a - i), x * BigRational::from_integer(&binom * sign));
                binom = binom * BigInt::from(i) / BigInt::from(a - i + 1);
            }
        }
        r
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.swap()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(a, b), c)| {
                let mut s = String::new();
                let coef = format_rational(&c.abs());
                if coef != "1" || (a == 0 && b == 0) {
                    s.push_str(&coef);
                }
                for (v, e) in [("a", a), ("b", b)] {
                    match e {
                        0 => {}
                        1 => s.push_str(v),
                        _ => s.push_str(&format!("{v}^{e}")),
                    }
                }
                if c.is_negative() {
                    format!("-{s}")
                } else {
                    s
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `dΔ^n = (n+1)Δ^{n-1}` style check: the boundary of the `n`-th family member in closed form.
pub fn expected_boundary(reg: &Registry, family: Family, n: usize) -> Result<Option<RingElement>> {
    let int = |c: u64| BigRational::from_integer(BigInt::from(c));
    let binom = |a: usize, b: usize| -> u64 {
        if b > a {
            return 0;
        }
        let mut r: u64 = 1;
        for i in 0..b {
            r = r * (a - i) as u64 / (i as u64 + 1);
        }
        r
    };
    let pe = |s: usize| reg.family_element(Family::Permutohedron, s);
    let st = |s: usize| reg.family_element(Family::Stellahedron, s);
    let pg = |s: usize| reg.family_element(Family::PGamma, s);
    let pm = |s: usize| reg.family_element(Family::PMas, s);
    let mut out = RingElement::zero();
    match family {
        Family::Simplex if n >= 1 => out = reg.family_element(Family::Simplex, n - 1)?.scale(&int(n as u64 + 1)),
        Family::Permutohedron if n >= 1 => {
            for s in 0..n {
                out = out.add(&pe(s)?.mul(&pe(n - s - 1)?).scale(&int(binom(n + 1, s + 1))));
            }
        }
        Family::Stellahedron if n >= 1 => {
            out = st(n - 1)?.scale(&int(n as u64));
            for s in 0..n {
                out = out.add(&st(s)?.mul(&pe(n - s - 1)?).scale(&int(binom(n, s))));
            }
        }
        Family::PGamma if n >= 2 => {
            out = pe(n - 1)?;
            for s in 0..=n - 2 {
                out = out.add(&pe(s)?.mul(&pg(n - s - 1)?).scale(&int(binom(n - 1, s + 1))));
                out = out.add(&pg(s + 1)?.mul(&pe(n - s - 2)?).scale(&int(binom(n - 1, s))));
            }
            for s in 0..n {
                out = out.add(&pe(s)?.mul(&pe(n - s - 1)?).scale(&int(binom(n - 1, s))));
            }
        }
        Family::PMas if n >= 3 => {
            out = st(n - 1)?.scale(&int(2)).add(&pm(n - 1)?.scale(&int(n as u64 - 2)));
            for s in 0..=n - 2 {
                out = out.add(&st(s)?.mul(&pg(n - s - 1)?).scale(&int(binom(n - 2, s))));
                out = out.add(&st(s + 1)?.mul(&pe(n - s - 2)?).scale(&int(binom(n - 2, s))));
            }
            for s in 0..n - 2 {
                out = out.add(&pm(s + 2)?.mul(&pe(n - s - 3)?).scale(&int(binom(n - 2, s))));
            }
        }
        _ => return Ok(None),
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_canonical() {
        let reg = Registry::new();
        let a = reg.family(Family::PMas, 3).unwrap();
        let b = reg.family(Family::PMas, 3).unwrap();
        assert_eq!(a, b);
        let q = reg.intern(&crate::families::q_complex(3).unwrap()).unwrap();
        assert_eq!(a, q);
        assert!(reg.intern(&SimplicialComplex::void_sphere()).unwrap().is_empty());
        let square = reg.family(Family::PMas, 2).unwrap();
        let seg = reg.family(Family::Simplex, 1).unwrap();
        assert_eq!(square, vec![seg[0], seg[0]]);
    }

    #[test]
    fn non_spheres_are_rejected() {
        let reg = Registry::new();
        let path = SimplicialComplex::from_label_faces(&["1", "2", "3"], &[vec!["1", "2"], vec!["2", "3"]]).unwrap();
        assert!(reg.intern(&path).is_err());
    }

    #[test]
    fn simplex_and_permutohedron_boundaries() {
        let reg = Registry::new();
        for n in 1..=5 {
            let d = reg.boundary(&reg.family_element(Family::Simplex, n).unwrap());
            assert_eq!(d, expected_boundary(&reg, Family::Simplex, n).unwrap().unwrap());
        }
        let pe3 = reg.family_element(Family::Permutohedron, 3).unwrap();
        let eight = BigRational::from_integer(8.into());
        let six = BigRational::from_integer(6.into());
        let pe1 = reg.family_element(Family::Permutohedron, 1).unwrap();
        let want = reg.family_element(Family::Permutohedron, 2).unwrap().scale(&eight).add(&pe1.mul(&pe1).scale(&six));
        assert_eq!(reg.boundary(&pe3), want);
        let pe2 = reg.family_element(Family::Permutohedron, 2).unwrap();
        assert_eq!(reg.boundary(&pe2), pe1.scale(&six));
    }

    #[test]
    fn boundary_lowers_n_but_not_k() {
        let reg = Registry::new();
        let pe3 = reg.family(Family::Permutohedron, 3).unwrap();
        assert_eq!(reg.bidegree(&pe3), (3, 11));
        let d = reg.boundary(&RingElement::monomial(pe3));
        let degrees: BTreeSet<(usize, usize)> = d.terms().keys().map(|m| reg.bidegree(m)).collect();
        // hexagon (2, 4) and square (2, 2)
        assert_eq!(degrees, [(2, 2), (2, 4)].into_iter().collect());
    }

    #[test]
    fn restriction_formula_and_links_agree() {
        let reg = Registry::new();
        for f in [Family::Permutohedron, Family::Stellahedron, Family::Associahedron, Family::Cyclohedron, Family::PMas, Family::PGamma] {
            for n in f.min_dim().max(2)..=4 {
                let b = f.building_set(n).unwrap();
                let via_formula = reg.boundary_nestohedron(&b);
                let via_links = reg.boundary_by_links(&b.nested_set_complex());
                assert_eq!(via_formula, via_links, "{f} {n}");
            }
        }
    }

    #[test]
    fn f_and_h_polynomials() {
        let reg = Registry::new();
        let square = reg.family_element(Family::PMas, 2).unwrap();
        let f = reg.f_polynomial(&square);
        assert_eq!(f.coefficient(2, 0), BigRational::one());
        assert_eq!(f.coefficient(1, 1), BigRational::from_integer(4.into()));
        assert_eq!(f.coefficient(0, 2), BigRational::from_integer(4.into()));
        let h = reg.h_polynomial(&square);
        assert_eq!(h.coefficient(1, 1), BigRational::from_integer(2.into()));
        assert!(h.is_symmetric());
        let pe3 = reg.family_element(Family::Permutohedron, 3).unwrap();
        assert_eq!(reg.f_polynomial(&reg.boundary(&pe3)), reg.f_polynomial(&pe3).d_second());
        let q3 = reg.family_element(Family::Q, 3).unwrap();
        let hq = reg.h_polynomial(&q3);
        assert_eq!(reg.h_polynomial(&reg.boundary(&q3)), hq.d_first().add(&hq.d_second()));
    }
}
