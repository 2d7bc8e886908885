//! Truncated generating series in `x` or `(q, x)` with coefficients in `𝒫 ⊗ Q`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{format_rational, Registry, RingElement};
use crate::error::{Error, Result};
use crate::families::Family;

/// Exact coefficients are known for `q^a x^b` with `a + b <= total`, `a <= q_max`, `b <= x_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub total: usize,
    pub q_max: usize,
    pub x_max: usize,
}

impl Region {
    pub fn contains(&self, a: usize, b: usize) -> bool {
        a + b <= self.total && a <= self.q_max && b <= self.x_max
    }

    fn meet(&self, o: &Region) -> Region {
        Region { total: self.total.min(o.total), q_max: self.q_max.min(o.q_max), x_max: self.x_max.min(o.x_max) }
    }

    fn covers(&self, o: &Region) -> bool {
        self.total >= o.total && self.q_max >= o.q_max.min(o.total) && self.x_max >= o.x_max.min(o.total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    region: Region,
    /// `(a, b) -> coefficient of q^a x^b`.
    coeffs: BTreeMap<(usize, usize), RingElement>,
}

impl TruncatedSeries {
    pub fn zero(region: Region) -> Self {
        TruncatedSeries { region, coeffs: BTreeMap::new() }
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn coefficient(&self, a: usize, b: usize) -> RingElement {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), RingElement> {
        &self.coeffs
    }

    pub fn add_term(&mut self, a: usize, b: usize, c: &RingElement) {
        if !self.region.contains(a, b) || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry((a, b)).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.coeffs.remove(&(a, b));
        }
    }

    /// `c q^a x^b` in the given region.
    pub fn term(region: Region, a: usize, b: usize, c: RingElement) -> Self {
        let mut s = Self::zero(region);
        s.add_term(a, b, &c);
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.region.meet(&o.region));
        for s in [self, o] {
            for (&(a, b), c) in &s.coeffs {
                r.add_term(a, b, c);
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut r = Self::zero(self.region);
        for (&(a, b), x) in &self.coeffs {
            r.add_term(a, b, &x.scale(c));
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.region.meet(&o.region));
        for (&(a, b), x) in &self.coeffs {
            for (&(c, d), y) in &o.coeffs {
                if r.region.contains(a + c, b + d) {
                    r.add_term(a + c, b + d, &x.mul(y));
                }
            }
        }
        r
    }

    /// Multiplication by `q^a x^b`; the known region moves with it.
    pub fn shift(&self, a: usize, b: usize) -> Self {
        let region = Region { total: self.region.total + a + b, q_max: self.region.q_max + a, x_max: self.region.x_max + b };
        let mut r = Self::zero(region);
        for (&(c, d), x) in &self.coeffs {
            r.add_term(c + a, d + b, x);
        }
        r
    }

    /// Restricts the known region.
    pub fn truncate(&self, region: Region) -> Self {
        let mut r = Self::zero(self.region.meet(&region));
        for (&(a, b), x) in &self.coeffs {
            r.add_term(a, b, x);
        }
        r
    }

    pub fn d_x(&self) -> Self {
        let region = Region { total: self.region.total.saturating_sub(1), q_max: self.region.q_max, x_max: self.region.x_max.saturating_sub(1) };
        let mut r = Self::zero(region);
        for (&(a, b), x) in &self.coeffs {
            if b > 0 {
                r.add_term(a, b - 1, &x.scale(&int(b as i64)));
            }
        }
        r
    }

    pub fn d_q(&self) -> Self {
        let region = Region { total: self.region.total.saturating_sub(1), q_max: self.region.q_max.saturating_sub(1), x_max: self.region.x_max };
        let mut r = Self::zero(region);
        for (&(a, b), x) in &self.coeffs {
            if a > 0 {
                r.add_term(a - 1, b, &x.scale(&int(a as i64)));
            }
        }
        r
    }

    /// The polytope boundary applied coefficientwise.
    pub fn boundary(&self, reg: &Registry) -> Self {
        let mut r = Self::zero(self.region);
        for (&(a, b), x) in &self.coeffs {
            r.add_term(a, b, &reg.boundary(x));
        }
        r
    }

    /// `1 / (1 - self)`, which needs a zero constant term.
    pub fn geometric(&self) -> Result<Self> {
        if !self.coefficient(0, 0).is_zero() {
            return Err(Error::InvalidInput("geometric series of a series with a constant term".into()));
        }
        let one = Self::term(self.region, 0, 0, RingElement::one());
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.region.total {
            power = power.mul(self);
            acc = acc.add(&power);
        }
        Ok(acc)
    }

    /// Coefficientwise equality on `region`, which both sides must know exactly.
    pub fn agrees_on(&self, o: &Self, region: Region) -> Result<Mismatch> {
        if !self.region.covers(&region) || !o.region.covers(&region) {
            return Err(Error::InvalidInput("series truncated below the comparison order".into()));
        }
        for a in 0..=region.q_max.min(region.total) {
            for b in 0..=region.x_max.min(region.total - a) {
                let (l, r) = (self.coefficient(a, b), o.coefficient(a, b));
                if l != r {
                    return Ok(Some((a, b, l, r)));
                }
            }
        }
        Ok(None)
    }
}

/// First coefficient `(a, b, lhs, rhs)` where two series differ.
pub type Mismatch = Option<(usize, usize, RingElement, RingElement)>;

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `Q(P; q) = Σ_k d^k P q^k / k!` placed at `x^b` with weight `w`.
fn place(reg: &Registry, region: Region, p: RingElement, b: usize, w: &BigRational, out: &mut TruncatedSeries) {
    let mut cur = p;
    let mut a = 0;
    while !cur.is_zero() && region.contains(a, b) {
        out.add_term(a, b, &cur.scale(&(w / factorial(a))));
        cur = reg.boundary(&cur);
        a += 1;
    }
}

/// The exponential generating series of a family, in its usual normalization.
///
/// `pe`: `Σ Pe^s x^{s+1}/(s+1)!`; `st`: `Σ St^s x^s/s!`; `pgamma`:
/// `Σ P_Γ^{s+1} x^s/s!`; `pmas`: `Σ P_Mas^{s+2} x^{s+2}/s!`. With `q_max > 0`
/// each coefficient `P^n` is replaced by `Q(P^n; q)`.
pub fn series_build(reg: &Registry, family: Family, region: Region) -> Result<TruncatedSeries> {
    let mut out = TruncatedSeries::zero(region);
    let q = if region.q_max > 0 { region } else { Region { q_max: 0, ..region } };
    for b in 0..=region.x_max.min(region.total) {
        let (n, w) = match family {
            Family::Permutohedron if b >= 1 => (b - 1, factorial(b).recip()),
            Family::Stellahedron => (b, factorial(b).recip()),
            Family::PGamma => (b + 1, factorial(b).recip()),
            Family::PMas if b >= 2 => (b, factorial(b - 2).recip()),
            Family::Permutohedron | Family::PMas => continue,
            _ => return Err(Error::InvalidInput(format!("no generating series for {family}"))),
        };
        let p = reg.family_element(family, n)?;
        if q.q_max == 0 {
            out.add_term(0, b, &p.scale(&w));
        } else {
            place(reg, q, p, b, &w, &mut out);
        }
    }
    Ok(out)
}

/// `e^{qx}` in the region.
pub fn exp_qx(region: Region) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(region);
    for k in 0..=region.total / 2 {
        s.add_term(k, k, &RingElement::one().scale(&factorial(k).recip()));
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Identity {
    /// `dPe(x) = Pe(x)^2`
    DPe,
    /// `dSt(x) = (x + Pe(x)) St(x)`
    DSt,
    /// `dP_Γ(x) = 2 Pe P_Γ + (1 + Pe') Pe'`
    DPGamma,
    /// `dP_Mas(x) = (x + Pe) P_Mas + x^2 (2 St' + St P_Γ + St' Pe')`
    DPMas,
    /// `Pe(q, x) = Pe(x) / (1 - q Pe(x))`
    PeClosedForm,
    /// `St(q, x) = St(x) e^{qx} / (1 - q Pe(x))`
    StClosedForm,
    /// `∂_q Pe(q, x) = Pe(q, x)^2`
    PeCauchy,
    /// `∂_q St(q, x) = (x + Pe(q, x)) St(q, x)`
    StCauchy,
    /// `∂_q P_Γ(q, x) = 2 Pe P_Γ + ∂_x Pe (1 + ∂_x Pe)`, all at `(q, x)`
    PGammaCauchy,
    /// `∂_q P_Mas = (x + Pe) P_Mas + x^2 (2 ∂_x St + St P_Γ + ∂_x St ∂_x Pe)`, all at `(q, x)`
    PMasCauchy,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::DPe,
        Identity::DSt,
        Identity::DPGamma,
        Identity::DPMas,
        Identity::PeClosedForm,
        Identity::StClosedForm,
        Identity::PeCauchy,
        Identity::StCauchy,
        Identity::PGammaCauchy,
        Identity::PMasCauchy,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Identity::DPe => "dPe=Pe^2",
            Identity::DSt => "dSt=(x+Pe)St",
            Identity::DPGamma => "dPGamma",
            Identity::DPMas => "dPMas",
            Identity::PeClosedForm => "Pe(q,x)=Pe/(1-qPe)",
            Identity::StClosedForm => "St(q,x)=St*exp(qx)/(1-qPe)",
            Identity::PeCauchy => "dqPe=Pe^2",
            Identity::StCauchy => "dqSt=(x+Pe)St",
            Identity::PGammaCauchy => "dqPGamma",
            Identity::PMasCauchy => "dqPMas",
        }
    }

    pub fn two_parameter(self) -> bool {
        !matches!(self, Identity::DPe | Identity::DSt | Identity::DPGamma | Identity::DPMas)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        Identity::ALL
            .into_iter()
            .find(|i| i.id().eq_ignore_ascii_case(&t) || format!("{i:?}").eq_ignore_ascii_case(&t))
            .ok_or_else(|| Error::UnknownIdentity(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesReport {
    pub identity: String,
    pub order: usize,
    pub equal: bool,
    /// Coefficients compared, all of them nonzero on at least one side.
    pub compared: usize,
    pub first_mismatch: Option<MismatchJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    pub q: usize,
    pub x: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Both sides of an identity, exact on the region `a + b <= order`.
pub fn identity_sides(reg: &Registry, id: Identity, order: usize) -> Result<(TruncatedSeries, TruncatedSeries, Region)> {
    let n = order;
    let two = id.two_parameter();
    let qm = if two { n + 1 } else { 0 };
    let target = Region { total: n, q_max: if two { n } else { 0 }, x_max: n };
    // one extra order in x for series that get differentiated there
    let wide = Region { total: n + 1, q_max: qm, x_max: n + 1 };
    let narrow = Region { total: n + 1, q_max: qm, x_max: n };
    let pe = series_build(reg, Family::Permutohedron, wide)?;
    let x = TruncatedSeries::term(wide, 0, 1, RingElement::one());
    let one = TruncatedSeries::term(wide, 0, 0, RingElement::one());
    let twos = int(2);
    let sides = match id {
        Identity::DPe => (pe.boundary(reg), pe.mul(&pe)),
        Identity::DSt => {
            let st = series_build(reg, Family::Stellahedron, narrow)?;
            (st.boundary(reg), x.add(&pe).mul(&st))
        }
        Identity::DPGamma => {
            let pg = series_build(reg, Family::PGamma, narrow)?;
            let dpe = pe.d_x();
            (pg.boundary(reg), pe.mul(&pg).scale(&twos).add(&one.add(&dpe).mul(&dpe)))
        }
        Identity::DPMas => {
            let pm = series_build(reg, Family::PMas, narrow)?;
            let rhs = pmas_rhs(reg, &pe, &x, &pm, wide, narrow)?;
            (pm.boundary(reg), rhs)
        }
        Identity::PeClosedForm => {
            let pe0 = series_build(reg, Family::Permutohedron, Region { q_max: 0, ..wide })?.truncate(wide);
            let pe0 = widen_q(&pe0, qm);
            let qpe = pe0.shift(1, 0);
            (pe, pe0.mul(&qpe.truncate(wide).geometric()?))
        }
        Identity::StClosedForm => {
            let st = series_build(reg, Family::Stellahedron, narrow)?;
            let st0 = widen_q(&series_build(reg, Family::Stellahedron, Region { q_max: 0, ..narrow })?, qm);
            let pe0 = widen_q(&series_build(reg, Family::Permutohedron, Region { q_max: 0, ..wide })?, qm);
            let geo = pe0.shift(1, 0).truncate(wide).geometric()?;
            (st, st0.mul(&exp_qx(wide)).mul(&geo))
        }
        Identity::PeCauchy => (pe.d_q(), pe.mul(&pe)),
        Identity::StCauchy => {
            let st = series_build(reg, Family::Stellahedron, narrow)?;
            (st.d_q(), x.add(&pe).mul(&st))
        }
        Identity::PGammaCauchy => {
            let pg = series_build(reg, Family::PGamma, narrow)?;
            let dpe = pe.d_x();
            (pg.d_q(), pe.mul(&pg).scale(&twos).add(&dpe.mul(&one.add(&dpe))))
        }
        Identity::PMasCauchy => {
            let pm = series_build(reg, Family::PMas, narrow)?;
            let rhs = pmas_rhs(reg, &pe, &x, &pm, wide, narrow)?;
            (pm.d_q(), rhs)
        }
    };
    Ok((sides.0, sides.1, target))
}

/// A one-variable series viewed in a region that allows `q`.
fn widen_q(s: &TruncatedSeries, q_max: usize) -> TruncatedSeries {
    let region = Region { q_max, ..s.region };
    let mut r = TruncatedSeries::zero(region);
    for (&(a, b), x) in &s.coeffs {
        r.add_term(a, b, x);
    }
    r
}

fn pmas_rhs(
    reg: &Registry,
    pe: &TruncatedSeries,
    x: &TruncatedSeries,
    pm: &TruncatedSeries,
    wide: Region,
    narrow: Region,
) -> Result<TruncatedSeries> {
    let st = series_build(reg, Family::Stellahedron, wide)?;
    let pg = series_build(reg, Family::PGamma, Region { x_max: narrow.x_max.saturating_sub(2), ..narrow })?;
    let dst = st.d_x();
    let dpe = pe.d_x();
    let bracket = dst.scale(&int(2)).add(&st.mul(&pg)).add(&dst.mul(&dpe));
    Ok(x.add(pe).mul(pm).add(&bracket.shift(0, 2)))
}

/// Compares both sides coefficient by coefficient through `order`.
pub fn series_verify(reg: &Registry, id: Identity, order: usize) -> Result<SeriesReport> {
    let (lhs, rhs, target) = identity_sides(reg, id, order)?;
    let mismatch = lhs.agrees_on(&rhs, target)?;
    let compared = (0..=target.q_max)
        .flat_map(|a| (0..=target.total.saturating_sub(a)).map(move |b| (a, b)))
        .filter(|&(a, b)| !lhs.coefficient(a, b).is_zero() || !rhs.coefficient(a, b).is_zero())
        .count();
    Ok(SeriesReport {
        identity: id.id().into(),
        order,
        equal: mismatch.is_none(),
        compared,
        first_mismatch: mismatch.map(|(a, b, l, r)| MismatchJson { q: a, x: b, lhs: reg.format(&l), rhs: reg.format(&r) }),
    })
}

/// Series as a nested table `{"q^a x^b": {monomial: coef}}`.
pub fn series_to_json(reg: &Registry, s: &TruncatedSeries) -> serde_json::Value {
    let mut table = serde_json::Map::new();
    for (&(a, b), c) in &s.coeffs {
        let mut row = serde_json::Map::new();
        for (m, x) in c.terms() {
            let names: Vec<String> = m.iter().map(|&id| reg.class(id).name()).collect();
            row.insert(if names.is_empty() { "1".into() } else { names.join("*") }, format_rational(x).into());
        }
        table.insert(format!("q^{a} x^{b}"), row.into());
    }
    serde_json::json!({ "region": s.region, "coefficients": table })
}
