//! General quadratic decomposition.
//!
//! For `ω(x) = x² + p x + q` and an anchor `a`, every monic sequence splits
//! uniquely as
//!
//! ```text
//! W_{2n}   = P_n(ω) + (x - a) a_{n-1}(ω)
//! W_{2n+1} = b_n(ω) + (x - a) R_n(ω)
//! ```
//!
//! with `P_n`, `R_n` monic of degree `n`, `deg a_n, deg b_n ≤ n` and
//! `a_{-1} = 0`. [`decompose`] builds the four components from structure
//! coefficients alone; [`decompose_oracle`] recovers them from materialized
//! polynomials by an ω-adic change of basis.

use serde::{Deserialize, Serialize};

use crate::cases::CaseParams;
use crate::error::{Error, Result};
use crate::mps::StructureCoefficients;
use crate::poly::Poly;
use crate::rational::Rational;

static ZERO: Poly = Poly::ZERO;

/// The quadratic map `ω(x) = x² + p x + q` and the anchor `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawQuadMap")]
pub struct QuadMap {
    p: Rational,
    q: Rational,
    a: Rational,
    omega_at_a: Rational,
}

#[derive(Deserialize)]
struct RawQuadMap {
    p: Rational,
    q: Rational,
    a: Rational,
    omega_at_a: Option<Rational>,
}

impl TryFrom<RawQuadMap> for QuadMap {
    type Error = Error;

    fn try_from(raw: RawQuadMap) -> Result<Self> {
        let map = QuadMap::new(raw.p, raw.q, raw.a);
        match raw.omega_at_a {
            Some(w) if w != map.omega_at_a => Err(Error::Malformed(format!(
                "omega_at_a = {w} but ω(a) = {}",
                map.omega_at_a
            ))),
            _ => Ok(map),
        }
    }
}

impl QuadMap {
    pub fn new(p: Rational, q: Rational, a: Rational) -> Self {
        let omega_at_a = &a * &a + &p * &a + &q;
        QuadMap { p, q, a, omega_at_a }
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn omega_at_a(&self) -> &Rational {
        &self.omega_at_a
    }

    pub fn omega(&self) -> Poly {
        Poly::new(vec![self.q.clone(), self.p.clone(), Rational::one()])
    }
}

/// The four component sequences of a quadratic decomposition, indexed
/// `0..=nmax`. `a_prev[n]` holds `a_{n-1}`, so `a_prev[0] = a_{-1} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "QdMatrix", try_from = "QdMatrix")]
pub struct QdComponents {
    pub p: Vec<Poly>,
    pub r: Vec<Poly>,
    pub a_prev: Vec<Poly>,
    pub b: Vec<Poly>,
    pub map: QuadMap,
}

/// One row of the matrix layout `[[P_n, a_{n-1}], [b_n, R_n]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QdRow {
    pub n: usize,
    #[serde(rename = "P")]
    pub p: Poly,
    pub a_prev: Poly,
    pub b: Poly,
    #[serde(rename = "R")]
    pub r: Poly,
}

/// JSON form of [`QdComponents`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QdMatrix {
    pub map: QuadMap,
    pub rows: Vec<QdRow>,
}

impl From<QdComponents> for QdMatrix {
    fn from(c: QdComponents) -> Self {
        let rows = (0..c.p.len())
            .map(|n| QdRow {
                n,
                p: c.p[n].clone(),
                a_prev: c.a_prev[n].clone(),
                b: c.b[n].clone(),
                r: c.r[n].clone(),
            })
            .collect();
        QdMatrix { map: c.map, rows }
    }
}

impl TryFrom<QdMatrix> for QdComponents {
    type Error = Error;

    fn try_from(m: QdMatrix) -> Result<Self> {
        if let Some((k, row)) = m.rows.iter().enumerate().find(|(k, row)| row.n != *k) {
            return Err(Error::Malformed(format!("matrix row {k} is labelled n = {}", row.n)));
        }
        let mut c = QdComponents {
            p: Vec::new(),
            r: Vec::new(),
            a_prev: Vec::new(),
            b: Vec::new(),
            map: m.map,
        };
        for row in m.rows {
            c.p.push(row.p);
            c.a_prev.push(row.a_prev);
            c.b.push(row.b);
            c.r.push(row.r);
        }
        Ok(c)
    }
}

impl QdComponents {
    pub fn nmax(&self) -> usize {
        self.p.len() - 1
    }

    /// `a_n`, zero for `n < 0`.
    pub fn a(&self, n: isize) -> &Poly {
        if n < 0 {
            &ZERO
        } else {
            &self.a_prev[(n + 1) as usize]
        }
    }

    /// `a_0..a_{nmax-1}`.
    pub fn a_seq(&self) -> &[Poly] {
        &self.a_prev[1..]
    }

    fn at(seq: &[Poly], n: isize) -> &Poly {
        if n < 0 {
            &ZERO
        } else {
            &seq[n as usize]
        }
    }
}

/// `(x - c) f`.
fn times_x_minus(f: &Poly, c: &Rational) -> Poly {
    let mut out = f.shift_up();
    out.add_scaled(f, &-c);
    out
}

/// Components `P_0..P_nmax`, `R_0..R_nmax`, `b_0..b_nmax`, `a_{-1}..a_{nmax-1}`
/// from the decomposition recurrences, with complete χ sums. Needs
/// `sc.nmax() ≥ 2 nmax`.
pub fn decompose(sc: &StructureCoefficients, map: &QuadMap, nmax: usize) -> Result<QdComponents> {
    if sc.nmax() < 2 * nmax {
        return Err(Error::range(
            "structure coefficients for decomposition",
            2 * nmax,
            sc.nmax(),
        ));
    }
    let (a, p, w_a) = (&map.a, &map.p, &map.omega_at_a);
    let mut ps = vec![Poly::one()];
    let mut rs = vec![Poly::one()];
    let mut bs = vec![Poly::constant(a - sc.beta(0))];
    let mut a_prev = vec![Poly::zero()];

    for n in 0..nmax {
        let (even, odd) = (2 * n, 2 * n + 1);

        let mut a_n = bs[n].clone();
        for nu in 0..=n {
            a_n.add_scaled(&a_prev[nu], &-sc.chi(even, 2 * nu));
        }
        a_n.add_scaled(&rs[n], &-(a + p + sc.beta(odd)));
        for nu in 0..n {
            a_n.add_scaled(&rs[nu], &-sc.chi(even, 2 * nu + 1));
        }

        let mut p_next = times_x_minus(&rs[n], w_a);
        for nu in 0..=n {
            p_next.add_scaled(&ps[nu], &-sc.chi(even, 2 * nu));
        }
        p_next.add_scaled(&bs[n], &(a - sc.beta(odd)));
        for nu in 0..n {
            p_next.add_scaled(&bs[nu], &-sc.chi(even, 2 * nu + 1));
        }

        let mut b_next = times_x_minus(&a_n, w_a);
        for nu in 0..=n {
            b_next.add_scaled(&bs[nu], &-sc.chi(odd, 2 * nu + 1));
            b_next.add_scaled(&ps[nu], &-sc.chi(odd, 2 * nu));
        }
        b_next.add_scaled(&p_next, &(a - sc.beta(odd + 1)));

        let mut r_next = p_next.clone();
        for nu in 0..=n {
            r_next.add_scaled(&rs[nu], &-sc.chi(odd, 2 * nu + 1));
            r_next.add_scaled(&a_prev[nu], &-sc.chi(odd, 2 * nu));
        }
        r_next.add_scaled(&a_n, &-(a + p + sc.beta(odd + 1)));

        a_prev.push(a_n);
        ps.push(p_next);
        bs.push(b_next);
        rs.push(r_next);
    }

    Ok(QdComponents {
        p: ps,
        r: rs,
        a_prev,
        b: bs,
        map: map.clone(),
    })
}

/// Splits `f` as `E(ω) + (x - a) O(ω)` by expanding `f` in powers of `ω`
/// (each digit has degree ≤ 1) and dividing every digit by `x - a`.
pub fn split_quadratic(f: &Poly, map: &QuadMap) -> (Poly, Poly) {
    let omega = map.omega();
    let mut even = Vec::new();
    let mut odd = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (quot, digit) = rest.div_rem_monic(&omega);
        let (slope, value) = digit.div_rem_linear(&map.a);
        even.push(value);
        odd.push(slope.coeff(0));
        rest = quot;
    }
    (Poly::new(even), Poly::new(odd))
}

/// Components read directly off `W_0..W_M` through [`split_quadratic`];
/// `nmax = (M - 1) / 2` so that every returned index is covered.
pub fn decompose_oracle(polys: &[Poly], map: &QuadMap) -> Result<QdComponents> {
    if polys.len() < 2 {
        return Err(Error::InvalidMps("oracle decomposition needs W_0 and W_1".into()));
    }
    let nmax = (polys.len() - 2) / 2;
    let mut c = QdComponents {
        p: Vec::with_capacity(nmax + 1),
        r: Vec::with_capacity(nmax + 1),
        a_prev: Vec::with_capacity(nmax + 1),
        b: Vec::with_capacity(nmax + 1),
        map: map.clone(),
    };
    for n in 0..=nmax {
        let (p_n, a_prev) = split_quadratic(&polys[2 * n], map);
        let (b_n, r_n) = split_quadratic(&polys[2 * n + 1], map);
        c.p.push(p_n);
        c.a_prev.push(a_prev);
        c.b.push(b_n);
        c.r.push(r_n);
    }
    Ok(c)
}

/// Checks both reconstruction identities for every `n` covered by the
/// components and the polynomials.
pub fn check_reconstruction(components: &QdComponents, polys: &[Poly]) -> bool {
    let omega = components.map.omega();
    let anchor = Poly::linear(&components.map.a);
    let rebuild = |even: &Poly, odd: &Poly| &even.compose(&omega) + &(&anchor * &odd.compose(&omega));
    for n in 0..components.p.len() {
        if let Some(w) = polys.get(2 * n) {
            if *w != rebuild(&components.p[n], &components.a_prev[n]) {
                return false;
            }
        }
        if let Some(w) = polys.get(2 * n + 1) {
            if *w != rebuild(&components.b[n], &components.r[n]) {
                return false;
            }
        }
    }
    true
}

/// Which secondary sequence is being normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SecondaryRole {
    A,
    B,
}

/// A secondary sequence rescaled to a monic sequence:
/// `mps[n] = leading[n]^{-1} source[n + offset]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedSecondary {
    pub role: SecondaryRole,
    pub offset: usize,
    pub leading: Vec<Rational>,
    pub mps: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Normalization {
    /// Every covered element is the zero polynomial.
    Null,
    Normalized(NormalizedSecondary),
}

/// Finds the constant offset `k` with `seq[n] = 0` for `n < k` and
/// `deg seq[n] = n - k` afterwards, then divides out the leading coefficients.
pub fn normalize_secondary(seq: &[Poly], role: SecondaryRole) -> Result<Normalization> {
    let Some(offset) = seq.iter().position(|s| !s.is_zero()) else {
        return Ok(Normalization::Null);
    };
    let mut leading = Vec::with_capacity(seq.len() - offset);
    let mut mps = Vec::with_capacity(seq.len() - offset);
    for (n, s) in seq.iter().enumerate().skip(offset) {
        if s.degree() != Some(n - offset) {
            return Err(Error::NotNormalizable(format!(
                "{role:?}-sequence element {n} has degree {:?}, offset {offset} needs {}",
                s.degree(),
                n - offset
            )));
        }
        let lead = s.leading().expect("nonzero").clone();
        mps.push(s.scale(&lead.recip().expect("nonzero")));
        leading.push(lead);
    }
    Ok(Normalization::Normalized(NormalizedSecondary {
        role,
        offset,
        leading,
        mps,
    }))
}

/// Which component a relation check concerns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ComponentKind {
    P,
    R,
    A,
    B,
}

/// A third-order recurrence that failed at index `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub component: ComponentKind,
    pub n: usize,
    pub residual: Poly,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThirdOrderReport {
    /// Failures at `n ≥ grace`.
    pub violations: Vec<Violation>,
    /// Failures below the grace index, reported separately.
    pub early: Vec<Violation>,
}

impl ThirdOrderReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the constant-coefficient third-order recurrences satisfied by the
/// components of the alternating 2-orthogonal family, for `n ≥ 1`:
///
/// ```text
/// a_{n+1} = c(x) a_n - κ a_{n-1} - γ² a_{n-2}       (same for R_{n+1}, b_{n+1})
/// P_{n+2} = c(x) P_{n+1} - κ P_n - γ² P_{n-1}
/// c(x) = x - ω(a) + (a - β)(a + p + β) - α₂ - α₁,   κ = α₁α₂ + γ(p + 2β)
/// ```
///
/// Failures with `n < grace` land in [`ThirdOrderReport::early`]; pass
/// `grace = 0` for the unperturbed family and `r + 2` after an order-`r`
/// perturbation.
pub fn check_third_order_recurrences(components: &QdComponents, params: &CaseParams, grace: usize) -> ThirdOrderReport {
    let map = &components.map;
    let (a, p, beta) = (map.a(), map.p(), &params.beta);
    let shift = map.omega_at_a() - (a - beta) * (a + p + beta) + &params.alpha1 + &params.alpha2;
    let kappa = &params.alpha1 * &params.alpha2 + &params.gamma * (p + beta + beta);
    let gamma2 = &params.gamma * &params.gamma;

    let residual = |next: &Poly, cur: &Poly, prev: &Poly, prev2: &Poly| {
        let mut res = next.clone();
        res.add_scaled(&times_x_minus(cur, &shift), &-Rational::one());
        res.add_scaled(prev, &kappa);
        res.add_scaled(prev2, &gamma2);
        res
    };

    let mut report = ThirdOrderReport::default();
    let mut record = |component, n: usize, res: Poly| {
        if res.is_zero() {
            return;
        }
        let v = Violation {
            component,
            n,
            residual: res,
        };
        if n < grace {
            report.early.push(v);
        } else {
            report.violations.push(v);
        }
    };

    let nmax = components.nmax() as isize;
    for n in 1..nmax {
        let k = n as usize;
        if n + 2 <= nmax {
            let res = residual(
                components.a(n + 1),
                components.a(n),
                components.a(n - 1),
                components.a(n - 2),
            );
            record(ComponentKind::A, k, res);
        }
        let (r, b) = (&components.r, &components.b);
        let at = QdComponents::at;
        record(
            ComponentKind::R,
            k,
            residual(at(r, n + 1), at(r, n), at(r, n - 1), at(r, n - 2)),
        );
        record(
            ComponentKind::B,
            k,
            residual(at(b, n + 1), at(b, n), at(b, n - 1), at(b, n - 2)),
        );
        if n + 2 <= nmax {
            let ps = &components.p;
            record(
                ComponentKind::P,
                k,
                residual(at(ps, n + 2), at(ps, n + 1), at(ps, n), at(ps, n - 1)),
            );
        }
    }
    report
}

/// The four mixed relations linking `a` with `R` and `b` with `P` that hold
/// for the decomposition of any 2-orthogonal sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MixedRelation {
    /// `a_{n+1}` expressed through `a_n, a_{n-1}, a_{n-2}` and `R_{n+1}, R_n, R_{n-1}`.
    AR,
    /// `R_{n+1}` through `R_n, R_{n-1}, R_{n-2}` and `a_n, a_{n-1}, a_{n-2}`.
    RA,
    /// `b_{n+1}` through `b_n, b_{n-1}, b_{n-2}` and `P_{n+1}, P_n, P_{n-1}`.
    BP,
    /// `P_{n+2}` through `P_{n+1}, P_n, P_{n-1}` and `b_{n+1}, b_n, b_{n-1}`.
    PB,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedResidual {
    pub relation: MixedRelation,
    pub n: usize,
    pub residual: Poly,
}

/// Residuals of the four mixed relations for every `n ≥ 0` covered by both
/// the components and `sc`. β, α, γ with out-of-range indices count as zero.
pub fn mixed_relation_residuals(sc: &StructureCoefficients, components: &QdComponents) -> Vec<MixedResidual> {
    let map = &components.map;
    let (a, p, w_a) = (map.a(), map.p(), map.omega_at_a());
    let beta = |k: isize| sc.beta_or_zero(k);
    let alpha = |k: isize| sc.alpha(k);
    let gamma = |k: isize| sc.gamma(k);
    let at = QdComponents::at;
    let (ps, rs, bs) = (&components.p, &components.r, &components.b);
    let am = |k: isize| components.a(k);

    // The generic shape of all four relations with the "even" (k = 2n+1)
    // or "odd" (k = 2n+2) coefficient pattern.
    let relation = |k: isize, top: &Poly, x0: &Poly, x1: &Poly, x2: &Poly, y0: &Poly, y1: &Poly, y2: &Poly| {
        let shift = w_a - (a - beta(k)) * (a + p + beta(k)) + alpha(k + 1) + alpha(k);
        let mut res = top.clone();
        res.add_scaled(&times_x_minus(x0, &shift), &-Rational::one());
        res.add_scaled(
            x1,
            &(alpha(k) * alpha(k - 1) + gamma(k - 1) * (p + beta(k) + beta(k - 2))),
        );
        res.add_scaled(x2, &(gamma(k - 1) * gamma(k - 3)));
        res.add_scaled(y0, &(p + beta(k + 1) + beta(k)));
        res.add_scaled(y1, &(gamma(k) + gamma(k - 1) + alpha(k) * (p + beta(k) + beta(k - 1))));
        res.add_scaled(y2, &(alpha(k) * gamma(k - 2) + gamma(k - 1) * alpha(k - 2)));
        res
    };

    let nmax = components.nmax() as isize;
    let sc_limit = sc.nmax() as isize;
    let mut out = Vec::new();
    for n in 0..nmax {
        let k_even = 2 * n + 1;
        let k_odd = 2 * n + 2;
        let mut push = |relation_kind, residual| {
            out.push(MixedResidual {
                relation: relation_kind,
                n: n as usize,
                residual,
            });
        };
        if n + 2 <= nmax && k_odd < sc_limit {
            let res = relation(
                k_odd,
                am(n + 1),
                am(n),
                am(n - 1),
                am(n - 2),
                at(rs, n + 1),
                at(rs, n),
                at(rs, n - 1),
            );
            push(MixedRelation::AR, res);
        }
        if k_even < sc_limit {
            let res = relation(
                k_even,
                at(rs, n + 1),
                at(rs, n),
                at(rs, n - 1),
                at(rs, n - 2),
                am(n),
                am(n - 1),
                am(n - 2),
            );
            push(MixedRelation::RA, res);
            let res = relation(
                k_even,
                at(bs, n + 1),
                at(bs, n),
                at(bs, n - 1),
                at(bs, n - 2),
                at(ps, n + 1),
                at(ps, n),
                at(ps, n - 1),
            );
            push(MixedRelation::BP, res);
        }
        if n + 2 <= nmax && k_odd < sc_limit {
            let res = relation(
                k_odd,
                at(ps, n + 2),
                at(ps, n + 1),
                at(ps, n),
                at(ps, n - 1),
                at(bs, n + 1),
                at(bs, n),
                at(bs, n - 1),
            );
            push(MixedRelation::PB, res);
        }
    }
    out
}

/// The six coefficient combinations that vanish for the alternating
/// 2-orthogonal family and make the mixed relations collapse to third-order
/// recurrences. Returns `(label, n, value)` for every `n` (from the smallest
/// index each expression is stated for) covered by `sc`.
pub fn vanishing_coefficients(sc: &StructureCoefficients, p: &Rational) -> Vec<(&'static str, usize, Rational)> {
    let beta = |k: usize| sc.beta(k).clone();
    let alpha = |k: usize| sc.alpha(k as isize);
    let gamma = |k: usize| sc.gamma(k as isize);
    let mut out = Vec::new();
    let limit = sc.nmax();
    for n in 0..limit {
        // Highest index used below is 2n+3 for β and 2n+2 for γ (row 2n+2).
        if 2 * n + 3 > limit {
            break;
        }
        out.push(("p+b[2n+3]+b[2n+2]", n, p + beta(2 * n + 3) + beta(2 * n + 2)));
        out.push(("p+b[2n+2]+b[2n+1]", n, p + beta(2 * n + 2) + beta(2 * n + 1)));
        out.push((
            "g[2n+2]+g[2n+1]+a[2n+2](p+b[2n+2]+b[2n+1])",
            n,
            gamma(2 * n + 2) + gamma(2 * n + 1) + alpha(2 * n + 2) * (p + beta(2 * n + 2) + beta(2 * n + 1)),
        ));
        if n >= 1 {
            out.push((
                "g[2n+1]+g[2n]+a[2n+1](p+b[2n+1]+b[2n])",
                n,
                gamma(2 * n + 1) + gamma(2 * n) + alpha(2 * n + 1) * (p + beta(2 * n + 1) + beta(2 * n)),
            ));
            out.push((
                "a[2n+2]g[2n]+g[2n+1]a[2n]",
                n,
                alpha(2 * n + 2) * gamma(2 * n) + gamma(2 * n + 1) * alpha(2 * n),
            ));
            out.push((
                "a[2n+1]g[2n-1]+g[2n]a[2n-1]",
                n,
                alpha(2 * n + 1) * gamma(2 * n - 1) + gamma(2 * n) * alpha(2 * n - 1),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mps::{extract_sc, generate_from_table, BandedRule, CoefficientSeq, MpsSpec};
    use crate::rational::rat;

    fn hermite_sc(nmax: usize) -> StructureCoefficients {
        let beta = CoefficientSeq::constant(rat(0, 1));
        let band = CoefficientSeq::finite((0..=nmax).map(|n| rat(n as i64 + 1, 2)).collect());
        MpsSpec::Banded(BandedRule::new(beta, vec![band]).unwrap())
            .table(nmax)
            .unwrap()
    }

    fn zero_map() -> QuadMap {
        QuadMap::new(rat(0, 1), rat(0, 1), rat(0, 1))
    }

    #[test]
    fn b0_is_anchor_minus_beta0() {
        let sc = hermite_sc(8).truncate(8).unwrap();
        let map = QuadMap::new(rat(1, 2), rat(3, 1), rat(-2, 3));
        let c = decompose(&sc, &map, 4).unwrap();
        assert_eq!(c.b[0], Poly::constant(rat(-2, 3) - sc.beta(0)));
        assert_eq!(c.p[0], Poly::one());
        assert_eq!(c.r[0], Poly::one());
        assert!(c.a_prev[0].is_zero());
    }

    #[test]
    fn symmetric_sequence_has_diagonal_decomposition() {
        let sc = hermite_sc(12);
        let c = decompose(&sc, &zero_map(), 6).unwrap();
        assert!(c.a_prev.iter().all(Poly::is_zero));
        assert!(c.b.iter().all(Poly::is_zero));
        // Hermite splits into Laguerre-type sequences: P_1 = x - 1/2.
        assert_eq!(c.p[1], Poly::new(vec![rat(-1, 2), rat(1, 1)]));
    }

    #[test]
    fn decompose_requires_range() {
        let sc = hermite_sc(5);
        assert!(matches!(decompose(&sc, &zero_map(), 3), Err(Error::Range { .. })));
    }

    #[test]
    fn oracle_on_omega_basis_elements() {
        let map = QuadMap::new(rat(2, 1), rat(-1, 1), rat(1, 3));
        // W_2 = ω + 5  →  P_1 = x + 5, a_0 = 0.
        let w2 = &map.omega() + &Poly::constant(rat(5, 1));
        let (e, o) = split_quadratic(&w2, &map);
        assert_eq!(e, Poly::from_ints(&[5, 1]));
        assert!(o.is_zero());
        // W_1 = x - β_0  →  b_0 = a - β_0, R_0 = 1.
        let w1 = Poly::linear(&rat(7, 2));
        let (e, o) = split_quadratic(&w1, &map);
        assert_eq!(e, Poly::constant(rat(1, 3) - rat(7, 2)));
        assert_eq!(o, Poly::one());
    }

    #[test]
    fn oracle_matches_recurrences_on_hermite() {
        let sc = hermite_sc(10);
        let w = generate_from_table(&sc);
        let map = QuadMap::new(rat(1, 1), rat(-2, 1), rat(3, 4));
        let fast = decompose(&sc, &map, 5).unwrap();
        let slow = decompose_oracle(&w, &map).unwrap();
        assert_eq!(fast, slow);
        assert!(check_reconstruction(&fast, &w));
    }

    #[test]
    fn tampered_component_breaks_reconstruction() {
        let sc = hermite_sc(10);
        let w = generate_from_table(&sc);
        let mut c = decompose(&sc, &zero_map(), 5).unwrap();
        c.p[1] = &c.p[1] + &Poly::one();
        assert!(!check_reconstruction(&c, &w));
    }

    #[test]
    fn normalize_trichotomy() {
        let zeros = vec![Poly::zero(); 4];
        assert_eq!(
            normalize_secondary(&zeros, SecondaryRole::A).unwrap(),
            Normalization::Null
        );

        let shifted = vec![Poly::zero(), Poly::constant(rat(3, 1)), Poly::from_ints(&[1, 3])];
        let Normalization::Normalized(n) = normalize_secondary(&shifted, SecondaryRole::B).unwrap() else {
            panic!("expected normalized");
        };
        assert_eq!(n.offset, 1);
        assert_eq!(n.leading, vec![rat(3, 1), rat(3, 1)]);
        assert_eq!(n.mps[1], Poly::new(vec![rat(1, 3), rat(1, 1)]));

        let ragged = vec![Poly::constant(rat(1, 1)), Poly::constant(rat(2, 1))];
        assert!(matches!(
            normalize_secondary(&ragged, SecondaryRole::B),
            Err(Error::NotNormalizable(_))
        ));
    }

    #[test]
    fn extract_then_decompose_is_consistent() {
        let sc = hermite_sc(9);
        let w = generate_from_table(&sc);
        assert_eq!(extract_sc(&w).unwrap(), sc);
    }

    #[test]
    fn matrix_json_round_trip() {
        let sc = hermite_sc(6);
        let map = QuadMap::new(rat(1, 2), rat(0, 1), rat(-1, 1));
        let c = decompose(&sc, &map, 3).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.contains("\"a_prev\""));
        assert!(text.contains("\"P\""));
        let back: QdComponents = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn quad_map_rejects_inconsistent_cache() {
        let bad = r#"{"p":"1","q":"0","a":"1","omega_at_a":"7"}"#;
        assert!(serde_json::from_str::<QuadMap>(bad).is_err());
        let ok = r#"{"p":"1","q":"0","a":"1"}"#;
        assert_eq!(serde_json::from_str::<QuadMap>(ok).unwrap().omega_at_a(), &rat(2, 1));
    }
}
