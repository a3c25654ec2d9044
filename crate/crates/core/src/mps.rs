//! Monic polynomial sequences and their structure coefficients.
//!
//! A monic polynomial sequence `{W_n}` (deg `W_n` = n, leading coefficient 1)
//! is described by its structure relation
//!
//! ```text
//! W_0 = 1,  W_1 = x - β_0,
//! x W_{n+1} = W_{n+2} + β_{n+1} W_{n+1} + Σ_{ν=0..n} χ_{n,ν} W_ν,
//! ```
//!
//! so row `n` of the χ table governs the expansion of `x W_{n+1}`. A table
//! with `nmax` carries `β_0..β_nmax` and χ rows `0..nmax-1`, which is exactly
//! the data that determines `W_0..W_{nmax+1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// The `(β_n, χ_{n,ν})` data of a structure relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructureCoefficients")]
pub struct StructureCoefficients {
    nmax: usize,
    beta: Vec<Rational>,
    chi: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct RawStructureCoefficients {
    nmax: usize,
    beta: Vec<Rational>,
    chi: Vec<Vec<Rational>>,
}

impl TryFrom<RawStructureCoefficients> for StructureCoefficients {
    type Error = Error;

    fn try_from(raw: RawStructureCoefficients) -> Result<Self> {
        StructureCoefficients::new(raw.nmax, raw.beta, raw.chi)
    }
}

impl StructureCoefficients {
    /// Checks the shape: `nmax + 1` betas, `nmax` χ rows, row `n` of length `n + 1`.
    pub fn new(nmax: usize, beta: Vec<Rational>, chi: Vec<Vec<Rational>>) -> Result<Self> {
        if beta.len() != nmax + 1 {
            return Err(Error::Malformed(format!(
                "beta has {} entries, expected nmax + 1 = {}",
                beta.len(),
                nmax + 1
            )));
        }
        if chi.len() != nmax {
            return Err(Error::Malformed(format!(
                "chi has {} rows, expected nmax = {nmax}",
                chi.len()
            )));
        }
        if let Some((n, row)) = chi.iter().enumerate().find(|(n, row)| row.len() != n + 1) {
            return Err(Error::Malformed(format!(
                "chi row {n} has {} entries, expected {}",
                row.len(),
                n + 1
            )));
        }
        Ok(StructureCoefficients { nmax, beta, chi })
    }

    pub fn nmax(&self) -> usize {
        self.nmax
    }

    pub fn beta(&self, n: usize) -> &Rational {
        &self.beta[n]
    }

    pub fn betas(&self) -> &[Rational] {
        &self.beta
    }

    pub fn chi(&self, n: usize, nu: usize) -> &Rational {
        &self.chi[n][nu]
    }

    pub fn chi_rows(&self) -> &[Vec<Rational>] {
        &self.chi
    }

    /// χ entry or zero when `(n, ν)` is outside the table.
    pub fn chi_or_zero(&self, n: isize, nu: isize) -> Rational {
        if n < 0 || nu < 0 || nu > n {
            return Rational::zero();
        }
        self.chi
            .get(n as usize)
            .map(|row| row[nu as usize].clone())
            .unwrap_or_default()
    }

    /// β entry or zero outside the table.
    pub fn beta_or_zero(&self, n: isize) -> Rational {
        if n < 0 {
            return Rational::zero();
        }
        self.beta.get(n as usize).cloned().unwrap_or_default()
    }

    /// `α_n = χ_{n-1,n-1}` in the usual 2-orthogonal naming, zero out of range.
    pub fn alpha(&self, n: isize) -> Rational {
        self.chi_or_zero(n - 1, n - 1)
    }

    /// `γ_n = χ_{n,n-1}` in the usual 2-orthogonal naming, zero out of range.
    pub fn gamma(&self, n: isize) -> Rational {
        self.chi_or_zero(n, n - 1)
    }

    pub fn truncate(&self, nmax: usize) -> Result<Self> {
        if nmax > self.nmax {
            return Err(Error::range("structure coefficient table", nmax, self.nmax));
        }
        Ok(StructureCoefficients {
            nmax,
            beta: self.beta[..=nmax].to_vec(),
            chi: self.chi[..nmax].to_vec(),
        })
    }
}

/// A coefficient sequence that is eventually periodic in the absolute index.
///
/// `get(n)` returns `head[n]` while `n < head.len()`, otherwise
/// `cycle[n % cycle.len()]`. An empty cycle makes the sequence finite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientSeq {
    head: Vec<Rational>,
    cycle: Vec<Rational>,
}

impl CoefficientSeq {
    pub fn finite(values: Vec<Rational>) -> Self {
        CoefficientSeq {
            head: values,
            cycle: Vec::new(),
        }
    }

    pub fn periodic(cycle: Vec<Rational>) -> Self {
        CoefficientSeq {
            head: Vec::new(),
            cycle,
        }
    }

    pub fn constant(value: Rational) -> Self {
        CoefficientSeq::periodic(vec![value])
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        if n < self.head.len() {
            Some(&self.head[n])
        } else if self.cycle.is_empty() {
            None
        } else {
            Some(&self.cycle[n % self.cycle.len()])
        }
    }

    /// Number of defined entries, `None` when unbounded.
    pub fn len(&self) -> Option<usize> {
        self.cycle.is_empty().then_some(self.head.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Replaces entry `n`, materializing the head up to `n`.
    pub fn with_value(mut self, n: usize, value: Rational) -> Result<Self> {
        while self.head.len() <= n {
            let k = self.head.len();
            if k == n {
                self.head.push(Rational::zero());
                break;
            }
            let v = self
                .get(k)
                .cloned()
                .ok_or_else(|| Error::range("coefficient sequence", n, k))?;
            self.head.push(v);
        }
        self.head[n] = value;
        Ok(self)
    }
}

/// A `d`-banded structure relation: β_n plus `d` bands with
/// `bands[j]` giving `χ_{n,n-j}` at row `n` (entries for `n < j` are ignored).
///
/// For `d = 2`, band 0 holds `α_{n+1} = χ_{n,n}` and band 1 holds
/// `γ_n = χ_{n,n-1}`; every other χ is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandedRule {
    order: usize,
    beta: CoefficientSeq,
    bands: Vec<CoefficientSeq>,
}

impl BandedRule {
    pub fn new(beta: CoefficientSeq, bands: Vec<CoefficientSeq>) -> Result<Self> {
        if bands.is_empty() {
            return Err(Error::Malformed("banded rule needs at least one band".into()));
        }
        Ok(BandedRule {
            order: bands.len(),
            beta,
            bands,
        })
    }

    /// `d = 2` rule from `β_n`, `α_{n+1}` (indexed by row `n`) and `γ_n`.
    pub fn two_orthogonal(beta: CoefficientSeq, alpha_by_row: CoefficientSeq, gamma: CoefficientSeq) -> Self {
        BandedRule {
            order: 2,
            beta,
            bands: vec![alpha_by_row, gamma],
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn beta_seq(&self) -> &CoefficientSeq {
        &self.beta
    }

    pub fn band(&self, j: usize) -> &CoefficientSeq {
        &self.bands[j]
    }

    pub fn beta(&self, n: usize) -> Option<&Rational> {
        self.beta.get(n)
    }

    /// `χ_{n,ν}`; zero outside the band, `None` when the rule runs out.
    pub fn chi(&self, n: usize, nu: usize) -> Option<Rational> {
        let j = n.checked_sub(nu)?;
        match self.bands.get(j) {
            Some(band) => band.get(n).cloned(),
            None => Some(Rational::zero()),
        }
    }

    /// Materializes the table with `β_0..β_nmax` and rows `0..nmax-1`.
    pub fn table(&self, nmax: usize) -> Result<StructureCoefficients> {
        let beta = (0..=nmax)
            .map(|n| self.beta.get(n).cloned().ok_or_else(|| Error::range("beta rule", n, n)))
            .collect::<Result<Vec<_>>>()?;
        let mut chi = Vec::with_capacity(nmax);
        for n in 0..nmax {
            let mut row = vec![Rational::zero(); n + 1];
            for (j, band) in self.bands.iter().enumerate().filter(|(j, _)| *j <= n) {
                row[n - j] = band
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::range(format!("band {j} rule"), n, n))?;
            }
            chi.push(row);
        }
        StructureCoefficients::new(nmax, beta, chi)
    }

    /// Errors at the first row `n ≤ nmax` whose lowest band entry
    /// `χ_{n,n-d+1}` vanishes.
    pub fn check_regularity(&self, nmax: usize) -> Result<()> {
        let low = self.order - 1;
        for n in low..nmax {
            let v = self.bands[low]
                .get(n)
                .ok_or_else(|| Error::range("lowest band", n, n))?;
            if v.is_zero() {
                return Err(Error::Regularity(format!(
                    "lowest band entry chi[{n}][{}] vanishes",
                    n - low
                )));
            }
        }
        Ok(())
    }
}

/// How a sequence is defined, without materializing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MpsSpec {
    Banded(BandedRule),
    Explicit(StructureCoefficients),
}

impl MpsSpec {
    /// Structure coefficients with `β_0..β_nmax` and rows `0..nmax-1`.
    pub fn table(&self, nmax: usize) -> Result<StructureCoefficients> {
        match self {
            MpsSpec::Banded(rule) => rule.table(nmax),
            MpsSpec::Explicit(sc) => sc.truncate(nmax),
        }
    }

    pub fn as_banded(&self) -> Option<&BandedRule> {
        match self {
            MpsSpec::Banded(rule) => Some(rule),
            MpsSpec::Explicit(_) => None,
        }
    }
}

impl From<BandedRule> for MpsSpec {
    fn from(rule: BandedRule) -> Self {
        MpsSpec::Banded(rule)
    }
}

impl From<StructureCoefficients> for MpsSpec {
    fn from(sc: StructureCoefficients) -> Self {
        MpsSpec::Explicit(sc)
    }
}

/// A finite perturbation of a banded structure relation.
///
/// `β̃_0 = β_0 + μ_0`, `β̃_n = β_n + μ_n` for `1 ≤ n ≤ r`. Band `j` entries
/// carry a recurrence index `i = n + 1 - j` (so `γ^{d-1-j}_i` sits at row
/// `n = i + j - 1`), and `lambda[j][i-1]` scales index `i` for `1 ≤ i ≤ r`.
/// With `d = 1` this is the classical order-`r` perturbation; `r = 0` is a
/// co-recursive change of `β_0` alone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerturbationSpec {
    mu0: Rational,
    mu: Vec<Rational>,
    lambda: Vec<Vec<Rational>>,
}

impl PerturbationSpec {
    pub fn new(mu0: Rational, mu: Vec<Rational>, lambda: Vec<Vec<Rational>>) -> Result<Self> {
        let r = mu.len();
        if let Some(bad) = lambda.iter().position(|l| l.len() != r) {
            return Err(Error::Malformed(format!(
                "lambda for band {bad} has {} entries, expected r = {r}",
                lambda[bad].len()
            )));
        }
        if lambda.iter().flatten().any(Rational::is_zero) {
            return Err(Error::Regularity("perturbation multiplier lambda is zero".into()));
        }
        if r > 0 && mu[r - 1].is_zero() && lambda.iter().all(|l| l[r - 1].is_one()) {
            return Err(Error::degenerate(format!(
                "order {r} perturbation needs mu_{r} != 0 or some lambda_{r} != 1; mu_{r}"
            )));
        }
        Ok(PerturbationSpec { mu0, mu, lambda })
    }

    pub fn co_recursive(mu0: Rational) -> Self {
        PerturbationSpec {
            mu0,
            mu: Vec::new(),
            lambda: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.mu.len()
    }

    pub fn mu0(&self) -> &Rational {
        &self.mu0
    }
}

/// `W_0..W_nmax` from the structure relation.
pub fn generate_mps(spec: &MpsSpec, nmax: usize) -> Result<Vec<Poly>> {
    if nmax == 0 {
        return Ok(vec![Poly::one()]);
    }
    let sc = spec.table(nmax - 1)?;
    Ok(generate_from_table(&sc))
}

/// `W_0..W_{sc.nmax+1}`.
pub fn generate_from_table(sc: &StructureCoefficients) -> Vec<Poly> {
    let mut w = Vec::with_capacity(sc.nmax + 2);
    w.push(Poly::one());
    w.push(Poly::linear(sc.beta(0)));
    for n in 0..sc.nmax {
        // W_{n+2} = (x - β_{n+1}) W_{n+1} - Σ χ_{n,ν} W_ν
        let mut next = w[n + 1].shift_up();
        next.add_scaled(&w[n + 1], &-sc.beta(n + 1));
        for (nu, c) in sc.chi[n].iter().enumerate() {
            next.add_scaled(&w[nu], &-c);
        }
        w.push(next);
    }
    w
}

fn validate_prefix(polys: &[Poly]) -> Result<()> {
    for (n, p) in polys.iter().enumerate() {
        if p.degree() != Some(n) {
            return Err(Error::InvalidMps(format!(
                "element {n} has degree {:?}, expected {n}",
                p.degree()
            )));
        }
        if !p.is_monic() {
            return Err(Error::InvalidMps(format!("element {n} is not monic")));
        }
    }
    Ok(())
}

/// Recovers the structure coefficients of a sequence prefix `W_0..W_N`
/// (`N ≥ 1`); the result has `nmax = N - 1`.
///
/// Each row expands `x W_{n+1} - W_{n+2}` over `W_{n+1}, ..., W_0` from the
/// top degree down, reading each coefficient off the highest surviving term.
pub fn extract_sc(polys: &[Poly]) -> Result<StructureCoefficients> {
    if polys.len() < 2 {
        return Err(Error::InvalidMps(format!(
            "need at least W_0 and W_1, got {} elements",
            polys.len()
        )));
    }
    validate_prefix(polys)?;
    let nmax = polys.len() - 2;
    let mut beta = Vec::with_capacity(nmax + 1);
    beta.push(-polys[1].coeff(0));
    let mut chi = Vec::with_capacity(nmax);
    for n in 0..nmax {
        let mut rest = &polys[n + 1].shift_up() - &polys[n + 2];
        let mut coeffs = vec![Rational::zero(); n + 2];
        for k in (0..=n + 1).rev() {
            let c = rest.coeff(k);
            if !c.is_zero() {
                rest.add_scaled(&polys[k], &-&c);
            }
            coeffs[k] = c;
        }
        debug_assert!(rest.is_zero());
        beta.push(coeffs.pop().expect("row has n + 2 entries"));
        chi.push(coeffs);
    }
    StructureCoefficients::new(nmax, beta, chi)
}

/// `W^{[1]}_n = (n+1)^{-1} D W_{n+1}` for `n = 0..N-1`, built from the
/// differentiated structure relation
///
/// ```text
/// (n+1) W^{[1]}_n = W_n + n (x - β_n) W^{[1]}_{n-1} - Σ_{ν=1..n-1} ν χ_{n-1,ν} W^{[1]}_{ν-1}.
/// ```
pub fn derivative_sequence(polys: &[Poly], sc: &StructureCoefficients) -> Result<Vec<Poly>> {
    if polys.is_empty() {
        return Ok(Vec::new());
    }
    let count = polys.len() - 1;
    if count >= 1 && sc.nmax() + 1 < count {
        return Err(Error::range(
            "structure coefficients for derivative sequence",
            count - 1,
            sc.nmax(),
        ));
    }
    let mut out: Vec<Poly> = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            out.push(Poly::one());
            continue;
        }
        let nr = Rational::from(n);
        let mut acc = polys[n].clone();
        let prev = &out[n - 1];
        acc.add_scaled(&prev.shift_up(), &nr);
        acc.add_scaled(prev, &-(&nr * sc.beta(n)));
        for nu in 1..n {
            let c = sc.chi(n - 1, nu);
            if !c.is_zero() {
                acc.add_scaled(&out[nu - 1], &-(Rational::from(nu) * c));
            }
        }
        out.push(acc.scale(&Rational::new(1, n as i64 + 1)));
    }
    Ok(out)
}

/// Applies a finite perturbation to a banded rule; indices above the order
/// are left untouched.
pub fn perturb(spec: &MpsSpec, pert: &PerturbationSpec) -> Result<MpsSpec> {
    let rule = spec
        .as_banded()
        .ok_or_else(|| Error::Unsupported("only banded rules can be perturbed".into()))?;
    let r = pert.order();
    if r > 0 && pert.lambda.len() != rule.order {
        return Err(Error::Malformed(format!(
            "perturbation has {} band multipliers, rule has order {}",
            pert.lambda.len(),
            rule.order
        )));
    }
    let mut beta = rule.beta.clone();
    for (n, shift) in std::iter::once(&pert.mu0).chain(&pert.mu).enumerate() {
        if shift.is_zero() {
            continue;
        }
        let old = rule.beta(n).cloned().ok_or_else(|| Error::range("beta rule", n, n))?;
        beta = beta.with_value(n, old + shift)?;
    }
    let mut bands = rule.bands.clone();
    for (j, scales) in pert.lambda.iter().enumerate() {
        for (i, scale) in (1..=r).zip(scales) {
            if scale.is_one() {
                continue;
            }
            let row = i + j - 1;
            let old = rule.bands[j]
                .get(row)
                .cloned()
                .ok_or_else(|| Error::range("band rule", row, row))?;
            let new = old * scale;
            if j + 1 == rule.order && new.is_zero() {
                return Err(Error::Regularity(format!(
                    "perturbed lowest band vanishes at row {row}"
                )));
            }
            bands[j] = bands[j].clone().with_value(row, new)?;
        }
    }
    Ok(MpsSpec::Banded(BandedRule {
        order: rule.order,
        beta,
        bands,
    }))
}
