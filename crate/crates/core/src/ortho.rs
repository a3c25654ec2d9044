//! d-orthogonality, d-symmetry and Hahn-classical character, read off exact
//! structure coefficients.
//!
//! A sequence is d-orthogonal exactly when its structure relation is a
//! `(d+1)`-term recurrence with a nonvanishing lowest band: `χ_{n,ν} = 0`
//! for `ν < n - d + 1` and `χ_{n,n-d+1} ≠ 0`. Everything here is evidence on
//! the covered index range only; a report never claims more than that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mps::{derivative_sequence, extract_sc, generate_mps, MpsSpec, StructureCoefficients};
use crate::poly::Poly;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A nonzero entry below the band.
    Band,
    /// A vanishing entry on the lowest band.
    Irregular,
}

/// The χ entry that rules out order `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub d: usize,
    pub n: usize,
    pub nu: usize,
    pub value: Rational,
    pub kind: WitnessKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoReport {
    pub detected_d: Option<usize>,
    /// The `nmax` of the structure coefficients examined.
    pub range: usize,
    pub dmax: usize,
    /// False when some band-consistent order failed on a vanishing lowest band.
    pub regularity_ok: bool,
    pub first_irregular: Option<usize>,
    /// One witness per rejected order, in increasing `d`.
    pub witnesses: Vec<Witness>,
    /// Set by [`check_hahn_classical`], and only when `detected_d` is set.
    pub classical: Option<bool>,
    pub sc: StructureCoefficients,
}

impl OrthoReport {
    pub fn witness_for(&self, d: usize) -> Option<&Witness> {
        self.witnesses.iter().find(|w| w.d == d)
    }

    /// True when every order `1..=dmax` was rejected by a nonzero entry
    /// below its band.
    pub fn rejects_all_with_band_witnesses(&self) -> bool {
        self.detected_d.is_none()
            && (1..=self.dmax).all(|d| {
                self.witness_for(d)
                    .is_some_and(|w| w.kind == WitnessKind::Band && !w.value.is_zero())
            })
    }
}

fn band_violation(sc: &StructureCoefficients, d: usize) -> Option<Witness> {
    for (n, row) in sc.chi_rows().iter().enumerate().skip(d) {
        if let Some((nu, value)) = row.iter().enumerate().take(n + 1 - d).find(|(_, v)| !v.is_zero()) {
            return Some(Witness {
                d,
                n,
                nu,
                value: value.clone(),
                kind: WitnessKind::Band,
            });
        }
    }
    None
}

fn irregular_entry(sc: &StructureCoefficients, d: usize) -> Option<Witness> {
    sc.chi_rows()
        .iter()
        .enumerate()
        .skip(d - 1)
        .find(|(n, row)| row[n + 1 - d].is_zero())
        .map(|(n, _)| Witness {
            d,
            n,
            nu: n + 1 - d,
            value: Rational::zero(),
            kind: WitnessKind::Irregular,
        })
}

/// The entry ruling out regular order `d` on the covered rows: a nonzero
/// entry below the band if any, otherwise a vanishing lowest-band entry.
pub fn order_witness(sc: &StructureCoefficients, d: usize) -> Option<Witness> {
    band_violation(sc, d).or_else(|| irregular_entry(sc, d))
}

/// Smallest `d ≤ dmax` whose band condition and lowest-band regularity hold
/// on every covered row. Needs `sc.nmax() ≥ dmax + 2` so that each order has
/// rows to be tested on.
pub fn detect_orthogonality_order(sc: &StructureCoefficients, dmax: usize) -> Result<OrthoReport> {
    if sc.nmax() < dmax + 2 {
        return Err(Error::range(
            "structure coefficients for order detection",
            dmax + 2,
            sc.nmax(),
        ));
    }
    let mut report = OrthoReport {
        detected_d: None,
        range: sc.nmax(),
        dmax,
        regularity_ok: true,
        first_irregular: None,
        witnesses: Vec::new(),
        classical: None,
        sc: sc.clone(),
    };
    for d in 1..=dmax {
        if let Some(w) = band_violation(sc, d) {
            report.witnesses.push(w);
            continue;
        }
        if let Some(w) = irregular_entry(sc, d) {
            if report.regularity_ok {
                report.regularity_ok = false;
                report.first_irregular = Some(w.n);
            }
            report.witnesses.push(w);
            continue;
        }
        report.detected_d = Some(d);
        break;
    }
    Ok(report)
}

/// Coefficient-support form of d-symmetry: every nonzero coefficient of
/// `W_m` sits at an exponent congruent to `m` modulo `d + 1`.
pub fn check_d_symmetric(polys: &[Poly], d: usize) -> bool {
    let period = d + 1;
    polys.iter().enumerate().all(|(m, w)| {
        w.coeffs()
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k % period == m % period)
    })
}

/// Reports for a sequence and for its derivative sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HahnReport {
    pub base: OrthoReport,
    pub derivative: OrthoReport,
}

impl HahnReport {
    pub fn classical(&self) -> bool {
        self.base.classical == Some(true)
    }
}

/// Materializes the sequence up to degree `nmax + 4`, builds the derivative
/// sequence and runs order detection (orders up to `nmax`) on both.
/// Classical at this range means both detect the same order.
pub fn check_hahn_classical(spec: &MpsSpec, nmax: usize) -> Result<HahnReport> {
    let polys = generate_mps(spec, nmax + 4)?;
    hahn_from_polys(&polys, nmax)
}

/// [`check_hahn_classical`] on an already materialized prefix; needs at
/// least `dmax + 5` elements.
pub fn hahn_from_polys(polys: &[Poly], dmax: usize) -> Result<HahnReport> {
    let sc = extract_sc(polys)?;
    let deriv = derivative_sequence(polys, &sc)?;
    let dsc = extract_sc(&deriv)?;
    let mut base = detect_orthogonality_order(&sc, dmax)?;
    let derivative = detect_orthogonality_order(&dsc, dmax)?;
    if let Some(d) = base.detected_d {
        base.classical = Some(derivative.detected_d == Some(d));
    }
    Ok(HahnReport { base, derivative })
}
