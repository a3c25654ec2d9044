//! Seeded random rationals, admissible case parameters and random
//! structure relations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cases::{check_admissible, CaseId, CaseParams, Family};
use crate::error::{Error, Result};
use crate::mps::{BandedRule, CoefficientSeq, MpsSpec, StructureCoefficients};
use crate::rational::Rational;

pub type SampleRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Numerator in `[-9, 9]`, denominator in `[1, 9]`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=9))
}

/// [`small_rational`] conditioned on being nonzero.
pub fn small_nonzero<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let v = small_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

const MAX_TRIES: usize = 100_000;

/// Draws parameters for `case`, forcing the defining equalities
/// (`α₂ = 0`, `p = -β-a`, `τ = a`) and rejecting every tuple that
/// [`check_admissible`] or [`sampler_hyperplanes`] excludes.
pub fn sample_params<R: Rng>(case: CaseId, rng: &mut R) -> Result<CaseParams> {
    for _ in 0..MAX_TRIES {
        let mut draw = || small_rational(rng);
        let mut params = CaseParams::main(draw(), draw(), draw(), draw(), draw(), draw(), draw());
        match case.family() {
            Family::Main => {}
            Family::CoRecursive => params.tau = Some(draw()),
            Family::Pert2I => {
                params.tau = Some(draw());
                params.eta1 = Some(draw());
                params.eta2 = Some(draw());
                params.xi = Some(draw());
            }
            Family::Pert2II => {
                params.tau1 = Some(draw());
                params.tau2 = Some(draw());
            }
        }
        if matches!(case, CaseId::IAlpha2Zero | CaseId::IIAlpha2Zero) {
            params.alpha2 = Rational::zero();
        }
        if matches!(case, CaseId::II | CaseId::IIAlpha2Zero) {
            params.p = -(&params.beta + &params.a);
        }
        if matches!(case, CaseId::CoII | CaseId::Pert2ITauA) {
            params.tau = Some(params.a.clone());
        }
        if check_admissible(case, &params).is_ok()
            && sampler_hyperplanes(case, &params).iter().all(|(_, v)| !v.is_zero())
        {
            return Ok(params);
        }
    }
    Err(Error::Unsupported(format!(
        "no admissible parameters for case {case} after {MAX_TRIES} draws"
    )))
}

/// Expressions the sampler keeps nonzero on top of the case preconditions:
/// the lowest-band entries of the closed-form tables, so that every
/// tabulated component is regular at the sampled point.
pub fn sampler_hyperplanes(case: CaseId, params: &CaseParams) -> Vec<(&'static str, Rational)> {
    let CaseParams {
        beta: b,
        alpha2: a2,
        gamma: g,
        a,
        ..
    } = params;
    let mut out = Vec::new();
    if let (CaseId::Pert2I | CaseId::Pert2ITauA, Some(tau), Some(e2), Some(xi)) =
        (case, &params.tau, &params.eta2, &params.xi)
    {
        out.push(("gamma_1^P", a * a2 - a * a2 * e2 + g * xi - a2 * tau + a2 * e2 * tau));
    }
    if let (CaseId::Pert2II, Some(t1), Some(t2)) = (case, &params.tau1, &params.tau2) {
        out.push(("a + beta - tau1 - tau2", a + b - t1 - t2));
    }
    out
}

/// `count` admissible tuples from one seeded stream.
pub fn sample_many(case: CaseId, seed: u64, count: usize) -> Result<Vec<CaseParams>> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| sample_params(case, &mut rng)).collect()
}

/// A regular d-banded rule with at least `rows` explicit rows.
pub fn random_banded_spec<R: Rng>(rng: &mut R, d: usize, rows: usize) -> MpsSpec {
    let n = rows + 2;
    let beta = CoefficientSeq::finite((0..=n).map(|_| small_rational(rng)).collect());
    let bands = (0..d)
        .map(|j| {
            let lowest = j + 1 == d;
            CoefficientSeq::finite(
                (0..=n)
                    .map(|_| {
                        if lowest {
                            small_nonzero(rng)
                        } else {
                            small_rational(rng)
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    MpsSpec::Banded(BandedRule::new(beta, bands).expect("nonempty bands"))
}

/// A full lower-triangular table with nonzero entries throughout.
pub fn random_dense_table<R: Rng>(rng: &mut R, nmax: usize) -> StructureCoefficients {
    let beta = (0..=nmax).map(|_| small_rational(rng)).collect();
    let chi = (0..nmax)
        .map(|n| (0..=n).map(|_| small_nonzero(rng)).collect())
        .collect();
    StructureCoefficients::new(nmax, beta, chi).expect("well-shaped table")
}

/// Random spec of order 1, 2 or 3 (banded) or dense.
pub fn random_spec<R: Rng>(rng: &mut R, rows: usize) -> MpsSpec {
    match rng.gen_range(0..4) {
        0 => MpsSpec::Explicit(random_dense_table(rng, rows)),
        d => random_banded_spec(rng, d, rows),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::dispatch;

    #[test]
    fn rationals_stay_in_range() {
        let mut rng = rng_from_seed(7);
        for _ in 0..500 {
            let v = small_rational(&mut rng);
            assert!(v.denom() <= &9.into() && v.numer().magnitude() <= &9u32.into());
        }
    }

    #[test]
    fn sampled_tuples_dispatch_to_their_case() {
        for case in CaseId::ALL {
            for params in sample_many(case, 11, 10).unwrap() {
                assert_eq!(dispatch(&params).unwrap(), case);
            }
        }
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(
            sample_many(CaseId::CoI, 3, 5).unwrap(),
            sample_many(CaseId::CoI, 3, 5).unwrap()
        );
    }
}
