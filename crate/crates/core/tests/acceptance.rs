//! One PASS/FAIL line per acceptance criterion. Every comparison is exact
//! rational equality; there is no tolerance anywhere.

use std::process::ExitCode;

use quadorth::cases::{closing_identity_holds, family_main, verify_case, CaseId, CaseVerdict, Claim, ComponentId};
use quadorth::mps::{derivative_sequence, extract_sc, generate_from_table, generate_mps};
use quadorth::ortho::hahn_from_polys;
use quadorth::quad::{decompose, decompose_oracle, mixed_relation_residuals, vanishing_coefficients, QuadMap};
use quadorth::sampling::{
    random_banded_spec, random_dense_table, random_spec, rng_from_seed, sample_many, small_rational, SampleRng,
};
use quadorth::{Poly, Rational};

const SEED: u64 = 2024;
const TUPLES: usize = 20;
const NMAX: usize = 10;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_map(rng: &mut SampleRng) -> QuadMap {
    QuadMap::new(small_rational(rng), small_rational(rng), small_rational(rng))
}

fn verdicts(case: CaseId) -> Result<Vec<CaseVerdict>, String> {
    sample_many(case, SEED, TUPLES)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|params| verify_case(case, params, NMAX, NMAX).map_err(|e| format!("{case}: {e}")))
        .collect()
}

fn report(v: &CaseVerdict, c: ComponentId) -> Result<&quadorth::cases::ComponentReport, String> {
    v.report(c).ok_or_else(|| format!("{}: no report for {c}", v.case_id))
}

/// Every table, coincidence, nullity and leading claim held.
fn strict(v: &CaseVerdict, c: ComponentId) -> Result<(), String> {
    let r = report(v, c)?;
    check(r.matches_expected, || {
        format!("{} {}: {:?}", v.case_id, r.label, r.first_mismatch)
    })
}

fn coincides(v: &CaseVerdict, c: ComponentId, target: ComponentId) -> Result<(), String> {
    let r = report(v, c)?;
    check(r.coincides_with == Some(target), || {
        format!("{} {} does not coincide with {target}", v.case_id, r.label)
    })
}

/// Rejected for every d ≤ NMAX, each rejection backed by a nonzero entry.
fn rejected_everywhere(v: &CaseVerdict, c: ComponentId) -> Result<(), String> {
    let r = report(v, c)?;
    check(r.claim == Claim::NotOrthogonal && !r.exceptional, || {
        format!("{} {} not rejected", v.case_id, r.label)
    })?;
    for d in 1..=NMAX {
        let w = r
            .witnesses
            .iter()
            .find(|w| w.d == d)
            .ok_or_else(|| format!("{} {}: no witness for d = {d}", v.case_id, r.label))?;
        check(!w.value.is_zero(), || {
            format!("{} {}: zero witness for d = {d}", v.case_id, r.label)
        })?;
    }
    Ok(())
}

fn identity(v: &CaseVerdict, prefix: &str) -> Result<(), String> {
    let i = v
        .identity(prefix)
        .ok_or_else(|| format!("{}: identity {prefix:?} not checked", v.case_id))?;
    check(i.holds, || format!("{}: {} fails ({:?})", v.case_id, i.claim, i.detail))
}

fn leading_constant(v: &CaseVerdict, c: ComponentId, offset: usize, value: &Rational) -> Result<(), String> {
    let r = report(v, c)?;
    check(r.offset == Some(offset), || {
        format!("{} {}: offset {:?}", v.case_id, r.label, r.offset)
    })?;
    check(r.leading.iter().all(|l| l == value), || {
        format!("{} {}: leading {:?}, expected {value}", v.case_id, r.label, r.leading)
    })
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng_from_seed(SEED);
    for k in 0..50 {
        let spec = match k % 4 {
            0 => quadorth::mps::MpsSpec::Explicit(random_dense_table(&mut rng, 16)),
            d => random_banded_spec(&mut rng, d, 16),
        };
        let sc = spec.table(16).map_err(|e| e.to_string())?;
        let map = random_map(&mut rng);
        let fast = decompose(&sc, &map, 8).map_err(|e| e.to_string())?;
        let slow = decompose_oracle(&generate_from_table(&sc), &map).map_err(|e| e.to_string())?;
        check(fast == slow, || format!("spec {k} differs"))?;
    }
    Ok("50 specs (d = 1, 2, 3 and dense), nmax = 8".into())
}

fn case_one() -> Outcome {
    for v in verdicts(CaseId::I)? {
        for c in [ComponentId::P, ComponentId::R, ComponentId::B, ComponentId::R1] {
            strict(&v, c)?;
        }
        check(!report(&v, ComponentId::A)?.present, || {
            "a-component is not null".into()
        })?;
        rejected_everywhere(&v, ComponentId::P1)?;
        rejected_everywhere(&v, ComponentId::B1)?;
    }
    Ok(format!(
        "{TUPLES} tuples, P R B R[1] tables, a null, P[1] B[1] rejected for d ≤ {NMAX}"
    ))
}

fn case_one_alpha2_zero() -> Outcome {
    for v in verdicts(CaseId::IAlpha2Zero)? {
        for c in [
            ComponentId::P,
            ComponentId::R,
            ComponentId::B,
            ComponentId::P1,
            ComponentId::R1,
        ] {
            strict(&v, c)?;
        }
        coincides(&v, ComponentId::P, ComponentId::R)?;
        coincides(&v, ComponentId::P1, ComponentId::R1)?;
    }
    Ok(format!("{TUPLES} tuples, P = R and P[1] = R[1] termwise"))
}

fn case_two() -> Outcome {
    for case in [CaseId::II, CaseId::IIAlpha2Zero] {
        for v in verdicts(case)? {
            for c in [
                ComponentId::P,
                ComponentId::R,
                ComponentId::B,
                ComponentId::R1,
                ComponentId::B1,
            ] {
                strict(&v, c)?;
            }
            leading_constant(&v, ComponentId::B, 1, &v.params.gamma)?;
            coincides(&v, ComponentId::B, ComponentId::R)?;
            identity(&v, "W_{2n+1} = γ")?;
            if case == CaseId::II {
                identity(&v, "P is co-recursive")?;
            }
        }
    }
    Ok(format!(
        "{TUPLES} tuples each for II and II-α₂0, deg b_n = n-1 with leading γ, B̄ = R"
    ))
}

fn corecursive() -> Outcome {
    for case in [CaseId::CoI, CaseId::CoII] {
        for v in verdicts(case)? {
            for c in [
                ComponentId::P,
                ComponentId::R,
                ComponentId::A,
                ComponentId::B,
                ComponentId::R1,
                ComponentId::A1,
            ] {
                strict(&v, c)?;
            }
            coincides(&v, ComponentId::A, ComponentId::R)?;
            coincides(&v, ComponentId::A1, ComponentId::R1)?;
            if case == CaseId::CoII {
                let p = &v.params;
                let lead = &p.gamma - &p.alpha1 * (&p.a + &p.p + &p.beta);
                leading_constant(&v, ComponentId::B, 1, &lead)?;
                coincides(&v, ComponentId::B, ComponentId::R)?;
            }
            identity(&v, "A coincides with R")?;
        }
    }
    Ok(format!("{TUPLES} tuples each for co-I and co-II, A = R, A[1] = R[1]"))
}

fn perturbations() -> Outcome {
    for case in [CaseId::Pert2I, CaseId::Pert2ITauA, CaseId::Pert2II] {
        for v in verdicts(case)? {
            // For τ = a, B carries only the degree and leading claim.
            for c in [ComponentId::P, ComponentId::R, ComponentId::A, ComponentId::B] {
                strict(&v, c)?;
            }
        }
    }
    Ok(format!(
        "{TUPLES} tuples each for pert2-I, pert2-I-τa, pert2-II, eight displays and leading coefficients"
    ))
}

fn section_six() -> Outcome {
    let mut count = 0;
    for case in [CaseId::I, CaseId::IAlpha2Zero, CaseId::II, CaseId::IIAlpha2Zero] {
        for v in verdicts(case)? {
            identity(&v, "third-order")?;
            check(closing_identity_holds(&v.params), || "closing identity".into())?;
            let sc = family_main(&v.params)
                .and_then(|s| s.table(2 * NMAX + 3))
                .map_err(|e| e.to_string())?;
            for (label, n, value) in vanishing_coefficients(&sc, &v.params.p) {
                check(value.is_zero(), || format!("{label} = {value} at n = {n}"))?;
            }
            count += 1;
        }
    }
    let mut rng = rng_from_seed(SEED + 1);
    for k in 0..30 {
        let sc = random_banded_spec(&mut rng, 2, 2 * NMAX + 4)
            .table(2 * NMAX + 2)
            .map_err(|e| e.to_string())?;
        let c = decompose(&sc, &random_map(&mut rng), NMAX + 1).map_err(|e| e.to_string())?;
        for r in mixed_relation_residuals(&sc, &c).into_iter().filter(|r| r.n >= 1) {
            check(r.residual.is_zero(), || {
                format!("{:?} at n = {} for spec {k}", r.relation, r.n)
            })?;
        }
    }
    Ok(format!("third-order recurrences, vanishing expressions and closing identity at {count} tuples; mixed relations on 30 random specs"))
}

fn non_diagonality() -> Outcome {
    let mut rng = rng_from_seed(SEED + 2);
    for k in 0..50 {
        let sc = random_banded_spec(&mut rng, 2, 18)
            .table(16)
            .map_err(|e| e.to_string())?;
        let c = decompose(&sc, &random_map(&mut rng), 8).map_err(|e| e.to_string())?;
        check(c.a_prev.iter().chain(&c.b).any(|f| !f.is_zero()), || {
            format!("spec {k} has a diagonal decomposition")
        })?;
    }
    Ok("50 random 2-orthogonal specs, nmax = 8".into())
}

fn base_non_classical() -> Outcome {
    for case in [CaseId::I, CaseId::II] {
        for params in sample_many(case, SEED, TUPLES).map_err(|e| e.to_string())? {
            let spec = family_main(&params).map_err(|e| e.to_string())?;
            let w = generate_mps(&spec, NMAX + 5).map_err(|e| e.to_string())?;
            let h = hahn_from_polys(&w, NMAX).map_err(|e| e.to_string())?;
            check(h.base.detected_d == Some(2), || {
                "base family is not 2-orthogonal".into()
            })?;
            check(h.derivative.rejects_all_with_band_witnesses(), || {
                format!("W[1] not rejected at {params:?}")
            })?;
            for wit in &h.derivative.witnesses {
                check(h.derivative.sc.chi(wit.n, wit.nu) == &wit.value, || {
                    "witness does not match its entry".into()
                })?;
            }
        }
    }
    Ok(format!(
        "{} tuples, W[1] rejected for d ≤ {NMAX} with nonzero witnesses",
        2 * TUPLES
    ))
}

fn mps_properties() -> Outcome {
    let mut rng = rng_from_seed(SEED + 3);
    for k in 0..100 {
        let spec = random_spec(&mut rng, 12);
        let w = generate_mps(&spec, 11).map_err(|e| e.to_string())?;
        check(
            w.iter().enumerate().all(|(n, f)| f.degree() == Some(n) && f.is_monic()),
            || format!("spec {k} not monic"),
        )?;
        let sc = extract_sc(&w).map_err(|e| e.to_string())?;
        check(sc == spec.table(10).map_err(|e| e.to_string())?, || {
            format!("spec {k} round trip")
        })?;
        let deriv = derivative_sequence(&w, &sc).map_err(|e| e.to_string())?;
        let direct: Vec<Poly> = w[1..]
            .iter()
            .enumerate()
            .map(|(n, f)| f.derivative().scale(&Rational::from(n + 1).recip().expect("nonzero")))
            .collect();
        check(deriv == direct, || format!("spec {k} derivative oracle"))?;
    }
    Ok("100 random specs, round trip and derivative oracle".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("oracle equivalence", oracle_equivalence),
        ("case I tables", case_one),
        ("case I with alpha2 = 0", case_one_alpha2_zero),
        ("case II", case_two),
        ("co-recursive cases", corecursive),
        ("order-two perturbations", perturbations),
        ("third-order and mixed relations", section_six),
        ("non-diagonality", non_diagonality),
        ("base family is not classical", base_non_classical),
        ("mps round trip and derivative", mps_properties),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {:>2} [{name}] tolerance 0: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} [{name}] tolerance 0: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
