use proptest::prelude::*;
use quadorth::cases::{family_main, verify_case, CaseId};
use quadorth::mps::{
    derivative_sequence, extract_sc, generate_from_table, generate_mps, perturb, MpsSpec, PerturbationSpec,
};
use quadorth::ortho::{check_d_symmetric, detect_orthogonality_order};
use quadorth::quad::{
    check_reconstruction, decompose, decompose_oracle, mixed_relation_residuals, vanishing_coefficients, QuadMap,
};
use quadorth::sampling::{
    random_banded_spec, random_spec, rng_from_seed, sample_params, small_nonzero, small_rational,
};
use quadorth::{Poly, Rational};

fn random_map(seed: u64) -> QuadMap {
    let mut rng = rng_from_seed(seed ^ 0x9e37_79b9);
    QuadMap::new(
        small_rational(&mut rng),
        small_rational(&mut rng),
        small_rational(&mut rng),
    )
}

/// `(n+1)^{-1} W'_{n+1}` straight from the coefficients.
fn direct_derivative(polys: &[Poly]) -> Vec<Poly> {
    polys[1..]
        .iter()
        .enumerate()
        .map(|(n, w)| w.derivative().scale(&Rational::from(n + 1).recip().unwrap()))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn generate_then_extract_round_trips(seed in any::<u64>()) {
        let spec = random_spec(&mut rng_from_seed(seed), 10);
        let polys = generate_mps(&spec, 9).unwrap();
        for (n, w) in polys.iter().enumerate() {
            prop_assert_eq!(w.degree(), Some(n));
            prop_assert!(w.is_monic());
        }
        prop_assert_eq!(extract_sc(&polys).unwrap(), spec.table(8).unwrap());
    }

    #[test]
    fn derivative_sequence_matches_direct_derivative(seed in any::<u64>()) {
        let spec = random_spec(&mut rng_from_seed(seed), 10);
        let polys = generate_mps(&spec, 9).unwrap();
        let sc = extract_sc(&polys).unwrap();
        prop_assert_eq!(derivative_sequence(&polys, &sc).unwrap(), direct_derivative(&polys));
    }

    #[test]
    fn perturbation_is_local(seed in any::<u64>(), r in 0usize..4) {
        let mut rng = rng_from_seed(seed);
        let d = 1 + (seed % 3) as usize;
        let spec = random_banded_spec(&mut rng, d, 12);
        let mu: Vec<Rational> = (0..r).map(|_| small_nonzero(&mut rng)).collect();
        let lambda = (0..d).map(|_| (0..r).map(|_| small_nonzero(&mut rng)).collect()).collect();
        let pert = PerturbationSpec::new(small_rational(&mut rng), mu, lambda).unwrap();
        let before = spec.table(10).unwrap();
        let after = perturb(&spec, &pert).unwrap().table(10).unwrap();
        for n in r + 1..=10 {
            prop_assert_eq!(before.beta(n), after.beta(n));
        }
        // Band j, index i > r, sits at row i + j - 1 ≥ r + j.
        for n in 0..10 {
            for nu in 0..=n {
                let j = n - nu;
                if n >= r + j {
                    prop_assert_eq!(before.chi(n, nu), after.chi(n, nu));
                }
            }
        }
    }

    #[test]
    fn decomposition_matches_oracle(seed in any::<u64>()) {
        let spec = random_spec(&mut rng_from_seed(seed), 20);
        let sc = spec.table(16).unwrap();
        let map = random_map(seed);
        let fast = decompose(&sc, &map, 8).unwrap();
        let w = generate_from_table(&sc);
        prop_assert_eq!(&fast, &decompose_oracle(&w, &map).unwrap());
        prop_assert!(check_reconstruction(&fast, &w));
    }

    #[test]
    fn single_coefficient_change_breaks_reconstruction(seed in any::<u64>(), which in 0usize..4, n in 0usize..5) {
        let spec = random_spec(&mut rng_from_seed(seed), 14);
        let sc = spec.table(10).unwrap();
        let w = generate_from_table(&sc);
        let mut c = decompose(&sc, &random_map(seed), 5).unwrap();
        let bump = Poly::one();
        match which {
            0 => c.p[n] = &c.p[n] + &bump,
            1 => c.r[n] = &c.r[n] + &bump,
            2 => c.b[n] = &c.b[n] + &bump,
            _ => c.a_prev[n + 1] = &c.a_prev[n + 1] + &bump,
        }
        prop_assert!(!check_reconstruction(&c, &w));
    }

    #[test]
    fn two_orthogonal_decomposition_is_never_diagonal(seed in any::<u64>()) {
        let spec = random_banded_spec(&mut rng_from_seed(seed), 2, 20);
        let c = decompose(&spec.table(16).unwrap(), &random_map(seed), 8).unwrap();
        prop_assert!(c.a_prev.iter().chain(&c.b).any(|f| !f.is_zero()));
    }

    #[test]
    fn mixed_relations_hold_for_two_orthogonal_specs(seed in any::<u64>()) {
        let spec = random_banded_spec(&mut rng_from_seed(seed), 2, 24);
        let sc = spec.table(20).unwrap();
        let c = decompose(&sc, &random_map(seed), 10).unwrap();
        for r in mixed_relation_residuals(&sc, &c).into_iter().filter(|r| r.n >= 1) {
            prop_assert!(r.residual.is_zero(), "{:?} at n = {}", r.relation, r.n);
        }
    }

    #[test]
    fn banded_rules_are_detected_at_their_order(seed in any::<u64>()) {
        let d = 1 + (seed % 3) as usize;
        let spec = random_banded_spec(&mut rng_from_seed(seed), d, 12);
        let sc = extract_sc(&generate_mps(&spec, 11).unwrap()).unwrap();
        let report = detect_orthogonality_order(&sc, 6).unwrap();
        // The sampled upper bands may vanish, so a lower order can never
        // appear: every order below d is rejected by a stored nonzero entry.
        prop_assert_eq!(report.detected_d, Some(d));
        for w in &report.witnesses {
            prop_assert_eq!(sc.chi(w.n, w.nu), &w.value);
        }
    }

    #[test]
    fn symmetric_sequences_decompose_diagonally(seed in any::<u64>()) {
        // β = 0 and a nonzero lowest band give a symmetric 1-orthogonal sequence.
        let mut rng = rng_from_seed(seed);
        let band = quadorth::mps::CoefficientSeq::finite((0..20).map(|_| small_nonzero(&mut rng)).collect());
        let rule = quadorth::mps::BandedRule::new(quadorth::mps::CoefficientSeq::constant(Rational::zero()), vec![band]).unwrap();
        let sc = MpsSpec::from(rule).table(16).unwrap();
        let w = generate_from_table(&sc);
        prop_assert!(check_d_symmetric(&w, 1));
        let c = decompose(&sc, &QuadMap::new(Rational::zero(), Rational::zero(), Rational::zero()), 8).unwrap();
        prop_assert!(c.a_prev.iter().chain(&c.b).all(Poly::is_zero));
    }
}

/// The decomposition recurrences written out for χ confined to two bands,
/// a second derivation to compare the general engine against.
#[test]
fn banded_recurrences_agree_with_general_engine() {
    for seed in 0..30u64 {
        let spec = random_banded_spec(&mut rng_from_seed(seed), 2, 20);
        let sc = spec.table(16).unwrap();
        let map = random_map(seed);
        let c = decompose(&sc, &map, 8).unwrap();
        let (a, p) = (map.a(), map.p());
        let beta = |k: usize| sc.beta(k).clone();
        let alpha = |k: usize| sc.alpha(k as isize);
        let gamma = |k: usize| sc.gamma(k as isize);
        let x_minus = |f: &Poly| {
            let mut out = f.shift_up();
            out.add_scaled(f, &-map.omega_at_a());
            out
        };
        let at = |seq: &[Poly], n: isize| if n < 0 { Poly::zero() } else { seq[n as usize].clone() };
        for n in 0..8usize {
            let m = n as isize;
            let a_n = c.a(m).clone();
            let mut rhs = at(&c.b, m);
            rhs.add_scaled(c.a(m - 1), &-alpha(2 * n + 1));
            rhs.add_scaled(&c.r[n], &-(a + p + beta(2 * n + 1)));
            rhs.add_scaled(&at(&c.r, m - 1), &-gamma(2 * n));
            assert_eq!(a_n, rhs, "a_{n} at seed {seed}");

            let mut rhs = x_minus(&c.r[n]);
            rhs.add_scaled(&c.p[n], &-alpha(2 * n + 1));
            rhs.add_scaled(&c.b[n], &(a - beta(2 * n + 1)));
            rhs.add_scaled(&at(&c.b, m - 1), &-gamma(2 * n));
            assert_eq!(c.p[n + 1], rhs, "P_{} at seed {seed}", n + 1);

            let mut rhs = x_minus(&a_n);
            rhs.add_scaled(&c.b[n], &-alpha(2 * n + 2));
            rhs.add_scaled(&c.p[n + 1], &(a - beta(2 * n + 2)));
            rhs.add_scaled(&c.p[n], &-gamma(2 * n + 1));
            assert_eq!(c.b[n + 1], rhs, "b_{} at seed {seed}", n + 1);

            let mut rhs = c.p[n + 1].clone();
            rhs.add_scaled(&c.r[n], &-alpha(2 * n + 2));
            rhs.add_scaled(&a_n, &-(a + p + beta(2 * n + 2)));
            rhs.add_scaled(c.a(m - 1), &-gamma(2 * n + 1));
            assert_eq!(c.r[n + 1], rhs, "R_{} at seed {seed}", n + 1);
        }
    }
}

#[test]
fn base_family_coefficients_vanish() {
    let mut rng = rng_from_seed(5);
    for _ in 0..20 {
        let params = sample_params(CaseId::I, &mut rng).unwrap();
        let sc = family_main(&params).unwrap().table(25).unwrap();
        let values = vanishing_coefficients(&sc, &params.p);
        assert!(values.len() >= 6 * 10);
        for (label, n, v) in values {
            assert!(v.is_zero(), "{label} at n = {n}");
        }
    }
}

#[test]
fn third_order_recurrences_hold_for_base_family() {
    let mut rng = rng_from_seed(9);
    for case in [CaseId::I, CaseId::II] {
        for _ in 0..5 {
            let params = sample_params(case, &mut rng).unwrap();
            let v = verify_case(case, &params, 10, 10).unwrap();
            assert!(v.identity("third-order").unwrap().holds);
        }
    }
}
