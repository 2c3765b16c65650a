//! End-to-end runs of every inequality checker at the documented example
//! points: trivial equality cases, derived property runs, and the pinned
//! counterexample.

use pmm_core::checks::{
    check_ando_multilinear, check_cdj, check_cdj_at, check_choi_normal, check_fiedler_extension,
    check_info_monotonicity_karcher, check_info_monotonicity_power, check_kantorovich,
    check_mean_symmetrization, check_power_family, check_power_monotonicity,
    check_reverse_ando, check_reverse_cdj, check_reverse_mean_additivity,
    check_reverse_symmetrization, check_schwarz_multilinear, convexity_profile,
    convexity_profile_sampled, info_karcher_result, info_power_result, Direction,
    KantorovichVariant, SchwarzVariant,
};
use pmm_core::{
    ComplexMatrix, HermitianMatrix, Interval, MapDescriptor, MeanDescriptor, ScalarFunction,
    WeightVector,
};

fn iv(m: f64, max: f64) -> Interval {
    Interval::new(m, max).unwrap()
}

#[test]
fn cdj_square_on_hadamard_holds() {
    let map = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_cdj(
        &map,
        &ScalarFunction::power(2.0),
        Direction::Convex,
        iv(0.5, 2.0),
        500,
        42,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn cdj_counterexample_margin_is_minus_two() {
    // f(t) = t^2 - t on the Hadamard pair map at (2I, I): the Jensen
    // inequality fails with unscaled margin exactly -2.
    let map = MapDescriptor::hadamard(2, 3).unwrap();
    let two_i = HermitianMatrix::identity(3).scale(2.0);
    let res = check_cdj_at(
        &map,
        &ScalarFunction::square_minus_identity(),
        Direction::Convex,
        vec![two_i, HermitianMatrix::identity(3)],
        42,
        1e-8,
    )
    .unwrap();
    assert!(!res.holds);
    assert!((res.worst_margin_raw + 2.0).abs() < 1e-10);
}

#[test]
fn cdj_log_super_multiplicative_on_tensor() {
    // log(A (x) B) >= log A (x) log B for spectra in [1, e^2]
    let map = MapDescriptor::tensor(2, 2).unwrap();
    let res = check_cdj(
        &map,
        &ScalarFunction::log(),
        Direction::Concave,
        iv(1.0, (std::f64::consts::E).powi(2)),
        200,
        7,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn power_family_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    // r = 1: equality
    let res = check_power_family(&hadamard, 1.0, iv(0.5, 2.0), 50, 1, 1e-8).unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-10);
    // r = 2
    let res = check_power_family(&hadamard, 2.0, iv(0.5, 2.0), 300, 2, 1e-8).unwrap();
    assert!(res.holds);
    // r = -1 on tensor: Kronecker inverse identity gives margin ~ 0
    let tensor = MapDescriptor::tensor(2, 2).unwrap();
    let res = check_power_family(&tensor, -1.0, iv(0.5, 2.0), 100, 3, 1e-8).unwrap();
    assert!(res.holds);
    assert!(res.worst_margin.abs() < 1e-9, "tensor inverse is exact");
    // out of range r
    assert!(check_power_family(&hadamard, 2.5, iv(0.5, 2.0), 10, 4, 1e-8).is_err());
}

#[test]
fn power_monotonicity_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_power_monotonicity(&hadamard, 1.0, 2.0, iv(0.5, 2.0), 300, 5, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    let tensor = MapDescriptor::tensor(2, 2).unwrap();
    let res = check_power_monotonicity(&tensor, 0.5, 1.0, iv(0.5, 2.0), 300, 6, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // s = t: equality
    let res = check_power_monotonicity(&hadamard, 2.0, 2.0, iv(0.5, 2.0), 20, 7, 1e-8).unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-9);
    // hypothesis violation is a named error
    assert!(check_power_monotonicity(&hadamard, 0.25, 0.5, iv(0.5, 2.0), 10, 8, 1e-8).is_err());
}

#[test]
fn ando_multilinear_examples() {
    // geometric mean on the Hadamard map (Ando's inequality analog)
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_ando_multilinear(
        &hadamard,
        &MeanDescriptor::geometric(),
        iv(0.5, 2.0),
        500,
        9,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // tensor with #_alpha: Kronecker multiplicativity makes it exact
    let tensor = MapDescriptor::tensor(2, 2).unwrap();
    let res = check_ando_multilinear(
        &tensor,
        &MeanDescriptor::geometric_weighted(0.25),
        iv(0.5, 2.0),
        100,
        10,
        1e-8,
    )
    .unwrap();
    assert!(res.holds);
    assert!(res.worst_margin.abs() < 1e-9, "tensor case is an identity");
    // arithmetic mean is not tagged super-multiplicative: precondition error
    assert!(check_ando_multilinear(
        &hadamard,
        &MeanDescriptor::arithmetic(),
        iv(0.5, 2.0),
        10,
        11,
        1e-8
    )
    .is_err());
}

#[test]
fn mean_symmetrization_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_mean_symmetrization(
        &hadamard,
        &MeanDescriptor::geometric(),
        iv(0.5, 2.0),
        500,
        12,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // alpha = 0: both sides coincide
    let res = check_mean_symmetrization(
        &hadamard,
        &MeanDescriptor::geometric_weighted(0.0),
        iv(0.5, 2.0),
        50,
        13,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-9);
}

#[test]
fn fiedler_extension_examples() {
    let hadamard = MapDescriptor::hadamard(2, 2).unwrap();
    // lambda = 0: equality
    let res =
        check_fiedler_extension(&hadamard, 2.0, -1.0, 0.0, iv(0.5, 2.0), 50, 14, 1e-8).unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-10);
    // the Fiedler corollary data (alpha, beta, lambda) = (1, -1, 1/2)
    let tensor = MapDescriptor::tensor(2, 2).unwrap();
    let res =
        check_fiedler_extension(&tensor, 1.0, -1.0, 0.5, iv(0.5, 2.0), 300, 15, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    let res =
        check_fiedler_extension(&hadamard, 1.0, -1.0, 0.5, iv(0.5, 2.0), 300, 16, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn fiedler_inequality_hadamard_with_inverse() {
    // A o A^{-1} >= I for random positive A, through the lambda = 1/2 case
    // evaluated directly: Phi(A, A^{-1}) + Phi(A^{-1}, A) >= 2I.
    use pmm_core::eig::inverse_pos;
    use pmm_core::random::{random_positive, RngStream};
    let mut rng = RngStream::from_seed(17);
    for _ in 0..50 {
        let a = random_positive(3, iv(0.5, 2.0), &mut rng);
        let a_inv = inverse_pos(&a).unwrap();
        let had = a.matrix().hadamard_product(a_inv.matrix()).unwrap();
        let m = HermitianMatrix::symmetrize(&had);
        assert!(pmm_core::loewner_leq(&HermitianMatrix::identity(3), &m, 1e-8).unwrap());
    }
}

#[test]
fn choi_normal_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_choi_normal(&hadamard, iv(0.5, 1.5), 300, 18, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    let tensor = MapDescriptor::tensor(2, 2).unwrap();
    let res = check_choi_normal(&tensor, iv(0.5, 1.5), 200, 19, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn schwarz_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    for (variant, seed) in [(SchwarzVariant::Hermitian, 20), (SchwarzVariant::General, 21)] {
        let res =
            check_schwarz_multilinear(&hadamard, variant, iv(0.5, 2.0), 300, seed, 1e-8).unwrap();
        assert!(res.holds, "{variant:?} worst margin {}", res.worst_margin);
    }
}

#[test]
fn schwarz_linear_case_cross_check() {
    // k = 1 reduces to the linear inequality
    // Phi(H) Phi(A)^{-1} Phi(H) <= Phi(H A^{-1} H). Run the checker on a
    // k = 1 compression map and cross-check its margin against a direct
    // hand-rolled evaluation of V* X V on the same inputs.
    use pmm_core::checks::WitnessPayload;
    use pmm_core::eig::{inverse_pos, psd_margin};
    use pmm_core::multilinear::choi_compression;
    use pmm_core::random::{haar_unitary, random_hermitian, random_positive, RngStream};

    let mut seed_rng = RngStream::from_seed(22);
    let u = haar_unitary(3, &mut seed_rng);
    let p = 2;
    let map = MapDescriptor::linear_composed(1, 3, choi_compression(&u, p), p).unwrap();
    let res =
        check_schwarz_multilinear(&map, SchwarzVariant::Hermitian, iv(0.5, 2.0), 100, 22, 1e-8)
            .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);

    // direct oracle for the same map: Phi(X) = V* X V with V the first p
    // columns of u
    let compress = |x: &ComplexMatrix| -> HermitianMatrix {
        let mut m = ComplexMatrix::zeros(p);
        for r in 0..p {
            for c in 0..p {
                let mut acc = num_complex::Complex64::new(0.0, 0.0);
                for i in 0..3 {
                    for j in 0..3 {
                        acc += u.get(i, r).conj() * x.get(i, j) * u.get(j, c);
                    }
                }
                m.set(r, c, acc);
            }
        }
        HermitianMatrix::symmetrize(&m)
    };
    let mut rng = RngStream::from_seed(1022);
    for _ in 0..50 {
        let a = random_positive(3, iv(0.5, 2.0), &mut rng);
        let h = random_hermitian(3, &mut rng);
        let a_inv = inverse_pos(&a).unwrap();
        let phi_a_inv = inverse_pos(&compress(a.matrix())).unwrap();
        let phi_h = compress(h.matrix());
        let lhs = HermitianMatrix::symmetrize(
            &phi_h
                .matrix()
                .matmul(phi_a_inv.matrix())
                .unwrap()
                .matmul(phi_h.matrix())
                .unwrap(),
        );
        let sandwich = h
            .matrix()
            .matmul(a_inv.matrix())
            .unwrap()
            .matmul(h.matrix())
            .unwrap();
        let rhs = compress(&sandwich);
        let direct_margin = psd_margin(&rhs.sub(&lhs)).unwrap();
        assert!(direct_margin > -1e-10, "direct oracle violated: {direct_margin}");

        // checker payload margin on the same inputs matches the oracle
        let payload = WitnessPayload::SchwarzHermitian {
            map: map.clone(),
            a: vec![a.clone()],
            h: vec![h.clone()],
        };
        let m = payload.evaluate_margin().unwrap();
        assert!((m.raw - direct_margin).abs() < 1e-10);
    }
}

#[test]
fn kantorovich_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    for (variant, seed) in [
        (KantorovichVariant::Congruence, 23),
        (KantorovichVariant::ScalarWeights, 24),
        (KantorovichVariant::RankOne, 25),
    ] {
        let res =
            check_kantorovich(&hadamard, variant, 2, iv(1.0, 2.0), 300, seed, 1e-8).unwrap();
        assert!(res.holds, "{variant:?} worst margin {}", res.worst_margin);
    }
}

#[test]
fn kantorovich_rank_one_scalar_example() {
    // A = B = diag(1, 2), x = (1, 1)/sqrt(2), m = 1, M = 2:
    // LHS = 2.25 <= 2.5 = (m^2 + M^2)/(mM)
    use pmm_core::checks::WitnessPayload;
    use pmm_core::checks::run_fixed;
    let payload = WitnessPayload::Kantorovich {
        map: MapDescriptor::rank_one(2).unwrap(),
        interval: iv(1.0, 2.0),
        inputs: pmm_core::checks::KantorovichInputs::RankOne {
            a: HermitianMatrix::diag(&[1.0, 2.0]),
            b: HermitianMatrix::diag(&[1.0, 2.0]),
            x: vec![
                [1.0 / 2f64.sqrt(), 0.0],
                [1.0 / 2f64.sqrt(), 0.0],
            ],
        },
    };
    let res = run_fixed("kantorovich-rank-one", payload, 0, 1e-8).unwrap();
    assert!(res.holds);
    // margin raw = 2.5 - 2.25 = 0.25
    assert!((res.worst_margin_raw - 0.25).abs() < 1e-12);
}

#[test]
fn convexity_profile_examples() {
    // A = B = I: profile is constant, margins ~ 0
    let hadamard = MapDescriptor::hadamard(2, 2).unwrap();
    let i2 = HermitianMatrix::identity(2);
    let x = ComplexMatrix::identity(2);
    let res = convexity_profile(
        &hadamard,
        &i2,
        &i2,
        &x,
        &x,
        &[-1.0, -0.5, 0.0, 0.5, 1.0],
        0,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-10);

    // trace map on A = diag(1,4), B = diag(4,1): the normalized-trace pair
    // profile g(u) = (1/q)[Tr(A^u B^{1-u}) + Tr(A^{1-u} B^u)] has
    // g(1/2) = 4 and g(0) = g(1) = 5; realized through the centered profile
    // with square roots: f(t) = g((1+t)/2).
    let trace_pair = MapDescriptor::normalized_trace_pair(2).unwrap();
    let a = HermitianMatrix::diag(&[1.0, 4.0]);
    let b = HermitianMatrix::diag(&[4.0, 1.0]);
    let a_half = pmm_core::eig::sqrt_psd(&a).unwrap();
    let b_half = pmm_core::eig::sqrt_psd(&b).unwrap();
    let res = convexity_profile(
        &trace_pair,
        &a_half,
        &b_half,
        &ComplexMatrix::identity(2),
        &ComplexMatrix::identity(2),
        &[-1.0, -0.5, 0.0, 0.5, 1.0],
        0,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // f(0) = g(1/2) = 2 Tr(A^{1/2} B^{1/2}) / q = (2 * 4) / 2 = 4 and
    // f(1) = g(1) = (Tr A + Tr B) / q = 5: minimum at the center.
    let profile_at = |t: f64| {
        let term = |p: f64, q: f64| {
            let ap = pmm_core::eig::power_pos(&a_half, p).unwrap();
            let bq = pmm_core::eig::power_pos(&b_half, q).unwrap();
            trace_pair
                .evaluate(&[ap.matrix().clone(), bq.matrix().clone()])
                .unwrap()
                .get(0, 0)
                .re
        };
        term(1.0 + t, 1.0 - t) + term(1.0 - t, 1.0 + t)
    };
    assert!((profile_at(0.0) - 4.0).abs() < 1e-10);
    assert!((profile_at(1.0) - 5.0).abs() < 1e-10);

    // random-input sampled profile on the Hadamard map
    let res =
        convexity_profile_sampled(&hadamard, iv(0.5, 2.0), &[-1.0, -0.5, 0.0, 0.5, 1.0], 100, 26, 1e-8)
            .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn reverse_cdj_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    // identity function: alpha = 1 and the margin is exactly zero
    let res = check_reverse_cdj(
        &hadamard,
        &ScalarFunction::identity(),
        Direction::Convex,
        iv(1.0, 2.0),
        50,
        27,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-10);
    // r = 2 with K(1, 4, 2) = 25/16
    let res = check_reverse_cdj(
        &hadamard,
        &ScalarFunction::power(2.0),
        Direction::Convex,
        iv(1.0, 2.0),
        500,
        28,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // r = -1 on tensor: strict slack (Kronecker equality case)
    let tensor = MapDescriptor::tensor(2, 2).unwrap();
    let res = check_reverse_cdj(
        &tensor,
        &ScalarFunction::power(-1.0),
        Direction::Convex,
        iv(1.0, 2.0),
        200,
        29,
        1e-8,
    )
    .unwrap();
    assert!(res.holds);
    assert!(res.worst_margin > 1e-3, "bound has strict slack on tensor");
    // concave direction with sqrt
    let res = check_reverse_cdj(
        &hadamard,
        &ScalarFunction::sqrt(),
        Direction::Concave,
        iv(1.0, 2.0),
        300,
        30,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn reverse_ando_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_reverse_ando(
        &hadamard,
        &MeanDescriptor::geometric(),
        iv(1.0, 2.0),
        300,
        31,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // B = A is covered by random draws; the degenerate interval gives
    // beta = 1 and scalar equality
    let res = check_reverse_ando(
        &hadamard,
        &MeanDescriptor::geometric(),
        iv(1.5, 1.5),
        20,
        32,
        1e-8,
    )
    .unwrap();
    assert!(res.holds);
}

#[test]
fn reverse_mean_additivity_examples() {
    let res = check_reverse_mean_additivity(
        &MeanDescriptor::geometric(),
        3,
        iv(1.0, 4.0),
        300,
        33,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // degenerate interval: subadditivity equality for scalar matrices
    let res = check_reverse_mean_additivity(
        &MeanDescriptor::geometric(),
        2,
        iv(2.0, 2.0),
        20,
        34,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-9);
}

#[test]
fn reverse_mean_additivity_constant_is_tight_at_scalar_witness() {
    // the scalar witness (a, b, c, d) = (m, M, M, m) attains the constant
    // beta(m/M, M/m, sqrt) = 2 sqrt(mM)/(m+M) exactly: margin ~ 0
    use pmm_core::checks::{run_fixed, WitnessPayload};
    let payload = WitnessPayload::ReverseMeanAdditivity {
        mean: MeanDescriptor::geometric(),
        interval: iv(1.0, 4.0),
        a: HermitianMatrix::diag(&[1.0]),
        b: HermitianMatrix::diag(&[4.0]),
        c: HermitianMatrix::diag(&[4.0]),
        d: HermitianMatrix::diag(&[1.0]),
    };
    let res = run_fixed("reverse-mean-additivity", payload, 0, 1e-8).unwrap();
    assert!(res.holds);
    assert!(res.worst_margin.abs() < 1e-9, "witness attains the bound");
}

#[test]
fn reverse_symmetrization_examples() {
    let hadamard = MapDescriptor::hadamard(2, 3).unwrap();
    let res = check_reverse_symmetrization(
        &hadamard,
        &MeanDescriptor::geometric(),
        iv(1.0, 2.0),
        300,
        35,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
    // m = M: both sides equal with beta = 1
    let res = check_reverse_symmetrization(
        &hadamard,
        &MeanDescriptor::geometric(),
        iv(1.5, 1.5),
        20,
        36,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-9);
}

#[test]
fn info_power_examples() {
    let hadamard = MapDescriptor::hadamard(2, 2).unwrap();
    // point-mass weights at t = 1: both sides equal
    let w = WeightVector::new(vec![1.0, 0.0]).unwrap();
    let mut rng = pmm_core::RngStream::from_seed(37);
    let tuples: Vec<Vec<HermitianMatrix>> = (0..2)
        .map(|_| {
            (0..2)
                .map(|_| pmm_core::random::random_positive(2, iv(1.0, 2.0), &mut rng))
                .collect()
        })
        .collect();
    let res = info_power_result(
        &hadamard,
        1.0,
        iv(1.0, 2.0),
        vec![w.clone(), w],
        tuples.clone(),
        0,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-9);
    // constant tuples: idempotency makes both sides equal
    let a = pmm_core::random::random_positive(2, iv(1.0, 2.0), &mut rng);
    let b = pmm_core::random::random_positive(2, iv(1.0, 2.0), &mut rng);
    let const_tuples = vec![vec![a.clone(), a.clone()], vec![b.clone(), b.clone()]];
    let res = info_power_result(
        &hadamard,
        0.5,
        iv(1.0, 2.0),
        vec![WeightVector::uniform(2), WeightVector::uniform(2)],
        const_tuples,
        0,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-8);
    // sampled runs at positive and negative t
    for (t, seed) in [(0.5, 38), (1.0, 39), (-0.5, 40), (-1.0, 41)] {
        let res =
            check_info_monotonicity_power(&hadamard, t, 2, iv(1.0, 2.0), 100, seed, 1e-8).unwrap();
        assert!(res.holds, "t = {t}: worst margin {}", res.worst_margin);
    }
}

#[test]
fn info_karcher_examples() {
    let hadamard = MapDescriptor::hadamard(2, 2).unwrap();
    let mut rng = pmm_core::RngStream::from_seed(42);
    // constant tuples: all three expressions coincide
    let a = pmm_core::random::random_positive(2, iv(1.0, 2.0), &mut rng);
    let b = pmm_core::random::random_positive(2, iv(1.0, 2.0), &mut rng);
    let res = info_karcher_result(
        &hadamard,
        iv(1.0, 2.0),
        vec![WeightVector::uniform(2), WeightVector::uniform(2)],
        vec![vec![a.clone(), a.clone()], vec![b.clone(), b.clone()]],
        0,
        1e-8,
    )
    .unwrap();
    assert!(res.holds && res.worst_margin.abs() < 1e-8);

    // commuting diagonal tuples against the scalar reduction
    let tuples = vec![
        vec![HermitianMatrix::diag(&[1.0, 2.0]), HermitianMatrix::diag(&[2.0, 1.0])],
        vec![HermitianMatrix::diag(&[1.5, 1.0]), HermitianMatrix::diag(&[1.0, 1.5])],
    ];
    let res = info_karcher_result(
        &hadamard,
        iv(1.0, 2.0),
        vec![WeightVector::uniform(2), WeightVector::uniform(2)],
        tuples,
        0,
        1e-8,
    )
    .unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);

    let res = check_info_monotonicity_karcher(&hadamard, 2, iv(1.0, 2.0), 100, 43, 1e-8).unwrap();
    assert!(res.holds, "worst margin {}", res.worst_margin);
}

#[test]
fn checkers_are_deterministic() {
    let map = MapDescriptor::hadamard(2, 3).unwrap();
    let run = || {
        check_cdj(
            &map,
            &ScalarFunction::power(2.0),
            Direction::Convex,
            iv(0.5, 2.0),
            50,
            1234,
            1e-8,
        )
        .unwrap()
    };
    let r1 = serde_json::to_string(&run()).unwrap();
    let r2 = serde_json::to_string(&run()).unwrap();
    assert_eq!(r1, r2);
}

#[test]
fn witness_replays_to_reported_margin() {
    let map = MapDescriptor::hadamard(2, 3).unwrap();
    let checks: Vec<pmm_core::checks::CheckResult> = vec![
        check_cdj(&map, &ScalarFunction::power(2.0), Direction::Convex, iv(0.5, 2.0), 100, 99, 1e-8)
            .unwrap(),
        check_reverse_cdj(
            &map,
            &ScalarFunction::power(-1.0),
            Direction::Convex,
            iv(1.0, 2.0),
            100,
            98,
            1e-8,
        )
        .unwrap(),
        check_kantorovich(&map, KantorovichVariant::Congruence, 2, iv(1.0, 2.0), 100, 97, 1e-8)
            .unwrap(),
        check_info_monotonicity_power(
            &MapDescriptor::hadamard(2, 2).unwrap(),
            -0.5,
            2,
            iv(1.0, 2.0),
            20,
            96,
            1e-8,
        )
        .unwrap(),
    ];
    for res in checks {
        // replay from the in-memory witness
        let replayed = res.witness.replay().unwrap();
        assert!(
            (replayed.scaled() - res.worst_margin).abs() <= 1e-12,
            "{}: {} vs {}",
            res.name,
            replayed.scaled(),
            res.worst_margin
        );
        // and through a JSON round trip
        let json = serde_json::to_string(&res.witness).unwrap();
        let witness: pmm_core::checks::Witness = serde_json::from_str(&json).unwrap();
        let replayed = witness.replay().unwrap();
        assert!(
            (replayed.scaled() - res.worst_margin).abs() <= 1e-12,
            "{} after round trip: {} vs {}",
            res.name,
            replayed.scaled(),
            res.worst_margin
        );
    }
}
