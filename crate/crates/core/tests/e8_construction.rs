use harmonic_codes::codes::{
    certify, certify_with, design_strength, gram_from_embedded, max_coherence, GramView,
    QuadraticBound,
};
use harmonic_codes::embedding::{build_code, Sign};
use harmonic_codes::harmonics::gegenbauer;
use harmonic_codes::lattice::{generate_e8_roots, spectrum};
use harmonic_codes::{rat, ExactEmbeddedCode, Rational};
use num_traits::{One, Signed, Zero};

fn r(n: i64, d: i64) -> Rational {
    rat(n, d).unwrap()
}

fn e8_code() -> ExactEmbeddedCode {
    build_code(&generate_e8_roots()).unwrap()
}

#[test]
fn gram_split_between_signs() {
    // Each of the 120 representatives sees 56 pairs {y, -y} at |(x,y)| = 1/2
    // and 63 orthogonal pairs. A source pair appears under four sign patterns,
    // two of each product sign, so +1/7 and -1/7 each occur
    // 2 * 120 * (56 + 63) = 28560 times.
    let oracle_each = 2 * 120 * (56 + 63);
    let code = e8_code();
    let g = gram_from_embedded(&code);
    let (mut plus, mut minus, mut antipodal) = (0, 0, 0);
    for i in 0..g.len() {
        for j in 0..g.len() {
            if i == j {
                continue;
            }
            let v = g.get(i, j);
            if *v == r(1, 7) {
                plus += 1;
            } else if *v == r(-1, 7) {
                minus += 1;
            } else if *v == -Rational::one() {
                antipodal += 1;
            } else {
                panic!("unexpected gram value {v}");
            }
        }
    }
    assert_eq!(plus, oracle_each);
    assert_eq!(minus, oracle_each);
    assert_eq!(plus + minus, 240 * 238);
    assert_eq!(antipodal, 240);
}

#[test]
fn layout_and_pairing() {
    let code = e8_code();
    for (i, p) in code.points().iter().enumerate() {
        let expected = if i < 120 { Sign::Plus } else { Sign::Minus };
        assert_eq!(p.sign, expected);
        assert_eq!(p.matrix.trace(), Rational::zero());
        assert_eq!(code.antipode_of(i), Some((i + 120) % 240));
    }
    let g = gram_from_embedded(&code);
    let pairs = g.antipode().unwrap();
    for i in 0..240 {
        assert_eq!(pairs[pairs[i]], i);
        assert_eq!(*g.get(i, pairs[i]), -Rational::one());
    }
}

#[test]
fn report_for_e8() {
    let report = certify(&e8_code()).unwrap();
    assert_eq!(report.ambient_dim, 35);
    assert_eq!(report.n_points, 240);
    assert_eq!(report.coherence_a, r(1, 7));
    assert_eq!(report.lower_bound_a, QuadraticBound::Exact(r(1, 7)));
    assert_eq!(report.frame_sum, r(11520, 7));
    assert_eq!(report.frame_bound, r(57600, 35));
    assert!(report.optimal_antipodal);
    // an antipodal 5-design in R^35 would need far more than 240 points
    assert_eq!(report.design_strength, 3);
    assert_eq!(report.spectrum.count(&r(-1, 1)), 240);
    assert_eq!(report.spectrum.count(&r(1, 7)), 28560);
    assert_eq!(report.spectrum.count(&r(-1, 7)), 28560);
    assert_eq!(report.spectrum.total(), 240 * 239);

    let again = certify(&e8_code()).unwrap();
    assert_eq!(report.to_string(), again.to_string());
    assert_eq!(report.to_json(), again.to_json());
}

#[test]
fn moment_sums() {
    let g = gram_from_embedded(&e8_code());
    let d = design_strength(&g, 34, 6).unwrap();
    assert_eq!(d.residuals[0], Rational::zero());
    assert_eq!(d.residuals[1], Rational::zero());
    assert_eq!(d.residuals[2], Rational::zero());
    assert!(!d.residuals[3].is_zero());
    assert_eq!(d.residuals[4], Rational::zero());
    assert_eq!(d.strength, 3);

    // k = 2 by hand: 480 g(1) + 57120 g(1/7) with g(t) = (35 t^2 - 1) / 34
    let g2 = gegenbauer::<Rational>(34, 2).unwrap();
    assert_eq!(g2.evaluate(&r(1, 7)), r(-1, 119));
    assert_eq!(
        r(480, 1) + r(57120, 1) * g2.evaluate(&r(1, 7)),
        Rational::zero()
    );
}

#[test]
fn design_strength_ignores_point_order() {
    let g = gram_from_embedded(&e8_code());
    let n = g.len();
    // deterministic shuffle: multiply indices by a unit mod 240
    let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
    let rows: Vec<Vec<Rational>> = perm
        .iter()
        .map(|&i| perm.iter().map(|&j| g.get(i, j).clone()).collect())
        .collect();
    let shuffled = GramView::with_detected_antipodes(rows).unwrap();
    assert_eq!(
        design_strength(&shuffled, 34, 4).unwrap(),
        design_strength(&g, 34, 4).unwrap()
    );
    assert_eq!(max_coherence(&shuffled).unwrap(), r(1, 7));
}

#[test]
fn roots_before_and_after_embedding() {
    let roots = generate_e8_roots();
    let s = spectrum(&roots);
    assert_eq!(s.max_abs(), Some(r(1, 1)));
    let g = harmonic_codes::codes::gram_from_lattice(&roots);
    assert_eq!(max_coherence(&g).unwrap(), r(1, 2));

    let report = certify_with(&e8_code(), 3).unwrap();
    assert!(report.coherence_a < r(1, 2));
    assert!(report
        .spectrum
        .support()
        .all(|v| v.abs() == r(1, 7) || v.abs().is_one()));
}

#[test]
fn float_pipeline_agrees() {
    let roots = generate_e8_roots();
    let exact = e8_code();
    let float = build_code::<f64>(&roots).unwrap();
    let gf = gram_from_embedded(&float);
    assert!(gf.antipode().is_some());
    let c = max_coherence(&gf).unwrap();
    assert!((c - 1.0 / 7.0).abs() < 1e-12);
    for i in (0..240).step_by(7) {
        for j in 0..240 {
            let e: f64 = harmonic_codes::Scalar::to_f64(exact.gram(i, j));
            assert!((e - float.gram(i, j)).abs() < 1e-12);
        }
    }
}
