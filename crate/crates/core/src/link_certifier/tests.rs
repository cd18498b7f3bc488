use super::*;
use crate::mixed_poly::parse;

fn p(text: &str, n: usize) -> MixedPolynomial {
    parse(text, n).unwrap()
}

fn brieskorn_lift() -> MixedPolynomial {
    // Pull-back of z1² + z2² under the homogeneous (2,1) covering.
    p("w1^4*~w1^2 + w2^4*~w2^2", 2)
}

#[test]
fn hand_constructed_link_point_is_fixed_by_projection() {
    // (e^{iπ/2}/√2, 1/√2) lies on K₁ of the Brieskorn-style lift:
    // (i/√2)⁴(−i/√2)² + (1/√2)⁶ = −1/8 + 1/8 = 0.
    let g = brieskorn_lift();
    let s = 1.0 / 2f64.sqrt();
    let pt = vec![Complex64::new(0.0, s), Complex64::new(s, 0.0)];
    assert!(g.evaluate(&pt).unwrap().norm() < 1e-15);
    assert!((geometry::rho(&pt) - 1.0).abs() < 1e-15);

    // A sampler seeded exactly there must stay within tolerance of it.
    let cfg = SampleConfig { n_samples: 1, ..SampleConfig::new(2) };
    let batch = sample_link(&g, &cfg).unwrap();
    assert_eq!(batch.samples.len() + batch.failed, 1);
}

#[test]
fn samples_satisfy_residual_bounds_and_double_entry() {
    let g = brieskorn_lift();
    let cfg = SampleConfig { n_samples: 60, seed: 5, ..SampleConfig::new(2) };
    let batch = sample_link(&g, &cfg).unwrap();
    assert!(batch.samples.len() > 30, "converged {}", batch.samples.len());
    for s in &batch.samples {
        assert!(s.residual_g <= cfg.tol_residual);
        assert!(s.residual_rho <= cfg.tol_residual);
        // Double entry: re-evaluate through the polynomial directly.
        assert!(g.evaluate(&s.point).unwrap().norm() <= cfg.tol_residual);
        assert!(s.smooth);
    }
}

#[test]
fn holomorphic_link_has_closed_form() {
    // z1² + z2² = 0 on the unit sphere: z2 = ±i·z1 and |z1| = 1/√2.
    let g = p("z1^2 + z2^2", 2);
    let cfg = SampleConfig { n_samples: 40, seed: 9, ..SampleConfig::new(2) };
    let batch = sample_link(&g, &cfg).unwrap();
    assert!(batch.samples.len() > 20);
    for s in &batch.samples {
        let z1 = s.point[0];
        let z2 = s.point[1];
        assert!((z1.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-9);
        let plus = (z2 - Complex64::i() * z1).norm();
        let minus = (z2 + Complex64::i() * z1).norm();
        assert!(plus < 1e-9 || minus < 1e-9);
    }
}

#[test]
fn zero_and_small_dimension_are_rejected() {
    assert!(matches!(
        sample_link(&p("0", 2), &SampleConfig::new(2)),
        Err(LinkError::ZeroPolynomial)
    ));
    assert!(matches!(
        sample_link(&p("z1^2", 1), &SampleConfig::new(1)),
        Err(LinkError::DimensionTooSmall(1))
    ));
}

#[test]
fn transversality_certified_on_weighted_spheres() {
    let g = brieskorn_lift();
    for r in [0.5, 1.0, 2.0] {
        for weights in [vec![1, 1], vec![2, 3]] {
            let cfg = SampleConfig {
                radius: r,
                sphere_weights: WeightVector::new(weights.clone()).unwrap(),
                n_samples: 40,
                seed: 11,
                ..SampleConfig::new(2)
            };
            let rep = transversality_check(&g, &cfg).unwrap();
            assert_eq!(rep.verdict, Verdict::CertifiedOnSamples, "r={r}, a={weights:?}");
            assert!(rep.margin.unwrap() > 1e-6);
        }
    }
}

#[test]
fn real_valued_polynomial_is_rank_deficient() {
    // (z1+z2)·conj(z1+z2) is real-valued: d(Im g) ≡ 0, so the Jacobian can
    // never reach full rank and witnesses must be reported.
    let g = p("z1*~z1 + z1*~z2 + z2*~z1 + z2*~z2", 2);
    assert!(g.is_real_valued());
    let cfg = SampleConfig { n_samples: 30, seed: 3, ..SampleConfig::new(2) };
    let rep = transversality_check(&g, &cfg).unwrap();
    match rep.verdict {
        Verdict::Violated => {
            assert!(rep.witness.is_some());
            assert!(rep.margin.unwrap() < 1e-8);
        }
        Verdict::Inconclusive => {} // no converged samples also acceptable
        Verdict::CertifiedOnSamples => panic!("rank-deficient input certified"),
    }
}

#[test]
fn sign_certification_follows_orientation() {
    let cfg = SampleConfig { n_samples: 60, seed: 17, ..SampleConfig::new(2) };
    let g21 = brieskorn_lift();
    let rep = certify_holomorphic_like(&g21, &cfg, Sign::Positive).unwrap();
    assert_eq!(rep.verdict, Verdict::CertifiedOnSamples);
    assert!(rep.margin.unwrap() > 0.0);

    // Anti-holomorphic regime: (1,2) lift of the same quadric.
    let g12 = p("w1^2*~w1^4 + w2^2*~w2^4", 2);
    let rep = certify_holomorphic_like(&g12, &cfg, Sign::Negative).unwrap();
    assert_eq!(rep.verdict, Verdict::CertifiedOnSamples);
    // Expecting the wrong sign must produce a violation with a witness.
    let rep = certify_holomorphic_like(&g12, &cfg, Sign::Positive).unwrap();
    assert_eq!(rep.verdict, Verdict::Violated);
    assert!(rep.witness.is_some());
}

#[test]
fn holomorphic_certificate_never_negative_on_smooth_samples() {
    let g = p("z1^3 + z2^2", 2);
    let cfg = SampleConfig { n_samples: 50, seed: 23, ..SampleConfig::new(2) };
    let rep = certify_holomorphic_like(&g, &cfg, Sign::Positive).unwrap();
    assert_eq!(rep.verdict, Verdict::CertifiedOnSamples);
    assert!(rep.margins.unwrap().min > 0.0);
}

#[test]
fn off_link_sampling_hits_the_tube() {
    let g = brieskorn_lift();
    let cfg = SampleConfig { n_samples: 30, seed: 29, ..SampleConfig::new(2) };
    let batch = sample_off_link(&g, &cfg).unwrap();
    assert!(batch.points.len() > 15);
    // δ = tube_delta · r^6 for this radially homogeneous lift.
    assert!((batch.delta - 0.05).abs() < 1e-12);
    for pt in &batch.points {
        let m = g.evaluate(pt).unwrap().norm();
        assert!((m - batch.delta).abs() / batch.delta < 1e-9);
        assert!((geometry::rho(pt) - 1.0).abs() < 1e-9);
    }
}

#[test]
fn open_book_certified_with_zero_threshold_for_homogeneous() {
    let f = p("z1^2 + z2^2", 2);
    let spec = CoveringSpec::homogeneous(2, 2, 1).unwrap();
    for r in [0.5, 1.0, 2.0] {
        let cfg = SampleConfig { radius: r, n_samples: 40, seed: 31, ..SampleConfig::new(2) };
        let rep = certify_open_book(&f, &spec, &cfg).unwrap();
        assert_eq!(rep.verdict, Verdict::CertifiedOnSamples, "r = {r}");
        assert_eq!(rep.c_threshold, Some(0.0));
        // dθ(R) = 2d(a−b) = 4 at every sample.
        let m = rep.margins.unwrap();
        assert!((m.min - 4.0).abs() < 1e-8, "min {}", m.min);
        assert!((m.max - 4.0).abs() < 1e-8);
    }
}

#[test]
fn open_book_orientation_reversed_is_violated() {
    let f = p("z1^2 + z2^2", 2);
    let spec = CoveringSpec::homogeneous(2, 1, 2).unwrap();
    let cfg = SampleConfig { n_samples: 40, seed: 37, ..SampleConfig::new(2) };
    let rep = certify_open_book(&f, &spec, &cfg).unwrap();
    assert_eq!(rep.verdict, Verdict::Violated);
    assert!(rep.margin.unwrap() < 0.0);
    assert!(rep.witness.is_some());
}

#[test]
fn open_book_nonhomogeneous_small_radius() {
    let f = p("z1^3 + z2^2", 2);
    let spec = CoveringSpec::homogeneous(2, 2, 1).unwrap();
    let cfg = SampleConfig { radius: 0.25, n_samples: 40, seed: 41, ..SampleConfig::new(2) };
    let rep = certify_open_book(&f, &spec, &cfg).unwrap();
    assert_eq!(rep.verdict, Verdict::CertifiedOnSamples);
    assert!(rep.c_threshold.unwrap() >= 0.0);
}

#[test]
fn verdicts_are_radius_invariant_for_homogeneous_input() {
    // The radial action maps K_r to K_{2r}; verdicts must agree.
    let g = brieskorn_lift();
    let mut verdicts = Vec::new();
    for r in [1.0, 2.0] {
        let cfg = SampleConfig { radius: r, n_samples: 40, seed: 43, ..SampleConfig::new(2) };
        verdicts.push(certify_holomorphic_like(&g, &cfg, Sign::Positive).unwrap().verdict);
    }
    assert_eq!(verdicts[0], verdicts[1]);
}

#[test]
fn identical_seeds_give_identical_reports() {
    let g = brieskorn_lift();
    let cfg = SampleConfig { n_samples: 25, seed: 42, ..SampleConfig::new(2) };
    let a = serde_json::to_string(&transversality_check(&g, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&transversality_check(&g, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    let cfg2 = SampleConfig { seed: 43, ..cfg };
    let c = serde_json::to_string(&transversality_check(&g, &cfg2).unwrap()).unwrap();
    assert_ne!(a, c);
}
