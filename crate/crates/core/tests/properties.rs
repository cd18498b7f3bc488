//! Property-based invariants of the exact layer and randomized analytic
//! identity checks (finite differences vs Wirtinger calculus, functional
//! equalities of detected weights).

use mixed_links::geometry;
use mixed_links::homogeneity::detect_weights;
use mixed_links::mixed_poly::{parse, ExponentVector, GaussianRational, MixedPolynomial, MixedTerm};
use mixed_links::random::{self, substream};
use mixed_links::rel_err;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

fn coeff_strategy() -> impl Strategy<Value = GaussianRational> {
    ((-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4)).prop_map(|((rn, rd), (im, id))| {
        GaussianRational::new(
            BigRational::new(rn.into(), rd.into()),
            BigRational::new(im.into(), id.into()),
        )
    })
}

fn poly_strategy() -> impl Strategy<Value = MixedPolynomial> {
    (1usize..=3).prop_flat_map(|n| {
        let term = (
            coeff_strategy(),
            proptest::collection::vec(0u32..=3, n),
            proptest::collection::vec(0u32..=3, n),
        )
            .prop_map(move |(c, nu, mu)| MixedTerm {
                coeff: c,
                nu: ExponentVector::new(nu),
                mu: ExponentVector::new(mu),
            });
        proptest::collection::vec(term, 0..6)
            .prop_map(move |terms| MixedPolynomial::from_terms(n, terms).unwrap())
    })
}

proptest! {
    #[test]
    fn conjugation_is_involutive(p in poly_strategy()) {
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn parts_are_real_and_reconstruct(p in poly_strategy()) {
        let re = p.real_part();
        let im = p.imag_part();
        prop_assert!(re.is_real_valued());
        prop_assert!(im.is_real_valued());
        let i = MixedPolynomial::constant(p.n(), GaussianRational::i());
        prop_assert_eq!(re.add(&im.mul(&i).unwrap()).unwrap(), p);
    }

    #[test]
    fn serialization_round_trips(p in poly_strategy()) {
        let text = p.to_input_syntax('z');
        prop_assert_eq!(parse(&text, p.n()).unwrap(), p.clone());
        let text = p.to_input_syntax('w');
        prop_assert_eq!(parse(&text, p.n()).unwrap(), p);
    }

    #[test]
    fn evaluation_commutes_with_conjugation(p in poly_strategy(), seed in 0u64..1000) {
        let mut rng = substream(seed, 0);
        let pt = random::random_point(p.n(), &mut rng);
        let lhs = p.conjugate().evaluate(&pt).unwrap();
        let rhs = p.evaluate(&pt).unwrap().conj();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }
}

/// Central finite difference of f along a real coordinate direction.
fn fd_partial(
    f: &MixedPolynomial,
    pt: &[Complex64],
    var: usize,
    imaginary: bool,
    h: f64,
) -> Complex64 {
    let mut plus = pt.to_vec();
    let mut minus = pt.to_vec();
    let step = if imaginary { Complex64::new(0.0, h) } else { Complex64::new(h, 0.0) };
    plus[var] += step;
    minus[var] -= step;
    (f.evaluate(&plus).unwrap() - f.evaluate(&minus).unwrap()) / (2.0 * h)
}

#[test]
fn wirtinger_derivatives_match_finite_differences() {
    // ∂/∂z = ½(∂/∂x − i∂/∂y), ∂/∂z̄ = ½(∂/∂x + i∂/∂y) at 50 random
    // configurations, relative error < 1e−6.
    let h = 1e-5;
    for trial in 0..50u64 {
        let mut rng = substream(0xD1FF, trial);
        let n = rng.gen_range(1..=3);
        let p = random::random_mixed_polynomial(n, 4, 3, &mut rng);
        let pt = random::random_point(n, &mut rng);
        let var = rng.gen_range(0..n);
        let fx = fd_partial(&p, &pt, var, false, h);
        let fy = fd_partial(&p, &pt, var, true, h);
        let i = Complex64::i();
        let fd_dz = 0.5 * (fx - i * fy);
        let fd_dzbar = 0.5 * (fx + i * fy);
        let dz = p.wirtinger_dz(var).unwrap().evaluate(&pt).unwrap();
        let dzbar = p.wirtinger_dzbar(var).unwrap().evaluate(&pt).unwrap();
        let scale = dz.norm().max(dzbar.norm()).max(1.0);
        assert!((fd_dz - dz).norm() / scale < 1e-6, "dz: {fd_dz} vs {dz}");
        assert!((fd_dzbar - dzbar).norm() / scale < 1e-6, "dzbar: {fd_dzbar} vs {dzbar}");
    }
}

#[test]
fn chain_rule_matches_finite_differences() {
    // d/dt h(z(t))|₀ = Re(v, ∇h(u)) for real-valued h along 50 random lines.
    let h_step = 1e-5;
    for trial in 0..50u64 {
        let mut rng = substream(0xC4A1, trial);
        let n = rng.gen_range(1..=3);
        let hpoly = random::random_mixed_polynomial(n, 4, 3, &mut rng).real_part();
        let u = random::random_point(n, &mut rng);
        let v = random::random_point(n, &mut rng);
        let line = |t: f64| -> Vec<Complex64> {
            u.iter().zip(&v).map(|(a, b)| a + t * b).collect()
        };
        let fd = (hpoly.evaluate(&line(h_step)).unwrap() - hpoly.evaluate(&line(-h_step)).unwrap())
            / (2.0 * h_step);
        assert!(fd.im.abs() < 1e-9 * (1.0 + fd.re.abs()), "real-valued h");
        let bundle = geometry::gradient_bundle(&hpoly, &u).unwrap();
        let grad = bundle.hermitian.expect("real-valued");
        let exact = geometry::hermitian(&v, &grad).re;
        let scale = exact.abs().max(1.0);
        assert!((fd.re - exact).abs() / scale < 1e-6, "{} vs {exact}", fd.re);
    }
}

#[test]
fn functional_equalities_of_detected_weights() {
    // f(r∘z) = r^{m_r} f(z) and f(e^{iη}∘z) = e^{i m_p η} f(z) at 100 random
    // (z, r, η) across generated homogeneous polynomials, rel err < 1e−9.
    let mut checked = 0usize;
    let mut trial = 0u64;
    while checked < 100 {
        trial += 1;
        let mut rng = substream(0xE01A, trial);
        let n = rng.gen_range(2..=4);
        let (p, _, _, _) = random::random_polar_homogeneous(n, &mut rng);
        let rep = detect_weights(&p).unwrap();
        let (Some(rad), Some(pol)) = (rep.radial, rep.polar) else { continue };
        for _ in 0..5 {
            let z = random::random_point(n, &mut rng);
            let r: f64 = 0.5 + rng.gen::<f64>() * 1.5;
            let eta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
            let base = p.evaluate(&z).unwrap();

            let scaled: Vec<Complex64> = z
                .iter()
                .zip(rad.weights.entries())
                .map(|(zj, &q)| zj * r.powi(q as i32))
                .collect();
            let lhs = p.evaluate(&scaled).unwrap();
            let rhs = r.powi(rad.degree as i32) * base;
            assert!(
                (lhs - rhs).norm() / rhs.norm().max(1e-30) < 1e-9,
                "radial action: {lhs} vs {rhs}"
            );

            let rotated: Vec<Complex64> = z
                .iter()
                .zip(pol.weights.entries())
                .map(|(zj, &q)| zj * Complex64::from_polar(1.0, f64::from(q) * eta))
                .collect();
            let lhs = p.evaluate(&rotated).unwrap();
            let rhs = Complex64::from_polar(1.0, pol.degree as f64 * eta) * base;
            assert!(
                (lhs - rhs).norm() / rhs.norm().max(1e-30) < 1e-9,
                "polar action: {lhs} vs {rhs}"
            );
            checked += 1;
        }
    }
}

#[test]
fn scaled_weights_scale_degree_and_detection_stays_primitive() {
    for trial in 0..10u64 {
        let mut rng = substream(0x5CA1E, trial);
        let n = rng.gen_range(2..=4);
        let (p, w, m_r, _) = random::random_polar_homogeneous(n, &mut rng);
        for t in p.terms() {
            let d1 = mixed_links::homogeneity::radial_degree(&t, &w).unwrap();
            let d3 = mixed_links::homogeneity::radial_degree(&t, &w.scaled(3)).unwrap();
            assert_eq!(d3, 3 * d1);
            assert_eq!(d1, m_r);
        }
        let rep = detect_weights(&p).unwrap();
        let rad = rep.radial.unwrap();
        assert_eq!(rad.weights.clone(), rad.weights.primitive());
    }
}

#[test]
fn pullback_preserves_face_type_on_corpus() {
    use mixed_links::covering::{pullback, CoveringSpec};
    use mixed_links::newton_boundary::{classify_face_type, OverallClass};
    let corpus = [
        ("z1^2 + z2^2", 2),
        ("z1^3 + z2^2", 2),
        ("z1^4 + z1*z2 + z2^4", 2),
        ("z1^2 + z2^2 + z3^2", 3),
    ];
    for (text, n) in corpus {
        let f = parse(text, n).unwrap();
        let before = classify_face_type(&f).unwrap();
        assert_eq!(before.overall, OverallClass::StronglyPolarPositive);
        for (a, b) in [(2u32, 1u32), (3, 1)] {
            let spec = CoveringSpec::homogeneous(n, a, b).unwrap();
            let g = pullback(&f, &spec).unwrap();
            let after = classify_face_type(&g).unwrap();
            assert_eq!(
                after.overall,
                OverallClass::StronglyPolarPositive,
                "{text} under ({a},{b})"
            );
        }
        // General (vector) coverings preserve at least polar positivity.
        let spec = CoveringSpec::new(vec![3; n], vec![1; n]).unwrap();
        let g = pullback(&f, &spec).unwrap();
        let after = classify_face_type(&g).unwrap();
        assert!(after.overall >= OverallClass::PolarPositive, "{text}");
    }
}

#[test]
fn rel_err_guard() {
    assert!(rel_err(0.0, 0.0) == 0.0);
    assert!(rel_err(1.0, 1.0 + 1e-12) < 1e-11);
}
