use super::*;

fn p(text: &str, n: usize) -> MixedPolynomial {
    parse(text, n).unwrap()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn parse_single_mixed_monomial() {
    let q = p("z1^2*~z1", 1);
    assert_eq!(q.num_terms(), 1);
    let t = &q.terms()[0];
    assert_eq!(t.nu.entries(), &[2]);
    assert_eq!(t.mu.entries(), &[1]);
    assert_eq!(t.coeff, GaussianRational::one());
}

#[test]
fn parse_complex_coefficient() {
    let q = p("(1/2+1i)*z2", 2);
    let t = &q.terms()[0];
    assert_eq!(t.nu.entries(), &[0, 1]);
    assert_eq!(t.mu.entries(), &[0, 0]);
    assert_eq!(
        t.coeff,
        GaussianRational::new(BigRational::new(1.into(), 2.into()), BigRational::one())
    );
}

#[test]
fn parse_cancellation_gives_zero() {
    let q = p("z1*~z1 - z1*~z1", 1);
    assert!(q.is_zero());
    assert_eq!(q.num_terms(), 0);
}

#[test]
fn parse_zero_literal() {
    assert!(p("0", 2).is_zero());
}

#[test]
fn parse_w_and_z_are_interchangeable() {
    assert_eq!(p("w1^4*~w1^2", 2), p("z1^4*~z1^2", 2));
}

#[test]
fn parse_errors_carry_offsets() {
    let e = parse("z1^-2", 1).unwrap_err();
    assert!(e.message.contains("negative exponent"), "{e}");
    let e = parse("z3", 2).unwrap_err();
    assert!(e.message.contains("out of range"), "{e}");
    assert_eq!(e.offset, 1);
    let e = parse("z1 +", 1).unwrap_err();
    assert!(e.message.contains("expected factor"), "{e}");
    let e = parse("z1^0", 1).unwrap_err();
    assert!(e.message.contains("at least 1"), "{e}");
}

#[test]
fn wirtinger_dz_examples() {
    // z1² z̄1 → 2 z1 z̄1
    assert_eq!(p("z1^2*~z1", 1).wirtinger_dz(0).unwrap(), p("2*z1*~z1", 1));
    // z̄1³ → 0
    assert!(p("~z1^3", 1).wirtinger_dz(0).unwrap().is_zero());
    // z1² + z2², j=2 → 2 z2
    assert_eq!(p("z1^2+z2^2", 2).wirtinger_dz(1).unwrap(), p("2*z2", 2));
    assert!(p("z1", 1).wirtinger_dz(3).is_err());
}

#[test]
fn wirtinger_dzbar_examples() {
    assert_eq!(p("z1^2*~z1", 1).wirtinger_dzbar(0).unwrap(), p("z1^2", 1));
    assert!(p("z1^3", 1).wirtinger_dzbar(0).unwrap().is_zero());
    // w1⁴w̄1² → 2 w1⁴ w̄1
    assert_eq!(p("w1^4*~w1^2", 1).wirtinger_dzbar(0).unwrap(), p("2*w1^4*~w1", 1));
}

#[test]
fn conjugate_and_parts() {
    // conj(i·z1) = −i·z̄1
    assert_eq!(p("(1i)*z1", 1).conjugate(), p("(-1i)*~z1", 1));
    // real_part(z1) = ½(z1 + z̄1)
    assert_eq!(p("z1", 1).real_part(), p("(1/2)*z1 + (1/2)*~z1", 1));
    // imag_part(z1 z̄1) = 0 (real-valued input)
    assert!(p("z1*~z1", 1).imag_part().is_zero());
}

#[test]
fn parts_reconstruct_and_are_real_valued() {
    let q = p("(1/2+1i)*z2 + z1^2*~z2^3 - 3*z1", 2);
    let re = q.real_part();
    let im = q.imag_part();
    assert!(re.is_real_valued());
    assert!(im.is_real_valued());
    let i = MixedPolynomial::constant(2, GaussianRational::i());
    let rebuilt = re.add(&im.mul(&i).unwrap()).unwrap();
    assert_eq!(rebuilt, q);
}

#[test]
fn conjugate_is_involutive() {
    let q = p("(1/2+1i)*z2 + z1^2*~z2^3", 2);
    assert_eq!(q.conjugate().conjugate(), q);
}

#[test]
fn evaluate_examples() {
    // z1 z̄1 at 3+4i → 25
    let v = p("z1*~z1", 1).evaluate(&[c(3.0, 4.0)]).unwrap();
    assert!((v - c(25.0, 0.0)).norm() < 1e-12);
    // z1² + z2² at (1, i) → 0
    let v = p("z1^2+z2^2", 2).evaluate(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap();
    assert!(v.norm() < 1e-12);
    // w1⁴ w̄1² at 2 → 64 (direct substitution: 2⁴·2² = 64)
    let v = p("w1^4*~w1^2", 1).evaluate(&[c(2.0, 0.0)]).unwrap();
    assert!((v - c(64.0, 0.0)).norm() < 1e-12);
    assert!(p("z1", 1).evaluate(&[c(0.0, 0.0), c(1.0, 0.0)]).is_err());
}

#[test]
fn evaluate_commutes_with_conjugate() {
    let q = p("(1/2+1i)*z2 + z1^2*~z2^3 - 3*z1", 2);
    let pt = [c(0.3, -0.7), c(1.1, 0.2)];
    let a = q.conjugate().evaluate(&pt).unwrap();
    let b = q.evaluate(&pt).unwrap().conj();
    assert!((a - b).norm() < 1e-12);
}

#[test]
fn predicates() {
    assert!(p("z1*~z1", 1).is_real_valued());
    assert!(!p("z1*~z1", 1).is_holomorphic());
    assert!(p("z1^2+z2^3", 2).is_holomorphic());
    assert!(!p("z1^2+z2^3", 2).is_real_valued());
    let q = p("z1^2*~z1", 1);
    assert!(!q.is_real_valued());
    assert!(!q.is_holomorphic());
    assert!(p("~z1^2", 1).is_anti_holomorphic());
}

#[test]
fn roundtrip_spec_corpus() {
    for (text, n) in [
        ("z1^2 + z2^2", 2),
        ("z1^3 + z2^2", 2),
        ("w1^4*~w1^2 + w2^4*~w2^2", 2),
        ("(1/2+1i)*z2 + z1*~z1", 2),
        ("z1^3 + z1*z2 + z2^3", 2),
        ("-3*z1 + (2/7)*~z2^5", 2),
        ("(1/2-1i)*z1 + (-1i)*z2", 2),
        ("0", 3),
        ("5", 1),
    ] {
        let q = p(text, n);
        let rendered = q.to_input_syntax('z');
        assert_eq!(parse(&rendered, n).unwrap(), q, "rendered: {rendered}");
        let rendered_w = q.to_input_syntax('w');
        assert_eq!(parse(&rendered_w, n).unwrap(), q, "rendered: {rendered_w}");
    }
}

#[test]
fn pullback_style_display() {
    assert_eq!(
        p("z1^4*~z1^2 + z2^4*~z2^2", 2).to_input_syntax('w'),
        "w1^4*~w1^2 + w2^4*~w2^2"
    );
}
