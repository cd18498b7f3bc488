//! Mixed cyclic covering maps φ_{a,b} : w ↦ (w₁^{a₁} w̄₁^{b₁}, …, w_n^{a_n} w̄_n^{b_n}).
//!
//! Pull-backs substitute z_j ↦ w_j^{a_j} w̄_j^{b_j} (and z̄_j ↦ w̄_j^{a_j} w_j^{b_j})
//! exactly at the exponent level. Over the torus the map is a Π|a_j − b_j|-fold
//! covering, and weighted homogeneity transforms by the normalized weights
//! q̂_j = q_j / (d_r (a_j + b_j)), ŝ_j = s_j / (d_p (a_j − b_j)).

use crate::homogeneity::WeightVector;
use crate::mixed_poly::{ExponentVector, GaussianRational, MixedPolynomial, MixedTerm};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoveringError {
    #[error("covering exponents must differ in every coordinate (a_{j} = b_{j} = {v})")]
    EqualExponents { j: usize, v: u32 },
    #[error("mixed orientation: coordinate {j} has a_j {aj} vs b_j {bj} against the overall sign")]
    MixedOrientation { j: usize, aj: u32, bj: u32 },
    #[error("covering spec has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operation requires a homogeneous covering (all a_j equal, all b_j equal)")]
    NonHomogeneous,
    #[error("polar degree is zero; normalized polar weights are undefined")]
    PolarDegreeZero,
}

/// Orientation class of a covering: which of a, b dominates componentwise.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// a_j > b_j ≥ 0 in every coordinate.
    HolomorphicLike,
    /// b_j > a_j ≥ 0 in every coordinate.
    AntiHolomorphicLike,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CoveringSpec {
    a: Vec<u32>,
    b: Vec<u32>,
    pub orientation: Orientation,
    /// All a_j equal and all b_j equal.
    pub homogeneous: bool,
}

impl CoveringSpec {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<Self, CoveringError> {
        if a.len() != b.len() {
            return Err(CoveringError::DimensionMismatch { expected: a.len(), got: b.len() });
        }
        let mut orientation = None;
        for (j, (&aj, &bj)) in a.iter().zip(&b).enumerate() {
            if aj == bj {
                return Err(CoveringError::EqualExponents { j, v: aj });
            }
            let here = if aj > bj {
                Orientation::HolomorphicLike
            } else {
                Orientation::AntiHolomorphicLike
            };
            match orientation {
                None => orientation = Some(here),
                Some(o) if o != here => {
                    return Err(CoveringError::MixedOrientation { j, aj, bj });
                }
                _ => {}
            }
        }
        let homogeneous = a.windows(2).all(|w| w[0] == w[1]) && b.windows(2).all(|w| w[0] == w[1]);
        Ok(CoveringSpec {
            a,
            b,
            orientation: orientation.expect("nonempty spec"),
            homogeneous,
        })
    }

    /// Homogeneous covering with the same (a, b) in every coordinate.
    pub fn homogeneous(n: usize, a: u32, b: u32) -> Result<Self, CoveringError> {
        CoveringSpec::new(vec![a; n], vec![b; n])
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn b(&self) -> &[u32] {
        &self.b
    }

    /// The exponent pair (a, b) of a homogeneous covering.
    pub fn homogeneous_pair(&self) -> Result<(u32, u32), CoveringError> {
        if !self.homogeneous {
            return Err(CoveringError::NonHomogeneous);
        }
        Ok((self.a[0], self.b[0]))
    }

    /// Apply φ_{a,b} to a point.
    pub fn apply(&self, w: &[Complex64]) -> Vec<Complex64> {
        w.iter()
            .enumerate()
            .map(|(j, &wj)| {
                crate::mixed_poly::cpow(wj, self.a[j]) * crate::mixed_poly::cpow(wj.conj(), self.b[j])
            })
            .collect()
    }

    /// Apply φ_{a,b} exactly at a Gaussian-rational point.
    pub fn apply_exact(&self, w: &[GaussianRational]) -> Vec<GaussianRational> {
        w.iter()
            .enumerate()
            .map(|(j, wj)| {
                let mut acc = GaussianRational::one();
                for _ in 0..self.a[j] {
                    acc = acc.mul(wj);
                }
                let conj = wj.conj();
                for _ in 0..self.b[j] {
                    acc = acc.mul(&conj);
                }
                acc
            })
            .collect()
    }
}

/// Covering degree Π_j |a_j − b_j| over the torus.
pub fn covering_degree(spec: &CoveringSpec) -> u64 {
    spec.a()
        .iter()
        .zip(spec.b())
        .map(|(&a, &b)| u64::from(a.abs_diff(b)))
        .product()
}

/// Exact pull-back g = f ∘ φ_{a,b}: each term c z^ν z̄^μ maps to
/// c Π_j w_j^{a_jν_j + b_jμ_j} w̄_j^{b_jν_j + a_jμ_j}.
pub fn pullback(p: &MixedPolynomial, spec: &CoveringSpec) -> Result<MixedPolynomial, CoveringError> {
    if spec.n() != p.n() {
        return Err(CoveringError::DimensionMismatch { expected: p.n(), got: spec.n() });
    }
    let n = p.n();
    let terms = p.iter().map(|(nu, mu, c)| {
        let mut new_nu = vec![0u32; n];
        let mut new_mu = vec![0u32; n];
        for j in 0..n {
            new_nu[j] = spec.a()[j] * nu.get(j) + spec.b()[j] * mu.get(j);
            new_mu[j] = spec.b()[j] * nu.get(j) + spec.a()[j] * mu.get(j);
        }
        MixedTerm {
            coeff: c.clone(),
            nu: ExponentVector::new(new_nu),
            mu: ExponentVector::new(new_mu),
        }
    });
    Ok(MixedPolynomial::from_terms(n, terms).expect("dimensions preserved"))
}

/// Integer weight vector with its degree, cleared from a rational normalized
/// weight. The degree carries the orientation sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClearedWeights {
    pub weights: WeightVector,
    pub degree: i64,
}

/// Normalized and cleared weights of a pull-back.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedWeights {
    /// q̂_j = q_j / (d_r (a_j + b_j)); the pull-back has radial q̂-degree 1.
    pub radial_normalized: Vec<BigRational>,
    /// ŝ_j = s_j / (d_p (a_j − b_j)); the pull-back has polar ŝ-degree 1.
    pub polar_normalized: Vec<BigRational>,
    pub radial: ClearedWeights,
    pub polar: ClearedWeights,
}

/// Clear a rational weight vector of uniform sign to a primitive positive
/// integer vector; the returned degree is the (signed) clearing factor.
fn clear(v: &[BigRational]) -> (WeightVector, i64) {
    let mut l = BigInt::one();
    for x in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    let negative = ints[0].is_negative();
    let entries: Vec<u32> = ints
        .iter()
        .map(|x| (x / &g).abs().to_u32().expect("desk-scale weights"))
        .collect();
    let mut factor = (&l / &g).to_i64().expect("desk-scale degrees");
    if negative {
        factor = -factor;
    }
    (WeightVector::new(entries).expect("nonzero primitive"), factor)
}

/// Transform the weights (Q, d_r) radial and (S, d_p) polar of f into the
/// normalized weights of the pull-back under `spec`, plus their primitive
/// integer-cleared forms with degrees.
pub fn transform_weights(
    q: &WeightVector,
    d_r: i64,
    s: &WeightVector,
    d_p: i64,
    spec: &CoveringSpec,
) -> Result<TransformedWeights, CoveringError> {
    let n = spec.n();
    if q.len() != n || s.len() != n {
        return Err(CoveringError::DimensionMismatch { expected: n, got: q.len().max(s.len()) });
    }
    if d_p == 0 {
        return Err(CoveringError::PolarDegreeZero);
    }
    let radial_normalized: Vec<BigRational> = (0..n)
        .map(|j| {
            let den = BigInt::from(d_r) * BigInt::from(i64::from(spec.a()[j] + spec.b()[j]));
            BigRational::new(BigInt::from(i64::from(q.get(j))), den)
        })
        .collect();
    let polar_normalized: Vec<BigRational> = (0..n)
        .map(|j| {
            let diff = i64::from(spec.a()[j]) - i64::from(spec.b()[j]);
            let den = BigInt::from(d_p) * BigInt::from(diff);
            BigRational::new(BigInt::from(i64::from(s.get(j))), den)
        })
        .collect();
    let (rw, rdeg) = clear(&radial_normalized);
    let (pw, pdeg) = clear(&polar_normalized);
    Ok(TransformedWeights {
        radial_normalized,
        polar_normalized,
        radial: ClearedWeights { weights: rw, degree: rdeg },
        polar: ClearedWeights { weights: pw, degree: pdeg },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneity::detect_weights;
    use crate::mixed_poly::parse;

    fn p(text: &str, n: usize) -> MixedPolynomial {
        parse(text, n).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(CoveringSpec::homogeneous(2, 2, 1).is_ok());
        assert!(CoveringSpec::homogeneous(2, 1, 2).is_ok());
        assert!(matches!(
            CoveringSpec::homogeneous(2, 2, 2),
            Err(CoveringError::EqualExponents { .. })
        ));
        assert!(matches!(
            CoveringSpec::new(vec![2, 1], vec![1, 2]),
            Err(CoveringError::MixedOrientation { .. })
        ));
        let s = CoveringSpec::new(vec![3, 2], vec![1, 0]).unwrap();
        assert_eq!(s.orientation, Orientation::HolomorphicLike);
        assert!(!s.homogeneous);
    }

    #[test]
    fn pullback_examples() {
        let s21 = CoveringSpec::homogeneous(1, 2, 1).unwrap();
        assert_eq!(pullback(&p("z1", 1), &s21).unwrap(), p("w1^2*~w1", 1));
        assert_eq!(pullback(&p("z1*~z1", 1), &s21).unwrap(), p("w1^3*~w1^3", 1));
        let s21 = CoveringSpec::homogeneous(2, 2, 1).unwrap();
        assert_eq!(
            pullback(&p("z1^2+z2^2", 2), &s21).unwrap(),
            p("w1^4*~w1^2 + w2^4*~w2^2", 2)
        );
    }

    #[test]
    fn pullback_functoriality_on_evaluation() {
        use crate::random::{random_point, substream};
        let f = p("(1/2+1i)*z1^2*~z2 + z2^3 - 2*z1", 2);
        let spec = CoveringSpec::new(vec![3, 2], vec![1, 0]).unwrap();
        let g = pullback(&f, &spec).unwrap();
        let mut rng = substream(0xF0, 0);
        for _ in 0..100 {
            let w = random_point(2, &mut rng);
            let lhs = g.evaluate(&w).unwrap();
            let rhs = f.evaluate(&spec.apply(&w)).unwrap();
            assert!(crate::rel_err_c(lhs, rhs) < 1e-12, "{lhs} vs {rhs}");
        }
    }

    #[test]
    fn pullback_functoriality_exact_at_rational_points() {
        use rand::Rng;
        let f = p("(1/2+1i)*z1^2*~z2 + z2^3 - 2*z1", 2);
        let spec = CoveringSpec::new(vec![2, 3], vec![1, 1]).unwrap();
        let g = pullback(&f, &spec).unwrap();
        let mut rng = crate::random::substream(0xF1, 0);
        for _ in 0..20 {
            let w: Vec<GaussianRational> = (0..2)
                .map(|_| {
                    GaussianRational::new(
                        BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()),
                        BigRational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=4).into()),
                    )
                })
                .collect();
            let lhs = g.evaluate_exact(&w).unwrap();
            let rhs = f.evaluate_exact(&spec.apply_exact(&w)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn covering_degree_examples() {
        assert_eq!(covering_degree(&CoveringSpec::new(vec![2, 2], vec![1, 1]).unwrap()), 1);
        assert_eq!(covering_degree(&CoveringSpec::new(vec![3, 2], vec![1, 0]).unwrap()), 4);
        assert_eq!(covering_degree(&CoveringSpec::new(vec![1, 1], vec![2, 2]).unwrap()), 1);
    }

    #[test]
    fn transform_weights_brieskorn() {
        // f = z1² + z2²: Q = S = (1,1), d_r = d_p = 2; spec (2,1).
        let spec = CoveringSpec::homogeneous(2, 2, 1).unwrap();
        let w = WeightVector::new(vec![1, 1]).unwrap();
        let t = transform_weights(&w, 2, &w, 2, &spec).unwrap();
        assert_eq!(t.radial_normalized[0], BigRational::new(1.into(), 6.into()));
        assert_eq!(t.polar_normalized[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(t.radial, ClearedWeights { weights: w.clone(), degree: 6 });
        assert_eq!(t.polar, ClearedWeights { weights: w.clone(), degree: 2 });
    }

    #[test]
    fn transform_weights_matches_detection() {
        let f = p("z1^3 + z2^2", 2);
        let rep = detect_weights(&f).unwrap();
        let rad = rep.radial.unwrap();
        let pol = rep.polar.unwrap();
        for (a, b) in [(2u32, 1u32), (3, 2), (1, 0), (1, 2)] {
            let spec = CoveringSpec::homogeneous(2, a, b).unwrap();
            let g = pullback(&f, &spec).unwrap();
            let grep = detect_weights(&g).unwrap();
            let t = transform_weights(&rad.weights, rad.degree, &pol.weights, pol.degree, &spec)
                .unwrap();
            let grad = grep.radial.unwrap();
            let gpol = grep.polar.unwrap();
            assert_eq!(t.radial.weights, grad.weights, "(a,b)=({a},{b})");
            assert_eq!(t.radial.degree, grad.degree, "(a,b)=({a},{b})");
            assert_eq!(t.polar.weights, gpol.weights, "(a,b)=({a},{b})");
            assert_eq!(t.polar.degree, gpol.degree, "(a,b)=({a},{b})");
        }
    }

    #[test]
    fn homogeneous_lift_degrees() {
        // Weighted homogeneous f of degree d lifts to rdeg (a+b)d, pdeg (a−b)d.
        let f = p("z1^2 + z2^2", 2);
        let spec = CoveringSpec::homogeneous(2, 2, 1).unwrap();
        let g = pullback(&f, &spec).unwrap();
        let rep = detect_weights(&g).unwrap();
        assert_eq!(rep.radial.unwrap().degree, 6);
        assert_eq!(rep.polar.as_ref().unwrap().degree, 2);
        assert!(rep.strongly_polar);

        let spec = CoveringSpec::homogeneous(2, 1, 2).unwrap();
        let g = pullback(&f, &spec).unwrap();
        let rep = detect_weights(&g).unwrap();
        assert_eq!(rep.radial.unwrap().degree, 6);
        assert_eq!(rep.polar.unwrap().degree, -2);
    }
}
