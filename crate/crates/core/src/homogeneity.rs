//! Radial and polar weighted homogeneity.
//!
//! A mixed polynomial is radially weighted homogeneous for a positive integer
//! weight vector Q when Σ q_j(ν_j + μ_j) is the same for every term, and polar
//! weighted homogeneous for P when Σ p_j(ν_j − μ_j) is. Detection solves the
//! exact integer kernel of the pairwise degree differences and then searches
//! that lattice for the lexicographically smallest strictly positive primitive
//! vector. Homogeneity claims are verified symbolically through the Euler
//! residuals, which must be identically zero polynomials.

use crate::lattice;
use crate::mixed_poly::{ExponentVector, GaussianRational, MixedPolynomial, MixedTerm};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomogeneityError {
    #[error("degenerate input: the zero polynomial has no weight structure")]
    DegenerateInput,
    #[error("weight vector has dimension {got}, polynomial has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weight entries must be positive")]
    NonPositiveWeight,
    #[error("strong Euler degrees are non-integral: (m_r ± m_p)/2 with m_r = {m_r}, m_p = {m_p}")]
    NonIntegralStrongDegree { m_r: i64, m_p: i64 },
}

/// Strictly positive integer weights (q₁, …, q_n).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(entries: Vec<u32>) -> Result<Self, HomogeneityError> {
        if entries.iter().any(|&e| e == 0) {
            return Err(HomogeneityError::NonPositiveWeight);
        }
        Ok(WeightVector(entries))
    }

    pub fn ones(n: usize) -> Self {
        WeightVector(vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    /// Divide by the gcd of the entries.
    pub fn primitive(&self) -> WeightVector {
        let g = self.0.iter().fold(0u32, |acc, &x| gcd_u32(acc, x));
        if g <= 1 {
            return self.clone();
        }
        WeightVector(self.0.iter().map(|&x| x / g).collect())
    }

    /// Scale every entry by a positive integer.
    pub fn scaled(&self, k: u32) -> WeightVector {
        WeightVector(self.0.iter().map(|&x| x * k).collect())
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd_u32(b, a % b) }
}

fn check_dims(n: usize, w: &WeightVector) -> Result<(), HomogeneityError> {
    if w.len() != n {
        return Err(HomogeneityError::DimensionMismatch { expected: n, got: w.len() });
    }
    Ok(())
}

/// Σ q_j (ν_j + μ_j) of one term.
pub fn radial_degree(term: &MixedTerm, q: &WeightVector) -> Result<i64, HomogeneityError> {
    check_dims(term.nu.len(), q)?;
    Ok(term
        .nu
        .entries()
        .iter()
        .zip(term.mu.entries())
        .zip(q.entries())
        .map(|((&nu, &mu), &w)| i64::from(w) * (i64::from(nu) + i64::from(mu)))
        .sum())
}

/// Σ p_j (ν_j − μ_j) of one term.
pub fn polar_degree(term: &MixedTerm, p: &WeightVector) -> Result<i64, HomogeneityError> {
    check_dims(term.nu.len(), p)?;
    Ok(term
        .nu
        .entries()
        .iter()
        .zip(term.mu.entries())
        .zip(p.entries())
        .map(|((&nu, &mu), &w)| i64::from(w) * (i64::from(nu) - i64::from(mu)))
        .sum())
}

pub(crate) fn radial_exponents(nu: &ExponentVector, mu: &ExponentVector) -> Vec<i64> {
    nu.entries()
        .iter()
        .zip(mu.entries())
        .map(|(&a, &b)| i64::from(a) + i64::from(b))
        .collect()
}

pub(crate) fn polar_exponents(nu: &ExponentVector, mu: &ExponentVector) -> Vec<i64> {
    nu.entries()
        .iter()
        .zip(mu.entries())
        .map(|(&a, &b)| i64::from(a) - i64::from(b))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectedWeights {
    pub weights: WeightVector,
    pub degree: i64,
    /// False when the support has deficient rank and several primitive
    /// strictly positive weight vectors exist; the reported one is then the
    /// lexicographically smallest.
    pub unique: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneityReport {
    pub radial: Option<DetectedWeights>,
    pub polar: Option<DetectedWeights>,
    /// Radial and polar structure present with the same weight vector.
    pub strongly_polar: bool,
    /// Strongly polar with positive polar degree.
    pub strongly_polar_positive: bool,
}

const WEIGHT_SEARCH_BOUND: i64 = 4096;

/// Search the degree-difference lattice of `rows` (one exponent row per term)
/// for the lexicographically smallest strictly positive primitive weight.
pub(crate) fn detect_side(rows: &[Vec<i64>]) -> Option<DetectedWeights> {
    let n = rows[0].len();
    let diffs: Vec<Vec<BigInt>> = rows[1..]
        .iter()
        .map(|r| r.iter().zip(&rows[0]).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let kernel = lattice::integer_kernel(&diffs, n);
    if kernel.is_empty() {
        return None;
    }
    let unique = kernel.len() == 1;
    let q = lattice::lexmin_positive(&kernel, &[], WEIGHT_SEARCH_BOUND)?;
    let weights: Vec<u32> = q.iter().map(|x| x.to_u32().expect("bounded search")).collect();
    let degree: i64 = weights
        .iter()
        .zip(&rows[0])
        .map(|(&w, &e)| i64::from(w) * e)
        .sum();
    Some(DetectedWeights { weights: WeightVector(weights), degree, unique })
}

/// Detect radial and polar weighted homogeneity of a nonzero polynomial.
///
/// The returned weights are primitive (gcd 1); when the solution lattice has
/// rank above one the lexicographically smallest strictly positive vector is
/// reported and `unique` is false.
pub fn detect_weights(p: &MixedPolynomial) -> Result<HomogeneityReport, HomogeneityError> {
    if p.is_zero() {
        return Err(HomogeneityError::DegenerateInput);
    }
    let radial_rows: Vec<Vec<i64>> = p.iter().map(|(nu, mu, _)| radial_exponents(nu, mu)).collect();
    let polar_rows: Vec<Vec<i64>> = p.iter().map(|(nu, mu, _)| polar_exponents(nu, mu)).collect();
    let radial = detect_side(&radial_rows);
    let polar = detect_side(&polar_rows);
    let strongly_polar = match (&radial, &polar) {
        (Some(r), Some(pp)) => r.weights == pp.weights,
        _ => false,
    };
    let strongly_polar_positive =
        strongly_polar && polar.as_ref().map(|pp| pp.degree > 0).unwrap_or(false);
    Ok(HomogeneityReport { radial, polar, strongly_polar, strongly_polar_positive })
}

/// The four symbolic Euler residuals. Each is identically zero exactly when
/// the corresponding homogeneity holds with the stated weights and degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerResiduals {
    /// m_r·f − Σ q_i (f_{z_i} z_i + f_{z̄_i} z̄_i)
    pub radial: MixedPolynomial,
    /// m_p·f − Σ p_i (f_{z_i} z_i − f_{z̄_i} z̄_i)
    pub polar: MixedPolynomial,
    /// When Q = P: (Σ p_j z_j f_{z_j} − (m_r+m_p)/2 · f,
    ///              Σ p_j z̄_j f_{z̄_j} − (m_r−m_p)/2 · f)
    pub strong: Option<(MixedPolynomial, MixedPolynomial)>,
}

impl EulerResiduals {
    pub fn all_zero(&self) -> bool {
        self.radial.is_zero()
            && self.polar.is_zero()
            && self
                .strong
                .as_ref()
                .map(|(a, b)| a.is_zero() && b.is_zero())
                .unwrap_or(true)
    }
}

pub fn euler_residuals(
    p: &MixedPolynomial,
    q: &WeightVector,
    m_r: i64,
    pw: &WeightVector,
    m_p: i64,
) -> Result<EulerResiduals, HomogeneityError> {
    let n = p.n();
    check_dims(n, q)?;
    check_dims(n, pw)?;

    let mut radial_sum = MixedPolynomial::zero(n);
    let mut polar_sum = MixedPolynomial::zero(n);
    for j in 0..n {
        let zj = MixedPolynomial::variable(n, j).expect("j < n");
        let zjbar = MixedPolynomial::conj_variable(n, j).expect("j < n");
        let dz = p.wirtinger_dz(j).expect("j < n").mul(&zj).expect("dims");
        let dzbar = p.wirtinger_dzbar(j).expect("j < n").mul(&zjbar).expect("dims");
        let both = dz.add(&dzbar).expect("dims");
        radial_sum = radial_sum
            .add(&both.scale(&GaussianRational::from_integer(i64::from(q.get(j)))))
            .expect("dims");
        let diff = dz.sub(&dzbar).expect("dims");
        polar_sum = polar_sum
            .add(&diff.scale(&GaussianRational::from_integer(i64::from(pw.get(j)))))
            .expect("dims");
    }
    let radial = p.scale(&GaussianRational::from_integer(m_r)).sub(&radial_sum).expect("dims");
    let polar = p.scale(&GaussianRational::from_integer(m_p)).sub(&polar_sum).expect("dims");

    let strong = if q == pw {
        if (m_r + m_p) % 2 != 0 {
            return Err(HomogeneityError::NonIntegralStrongDegree { m_r, m_p });
        }
        let mut dz_sum = MixedPolynomial::zero(n);
        let mut dzbar_sum = MixedPolynomial::zero(n);
        for j in 0..n {
            let zj = MixedPolynomial::variable(n, j).expect("j < n");
            let zjbar = MixedPolynomial::conj_variable(n, j).expect("j < n");
            let w = GaussianRational::from_integer(i64::from(pw.get(j)));
            dz_sum = dz_sum
                .add(&p.wirtinger_dz(j).expect("j < n").mul(&zj).expect("dims").scale(&w))
                .expect("dims");
            dzbar_sum = dzbar_sum
                .add(&p.wirtinger_dzbar(j).expect("j < n").mul(&zjbar).expect("dims").scale(&w))
                .expect("dims");
        }
        let s1 = dz_sum
            .sub(&p.scale(&GaussianRational::from_integer((m_r + m_p) / 2)))
            .expect("dims");
        let s2 = dzbar_sum
            .sub(&p.scale(&GaussianRational::from_integer((m_r - m_p) / 2)))
            .expect("dims");
        Some((s1, s2))
    } else {
        None
    };

    Ok(EulerResiduals { radial, polar, strong })
}
