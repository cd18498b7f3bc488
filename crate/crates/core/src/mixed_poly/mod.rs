//! Exact sparse mixed polynomials f(z, z̄) = Σ c_{νμ} z^ν z̄^μ.
//!
//! Coefficients are Gaussian rationals (exact complex rationals), so symbolic
//! identities — Euler residuals, conjugation, real/imaginary splits — are
//! decided exactly; floating point enters only through [`MixedPolynomial::evaluate`].
//!
//! Values are immutable after construction: every operation returns a new
//! polynomial, and the term map is kept canonical (no zero coefficients, no
//! duplicate keys, keys ordered lexicographically on (ν, μ)).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

mod display;
mod parser;

pub use parser::{parse, ParseError};

/// A point of ℂⁿ, identified with ℝ²ⁿ coordinate-wise.
pub type ComplexPoint = Vec<Complex64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MixedPolyError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {var} out of range for dimension {n}")]
    VariableOutOfRange { var: usize, n: usize },
}

/// An exact complex rational a + b·i with both parts in canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn zero() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussianRational::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussianRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(v: i64) -> Self {
        GaussianRational::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn add(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &Self) -> Self {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &Self) -> Self {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }

    pub fn neg(&self) -> Self {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }

    /// Multiply by an integer scalar.
    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        GaussianRational::new(&self.re * &k, &self.im * &k)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

/// Exponent vector ν = (ν₁, …, ν_n) of non-negative integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(entries: Vec<u32>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The j-th standard basis vector (0-based), scaled by `e`.
    pub fn axis(n: usize, j: usize, e: u32) -> Self {
        let mut v = vec![0; n];
        v[j] = e;
        ExponentVector(v)
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

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    fn plus(&self, o: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

/// One monomial c · z^ν · z̄^μ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedTerm {
    pub coeff: GaussianRational,
    pub nu: ExponentVector,
    pub mu: ExponentVector,
}

/// Sparse mixed polynomial in n variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MixedPolynomial {
    n: usize,
    terms: BTreeMap<(ExponentVector, ExponentVector), GaussianRational>,
}

impl MixedPolynomial {
    pub fn zero(n: usize) -> Self {
        MixedPolynomial { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: GaussianRational) -> Self {
        let mut p = MixedPolynomial::zero(n);
        p.insert(ExponentVector::zeros(n), ExponentVector::zeros(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        MixedPolynomial::constant(n, GaussianRational::one())
    }

    /// The variable z_{var} (0-based index).
    pub fn variable(n: usize, var: usize) -> Result<Self, MixedPolyError> {
        if var >= n {
            return Err(MixedPolyError::VariableOutOfRange { var, n });
        }
        let mut p = MixedPolynomial::zero(n);
        p.insert(
            ExponentVector::axis(n, var, 1),
            ExponentVector::zeros(n),
            GaussianRational::one(),
        );
        Ok(p)
    }

    /// The conjugated variable z̄_{var} (0-based index).
    pub fn conj_variable(n: usize, var: usize) -> Result<Self, MixedPolyError> {
        if var >= n {
            return Err(MixedPolyError::VariableOutOfRange { var, n });
        }
        let mut p = MixedPolynomial::zero(n);
        p.insert(
            ExponentVector::zeros(n),
            ExponentVector::axis(n, var, 1),
            GaussianRational::one(),
        );
        Ok(p)
    }

    pub fn monomial(
        n: usize,
        coeff: GaussianRational,
        nu: ExponentVector,
        mu: ExponentVector,
    ) -> Result<Self, MixedPolyError> {
        if nu.len() != n || mu.len() != n {
            return Err(MixedPolyError::DimensionMismatch {
                expected: n,
                got: nu.len().max(mu.len()),
            });
        }
        let mut p = MixedPolynomial::zero(n);
        p.insert(nu, mu, coeff);
        Ok(p)
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, MixedPolyError>
    where
        I: IntoIterator<Item = MixedTerm>,
    {
        let mut p = MixedPolynomial::zero(n);
        for t in terms {
            if t.nu.len() != n || t.mu.len() != n {
                return Err(MixedPolyError::DimensionMismatch {
                    expected: n,
                    got: t.nu.len().max(t.mu.len()),
                });
            }
            p.insert(t.nu, t.mu, t.coeff);
        }
        Ok(p)
    }

    fn insert(&mut self, nu: ExponentVector, mu: ExponentVector, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let key = (nu, mu);
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let merged = existing.add(&c);
                if merged.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = merged;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate terms in canonical order: lexicographic on (ν, μ), leading
    /// monomial first.
    pub fn iter(&self) -> impl Iterator<Item = (&ExponentVector, &ExponentVector, &GaussianRational)> {
        self.terms.iter().rev().map(|((nu, mu), c)| (nu, mu, c))
    }

    pub fn terms(&self) -> Vec<MixedTerm> {
        self.iter()
            .map(|(nu, mu, c)| MixedTerm {
                coeff: c.clone(),
                nu: nu.clone(),
                mu: mu.clone(),
            })
            .collect()
    }

    pub fn coeff(&self, nu: &ExponentVector, mu: &ExponentVector) -> GaussianRational {
        self.terms
            .get(&(nu.clone(), mu.clone()))
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    fn check_dim(&self, o: &MixedPolynomial) -> Result<(), MixedPolyError> {
        if self.n != o.n {
            return Err(MixedPolyError::DimensionMismatch { expected: self.n, got: o.n });
        }
        Ok(())
    }

    pub fn add(&self, o: &MixedPolynomial) -> Result<MixedPolynomial, MixedPolyError> {
        self.check_dim(o)?;
        let mut out = self.clone();
        for (nu, mu, c) in o.iter() {
            out.insert(nu.clone(), mu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &MixedPolynomial) -> Result<MixedPolynomial, MixedPolyError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> MixedPolynomial {
        let mut out = MixedPolynomial::zero(self.n);
        for (nu, mu, c) in self.iter() {
            out.terms.insert((nu.clone(), mu.clone()), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> MixedPolynomial {
        let mut out = MixedPolynomial::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (nu, mu, k) in self.iter() {
            out.terms.insert((nu.clone(), mu.clone()), k.mul(c));
        }
        out
    }

    pub fn mul(&self, o: &MixedPolynomial) -> Result<MixedPolynomial, MixedPolyError> {
        self.check_dim(o)?;
        let mut out = MixedPolynomial::zero(self.n);
        for (nu1, mu1, c1) in self.iter() {
            for (nu2, mu2, c2) in o.iter() {
                out.insert(nu1.plus(nu2), mu1.plus(mu2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> MixedPolynomial {
        let mut out = MixedPolynomial::one(self.n);
        for _ in 0..e {
            out = out.mul(self).expect("same dimension");
        }
        out
    }

    /// Wirtinger derivative ∂/∂z_{var} (0-based): term-wise power rule on ν.
    pub fn wirtinger_dz(&self, var: usize) -> Result<MixedPolynomial, MixedPolyError> {
        if var >= self.n {
            return Err(MixedPolyError::VariableOutOfRange { var, n: self.n });
        }
        let mut out = MixedPolynomial::zero(self.n);
        for (nu, mu, c) in self.iter() {
            let e = nu.get(var);
            if e == 0 {
                continue;
            }
            let mut entries = nu.entries().to_vec();
            entries[var] -= 1;
            out.insert(
                ExponentVector::new(entries),
                mu.clone(),
                c.scale_int(i64::from(e)),
            );
        }
        Ok(out)
    }

    /// Wirtinger derivative ∂/∂z̄_{var} (0-based): term-wise power rule on μ.
    pub fn wirtinger_dzbar(&self, var: usize) -> Result<MixedPolynomial, MixedPolyError> {
        if var >= self.n {
            return Err(MixedPolyError::VariableOutOfRange { var, n: self.n });
        }
        let mut out = MixedPolynomial::zero(self.n);
        for (nu, mu, c) in self.iter() {
            let e = mu.get(var);
            if e == 0 {
                continue;
            }
            let mut entries = mu.entries().to_vec();
            entries[var] -= 1;
            out.insert(
                nu.clone(),
                ExponentVector::new(entries),
                c.scale_int(i64::from(e)),
            );
        }
        Ok(out)
    }

    /// Complex conjugate: swaps (ν, μ) and conjugates coefficients.
    pub fn conjugate(&self) -> MixedPolynomial {
        let mut out = MixedPolynomial::zero(self.n);
        for (nu, mu, c) in self.iter() {
            out.terms.insert((mu.clone(), nu.clone()), c.conj());
        }
        out
    }

    /// Real part ½(f + f̄), a real-valued mixed polynomial.
    pub fn real_part(&self) -> MixedPolynomial {
        let half = GaussianRational::from_ratio(1, 2);
        self.add(&self.conjugate()).expect("same dimension").scale(&half)
    }

    /// Imaginary part −i/2 · (f − f̄), a real-valued mixed polynomial.
    pub fn imag_part(&self) -> MixedPolynomial {
        let minus_half_i = GaussianRational::new(
            BigRational::zero(),
            -BigRational::new(BigInt::one(), BigInt::from(2)),
        );
        self.sub(&self.conjugate()).expect("same dimension").scale(&minus_half_i)
    }

    /// True iff c_{ν,μ} = conj(c_{μ,ν}) for all terms, i.e. f = f̄.
    pub fn is_real_valued(&self) -> bool {
        *self == self.conjugate()
    }

    /// True iff no term involves z̄ (all μ = 0).
    pub fn is_holomorphic(&self) -> bool {
        self.iter().all(|(_, mu, _)| mu.entries().iter().all(|&e| e == 0))
    }

    /// True iff no term involves z (all ν = 0).
    pub fn is_anti_holomorphic(&self) -> bool {
        self.iter().all(|(nu, _, _)| nu.entries().iter().all(|&e| e == 0))
    }

    pub fn evaluate(&self, pt: &[Complex64]) -> Result<Complex64, MixedPolyError> {
        if pt.len() != self.n {
            return Err(MixedPolyError::DimensionMismatch { expected: self.n, got: pt.len() });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (nu, mu, c) in self.iter() {
            let mut m = c.to_complex();
            for j in 0..self.n {
                m *= cpow(pt[j], nu.get(j));
                m *= cpow(pt[j].conj(), mu.get(j));
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Maximal total degree Σ(ν_j + μ_j) over terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.iter().map(|(nu, mu, _)| nu.total() + mu.total()).max().unwrap_or(0)
    }

    /// Exact evaluation at a Gaussian-rational point.
    pub fn evaluate_exact(&self, pt: &[GaussianRational]) -> Result<GaussianRational, MixedPolyError> {
        if pt.len() != self.n {
            return Err(MixedPolyError::DimensionMismatch { expected: self.n, got: pt.len() });
        }
        let mut acc = GaussianRational::zero();
        for (nu, mu, c) in self.iter() {
            let mut m = c.clone();
            for j in 0..self.n {
                for _ in 0..nu.get(j) {
                    m = m.mul(&pt[j]);
                }
                let conj = pt[j].conj();
                for _ in 0..mu.get(j) {
                    m = m.mul(&conj);
                }
            }
            acc = acc.add(&m);
        }
        Ok(acc)
    }
}

/// Integer power with the convention 0⁰ = 1.
pub(crate) fn cpow(z: Complex64, e: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut base = z;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests;
