//! Seeded sampling utilities for stress tests and randomized probes.
//!
//! All randomness in the crate flows through [`substream`], which derives an
//! independent deterministic ChaCha stream per (root seed, index) pair, so
//! batch computations stay reproducible regardless of scheduling.

use crate::homogeneity::{detect_weights, WeightVector};
use crate::mixed_poly::{ComplexPoint, ExponentVector, GaussianRational, MixedPolynomial, MixedTerm};
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Deterministic per-index substream of a root seed.
pub fn substream(root: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix(root ^ mix(index)))
}

/// Standard normal via Box–Muller.
pub fn normal(rng: &mut impl Rng) -> f64 {
    let u1: f64 = rng.gen::<f64>().max(1e-300);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Point of ℂⁿ with iid standard normal real coordinates.
pub fn random_point(n: usize, rng: &mut impl Rng) -> ComplexPoint {
    (0..n).map(|_| Complex64::new(normal(rng), normal(rng))).collect()
}

/// Uniformly random point of the weighted sphere Σ a_j |z_j|² = r².
pub fn random_sphere_point(
    n: usize,
    radius: f64,
    weights: &WeightVector,
    rng: &mut impl Rng,
) -> ComplexPoint {
    loop {
        let z = random_point(n, rng);
        let rho: f64 = z
            .iter()
            .zip(weights.entries())
            .map(|(zj, &a)| f64::from(a) * zj.norm_sqr())
            .sum();
        if rho > 1e-12 {
            let s = radius / rho.sqrt();
            return z.into_iter().map(|zj| zj * s).collect();
        }
    }
}

/// Small random Gaussian-rational coefficient, never zero.
pub fn random_coeff(rng: &mut impl Rng) -> GaussianRational {
    loop {
        let re = BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into());
        let im = if rng.gen_bool(0.5) {
            BigRational::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())
        } else {
            BigRational::from_integer(0.into())
        };
        let c = GaussianRational::new(re, im);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random mixed polynomial with `terms` monomials and per-slot exponents
/// bounded by `max_exp`.
pub fn random_mixed_polynomial(
    n: usize,
    terms: usize,
    max_exp: u32,
    rng: &mut impl Rng,
) -> MixedPolynomial {
    loop {
        let mut list = Vec::new();
        for _ in 0..terms {
            let nu: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            let mu: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            if nu.iter().all(|&e| e == 0) && mu.iter().all(|&e| e == 0) {
                continue; // no constant terms
            }
            list.push(MixedTerm {
                coeff: random_coeff(rng),
                nu: ExponentVector::new(nu),
                mu: ExponentVector::new(mu),
            });
        }
        let p = MixedPolynomial::from_terms(n, list).expect("dims");
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random convenient holomorphic polynomial: one pure power per variable plus
/// a few extra holomorphic monomials.
pub fn random_convenient_holomorphic(n: usize, rng: &mut impl Rng) -> MixedPolynomial {
    let mut list = Vec::new();
    for j in 0..n {
        let e = rng.gen_range(2..=4u32);
        list.push(MixedTerm {
            coeff: random_coeff(rng),
            nu: ExponentVector::axis(n, j, e),
            mu: ExponentVector::zeros(n),
        });
    }
    for _ in 0..rng.gen_range(0..=2usize) {
        let nu: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2u32)).collect();
        if nu.iter().map(|&e| u64::from(e)).sum::<u64>() < 2 {
            continue;
        }
        list.push(MixedTerm {
            coeff: random_coeff(rng),
            nu: ExponentVector::new(nu),
            mu: ExponentVector::zeros(n),
        });
    }
    MixedPolynomial::from_terms(n, list).expect("dims")
}

/// Random strongly polar weighted homogeneous polynomial: fixed primitive
/// weights W, all terms sharing the same radial degree m_r and polar degree
/// m_p under W. Returns (p, W, m_r, m_p).
pub fn random_polar_homogeneous(
    n: usize,
    rng: &mut impl Rng,
) -> (MixedPolynomial, WeightVector, i64, i64) {
    loop {
        let raw: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3u32)).collect();
        let w = WeightVector::new(raw).expect("positive").primitive();
        // Bucket random monomials by their (radial, polar) degree pair.
        let mut buckets: BTreeMap<(i64, i64), Vec<(ExponentVector, ExponentVector)>> =
            BTreeMap::new();
        for _ in 0..600 {
            let nu: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3u32)).collect();
            let mu: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2u32)).collect();
            let total: u64 = nu.iter().chain(&mu).map(|&e| u64::from(e)).sum();
            if total == 0 || total > 8 {
                continue;
            }
            let rdeg: i64 = nu
                .iter()
                .zip(&mu)
                .zip(w.entries())
                .map(|((&a, &b), &q)| i64::from(q) * (i64::from(a) + i64::from(b)))
                .sum();
            let pdeg: i64 = nu
                .iter()
                .zip(&mu)
                .zip(w.entries())
                .map(|((&a, &b), &q)| i64::from(q) * (i64::from(a) - i64::from(b)))
                .sum();
            let key = (rdeg, pdeg);
            let entry = buckets.entry(key).or_default();
            let pair = (ExponentVector::new(nu), ExponentVector::new(mu));
            if !entry.contains(&pair) {
                entry.push(pair);
            }
        }
        let Some(((m_r, m_p), monos)) = buckets
            .into_iter()
            .filter(|((r, p), v)| *r > 0 && *p != 0 && v.len() >= 2)
            .max_by_key(|(_, v)| v.len())
        else {
            continue;
        };
        let take = monos.len().min(5);
        let terms = monos.into_iter().take(take).map(|(nu, mu)| MixedTerm {
            coeff: random_coeff(rng),
            nu,
            mu,
        });
        let p = MixedPolynomial::from_terms(n, terms).expect("dims");
        if !p.is_zero() {
            return (p, w, m_r, m_p);
        }
    }
}

/// Like [`random_polar_homogeneous`], retrying until weight detection is
/// unique on both sides (full-rank support differences).
pub fn random_polar_homogeneous_unique(
    n: usize,
    rng: &mut impl Rng,
) -> (MixedPolynomial, WeightVector, i64, i64) {
    loop {
        let (p, w, m_r, m_p) = random_polar_homogeneous(n, rng);
        let Ok(rep) = detect_weights(&p) else { continue };
        let ok = rep.radial.as_ref().map(|r| r.unique).unwrap_or(false)
            && rep.polar.as_ref().map(|r| r.unique).unwrap_or(false);
        if ok {
            return (p, w, m_r, m_p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homogeneity::euler_residuals;

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let a: Vec<u64> = (0..4).map(|i| substream(42, i).gen()).collect();
        let b: Vec<u64> = (0..4).map(|i| substream(42, i).gen()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn sphere_points_satisfy_constraint() {
        let mut rng = substream(7, 0);
        let w = WeightVector::new(vec![2, 3]).unwrap();
        for _ in 0..10 {
            let z = random_sphere_point(2, 1.5, &w, &mut rng);
            let rho: f64 = z
                .iter()
                .zip(w.entries())
                .map(|(zj, &a)| f64::from(a) * zj.norm_sqr())
                .sum();
            assert!((rho - 2.25).abs() < 1e-12);
        }
    }

    #[test]
    fn generated_homogeneous_polys_have_zero_euler_residuals() {
        let mut rng = substream(3, 1);
        for _ in 0..5 {
            let n = rng.gen_range(2..=4);
            let (p, w, m_r, m_p) = random_polar_homogeneous(n, &mut rng);
            let res = euler_residuals(&p, &w, m_r, &w, m_p).unwrap();
            assert!(res.all_zero(), "p = {p}");
        }
    }
}
