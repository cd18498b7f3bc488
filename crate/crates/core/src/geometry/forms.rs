//! Dense antisymmetric k-tensors over the real coordinates (x₁, y₁, …, x_n, y_n).
//!
//! Only the tiny dimensions needed by the wedge verifier (2n ≤ 6) are ever
//! instantiated, so coefficients are simply keyed by their sorted index tuple.

use num_complex::Complex64;
use std::collections::BTreeMap;

/// A k-form at a point, stored by sorted multi-index.
#[derive(Clone, Debug)]
pub struct FormAtPoint {
    dims: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<u8>, f64>,
}

impl FormAtPoint {
    pub fn zero(dims: usize, degree: usize) -> Self {
        FormAtPoint { dims, degree, coeffs: BTreeMap::new() }
    }

    /// 1-form Σ c_i dx^i from its coefficient row.
    pub fn one_form(coeffs: &[f64]) -> Self {
        let mut f = FormAtPoint::zero(coeffs.len(), 1);
        for (i, &c) in coeffs.iter().enumerate() {
            if c != 0.0 {
                f.coeffs.insert(vec![i as u8], c);
            }
        }
        f
    }

    /// 2-form from (i, j, c) entries meaning c · dx^i ∧ dx^j with i < j.
    pub fn two_form(dims: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut f = FormAtPoint::zero(dims, 2);
        for &(i, j, c) in entries {
            assert!(i < j && j < dims);
            if c != 0.0 {
                *f.coeffs.entry(vec![i as u8, j as u8]).or_insert(0.0) += c;
            }
        }
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn wedge(&self, other: &FormAtPoint) -> FormAtPoint {
        assert_eq!(self.dims, other.dims);
        let mut out = FormAtPoint::zero(self.dims, self.degree + other.degree);
        if out.degree > self.dims {
            return out;
        }
        for (i1, c1) in &self.coeffs {
            for (i2, c2) in &other.coeffs {
                if i1.iter().any(|x| i2.contains(x)) {
                    continue;
                }
                let (idx, sign) = merge_sorted(i1, i2);
                *out.coeffs.entry(idx).or_insert(0.0) += sign * c1 * c2;
            }
        }
        out
    }

    /// Coefficient of dx₁∧dy₁∧…∧dx_n∧dy_n for a top-degree form.
    pub fn top_coefficient(&self) -> f64 {
        assert_eq!(self.degree, self.dims);
        let full: Vec<u8> = (0..self.dims as u8).collect();
        self.coeffs.get(&full).copied().unwrap_or(0.0)
    }

    pub fn eval_one(&self, v: &[f64]) -> f64 {
        assert_eq!(self.degree, 1);
        self.coeffs.iter().map(|(i, c)| c * v[i[0] as usize]).sum()
    }

    pub fn eval_two(&self, u: &[f64], v: &[f64]) -> f64 {
        assert_eq!(self.degree, 2);
        self.coeffs
            .iter()
            .map(|(i, c)| {
                let (p, q) = (i[0] as usize, i[1] as usize);
                c * (u[p] * v[q] - u[q] * v[p])
            })
            .sum()
    }

    /// Evaluate a 2-form on complexified tangent vectors (used to extract
    /// dz_a ∧ dz̄_b coefficients).
    pub fn eval_two_complex(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        assert_eq!(self.degree, 2);
        self.coeffs
            .iter()
            .map(|(i, c)| {
                let (p, q) = (i[0] as usize, i[1] as usize);
                (u[p] * v[q] - u[q] * v[p]) * *c
            })
            .sum()
    }
}

/// Merge two disjoint sorted index tuples; the sign is the parity of the
/// permutation that sorts the concatenation.
fn merge_sorted(a: &[u8], b: &[u8]) -> (Vec<u8>, f64) {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut inversions = 0usize;
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let take_a = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_a {
            out.push(a[i]);
            i += 1;
        } else {
            // b[j] jumps over the remaining a-elements.
            inversions += a.len() - i;
            out.push(b[j]);
            j += 1;
        }
    }
    let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
    (out, sign)
}

/// Realize a complex tangent vector as (Re v₁, Im v₁, …, Re v_n, Im v_n).
pub fn realize(v: &[Complex64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * v.len());
    for z in v {
        out.push(z.re);
        out.push(z.im);
    }
    out
}

/// Complexified basis vector ∂/∂z_a = ½(∂/∂x_a − i ∂/∂y_a).
pub fn dz_basis(n: usize, a: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * n];
    v[2 * a] = Complex64::new(0.5, 0.0);
    v[2 * a + 1] = Complex64::new(0.0, -0.5);
    v
}

/// Complexified basis vector ∂/∂z̄_b = ½(∂/∂x_b + i ∂/∂y_b).
pub fn dzbar_basis(n: usize, b: usize) -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 2 * n];
    v[2 * b] = Complex64::new(0.5, 0.0);
    v[2 * b + 1] = Complex64::new(0.0, 0.5);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_anticommutes_for_one_forms() {
        let a = FormAtPoint::one_form(&[1.0, 2.0, 0.0, -1.0]);
        let b = FormAtPoint::one_form(&[0.5, 0.0, 3.0, 1.0]);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        let u = [0.3, -0.2, 1.4, 0.8];
        let v = [-1.0, 0.6, 0.1, 2.0];
        let x = ab.eval_two(&u, &v);
        assert!((x + ba.eval_two(&u, &v)).abs() < 1e-15);
        // Against the determinant formula a(u)b(v) − a(v)b(u).
        let det = a.eval_one(&u) * b.eval_one(&v) - a.eval_one(&v) * b.eval_one(&u);
        assert!((x - det).abs() < 1e-15);
    }

    #[test]
    fn top_coefficient_of_full_wedge() {
        let e: Vec<FormAtPoint> = (0..4)
            .map(|i| {
                let mut c = [0.0; 4];
                c[i] = 1.0;
                FormAtPoint::one_form(&c)
            })
            .collect();
        let w = e[1].wedge(&e[0]).wedge(&e[2]).wedge(&e[3]);
        assert_eq!(w.top_coefficient(), -1.0);
    }

    #[test]
    fn repeated_index_vanishes() {
        let a = FormAtPoint::one_form(&[1.0, 0.0]);
        assert!(a.wedge(&a).coeffs.is_empty());
    }
}
