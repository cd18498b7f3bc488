//! Damped Gauss–Newton projection onto low-codimension constraint sets in ℝᵐ.
//!
//! Each step solves the minimum-norm least-squares system J·Δ = −F through an
//! SVD pseudo-inverse and backtracks by step halving on the residual norm.

use nalgebra::{DMatrix, DVector};

pub(crate) struct GnOptions {
    pub max_iter: usize,
    /// Convergence once ‖F‖_∞ ≤ tol.
    pub tol: f64,
}

pub(crate) enum GnOutcome {
    Converged { x: DVector<f64> },
    Failed,
}

/// `system` returns (residual vector F, Jacobian J) at a point.
pub(crate) fn gauss_newton<F>(x0: DVector<f64>, system: F, opts: &GnOptions) -> GnOutcome
where
    F: Fn(&DVector<f64>) -> (DVector<f64>, DMatrix<f64>),
{
    let mut x = x0;
    let (mut res, mut jac) = system(&x);
    for _ in 0..opts.max_iter {
        if res.amax() <= opts.tol {
            return GnOutcome::Converged { x };
        }
        let svd = jac.clone().svd(true, true);
        let sv_max = svd.singular_values.amax();
        if sv_max == 0.0 || !sv_max.is_finite() {
            return GnOutcome::Failed;
        }
        let eps = sv_max * 1e-13;
        let Ok(delta) = svd.solve(&(-&res), eps) else {
            return GnOutcome::Failed;
        };
        let old_norm = res.norm();
        let mut t = 1.0;
        let mut advanced = false;
        for _ in 0..40 {
            let cand = &x + t * &delta;
            let (cres, cjac) = system(&cand);
            if cres.norm() < old_norm {
                x = cand;
                res = cres;
                jac = cjac;
                advanced = true;
                break;
            }
            t *= 0.5;
        }
        if !advanced {
            return GnOutcome::Failed;
        }
    }
    if res.amax() <= opts.tol {
        GnOutcome::Converged { x }
    } else {
        GnOutcome::Failed
    }
}

/// Minimum singular value of the row-normalized Jacobian. Rows with norm zero
/// make the matrix rank-deficient and yield 0 directly.
pub(crate) fn min_singular_value_row_normalized(jac: &DMatrix<f64>) -> f64 {
    let mut m = jac.clone();
    for mut row in m.row_iter_mut() {
        let norm = row.norm();
        if norm == 0.0 || !norm.is_finite() {
            return 0.0;
        }
        row /= norm;
    }
    let svd = m.svd(false, false);
    svd.singular_values.min()
}
