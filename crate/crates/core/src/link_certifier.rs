//! Numerical sampling of the link K_r = g⁻¹(0) ∩ S_r and sampled certification
//! of transversality, the sign of the certificate C, and open-book
//! compatibility.
//!
//! Samples come from damped Gauss–Newton projection of random sphere seeds
//! onto the real constraint set {ρ_a = r², Re g = 0, Im g = 0} (or onto the
//! tube {ρ_a = r², |g| = δ} for off-link sampling). Every verdict is explicitly
//! a *sampled* verdict: reports carry sample counts, margins and failure
//! witnesses so coverage can be judged, and no check ever claims a proof.
//!
//! Determinism: each trial draws from an independent substream of the root
//! seed, so identical configurations produce identical sample sets and
//! byte-identical serialized reports.

use crate::covering::{pullback, CoveringError, CoveringSpec};
use crate::geometry::{self, Derivatives};
use crate::homogeneity::{detect_weights, WeightVector};
use crate::mixed_poly::{ComplexPoint, MixedPolynomial};
use crate::random;
use crate::solver::{gauss_newton, min_singular_value_row_normalized, GnOptions, GnOutcome};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinkError {
    #[error("degenerate input: the zero polynomial has no link")]
    ZeroPolynomial,
    #[error("link sampling requires dimension ≥ 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("sphere weights have dimension {got}, polynomial has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tube radius δ = {0:e} is below the zero-set tolerance")]
    TubeTooThin(f64),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error(transparent)]
    Geometry(#[from] geometry::GeometryError),
}

/// Sampling configuration; also echoed verbatim into every report.
#[derive(Clone, Debug, Serialize)]
pub struct SampleConfig {
    pub radius: f64,
    pub sphere_weights: WeightVector,
    pub n_samples: usize,
    pub max_iter: usize,
    /// Acceptance bound for |g| and |ρ_a − r²| at converged points.
    pub tol_residual: f64,
    /// Smoothness threshold on the minimum singular value of the
    /// row-normalized constraint Jacobian.
    pub tol_rank: f64,
    pub seed: u64,
    /// Off-link sampling targets |g| = δ with δ = tube_delta · r^{m_r} for
    /// radially homogeneous g (empirical |g| scale otherwise).
    pub tube_delta: f64,
    /// Certificate values within ±tol of zero make a sample inconclusive.
    pub tol_certificate: f64,
}

impl SampleConfig {
    pub fn new(n: usize) -> Self {
        SampleConfig {
            radius: 1.0,
            sphere_weights: WeightVector::ones(n),
            n_samples: 200,
            max_iter: 100,
            tol_residual: 1e-11,
            tol_rank: 1e-8,
            seed: 0,
            tube_delta: 0.05,
            tol_certificate: 1e-12,
        }
    }
}

/// One accepted link sample.
#[derive(Clone, Debug)]
pub struct LinkSample {
    pub point: ComplexPoint,
    pub residual_g: f64,
    pub residual_rho: f64,
    /// Minimum singular value of the row-normalized 3×2n Jacobian of
    /// (ρ_a, Re g, Im g).
    pub jacobian_min_sv: f64,
    pub smooth: bool,
}

#[derive(Clone, Debug)]
pub struct SampleBatch {
    pub samples: Vec<LinkSample>,
    pub attempted: usize,
    pub failed: usize,
}

#[derive(Clone, Debug)]
pub struct OffLinkBatch {
    pub points: Vec<ComplexPoint>,
    pub attempted: usize,
    pub failed: usize,
    /// Realized tube radius δ.
    pub delta: f64,
}

fn validate(g: &MixedPolynomial, cfg: &SampleConfig) -> Result<(), LinkError> {
    if g.is_zero() {
        return Err(LinkError::ZeroPolynomial);
    }
    if g.n() < 2 {
        return Err(LinkError::DimensionTooSmall(g.n()));
    }
    if cfg.sphere_weights.len() != g.n() {
        return Err(LinkError::DimensionMismatch {
            expected: g.n(),
            got: cfg.sphere_weights.len(),
        });
    }
    Ok(())
}

fn to_point(x: &DVector<f64>, n: usize) -> ComplexPoint {
    (0..n).map(|j| Complex64::new(x[2 * j], x[2 * j + 1])).collect()
}

fn write_hermitian_row(jac: &mut DMatrix<f64>, row: usize, grad: &[Complex64]) {
    for (j, h) in grad.iter().enumerate() {
        jac[(row, 2 * j)] = h.re;
        jac[(row, 2 * j + 1)] = h.im;
    }
}

/// Gauss–Newton projection of uniformly random weighted-sphere seeds onto
/// {ρ_a = r², Re g = 0, Im g = 0}. Non-converged seeds are counted, never
/// silently dropped into the output.
pub fn sample_link(g: &MixedPolynomial, cfg: &SampleConfig) -> Result<SampleBatch, LinkError> {
    validate(g, cfg)?;
    let n = g.n();
    let derivs = Derivatives::of(g);
    let r_sq = cfg.radius * cfg.radius;
    let weights = cfg.sphere_weights.clone();

    let system = |x: &DVector<f64>| -> (DVector<f64>, DMatrix<f64>) {
        let z = to_point(x, n);
        let b = derivs.bundle(&z).expect("dims");
        let (rho_a, rho_grad) = geometry::weighted_radius(&z, &weights);
        let mut res = DVector::zeros(3);
        let mut jac = DMatrix::zeros(3, 2 * n);
        res[0] = rho_a - r_sq;
        write_hermitian_row(&mut jac, 0, &rho_grad);
        res[1] = b.value.re;
        let grad_re: Vec<Complex64> = b
            .del
            .iter()
            .zip(&b.delbar)
            .map(|(dz, dzb)| dz.conj() + dzb)
            .collect();
        write_hermitian_row(&mut jac, 1, &grad_re);
        res[2] = b.value.im;
        let grad_im: Vec<Complex64> = b
            .del
            .iter()
            .zip(&b.delbar)
            .map(|(dz, dzb)| Complex64::i() * (dz.conj() - dzb))
            .collect();
        write_hermitian_row(&mut jac, 2, &grad_im);
        (res, jac)
    };

    let opts = GnOptions { max_iter: cfg.max_iter, tol: cfg.tol_residual / 2.0 };
    let mut samples = Vec::new();
    let mut failed = 0usize;
    for t in 0..cfg.n_samples {
        let mut rng = random::substream(cfg.seed, t as u64);
        let seed_pt = random::random_sphere_point(n, cfg.radius, &weights, &mut rng);
        let x0 = DVector::from_vec(geometry::forms::realize(&seed_pt));
        match gauss_newton(x0, system, &opts) {
            GnOutcome::Converged { x, .. } => {
                let z = to_point(&x, n);
                let residual_g = g.evaluate(&z).expect("dims").norm();
                let (rho_a, _) = geometry::weighted_radius(&z, &weights);
                let residual_rho = (rho_a - r_sq).abs();
                if residual_g > cfg.tol_residual || residual_rho > cfg.tol_residual {
                    failed += 1;
                    continue;
                }
                let (_, jac) = system(&x);
                let min_sv = min_singular_value_row_normalized(&jac);
                samples.push(LinkSample {
                    point: z,
                    residual_g,
                    residual_rho,
                    jacobian_min_sv: min_sv,
                    smooth: min_sv >= cfg.tol_rank,
                });
            }
            GnOutcome::Failed => failed += 1,
        }
    }
    Ok(SampleBatch { samples, attempted: cfg.n_samples, failed })
}

/// Tube radius δ for off-link sampling: tube_delta · r^{m_r} when g is
/// radially homogeneous with unit weights (so |g| scales uniformly like
/// r^{m_r} on S_r), otherwise tube_delta times the median |g| over a handful
/// of sphere seeds.
fn tube_radius(g: &MixedPolynomial, cfg: &SampleConfig) -> f64 {
    if let Ok(rep) = detect_weights(g) {
        if let Some(rad) = rep.radial {
            if rad.weights == WeightVector::ones(g.n()) {
                return cfg.tube_delta * cfg.radius.powi(rad.degree as i32);
            }
        }
    }
    let mut mags: Vec<f64> = (0..16u64)
        .map(|i| {
            let mut rng = random::substream(cfg.seed ^ 0x70BE, i);
            let z = random::random_sphere_point(g.n(), cfg.radius, &cfg.sphere_weights, &mut rng);
            g.evaluate(&z).expect("dims").norm()
        })
        .collect();
    mags.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    cfg.tube_delta * mags[mags.len() / 2].max(1e-12)
}

/// Sample the tube {ρ_a = r², |g| = δ} off the link, for quantities that need
/// g ≠ 0 (phase gradient, Reeb pairing, v-decomposition).
pub fn sample_off_link(g: &MixedPolynomial, cfg: &SampleConfig) -> Result<OffLinkBatch, LinkError> {
    validate(g, cfg)?;
    let n = g.n();
    let derivs = Derivatives::of(g);
    let r_sq = cfg.radius * cfg.radius;
    let weights = cfg.sphere_weights.clone();
    let delta = tube_radius(g, cfg);
    if delta <= 1e-10 {
        return Err(LinkError::TubeTooThin(delta));
    }
    let delta_sq = delta * delta;

    let system = |x: &DVector<f64>| -> (DVector<f64>, DMatrix<f64>) {
        let z = to_point(x, n);
        let b = derivs.bundle(&z).expect("dims");
        let (rho_a, rho_grad) = geometry::weighted_radius(&z, &weights);
        let mut res = DVector::zeros(2);
        let mut jac = DMatrix::zeros(2, 2 * n);
        res[0] = rho_a - r_sq;
        write_hermitian_row(&mut jac, 0, &rho_grad);
        // Dimensionless tube constraint (|g|² − δ²)/δ².
        res[1] = (b.value.norm_sqr() - delta_sq) / delta_sq;
        let grad: Vec<Complex64> = b
            .del
            .iter()
            .zip(&b.delbar)
            .map(|(dz, dzb)| {
                (2.0 * b.value * dz.conj() + 2.0 * b.value.conj() * dzb) / delta_sq
            })
            .collect();
        write_hermitian_row(&mut jac, 1, &grad);
        (res, jac)
    };

    let opts = GnOptions { max_iter: cfg.max_iter, tol: cfg.tol_residual.max(1e-12) };
    let mut points = Vec::new();
    let mut failed = 0usize;
    for t in 0..cfg.n_samples {
        let mut rng = random::substream(cfg.seed ^ 0x0ff1, t as u64);
        let seed_pt = random::random_sphere_point(n, cfg.radius, &weights, &mut rng);
        let x0 = DVector::from_vec(geometry::forms::realize(&seed_pt));
        match gauss_newton(x0, system, &opts) {
            GnOutcome::Converged { x, .. } => points.push(to_point(&x, n)),
            GnOutcome::Failed => failed += 1,
        }
    }
    Ok(OffLinkBatch { points, attempted: cfg.n_samples, failed, delta })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CertifiedOnSamples,
    Violated,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    /// Coordinates as (re, im) pairs.
    pub point: Vec<[f64; 2]>,
    pub value: f64,
}

fn witness_of(pt: &[Complex64], value: f64) -> Witness {
    Witness { point: pt.iter().map(|z| [z.re, z.im]).collect(), value }
}

#[derive(Clone, Debug, Serialize)]
pub struct Margins {
    pub min: f64,
    pub max: f64,
    pub p25: f64,
    pub p50: f64,
    pub p75: f64,
}

fn margins_of(values: &[f64]) -> Option<Margins> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let q = |p: f64| -> f64 { v[((v.len() - 1) as f64 * p).round() as usize] };
    Some(Margins { min: v[0], max: v[v.len() - 1], p25: q(0.25), p50: q(0.5), p75: q(0.75) })
}

/// Sampled certification verdict; the JSON schema is stable:
/// check, verdict, margin, margins, samples, attempted, failed, excluded,
/// witness?, c_threshold?, config, note.
#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub check: String,
    pub verdict: Verdict,
    /// Headline margin of the certified quantity (check-specific).
    pub margin: Option<f64>,
    pub margins: Option<Margins>,
    /// Samples the verdict is based on.
    pub samples: usize,
    pub attempted: usize,
    pub failed: usize,
    /// Accepted samples excluded as non-smooth (inconclusive mass).
    pub excluded: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Open-book check: dθ(R_c) > 0 at all samples for every c > c_threshold.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_threshold: Option<f64>,
    pub config: SampleConfig,
    pub note: &'static str,
}

const SAMPLED_NOTE: &str = "certified-on-samples is a sampled verdict, not a proof";

fn inconclusive(check: &str, cfg: &SampleConfig, attempted: usize, failed: usize) -> CertificationReport {
    CertificationReport {
        check: check.to_string(),
        verdict: Verdict::Inconclusive,
        margin: None,
        margins: None,
        samples: 0,
        attempted,
        failed,
        excluded: 0,
        witness: None,
        c_threshold: None,
        config: cfg.clone(),
        note: SAMPLED_NOTE,
    }
}

/// Transversality of the sphere and g⁻¹(0) over the samples: certified when
/// every accepted sample has jacobian_min_sv ≥ tol_rank.
pub fn transversality_check(
    g: &MixedPolynomial,
    cfg: &SampleConfig,
) -> Result<CertificationReport, LinkError> {
    let batch = sample_link(g, cfg)?;
    if batch.samples.is_empty() {
        return Ok(inconclusive("transversality", cfg, batch.attempted, batch.failed));
    }
    let values: Vec<f64> = batch.samples.iter().map(|s| s.jacobian_min_sv).collect();
    let (worst_idx, worst) = values
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        .expect("nonempty");
    let ok = *worst >= cfg.tol_rank;
    Ok(CertificationReport {
        check: "transversality".to_string(),
        verdict: if ok { Verdict::CertifiedOnSamples } else { Verdict::Violated },
        margin: Some(*worst),
        margins: margins_of(&values),
        samples: batch.samples.len(),
        attempted: batch.attempted,
        failed: batch.failed,
        excluded: 0,
        witness: if ok {
            None
        } else {
            Some(witness_of(&batch.samples[worst_idx].point, *worst))
        },
        c_threshold: None,
        config: cfg.clone(),
        note: SAMPLED_NOTE,
    })
}

/// Sign certification of C over smooth link samples.
pub fn certify_holomorphic_like(
    g: &MixedPolynomial,
    cfg: &SampleConfig,
    expected: Sign,
) -> Result<CertificationReport, LinkError> {
    let batch = sample_link(g, cfg)?;
    let derivs = Derivatives::of(g);
    let smooth: Vec<&LinkSample> = batch.samples.iter().filter(|s| s.smooth).collect();
    let excluded = batch.samples.len() - smooth.len();
    if smooth.is_empty() {
        let mut rep = inconclusive("holomorphic-like", cfg, batch.attempted, batch.failed);
        rep.excluded = excluded;
        return Ok(rep);
    }
    let mut values = Vec::with_capacity(smooth.len());
    for s in &smooth {
        let bundle = derivs.bundle(&s.point)?;
        let cert = geometry::c_certificate_from(&bundle, &s.point)?;
        values.push((cert.total, s.point.clone()));
    }
    // Indeterminate certificates first: they block any verdict.
    if let Some((v, pt)) = values
        .iter()
        .find(|(v, _)| v.abs() <= cfg.tol_certificate)
        .cloned()
    {
        let mut rep = inconclusive("holomorphic-like", cfg, batch.attempted, batch.failed);
        rep.samples = smooth.len();
        rep.excluded = excluded;
        rep.witness = Some(witness_of(&pt, v));
        rep.margins = margins_of(&values.iter().map(|(v, _)| *v).collect::<Vec<_>>());
        return Ok(rep);
    }
    let sign_ok = |v: f64| match expected {
        Sign::Positive => v > 0.0,
        Sign::Negative => v < 0.0,
    };
    let offenders: Vec<&(f64, ComplexPoint)> =
        values.iter().filter(|(v, _)| !sign_ok(*v)).collect();
    let raw: Vec<f64> = values.iter().map(|(v, _)| *v).collect();
    let margin = raw.iter().map(|v| v.abs()).fold(f64::INFINITY, f64::min);
    let verdict_ok = offenders.is_empty();
    let witness = if verdict_ok {
        None
    } else {
        let (v, pt) = offenders
            .iter()
            .max_by(|a, b| a.0.abs().partial_cmp(&b.0.abs()).expect("finite"))
            .expect("nonempty");
        Some(witness_of(pt, *v))
    };
    Ok(CertificationReport {
        check: "holomorphic-like".to_string(),
        verdict: if verdict_ok { Verdict::CertifiedOnSamples } else { Verdict::Violated },
        margin: Some(margin),
        margins: margins_of(&raw),
        samples: smooth.len(),
        attempted: batch.attempted,
        failed: batch.failed,
        excluded,
        witness,
        c_threshold: None,
        config: cfg.clone(),
        note: SAMPLED_NOTE,
    })
}

/// Open-book compatibility of the pull-back g = f ∘ φ_{a,b} over off-link
/// samples: reports whether dθ(R) > 0 already (c_threshold = 0), or the
/// smallest c with dθ(R_c) > 0 at every sample, and flags samples where the
/// correction vanishes while dθ(R) ≤ 0 (no c can help there).
pub fn certify_open_book(
    f: &MixedPolynomial,
    spec: &CoveringSpec,
    cfg: &SampleConfig,
) -> Result<CertificationReport, LinkError> {
    let g = pullback(f, spec)?;
    let batch = sample_off_link(&g, cfg)?;
    if batch.points.is_empty() {
        return Ok(inconclusive("open-book", cfg, batch.attempted, batch.failed));
    }
    let mut dtheta = Vec::with_capacity(batch.points.len());
    let mut c_threshold: f64 = 0.0;
    let mut hard_witness: Option<Witness> = None;
    for pt in &batch.points {
        let terms = geometry::open_book_terms(f, spec, pt)?;
        dtheta.push(terms.dtheta_r);
        if terms.dtheta_r <= 0.0 {
            let af = f64::from(spec.a()[0]);
            let bf = f64::from(spec.b()[0]);
            // Natural scale of the correction: |a² − b²|·|g|²·γ. A correction
            // at or below tol of that scale is numerically parallel (or of the
            // wrong sign): no c can rescue such a sample.
            let corr_scale = (af * af - bf * bf).abs() * terms.g_value.norm_sqr() * terms.gamma;
            if terms.correction <= cfg.tol_certificate * corr_scale {
                if hard_witness.is_none() {
                    hard_witness = Some(witness_of(pt, terms.dtheta_r));
                }
            } else {
                let g_sq = terms.g_value.norm_sqr();
                let needed = -2.0 * g_sq * terms.dtheta_r / terms.correction;
                c_threshold = c_threshold.max(needed);
            }
        }
    }
    let margin = dtheta.iter().copied().fold(f64::INFINITY, f64::min);
    let verdict = if hard_witness.is_some() {
        Verdict::Violated
    } else {
        Verdict::CertifiedOnSamples
    };
    Ok(CertificationReport {
        check: "open-book".to_string(),
        verdict,
        margin: Some(margin),
        margins: margins_of(&dtheta),
        samples: batch.points.len(),
        attempted: batch.attempted,
        failed: batch.failed,
        excluded: 0,
        witness: hard_witness,
        c_threshold: Some(c_threshold),
        config: cfg.clone(),
        note: SAMPLED_NOTE,
    })
}

#[cfg(test)]
mod tests;
