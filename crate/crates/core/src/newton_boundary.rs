//! Newton boundary Γ(f), face functions, face-type classification, and a
//! randomized non-degeneracy probe.
//!
//! The boundary is built from the radial support points ν + μ (the radial
//! degree acts on ν_j + μ_j), while each support point keeps its (ν, μ)
//! witnesses because polar degrees act on ν_j − μ_j. Top faces are enumerated
//! exhaustively from n-subsets of the support with exact rational validation;
//! this is O(|support|^n) and intended for desk-scale supports.

use crate::homogeneity::{polar_degree, polar_exponents, WeightVector};
use crate::lattice;
use crate::mixed_poly::{ComplexPoint, ExponentVector, MixedPolynomial, MixedTerm};
use crate::solver::{gauss_newton, GnOptions, GnOutcome};
use crate::{geometry, random};
use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NewtonError {
    #[error("degenerate input: the zero polynomial has no Newton boundary")]
    ZeroPolynomial,
    #[error("not convenient: axes {} carry no pure term", format_axes(.missing_axes))]
    NotConvenient { missing_axes: Vec<usize> },
    #[error("weight vector has dimension {got}, polynomial has {expected}")]
    DimensionMismatch { expected: usize, got: usize },
}

fn format_axes(axes: &[usize]) -> String {
    axes.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// A radial support point ν + μ with the monomials mapping to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportPoint {
    pub point: Vec<u32>,
    pub witnesses: Vec<(ExponentVector, ExponentVector)>,
}

/// Distinct radial support points of p, each with its (ν, μ) witnesses.
pub fn support_points(p: &MixedPolynomial) -> Vec<SupportPoint> {
    let mut map: BTreeMap<Vec<u32>, Vec<(ExponentVector, ExponentVector)>> = BTreeMap::new();
    for (nu, mu, _) in p.iter() {
        let s: Vec<u32> = nu.entries().iter().zip(mu.entries()).map(|(a, b)| a + b).collect();
        map.entry(s).or_default().push((nu.clone(), mu.clone()));
    }
    map.into_iter().map(|(point, witnesses)| SupportPoint { point, witnesses }).collect()
}

/// The face function f_P: the terms of p whose radial P-degree is minimal.
pub fn face_function(p: &MixedPolynomial, weights: &WeightVector) -> Result<MixedPolynomial, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    if weights.len() != p.n() {
        return Err(NewtonError::DimensionMismatch { expected: p.n(), got: weights.len() });
    }
    let degree = |nu: &ExponentVector, mu: &ExponentVector| -> i64 {
        nu.entries()
            .iter()
            .zip(mu.entries())
            .zip(weights.entries())
            .map(|((&a, &b), &w)| i64::from(w) * (i64::from(a) + i64::from(b)))
            .sum()
    };
    let min = p.iter().map(|(nu, mu, _)| degree(nu, mu)).min().expect("nonzero");
    let terms = p
        .iter()
        .filter(|(nu, mu, _)| degree(nu, mu) == min)
        .map(|(nu, mu, c)| MixedTerm { coeff: c.clone(), nu: nu.clone(), mu: mu.clone() });
    Ok(MixedPolynomial::from_terms(p.n(), terms).expect("dims"))
}

/// Convenience: every coordinate axis carries a term supported on it alone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvenienceReport {
    pub convenient: bool,
    /// 0-based axes with no pure term.
    pub missing_axes: Vec<usize>,
    /// Per-axis witness term (ν, μ) when present.
    pub witnesses: Vec<Option<(ExponentVector, ExponentVector)>>,
}

pub fn is_convenient(p: &MixedPolynomial) -> ConvenienceReport {
    let n = p.n();
    let mut witnesses: Vec<Option<(ExponentVector, ExponentVector)>> = vec![None; n];
    for (nu, mu, _) in p.iter() {
        let s: Vec<u32> = nu.entries().iter().zip(mu.entries()).map(|(a, b)| a + b).collect();
        let nonzero: Vec<usize> = (0..n).filter(|&j| s[j] > 0).collect();
        if nonzero.len() == 1 && witnesses[nonzero[0]].is_none() {
            witnesses[nonzero[0]] = Some((nu.clone(), mu.clone()));
        }
    }
    let missing_axes: Vec<usize> = (0..n).filter(|&j| witnesses[j].is_none()).collect();
    ConvenienceReport { convenient: missing_axes.is_empty(), missing_axes, witnesses }
}

/// Face-type classification of one top face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FaceClass {
    /// f_P is polar weighted homogeneous with weight P itself and pdeg_P > 0.
    StronglyPolarPositive,
    /// Some other weight P′ makes f_P polar weighted homogeneous with
    /// positive polar degree.
    PolarPositive { witness: WeightVector, polar_degree: i64 },
    Neither,
}

/// Weakest-face summary, ordered Neither < PolarPositive < StronglyPolarPositive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverallClass {
    Neither,
    PolarPositive,
    StronglyPolarPositive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Primitive strictly positive normal P.
    pub normal: WeightVector,
    /// Affine dimension of the minimizing support set (n − 1 for top faces).
    pub dimension: usize,
    pub face_poly: MixedPolynomial,
    /// Radial P-degree shared by the face terms.
    pub radial_degree: i64,
    pub classification: FaceClass,
}

fn rational_rows(points: &[&Vec<u32>]) -> Vec<Vec<BigRational>> {
    points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(points[0].iter())
                .map(|(&a, &b)| BigRational::from_integer((i64::from(a) - i64::from(b)).into()))
                .collect()
        })
        .collect()
}

fn affine_dimension(points: &[&Vec<u32>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    lattice::rational_rank(&rational_rows(points))
}

fn classify_one_face(face: &MixedPolynomial, normal: &WeightVector) -> FaceClass {
    let terms = face.terms();
    let pdegs: Vec<i64> = terms
        .iter()
        .map(|t| polar_degree(t, normal).expect("dims checked"))
        .collect();
    let strongly = pdegs.windows(2).all(|w| w[0] == w[1]) && pdegs[0] > 0;
    if strongly {
        return FaceClass::StronglyPolarPositive;
    }
    match polar_positive_witness(face) {
        Some((witness, polar_degree)) => FaceClass::PolarPositive { witness, polar_degree },
        None => FaceClass::Neither,
    }
}

/// Search for a strictly positive weight P′ making `face` polar weighted
/// homogeneous with pdeg_{P′} ≥ 1.
fn polar_positive_witness(face: &MixedPolynomial) -> Option<(WeightVector, i64)> {
    let rows: Vec<Vec<i64>> = face.iter().map(|(nu, mu, _)| polar_exponents(nu, mu)).collect();
    let n = rows[0].len();
    let diffs: Vec<Vec<BigInt>> = rows[1..]
        .iter()
        .map(|r| r.iter().zip(&rows[0]).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    let kernel = lattice::integer_kernel(&diffs, n);
    if kernel.is_empty() {
        return None;
    }
    let degree_row: Vec<BigInt> = rows[0].iter().map(|&e| BigInt::from(e)).collect();
    let q = lattice::lexmin_positive(&kernel, &[degree_row], 4096)?;
    let weights: Vec<u32> = q.iter().map(|x| x.to_u32().expect("bounded")).collect();
    let degree: i64 = weights.iter().zip(&rows[0]).map(|(&w, &e)| i64::from(w) * e).sum();
    Some((WeightVector::new(weights).expect("positive"), degree))
}

/// Enumerate the top faces (dim Δ(P) = n − 1) with primitive strictly
/// positive normals, classified.
pub fn top_faces(p: &MixedPolynomial) -> Result<Vec<Face>, NewtonError> {
    if p.is_zero() {
        return Err(NewtonError::ZeroPolynomial);
    }
    let n = p.n();
    let support = support_points(p);
    let points: Vec<&Vec<u32>> = support.iter().map(|s| &s.point).collect();

    let mut faces: Vec<Face> = Vec::new();
    let mut seen: Vec<WeightVector> = Vec::new();

    let mut push_candidate = |normal: WeightVector| -> Result<(), NewtonError> {
        if seen.contains(&normal) {
            return Ok(());
        }
        let deg = |s: &Vec<u32>| -> i64 {
            s.iter().zip(normal.entries()).map(|(&e, &w)| i64::from(e) * i64::from(w)).sum()
        };
        let min = points.iter().map(|s| deg(s)).min().expect("nonempty");
        let minimizers: Vec<&Vec<u32>> = points.iter().copied().filter(|s| deg(s) == min).collect();
        if affine_dimension(&minimizers) != n - 1 {
            return Ok(());
        }
        let face_poly = face_function(p, &normal)?;
        let classification = classify_one_face(&face_poly, &normal);
        seen.push(normal.clone());
        faces.push(Face {
            normal,
            dimension: n - 1,
            face_poly,
            radial_degree: min,
            classification,
        });
        Ok(())
    };

    if n == 1 {
        push_candidate(WeightVector::ones(1))?;
    } else {
        for combo in combinations(points.len(), n) {
            let subset: Vec<&Vec<u32>> = combo.iter().map(|&i| points[i]).collect();
            let rows = rational_rows(&subset);
            if lattice::rational_rank(&rows) != n - 1 {
                continue;
            }
            let ns = lattice::rational_nullspace(&rows, n);
            debug_assert_eq!(ns.len(), 1);
            let normal = lattice::primitive_integer(&ns[0]);
            if normal.iter().any(|x| x <= &BigInt::from(0)) {
                continue;
            }
            let entries: Vec<u32> = normal.iter().map(|x| x.to_u32().expect("desk scale")).collect();
            push_candidate(WeightVector::new(entries).expect("positive"))?;
        }
    }
    faces.sort_by(|a, b| a.normal.entries().cmp(b.normal.entries()));
    Ok(faces)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonBoundaryReport {
    pub convenient: bool,
    pub top_faces: Vec<Face>,
    pub overall: OverallClass,
    /// Random lower-dimensional weight vectors probed for classification
    /// inheritance, and any that failed it.
    pub subface_trials: usize,
    pub subface_failures: Vec<WeightVector>,
}

const DEFAULT_SUBFACE_SEED: u64 = 0x6641_6365;
const SUBFACE_TRIALS: usize = 20;

pub fn classify_face_type(p: &MixedPolynomial) -> Result<NewtonBoundaryReport, NewtonError> {
    classify_face_type_seeded(p, DEFAULT_SUBFACE_SEED)
}

pub fn classify_face_type_seeded(
    p: &MixedPolynomial,
    seed: u64,
) -> Result<NewtonBoundaryReport, NewtonError> {
    let conv = is_convenient(p);
    if !conv.convenient {
        return Err(NewtonError::NotConvenient { missing_axes: conv.missing_axes });
    }
    let faces = top_faces(p)?;
    let overall = faces
        .iter()
        .map(|f| match f.classification {
            FaceClass::StronglyPolarPositive => OverallClass::StronglyPolarPositive,
            FaceClass::PolarPositive { .. } => OverallClass::PolarPositive,
            FaceClass::Neither => OverallClass::Neither,
        })
        .min()
        .unwrap_or(OverallClass::Neither);

    // Inheritance check: arbitrary positive weights cut lower-dimensional
    // faces, and those must carry at least the overall classification.
    let mut rng = random::substream(seed, 0);
    let mut failures = Vec::new();
    for _ in 0..SUBFACE_TRIALS {
        let w = WeightVector::new((0..p.n()).map(|_| rng.gen_range(1..=6u32)).collect())
            .expect("positive")
            .primitive();
        let sub = face_function(p, &w).expect("nonzero");
        let ok = match overall {
            OverallClass::StronglyPolarPositive => {
                let terms = sub.terms();
                let degs: Vec<i64> =
                    terms.iter().map(|t| polar_degree(t, &w).expect("dims")).collect();
                degs.windows(2).all(|x| x[0] == x[1]) && degs[0] > 0
            }
            OverallClass::PolarPositive => polar_positive_witness(&sub).is_some(),
            OverallClass::Neither => true,
        };
        if !ok {
            failures.push(w);
        }
    }

    Ok(NewtonBoundaryReport {
        convenient: true,
        top_faces: faces,
        overall,
        subface_trials: SUBFACE_TRIALS,
        subface_failures: failures,
    })
}

/// Randomized probe for Newton non-degeneracy of the top faces.
///
/// For each top face f_P, points of {f_P = 0} ∩ S₁ ∩ (ℂ*)ⁿ are produced by
/// Gauss–Newton from random sphere seeds and the mixed-criticality residual
/// min_{|α|=1} ‖conj(∇_∂ f_P) − α ∇_∂̄ f_P‖ is evaluated, normalized by the
/// RMS gradient magnitude of f_P on the unit sphere. A residual below `tol`
/// is a *suspected* degeneracy witness: the probe is randomized evidence, not
/// a decision procedure, and a clean pass only means "no witness found".
pub fn nondegeneracy_probe(
    p: &MixedPolynomial,
    trials: usize,
    tol: f64,
    seed: u64,
) -> Result<ProbeReport, NewtonError> {
    assert!(trials >= 1, "trials must be at least 1");
    let faces = top_faces(p)?;
    let n = p.n();
    let mut face_probes = Vec::new();
    for (fi, face) in faces.iter().enumerate() {
        let derivs = geometry::Derivatives::of(&face.face_poly);
        let re = geometry::Derivatives::of(&face.face_poly.real_part());
        let im_poly = face.face_poly.imag_part();
        let im = if im_poly.is_zero() { None } else { Some(geometry::Derivatives::of(&im_poly)) };
        let scale = gradient_scale(&derivs, seed ^ 0x5ca1e, n);

        let mut probe = FaceProbe {
            normal: face.normal.clone(),
            attempted: trials,
            converged: 0,
            torus_points: 0,
            failed: 0,
            min_residual: None,
            witness: None,
        };
        for t in 0..trials {
            let mut rng = random::substream(seed, (fi * trials + t) as u64);
            let seed_pt =
                random::random_sphere_point(n, 1.0, &WeightVector::ones(n), &mut rng);
            match project_to_face_zero_set(&re, im.as_ref(), &seed_pt) {
                Some(z) => {
                    probe.converged += 1;
                    if z.iter().any(|c| c.norm() < 1e-3) {
                        continue; // off-torus solution
                    }
                    probe.torus_points += 1;
                    let res = criticality_residual(&derivs, &z) / scale;
                    if probe.min_residual.map(|m| res < m).unwrap_or(true) {
                        probe.min_residual = Some(res);
                    }
                    if res < tol && probe.witness.is_none() {
                        probe.witness = Some((z, res));
                    }
                }
                None => probe.failed += 1,
            }
        }
        face_probes.push(probe);
    }
    let min_residual = face_probes.iter().filter_map(|f| f.min_residual).fold(None, |acc, r| {
        Some(match acc {
            None => r,
            Some(a) if r < a => r,
            Some(a) => a,
        })
    });
    let witness_found = face_probes.iter().any(|f| f.witness.is_some());
    Ok(ProbeReport {
        faces: face_probes,
        min_residual,
        witness_found,
        trials,
        tol,
        note: "non-degeneracy: probed, not proven",
    })
}

#[derive(Clone, Debug)]
pub struct FaceProbe {
    pub normal: WeightVector,
    pub attempted: usize,
    pub converged: usize,
    /// Converged points with all coordinates bounded away from zero.
    pub torus_points: usize,
    pub failed: usize,
    pub min_residual: Option<f64>,
    pub witness: Option<(ComplexPoint, f64)>,
}

#[derive(Clone, Debug)]
pub struct ProbeReport {
    pub faces: Vec<FaceProbe>,
    pub min_residual: Option<f64>,
    pub witness_found: bool,
    pub trials: usize,
    pub tol: f64,
    pub note: &'static str,
}

/// RMS gradient magnitude of the face polynomial over unit-sphere points.
fn gradient_scale(derivs: &geometry::Derivatives, seed: u64, n: usize) -> f64 {
    let mut acc = 0.0;
    let mut count = 0usize;
    for i in 0..32u64 {
        let mut rng = random::substream(seed, i);
        let z = random::random_sphere_point(n, 1.0, &WeightVector::ones(n), &mut rng);
        let b = derivs.bundle(&z).expect("dims");
        acc += b.del.iter().chain(&b.delbar).map(|c| c.norm_sqr()).sum::<f64>();
        count += 1;
    }
    (acc / count as f64).sqrt().max(1e-30)
}

/// min over |α| = 1 of ‖conj(∇_∂ f) − α ∇_∂̄ f‖ at z:
/// √(‖u‖² + ‖v‖² − 2|(u, v)|).
fn criticality_residual(derivs: &geometry::Derivatives, z: &[Complex64]) -> f64 {
    let b = derivs.bundle(z).expect("dims");
    let u: Vec<Complex64> = b.del.iter().map(|c| c.conj()).collect();
    let v = &b.delbar;
    let nu: f64 = u.iter().map(|c| c.norm_sqr()).sum();
    let nv: f64 = v.iter().map(|c| c.norm_sqr()).sum();
    let cross = geometry::hermitian(&u, v).norm();
    (nu + nv - 2.0 * cross).max(0.0).sqrt()
}

/// Gauss–Newton projection onto {Re f = 0, Im f = 0, ρ = 1}.
fn project_to_face_zero_set(
    re: &geometry::Derivatives,
    im: Option<&geometry::Derivatives>,
    seed_pt: &[Complex64],
) -> Option<ComplexPoint> {
    let n = seed_pt.len();
    let rows = 1 + 1 + usize::from(im.is_some());
    let system = |x: &DVector<f64>| -> (DVector<f64>, DMatrix<f64>) {
        let z: Vec<Complex64> =
            (0..n).map(|j| Complex64::new(x[2 * j], x[2 * j + 1])).collect();
        let mut res = DVector::zeros(rows);
        let mut jac = DMatrix::zeros(rows, 2 * n);
        res[0] = geometry::rho(&z) - 1.0;
        for j in 0..n {
            jac[(0, 2 * j)] = 2.0 * z[j].re;
            jac[(0, 2 * j + 1)] = 2.0 * z[j].im;
        }
        let mut fill = |row: usize, d: &geometry::Derivatives| {
            let b = d.bundle(&z).expect("dims");
            res[row] = b.value.re;
            let herm = b.hermitian.as_ref().expect("real-valued part");
            for j in 0..n {
                jac[(row, 2 * j)] = herm[j].re;
                jac[(row, 2 * j + 1)] = herm[j].im;
            }
        };
        fill(1, re);
        if let Some(im) = im {
            fill(2, im);
        }
        (res, jac)
    };
    let x0 = DVector::from_vec(forms_realize(seed_pt));
    let opts = GnOptions { max_iter: 100, tol: 1e-10 };
    match gauss_newton(x0, system, &opts) {
        GnOutcome::Converged { x, .. } => {
            Some((0..n).map(|j| Complex64::new(x[2 * j], x[2 * j + 1])).collect())
        }
        GnOutcome::Failed => None,
    }
}

fn forms_realize(v: &[Complex64]) -> Vec<f64> {
    geometry::forms::realize(v)
}
