//! Pointwise contact-geometric quantities of a mixed polynomial.
//!
//! Everything here evaluates at a single point of ℂⁿ: hermitian gradients, the
//! weighted radius, the certificate matrix C_{a,b}, the phase gradient ∇θ of
//! g/|g|, the Reeb pairing dθ(R), the v-decomposition behind the modified
//! contact form e^{−c|g|²}α, and a numerical exterior-algebra verifier for the
//! top-form identity relating dρ ∧ α ∧ (dα)^{n−2} ∧ d(Re g) ∧ d(Im g) to C.
//!
//! Conventions: ρ(z) = Σ|z_j|², the contact form is α = 2Σ(x_j dy_j − y_j dx_j)
//! with ω = dα = 4Σ dx_j ∧ dy_j, and the Reeb field of α|_{S_r} is
//! R = iz/(2ρ). The Reeb pairing reported by [`reeb_pairing`] is normalized
//! scale-invariantly by pairing dθ against the rotation field 2iz = 4ρ·R, so a
//! strongly polar weighted homogeneous g of polar degree m_p pairs to 2·m_p at
//! every point off its zero set, independent of the radius.

pub mod forms;

use crate::covering::{CoveringError, CoveringSpec};
use crate::homogeneity::WeightVector;
use crate::mixed_poly::{cpow, MixedPolynomial, MixedPolyError};
use forms::FormAtPoint;
use num_complex::Complex64;
use thiserror::Error;

/// Points with |g| at or below this are treated as lying on the zero set for
/// phase computations.
pub const ON_ZERO_SET_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeometryError {
    #[error(transparent)]
    Poly(#[from] MixedPolyError),
    #[error(transparent)]
    Covering(#[from] CoveringError),
    #[error("point lies on the zero set of g (|g| ≤ {ON_ZERO_SET_TOL:e})")]
    OnZeroSet,
    #[error("point is the origin")]
    AtOrigin,
    #[error("operation requires dimension ≥ 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("wedge verification supports n ∈ {{2, 3}}, got {0}")]
    UnsupportedDimension(usize),
    #[error("input must be holomorphic")]
    NotHolomorphic,
}

/// A polynomial together with its 2n symbolic Wirtinger derivatives,
/// precomputed once so per-point evaluation is a pure arithmetic pass.
#[derive(Clone, Debug)]
pub struct Derivatives {
    poly: MixedPolynomial,
    dz: Vec<MixedPolynomial>,
    dzbar: Vec<MixedPolynomial>,
    real_valued: bool,
}

impl Derivatives {
    pub fn of(p: &MixedPolynomial) -> Self {
        let n = p.n();
        Derivatives {
            poly: p.clone(),
            dz: (0..n).map(|j| p.wirtinger_dz(j).expect("j < n")).collect(),
            dzbar: (0..n).map(|j| p.wirtinger_dzbar(j).expect("j < n")).collect(),
            real_valued: p.is_real_valued(),
        }
    }

    pub fn poly(&self) -> &MixedPolynomial {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn bundle(&self, pt: &[Complex64]) -> Result<GradientBundle, GeometryError> {
        let value = self.poly.evaluate(pt)?;
        let del: Vec<Complex64> = self
            .dz
            .iter()
            .map(|d| d.evaluate(pt).expect("dimension checked above"))
            .collect();
        let delbar: Vec<Complex64> = self
            .dzbar
            .iter()
            .map(|d| d.evaluate(pt).expect("dimension checked above"))
            .collect();
        let hermitian = if self.real_valued {
            Some(del.iter().map(|d| 2.0 * d.conj()).collect())
        } else {
            None
        };
        Ok(GradientBundle { value, del, delbar, hermitian })
    }
}

/// First-order data of g at a point: ∇_∂ g = (g_{z_1}, …), ∇_∂̄ g, and — for
/// real-valued g — the hermitian gradient ∇g = 2·conj(∇_∂ g).
#[derive(Clone, Debug)]
pub struct GradientBundle {
    pub value: Complex64,
    pub del: Vec<Complex64>,
    pub delbar: Vec<Complex64>,
    pub hermitian: Option<Vec<Complex64>>,
}

pub fn gradient_bundle(g: &MixedPolynomial, pt: &[Complex64]) -> Result<GradientBundle, GeometryError> {
    Derivatives::of(g).bundle(pt)
}

/// Hermitian inner product (u, v) = Σ u_j conj(v_j).
pub fn hermitian(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn norm_sq(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// ρ_a(z) = Σ a_j |z_j|² and its hermitian gradient 2(a₁z₁, …, a_n z_n).
pub fn weighted_radius(pt: &[Complex64], a: &WeightVector) -> (f64, Vec<Complex64>) {
    let value = pt
        .iter()
        .zip(a.entries())
        .map(|(z, &w)| f64::from(w) * z.norm_sqr())
        .sum();
    let grad = pt
        .iter()
        .zip(a.entries())
        .map(|(z, &w)| 2.0 * f64::from(w) * z)
        .collect();
    (value, grad)
}

/// Standard squared radius ρ(z) = Σ |z_j|².
pub fn rho(pt: &[Complex64]) -> f64 {
    pt.iter().map(|z| z.norm_sqr()).sum()
}

/// The certificate matrix C_{a,b} and its total C = Σ_{a<b} C_{a,b}, with
/// C_{a,b} = |z̄_a g_{z_b} − z̄_b g_{z_a}|² − |z_a g_{z̄_b} − z_b g_{z̄_a}|².
#[derive(Clone, Debug)]
pub struct CCertificate {
    pub matrix: Vec<Vec<f64>>,
    pub total: f64,
}

pub fn c_certificate(g: &MixedPolynomial, pt: &[Complex64]) -> Result<CCertificate, GeometryError> {
    c_certificate_from(&Derivatives::of(g).bundle(pt)?, pt)
}

pub fn c_certificate_from(bundle: &GradientBundle, pt: &[Complex64]) -> Result<CCertificate, GeometryError> {
    let n = pt.len();
    if n < 2 {
        return Err(GeometryError::DimensionTooSmall(n));
    }
    let mut matrix = vec![vec![0.0; n]; n];
    let mut total = 0.0;
    for a in 0..n {
        for b in (a + 1)..n {
            let holo = pt[a].conj() * bundle.del[b] - pt[b].conj() * bundle.del[a];
            let anti = pt[a] * bundle.delbar[b] - pt[b] * bundle.delbar[a];
            let c = holo.norm_sqr() - anti.norm_sqr();
            matrix[a][b] = c;
            matrix[b][a] = c;
            total += c;
        }
    }
    Ok(CCertificate { matrix, total })
}

/// Factored certificate of a pull-back g = f ∘ φ_{a,b} of a holomorphic f by a
/// homogeneous covering, computed without forming the pull-back:
/// for a, b ≥ 1,
/// C_{j,k} = (a² − b²) |w_j w_k|² |w_k^{a−1} w̄_k^{b−1} F_k − w_j^{a−1} w̄_j^{b−1} F_j|²
/// with F_j = f_{z_j}(φ(w)); for b = 0 (resp. a = 0) the one-sided square form.
pub fn c_factored(
    f: &MixedPolynomial,
    spec: &CoveringSpec,
    pt: &[Complex64],
) -> Result<CCertificate, GeometryError> {
    if !f.is_holomorphic() {
        return Err(GeometryError::NotHolomorphic);
    }
    let (a, b) = spec.homogeneous_pair()?;
    let n = pt.len();
    if n < 2 {
        return Err(GeometryError::DimensionTooSmall(n));
    }
    let phi = spec.apply(pt);
    let fz: Vec<Complex64> = (0..n)
        .map(|j| f.wirtinger_dz(j).expect("j < n").evaluate(&phi).expect("dims"))
        .collect();
    let af = f64::from(a);
    let bf = f64::from(b);
    let mut matrix = vec![vec![0.0; n]; n];
    let mut total = 0.0;
    for j in 0..n {
        for k in (j + 1)..n {
            let c = if a >= 1 && b >= 1 {
                let dj = cpow(pt[j], a - 1) * cpow(pt[j].conj(), b - 1) * fz[j];
                let dk = cpow(pt[k], a - 1) * cpow(pt[k].conj(), b - 1) * fz[k];
                (af * af - bf * bf) * (pt[j] * pt[k]).norm_sqr() * (dk - dj).norm_sqr()
            } else if b == 0 {
                let t = pt[j].conj() * cpow(pt[k], a - 1) * fz[k]
                    - pt[k].conj() * cpow(pt[j], a - 1) * fz[j];
                af * af * t.norm_sqr()
            } else {
                // a = 0: purely anti-holomorphic covering.
                let t = pt[j] * cpow(pt[k].conj(), b - 1) * fz[k]
                    - pt[k] * cpow(pt[j].conj(), b - 1) * fz[j];
                -(bf * bf) * t.norm_sqr()
            };
            matrix[j][k] = c;
            matrix[k][j] = c;
            total += c;
        }
    }
    Ok(CCertificate { matrix, total })
}

/// The phase gradient ∇θ = i(conj(g_{z_j})/ḡ − g_{z̄_j}/g)_j of θ = arg g.
#[derive(Clone, Debug)]
pub struct ThetaGradient {
    pub grad: Vec<Complex64>,
}

impl ThetaGradient {
    /// dθ along a tangent vector v: Re(v, ∇θ).
    pub fn dtheta_along(&self, v: &[Complex64]) -> f64 {
        hermitian(v, &self.grad).re
    }
}

pub fn theta_gradient(g: &MixedPolynomial, pt: &[Complex64]) -> Result<ThetaGradient, GeometryError> {
    theta_gradient_from(&Derivatives::of(g).bundle(pt)?)
}

pub fn theta_gradient_from(bundle: &GradientBundle) -> Result<ThetaGradient, GeometryError> {
    let gv = bundle.value;
    if gv.norm() <= ON_ZERO_SET_TOL {
        return Err(GeometryError::OnZeroSet);
    }
    let grad = bundle
        .del
        .iter()
        .zip(&bundle.delbar)
        .map(|(dz, dzb)| Complex64::i() * (dz.conj() / gv.conj() - dzb / gv))
        .collect();
    Ok(ThetaGradient { grad })
}

/// The Reeb vector field R(z) = iz/(2ρ) of α restricted to the sphere through z.
pub fn reeb_vector(pt: &[Complex64]) -> Result<Vec<Complex64>, GeometryError> {
    let r = rho(pt);
    if r == 0.0 {
        return Err(GeometryError::AtOrigin);
    }
    Ok(pt.iter().map(|z| Complex64::i() * z / (2.0 * r)).collect())
}

/// Scale-invariant Reeb pairing: Re((2iz), ∇θ) = 4ρ · Re(R, ∇θ).
///
/// For g strongly polar weighted homogeneous with polar degree m_p this equals
/// 2·m_p at every point off the zero set, for any radius; the sign flips with
/// the orientation of the defining covering.
pub fn reeb_pairing(g: &MixedPolynomial, pt: &[Complex64]) -> Result<f64, GeometryError> {
    reeb_pairing_from(&Derivatives::of(g).bundle(pt)?, pt)
}

pub fn reeb_pairing_from(bundle: &GradientBundle, pt: &[Complex64]) -> Result<f64, GeometryError> {
    if rho(pt) == 0.0 {
        return Err(GeometryError::AtOrigin);
    }
    let theta = theta_gradient_from(bundle)?;
    let field: Vec<Complex64> = pt.iter().map(|z| 2.0 * Complex64::i() * z).collect();
    Ok(theta.dtheta_along(&field))
}

/// v-decomposition of the modified-contact-form computation for a pull-back
/// g = f ∘ φ_{a,b} (f holomorphic, homogeneous covering) at a point w:
/// v₁ = g·conj(∇_∂ g) and v₂ = ḡ·∇_∂̄ g split against the complex line ℂ·w by
/// the hermitian projection π′(v) = (v, w)w/‖w‖², π = id − π′.
#[derive(Clone, Debug)]
pub struct OpenBookTerms {
    pub g_value: Complex64,
    pub rho: f64,
    pub v11: Vec<Complex64>,
    pub v12: Vec<Complex64>,
    pub v21: Vec<Complex64>,
    pub v22: Vec<Complex64>,
    /// γ = Σ_j |f_{z_j}(φ(w))|² |w_j|^{2(a+b−1)}
    pub gamma: f64,
    /// β = |Σ_j conj(f_{z_j}(φ(w))) w̄_j^a w_j^b|² / ‖w‖²
    pub beta: f64,
    /// ‖v₁₁‖² − ‖v₂₁‖² = (a² − b²)|g|²(γ − β)
    pub correction: f64,
    /// Scale-invariant dθ(R) at the point (see [`reeb_pairing`]).
    pub dtheta_r: f64,
}

pub fn open_book_terms(
    f: &MixedPolynomial,
    spec: &CoveringSpec,
    pt: &[Complex64],
) -> Result<OpenBookTerms, GeometryError> {
    if !f.is_holomorphic() {
        return Err(GeometryError::NotHolomorphic);
    }
    let (a, b) = spec.homogeneous_pair()?;
    let n = pt.len();
    let rho_w = rho(pt);
    if rho_w == 0.0 {
        return Err(GeometryError::AtOrigin);
    }
    let phi = spec.apply(pt);
    let g_value = f.evaluate(&phi)?;
    if g_value.norm() <= ON_ZERO_SET_TOL {
        return Err(GeometryError::OnZeroSet);
    }
    let fz: Vec<Complex64> = (0..n)
        .map(|j| f.wirtinger_dz(j).expect("j < n").evaluate(&phi).expect("dims"))
        .collect();
    let af = f64::from(a);
    let bf = f64::from(b);

    // Chain rule for the covering: g_{w_j} = a F_j w_j^{a−1} w̄_j^b,
    // g_{w̄_j} = b F_j w_j^a w̄_j^{b−1}.
    let g_dw: Vec<Complex64> = (0..n)
        .map(|j| {
            if a == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                af * fz[j] * cpow(pt[j], a - 1) * cpow(pt[j].conj(), b)
            }
        })
        .collect();
    let g_dwbar: Vec<Complex64> = (0..n)
        .map(|j| {
            if b == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                bf * fz[j] * cpow(pt[j], a) * cpow(pt[j].conj(), b - 1)
            }
        })
        .collect();

    let v1: Vec<Complex64> = g_dw.iter().map(|d| g_value * d.conj()).collect();
    let v2: Vec<Complex64> = g_dwbar.iter().map(|d| g_value.conj() * d).collect();
    let project = |v: &[Complex64]| -> (Vec<Complex64>, Vec<Complex64>) {
        let along = hermitian(v, pt) / rho_w;
        let parallel: Vec<Complex64> = pt.iter().map(|w| along * w).collect();
        let orth = v.iter().zip(&parallel).map(|(x, y)| x - y).collect();
        (orth, parallel)
    };
    let (v11, v12) = project(&v1);
    let (v21, v22) = project(&v2);

    let gamma: f64 = (0..n)
        .map(|j| {
            let pw = if a + b >= 1 {
                pt[j].norm_sqr().powi((a + b - 1) as i32)
            } else {
                1.0
            };
            fz[j].norm_sqr() * pw
        })
        .sum();
    let beta_sum: Complex64 = (0..n)
        .map(|j| fz[j].conj() * cpow(pt[j].conj(), a) * cpow(pt[j], b))
        .sum();
    let beta = beta_sum.norm_sqr() / rho_w;
    let correction = norm_sq(&v11) - norm_sq(&v21);

    // dθ(R) from the same chain-rule gradients.
    let theta: Vec<Complex64> = g_dw
        .iter()
        .zip(&g_dwbar)
        .map(|(dz, dzb)| Complex64::i() * (dz.conj() / g_value.conj() - dzb / g_value))
        .collect();
    let field: Vec<Complex64> = pt.iter().map(|z| 2.0 * Complex64::i() * z).collect();
    let dtheta_r = hermitian(&field, &theta).re;

    Ok(OpenBookTerms {
        g_value,
        rho: rho_w,
        v11,
        v12,
        v21,
        v22,
        gamma,
        beta,
        correction,
        dtheta_r,
    })
}

/// dθ(R_c) for the modified form α_c = e^{−c|g|²} α, through
/// |g|² dθ(R_c) = k|g|² dθ(R) + (ck/2)(‖v₁₁‖² − ‖v₂₁‖²) with k = e^{c|g|²}.
pub fn modified_reeb_pairing(
    f: &MixedPolynomial,
    spec: &CoveringSpec,
    pt: &[Complex64],
    c: f64,
) -> Result<f64, GeometryError> {
    let terms = open_book_terms(f, spec, pt)?;
    Ok(modified_pairing_from(&terms, c))
}

pub fn modified_pairing_from(terms: &OpenBookTerms, c: f64) -> f64 {
    let g_sq = terms.g_value.norm_sqr();
    let k = (c * g_sq).exp();
    k * terms.dtheta_r + c * k * terms.correction / (2.0 * g_sq)
}

/// Per-point bundle of contact quantities.
#[derive(Clone, Debug)]
pub struct ContactQuantities {
    pub rho: f64,
    pub c_matrix: Vec<Vec<f64>>,
    pub c_total: f64,
    pub reeb: Vec<Complex64>,
    pub theta_grad: Option<Vec<Complex64>>,
    pub dtheta_r: Option<f64>,
    pub open_book: Option<OpenBookTerms>,
}

/// Assemble the per-point quantities of g; when `lift` names the holomorphic f
/// and homogeneous covering behind g, the open-book terms are included.
pub fn contact_quantities(
    g: &MixedPolynomial,
    pt: &[Complex64],
    lift: Option<(&MixedPolynomial, &CoveringSpec)>,
) -> Result<ContactQuantities, GeometryError> {
    let bundle = Derivatives::of(g).bundle(pt)?;
    let cert = c_certificate_from(&bundle, pt)?;
    let reeb = reeb_vector(pt)?;
    let (theta_grad, dtheta_r) = match theta_gradient_from(&bundle) {
        Ok(t) => {
            let d = reeb_pairing_from(&bundle, pt)?;
            (Some(t.grad), Some(d))
        }
        Err(GeometryError::OnZeroSet) => (None, None),
        Err(e) => return Err(e),
    };
    let open_book = match lift {
        Some((f, spec)) => Some(open_book_terms(f, spec, pt)?),
        None => None,
    };
    Ok(ContactQuantities {
        rho: rho(pt),
        c_matrix: cert.matrix,
        c_total: cert.total,
        reeb,
        theta_grad,
        dtheta_r,
        open_book,
    })
}

/// dρ at a point as a 1-form over (x₁, y₁, …).
pub fn drho_form(pt: &[Complex64]) -> FormAtPoint {
    let mut row = Vec::with_capacity(2 * pt.len());
    for z in pt {
        row.push(2.0 * z.re);
        row.push(2.0 * z.im);
    }
    FormAtPoint::one_form(&row)
}

/// α = 2Σ(x_j dy_j − y_j dx_j) at a point.
pub fn alpha_form(pt: &[Complex64]) -> FormAtPoint {
    let mut row = Vec::with_capacity(2 * pt.len());
    for z in pt {
        row.push(-2.0 * z.im);
        row.push(2.0 * z.re);
    }
    FormAtPoint::one_form(&row)
}

/// ω = dα = 4Σ dx_j ∧ dy_j (constant coefficients).
pub fn omega_form(n: usize) -> FormAtPoint {
    let entries: Vec<(usize, usize, f64)> = (0..n).map(|j| (2 * j, 2 * j + 1, 4.0)).collect();
    FormAtPoint::two_form(2 * n, &entries)
}

/// d h at a point for real-valued h, from the values of h_{z_j}:
/// the row is (2 Re h_{z_j}, −2 Im h_{z_j}) per coordinate pair.
pub fn d_real_form(hz: &[Complex64]) -> FormAtPoint {
    let mut row = Vec::with_capacity(2 * hz.len());
    for d in hz {
        row.push(2.0 * d.re);
        row.push(-2.0 * d.im);
    }
    FormAtPoint::one_form(&row)
}

/// Result of the wedge verification at one point.
#[derive(Clone, Debug)]
pub struct WedgeCheck {
    /// Top coefficient of dρ ∧ α ∧ (dα)^{n−2} ∧ d(Re g) ∧ d(Im g) against
    /// dx₁∧dy₁∧…∧dx_n∧dy_n.
    pub lhs: f64,
    /// 4^{n−1}(n−2)! · C(z, z̄).
    pub rhs: f64,
    /// A_{a,b̄} from direct two-form extraction of dρ ∧ α.
    pub a_direct: Vec<Vec<Complex64>>,
    /// A_{a,b̄} = 2 z̄_a z_b.
    pub a_formula: Vec<Vec<Complex64>>,
    /// B_{a,b̄} from direct two-form extraction of d(Re g) ∧ d(Im g).
    pub b_direct: Vec<Vec<Complex64>>,
    /// B_{a,b̄} = ½(g_{z_a} conj(g_{z_b}) − conj(g_{z̄_a}) g_{z̄_b}).
    pub b_formula: Vec<Vec<Complex64>>,
}

pub fn wedge_verify(g: &MixedPolynomial, pt: &[Complex64]) -> Result<WedgeCheck, GeometryError> {
    let n = g.n();
    if n != 2 && n != 3 {
        return Err(GeometryError::UnsupportedDimension(n));
    }
    if pt.len() != n {
        return Err(GeometryError::Poly(MixedPolyError::DimensionMismatch {
            expected: n,
            got: pt.len(),
        }));
    }
    let bundle = Derivatives::of(g).bundle(pt)?;

    // Exact real/imaginary split, then first-order data of each part.
    let re_part = Derivatives::of(&g.real_part());
    let im_part = Derivatives::of(&g.imag_part());
    let re_bundle = re_part.bundle(pt)?;
    let im_bundle = im_part.bundle(pt)?;

    let drho = drho_form(pt);
    let alpha = alpha_form(pt);
    let omega = omega_form(n);
    let d_re = d_real_form(&re_bundle.del);
    let d_im = d_real_form(&im_bundle.del);

    let mut acc = drho.wedge(&alpha);
    for _ in 0..n.saturating_sub(2) {
        acc = acc.wedge(&omega);
    }
    let two_form_part = drho.wedge(&alpha);
    let b_two_form = d_re.wedge(&d_im);
    let lhs = acc.wedge(&d_re).wedge(&d_im).top_coefficient();

    let cert = c_certificate_from(&bundle, pt)?;
    let factorial = |k: usize| -> f64 { (1..=k).product::<usize>() as f64 };
    let rhs = 4f64.powi((n as i32) - 1) * factorial(n - 2) * cert.total;

    let i = Complex64::i();
    let mut a_direct = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut a_formula = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut b_direct = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    let mut b_formula = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for a in 0..n {
        for b in 0..n {
            let za = forms::dz_basis(n, a);
            let zbbar = forms::dzbar_basis(n, b);
            a_direct[a][b] = two_form_part.eval_two_complex(&za, &zbbar) / i;
            a_formula[a][b] = 2.0 * pt[a].conj() * pt[b];
            b_direct[a][b] = b_two_form.eval_two_complex(&za, &zbbar) / i;
            b_formula[a][b] =
                0.5 * (bundle.del[a] * bundle.del[b].conj() - bundle.delbar[a].conj() * bundle.delbar[b]);
        }
    }

    Ok(WedgeCheck { lhs, rhs, a_direct, a_formula, b_direct, b_formula })
}
