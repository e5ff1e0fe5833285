//! Passing between cross products and stable forms: reductions of a 3-fold
//! product by a unit vector or an oriented plane, the dimension-raising map
//! Ω ↦ φ = Ω ∓ β∧ω, and the lift of a 2-fold product back to a 3-fold one.

use nalgebra::DMatrix;
use num::traits::{One, Signed, Zero};
use serde::Serialize;

use crate::compalg::AlgebraTag;
use crate::error::{Error, Result};
use crate::exteralg::{hodge_star, wedge_sign, AltForm, InnerProduct, MultiIndex, VolumeForm};
use crate::linalg::Matrix;
use crate::scalar::{int, q, root_exact, sqrt_exact, to_f64, Scalar};
use crate::stable6::{self, OrbitClass6, ScaledStructure};
use crate::stable7::{self, NumericCrossProduct, OrbitClass7};
use crate::vcp::{complement_basis, CrossProduct, Product, Variant};

/// Unit vector a (and b for planes) with a basis of the orthogonal complement.
#[derive(Clone, Debug)]
pub struct AdaptedFrame {
    pub a: Vec<Scalar>,
    pub b: Option<Vec<Scalar>>,
    pub complement: Vec<Vec<Scalar>>,
    /// Restriction of the ambient inner product to the complement.
    pub ip: InnerProduct,
    /// Orientation of the complement with a♭(∧b♭)∧vol = e⁰∧…∧e⁷.
    pub vol: VolumeForm,
}

impl AdaptedFrame {
    fn new(cp: &CrossProduct, a: &[Scalar], b: Option<&[Scalar]>) -> Result<Self> {
        let ip = cp.inner_product();
        let mut head = vec![a.to_vec()];
        head.extend(b.map(|b| b.to_vec()));
        let complement = complement_basis(ip, &head);
        let m = complement.len();
        let gram = Matrix::from_fn(m, m, |i, j| ip.dot(&complement[i], &complement[j]));
        let mut all = head.clone();
        all.extend(complement.iter().cloned());
        let det = Matrix::from_cols(&all).det();
        let norms = head.iter().fold(Scalar::one(), |p, v| p * ip.dot(v, v));
        Ok(AdaptedFrame {
            a: a.to_vec(),
            b: b.map(|b| b.to_vec()),
            complement,
            ip: InnerProduct::new(gram)?,
            vol: VolumeForm::scaled(m, det / norms)?,
        })
    }

    /// The form (v₁,…,v_k) ↦ ⟨X′(v₁,v₂,v₃), w⟩ on the complement, for k = 3.
    fn pairing_form(&self, cp: &CrossProduct, w: &[Scalar], sign: i64) -> AltForm {
        let m = self.complement.len();
        let ip = cp.inner_product();
        let terms = MultiIndex::all(m, 3)
            .into_iter()
            .filter_map(|k| {
                let args: Vec<Vec<Scalar>> = k.indices().iter().map(|&i| self.complement[i - 1].clone()).collect();
                let c = ip.dot(&cp.apply(&args), w) * int(sign);
                (!c.is_zero()).then(|| (k.indices(), c))
            })
            .collect();
        AltForm::from_terms(m, 3, terms).expect("valid index sets")
    }

    /// Coordinates of an ambient vector of the complement in the complement basis.
    fn coordinates(&self, ambient: &InnerProduct, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let pairings: Vec<Scalar> = self.complement.iter().map(|f| ambient.dot(f, v)).collect();
        let inv = self.ip.gram().inverse().ok_or_else(|| Error::Degenerate("complement is degenerate".into()))?;
        Ok(inv.mul_vec(&pairings))
    }
}

fn check_three_fold(cp: &CrossProduct) -> Result<()> {
    if cp.fold() != 3 {
        return Err(Error::Shape("expected a 3-fold cross product".into()));
    }
    Ok(())
}

fn check_vector(cp: &CrossProduct, v: &[Scalar], norm: i64, name: &str) -> Result<()> {
    if v.len() != cp.dim() {
        return Err(Error::DimensionMismatch { expected: cp.dim(), found: v.len() });
    }
    let n = cp.inner_product().dot(v, v);
    if n.is_zero() {
        return Err(Error::Degenerate(format!("{name} is a null vector")));
    }
    if n != int(norm) {
        return Err(Error::Precondition(format!("⟨{name},{name}⟩ = {n}, expected {norm}")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Reduction7 {
    pub frame: AdaptedFrame,
    /// φ(x,y,z) = −⟨X′(x,y,z),a⟩ in complement coordinates.
    pub phi: AltForm,
    pub class: OrbitClass7,
}

/// Restricts a 3-fold product to the 3-form φ = −⟨X′(·,·,·),a⟩ on a⊥.
pub fn vcp_to_stable7(cp: &CrossProduct, a: &[Scalar]) -> Result<Reduction7> {
    check_three_fold(cp)?;
    check_vector(cp, a, 1, "a")?;
    let frame = AdaptedFrame::new(cp, a, None)?;
    let phi = frame.pairing_form(cp, a, -1);
    let class = stable7::classify7(&phi, &frame.vol)?;
    Ok(Reduction7 { frame, phi, class })
}

#[derive(Clone, Debug)]
pub struct Reduction6 {
    pub frame: AdaptedFrame,
    /// Ω(x,y,z) = −⟨X′(x,y,z),a⟩ on P⊥.
    pub omega: AltForm,
    pub omega_hat: AltForm,
    pub structure: ScaledStructure,
    pub class: OrbitClass6,
    /// J_P(v) = −X′(a,b,v) (resp. L_P) on P⊥, complement coordinates.
    pub plane_structure: Matrix<Scalar>,
    /// K = √|λ|·J_P exactly.
    pub k_matches: bool,
    /// +1 if Ω̂ = ⟨X′(·,·,·),b⟩, −1 if Ω̂ = −⟨X′(·,·,·),b⟩.
    pub hat_branch: Option<i32>,
}

/// The pair (Ω, Ω̂) on P⊥ for an oriented plane P = span{a,b}: orthonormal
/// over 𝕆, ⟨a,a⟩ = 1 and ⟨b,b⟩ = −1 over 𝔹.
pub fn vcp_to_stable6(cp: &CrossProduct, a: &[Scalar], b: &[Scalar]) -> Result<Reduction6> {
    check_three_fold(cp)?;
    let b_norm = if cp.tag() == AlgebraTag::B { -1 } else { 1 };
    check_vector(cp, a, 1, "a").map_err(|e| Error::Precondition(format!("wrong plane type: {e}")))?;
    check_vector(cp, b, b_norm, "b").map_err(|e| Error::Precondition(format!("wrong plane type: {e}")))?;
    let ip = cp.inner_product();
    if !ip.dot(a, b).is_zero() {
        return Err(Error::Precondition("wrong plane type: ⟨a,b⟩ ≠ 0".into()));
    }
    let frame = AdaptedFrame::new(cp, a, Some(b))?;
    let omega = frame.pairing_form(cp, a, -1);
    let structure = stable6::scaled_structure(&omega, &frame.vol)?;
    let class = structure.class();
    let omega_hat = stable6::hat_exact(&omega, &frame.vol)?;
    let cols: Vec<Vec<Scalar>> = frame
        .complement
        .iter()
        .map(|f| {
            let x: Vec<Scalar> = cp.apply(&[a.to_vec(), b.to_vec(), f.clone()]).into_iter().map(|c| -c).collect();
            frame.coordinates(ip, &x)
        })
        .collect::<Result<_>>()?;
    let plane_structure = Matrix::from_cols(&cols);
    let k_matches =
        stable6::sqrt_abs_lambda(&structure.lambda).map(|s| structure.k == plane_structure.scale(&s)).unwrap_or(false);
    let b_form = frame.pairing_form(cp, b, 1);
    let hat_branch = if omega_hat == b_form {
        Some(1)
    } else if omega_hat == -&b_form {
        Some(-1)
    } else {
        None
    };
    Ok(Reduction6 { frame, omega, omega_hat, structure, class, plane_structure, k_matches, hat_branch })
}

/// Inner product G with ⟨K̃x,K̃y⟩ = ∓⟨x,y⟩, i.e. KᵀGK = −λG.
pub fn is_compatible(st: &ScaledStructure, ip: &InnerProduct) -> bool {
    let g = ip.gram();
    st.k.transpose().mul(g).mul(&st.k) == g.scale(&-st.lambda.clone())
}

/// A compatible inner product: G + KᵀGK/|λ| from G = I when λ < 0, and
/// M − KᵀMK/λ for the first M in a fixed list that makes it nondegenerate
/// when λ > 0.
pub fn compatible_inner_product(st: &ScaledStructure) -> Result<InnerProduct> {
    let n = st.k.rows();
    let kt = st.k.transpose();
    let average = |m: &Matrix<Scalar>| {
        let t = kt.mul(m).mul(&st.k).scale(&(Scalar::one() / st.lambda.abs()));
        if st.lambda.is_negative() {
            m.add(&t)
        } else {
            m.sub(&t)
        }
    };
    let mut candidates = vec![Matrix::identity(n)];
    for shift in 1..=8 {
        candidates.push(Matrix::from_fn(n, n, |i, j| q(1, (i + j + shift) as i64)));
    }
    for m in candidates {
        let g = average(&m);
        if !g.det().is_zero() {
            return InnerProduct::new(g);
        }
    }
    Err(Error::Degenerate("no compatible inner product found".into()))
}

/// Positions of the six directions of Ω and of β inside the 7-dimensional space.
pub const RAISE_MAP: [usize; 6] = [1, 2, 3, 5, 6, 7];
pub const BETA_INDEX: usize = 4;

#[derive(Clone, Debug, Serialize)]
pub struct Raised7 {
    pub class: OrbitClass7,
    /// φ = Ω ∓ t·β∧ω_s when t is rational.
    #[serde(skip)]
    pub phi: Option<AltForm>,
    /// φ with t = 1; same orbit as φ.
    #[serde(skip)]
    pub phi_unscaled: AltForm,
    pub phi_f64: Vec<(String, f64)>,
    /// t in φ = Ω ∓ t·β∧ω_s, with ω_s(x,y) = ⟨Kx,y⟩.
    pub factor: f64,
    /// c with ⟨,⟩' = c·⟨,⟩ so that ω = ⟨K̃·,·⟩' satisfies ¼Ω∧Ω̂ = ⅙ω³.
    pub ip_scale: f64,
    /// |¼Ω∧Ω̂ − ⅙ω³| relative to vol.
    pub residual: f64,
    /// c·G on the Ω directions and ±1 on β.
    #[serde(skip)]
    pub metric: DMatrix<f64>,
    #[serde(skip)]
    pub ip: Option<InnerProduct>,
}

fn coefficients_f64(form: &AltForm) -> Vec<(String, f64)> {
    form.terms().map(|(m, c)| (format!("{m:?}"), to_f64(c))).collect()
}

fn real_cbrt(x: f64) -> f64 {
    x.signum() * x.abs().cbrt()
}

/// Raises a stable 3-form on a 6-dimensional space to φ = Ω − β∧ω (λ < 0)
/// or φ = Ω + β∧ω (λ > 0) on a 7-dimensional one.
///
/// `vol` orients the 6-dimensional space; K and hence ω change sign with it.
/// Without `ip` a compatible inner product is synthesized.
pub fn stable6_to_7(omega: &AltForm, ip: Option<&InnerProduct>, vol: &VolumeForm) -> Result<Raised7> {
    let st = stable6::scaled_structure(omega, vol)?;
    let ip = match ip {
        Some(ip) => {
            if ip.dim() != 6 {
                return Err(Error::DimensionMismatch { expected: 6, found: ip.dim() });
            }
            if !is_compatible(&st, ip) {
                return Err(Error::Precondition("inner product is not compatible with K".into()));
            }
            ip.clone()
        }
        None => compatible_inner_product(&st)?,
    };
    // ω_s(x,y) = ⟨Kx,y⟩, i.e. ω_s(e_i,e_j) = (GK)_{ji}
    let gk = ip.gram().mul(&st.k);
    let mut terms = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            let c = gk[(j, i)].clone();
            if !c.is_zero() {
                terms.push((vec![i + 1, j + 1], c));
            }
        }
    }
    let omega_s = AltForm::from_terms(6, 2, terms)?;
    let cube = omega_s.wedge(&omega_s)?.wedge(&omega_s)?;
    let r = vol.ratio(&cube)?;
    if r.is_zero() {
        return Err(Error::Degenerate("ω is degenerate".into()));
    }
    let abs_lambda = st.lambda.abs();
    // t³ = 3√|λ|/r, so t⁶ = 9|λ|/r² and t has the sign of r
    let t6 = int(9) * &abs_lambda / (&r * &r);
    let t_exact = root_exact(&t6, 6).map(|t| if r.is_negative() { -t } else { t });
    let factor = real_cbrt(3.0 * to_f64(&abs_lambda).sqrt() / to_f64(&r));
    let ip_scale = factor * to_f64(&abs_lambda).sqrt();

    let hat = stable6::hat(omega, vol)?;
    let hat_f: Vec<(MultiIndex, f64)> = hat.coefficients_f64();
    let mut lhs = 0.0;
    for (m, c) in omega.terms() {
        for (h, d) in &hat_f {
            if m.bits() & h.bits() == 0 {
                lhs += wedge_sign(m, *h) as f64 * to_f64(c) * d;
            }
        }
    }
    let lhs = lhs / to_f64(&vol.coefficient()) / 4.0;
    // ω = t·ω_s
    let rhs = factor.powi(3) * to_f64(&r) / 6.0;
    let residual = (lhs - rhs).abs();

    let sign = if st.lambda.is_negative() { int(-1) } else { int(1) };
    let omega7 = omega.relabel(7, &RAISE_MAP)?;
    let beta_omega = AltForm::basis(7, BETA_INDEX).wedge(&omega_s.relabel(7, &RAISE_MAP)?)?;
    let phi_unscaled = omega7.try_add(&beta_omega.scale(&sign))?;
    let phi = t_exact.as_ref().map(|t| omega7.try_add(&beta_omega.scale(&(&sign * t)))).transpose()?;
    let class = stable7::classify7(&phi_unscaled, &VolumeForm::standard(7))?;
    let phi_f64 = match &phi {
        Some(p) => coefficients_f64(p),
        None => {
            let mut c = coefficients_f64(&omega7);
            c.extend(beta_omega.terms().map(|(m, v)| (format!("{m:?}"), to_f64(&sign) * factor * to_f64(v))));
            c
        }
    };
    let g = ip.gram().to_f64();
    let beta_norm = if st.lambda.is_negative() { 1.0 } else { -1.0 };
    let mut metric = DMatrix::zeros(7, 7);
    for i in 0..6 {
        for j in 0..6 {
            metric[(RAISE_MAP[i] - 1, RAISE_MAP[j] - 1)] = ip_scale * g[(i, j)];
        }
    }
    metric[(BETA_INDEX - 1, BETA_INDEX - 1)] = beta_norm;
    Ok(Raised7 { class, phi, phi_unscaled, phi_f64, factor, ip_scale, residual, metric, ip: Some(ip) })
}

/// The 2-fold cross product induced by a stable φ.
pub fn stable7_to_vcp(phi: &AltForm, vol: &VolumeForm) -> Result<NumericCrossProduct> {
    stable7::cross_from_phi(phi, vol)
}

/// Hodge star of a form against the metric g and the orientation sign·e¹…ⁿ,
/// exact when g is rational with square |det g|.
fn star(a: &AltForm, g: &DMatrix<f64>, exact_g: Option<&Matrix<Scalar>>, orientation: i64) -> Result<AltForm> {
    let n = a.dim();
    if let Some(ge) = exact_g {
        if let Some(root) = sqrt_exact(&ge.det().abs()) {
            let ip = InnerProduct::new(ge.clone())?;
            return hodge_star(a, &ip, &VolumeForm::scaled(n, root * int(orientation))?);
        }
    }
    let g_inv = g.clone().try_inverse().ok_or_else(|| Error::Degenerate("metric is singular".into()))?;
    let c = orientation as f64 * g.determinant().abs().sqrt();
    let p = a.degree();
    let mut terms = Vec::new();
    for k in MultiIndex::all(n, p) {
        let ki = k.indices();
        let mut pairing = 0.0;
        for (m, v) in a.terms() {
            let mi = m.indices();
            let minor = DMatrix::from_fn(p, p, |r, s| g_inv[(ki[r] - 1, mi[s] - 1)]);
            pairing += to_f64(v) * minor.determinant();
        }
        if pairing.abs() < 1e-15 {
            continue;
        }
        let kc = k.complement(n);
        let value = wedge_sign(k, kc) as f64 * c * pairing;
        let q = Scalar::from_float(value).ok_or_else(|| Error::Degenerate("non-finite Hodge star".into()))?;
        terms.push((kc.indices(), q));
    }
    AltForm::from_terms(n, n - p, terms)
}

/// The 3-fold product on ℝ⊕W with fundamental form μ₃ = e⁰∧φ + σ·*φ,
/// where * uses the metric of φ and its orientation, and e⁰ has norm +1.
///
/// σ = −1 for the X₁ branch and σ = +1 for X₂ (see [`lift_sign`]).
pub fn lift_to_3fold(phi: &AltForm, vol: &VolumeForm, variant: Variant) -> Result<NumericCrossProduct> {
    let m = stable7::metric_from_phi(phi, vol)?;
    let sigma = lift_sign(variant)?;
    let star_phi = star(phi, &m.g, m.exact_g.as_ref(), m.epsilon as i64)?;
    let shift: Vec<usize> = (2..=8).collect();
    let mu = AltForm::basis(8, 1)
        .wedge(&phi.relabel(8, &shift)?)?
        .try_add(&star_phi.relabel(8, &shift)?.scale(&int(sigma)))?;
    let mut g = DMatrix::zeros(8, 8);
    g[(0, 0)] = 1.0;
    g.view_mut((1, 1), (7, 7)).copy_from(&m.g);
    let exact = m.exact_g.as_ref().map(|ge| {
        Matrix::from_fn(8, 8, |i, j| match (i, j) {
            (0, 0) => Scalar::one(),
            (0, _) | (_, 0) => Scalar::zero(),
            _ => ge[(i - 1, j - 1)].clone(),
        })
    });
    NumericCrossProduct::new(mu, g, exact.as_ref())
}

/// σ in μ₃ = e⁰∧φ + σ·*φ.
pub fn lift_sign(variant: Variant) -> Result<i64> {
    match variant {
        Variant::X1 => Ok(-1),
        Variant::X2 => Ok(1),
        Variant::X => Err(Error::Shape("a 3-fold lift needs variant X1 or X2".into())),
    }
}
