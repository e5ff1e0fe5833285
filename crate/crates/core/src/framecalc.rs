//! Invariant-frame calculus on nilpotent and flat models: d from structure
//! constants, the codifferential, the Levi-Civita table, G₂-structures on
//! circle bundles over a 6-dimensional base, and Hitchin's functional.

use num::traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exteralg::{hodge_star, AltForm, InnerProduct, LinearMap, MultiIndex, VolumeForm};
use crate::linalg::Matrix;
use crate::report::{Check, Report};
use crate::scalar::{int, q, to_f64, Scalar};
use crate::stable6::{self, canonical_omega_minus, canonical_omega_minus_imaginary};
use crate::stable7::{self, OrbitClass7};

/// A Lie group with a left-invariant coframe e¹…eⁿ, a diagonal metric and
/// the differentials d eᵏ.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameModel {
    dim: usize,
    metric: Vec<i64>,
    d1: Vec<AltForm>,
}

impl FrameModel {
    pub fn new(dim: usize, metric: Vec<i64>, d1: Vec<AltForm>) -> Result<Self> {
        if metric.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: metric.len() });
        }
        if metric.iter().any(|&m| m != 1 && m != -1) {
            return Err(Error::Degenerate("metric entries must be ±1".into()));
        }
        if d1.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: d1.len() });
        }
        for (k, f) in d1.iter().enumerate() {
            if f.dim() != dim || f.degree() != 2 {
                return Err(Error::Shape(format!("d e{} must be a 2-form on dimension {dim}", k + 1)));
            }
        }
        let model = FrameModel { dim, metric, d1 };
        for k in 1..=dim {
            let dd = model.d(&model.d1[k - 1])?;
            if !dd.is_zero() {
                return Err(Error::Precondition(format!("d² e{k} = {dd} ≠ 0")));
            }
        }
        Ok(model)
    }

    /// Builds a model from d eᵏ given as digit strings, e.g. (4, [("23", 1)]).
    pub fn from_digits(dim: usize, metric: Vec<i64>, d: &[(usize, &[(&str, i64)])]) -> Result<Self> {
        let mut d1 = vec![AltForm::zero(dim, 2); dim];
        for (k, terms) in d {
            d1[k - 1] = AltForm::from_digits(dim, terms);
        }
        Self::new(dim, metric, d1)
    }

    pub fn flat_torus(dim: usize) -> Self {
        FrameModel { dim, metric: vec![1; dim], d1: vec![AltForm::zero(dim, 2); dim] }
    }

    /// d e⁴ = e²³ on the Kodaira–Thurston nilmanifold.
    pub fn kodaira_thurston() -> Self {
        Self::from_digits(4, vec![1; 4], &[(4, &[("23", 1)])]).expect("valid model")
    }

    /// d e⁵ = e¹³ − e²⁴, d e⁶ = e¹⁴ + e²³.
    pub fn iwasawa() -> Self {
        Self::from_digits(6, vec![1; 6], &[(5, &[("13", 1), ("24", -1)]), (6, &[("14", 1), ("23", 1)])])
            .expect("valid model")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> &[i64] {
        &self.metric
    }

    pub fn d1(&self) -> &[AltForm] {
        &self.d1
    }

    pub fn inner_product(&self) -> InnerProduct {
        InnerProduct::diagonal(&self.metric)
    }

    fn check(&self, a: &AltForm) -> Result<()> {
        if a.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.dim() });
        }
        Ok(())
    }

    /// d extended from the coframe by the Leibniz rule.
    pub fn d(&self, a: &AltForm) -> Result<AltForm> {
        self.check(a)?;
        let n = self.dim;
        let mut out = AltForm::zero(n, a.degree() + 1);
        if a.degree() == n {
            return Ok(out);
        }
        for (m, c) in a.terms() {
            let idx = m.indices();
            for p in 0..idx.len() {
                let mut piece = AltForm::constant(n, if p % 2 == 0 { c.clone() } else { -c.clone() });
                for (r, &i) in idx.iter().enumerate() {
                    let factor = if r == p { self.d1[i - 1].clone() } else { AltForm::basis(n, i) };
                    piece = piece.wedge(&factor)?;
                }
                out = out.try_add(&piece)?;
            }
        }
        Ok(out)
    }

    pub fn star(&self, a: &AltForm) -> Result<AltForm> {
        self.check(a)?;
        hodge_star(a, &self.inner_product(), &VolumeForm::standard(self.dim))
    }

    /// δ = (−1)^{n(p+1)+1} *d* on p-forms.
    pub fn codifferential(&self, a: &AltForm) -> Result<AltForm> {
        self.check(a)?;
        if a.degree() == 0 {
            return Ok(AltForm::zero(self.dim, 0));
        }
        let n = self.dim;
        let p = a.degree();
        let s = if (n * (p + 1) + 1).is_multiple_of(2) { int(1) } else { int(-1) };
        Ok(self.star(&self.d(&self.star(a)?)?)?.scale(&s))
    }

    /// c_ij^k with [e_i,e_j] = Σ c_ij^k e_k, i.e. c_ij^k = −d eᵏ(e_i,e_j).
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        if i == j {
            return Scalar::zero();
        }
        let (lo, hi, s) = if i < j { (i, j, -1) } else { (j, i, 1) };
        self.d1[k - 1].coef(&[lo, hi]) * int(s)
    }

    /// Levi-Civita connection of the invariant metric.
    pub fn covariant_table(&self) -> ConnectionTable {
        let n = self.dim;
        let eta = |k: usize| int(self.metric[k - 1]);
        let c = |i, j, k| self.structure_constant(i, j, k);
        let mut gamma = vec![Scalar::zero(); n * n * n];
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    let v = (c(i, j, k) * eta(k) - c(j, k, i) * eta(i) + c(k, i, j) * eta(j)) / int(2);
                    gamma[((i - 1) * n + (j - 1)) * n + (k - 1)] = v;
                }
            }
        }
        ConnectionTable { dim: n, metric: self.metric.clone(), gamma }
    }
}

/// Γ_ijk = ⟨∇_{e_i}e_j, e_k⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectionTable {
    dim: usize,
    metric: Vec<i64>,
    gamma: Vec<Scalar>,
}

impl ConnectionTable {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// 1-based indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        let n = self.dim;
        &self.gamma[((i - 1) * n + (j - 1)) * n + (k - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().all(|g| g.is_zero())
    }

    /// Γ_ijk + Γ_ikj = 0.
    pub fn is_metric(&self) -> bool {
        let n = self.dim;
        (1..=n).all(|i| (1..=n).all(|j| (1..=n).all(|k| (self.get(i, j, k) + self.get(i, k, j)).is_zero())))
    }

    /// Γ_ijk − Γ_jik = ⟨[e_i,e_j], e_k⟩.
    pub fn is_torsion_free(&self, model: &FrameModel) -> bool {
        let n = self.dim;
        (1..=n).all(|i| {
            (1..=n).all(|j| {
                (1..=n).all(|k| {
                    self.get(i, j, k) - self.get(j, i, k) == model.structure_constant(i, j, k) * int(self.metric[k - 1])
                })
            })
        })
    }

    /// ∇_X Y for vectors in frame coordinates.
    pub fn nabla(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        (1..=n)
            .map(|k| {
                let mut s = Scalar::zero();
                for i in 1..=n {
                    for j in 1..=n {
                        if !x[i - 1].is_zero() && !y[j - 1].is_zero() {
                            s += &x[i - 1] * &y[j - 1] * self.get(i, j, k);
                        }
                    }
                }
                s * int(self.metric[k - 1])
            })
            .collect()
    }

    /// ∇_{e_i} a for a form a with constant coefficients.
    pub fn nabla_form(&self, i: usize, a: &AltForm) -> AltForm {
        let n = self.dim;
        // ∇_i eᵏ = −Σ_j Γ_ij^k eʲ
        let m = Matrix::from_fn(n, n, |k, j| self.get(i, j + 1, k + 1) * int(self.metric[k]));
        -&a.derivation(&m)
    }
}

/// A circle bundle over a 6-dimensional Riemannian base with connection form
/// ρ and curvature dρ = F. Base index k sits at [`TOTAL_MAP`]`[k−1]`, ρ at 4.
#[derive(Clone, Debug)]
pub struct CircleBundleModel {
    pub base: FrameModel,
    pub curvature: AltForm,
    pub total: FrameModel,
}

pub const TOTAL_MAP: [usize; 6] = [1, 2, 3, 5, 6, 7];
pub const RHO_INDEX: usize = 4;

impl CircleBundleModel {
    pub fn new(base: FrameModel, curvature: AltForm) -> Result<Self> {
        if base.dim() != 6 || base.metric().iter().any(|&m| m != 1) {
            return Err(Error::Shape("the base must be 6-dimensional and Riemannian".into()));
        }
        base.check(&curvature)?;
        if curvature.degree() != 2 {
            return Err(Error::Shape("curvature must be a 2-form".into()));
        }
        if !base.d(&curvature)?.is_zero() {
            return Err(Error::Precondition("curvature is not closed".into()));
        }
        let mut d1 = vec![AltForm::zero(7, 2); 7];
        for k in 1..=6 {
            d1[TOTAL_MAP[k - 1] - 1] = base.d1()[k - 1].relabel(7, &TOTAL_MAP)?;
        }
        d1[RHO_INDEX - 1] = curvature.relabel(7, &TOTAL_MAP)?;
        let total = FrameModel::new(7, vec![1; 7], d1)?;
        Ok(CircleBundleModel { base, curvature, total })
    }

    /// Flat torus base with the given curvature.
    pub fn flat(curvature: AltForm) -> Result<Self> {
        Self::new(FrameModel::flat_torus(6), curvature)
    }

    pub fn lift(&self, a: &AltForm) -> Result<AltForm> {
        a.relabel(7, &TOTAL_MAP)
    }

    pub fn rho(&self) -> AltForm {
        AltForm::basis(7, RHO_INDEX)
    }

    pub fn covariant_table(&self) -> ConnectionTable {
        self.total.covariant_table()
    }

    /// Checks the lifted connection against the base table and the curvature:
    /// ∇̄_{ē_i}ē_j = Γᵏ_ij ē_k − ½F(e_i,e_j)∂θ, ∇̄_{ē_i}∂θ = ∇̄_{∂θ}ē_i = ½Σ_j F(e_i,e_j)ē_j,
    /// ∇̄_{∂θ}∂θ = 0, and [ē_i,ē_j] = [e_i,e_j]~ − F(e_i,e_j)∂θ.
    pub fn verify_lift_formulas(&self) -> Report {
        let base = self.base.covariant_table();
        let total = self.covariant_table();
        let f = |i: usize, j: usize| {
            if i == j {
                Scalar::zero()
            } else if i < j {
                self.curvature.coef(&[i, j])
            } else {
                -self.curvature.coef(&[j, i])
            }
        };
        let t = |k: usize| TOTAL_MAP[k - 1];
        let r = RHO_INDEX;
        let pairs: Vec<(usize, usize)> = (1..=6).flat_map(|i| (1..=6).map(move |j| (i, j))).collect();
        let mut report = Report::default();
        report.push(Check::single(
            "base block equals the base connection",
            pairs.iter().all(|&(i, j)| (1..=6).all(|k| total.get(t(i), t(j), t(k)) == base.get(i, j, k))),
            String::new,
        ));
        report.push(Check::single(
            "∇̄_{ē_i}ē_j has ∂θ-component −½F(e_i,e_j)",
            pairs.iter().all(|&(i, j)| total.get(t(i), t(j), r) == &(-f(i, j) / int(2))),
            String::new,
        ));
        report.push(Check::single(
            "∇̄_{ē_i}∂θ = ½Σ_j F(e_i,e_j)ē_j",
            pairs.iter().all(|&(i, j)| total.get(t(i), r, t(j)) == &(f(i, j) / int(2))),
            String::new,
        ));
        report.push(Check::single(
            "∇̄_{∂θ}ē_i = ½Σ_j F(e_i,e_j)ē_j",
            pairs.iter().all(|&(i, j)| total.get(r, t(i), t(j)) == &(f(i, j) / int(2))),
            String::new,
        ));
        report.push(Check::single("∇̄_{∂θ}∂θ = 0", (1..=7).all(|k| total.get(r, r, k).is_zero()), String::new));
        report.push(Check::single(
            "[ē_i,ē_j] has ∂θ-component −F(e_i,e_j)",
            pairs.iter().all(|&(i, j)| self.total.structure_constant(t(i), t(j), r) == -f(i, j)),
            String::new,
        ));
        report.push(Check::single("metric compatible", total.is_metric(), String::new));
        report.push(Check::single("torsion free", total.is_torsion_free(&self.total), String::new));
        report
    }
}

/// SU(3)-data (ω, Ω₁, Ω₂) on the base, in base coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SU3Data {
    pub omega: AltForm,
    pub omega1: AltForm,
    pub omega2: AltForm,
}

impl SU3Data {
    /// ω = e¹⁴+e²⁵+e³⁶ with Ω₁ + iΩ₂ = (e¹+ie⁴)∧(e²+ie⁵)∧(e³+ie⁶).
    pub fn standard() -> Self {
        SU3Data {
            omega: AltForm::from_digits(6, &[("14", 1), ("25", 1), ("36", 1)]),
            omega1: canonical_omega_minus(),
            omega2: canonical_omega_minus_imaginary(),
        }
    }

    /// ω∧Ω₁ = ω∧Ω₂ = 0 and ¼Ω₁∧Ω₂ = ⅙ω³.
    pub fn validate(&self) -> Result<()> {
        let w = &self.omega;
        if !w.wedge(&self.omega1)?.is_zero() || !w.wedge(&self.omega2)?.is_zero() {
            return Err(Error::Precondition("ω∧Ω must vanish".into()));
        }
        let lhs = self.omega1.wedge(&self.omega2)?.scale(&q(1, 4));
        let rhs = w.wedge(w)?.wedge(w)?.scale(&q(1, 6));
        if lhs != rhs {
            return Err(Error::Precondition("¼Ω₁∧Ω₂ ≠ ⅙ω³".into()));
        }
        Ok(())
    }
}

/// φ = Ω₁ − ρ∧ω and *φ = Ω₂∧ρ − ½ω² on the total space.
#[derive(Clone, Debug)]
pub struct G2Structure {
    pub phi: AltForm,
    pub star_phi: AltForm,
}

pub fn build_g2(cb: &CircleBundleModel, su3: &SU3Data) -> Result<G2Structure> {
    su3.validate()?;
    let rho = cb.rho();
    let w = cb.lift(&su3.omega)?;
    let phi = cb.lift(&su3.omega1)?.try_add(&-&rho.wedge(&w)?)?;
    let star_phi = cb.lift(&su3.omega2)?.wedge(&rho)?.try_add(&w.wedge(&w)?.scale(&q(-1, 2)))?;
    if stable7::classify7(&phi, &VolumeForm::standard(7))? != OrbitClass7::O7Minus {
        return Err(Error::Precondition("φ is not in the compact orbit".into()));
    }
    Ok(G2Structure { phi, star_phi })
}

/// Hodge star of φ on the total space, oriented by e¹…⁷ so that φ∧*φ = 7e¹…⁷.
pub fn star_phi_computed(cb: &CircleBundleModel, phi: &AltForm) -> Result<AltForm> {
    cb.total.star(phi)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub parallel: bool,
    #[serde(rename = "W1_nearly")]
    pub w1_nearly: bool,
    #[serde(rename = "W2_almost")]
    pub w2_almost: bool,
    #[serde(rename = "W3")]
    pub w3: bool,
    pub semi_parallel: bool,
    pub witnesses: Witnesses,
    /// The three tests of W3 agree: ⟨F,ω⟩ = 0 ⇔ F∧ω² = 0 ⇔ W3.
    pub w3_criteria_agree: bool,
    /// W2 ⇔ (F = 0 ∧ dω = 0).
    pub w2_criterion_agrees: bool,
    /// δT = 0 for T = −*dφ, when W3 holds.
    pub torsion_coclosed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witnesses {
    pub d_phi: String,
    pub delta_phi: String,
    pub d_phi_wedge_phi: String,
    pub f_dot_omega: String,
    pub torsion: String,
}

/// ∇̄φ and the identities attached to it.
#[derive(Clone, Debug)]
pub struct NablaReport {
    /// ∇̄_{e_i}φ for i = 1..7.
    pub derivatives: Vec<AltForm>,
    /// ⟨F,ω⟩ on the base.
    pub f_dot_omega: Scalar,
    /// ∇̄_{∂θ}φ = ½⟨F,ω⟩Ω₂.
    pub theta_formula: bool,
    /// Σ_i ⟨∇̄_iφ, ι_{e_i}*φ⟩.
    pub pairing: Scalar,
    /// pairing = ½⟨F,ω⟩‖ι_{∂θ}*φ‖².
    pub pairing_formula: bool,
    pub parallel: bool,
    /// (∇̄_vφ)(v,·,·) = 0 for all v.
    pub nearly_parallel: bool,
    /// Set when the base connection is not flat; the identities are then untested territory.
    pub experimental: bool,
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i - 1] = Scalar::one();
    v
}

pub fn nabla_phi(cb: &CircleBundleModel, su3: &SU3Data) -> Result<NablaReport> {
    let g2 = build_g2(cb, su3)?;
    let table = cb.covariant_table();
    let derivatives: Vec<AltForm> = (1..=7).map(|i| table.nabla_form(i, &g2.phi)).collect();
    let ip = cb.total.inner_product();
    let f_dot_omega = cb.base.inner_product().form_inner(&cb.curvature, &su3.omega)?;
    let omega2 = cb.lift(&su3.omega2)?;
    let theta_formula = derivatives[RHO_INDEX - 1] == omega2.scale(&(&f_dot_omega / int(2)));
    let mut pairing = Scalar::zero();
    for (i, der) in derivatives.iter().enumerate() {
        pairing += ip.form_inner(der, &g2.star_phi.contract(&unit(7, i + 1))?)?;
    }
    let iota = g2.star_phi.contract(&unit(7, RHO_INDEX))?;
    let expected = &f_dot_omega / int(2) * ip.form_inner(&iota, &iota)?;
    let pairing_formula = pairing == expected;
    let parallel = derivatives.iter().all(|d| d.is_zero());
    let mut nearly_parallel = true;
    for a in 1..=7 {
        for b in a..=7 {
            let s = derivatives[a - 1].contract(&unit(7, b))?.try_add(&derivatives[b - 1].contract(&unit(7, a))?)?;
            nearly_parallel &= s.is_zero();
        }
    }
    let experimental = !cb.base.covariant_table().is_zero();
    Ok(NablaReport {
        derivatives,
        f_dot_omega,
        theta_formula,
        pairing,
        pairing_formula,
        parallel,
        nearly_parallel,
        experimental,
    })
}

/// Requires the base to be special balanced: dΩ₁ = dΩ₂ = 0 and d(ω²) = 0.
pub fn classify_g2(cb: &CircleBundleModel, su3: &SU3Data) -> Result<ClassReport> {
    let base = &cb.base;
    if !base.d(&su3.omega1)?.is_zero() || !base.d(&su3.omega2)?.is_zero() {
        return Err(Error::Precondition("base is not special balanced: dΩ ≠ 0".into()));
    }
    if !base.d(&su3.omega.wedge(&su3.omega)?)?.is_zero() {
        return Err(Error::Precondition("base is not special balanced: d(ω²) ≠ 0".into()));
    }
    let g2 = build_g2(cb, su3)?;
    let total = &cb.total;
    let d_phi = total.d(&g2.phi)?;
    let delta_phi = total.codifferential(&g2.phi)?;
    let d_phi_wedge_phi = d_phi.wedge(&g2.phi)?;
    let torsion = -&total.star(&d_phi)?;
    let nabla = nabla_phi(cb, su3)?;
    let semi_parallel = delta_phi.is_zero();
    let w3 = semi_parallel && d_phi_wedge_phi.is_zero();
    let w2_almost = d_phi.is_zero();
    let f_dot_omega = nabla.f_dot_omega.clone();
    let f_omega2 = cb.curvature.wedge(&su3.omega.wedge(&su3.omega)?)?;
    let primitive = f_dot_omega.is_zero();
    let w3_criteria_agree = primitive == f_omega2.is_zero() && primitive == w3;
    let w2_criterion_agrees = w2_almost == (cb.curvature.is_zero() && base.d(&su3.omega)?.is_zero());
    let torsion_coclosed = if w3 { Some(total.codifferential(&torsion)?.is_zero()) } else { None };
    Ok(ClassReport {
        parallel: nabla.parallel,
        w1_nearly: nabla.nearly_parallel,
        w2_almost,
        w3,
        semi_parallel,
        witnesses: Witnesses {
            d_phi: d_phi.to_string(),
            delta_phi: delta_phi.to_string(),
            d_phi_wedge_phi: d_phi_wedge_phi.to_string(),
            f_dot_omega: crate::scalar::format_scalar(&f_dot_omega),
            torsion: torsion.to_string(),
        },
        w3_criteria_agree,
        w2_criterion_agrees,
        torsion_coclosed,
    })
}

/// Random curvature of type (1,1) for the standard J (J e_k = e_{k+3}),
/// optionally made primitive.
pub fn random_curvature<R: rand::Rng>(rng: &mut R, primitive: bool) -> AltForm {
    let r = AltForm::from_vec(6, 2, &crate::random::vector(rng, 15, 3));
    let j = Matrix::from_fn(6, 6, |row, col| match (row, col) {
        (r, c) if r == c + 3 => int(1),
        (r, c) if c == r + 3 => int(-1),
        _ => Scalar::zero(),
    });
    let jr = r.pullback(&LinearMap::new(j)).expect("6×6");
    let f = r.try_add(&jr).expect("same shape").scale(&q(1, 2));
    if !primitive {
        return f;
    }
    let w = SU3Data::standard().omega;
    let ip = InnerProduct::euclidean(6);
    let c = ip.form_inner(&f, &w).expect("same shape") / ip.form_inner(&w, &w).expect("same shape");
    f.try_add(&w.scale(&-c)).expect("same shape")
}

/// √|λ(Ω)| per unit frame volume, with λ exact.
#[derive(Clone, Debug)]
pub struct HitchinValue {
    pub lambda: Scalar,
    pub value: f64,
}

pub fn hitchin_eval(model: &FrameModel, omega: &AltForm) -> Result<HitchinValue> {
    if model.dim() != 6 {
        return Err(Error::Shape("Hitchin's functional needs a 6-dimensional model".into()));
    }
    model.check(omega)?;
    let lambda = stable6::lambda(omega, &VolumeForm::standard(6))?;
    let value = to_f64(&lambda.abs()).sqrt();
    Ok(HitchinValue { lambda, value })
}

/// d/dt √|λ(Ω+tΩ̇)| = HITCHIN_CONSTANT · (Ω̂∧Ω̇)/vol.
pub const HITCHIN_CONSTANT: f64 = -1.0;
pub const HITCHIN_STEP: f64 = 1e-5;

#[derive(Clone, Debug, Serialize)]
pub struct HitchinVariation {
    /// Central difference at t = ±1e−5.
    pub derivative: f64,
    /// (Ω̂∧Ω̇)/vol.
    pub pairing: f64,
}

impl HitchinVariation {
    pub fn relative_error(&self) -> f64 {
        let expected = HITCHIN_CONSTANT * self.pairing;
        (self.derivative - expected).abs() / expected.abs().max(self.derivative.abs()).max(1e-300)
    }
}

pub fn hitchin_variation(omega: &AltForm, omega_dot: &AltForm, vol: &VolumeForm) -> Result<HitchinVariation> {
    if omega_dot.dim() != omega.dim() || omega_dot.degree() != omega.degree() {
        return Err(Error::Shape("Ω and Ω̇ must have the same shape".into()));
    }
    let hat = stable6::hat(omega, vol)?;
    let h = q(1, 100_000);
    let root = |t: &Scalar| -> Result<f64> {
        let l = stable6::lambda(&omega.try_add(&omega_dot.scale(t))?, vol)?;
        Ok(to_f64(&l.abs()).sqrt())
    };
    let derivative = (root(&h)? - root(&-h.clone())?) / (2.0 * HITCHIN_STEP);
    let mut pairing = 0.0;
    for (m, c) in hat.coefficients_f64() {
        for (k, d) in omega_dot.terms() {
            if m.bits() & k.bits() == 0 {
                pairing += crate::exteralg::wedge_sign(m, k) as f64 * c * to_f64(d);
            }
        }
    }
    pairing /= to_f64(&vol.coefficient());
    Ok(HitchinVariation { derivative, pairing })
}

#[derive(Clone, Debug, Serialize)]
pub struct CriticalReport {
    pub closed: bool,
    pub cocritical: bool,
    pub critical: bool,
}

/// dΩ = 0 and dΩ̂ = 0, with Ω̂ taken against e¹…⁶.
pub fn critical_point_check(model: &FrameModel, omega: &AltForm) -> Result<CriticalReport> {
    if model.dim() != 6 {
        return Err(Error::Shape("critical points need a 6-dimensional model".into()));
    }
    let closed = model.d(omega)?.is_zero();
    let hat = stable6::hat(omega, &VolumeForm::standard(6))?;
    let cocritical = model.d(&hat.numerator)?.is_zero();
    Ok(CriticalReport { closed, cocritical, critical: closed && cocritical })
}

/// Re((e¹+ie²)∧(e³+ie⁴)∧(e⁵+ie⁶)).
pub fn iwasawa_form() -> AltForm {
    AltForm::from_digits(6, &[("135", 1), ("146", -1), ("236", -1), ("245", -1)])
}

/// First Ω + s·e^I (I over closed monomials in order, s in a fixed list)
/// that is closed and stable but not cocritical.
pub fn noncritical_perturbation(model: &FrameModel, omega: &AltForm) -> Result<Option<AltForm>> {
    let steps = [q(1, 2), int(1), q(-1, 2), int(-1), int(2)];
    for m in MultiIndex::all(model.dim(), 3) {
        let mono = AltForm::from_terms(model.dim(), 3, vec![(m.indices(), Scalar::one())])?;
        if !model.d(&mono)?.is_zero() {
            continue;
        }
        for s in &steps {
            let candidate = omega.try_add(&mono.scale(s))?;
            match critical_point_check(model, &candidate) {
                Ok(r) if r.closed && !r.cocritical => return Ok(Some(candidate)),
                _ => {}
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParaCyReport {
    pub alpha_closed: bool,
    pub beta_closed: bool,
    pub alpha_decomposable: bool,
    pub beta_decomposable: bool,
    pub nondegenerate: bool,
    pub omega_closed: Option<bool>,
    pub alpha_omega_zero: Option<bool>,
    pub beta_omega_zero: Option<bool>,
    pub passed: bool,
}

/// Closed decomposable α, β of degree n/2 with α∧β ≠ 0, plus the Kähler
/// relations dω = 0, α∧ω = β∧ω = 0 when ω is given.
pub fn para_cy_check(
    model: &FrameModel,
    alpha: &AltForm,
    beta: &AltForm,
    omega: Option<&AltForm>,
) -> Result<ParaCyReport> {
    let n = model.dim();
    if !n.is_multiple_of(2) {
        return Err(Error::Shape("para-Calabi–Yau checks need an even-dimensional model".into()));
    }
    for f in [alpha, beta] {
        model.check(f)?;
        if f.degree() != n / 2 {
            return Err(Error::Shape(format!("expected forms of degree {}, got {}", n / 2, f.degree())));
        }
    }
    let alpha_closed = model.d(alpha)?.is_zero();
    let beta_closed = model.d(beta)?.is_zero();
    let alpha_decomposable = alpha.is_decomposable()?;
    let beta_decomposable = beta.is_decomposable()?;
    let nondegenerate = !alpha.wedge(beta)?.is_zero();
    let (omega_closed, alpha_omega_zero, beta_omega_zero) = match omega {
        Some(w) => {
            model.check(w)?;
            if w.degree() != 2 {
                return Err(Error::Shape("ω must be a 2-form".into()));
            }
            (Some(model.d(w)?.is_zero()), Some(alpha.wedge(w)?.is_zero()), Some(beta.wedge(w)?.is_zero()))
        }
        None => (None, None, None),
    };
    let passed = alpha_closed
        && beta_closed
        && alpha_decomposable
        && beta_decomposable
        && nondegenerate
        && [omega_closed, alpha_omega_zero, beta_omega_zero].iter().all(|c| c.unwrap_or(true));
    Ok(ParaCyReport {
        alpha_closed,
        beta_closed,
        alpha_decomposable,
        beta_decomposable,
        nondegenerate,
        omega_closed,
        alpha_omega_zero,
        beta_omega_zero,
        passed,
    })
}
