//! Stable 3-forms on a 7-dimensional space: the symmetric form
//! Q_φ(v,w) = ι_vφ∧ι_wφ∧φ, orbit classification, the induced metric and
//! the induced 2-fold cross product.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use num::traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exteralg::{AltForm, MultiIndex, VolumeForm};
use crate::linalg::{inertia, Inertia, Matrix};
use crate::report::{Check, Report};
use crate::scalar::{int, root_exact, to_f64, Scalar};

/// e¹²³ − e¹⁶⁷ + e²⁵⁷ − e³⁵⁶ + e¹⁴⁵ + e²⁴⁶ + e³⁴⁷.
pub fn canonical_phi_minus() -> AltForm {
    AltForm::from_digits(7, &[("123", 1), ("167", -1), ("257", 1), ("356", -1), ("145", 1), ("246", 1), ("347", 1)])
}

/// e¹²³ + e¹⁶⁷ − e²⁵⁷ + e³⁵⁶ − e¹⁴⁵ − e²⁴⁶ − e³⁴⁷.
pub fn canonical_phi_plus() -> AltForm {
    AltForm::from_digits(7, &[("123", 1), ("167", 1), ("257", -1), ("356", 1), ("145", -1), ("246", -1), ("347", -1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitClass7 {
    #[serde(rename = "O7_MINUS")]
    O7Minus,
    #[serde(rename = "O7_PLUS")]
    O7Plus,
    #[serde(rename = "NOT_STABLE")]
    NotStable,
}

impl fmt::Display for OrbitClass7 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitClass7::O7Minus => "O7_MINUS",
            OrbitClass7::O7Plus => "O7_PLUS",
            OrbitClass7::NotStable => "NOT_STABLE",
        })
    }
}

fn check_shape(phi: &AltForm) -> Result<()> {
    if phi.dim() != 7 || phi.degree() != 3 {
        return Err(Error::Shape(format!(
            "expected a 3-form on a 7-dimensional space, got degree {} on dimension {}",
            phi.degree(),
            phi.dim()
        )));
    }
    Ok(())
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

/// Matrix of Q_φ relative to vol: ι_vφ∧ι_wφ∧φ = B(v,w)·vol.
pub fn q_form(phi: &AltForm, vol: &VolumeForm) -> Result<Matrix<Scalar>> {
    check_shape(phi)?;
    if vol.dim() != 7 {
        return Err(Error::DimensionMismatch { expected: 7, found: vol.dim() });
    }
    let contractions: Vec<AltForm> = (0..7).map(|i| phi.contract(&unit(7, i))).collect::<Result<_>>()?;
    let mut b = Matrix::zeros(7, 7);
    for i in 0..7 {
        let ip = contractions[i].wedge(phi)?;
        for j in i..7 {
            let top = contractions[j].wedge(&ip)?;
            let v = vol.ratio(&top)?;
            b[(i, j)] = v.clone();
            b[(j, i)] = v;
        }
    }
    Ok(b)
}

pub fn q_inertia(phi: &AltForm, vol: &VolumeForm) -> Result<Inertia> {
    Ok(inertia(&q_form(phi, vol)?))
}

pub fn classify7(phi: &AltForm, vol: &VolumeForm) -> Result<OrbitClass7> {
    let i = q_inertia(phi, vol)?;
    if !i.is_nondegenerate() {
        return Ok(OrbitClass7::NotStable);
    }
    Ok(match i.signature().abs() {
        7 => OrbitClass7::O7Minus,
        1 => OrbitClass7::O7Plus,
        _ => OrbitClass7::NotStable,
    })
}

/// Metric g = εB/(6s), with B measured against e¹…⁷, s⁹ = |det B|/6⁷ and
/// ε = ±1 chosen so g is positive definite (𝒪₇⁻) or has signature (3,4) (𝒪₇⁺).
#[derive(Clone, Debug)]
pub struct G2Metric {
    pub class: OrbitClass7,
    pub exact_b: Matrix<Scalar>,
    pub scale: f64,
    pub epsilon: i32,
    pub g: DMatrix<f64>,
    /// g over ℚ when s is rational.
    pub exact_g: Option<Matrix<Scalar>>,
}

pub fn metric_from_phi(phi: &AltForm, vol: &VolumeForm) -> Result<G2Metric> {
    check_shape(phi)?;
    let class = classify7(phi, vol)?;
    if class == OrbitClass7::NotStable {
        return Err(Error::NotStable("Q_φ is degenerate or has the wrong signature".into()));
    }
    let b = q_form(phi, &VolumeForm::standard(7))?;
    let det = b.det().abs();
    let six7 = int(6_i64.pow(7));
    let s9 = &det / &six7;
    let scale = to_f64(&s9).powf(1.0 / 9.0);
    let pos = inertia(&b).positive;
    let epsilon = match class {
        OrbitClass7::O7Minus => {
            if pos == 7 {
                1
            } else {
                -1
            }
        }
        _ => {
            if pos == 3 {
                1
            } else {
                -1
            }
        }
    };
    let g = b.to_f64() * (epsilon as f64 / (6.0 * scale));
    let exact_g = root_exact(&s9, 9).map(|s| b.scale(&(int(epsilon as i64) / (int(6) * s))));
    Ok(G2Metric { class, exact_b: b, scale, epsilon, g, exact_g })
}

/// r-fold cross product X(v₁,…,v_r) = g⁻¹(μ(v₁,…,v_r,·)) in floating point,
/// for a fundamental form μ of degree r+1.
#[derive(Clone, Debug)]
pub struct NumericCrossProduct {
    pub mu: AltForm,
    pub g: DMatrix<f64>,
    pub g_inv: DMatrix<f64>,
    /// g⁻¹ over ℚ when the metric is rational.
    pub exact_g_inv: Option<Matrix<Scalar>>,
}

impl NumericCrossProduct {
    pub fn new(mu: AltForm, g: DMatrix<f64>, exact_g: Option<&Matrix<Scalar>>) -> Result<Self> {
        if g.nrows() != mu.dim() || g.ncols() != mu.dim() {
            return Err(Error::DimensionMismatch { expected: mu.dim(), found: g.nrows() });
        }
        let g_inv = g.clone().try_inverse().ok_or_else(|| Error::Degenerate("metric is singular".into()))?;
        let exact_g_inv = exact_g.and_then(|m| m.inverse());
        Ok(NumericCrossProduct { mu, g, g_inv, exact_g_inv })
    }

    pub fn dim(&self) -> usize {
        self.mu.dim()
    }

    pub fn fold(&self) -> usize {
        self.mu.degree() - 1
    }

    pub fn eval(&self, args: &[Vec<f64>]) -> Vec<f64> {
        let n = self.dim();
        let covector: Vec<f64> = (0..n)
            .map(|k| {
                let mut vs = args.to_vec();
                let mut e = vec![0.0; n];
                e[k] = 1.0;
                vs.push(e);
                self.mu.eval_f64(&vs)
            })
            .collect();
        (self.g_inv.clone() * DVector::from_vec(covector)).iter().copied().collect()
    }

    pub fn cross(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.eval(&[x.to_vec(), y.to_vec()])
    }

    /// Exact evaluation, available when the metric is rational.
    pub fn eval_exact(&self, args: &[Vec<Scalar>]) -> Option<Vec<Scalar>> {
        let g_inv = self.exact_g_inv.as_ref()?;
        let n = self.dim();
        let covector: Vec<Scalar> = (0..n)
            .map(|k| {
                let mut vs = args.to_vec();
                vs.push(unit(n, k));
                self.mu.eval(&vs)
            })
            .collect();
        Some(g_inv.mul_vec(&covector))
    }

    pub fn dot(&self, u: &[f64], v: &[f64]) -> f64 {
        let gv = self.g.clone() * DVector::from_column_slice(v);
        u.iter().zip(gv.iter()).map(|(a, b)| a * b).sum()
    }

    /// `table[i][j]` = X(eᵢ, eⱼ) for a 2-fold product.
    pub fn table(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.dim();
        let e = |i: usize| {
            let mut v = vec![0.0; n];
            v[i] = 1.0;
            v
        };
        (0..n).map(|i| (0..n).map(|j| self.cross(&e(i), &e(j))).collect()).collect()
    }

    /// Brown–Gray axioms to within `tol` on random inputs in [−1,1]ⁿ.
    pub fn verify_axioms<R: Rng>(&self, trials: usize, tol: f64, rng: &mut R) -> Report {
        let (n, r) = (self.dim(), self.fold());
        let samples: Vec<Vec<Vec<f64>>> =
            (0..trials).map(|_| (0..r).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect()).collect();
        let mut report = Report::default();
        report.push(Check::run("orthogonality ⟨X(w),wᵢ⟩=0", trials, |t| {
            let ws = &samples[t];
            let x = self.eval(ws);
            ws.iter().any(|w| self.dot(&x, w).abs() > tol).then(|| format!("{ws:?}"))
        }));
        report.push(Check::run("norm ⟨X(w),X(w)⟩=det⟨wᵢ,wⱼ⟩", trials, |t| {
            let ws = &samples[t];
            let x = self.eval(ws);
            let gram = DMatrix::from_fn(r, r, |i, j| self.dot(&ws[i], &ws[j]));
            ((self.dot(&x, &x) - gram.determinant()).abs() > tol).then(|| format!("{ws:?}"))
        }));
        report
    }

    /// The 2-fold product X(x,y) = X(e₀,x,y) on span{e₁,…}, for a 3-fold product.
    pub fn reduce_by_e0(&self) -> Result<NumericCrossProduct> {
        if self.fold() != 3 {
            return Err(Error::Shape("reduction needs a 3-fold product".into()));
        }
        let n = self.dim();
        let mu = self.mu.contract(&unit(n, 0))?.restrict(&(2..=n).collect::<Vec<_>>())?;
        let g = self.g.view((1, 1), (n - 1, n - 1)).into_owned();
        let exact = self
            .exact_g_inv
            .as_ref()
            .and_then(|gi| gi.inverse())
            .map(|g8| Matrix::from_fn(n - 1, n - 1, |i, j| g8[(i + 1, j + 1)].clone()));
        NumericCrossProduct::new(mu, g, exact.as_ref())
    }
}

pub fn cross_from_phi(phi: &AltForm, vol: &VolumeForm) -> Result<NumericCrossProduct> {
    let m = metric_from_phi(phi, vol)?;
    NumericCrossProduct::new(phi.clone(), m.g, m.exact_g.as_ref())
}

/// A frame F (columns) with F*φ = φ⁻ up to `residual`; `basis` = F⁻¹.
#[derive(Clone, Debug)]
pub struct Canonical7 {
    pub frame: DMatrix<f64>,
    pub basis: DMatrix<f64>,
    pub residual: f64,
}

/// Largest coefficient deviation between F*φ and `target`.
pub fn pullback_residual(phi: &AltForm, frame: &DMatrix<f64>, target: &AltForm) -> f64 {
    let cols: Vec<Vec<f64>> = (0..7).map(|c| frame.column(c).iter().copied().collect()).collect();
    MultiIndex::all(7, 3)
        .into_iter()
        .map(|m| {
            let idx = m.indices();
            let v = phi.eval_f64(&[cols[idx[0] - 1].clone(), cols[idx[1] - 1].clone(), cols[idx[2] - 1].clone()]);
            (v - to_f64(&target.coef_of(m))).abs()
        })
        .fold(0.0, f64::max)
}

/// Builds a frame from a Cayley triple: f₁, f₂ orthonormal, f₃ = X(f₁,f₂),
/// f₄ a unit vector orthogonal to f₁,f₂,f₃, then f₅ = X(f₁,f₄),
/// f₆ = X(f₂,f₄), f₇ = X(f₃,f₄).
pub fn canonicalize7(phi: &AltForm, vol: &VolumeForm) -> Result<Canonical7> {
    let class = classify7(phi, vol)?;
    match class {
        OrbitClass7::O7Minus => {}
        OrbitClass7::O7Plus => {
            return Err(Error::Precondition("canonical frames are only built for the compact orbit".into()))
        }
        OrbitClass7::NotStable => return Err(Error::NotStable("Q_φ is degenerate or has the wrong signature".into())),
    }
    let x = cross_from_phi(phi, vol)?;
    let normalize = |v: Vec<f64>| {
        let n = x.dot(&v, &v).sqrt();
        v.into_iter().map(|c| c / n).collect::<Vec<f64>>()
    };
    let orthogonal_to = |span: &[Vec<f64>]| {
        (0..7)
            .map(|i| {
                let mut v = vec![0.0; 7];
                v[i] = 1.0;
                for u in span {
                    let c = x.dot(&v, u);
                    for (vk, uk) in v.iter_mut().zip(u) {
                        *vk -= c * uk;
                    }
                }
                v
            })
            .fold(None::<Vec<f64>>, |best, v| match best {
                Some(b) if x.dot(&b, &b) >= x.dot(&v, &v) - 1e-12 => Some(b),
                _ => Some(v),
            })
            .expect("seven candidates")
    };
    let f1 = normalize(orthogonal_to(&[]));
    let f2 = normalize(orthogonal_to(std::slice::from_ref(&f1)));
    let f3 = x.cross(&f1, &f2);
    let f4 = normalize(orthogonal_to(&[f1.clone(), f2.clone(), f3.clone()]));
    let f5 = x.cross(&f1, &f4);
    let f6 = x.cross(&f2, &f4);
    let f7 = x.cross(&f3, &f4);
    let cols = [f1, f2, f3, f4, f5, f6, f7];
    let frame = DMatrix::from_fn(7, 7, |r, c| cols[c][r]);
    let basis = frame.clone().try_inverse().ok_or_else(|| Error::Degenerate("frame is singular".into()))?;
    let residual = pullback_residual(phi, &frame, &canonical_phi_minus());
    Ok(Canonical7 { frame, basis, residual })
}
