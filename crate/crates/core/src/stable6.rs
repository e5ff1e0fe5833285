//! Stable 3-forms on a 6-dimensional space.
//!
//! Internal indices 1..6 stand for the labels e¹,e²,e³,e⁵,e⁶,e⁷ used when the
//! space sits inside a 7-dimensional one with e⁴ as the extra direction; see
//! [`LABELS`].

use std::fmt;

use num::traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exteralg::{AltForm, LinearMap, MultiIndex, VolumeForm};
use crate::linalg::{Matrix, Surd};
use crate::scalar::{int, sqrt_exact, to_f64, Scalar};

pub type SurdBasis = Vec<Vec<Surd>>;

/// Display labels of the internal indices 1..6.
pub const LABELS: [usize; 6] = [1, 2, 3, 5, 6, 7];

/// e¹²³ + e⁴⁵⁶, i.e. e¹²³ + e⁵⁶⁷ in display labels.
pub fn canonical_omega_plus() -> AltForm {
    AltForm::from_digits(6, &[("123", 1), ("456", 1)])
}

/// Re((e¹+ie⁴)(e²+ie⁵)(e³+ie⁶)) = e¹²³ − e¹⁵⁶ + e²⁴⁶ − e³⁴⁵.
pub fn canonical_omega_minus() -> AltForm {
    AltForm::from_digits(6, &[("123", 1), ("156", -1), ("246", 1), ("345", -1)])
}

/// Im((e¹+ie⁴)(e²+ie⁵)(e³+ie⁶)) = e¹²⁶ − e¹³⁵ + e²³⁴ − e⁴⁵⁶.
pub fn canonical_omega_minus_imaginary() -> AltForm {
    AltForm::from_digits(6, &[("126", 1), ("135", -1), ("234", 1), ("456", -1)])
}

/// The split form written like Ω⁻ with the sign pattern of a paracomplex
/// (3,0)-form: e¹²³ + e¹⁵⁶ − e²⁴⁶ + e³⁴⁵.
pub fn omega_plus_alt() -> AltForm {
    AltForm::from_digits(6, &[("123", 1), ("156", 1), ("246", -1), ("345", 1)])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum OrbitClass6 {
    #[serde(rename = "O6_PLUS")]
    O6Plus,
    #[serde(rename = "O6_MINUS")]
    O6Minus,
    #[serde(rename = "NOT_STABLE")]
    NotStable,
}

impl fmt::Display for OrbitClass6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrbitClass6::O6Plus => "O6_PLUS",
            OrbitClass6::O6Minus => "O6_MINUS",
            OrbitClass6::NotStable => "NOT_STABLE",
        })
    }
}

fn check_shape(omega: &AltForm, vol: &VolumeForm) -> Result<()> {
    if omega.dim() != 6 || omega.degree() != 3 {
        return Err(Error::Shape(format!(
            "expected a 3-form on a 6-dimensional space, got degree {} on dimension {}",
            omega.degree(),
            omega.dim()
        )));
    }
    if vol.dim() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: vol.dim() });
    }
    Ok(())
}

/// K_Ω measured against vol: −ι_vΩ∧Ω = ι_{K(v)}vol.
pub fn k_endo(omega: &AltForm, vol: &VolumeForm) -> Result<Matrix<Scalar>> {
    check_shape(omega, vol)?;
    let c = vol.coefficient();
    let mut k = Matrix::zeros(6, 6);
    for j in 0..6 {
        let mut v = vec![Scalar::zero(); 6];
        v[j] = Scalar::one();
        let five = -&omega.contract(&v)?.wedge(omega)?;
        for i in 0..6 {
            // ι_u vol = c Σ (−1)^{i} u^{i+1} e^{…î…} with 0-based i
            let hat = MultiIndex::single(i + 1).complement(6);
            let coef = five.coef_of(hat) / &c;
            k[(i, j)] = if i % 2 == 0 { coef } else { -coef };
        }
    }
    Ok(k)
}

/// λ(Ω) = tr(K²)/6, the coefficient of vol².
pub fn lambda(omega: &AltForm, vol: &VolumeForm) -> Result<Scalar> {
    let k = k_endo(omega, vol)?;
    Ok(k.mul(&k).trace() / int(6))
}

pub fn classify6(omega: &AltForm, vol: &VolumeForm) -> Result<OrbitClass6> {
    let l = lambda(omega, vol)?;
    Ok(if l.is_positive() {
        OrbitClass6::O6Plus
    } else if l.is_negative() {
        OrbitClass6::O6Minus
    } else {
        OrbitClass6::NotStable
    })
}

/// (K, λ) with K² = λ·Id; J = K/√−λ when λ < 0, L = K/√λ when λ > 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaledStructure {
    pub k: Matrix<Scalar>,
    pub lambda: Scalar,
}

impl ScaledStructure {
    pub fn class(&self) -> OrbitClass6 {
        if self.lambda.is_positive() {
            OrbitClass6::O6Plus
        } else {
            OrbitClass6::O6Minus
        }
    }

    /// √|λ| in ℚ(√|λ|).
    pub fn root(&self) -> Surd {
        Surd::sqrt(&self.lambda.abs())
    }

    /// K/√|λ| over ℚ(√|λ|).
    pub fn normalized(&self) -> Matrix<Surd> {
        let r = self.root();
        self.k.map(|x| Surd::from(x.clone()) / r.clone())
    }

    /// K/√|λ| in floating point.
    pub fn normalized_f64(&self) -> nalgebra::DMatrix<f64> {
        self.k.to_f64() / to_f64(&self.lambda.abs()).sqrt()
    }

    /// Dimensions of the +1 and −1 eigenspaces of L (paracomplex case only).
    pub fn eigenspace_dims(&self) -> Option<(usize, usize)> {
        if !self.lambda.is_positive() {
            return None;
        }
        let l = self.normalized();
        let id = Matrix::<Surd>::identity(6);
        Some((6 - l.sub(&id).rank(), 6 - l.add(&id).rank()))
    }

    /// Bases of the eigenspaces of K for +√λ and −√λ (paracomplex case).
    pub fn eigenspaces(&self) -> Option<(SurdBasis, SurdBasis)> {
        if !self.lambda.is_positive() {
            return None;
        }
        let s = self.root();
        let k = self.k.map(|x| Surd::from(x.clone()));
        let shift = Matrix::<Surd>::identity(6).scale(&s);
        Some((k.sub(&shift).nullspace(), k.add(&shift).nullspace()))
    }
}

pub fn scaled_structure(omega: &AltForm, vol: &VolumeForm) -> Result<ScaledStructure> {
    let k = k_endo(omega, vol)?;
    let lambda = k.mul(&k).trace() / int(6);
    if lambda.is_zero() {
        return Err(Error::NotStable("λ(Ω) = 0".into()));
    }
    let k2 = k.mul(&k);
    if k2 != Matrix::identity(6).scale(&lambda) {
        return Err(Error::Precondition("K² ≠ λ·Id".into()));
    }
    Ok(ScaledStructure { k, lambda })
}

/// Ω̂ = factor · numerator, with numerator = Ω(K·,K·,K·) rational and
/// factor = ε/|λ|^{3/2} in ℚ(√|λ|); ε = ±1 makes Ω∧Ω̂ a positive multiple of vol.
#[derive(Clone, Debug, PartialEq)]
pub struct Hat {
    pub numerator: AltForm,
    pub factor: Surd,
    pub epsilon: i32,
}

impl Hat {
    /// Ω̂ as a rational form when |λ| is a rational square.
    pub fn exact(&self) -> Option<AltForm> {
        self.factor.to_rational().map(|f| self.numerator.scale(&f))
    }

    /// Coefficients of Ω̂ in floating point, keyed by index set.
    pub fn coefficients_f64(&self) -> Vec<(MultiIndex, f64)> {
        let f = self.factor.to_f64();
        self.numerator.terms().map(|(m, c)| (m, to_f64(c) * f)).collect()
    }

    /// Ω̂(x,y,z) over ℚ(√|λ|).
    pub fn eval(&self, vs: &[Vec<Surd>]) -> Surd {
        self.factor.clone() * self.numerator.eval_in(vs)
    }
}

pub fn hat(omega: &AltForm, vol: &VolumeForm) -> Result<Hat> {
    let st = scaled_structure(omega, vol)?;
    let numerator = omega.pullback(&LinearMap::new(st.k.clone()))?;
    let abs = st.lambda.abs();
    let base = Surd::from(int(1)) / (Surd::from(abs.clone()) * Surd::sqrt(&abs));
    let top = vol.ratio(&omega.wedge(&numerator)?)?;
    if top.is_zero() {
        return Err(Error::NotStable("Ω∧Ω(K·,K·,K·) vanishes".into()));
    }
    let epsilon = if top.is_positive() { 1 } else { -1 };
    let factor = if epsilon > 0 { base } else { -base };
    Ok(Hat { numerator, factor, epsilon })
}

/// Exact Ω̂; fails when √|λ| is irrational.
pub fn hat_exact(omega: &AltForm, vol: &VolumeForm) -> Result<AltForm> {
    hat(omega, vol)?
        .exact()
        .ok_or_else(|| Error::Precondition("√|λ| is irrational; use `hat` for the scaled form".into()))
}

/// A frame F (columns f₁…f₆) with Ω(fᵢ,fⱼ,f_k) equal to the canonical form,
/// so that g = F⁻¹ satisfies g*(canonical) = Ω.
#[derive(Clone, Debug, PartialEq)]
pub struct Canonical6 {
    pub class: OrbitClass6,
    pub frame: Matrix<Surd>,
    pub basis: Matrix<Surd>,
}

impl Canonical6 {
    pub fn canonical_form(&self) -> AltForm {
        match self.class {
            OrbitClass6::O6Plus => canonical_omega_plus(),
            _ => canonical_omega_minus(),
        }
    }

    /// g as a rational linear map when no square root was needed.
    pub fn basis_rational(&self) -> Option<LinearMap> {
        let mut m = Matrix::<Scalar>::zeros(6, 6);
        for r in 0..6 {
            for c in 0..6 {
                m[(r, c)] = self.basis[(r, c)].to_rational()?;
            }
        }
        Some(LinearMap::new(m))
    }
}

fn scale_vec(v: &[Surd], s: &Surd) -> Vec<Surd> {
    v.iter().map(|x| x.clone() * s.clone()).collect()
}

fn add_vec(a: &[Surd], b: &[Surd]) -> Vec<Surd> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

/// Evaluates Ω on all triples of frame vectors and compares with `target`.
fn frame_pullback(omega: &AltForm, frame: &[Vec<Surd>]) -> Vec<(MultiIndex, Surd)> {
    MultiIndex::all(6, 3)
        .into_iter()
        .map(|m| {
            let idx = m.indices();
            let args: Vec<Vec<Surd>> = idx.iter().map(|&i| frame[i - 1].clone()).collect();
            (m, omega.eval_in(&args))
        })
        .collect()
}

pub fn canonicalize6(omega: &AltForm, vol: &VolumeForm) -> Result<Canonical6> {
    let st = scaled_structure(omega, vol)?;
    let class = st.class();
    let s = st.root();
    let k = st.k.map(|x| Surd::from(x.clone()));
    let id = Matrix::<Surd>::identity(6);
    let mut frame: Vec<Vec<Surd>> = Vec::with_capacity(6);
    match class {
        OrbitClass6::O6Plus => {
            // E₋ = ker(K + √λ) carries f₁..f₃, E₊ = ker(K − √λ) carries f₄..f₆
            for m in [k.add(&id.scale(&s)), k.sub(&id.scale(&s))] {
                let mut part = m.nullspace();
                if part.len() != 3 {
                    return Err(Error::Precondition("eigenspaces are not 3-dimensional".into()));
                }
                let c = omega.eval_in(&part);
                part[0] = scale_vec(&part[0], &(Surd::one() / c));
                frame.extend(part);
            }
        }
        OrbitClass6::O6Minus => {
            // J = −K/√|λ|; α = Ω + iΩ̂_J with Ω̂_J(x,y,z) = −Ω(Jx,y,z) is J-linear.
            let j = k.scale(&(-(Surd::one() / s)));
            let mut base: Vec<Vec<Surd>> = Vec::new();
            let mut span: Vec<Vec<Surd>> = Vec::new();
            for c in 0..6 {
                let mut v = vec![Surd::zero(); 6];
                v[c] = Surd::one();
                let jv = j.mul_vec(&v);
                let mut trial = span.clone();
                trial.push(v.clone());
                trial.push(jv);
                if Matrix::from_cols(&trial).rank() == trial.len() {
                    span = trial;
                    base.push(v);
                }
                if base.len() == 3 {
                    break;
                }
            }
            let p = omega.eval_in(&base);
            let jf1 = j.mul_vec(&base[0]);
            let q = -omega.eval_in(&[jf1.clone(), base[1].clone(), base[2].clone()]);
            let n = p.clone() * p.clone() + q.clone() * q.clone();
            // f₁ ← (1/(p+iq))·f₁ with i acting as J
            base[0] = add_vec(&scale_vec(&base[0], &(p / n.clone())), &scale_vec(&jf1, &(-q / n)));
            let partners: Vec<Vec<Surd>> = base.iter().map(|v| j.mul_vec(v)).collect();
            frame.extend(base);
            frame.extend(partners);
        }
        OrbitClass6::NotStable => unreachable!("scaled_structure rejects λ = 0"),
    }
    let target = match class {
        OrbitClass6::O6Plus => canonical_omega_plus(),
        _ => canonical_omega_minus(),
    };
    for (m, value) in frame_pullback(omega, &frame) {
        if value != Surd::from(target.coef_of(m)) {
            return Err(Error::Precondition(format!("canonical frame check failed at {m:?}")));
        }
    }
    let f = Matrix::from_cols(&frame);
    let basis = f.inverse().ok_or_else(|| Error::Degenerate("canonical frame is singular".into()))?;
    Ok(Canonical6 { class, frame: f, basis })
}

/// dim{A ∈ gl(V) : A·Ω = 0} for the derivation action on a 3-form.
pub fn stabilizer_dim(form: &AltForm) -> Result<usize> {
    if form.degree() != 3 || !(6..=7).contains(&form.dim()) {
        return Err(Error::Shape("stabilizer needs a 3-form in dimension 6 or 7".into()));
    }
    let n = form.dim();
    let mut cols = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = Matrix::<Scalar>::zeros(n, n);
            e[(a, b)] = Scalar::one();
            cols.push(form.derivation(&e).to_vec());
        }
    }
    Ok(n * n - Matrix::from_cols(&cols).rank())
}

/// Exact √|λ| when it is rational.
pub fn sqrt_abs_lambda(l: &Scalar) -> Option<Scalar> {
    sqrt_exact(&l.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use crate::scalar::q;

    fn vol() -> VolumeForm {
        VolumeForm::standard(6)
    }

    fn f(t: &[(&str, i64)]) -> AltForm {
        AltForm::from_digits(6, t)
    }

    #[test]
    fn k_of_canonical_plus() {
        let k = k_endo(&canonical_omega_plus(), &vol()).unwrap();
        assert_eq!(k, Matrix::diagonal(&[-1, -1, -1, 1, 1, 1].map(int)));
        assert_eq!(lambda(&canonical_omega_plus(), &vol()).unwrap(), int(1));
    }

    #[test]
    fn k_of_canonical_minus() {
        let k = k_endo(&canonical_omega_minus(), &vol()).unwrap();
        assert_eq!(k[(3, 0)], int(-2));
        assert_eq!(k[(0, 3)], int(2));
        assert_eq!(lambda(&canonical_omega_minus(), &vol()).unwrap(), int(-4));
        assert_eq!(lambda(&omega_plus_alt(), &vol()).unwrap(), int(4));
    }

    #[test]
    fn degenerate_forms() {
        assert!(k_endo(&AltForm::zero(6, 3), &vol()).unwrap().is_zero());
        let k = k_endo(&f(&[("123", 1)]), &vol()).unwrap();
        assert!(k.mul(&k).is_zero());
        assert_eq!(lambda(&f(&[("123", 1)]), &vol()).unwrap(), int(0));
        assert_eq!(classify6(&f(&[("123", 1)]), &vol()).unwrap(), OrbitClass6::NotStable);
        assert!(matches!(scaled_structure(&f(&[("123", 1)]), &vol()), Err(Error::NotStable(_))));
    }

    #[test]
    fn shape_errors() {
        let two = AltForm::from_digits(6, &[("12", 1)]);
        assert!(matches!(k_endo(&two, &vol()), Err(Error::Shape(_))));
        let seven = AltForm::from_digits(7, &[("123", 1)]);
        assert!(matches!(lambda(&seven, &vol()), Err(Error::Shape(_))));
    }

    #[test]
    fn classification_of_canonical_forms() {
        assert_eq!(classify6(&canonical_omega_plus(), &vol()).unwrap(), OrbitClass6::O6Plus);
        assert_eq!(classify6(&canonical_omega_minus(), &vol()).unwrap(), OrbitClass6::O6Minus);
        assert_eq!(classify6(&omega_plus_alt(), &vol()).unwrap(), OrbitClass6::O6Plus);
    }

    #[test]
    fn orbit_invariance() {
        let mut rng = random::rng(21);
        for _ in 0..10 {
            let g = LinearMap::new(random::invertible(&mut rng, 6, 3));
            for (omega, class) in
                [(canonical_omega_plus(), OrbitClass6::O6Plus), (canonical_omega_minus(), OrbitClass6::O6Minus)]
            {
                let pulled = omega.pullback(&g).unwrap();
                assert_eq!(classify6(&pulled, &vol()).unwrap(), class);
                let d = g.det();
                assert_eq!(lambda(&pulled, &vol()).unwrap(), &d * &d * lambda(&omega, &vol()).unwrap());
            }
        }
    }

    #[test]
    fn k_equivariance_and_trace() {
        let mut rng = random::rng(22);
        for _ in 0..5 {
            let omega = AltForm::from_vec(6, 3, &random::vector(&mut rng, 20, 3));
            let g = random::invertible(&mut rng, 6, 3);
            let k = k_endo(&omega, &vol()).unwrap();
            assert!(k.trace().is_zero());
            let kg = k_endo(&omega.pullback(&LinearMap::new(g.clone())).unwrap(), &vol()).unwrap();
            let expected = g.inverse().unwrap().mul(&k).mul(&g).scale(&g.det());
            assert_eq!(kg, expected);
            let l = lambda(&omega, &vol()).unwrap();
            assert_eq!(k.mul(&k), Matrix::identity(6).scale(&l));
        }
    }

    #[test]
    fn lambda_homogeneity_and_vol_independence() {
        let omega = canonical_omega_minus();
        let t = q(3, 2);
        let l = lambda(&omega, &vol()).unwrap();
        assert_eq!(lambda(&omega.scale(&t), &vol()).unwrap(), &l * t.clone() * t.clone() * t.clone() * t);
        assert_eq!(lambda(&omega, &vol().negated()).unwrap(), l);
    }

    #[test]
    fn scaled_structures() {
        let st = scaled_structure(&canonical_omega_plus(), &vol()).unwrap();
        assert_eq!(st.eigenspace_dims(), Some((3, 3)));
        let (plus, minus) = st.eigenspaces().unwrap();
        assert_eq!((plus.len(), minus.len()), (3, 3));
        for v in &minus {
            assert!(v[3..].iter().all(|x| x.is_zero()));
        }
        let st = scaled_structure(&canonical_omega_minus(), &vol()).unwrap();
        assert!(st.lambda.is_negative());
        assert_eq!(st.eigenspace_dims(), None);
    }

    #[test]
    fn scaled_structure_equivariance() {
        let mut rng = random::rng(23);
        let g = random::invertible(&mut rng, 6, 3);
        let pulled = canonical_omega_plus().pullback(&LinearMap::new(g.clone())).unwrap();
        let st = scaled_structure(&pulled, &vol()).unwrap();
        let base = scaled_structure(&canonical_omega_plus(), &vol()).unwrap();
        let d = g.det();
        let conj = g.inverse().unwrap().mul(&base.k).mul(&g);
        assert_eq!(st.k, conj.scale(&d));
        assert_eq!(st.eigenspace_dims(), Some((3, 3)));
    }

    #[test]
    fn hat_of_canonical_forms() {
        let h = hat_exact(&canonical_omega_minus(), &vol().negated()).unwrap();
        assert_eq!(h, canonical_omega_minus_imaginary());
        let h = hat_exact(&canonical_omega_minus(), &vol()).unwrap();
        assert_eq!(h, -&canonical_omega_minus_imaginary());
        let h = hat_exact(&canonical_omega_plus(), &vol()).unwrap();
        assert_eq!(h, f(&[("123", -1), ("456", 1)]));
    }

    #[test]
    fn hat_is_normalized_and_twice_negates() {
        let mut rng = random::rng(24);
        for omega in [canonical_omega_plus(), canonical_omega_minus(), omega_plus_alt()] {
            let g = LinearMap::new(random::invertible(&mut rng, 6, 2));
            let w = omega.pullback(&g).unwrap();
            let h = hat(&w, &vol()).unwrap();
            assert_eq!(h.epsilon, 1);
            let hx = h.exact().unwrap();
            assert!(vol().ratio(&w.wedge(&hx).unwrap()).unwrap().is_positive());
            let hh = hat_exact(&hx, &vol()).unwrap();
            assert_eq!(hh, -&w);
        }
    }

    #[test]
    fn hat_one_slot_rule() {
        // α = Ω + iΩ̂ (resp. Ω + τΩ̂) is K̃-linear in each slot:
        // Ω(K̃x,y,z) = sign(λ)·Ω̂(x,y,z) and Ω̂(K̃x,y,z) = Ω(x,y,z).
        let mut rng = random::rng(25);
        for omega in [canonical_omega_plus(), canonical_omega_minus(), omega_plus_alt()] {
            let g = LinearMap::new(random::invertible(&mut rng, 6, 2));
            let w = omega.pullback(&g).unwrap();
            let st = scaled_structure(&w, &vol()).unwrap();
            let h = hat_exact(&w, &vol()).unwrap();
            let kt = st.k.scale(&(int(1) / sqrt_abs_lambda(&st.lambda).unwrap()));
            let sign = if st.lambda.is_positive() { int(1) } else { int(-1) };
            for _ in 0..5 {
                let vs: Vec<Vec<Scalar>> = (0..3).map(|_| random::vector(&mut rng, 6, 3)).collect();
                let kx = vec![kt.mul_vec(&vs[0]), vs[1].clone(), vs[2].clone()];
                assert_eq!(w.eval(&kx), h.eval(&vs) * &sign);
                assert_eq!(h.eval(&kx), w.eval(&vs));
            }
        }
    }

    #[test]
    fn canonicalize_identity_cases() {
        let c = canonicalize6(&canonical_omega_plus(), &vol()).unwrap();
        assert_eq!(c.basis_rational().unwrap(), LinearMap::identity(6));
        let c = canonicalize6(&canonical_omega_minus(), &vol().negated()).unwrap();
        assert_eq!(c.class, OrbitClass6::O6Minus);
        let g = c.basis_rational().unwrap();
        assert_eq!(canonical_omega_minus().pullback(&g).unwrap(), canonical_omega_minus());
    }

    #[test]
    fn canonicalize_round_trip() {
        let mut rng = random::rng(26);
        for omega in [canonical_omega_plus(), canonical_omega_minus(), omega_plus_alt()] {
            for _ in 0..3 {
                let g0 = LinearMap::new(random::invertible(&mut rng, 6, 3));
                let w = omega.pullback(&g0).unwrap();
                let c = canonicalize6(&w, &vol()).unwrap();
                let g = c.basis_rational().unwrap();
                assert_eq!(c.canonical_form().pullback(&g).unwrap(), w);
            }
        }
    }

    #[test]
    fn canonicalize_irrational_lambda() {
        let forms = [
            AltForm::from_digits(6, &[("156", -1), ("123", 1), ("245", 1), ("134", 2), ("236", 1)]),
            AltForm::from_digits(6, &[("125", 1), ("124", 2), ("156", -1), ("235", 2), ("346", -1)]),
        ];
        for w in forms {
            let l = lambda(&w, &vol()).unwrap();
            assert!(sqrt_abs_lambda(&l).is_none(), "want a non-square λ, got {l}");
            let c = canonicalize6(&w, &vol()).unwrap();
            assert!(c.basis_rational().is_none());
            let back = c.basis.mul(&c.frame);
            assert_eq!(back, Matrix::identity(6));
        }
    }

    #[test]
    fn stabilizer_dimensions() {
        assert_eq!(stabilizer_dim(&canonical_omega_plus()).unwrap(), 16);
        assert_eq!(stabilizer_dim(&canonical_omega_minus()).unwrap(), 16);
        assert_eq!(stabilizer_dim(&f(&[("123", 1)])).unwrap(), 26);
        assert!(stabilizer_dim(&AltForm::from_digits(5, &[("123", 1)])).is_err());
    }
}
