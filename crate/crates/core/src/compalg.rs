//! Cayley–Dickson composition algebras: quaternions ℍ, split-quaternions 𝕌,
//! octonions 𝕆 and split-octonions 𝔹.
//!
//! Each algebra is built from ℝ by repeated doubling
//! (a+bl)(c+dl) = (ac + l²·d̄b) + (da + bc̄)l, so the basis satisfies
//! e_{s+h} = e_s·l at the last level.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::random;
use crate::report::{Check, Report};
use crate::scalar::{int, q, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgebraTag {
    H,
    U,
    O,
    B,
}

impl AlgebraTag {
    pub const ALL: [AlgebraTag; 4] = [AlgebraTag::H, AlgebraTag::U, AlgebraTag::O, AlgebraTag::B];

    pub fn dim(self) -> usize {
        match self {
            AlgebraTag::H | AlgebraTag::U => 4,
            AlgebraTag::O | AlgebraTag::B => 8,
        }
    }

    /// l² at each doubling step, starting from ℝ.
    pub fn l_squares(self) -> &'static [i32] {
        match self {
            AlgebraTag::H => &[-1, -1],
            AlgebraTag::U => &[-1, 1],
            AlgebraTag::O => &[-1, -1, -1],
            AlgebraTag::B => &[-1, -1, 1],
        }
    }

    /// (positive, negative) directions of the norm form.
    pub fn signature(self) -> (usize, usize) {
        match self {
            AlgebraTag::H => (4, 0),
            AlgebraTag::U => (2, 2),
            AlgebraTag::O => (8, 0),
            AlgebraTag::B => (4, 4),
        }
    }

    pub fn is_split(self) -> bool {
        self.signature().1 > 0
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "H" | "h" => Ok(AlgebraTag::H),
            "U" | "u" => Ok(AlgebraTag::U),
            "O" | "o" => Ok(AlgebraTag::O),
            "B" | "b" => Ok(AlgebraTag::B),
            _ => Err(Error::Parse(format!("unknown algebra `{s}` (expected H, U, O or B)"))),
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Element of one of the four algebras, in the basis e₀…e_{dim−1}.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgElement {
    tag: AlgebraTag,
    coords: Vec<Scalar>,
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| format!("{c}·e{i}")).collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn conj_slice(x: &[Scalar]) -> Vec<Scalar> {
    x.iter().enumerate().map(|(i, c)| if i == 0 { c.clone() } else { -c.clone() }).collect()
}

fn add_slice(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn cd_mul(x: &[Scalar], y: &[Scalar], ls: &[i32]) -> Vec<Scalar> {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let (l2, inner) = ls.split_last().expect("level count matches dimension");
    let ac = cd_mul(a, c, inner);
    let dbar_b = cd_mul(&conj_slice(d), b, inner);
    let da = cd_mul(d, a, inner);
    let b_cbar = cd_mul(b, &conj_slice(c), inner);
    let first: Vec<Scalar> = ac.iter().zip(&dbar_b).map(|(u, v)| u + v * int(*l2 as i64)).collect();
    let second = add_slice(&da, &b_cbar);
    first.into_iter().chain(second).collect()
}

impl AlgElement {
    pub fn new(tag: AlgebraTag, coords: Vec<Scalar>) -> Result<Self> {
        if coords.len() != tag.dim() {
            return Err(Error::DimensionMismatch { expected: tag.dim(), found: coords.len() });
        }
        Ok(AlgElement { tag, coords })
    }

    pub fn zero(tag: AlgebraTag) -> Self {
        AlgElement { tag, coords: vec![Scalar::zero(); tag.dim()] }
    }

    pub fn one(tag: AlgebraTag) -> Self {
        Self::basis(tag, 0)
    }

    /// Basis element eᵢ (0-based, e₀ is the unit).
    pub fn basis(tag: AlgebraTag, i: usize) -> Self {
        let mut e = Self::zero(tag);
        e.coords[i] = Scalar::one();
        e
    }

    pub fn random<R: Rng>(tag: AlgebraTag, rng: &mut R, bound: i64) -> Self {
        AlgElement { tag, coords: random::vector(rng, tag.dim(), bound) }
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn multiply(&self, other: &AlgElement) -> Result<AlgElement> {
        if self.tag != other.tag {
            return Err(Error::Shape(format!("cannot multiply {} by {}", self.tag, other.tag)));
        }
        Ok(AlgElement { tag: self.tag, coords: cd_mul(&self.coords, &other.coords, self.tag.l_squares()) })
    }

    /// Product of elements known to share a tag.
    pub fn mul(&self, other: &AlgElement) -> AlgElement {
        self.multiply(other).expect("matching algebra tags")
    }

    pub fn conjugate(&self) -> AlgElement {
        AlgElement { tag: self.tag, coords: conj_slice(&self.coords) }
    }

    pub fn re(&self) -> AlgElement {
        let mut r = Self::zero(self.tag);
        r.coords[0] = self.coords[0].clone();
        r
    }

    pub fn im(&self) -> AlgElement {
        let mut r = self.clone();
        r.coords[0] = Scalar::zero();
        r
    }

    pub fn scale(&self, s: &Scalar) -> AlgElement {
        AlgElement { tag: self.tag, coords: self.coords.iter().map(|c| c * s).collect() }
    }

    /// N(x) = x x̄.
    pub fn norm(&self) -> Scalar {
        self.mul(&self.conjugate()).coords[0].clone()
    }

    /// ⟨x,y⟩ = ½(x ȳ + y x̄)₀.
    pub fn inner(&self, other: &AlgElement) -> Scalar {
        let s = self.mul(&other.conjugate()) + other.mul(&self.conjugate());
        &s.coords[0] * q(1, 2)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }
}

impl Add for AlgElement {
    type Output = AlgElement;
    fn add(self, o: AlgElement) -> AlgElement {
        assert_eq!(self.tag, o.tag);
        AlgElement { tag: self.tag, coords: add_slice(&self.coords, &o.coords) }
    }
}

impl Sub for AlgElement {
    type Output = AlgElement;
    fn sub(self, o: AlgElement) -> AlgElement {
        assert_eq!(self.tag, o.tag);
        AlgElement { tag: self.tag, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        AlgElement { tag: self.tag, coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

/// Gram matrix of the norm form on the basis.
pub fn gram(tag: AlgebraTag) -> Matrix<Scalar> {
    Matrix::from_fn(tag.dim(), tag.dim(), |i, j| AlgElement::basis(tag, i).inner(&AlgElement::basis(tag, j)))
}

/// Full basis multiplication table: `table[i][j] = eᵢ·eⱼ`.
pub fn multiplication_table(tag: AlgebraTag) -> Vec<Vec<AlgElement>> {
    (0..tag.dim())
        .map(|i| (0..tag.dim()).map(|j| AlgElement::basis(tag, i).mul(&AlgElement::basis(tag, j))).collect())
        .collect()
}

/// Basis products are ±e_k; returns (sign, k).
pub fn basis_product(tag: AlgebraTag, i: usize, j: usize) -> (i32, usize) {
    let p = AlgElement::basis(tag, i).mul(&AlgElement::basis(tag, j));
    let (k, c) = p.coords.iter().enumerate().find(|(_, c)| !c.is_zero()).expect("basis products are nonzero");
    (if *c == int(1) { 1 } else { -1 }, k)
}

/// Exact randomized check of the composition-algebra identities.
pub fn verify_identities<R: Rng>(tag: AlgebraTag, trials: usize, rng: &mut R) -> Report {
    let samples: Vec<[AlgElement; 3]> = (0..trials)
        .map(|_| [AlgElement::random(tag, rng, 5), AlgElement::random(tag, rng, 5), AlgElement::random(tag, rng, 5)])
        .collect();
    let show = |xs: &[&AlgElement]| format!("{xs:?}");
    let mut r = Report::default();
    r.push(Check::run("composition N(xy)=N(x)N(y)", trials, |t| {
        let [x, y, _] = &samples[t];
        (x.mul(y).norm() != x.norm() * y.norm()).then(|| show(&[x, y]))
    }));
    r.push(Check::run("left alternative x(xy)=(xx)y", trials, |t| {
        let [x, y, _] = &samples[t];
        (x.mul(&x.mul(y)) != x.mul(x).mul(y)).then(|| show(&[x, y]))
    }));
    r.push(Check::run("right alternative (yx)x=y(xx)", trials, |t| {
        let [x, y, _] = &samples[t];
        (y.mul(x).mul(x) != y.mul(&x.mul(x))).then(|| show(&[x, y]))
    }));
    r.push(Check::run("conjugation reverses products", trials, |t| {
        let [x, y, _] = &samples[t];
        (x.mul(y).conjugate() != y.conjugate().mul(&x.conjugate())).then(|| show(&[x, y]))
    }));
    r.push(Check::run("x ȳ + y x̄ = 2⟨x,y⟩ = 2⟨x̄,ȳ⟩", trials, |t| {
        let [x, y, _] = &samples[t];
        let lhs = x.mul(&y.conjugate()) + y.mul(&x.conjugate());
        let rhs = AlgElement::one(tag).scale(&(int(2) * x.inner(y)));
        let rhs2 = AlgElement::one(tag).scale(&(int(2) * x.conjugate().inner(&y.conjugate())));
        (lhs != rhs || rhs != rhs2).then(|| show(&[x, y]))
    }));
    r.push(Check::run("x(ȳz)+y(x̄z) = 2⟨x,y⟩z", trials, |t| {
        let [x, y, z] = &samples[t];
        let lhs = x.mul(&y.conjugate().mul(z)) + y.mul(&x.conjugate().mul(z));
        (lhs != z.scale(&(int(2) * x.inner(y)))).then(|| show(&[x, y, z]))
    }));
    r
}

/// First ordered triple of imaginary basis elements violating associativity.
pub fn associativity_witness(tag: AlgebraTag) -> Option<(usize, usize, usize)> {
    let n = tag.dim();
    for i in 1..n {
        for j in 1..n {
            for k in 1..n {
                let (a, b, c) = (AlgElement::basis(tag, i), AlgElement::basis(tag, j), AlgElement::basis(tag, k));
                if a.mul(&b.mul(&c)) != a.mul(&b).mul(&c) {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}
