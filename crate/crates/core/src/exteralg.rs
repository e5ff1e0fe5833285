//! Exact exterior algebra on ℝⁿ, n ≤ 8.
//!
//! Forms are stored on the dual basis e¹…eⁿ of the standard basis e₁…eₙ.
//! Contraction follows ι_v(e^{i₁}∧…∧e^{i_p}) = Σ_k (−1)^{k−1} v^{i_k} e^{…î_k…},
//! and evaluation is a(v₁,…,v_p) = ι_{v_p}⋯ι_{v₁}a, i.e. the determinant
//! convention (e¹∧e²)(e₁,e₂) = 1.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{inertia, Field, Inertia, Matrix};
use crate::scalar::{format_scalar, int, to_f64, Scalar};

pub const MAX_DIM: usize = 8;

/// Strictly increasing index set inside 1..=8, stored as a bitmask
/// (bit i−1 set ⇔ index i present).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex(u8);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// From 1-based indices; they must be strictly increasing.
    pub fn new(indices: &[usize]) -> Result<Self> {
        let mut bits = 0u8;
        let mut last = 0;
        for &i in indices {
            if i == 0 || i > MAX_DIM {
                return Err(Error::Shape(format!("index {i} outside 1..={MAX_DIM}")));
            }
            if i <= last {
                return Err(Error::Shape(format!("indices {indices:?} are not strictly increasing")));
            }
            last = i;
            bits |= 1 << (i - 1);
        }
        Ok(MultiIndex(bits))
    }

    pub fn from_bits(bits: u8) -> Self {
        MultiIndex(bits)
    }

    pub fn single(i: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&i));
        MultiIndex(1 << (i - 1))
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_DIM).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> Vec<usize> {
        (1..=MAX_DIM).filter(|&i| self.contains(i)).collect()
    }

    pub fn max_index(self) -> usize {
        8 - self.0.leading_zeros() as usize
    }

    /// Complement inside 1..=n.
    pub fn complement(self, n: usize) -> Self {
        let full = if n == 8 { 0xff } else { (1u8 << n) - 1 };
        MultiIndex(full & !self.0)
    }

    /// All index sets of size `p` in 1..=n, lexicographically ordered.
    pub fn all(n: usize, p: usize) -> Vec<MultiIndex> {
        let mut out: Vec<MultiIndex> =
            (0u16..(1u16 << n)).map(|b| MultiIndex(b as u8)).filter(|m| m.len() == p).collect();
        out.sort();
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len().cmp(&other.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff & diff.wrapping_neg();
        if self.0 & low != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// Sign of e^A ∧ e^B relative to e^{A∪B}; zero when A and B overlap.
pub fn wedge_sign(a: MultiIndex, b: MultiIndex) -> i32 {
    if a.0 & b.0 != 0 {
        return 0;
    }
    let mut swaps = 0;
    for j in b.indices() {
        // indices of A strictly above j
        let above = if j == 8 { 0 } else { a.0 >> j };
        swaps += above.count_ones();
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed(s: i32, x: &Scalar) -> Scalar {
    if s >= 0 {
        x.clone()
    } else {
        -x.clone()
    }
}

/// Alternating p-form on an n-dimensional space with exact coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AltForm {
    dim: usize,
    degree: usize,
    terms: BTreeMap<MultiIndex, Scalar>,
}

impl AltForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        AltForm { dim, degree: degree.min(dim + 1), terms: BTreeMap::new() }
    }

    /// Constant 0-form.
    pub fn constant(dim: usize, c: Scalar) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(MultiIndex::EMPTY, c);
        f
    }

    /// Builds a form from `(indices, coefficient)` pairs. Indices are 1-based
    /// and strictly increasing; repeated index sets are rejected.
    pub fn from_terms(dim: usize, degree: usize, terms: Vec<(Vec<usize>, Scalar)>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::Shape(format!("dimension {dim} exceeds {MAX_DIM}")));
        }
        if degree > dim {
            return Err(Error::Shape(format!("degree {degree} exceeds dimension {dim}")));
        }
        let mut out = Self::zero(dim, degree);
        let mut seen = std::collections::BTreeSet::new();
        for (idx, c) in terms {
            let m = MultiIndex::new(&idx)?;
            if m.len() != degree {
                return Err(Error::Shape(format!("term {idx:?} has length {}, expected {degree}", m.len())));
            }
            if m.max_index() > dim {
                return Err(Error::Shape(format!("term {idx:?} uses an index above {dim}")));
            }
            if !seen.insert(m) {
                return Err(Error::Shape(format!("duplicate term {idx:?}")));
            }
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Shorthand for small hand-written forms: `("123", 1)` is e¹∧e²∧e³.
    /// Panics on malformed input.
    pub fn from_digits(dim: usize, terms: &[(&str, i64)]) -> Self {
        Self::from_digits_q(dim, &terms.iter().map(|&(s, c)| (s, int(c))).collect::<Vec<_>>())
    }

    pub fn from_digits_q(dim: usize, terms: &[(&str, Scalar)]) -> Self {
        let degree = terms.first().map_or(0, |(s, _)| s.len());
        let parsed = terms
            .iter()
            .map(|(s, c)| {
                let idx = s.chars().map(|ch| ch.to_digit(10).expect("digit") as usize).collect();
                (idx, c.clone())
            })
            .collect();
        Self::from_terms(dim, degree, parsed).expect("well-formed digit form")
    }

    /// The 1-form Σ cᵢ eⁱ.
    pub fn one_form(coeffs: &[Scalar]) -> Self {
        let mut f = Self::zero(coeffs.len(), 1);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(MultiIndex::single(i + 1), c.clone());
        }
        f
    }

    /// The basis covector eⁱ (1-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.add_term(MultiIndex::single(i), Scalar::one());
        f
    }

    /// e¹∧…∧eⁿ.
    pub fn top(dim: usize) -> Self {
        let mut f = Self::zero(dim, dim);
        f.add_term(MultiIndex::EMPTY.complement(dim), Scalar::one());
        f
    }

    /// Coordinates on the lexicographic basis of Λᵖ, and back.
    pub fn to_vec(&self) -> Vec<Scalar> {
        MultiIndex::all(self.dim, self.degree).into_iter().map(|m| self.coef_of(m)).collect()
    }

    pub fn from_vec(dim: usize, degree: usize, coords: &[Scalar]) -> Self {
        let basis = MultiIndex::all(dim, degree);
        assert_eq!(basis.len(), coords.len());
        let mut f = Self::zero(dim, degree);
        for (m, c) in basis.into_iter().zip(coords) {
            f.add_term(m, c.clone());
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coef_of(&self, m: MultiIndex) -> Scalar {
        self.terms.get(&m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of e^{i₁…i_p}; indices in any order (sign applied).
    pub fn coef(&self, indices: &[usize]) -> Scalar {
        let mut sorted = indices.to_vec();
        let sign = sort_sign(&mut sorted);
        if sign == 0 {
            return Scalar::zero();
        }
        match MultiIndex::new(&sorted) {
            Ok(m) => signed(sign, &self.coef_of(m)),
            Err(_) => Scalar::zero(),
        }
    }

    fn add_term(&mut self, m: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Scalar::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check_same(&self, other: &AltForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn scale(&self, s: &Scalar) -> AltForm {
        let mut out = Self::zero(self.dim, self.degree);
        if s.is_zero() {
            return out;
        }
        for (m, c) in &self.terms {
            out.terms.insert(*m, c * s);
        }
        out
    }

    pub fn try_add(&self, other: &AltForm) -> Result<AltForm> {
        self.check_same(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Shape(format!("adding forms of degree {} and {}", self.degree, other.degree)));
        }
        let mut out = if self.is_zero() { Self::zero(self.dim, other.degree) } else { self.clone() };
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn wedge(&self, other: &AltForm) -> Result<AltForm> {
        self.check_same(other)?;
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let s = wedge_sign(*a, *b);
                if s != 0 {
                    out.add_term(MultiIndex(a.0 | b.0), signed(s, &(x * y)));
                }
            }
        }
        Ok(out)
    }

    /// Interior product ι_v.
    pub fn contract(&self, v: &[Scalar]) -> Result<AltForm> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        if self.degree == 0 {
            return Err(Error::Shape("contraction of a 0-form".into()));
        }
        let mut out = Self::zero(self.dim, self.degree - 1);
        for (m, c) in &self.terms {
            for (k, i) in m.indices().into_iter().enumerate() {
                if v[i - 1].is_zero() {
                    continue;
                }
                let s = if k % 2 == 0 { 1 } else { -1 };
                out.add_term(MultiIndex(m.0 & !(1 << (i - 1))), signed(s, &(c * &v[i - 1])));
            }
        }
        Ok(out)
    }

    /// a(v₁,…,v_p) over any field containing ℚ.
    pub fn eval_in<T: Field>(&self, vs: &[Vec<T>]) -> T {
        assert_eq!(vs.len(), self.degree, "wrong number of arguments");
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let idx = m.indices();
            let mat = Matrix::from_fn(self.degree, self.degree, |r, k| vs[k][idx[r] - 1].clone());
            let d = if self.degree == 0 { T::one() } else { mat.det() };
            total = total + T::from(c.clone()) * d;
        }
        total
    }

    pub fn eval(&self, vs: &[Vec<Scalar>]) -> Scalar {
        self.eval_in(vs)
    }

    pub fn eval_f64(&self, vs: &[Vec<f64>]) -> f64 {
        assert_eq!(vs.len(), self.degree, "wrong number of arguments");
        let p = self.degree;
        let mut total = 0.0;
        for (m, c) in &self.terms {
            let idx = m.indices();
            let mat = nalgebra::DMatrix::from_fn(p, p, |r, k| vs[k][idx[r] - 1]);
            let d = if p == 0 { 1.0 } else { mat.determinant() };
            total += to_f64(c) * d;
        }
        total
    }

    /// g*a, with (g*a)(v₁,…) = a(gv₁,…).
    pub fn pullback(&self, g: &LinearMap) -> Result<AltForm> {
        if !g.matrix.is_square() {
            return Err(Error::Shape(format!("pullback by a {}x{} map", g.matrix.rows(), g.matrix.cols())));
        }
        if g.matrix.rows() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: g.matrix.rows() });
        }
        let mut out = Self::zero(self.dim, self.degree);
        let targets = MultiIndex::all(self.dim, self.degree);
        for (m, c) in &self.terms {
            let rows = m.indices();
            for t in &targets {
                let cols = t.indices();
                let minor =
                    Matrix::from_fn(self.degree, self.degree, |r, k| g.matrix[(rows[r] - 1, cols[k] - 1)].clone());
                let d = if self.degree == 0 { Scalar::one() } else { minor.det() };
                if !d.is_zero() {
                    out.add_term(*t, c * d);
                }
            }
        }
        Ok(out)
    }

    /// Action of an endomorphism A as a derivation:
    /// (A·a)(v₁,…,v_p) = Σ_k a(v₁,…,Av_k,…,v_p).
    pub fn derivation(&self, a: &Matrix<Scalar>) -> AltForm {
        assert_eq!(a.rows(), self.dim);
        let mut out = Self::zero(self.dim, self.degree);
        for (m, c) in &self.terms {
            let idx = m.indices();
            for (slot, &i) in idx.iter().enumerate() {
                for j in 1..=self.dim {
                    let aij = &a[(i - 1, j - 1)];
                    if aij.is_zero() {
                        continue;
                    }
                    let mut new_idx = idx.clone();
                    new_idx[slot] = j;
                    let s = sort_sign(&mut new_idx);
                    if s == 0 {
                        continue;
                    }
                    let nm = MultiIndex::new(&new_idx).expect("sorted");
                    out.add_term(nm, signed(s, &(c * aij)));
                }
            }
        }
        out
    }

    /// Re-embeds into dimension `new_dim`, sending index i to `map[i−1]`.
    pub fn relabel(&self, new_dim: usize, map: &[usize]) -> Result<AltForm> {
        if map.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: map.len() });
        }
        let mut out = Self::zero(new_dim, self.degree);
        for (m, c) in &self.terms {
            let mut idx: Vec<usize> = m.indices().into_iter().map(|i| map[i - 1]).collect();
            if idx.iter().any(|&j| j == 0 || j > new_dim) {
                return Err(Error::Shape(format!("relabel target outside 1..={new_dim}")));
            }
            let s = sort_sign(&mut idx);
            if s == 0 {
                return Err(Error::Shape("relabel map is not injective".into()));
            }
            out.add_term(MultiIndex::new(&idx)?, signed(s, c));
        }
        Ok(out)
    }

    /// Inverse of [`relabel`](Self::relabel): keeps only terms whose indices
    /// all lie in `map` and renumbers them to 1..=map.len().
    pub fn restrict(&self, map: &[usize]) -> Result<AltForm> {
        let mut out = Self::zero(map.len(), self.degree);
        for (m, c) in &self.terms {
            let idx = m.indices();
            let pos: Option<Vec<usize>> = idx.iter().map(|i| map.iter().position(|j| j == i).map(|p| p + 1)).collect();
            if let Some(mut p) = pos {
                let s = sort_sign(&mut p);
                out.add_term(MultiIndex::new(&p)?, signed(s, c));
            }
        }
        Ok(out)
    }

    /// Divisor space D(a) = {u ∈ V* : u∧a = 0}, as a basis of covectors.
    pub fn divisor_space(&self) -> Result<Vec<Vec<Scalar>>> {
        if self.is_zero() {
            return Err(Error::Degenerate("divisor space of the zero form".into()));
        }
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> =
            (1..=n).map(|i| AltForm::basis(n, i).wedge(self).expect("same dim").to_vec()).collect();
        Ok(Matrix::from_cols(&cols).nullspace())
    }

    pub fn is_decomposable(&self) -> Result<bool> {
        Ok(self.divisor_space()?.len() == self.degree)
    }

    /// Largest absolute coefficient, as f64 (0 for the zero form).
    pub fn max_abs_f64(&self) -> f64 {
        self.terms.values().map(|c| to_f64(&c.abs())).fold(0.0, f64::max)
    }
}

/// Sorts in place and returns the permutation sign, or 0 on a repeat.
pub fn sort_sign(v: &mut [usize]) -> i32 {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return 0;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return 0;
    }
    sign
}

impl fmt::Display for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            if !a.is_one() || m.is_empty() {
                write!(f, "{}", format_scalar(&a))?;
                if !m.is_empty() {
                    write!(f, "·")?;
                }
            }
            if !m.is_empty() {
                write!(f, "{m:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AltForm(n={}, p={}: {})", self.dim, self.degree, self)
    }
}

impl Add for &AltForm {
    type Output = AltForm;
    fn add(self, o: &AltForm) -> AltForm {
        self.try_add(o).expect("forms of matching shape")
    }
}

impl Sub for &AltForm {
    type Output = AltForm;
    fn sub(self, o: &AltForm) -> AltForm {
        self.try_add(&-o).expect("forms of matching shape")
    }
}

impl Neg for &AltForm {
    type Output = AltForm;
    fn neg(self) -> AltForm {
        self.scale(&-Scalar::one())
    }
}

/// Linear map between coordinate spaces; column j is the image of e_j.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub matrix: Matrix<Scalar>,
}

impl LinearMap {
    pub fn new(matrix: Matrix<Scalar>) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(n: usize) -> Self {
        LinearMap { matrix: Matrix::identity(n) }
    }

    pub fn dim_in(&self) -> usize {
        self.matrix.cols()
    }

    pub fn dim_out(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(v)
    }

    pub fn compose(&self, inner: &LinearMap) -> LinearMap {
        LinearMap { matrix: self.matrix.mul(&inner.matrix) }
    }

    pub fn inverse(&self) -> Option<LinearMap> {
        self.matrix.inverse().map(LinearMap::new)
    }

    pub fn det(&self) -> Scalar {
        self.matrix.det()
    }
}

/// Symmetric bilinear form on coordinate space.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    gram: Matrix<Scalar>,
}

impl InnerProduct {
    pub fn new(gram: Matrix<Scalar>) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Shape("gram matrix is not symmetric".into()));
        }
        Ok(InnerProduct { gram })
    }

    pub fn euclidean(n: usize) -> Self {
        InnerProduct { gram: Matrix::identity(n) }
    }

    /// Diagonal metric with the given entries.
    pub fn diagonal(entries: &[i64]) -> Self {
        InnerProduct { gram: Matrix::diagonal(&entries.iter().map(|&x| int(x)).collect::<Vec<_>>()) }
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<Scalar> {
        &self.gram
    }

    pub fn dot(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).fold(Scalar::zero(), |s, (a, b)| s + a * b)
    }

    pub fn inertia(&self) -> Inertia {
        inertia(&self.gram)
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.gram.det().is_zero()
    }

    /// Metric dual covector v♭ = G v.
    pub fn flat(&self, v: &[Scalar]) -> AltForm {
        AltForm::one_form(&self.gram.mul_vec(v))
    }

    /// Induced pairing on p-forms: ⟨e^I, e^J⟩ = det(G⁻¹[I,J]).
    pub fn form_inner(&self, a: &AltForm, b: &AltForm) -> Result<Scalar> {
        a.check_same(b)?;
        if a.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: a.dim() });
        }
        let ginv = self.gram.inverse().ok_or_else(|| Error::Degenerate("inner product is degenerate".into()))?;
        if a.degree() != b.degree() {
            return Ok(Scalar::zero());
        }
        let p = a.degree();
        let mut s = Scalar::zero();
        for (i, x) in a.terms() {
            let ri = i.indices();
            for (j, y) in b.terms() {
                let cj = j.indices();
                let d = if p == 0 {
                    Scalar::one()
                } else {
                    Matrix::from_fn(p, p, |r, c| ginv[(ri[r] - 1, cj[c] - 1)].clone()).det()
                };
                s += x * y * d;
            }
        }
        Ok(s)
    }
}

/// Nonzero top-degree form fixing an orientation and a volume scale.
#[derive(Clone, Debug, PartialEq)]
pub struct VolumeForm {
    form: AltForm,
}

impl VolumeForm {
    pub fn new(form: AltForm) -> Result<Self> {
        if form.degree() != form.dim() {
            return Err(Error::Shape(format!("volume form of degree {} on dimension {}", form.degree(), form.dim())));
        }
        if form.is_zero() {
            return Err(Error::Degenerate("zero volume form".into()));
        }
        Ok(VolumeForm { form })
    }

    /// e¹∧…∧eⁿ.
    pub fn standard(n: usize) -> Self {
        VolumeForm { form: AltForm::top(n) }
    }

    /// c·e¹∧…∧eⁿ.
    pub fn scaled(n: usize, c: Scalar) -> Result<Self> {
        Self::new(AltForm::top(n).scale(&c))
    }

    pub fn negated(&self) -> Self {
        VolumeForm { form: -&self.form }
    }

    pub fn form(&self) -> &AltForm {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    /// The c in vol = c·e¹∧…∧eⁿ.
    pub fn coefficient(&self) -> Scalar {
        self.form.coef_of(MultiIndex::EMPTY.complement(self.dim()))
    }

    pub fn is_positive(&self) -> bool {
        self.coefficient().is_positive()
    }

    /// The number t with `top = t·vol`, for a top-degree form.
    pub fn ratio(&self, top: &AltForm) -> Result<Scalar> {
        if top.dim() != self.dim() || (top.degree() != self.dim() && !top.is_zero()) {
            return Err(Error::Shape("not a top-degree form".into()));
        }
        Ok(top.coef_of(MultiIndex::EMPTY.complement(self.dim())) / self.coefficient())
    }
}

/// Hodge star defined by b∧*a = ⟨b,a⟩·vol.
pub fn hodge_star(a: &AltForm, ip: &InnerProduct, vol: &VolumeForm) -> Result<AltForm> {
    let n = a.dim();
    if ip.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: ip.dim() });
    }
    if vol.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, found: vol.dim() });
    }
    let det = ip.gram().det();
    if det.is_zero() {
        return Err(Error::Degenerate("inner product is degenerate".into()));
    }
    let c = vol.coefficient();
    if &c * &c != det.abs() {
        return Err(Error::Precondition("volume form is not the metric volume form".into()));
    }
    let mut out = AltForm::zero(n, n - a.degree());
    for k in MultiIndex::all(n, a.degree()) {
        let mut ek = AltForm::zero(n, a.degree());
        ek.add_term(k, Scalar::one());
        let pairing = ip.form_inner(&ek, a)?;
        if pairing.is_zero() {
            continue;
        }
        let kc = k.complement(n);
        let s = wedge_sign(k, kc);
        out.add_term(kc, signed(s, &(&c * pairing)));
    }
    Ok(out)
}
