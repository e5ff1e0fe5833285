//! Exact dense linear algebra over ℚ and over quadratic extensions ℚ(√d).

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Sub};

use num::traits::{One, Signed, Zero};

use crate::scalar::{sqrt_exact, to_f64, Scalar};

/// Field operations needed by the elimination routines.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + From<Scalar>
{
}

impl<T> Field for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Div<Output = T>
        + From<Scalar>
{
}

/// Element `a + b√d` of ℚ(√d), `d` not a rational square.
///
/// Elements with `b = 0` are compatible with every `d`; `d` is carried only
/// when the irrational part is present.
#[derive(Clone)]
pub struct Surd {
    a: Scalar,
    b: Scalar,
    d: Scalar,
}

impl Surd {
    pub fn new(a: Scalar, b: Scalar, d: Scalar) -> Self {
        if b.is_zero() {
            return Surd::rational(a);
        }
        debug_assert!(sqrt_exact(&d).is_none(), "d must not be a rational square");
        Surd { a, b, d }
    }

    pub fn rational(a: Scalar) -> Self {
        Surd { a, b: Scalar::zero(), d: Scalar::zero() }
    }

    /// √x, collapsing to a rational when `x` is a square.
    pub fn sqrt(x: &Scalar) -> Self {
        assert!(!x.is_negative(), "square root of a negative rational");
        match sqrt_exact(x) {
            Some(r) => Surd::rational(r),
            None => Surd { a: Scalar::zero(), b: Scalar::one(), d: x.clone() },
        }
    }

    pub fn rational_part(&self) -> &Scalar {
        &self.a
    }

    pub fn irrational_part(&self) -> &Scalar {
        &self.b
    }

    pub fn radicand(&self) -> &Scalar {
        &self.d
    }

    pub fn to_rational(&self) -> Option<Scalar> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.a) + to_f64(&self.b) * to_f64(&self.d).sqrt()
    }

    /// Galois conjugate `a − b√d`.
    pub fn conj(&self) -> Self {
        Surd { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm `a² − b²d`.
    pub fn norm(&self) -> Scalar {
        &self.a * &self.a - &self.b * &self.b * &self.d
    }

    /// Sign of the real number `a + b√d`.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // Opposite signs: compare a² with b²d.
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * &self.d;
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    fn radicand_with(&self, other: &Surd) -> Scalar {
        if !self.b.is_zero() {
            debug_assert!(other.b.is_zero() || other.d == self.d, "mixed radicands");
            self.d.clone()
        } else {
            other.d.clone()
        }
    }
}

fn sign_of(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}√{}", self.a, self.b, self.d)
        }
    }
}

impl From<Scalar> for Surd {
    fn from(a: Scalar) -> Self {
        Surd::rational(a)
    }
}

impl Zero for Surd {
    fn zero() -> Self {
        Surd::rational(Scalar::zero())
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Surd {
    fn one() -> Self {
        Surd::rational(Scalar::one())
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, o: Surd) -> Surd {
        let d = self.radicand_with(&o);
        Surd::new(self.a + o.a, self.b + o.b, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, o: Surd) -> Surd {
        let d = self.radicand_with(&o);
        Surd::new(self.a - o.a, self.b - o.b, d)
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, o: Surd) -> Surd {
        let d = self.radicand_with(&o);
        let a = &self.a * &o.a + &self.b * &o.b * &d;
        let b = &self.a * &o.b + &self.b * &o.a;
        Surd::new(a, b, d)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, o: Surd) -> Surd {
        let n = o.norm();
        assert!(!n.is_zero(), "division by zero in ℚ(√d)");
        let inv = Surd { a: &o.a / &n, b: -(&o.b / &n), d: o.d.clone() };
        self * inv
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Field> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Builds from column vectors.
    pub fn from_cols(cols: &[Vec<T>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, |i, j| cols[j][i].clone())
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| if r == c { entries[r].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn map<U: Field>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut s = T::zero();
            for k in 0..self.cols {
                s = s + self[(r, k)].clone() * other[(k, c)].clone();
            }
            s
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                let mut s = T::zero();
                for k in 0..self.cols {
                    s = s + self[(r, k)].clone() * v[k].clone();
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + other[(r, c)].clone())
    }

    pub fn sub(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() - other[(r, c)].clone())
    }

    pub fn scale(&self, s: &T) -> Matrix<T> {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> T {
        let mut s = T::zero();
        for i in 0..self.rows.min(self.cols) {
            s = s + self[(i, i)].clone();
        }
        s
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self[(r, c)] == self[(c, r)]))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<T>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one() / m[(row, col)].clone();
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].clone() * inv.clone();
            }
            for r in 0..m.rows {
                if r != row && !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone();
                    for c in col..m.cols {
                        let v = m[(r, c)].clone() - f.clone() * m[(row, c)].clone();
                        m[(r, c)] = v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{x : Mx = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r[(i, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
                return T::zero();
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let piv = m[(col, col)].clone();
            det = det * piv.clone();
            for r in col + 1..n {
                if !m[(r, col)].is_zero() {
                    let f = m[(r, col)].clone() / piv.clone();
                    for c in col..n {
                        let v = m[(r, c)].clone() - f.clone() * m[(col, c)].clone();
                        m[(r, c)] = v;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    /// Solves `M x = b` for one particular solution.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let aug =
            Self::from_fn(
                self.rows,
                self.cols + 1,
                |r, c| {
                    if c < self.cols {
                        self[(r, c)].clone()
                    } else {
                        b[r].clone()
                    }
                },
            );
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = red[(i, self.cols)].clone();
        }
        Some(x)
    }
}

impl Matrix<Scalar> {
    pub fn to_f64(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |r, c| to_f64(&self[(r, c)]))
    }
}

/// Numbers of positive, negative and zero eigenvalues of a symmetric form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero == 0
    }
}

/// Exact inertia of a symmetric rational matrix by congruence pivoting.
pub fn inertia(m: &Matrix<Scalar>) -> Inertia {
    assert!(m.is_symmetric(), "inertia needs a symmetric matrix");
    let mut a = m.clone();
    let n = a.rows;
    let mut live: Vec<usize> = (0..n).collect();
    let mut res = Inertia { positive: 0, negative: 0, zero: 0 };
    while !live.is_empty() {
        let pivot = match live.iter().position(|&i| !a[(i, i)].is_zero()) {
            Some(p) => live[p],
            None => {
                // All diagonal entries vanish; an off-diagonal one gives a
                // nonzero diagonal after e_i ← e_i + e_j.
                let pair = live
                    .iter()
                    .enumerate()
                    .find_map(|(x, &i)| live[x + 1..].iter().find(|&&j| !a[(i, j)].is_zero()).map(|&j| (i, j)));
                match pair {
                    None => {
                        res.zero += live.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[(i, k)].clone() + a[(j, k)].clone();
                            a[(i, k)] = v;
                        }
                        for k in 0..n {
                            let v = a[(k, i)].clone() + a[(k, j)].clone();
                            a[(k, i)] = v;
                        }
                        i
                    }
                }
            }
        };
        let p = a[(pivot, pivot)].clone();
        if p.is_positive() {
            res.positive += 1;
        } else {
            res.negative += 1;
        }
        live.retain(|&i| i != pivot);
        for &r in &live {
            if a[(r, pivot)].is_zero() {
                continue;
            }
            let f = a[(r, pivot)].clone() / p.clone();
            for &c in &live {
                let v = a[(r, c)].clone() - f.clone() * a[(pivot, c)].clone();
                a[(r, c)] = v;
            }
            a[(r, pivot)] = Scalar::zero();
        }
        for &c in &live {
            a[(pivot, c)] = Scalar::zero();
        }
    }
    res
}
