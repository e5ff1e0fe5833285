//! Vector cross products built from the composition algebras: the 2-fold
//! product on the imaginary part and the two 3-fold products on the whole
//! algebra, together with exact axiom checks.

use std::fmt;

use num::traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::compalg::{AlgElement, AlgebraTag};
use crate::error::{Error, Result};
use crate::exteralg::{AltForm, InnerProduct, MultiIndex};
use crate::linalg::Matrix;
use crate::random;
use crate::report::{Check, Report};
use crate::scalar::{int, Scalar};

/// Which formula defines the product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variant {
    /// X(a,b) = ab + ⟨a,b⟩e₀ on the imaginary part.
    X,
    /// X₁(a,b,c) = −a(b̄c) + ⟨a,b⟩c + ⟨b,c⟩a − ⟨c,a⟩b.
    X1,
    /// X₂(a,b,c) = −(ab̄)c + ⟨a,b⟩c + ⟨b,c⟩a − ⟨c,a⟩b.
    X2,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "X" | "x" => Ok(Variant::X),
            "X1" | "x1" => Ok(Variant::X1),
            "X2" | "x2" => Ok(Variant::X2),
            _ => Err(Error::Parse(format!("unknown cross product variant `{s}`"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Anything that evaluates as an r-fold product on a space with a gram matrix.
pub trait Product {
    fn fold(&self) -> usize;
    fn gram(&self) -> &Matrix<Scalar>;
    fn apply(&self, args: &[Vec<Scalar>]) -> Vec<Scalar>;

    fn dim(&self) -> usize {
        self.gram().rows()
    }

    fn dot(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        let gv = self.gram().mul_vec(v);
        u.iter().zip(&gv).fold(Scalar::zero(), |s, (a, b)| s + a * b)
    }
}

#[derive(Clone, Debug)]
enum Kind {
    Algebra(Variant),
    /// X(x,y) = X′(a,x,y) on a⊥, in coordinates of `basis`.
    Reduced {
        variant: Variant,
        a: Vec<Scalar>,
        basis: Vec<Vec<Scalar>>,
        gram_inv: Matrix<Scalar>,
    },
}

/// Cross product over 𝕆 or 𝔹 (or a reduction of one).
#[derive(Clone, Debug)]
pub struct CrossProduct {
    tag: AlgebraTag,
    kind: Kind,
    ip: InnerProduct,
}

fn embed_imaginary(tag: AlgebraTag, v: &[Scalar]) -> AlgElement {
    let mut c = vec![Scalar::zero()];
    c.extend_from_slice(v);
    AlgElement::new(tag, c).expect("imaginary vector of length 7")
}

fn algebra_x3(variant: Variant, a: &AlgElement, b: &AlgElement, c: &AlgElement) -> AlgElement {
    let head = match variant {
        Variant::X1 => a.mul(&b.conjugate().mul(c)),
        Variant::X2 => a.mul(&b.conjugate()).mul(c),
        Variant::X => unreachable!("2-fold variant in a 3-fold evaluation"),
    };
    -head + c.scale(&a.inner(b)) + a.scale(&b.inner(c)) - b.scale(&c.inner(a))
}

impl CrossProduct {
    /// The 2-fold product on Im(𝕆) or Im(𝔹), coordinates e₁…e₇.
    pub fn two_fold(tag: AlgebraTag) -> Result<Self> {
        Self::check_octonionic(tag)?;
        let g = crate::compalg::gram(tag);
        let ip = InnerProduct::new(Matrix::from_fn(7, 7, |i, j| g[(i + 1, j + 1)].clone()))?;
        Ok(CrossProduct { tag, kind: Kind::Algebra(Variant::X), ip })
    }

    /// The 3-fold product X₁ or X₂ on 𝕆 or 𝔹, coordinates e₀…e₇.
    pub fn three_fold(tag: AlgebraTag, variant: Variant) -> Result<Self> {
        Self::check_octonionic(tag)?;
        if variant == Variant::X {
            return Err(Error::Shape("a 3-fold product needs variant X1 or X2".into()));
        }
        let ip = InnerProduct::new(crate::compalg::gram(tag))?;
        Ok(CrossProduct { tag, kind: Kind::Algebra(variant), ip })
    }

    fn check_octonionic(tag: AlgebraTag) -> Result<()> {
        if tag.dim() != 8 {
            return Err(Error::Shape(format!("cross products need 𝕆 or 𝔹, not {tag}")));
        }
        Ok(())
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn variant(&self) -> Variant {
        match &self.kind {
            Kind::Algebra(v) => *v,
            Kind::Reduced { .. } => Variant::X,
        }
    }

    pub fn inner_product(&self) -> &InnerProduct {
        &self.ip
    }

    /// Ambient vectors spanning the domain, for reduced products.
    pub fn domain_basis(&self) -> Option<&[Vec<Scalar>]> {
        match &self.kind {
            Kind::Reduced { basis, .. } => Some(basis),
            Kind::Algebra(_) => None,
        }
    }

    pub fn eval(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.fold() {
            return Err(Error::Shape(format!("expected {} arguments, got {}", self.fold(), args.len())));
        }
        for v in args {
            if v.len() != self.dim() {
                return Err(Error::DimensionMismatch { expected: self.dim(), found: v.len() });
            }
        }
        Ok(self.apply(args))
    }

    /// μ(v₁,…,v_{r+1}) = ⟨X(v₁,…,v_r), v_{r+1}⟩.
    pub fn fundamental_form(&self) -> AltForm {
        let n = self.dim();
        let r = self.fold();
        let e = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i - 1] = Scalar::one();
            v
        };
        let mut terms = Vec::new();
        for m in MultiIndex::all(n, r + 1) {
            let idx = m.indices();
            let args: Vec<Vec<Scalar>> = idx[..r].iter().map(|&i| e(i)).collect();
            let c = self.dot(&self.apply(&args), &e(idx[r]));
            if !c.is_zero() {
                terms.push((idx, c));
            }
        }
        AltForm::from_terms(n, r + 1, terms).expect("valid index sets")
    }

    /// The 2-fold product X(x,y) = X′(a,x,y) on a⊥.
    ///
    /// The domain basis is the projection of standard vectors onto a⊥,
    /// skipping the first one whose projection is dependent; for a = e₀ it is
    /// e₁…e₇ and the result coincides with [`CrossProduct::two_fold`].
    pub fn reduce_by_unit_vector(&self, a: &[Scalar]) -> Result<CrossProduct> {
        let Kind::Algebra(variant @ (Variant::X1 | Variant::X2)) = self.kind else {
            return Err(Error::Shape("reduction needs a 3-fold product".into()));
        };
        if a.len() != 8 {
            return Err(Error::DimensionMismatch { expected: 8, found: a.len() });
        }
        let aa = self.ip.dot(a, a);
        if aa.is_zero() {
            return Err(Error::Degenerate("null vector cannot be reduced by".into()));
        }
        if aa != int(1) && aa != int(-1) {
            return Err(Error::Precondition(format!("⟨a,a⟩ = {aa}, expected ±1")));
        }
        let basis = complement_basis(&self.ip, &[a.to_vec()]);
        let gram = Matrix::from_fn(7, 7, |i, j| self.ip.dot(&basis[i], &basis[j]));
        let gram_inv = gram.inverse().ok_or_else(|| Error::Degenerate("a⊥ is degenerate".into()))?;
        Ok(CrossProduct {
            tag: self.tag,
            kind: Kind::Reduced { variant, a: a.to_vec(), basis, gram_inv },
            ip: InnerProduct::new(gram)?,
        })
    }

    /// Random element of the domain.
    pub fn random_vector<R: Rng>(&self, rng: &mut R, bound: i64) -> Vec<Scalar> {
        random::vector(rng, self.dim(), bound)
    }
}

/// Basis of the orthogonal complement of `span(vs)`: projections of standard
/// vectors, keeping each one that is independent of those already kept.
pub fn complement_basis(ip: &InnerProduct, vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = ip.dim();
    let target = n - vs.len();
    let mut out: Vec<Vec<Scalar>> = Vec::new();
    for i in 0..n {
        let mut e = vec![Scalar::zero(); n];
        e[i] = Scalar::one();
        let p = project_out(ip, vs, &e);
        let mut trial = out.clone();
        trial.push(p.clone());
        if Matrix::from_cols(&trial).rank() == trial.len() {
            out.push(p);
        }
        if out.len() == target {
            break;
        }
    }
    out
}

/// v minus its component in span(vs); `vs` must be mutually orthogonal and non-null.
pub fn project_out(ip: &InnerProduct, vs: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let mut p = v.to_vec();
    for u in vs {
        let c = ip.dot(v, u) / ip.dot(u, u);
        for (pk, uk) in p.iter_mut().zip(u) {
            *pk -= &c * uk;
        }
    }
    p
}

impl Product for CrossProduct {
    fn fold(&self) -> usize {
        match &self.kind {
            Kind::Algebra(Variant::X) | Kind::Reduced { .. } => 2,
            Kind::Algebra(_) => 3,
        }
    }

    fn gram(&self) -> &Matrix<Scalar> {
        self.ip.gram()
    }

    fn apply(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        let tag = self.tag;
        match &self.kind {
            Kind::Algebra(Variant::X) => {
                let a = embed_imaginary(tag, &args[0]);
                let b = embed_imaginary(tag, &args[1]);
                let x = a.mul(&b) + AlgElement::one(tag).scale(&a.inner(&b));
                x.coords()[1..].to_vec()
            }
            Kind::Algebra(v) => {
                let el = |x: &Vec<Scalar>| AlgElement::new(tag, x.clone()).expect("length 8");
                algebra_x3(*v, &el(&args[0]), &el(&args[1]), &el(&args[2])).coords().to_vec()
            }
            Kind::Reduced { variant, a, basis, gram_inv } => {
                let lift = |x: &Vec<Scalar>| {
                    let mut v = vec![Scalar::zero(); 8];
                    for (c, b) in x.iter().zip(basis) {
                        for (vk, bk) in v.iter_mut().zip(b) {
                            *vk += c * bk;
                        }
                    }
                    AlgElement::new(tag, v).expect("length 8")
                };
                let av = AlgElement::new(tag, a.clone()).expect("length 8");
                let w = algebra_x3(*variant, &av, &lift(&args[0]), &lift(&args[1]));
                let ambient = crate::compalg::gram(tag);
                let pairings: Vec<Scalar> = basis
                    .iter()
                    .map(|b| {
                        let gb = ambient.mul_vec(b);
                        w.coords().iter().zip(&gb).fold(Scalar::zero(), |s, (x, y)| s + x * y)
                    })
                    .collect();
                gram_inv.mul_vec(&pairings)
            }
        }
    }
}

fn gram_det<P: Product + ?Sized>(p: &P, ws: &[Vec<Scalar>]) -> Scalar {
    let r = ws.len();
    Matrix::from_fn(r, r, |i, j| p.dot(&ws[i], &ws[j])).det()
}

/// Exact randomized check of the two defining identities of a vector cross
/// product, ⟨X(w),wᵢ⟩ = 0 and ⟨X(w),X(w)⟩ = det(⟨wᵢ,wⱼ⟩), plus total
/// skew-symmetry under adjacent transpositions.
pub fn verify_axioms<P: Product + ?Sized, R: Rng>(p: &P, trials: usize, rng: &mut R) -> Report {
    let r = p.fold();
    let samples: Vec<Vec<Vec<Scalar>>> =
        (0..trials).map(|_| (0..r).map(|_| random::vector(rng, p.dim(), 4)).collect()).collect();
    let mut report = Report::default();
    report.push(Check::run("orthogonality ⟨X(w),wᵢ⟩=0", trials, |t| {
        let ws = &samples[t];
        let x = p.apply(ws);
        ws.iter().any(|w| !p.dot(&x, w).is_zero()).then(|| format!("{ws:?}"))
    }));
    report.push(Check::run("norm ⟨X(w),X(w)⟩=det⟨wᵢ,wⱼ⟩", trials, |t| {
        let ws = &samples[t];
        let x = p.apply(ws);
        (p.dot(&x, &x) != gram_det(p, ws)).then(|| format!("{ws:?}"))
    }));
    report.push(Check::run("total skew-symmetry", trials, |t| {
        let ws = &samples[t];
        let x = p.apply(ws);
        for k in 0..r - 1 {
            let mut sw = ws.clone();
            sw.swap(k, k + 1);
            let y = p.apply(&sw);
            if x.iter().zip(&y).any(|(a, b)| a != &-b.clone()) {
                return Some(format!("swap {k}: {ws:?}"));
            }
        }
        None
    }));
    report
}

/// Which of the two third identities holds for a 3-fold variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ThirdBranch {
    /// LX(n,x,y) = X(Ln,x,y)
    Commuting,
    /// LX(n,x,y) = −X(Ln,x,y) + 2⟨Lx,y⟩n
    Anticommuting,
}

/// Paracomplex structure attached to a Lorentzian plane P = span{a,b}.
#[derive(Clone, Debug)]
pub struct ParaPlane {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
    /// L on all of ℝ⁸: −X(a,b,·) on P⊥ and a ↦ s·b, b ↦ s·a on P.
    pub l: Matrix<Scalar>,
    pub extension_sign: i32,
}

impl ParaPlane {
    /// Builds L for the 3-fold product `cp` over 𝔹.
    pub fn new(cp: &CrossProduct, a: &[Scalar], b: &[Scalar], extension_sign: i32) -> Result<Self> {
        if cp.fold() != 3 || cp.tag() != AlgebraTag::B {
            return Err(Error::Shape("para extension needs a 3-fold product over 𝔹".into()));
        }
        let ip = cp.inner_product();
        if ip.dot(a, a) != int(1) || ip.dot(b, b) != int(-1) || !ip.dot(a, b).is_zero() {
            return Err(Error::Precondition("P must have ⟨a,a⟩=1, ⟨b,b⟩=−1, ⟨a,b⟩=0".into()));
        }
        let s = int(extension_sign as i64);
        let cols: Vec<Vec<Scalar>> = (0..8)
            .map(|j| {
                let mut e = vec![Scalar::zero(); 8];
                e[j] = Scalar::one();
                let ca = ip.dot(&e, a);
                let cb = -ip.dot(&e, b);
                let perp = project_out(ip, &[a.to_vec(), b.to_vec()], &e);
                let lp: Vec<Scalar> = cp.apply(&[a.to_vec(), b.to_vec(), perp]).into_iter().map(|x| -x).collect();
                (0..8).map(|k| &lp[k] + &s * (&ca * &b[k] + &cb * &a[k])).collect()
            })
            .collect();
        Ok(ParaPlane { a: a.to_vec(), b: b.to_vec(), l: Matrix::from_cols(&cols), extension_sign })
    }

    /// Basis of P⊥.
    pub fn complement(&self, ip: &InnerProduct) -> Vec<Vec<Scalar>> {
        complement_basis(ip, &[self.a.clone(), self.b.clone()])
    }

    /// (dim ker(L−1), dim ker(L+1)) restricted to P⊥.
    pub fn eigenspace_dims(&self, ip: &InnerProduct) -> (usize, usize) {
        let basis = self.complement(ip);
        let dim_of = |sign: i64| {
            let cols: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|v| {
                    let lv = self.l.mul_vec(v);
                    lv.iter().zip(v).map(|(x, y)| x - &int(sign) * y).collect()
                })
                .collect();
            basis.len() - Matrix::from_cols(&cols).rank()
        };
        (dim_of(1), dim_of(-1))
    }
}

/// Results of the pointwise identities attached to a paracomplex plane.
#[derive(Clone, Debug, Serialize)]
pub struct ParaExtensionReport {
    pub variant: Variant,
    pub extension_sign: i32,
    /// The identities as stated, checked literally.
    pub literal: Report,
    /// The sign-corrected forms of the first two identities.
    pub corrected: Report,
    /// The third-identity branch that held on every trial, if exactly one did.
    pub branch: Option<ThirdBranch>,
    pub l_squared_is_identity: bool,
    pub eigenspace_dims: (usize, usize),
}

fn lin(terms: &[(Scalar, &Vec<Scalar>)]) -> Vec<Scalar> {
    let n = terms[0].1.len();
    let mut out = vec![Scalar::zero(); n];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            *o += c * x;
        }
    }
    out
}

/// Exact check of the pointwise identities for L on random x, y ∈ P⊥ and n ∈ P.
pub fn verify_para_extension_identities<R: Rng>(
    cp: &CrossProduct,
    plane: &ParaPlane,
    trials: usize,
    rng: &mut R,
) -> ParaExtensionReport {
    let ip = cp.inner_product().clone();
    let l = &plane.l;
    let basis = plane.complement(&ip);
    let samples: Vec<[Vec<Scalar>; 3]> = (0..trials)
        .map(|_| {
            let x = lin(&basis.iter().map(|b| (random::rational(rng, 4), b)).collect::<Vec<_>>());
            let y = lin(&basis.iter().map(|b| (random::rational(rng, 4), b)).collect::<Vec<_>>());
            let n = lin(&[(random::rational(rng, 4), &plane.a), (random::rational(rng, 4), &plane.b)]);
            [x, y, n]
        })
        .collect();
    let one = Scalar::one();
    let x3 = |u: &Vec<Scalar>, v: &Vec<Scalar>, w: &Vec<Scalar>| cp.apply(&[u.clone(), v.clone(), w.clone()]);
    let show = |s: &[Vec<Scalar>; 3]| format!("x={:?} y={:?} n={:?}", s[0], s[1], s[2]);

    let id1 = |t: usize, sign: i64| {
        let [x, y, n] = &samples[t];
        let lx = l.mul_vec(x);
        let ln = l.mul_vec(n);
        let lhs = lin(&[(one.clone(), &x3(&lx, y, n)), (int(sign), &l.mul_vec(&x3(x, y, n)))]);
        let (c1, c2) = (ip.dot(&lx, y), ip.dot(x, y));
        let rhs = if sign < 0 { lin(&[(c1, n), (-c2, &ln)]) } else { lin(&[(c1, n), (c2, &ln)]) };
        (lhs, rhs)
    };
    let id2 = |t: usize| {
        let [x, y, n] = &samples[t];
        let (lx, ly, ln) = (l.mul_vec(x), l.mul_vec(y), l.mul_vec(n));
        let lhs = lin(&[(one.clone(), &x3(&lx, &ly, n)), (-one.clone(), &x3(x, y, n))]);
        (lhs, ln, int(2) * ip.dot(&lx, y))
    };
    let third = |t: usize| {
        let [x, y, n] = &samples[t];
        let lhs = l.mul_vec(&x3(n, x, y));
        let xl = x3(&l.mul_vec(n), x, y);
        let c = int(2) * ip.dot(&l.mul_vec(x), y);
        let anti = lin(&[(-one.clone(), &xl), (c, n)]);
        (lhs == xl, lhs == anti)
    };

    let mut literal = Report::default();
    literal.push(Check::run("X(Lx,y,n) − LX(x,y,n) = ⟨Lx,y⟩n − ⟨x,y⟩Ln", trials, |t| {
        let (lhs, rhs) = id1(t, -1);
        (lhs != rhs).then(|| show(&samples[t]))
    }));
    literal.push(Check::run("X(Lx,Ly,n) − X(x,y,n) = 2⟨Lx,y⟩Ln", trials, |t| {
        let (lhs, ln, c) = id2(t);
        (lhs != lin(&[(c, &ln)])).then(|| show(&samples[t]))
    }));
    literal.push(Check::run("LX(n,x,y) = X(Ln,x,y)", trials, |t| (!third(t).0).then(|| show(&samples[t]))));
    literal.push(Check::run("LX(n,x,y) = −X(Ln,x,y) + 2⟨Lx,y⟩n", trials, |t| {
        (!third(t).1).then(|| show(&samples[t]))
    }));

    let s = int(plane.extension_sign as i64);
    let mut corrected = Report::default();
    corrected.push(Check::run("X(Lx,y,n) + LX(x,y,n) = s(⟨Lx,y⟩n + ⟨x,y⟩Ln)", trials, |t| {
        let (lhs, rhs) = id1(t, 1);
        (lhs != rhs.iter().map(|r| r * &s).collect::<Vec<_>>()).then(|| show(&samples[t]))
    }));
    corrected.push(Check::run("X(Lx,Ly,n) − X(x,y,n) = −2s⟨Lx,y⟩Ln", trials, |t| {
        let (lhs, ln, c) = id2(t);
        (lhs != lin(&[(-(c * &s), &ln)])).then(|| show(&samples[t]))
    }));

    let commuting = literal.passed("LX(n,x,y) = X(Ln,x,y)");
    let anti = literal.passed("LX(n,x,y) = −X(Ln,x,y) + 2⟨Lx,y⟩n");
    let branch = match (commuting, anti) {
        (true, false) => Some(ThirdBranch::Commuting),
        (false, true) => Some(ThirdBranch::Anticommuting),
        _ => None,
    };

    let lperp: Vec<Vec<Scalar>> = basis.iter().map(|v| l.mul_vec(&l.mul_vec(v))).collect();
    let l_squared_is_identity = lperp == basis;
    ParaExtensionReport {
        variant: cp.variant(),
        extension_sign: plane.extension_sign,
        literal,
        corrected,
        branch,
        l_squared_is_identity,
        eigenspace_dims: plane.eigenspace_dims(&ip),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use AlgebraTag::*;

    fn e(n: usize, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    }

    /// The 2-fold product plus a stray copy of its first argument.
    struct Corrupted(CrossProduct);

    impl Product for Corrupted {
        fn fold(&self) -> usize {
            2
        }
        fn gram(&self) -> &Matrix<Scalar> {
            self.0.gram()
        }
        fn apply(&self, args: &[Vec<Scalar>]) -> Vec<Scalar> {
            let a = embed_imaginary(O, &args[0]);
            let b = embed_imaginary(O, &args[1]);
            let mut x = a.mul(&b).coords()[1..].to_vec();
            x[0] += Scalar::one();
            x
        }
    }

    #[test]
    fn two_fold_basics() {
        let x = CrossProduct::two_fold(O).unwrap();
        // imaginary coordinates: e₁ is index 0
        assert_eq!(x.eval(&[e(7, 0), e(7, 1)]).unwrap(), e(7, 2));
        let mut rng = random::rng(5);
        let v = x.random_vector(&mut rng, 5);
        assert!(x.eval(&[v.clone(), v]).unwrap().iter().all(|c| c.is_zero()));
        assert!(x.eval(&[e(7, 0)]).is_err());
        assert!(x.eval(&[e(8, 0), e(8, 1)]).is_err());
    }

    #[test]
    fn three_fold_restricts_to_two_fold() {
        let mut rng = random::rng(6);
        for tag in [O, B] {
            let x = CrossProduct::two_fold(tag).unwrap();
            for variant in [Variant::X1, Variant::X2] {
                let x3 = CrossProduct::three_fold(tag, variant).unwrap();
                for _ in 0..20 {
                    let a = x.random_vector(&mut rng, 4);
                    let b = x.random_vector(&mut rng, 4);
                    let lift = |v: &Vec<Scalar>| {
                        let mut w = vec![Scalar::zero()];
                        w.extend(v.iter().cloned());
                        w
                    };
                    let three = x3.eval(&[e(8, 0), lift(&a), lift(&b)]).unwrap();
                    assert_eq!(three, lift(&x.eval(&[a, b]).unwrap()));
                }
            }
        }
    }

    #[test]
    fn axioms_hold_for_algebra_products() {
        let mut rng = random::rng(7);
        for tag in [O, B] {
            assert!(verify_axioms(&CrossProduct::two_fold(tag).unwrap(), 100, &mut rng).all_passed());
            for v in [Variant::X1, Variant::X2] {
                let r = verify_axioms(&CrossProduct::three_fold(tag, v).unwrap(), 60, &mut rng);
                assert!(r.all_passed(), "{tag} {v}: {r:?}");
            }
        }
    }

    #[test]
    fn corrupted_product_fails_orthogonality() {
        let mut rng = random::rng(8);
        let bad = Corrupted(CrossProduct::two_fold(O).unwrap());
        let r = verify_axioms(&bad, 20, &mut rng);
        let c = r.get("orthogonality ⟨X(w),wᵢ⟩=0").unwrap();
        assert!(!c.passed);
        assert!(c.witness.is_some());
    }

    #[test]
    fn fundamental_forms_are_canonical() {
        let phi_minus = crate::stable7::canonical_phi_minus();
        let phi_plus = crate::stable7::canonical_phi_plus();
        assert_eq!(CrossProduct::two_fold(O).unwrap().fundamental_form(), phi_minus);
        assert_eq!(CrossProduct::two_fold(B).unwrap().fundamental_form(), phi_plus);
    }

    #[test]
    fn fundamental_form_is_alternating_and_matches_evaluation() {
        let mut rng = random::rng(9);
        let x = CrossProduct::three_fold(B, Variant::X2).unwrap();
        let mu = x.fundamental_form();
        assert_eq!(mu.degree(), 4);
        for _ in 0..10 {
            let vs: Vec<Vec<Scalar>> = (0..4).map(|_| x.random_vector(&mut rng, 3)).collect();
            let direct = x.dot(&x.apply(&vs[..3]), &vs[3]);
            assert_eq!(mu.eval(&vs), direct);
            let mut sw = vs.clone();
            sw.swap(1, 3);
            assert_eq!(mu.eval(&sw), -direct);
        }
    }

    #[test]
    fn fundamental_form_cycle_equivariance() {
        // The cycle e₁→e₂→e₃ preserves the quaternion subalgebra and the 2-fold table.
        let mu = CrossProduct::two_fold(O).unwrap().fundamental_form();
        let mut p = Matrix::<Scalar>::zeros(7, 7);
        for (i, j) in [(0, 1), (1, 2), (2, 0), (3, 3), (4, 5), (5, 6), (6, 4)] {
            p[(j, i)] = Scalar::one();
        }
        let pulled = mu.pullback(&crate::exteralg::LinearMap::new(p)).unwrap();
        assert_eq!(pulled, mu);
    }

    #[test]
    fn norm_of_two_fold_product() {
        let mut rng = random::rng(10);
        for tag in [O, B] {
            let x = CrossProduct::two_fold(tag).unwrap();
            for _ in 0..20 {
                let a = x.random_vector(&mut rng, 4);
                let b = x.random_vector(&mut rng, 4);
                let c = x.eval(&[a.clone(), b.clone()]).unwrap();
                let ab = x.dot(&a, &b);
                assert_eq!(x.dot(&c, &c), x.dot(&a, &a) * x.dot(&b, &b) - &ab * &ab);
            }
        }
    }

    #[test]
    fn reduction_by_e0_is_the_two_fold_product() {
        let x = CrossProduct::two_fold(O).unwrap();
        for v in [Variant::X1, Variant::X2] {
            let red = CrossProduct::three_fold(O, v).unwrap().reduce_by_unit_vector(&e(8, 0)).unwrap();
            for i in 0..7 {
                for j in 0..7 {
                    assert_eq!(red.eval(&[e(7, i), e(7, j)]).unwrap(), x.eval(&[e(7, i), e(7, j)]).unwrap());
                }
            }
        }
    }

    #[test]
    fn reduction_by_other_unit_vectors() {
        let mut rng = random::rng(11);
        let x3 = CrossProduct::three_fold(O, Variant::X1).unwrap();
        let red = x3.reduce_by_unit_vector(&e(8, 1)).unwrap();
        assert!(verify_axioms(&red, 40, &mut rng).all_passed());
        let mut a = vec![Scalar::zero(); 8];
        a[0] = crate::scalar::q(3, 5);
        a[2] = crate::scalar::q(4, 5);
        let red = x3.reduce_by_unit_vector(&a).unwrap();
        assert!(verify_axioms(&red, 40, &mut rng).all_passed());
        let null = {
            let mut v = e(8, 0);
            v[4] = Scalar::one();
            v
        };
        let xb = CrossProduct::three_fold(B, Variant::X1).unwrap();
        assert!(matches!(xb.reduce_by_unit_vector(&null), Err(Error::Degenerate(_))));
    }

    #[test]
    fn para_plane_structure() {
        let x = CrossProduct::three_fold(B, Variant::X1).unwrap();
        let plane = ParaPlane::new(&x, &e(8, 0), &e(8, 4), 1).unwrap();
        assert_eq!(plane.eigenspace_dims(x.inner_product()), (3, 3));
        assert!(ParaPlane::new(&x, &e(8, 0), &e(8, 1), 1).is_err());
    }

    #[test]
    fn para_identities_branch_per_variant() {
        let mut rng = random::rng(12);
        let mut branches = Vec::new();
        for v in [Variant::X1, Variant::X2] {
            let x = CrossProduct::three_fold(B, v).unwrap();
            let plane = ParaPlane::new(&x, &e(8, 0), &e(8, 4), 1).unwrap();
            let r = verify_para_extension_identities(&x, &plane, 30, &mut rng);
            assert!(r.corrected.all_passed(), "{v}: {:?}", r.corrected);
            assert!(r.l_squared_is_identity);
            assert_eq!(r.eigenspace_dims, (3, 3));
            branches.push(r.branch);
        }
        assert_eq!(branches, vec![Some(ThirdBranch::Anticommuting), Some(ThirdBranch::Commuting)]);
    }

    #[test]
    fn para_identities_under_the_other_extension() {
        let mut rng = random::rng(13);
        let x = CrossProduct::three_fold(B, Variant::X1).unwrap();
        let plane = ParaPlane::new(&x, &e(8, 0), &e(8, 4), -1).unwrap();
        let r = verify_para_extension_identities(&x, &plane, 30, &mut rng);
        assert!(r.corrected.all_passed());
        assert!(r.literal.passed("X(Lx,Ly,n) − X(x,y,n) = 2⟨Lx,y⟩Ln"));
        assert!(!r.literal.passed("X(Lx,y,n) − LX(x,y,n) = ⟨Lx,y⟩n − ⟨x,y⟩Ln"));
        assert_eq!(r.branch, Some(ThirdBranch::Commuting));
    }
}
