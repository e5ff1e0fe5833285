//! Acceptance criteria. Each test writes one `criterion N: PASS|FAIL` line to
//! stderr (unbuffered, so it shows up without `--nocapture`).

use std::io::Write;

use num::traits::{One, Zero};
use stableforms::bridge::{self, stable6_to_7, stable7_to_vcp, vcp_to_stable6, vcp_to_stable7};
use stableforms::compalg::{self, AlgElement, AlgebraTag};
use stableforms::exteralg::{AltForm, LinearMap, VolumeForm};
use stableforms::framecalc::{
    self, critical_point_check, hitchin_variation, iwasawa_form, para_cy_check, CircleBundleModel, FrameModel, SU3Data,
};
use stableforms::linalg::{Matrix, Surd};
use stableforms::random;
use stableforms::scalar::{int, Scalar};
use stableforms::stable6::{self, canonical_omega_minus, canonical_omega_plus, OrbitClass6};
use stableforms::stable7::{self, canonical_phi_minus, canonical_phi_plus, OrbitClass7};
use stableforms::vcp::{self, CrossProduct, ParaPlane, ThirdBranch, Variant};

fn report(n: usize, passed: bool, what: &str) {
    let status = if passed { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "criterion {n:>2}: {status}  {what}");
}

fn e(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

fn digits(dim: usize, t: &[(&str, i64)]) -> AltForm {
    AltForm::from_digits(dim, t)
}

#[test]
fn criterion_01_composition_identity() {
    let mut rng = random::rng(1001);
    let mut ok = true;
    let start = std::time::Instant::now();
    for tag in AlgebraTag::ALL {
        // N(x) = Σ ⟨eᵢ,eᵢ⟩xᵢ², read off the diagonal gram matrix
        let gram = compalg::gram(tag);
        let norm = |x: &AlgElement| -> Scalar {
            x.coords().iter().enumerate().map(|(i, c)| &gram[(i, i)] * c * c).fold(Scalar::zero(), |a, b| a + b)
        };
        for _ in 0..1000 {
            let x = AlgElement::random(tag, &mut rng, 20);
            let y = AlgElement::random(tag, &mut rng, 20);
            ok &= norm(&x.mul(&y)) == norm(&x) * norm(&y);
        }
    }
    let fast = start.elapsed().as_secs_f64() < 5.0;
    report(1, ok && fast, &format!("N(xy) = N(x)N(y), 1000 pairs in each of H, U, O, B ({:.2?})", start.elapsed()));
    assert!(ok && fast);
}

#[test]
fn criterion_02_cross_product_axioms() {
    let mut rng = random::rng(1002);
    let mut ok = true;
    for tag in [AlgebraTag::O, AlgebraTag::B] {
        let x = CrossProduct::two_fold(tag).unwrap();
        ok &= vcp::verify_axioms(&x, 500, &mut rng).all_passed();
        for v in [Variant::X1, Variant::X2] {
            let x = CrossProduct::three_fold(tag, v).unwrap();
            ok &= vcp::verify_axioms(&x, 500, &mut rng).all_passed();
        }
    }
    report(2, ok, "orthogonality and norm identities for X over O, B and X1, X2 over both, 500 tuples each");
    assert!(ok);
}

#[test]
fn criterion_03_seven_dimensional_reduction() {
    // φ⁻ = e¹²³ − e¹⁶⁷ + e²⁵⁷ − e³⁵⁶ + e¹⁴⁵ + e²⁴⁶ + e³⁴⁷
    let expected = digits(7, &[("123", 1), ("167", -1), ("257", 1), ("356", -1), ("145", 1), ("246", 1), ("347", 1)]);
    let mut ok = true;
    for v in [Variant::X1, Variant::X2] {
        let o = vcp_to_stable7(&CrossProduct::three_fold(AlgebraTag::O, v).unwrap(), &e(8, 0)).unwrap();
        ok &= o.phi == expected && o.class == OrbitClass7::O7Minus;
        let b = vcp_to_stable7(&CrossProduct::three_fold(AlgebraTag::B, v).unwrap(), &e(8, 0)).unwrap();
        ok &= b.class == OrbitClass7::O7Plus;
    }
    report(3, ok, "reduction of X1, X2 by e0 gives φ⁻ exactly over O and an O7_PLUS form over B");
    assert!(ok);
}

#[test]
fn criterion_04_orbit_invariants() {
    let mut rng = random::rng(1004);
    let vol6 = VolumeForm::standard(6);
    let vol7 = VolumeForm::standard(7);
    let mut ok = true;
    for k in 0..200 {
        let base6 = if k % 2 == 0 { canonical_omega_plus() } else { canonical_omega_minus() };
        let omega = base6.pullback(&LinearMap::new(random::invertible(&mut rng, 6, 2))).unwrap();
        let g = LinearMap::new(random::invertible(&mut rng, 6, 2));
        let pulled = omega.pullback(&g).unwrap();
        let det = g.det();
        ok &= stable6::lambda(&pulled, &vol6).unwrap() == &det * &det * stable6::lambda(&omega, &vol6).unwrap();
        ok &= stable6::classify6(&pulled, &vol6).unwrap() == stable6::classify6(&omega, &vol6).unwrap();

        let base7 = if k % 2 == 0 { canonical_phi_minus() } else { canonical_phi_plus() };
        let phi = base7.pullback(&LinearMap::new(random::invertible(&mut rng, 7, 2))).unwrap();
        let g = LinearMap::new(random::invertible(&mut rng, 7, 2));
        let pulled = phi.pullback(&g).unwrap();
        let b = stable7::q_form(&phi, &vol7).unwrap();
        let expected = g.matrix.transpose().mul(&b).mul(&g.matrix).scale(&g.det());
        ok &= stable7::q_form(&pulled, &vol7).unwrap() == expected;
        ok &= stable7::classify7(&pulled, &vol7).unwrap() == stable7::classify7(&phi, &vol7).unwrap();
    }
    report(4, ok, "λ(g*Ω) = det(g)²λ(Ω), B(g*φ) = det(g)gᵀBg, class constant, 200 random g each");
    assert!(ok);
}

#[test]
fn criterion_05_structure_identities() {
    let mut rng = random::rng(1005);
    let vol = VolumeForm::standard(6);
    let (mut plus, mut minus) = (0, 0);
    let mut ok = true;
    let mut draws = 0;
    while (plus < 100 || minus < 100) && draws < 10_000 {
        draws += 1;
        let omega = AltForm::from_vec(6, 3, &random::vector(&mut rng, 20, 3));
        let st = stable6::scaled_structure(&omega, &vol).unwrap();
        let class = st.class();
        let want = match class {
            OrbitClass6::O6Plus if plus < 100 => {
                plus += 1;
                1
            }
            OrbitClass6::O6Minus if minus < 100 => {
                minus += 1;
                -1
            }
            _ => continue,
        };
        ok &= st.k.mul(&st.k) == Matrix::identity(6).scale(&st.lambda);
        let n = st.normalized();
        ok &= n.mul(&n) == Matrix::<Surd>::identity(6).scale(&Surd::rational(int(want)));
        if want == 1 {
            ok &= st.eigenspace_dims() == Some((3, 3));
        }
    }
    ok &= plus == 100 && minus == 100;
    report(5, ok, &format!("K² = λ·Id, scaled square ±Id, para eigenspaces (3,3); {plus}+{minus} random forms"));
    assert!(ok);
}

#[test]
fn criterion_06_stabilizer_dimensions() {
    let dims = [
        stable6::stabilizer_dim(&canonical_omega_plus()).unwrap(),
        stable6::stabilizer_dim(&canonical_omega_minus()).unwrap(),
        stable6::stabilizer_dim(&canonical_phi_minus()).unwrap(),
        stable6::stabilizer_dim(&canonical_phi_plus()).unwrap(),
    ];
    let ok = dims == [16, 16, 14, 14] && 36 - dims[0] == 20 && 49 - dims[2] == 35;
    report(6, ok, &format!("stabilizer dimensions {dims:?}, orbit dimensions {} and {}", 36 - dims[0], 49 - dims[2]));
    assert!(ok);
}

#[test]
fn criterion_07_q_signatures() {
    let vol = VolumeForm::standard(7);
    let minus = stable7::q_inertia(&canonical_phi_minus(), &vol).unwrap().signature().abs();
    let plus = stable7::q_inertia(&canonical_phi_plus(), &vol).unwrap().signature().abs();
    let ok = minus == 7 && plus == 1;
    report(7, ok, &format!("|sig Q| = {minus} for φ⁻ and {plus} for φ⁺"));
    assert!(ok);
}

#[test]
fn criterion_08_circle_bundles() {
    let mut rng = random::rng(1008);
    let su3 = SU3Data::standard();
    let mut ok = true;
    let (mut w3_seen, mut non_w3_seen) = (0, 0);
    for k in 0..24 {
        let f = framecalc::random_curvature(&mut rng, k % 2 == 0);
        // ⟨F,ω⟩ for ω = e¹⁴ + e²⁵ + e³⁶
        let f_dot_omega = f.coef(&[1, 4]) + f.coef(&[2, 5]) + f.coef(&[3, 6]);
        let cb = CircleBundleModel::flat(f.clone()).unwrap();
        let r = framecalc::classify_g2(&cb, &su3).unwrap();
        let f_omega2 = f.wedge(&su3.omega.wedge(&su3.omega).unwrap()).unwrap();
        ok &= r.semi_parallel;
        ok &= r.w3 == f_dot_omega.is_zero() && f_omega2.is_zero() == f_dot_omega.is_zero();
        if r.w3 {
            w3_seen += 1;
            ok &= r.torsion_coclosed == Some(true);
        } else {
            non_w3_seen += 1;
        }
        let nabla = framecalc::nabla_phi(&cb, &su3).unwrap();
        ok &= nabla.f_dot_omega == f_dot_omega && nabla.theta_formula && nabla.pairing_formula;
        ok &= cb.verify_lift_formulas().all_passed();
    }
    let f = digits(6, &[("14", 1)]);
    let nabla = framecalc::nabla_phi(&CircleBundleModel::flat(f).unwrap(), &su3).unwrap();
    ok &= nabla.pairing == int(2);
    ok &= w3_seen >= 10 && non_w3_seen >= 10;
    report(
        8,
        ok,
        &format!("δφ = 0, W3 ⇔ F∧ω² = 0 ⇔ ⟨F,ω⟩ = 0, ∇̄φ identities; {w3_seen} W3 + {non_w3_seen} non-W3 curvatures"),
    );
    assert!(ok);
}

#[test]
fn criterion_09_hitchin_variation() {
    let mut rng = random::rng(1009);
    let vol = VolumeForm::standard(6);
    let mut worst: f64 = 0.0;
    let mut constant = None;
    let mut ok = true;
    for k in 0..50 {
        let base = if k % 2 == 0 { canonical_omega_plus() } else { canonical_omega_minus() };
        let omega = base.pullback(&LinearMap::new(random::invertible(&mut rng, 6, 2))).unwrap();
        let dot = AltForm::from_vec(6, 3, &random::vector(&mut rng, 20, 3));
        let v = hitchin_variation(&omega, &dot, &vol).unwrap();
        let c = v.derivative / v.pairing;
        let c0 = *constant.get_or_insert(c);
        let rel = (c - c0).abs() / c0.abs();
        worst = worst.max(rel).max(v.relative_error());
        ok &= rel <= 1e-6 && v.relative_error() <= 1e-6;
    }
    ok &= constant.is_some_and(|c: f64| (c - framecalc::HITCHIN_CONSTANT).abs() < 1e-6);
    report(
        9,
        ok,
        &format!("d√|λ| = c·(Ω̂∧Ω̇)/vol with c = {:.9}, worst relative error {worst:.2e}", constant.unwrap_or(f64::NAN)),
    );
    assert!(ok);
}

#[test]
fn criterion_10_six_dimensional_models() {
    let kt = FrameModel::kodaira_thurston();
    let w = digits(4, &[("12", 1), ("34", 1)]);
    let pcy = para_cy_check(&kt, &digits(4, &[("13", 1)]), &digits(4, &[("24", 1)]), Some(&w)).unwrap();
    let torus = critical_point_check(&FrameModel::flat_torus(6), &canonical_omega_plus()).unwrap();
    let iw = FrameModel::iwasawa();
    let iwasawa = critical_point_check(&iw, &iwasawa_form()).unwrap();
    let noncritical = framecalc::noncritical_perturbation(&iw, &iwasawa_form()).unwrap();
    let ok = pcy.passed
        && torus.critical
        && iwasawa.closed
        && iwasawa.cocritical
        && noncritical.is_some_and(|p| critical_point_check(&iw, &p).is_ok_and(|r| r.closed && !r.critical));
    report(10, ok, "Kodaira–Thurston para-CY relations, flat-torus Ω⁺ critical, Iwasawa form closed and cocritical");
    assert!(ok);
}

#[test]
fn criterion_11_para_extension_identities() {
    let mut rng = random::rng(1011);
    let a = e(8, 0);
    let b = e(8, 4);
    let mut literal = true;
    let mut corrected = true;
    let mut branches = Vec::new();
    for v in [Variant::X1, Variant::X2] {
        let x = CrossProduct::three_fold(AlgebraTag::B, v).unwrap();
        let plane = ParaPlane::new(&x, &a, &b, 1).unwrap();
        let r = vcp::verify_para_extension_identities(&x, &plane, 200, &mut rng);
        literal &= r.literal.passed("X(Lx,y,n) − LX(x,y,n) = ⟨Lx,y⟩n − ⟨x,y⟩Ln")
            && r.literal.passed("X(Lx,Ly,n) − X(x,y,n) = 2⟨Lx,y⟩Ln")
            && r.branch.is_some();
        corrected &= r.corrected.all_passed() && r.l_squared_is_identity && r.eigenspace_dims == (3, 3);
        branches.push(r.branch);
    }
    report(
        11,
        literal,
        &format!("stated identities over B for X1, X2, 200 tuples; branches {branches:?}, sign-corrected forms hold: {corrected}"),
    );
    // The first identity as stated has exact counterexamples for both
    // extensions of L to P; what is asserted here is that finding together with
    // the corrected identities and the per-variant branch.
    assert!(!literal);
    assert!(corrected);
    assert_eq!(branches, vec![Some(ThirdBranch::Anticommuting), Some(ThirdBranch::Commuting)]);
}

#[test]
fn criterion_12_round_trips() {
    let mut rng = random::rng(1012);
    let vol6 = VolumeForm::standard(6);
    let mut ok = true;
    for base in [canonical_omega_plus(), canonical_omega_minus()] {
        for _ in 0..50 {
            let omega = base.pullback(&LinearMap::new(random::invertible(&mut rng, 6, 2))).unwrap();
            let c = stable6::canonicalize6(&omega, &vol6).unwrap();
            let target = c.canonical_form();
            ok &= target == base;
            let cols: Vec<Vec<Surd>> = (0..6).map(|j| (0..6).map(|i| c.frame[(i, j)].clone()).collect()).collect();
            for m in stableforms::exteralg::MultiIndex::all(6, 3) {
                let idx = m.indices();
                let args: Vec<Vec<Surd>> = idx.iter().map(|&i| cols[i - 1].clone()).collect();
                ok &= omega.eval_in(&args) == Surd::rational(target.coef_of(m));
            }
        }
    }
    let vol7 = VolumeForm::standard(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let phi = canonical_phi_minus().pullback(&LinearMap::new(random::rotation(&mut rng, 7, 3))).unwrap();
        let c = stable7::canonicalize7(&phi, &vol7).unwrap();
        worst = worst.max(c.residual).max(stable7::pullback_residual(&phi, &c.frame, &canonical_phi_minus()));
    }
    ok &= worst <= 1e-9;
    // A: X ↦ φ ↦ X on a⊥
    for tag in [AlgebraTag::O, AlgebraTag::B] {
        for v in [Variant::X1, Variant::X2] {
            let x = CrossProduct::three_fold(tag, v).unwrap();
            let red = vcp_to_stable7(&x, &e(8, 0)).unwrap();
            let back = stable7_to_vcp(&red.phi, &red.frame.vol).unwrap();
            let restricted = x.reduce_by_unit_vector(&e(8, 0)).unwrap();
            for i in 0..7 {
                for j in 0..7 {
                    ok &= back.eval_exact(&[e(7, i), e(7, j)])
                        == Some(vcp::Product::apply(&restricted, &[e(7, i), e(7, j)]));
                }
            }
        }
    }
    // B: X ↦ Ω ↦ φ lands in the orbit of the reduction by a single vector
    for (tag, want, plane_b) in [(AlgebraTag::O, OrbitClass7::O7Minus, 1), (AlgebraTag::B, OrbitClass7::O7Plus, 4)] {
        let x = CrossProduct::three_fold(tag, Variant::X1).unwrap();
        let red = vcp_to_stable6(&x, &e(8, 0), &e(8, plane_b)).unwrap();
        let r = stable6_to_7(&red.omega, Some(&red.frame.ip), &red.frame.vol).unwrap();
        ok &= r.class == want && r.residual < 1e-9;
        ok &= r.phi.is_some_and(|phi| stable7::classify7(&phi, &vol7).is_ok_and(|c| c == want));
        ok &= bridge::is_compatible(&red.structure, &red.frame.ip);
    }
    report(
        12,
        ok,
        &format!("canonicalize6 exact on 100 pullbacks, canonicalize7 worst residual {worst:.1e}, round trips A and B"),
    );
    assert!(ok);
}
