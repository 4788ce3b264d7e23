use lcs::algebra::{LieAlgebra, LinearMap, Subspace, Vector};
use lcs::constructions::{
    contact_from_exact_lcs, cotangent_extension, cotangent_presentation, derivation_action,
    lcs_from_contact, lcs_from_cosymplectic, mixed_decomposition, Ansatz, ConstructionError,
    ContactData, CosymplecticData, CotangentInput, CotangentViolation,
};
use lcs::forms::KForm;
use lcs::lcs::{verify_lcs, Kind, LcsStructure};
use lcs::linalg::Matrix;
use lcs::notation::{parse_form, parse_salamon, print_salamon, Bindings};
use lcs::scalar::{int, ratio, Scalar};

fn alg(s: &str) -> LieAlgebra {
    parse_salamon(s, &Bindings::new()).unwrap()
}

fn form(s: &str, n: usize) -> KForm {
    parse_form(s, n, &Bindings::new()).unwrap()
}

fn structure(g: &str, omega: &str, theta: &str) -> LcsStructure {
    let g = alg(g);
    let n = g.dim();
    verify_lcs(&g, &form(omega, n), &form(theta, n)).unwrap()
}

fn diag(xs: &[Scalar]) -> LinearMap {
    LinearMap::diagonal(xs)
}

fn vec_of(xs: &[Scalar]) -> Vector {
    Vector(xs.to_vec())
}

const HEIS: &str = "(0,0,-12)";

#[test]
fn contact_first_kind() {
    let cd = ContactData::new(
        alg(HEIS),
        form("e3", 3),
        diag(&[int(-1), int(1), int(0)]),
        int(0),
    )
    .unwrap();
    let out = lcs_from_contact(&cd).unwrap();
    assert_eq!(out.theta_of_u, int(1));
    assert_eq!(out.structure.kind(), Kind::FirstKind);
    assert!(out.structure.exactness_data().is_some());
}

#[test]
fn contact_half_eigenvalue() {
    let cd = ContactData::new(
        alg(HEIS),
        form("e3", 3),
        diag(&[ratio(1, 2), int(0), ratio(1, 2)]),
        ratio(1, 2),
    )
    .unwrap();
    let out = lcs_from_contact(&cd).unwrap();
    assert_eq!(out.theta_of_u, ratio(1, 2));
    assert_eq!(out.structure.kind(), Kind::SecondKind);
    assert!(out.structure.check_primitive(&out.eta, &out.u).is_ok());
}

#[test]
fn contact_rejects_alpha_one() {
    let e = ContactData::new(
        alg(HEIS),
        form("e3", 3),
        diag(&[int(1), int(0), int(1)]),
        int(1),
    )
    .unwrap_err();
    assert_eq!(e, ConstructionError::AlphaIsOne);
    let e = ContactData::new(
        alg(HEIS),
        form("e3", 3),
        diag(&[int(1), int(0), int(0)]),
        int(0),
    )
    .unwrap_err();
    assert!(matches!(e, ConstructionError::NotDerivation { .. }));
}

#[test]
fn contact_from_d4() {
    let s = structure("(14,-24,-12,0)", "-e12+e34", "e4");
    let cd = contact_from_exact_lcs(&s, &form("e3", 4), &Vector::basis(4, 3)).unwrap();
    assert_eq!(print_salamon(&cd.h), "(0,0,-12)");
    assert_eq!(cd.alpha, int(0));
    assert_eq!(cd.eta, form("e3", 3));
    assert_eq!(cd.derivation, diag(&[int(1), int(-1), int(0)]));
}

#[test]
fn contact_from_d4_1() {
    let s = structure("(14,0,-12+34,0)", "-e12+2*e34", "e4");
    let u = vec_of(&[int(0), int(0), int(0), ratio(1, 2)]);
    let cd = contact_from_exact_lcs(&s, &form("e3", 4), &u).unwrap();
    assert_eq!(cd.alpha, ratio(1, 2));
    assert_eq!(
        derivation_action(&cd.derivation, &cd.eta),
        cd.eta.scale(&ratio(1, 2))
    );
}

#[test]
fn contact_blocked_on_r2_prime() {
    let s = structure("(0,0,-13+24,-14-23)", "e13-e14-2*e24", "e2");
    let ex = s.exactness_data().expect("exact");
    assert!(s.check_primitive(&ex.eta, &ex.u).is_ok());
    assert_eq!(s.theta.eval1(&ex.u), int(0));
    let err = contact_from_exact_lcs(&s, &ex.eta, &ex.u).unwrap_err();
    assert_eq!(
        err,
        ConstructionError::ThetaOfUZero {
            kernel_contact: false
        }
    );
}

#[test]
fn contact_round_trip() {
    let cases = [
        (diag(&[int(-1), int(1), int(0)]), int(0)),
        (diag(&[ratio(1, 2), int(0), ratio(1, 2)]), ratio(1, 2)),
        (diag(&[int(2), int(1), int(3)]), int(3)),
    ];
    for (d, a) in cases {
        let cd = ContactData::new(alg(HEIS), form("e3", 3), d, a).unwrap();
        let out = lcs_from_contact(&cd).unwrap();
        let back = contact_from_exact_lcs(&out.structure, &out.eta, &out.u).unwrap();
        assert_eq!(back.h.nonzero_brackets(), cd.h.nonzero_brackets());
        assert_eq!(back.eta, cd.eta);
        assert_eq!(back.derivation, cd.derivation);
        assert_eq!(back.alpha, cd.alpha);
    }
}

#[test]
fn cosymplectic_example_one() {
    let d = LinearMap::from_int_rows(&[&[1, 1, 0], &[-1, 1, 0], &[0, 0, 0]]);
    let cd = CosymplecticData::new(
        LieAlgebra::abelian(3),
        form("e3", 3),
        form("e12", 3),
        d,
        int(2),
    )
    .unwrap();
    let out = lcs_from_cosymplectic(&cd).unwrap();
    assert_eq!(out.omega, form("e12+e34", 4));
    assert_eq!(out.theta, form("-2*e4", 4));
    assert!(!out.exact);
    assert!(out.nonexact_check);
    assert_eq!(out.reeb, Vector::basis(3, 2));
}

#[test]
fn cosymplectic_example_two() {
    let d = LinearMap::from_int_rows(&[&[1, 0, 0], &[0, 1, 1], &[0, -1, 1]]);
    let cd = CosymplecticData::new(
        LieAlgebra::abelian(3),
        form("e1", 3),
        form("e23", 3),
        d,
        int(2),
    )
    .unwrap();
    let out = lcs_from_cosymplectic(&cd).unwrap();
    assert_eq!(out.omega, form("e14+e23", 4));
    assert_eq!(out.theta, form("-2*e4", 4));
    assert!(!out.exact);
    // trace of D is 3, the criterion gives beta = 1 != -2
    assert_eq!(out.beta, int(1));
    assert!(!out.unimodular);
    assert_eq!(out.unimodular, out.unimodular_by_trace);
}

#[test]
fn cosymplectic_unimodular_criterion() {
    // D = diag(1, 1, -2) on R^3, omega = e12: D·omega = 2 omega, D·eta = -2 eta
    let d = diag(&[int(1), int(1), int(-2)]);
    let cd = CosymplecticData::new(
        LieAlgebra::abelian(3),
        form("e3", 3),
        form("e12", 3),
        d,
        int(2),
    )
    .unwrap();
    let out = lcs_from_cosymplectic(&cd).unwrap();
    assert!(out.unimodular);
    assert!(out.unimodular_by_trace);
    assert!(!out.exact);
}

#[test]
fn cosymplectic_rejects_bad_data() {
    let d = LinearMap::from_int_rows(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
    let e = CosymplecticData::new(
        LieAlgebra::abelian(3),
        form("e3", 3),
        form("e13", 3),
        d.clone(),
        int(2),
    )
    .unwrap_err();
    assert_eq!(e, ConstructionError::NotCosymplectic);
    let e = CosymplecticData::new(
        LieAlgebra::abelian(3),
        form("e3", 3),
        form("e12", 3),
        d,
        int(0),
    )
    .unwrap_err();
    assert_eq!(e, ConstructionError::AlphaIsZero);
}

#[test]
fn mixed_rr3_minus_one() {
    let s = structure("(0,-12,13,0)", "e12+e34", "e1");
    let m = mixed_decomposition(&s, &form("-e2", 4)).unwrap();
    assert_eq!(m.omega, form("e34", 4));
    assert_eq!(m.u, Vector::basis(4, 0));
    assert!(m.equations_hold);
    assert_eq!(
        derivation_action(&m.derivation, &m.omega_h),
        m.omega_h.neg()
    );
    assert_eq!(m.ansatz, Ansatz::Cosymplectic);
}

#[test]
fn mixed_r2_prime() {
    let s = structure("(0,0,-13+24,-14-23)", "2*e12+e34", "-2*e1");
    let m = mixed_decomposition(&s, &form("e2", 4)).unwrap();
    assert_eq!(m.omega, form("e34", 4));
    assert_eq!(m.u, vec_of(&[ratio(-1, 2), int(0), int(0), int(0)]));
    assert!(m.equations_hold);
    assert_eq!(m.ansatz, Ansatz::Cosymplectic);
}

#[test]
fn mixed_first_kind_is_contact_ansatz() {
    let s = structure("(14,-24,-12,0)", "-e12+e34", "e4");
    let ex = s.exactness_data().unwrap();
    let m = mixed_decomposition(&s, &ex.eta).unwrap();
    assert!(m.equations_hold);
    assert_eq!(m.ansatz, Ansatz::Contact);
}

#[test]
fn mixed_side_conditions() {
    let s = structure("(0,-12,13,0)", "e12+e34", "e1");
    assert!(matches!(
        mixed_decomposition(&s, &form("e3", 4)),
        Err(ConstructionError::SideConditions { .. })
    ));
}

#[test]
fn r2r2_rebuilt_from_cosymplectic_kernel() {
    let s = structure("(0,-12,0,-34)", "2*e13+e24", "-e1-e3");
    let m = mixed_decomposition(&s, &form("-e1+e3", 4)).unwrap();
    assert_eq!(m.omega, form("e24", 4));
    assert_eq!(m.u, vec_of(&[ratio(-1, 2), int(0), ratio(-1, 2), int(0)]));
    assert_eq!(m.ansatz, Ansatz::Cosymplectic);
    assert!(derivation_action(&m.derivation, &m.eta_h).is_zero());
    let cd = CosymplecticData::new(
        m.h.clone(),
        m.eta_h.clone(),
        m.omega_h.clone(),
        m.derivation.clone(),
        int(-1),
    )
    .unwrap();
    let out = lcs_from_cosymplectic(&cd).unwrap();
    let mut adapted = m.kernel_basis.clone();
    adapted.push(m.u.clone());
    let g = s.algebra.in_basis(&adapted).unwrap();
    assert_eq!(g.nonzero_brackets(), out.algebra.nonzero_brackets());
    let p = Matrix::from_columns(
        4,
        &adapted
            .iter()
            .map(|v| v.coords().to_vec())
            .collect::<Vec<_>>(),
    );
    assert_eq!(s.omega.pullback(&p), out.omega);
    assert_eq!(s.theta.pullback(&p), out.theta);
}

#[test]
fn cotangent_abelian_plane() {
    let ci = CotangentInput::trivial(LieAlgebra::abelian(2), KForm::zero(2, 1));
    let ext = cotangent_extension(&ci).unwrap();
    assert!(ext.lcs_ok && ext.direct_ok);
    assert!(!ext.proper);
    assert_eq!(print_salamon(&ext.algebra), "(0,0,0,0)");
    assert_eq!(ext.omega0, form("e13+e24", 4));
}

#[test]
fn cotangent_cyclic_violation() {
    let mut ci = CotangentInput::trivial(LieAlgebra::abelian(3), KForm::zero(3, 1));
    ci.alpha[0][1] = vec_of(&[int(0), int(0), int(1)]);
    ci.alpha[1][0] = vec_of(&[int(0), int(0), int(-1)]);
    let ext = cotangent_extension(&ci).unwrap();
    assert!(!ext.lcs_ok);
    assert!(!ext.direct_ok);
    assert!(matches!(
        ext.violation,
        Some(CotangentViolation::Cyclic {
            i: 1,
            j: 2,
            k: 3,
            ..
        })
    ));
}

#[test]
fn cotangent_rho_condition() {
    // rho = 0 with theta_hat = f^1 on R^2 fails: d_theta f^2 = -f^12
    let ci = CotangentInput::trivial(LieAlgebra::abelian(2), form("e1", 2));
    let ext = cotangent_extension(&ci).unwrap();
    assert!(!ext.lcs_ok);
    assert!(!ext.direct_ok);
    // rho(f_1) = -theta_hat(f_1) id fixes it
    let mut ci = ci;
    ci.rho[0] = diag(&[int(-1), int(-1)]);
    let ext = cotangent_extension(&ci).unwrap();
    assert!(ext.lcs_ok && ext.direct_ok, "{:?}", ext.violation);
}

fn span(idx: &[usize]) -> Subspace {
    Subspace::span(
        4,
        &idx.iter()
            .map(|&i| Vector::basis(4, i - 1))
            .collect::<Vec<_>>(),
    )
}

#[test]
fn presentations() {
    let cases = [
        (structure("(0,0,-12,0)", "e12-e34", "e4"), span(&[1, 3])),
        (
            structure("(0,-12,-1/2*13,0)", "e13+e24", "-e1"),
            span(&[2, 3]),
        ),
        (structure("(0,14,24,0)", "e13-e24", "e1"), span(&[2, 3])),
    ];
    for (s, j) in cases {
        let p = cotangent_presentation(&s, &j).unwrap();
        let ext = cotangent_extension(&p.input).unwrap();
        assert!(ext.lcs_ok && ext.direct_ok);
        assert_eq!(ext.omega0.pullback(&p.sigma.matrix), s.omega);
        assert_eq!(ext.theta.pullback(&p.sigma.matrix), s.theta);
        for v in j.basis() {
            let image = p.sigma.apply(v);
            assert!(image.coords()[2..].iter().all(|c| *c == int(0)));
        }
    }
}

#[test]
fn presentation_rejects_non_lagrangian() {
    let s = structure("(0,0,-12,0)", "e12-e34", "e4");
    assert!(matches!(
        cotangent_presentation(&s, &span(&[1, 2])),
        Err(ConstructionError::Lagrangian(_))
    ));
}
