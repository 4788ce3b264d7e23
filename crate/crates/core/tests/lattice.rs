use lcs::lattice::{
    diagonal_lattice, heisenberg_rotation, special_lattices, HeisenbergLift, InoueSystem,
    LatticeError, SpecialCase, SpecialLattice,
};
use lcs::scalar::{int, ratio};
use lcs::upoly::UPoly;
use proptest::prelude::*;

// 2 cosh t = n - 1 is the same equation in another form
fn acosh_oracle(n: i64) -> f64 {
    ((n - 1) as f64 / 2.0).acosh()
}

#[test]
fn diagonal_four() {
    let r = diagonal_lattice(4).unwrap();
    assert!((r.t0 - ((3.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
    assert!((r.t0 - 0.9624236501192069).abs() < 1e-12);
    assert_eq!(r.witness, [[0, 1, 0], [-1, 3, 0], [0, 0, 1]]);
    assert_eq!(r.determinant, 1);
    assert_eq!(r.characteristic_polynomial, [1, -4, 4, -1]);
    assert!(r.residuals_ok(), "{:?}", r.residuals);
    assert!(!r.degenerate);
}

#[test]
fn diagonal_five_and_three() {
    let r = diagonal_lattice(5).unwrap();
    assert!((r.t0 - (2.0 + 3f64.sqrt()).ln()).abs() < 1e-12);
    let r = diagonal_lattice(3).unwrap();
    assert_eq!(r.t0, 0.0);
    assert!(r.degenerate);
    assert!(r.residuals_ok());
    assert_eq!(diagonal_lattice(2), Err(LatticeError::TraceTooSmall(2)));
}

proptest! {
    #[test]
    fn diagonal_trace_identity(n in 3i64..5000) {
        let r = diagonal_lattice(n).unwrap();
        prop_assert_eq!(r.determinant, 1);
        prop_assert_eq!(r.characteristic_polynomial, [1, -n, n, -1]);
        prop_assert!(r.residuals_ok(), "{:?}", r.residuals);
        prop_assert!((r.t0 - acosh_oracle(n)).abs() < 1e-9);
    }
}

#[test]
fn inoue_curves_cross_but_share_no_root() {
    let sys = InoueSystem::new(-1, -5, -3);
    assert_eq!(sys.first_cubic(), UPoly::from_ints(&[-2, 5, 0, 1]));
    assert_eq!(sys.second_cubic(), UPoly::from_ints(&[-1, 0, 3, 2]));
    // 2x^3 + 3x^2 - 1 = (x + 1)^2 (2x - 1), and x = 1/2 is not a root of the first
    assert_eq!(
        sys.second_cubic().rational_roots(),
        vec![int(-1), ratio(1, 2)]
    );
    assert_ne!(sys.first_cubic().eval(&ratio(1, 2)), int(0));
    assert_eq!(sys.common_factor().degree(), Some(0));

    let c = sys.crossing(&int(0), &ratio(1, 2));
    assert_eq!(c.sturm_count, 1);
    // difference is -(x - 1)(x^2 + 4x - 1)
    let x0 = c.x0.unwrap();
    assert!((x0 - (5f64.sqrt() - 2.0)).abs() < 1e-11);
    assert!(c.residuals.iter().all(|r| !r.ok()));
    assert!(matches!(
        special_lattices(SpecialCase::Inoue {
            m: -1,
            p: -5,
            q: -3
        }),
        Ok(None)
    ));
}

#[test]
fn inoue_without_solution() {
    assert!(matches!(
        special_lattices(SpecialCase::Inoue { m: 1, p: 0, q: 0 }),
        Ok(None)
    ));
    // common root x = 1 exists but gives t0 = 0
    let sys = InoueSystem::new(2, 3, 3);
    assert_eq!(sys.common_factor(), UPoly::from_ints(&[1, -2, 1]));
    assert!(sys.solve().is_empty());
    let sys = InoueSystem::new(-3, -1, 1);
    assert_eq!(sys.common_factor(), UPoly::from_ints(&[-1, 1]));
    assert!(sys.solve().is_empty());
    assert!(InoueSystem::new(0, 3, 3).solve().is_empty());
}

#[test]
fn inoue_scan_finds_nothing() {
    for m in [-3, -2, -1, 1, 2, 3] {
        for p in -20..=20 {
            for q in -20..=20 {
                assert!(InoueSystem::new(m, p, q).solve().is_empty(), "{m} {p} {q}");
            }
        }
    }
}

fn heis_mul(a: (i64, i64, i64), b: (i64, i64, i64)) -> (i64, i64, i64) {
    // product of upper unitriangular matrices [[1, x, z], [0, 1, y], [0, 0, 1]]
    let m = |(x, y, z): (i64, i64, i64)| [[1, x, z], [0, 1, y], [0, 0, 1]];
    let (p, q) = (m(a), m(b));
    let mut r = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = (0..3).map(|k| p[i][k] * q[k][j]).sum();
        }
    }
    (r[0][1], r[1][2], r[0][2])
}

#[test]
fn heisenberg_rotation_preserves_lattice() {
    let r = heisenberg_rotation(1.0).unwrap();
    assert!((r.t0 - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert_eq!(r.block, [[0, 1], [-1, 0]]);
    assert!(r.preserved);
    let range = -3..=3;
    for x in range.clone() {
        for y in range.clone() {
            for z in range.clone() {
                let a = (x, y, z);
                assert!(r.lift.apply(a).is_some());
                for b in [(1, 0, 0), (0, 1, 0), (2, -1, 3)] {
                    let lhs = r.lift.apply(heis_mul(a, b)).unwrap();
                    let rhs = heis_mul(r.lift.apply(a).unwrap(), r.lift.apply(b).unwrap());
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
    assert_eq!(heisenberg_rotation(2.0).unwrap().block, [[0, 1], [-1, 0]]);
    assert!(heisenberg_rotation(0.0).is_err());
    assert!(matches!(
        special_lattices(SpecialCase::HeisenbergRotation { sigma: 1.0 }),
        Ok(Some(SpecialLattice::Rotation(_)))
    ));
}

#[test]
fn shear_lift_can_leave_the_lattice() {
    let lift = HeisenbergLift::of_block([[1, 0], [1, 1]]).unwrap();
    assert!(!lift.preserves_integer_lattice());
    assert_eq!(lift.apply((1, 0, 0)), None);
    assert!(HeisenbergLift::of_block([[2, 0], [0, 1]]).is_none());
}
