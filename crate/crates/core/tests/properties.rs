use lcs::algebra::{LieAlgebra, Subspace, Vector};
use lcs::catalog::{random_admissible, Catalog, Sampler};
use lcs::forms::{binomial, ce_differential, lichnerowicz_differential, KForm, TwistedComplex};
use lcs::linalg::Matrix;
use lcs::notation::{parse_salamon, print_salamon};
use lcs::scalar::{int, ratio, Scalar};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=5).prop_map(|(p, q)| ratio(p, q))
}

fn coords(n: usize) -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec(rational(), n)
}

/// A catalog algebra at an admissible sample chosen by `seed`.
fn catalog_algebra(index: usize, seed: u64) -> LieAlgebra {
    let cat = Catalog::builtin();
    let f = &cat.entries[index % cat.entries.len()];
    let mut rng = Sampler::new(seed, index as u64);
    let b = random_admissible(f, None, &mut rng).expect("admissible sample");
    f.instantiate(&b).unwrap()
}

fn form_of(n: usize, k: usize, c: &[Scalar]) -> KForm {
    KForm::from_coeffs(n, k, c[..binomial(n, k)].to_vec())
}

fn closed_one_forms(g: &LieAlgebra) -> Vec<KForm> {
    let n = g.dim();
    let columns: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            ce_differential(g, &KForm::basis1(n, i))
                .unwrap()
                .coeffs()
                .to_vec()
        })
        .collect();
    Subspace::kernel_of(&Matrix::from_columns(binomial(n, 2), &columns))
        .basis()
        .iter()
        .map(|v| KForm::covector(v.coords()))
        .collect()
}

fn combine(forms: &[KForm], c: &[Scalar], n: usize) -> KForm {
    forms
        .iter()
        .zip(c)
        .fold(KForm::zero(n, 1), |acc, (f, x)| acc.add(&f.scale(x)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jacobi(idx in 0usize..64, seed in any::<u64>(), x in coords(4), y in coords(4), z in coords(4)) {
        let g = catalog_algebra(idx, seed);
        let (x, y, z) = (Vector(x), Vector(y), Vector(z));
        let br = |a: &Vector, b: &Vector| g.bracket(a, b).unwrap();
        let s = &(&br(&x, &br(&y, &z)) + &br(&y, &br(&z, &x))) + &br(&z, &br(&x, &y));
        prop_assert!(s.is_zero());
        prop_assert_eq!(br(&x, &y), -&br(&y, &x));
    }

    #[test]
    fn leibniz_and_d_squared(
        idx in 0usize..64,
        seed in any::<u64>(),
        k in 0usize..=4,
        l in 0usize..=4,
        a in coords(6),
        c in coords(6),
    ) {
        prop_assume!(k + l <= 4);
        let g = catalog_algebra(idx, seed);
        let d = |w: &KForm| ce_differential(&g, w).unwrap();
        let (a, c) = (form_of(4, k, &a), form_of(4, l, &c));
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let rhs = d(&a).wedge(&c).unwrap().add(&a.wedge(&d(&c)).unwrap().scale(&sign));
        prop_assert_eq!(d(&a.wedge(&c).unwrap()), rhs);
        prop_assert!(d(&d(&a)).is_zero());
    }

    #[test]
    fn twisted_differential_squares_to_zero(
        idx in 0usize..64,
        seed in any::<u64>(),
        k in 0usize..=3,
        a in coords(6),
        t in coords(4),
    ) {
        let g = catalog_algebra(idx, seed);
        let theta = combine(&closed_one_forms(&g), &t, 4);
        let dt = |w: &KForm| lichnerowicz_differential(&g, &theta, w).unwrap();
        prop_assert!(dt(&dt(&form_of(4, k, &a))).is_zero());
    }

    #[test]
    fn euler_characteristic_vanishes(idx in 0usize..64, seed in any::<u64>(), t in coords(4)) {
        let g = catalog_algebra(idx, seed);
        let theta = combine(&closed_one_forms(&g), &t, 4);
        prop_assume!(!theta.is_zero());
        let c = TwistedComplex::new(&g, &theta).unwrap().cohomology();
        prop_assert_eq!(c.euler_characteristic(), 0);
    }

    #[test]
    fn salamon_round_trip(idx in 0usize..64, seed in any::<u64>()) {
        let g = catalog_algebra(idx, seed);
        let text = print_salamon(&g);
        let back = parse_salamon(&text, &Default::default()).unwrap();
        prop_assert_eq!(back.nonzero_brackets(), g.nonzero_brackets());
    }

    #[test]
    fn interior_is_an_antiderivation(k in 1usize..=3, a in coords(6), c in coords(4), x in coords(4)) {
        let (a, b) = (form_of(4, k, &a), form_of(4, 1, &c));
        let x = Vector(x);
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let rhs = a
            .interior(&x)
            .unwrap()
            .wedge(&b)
            .unwrap()
            .add(&a.scale(&(&sign * &b.eval1(&x))));
        prop_assert_eq!(lhs, rhs);
    }
}
