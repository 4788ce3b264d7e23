//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria 1 and 10 are red on the bundled data (the r4,mu row at mu = 0
//! is not lcs, and the Inoue system at (-1,-5,-3) has no common root); see
//! the README. The run fails if the set of red criteria changes in either
//! direction.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lcs::algebra::{LieAlgebra, LinearMap, Subspace, Vector};
use lcs::catalog::{
    random_admissible, sample_grid, verify_all, Catalog, CatalogEntry, LagrangianColumn, LcsEntry,
    Sampler,
};
use lcs::constructions::{
    contact_from_exact_lcs, cotangent_extension, cotangent_presentation, lcs_from_contact,
    lcs_from_cosymplectic, mixed_decomposition, ConstructionError, ContactData, CosymplecticData,
};
use lcs::forms::{ce_differential, lichnerowicz_differential, KForm, TwistedComplex};
use lcs::groebner::{
    buchberger_with_budget, equivalence_ideal, real_infeasibility_certificate, GroebnerBasis,
    Polynomial, DEFAULT_BUDGET,
};
use lcs::lagrangian::{search_lagrangian_ideals_dim4, ChartOutcome, LagrangianSearch};
use lcs::lattice::{
    diagonal_lattice, heisenberg_rotation, special_lattices, InoueSystem, SpecialCase,
    SpecialLattice, SYSTEM_TOLERANCE,
};
use lcs::lcs::{is_contact, verify_lagrangian_ideal, verify_lcs, Kind, LcsStructure};
use lcs::linalg::Matrix;
use lcs::notation::{parse_bindings, parse_form, parse_salamon, Bindings};
use lcs::scalar::{int, ratio, render, Scalar};

const KNOWN_RED: [usize; 2] = [1, 10];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alg(s: &str) -> LieAlgebra {
    parse_salamon(s, &Bindings::new()).unwrap()
}

fn form(s: &str, n: usize) -> KForm {
    parse_form(s, n, &Bindings::new()).unwrap()
}

fn bind(items: &[&str]) -> Bindings {
    parse_bindings(items.iter().copied()).unwrap()
}

fn structure(g: &LieAlgebra, omega: &str, theta: &str) -> Result<LcsStructure, String> {
    let n = g.dim();
    verify_lcs(g, &form(omega, n), &form(theta, n)).map_err(|e| e.to_string())
}

fn family(name: &str) -> &'static CatalogEntry {
    Catalog::builtin().get(name).unwrap()
}

fn row_structure(f: &CatalogEntry, row: &LcsEntry, b: &Bindings) -> Result<LcsStructure, String> {
    let g = f.instantiate(b).map_err(|e| e.to_string())?;
    let (omega, theta) = row.instantiate(f, b).map_err(|e| e.to_string())?;
    verify_lcs(&g, &omega, &theta).map_err(|e| format!("{} {}: {e}", f.name, row.label))
}

fn inclusion(n: usize, basis: &[Vector]) -> Matrix {
    Matrix::from_columns(
        n,
        &basis
            .iter()
            .map(|v| v.coords().to_vec())
            .collect::<Vec<_>>(),
    )
}

/// `ker θ` as a Lie algebra, with `η` pulled back to it.
fn kernel_with(s: &LcsStructure, eta: &KForm) -> Result<(LieAlgebra, KForm), String> {
    let basis = s.kernel_of_theta().basis().to_vec();
    let h = s.algebra.restrict(&basis).map_err(|e| e.to_string())?;
    Ok((h, eta.pullback(&inclusion(s.dim(), &basis))))
}

fn span(n: usize, idx: &[usize]) -> Subspace {
    Subspace::span(
        n,
        &idx.iter()
            .map(|&i| Vector::basis(n, i - 1))
            .collect::<Vec<_>>(),
    )
}

fn random_form(rng: &mut Sampler, dim: usize, degree: usize) -> KForm {
    let len = lcs::forms::binomial(dim, degree);
    KForm::from_coeffs(dim, degree, (0..len).map(|_| rng.draw()).collect())
}

fn random_vector(rng: &mut Sampler, dim: usize) -> Vector {
    Vector((0..dim).map(|_| rng.draw()).collect())
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
    let d = Matrix::from_columns(lcs::forms::binomial(n, 2), &columns);
    Subspace::kernel_of(&d)
        .basis()
        .iter()
        .map(|v| KForm::covector(v.coords()))
        .collect()
}

fn random_closed(rng: &mut Sampler, basis: &[KForm], n: usize) -> KForm {
    basis
        .iter()
        .fold(KForm::zero(n, 1), |acc, b| acc.add(&b.scale(&rng.draw())))
}

fn criterion_1() -> Outcome {
    let report = verify_all(0);
    let failed: Vec<String> = report
        .records
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} [{}] {:?}", r.family, r.row, r.sample))
        .collect();
    let empty = report.rows.iter().filter(|r| r.samples == 0).count();
    ensure(report.pass && empty == 0, || {
        format!(
            "{} failing samples, e.g. {}",
            report.failures,
            failed.first().cloned().unwrap_or_default()
        )
    })?;
    Ok(format!(
        "{} rows, {} samples",
        report.rows.len(),
        report.records.len()
    ))
}

fn criterion_2() -> Outcome {
    let check = |g: &LieAlgebra, theta: &str, dims: Option<&[usize]>, classes: &[&str]| {
        let n = g.dim();
        let c = TwistedComplex::new(g, &form(theta, n)).map_err(|e| e.to_string())?;
        let computed: Vec<usize> = (0..=n).map(|k| c.betti(k)).collect();
        if let Some(d) = dims {
            ensure(computed == d, || {
                format!("theta = {theta}: dims {computed:?}")
            })?;
        }
        let reps: Vec<KForm> = classes.iter().map(|s| form(s, n)).collect();
        ensure(reps.iter().all(|r| c.is_cocycle(r)), || {
            format!("theta = {theta}: representatives are not cocycles")
        })?;
        ensure(
            c.class_rank(&reps) == reps.len() && computed[2] == reps.len(),
            || format!("theta = {theta}: {classes:?} do not span H^2 (dims {computed:?})"),
        )
    };
    check(
        &alg("(14,-24,-12,0)"),
        "e4",
        Some(&[0, 1, 2, 1, 0]),
        &["e23", "e24"],
    )?;
    let rr3 = family("rr3_lambda")
        .instantiate(&bind(&["lambda=-1"]))
        .unwrap();
    check(&rr3, "e1", None, &["e13", "e34"])?;
    let r4 = family("r4_alpha_beta")
        .instantiate(&bind(&["alpha=-3/4", "beta=-1/4"]))
        .unwrap();
    check(&r4, "-3/4*e4", None, &["e13"])?;
    check(&r4, "e4", None, &["e23"])?;
    check(&r4, "-1/4*e4", None, &["e12"])?;
    Ok("d4, rr3,-1, r4,-3/4,-1/4".into())
}

fn criterion_3() -> Outcome {
    let mut tried = 0;
    for name in ["rh3", "n4"] {
        let g = family(name).instantiate(&Bindings::new()).unwrap();
        let n = g.dim();
        let basis = closed_one_forms(&g);
        let mut thetas = basis.clone();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                thetas.push(a.add(b));
                thetas.push(a.sub(&b.scale(&int(2))));
            }
        }
        let mut rng = Sampler::new(0, 3);
        thetas.extend((0..8).map(|_| random_closed(&mut rng, &basis, n)));
        for theta in thetas.iter().filter(|t| !t.is_zero()) {
            let c = TwistedComplex::new(&g, theta).map_err(|e| e.to_string())?;
            let dims: Vec<usize> = (0..=n).map(|k| c.betti(k)).collect();
            ensure(dims.iter().all(|&d| d == 0), || {
                format!("{name}, theta = {theta}: {dims:?}")
            })?;
            tried += 1;
        }
    }
    Ok(format!("{tried} Lee forms"))
}

fn criterion_4() -> Outcome {
    let heis = alg("(0,0,-12)");
    let cases = [
        (LinearMap::diagonal(&[int(1), int(-1), int(0)]), int(0)),
        (
            LinearMap::diagonal(&[ratio(1, 2), int(0), ratio(1, 2)]),
            ratio(1, 2),
        ),
    ];
    for (d, alpha) in cases {
        let cd =
            ContactData::new(heis.clone(), form("e3", 3), d, alpha).map_err(|e| e.to_string())?;
        let out = lcs_from_contact(&cd).map_err(|e| e.to_string())?;
        let back =
            contact_from_exact_lcs(&out.structure, &out.eta, &out.u).map_err(|e| e.to_string())?;
        ensure(
            back.h.nonzero_brackets() == cd.h.nonzero_brackets()
                && back.eta == cd.eta
                && back.derivation == cd.derivation
                && back.alpha == cd.alpha,
            || {
                format!(
                    "round trip changed the data for alpha = {}",
                    render(&cd.alpha)
                )
            },
        )?;
    }
    let r2p = alg("(0,0,-13+24,-14-23)");
    let s = structure(&r2p, "e13-e14-2*e24", "e2")?;
    let eta = form("-e3+e4", 4);
    let u = Vector::basis(4, 0);
    ensure(s.check_primitive(&eta, &u).is_ok(), || {
        "r2' primitive check failed".into()
    })?;
    match contact_from_exact_lcs(&s, &eta, &u) {
        Err(ConstructionError::ThetaOfUZero {
            kernel_contact: false,
        }) => {}
        other => return Err(format!("r2': expected theta(U) = 0, got {other:?}")),
    }
    let (h, eta_h) = kernel_with(&s, &eta)?;
    let mut rng = Sampler::new(0, 4);
    let mut etas = vec![eta_h];
    etas.extend((0..3).map(|i| KForm::basis1(3, i)));
    etas.extend((0..16).map(|_| random_form(&mut rng, 3, 1)));
    for e in &etas {
        let r = is_contact(&h, e).map_err(|e| e.to_string())?;
        ensure(!r.holds, || format!("ker theta of r2' is contact for {e}"))?;
    }
    Ok("d4, d4,1 round trips; r2' blocked".into())
}

fn criterion_5() -> Outcome {
    let mut built = 0;
    for gamma in [int(1), ratio(1, 2), int(3)] {
        for sign in [int(1), int(-1)] {
            let d = LinearMap::new(Matrix::from_rows(vec![
                vec![gamma.clone(), int(1), int(0)],
                vec![int(-1), gamma.clone(), int(0)],
                vec![int(0), int(0), int(0)],
            ]));
            let omega = form("e12", 3).scale(&sign);
            let cd = CosymplecticData::new(
                LieAlgebra::abelian(3),
                form("e3", 3),
                omega,
                d,
                &gamma * int(2),
            )
            .map_err(|e| e.to_string())?;
            let out = lcs_from_cosymplectic(&cd).map_err(|e| e.to_string())?;
            let want_omega = form("e12", 4).scale(&sign).add(&form("e34", 4));
            let want_theta = form("e4", 4).scale(&(&gamma * int(-2)));
            ensure(out.omega == want_omega && out.theta == want_theta, || {
                format!(
                    "ex 1, gamma = {}: got ({}, {})",
                    render(&gamma),
                    out.omega,
                    out.theta
                )
            })?;
            certify_nonexact(&out.algebra, &out.theta, &out.omega)?;
            built += 1;
        }
    }
    for (gamma, delta) in [
        (int(1), int(1)),
        (ratio(-1, 2), int(2)),
        (int(3), ratio(1, 3)),
    ] {
        let d = LinearMap::new(Matrix::from_rows(vec![
            vec![int(1), int(0), int(0)],
            vec![int(0), gamma.clone(), delta.clone()],
            vec![int(0), -delta.clone(), gamma.clone()],
        ]));
        let cd = CosymplecticData::new(
            LieAlgebra::abelian(3),
            form("e1", 3),
            form("e23", 3),
            d,
            &gamma * int(2),
        )
        .map_err(|e| e.to_string())?;
        let out = lcs_from_cosymplectic(&cd).map_err(|e| e.to_string())?;
        ensure(
            out.omega == form("e14+e23", 4)
                && out.theta == form("e4", 4).scale(&(&gamma * int(-2))),
            || {
                format!(
                    "ex 2, gamma = {}: got ({}, {})",
                    render(&gamma),
                    out.omega,
                    out.theta
                )
            },
        )?;
        certify_nonexact(&out.algebra, &out.theta, &out.omega)?;
        built += 1;
    }
    let r2r2 = alg("(0,-12,0,-34)");
    let r2p = alg("(0,0,-13+24,-14-23)");
    for sigma in [int(1), int(2), ratio(1, 3)] {
        let sg = render(&sigma);
        let s = structure(&r2r2, &format!("{sg}*e13+e24"), "-e1-e3")?;
        let eta = form("-e1+e3", 4).scale(&(&sigma * ratio(1, 2)));
        mixed_equations(&s, &eta, "r2r2")?;
    }
    for sigma in [int(1), int(-2), ratio(1, 2)] {
        let sg = render(&sigma);
        let s = structure(&r2p, &format!("{sg}*e12+e34"), "-2*e1")?;
        let eta = form("e2", 4).scale(&(&sigma * ratio(1, 2)));
        mixed_equations(&s, &eta, "r2'")?;
    }
    Ok(format!(
        "{built} cosymplectic rebuilds, 6 mixed decompositions"
    ))
}

fn certify_nonexact(g: &LieAlgebra, theta: &KForm, omega: &KForm) -> Result<(), String> {
    let c = TwistedComplex::new(g, theta).map_err(|e| e.to_string())?;
    ensure(c.is_cocycle(omega) && !c.is_coboundary(omega), || {
        format!("({omega}, {theta}) is not a nonzero twisted class")
    })
}

fn mixed_equations(s: &LcsStructure, eta: &KForm, name: &str) -> Result<(), String> {
    let m = mixed_decomposition(s, eta).map_err(|e| format!("{name}: {e}"))?;
    ensure(m.closed && m.balanced, || {
        format!(
            "{name} ({}): closed = {}, balanced = {}",
            s.omega, m.closed, m.balanced
        )
    })
}

fn criterion_6() -> Outcome {
    let mut done = 0;
    for (name, b) in [
        ("rh3", Bindings::new()),
        ("rr3_lambda", bind(&["lambda=1/2"])),
        ("n4", Bindings::new()),
    ] {
        let f = family(name);
        for row in &f.lcs {
            if row.check_admissible(f, &b).is_err() {
                continue;
            }
            let LagrangianColumn::Ideal(ideal) = &row.lagrangian else {
                continue;
            };
            let s = row_structure(f, row, &b)?;
            let vs: Vec<Vector> = ideal
                .iter()
                .map(|t| t.instantiate_vector(&b).unwrap())
                .collect();
            let j = Subspace::span(4, &vs);
            let p = cotangent_presentation(&s, &j).map_err(|e| format!("{name}: {e}"))?;
            let ext = cotangent_extension(&p.input).map_err(|e| e.to_string())?;
            let sigma = &p.sigma.matrix;
            ensure(
                ext.lcs_ok
                    && ext.direct_ok
                    && ext.omega0.pullback(sigma) == s.omega
                    && ext.theta.pullback(sigma) == s.theta,
                || format!("{name} [{}]: {:?}", row.label, ext.violation),
            )?;
            done += 1;
        }
    }
    ensure(done >= 4, || format!("only {done} rows checked"))?;
    Ok(format!("{done} presentations"))
}

fn criterion_7() -> Outcome {
    let cat = Catalog::builtin();
    let mut families = BTreeSet::new();
    let mut searched = 0;
    for f in &cat.entries {
        for row in f
            .lcs
            .iter()
            .filter(|r| r.lagrangian == LagrangianColumn::Absent)
        {
            let samples: Vec<Bindings> = sample_grid(f, Some(row), 0, 3)
                .into_iter()
                .take(3)
                .collect();
            ensure(samples.len() == 3, || {
                format!("{} [{}]: {} samples", f.name, row.label, samples.len())
            })?;
            for b in &samples {
                let s = row_structure(f, row, b)?;
                let r = search_lagrangian_ideals_dim4(&s).map_err(|e| e.to_string())?;
                let LagrangianSearch::ProvenEmpty { charts, .. } = &r else {
                    return Err(format!(
                        "{} [{}] at {b:?}: {}",
                        f.name,
                        row.label,
                        r.status()
                    ));
                };
                let certified = charts.iter().all(|c| match &c.outcome {
                    ChartOutcome::Empty { certificates, .. } => !certificates.is_empty(),
                    _ => false,
                });
                ensure(certified, || {
                    format!(
                        "{} [{}] at {b:?}: chart without certificate",
                        f.name, row.label
                    )
                })?;
                searched += 1;
            }
            families.insert(f.name.clone());
        }
    }
    ensure(families.len() >= 5, || format!("families {families:?}"))?;
    Ok(format!("{searched} searches over {families:?}"))
}

fn groebner(g: &LieAlgebra, src: (&str, &str), dst: (&str, &str)) -> Result<GroebnerBasis, String> {
    let f = |s: &str| form(s, 4);
    let ideal = equivalence_ideal(g, (&f(src.0), &f(src.1)), (&f(dst.0), &f(dst.1)), false)
        .map_err(|e| e.to_string())?;
    buchberger_with_budget(&ideal.generators, DEFAULT_BUDGET).map_err(|e| e.to_string())
}

fn obstruction(gb: &GroebnerBasis, elems: &[&str], label: &str) -> Result<(), String> {
    for p in elems {
        let p = Polynomial::parse(p, gb.ring()).map_err(|e| e.to_string())?;
        ensure(gb.normal_form(&p).is_zero(), || {
            format!("{label}: {p} has nonzero normal form")
        })?;
    }
    ensure(real_infeasibility_certificate(gb).is_some(), || {
        format!("{label}: no real infeasibility certificate")
    })
}

fn distinct_pair(f: &CatalogEntry, row: &LcsEntry, stream: u64) -> (Scalar, Scalar) {
    let mut rng = Sampler::new(0, stream);
    let a = random_admissible(f, Some(row), &mut rng).unwrap()["sigma"].clone();
    loop {
        let b = random_admissible(f, Some(row), &mut rng).unwrap()["sigma"].clone();
        if b != a {
            return (a, b);
        }
    }
}

fn criterion_8() -> Outcome {
    let rr3 = alg("(0,-12-13,-13,0)");
    let gb = groebner(&rr3, ("e14+e23", "-2*e1"), ("e14-e23", "-2*e1"))?;
    obstruction(&gb, &["a33^2 + 1"], "rr3")?;

    let rr3p = family("rr3p_gamma")
        .instantiate(&bind(&["gamma=1"]))
        .unwrap();
    let gb = groebner(&rr3p, ("e14+e23", "-2*e1"), ("e14-e23", "-2*e1"))?;
    obstruction(&gb, &["a22^2 + a23^2 + 1"], "rr3',1")?;

    let d4p = family("d4p_delta")
        .instantiate(&bind(&["delta=1"]))
        .unwrap();
    let gb = groebner(&d4p, ("e12-2*e34", "e4"), ("-e12+2*e34", "e4"))?;
    obstruction(
        &gb,
        &["a31", "a32", "a33 + 1", "a34", "a21^2 + a22^2 + 1"],
        "d4',1",
    )?;

    let f = family("r2r2");
    let row = f
        .lcs
        .iter()
        .find(|r| r.record.omega == "e12+e14+e23+sigma*e34")
        .unwrap();
    let g = f.instantiate(&Bindings::new()).unwrap();
    for k in 0..3 {
        let (e1, e2) = distinct_pair(f, row, 80 + k);
        let w = |e: &Scalar| format!("e12+e14+e23+({})*e34", render(e));
        let gb = groebner(&g, (&w(&e1), "-e3"), (&w(&e2), "-e3"))?;
        obstruction(
            &gb,
            &["1"],
            &format!("r2r2 eps {} vs {}", render(&e1), render(&e2)),
        )?;
    }

    let f = family("r4");
    let row = &f.lcs[0];
    let g = f.instantiate(&Bindings::new()).unwrap();
    for k in 0..3 {
        let (s1, s2) = distinct_pair(f, row, 90 + k);
        let w = |s: &Scalar| format!("e14+({})*e23", render(s));
        let gb = groebner(&g, (&w(&s1), "-2*e4"), (&w(&s2), "-2*e4"))?;
        obstruction(
            &gb,
            &["1"],
            &format!("r4 sigma {} vs {}", render(&s1), render(&s2)),
        )?;
    }
    Ok("rr3, rr3',1, d4',1, r2r2 x3, r4 x3".into())
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for name in ["su2_R", "sl2_R"] {
        let f = family(name);
        for row in &f.lcs {
            for b in sample_grid(f, Some(row), 0, 3) {
                let s = row_structure(f, row, &b)?;
                let ex = s
                    .exactness_data()
                    .ok_or_else(|| format!("{name} [{}] not exact", row.label))?;
                ensure(row.first_kind && s.kind() == Kind::FirstKind, || {
                    format!("{name} [{}] at {b:?}: {:?}", row.label, s.kind())
                })?;
                let (h, eta) = kernel_with(&s, &ex.eta)?;
                let r = is_contact(&h, &eta).map_err(|e| e.to_string())?;
                ensure(r.holds, || {
                    format!("{name} [{}]: ker theta not contact", row.label)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} samples"))
}

fn criterion_10() -> Outcome {
    let d = diagonal_lattice(4).map_err(|e| e.to_string())?;
    let t0 = ((3.0 + 5f64.sqrt()) / 2.0).ln();
    ensure(
        (d.t0 - t0).abs() < 1e-12
            && d.witness == [[0, 1, 0], [-1, 3, 0], [0, 0, 1]]
            && d.determinant == 1
            && d.characteristic_polynomial == [1, -4, 4, -1]
            && d.residuals_ok(),
        || format!("diagonal: {d:?}"),
    )?;
    let rot = heisenberg_rotation(1.0).map_err(|e| e.to_string())?;
    ensure(rot.preserved, || {
        "Heisenberg rotation leaves the lattice".into()
    })?;
    let sys = InoueSystem::new(-1, -5, -3);
    let crossing = sys.crossing(&int(0), &ratio(1, 2));
    ensure(crossing.sturm_count == 1, || {
        format!("Inoue: Sturm count {}", crossing.sturm_count)
    })?;
    match special_lattices(SpecialCase::Inoue {
        m: -1,
        p: -5,
        q: -3,
    }) {
        Ok(Some(SpecialLattice::Inoue(r))) => {
            let x0 = (r.t0 / 2.0).exp();
            ensure(
                r.residuals.iter().all(|x| x.value < SYSTEM_TOLERANCE) && x0 > 0.0 && x0 < 0.5,
                || format!("Inoue: {r:?}"),
            )?;
        }
        other => {
            return Err(format!(
                "diagonal and Heisenberg pass; Inoue (-1,-5,-3) has no solution ({other:?}): \
                 gcd of the cubics is {}, residuals at the crossing x0 = {:.12} are {:?}",
                sys.common_factor(),
                crossing.x0.unwrap_or(f64::NAN),
                crossing
                    .residuals
                    .iter()
                    .map(|r| format!("{} = {:.3e}", r.name, r.value))
                    .collect::<Vec<_>>()
            ))
        }
    }
    Ok("diagonal(4), Inoue, Heisenberg(1)".into())
}

const PROPERTY_INPUTS: usize = 500;

fn jacobi(g: &LieAlgebra, x: &Vector, y: &Vector, z: &Vector) -> Vector {
    let br = |a: &Vector, b: &Vector| g.bracket(a, b).unwrap();
    let s = &br(x, &br(y, z)) + &br(y, &br(z, x));
    &s + &br(z, &br(x, y))
}

fn properties(f: &CatalogEntry, seed_stream: u64) -> Result<usize, String> {
    let mut rng = Sampler::new(0, seed_stream);
    let mut euler = 0;
    for i in 0..PROPERTY_INPUTS {
        let b = random_admissible(f, None, &mut rng)
            .ok_or_else(|| format!("{}: no admissible sample", f.name))?;
        let g = f.instantiate(&b).map_err(|e| e.to_string())?;
        let n = g.dim();
        let (x, y, z) = (
            random_vector(&mut rng, n),
            random_vector(&mut rng, n),
            random_vector(&mut rng, n),
        );
        ensure(jacobi(&g, &x, &y, &z).is_zero(), || {
            format!("{} at {b:?}: Jacobi fails", f.name)
        })?;
        let k = i % n;
        let l = (i / n) % (n - k).max(1);
        let a = random_form(&mut rng, n, k);
        let c = random_form(&mut rng, n, l);
        let d = |w: &KForm| ce_differential(&g, w).unwrap();
        let lhs = d(&a.wedge(&c).unwrap());
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let rhs = d(&a)
            .wedge(&c)
            .unwrap()
            .add(&a.wedge(&d(&c)).unwrap().scale(&sign));
        ensure(lhs == rhs, || format!("{} at {b:?}: Leibniz fails", f.name))?;
        ensure(d(&d(&a)).is_zero(), || format!("{}: d^2 != 0", f.name))?;
        let closed = closed_one_forms(&g);
        let theta = random_closed(&mut rng, &closed, n);
        let dt = |w: &KForm| lichnerowicz_differential(&g, &theta, w).unwrap();
        ensure(dt(&dt(&a)).is_zero(), || {
            format!("{} at {b:?}: d_theta^2 != 0 for theta = {theta}", f.name)
        })?;
        if n == 4 && !theta.is_zero() && i % 25 == 0 {
            let chi = TwistedComplex::new(&g, &theta)
                .unwrap()
                .cohomology()
                .euler_characteristic();
            ensure(chi == 0, || {
                format!(
                    "{} at {b:?}: Euler characteristic {chi} for {theta}",
                    f.name
                )
            })?;
            euler += 1;
        }
    }
    Ok(euler)
}

fn criterion_11() -> Outcome {
    let cat = Catalog::builtin();
    let mut euler = 0;
    let mut ideals = 0;
    for (i, f) in cat.entries.iter().enumerate() {
        euler += properties(f, 1000 + i as u64)?;
        for row in &f.lcs {
            for b in sample_grid(f, Some(row), 0, 3) {
                let s = row_structure(f, row, &b);
                if let Ok(s) = &s {
                    if s.dim() == 4 && s.is_proper() {
                        let chi = TwistedComplex::new(&s.algebra, &s.theta)
                            .unwrap()
                            .cohomology()
                            .euler_characteristic();
                        ensure(chi == 0, || {
                            format!("{} [{}]: chi = {chi}", f.name, row.label)
                        })?;
                        euler += 1;
                    }
                }
                let (Ok(s), LagrangianColumn::Ideal(t)) = (s, &row.lagrangian) else {
                    continue;
                };
                let vs: Vec<Vector> = t
                    .iter()
                    .map(|v| v.instantiate_vector(&b).unwrap())
                    .collect();
                let j = Subspace::span(s.dim(), &vs);
                if verify_lagrangian_ideal(&s, &j).is_err() {
                    continue;
                }
                for (p, a) in j.basis().iter().enumerate() {
                    for c in &j.basis()[p + 1..] {
                        ensure(s.algebra.bracket(a, c).unwrap().is_zero(), || {
                            format!("{} [{}]: Lagrangian ideal not abelian", f.name, row.label)
                        })?;
                    }
                }
                ideals += 1;
            }
        }
    }
    // the rh3 ideal from the catalog as a fixed point of reference
    let s = structure(&alg("(0,0,-12,0)"), "e12-e34", "e4")?;
    ensure(
        verify_lagrangian_ideal(&s, &span(4, &[1, 3])).is_ok(),
        || "rh3 <e1,e3> rejected".into(),
    )?;
    Ok(format!(
        "{} algebras x {PROPERTY_INPUTS} inputs, {euler} Euler checks, {ideals} abelian ideals",
        cat.entries.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("catalog verification", criterion_1, Duration::from_secs(60)),
        ("twisted cohomology", criterion_2, Duration::from_secs(5)),
        ("nilpotent vanishing", criterion_3, Duration::from_secs(5)),
        ("contact round trips", criterion_4, Duration::from_secs(1)),
        (
            "cosymplectic constructions",
            criterion_5,
            Duration::from_secs(5),
        ),
        (
            "cotangent presentations",
            criterion_6,
            Duration::from_secs(5),
        ),
        (
            "Lagrangian non-existence",
            criterion_7,
            Duration::from_secs(120),
        ),
        (
            "Groebner certificates",
            criterion_8,
            Duration::from_secs(300),
        ),
        (
            "reductive classification",
            criterion_9,
            Duration::from_secs(1),
        ),
        ("lattice numerics", criterion_10, Duration::from_secs(1)),
        ("property suites", criterion_11, Duration::from_secs(30)),
    ];
    let mut red = BTreeSet::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let id = i + 1;
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (pass, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !pass {
            red.insert(id);
        }
        println!(
            "{} {id:>2} {name} ({elapsed:.2?}): {detail}",
            if pass { "PASS" } else { "FAIL" }
        );
    }
    let known: BTreeSet<usize> = KNOWN_RED.into_iter().collect();
    if red == known {
        println!("red criteria {red:?} match the documented set");
        ExitCode::SUCCESS
    } else {
        println!("red criteria {red:?}, documented {known:?}");
        ExitCode::FAILURE
    }
}
