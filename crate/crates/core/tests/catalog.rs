use lcs::catalog::{
    instantiate, lcs_entries, sample_grid, verify_all_with, verify_catalog, verify_row_sample,
    Catalog, CatalogError, LagrangianColumn,
};
use lcs::forms::twisted_cohomology;
use lcs::notation::{parse_bindings, parse_form, print_salamon, Bindings, SalamonTemplate};
use lcs::par::Execution;
use lcs::scalar::int;

fn bind(items: &[&str]) -> Bindings {
    parse_bindings(items.iter().copied()).unwrap()
}

#[test]
fn instantiate_examples() {
    assert_eq!(
        print_salamon(&instantiate("rr3_lambda", &bind(&["lambda=-1"])).unwrap()),
        "(0,-12,13,0)"
    );
    assert_eq!(
        print_salamon(&instantiate("d4", &Bindings::new()).unwrap()),
        "(14,-24,-12,0)"
    );
    assert!(matches!(
        instantiate("rr3_lambda", &bind(&["lambda=2"])),
        Err(CatalogError::Inadmissible { .. })
    ));
    assert!(matches!(
        instantiate("rr3_lambda", &Bindings::new()),
        Err(CatalogError::MissingParameter { .. })
    ));
    assert!(matches!(
        instantiate("nope", &Bindings::new()),
        Err(CatalogError::UnknownFamily(_))
    ));
    // display names resolve too
    assert!(instantiate("𝔡₄", &Bindings::new()).is_ok());
}

#[test]
fn lcs_entry_examples() {
    let rh3 = lcs_entries("rh3").unwrap();
    assert_eq!(rh3.len(), 1);
    assert_eq!(rh3[0].record.omega, "e12-e34");
    assert!(rh3[0].first_kind);
    assert_eq!(rh3[0].record.exact.as_ref().unwrap().eta, "-e3");
    assert!(matches!(rh3[0].lagrangian, LagrangianColumn::Ideal(_)));
    let r4p = lcs_entries("r4p_gamma_delta").unwrap();
    assert_eq!(r4p.len(), 2);
    assert!(r4p.iter().all(|r| r.lagrangian == LagrangianColumn::Absent));
    assert!(lcs_entries("R4").unwrap().is_empty());
}

#[test]
fn salamon_round_trip_on_catalog() {
    let cat = Catalog::builtin();
    for family in &cat.entries {
        for b in sample_grid(family, None, 3, 3) {
            let g = family.instantiate(&b).unwrap();
            let text = print_salamon(&g);
            let back = SalamonTemplate::parse(&text)
                .unwrap()
                .instantiate(&Bindings::new())
                .unwrap();
            assert_eq!(
                back.nonzero_brackets(),
                g.nonzero_brackets(),
                "{}",
                family.name
            );
        }
    }
}

#[test]
fn d4_lambda_one_row() {
    let cat = Catalog::builtin();
    let family = cat.get("d4_lambda").unwrap();
    let row = family
        .lcs
        .iter()
        .find(|r| r.record.theta == "e2+sigma*e4")
        .unwrap();
    let rec = verify_row_sample(
        family,
        row,
        &bind(&["lambda=1", "sigma=1"]),
        Execution::Sequential,
    );
    assert!(rec.pass, "{rec:?}");
    assert!(rec.checks.iter().any(|c| c.name == "primitive" && c.pass));
}

#[test]
fn grid_is_seeded_and_admissible() {
    let cat = Catalog::builtin();
    let family = cat.get("r4_alpha_beta").unwrap();
    let a = sample_grid(family, None, 0, 7);
    assert_eq!(a, sample_grid(family, None, 0, 7));
    assert_ne!(a, sample_grid(family, None, 1, 7));
    assert!(!a.is_empty() && a.len() <= 49);
    for b in &a {
        family.check_admissible(b).unwrap();
    }
    let pinned = cat.get("rr3_lambda").unwrap();
    let row = &pinned.lcs[0];
    let grid = sample_grid(pinned, Some(row), 0, 7);
    assert_eq!(grid, vec![bind(&["lambda=0"])]);
    assert_eq!(grid[0]["lambda"], int(0));
}

#[test]
fn corrupted_row_is_the_only_failure() {
    let mut record = Catalog::builtin_record();
    let family = record
        .families
        .iter_mut()
        .find(|f| f.name == "rh3")
        .unwrap();
    family.structures[0].omega = "e12+e34".into();
    let cat = Catalog::from_record(&record).unwrap();
    // restrict to two small families to keep this quick
    let cat = Catalog {
        version: cat.version,
        entries: cat
            .entries
            .into_iter()
            .filter(|e| e.name == "rh3" || e.name == "n4")
            .collect(),
    };
    let report = verify_catalog(&cat, 0, Execution::Sequential);
    let failed: Vec<_> = report.records.iter().filter(|r| !r.pass).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0].family, "rh3");
    let check = failed[0].checks.iter().find(|c| !c.pass).unwrap();
    assert_eq!(check.name, "lcs");
    assert!(check.detail.as_ref().unwrap().contains("theta ^ omega"));
}

#[test]
fn full_catalog_fails_only_on_the_r4_mu_zero_row() {
    let report = verify_all_with(0, Execution::default());
    assert!(report.rows.iter().all(|r| r.samples > 0));
    let failed: Vec<_> = report.records.iter().filter(|r| !r.pass).collect();
    for r in &failed {
        assert_eq!(
            (r.family.as_str(), r.row_index),
            ("r4_mu", Some(0)),
            "{}",
            serde_json::to_string(r).unwrap()
        );
        let c = r.checks.iter().find(|c| !c.pass).unwrap();
        assert_eq!(c.name, "lcs");
        assert!(c.detail.as_ref().unwrap().contains("-e134 + e234"));
    }
    assert_eq!(failed.len(), 7);
    assert_eq!(report.failures, 7);
    assert!(!report.pass);
    let summary: Vec<_> = report.rows.iter().filter(|r| r.failures > 0).collect();
    assert_eq!(summary.len(), 1);
}

#[test]
fn r4_mu_zero_with_lee_form_e3_is_always_exact() {
    // ker of the twisted differential in degree 2 equals its image, so no
    // non-exact lcs structure with this Lee form exists in any basis choice
    let g = instantiate("r4_mu", &bind(&["mu=0"])).unwrap();
    for theta in ["e3", "-2*e3-e4", "e3+e4"] {
        let c = twisted_cohomology(&g, &parse_form(theta, 4, &Bindings::new()).unwrap()).unwrap();
        assert_eq!(c.dims, vec![0, 0, 0, 0, 0], "{theta}");
    }
    let c = twisted_cohomology(&g, &parse_form("-e4", 4, &Bindings::new()).unwrap()).unwrap();
    assert_eq!(c.dims[2], 2);
}
