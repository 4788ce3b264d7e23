//! Checks every catalog row at a grid of admissible parameter values.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{
    sample_grid, Catalog, CatalogEntry, LagrangianColumn, LcsEntry, SAMPLES_PER_PARAMETER,
};
use crate::algebra::{LieAlgebra, Subspace};
use crate::lagrangian::{search_lagrangian_ideals_dim4_with, LagrangianSearch};
use crate::lcs::{is_contact, verify_lagrangian_ideal, verify_lcs, Kind, LcsStructure};
use crate::linalg::Matrix;
use crate::notation::Bindings;
use crate::par::Execution;
use crate::scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn ok(name: &'static str) -> Self {
        CheckOutcome {
            name,
            pass: true,
            detail: None,
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            pass: false,
            detail: Some(detail.into()),
        }
    }

    fn expect(name: &'static str, pass: bool, detail: impl FnOnce() -> String) -> Self {
        if pass {
            Self::ok(name)
        } else {
            Self::fail(name, detail())
        }
    }
}

/// One family or row at one parameter sample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleRecord {
    pub family: String,
    /// `"structure"` for the algebra itself, else the row label.
    pub row: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row_index: Option<usize>,
    pub sample: BTreeMap<String, String>,
    pub checks: Vec<CheckOutcome>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowSummary {
    pub family: String,
    pub row: String,
    pub samples: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub catalog_version: u32,
    pub seed: u64,
    pub samples_per_parameter: usize,
    pub rows: Vec<RowSummary>,
    pub records: Vec<SampleRecord>,
    pub failures: usize,
    pub pass: bool,
}

fn render_sample(b: &Bindings) -> BTreeMap<String, String> {
    b.iter()
        .map(|(k, v)| (k.clone(), scalar::render(v)))
        .collect()
}

fn record(
    family: &CatalogEntry,
    row: Option<&LcsEntry>,
    b: &Bindings,
    checks: Vec<CheckOutcome>,
) -> SampleRecord {
    SampleRecord {
        family: family.name.clone(),
        row: row.map_or_else(|| "structure".to_string(), |r| r.label.clone()),
        row_index: row.map(|r| r.index),
        sample: render_sample(b),
        pass: checks.iter().all(|c| c.pass),
        checks,
    }
}

fn instantiate_checked(
    family: &CatalogEntry,
    b: &Bindings,
    checks: &mut Vec<CheckOutcome>,
) -> Option<LieAlgebra> {
    match family.instantiate(b) {
        Ok(g) => {
            checks.push(CheckOutcome::ok("jacobi"));
            Some(g)
        }
        Err(e) => {
            checks.push(CheckOutcome::fail("jacobi", e.to_string()));
            None
        }
    }
}

/// Center and structural flags of the algebra at `b`.
pub fn verify_family_sample(family: &CatalogEntry, b: &Bindings) -> SampleRecord {
    let mut checks = Vec::new();
    if let Some(g) = instantiate_checked(family, b, &mut checks) {
        let flags = g.center_and_flags();
        checks.push(match family.expected_center(b) {
            Ok(c) => CheckOutcome::expect("center", c == flags.center, || {
                format!(
                    "expected {:?}, computed {:?}",
                    span_text(&c),
                    span_text(&flags.center)
                )
            }),
            Err(e) => CheckOutcome::fail("center", e.to_string()),
        });
        let want = (
            family.solvable,
            family.completely_solvable,
            family.nilpotent,
        );
        let got = (flags.solvable, flags.completely_solvable, flags.nilpotent);
        checks.push(CheckOutcome::expect("flags", want == got, || {
            format!(
                "expected (solvable, completely solvable, nilpotent) = {want:?}, computed {got:?}"
            )
        }));
    }
    record(family, None, b, checks)
}

fn span_text(s: &Subspace) -> Vec<String> {
    s.basis().iter().map(|v| v.to_string()).collect()
}

fn lagrangian_check(
    s: &LcsStructure,
    row: &LcsEntry,
    b: &Bindings,
    exec: Execution,
) -> Option<CheckOutcome> {
    match &row.lagrangian {
        LagrangianColumn::Unstated => None,
        LagrangianColumn::Ideal(span) => {
            let vs: Result<Vec<_>, _> = span.iter().map(|f| f.instantiate_vector(b)).collect();
            Some(match vs {
                Ok(vs) => match verify_lagrangian_ideal(s, &Subspace::span(s.dim(), &vs)) {
                    Ok(()) => CheckOutcome::ok("lagrangian"),
                    Err(e) => CheckOutcome::fail("lagrangian", e.to_string()),
                },
                Err(e) => CheckOutcome::fail("lagrangian", e.to_string()),
            })
        }
        LagrangianColumn::Absent => Some(match search_lagrangian_ideals_dim4_with(s, exec) {
            Ok(LagrangianSearch::ProvenEmpty { .. }) => CheckOutcome::ok("lagrangian_absent"),
            Ok(LagrangianSearch::Found { ideals, .. }) => CheckOutcome::fail(
                "lagrangian_absent",
                format!(
                    "found {:?}",
                    ideals.iter().map(span_text).collect::<Vec<_>>()
                ),
            ),
            Ok(LagrangianSearch::Inconclusive { .. }) => {
                CheckOutcome::fail("lagrangian_absent", "search inconclusive")
            }
            Err(e) => CheckOutcome::fail("lagrangian_absent", e.to_string()),
        }),
    }
}

/// All stated columns of one row at `b`.
pub fn verify_row_sample(
    family: &CatalogEntry,
    row: &LcsEntry,
    b: &Bindings,
    exec: Execution,
) -> SampleRecord {
    let mut checks = Vec::new();
    if let Err(e) = row.check_admissible(family, b) {
        checks.push(CheckOutcome::fail("admissible", e.to_string()));
        return record(family, Some(row), b, checks);
    }
    let Some(g) = instantiate_checked(family, b, &mut checks) else {
        return record(family, Some(row), b, checks);
    };
    let (omega, theta) = match row.instantiate(family, b) {
        Ok(p) => p,
        Err(e) => {
            checks.push(CheckOutcome::fail("lcs", e.to_string()));
            return record(family, Some(row), b, checks);
        }
    };
    let s = match verify_lcs(&g, &omega, &theta) {
        Ok(s) => s,
        Err(e) => {
            checks.push(CheckOutcome::fail("lcs", e.to_string()));
            return record(family, Some(row), b, checks);
        }
    };
    checks.push(CheckOutcome::ok("lcs"));
    checks.push(CheckOutcome::expect("proper", s.is_proper(), || {
        "theta vanishes".into()
    }));
    let kind = s.kind();
    let want = if row.first_kind {
        Kind::FirstKind
    } else {
        Kind::SecondKind
    };
    checks.push(CheckOutcome::expect("kind", kind == want, || {
        format!("expected {want:?}, computed {kind:?}")
    }));
    let exactness = s.exactness_data();
    checks.push(CheckOutcome::expect(
        "exact",
        exactness.is_some() == row.exact.is_some(),
        || {
            format!(
                "expected exact = {}, computed {}",
                row.exact.is_some(),
                exactness.is_some()
            )
        },
    ));
    if let Some(col) = &row.exact {
        checks.push(
            match (col.eta.instantiate(b), col.u.instantiate_vector(b)) {
                (Ok(eta), Ok(u)) => {
                    let c = s.check_primitive(&eta, &u);
                    CheckOutcome::expect("primitive", c.is_ok(), || {
                        format!(
                            "d_theta eta - omega = {}, i_U omega + eta = {}",
                            c.residual_primitive, c.residual_anchor
                        )
                    })
                }
                (Err(e), _) | (_, Err(e)) => CheckOutcome::fail("primitive", e.to_string()),
            },
        );
        if row.kernel_contact {
            checks.push(kernel_contact_check(&s, col, b));
        }
    }
    checks.extend(lagrangian_check(&s, row, b, exec));
    record(family, Some(row), b, checks)
}

fn kernel_contact_check(s: &LcsStructure, col: &super::ExactColumn, b: &Bindings) -> CheckOutcome {
    let basis = s.kernel_of_theta().basis().to_vec();
    let Ok(eta) = col.eta.instantiate(b) else {
        return CheckOutcome::fail("kernel_contact", "cannot instantiate eta");
    };
    let inclusion = Matrix::from_columns(
        s.dim(),
        &basis
            .iter()
            .map(|v| v.coords().to_vec())
            .collect::<Vec<_>>(),
    );
    let h = match s.algebra.restrict(&basis) {
        Ok(h) => h,
        Err(e) => return CheckOutcome::fail("kernel_contact", e.to_string()),
    };
    match is_contact(&h, &eta.pullback(&inclusion)) {
        Ok(r) => CheckOutcome::expect("kernel_contact", r.holds, || {
            "eta restricted to ker theta is not contact".into()
        }),
        Err(e) => CheckOutcome::fail("kernel_contact", e.to_string()),
    }
}

enum Job<'a> {
    Family(&'a CatalogEntry, Bindings),
    Row(&'a CatalogEntry, &'a LcsEntry, Bindings),
}

/// Verifies `catalog` at the seeded grid. Records come back in catalog
/// order whatever the execution mode.
pub fn verify_catalog(catalog: &Catalog, seed: u64, exec: Execution) -> VerifyReport {
    let mut jobs = Vec::new();
    let mut groups: Vec<(String, String, usize)> = Vec::new();
    for family in &catalog.entries {
        let grid = sample_grid(family, None, seed, SAMPLES_PER_PARAMETER);
        groups.push((family.name.clone(), "structure".into(), grid.len()));
        jobs.extend(grid.into_iter().map(|b| Job::Family(family, b)));
        for row in &family.lcs {
            let grid = sample_grid(family, Some(row), seed, SAMPLES_PER_PARAMETER);
            groups.push((family.name.clone(), row.label.clone(), grid.len()));
            jobs.extend(grid.into_iter().map(|b| Job::Row(family, row, b)));
        }
    }
    // rows run in parallel; each search stays sequential to avoid nesting
    let records = exec.map(&jobs, |job| match job {
        Job::Family(f, b) => verify_family_sample(f, b),
        Job::Row(f, r, b) => verify_row_sample(f, r, b, Execution::Sequential),
    });
    let mut rows = Vec::new();
    let mut at = 0;
    for (family, row, n) in groups {
        let failures = records[at..at + n].iter().filter(|r| !r.pass).count();
        // a row with no admissible sample is itself a failure
        rows.push(RowSummary {
            family,
            row,
            samples: n,
            failures: if n == 0 { 1 } else { failures },
        });
        at += n;
    }
    let failures = rows.iter().map(|r| r.failures).sum();
    VerifyReport {
        catalog_version: catalog.version,
        seed,
        samples_per_parameter: SAMPLES_PER_PARAMETER,
        rows,
        records,
        failures,
        pass: failures == 0,
    }
}

pub fn verify_all(seed: u64) -> VerifyReport {
    verify_all_with(seed, Execution::default())
}

pub fn verify_all_with(seed: u64, exec: Execution) -> VerifyReport {
    verify_catalog(Catalog::builtin(), seed, exec)
}
