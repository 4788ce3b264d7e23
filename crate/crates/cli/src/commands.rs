//! One adapter per subcommand. Results are the library values serialized as
//! they are, so JSON output matches a direct library call.

use std::collections::BTreeMap;

use lcs::algebra::{AlgebraError, Check, LinearMap, Subspace, Vector};
use lcs::catalog::{verify_catalog, Catalog};
use lcs::constructions::{
    cotangent_extension, cotangent_presentation, lcs_from_contact, lcs_from_cosymplectic,
    ConstructionError, ContactData, CosymplecticData, CotangentInput,
};
use lcs::forms::{twisted_cohomology, KForm};
use lcs::groebner::equivalence::{equivalence_ideal_in, matrix_ring};
use lcs::groebner::{
    buchberger_with_budget, real_infeasibility_certificate, MonomialOrder, Polynomial, Ring,
    DEFAULT_BUDGET,
};
use lcs::lagrangian::{search_lagrangian_ideals_dim4_with, LagrangianSearch};
use lcs::lattice::{diagonal_lattice, special_lattices, SpecialCase};
use lcs::lcs::{verify_lagrangian_ideal, verify_lcs, LcsStructure};
use lcs::notation::{parse_expr, print_salamon, Bindings, NotationError};
use lcs::par::Execution;
use lcs::scalar;
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::{self, InputError};
use crate::report::Report;
use crate::{Cli, Command, LatticeCase, PairArgs};

fn to_value<T: Serialize + ?Sized>(x: &T) -> Value {
    serde_json::to_value(x).expect("library results serialize")
}

fn exec(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Validate(_) => "validate",
        Command::Flags(_) => "flags",
        Command::LcsCheck { .. } => "lcs-check",
        Command::Cohomology { .. } => "cohomology",
        Command::ConstructContact { .. } => "construct-contact",
        Command::ConstructCosymplectic { .. } => "construct-cosymplectic",
        Command::ConstructCotangent { .. } => "construct-cotangent",
        Command::CatalogList { .. } => "catalog-list",
        Command::CatalogVerify { .. } => "catalog-verify",
        Command::EquivalenceIdeal { .. } => "equivalence-ideal",
        Command::LagrangianSearch { .. } => "lagrangian-search",
        Command::Lattice { .. } => "lattice",
    }
}

pub fn run(cli: &Cli) -> Result<Report, InputError> {
    let b = input::bindings(&cli.params)?;
    let (result, pass) = dispatch(cli, &b)?;
    let mut inputs: BTreeMap<String, Value> = match to_value(&cli.command) {
        Value::Object(m) => m.into_iter().collect(),
        _ => BTreeMap::new(),
    };
    inputs.retain(|_, v| !v.is_null() && v.as_array().is_none_or(|a| !a.is_empty()));
    if !b.is_empty() {
        inputs.insert(
            "param".into(),
            to_value(
                &b.iter()
                    .map(|(k, v)| (k, scalar::render(v)))
                    .collect::<BTreeMap<_, _>>(),
            ),
        );
    }
    if matches!(cli.command, Command::CatalogVerify { .. }) {
        inputs.insert("seed".into(), json!(cli.seed));
    }
    Ok(Report {
        command: command_name(&cli.command).into(),
        inputs,
        result,
        pass,
    })
}

fn failure(e: impl std::fmt::Display) -> (Value, bool) {
    (json!({ "error": e.to_string() }), false)
}

fn pair(
    p: &PairArgs,
    b: &Bindings,
) -> Result<(lcs::algebra::LieAlgebra, KForm, KForm), InputError> {
    let g = input::algebra(&p.algebra.algebra, b)?;
    let n = g.dim();
    let omega = input::form_of_degree(&p.omega, n, 2, b)?;
    let theta = input::form_of_degree(&p.theta, n, 1, b)?;
    Ok((g, omega, theta))
}

fn structure(
    p: &PairArgs,
    b: &Bindings,
) -> Result<Result<LcsStructure, (Value, bool)>, InputError> {
    let (g, omega, theta) = pair(p, b)?;
    Ok(verify_lcs(&g, &omega, &theta)
        .map_err(|d| (json!({ "lcs": false, "diagnosis": d.to_string() }), false)))
}

fn construction<T: Serialize>(r: Result<T, ConstructionError>) -> (Value, bool) {
    match r {
        Ok(x) => (to_value(&x), true),
        Err(e) => failure(e),
    }
}

fn dispatch(cli: &Cli, b: &Bindings) -> Result<(Value, bool), InputError> {
    Ok(match &cli.command {
        Command::Validate(a) => match input::algebra_unchecked(&a.algebra, b) {
            Ok(g) => match g.validate_jacobi() {
                Check::Ok => (
                    json!({ "jacobi": true, "algebra": print_salamon(&g), "dim": g.dim() }),
                    true,
                ),
                Check::Witness { indices, residual } => (
                    json!({ "jacobi": false, "indices": indices, "residual": to_value(&residual) }),
                    false,
                ),
            },
            Err(InputError::Notation(NotationError::Algebra(e @ AlgebraError::Jacobi { .. })))
            | Err(InputError::Algebra(e @ AlgebraError::Jacobi { .. })) => {
                (json!({ "jacobi": false, "error": e.to_string() }), false)
            }
            Err(e) => return Err(e),
        },
        Command::Flags(a) => {
            let g = input::algebra(&a.algebra, b)?;
            (
                json!({ "algebra": print_salamon(&g), "flags": to_value(&g.center_and_flags()) }),
                true,
            )
        }
        Command::LcsCheck {
            pair: p,
            eta,
            u,
            lagrangian,
        } => match structure(p, b)? {
            Err(f) => f,
            Ok(s) => {
                let n = s.dim();
                let mut pass = true;
                let mut out = json!({ "lcs": true, "report": to_value(&s.report()) });
                if let (Some(eta), Some(u)) = (eta, u) {
                    let c = s.check_primitive(
                        &input::form_of_degree(eta, n, 1, b)?,
                        &input::vector(u, n, b)?,
                    );
                    pass &= c.is_ok();
                    out["primitive"] = json!({
                        "holds": c.is_ok(),
                        "residual_primitive": to_value(&c.residual_primitive),
                        "residual_anchor": to_value(&c.residual_anchor),
                    });
                }
                if let Some(span) = lagrangian {
                    let j = Subspace::span(n, &input::span(span, n, b)?);
                    let r = verify_lagrangian_ideal(&s, &j);
                    pass &= r.is_ok();
                    out["lagrangian"] = json!({
                        "span": to_value(&j),
                        "holds": r.is_ok(),
                        "diagnosis": r.err().map(|e| e.to_string()),
                    });
                }
                (out, pass)
            }
        },
        Command::Cohomology { algebra, theta } => {
            let g = input::algebra(&algebra.algebra, b)?;
            let theta = input::form_of_degree(theta, g.dim(), 1, b)?;
            match twisted_cohomology(&g, &theta) {
                Ok(c) => (
                    json!({ "dims": c.dims, "euler_characteristic": c.euler_characteristic(), "representatives": to_value(&c.representatives) }),
                    true,
                ),
                Err(e) => failure(e),
            }
        }
        Command::ConstructContact {
            algebra,
            eta,
            derivation,
            alpha,
        } => {
            let h = input::algebra(&algebra.algebra, b)?;
            let n = h.dim();
            let eta = input::form_of_degree(eta, n, 1, b)?;
            let d = input::matrix(derivation, n, b)?;
            let alpha = input::scalar(alpha, b)?;
            construction(ContactData::new(h, eta, d, alpha).and_then(|cd| lcs_from_contact(&cd)))
        }
        Command::ConstructCosymplectic {
            algebra,
            eta,
            omega,
            derivation,
            alpha,
        } => {
            let h = input::algebra(&algebra.algebra, b)?;
            let n = h.dim();
            let eta = input::form_of_degree(eta, n, 1, b)?;
            let omega = input::form_of_degree(omega, n, 2, b)?;
            let d = input::matrix(derivation, n, b)?;
            let alpha = input::scalar(alpha, b)?;
            construction(
                CosymplecticData::new(h, eta, omega, d, alpha)
                    .and_then(|cd| lcs_from_cosymplectic(&cd)),
            )
        }
        Command::ConstructCotangent {
            algebra,
            theta,
            rho,
            cocycle,
            omega,
            ideal,
        } => {
            if let (Some(omega), Some(ideal)) = (omega, ideal) {
                let p = PairArgs {
                    algebra: crate::AlgebraArg {
                        algebra: algebra.algebra.clone(),
                    },
                    omega: omega.clone(),
                    theta: theta.clone(),
                };
                match structure(&p, b)? {
                    Err(f) => f,
                    Ok(s) => {
                        let j = Subspace::span(s.dim(), &input::span(ideal, s.dim(), b)?);
                        construction(cotangent_presentation(&s, &j))
                    }
                }
            } else {
                let h = input::algebra(&algebra.algebra, b)?;
                let n = h.dim();
                let theta_hat = input::form_of_degree(theta, n, 1, b)?;
                let mut ci = CotangentInput::trivial(h, theta_hat);
                if !rho.is_empty() {
                    if rho.len() != n {
                        return Err(InputError::Invalid(format!(
                            "need {n} --rho matrices, got {}",
                            rho.len()
                        )));
                    }
                    ci.rho = rho
                        .iter()
                        .map(|m| input::matrix(m, n, b))
                        .collect::<Result<Vec<LinearMap>, _>>()?;
                }
                for entry in cocycle {
                    let (ij, f) = entry.split_once(':').ok_or_else(|| {
                        InputError::Invalid(format!("expected I,J:FORM, got `{entry}`"))
                    })?;
                    let idx: Vec<usize> = ij
                        .split(',')
                        .map(|x| x.trim().parse().unwrap_or(0))
                        .collect();
                    let [i, j] = idx[..] else {
                        return Err(InputError::Invalid(format!(
                            "expected two indices in `{ij}`"
                        )));
                    };
                    if i == 0 || j == 0 || i > n || j > n || i == j {
                        return Err(InputError::Invalid(format!("bad index pair `{ij}`")));
                    }
                    let v = input::form_of_degree(f, n, 1, b)?;
                    let v = Vector(v.coeffs().to_vec());
                    ci.alpha[j - 1][i - 1] = -&v;
                    ci.alpha[i - 1][j - 1] = v;
                }
                construction(cotangent_extension(&ci))
            }
        }
        Command::CatalogList { family } => {
            let cat = Catalog::builtin();
            match family {
                Some(name) => {
                    let f = cat.get(name)?;
                    (json!({ "family": to_value(&f.record) }), true)
                }
                None => {
                    let rows: Vec<Value> = cat
                        .entries
                        .iter()
                        .map(|f| {
                            json!({
                                "name": f.name,
                                "display": f.display,
                                "structure": f.record.structure,
                                "params": f.params.iter().map(|p| p.symbol.clone()).collect::<Vec<_>>(),
                                "rows": f.lcs.len(),
                            })
                        })
                        .collect();
                    (json!({ "version": cat.version, "families": rows }), true)
                }
            }
        }
        Command::CatalogVerify { family, sequential } => {
            let cat = Catalog::builtin();
            let report = if family.is_empty() {
                verify_catalog(cat, cli.seed, exec(*sequential))
            } else {
                for f in family {
                    cat.get(f)?;
                }
                let sub = Catalog {
                    version: cat.version,
                    entries: cat
                        .entries
                        .iter()
                        .filter(|e| family.contains(&e.name) || family.contains(&e.display))
                        .cloned()
                        .collect(),
                };
                verify_catalog(&sub, cli.seed, exec(*sequential))
            };
            (to_value(&report), report.pass)
        }
        Command::EquivalenceIdeal {
            algebra,
            omega,
            theta,
            to_omega,
            to_theta,
            rabinowitsch,
            generators,
            vars,
            lex,
            budget,
        } => {
            let order = if *lex {
                MonomialOrder::Lex
            } else {
                MonomialOrder::DegRevLex
            };
            let gens = match (algebra, generators) {
                (_, Some(path)) => read_generators(path, vars.as_deref(), order)?,
                (Some(a), None) => {
                    let g = input::algebra(a, b)?;
                    let n = g.dim();
                    let need = |x: &Option<String>, name: &str| {
                        x.clone().ok_or_else(|| {
                            InputError::Invalid(format!("--{name} is required with --algebra"))
                        })
                    };
                    let src = (
                        input::form_of_degree(&need(omega, "omega")?, n, 2, b)?,
                        input::form_of_degree(&need(theta, "theta")?, n, 1, b)?,
                    );
                    let dst = (
                        input::form_of_degree(&need(to_omega, "to-omega")?, n, 2, b)?,
                        input::form_of_degree(&need(to_theta, "to-theta")?, n, 1, b)?,
                    );
                    match equivalence_ideal_in(
                        &g,
                        (&src.0, &src.1),
                        (&dst.0, &dst.1),
                        *rabinowitsch,
                        order,
                    ) {
                        Ok(ideal) => ideal.generators,
                        Err(e) => return Ok(failure(e)),
                    }
                }
                (None, None) => {
                    return Err(InputError::Invalid(
                        "give --algebra with the two pairs, or --generators FILE".into(),
                    ))
                }
            };
            match buchberger_with_budget(&gens, budget.unwrap_or(DEFAULT_BUDGET)) {
                Ok(gb) => {
                    let cert = real_infeasibility_certificate(&gb);
                    let out = json!({
                        "generators": to_value(&gens),
                        "basis": to_value(gb.generators()),
                        "unit": gb.is_unit(),
                        "certificate": to_value(&cert),
                    });
                    (out, true)
                }
                Err(e) => failure(e),
            }
        }
        Command::LagrangianSearch {
            pair: p,
            sequential,
        } => match structure(p, b)? {
            Err(f) => f,
            Ok(s) => match search_lagrangian_ideals_dim4_with(&s, exec(*sequential)) {
                Ok(r) => {
                    let pass = !matches!(r, LagrangianSearch::Inconclusive { .. });
                    (to_value(&r), pass)
                }
                Err(e) => failure(e),
            },
        },
        Command::Lattice { case } => match case {
            LatticeCase::Diagonal { n } => match diagonal_lattice(*n) {
                Ok(r) => {
                    let pass = r.residuals_ok() && r.determinant == 1;
                    (to_value(&r), pass)
                }
                Err(e) => return Err(InputError::Invalid(e.to_string())),
            },
            LatticeCase::Inoue { m, p, q } => match special_lattices(SpecialCase::Inoue {
                m: *m,
                p: *p,
                q: *q,
            }) {
                Ok(r) => (to_value(&r), r.is_some()),
                Err(e) => return Err(InputError::Invalid(e.to_string())),
            },
            LatticeCase::Heisenberg { sigma } => {
                match special_lattices(SpecialCase::HeisenbergRotation { sigma: *sigma }) {
                    Ok(Some(r)) => {
                        let pass =
                            matches!(&r, lcs::lattice::SpecialLattice::Rotation(x) if x.preserved);
                        (to_value(&r), pass)
                    }
                    Ok(None) => (Value::Null, false),
                    Err(e) => return Err(InputError::Invalid(e.to_string())),
                }
            }
        },
    })
}

/// One polynomial per non-empty line; `#` starts a comment.
fn read_generators(
    path: &str,
    vars: Option<&str>,
    order: MonomialOrder,
) -> Result<Vec<Polynomial>, InputError> {
    let text = input::read_text(path)?;
    let lines: Vec<&str> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .collect();
    if lines.is_empty() {
        return Err(InputError::Invalid(format!("{path}: no generators")));
    }
    let names: Vec<String> = match vars {
        Some(v) => v
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect(),
        None => {
            let mut seen = std::collections::BTreeSet::new();
            for l in &lines {
                parse_expr(l)?.params(&mut seen);
            }
            seen.into_iter().collect()
        }
    };
    let matrix = matrix_ring(names.iter().any(|v| v == "t"), order);
    let ring = if names.iter().all(|v| matrix.index_of(v).is_some()) {
        matrix
    } else {
        Ring::new(names, order)
    };
    lines
        .iter()
        .map(|l| {
            Polynomial::parse(l, &ring).map_err(|e| InputError::Invalid(format!("`{l}`: {e}")))
        })
        .collect()
}
