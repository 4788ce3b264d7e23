//! Search for Lagrangian ideals inside `ker θ` on 4-dimensional lcs algebras.
//!
//! A 2-plane in the 3-dimensional `ker θ` is the kernel of a normal covector
//! `c` on it, and the projective plane of covectors splits into three cells:
//! `(1, p, q)`, `(0, 1, q)` and `(0, 0, 1)`. On each cell isotropy and the
//! ideal condition are polynomial in the cell variables.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{Subspace, Vector};
use crate::groebner::{
    buchberger, certificate::forced_zero_variables, real_infeasibility_certificate, Certificate,
    GroebnerError, MonomialOrder, Polynomial, Ring,
};
use crate::lcs::{verify_lagrangian_ideal, LagrangianDiagnosis, LcsStructure};
use crate::linalg::Matrix;
use crate::par::Execution;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("the Lagrangian search is implemented in dimension 4 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("theta is zero")]
    NotProper,
    #[error("found plane fails verification: {0}")]
    Inconsistent(LagrangianDiagnosis),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ChartOutcome {
    /// No real point; one certificate per terminal branch.
    Empty {
        certificates: Vec<Certificate>,
        steps: Vec<String>,
    },
    /// Rational points found; `complete` when every real point is listed.
    Points {
        #[serde(with = "points_serde")]
        points: Vec<Vec<Scalar>>,
        complete: bool,
        steps: Vec<String>,
    },
    Inconclusive {
        residual: Vec<String>,
        steps: Vec<String>,
    },
}

mod points_serde {
    use super::*;
    pub fn serialize<S: serde::Serializer>(pts: &[Vec<Scalar>], s: S) -> Result<S::Ok, S::Error> {
        let r: Vec<Vec<String>> = pts
            .iter()
            .map(|p| p.iter().map(scalar::render).collect())
            .collect();
        r.serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChartReport {
    /// The normal covector on `ker θ`, in the basis `kernel_basis`.
    pub normal: Vec<String>,
    pub equations: Vec<String>,
    pub outcome: ChartOutcome,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LagrangianSearch {
    Found {
        ideals: Vec<Subspace>,
        complete: bool,
        kernel_basis: Vec<Vector>,
        charts: Vec<ChartReport>,
    },
    ProvenEmpty {
        kernel_basis: Vec<Vector>,
        charts: Vec<ChartReport>,
    },
    Inconclusive {
        kernel_basis: Vec<Vector>,
        charts: Vec<ChartReport>,
    },
}

impl LagrangianSearch {
    pub fn ideals(&self) -> &[Subspace] {
        match self {
            LagrangianSearch::Found { ideals, .. } => ideals,
            _ => &[],
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            LagrangianSearch::Found { .. } => "found",
            LagrangianSearch::ProvenEmpty { .. } => "proven_empty",
            LagrangianSearch::Inconclusive { .. } => "inconclusive",
        }
    }
}

const CHART_VARS: [&str; 2] = ["p", "q"];
/// Values tried for a free variable on a positive-dimensional solution set.
const SAMPLES: [i64; 3] = [0, 1, -1];

struct Chart {
    /// `normal[i]` is the `i`-th coordinate of the covector.
    normal: Vec<Polynomial>,
    pivot: usize,
    free: Vec<usize>,
}

fn charts(ring: &Arc<Ring>) -> Vec<Chart> {
    let one = || Polynomial::constant(ring, scalar::one());
    let zero = || Polynomial::zero(ring);
    let (p, q) = (Polynomial::var(ring, 0), Polynomial::var(ring, 1));
    vec![
        Chart {
            normal: vec![one(), p, q.clone()],
            pivot: 0,
            free: vec![0, 1],
        },
        Chart {
            normal: vec![zero(), one(), q],
            pivot: 1,
            free: vec![1],
        },
        Chart {
            normal: vec![zero(), zero(), one()],
            pivot: 2,
            free: vec![],
        },
    ]
}

/// Spanning vectors of the plane in kernel coordinates: `e_j - c_j e_pivot`
/// for `j ≠ pivot`.
fn plane_vectors(chart: &Chart, ring: &Arc<Ring>) -> Vec<Vec<Polynomial>> {
    (0..3)
        .filter(|&j| j != chart.pivot)
        .map(|j| {
            (0..3)
                .map(|i| {
                    if i == j {
                        Polynomial::constant(ring, scalar::one())
                    } else if i == chart.pivot {
                        chart.normal[j].neg()
                    } else {
                        Polynomial::zero(ring)
                    }
                })
                .collect()
        })
        .collect()
}

struct KernelData {
    basis: Vec<Vector>,
    /// `gram[i][j] = Ω(k_i, k_j)`.
    gram: Vec<Vec<Scalar>>,
    /// `ad[a][i]`: kernel coordinates of `[e_a, k_i]`.
    ad: Vec<Vec<Vec<Scalar>>>,
}

fn kernel_data(s: &LcsStructure) -> KernelData {
    let n = s.dim();
    let basis = s.kernel_of_theta().basis().to_vec();
    let m = Matrix::from_columns(
        n,
        &basis
            .iter()
            .map(|b| b.coords().to_vec())
            .collect::<Vec<_>>(),
    );
    let gram = basis
        .iter()
        .map(|a| basis.iter().map(|b| s.omega.eval2(a, b)).collect())
        .collect();
    let ad = (0..n)
        .map(|a| {
            basis
                .iter()
                .map(|k| {
                    // θ closed, so brackets land in ker θ
                    let image = s.algebra.bracket(&Vector::basis(n, a), k).expect("dims");
                    m.solve(image.coords())
                        .expect("derived algebra lies in ker theta")
                })
                .collect()
        })
        .collect();
    KernelData { basis, gram, ad }
}

fn chart_equations(kd: &KernelData, chart: &Chart, ring: &Arc<Ring>) -> Vec<Polynomial> {
    let w = plane_vectors(chart, ring);
    let mut eqs = Vec::new();
    let mut iso = Polynomial::zero(ring);
    for i in 0..3 {
        for j in 0..3 {
            let g = &kd.gram[i][j];
            if !g.is_zero() {
                iso = iso.add(&w[0][i].mul(&w[1][j]).scale(g));
            }
        }
    }
    eqs.push(iso);
    for ad in &kd.ad {
        for wb in &w {
            // c · coords([e_a, W_b])
            let mut e = Polynomial::zero(ring);
            for (i, wbi) in wb.iter().enumerate() {
                for l in 0..3 {
                    let c = &ad[i][l];
                    if !c.is_zero() {
                        e = e.add(&wbi.mul(&chart.normal[l]).scale(c));
                    }
                }
            }
            eqs.push(e);
        }
    }
    let mut seen = BTreeSet::new();
    eqs.into_iter()
        .filter(|e| !e.is_zero())
        .map(|e| e.monic())
        .filter(|e| seen.insert(e.to_string()))
        .collect()
}

fn merge(outcomes: Vec<ChartOutcome>, steps: Vec<String>) -> ChartOutcome {
    let mut certificates = Vec::new();
    let mut points = Vec::new();
    let mut complete = true;
    let mut residual = Vec::new();
    let mut all_steps = steps;
    for o in outcomes {
        match o {
            ChartOutcome::Empty {
                certificates: c,
                steps,
            } => {
                certificates.extend(c);
                all_steps.extend(steps);
            }
            ChartOutcome::Points {
                points: p,
                complete: c,
                steps,
            } => {
                points.extend(p);
                complete &= c;
                all_steps.extend(steps);
            }
            ChartOutcome::Inconclusive { residual: r, steps } => {
                residual.extend(r);
                complete = false;
                all_steps.extend(steps);
            }
        }
    }
    if !points.is_empty() {
        ChartOutcome::Points {
            points,
            complete,
            steps: all_steps,
        }
    } else if !residual.is_empty() {
        ChartOutcome::Inconclusive {
            residual,
            steps: all_steps,
        }
    } else {
        ChartOutcome::Empty {
            certificates,
            steps: all_steps,
        }
    }
}

fn var_name(i: usize) -> &'static str {
    CHART_VARS[i]
}

/// Decides the real solutions of `gens` with `free` unassigned variables.
fn solve(
    gens: Vec<Polynomial>,
    free: &[usize],
    point: Vec<Option<Scalar>>,
) -> Result<ChartOutcome, SearchError> {
    let gens: Vec<Polynomial> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    let unassigned: Vec<usize> = free
        .iter()
        .copied()
        .filter(|&v| point[v].is_none())
        .collect();
    if gens.is_empty() {
        if unassigned.is_empty() {
            let pt = point
                .into_iter()
                .map(|x| x.unwrap_or_else(Scalar::zero))
                .collect();
            return Ok(ChartOutcome::Points {
                points: vec![pt],
                complete: true,
                steps: vec![],
            });
        }
        // a whole family; list samples only
        let v = unassigned[0];
        return sample(Vec::new(), v, free, point);
    }
    let gb = buchberger(&gens)?;
    if let Some(c) = real_infeasibility_certificate(&gb) {
        return Ok(ChartOutcome::Empty {
            certificates: vec![c],
            steps: vec![],
        });
    }
    let lex_ring = gb.ring().with_order(MonomialOrder::Lex);
    let lex = buchberger(
        &gb.generators()
            .iter()
            .map(|g| g.in_ring(&lex_ring))
            .collect::<Vec<_>>(),
    )?;
    if let Some(c) = real_infeasibility_certificate(&lex) {
        return Ok(ChartOutcome::Empty {
            certificates: vec![c],
            steps: vec!["lex basis".into()],
        });
    }
    let back = |p: &Polynomial| p.in_ring(gb.ring());
    for g in gb.generators().iter().chain(lex.generators()) {
        if let Some(vars) = forced_zero_variables(g) {
            let names: Vec<&str> = vars.iter().map(|&v| var_name(v)).collect();
            let step = format!("{} = 0 forced by {g}", names.join(", "));
            let mut pt = point.clone();
            for &v in &vars {
                pt[v] = Some(Scalar::zero());
            }
            let values: Vec<(usize, Scalar)> = vars.iter().map(|&v| (v, Scalar::zero())).collect();
            let next = gens.iter().map(|p| back(p).substitute(&values)).collect();
            return Ok(merge(vec![solve(next, free, pt)?], vec![step]));
        }
    }
    let univariate = lex
        .generators()
        .iter()
        .chain(gb.generators())
        .find_map(|g| {
            g.as_univariate()
                .filter(|(_, u)| u.degree().unwrap_or(0) > 0)
        });
    let Some((v, u)) = univariate else {
        return match unassigned.first() {
            Some(&v) => sample(gens, v, free, point),
            None => Ok(ChartOutcome::Inconclusive {
                residual: gb.generators().iter().map(ToString::to_string).collect(),
                steps: vec![],
            }),
        };
    };
    let roots = u.rational_roots();
    let real = u.count_all_real_roots().expect("nonzero");
    let mut outcomes = Vec::new();
    let mut steps = Vec::new();
    for r in &roots {
        steps.push(format!("{} = {}", var_name(v), scalar::render(r)));
        let mut pt = point.clone();
        pt[v] = Some(r.clone());
        let next = gens
            .iter()
            .map(|p| back(p).substitute(&[(v, r.clone())]))
            .collect();
        outcomes.push(solve(next, free, pt)?);
    }
    if real > roots.len() {
        outcomes.push(ChartOutcome::Inconclusive {
            residual: vec![format!(
                "{} irrational real roots of the univariate element in {}",
                real - roots.len(),
                var_name(v)
            )],
            steps: vec![],
        });
    }
    Ok(merge(outcomes, steps))
}

fn sample(
    gens: Vec<Polynomial>,
    v: usize,
    free: &[usize],
    point: Vec<Option<Scalar>>,
) -> Result<ChartOutcome, SearchError> {
    let mut outcomes = Vec::new();
    for k in SAMPLES {
        let x = scalar::int(k);
        let mut pt = point.clone();
        pt[v] = Some(x.clone());
        let next = gens
            .iter()
            .map(|p| p.substitute(&[(v, x.clone())]))
            .collect();
        outcomes.push(solve(next, free, pt)?);
    }
    let mut merged = merge(
        outcomes,
        vec![format!("{} free; sampled {:?}", var_name(v), SAMPLES)],
    );
    if let ChartOutcome::Points { complete, .. } = &mut merged {
        *complete = false;
    } else if let ChartOutcome::Empty {
        certificates,
        steps,
    } = merged
    {
        merged = ChartOutcome::Inconclusive {
            residual: certificates.into_iter().map(|c| c.witness).collect(),
            steps,
        };
    }
    Ok(merged)
}

fn plane_at(kd: &KernelData, chart: &Chart, ring: &Arc<Ring>, pt: &[Scalar]) -> Subspace {
    let values: Vec<(usize, Scalar)> = pt.iter().cloned().enumerate().collect();
    let vectors: Vec<Vector> = plane_vectors(chart, ring)
        .iter()
        .map(|w| {
            let coords: Vec<Scalar> = w
                .iter()
                .map(|c| c.substitute(&values).constant_term())
                .collect();
            let mut out = Vector::zero(kd.basis[0].dim());
            for (c, k) in coords.iter().zip(&kd.basis) {
                for (o, x) in out.0.iter_mut().zip(k.coords()) {
                    *o += c * x;
                }
            }
            out
        })
        .collect();
    Subspace::span(kd.basis[0].dim(), &vectors)
}

pub fn search_lagrangian_ideals_dim4(s: &LcsStructure) -> Result<LagrangianSearch, SearchError> {
    search_lagrangian_ideals_dim4_with(s, Execution::default())
}

pub fn search_lagrangian_ideals_dim4_with(
    s: &LcsStructure,
    exec: Execution,
) -> Result<LagrangianSearch, SearchError> {
    if s.dim() != 4 {
        return Err(SearchError::UnsupportedDimension(s.dim()));
    }
    if !s.is_proper() {
        return Err(SearchError::NotProper);
    }
    let ring = Ring::new(
        CHART_VARS.iter().map(|s| s.to_string()).collect(),
        MonomialOrder::DegRevLex,
    );
    let kd = kernel_data(s);
    let cells = charts(&ring);
    let results = exec.map(&cells, |chart| {
        let eqs = chart_equations(&kd, chart, &ring);
        let outcome = solve(eqs.clone(), &chart.free, vec![None; CHART_VARS.len()])?;
        Ok::<_, SearchError>(ChartReport {
            normal: chart.normal.iter().map(ToString::to_string).collect(),
            equations: eqs.iter().map(ToString::to_string).collect(),
            outcome,
        })
    });
    let reports: Vec<ChartReport> = results.into_iter().collect::<Result<_, _>>()?;

    let mut ideals: Vec<Subspace> = Vec::new();
    let mut complete = true;
    let mut inconclusive = false;
    for (chart, report) in cells.iter().zip(&reports) {
        match &report.outcome {
            ChartOutcome::Empty { .. } => {}
            ChartOutcome::Points {
                points,
                complete: c,
                ..
            } => {
                complete &= c;
                for pt in points {
                    let j = plane_at(&kd, chart, &ring, pt);
                    verify_lagrangian_ideal(s, &j).map_err(SearchError::Inconsistent)?;
                    if !ideals.contains(&j) {
                        ideals.push(j);
                    }
                }
            }
            ChartOutcome::Inconclusive { .. } => inconclusive = true,
        }
    }
    let kernel_basis = kd.basis;
    Ok(if !ideals.is_empty() {
        LagrangianSearch::Found {
            ideals,
            complete: complete && !inconclusive,
            kernel_basis,
            charts: reports,
        }
    } else if inconclusive {
        LagrangianSearch::Inconclusive {
            kernel_basis,
            charts: reports,
        }
    } else {
        LagrangianSearch::ProvenEmpty {
            kernel_basis,
            charts: reports,
        }
    })
}
