//! Seeded rational sampling of admissible parameter values.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CatalogEntry, LcsEntry};
use crate::notation::{Bindings, CmpOp, Constraint, Expr};
use crate::scalar::{ratio, Scalar};

pub const SAMPLES_PER_PARAMETER: usize = 7;

const MAX_DRAWS: usize = 20_000;

/// Random rationals `p/q` with `1 <= q <= 4` and `|p/q| <= 4`.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Sampler { rng }
    }

    pub fn draw(&mut self) -> Scalar {
        let q: i64 = self.rng.gen_range(1..=4);
        let p: i64 = self.rng.gen_range(-4 * q..=4 * q);
        ratio(p, q)
    }
}

fn stream_id(family: &str, row: Option<usize>) -> u64 {
    // FNV-1a of the name, then the row index
    let mut h: u64 = 0xcbf29ce484222325;
    for b in family.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h ^ row.map_or(0, |r| r as u64 + 1)
}

fn pinned(c: &Constraint, symbol: &str) -> Option<Scalar> {
    if c.op != CmpOp::Eq {
        return None;
    }
    let empty = Bindings::new();
    match (&c.lhs, &c.rhs) {
        (Expr::Param(p), other) | (other, Expr::Param(p)) if p == symbol => other.eval(&empty).ok(),
        _ => None,
    }
}

fn holds_all<'a>(cs: impl IntoIterator<Item = &'a Constraint>, b: &Bindings) -> bool {
    cs.into_iter().all(|c| c.holds(b).unwrap_or(false))
}

/// Splits constraints into those on a single symbol and the rest.
fn partition<'a>(
    symbols: &[String],
    all: Vec<&'a Constraint>,
) -> (Vec<Vec<&'a Constraint>>, Vec<&'a Constraint>) {
    let mut unary = vec![Vec::new(); symbols.len()];
    let mut joint = Vec::new();
    for c in all {
        let ps: BTreeSet<String> = c.params();
        match ps.len() {
            0 => joint.push(c),
            1 => {
                let p = ps.into_iter().next().expect("one element");
                match symbols.iter().position(|s| *s == p) {
                    Some(i) => unary[i].push(c),
                    None => joint.push(c),
                }
            }
            _ => joint.push(c),
        }
    }
    (unary, joint)
}

fn values_for(
    symbol: &str,
    unary: &[&Constraint],
    sampler: &mut Sampler,
    count: usize,
) -> Vec<Scalar> {
    let test = |v: &Scalar| {
        let mut b = Bindings::new();
        b.insert(symbol.to_string(), v.clone());
        holds_all(unary.iter().copied(), &b)
    };
    if let Some(v) = unary.iter().find_map(|c| pinned(c, symbol)) {
        return if test(&v) { vec![v] } else { Vec::new() };
    }
    let mut out: Vec<Scalar> = Vec::new();
    for _ in 0..MAX_DRAWS {
        if out.len() == count {
            break;
        }
        let v = sampler.draw();
        if !out.contains(&v) && test(&v) {
            out.push(v);
        }
    }
    out.sort();
    out
}

fn scope<'a>(
    family: &'a CatalogEntry,
    row: Option<&'a LcsEntry>,
) -> (Vec<String>, Vec<&'a Constraint>) {
    match row {
        Some(r) => (r.symbols(family), r.all_constraints(family).collect()),
        None => (family.symbols(), family.all_constraints().collect()),
    }
}

/// Grid of admissible bindings: `per_param` values for each parameter of the
/// family (and of `row`, if given), product filtered by the joint
/// constraints. A parameter pinned by an equality gets its single value.
pub fn sample_grid(
    family: &CatalogEntry,
    row: Option<&LcsEntry>,
    seed: u64,
    per_param: usize,
) -> Vec<Bindings> {
    let (symbols, all) = scope(family, row);
    let (unary, joint) = partition(&symbols, all);
    let mut sampler = Sampler::new(seed, stream_id(&family.name, row.map(|r| r.index)));
    let mut grid = vec![Bindings::new()];
    for (s, cs) in symbols.iter().zip(&unary) {
        let values = values_for(s, cs, &mut sampler, per_param);
        grid = grid
            .into_iter()
            .flat_map(|b| {
                values.iter().map(move |v| {
                    let mut b = b.clone();
                    b.insert(s.clone(), v.clone());
                    b
                })
            })
            .collect();
    }
    grid.retain(|b| holds_all(joint.iter().copied(), b));
    grid
}

/// One random admissible binding, or `None` if rejection sampling fails.
pub fn random_admissible(
    family: &CatalogEntry,
    row: Option<&LcsEntry>,
    sampler: &mut Sampler,
) -> Option<Bindings> {
    let (symbols, all) = scope(family, row);
    let (unary, joint) = partition(&symbols, all);
    for _ in 0..1000 {
        let mut b = Bindings::new();
        for (s, cs) in symbols.iter().zip(&unary) {
            let v = values_for(s, cs, sampler, 1).into_iter().next()?;
            b.insert(s.clone(), v);
        }
        if holds_all(joint.iter().copied(), &b) {
            return Some(b);
        }
    }
    None
}
