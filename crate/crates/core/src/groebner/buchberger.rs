//! Multivariate division and Buchberger's algorithm with the Gebauer-Möller
//! pair criteria.

use std::sync::Arc;

use serde::Serialize;

use super::poly::{Monomial, PolyError, Polynomial, Ring};

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroebnerError {
    #[error("no generators")]
    Empty,
    #[error("generators live in different rings")]
    RingMismatch,
    #[error("S-pair budget of {budget} reductions exhausted with {} partial generators", partial.len())]
    BudgetExceeded {
        budget: usize,
        partial: Vec<Polynomial>,
    },
}

impl From<PolyError> for GroebnerError {
    fn from(_: PolyError) -> Self {
        GroebnerError::RingMismatch
    }
}

/// Reduced, monic Gröbner basis sorted by increasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroebnerBasis {
    #[serde(skip)]
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    /// S-polynomial reductions performed.
    pub reductions: usize,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.generators.iter().collect();
        reduce(p, &refs)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Remainder of full multivariate division of `p` by `g`.
pub fn normal_form(p: &Polynomial, g: &[Polynomial]) -> Result<Polynomial, PolyError> {
    if g.iter().any(|q| !q.same_ring(p)) {
        return Err(PolyError::RingMismatch);
    }
    let refs: Vec<&Polynomial> = g.iter().filter(|q| !q.is_zero()).collect();
    Ok(reduce(p, &refs))
}

fn reduce(p: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let mut rest = p.clone();
    let mut remainder: Vec<(Monomial, crate::scalar::Scalar)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match basis
            .iter()
            .find(|g| g.leading_monomial().expect("nonzero").divides(&m))
        {
            Some(g) => {
                let lm = g.leading_monomial().expect("nonzero");
                let f = -(c / g.leading_coefficient().expect("nonzero"));
                rest = rest.add_scaled_shifted(g, &f, &lm.quotient_of(&m));
            }
            None => {
                remainder.push((m.clone(), c));
                rest = rest.sub(&Polynomial::monomial(
                    rest.ring(),
                    m,
                    remainder.last().unwrap().1.clone(),
                ));
            }
        }
    }
    Polynomial::from_terms(p.ring(), remainder)
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    let l = lf.lcm(lg);
    let a = Polynomial::zero(f.ring()).add_scaled_shifted(
        f,
        &f.leading_coefficient().unwrap().recip(),
        &lf.quotient_of(&l),
    );
    a.add_scaled_shifted(
        g,
        &-g.leading_coefficient().unwrap().recip(),
        &lg.quotient_of(&l),
    )
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    /// Adds `h` and updates pairs by the Gebauer-Möller criteria.
    fn update(&mut self, h: Polynomial) {
        let k = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lh = self.lm(k).clone();
        let candidates: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| Pair {
                i,
                j: k,
                lcm: self.lm(i).lcm(&lh),
            })
            .collect();
        let mut queue: std::collections::VecDeque<Pair> = candidates.into();
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(c) = queue.pop_front() {
            let coprime = self.lm(c.i).coprime(&lh);
            if coprime || !queue.iter().chain(&kept).any(|d| d.lcm.divides(&c.lcm)) {
                kept.push(c);
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|c| !self.lm(c.i).coprime(&lh))
            .collect();
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !(lh.divides(&p.lcm)
                    && self.lm(p.i).lcm(&lh) != p.lcm
                    && self.lm(p.j).lcm(&lh) != p.lcm)
            })
            .collect();
        self.pairs.extend(fresh);
        for i in 0..k {
            if self.active[i] && lh.divides(self.lm(i)) {
                self.active[i] = false;
            }
        }
    }

    fn pop_pair(&mut self, order: super::poly::MonomialOrder) -> Option<Pair> {
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (p, q) = (&self.pairs[a], &self.pairs[b]);
            p.lcm
                .degree()
                .cmp(&q.lcm.degree())
                .then_with(|| p.lcm.cmp_in(&q.lcm, order))
                .then_with(|| (p.i, p.j).cmp(&(q.i, q.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_refs(&self) -> Vec<&Polynomial> {
        (0..self.polys.len())
            .filter(|&i| self.active[i])
            .map(|i| &self.polys[i])
            .collect()
    }
}

pub fn buchberger(gens: &[Polynomial]) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with_budget(gens, DEFAULT_BUDGET)
}

pub fn buchberger_with_budget(
    gens: &[Polynomial],
    budget: usize,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = gens.first().ok_or(GroebnerError::Empty)?.ring().clone();
    if gens.iter().any(|g| !g.same_ring(&gens[0])) {
        return Err(GroebnerError::RingMismatch);
    }
    let order = ring.order;
    let unit = |reductions| GroebnerBasis {
        ring: ring.clone(),
        generators: vec![Polynomial::constant(&ring, crate::scalar::one())],
        reductions,
    };
    let mut input: Vec<Polynomial> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(Polynomial::monic)
        .collect();
    if input.is_empty() {
        return Ok(GroebnerBasis {
            ring: ring.clone(),
            generators: Vec::new(),
            reductions: 0,
        });
    }
    input.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .cmp_in(b.leading_monomial().unwrap(), order)
    });
    let mut st = State {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        let h = reduce(&g, &st.active_refs());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(0));
        }
        st.update(h.monic());
    }
    let mut reductions = 0;
    while let Some(pair) = st.pop_pair(order) {
        reductions += 1;
        if reductions > budget {
            return Err(GroebnerError::BudgetExceeded {
                budget,
                partial: st.active_refs().into_iter().cloned().collect(),
            });
        }
        let s = s_polynomial(&st.polys[pair.i], &st.polys[pair.j]);
        let h = reduce(&s, &st.active_refs());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(reductions));
        }
        st.update(h.monic());
    }
    let minimal: Vec<Polynomial> = st.active_refs().into_iter().cloned().collect();
    let mut reduced: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<&Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p)
                .collect();
            let lead = Polynomial::monomial(
                &ring,
                minimal[i].leading_monomial().unwrap().clone(),
                crate::scalar::one(),
            );
            let tail = minimal[i].sub(&lead);
            lead.add(&reduce(&tail, &others)).monic()
        })
        .collect();
    reduced.sort_by(|a, b| {
        a.leading_monomial()
            .unwrap()
            .cmp_in(b.leading_monomial().unwrap(), order)
    });
    Ok(GroebnerBasis {
        ring,
        generators: reduced,
        reductions,
    })
}
