//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::notation::{self, Expr, NotationError};
use crate::scalar::{self, Scalar};
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
}

/// Variable names, index 0 being the smallest variable, and a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

impl Ring {
    pub fn new(vars: Vec<String>, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring { vars, order })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Arc::new(Ring {
            vars: self.vars.clone(),
            order,
        })
    }
}

/// Exponent vector, dense over the ring's variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: vec![0; n],
            degree: 0,
        }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(a, b)| a - b)
                .collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Self::from_exponents(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Whether every exponent is even.
    pub fn is_square(&self) -> bool {
        self.exps.iter().all(|e| e % 2 == 0)
    }

    /// Indices of the variables that occur.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub fn cmp_in(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::DegRevLex => self.degree.cmp(&other.degree).then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps) {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return a.cmp(b);
                    }
                }
                Ordering::Equal
            }
        }
    }

    fn write(&self, ring: &Ring, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", ring.vars[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials live in different rings or orders")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by a non-constant polynomial")]
    NonConstantDivisor,
    #[error("negative exponent")]
    NegativeExponent,
    #[error(transparent)]
    Parse(#[from] NotationError),
}

/// Polynomial with terms sorted decreasingly in the ring's order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Scalar::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from unsorted terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, mut terms: Vec<(Monomial, Scalar)>) -> Self {
        let order = ring.order;
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, order));
        let mut out: Vec<(Monomial, Scalar)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial {
            ring: ring.clone(),
            terms: out,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn merge(&self, other: &Polynomial, factor: &Scalar, shift: Option<&Monomial>) -> Polynomial {
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let shifted = other.terms.iter().map(|(m, c)| {
            let m = match shift {
                Some(s) => s.mul(m),
                None => m.clone(),
            };
            (m, c * factor)
        });
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match ma.cmp_in(mb, order) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, ca) = a.next().unwrap().clone();
                        let (_, cb) = b.next().unwrap();
                        let c = ca + cb;
                        if !c.is_zero() {
                            out.push((m, c));
                        }
                    }
                },
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.same_ring(other));
        self.merge(other, &Scalar::one(), None)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(self.same_ring(other));
        self.merge(other, &-Scalar::one(), None)
    }

    /// `self + c * m * other`.
    pub fn add_scaled_shifted(&self, other: &Polynomial, c: &Scalar, m: &Monomial) -> Polynomial {
        self.merge(other, c, Some(m))
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            acc = acc.add_scaled_shifted(other, c, m);
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        (0..k).fold(Self::constant(&self.ring, Scalar::one()), |acc, _| {
            acc.mul(self)
        })
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    /// Same polynomial in another ring over the same variables.
    pub fn in_ring(&self, ring: &Arc<Ring>) -> Polynomial {
        assert_eq!(ring.vars, self.ring.vars, "variable lists differ");
        Self::from_terms(ring, self.terms.clone())
    }

    /// Substitutes rational values for some variables; the ring is kept.
    pub fn substitute(&self, values: &[(usize, Scalar)]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = m.exps.clone();
                let mut c = c.clone();
                for (i, v) in values {
                    let e = exps[*i];
                    if e > 0 {
                        for _ in 0..e {
                            c *= v;
                        }
                        exps[*i] = 0;
                    }
                }
                (Monomial::from_exponents(exps), c)
            })
            .collect();
        Self::from_terms(&self.ring, terms)
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (m, c)| {
            let mut t = c.clone();
            for (i, &e) in m.exps.iter().enumerate() {
                for _ in 0..e {
                    t *= &point[i];
                }
            }
            acc + t
        })
    }

    /// Variables that occur.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..seen.len()).filter(|&i| seen[i]).collect()
    }

    /// The polynomial as univariate in its single variable.
    pub fn as_univariate(&self) -> Option<(usize, UPoly)> {
        let vars = self.variables();
        match vars.as_slice() {
            [] => Some((0, UPoly::new(vec![self.constant_term()]))),
            [v] => {
                let deg = self.total_degree() as usize;
                let mut coeffs = vec![Scalar::zero(); deg + 1];
                for (m, c) in &self.terms {
                    coeffs[m.exps[*v] as usize] += c;
                }
                Some((*v, UPoly::new(coeffs)))
            }
            _ => None,
        }
    }

    /// Parses `3/2*a11^2*a23 - 1` over the ring's variables.
    pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        let e = notation::parse_expr(text)?;
        Self::from_expr(&e, ring)
    }

    pub fn from_expr(e: &Expr, ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        Ok(match e {
            Expr::Num(x) => Self::constant(ring, x.clone()),
            Expr::Param(p) => Self::var(
                ring,
                ring.index_of(p)
                    .ok_or_else(|| PolyError::UnknownVariable(p.clone()))?,
            ),
            Expr::Neg(a) => Self::from_expr(a, ring)?.neg(),
            Expr::Add(a, b) => Self::from_expr(a, ring)?.add(&Self::from_expr(b, ring)?),
            Expr::Sub(a, b) => Self::from_expr(a, ring)?.sub(&Self::from_expr(b, ring)?),
            Expr::Mul(a, b) => Self::from_expr(a, ring)?.mul(&Self::from_expr(b, ring)?),
            Expr::Div(a, b) => {
                let d = Self::from_expr(b, ring)?;
                if !d.is_constant() || d.is_zero() {
                    return Err(PolyError::NonConstantDivisor);
                }
                Self::from_expr(a, ring)?.scale(&d.constant_term().recip())
            }
            Expr::Pow(a, k) => {
                if *k < 0 {
                    return Err(PolyError::NegativeExponent);
                }
                Self::from_expr(a, ring)?.pow(*k as u32)
            }
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{}", scalar::render(&mag))?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{}*", scalar::render(&mag))?;
            }
            m.write(&self.ring, f)?;
        }
        Ok(())
    }
}

impl serde::Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
