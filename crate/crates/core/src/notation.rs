//! Text grammars: Salamon notation for Lie algebras, linear combinations of
//! basis forms, rational coefficient expressions in named parameters, and
//! parameter constraints.
//!
//! Salamon slot `k` lists `de^k`; the token `ij` contributes `+e^{ij}`, with
//! `de^k(e_i, e_j) = -e^k([e_i, e_j])`. A number counts as a coefficient when
//! it is followed by `*`, `/` or `^` or follows `/` or `^`, and as a digit-pair
//! token otherwise, so
//! `1/2*14 - 23` reads as `(1/2) e^{14} - e^{23}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraError, LieAlgebra, Vector, MAX_DIM};
use crate::forms::KForm;
use crate::scalar::{self, Scalar};

pub type Bindings = BTreeMap<String, Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NotationError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("decimal literal at position {pos}; write rationals as p/q (e.g. 1/2)")]
    Decimal { pos: usize },
    #[error("unbound parameter `{0}`")]
    UnboundParameter(String),
    #[error("division by zero while evaluating `{0}`")]
    DivisionByZero(String),
    #[error("mixed degrees {0} and {1} in one form")]
    MixedDegree(usize, usize),
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index in basis token `{0}`")]
    RepeatedIndex(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

fn syntax(pos: usize, msg: impl Into<String>) -> NotationError {
    NotationError::Syntax {
        pos,
        msg: msg.into(),
    }
}

/// Rational expression in named parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Param(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i32),
}

impl Expr {
    pub fn num(x: Scalar) -> Self {
        Expr::Num(x)
    }

    pub fn eval(&self, b: &Bindings) -> Result<Scalar, NotationError> {
        Ok(match self {
            Expr::Num(x) => x.clone(),
            Expr::Param(p) => b
                .get(p)
                .cloned()
                .ok_or_else(|| NotationError::UnboundParameter(p.clone()))?,
            Expr::Neg(a) => -a.eval(b)?,
            Expr::Add(a, c) => a.eval(b)? + c.eval(b)?,
            Expr::Sub(a, c) => a.eval(b)? - c.eval(b)?,
            Expr::Mul(a, c) => a.eval(b)? * c.eval(b)?,
            Expr::Div(a, c) => {
                let d = c.eval(b)?;
                if d.is_zero() {
                    return Err(NotationError::DivisionByZero(self.to_string()));
                }
                a.eval(b)? / d
            }
            Expr::Pow(a, k) => {
                let base = a.eval(b)?;
                if *k < 0 && base.is_zero() {
                    return Err(NotationError::DivisionByZero(self.to_string()));
                }
                let p = (0..k.unsigned_abs()).fold(Scalar::one(), |acc, _| acc * &base);
                if *k < 0 {
                    p.recip()
                } else {
                    p
                }
            }
        })
    }

    pub fn params(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Param(p) => {
                out.insert(p.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.params(out),
            Expr::Add(a, c) | Expr::Sub(a, c) | Expr::Mul(a, c) | Expr::Div(a, c) => {
                a.params(out);
                c.params(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Num(x) if x.is_negative() || !x.is_integer() => 2,
            Expr::Num(_) | Expr::Param(_) => 4,
            Expr::Pow(..) => 3,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 2,
            Expr::Add(..) | Expr::Sub(..) => 1,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(x) => write!(f, "{}", scalar::render(x)),
            Expr::Param(p) => write!(f, "{p}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(f, a, 3)
            }
            Expr::Add(a, b) => {
                write!(f, "{a} + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                write!(f, "{a} - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "/")?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, k) => {
                wrap(f, a, 4)?;
                write!(f, "^{k}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Salamon,
    Forms,
    Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Basis(Vec<usize>, String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Cmp(CmpOp),
    End,
}

fn tokenize(text: &str, mode: Mode) -> Result<Vec<(usize, Tok)>, NotationError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i + 1 < chars.len() && chars[i] == '.' && chars[i + 1].is_ascii_digit() {
                return Err(NotationError::Decimal { pos: start });
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((start, Tok::Num(digits.parse().expect("digits"))));
            continue;
        }
        if c == 'e' && mode == Mode::Forms && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start + 1..i].iter().collect();
            let idx = digits
                .chars()
                .map(|d| d.to_digit(10).unwrap() as usize)
                .collect();
            out.push((start, Tok::Basis(idx, chars[start..i].iter().collect())));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        let (tok, len) = match (c, two.as_str()) {
            (_, "<=") => (Tok::Cmp(CmpOp::Le), 2),
            (_, ">=") => (Tok::Cmp(CmpOp::Ge), 2),
            (_, "!=") => (Tok::Cmp(CmpOp::Ne), 2),
            (_, "==") => (Tok::Cmp(CmpOp::Eq), 2),
            ('<', _) => (Tok::Cmp(CmpOp::Lt), 1),
            ('>', _) => (Tok::Cmp(CmpOp::Gt), 1),
            ('+', _) => (Tok::Plus, 1),
            ('-' | '−', _) => (Tok::Minus, 1),
            ('*', _) => (Tok::Star, 1),
            ('/', _) => (Tok::Slash, 1),
            ('^', _) => (Tok::Caret, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            (',', _) => (Tok::Comma, 1),
            _ => return Err(syntax(start, format!("unexpected character `{c}`"))),
        };
        out.push((start, tok));
        i += len;
    }
    out.push((chars.len(), Tok::End));
    if mode == Mode::Salamon {
        // Numbers not feeding `*`, `/`, `^` and not a divisor or exponent are
        // tokens; the same test applied to an enclosing parenthesized group
        // makes everything inside it numeric.
        fn feeds(out: &[(usize, Tok)], k: usize, end: usize) -> bool {
            let prev = k.checked_sub(1).map(|p| &out[p].1);
            matches!(prev, Some(Tok::Slash | Tok::Caret))
                || matches!(out[end + 1].1, Tok::Star | Tok::Slash | Tok::Caret)
        }
        let mut coefficient_group = vec![false; out.len()];
        let mut open: Vec<usize> = Vec::new();
        for k in 0..out.len() {
            match out[k].1 {
                Tok::LParen => open.push(k),
                Tok::RParen => {
                    if let Some(l) = open.pop() {
                        if feeds(&out, l, k) {
                            coefficient_group[l..=k].iter_mut().for_each(|c| *c = true);
                        }
                    }
                }
                _ => {}
            }
        }
        for k in 0..out.len() {
            if let Tok::Num(n) = &out[k].1 {
                let numeric = coefficient_group[k] || feeds(&out, k, k);
                if !numeric && !n.is_zero() {
                    let s = n.to_string();
                    let idx = s
                        .chars()
                        .map(|d| d.to_digit(10).unwrap() as usize)
                        .collect();
                    out[k].1 = Tok::Basis(idx, s);
                }
            }
        }
    }
    Ok(out)
}

/// Parse tree before separating coefficients from basis tokens.
#[derive(Clone, Debug)]
enum Node {
    Expr(Expr),
    Basis(usize, Vec<usize>),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(usize, Box<Node>, Box<Node>),
    Div(usize, Box<Node>, Box<Node>),
    Pow(usize, Box<Node>, i32),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), NotationError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else if *self.peek() == Tok::End {
            Err(syntax(
                self.pos(),
                format!("expected {what} at end of input"),
            ))
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn sum(&mut self) -> Result<Node, NotationError> {
        let mut node = match self.peek() {
            Tok::Minus => {
                self.bump();
                Node::Neg(Box::new(self.product()?))
            }
            Tok::Plus => {
                self.bump();
                self.product()?
            }
            _ => self.product()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    node = Node::Add(Box::new(node), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    node = Node::Sub(Box::new(node), Box::new(self.product()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn product(&mut self) -> Result<Node, NotationError> {
        let mut node = self.power()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    node = Node::Mul(pos, Box::new(node), Box::new(self.power()?));
                }
                Tok::Slash => {
                    self.bump();
                    node = Node::Div(pos, Box::new(node), Box::new(self.power()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn power(&mut self) -> Result<Node, NotationError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        match self.bump() {
            Tok::Num(n) => {
                let k: i32 = n
                    .try_into()
                    .map_err(|_| syntax(pos, "exponent too large"))?;
                Ok(Node::Pow(pos, Box::new(base), if neg { -k } else { k }))
            }
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Node, NotationError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(Node::Expr(Expr::Num(Scalar::from_integer(n)))),
            Tok::Ident(s) => Ok(Node::Expr(Expr::Param(s))),
            Tok::Basis(idx, _) => Ok(Node::Basis(pos, idx)),
            Tok::LParen => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            Tok::Minus => Ok(Node::Neg(Box::new(self.power()?))),
            Tok::End => Err(syntax(pos, "unexpected end of input")),
            _ => Err(syntax(
                pos,
                "expected a number, parameter, basis element or `(`",
            )),
        }
    }
}

/// A linear combination with coefficient expressions: pairs of coefficient
/// and zero-based basis indices (in token order, not yet sorted).
pub type Terms = Vec<(Expr, Vec<usize>)>;

fn has_basis(n: &Node) -> bool {
    match n {
        Node::Expr(_) => false,
        Node::Basis(..) => true,
        Node::Neg(a) | Node::Pow(_, a, _) => has_basis(a),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(_, a, b) | Node::Div(_, a, b) => {
            has_basis(a) || has_basis(b)
        }
    }
}

fn scalar_of(n: &Node) -> Result<Expr, NotationError> {
    Ok(match n {
        Node::Expr(e) => e.clone(),
        Node::Basis(pos, ..) => return Err(syntax(*pos, "basis element inside a coefficient")),
        Node::Neg(a) => Expr::Neg(Box::new(scalar_of(a)?)),
        Node::Add(a, b) => Expr::Add(Box::new(scalar_of(a)?), Box::new(scalar_of(b)?)),
        Node::Sub(a, b) => Expr::Sub(Box::new(scalar_of(a)?), Box::new(scalar_of(b)?)),
        Node::Mul(_, a, b) => Expr::Mul(Box::new(scalar_of(a)?), Box::new(scalar_of(b)?)),
        Node::Div(_, a, b) => Expr::Div(Box::new(scalar_of(a)?), Box::new(scalar_of(b)?)),
        Node::Pow(_, a, k) => Expr::Pow(Box::new(scalar_of(a)?), *k),
    })
}

fn linearize(n: &Node) -> Result<Terms, NotationError> {
    let scale = |terms: Terms, f: &dyn Fn(Expr) -> Expr| -> Terms {
        terms.into_iter().map(|(c, i)| (f(c), i)).collect()
    };
    Ok(match n {
        Node::Expr(_) => return Err(syntax(0, "term without a basis element")),
        Node::Basis(_, idx) => vec![(Expr::Num(Scalar::one()), idx.clone())],
        Node::Neg(a) => scale(linearize(a)?, &|c| Expr::Neg(Box::new(c))),
        Node::Add(a, b) => {
            let mut t = linearize(a)?;
            t.extend(linearize(b)?);
            t
        }
        Node::Sub(a, b) => {
            let mut t = linearize(a)?;
            t.extend(scale(linearize(b)?, &|c| Expr::Neg(Box::new(c))));
            t
        }
        Node::Mul(pos, a, b) => match (has_basis(a), has_basis(b)) {
            (true, false) => {
                let s = scalar_of(b)?;
                scale(linearize(a)?, &|c| {
                    Expr::Mul(Box::new(c), Box::new(s.clone()))
                })
            }
            (false, true) => {
                let s = scalar_of(a)?;
                scale(linearize(b)?, &|c| {
                    Expr::Mul(Box::new(s.clone()), Box::new(c))
                })
            }
            (true, true) => {
                return Err(syntax(
                    *pos,
                    "product of two basis elements; write a single token",
                ))
            }
            (false, false) => return Err(syntax(*pos, "term without a basis element")),
        },
        Node::Div(pos, a, b) => {
            if has_basis(b) {
                return Err(syntax(*pos, "basis element in a denominator"));
            }
            let s = scalar_of(b)?;
            scale(linearize(a)?, &|c| {
                Expr::Div(Box::new(c), Box::new(s.clone()))
            })
        }
        Node::Pow(pos, ..) if has_basis(n) => return Err(syntax(*pos, "power of a basis element")),
        Node::Pow(..) => return Err(syntax(0, "term without a basis element")),
    })
}

fn is_literal_zero(n: &Node) -> bool {
    matches!(n, Node::Expr(Expr::Num(x)) if x.is_zero())
}

fn parse_terms(text: &str, mode: Mode, offset: usize) -> Result<Option<Terms>, NotationError> {
    let toks = tokenize(text, mode).map_err(|e| shift(e, offset))?;
    let mut p = Parser { toks, at: 0 };
    let node = p.sum().map_err(|e| shift(e, offset))?;
    if *p.peek() != Tok::End {
        return Err(shift(syntax(p.pos(), "unexpected trailing input"), offset));
    }
    if is_literal_zero(&node) {
        return Ok(None);
    }
    linearize(&node).map(Some).map_err(|e| shift(e, offset))
}

fn shift(e: NotationError, offset: usize) -> NotationError {
    match e {
        NotationError::Syntax { pos, msg } => NotationError::Syntax {
            pos: pos + offset,
            msg,
        },
        NotationError::Decimal { pos } => NotationError::Decimal { pos: pos + offset },
        other => other,
    }
}

fn check_indices(terms: &Terms, dim: usize) -> Result<Vec<(Expr, Vec<usize>)>, NotationError> {
    terms
        .iter()
        .map(|(c, idx)| {
            let mut zero_based = Vec::new();
            for &i in idx {
                if i == 0 || i > dim {
                    return Err(NotationError::IndexOutOfRange { index: i, dim });
                }
                if zero_based.contains(&(i - 1)) {
                    let tok: String = idx.iter().map(|d| d.to_string()).collect();
                    return Err(NotationError::RepeatedIndex(tok));
                }
                zero_based.push(i - 1);
            }
            Ok((c.clone(), zero_based))
        })
        .collect()
}

/// Parametric form `sum_t c_t(params) e^{I_t}` of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTemplate {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<(Expr, Vec<usize>)>,
}

impl FormTemplate {
    pub fn parse(text: &str, dim: usize) -> Result<Self, NotationError> {
        Self::parse_inner(text, dim, None)
    }

    /// Like [`FormTemplate::parse`], accepting `0` as the zero form of `degree`.
    pub fn parse_with_degree(text: &str, dim: usize, degree: usize) -> Result<Self, NotationError> {
        let t = Self::parse_inner(text, dim, Some(degree))?;
        if t.degree != degree {
            return Err(NotationError::MixedDegree(degree, t.degree));
        }
        Ok(t)
    }

    fn parse_inner(text: &str, dim: usize, degree: Option<usize>) -> Result<Self, NotationError> {
        let Some(terms) = parse_terms(text, Mode::Forms, 0)? else {
            return match degree {
                Some(d) => Ok(FormTemplate {
                    dim,
                    degree: d,
                    terms: Vec::new(),
                }),
                None => Err(syntax(0, "the zero form needs an explicit degree")),
            };
        };
        let terms = check_indices(&terms, dim)?;
        let deg = terms[0].1.len();
        if let Some((_, other)) = terms.iter().find(|(_, i)| i.len() != deg) {
            return Err(NotationError::MixedDegree(deg, other.len()));
        }
        Ok(FormTemplate {
            dim,
            degree: deg,
            terms,
        })
    }

    pub fn instantiate(&self, b: &Bindings) -> Result<KForm, NotationError> {
        let mut f = KForm::zero(self.dim, self.degree);
        for (c, idx) in &self.terms {
            f = f.add(&KForm::monomial(self.dim, idx, c.eval(b)?));
        }
        Ok(f)
    }

    /// Interprets a degree-1 template as a vector in the basis `e_i`.
    pub fn instantiate_vector(&self, b: &Bindings) -> Result<Vector, NotationError> {
        if self.degree != 1 {
            return Err(NotationError::MixedDegree(1, self.degree));
        }
        Ok(Vector(self.instantiate(b)?.coeffs().to_vec()))
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (c, _) in &self.terms {
            c.params(&mut out);
        }
        out
    }
}

pub fn parse_form(text: &str, dim: usize, b: &Bindings) -> Result<KForm, NotationError> {
    FormTemplate::parse(text, dim)?.instantiate(b)
}

pub fn parse_vector(text: &str, dim: usize, b: &Bindings) -> Result<Vector, NotationError> {
    FormTemplate::parse_with_degree(text, dim, 1)?.instantiate_vector(b)
}

/// Parametric Salamon tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SalamonTemplate {
    pub dim: usize,
    /// `slots[k]` lists `(coefficient, (i, j))` zero-based for `de^{k+1}`.
    pub slots: Vec<Vec<(Expr, (usize, usize))>>,
}

impl SalamonTemplate {
    pub fn parse(text: &str) -> Result<Self, NotationError> {
        let trimmed = text.trim_end();
        let body_start = text.find('(').ok_or_else(|| syntax(0, "expected `(`"))?;
        if !text[..body_start].trim().is_empty() {
            return Err(syntax(0, "expected `(`"));
        }
        let Some(inner) = trimmed[body_start + 1..].strip_suffix(')') else {
            return Err(syntax(text.chars().count(), "expected `)` at end of input"));
        };
        let mut pieces = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        for (i, c) in inner.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    pieces.push((start, &inner[start..i]));
                    start = i + 1;
                }
                _ => {}
            }
        }
        pieces.push((start, &inner[start..]));
        let dim = pieces.len();
        if dim > MAX_DIM {
            return Err(AlgebraError::UnsupportedDimension(dim).into());
        }
        let mut slots = Vec::new();
        for (off, piece) in pieces {
            let offset = inner[..off].chars().count() + body_start + 1;
            if piece.trim().is_empty() {
                return Err(syntax(offset, "empty slot"));
            }
            let terms = parse_terms(piece, Mode::Salamon, offset)?.unwrap_or_default();
            let mut slot = Vec::new();
            for (c, idx) in check_indices(&terms, dim)? {
                if idx.len() != 2 {
                    return Err(syntax(offset, "Salamon tokens are digit pairs such as 12"));
                }
                slot.push((c, (idx[0], idx[1])));
            }
            slots.push(slot);
        }
        Ok(SalamonTemplate { dim, slots })
    }

    pub fn instantiate(&self, b: &Bindings) -> Result<LieAlgebra, NotationError> {
        let g = self.instantiate_unchecked(b)?;
        Ok(LieAlgebra::new(g.dim(), g.nonzero_brackets())?)
    }

    /// Structure constants without the Jacobi check.
    pub fn instantiate_unchecked(&self, b: &Bindings) -> Result<LieAlgebra, NotationError> {
        let n = self.dim;
        let mut brackets: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        for (k, slot) in self.slots.iter().enumerate() {
            for (c, (i, j)) in slot {
                let c = c.eval(b)?;
                // +c e^{ij} in de^k means c_ij^k = -c.
                let (lo, hi, c) = if i < j { (*i, *j, -c) } else { (*j, *i, c) };
                let v = brackets
                    .entry((lo + 1, hi + 1))
                    .or_insert_with(|| Vector::zero(n));
                v.0[k] += c;
            }
        }
        Ok(LieAlgebra::unchecked(
            n,
            brackets.into_iter().map(|((i, j), v)| (i, j, v)),
        )?)
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for slot in &self.slots {
            for (c, _) in slot {
                c.params(&mut out);
            }
        }
        out
    }
}

pub fn parse_salamon(text: &str, b: &Bindings) -> Result<LieAlgebra, NotationError> {
    SalamonTemplate::parse(text)?.instantiate(b)
}

/// Salamon tuple of an algebra, inverse to [`parse_salamon`].
pub fn print_salamon(g: &LieAlgebra) -> String {
    let n = g.dim();
    let slots: Vec<String> = (0..n)
        .map(|k| {
            let mut s = String::new();
            for i in 0..n {
                for j in i + 1..n {
                    let c = -g.constant(i, j, k).clone();
                    if c.is_zero() {
                        continue;
                    }
                    let mag = c.abs();
                    if s.is_empty() {
                        if c.is_negative() {
                            s.push('-');
                        }
                    } else {
                        s.push_str(if c.is_negative() { "-" } else { "+" });
                    }
                    if !mag.is_one() {
                        s.push_str(&scalar::render(&mag));
                        s.push('*');
                    }
                    s.push_str(&format!("{}{}", i + 1, j + 1));
                }
            }
            if s.is_empty() {
                "0".to_string()
            } else {
                s
            }
        })
        .collect();
    format!("({})", slots.join(","))
}

/// Parses a parameter-free rational expression such as `-3/4`.
pub fn parse_scalar_expr(text: &str, b: &Bindings) -> Result<Scalar, NotationError> {
    parse_expr(text)?.eval(b)
}

pub fn parse_expr(text: &str) -> Result<Expr, NotationError> {
    let toks = tokenize(text, Mode::Scalar)?;
    let mut p = Parser { toks, at: 0 };
    let node = p.sum()?;
    if *p.peek() != Tok::End {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    scalar_of(&node)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

/// A condition `lhs op rhs` on parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub lhs: Expr,
    pub op: CmpOp,
    pub rhs: Expr,
    pub text: String,
}

impl Constraint {
    pub fn parse(text: &str) -> Result<Self, NotationError> {
        let toks = tokenize(text, Mode::Scalar)?;
        let split = toks
            .iter()
            .position(|(_, t)| matches!(t, Tok::Cmp(_)))
            .ok_or_else(|| syntax(0, "expected a comparison"))?;
        let Tok::Cmp(op) = toks[split].1 else {
            unreachable!()
        };
        let mut left: Vec<(usize, Tok)> = toks[..split].to_vec();
        left.push((toks[split].0, Tok::End));
        let right = toks[split + 1..].to_vec();
        let mut pl = Parser { toks: left, at: 0 };
        let lhs = scalar_of(&pl.sum()?)?;
        if *pl.peek() != Tok::End {
            return Err(syntax(pl.pos(), "unexpected input before comparison"));
        }
        let mut pr = Parser { toks: right, at: 0 };
        let rhs = scalar_of(&pr.sum()?)?;
        if *pr.peek() != Tok::End {
            return Err(syntax(pr.pos(), "unexpected trailing input"));
        }
        Ok(Constraint {
            lhs,
            op,
            rhs,
            text: text.trim().to_string(),
        })
    }

    pub fn holds(&self, b: &Bindings) -> Result<bool, NotationError> {
        let (l, r) = (self.lhs.eval(b)?, self.rhs.eval(b)?);
        Ok(match self.op {
            CmpOp::Lt => l < r,
            CmpOp::Le => l <= r,
            CmpOp::Gt => l > r,
            CmpOp::Ge => l >= r,
            CmpOp::Eq => l == r,
            CmpOp::Ne => l != r,
        })
    }

    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.lhs.params(&mut out);
        self.rhs.params(&mut out);
        out
    }
}

/// Builds bindings from `NAME=value` strings.
pub fn parse_bindings<'a>(
    items: impl IntoIterator<Item = &'a str>,
) -> Result<Bindings, NotationError> {
    let mut b = Bindings::new();
    for item in items {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| syntax(0, format!("expected NAME=value in `{item}`")))?;
        let v = parse_scalar_expr(value, &b)?;
        b.insert(name.trim().to_string(), v);
    }
    Ok(b)
}
