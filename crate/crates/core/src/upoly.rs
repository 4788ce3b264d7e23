//! Univariate rational polynomials and Sturm sequences.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::scalar::{self, Scalar};

/// Dense univariate polynomial, coefficients from degree 0 upwards, with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    coeffs: Vec<Scalar>,
}

/// A bound of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    Finite(Scalar),
    PosInfinity,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| scalar::int(c)).collect())
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + scalar::to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * scalar::int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lc;
            if !c.is_zero() {
                for (i, di) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * di;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of the distinct irreducible factors.
    pub fn squarefree(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Sturm sequence of the square-free part.
    pub fn sturm_sequence(&self) -> Vec<UPoly> {
        let p = self.squarefree();
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            seq.push(r);
        }
        seq.pop();
        seq
    }

    fn sign_at(&self, b: &Bound) -> i32 {
        let sign_of = |x: Scalar| {
            if x.is_zero() {
                0
            } else if x.is_positive() {
                1
            } else {
                -1
            }
        };
        match b {
            Bound::Finite(x) => sign_of(self.eval(x)),
            Bound::PosInfinity => sign_of(self.leading()),
            Bound::NegInfinity => {
                let s = sign_of(self.leading());
                if self.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        }
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &Bound, hi: &Bound) -> Result<usize, ZeroPolynomial> {
        if self.is_zero() {
            return Err(ZeroPolynomial);
        }
        let seq = self.sturm_sequence();
        let changes = |b: &Bound| {
            let signs: Vec<i32> = seq
                .iter()
                .map(|p| p.sign_at(b))
                .filter(|&s| s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        Ok(changes(lo).saturating_sub(changes(hi)))
    }

    /// Number of distinct real roots on the whole line.
    pub fn count_all_real_roots(&self) -> Result<usize, ZeroPolynomial> {
        self.count_real_roots(&Bound::NegInfinity, &Bound::PosInfinity)
    }

    /// Whether every complex root is real.
    pub fn all_roots_real(&self) -> bool {
        let sf = self.squarefree();
        match sf.degree() {
            None | Some(0) => true,
            Some(d) => sf.count_all_real_roots() == Ok(d),
        }
    }

    /// Rational roots, by the rational root test on the integer-cleared
    /// square-free part.
    pub fn rational_roots(&self) -> Vec<Scalar> {
        use num_bigint::BigInt;
        use num_integer::Integer;
        let sf = self.squarefree();
        if sf.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let den = Scalar::from_integer(scalar::common_denominator(sf.coeffs()));
        let ints: Vec<BigInt> = sf.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut roots = Vec::new();
        let mut low = 0;
        while ints[low].is_zero() {
            roots.push(Scalar::zero());
            low += 1;
        }
        let a0 = ints[low].abs();
        let an = ints.last().unwrap().abs();
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let mut out = Vec::new();
            let mut d = BigInt::one();
            while &d * &d <= *n {
                if (n % &d).is_zero() {
                    out.push(d.clone());
                    out.push(n / &d);
                }
                d += 1;
            }
            out
        };
        for p in divisors(&a0) {
            for q in divisors(&an) {
                if !p.gcd(&q).is_one() {
                    continue;
                }
                for c in [
                    Scalar::new(p.clone(), q.clone()),
                    Scalar::new(-p.clone(), q.clone()),
                ] {
                    if sf.eval(&c).is_zero() && !roots.contains(&c) {
                        roots.push(c);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Bisects an isolating interval `(lo, hi]` holding exactly one root
    /// until its width is at most `tol`; returns the midpoint.
    pub fn refine_root(&self, lo: &Scalar, hi: &Scalar, tol: &Scalar) -> Scalar {
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let half = scalar::ratio(1, 2);
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) * &half;
            let left = self
                .count_real_roots(&Bound::Finite(lo.clone()), &Bound::Finite(mid.clone()))
                .unwrap_or(0);
            if left > 0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) * half
    }

    /// Disjoint intervals `(lo, hi]`, each holding exactly one distinct real
    /// root, covering every root in `(lo, hi]`.
    pub fn isolate_real_roots(&self, lo: &Scalar, hi: &Scalar) -> Vec<(Scalar, Scalar)> {
        let mut out = Vec::new();
        if self.is_zero() || lo >= hi {
            return out;
        }
        let half = scalar::ratio(1, 2);
        let mut stack = vec![(lo.clone(), hi.clone())];
        while let Some((a, b)) = stack.pop() {
            let n = self
                .count_real_roots(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()))
                .unwrap_or(0);
            match n {
                0 => {}
                1 => out.push((a, b)),
                _ => {
                    let mid = (&a + &b) * &half;
                    stack.push((mid.clone(), b));
                    stack.push((a, mid));
                }
            }
        }
        out.sort();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("the zero polynomial has no finite root count")]
pub struct ZeroPolynomial;

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            match i {
                0 => write!(f, "{}", scalar::render(&mag))?,
                _ => {
                    if !unit {
                        write!(f, "{}*", scalar::render(&mag))?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn sturm_counts() {
        let p = UPoly::from_ints(&[1, 0, 1]);
        assert_eq!(p.count_all_real_roots(), Ok(0));
        let q = UPoly::from_ints(&[2, -3, 1]);
        assert_eq!(
            q.count_real_roots(&Bound::Finite(int(0)), &Bound::Finite(int(3))),
            Ok(2)
        );
        assert_eq!(
            q.count_real_roots(&Bound::Finite(int(1)), &Bound::Finite(int(2))),
            Ok(1)
        );
        assert_eq!(UPoly::zero().count_all_real_roots(), Err(ZeroPolynomial));
    }

    #[test]
    fn gcd_and_roots() {
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[-1, 0, 0, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[-1, 1]));
        let c = UPoly::new(vec![int(1), int(-3), int(2)]);
        assert_eq!(c.rational_roots(), vec![ratio(1, 2), int(1)]);
        assert!(UPoly::from_ints(&[0, 0, 1]).all_roots_real());
        assert!(!UPoly::from_ints(&[1, 0, 1]).all_roots_real());
    }

    #[test]
    fn isolation() {
        // (x - 1)(x - 2)(x - 3)
        let p = UPoly::from_ints(&[-6, 11, -6, 1]);
        let iv = p.isolate_real_roots(&int(0), &int(4));
        assert_eq!(iv.len(), 3);
        for ((a, b), r) in iv.iter().zip([1, 2, 3]) {
            assert!(a < &int(r) && &int(r) <= b);
        }
        assert!(UPoly::from_ints(&[1, 0, 1])
            .isolate_real_roots(&int(-9), &int(9))
            .is_empty());
    }
}
