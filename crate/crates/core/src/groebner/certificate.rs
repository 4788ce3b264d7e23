//! Certificates that a polynomial system has no real solution.

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::buchberger::GroebnerBasis;
use super::poly::Polynomial;
use crate::upoly::{Bound, ZeroPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateKind {
    /// The basis is `{1}`: no complex solution.
    UnitIdeal,
    /// An element that is a same-sign combination of even monomials plus a
    /// nonzero constant of that sign.
    SumOfSquaresPlusConstant,
    /// A univariate element without real roots.
    UnivariateNoRealRoots,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub witness: String,
    pub generators: Vec<String>,
}

/// Whether `p` is strictly positive or strictly negative on all of `R^n`
/// by the even-monomials-plus-constant pattern.
pub fn is_definite_square_pattern(p: &Polynomial) -> bool {
    let c = p.constant_term();
    if c.is_zero() {
        return false;
    }
    let positive = c.is_positive();
    p.terms()
        .iter()
        .all(|(m, k)| m.is_square() && k.is_positive() == positive)
}

/// Whether `p` is a same-sign combination of even monomials without constant
/// term, each a power of a single variable; then every variable occurring in
/// it vanishes at any real zero.
pub fn forced_zero_variables(p: &Polynomial) -> Option<Vec<usize>> {
    if p.is_zero() || !p.constant_term().is_zero() {
        return None;
    }
    let positive = p.leading_coefficient()?.is_positive();
    let ok = p
        .terms()
        .iter()
        .all(|(m, k)| m.is_square() && m.support().count() == 1 && k.is_positive() == positive);
    ok.then(|| p.variables())
}

fn univariate_without_real_roots(p: &Polynomial) -> bool {
    match p.as_univariate() {
        Some((_, u)) if u.degree().unwrap_or(0) > 0 => u.count_all_real_roots() == Ok(0),
        _ => false,
    }
}

/// Searches the basis for a witness of real infeasibility.
pub fn real_infeasibility_certificate(gb: &GroebnerBasis) -> Option<Certificate> {
    let generators: Vec<String> = gb.generators().iter().map(ToString::to_string).collect();
    if gb.is_unit() {
        return Some(Certificate {
            kind: CertificateKind::UnitIdeal,
            witness: "1".into(),
            generators,
        });
    }
    for g in gb.generators() {
        let kind = if is_definite_square_pattern(g) {
            CertificateKind::SumOfSquaresPlusConstant
        } else if univariate_without_real_roots(g) {
            CertificateKind::UnivariateNoRealRoots
        } else {
            continue;
        };
        return Some(Certificate {
            kind,
            witness: g.to_string(),
            generators,
        });
    }
    None
}

/// Number of distinct real roots of a univariate polynomial in `(lo, hi]`.
pub fn sturm_real_root_count(p: &Polynomial, lo: &Bound, hi: &Bound) -> Result<usize, SturmError> {
    let (_, u) = p.as_univariate().ok_or(SturmError::NotUnivariate)?;
    Ok(u.count_real_roots(lo, hi)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SturmError {
    #[error("polynomial has more than one variable")]
    NotUnivariate,
    #[error(transparent)]
    Zero(#[from] ZeroPolynomial),
}

#[cfg(test)]
mod tests {
    use super::super::buchberger::buchberger;
    use super::super::poly::{MonomialOrder, Ring};
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn certificates() {
        let r = Ring::new(vec!["x".into(), "y".into()], MonomialOrder::DegRevLex);
        let p = |s: &str| Polynomial::parse(s, &r).unwrap();
        let c =
            real_infeasibility_certificate(&buchberger(&[p("x^2 + y^2 + 1")]).unwrap()).unwrap();
        assert_eq!(c.kind, CertificateKind::SumOfSquaresPlusConstant);
        let c = real_infeasibility_certificate(&buchberger(&[p("x^2 - x + 1"), p("y")]).unwrap())
            .unwrap();
        assert_eq!(c.kind, CertificateKind::UnivariateNoRealRoots);
        assert!(real_infeasibility_certificate(&buchberger(&[p("x - 1")]).unwrap()).is_none());
        assert_eq!(forced_zero_variables(&p("x^2 + 3*y^4")), Some(vec![0, 1]));
        assert_eq!(forced_zero_variables(&p("x^2 - y^2")), None);
    }

    #[test]
    fn sturm_counts() {
        let r = Ring::new(vec!["x".into()], MonomialOrder::DegRevLex);
        let p = |s: &str| Polynomial::parse(s, &r).unwrap();
        let all = (Bound::NegInfinity, Bound::PosInfinity);
        assert_eq!(sturm_real_root_count(&p("x^2 + 1"), &all.0, &all.1), Ok(0));
        assert_eq!(
            sturm_real_root_count(
                &p("x^3 + 3*x^2 - 5*x + 1"),
                &Bound::Finite(int(0)),
                &Bound::Finite(ratio(1, 2))
            ),
            Ok(1)
        );
        assert_eq!(
            sturm_real_root_count(
                &p("(x - 1)*(x - 2)"),
                &Bound::Finite(int(0)),
                &Bound::Finite(int(3))
            ),
            Ok(2)
        );
        assert_eq!(
            sturm_real_root_count(&p("0"), &all.0, &all.1),
            Err(SturmError::Zero(ZeroPolynomial))
        );
    }
}
