//! Polynomial ideals over the rationals: Gröbner bases, membership, and
//! real-infeasibility certificates.

pub mod buchberger;
pub mod certificate;
pub mod equivalence;
pub mod poly;

pub use buchberger::{
    buchberger, buchberger_with_budget, normal_form, GroebnerBasis, GroebnerError, DEFAULT_BUDGET,
};
pub use certificate::{
    real_infeasibility_certificate, sturm_real_root_count, Certificate, CertificateKind,
};
pub use equivalence::{equivalence_ideal, EquivalenceIdeal};
pub use poly::{Monomial, MonomialOrder, PolyError, Polynomial, Ring};
