//! Locally conformally symplectic structures: validation, characteristic
//! vector, automorphism subalgebra, exactness, and Lagrangian ideals.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{LieAlgebra, Subspace, Vector};
use crate::forms::{self, ce_differential, lie_derivative, KForm, TwistedComplex};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// Why a pair `(Ω, θ)` is not an lcs structure.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Diagnosis {
    #[error("lcs structures need even dimension at least 4, got {0}")]
    BadDimension(usize),
    #[error("expected a {expected}-form for {name}, got degree {found}")]
    WrongDegree {
        name: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("form dimension {found} does not match the algebra dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("theta not closed: d theta = {0}")]
    ThetaNotClosed(String),
    #[error("d omega - theta ^ omega = {0} is nonzero")]
    NotConformallyClosed(String),
    #[error("omega is degenerate (top power vanishes)")]
    Degenerate,
}

/// A validated lcs structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcsStructure {
    pub algebra: LieAlgebra,
    pub omega: KForm,
    pub theta: KForm,
}

pub fn verify_lcs(g: &LieAlgebra, omega: &KForm, theta: &KForm) -> Result<LcsStructure, Diagnosis> {
    let n = g.dim();
    if n < 4 || n % 2 == 1 {
        return Err(Diagnosis::BadDimension(n));
    }
    for (name, f, deg) in [("omega", omega, 2), ("theta", theta, 1)] {
        if f.degree() != deg {
            return Err(Diagnosis::WrongDegree {
                name,
                expected: deg,
                found: f.degree(),
            });
        }
        if f.dim() != n {
            return Err(Diagnosis::DimensionMismatch {
                expected: n,
                found: f.dim(),
            });
        }
    }
    let dtheta = ce_differential(g, theta).expect("dimensions checked");
    if !dtheta.is_zero() {
        return Err(Diagnosis::ThetaNotClosed(dtheta.to_string()));
    }
    let residual = ce_differential(g, omega)
        .expect("dimensions checked")
        .sub(&theta.wedge(omega).expect("same dim"));
    if !residual.is_zero() {
        return Err(Diagnosis::NotConformallyClosed(residual.to_string()));
    }
    if omega.top_power_coefficient().is_zero() {
        return Err(Diagnosis::Degenerate);
    }
    Ok(LcsStructure {
        algebra: g.clone(),
        omega: omega.clone(),
        theta: theta.clone(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    FirstKind,
    SecondKind,
}

/// Solves `ι_X ω = α` for a non-degenerate 2-form.
pub fn flat_inverse(omega: &KForm, alpha: &KForm) -> Option<Vector> {
    let n = omega.dim();
    let cols: Vec<Vec<Scalar>> = (0..n)
        .map(|j| {
            omega
                .interior(&Vector::basis(n, j))
                .expect("degree 2")
                .coeffs()
                .to_vec()
        })
        .collect();
    Matrix::from_columns(n, &cols)
        .solve(alpha.coeffs())
        .map(Vector)
}

/// Exactness data of an lcs structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub eta: KForm,
    pub u: Vector,
    #[serde(with = "scalar::serde_scalar")]
    pub theta_of_u: Scalar,
    pub plane_symplectic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LcsReport {
    pub proper: bool,
    pub v: Vector,
    pub g_omega: Subspace,
    pub kind: Kind,
    pub exact: bool,
    pub eta: Option<KForm>,
    pub u: Option<Vector>,
    #[serde(with = "scalar::serde_opt_scalar")]
    pub theta_of_u: Option<Scalar>,
    pub plane_symplectic: Option<bool>,
}

impl LcsStructure {
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// `θ ≠ 0`; with `θ = 0` the structure is symplectic.
    pub fn is_proper(&self) -> bool {
        !self.theta.is_zero()
    }

    pub fn characteristic_vector(&self) -> Vector {
        flat_inverse(&self.omega, &self.theta).expect("non-degenerate")
    }

    /// `{X : L_X Ω = 0}`.
    pub fn automorphism_subalgebra(&self) -> Subspace {
        let n = self.dim();
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| {
                lie_derivative(&self.algebra, &Vector::basis(n, j), &self.omega)
                    .expect("dims")
                    .coeffs()
                    .to_vec()
            })
            .collect();
        Subspace::kernel_of(&Matrix::from_columns(forms::binomial(n, 2), &cols))
    }

    pub fn automorphism_subalgebra_and_kind(&self) -> (Subspace, Kind) {
        let g_omega = self.automorphism_subalgebra();
        let first = g_omega
            .basis()
            .iter()
            .any(|b| !self.theta.eval1(b).is_zero());
        (
            g_omega,
            if first {
                Kind::FirstKind
            } else {
                Kind::SecondKind
            },
        )
    }

    pub fn kind(&self) -> Kind {
        self.automorphism_subalgebra_and_kind().1
    }

    /// A primitive with its anchor, or `None` when `[Ω] ≠ 0` in `H²_θ`.
    ///
    /// For first-kind structures the primitive is shifted by a `d_θ`-closed
    /// 1-form so that `θ(U) = 1` whenever possible.
    pub fn exactness_data(&self) -> Option<Exactness> {
        let complex = TwistedComplex::new(&self.algebra, &self.theta).expect("theta closed");
        let mut eta = complex.primitive(&self.omega)?;
        let mut u = self.anchor(&eta);
        let mut t = self.theta.eval1(&u);
        if !t.is_one() && self.kind() == Kind::FirstKind {
            // ι_{u_z}Ω = -z gives θ(u_z) = z(V) for z in Z¹_θ.
            let v = self.characteristic_vector();
            let n = self.dim();
            if let Some(z) = complex
                .cocycle_basis(1)
                .into_iter()
                .map(|c| KForm::from_coeffs(n, 1, c))
                .find(|z| !z.eval1(&v).is_zero())
            {
                let c = (Scalar::one() - &t) / z.eval1(&v);
                eta = eta.add(&z.scale(&c));
                u = self.anchor(&eta);
                t = self.theta.eval1(&u);
            }
        }
        let v = self.characteristic_vector();
        let plane_symplectic = !self.omega.eval2(&u, &v).is_zero();
        Some(Exactness {
            eta,
            u,
            theta_of_u: t,
            plane_symplectic,
        })
    }

    /// `U` with `ι_U Ω = -η`.
    pub fn anchor(&self, eta: &KForm) -> Vector {
        flat_inverse(&self.omega, &eta.neg()).expect("non-degenerate")
    }

    /// Whether `d_θ η = Ω` and `ι_U Ω = -η`.
    pub fn check_primitive(&self, eta: &KForm, u: &Vector) -> PrimitiveCheck {
        let d = forms::lichnerowicz_differential(&self.algebra, &self.theta, eta)
            .expect("theta closed");
        let i = self.omega.interior(u).expect("degree 2").add(eta);
        PrimitiveCheck {
            residual_primitive: d.sub(&self.omega),
            residual_anchor: i,
        }
    }

    pub fn report(&self) -> LcsReport {
        let (g_omega, kind) = self.automorphism_subalgebra_and_kind();
        let ex = self.exactness_data();
        LcsReport {
            proper: self.is_proper(),
            v: self.characteristic_vector(),
            g_omega,
            kind,
            exact: ex.is_some(),
            eta: ex.as_ref().map(|e| e.eta.clone()),
            u: ex.as_ref().map(|e| e.u.clone()),
            theta_of_u: ex.as_ref().map(|e| e.theta_of_u.clone()),
            plane_symplectic: ex.as_ref().map(|e| e.plane_symplectic),
        }
    }

    pub fn kernel_of_theta(&self) -> Subspace {
        Subspace::kernel_of(&Matrix::from_rows(vec![self.theta.coeffs().to_vec()]))
    }
}

/// Residuals of `d_θ η - Ω` and `ι_U Ω + η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveCheck {
    pub residual_primitive: KForm,
    pub residual_anchor: KForm,
}

impl PrimitiveCheck {
    pub fn is_ok(&self) -> bool {
        self.residual_primitive.is_zero() && self.residual_anchor.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("expected an odd-dimensional algebra, got dimension {0}")]
    EvenDimension(usize),
    #[error("form dimension {found} does not match the algebra dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("expected a {expected}-form, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
}

fn check_form(h: &LieAlgebra, f: &KForm, degree: usize) -> Result<(), StructureError> {
    if f.dim() != h.dim() {
        return Err(StructureError::DimensionMismatch {
            expected: h.dim(),
            found: f.dim(),
        });
    }
    if f.degree() != degree {
        return Err(StructureError::WrongDegree {
            expected: degree,
            found: f.degree(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReebCheck {
    pub holds: bool,
    pub reeb: Option<Vector>,
}

/// Contact test `η ∧ (dη)^{m-1} ≠ 0` with the Reeb vector `ι_ξ dη = 0`, `η(ξ) = 1`.
pub fn is_contact(h: &LieAlgebra, eta: &KForm) -> Result<ReebCheck, StructureError> {
    let n = h.dim();
    if n.is_multiple_of(2) {
        return Err(StructureError::EvenDimension(n));
    }
    check_form(h, eta, 1)?;
    let deta = ce_differential(h, eta).expect("dims");
    let top = eta.wedge(&deta.power(n / 2)).expect("dims");
    if top.is_zero() {
        return Ok(ReebCheck {
            holds: false,
            reeb: None,
        });
    }
    Ok(ReebCheck {
        holds: true,
        reeb: Some(reeb_vector(&deta, eta)),
    })
}

/// Cosymplectic test `dη = 0`, `dω = 0`, `η ∧ ω^{m-1} ≠ 0`, with `ι_R ω = 0`, `η(R) = 1`.
pub fn is_cosymplectic(
    h: &LieAlgebra,
    eta: &KForm,
    omega: &KForm,
) -> Result<ReebCheck, StructureError> {
    let n = h.dim();
    if n.is_multiple_of(2) {
        return Err(StructureError::EvenDimension(n));
    }
    check_form(h, eta, 1)?;
    check_form(h, omega, 2)?;
    let closed = ce_differential(h, eta).expect("dims").is_zero()
        && ce_differential(h, omega).expect("dims").is_zero();
    let top = eta.wedge(&omega.power(n / 2)).expect("dims");
    if !closed || top.is_zero() {
        return Ok(ReebCheck {
            holds: false,
            reeb: None,
        });
    }
    Ok(ReebCheck {
        holds: true,
        reeb: Some(reeb_vector(omega, eta)),
    })
}

/// The vector `R` with `ι_R beta = 0` and `eta(R) = 1`, for `beta` of rank `n - 1`.
fn reeb_vector(beta: &KForm, eta: &KForm) -> Vector {
    let n = beta.dim();
    let mut rows: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| beta.eval2(&Vector::basis(n, j), &Vector::basis(n, i)))
                .collect()
        })
        .collect();
    let mut rhs = vec![Scalar::zero(); n];
    rows.push(eta.coeffs().to_vec());
    rhs.push(Scalar::one());
    Vector(
        Matrix::from_rows(rows)
            .solve(&rhs)
            .expect("radical is transverse to eta"),
    )
}

/// Why a subspace is not a Lagrangian ideal inside `ker θ`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LagrangianDiagnosis {
    #[error("expected a subspace of dimension {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("not an ideal: [e{generator}, {member}] = {image} leaves the subspace")]
    NotIdeal {
        generator: usize,
        member: Vector,
        image: Vector,
    },
    #[error("not isotropic: omega({a}, {b}) = {value}")]
    NotIsotropic { a: Vector, b: Vector, value: String },
    #[error("not contained in ker theta: theta({0}) is nonzero")]
    NotInKernel(Vector),
    #[error("internal inconsistency: Lagrangian ideal in ker theta is not abelian, [{a}, {b}] = {image}")]
    NotAbelian { a: Vector, b: Vector, image: Vector },
}

pub fn verify_lagrangian_ideal(s: &LcsStructure, j: &Subspace) -> Result<(), LagrangianDiagnosis> {
    let n = s.dim();
    if j.ambient() != n || j.dim() * 2 != n {
        return Err(LagrangianDiagnosis::WrongDimension {
            expected: n / 2,
            found: j.dim(),
        });
    }
    let basis = j.basis();
    for (p, a) in basis.iter().enumerate() {
        for b in &basis[p + 1..] {
            let value = s.omega.eval2(a, b);
            if !value.is_zero() {
                return Err(LagrangianDiagnosis::NotIsotropic {
                    a: a.clone(),
                    b: b.clone(),
                    value: scalar::render(&value),
                });
            }
        }
    }
    if let Some(b) = basis.iter().find(|b| !s.theta.eval1(b).is_zero()) {
        return Err(LagrangianDiagnosis::NotInKernel(b.clone()));
    }
    for b in basis {
        for k in 0..n {
            let image = s.algebra.bracket_unchecked(&Vector::basis(n, k), b);
            if !j.contains(&image) {
                return Err(LagrangianDiagnosis::NotIdeal {
                    generator: k + 1,
                    member: b.clone(),
                    image,
                });
            }
        }
    }
    for (p, a) in basis.iter().enumerate() {
        for b in &basis[p + 1..] {
            let image = s.algebra.bracket_unchecked(a, b);
            if !image.is_zero() {
                return Err(LagrangianDiagnosis::NotAbelian {
                    a: a.clone(),
                    b: b.clone(),
                    image,
                });
            }
        }
    }
    Ok(())
}
