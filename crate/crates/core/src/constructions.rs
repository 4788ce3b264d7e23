//! Constructions between lcs Lie algebras and lower-dimensional data:
//! contact algebras with a derivation, cosymplectic algebras with a
//! derivation, the mixed decomposition `Ω = ω + η ∧ θ`, and cotangent
//! extensions `h* ⊕ h` with their presentations from Lagrangian ideals.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraError, Check, LieAlgebra, LinearMap, Subspace, Vector};
use crate::forms::{ce_differential, lichnerowicz_differential, solve_primitive, KForm};
use crate::lcs::{
    is_contact, is_cosymplectic, verify_lagrangian_ideal, verify_lcs, Diagnosis,
    LagrangianDiagnosis, LcsStructure, StructureError,
};
use crate::linalg::{independent_extension, Matrix};
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("alpha = 1 is excluded")]
    AlphaIsOne,
    #[error("alpha = 0 is excluded")]
    AlphaIsZero,
    #[error("eta is not a contact form")]
    NotContact,
    #[error("(eta, omega) is not cosymplectic")]
    NotCosymplectic,
    #[error("D is not a derivation: D[e{}, e{}] differs by {residual}", indices[0], indices[1])]
    NotDerivation {
        indices: Vec<usize>,
        residual: Vector,
    },
    #[error("D*{form} = {found}, expected {expected}")]
    EigenformMismatch {
        form: &'static str,
        expected: String,
        found: String,
    },
    #[error("eta is not a primitive with anchor U: residuals {primitive} and {anchor}")]
    NotPrimitive { primitive: String, anchor: String },
    #[error("theta(U) = 0; ker theta is {}a contact algebra", if *kernel_contact { "" } else { "not " })]
    ThetaOfUZero { kernel_contact: bool },
    #[error("side conditions fail: i_V omega = {iv}, i_U omega = {iu}")]
    SideConditions { iv: String, iu: String },
    #[error("theta_hat is not closed")]
    ThetaHatNotClosed,
    #[error("rho is not a representation: rho[e{i}, e{j}] != [rho(e{i}), rho(e{j})]")]
    NotRepresentation { i: usize, j: usize },
    #[error("cotangent data has inconsistent shapes: {0}")]
    Shape(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Lcs(#[from] Diagnosis),
    #[error(transparent)]
    Lagrangian(#[from] LagrangianDiagnosis),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Action of an endomorphism on forms as a derivation:
/// `(D·f)(X_1, ..., X_k) = Σ_i f(X_1, ..., D X_i, ..., X_k)`.
pub fn derivation_action(d: &LinearMap, f: &KForm) -> KForm {
    let n = f.dim();
    if f.degree() == 0 {
        return KForm::zero(n, 0);
    }
    let mut out = KForm::zero(n, f.degree());
    for j in 0..n {
        let img = d.apply(&Vector::basis(n, j));
        if img.is_zero() {
            continue;
        }
        let t = KForm::basis1(n, j)
            .wedge(&f.interior(&img).expect("dims"))
            .expect("dims");
        out = out.add(&t);
    }
    out
}

fn check_derivation(h: &LieAlgebra, d: &LinearMap) -> Result<(), ConstructionError> {
    match h.is_derivation(d)? {
        Check::Ok => Ok(()),
        Check::Witness { indices, residual } => {
            Err(ConstructionError::NotDerivation { indices, residual })
        }
    }
}

fn check_eigenform(
    form: &'static str,
    d: &LinearMap,
    f: &KForm,
    alpha: &Scalar,
) -> Result<(), ConstructionError> {
    let found = derivation_action(d, f);
    let expected = f.scale(alpha);
    if found == expected {
        Ok(())
    } else {
        Err(ConstructionError::EigenformMismatch {
            form,
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// Columns are the given vectors.
fn inclusion(ambient: usize, basis: &[Vector]) -> Matrix {
    Matrix::from_columns(
        ambient,
        &basis
            .iter()
            .map(|b| b.coords().to_vec())
            .collect::<Vec<_>>(),
    )
}

/// Extends a form on `h` to `h ⋊ R` by zero on the new generator.
fn extend(f: &KForm) -> KForm {
    let n = f.dim();
    let mut proj = Matrix::zeros(n, n + 1);
    for i in 0..n {
        proj[(i, i)] = Scalar::one();
    }
    f.pullback(&proj)
}

/// `ad_U` restricted to `ker θ`, in the given basis of the kernel.
fn restricted_adjoint(
    g: &LieAlgebra,
    u: &Vector,
    basis: &[Vector],
) -> Result<LinearMap, ConstructionError> {
    let p = inclusion(g.dim(), basis);
    let cols: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|k| {
            let img = g.bracket(u, k)?;
            p.solve(img.coords()).ok_or_else(|| {
                ConstructionError::Internal("[U, ker theta] leaves ker theta".into())
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(LinearMap::new(Matrix::from_columns(basis.len(), &cols)))
}

/// Contact algebra with a derivation `D`, `D·η = αη`, `α ≠ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContactData {
    pub h: LieAlgebra,
    pub eta: KForm,
    pub derivation: LinearMap,
    #[serde(with = "scalar::serde_scalar")]
    pub alpha: Scalar,
}

impl ContactData {
    pub fn new(
        h: LieAlgebra,
        eta: KForm,
        derivation: LinearMap,
        alpha: Scalar,
    ) -> Result<Self, ConstructionError> {
        let cd = ContactData {
            h,
            eta,
            derivation,
            alpha,
        };
        cd.validate()?;
        Ok(cd)
    }

    pub fn validate(&self) -> Result<(), ConstructionError> {
        if self.alpha.is_one() {
            return Err(ConstructionError::AlphaIsOne);
        }
        if !is_contact(&self.h, &self.eta)?.holds {
            return Err(ConstructionError::NotContact);
        }
        check_derivation(&self.h, &self.derivation)?;
        check_eigenform("eta", &self.derivation, &self.eta, &self.alpha)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FromContact {
    pub structure: LcsStructure,
    /// `η` extended by zero; `d_θ η = Ω`.
    pub eta: KForm,
    /// The new generator; `ι_U Ω = -η`.
    pub u: Vector,
    #[serde(with = "scalar::serde_scalar")]
    pub theta_of_u: Scalar,
}

/// `g = h ⋊_D R` with `θ = (1 - α) ν` and `Ω = d_θ η = d^h η - ν ∧ η`, where
/// `ν` is dual to the new generator `U`. Then `ι_U Ω = -η` and
/// `θ(U) = 1 - α`, so [`contact_from_exact_lcs`] inverts this exactly.
pub fn lcs_from_contact(cd: &ContactData) -> Result<FromContact, ConstructionError> {
    cd.validate()?;
    let n = cd.h.dim();
    let g = cd.h.semidirect_product(&cd.derivation)?;
    let nu = KForm::basis1(n + 1, n);
    let theta = nu.scale(&(Scalar::one() - &cd.alpha));
    let eta = extend(&cd.eta);
    let omega = lichnerowicz_differential(&g, &theta, &eta).expect("dims");
    let structure = verify_lcs(&g, &omega, &theta)?;
    let u = Vector::basis(n + 1, n);
    let check = structure.check_primitive(&eta, &u);
    if !check.is_ok() {
        return Err(ConstructionError::Internal(format!(
            "anchor of the new generator fails: {:?}",
            check
        )));
    }
    let theta_of_u = theta.eval1(&u);
    Ok(FromContact {
        structure,
        eta,
        u,
        theta_of_u,
    })
}

/// `(ker θ, η|, ad_U|, 1 - θ(U))` for an exact structure with primitive `η`
/// and anchor `U`. The kernel uses the echelon basis of `ker θ`.
pub fn contact_from_exact_lcs(
    s: &LcsStructure,
    eta: &KForm,
    u: &Vector,
) -> Result<ContactData, ConstructionError> {
    let check = s.check_primitive(eta, u);
    if !check.is_ok() {
        return Err(ConstructionError::NotPrimitive {
            primitive: check.residual_primitive.to_string(),
            anchor: check.residual_anchor.to_string(),
        });
    }
    let basis = s.kernel_of_theta().basis().to_vec();
    let h = s.algebra.restrict(&basis)?;
    let eta_h = eta.pullback(&inclusion(s.dim(), &basis));
    let t = s.theta.eval1(u);
    if t.is_zero() {
        let kernel_contact = is_contact(&h, &eta_h)?.holds;
        return Err(ConstructionError::ThetaOfUZero { kernel_contact });
    }
    let derivation = restricted_adjoint(&s.algebra, u, &basis)?;
    ContactData::new(h, eta_h, derivation, Scalar::one() - t)
}

/// Cosymplectic algebra with a derivation `D`, `D·ω = αω`, `α ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosymplecticData {
    pub h: LieAlgebra,
    pub eta: KForm,
    pub omega: KForm,
    pub derivation: LinearMap,
    #[serde(with = "scalar::serde_scalar")]
    pub alpha: Scalar,
}

impl CosymplecticData {
    pub fn new(
        h: LieAlgebra,
        eta: KForm,
        omega: KForm,
        derivation: LinearMap,
        alpha: Scalar,
    ) -> Result<Self, ConstructionError> {
        let cd = CosymplecticData {
            h,
            eta,
            omega,
            derivation,
            alpha,
        };
        cd.validate()?;
        Ok(cd)
    }

    pub fn validate(&self) -> Result<Vector, ConstructionError> {
        if self.alpha.is_zero() {
            return Err(ConstructionError::AlphaIsZero);
        }
        let c = is_cosymplectic(&self.h, &self.eta, &self.omega)?;
        let reeb = c
            .reeb
            .filter(|_| c.holds)
            .ok_or(ConstructionError::NotCosymplectic)?;
        check_derivation(&self.h, &self.derivation)?;
        check_eigenform("omega", &self.derivation, &self.omega, &self.alpha)?;
        Ok(reeb)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FromCosymplectic {
    #[serde(skip)]
    pub structure: LcsStructure,
    pub algebra: LieAlgebra,
    pub omega: KForm,
    pub theta: KForm,
    pub reeb: Vector,
    pub h_unimodular: bool,
    /// Coefficient of `η` in `D·η` along `h* = <η> ⊕ <R>°`.
    #[serde(with = "scalar::serde_scalar")]
    pub beta: Scalar,
    /// `h` unimodular and `β = -α(n-1)`.
    pub unimodular: bool,
    /// Trace test on `ad` of the product, computed independently.
    pub unimodular_by_trace: bool,
    pub exact: bool,
    /// Holds unless `h` is unimodular and the structure is exact.
    pub nonexact_check: bool,
}

/// `g = h ⋊_D R` with `θ = -α ν` and `Ω = ω + η ∧ ν`.
pub fn lcs_from_cosymplectic(cd: &CosymplecticData) -> Result<FromCosymplectic, ConstructionError> {
    let reeb = cd.validate()?;
    let m = cd.h.dim();
    let g = cd.h.semidirect_product(&cd.derivation)?;
    let nu = KForm::basis1(m + 1, m);
    let theta = nu.scale(&-cd.alpha.clone());
    let omega = extend(&cd.omega).add(&extend(&cd.eta).wedge(&nu).expect("dims"));
    let structure = verify_lcs(&g, &omega, &theta)?;

    let h_unimodular = cd.h.center_and_flags().unimodular;
    let beta = derivation_action(&cd.derivation, &cd.eta).eval1(&reeb);
    let n = m.div_ceil(2);
    let target = -&cd.alpha * scalar::int((n - 1) as i64);
    let unimodular = h_unimodular && beta == target;
    let unimodular_by_trace = g.center_and_flags().unimodular;
    let exact = solve_primitive(&g, &theta, &omega).expect("dims").is_some();
    Ok(FromCosymplectic {
        algebra: g,
        omega: structure.omega.clone(),
        theta: structure.theta.clone(),
        structure,
        reeb,
        h_unimodular,
        beta,
        unimodular,
        unimodular_by_trace,
        exact,
        nonexact_check: !(h_unimodular && exact),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Ansatz {
    /// `ω = d^h η` with `d^h(D·η) = 0`.
    Contact,
    /// `d^h η = 0` and `D·ω = -ω`.
    Cosymplectic,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MixedDecomposition {
    /// `Ω - η ∧ θ` on `g`.
    pub omega: KForm,
    pub u: Vector,
    #[serde(with = "scalar::serde_scalar")]
    pub theta_of_u: Scalar,
    pub kernel_basis: Vec<Vector>,
    pub h: LieAlgebra,
    pub omega_h: KForm,
    pub eta_h: KForm,
    /// `ad_U` on `ker θ`.
    pub derivation: LinearMap,
    /// `d^h ω = 0`.
    pub closed: bool,
    /// `ω + D·ω - d^h η = 0`.
    pub balanced: bool,
    pub equations_hold: bool,
    pub ansatz: Ansatz,
}

pub fn mixed_decomposition(
    s: &LcsStructure,
    eta: &KForm,
) -> Result<MixedDecomposition, ConstructionError> {
    let n = s.dim();
    if eta.dim() != n || eta.degree() != 1 {
        return Err(ConstructionError::Lcs(Diagnosis::WrongDegree {
            name: "eta",
            expected: 1,
            found: eta.degree(),
        }));
    }
    let omega = s.omega.sub(&eta.wedge(&s.theta).expect("dims"));
    let u = s.anchor(eta);
    let v = s.characteristic_vector();
    let iv = omega.interior(&v).expect("degree 2");
    let iu = omega.interior(&u).expect("degree 2");
    if !iv.is_zero() || !iu.is_zero() {
        return Err(ConstructionError::SideConditions {
            iv: iv.to_string(),
            iu: iu.to_string(),
        });
    }
    let kernel_basis = s.kernel_of_theta().basis().to_vec();
    let incl = inclusion(n, &kernel_basis);
    let h = s.algebra.restrict(&kernel_basis)?;
    let omega_h = omega.pullback(&incl);
    let eta_h = eta.pullback(&incl);
    let derivation = restricted_adjoint(&s.algebra, &u, &kernel_basis)?;
    let d_eta = ce_differential(&h, &eta_h).expect("dims");
    let d_omega_action = derivation_action(&derivation, &omega_h);
    let closed = ce_differential(&h, &omega_h).expect("dims").is_zero();
    let balanced = omega_h.add(&d_omega_action).sub(&d_eta).is_zero();
    let ansatz = if omega_h == d_eta
        && ce_differential(&h, &derivation_action(&derivation, &eta_h))
            .expect("dims")
            .is_zero()
    {
        Ansatz::Contact
    } else if d_eta.is_zero() && d_omega_action == omega_h.neg() {
        Ansatz::Cosymplectic
    } else {
        Ansatz::General
    };
    Ok(MixedDecomposition {
        theta_of_u: s.theta.eval1(&u),
        omega,
        u,
        kernel_basis,
        h,
        omega_h,
        eta_h,
        derivation,
        closed,
        balanced,
        equations_hold: closed && balanced,
        ansatz,
    })
}

/// Data of a cotangent extension on `h* ⊕ h`. In the extension, indices
/// `0..n` are the dual basis `f^a` of `h*` and `n..2n` the basis `f_i` of `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CotangentInput {
    pub h: LieAlgebra,
    pub theta_hat: KForm,
    /// `rho[i]` is `ρ(f_i)` acting on `h*`; column `a` is `ρ(f_i) f^a`.
    pub rho: Vec<LinearMap>,
    /// `alpha[i][j] = α(f_i, f_j)`, antisymmetric.
    pub alpha: Vec<Vec<Vector>>,
}

impl CotangentInput {
    pub fn trivial(h: LieAlgebra, theta_hat: KForm) -> Self {
        let n = h.dim();
        CotangentInput {
            h,
            theta_hat,
            rho: vec![LinearMap::zero(n); n],
            alpha: vec![vec![Vector::zero(n); n]; n],
        }
    }

    fn check_shapes(&self) -> Result<(), ConstructionError> {
        let n = self.h.dim();
        let shape_ok = self.theta_hat.dim() == n
            && self.theta_hat.degree() == 1
            && self.rho.len() == n
            && self.rho.iter().all(|r| r.dim() == n)
            && self.alpha.len() == n
            && self
                .alpha
                .iter()
                .all(|row| row.len() == n && row.iter().all(|v| v.dim() == n));
        if !shape_ok {
            return Err(ConstructionError::Shape(format!(
                "expected n = {n} throughout"
            )));
        }
        for i in 0..n {
            for j in 0..n {
                if self.alpha[i][j] != -&self.alpha[j][i] {
                    return Err(ConstructionError::Shape(format!(
                        "alpha not antisymmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// `ρ(X)` for `X` in `h`.
    fn rho_of(&self, x: &Vector) -> Matrix {
        let n = self.h.dim();
        x.coords()
            .iter()
            .zip(&self.rho)
            .fold(Matrix::zeros(n, n), |acc, (c, r)| {
                acc.add(&r.matrix.scaled(c))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum CotangentViolation {
    /// `α(X,Y)(Z) + α(Y,Z)(X) + α(Z,X)(Y) ≠ 0` on basis vectors (1-based).
    Cyclic {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },
    /// `ρ(X)φ(Y) - ρ(Y)φ(X) ≠ d_θ̂ φ(X, Y)` for `φ = f^a`, `X = f_i`, `Y = f_j`.
    Rho {
        a: usize,
        i: usize,
        j: usize,
        lhs: String,
        rhs: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CotangentExtension {
    pub algebra: LieAlgebra,
    pub omega0: KForm,
    pub theta: KForm,
    /// `θ̂ ≠ 0`; otherwise `Ω₀` is symplectic.
    pub proper: bool,
    /// Both cotangent conditions hold.
    pub lcs_ok: bool,
    /// `d Ω₀ = θ ∧ Ω₀`, computed directly.
    pub direct_ok: bool,
    pub violation: Option<CotangentViolation>,
}

pub fn cotangent_extension(ci: &CotangentInput) -> Result<CotangentExtension, ConstructionError> {
    ci.check_shapes()?;
    let h = &ci.h;
    let n = h.dim();
    if !ce_differential(h, &ci.theta_hat).expect("dims").is_zero() {
        return Err(ConstructionError::ThetaHatNotClosed);
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = ci.rho_of(&Vector(h.bracket_basis(i, j).to_vec()));
            let (ri, rj) = (&ci.rho[i].matrix, &ci.rho[j].matrix);
            if lhs != ri.mul(rj).sub(&rj.mul(ri)) {
                return Err(ConstructionError::NotRepresentation { i: i + 1, j: j + 1 });
            }
        }
    }
    let mut brackets = Vec::new();
    for i in 0..n {
        for a in 0..n {
            // [(f^a, 0), (0, f_i)] = (-ρ(f_i) f^a, 0)
            let col = ci.rho[i].matrix.column(a);
            if col.iter().any(|c| !c.is_zero()) {
                let mut v: Vec<Scalar> = col.iter().map(|c| -c).collect();
                v.resize(2 * n, Scalar::zero());
                brackets.push((a + 1, n + i + 1, Vector(v)));
            }
        }
        for j in i + 1..n {
            let mut v = ci.alpha[i][j].coords().to_vec();
            v.extend(h.bracket_basis(i, j).iter().cloned());
            let v = Vector(v);
            if !v.is_zero() {
                brackets.push((n + i + 1, n + j + 1, v));
            }
        }
    }
    let algebra = LieAlgebra::new(2 * n, brackets)?;
    let omega0 = (0..n).fold(KForm::zero(2 * n, 2), |acc, a| {
        acc.add(&KForm::monomial(2 * n, &[a, n + a], Scalar::one()))
    });
    let mut theta_coeffs = vec![Scalar::zero(); n];
    theta_coeffs.extend(ci.theta_hat.coeffs().iter().cloned());
    let theta = KForm::covector(&theta_coeffs);

    let violation = cotangent_violation(ci);
    let residual = ce_differential(&algebra, &omega0)
        .expect("dims")
        .sub(&theta.wedge(&omega0).expect("dims"));
    Ok(CotangentExtension {
        algebra,
        omega0,
        proper: !ci.theta_hat.is_zero(),
        theta,
        lcs_ok: violation.is_none(),
        direct_ok: residual.is_zero(),
        violation,
    })
}

fn cotangent_violation(ci: &CotangentInput) -> Option<CotangentViolation> {
    let h = &ci.h;
    let n = h.dim();
    let alpha = |i: usize, j: usize, k: usize| ci.alpha[i][j].coords()[k].clone();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let value = alpha(i, j, k) + alpha(j, k, i) + alpha(k, i, j);
                if !value.is_zero() {
                    return Some(CotangentViolation::Cyclic {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                        value: scalar::render(&value),
                    });
                }
            }
        }
    }
    for a in 0..n {
        let phi = KForm::basis1(n, a);
        let d = lichnerowicz_differential(h, &ci.theta_hat, &phi).expect("dims");
        for i in 0..n {
            for j in i + 1..n {
                // ρ(f_i) f^a evaluated on f_j is entry (j, a) of rho[i]
                let lhs = ci.rho[i].matrix[(j, a)].clone() - &ci.rho[j].matrix[(i, a)];
                let rhs = d.coeff(&[i, j]);
                if lhs != rhs {
                    return Some(CotangentViolation::Rho {
                        a: a + 1,
                        i: i + 1,
                        j: j + 1,
                        lhs: scalar::render(&lhs),
                        rhs: scalar::render(&rhs),
                    });
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CotangentPresentation {
    /// Coordinates on `h* ⊕ h` of vectors of `g`.
    pub sigma: LinearMap,
    /// `j_1..j_n, k_1..k_n`: the ideal basis followed by the isotropic complement.
    pub adapted_basis: Vec<Vector>,
    pub input: CotangentInput,
}

/// Splits `g = j ⊕ k` with `k` isotropic and `Ω(j_a, k_b) = δ_ab`, and reads
/// off the cotangent data; `Σ*Ω₀ = Ω` and `Σ*θ₀ = θ` are verified.
pub fn cotangent_presentation(
    s: &LcsStructure,
    j: &Subspace,
) -> Result<CotangentPresentation, ConstructionError> {
    verify_lagrangian_ideal(s, j)?;
    let dim = s.dim();
    let n = dim / 2;
    let js = j.basis().to_vec();
    // pairing[a][e] = Ω(j_a, e_e)
    let std: Vec<Vector> = (0..dim).map(|e| Vector::basis(dim, e)).collect();
    let pairing: Vec<Vec<Scalar>> = std
        .iter()
        .map(|e| js.iter().map(|ja| s.omega.eval2(ja, e)).collect())
        .collect();
    let chosen = independent_extension(&[], &pairing, n);
    if chosen.len() != n {
        return Err(ConstructionError::Internal(
            "ideal is not paired nondegenerately".into(),
        ));
    }
    let p = Matrix::from_columns(
        n,
        &chosen
            .iter()
            .map(|&e| pairing[e].clone())
            .collect::<Vec<_>>(),
    );
    let pinv = p.inverse().expect("independent columns");
    // w_b = Σ_e pinv[e][b] e_{chosen[e]}
    let ws: Vec<Vector> = (0..n)
        .map(|b| {
            let mut w = Vector::zero(dim);
            for (e, &idx) in chosen.iter().enumerate() {
                w.0[idx] += &pinv[(e, b)];
            }
            w
        })
        .collect();
    let half = scalar::ratio(1, 2);
    let ks: Vec<Vector> = (0..n)
        .map(|b| {
            (0..n).fold(ws[b].clone(), |acc, d| {
                let c = s.omega.eval2(&ws[b], &ws[d]) * &half;
                &acc - &js[d].scale(&c)
            })
        })
        .collect();
    let adapted: Vec<Vector> = js.iter().chain(&ks).cloned().collect();
    let m = inclusion(dim, &adapted);
    let sigma = m
        .inverse()
        .ok_or_else(|| ConstructionError::Internal("adapted basis is dependent".into()))?;

    let g = s.algebra.in_basis(&adapted)?;
    let h_brackets: Vec<(usize, usize, Vector)> = (0..n)
        .flat_map(|b| (b + 1..n).map(move |c| (b, c)))
        .filter_map(|(b, c)| {
            let v = Vector(g.bracket_basis(n + b, n + c)[n..].to_vec());
            (!v.is_zero()).then_some((b + 1, c + 1, v))
        })
        .collect();
    let h = LieAlgebra::new(n, h_brackets)?;
    let theta_hat = KForm::covector(&ks.iter().map(|k| s.theta.eval1(k)).collect::<Vec<_>>());
    let rho = (0..n)
        .map(|b| {
            // ρ(f_b) f^a = -[j_a, k_b]
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|a| g.bracket_basis(a, n + b)[..n].iter().map(|x| -x).collect())
                .collect();
            LinearMap::new(Matrix::from_columns(n, &cols))
        })
        .collect();
    let alpha = (0..n)
        .map(|b| {
            (0..n)
                .map(|c| Vector(g.bracket_basis(n + b, n + c)[..n].to_vec()))
                .collect()
        })
        .collect();
    let input = CotangentInput {
        h,
        theta_hat,
        rho,
        alpha,
    };

    let ext = cotangent_extension(&input)?;
    if ext.omega0.pullback(&sigma) != s.omega {
        return Err(ConstructionError::Internal("Sigma* Omega0 != Omega".into()));
    }
    if ext.theta.pullback(&sigma) != s.theta {
        return Err(ConstructionError::Internal("Sigma* theta0 != theta".into()));
    }
    if ext.algebra.nonzero_brackets() != g.nonzero_brackets() {
        return Err(ConstructionError::Internal(
            "rebuilt bracket differs in the adapted basis".into(),
        ));
    }
    Ok(CotangentPresentation {
        sigma: LinearMap::new(sigma),
        adapted_basis: adapted,
        input,
    })
}
