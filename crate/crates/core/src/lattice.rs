//! Floating-point checks for lattices in almost abelian and Heisenberg-type
//! solvable groups. This is the only module that leaves exact arithmetic.

use std::f64::consts::PI;

use num_traits::Zero;
use serde::Serialize;

use crate::scalar::{self, Scalar};
use crate::upoly::UPoly;

/// Bound on eigenvalue residuals of the diagonal witness.
pub const EIGENVALUE_TOLERANCE: f64 = 1e-10;
/// Bound on `|1 + e^t0 + e^-t0 - n|`.
pub const TRACE_TOLERANCE: f64 = 1e-10;
/// Bound on both equations of the Inoue system.
pub const SYSTEM_TOLERANCE: f64 = 1e-9;
/// Width to which isolated roots are bisected.
pub const BISECTION_WIDTH: f64 = 1e-12;
/// Distance from an integer below which a rotation entry counts as integral.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("n = {0}: need n >= 3, the discriminant (n-1)^2 - 4 is negative")]
    TraceTooSmall(i64),
    #[error("n = {0} is too large for an exact integer witness")]
    Overflow(i64),
    #[error("malformed case: {0}")]
    Malformed(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
}

impl Residual {
    fn new(name: impl Into<String>, value: f64, tolerance: f64) -> Self {
        Residual {
            name: name.into(),
            value,
            tolerance,
        }
    }

    pub fn ok(&self) -> bool {
        self.value.abs() < self.tolerance
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeResult {
    pub t0: f64,
    pub witness: [[i64; 3]; 3],
    pub determinant: i64,
    /// Coefficients of `det(A - x I)`, degree 0 first.
    pub characteristic_polynomial: [i64; 4],
    pub residuals: Vec<Residual>,
    /// `t0 = 0`: the one-parameter group is trivial at the lattice time.
    pub degenerate: bool,
}

impl LatticeResult {
    pub fn residuals_ok(&self) -> bool {
        self.residuals.iter().all(Residual::ok)
    }
}

fn det3(a: &[[i64; 3]; 3]) -> i64 {
    a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
}

/// `det(A - x I)` for an integer 3x3 matrix.
pub fn characteristic_polynomial(a: &[[i64; 3]; 3]) -> [i64; 4] {
    let tr = a[0][0] + a[1][1] + a[2][2];
    let minors = (a[0][0] * a[1][1] - a[0][1] * a[1][0])
        + (a[0][0] * a[2][2] - a[0][2] * a[2][0])
        + (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
    [det3(a), -minors, tr, -1]
}

fn eval(p: &[i64; 4], x: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, &c| acc * x + c as f64)
}

/// Newton-step distance from `x` to the nearest root of `p`, scaled so that a
/// multiple root reads as the raw value.
fn root_residual(p: &[i64; 4], x: f64) -> f64 {
    let dp = [p[1], 2 * p[2], 3 * p[3], 0];
    eval(p, x).abs() / eval(&dp, x).abs().max(1.0)
}

/// Lattice time for the unimodular diagonal action `diag(e^t, e^-t, 1)`
/// conjugate to the integer matrix with trace `n`.
pub fn diagonal_lattice(n: i64) -> Result<LatticeResult, LatticeError> {
    if n < 3 {
        return Err(LatticeError::TraceTooSmall(n));
    }
    if n > 1 << 20 {
        return Err(LatticeError::Overflow(n));
    }
    let m = (n - 1) as f64;
    let t0 = ((m + (((n - 1) * (n - 1) - 4) as f64).sqrt()) / 2.0).ln();
    let witness = [[0, 1, 0], [-1, n - 1, 0], [0, 0, 1]];
    let chi = characteristic_polynomial(&witness);
    let mut residuals: Vec<Residual> = [
        ("eigenvalue e^t0", t0.exp()),
        ("eigenvalue e^-t0", (-t0).exp()),
        ("eigenvalue 1", 1.0),
    ]
    .into_iter()
    .map(|(name, x)| Residual::new(name, root_residual(&chi, x), EIGENVALUE_TOLERANCE))
    .collect();
    residuals.push(Residual::new(
        "trace",
        1.0 + t0.exp() + (-t0).exp() - n as f64,
        TRACE_TOLERANCE,
    ));
    Ok(LatticeResult {
        t0,
        witness,
        determinant: det3(&witness),
        characteristic_polynomial: chi,
        residuals,
        degenerate: n == 3,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum SpecialCase {
    /// `e^t + 2s e^{-t/2} = p`, `2 e^{t/2} + s e^{-t} = q` with `s = (-1)^m`
    /// and `m t > 0`.
    Inoue { m: i64, p: i64, q: i64 },
    /// Rotation of the Heisenberg plane with period `sigma`.
    HeisenbergRotation { sigma: f64 },
}

/// The two cubics in `x = e^{t/2}` (both equations cleared of denominators).
#[derive(Clone, Debug, PartialEq)]
pub struct InoueSystem {
    pub m: i64,
    pub p: i64,
    pub q: i64,
}

/// A root of the difference of the two cubics, isolated in `(lo, hi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub sturm_count: usize,
    pub x0: Option<f64>,
    /// Left-hand sides minus right-hand sides of the system at `x0`.
    pub residuals: Vec<Residual>,
}

impl InoueSystem {
    pub fn new(m: i64, p: i64, q: i64) -> Self {
        InoueSystem { m, p, q }
    }

    fn sign(&self) -> i64 {
        if self.m % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `x^3 - p x + 2s`, from the first equation times `x`.
    pub fn first_cubic(&self) -> UPoly {
        UPoly::from_ints(&[2 * self.sign(), -self.p, 0, 1])
    }

    /// `2x^3 - q x^2 + s`, from the second equation times `x^2`.
    pub fn second_cubic(&self) -> UPoly {
        UPoly::from_ints(&[self.sign(), 0, -self.q, 2])
    }

    /// Common factor of the two cubics; a solution needs a root of it.
    pub fn common_factor(&self) -> UPoly {
        self.first_cubic().gcd(&self.second_cubic())
    }

    pub fn difference(&self) -> UPoly {
        let (a, b) = (self.first_cubic(), self.second_cubic());
        let n = a.coeffs().len().max(b.coeffs().len());
        let at = |p: &UPoly, i: usize| p.coeffs().get(i).cloned().unwrap_or_else(scalar::zero);
        UPoly::new((0..n).map(|i| at(&a, i) - at(&b, i)).collect())
    }

    pub fn residuals_at(&self, t0: f64) -> Vec<Residual> {
        let s = self.sign() as f64;
        vec![
            Residual::new(
                "first equation",
                t0.exp() + 2.0 * s * (-t0 / 2.0).exp() - self.p as f64,
                SYSTEM_TOLERANCE,
            ),
            Residual::new(
                "second equation",
                2.0 * (t0 / 2.0).exp() + s * (-t0).exp() - self.q as f64,
                SYSTEM_TOLERANCE,
            ),
        ]
    }

    /// Interval of `x` allowed by `m t > 0`, or `None` when `m = 0`.
    fn admissible_x(&self) -> Option<(Scalar, Scalar)> {
        match self.m.signum() {
            -1 => Some((scalar::zero(), scalar::one())),
            1 => {
                // Cauchy bound of both cubics
                let bound = 2 + self.p.abs().max(self.q.abs()).max(2);
                Some((scalar::one(), scalar::int(bound)))
            }
            _ => None,
        }
    }

    /// Roots of `difference` in `(lo, hi]`. Agreement of the two curves is
    /// necessary but not sufficient; `residuals` show whether the system holds.
    pub fn crossing(&self, lo: &Scalar, hi: &Scalar) -> Crossing {
        let d = self.difference();
        let iv = d.isolate_real_roots(lo, hi);
        let x0 = match iv.as_slice() {
            [(a, b)] => Some(scalar::to_f64(&d.refine_root(a, b, &bisection_width()))),
            _ => None,
        };
        let residuals = x0.map_or_else(Vec::new, |x| self.residuals_at(2.0 * x.ln()));
        Crossing {
            sturm_count: iv.len(),
            x0,
            residuals,
        }
    }

    /// Solutions with `m t > 0`, one per isolated root of the common factor.
    pub fn solve(&self) -> Vec<LatticeResult> {
        let Some((lo, hi)) = self.admissible_x() else {
            return Vec::new();
        };
        // x = 1 is t = 0, never admissible; drop it exactly before bisecting
        let mut g = self.common_factor().squarefree();
        let linear = UPoly::from_ints(&[-1, 1]);
        if g.eval(&scalar::one()).is_zero() {
            g = g.div_rem(&linear).0;
        }
        if g.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let witness = [[0, 0, 1], [1, 0, -self.q], [0, 1, self.p]];
        let chi = characteristic_polynomial(&witness);
        g.isolate_real_roots(&lo, &hi)
            .into_iter()
            .filter_map(|(a, b)| {
                let x = scalar::to_f64(&g.refine_root(&a, &b, &bisection_width()));
                let t0 = 2.0 * x.ln();
                if (self.m as f64) * t0 <= 0.0 {
                    return None;
                }
                let r = LatticeResult {
                    t0,
                    witness,
                    determinant: det3(&witness),
                    characteristic_polynomial: chi,
                    residuals: self.residuals_at(t0),
                    degenerate: false,
                };
                r.residuals_ok().then_some(r)
            })
            .collect()
    }
}

fn bisection_width() -> Scalar {
    Scalar::from_float(BISECTION_WIDTH).expect("finite")
}

/// Integer plane block `B` with its lift `(x, y, z) -> (B(x, y), z + Q(x, y))`
/// to the Heisenberg group `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeisenbergLift {
    pub block: [[i64; 2]; 2],
    /// Numerators of `Q = (q_xx x^2 + 2 q_xy x y + q_yy y^2) / 2`.
    pub quadratic: [i64; 3],
}

impl HeisenbergLift {
    /// Lift of a determinant-one block; `None` otherwise.
    pub fn of_block(block: [[i64; 2]; 2]) -> Option<Self> {
        let [[a, b], [c, d]] = block;
        (a * d - b * c == 1).then_some(HeisenbergLift {
            block,
            quadratic: [a * c, b * c, b * d],
        })
    }

    /// Image of an integer point, or `None` if it leaves the integer lattice.
    pub fn apply(&self, (x, y, z): (i64, i64, i64)) -> Option<(i64, i64, i64)> {
        let [[a, b], [c, d]] = self.block;
        let [qxx, qxy, qyy] = self.quadratic;
        let twice = qxx * x * x + 2 * qxy * x * y + qyy * y * y;
        (twice % 2 == 0).then_some((a * x + b * y, c * x + d * y, z + twice / 2))
    }

    /// The lift maps the integer lattice onto itself: `Q` is integral on
    /// integer points and the inverse block is integral.
    pub fn preserves_integer_lattice(&self) -> bool {
        let [qxx, _, qyy] = self.quadratic;
        qxx % 2 == 0 && qyy % 2 == 0
    }
}

/// Rotation angle `t0 / sigma` at `t0 = pi sigma / 2`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RotationLattice {
    pub t0: f64,
    pub block: [[i64; 2]; 2],
    pub lift: HeisenbergLift,
    pub residuals: Vec<Residual>,
    pub preserved: bool,
}

pub fn heisenberg_rotation(sigma: f64) -> Result<RotationLattice, LatticeError> {
    if !sigma.is_finite() || sigma == 0.0 {
        return Err(LatticeError::Malformed(format!(
            "sigma must be finite and nonzero, got {sigma}"
        )));
    }
    let t0 = PI * sigma / 2.0;
    let angle = t0 / sigma;
    let real = [[angle.cos(), angle.sin()], [-angle.sin(), angle.cos()]];
    let block = real.map(|row| row.map(|v| v.round() as i64));
    let mut residuals = Vec::new();
    for (i, row) in real.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            residuals.push(Residual::new(
                format!("rotation[{i}][{j}]"),
                v - block[i][j] as f64,
                INTEGRALITY_TOLERANCE,
            ));
        }
    }
    let lift = HeisenbergLift::of_block(block)
        .ok_or_else(|| LatticeError::Malformed("rotation block is not unimodular".into()))?;
    let preserved = residuals.iter().all(Residual::ok) && lift.preserves_integer_lattice();
    Ok(RotationLattice {
        t0,
        block,
        lift,
        residuals,
        preserved,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum SpecialLattice {
    Inoue(LatticeResult),
    Rotation(RotationLattice),
}

/// `None` when the Inoue system has no solution with `m t > 0`.
pub fn special_lattices(case: SpecialCase) -> Result<Option<SpecialLattice>, LatticeError> {
    match case {
        SpecialCase::Inoue { m, p, q } => Ok(InoueSystem::new(m, p, q)
            .solve()
            .into_iter()
            .next()
            .map(SpecialLattice::Inoue)),
        SpecialCase::HeisenbergRotation { sigma } => {
            heisenberg_rotation(sigma).map(|r| Some(SpecialLattice::Rotation(r)))
        }
    }
}
