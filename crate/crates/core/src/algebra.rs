//! Finite-dimensional Lie algebras given by rational structure constants.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, Matrix};
use crate::scalar::{self, Scalar};
use crate::upoly::UPoly;

pub const MAX_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported dimension {0} (supported: 1..={MAX_DIM})")]
    UnsupportedDimension(usize),
    #[error("bracket index out of range or not increasing: [e{0}, e{1}]")]
    BadIndex(usize, usize),
    #[error("Jacobi identity fails on (e{i}, e{j}, e{k}): cyclic sum {residual}")]
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
    #[error("not a derivation: D[e{i}, e{j}] - [De{i}, e{j}] - [e{i}, De{j}] = {residual}")]
    NotDerivation {
        i: usize,
        j: usize,
        residual: Vector,
    },
    #[error("the given vectors do not span a subalgebra")]
    NotSubalgebra,
    #[error("the given vectors are linearly dependent")]
    DependentBasis,
}

/// Element of a Lie algebra in the fixed basis `e_1..e_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(#[serde(with = "scalar::serde_scalars")] pub Vec<Scalar>);

impl Vector {
    pub fn zero(n: usize) -> Self {
        Vector(vec![Scalar::zero(); n])
    }

    /// The basis vector `e_{i+1}` (zero-based `i`).
    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| scalar::int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, o: &Vector) -> Vector {
        Vector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Vector> for &Scalar {
    type Output = Vector;
    fn mul(self, v: &Vector) -> Vector {
        v.scale(self)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_combination(
            f,
            self.0
                .iter()
                .enumerate()
                .map(|(i, c)| (c, format!("e{}", i + 1))),
        )
    }
}

/// Writes `c_1*b_1 + c_2*b_2 + ...`, omitting zero terms and unit factors.
pub(crate) fn write_combination<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Scalar, String)>,
) -> fmt::Result {
    use num_traits::Signed;
    let mut first = true;
    for (c, name) in terms {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
        }
        first = false;
        if mag.is_one() {
            write!(f, "{name}")?;
        } else {
            write!(f, "{}*{name}", scalar::render(&mag))?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Endomorphism of an `n`-dimensional space; column `j` is the image of `e_{j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LinearMap {
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        assert_eq!(matrix.rows(), matrix.cols(), "linear maps are square");
        LinearMap { matrix }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(Matrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(Matrix::identity(n))
    }

    pub fn diagonal(entries: &[Scalar]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (i, x) in entries.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        Self::new(m)
    }

    /// From rows given as integers, `rows[i][j]` being entry `(i, j)`.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::new(Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar::int(x)).collect())
                .collect(),
        ))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector(self.matrix.apply(&v.0))
    }

    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap::new(self.matrix.mul(&other.matrix))
    }

    pub fn scaled(&self, c: &Scalar) -> LinearMap {
        LinearMap::new(self.matrix.scaled(c))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Linear subspace stored by its reduced row echelon basis, so equal
/// subspaces have equal records.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vector]) -> Self {
        let rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.0.clone()).collect();
        let basis = linalg::canonical_basis(&rows, ambient)
            .into_iter()
            .map(Vector)
            .collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::span(
            ambient,
            &(0..ambient)
                .map(|i| Vector::basis(ambient, i))
                .collect::<Vec<_>>(),
        )
    }

    /// Span of basis vectors given by zero-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        Self::span(
            ambient,
            &indices
                .iter()
                .map(|&i| Vector::basis(ambient, i))
                .collect::<Vec<_>>(),
        )
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn contains(&self, v: &Vector) -> bool {
        let mut rows: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.0.clone()).collect();
        rows.push(v.0.clone());
        linalg::rank_of(&rows, self.ambient) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let all: Vec<Vector> = self.basis.iter().chain(&other.basis).cloned().collect();
        Subspace::span(self.ambient, &all)
    }

    /// Kernel of a linear functional map given by the rows of `m`.
    pub fn kernel_of(m: &Matrix) -> Subspace {
        let vs: Vec<Vector> = m.kernel().into_iter().map(Vector).collect();
        Subspace::span(m.cols(), &vs)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "0");
        }
        write!(f, "<")?;
        for (i, b) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ">")
    }
}

/// Structural flags of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub center: Subspace,
    pub nilpotent: bool,
    pub solvable: bool,
    pub completely_solvable: bool,
    pub unimodular: bool,
}

impl Serialize for LieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&crate::notation::print_salamon(self))
    }
}

/// Outcome of a Jacobi or Leibniz check on basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Ok,
    /// One-based basis indices of the first failure and the nonzero residual.
    Witness {
        indices: Vec<usize>,
        residual: Vector,
    },
}

impl Check {
    pub fn is_ok(&self) -> bool {
        matches!(self, Check::Ok)
    }
}

/// Lie algebra `[e_i, e_j] = sum_k c_ij^k e_k`, stored densely and
/// antisymmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    constants: Vec<Scalar>,
    name: Option<String>,
}

impl LieAlgebra {
    /// Builds an algebra from brackets `[e_i, e_j]` with one-based `i < j`,
    /// validating the Jacobi identity.
    pub fn new(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, AlgebraError> {
        let g = Self::unchecked(dim, brackets)?;
        match g.validate_jacobi() {
            Check::Ok => Ok(g),
            Check::Witness { indices, residual } => Err(AlgebraError::Jacobi {
                i: indices[0],
                j: indices[1],
                k: indices[2],
                residual,
            }),
        }
    }

    /// Builds the structure constants without checking Jacobi.
    pub fn unchecked(
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 || dim > MAX_DIM {
            return Err(AlgebraError::UnsupportedDimension(dim));
        }
        let mut g = LieAlgebra {
            dim,
            constants: vec![Scalar::zero(); dim * dim * dim],
            name: None,
        };
        for (i, j, v) in brackets {
            if i == 0 || j == 0 || i >= j || j > dim {
                return Err(AlgebraError::BadIndex(i, j));
            }
            if v.dim() != dim {
                return Err(AlgebraError::DimensionMismatch {
                    expected: dim,
                    found: v.dim(),
                });
            }
            for k in 0..dim {
                g.set(i - 1, j - 1, k, v.0[k].clone());
            }
        }
        Ok(g)
    }

    pub fn abelian(dim: usize) -> Self {
        Self::unchecked(dim, []).expect("valid dimension")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        let n = self.dim;
        self.constants[(j * n + i) * n + k] = -c.clone();
        self.constants[(i * n + j) * n + k] = c;
    }

    /// Structure constant `c_ij^k` (zero-based).
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `[e_i, e_j]` (zero-based).
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        let n = self.dim;
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    /// Brackets `[e_i, e_j]`, one-based `i < j`, that are nonzero.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vector)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = Vector(self.bracket_basis(i, j).to_vec());
                if !v.is_zero() {
                    out.push((i + 1, j + 1, v));
                }
            }
        }
        out
    }

    fn check_dim(&self, v: &Vector) -> Result<(), AlgebraError> {
        if v.dim() == self.dim {
            Ok(())
        } else {
            Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            })
        }
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector, AlgebraError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            if x.0[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if i == j || y.0[j].is_zero() {
                    continue;
                }
                let xy = &x.0[i] * &y.0[j];
                for (k, c) in self.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &xy * c;
                    }
                }
            }
        }
        Vector(out)
    }

    pub fn validate_jacobi(&self) -> Check {
        let n = self.dim;
        let e = |i| Vector::basis(n, i);
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let r = &(&self.bracket_unchecked(&self.bracket_unchecked(&x, &y), &z)
                        + &self.bracket_unchecked(&self.bracket_unchecked(&y, &z), &x))
                        + &self.bracket_unchecked(&self.bracket_unchecked(&z, &x), &y);
                    if !r.is_zero() {
                        return Check::Witness {
                            indices: vec![i + 1, j + 1, k + 1],
                            residual: r,
                        };
                    }
                }
            }
        }
        Check::Ok
    }

    /// Matrix of `Y -> [X, Y]`.
    pub fn adjoint_map(&self, x: &Vector) -> Result<LinearMap, AlgebraError> {
        self.check_dim(x)?;
        let n = self.dim;
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.bracket_unchecked(x, &Vector::basis(n, j)).0)
            .collect();
        Ok(LinearMap::new(Matrix::from_columns(n, &cols)))
    }

    pub fn is_derivation(&self, d: &LinearMap) -> Result<Check, AlgebraError> {
        if d.dim() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                found: d.dim(),
            });
        }
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (Vector::basis(n, i), Vector::basis(n, j));
                let lhs = d.apply(&self.bracket_unchecked(&x, &y));
                let rhs = &self.bracket_unchecked(&d.apply(&x), &y)
                    + &self.bracket_unchecked(&x, &d.apply(&y));
                let r = &lhs - &rhs;
                if !r.is_zero() {
                    return Ok(Check::Witness {
                        indices: vec![i + 1, j + 1],
                        residual: r,
                    });
                }
            }
        }
        Ok(Check::Ok)
    }

    /// `h ⋊_D R` with `e_{n+1}` the new generator and `[e_{n+1}, X] = D X`.
    pub fn semidirect_product(&self, d: &LinearMap) -> Result<LieAlgebra, AlgebraError> {
        if let Check::Witness { indices, residual } = self.is_derivation(d)? {
            return Err(AlgebraError::NotDerivation {
                i: indices[0],
                j: indices[1],
                residual,
            });
        }
        let n = self.dim;
        let lift = |v: &[Scalar]| {
            let mut w = v.to_vec();
            w.push(Scalar::zero());
            Vector(w)
        };
        let mut brackets: Vec<(usize, usize, Vector)> = self
            .nonzero_brackets()
            .into_iter()
            .map(|(i, j, v)| (i, j, lift(&v.0)))
            .collect();
        for j in 0..n {
            // [e_j, e_{n+1}] = -D e_j
            let img = d.apply(&Vector::basis(n, j));
            if !img.is_zero() {
                brackets.push((j + 1, n + 1, lift(&(-&img).0)));
            }
        }
        LieAlgebra::new(n + 1, brackets)
    }

    /// Rewrites the algebra in the basis given by the columns of `p`.
    pub fn in_basis(&self, basis: &[Vector]) -> Result<LieAlgebra, AlgebraError> {
        let n = self.dim;
        if basis.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n,
                found: basis.len(),
            });
        }
        let p = Matrix::from_columns(n, &basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
        let inv = p.inverse().ok_or(AlgebraError::DependentBasis)?;
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = Vector(inv.apply(&self.bracket_unchecked(&basis[i], &basis[j]).0));
                if !v.is_zero() {
                    brackets.push((i + 1, j + 1, v));
                }
            }
        }
        LieAlgebra::unchecked(n, brackets)
    }

    /// The subalgebra spanned by `basis`, in that basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<LieAlgebra, AlgebraError> {
        let n = self.dim;
        let m = basis.len();
        let p = Matrix::from_columns(n, &basis.iter().map(|b| b.0.clone()).collect::<Vec<_>>());
        if p.rank() != m {
            return Err(AlgebraError::DependentBasis);
        }
        let mut brackets = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let b = self.bracket_unchecked(&basis[i], &basis[j]);
                let coords = p.solve(&b.0).ok_or(AlgebraError::NotSubalgebra)?;
                let v = Vector(coords);
                if !v.is_zero() {
                    brackets.push((i + 1, j + 1, v));
                }
            }
        }
        LieAlgebra::unchecked(m, brackets)
    }

    /// Span of all brackets `[a, b]` with `a` in `s`, `b` in `t`.
    pub fn bracket_space(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for a in s.basis() {
            for b in t.basis() {
                vs.push(self.bracket_unchecked(a, b));
            }
        }
        Subspace::span(self.dim, &vs)
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let whole = Subspace::whole(self.dim);
        s.contains_subspace(&self.bracket_space(&whole, s))
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim;
        // X is central iff [X, e_j] = 0 for all j; stack the ad columns.
        let mut rows = Vec::new();
        for j in 0..n {
            for k in 0..n {
                rows.push(
                    (0..n)
                        .map(|i| self.constant(i, j, k).clone())
                        .collect::<Vec<_>>(),
                );
            }
        }
        Subspace::kernel_of(&Matrix::from_rows(rows))
    }

    pub fn derived_series_terminates(&self) -> bool {
        let mut s = Subspace::whole(self.dim);
        loop {
            let next = self.bracket_space(&s, &s);
            if next.dim() == 0 {
                return true;
            }
            if next.dim() == s.dim() {
                return false;
            }
            s = next;
        }
    }

    pub fn lower_central_series_terminates(&self) -> bool {
        let whole = Subspace::whole(self.dim);
        let mut s = whole.clone();
        loop {
            let next = self.bracket_space(&whole, &s);
            if next.dim() == 0 {
                return true;
            }
            if next.dim() == s.dim() {
                return false;
            }
            s = next;
        }
    }

    pub fn center_and_flags(&self) -> Flags {
        let n = self.dim;
        let ads: Vec<LinearMap> = (0..n)
            .map(|i| {
                self.adjoint_map(&Vector::basis(n, i))
                    .expect("basis vector")
            })
            .collect();
        let completely_solvable = ads
            .iter()
            .all(|ad| UPoly::new(ad.matrix.characteristic_polynomial()).all_roots_real());
        let unimodular = ads.iter().all(|ad| ad.matrix.trace().is_zero());
        let solvable = self.derived_series_terminates();
        Flags {
            center: self.center(),
            nilpotent: self.lower_central_series_terminates(),
            solvable,
            completely_solvable: solvable && completely_solvable,
            unimodular,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn heis() -> LieAlgebra {
        LieAlgebra::new(3, [(1, 2, Vector::from_ints(&[0, 0, 1]))]).unwrap()
    }

    #[test]
    fn jacobi_witness() {
        let g = LieAlgebra::unchecked(
            3,
            [
                (1, 2, Vector::from_ints(&[0, 0, 1])),
                (1, 3, Vector::from_ints(&[0, 1, 0])),
                (2, 3, Vector::from_ints(&[0, 1, 0])),
            ],
        )
        .unwrap();
        assert_eq!(
            g.validate_jacobi(),
            Check::Witness {
                indices: vec![1, 2, 3],
                residual: Vector::from_ints(&[0, 0, -1])
            }
        );
    }

    #[test]
    fn derivations_of_heisenberg() {
        let h = heis();
        let d = LinearMap::diagonal(&[int(1), int(-1), int(0)]);
        assert!(h.is_derivation(&d).unwrap().is_ok());
        let w = h.is_derivation(&LinearMap::identity(3)).unwrap();
        assert_eq!(
            w,
            Check::Witness {
                indices: vec![1, 2],
                residual: Vector::from_ints(&[0, 0, -1])
            }
        );
        let g = h.semidirect_product(&d).unwrap();
        assert_eq!(g.dim(), 4);
        assert_eq!(
            g.bracket(&Vector::basis(4, 3), &Vector::basis(4, 0))
                .unwrap(),
            Vector::basis(4, 0)
        );
    }

    #[test]
    fn restrict_and_change_basis() {
        let h = heis();
        let sub = h
            .restrict(&[Vector::basis(3, 0), Vector::basis(3, 2)])
            .unwrap();
        assert!(sub.nonzero_brackets().is_empty());
        assert_eq!(
            h.restrict(&[Vector::basis(3, 0), Vector::basis(3, 1)]),
            Err(AlgebraError::NotSubalgebra)
        );
        let swapped = h
            .in_basis(&[
                Vector::basis(3, 1),
                Vector::basis(3, 0),
                Vector::basis(3, 2),
            ])
            .unwrap();
        assert_eq!(
            swapped.bracket_basis(0, 1),
            Vector::from_ints(&[0, 0, -1]).coords()
        );
    }

    #[test]
    fn subspace_canonical() {
        let a = Subspace::span(
            3,
            &[Vector::from_ints(&[1, 1, 0]), Vector::from_ints(&[0, 1, 0])],
        );
        let b = Subspace::span(
            3,
            &[
                Vector::from_ints(&[2, 0, 0]),
                Vector::from_ints(&[3, -1, 0]),
            ],
        );
        assert_eq!(a, b);
        assert!(a.contains(&Vector::from_ints(&[5, 7, 0])));
    }
}
