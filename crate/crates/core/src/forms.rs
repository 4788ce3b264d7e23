//! Exterior forms on the dual of a Lie algebra and the Chevalley-Eilenberg
//! and Lichnerowicz differentials.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{write_combination, LieAlgebra, Vector, MAX_DIM};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("interior product of a degree-0 form")]
    DegreeZero,
    #[error("the Lee form is not closed")]
    ThetaNotClosed,
    #[error("the target form is not closed for the twisted differential")]
    TargetNotClosed,
}

/// Index tables for `k`-subsets of `{0..n-1}` as bitmasks in lexicographic order.
struct Tables {
    by_degree: Vec<Vec<u16>>,
    position: Vec<usize>,
}

fn tables(n: usize) -> &'static Tables {
    static ALL: OnceLock<Vec<Tables>> = OnceLock::new();
    &ALL.get_or_init(|| {
        (0..=MAX_DIM)
            .map(|n| {
                let mut by_degree = vec![Vec::new(); n + 1];
                let mut position = vec![0; 1 << n];
                for k in 0..=n {
                    let mut subsets = Vec::new();
                    combinations(n, k, 0, 0, &mut subsets);
                    for (p, &m) in subsets.iter().enumerate() {
                        position[m as usize] = p;
                    }
                    by_degree[k] = subsets;
                }
                Tables {
                    by_degree,
                    position,
                }
            })
            .collect()
    })[n]
}

fn combinations(n: usize, k: usize, start: usize, acc: u16, out: &mut Vec<u16>) {
    if k == 0 {
        out.push(acc);
        return;
    }
    for i in start..n {
        if n - i >= k {
            combinations(n, k - 1, i + 1, acc | (1 << i), out);
        }
    }
}

/// Sign of `e^A ∧ e^B` relative to `e^{A∪B}`, zero if they overlap.
fn wedge_sign(a: u16, b: u16) -> i32 {
    if a & b != 0 {
        return 0;
    }
    let mut swaps = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Form of degree `k` on an `n`-dimensional space, one coefficient per
/// increasing index tuple in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: Vec<Scalar>,
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim, "form shape out of range");
        KForm {
            dim,
            degree,
            coeffs: vec![Scalar::zero(); binomial(dim, degree)],
        }
    }

    pub fn constant(dim: usize, c: Scalar) -> Self {
        KForm {
            dim,
            degree: 0,
            coeffs: vec![c],
        }
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<Scalar>) -> Self {
        assert_eq!(
            coeffs.len(),
            binomial(dim, degree),
            "coefficient count mismatch"
        );
        KForm {
            dim,
            degree,
            coeffs,
        }
    }

    /// `c * e^{i_1 ... i_k}` for zero-based, distinct indices in any order.
    pub fn monomial(dim: usize, indices: &[usize], c: Scalar) -> Self {
        let mut f = Self::zero(dim, indices.len());
        let mut mask = 0u16;
        let mut sign = 1;
        for &i in indices {
            assert!(i < dim, "index out of range");
            let s = wedge_sign(mask, 1 << i);
            if s == 0 {
                return f;
            }
            sign *= s;
            mask |= 1 << i;
        }
        let c = if sign < 0 { -c } else { c };
        f.coeffs[tables(dim).position[mask as usize]] = c;
        f
    }

    /// Basis 1-form `e^{i+1}`.
    pub fn basis1(dim: usize, i: usize) -> Self {
        Self::monomial(dim, &[i], Scalar::one())
    }

    /// The 1-form with the given coordinates.
    pub fn covector(coords: &[Scalar]) -> Self {
        KForm {
            dim: coords.len(),
            degree: 1,
            coeffs: coords.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `e^{indices}` for zero-based increasing indices.
    pub fn coeff(&self, indices: &[usize]) -> Scalar {
        let mask = indices.iter().fold(0u16, |m, &i| m | (1 << i));
        self.coeffs[tables(self.dim).position[mask as usize]].clone()
    }

    /// Nonzero terms as (zero-based index tuple, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> + '_ {
        tables(self.dim).by_degree[self.degree]
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&m, c)| ((0..self.dim).filter(|i| m & (1 << i) != 0).collect(), c))
    }

    fn masks(&self) -> &'static [u16] {
        &tables(self.dim).by_degree[self.degree]
    }

    fn check_same_dim(&self, other: &KForm) -> Result<(), FormError> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(FormError::DimensionMismatch(self.dim, other.dim))
        }
    }

    pub fn add(&self, other: &KForm) -> KForm {
        assert_eq!(
            (self.dim, self.degree),
            (other.dim, other.degree),
            "adding forms of different shape"
        );
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &KForm) -> KForm {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn neg(&self) -> KForm {
        self.scale(&-Scalar::one())
    }

    pub fn scale(&self, c: &Scalar) -> KForm {
        KForm {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Exterior product; degrees above the dimension give the zero top form.
    pub fn wedge(&self, other: &KForm) -> Result<KForm, FormError> {
        self.check_same_dim(other)?;
        let degree = (self.degree + other.degree).min(self.dim);
        let mut out = KForm::zero(self.dim, degree);
        if self.degree + other.degree > self.dim {
            return Ok(out);
        }
        let pos = &tables(self.dim).position;
        for (&a, ca) in self.masks().iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (&b, cb) in other.masks().iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                match wedge_sign(a, b) {
                    0 => {}
                    1 => out.coeffs[pos[(a | b) as usize]] += ca * cb,
                    _ => out.coeffs[pos[(a | b) as usize]] -= ca * cb,
                }
            }
        }
        Ok(out)
    }

    /// `k`-fold exterior power `self ∧ ... ∧ self`.
    pub fn power(&self, k: usize) -> KForm {
        let mut acc = KForm::constant(self.dim, Scalar::one());
        for _ in 0..k {
            acc = acc.wedge(self).expect("same dimension");
        }
        acc
    }

    /// Interior product `ι_X self`.
    pub fn interior(&self, x: &Vector) -> Result<KForm, FormError> {
        if self.degree == 0 {
            return Err(FormError::DegreeZero);
        }
        if x.dim() != self.dim {
            return Err(FormError::DimensionMismatch(self.dim, x.dim()));
        }
        let mut out = KForm::zero(self.dim, self.degree - 1);
        let pos = &tables(self.dim).position;
        for (&m, c) in self.masks().iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mut rest = m;
            let mut p = 0;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let xi = &x.0[i];
                if !xi.is_zero() {
                    let v = c * xi;
                    let target = pos[(m & !(1 << i)) as usize];
                    if p % 2 == 0 {
                        out.coeffs[target] += v;
                    } else {
                        out.coeffs[target] -= v;
                    }
                }
                p += 1;
            }
        }
        Ok(out)
    }

    /// Evaluation of a 1-form on a vector.
    pub fn eval1(&self, x: &Vector) -> Scalar {
        assert_eq!(self.degree, 1, "eval1 needs a 1-form");
        self.coeffs
            .iter()
            .zip(&x.0)
            .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Evaluation of a 2-form on a pair of vectors.
    pub fn eval2(&self, x: &Vector, y: &Vector) -> Scalar {
        assert_eq!(self.degree, 2, "eval2 needs a 2-form");
        self.interior(x).expect("degree 2").eval1(y)
    }

    /// Top-degree coefficient of `self^{n/2}` for a 2-form on an even space,
    /// i.e. `(n/2)!` times the Pfaffian.
    pub fn top_power_coefficient(&self) -> Scalar {
        let top = self.power(self.dim / 2);
        if top.degree == self.dim {
            top.coeffs[0].clone()
        } else {
            Scalar::zero()
        }
    }

    /// Pullback `A^* self`, where column `j` of `a` is the image of `e_{j+1}`;
    /// so `(A^*α)(X_1, ...) = α(A X_1, ...)`.
    pub fn pullback(&self, a: &Matrix) -> KForm {
        let dim_src = a.cols();
        assert_eq!(a.rows(), self.dim, "pullback shape mismatch");
        if self.degree == 0 {
            return KForm::constant(dim_src, self.coeffs[0].clone());
        }
        let mut out = KForm::zero(dim_src, self.degree.min(dim_src));
        if self.degree > dim_src {
            return out;
        }
        // A^* e^i = sum_j a_ij e^j.
        let images: Vec<KForm> = (0..self.dim).map(|i| KForm::covector(a.row(i))).collect();
        for (idx, c) in self.terms() {
            let mut t = KForm::constant(dim_src, c.clone());
            for i in idx {
                t = t.wedge(&images[i]).expect("same dimension");
            }
            out = out.add(&t);
        }
        out
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "{}", scalar::render(&self.coeffs[0]));
        }
        let names: Vec<String> = self
            .masks()
            .iter()
            .map(|&m| {
                let digits: String = (0..self.dim)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| char::from(b'1' + i as u8))
                    .collect();
                format!("e{digits}")
            })
            .collect();
        write_combination(f, self.coeffs.iter().zip(names))
    }
}

impl Serialize for KForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Chevalley-Eilenberg differential, `d e^k (e_i, e_j) = -e^k([e_i, e_j])`.
pub fn ce_differential(g: &LieAlgebra, a: &KForm) -> Result<KForm, FormError> {
    if g.dim() != a.dim {
        return Err(FormError::DimensionMismatch(g.dim(), a.dim));
    }
    let n = g.dim();
    if a.degree == n {
        return Ok(KForm::zero(n, n));
    }
    let de: Vec<KForm> = (0..n).map(|k| differential_of_basis(g, k)).collect();
    let mut out = KForm::zero(n, a.degree + 1);
    for (idx, c) in a.terms() {
        // d(e^{i1} ∧ ... ∧ e^{ik}) = sum_p (-1)^p e^{i1..} ∧ de^{ip} ∧ ...
        for p in 0..idx.len() {
            let mut t = KForm::constant(n, if p % 2 == 0 { c.clone() } else { -c.clone() });
            for (q, &i) in idx.iter().enumerate() {
                let factor = if q == p {
                    de[i].clone()
                } else {
                    KForm::basis1(n, i)
                };
                t = t.wedge(&factor)?;
            }
            out = out.add(&t);
        }
    }
    Ok(out)
}

fn differential_of_basis(g: &LieAlgebra, k: usize) -> KForm {
    let n = g.dim();
    let mut f = KForm::zero(n, 2);
    for i in 0..n {
        for j in i + 1..n {
            let c = g.constant(i, j, k);
            if !c.is_zero() {
                f.coeffs[tables(n).position[((1u16 << i) | (1u16 << j)) as usize]] = -c.clone();
            }
        }
    }
    f
}

/// Lie derivative by the Cartan formula `L_X = d ι_X + ι_X d`.
pub fn lie_derivative(g: &LieAlgebra, x: &Vector, a: &KForm) -> Result<KForm, FormError> {
    if a.degree == 0 {
        return Ok(KForm::zero(a.dim, 0));
    }
    let head = ce_differential(g, &a.interior(x)?)?;
    if a.degree == a.dim {
        return Ok(head);
    }
    Ok(head.add(&ce_differential(g, a)?.interior(x)?))
}

fn check_closed(g: &LieAlgebra, theta: &KForm) -> Result<(), FormError> {
    if theta.degree != 1 {
        return Err(FormError::WrongDegree {
            expected: 1,
            found: theta.degree,
        });
    }
    if !ce_differential(g, theta)?.is_zero() {
        return Err(FormError::ThetaNotClosed);
    }
    Ok(())
}

/// `d_θ a = d a - θ ∧ a`.
pub fn lichnerowicz_differential(
    g: &LieAlgebra,
    theta: &KForm,
    a: &KForm,
) -> Result<KForm, FormError> {
    check_closed(g, theta)?;
    Ok(twisted(g, theta, a))
}

fn twisted(g: &LieAlgebra, theta: &KForm, a: &KForm) -> KForm {
    let d = ce_differential(g, a).expect("dimensions checked");
    if a.degree == a.dim {
        return d;
    }
    d.sub(&theta.wedge(a).expect("dimensions checked"))
}

/// Matrices of `d_θ` on every degree, with rank data.
pub struct TwistedComplex {
    dim: usize,
    /// `maps[k]` has `C(n,k+1)` rows and `C(n,k)` columns.
    maps: Vec<Matrix>,
    ranks: Vec<usize>,
}

impl TwistedComplex {
    pub fn new(g: &LieAlgebra, theta: &KForm) -> Result<Self, FormError> {
        check_closed(g, theta)?;
        let n = g.dim();
        let mut maps = Vec::new();
        for k in 0..n {
            let cols: Vec<Vec<Scalar>> = (0..binomial(n, k))
                .map(|p| {
                    let mut e = KForm::zero(n, k);
                    e.coeffs[p] = Scalar::one();
                    twisted(g, theta, &e).coeffs
                })
                .collect();
            maps.push(Matrix::from_columns(binomial(n, k + 1), &cols));
        }
        let ranks = maps.iter().map(Matrix::rank).collect();
        Ok(TwistedComplex {
            dim: n,
            maps,
            ranks,
        })
    }

    fn rank(&self, k: usize) -> usize {
        if k < self.dim {
            self.ranks[k]
        } else {
            0
        }
    }

    pub fn betti(&self, k: usize) -> usize {
        let below = if k == 0 { 0 } else { self.rank(k - 1) };
        binomial(self.dim, k) - self.rank(k) - below
    }

    pub fn is_cocycle(&self, a: &KForm) -> bool {
        a.degree == self.dim
            || self.maps[a.degree]
                .apply(&a.coeffs)
                .iter()
                .all(Zero::is_zero)
    }

    /// Some `b` with `d_θ b = a`, or `None`.
    pub fn primitive(&self, a: &KForm) -> Option<KForm> {
        if a.degree == 0 {
            return a.is_zero().then(|| KForm::zero(self.dim, 0));
        }
        let x = self.maps[a.degree - 1].solve(&a.coeffs)?;
        Some(KForm::from_coeffs(self.dim, a.degree - 1, x))
    }

    pub fn is_coboundary(&self, a: &KForm) -> bool {
        self.primitive(a).is_some()
    }

    fn boundaries(&self, k: usize) -> Vec<Vec<Scalar>> {
        if k == 0 {
            return Vec::new();
        }
        let m = &self.maps[k - 1];
        (0..m.cols()).map(|j| m.column(j)).collect()
    }

    /// Basis of the `d_θ`-closed `k`-forms, as coefficient vectors.
    pub fn cocycle_basis(&self, k: usize) -> Vec<Vec<Scalar>> {
        if k == self.dim {
            return vec![vec![Scalar::one()]];
        }
        self.maps[k].kernel()
    }

    /// Dimension of the span of the classes of the given cocycles.
    pub fn class_rank(&self, forms: &[KForm]) -> usize {
        let Some(k) = forms.first().map(|f| f.degree) else {
            return 0;
        };
        let b = self.boundaries(k);
        let base = crate::linalg::canonical_basis(&b, binomial(self.dim, k)).len();
        let mut all = b;
        all.extend(forms.iter().map(|f| f.coeffs.clone()));
        crate::linalg::rank_of(&all, binomial(self.dim, k)) - base
    }

    pub fn cohomology(&self) -> CohomologyResult {
        let n = self.dim;
        let mut dims = Vec::new();
        let mut representatives = Vec::new();
        for k in 0..=n {
            let b = self.boundaries(k);
            let z = self.cocycle_basis(k);
            let picked = crate::linalg::independent_extension(&b, &z, binomial(n, k));
            let reps: Vec<KForm> = picked
                .iter()
                .map(|&i| KForm::from_coeffs(n, k, z[i].clone()))
                .collect();
            debug_assert_eq!(reps.len(), self.betti(k));
            dims.push(reps.len());
            representatives.push(reps);
        }
        CohomologyResult {
            dims,
            representatives,
        }
    }
}

/// Cohomology dimensions with cocycle representatives of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<KForm>>,
}

impl CohomologyResult {
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

pub fn twisted_cohomology(g: &LieAlgebra, theta: &KForm) -> Result<CohomologyResult, FormError> {
    Ok(TwistedComplex::new(g, theta)?.cohomology())
}

/// A primitive `η` with `d_θ η = target`, or `None` when the class is nonzero.
pub fn solve_primitive(
    g: &LieAlgebra,
    theta: &KForm,
    target: &KForm,
) -> Result<Option<KForm>, FormError> {
    if target.dim != g.dim() {
        return Err(FormError::DimensionMismatch(g.dim(), target.dim));
    }
    let complex = TwistedComplex::new(g, theta)?;
    if !complex.is_cocycle(target) {
        return Err(FormError::TargetNotClosed);
    }
    Ok(complex.primitive(target))
}
