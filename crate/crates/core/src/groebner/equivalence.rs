//! Polynomial ideals whose real points are the automorphisms carrying one
//! lcs structure to another.

use std::sync::Arc;

use num_traits::Zero;

use super::poly::{MonomialOrder, Polynomial, Ring};
use crate::algebra::LieAlgebra;
use crate::forms::{ce_differential, FormError, KForm};
use crate::scalar::{one, Scalar};

pub const SUPPORTED_DIM: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EquivalenceError {
    #[error("equivalence ideals are implemented in dimension 4 only, got {0}")]
    UnsupportedDimension(usize),
    #[error("expected a {expected}-form, got degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Generators in `Q[a11, ..., a44(, t)]`. The matrix `A` acts on covectors by
/// `A(e^k) = sum_j a_jk e^j`.
#[derive(Clone, Debug)]
pub struct EquivalenceIdeal {
    pub ring: Arc<Ring>,
    pub generators: Vec<Polynomial>,
    pub rabinowitsch: bool,
}

/// Variable index of the matrix entry `a_{row, col}` (zero-based).
pub fn entry_index(row: usize, col: usize) -> usize {
    SUPPORTED_DIM * row + col
}

pub fn matrix_ring(rabinowitsch: bool, order: MonomialOrder) -> Arc<Ring> {
    let n = SUPPORTED_DIM;
    let mut names: Vec<String> = (0..n * n)
        .map(|k| format!("a{}{}", k / n + 1, k % n + 1))
        .collect();
    if rabinowitsch {
        names.push("t".into());
    }
    Ring::new(names, order)
}

fn check_degree(f: &KForm, expected: usize) -> Result<(), EquivalenceError> {
    if f.dim() != SUPPORTED_DIM {
        return Err(EquivalenceError::UnsupportedDimension(f.dim()));
    }
    if f.degree() != expected {
        return Err(EquivalenceError::WrongDegree {
            expected,
            got: f.degree(),
        });
    }
    Ok(())
}

struct MatrixForms {
    ring: Arc<Ring>,
    /// `entry[j][k]` is the coefficient of `e^j` in `A(e^k)`.
    entry: Vec<Vec<Polynomial>>,
    pairs: Vec<(usize, usize)>,
}

impl MatrixForms {
    fn new(ring: &Arc<Ring>) -> Self {
        let n = SUPPORTED_DIM;
        let entry = (0..n)
            .map(|j| {
                (0..n)
                    .map(|k| Polynomial::var(ring, entry_index(j, k)))
                    .collect()
            })
            .collect();
        let pairs = (0..n)
            .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
            .collect();
        MatrixForms {
            ring: ring.clone(),
            entry,
            pairs,
        }
    }

    fn constant(&self, c: &Scalar) -> Polynomial {
        Polynomial::constant(&self.ring, c.clone())
    }

    /// Coordinates of `A(alpha)` for a 1-form `alpha`.
    fn image1(&self, alpha: &KForm) -> Vec<Polynomial> {
        (0..SUPPORTED_DIM)
            .map(|j| {
                alpha
                    .terms()
                    .fold(Polynomial::zero(&self.ring), |acc, (idx, c)| {
                        acc.add(&self.entry[j][idx[0]].scale(c))
                    })
            })
            .collect()
    }

    /// Coefficients of `A^{∧2}(beta)` on `e^{pq}`, `p < q`.
    fn image2(&self, beta: &KForm) -> Vec<Polynomial> {
        self.pairs
            .iter()
            .map(|&(p, q)| {
                beta.terms()
                    .fold(Polynomial::zero(&self.ring), |acc, (idx, c)| {
                        let (i, j) = (idx[0], idx[1]);
                        let minor = self.entry[p][i]
                            .mul(&self.entry[q][j])
                            .sub(&self.entry[q][i].mul(&self.entry[p][j]));
                        acc.add(&minor.scale(c))
                    })
            })
            .collect()
    }

    fn determinant(&self) -> Polynomial {
        permutations(SUPPORTED_DIM).into_iter().fold(
            Polynomial::zero(&self.ring),
            |acc, (perm, sign)| {
                let term = perm
                    .iter()
                    .enumerate()
                    .fold(self.constant(&one()), |t, (row, &col)| {
                        t.mul(&self.entry[row][col])
                    });
                if sign > 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                }
            },
        )
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, s) in permutations(n - 1) {
        // insert n-1 at each position; moving it left past k entries flips sign k times
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let flips = (p.len() - pos) as i32;
            out.push((q, if flips % 2 == 0 { s } else { -s }));
        }
    }
    out
}

/// Generators saying that `A` is a Lie coalgebra morphism with
/// `A^{∧2} src.0 = dst.0` and `A src.1 = dst.1`.
pub fn equivalence_ideal(
    g: &LieAlgebra,
    src: (&KForm, &KForm),
    dst: (&KForm, &KForm),
    rabinowitsch: bool,
) -> Result<EquivalenceIdeal, EquivalenceError> {
    equivalence_ideal_in(g, src, dst, rabinowitsch, MonomialOrder::DegRevLex)
}

pub fn equivalence_ideal_in(
    g: &LieAlgebra,
    src: (&KForm, &KForm),
    dst: (&KForm, &KForm),
    rabinowitsch: bool,
    order: MonomialOrder,
) -> Result<EquivalenceIdeal, EquivalenceError> {
    if g.dim() != SUPPORTED_DIM {
        return Err(EquivalenceError::UnsupportedDimension(g.dim()));
    }
    check_degree(src.0, 2)?;
    check_degree(dst.0, 2)?;
    check_degree(src.1, 1)?;
    check_degree(dst.1, 1)?;
    let ring = matrix_ring(rabinowitsch, order);
    let m = MatrixForms::new(&ring);
    let n = SUPPORTED_DIM;
    let de: Vec<KForm> = (0..n)
        .map(|k| ce_differential(g, &KForm::basis1(n, k)))
        .collect::<Result<_, _>>()?;

    let mut gens: Vec<Polynomial> = Vec::new();
    for (k, dek) in de.iter().enumerate() {
        // d(A e^k) = sum_j a_jk d e^j
        let lhs: Vec<Polynomial> = m
            .pairs
            .iter()
            .map(|&(p, q)| {
                (0..n).fold(Polynomial::zero(&ring), |acc, j| {
                    let c = de[j].coeff(&[p, q]);
                    if c.is_zero() {
                        acc
                    } else {
                        acc.add(&m.entry[j][k].scale(&c))
                    }
                })
            })
            .collect();
        let rhs = m.image2(dek);
        gens.extend(lhs.iter().zip(&rhs).map(|(a, b)| a.sub(b)));
    }
    let omega = m.image2(src.0);
    gens.extend(
        omega
            .iter()
            .zip(&m.pairs)
            .map(|(a, &(p, q))| a.sub(&m.constant(&dst.0.coeff(&[p, q])))),
    );
    let theta = m.image1(src.1);
    gens.extend(
        theta
            .iter()
            .enumerate()
            .map(|(p, a)| a.sub(&m.constant(&dst.1.coeff(&[p])))),
    );
    if rabinowitsch {
        let t = Polynomial::var(&ring, n * n);
        gens.push(m.determinant().mul(&t).sub(&m.constant(&one())));
    }

    let mut seen = std::collections::HashSet::new();
    let generators = gens
        .into_iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic())
        .filter(|p| seen.insert(p.to_string()))
        .collect();
    Ok(EquivalenceIdeal {
        ring: ring.clone(),
        generators,
        rabinowitsch,
    })
}

/// The identity matrix as a point of the (non-Rabinowitsch) ring.
pub fn identity_point() -> Vec<Scalar> {
    let n = SUPPORTED_DIM;
    (0..n * n)
        .map(|k| {
            if k / n == k % n {
                one()
            } else {
                Scalar::zero()
            }
        })
        .collect()
}
