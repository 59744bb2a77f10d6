//! R-matrix coefficients. Matrices are indexed `[b][a]`: row `b` is the
//! output index, column `a` the input, so `(R_m)^b_a` sits at `(b, a)`.
//!
//! Every order-`m` coefficient omits the scalar `[r(r-1)φ^{r/(r-1)}]^{-m}`.
//! All identities below are homogeneous in the total order, so they hold
//! with the scalar dropped.

use num_traits::Zero;

use super::pm::p_table;
use super::{CohftError, RSpinTheory};
use crate::arith::{Matrix, Rational};

fn congruent(theory: &RSpinTheory, m: u32, a: u32, b: u32) -> bool {
    theory.residue(i64::from(b) + i64::from(m) - i64::from(a)) == 0
}

/// `(R^{-1}_m)^b_a = P_m(r, a)` when `b + m ≡ a (mod r-1)`, zero otherwise.
pub fn r_inverse_entry(m: u32, a: u32, b: u32, theory: &RSpinTheory) -> Result<Rational, CohftError> {
    theory.check_index(a)?;
    theory.check_index(b)?;
    if !congruent(theory, m, a, b) {
        return Ok(Rational::zero());
    }
    Ok(p_table(m, theory)[m as usize][a as usize].clone())
}

/// `(R_m)^b_a = (-1)^m P_m(r, r-2-b)` when `b + m ≡ a (mod r-1)`.
pub fn r_forward_entry(m: u32, a: u32, b: u32, theory: &RSpinTheory) -> Result<Rational, CohftError> {
    theory.check_index(a)?;
    theory.check_index(b)?;
    if !congruent(theory, m, a, b) {
        return Ok(Rational::zero());
    }
    let value = p_table(m, theory)[m as usize][(theory.r() - 2 - b) as usize].clone();
    Ok(if m % 2 == 1 { -value } else { value })
}

fn coefficient_matrix(m: u32, theory: &RSpinTheory, row: &[Rational], forward: bool) -> Matrix<Rational> {
    let dim = theory.dim();
    Matrix::from_fn(dim, dim, |b, a| {
        if !congruent(theory, m, a as u32, b as u32) {
            return Rational::zero();
        }
        if forward {
            let v = row[dim - 1 - b].clone();
            if m % 2 == 1 {
                -v
            } else {
                v
            }
        } else {
            row[a].clone()
        }
    })
}

/// `R^{-1}_0, …, R^{-1}_{order}`.
pub fn r_inverse_matrix(order: u32, theory: &RSpinTheory) -> Vec<Matrix<Rational>> {
    let table = p_table(order, theory);
    (0..=order)
        .map(|m| coefficient_matrix(m, theory, &table[m as usize], false))
        .collect()
}

/// `R_0, …, R_{order}`.
pub fn r_forward_matrix(order: u32, theory: &RSpinTheory) -> Vec<Matrix<Rational>> {
    let table = p_table(order, theory);
    (0..=order)
        .map(|m| coefficient_matrix(m, theory, &table[m as usize], true))
        .collect()
}

/// `Σ_{k=0}^{m} R_k R^{-1}_{m-k} - [m = 0] Id` for `m = 0..=order`.
/// Pass `left_inverse` to multiply in the other order.
pub fn product_residual(order: u32, theory: &RSpinTheory, left_inverse: bool) -> Result<Vec<Matrix<Rational>>, CohftError> {
    let fwd = r_forward_matrix(order, theory);
    let inv = r_inverse_matrix(order, theory);
    let dim = theory.dim();
    (0..=order as usize)
        .map(|m| {
            let mut acc = if m == 0 {
                Matrix::identity(dim).scale(&Rational::from_integer((-1).into()))
            } else {
                Matrix::zeros(dim, dim)
            };
            for k in 0..=m {
                let term = if left_inverse {
                    inv[k].mul(&fwd[m - k])?
                } else {
                    fwd[k].mul(&inv[m - k])?
                };
                acc = acc.add(&term)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Coefficients of `η(R(z)x, R(-z)y) - η(x, y)`, i.e.
/// `Σ_{j+k=m} (-1)^k R_j^T η R_k` for `m = 1..=order`.
pub fn symplectic_residual(order: u32, theory: &RSpinTheory) -> Result<Vec<Matrix<Rational>>, CohftError> {
    let fwd = r_forward_matrix(order, theory);
    let eta = theory.eta_matrix();
    let dim = theory.dim();
    (1..=order as usize)
        .map(|m| {
            let mut acc = Matrix::zeros(dim, dim);
            for k in 0..=m {
                let mut term = fwd[m - k].transpose().mul(&eta)?.mul(&fwd[k])?;
                if k % 2 == 1 {
                    term = term.scale(&Rational::from_integer((-1).into()));
                }
                acc = acc.add(&term)?;
            }
            Ok(acc)
        })
        .collect()
}

/// Truncated edge factor
///
/// ```text
/// (η^{-1} - R^{-1}(ψ') η^{-1} R^{-1}(ψ'')^T) / (ψ' + ψ'')  =  Σ c_{j,k} ψ'^j ψ''^k
/// ```
///
/// with `c_{j,k}` stored for `j + k ≤ order`. The matrix `c_{j,k}` is
/// indexed by the two node insertions `(i', i'')` and omits the scalar of
/// R-order `j + k + 1`. Exact divisibility is checked at every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSeries {
    order: usize,
    coeffs: Vec<Vec<Matrix<Rational>>>,
}

impl EdgeSeries {
    pub fn new(theory: &RSpinTheory, order: usize) -> Result<Self, CohftError> {
        let inv = r_inverse_matrix(order as u32 + 1, theory);
        let eta = theory.eta_matrix();
        let minus_one = Rational::from_integer((-1).into());
        let numerator = |j: usize, k: usize| -> Result<Matrix<Rational>, CohftError> {
            Ok(inv[j].mul(&eta)?.mul(&inv[k].transpose())?.scale(&minus_one))
        };
        let mut coeffs = Vec::with_capacity(order + 1);
        for t in 0..=order {
            // coefficients c_{t-i, i}, i = 0..=t
            let mut row: Vec<Matrix<Rational>> = Vec::with_capacity(t + 1);
            row.push(numerator(t + 1, 0)?);
            for i in 1..=t {
                let c = numerator(t + 1 - i, i)?.add(&row[i - 1].scale(&minus_one))?;
                row.push(c);
            }
            if numerator(0, t + 1)? != row[t] {
                return Err(CohftError::NotDivisible { degree: t + 1 });
            }
            coeffs.push(row);
        }
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `c_{j,k}`, or `None` past the truncation order.
    pub fn coeff(&self, j: usize, k: usize) -> Option<&Matrix<Rational>> {
        self.coeffs.get(j + k).map(|row| &row[k])
    }
}
