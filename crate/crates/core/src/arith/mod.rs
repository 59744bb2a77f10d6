//! Exact arithmetic: rationals, polynomials in the formal variable `r`,
//! and dense linear algebra over both.

mod matrix;
mod poly;

pub use matrix::{
    determinant, determinant_expansion, rank_and_solve, row_echelon, Matrix, RankNullspace,
    RowEchelon,
};
pub use poly::RPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedDiv, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate abscissa {0} in interpolation samples")]
    DuplicateAbscissa(Rational),
    #[error("need at least {needed} samples for degree bound {degree_bound}, got {got}")]
    NotEnoughSamples {
        degree_bound: usize,
        needed: usize,
        got: usize,
    },
    #[error("samples are inconsistent with degree bound {degree_bound} at r = {at}")]
    InconsistentSamples { degree_bound: usize, at: Rational },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn rat_arith(a: &Rational, b: &Rational, op: BinOp) -> Result<Rational, ArithError> {
    Ok(match op {
        BinOp::Add => a + b,
        BinOp::Sub => a - b,
        BinOp::Mul => a * b,
        BinOp::Div => a.checked_div(b).ok_or(ArithError::DivisionByZero)?,
    })
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Greatest common divisor of the absolute values of `values` (0 if all are zero).
pub fn content<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()))
}

/// Rescales a vector to the unique primitive integer vector on its ray with
/// positive first nonzero entry. The zero vector is returned unchanged.
pub fn primitive_vector(values: &[Rational]) -> Vec<Rational> {
    let Some(first) = values.iter().find(|v| !v.is_zero()) else {
        return values.to_vec();
    };
    let denom = common_denominator(values);
    let scaled: Vec<BigInt> = values
        .iter()
        .map(|v| (v * Rational::from_integer(denom.clone())).to_integer())
        .collect();
    let mut g = content(&scaled);
    if first.is_negative() {
        g = -g;
    }
    scaled
        .into_iter()
        .map(|v| Rational::from_integer(v / &g))
        .collect()
}
