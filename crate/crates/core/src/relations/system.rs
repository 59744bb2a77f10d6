use num_traits::{One, Zero};

use super::{RMode, RelationError};
use crate::arith::{determinant_expansion, int, rat, Matrix, RPoly};
use crate::cohft::{p_polynomial, p_polynomial_symbolic, RSpinTheory};

/// The `(n+1)×(n+1)` matrix of ψ/κ₁ coefficients of the genus-one
/// relations: row `i ≤ n` has `(r-1)P₁(r,1)` on the diagonal,
/// `(r-1)P₁(r,0)` elsewhere among the ψ columns and `-(r-1)P₁(r,0)` in the
/// κ₁ column; the last row is `(1, …, 1, -1)`.
pub fn system_matrix(n: usize, p0: &RPoly, p1: &RPoly) -> Matrix<RPoly> {
    let r1 = RPoly::linear(1);
    let diag = &r1 * p1;
    let off = &r1 * p0;
    Matrix::from_fn(n + 1, n + 1, |i, j| match (i == n, j == n) {
        (true, true) => -RPoly::one(),
        (true, false) => RPoly::one(),
        (false, true) => -off.clone(),
        (false, false) if i == j => diag.clone(),
        (false, false) => off.clone(),
    })
}

/// Determinant of the system matrix against two closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetReport {
    pub n: usize,
    pub mode: RMode,
    pub determinant: RPoly,
    /// `-(1-r)^n (2-r)^2 / 4`.
    pub closed_form: RPoly,
    /// `(-1)^n (r-1)^n (P₁(r,0) - P₁(r,1))^{n-1} (P₁(r,1) - P₁(r,0))` with
    /// `P₁` from its closed form.
    pub factored_form: RPoly,
}

impl DetReport {
    pub fn residual(&self) -> RPoly {
        &self.determinant - &self.closed_form
    }

    pub fn matches_closed_form(&self) -> bool {
        self.residual().is_zero()
    }

    pub fn matches_factored_form(&self) -> bool {
        self.determinant == self.factored_form
    }
}

fn to_r(poly: RPoly, mode: RMode) -> RPoly {
    match mode {
        RMode::Numeric(r) => RPoly::constant(poly.eval(&int(i64::from(r)))),
        RMode::Symbolic => poly,
    }
}

/// `P₁(r, a)` from `a(r-1-a)/2 - (2r-1)(r-2)/24`, written out in `r`.
fn p1_closed_poly(a: i64) -> RPoly {
    &RPoly::linear(1 + a).scale(&rat(a, 2)) - &(&RPoly::from_ints(&[-1, 2]) * &RPoly::linear(2)).scale(&rat(1, 24))
}

pub fn system_matrix_det(n: usize, mode: RMode) -> Result<DetReport, RelationError> {
    let (p0, p1) = match mode {
        RMode::Numeric(r) => {
            let t = RSpinTheory::new(r)?;
            (
                RPoly::constant(p_polynomial(1, 0, &t)?),
                RPoly::constant(p_polynomial(1, 1, &t)?),
            )
        }
        RMode::Symbolic => (p_polynomial_symbolic(1, 0)?, p_polynomial_symbolic(1, 1)?),
    };
    system_matrix_det_with(n, mode, &p0, &p1)
}

/// As [`system_matrix_det`] with caller-supplied `P₁(r,0)` and `P₁(r,1)`
/// (constants in numeric mode).
pub fn system_matrix_det_with(n: usize, mode: RMode, p0: &RPoly, p1: &RPoly) -> Result<DetReport, RelationError> {
    let matrix = system_matrix(n, p0, p1);
    let matrix = match mode {
        RMode::Numeric(r) => matrix.map(|e| to_r(e.clone(), RMode::Numeric(r))),
        RMode::Symbolic => matrix,
    };
    let determinant = determinant_expansion(&matrix)?;

    let one_minus_r = RPoly::from_ints(&[1, -1]);
    let two_minus_r = RPoly::from_ints(&[2, -1]);
    let closed = (&one_minus_r.pow(n as u32) * &two_minus_r.pow(2)).scale(&rat(-1, 4));

    let (c0, c1) = (p1_closed_poly(0), p1_closed_poly(1));
    let sign = if n.is_multiple_of(2) { int(1) } else { int(-1) };
    let factored = &(&RPoly::linear(1).pow(n as u32) * &(&c0 - &c1).pow(n as u32 - 1)) * &(&c1 - &c0);
    let factored = factored.scale(&sign);

    Ok(DetReport {
        n,
        mode,
        determinant,
        closed_form: to_r(closed, mode),
        factored_form: to_r(factored, mode),
    })
}
