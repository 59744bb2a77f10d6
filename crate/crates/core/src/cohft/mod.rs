//! Coefficient data of Witten's r-spin class shifted to its semisimple
//! point: the polynomials `P_m`, R-matrix entries, the topological part,
//! the quantum product and degree bookkeeping.

mod frobenius;
mod pm;
mod rmatrix;
mod theory;

pub use frobenius::{
    idempotent_check, quantum_structure_constants, Cyclotomic, IdempotentReport,
    StructureConstants,
};
pub use pm::{p1_closed_form, p_polynomial, p_polynomial_symbolic, p_table};
pub use rmatrix::{
    product_residual, r_forward_entry, r_forward_matrix, r_inverse_entry, r_inverse_matrix,
    symplectic_residual, EdgeSeries,
};
pub use theory::{
    nonseparating_gluing_holds, phi_degree, separating_gluing_holds, topological_value,
    unit_axiom_holds, witten_degree, PhiDegree, PhiExponent, RSpinTheory, ScaleFactor,
};

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohftError {
    #[error("r must be at least 3, got {0}")]
    InvalidR(u32),
    #[error("index {index} is outside 0..={} for r = {r}", r - 2)]
    IndexOutOfRange { index: u32, r: u32 },
    #[error("(g, n) = ({g}, {n}) is unstable")]
    Unstable { g: u32, n: usize },
    #[error("edge numerator is not divisible by psi' + psi'' in total degree {degree}")]
    NotDivisible { degree: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
}
