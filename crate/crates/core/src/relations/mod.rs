//! Assembly of codimension-one relations from the shifted r-spin theory,
//! their per-power-of-r components, the genus-2 pullback and comparison
//! with the classical Arbarello–Cornalba relations.

mod assemble;
mod derived;
mod system;

pub use assemble::{admissible_a_vectors, assemble_direct, assemble_relation, symbolic_samples};
pub use derived::{ac_relations, extract_r_coefficients, ppz_relation_set, pullback_genus2};
pub use system::{system_matrix, system_matrix_det, system_matrix_det_with, DetReport};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{primitive_vector, rank_and_solve, row_echelon, ArithError, Matrix, RPoly, Rational};
use crate::cohft::{CohftError, PhiExponent, ScaleFactor};
use crate::strata::{DivisorClass, StableGraph, StrataError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error(
        "no relation at this degree: Witten's class on M_{{{g},{n}}} at r = {r} has degree D = {witten_degree}, \
         so d(r-1) = {d_times_rminus1} is not negative"
    )]
    DegreeGate {
        g: u32,
        n: usize,
        r: u32,
        witten_degree: Rational,
        d_times_rminus1: i64,
    },
    #[error("genus {0} is not supported")]
    UnsupportedGenus(u32),
    #[error("expected {expected} insertions, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("symbolic r needs genus 1 with insertions summing to 1 (got g = {g}, sum {sum})")]
    SymbolicUnsupported { g: u32, sum: u32 },
    #[error("phi-exponent of the {class} term is {found}, expected {expected}")]
    PhiIncoherent {
        class: String,
        expected: String,
        found: String,
    },
    #[error("operation needs a symbolic relation")]
    NotSymbolic,
    #[error("operation needs a relation with numeric coefficients")]
    NotNumeric,
    #[error("relation sets use different generator bases")]
    BasisMismatch,
    #[error("pullback needs a relation on M_2 in kappa_1, delta_irr, delta_1; found {0}")]
    WrongSourceBasis(String),
    #[error(transparent)]
    Cohft(#[from] CohftError),
    #[error(transparent)]
    Strata(#[from] StrataError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// How `r` enters: a fixed integer, or a formal variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RMode {
    Numeric(u32),
    Symbolic,
}

impl fmt::Display for RMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RMode::Numeric(r) => write!(f, "{r}"),
            RMode::Symbolic => write!(f, "symbolic"),
        }
    }
}

/// Where a relation came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Assembled,
    /// Coefficient of `r^power` in a symbolic relation.
    Extracted { power: usize },
    /// Pulled back from `M̄_2`.
    Pullback,
    /// Hard-coded classical relation.
    Reference,
    /// A row of a reduced basis.
    Reduced,
}

/// One decorated graph's share of a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contribution {
    pub graph: StableGraph,
    pub class: DivisorClass,
    pub automorphism_order: u64,
    pub value: RPoly,
    pub phi_exponent: PhiExponent,
}

/// `Σ c_D · D = 0` on `M̄_{g,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub g: u32,
    pub n: usize,
    pub a: Vec<u32>,
    pub mode: RMode,
    pub source: Source,
    /// Nonzero coefficients only.
    pub coefficients: BTreeMap<DivisorClass, RPoly>,
    pub phi_exponent: PhiExponent,
    pub scale: ScaleFactor,
    /// Whether `d` is an integer; when it is not, every term vanishes.
    pub phi_integral: bool,
    pub contributions: Vec<Contribution>,
}

impl Relation {
    pub fn from_coefficients(
        g: u32,
        n: usize,
        a: Vec<u32>,
        mode: RMode,
        source: Source,
        coefficients: impl IntoIterator<Item = (DivisorClass, RPoly)>,
    ) -> Self {
        let mut map = BTreeMap::new();
        for (class, c) in coefficients {
            let entry = map.entry(class).or_insert_with(RPoly::zero);
            *entry = &*entry + &c;
        }
        map.retain(|_, c: &mut RPoly| !c.is_zero());
        Self {
            g,
            n,
            a,
            mode,
            source,
            coefficients: map,
            phi_exponent: PhiExponent::new(RPoly::zero()),
            scale: ScaleFactor::unit(),
            phi_integral: true,
            contributions: Vec::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, class: &DivisorClass) -> RPoly {
        self.coefficients.get(class).cloned().unwrap_or_else(RPoly::zero)
    }

    pub fn is_numeric(&self) -> bool {
        self.coefficients.values().all(|c| c.degree().unwrap_or(0) == 0)
    }

    /// Coefficient vector over `basis`. Fails for non-constant coefficients
    /// or classes outside the basis.
    pub fn vector(&self, basis: &[DivisorClass]) -> Result<Vec<Rational>, RelationError> {
        if self.coefficients.keys().any(|c| !basis.contains(c)) {
            return Err(RelationError::BasisMismatch);
        }
        basis
            .iter()
            .map(|c| self.coefficient(c).as_constant().ok_or(RelationError::NotNumeric))
            .collect()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        let mut out = self.clone();
        out.coefficients = self
            .coefficients
            .iter()
            .map(|(k, v)| (k.clone(), v.scale(factor)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    /// Scales by a positive rational so that every coefficient of every
    /// coefficient polynomial is an integer with joint content 1.
    pub fn content_normalized(&self) -> Self {
        let all: Vec<Rational> = self
            .coefficients
            .values()
            .flat_map(|p| p.coeffs().iter().cloned())
            .collect();
        if all.is_empty() {
            return self.clone();
        }
        let prim = primitive_vector(&all);
        let idx = all.iter().position(|v| !v.is_zero()).expect("nonzero relation");
        let factor = (&prim[idx] / &all[idx]).abs();
        self.scaled(&factor)
    }

    /// Integer coefficients over `basis`, primitive with first nonzero entry
    /// positive.
    pub fn primitive_integers(&self, basis: &[DivisorClass]) -> Result<Vec<BigInt>, RelationError> {
        Ok(primitive_vector(&self.vector(basis)?)
            .into_iter()
            .map(|v| v.to_integer())
            .collect())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, first: bool, coeff: &RPoly, class: &DivisorClass) -> fmt::Result {
    match coeff.as_constant() {
        Some(c) => {
            let neg = c.is_negative();
            let abs = c.abs();
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
        }
        None => {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({coeff})*")?;
        }
    }
    write!(f, "{class}")
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0 = 0");
        }
        for (i, (class, c)) in self.coefficients.iter().enumerate() {
            write_term(f, i == 0, c, class)?;
        }
        write!(f, " = 0")
    }
}

/// Relations on one `M̄_{g,n}` over a shared ordered generator basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub g: u32,
    pub n: usize,
    pub generators: Vec<DivisorClass>,
    pub relations: Vec<Relation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanReport {
    pub rank_left: usize,
    pub rank_right: usize,
    pub rank_union: usize,
    pub equal: bool,
}

impl RelationSet {
    pub fn new(g: u32, n: usize) -> Result<Self, RelationError> {
        Ok(Self {
            g,
            n,
            generators: crate::strata::divisor_generators(g, n)?,
            relations: Vec::new(),
        })
    }

    pub fn push(&mut self, relation: Relation) -> Result<(), RelationError> {
        relation.vector(&self.generators)?;
        self.relations.push(relation);
        Ok(())
    }

    pub fn matrix(&self) -> Result<Matrix<Rational>, RelationError> {
        let rows = self
            .relations
            .iter()
            .map(|r| r.vector(&self.generators))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(rows, self.generators.len())?)
    }

    pub fn rank(&self) -> Result<usize, RelationError> {
        Ok(rank_and_solve(&self.matrix()?).rank)
    }

    /// Reduced row echelon basis of the span, each row made primitive.
    pub fn reduced_basis(&self) -> Result<RelationSet, RelationError> {
        let echelon = row_echelon(&self.matrix()?);
        let relations = echelon
            .basis_rows()
            .into_iter()
            .map(|row| {
                let prim = primitive_vector(&row);
                Relation::from_coefficients(
                    self.g,
                    self.n,
                    Vec::new(),
                    self.relations.first().map_or(RMode::Symbolic, |r| r.mode),
                    Source::Reduced,
                    self.generators
                        .iter()
                        .cloned()
                        .zip(prim.into_iter().map(RPoly::constant)),
                )
            })
            .collect();
        Ok(RelationSet {
            g: self.g,
            n: self.n,
            generators: self.generators.clone(),
            relations,
        })
    }
}

/// Whether two relation sets span the same subspace over ℚ.
pub fn spans_equal(left: &RelationSet, right: &RelationSet) -> Result<SpanReport, RelationError> {
    if left.generators != right.generators {
        return Err(RelationError::BasisMismatch);
    }
    let rank_left = left.rank()?;
    let rank_right = right.rank()?;
    let mut union = left.clone();
    union.relations.extend(right.relations.iter().cloned());
    let rank_union = union.rank()?;
    Ok(SpanReport {
        rank_left,
        rank_right,
        rank_union,
        equal: rank_left == rank_union && rank_right == rank_union,
    })
}
