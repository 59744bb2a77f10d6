use std::fmt;

use num_traits::{One, Zero};

use super::CohftError;
use crate::arith::{int, rat, RPoly, Rational};

/// The r-spin state space `V_r` with basis `e_0, …, e_{r-2}`, unit `e_0`
/// and anti-diagonal metric `η_{ab} = [a + b = r - 2]`.
///
/// All coefficient data of the theory shifted to the semisimple point
/// `(0, rφ, 0, …, 0)` is computed from `r` alone. The Euler field there is
/// `(r-1) φ^{r/(r-1)} ẽ_1`; nothing below consumes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RSpinTheory {
    r: u32,
}

impl RSpinTheory {
    pub fn new(r: u32) -> Result<Self, CohftError> {
        if r < 3 {
            return Err(CohftError::InvalidR(r));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `r - 1`, the dimension of the state space.
    pub fn dim(&self) -> usize {
        self.r as usize - 1
    }

    /// Mathematical residue modulo `r - 1`, always in `0..=r-2`.
    pub fn residue(&self, x: i64) -> u32 {
        x.rem_euclid(i64::from(self.r) - 1) as u32
    }

    pub fn check_index(&self, a: u32) -> Result<(), CohftError> {
        if a > self.r - 2 {
            return Err(CohftError::IndexOutOfRange {
                index: a,
                r: self.r,
            });
        }
        Ok(())
    }

    pub fn eta(&self, a: u32, b: u32) -> Rational {
        if a + b == self.r - 2 {
            Rational::one()
        } else {
            Rational::zero()
        }
    }

    /// The metric is its own inverse.
    pub fn eta_inverse(&self, a: u32, b: u32) -> Rational {
        self.eta(a, b)
    }

    pub fn eta_matrix(&self) -> crate::arith::Matrix<Rational> {
        crate::arith::Matrix::from_fn(self.dim(), self.dim(), |a, b| {
            self.eta(a as u32, b as u32)
        })
    }
}

/// Exponent of the bookkeeping variable φ, stored as `numerator / (r - 1)`
/// with the numerator a polynomial in `r`. Never reduced: two exponents are
/// equal exactly when their numerators are.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PhiExponent {
    pub numerator: RPoly,
}

impl PhiExponent {
    pub fn new(numerator: RPoly) -> Self {
        Self { numerator }
    }

    pub fn denominator() -> RPoly {
        RPoly::linear(1)
    }

    /// Exponent carried by a decorated graph: `(g_v - 1)(r - 2)` per vertex,
    /// `r - 2` per edge, the primary insertions, and `-r` per unit of total
    /// R-matrix order.
    pub fn for_graph(vertex_genera: &[u32], edges: usize, insertions: &[u32], r_order: u32) -> Self {
        let r_minus_2 = RPoly::linear(2);
        let vertex_part = vertex_genera
            .iter()
            .fold(RPoly::zero(), |acc, &g| &acc + &r_minus_2.scale(&(int(i64::from(g)) - int(1))));
        let edge_part = r_minus_2.scale(&int(edges as i64));
        let primaries = RPoly::constant(int(insertions.iter().map(|&a| i64::from(a)).sum()));
        let order_part = RPoly::var().scale(&int(-i64::from(r_order)));
        Self::new(&(&(&vertex_part + &edge_part) + &primaries) + &order_part)
    }

    pub fn eval(&self, r: u32) -> Rational {
        self.numerator.eval(&int(i64::from(r))) / int(i64::from(r) - 1)
    }
}

impl fmt::Display for PhiExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/(r - 1)", self.numerator)
    }
}

/// The global factor `sign · r^{r_power} · [r(r-1) φ^{r/(r-1)}]^{-power_m}`
/// that is left out of assembled relations. Relations are projective, so
/// this is bookkeeping only.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScaleFactor {
    pub power_m: u32,
    pub sign: i8,
    pub r_power: u32,
}

impl ScaleFactor {
    pub fn unit() -> Self {
        Self {
            power_m: 0,
            sign: 1,
            r_power: 0,
        }
    }
}

/// Value of the topological part `ω_{g,n}(ẽ_{a_1}, …, ẽ_{a_n})`:
/// `(r-1)^g` when `g - 1 - Σ a_i ≡ 0 (mod r-1)` and zero otherwise, times
/// `φ^{(g-1)(r-2)/(r-1)}`.
pub fn topological_value(
    g: u32,
    insertions: &[u32],
    theory: &RSpinTheory,
) -> Result<(Rational, PhiExponent), CohftError> {
    let n = insertions.len();
    if 2 * g as usize + n <= 2 {
        return Err(CohftError::Unstable { g, n });
    }
    for &a in insertions {
        theory.check_index(a)?;
    }
    let phi = PhiExponent::new(RPoly::linear(2).scale(&(int(i64::from(g)) - int(1))));
    let total: i64 = insertions.iter().map(|&a| i64::from(a)).sum();
    let value = if theory.residue(i64::from(g) - 1 - total) == 0 {
        int(i64::from(theory.r()) - 1).pow(g as i32)
    } else {
        Rational::zero()
    };
    Ok((value, phi))
}

/// Complex degree `((r-2)(g-1) + Σ a_i) / r` of Witten's class.
pub fn witten_degree(g: u32, insertions: &[u32], r: u32) -> Rational {
    let total: i64 = insertions.iter().map(|&a| i64::from(a)).sum();
    rat((i64::from(r) - 2) * (i64::from(g) - 1) + total, i64::from(r))
}

/// φ-degree bookkeeping for relations in complex codimension `codim`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiDegree {
    /// `d (r-1) = Σ a_i + (g-1)(r-2) - r·codim`.
    pub d_times_rminus1: i64,
    /// The φ-degree is negative, so the codimension exceeds Witten's degree
    /// and the part vanishes.
    pub relation_exists: bool,
    /// `d` itself is an integer.
    pub integral: bool,
}

pub fn phi_degree(g: u32, codim: u32, insertions: &[u32], r: u32) -> PhiDegree {
    let total: i64 = insertions.iter().map(|&a| i64::from(a)).sum();
    let value = total + (i64::from(g) - 1) * (i64::from(r) - 2) - i64::from(r) * i64::from(codim);
    PhiDegree {
        d_times_rminus1: value,
        relation_exists: value < 0,
        integral: value.rem_euclid(i64::from(r) - 1) == 0,
    }
}

/// Unit axiom on the topological part: inserting `e_0` is the pullback
/// under forgetting a point, and `ω_{0,3}(x, y, e_0) = η(x, y)`.
pub fn unit_axiom_holds(g: u32, insertions: &[u32], theory: &RSpinTheory) -> Result<bool, CohftError> {
    let mut extended = insertions.to_vec();
    extended.push(0);
    let with_unit = topological_value(g, &extended, theory)?;
    if 2 * g as usize + insertions.len() > 2 {
        return Ok(with_unit == topological_value(g, insertions, theory)?);
    }
    if g == 0 && insertions.len() == 2 {
        return Ok(with_unit.0 == theory.eta(insertions[0], insertions[1]));
    }
    Ok(true)
}

/// Compares `ω_{g1+g2}(A ∪ B)` with the contraction
/// `Σ η^{jk} ω_{g1}(A, e_j) ω_{g2}(B, e_k)`, including φ-exponents
/// (`η^{jk}` carries `φ^{(r-2)/(r-1)}` in the rescaled basis).
pub fn separating_gluing_holds(
    g1: u32,
    left: &[u32],
    g2: u32,
    right: &[u32],
    theory: &RSpinTheory,
) -> Result<bool, CohftError> {
    let glued: Vec<u32> = left.iter().chain(right).copied().collect();
    let (expected, expected_phi) = topological_value(g1 + g2, &glued, theory)?;
    let mut total = Rational::zero();
    let mut phi = None;
    for j in 0..theory.dim() as u32 {
        for k in 0..theory.dim() as u32 {
            let eta = theory.eta_inverse(j, k);
            let (v1, p1) = topological_value(g1, &[left, &[j]].concat(), theory)?;
            let (v2, p2) = topological_value(g2, &[right, &[k]].concat(), theory)?;
            total += eta * v1 * v2;
            phi = Some(&(&p1.numerator + &p2.numerator) + &RPoly::linear(2));
        }
    }
    Ok(total == expected && phi.as_ref() == Some(&expected_phi.numerator))
}

/// Compares `ω_g(A)` with `Σ η^{jk} ω_{g-1}(A, e_j, e_k)`.
pub fn nonseparating_gluing_holds(g: u32, insertions: &[u32], theory: &RSpinTheory) -> Result<bool, CohftError> {
    if g == 0 {
        return Ok(true);
    }
    let (expected, expected_phi) = topological_value(g, insertions, theory)?;
    let mut total = Rational::zero();
    let mut phi = None;
    for j in 0..theory.dim() as u32 {
        for k in 0..theory.dim() as u32 {
            let (v, p) = topological_value(g - 1, &[insertions, &[j, k]].concat(), theory)?;
            total += theory.eta_inverse(j, k) * v;
            phi = Some(&p.numerator + &RPoly::linear(2));
        }
    }
    Ok(total == expected && phi.as_ref() == Some(&expected_phi.numerator))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theory(r: u32) -> RSpinTheory {
        RSpinTheory::new(r).unwrap()
    }

    #[test]
    fn rejects_small_r() {
        assert_eq!(RSpinTheory::new(2), Err(CohftError::InvalidR(2)));
    }

    #[test]
    fn metric_is_an_involution() {
        for r in 3..8 {
            let t = theory(r);
            let eta = t.eta_matrix();
            assert_eq!(eta.mul(&eta).unwrap(), crate::arith::Matrix::identity(t.dim()));
        }
    }

    #[test]
    fn topological_examples() {
        for r in 3..7 {
            let t = theory(r);
            for a in 0..=r - 2 {
                for b in 0..=r - 2 - a {
                    let c = r - 2 - a - b;
                    assert_eq!(topological_value(0, &[a, b, c], &t).unwrap().0, int(1));
                }
            }
        }
        let t = theory(3);
        assert_eq!(topological_value(1, &[0, 0], &t).unwrap().0, int(2));
        assert_eq!(topological_value(1, &[1, 0], &t).unwrap().0, int(0));
        assert!(matches!(
            topological_value(0, &[0, 0], &t),
            Err(CohftError::Unstable { g: 0, n: 2 })
        ));
        assert!(topological_value(1, &[2], &t).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(witten_degree(2, &[], 3), rat(1, 3));
        assert_eq!(witten_degree(4, &[], 3), int(1));
        assert_eq!(witten_degree(1, &[1, 0], 3), rat(1, 3));

        let d = phi_degree(1, 1, &[1, 0], 3);
        assert_eq!((d.d_times_rminus1, d.relation_exists, d.integral), (-2, true, true));
        let d = phi_degree(2, 1, &[], 3);
        assert_eq!((d.d_times_rminus1, d.relation_exists, d.integral), (-2, true, true));
        let d = phi_degree(4, 1, &[], 3);
        assert_eq!((d.d_times_rminus1, d.relation_exists), (0, false));
        let d = phi_degree(3, 1, &[], 3);
        assert_eq!((d.d_times_rminus1, d.relation_exists, d.integral), (-1, true, false));
    }

    #[test]
    fn negative_degree_matches_codimension_exceeding_witten_degree() {
        for r in 3..7 {
            for g in 0..5 {
                for total in 0..8 {
                    let d = phi_degree(g, 1, &[total], r);
                    let w = witten_degree(g, &[total], r);
                    assert_eq!(d.relation_exists, w < int(1));
                }
            }
        }
    }

    #[test]
    fn cohft_axioms_on_small_cases() {
        for r in 3..7 {
            let t = theory(r);
            let idx: Vec<u32> = (0..=r - 2).collect();
            for &a in &idx {
                for &b in &idx {
                    assert!(unit_axiom_holds(0, &[a, b], &t).unwrap());
                    assert!(unit_axiom_holds(1, &[a, b], &t).unwrap());
                    assert!(separating_gluing_holds(1, &[a], 1, &[b], &t).unwrap());
                    assert!(separating_gluing_holds(0, &[a, b], 2, &[], &t).unwrap());
                    assert!(nonseparating_gluing_holds(1, &[a, b], &t).unwrap());
                    assert!(nonseparating_gluing_holds(2, &[a], &t).unwrap());
                    for &c in &idx {
                        assert!(separating_gluing_holds(0, &[a, b], 0, &[c, a], &t).unwrap());
                        let v = topological_value(1, &[a, b, c], &t).unwrap();
                        assert_eq!(v, topological_value(1, &[c, a, b], &t).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn phi_exponent_of_a_graph() {
        // one genus-1 vertex, no edges, insertions (1, 0), one unit of R-order:
        // 0 + 1 - r
        let p = PhiExponent::for_graph(&[1], 0, &[1, 0], 1);
        assert_eq!(p.numerator, RPoly::from_ints(&[1, -1]));
        assert_eq!(p.eval(3), int(-1));
    }
}
