//! Quantum product at the shift point and its idempotent basis.

use num_traits::{One, Zero};

use super::theory::topological_value;
use super::RSpinTheory;
use crate::arith::{int, RPoly, Rational};

/// `c^i_{ab}` in the rescaled basis `ẽ_0, …, ẽ_{r-2}`, so that
/// `ẽ_a • ẽ_b = Σ_i c^i_{ab} ẽ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    r: u32,
    dim: usize,
    table: Vec<Rational>,
}

/// Raises the last index of `ω_{0,3}` with the metric:
/// `c^i_{ab} = Σ_p η^{ip} ω_{0,3}(a, b, p)`.
pub fn quantum_structure_constants(theory: &RSpinTheory) -> StructureConstants {
    let dim = theory.dim();
    let mut table = vec![Rational::zero(); dim * dim * dim];
    for i in 0..dim {
        for a in 0..dim {
            for b in 0..dim {
                let value: Rational = (0..dim as u32)
                    .map(|p| {
                        let (omega, _) = topological_value(0, &[a as u32, b as u32, p], theory)
                            .expect("genus-0 three-point values are stable and in range");
                        theory.eta_inverse(i as u32, p) * omega
                    })
                    .sum();
                table[(i * dim + a) * dim + b] = value;
            }
        }
    }
    StructureConstants {
        r: theory.r(),
        dim,
        table,
    }
}

impl StructureConstants {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, a: usize, b: usize) -> &Rational {
        &self.table[(i * self.dim + a) * self.dim + b]
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| (0..d).all(|a| (0..d).all(|b| self.get(i, a, b) == self.get(i, b, a))))
    }

    /// `ẽ_0 • ẽ_b = ẽ_b`.
    pub fn is_unital(&self) -> bool {
        let d = self.dim;
        (0..d).all(|i| {
            (0..d).all(|b| {
                let expected = if i == b { Rational::one() } else { Rational::zero() };
                *self.get(i, 0, b) == expected
            })
        })
    }

    /// `(ẽ_a • ẽ_b) • ẽ_c = ẽ_a • (ẽ_b • ẽ_c)` on all basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim;
        for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    for i in 0..d {
                        let left: Rational = (0..d).map(|m| self.get(m, a, b) * self.get(i, m, c)).sum();
                        let right: Rational = (0..d).map(|m| self.get(m, b, c) * self.get(i, a, m)).sum();
                        if left != right {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Product of two vectors whose coordinates live in a cyclotomic field.
    pub fn product_in(&self, field: &Cyclotomic, x: &[RPoly], y: &[RPoly]) -> Vec<RPoly> {
        let d = self.dim;
        let mut out = vec![RPoly::zero(); d];
        for (a, xa) in x.iter().enumerate().take(d) {
            for (b, yb) in y.iter().enumerate().take(d) {
                let xy = field.mul(xa, yb);
                if xy.is_zero() {
                    continue;
                }
                for (i, slot) in out.iter_mut().enumerate() {
                    let c = self.get(i, a, b);
                    if !c.is_zero() {
                        *slot = &*slot + &xy.scale(c);
                    }
                }
            }
        }
        out
    }
}

/// `ℚ(ξ) = ℚ[x]/Φ_N(x)` with `ξ` the class of `x`, a primitive `N`-th root
/// of unity. Elements are `RPoly` of degree below `φ(N)`; the variable is
/// reused only as a container.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u32,
    modulus: RPoly,
}

impl Cyclotomic {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1, "root of unity order must be positive");
        Self {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &RPoly {
        &self.modulus
    }

    pub fn reduce(&self, p: &RPoly) -> RPoly {
        monic_div_rem(p, &self.modulus).1
    }

    pub fn mul(&self, p: &RPoly, q: &RPoly) -> RPoly {
        self.reduce(&(p * q))
    }

    /// `ξ^k` for any integer `k`.
    pub fn xi_pow(&self, k: i64) -> RPoly {
        let e = k.rem_euclid(i64::from(self.order)) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = Rational::one();
        self.reduce(&RPoly::from_coeffs(coeffs))
    }
}

fn monic_div_rem(p: &RPoly, m: &RPoly) -> (RPoly, RPoly) {
    let dm = m.degree().expect("modulus is nonzero");
    let mut rem = p.coeffs().to_vec();
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dm)];
    while rem.len() > dm {
        let top = rem.len() - 1;
        let lead = rem[top].clone();
        if !lead.is_zero() {
            let shift = top - dm;
            for (k, c) in m.coeffs().iter().enumerate() {
                rem[shift + k] -= &lead * c;
            }
            quot[shift] = lead;
        }
        rem.pop();
    }
    (RPoly::from_coeffs(quot), RPoly::from_coeffs(rem))
}

/// `Φ_N`, from `x^N - 1 = Π_{d | N} Φ_d`.
pub(crate) fn cyclotomic_polynomial(n: u32) -> RPoly {
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    coeffs[0] = -Rational::one();
    coeffs[n as usize] = Rational::one();
    let mut p = RPoly::from_coeffs(coeffs);
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, rem) = monic_div_rem(&p, &cyclotomic_polynomial(d));
        debug_assert!(rem.is_zero());
        p = q;
    }
    p
}

/// Outcome of checking `ē_i • ē_j = (r-1) δ_{ij} ē_j` for the discrete
/// Fourier basis `ē_i = Σ_a ξ^{ai} ẽ_a`, `ξ` a primitive `(r-1)`-th root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdempotentReport {
    pub r: u32,
    /// Pairs `(i, j)` where the product identity fails.
    pub product_failures: Vec<(usize, usize)>,
    /// Exponents `x ≢ 0` where `Σ_k ξ^{kx}` does not vanish.
    pub geometric_sum_failures: Vec<usize>,
}

impl IdempotentReport {
    pub fn passed(&self) -> bool {
        self.product_failures.is_empty() && self.geometric_sum_failures.is_empty()
    }
}

pub fn idempotent_check(theory: &RSpinTheory) -> IdempotentReport {
    let n = theory.dim();
    let field = Cyclotomic::new(n as u32);
    let c = quantum_structure_constants(theory);
    let ebar: Vec<Vec<RPoly>> = (0..n)
        .map(|i| (0..n).map(|a| field.xi_pow((a * i) as i64)).collect())
        .collect();
    let scale = int(n as i64);
    let mut product_failures = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = c.product_in(&field, &ebar[i], &ebar[j]);
            let rhs: Vec<RPoly> = if i == j {
                ebar[j].iter().map(|v| v.scale(&scale)).collect()
            } else {
                vec![RPoly::zero(); n]
            };
            if lhs != rhs {
                product_failures.push((i, j));
            }
        }
    }
    let geometric_sum_failures = (1..n)
        .filter(|&x| {
            let total = (0..n).fold(RPoly::zero(), |acc, k| &acc + &field.xi_pow((k * x) as i64));
            !field.reduce(&total).is_zero()
        })
        .collect();
    IdempotentReport {
        r: theory.r(),
        product_failures,
        geometric_sum_failures,
    }
}
