//! The polynomials `P_m(r, a)` that populate the R-matrix of the shifted
//! r-spin theory.

use num_traits::{One, Zero};

use super::{CohftError, RSpinTheory};
use crate::arith::{int, rat, RPoly, Rational};

/// Rows `P_0(r, ·), …, P_{m_max}(r, ·)`, each indexed by `a = 0..=r-2`.
///
/// The recursion is
///
/// ```text
/// P_m(r,a) = 1/2 Σ_{b=1}^{a} (2mr - r - 2b) P_{m-1}(r,b-1)
///          - 1/(4mr(r-1)) Σ_{b=1}^{r-2} (r-1-b)(2mr-b)(2mr-r-2b) P_{m-1}(r,b-1)
/// ```
///
/// with `P_0 = 1`. The second sum does not depend on `a`, so every row costs
/// `O(r)` after a prefix sum.
pub fn p_table(m_max: u32, theory: &RSpinTheory) -> Vec<Vec<Rational>> {
    let r = i64::from(theory.r());
    let dim = theory.dim();
    let mut rows = vec![vec![Rational::one(); dim]];
    for m in 1..=i64::from(m_max) {
        let prev = rows.last().expect("row 0 is always present");
        let tail: Rational = (1..=r - 2)
            .map(|b| {
                int((r - 1 - b) * (2 * m * r - b) * (2 * m * r - r - 2 * b))
                    * &prev[(b - 1) as usize]
            })
            .sum::<Rational>()
            / int(4 * m * r * (r - 1));
        let mut row = Vec::with_capacity(dim);
        let mut head = Rational::zero();
        for a in 0..dim as i64 {
            if a >= 1 {
                head += int(2 * m * r - r - 2 * a) * &prev[(a - 1) as usize];
            }
            row.push(&head * rat(1, 2) - &tail);
        }
        rows.push(row);
    }
    rows
}

pub fn p_polynomial(m: u32, a: u32, theory: &RSpinTheory) -> Result<Rational, CohftError> {
    theory.check_index(a)?;
    let table = p_table(m, theory);
    Ok(table[m as usize][a as usize].clone())
}

/// `a(r-1-a)/2 - (2r-1)(r-2)/24`.
pub fn p1_closed_form(a: u32, r: u32) -> Rational {
    let (a, r) = (i64::from(a), i64::from(r));
    rat(a * (r - 1 - a), 2) - rat((2 * r - 1) * (r - 2), 24)
}

/// `P_m(r, a)` for fixed `a` as a polynomial in `r`.
///
/// Interpolated from the numeric recursion at `2m + 2` consecutive values of
/// `r` starting at `max(3, a + 2)`, with degree bound `2m`; the last sample
/// is a consistency check. A failed check is reported, never absorbed by
/// raising the bound.
pub fn p_polynomial_symbolic(m: u32, a: u32) -> Result<RPoly, CohftError> {
    let degree_bound = 2 * m as usize;
    let start = 3.max(a + 2);
    let samples = (start..start + 2 * m + 2)
        .map(|r| {
            let theory = RSpinTheory::new(r)?;
            Ok((int(i64::from(r)), p_polynomial(m, a, &theory)?))
        })
        .collect::<Result<Vec<_>, CohftError>>()?;
    Ok(RPoly::interpolate(&samples, degree_bound)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn theory(r: u32) -> RSpinTheory {
        RSpinTheory::new(r).unwrap()
    }

    #[test]
    fn p0_is_one() {
        for r in 3..8 {
            assert!(p_table(0, &theory(r))[0].iter().all(One::is_one));
        }
    }

    #[test]
    fn p1_values_at_r3() {
        assert_eq!(p_polynomial(1, 0, &theory(3)).unwrap(), rat(-5, 24));
        assert_eq!(p_polynomial(1, 1, &theory(3)).unwrap(), rat(7, 24));
    }

    #[test]
    fn p2_at_r3_matches_direct_double_sum() {
        // P_2(3,1) with P_1 taken from its closed form:
        // 1/2 (12-3-2) P_1(3,0) - 1/48 (1)(11)(7) P_1(3,0)
        let p10 = p1_closed_form(0, 3);
        let expected = rat(7, 2) * &p10 - rat(77, 48) * &p10;
        assert_eq!(p_polynomial(2, 1, &theory(3)).unwrap(), expected);
        assert_eq!(expected, rat(-455, 1152));
    }

    #[test]
    fn index_out_of_range() {
        assert!(matches!(
            p_polynomial(1, 2, &theory(3)),
            Err(CohftError::IndexOutOfRange { index: 2, r: 3 })
        ));
    }

    #[test]
    fn recursion_agrees_with_closed_form_and_is_symmetric() {
        for r in 3..=12 {
            let t = theory(r);
            let row = &p_table(1, &t)[1];
            for a in 0..=r - 2 {
                assert_eq!(row[a as usize], p1_closed_form(a, r));
                assert_eq!(p1_closed_form(a, r), p1_closed_form(r - 1 - a, r));
            }
            let total: Rational = row.iter().sum();
            assert_eq!(total, rat(i64::from((r - 1) * (r - 2)), 24));
        }
    }

    #[test]
    fn symbolic_p0_and_p1() {
        assert_eq!(p_polynomial_symbolic(0, 3).unwrap(), RPoly::one());
        // a = 2: (r-3) - (2r-1)(r-2)/24
        let expected = &RPoly::linear(3)
            - &(&RPoly::from_ints(&[-1, 2]) * &RPoly::linear(2)).scale(&rat(1, 24));
        assert_eq!(p_polynomial_symbolic(1, 2).unwrap(), expected);
    }

    #[test]
    fn symbolic_p1_is_symmetric_under_a_to_r_minus_1_minus_a() {
        // P_1(r, a) and P_1(r, r-1-a) agree as polynomials once a is
        // substituted; compare a = 0 with the closed form at r-1.
        let p0 = p_polynomial_symbolic(1, 0).unwrap();
        for r in 3..12 {
            assert_eq!(p0.eval(&int(r)), p1_closed_form((r - 1) as u32, r as u32));
        }
    }

    #[test]
    fn symbolic_degree_is_at_most_2m() {
        for m in 0..4 {
            for a in 0..3 {
                let p = p_polynomial_symbolic(m, a).unwrap();
                assert!(p.degree().unwrap_or(0) <= 2 * m as usize);
            }
        }
    }
}
