use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ArithError, Rational};

/// Univariate polynomial in the formal variable `r` with rational
/// coefficients. Coefficients are indexed by degree and carry no trailing
/// zeros; the zero polynomial has no coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RPoly {
    coeffs: Vec<Rational>,
}

impl RPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| super::int(c)).collect())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The polynomial `r`.
    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// `r - c` for an integer `c`.
    pub fn linear(c: i64) -> Self {
        Self::from_ints(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `r^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, r: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * r + c)
    }

    /// The unique polynomial of degree at most `degree_bound` through the
    /// first `degree_bound + 1` samples. Any further samples are used as
    /// consistency checks.
    pub fn interpolate(
        samples: &[(Rational, Rational)],
        degree_bound: usize,
    ) -> Result<Self, ArithError> {
        let needed = degree_bound + 1;
        if samples.len() < needed {
            return Err(ArithError::NotEnoughSamples {
                degree_bound,
                needed,
                got: samples.len(),
            });
        }
        for (i, (x, _)) in samples.iter().enumerate() {
            if samples[..i].iter().any(|(y, _)| y == x) {
                return Err(ArithError::DuplicateAbscissa(x.clone()));
            }
        }

        // Newton divided differences on the fitting samples.
        let (fit, check) = samples.split_at(needed);
        let xs: Vec<&Rational> = fit.iter().map(|(x, _)| x).collect();
        let mut table: Vec<Rational> = fit.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..needed {
            for i in (level..needed).rev() {
                table[i] = (&table[i] - &table[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        let mut poly = Self::constant(table[needed - 1].clone());
        for i in (0..needed - 1).rev() {
            let factor = Self::from_coeffs(vec![-xs[i].clone(), Rational::one()]);
            poly = &(&poly * &factor) + &Self::constant(table[i].clone());
        }

        for (x, y) in check {
            if &poly.eval(x) != y {
                return Err(ArithError::InconsistentSamples {
                    degree_bound,
                    at: x.clone(),
                });
            }
        }
        Ok(poly)
    }
}

impl Zero for RPoly {
    fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl From<Rational> for RPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add<&RPoly> for &RPoly {
    type Output = RPoly;

    fn add(self, rhs: &RPoly) -> RPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RPoly::from_coeffs((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub<&RPoly> for &RPoly {
    type Output = RPoly;

    fn sub(self, rhs: &RPoly) -> RPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        RPoly::from_coeffs((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul<&RPoly> for &RPoly {
    type Output = RPoly;

    fn mul(self, rhs: &RPoly) -> RPoly {
        if self.is_zero() || rhs.is_zero() {
            return RPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RPoly::from_coeffs(out)
    }
}

impl Neg for &RPoly {
    type Output = RPoly;

    fn neg(self) -> RPoly {
        RPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<RPoly> for RPoly {
            type Output = RPoly;
            fn $method(self, rhs: RPoly) -> RPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        -&self
    }
}

impl fmt::Display for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = c.abs();
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                if abs.is_integer() {
                    write!(f, "{abs}")?;
                } else {
                    write!(f, "({abs})")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "r")?,
                _ => write!(f, "r^{k}")?,
            }
        }
        Ok(())
    }
}
