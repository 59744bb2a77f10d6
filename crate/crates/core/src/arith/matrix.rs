use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{ArithError, Rational};

/// Dense row-major matrix. All systems handled here are small (tens of
/// rows), so no sparse representation is provided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from rows of equal length. `cols` fixes the width
    /// when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Result<Self, ArithError> {
        if let Some(bad) = rows.iter().find(|row| row.len() != cols) {
            return Err(ArithError::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    pub fn mul(&self, rhs: &Self) -> Result<Self, ArithError> {
        if self.cols != rhs.rows {
            return Err(ArithError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| &acc + &(self.get(i, k) * rhs.get(k, j)))
        }))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, ArithError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(ArithError::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        }))
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|x| x * c)
    }

    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, ArithError> {
        if v.len() != self.cols {
            return Err(ArithError::DimensionMismatch(format!(
                "{}x{} applied to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }
}

/// Determinant by expansion over permutations, organised as a dynamic
/// program over the set of used columns (`O(2^n n)` ring operations).
/// Works over any commutative ring, including polynomials in `r`.
pub fn determinant_expansion<T>(m: &Matrix<T>) -> Result<T, ArithError>
where
    T: Clone + Zero + One,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T> + Mul<&'a T, Output = T>,
{
    if !m.is_square() {
        return Err(ArithError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    if n > 20 {
        return Err(ArithError::DimensionMismatch(format!(
            "expansion limited to 20x20, got {n}x{n}"
        )));
    }
    let mut partial = vec![T::zero(); 1 << n];
    partial[0] = T::one();
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = T::zero();
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let entry = m.get(row, col);
            if entry.is_zero() {
                continue;
            }
            let rest = mask & !(1 << col);
            if partial[rest].is_zero() {
                continue;
            }
            // Columns already used that lie to the right of `col` each add an inversion.
            let inversions = (rest >> (col + 1)).count_ones();
            let term = &partial[rest] * entry;
            acc = if inversions % 2 == 0 {
                &acc + &term
            } else {
                &acc - &term
            };
        }
        partial[mask] = acc;
    }
    Ok(partial.pop().unwrap_or_else(T::one))
}

/// Exact determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &Matrix<Rational>) -> Result<Rational, ArithError> {
    if !m.is_square() {
        return Err(ArithError::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut negate = false;
    let mut previous = Rational::one();
    for k in 0..n {
        let Some(pivot_row) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot_row != k {
            swap_rows(&mut a, k, pivot_row);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &previous;
                a.set(i, j, value);
            }
            a.set(i, k, Rational::zero());
        }
        previous = a.get(k, k).clone();
    }
    let det = if n == 0 {
        Rational::one()
    } else {
        a.get(n - 1, n - 1).clone()
    };
    Ok(if negate { -det } else { det })
}

fn swap_rows<T: Clone>(m: &mut Matrix<T>, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols {
        m.data.swap(i * m.cols + c, j * m.cols + c);
    }
}

/// Result of Gaussian elimination to reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowEchelon {
    pub reduced: Matrix<Rational>,
    pub pivot_columns: Vec<usize>,
    /// Pivot values before normalisation, in elimination order.
    pub pivots: Vec<Rational>,
    pub row_swaps: usize,
}

impl RowEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_columns.len()
    }

    /// Nonzero rows of the reduced form.
    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rank())
            .map(|i| self.reduced.row(i).to_vec())
            .collect()
    }
}

pub fn row_echelon(m: &Matrix<Rational>) -> RowEchelon {
    let mut a = m.clone();
    let mut pivot_columns = Vec::new();
    let mut pivots = Vec::new();
    let mut row_swaps = 0;
    let mut next_row = 0;
    for col in 0..a.cols {
        if next_row == a.rows {
            break;
        }
        let Some(p) = (next_row..a.rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        if p != next_row {
            swap_rows(&mut a, p, next_row);
            row_swaps += 1;
        }
        let pivot = a.get(next_row, col).clone();
        for j in col..a.cols {
            let v = a.get(next_row, j) / &pivot;
            a.set(next_row, j, v);
        }
        for i in 0..a.rows {
            if i == next_row || a.get(i, col).is_zero() {
                continue;
            }
            let factor = a.get(i, col).clone();
            for j in col..a.cols {
                let v = a.get(i, j) - &factor * a.get(next_row, j);
                a.set(i, j, v);
            }
        }
        pivots.push(pivot);
        pivot_columns.push(col);
        next_row += 1;
    }
    RowEchelon {
        reduced: a,
        pivot_columns,
        pivots,
        row_swaps,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankNullspace {
    pub rank: usize,
    pub nullspace: Vec<Vec<Rational>>,
}

/// Exact rank and a nullspace basis (one vector per free column).
pub fn rank_and_solve(m: &Matrix<Rational>) -> RankNullspace {
    let echelon = row_echelon(m);
    let free: Vec<usize> = (0..m.cols)
        .filter(|c| !echelon.pivot_columns.contains(c))
        .collect();
    let nullspace = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (row, &pc) in echelon.pivot_columns.iter().enumerate() {
                v[pc] = -echelon.reduced.get(row, f).clone();
            }
            v
        })
        .collect();
    RankNullspace {
        rank: echelon.rank(),
        nullspace,
    }
}
