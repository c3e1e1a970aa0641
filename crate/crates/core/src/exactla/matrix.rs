use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals with fixed dimensions.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged rows"));
        }
        let nrows = rows.len();
        Ok(RationalMatrix {
            rows: nrows,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::invalid("column length does not match row count"));
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::invalid(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Exact rank via fraction-free (Bareiss) elimination.
    ///
    /// Each row is first scaled by the lcm of its denominators, which keeps
    /// the row space, so elimination runs over integers only.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
                row.iter().map(|r| r.numer() * (&l / r.denom())).collect()
            })
            .collect();
        let (m, n) = (self.rows, self.cols);
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            for r in rank + 1..m {
                for c in col + 1..n {
                    let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    // Bareiss: the division by the previous pivot is exact.
                    a[r][c] = v / &prev;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            for j in c..a.cols {
                let v = &a[(r, j)] * &inv;
                a[(r, j)] = v;
            }
            for i in 0..a.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in c..a.cols {
                        let v = &a[(r, j)] * &f;
                        a[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); self.cols];
                x[f] = Rational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    x[p] = -r[(i, f)].clone();
                }
                x
            })
            .collect()
    }

    /// Solves a square nonsingular system `A x = b`.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        if self.rows != self.cols || b.len() != self.rows {
            return Err(Error::invalid("solve needs a square system"));
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n)] = b[i].clone();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::invalid("singular system"));
        }
        Ok((0..n).map(|i| r[(i, n)].clone()).collect())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|r| r.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Inner product of two rational vectors of equal length.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .sum()
}

/// Largest absolute entry; zero for an empty vector.
pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter()
        .map(|x| x.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}
