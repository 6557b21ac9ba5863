//! Dense matrices over the rationals with the exact operations the
//! construction needs: multiply, transpose, fraction-free determinant,
//! inverse, block embedding, and the special-orthogonality test.
//!
//! Matrices are immutable values; every operation returns a fresh result, so
//! structural equality (`==`) is exact and safe to rely on.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::{bit_length, BigInt, Rational};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {lhs_rows}x{lhs_cols} vs {rhs_rows}x{rhs_cols}")]
    DimensionMismatch {
        lhs_rows: usize,
        lhs_cols: usize,
        rhs_rows: usize,
        rhs_cols: usize,
    },
    #[error("matrix is singular")]
    Singular,
    #[error("block of size {block} does not fit in target of size {target}")]
    SizeExceedsTarget { block: usize, target: usize },
    #[error("invalid matrix shape: {0}")]
    BadShape(String),
}

/// A dense rows x cols matrix of exact rationals, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl MatQ {
    /// Builds a matrix from rows; all rows must be nonempty and equally long.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(LinalgError::BadShape("matrix must be at least 1x1".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(LinalgError::BadShape("rows have unequal lengths".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a rows x cols matrix by evaluating `f(i, j)` for each entry.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix must be at least 1x1");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        Self::from_fn(diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Rational::zero()
            }
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

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        assert!(i < self.rows && j < self.cols, "entry index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        (0..self.cols).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    /// Leading `size` x `size` block.
    pub fn top_left(&self, size: usize) -> MatQ {
        assert!(
            size >= 1 && size <= self.rows && size <= self.cols,
            "block size out of range"
        );
        Self::from_fn(size, size, |i, j| self.entry(i, j).clone())
    }

    pub fn mul(&self, rhs: &MatQ) -> Result<MatQ, LinalgError> {
        if self.cols != rhs.rows {
            return Err(self.dim_mismatch(rhs));
        }
        Ok(MatQ::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc += self.entry(i, k) * rhs.entry(k, j);
            }
            acc
        }))
    }

    pub fn add(&self, rhs: &MatQ) -> Result<MatQ, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.dim_mismatch(rhs));
        }
        Ok(MatQ::from_fn(self.rows, self.cols, |i, j| {
            self.entry(i, j) + rhs.entry(i, j)
        }))
    }

    pub fn sub(&self, rhs: &MatQ) -> Result<MatQ, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(self.dim_mismatch(rhs));
        }
        Ok(MatQ::from_fn(self.rows, self.cols, |i, j| {
            self.entry(i, j) - rhs.entry(i, j)
        }))
    }

    pub fn transpose(&self) -> MatQ {
        MatQ::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.entry(i, j);
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant via fraction-free (Bareiss) elimination.
    ///
    /// Each row is scaled to integers by its denominator lcm first; the
    /// elimination then stays in integers with exact divisions, and the
    /// accumulated row scales are divided out at the end. Pivots are chosen
    /// by smallest bit length to limit coefficient growth.
    pub fn det(&self) -> Result<Rational, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row_lcm = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(self.entry(i, j).denom()));
            m.push(
                (0..n)
                    .map(|j| {
                        let e = self.entry(i, j);
                        e.numer() * (&row_lcm / e.denom())
                    })
                    .collect(),
            );
            scale *= row_lcm;
        }

        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            let pivot_row = (k..n)
                .filter(|&r| !m[r][k].is_zero())
                .min_by_key(|&r| m[r][k].bits());
            let Some(r) = pivot_row else {
                return Ok(Rational::zero());
            };
            if r != k {
                m.swap(r, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    debug_assert!((&t % &prev).is_zero(), "Bareiss division must be exact");
                    m[i][j] = t / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }

        let mut det_int = m[n - 1][n - 1].clone();
        if negate {
            det_int = -det_int;
        }
        Ok(Rational::new(det_int, scale))
    }

    /// Exact inverse via Gauss-Jordan elimination over the rationals.
    pub fn inverse(&self) -> Result<MatQ, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i)).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();

        for col in 0..n {
            let pivot_row = (col..n)
                .filter(|&r| !a[r][col].is_zero())
                .min_by_key(|&r| bit_length(&a[r][col]));
            let Some(p) = pivot_row else {
                return Err(LinalgError::Singular);
            };
            a.swap(p, col);
            inv.swap(p, col);

            let pivot = a[col][col].clone();
            if !pivot.is_one() {
                for entry in &mut a[col][col..] {
                    *entry /= &pivot;
                }
                for entry in &mut inv[col] {
                    *entry /= &pivot;
                }
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = std::mem::replace(&mut a[r][col], Rational::zero());
                // Earlier columns of the pivot row are already zero, so the
                // update only touches j > col on the left block.
                for j in col + 1..n {
                    let d = &factor * &a[col][j];
                    a[r][j] -= d;
                }
                for j in 0..n {
                    let d = &factor * &inv[col][j];
                    inv[r][j] -= d;
                }
            }
        }

        let result = MatQ::from_rows(inv).expect("square shape");
        debug_assert!(
            self.mul(&result).expect("square").is_identity(),
            "inverse must multiply back to identity"
        );
        Ok(result)
    }

    /// Places `self` in the top-left corner of an `n` x `n` identity.
    pub fn embed_topleft(&self, n: usize) -> Result<MatQ, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows > n {
            return Err(LinalgError::SizeExceedsTarget {
                block: self.rows,
                target: n,
            });
        }
        Ok(MatQ::from_fn(n, n, |i, j| {
            if i < self.rows && j < self.rows {
                self.entry(i, j).clone()
            } else if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        }))
    }

    /// True iff the last row and last column both equal the final standard
    /// basis vector, i.e. the matrix acts as the identity on the last axis
    /// and is a block embedding of its leading principal submatrix.
    pub fn fixes_last_axis(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        for i in 0..n {
            let want_one = i == n - 1;
            let col_ok = if want_one {
                self.entry(i, n - 1).is_one()
            } else {
                self.entry(i, n - 1).is_zero()
            };
            let row_ok = if want_one {
                self.entry(n - 1, i).is_one()
            } else {
                self.entry(n - 1, i).is_zero()
            };
            if !col_ok || !row_ok {
                return false;
            }
        }
        true
    }

    /// Exact membership test for the special orthogonal group: rows form an
    /// orthonormal set and the determinant is exactly 1.
    pub fn is_special_orthogonal(&self) -> bool {
        self.is_orthogonal() && self.det().map(|d| d.is_one()).unwrap_or(false)
    }

    /// Exact orthogonality: the product with the transpose is the identity.
    pub fn is_orthogonal(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        for i in 0..n {
            for j in i..n {
                let mut dot = Rational::zero();
                for k in 0..n {
                    dot += self.entry(i, k) * self.entry(j, k);
                }
                let ok = if i == j { dot.is_one() } else { dot.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Largest per-entry bit length (numerator plus denominator), the
    /// coefficient-growth statistic reported by the bench subcommand.
    pub fn max_entry_bits(&self) -> u64 {
        self.entries.iter().map(bit_length).max().unwrap_or(0)
    }

    fn dim_mismatch(&self, rhs: &MatQ) -> LinalgError {
        LinalgError::DimensionMismatch {
            lhs_rows: self.rows,
            lhs_cols: self.cols,
            rhs_rows: rhs.rows,
            rhs_cols: rhs.cols,
        }
    }
}

impl fmt::Display for MatQ {
    /// Plain-text form: one row per line, entries space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
