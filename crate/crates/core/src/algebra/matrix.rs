//! Matrices over Laurent polynomials and over bare scalars.
//!
//! `ExactMatrix` is the workhorse: Fox matrices after tensoring live
//! here, and its determinant is the single expensive operation in the
//! whole pipeline. The determinant uses fraction-free Bareiss
//! elimination: every intermediate entry is a minor of the original
//! matrix, so entries stay polynomial-sized instead of exploding the
//! way naive fraction arithmetic does, and every division is exact.

use std::fmt;

use super::domain::{Coeff, CoefficientDomain};
use super::laurent::LaurentPolynomial;
use crate::{par, Error, Result};

/// Row-major matrix of Laurent polynomials over one shared domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    domain: CoefficientDomain,
    entries: Vec<LaurentPolynomial>,
}

impl ExactMatrix {
    pub fn zero(domain: CoefficientDomain, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            domain,
            entries: vec![LaurentPolynomial::zero(domain); rows * cols],
        }
    }

    pub fn identity(domain: CoefficientDomain, n: usize) -> Self {
        let mut m = Self::zero(domain, n, n);
        for i in 0..n {
            m.set(i, i, LaurentPolynomial::one(domain));
        }
        m
    }

    pub fn from_fn<F>(domain: CoefficientDomain, rows: usize, cols: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> LaurentPolynomial,
    {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.domain(), domain, "mixed domains");
                entries.push(e);
            }
        }
        ExactMatrix {
            rows,
            cols,
            domain,
            entries,
        }
    }

    pub fn from_rows(domain: CoefficientDomain, rows: Vec<Vec<LaurentPolynomial>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        for r in &rows {
            assert_eq!(r.len(), ncols, "ragged rows");
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        for e in &entries {
            assert_eq!(e.domain(), domain, "mixed domains");
        }
        ExactMatrix {
            rows: nrows,
            cols: ncols,
            domain,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPolynomial {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: LaurentPolynomial) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        assert_eq!(value.domain(), self.domain, "mixed domains");
        self.entries[i * self.cols + j] = value;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.domain, other.domain, "mixed domains");
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Self::from_fn(self.domain, self.rows, other.cols, |i, j| {
            let mut acc = LaurentPolynomial::zero(self.domain);
            for l in 0..self.cols {
                acc = acc.add(&self.get(i, l).mul(other.get(l, j)));
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::from_fn(self.domain, self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self::from_fn(self.domain, self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        })
    }

    pub fn scale(&self, c: &LaurentPolynomial) -> Self {
        Self::from_fn(self.domain, self.rows, self.cols, |i, j| {
            self.get(i, j).mul(c)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPolynomial::is_zero)
    }

    /// Keep exactly the rows listed (in the order given).
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        Self::from_fn(self.domain, keep.len(), self.cols, |i, j| {
            self.get(keep[i], j).clone()
        })
    }

    /// Keep exactly the columns listed (in the order given).
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        Self::from_fn(self.domain, self.rows, keep.len(), |i, j| {
            self.get(i, keep[j]).clone()
        })
    }

    /// Drop the rows listed; order of the survivors is preserved.
    pub fn delete_rows(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|i| !drop.contains(i)).collect();
        self.select_rows(&keep)
    }

    /// Drop the columns listed; order of the survivors is preserved.
    pub fn delete_columns(&self, drop: &[usize]) -> Self {
        let keep: Vec<usize> = (0..self.cols).filter(|j| !drop.contains(j)).collect();
        self.select_columns(&keep)
    }

    /// Determinant by fraction-free Bareiss elimination. The empty
    /// matrix has determinant 1. Errors on non-square input.
    ///
    /// Uses the parallel schedule when the `parallel` feature is on;
    /// the result is identical either way.
    pub fn det_exact(&self) -> Result<LaurentPolynomial> {
        self.det_with(true)
    }

    /// Same determinant on the sequential schedule regardless of
    /// features; exists so benchmarks can compare.
    pub fn det_exact_sequential(&self) -> Result<LaurentPolynomial> {
        self.det_with(false)
    }

    fn det_with(&self, parallel: bool) -> Result<LaurentPolynomial> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(LaurentPolynomial::one(self.domain));
        }
        let mut m: Vec<Vec<LaurentPolynomial>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = LaurentPolynomial::one(self.domain);
        for k in 0..n - 1 {
            let pivot_row = match (k..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => r,
                None => return Ok(LaurentPolynomial::zero(self.domain)),
            };
            if pivot_row != k {
                m.swap(pivot_row, k);
                negate = !negate;
            }
            // Each row below the pivot updates independently:
            // m[i][j] ← (m[k][k]·m[i][j] − m[i][k]·m[k][j]) / prev,
            // exact by Sylvester's determinant identity.
            let (pivot_slice, rest) = m.split_at_mut(k + 1);
            let pivot = &pivot_slice[k];
            let prev_ref = &prev;
            let updated: Vec<Vec<LaurentPolynomial>> =
                par::map_indexed(rest.len(), parallel, |off| {
                    let row = &rest[off];
                    (k + 1..n)
                        .map(|j| {
                            let cross = pivot[k].mul(&row[j]).sub(&row[k].mul(&pivot[j]));
                            cross
                                .exact_div(prev_ref)
                                .expect("Bareiss division is exact")
                        })
                        .collect()
                });
            for (off, new_tail) in updated.into_iter().enumerate() {
                let row = &mut rest[off];
                row[k] = LaurentPolynomial::zero(self.domain);
                row[k + 1..].clone_from_slice(&new_tail);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { det.neg() } else { det })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Square matrix of bare scalars: representation images live here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    size: usize,
    domain: CoefficientDomain,
    entries: Vec<Coeff>,
}

impl ScalarMatrix {
    pub fn identity(domain: CoefficientDomain, n: usize) -> Self {
        Self::from_fn(domain, n, |i, j| {
            if i == j {
                domain.one()
            } else {
                domain.zero()
            }
        })
    }

    pub fn from_fn<F>(domain: CoefficientDomain, n: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Coeff,
    {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        ScalarMatrix {
            size: n,
            domain,
            entries,
        }
    }

    pub fn from_rows(domain: CoefficientDomain, rows: Vec<Vec<Coeff>>) -> Result<Self> {
        let n = rows.len();
        for r in &rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    detail: format!("matrix row has {} entries, expected {n}", r.len()),
                });
            }
        }
        Ok(ScalarMatrix {
            size: n,
            domain,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn domain(&self) -> CoefficientDomain {
        self.domain
    }

    pub fn get(&self, i: usize, j: usize) -> &Coeff {
        &self.entries[i * self.size + j]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.domain, self.size)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "shape mismatch");
        assert_eq!(self.domain, other.domain, "mixed domains");
        Self::from_fn(self.domain, self.size, |i, j| {
            let mut acc = self.domain.zero();
            for l in 0..self.size {
                acc = acc.add(&self.get(i, l).mul(other.get(l, j)));
            }
            acc
        })
    }

    /// Determinant by Gaussian elimination; coefficients live in a
    /// field (rationals or F_p), so plain division is exact.
    #[allow(clippy::needless_range_loop)]
    pub fn det(&self) -> Coeff {
        let n = self.size;
        let mut m: Vec<Vec<Coeff>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut det = self.domain.one();
        for k in 0..n {
            let pivot_row = match (k..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => r,
                None => return self.domain.zero(),
            };
            if pivot_row != k {
                m.swap(pivot_row, k);
                det = det.neg();
            }
            det = det.mul(&m[k][k]);
            let inv = m[k][k].inv().expect("nonzero pivot");
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let factor = m[i][k].mul(&inv);
                for j in k..n {
                    let delta = factor.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&delta);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan; `None` when singular.
    #[allow(clippy::needless_range_loop)]
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut m: Vec<Vec<Coeff>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.get(i, j).clone())
                    .chain((0..n).map(|j| {
                        if i == j {
                            self.domain.one()
                        } else {
                            self.domain.zero()
                        }
                    }))
                    .collect()
            })
            .collect();
        for k in 0..n {
            let pivot_row = (k..n).find(|&r| !m[r][k].is_zero())?;
            m.swap(pivot_row, k);
            let inv = m[k][k].inv().ok()?;
            for j in k..2 * n {
                m[k][j] = m[k][j].mul(&inv);
            }
            for i in 0..n {
                if i == k || m[i][k].is_zero() {
                    continue;
                }
                let factor = m[i][k].clone();
                for j in k..2 * n {
                    let delta = factor.mul(&m[k][j]);
                    m[i][j] = m[i][j].sub(&delta);
                }
            }
        }
        Some(Self::from_fn(self.domain, n, |i, j| m[i][n + j].clone()))
    }

    /// Lift to a Laurent matrix with every entry multiplied by t^shift.
    pub fn to_laurent(&self, shift: i64) -> ExactMatrix {
        ExactMatrix::from_fn(self.domain, self.size, self.size, |i, j| {
            LaurentPolynomial::monomial(self.domain, shift, self.get(i, j).clone())
        })
    }
}

impl fmt::Display for ScalarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            write!(f, "[")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
