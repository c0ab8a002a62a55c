//! Small dense linear algebra: row-major float matrices with Cholesky
//! factorization, and exact 64-bit integer matrices for lattice maps.
//!
//! Inverses are never formed; everything goes through triangular solves.

use crate::error::Error;
use std::ops::{Index, IndexMut};

/// Relative pivot threshold under which a Cholesky factorization is
/// declared to have broken down.
pub const SPD_PIVOT_REL: f64 = 1e-12;

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Mat::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch {
                context: "ragged row lengths",
            });
        }
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            data.extend(row);
        }
        Ok(Mat {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec shape mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn max_diag(&self) -> f64 {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(f64::NEG_INFINITY, |acc, i| acc.max(self[(i, i)]))
    }

    /// Max-abs asymmetry relative to the largest entry.
    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                if (self[(i, j)] - self[(j, i)]).abs() > rel_tol * scale {
                    return false;
                }
            }
        }
        true
    }

    pub fn symmetrized(&self) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = 0.5 * (self[(i, j)] + self[(j, i)]);
            }
        }
        out
    }

    /// Lower-triangular Cholesky factorization of a symmetric positive
    /// definite matrix. Pivots below `SPD_PIVOT_REL` times the largest
    /// diagonal entry count as breakdown.
    pub fn cholesky(&self) -> Result<Cholesky, Error> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                context: "cholesky of non-square matrix",
            });
        }
        let n = self.rows;
        let threshold = SPD_PIVOT_REL * self.max_diag().max(0.0);
        let mut l = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut s = self[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if s.is_nan() || s <= threshold {
                        return Err(Error::NotSpd {
                            context: "nonpositive pivot in Cholesky factorization",
                        });
                    }
                    l[(i, i)] = s.sqrt();
                } else {
                    l[(i, j)] = s / l[(j, j)];
                }
            }
        }
        Ok(Cholesky { l })
    }
}

impl Index<(usize, usize)> for Mat {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Lower Cholesky factor `L` with `A = L Lᵀ`.
#[derive(Debug, Clone)]
pub struct Cholesky {
    l: Mat,
}

impl Cholesky {
    pub fn lower(&self) -> &Mat {
        &self.l
    }

    pub fn dim(&self) -> usize {
        self.l.rows()
    }

    /// Solves `L x = b`.
    pub fn forward(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for i in 0..n {
            for k in 0..i {
                x[i] -= self.l[(i, k)] * x[k];
            }
            x[i] /= self.l[(i, i)];
        }
        x
    }

    /// Solves `Lᵀ x = b`.
    pub fn backward(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        let mut x = b.to_vec();
        for i in (0..n).rev() {
            for k in (i + 1)..n {
                x[i] -= self.l[(k, i)] * x[k];
            }
            x[i] /= self.l[(i, i)];
        }
        x
    }

    /// Solves `L Lᵀ x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.backward(&self.forward(b))
    }

    /// Solves `L X = B` column by column.
    pub fn forward_mat(&self, b: &Mat) -> Mat {
        let n = self.dim();
        assert_eq!(b.rows(), n);
        let mut out = Mat::zeros(n, b.cols());
        for j in 0..b.cols() {
            let col: Vec<f64> = (0..n).map(|i| b[(i, j)]).collect();
            let x = self.forward(&col);
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    /// Determinant of the factored matrix, `Π l_ii²`.
    pub fn det(&self) -> f64 {
        let mut d = 1.0;
        for i in 0..self.dim() {
            d *= self.l[(i, i)] * self.l[(i, i)];
        }
        d
    }

    /// Diagonal of the inverse of the factored matrix, via `‖L⁻¹ eᵢ‖²`.
    pub fn inverse_diag(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            let w = self.forward(&e);
            out[i] = dot(&w, &w);
        }
        out
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `(x − c)ᵀ A (x − c)` for symmetric `A`.
pub fn quad_form(a: &Mat, center: &[f64], x: &[f64]) -> f64 {
    debug_assert_eq!(a.rows(), a.cols());
    debug_assert_eq!(center.len(), a.rows());
    debug_assert_eq!(x.len(), a.rows());
    let n = a.rows();
    let mut total = 0.0;
    for i in 0..n {
        let di = x[i] - center[i];
        if di == 0.0 {
            continue;
        }
        let row = a.row(i);
        let mut s = 0.0;
        for j in 0..n {
            s += row[j] * (x[j] - center[j]);
        }
        total += di * s;
    }
    total
}

/// Nearest integer, ties (.5) rounded away from zero. This is the single
/// rounding rule used by every solver stage.
pub fn round_ties_away(x: f64) -> i64 {
    x.round() as i64
}

pub fn round_vec(x: &[f64]) -> Vec<i64> {
    x.iter().map(|&v| round_ties_away(v)).collect()
}

pub fn to_floats(z: &[i64]) -> Vec<f64> {
    z.iter().map(|&v| v as f64).collect()
}

/// Square integer matrix with exact 64-bit entries. All arithmetic is
/// overflow-checked; none of it ever touches floats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut m = IMat {
            n,
            data: vec![0; n * n],
        };
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self, Error> {
        let n = rows.len();
        if rows.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                context: "integer matrix must be square",
            });
        }
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            data.extend(row);
        }
        Ok(IMat { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| self.data[i * self.n..(i + 1) * self.n].to_vec())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == IMat::identity(self.n)
    }

    pub fn transpose(&self) -> IMat {
        let mut out = IMat {
            n: self.n,
            data: vec![0; self.n * self.n],
        };
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &IMat) -> Result<IMat, Error> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                context: "integer matmul shape mismatch",
            });
        }
        let n = self.n;
        let mut out = IMat {
            n,
            data: vec![0; n * n],
        };
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i64;
                for k in 0..n {
                    let term = self[(i, k)]
                        .checked_mul(rhs[(k, j)])
                        .ok_or(Error::IntegerOverflow)?;
                    s = s.checked_add(term).ok_or(Error::IntegerOverflow)?;
                }
                out[(i, j)] = s;
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, v: &[i64]) -> Result<Vec<i64>, Error> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "integer matvec shape mismatch",
            });
        }
        let mut out = vec![0i64; self.n];
        for i in 0..self.n {
            let mut s = 0i64;
            for j in 0..self.n {
                let term = self[(i, j)]
                    .checked_mul(v[j])
                    .ok_or(Error::IntegerOverflow)?;
                s = s.checked_add(term).ok_or(Error::IntegerOverflow)?;
            }
            out[i] = s;
        }
        Ok(out)
    }

    pub fn matvec_f64(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        let mut out = vec![0.0; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i] += self[(i, j)] as f64 * v[j];
            }
        }
        out
    }

    pub fn to_mat(&self) -> Mat {
        let mut out = Mat::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(i, j)] = self[(i, j)] as f64;
            }
        }
        out
    }

    /// Adds `mult` times row `source` to row `target`, exactly.
    pub fn row_add_multiple(
        &mut self,
        target: usize,
        source: usize,
        mult: i64,
    ) -> Result<(), Error> {
        assert_ne!(target, source);
        for j in 0..self.n {
            let term = mult
                .checked_mul(self[(source, j)])
                .ok_or(Error::IntegerOverflow)?;
            self[(target, j)] = self[(target, j)]
                .checked_add(term)
                .ok_or(Error::IntegerOverflow)?;
        }
        Ok(())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over i128.
    pub fn det_exact(&self) -> Result<i128, Error> {
        let n = self.n;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        let at = |m: &Vec<i128>, i: usize, j: usize| m[i * n + j];
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if at(&m, k, k) == 0 {
                match (k + 1..n).find(|&r| at(&m, r, k) != 0) {
                    Some(r) => {
                        for j in 0..n {
                            m.swap(k * n + j, r * n + j);
                        }
                        sign = -sign;
                    }
                    None => return Ok(0),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let a = at(&m, i, j)
                        .checked_mul(at(&m, k, k))
                        .ok_or(Error::IntegerOverflow)?;
                    let b = at(&m, i, k)
                        .checked_mul(at(&m, k, j))
                        .ok_or(Error::IntegerOverflow)?;
                    // Bareiss guarantees this division is exact.
                    m[i * n + j] = a.checked_sub(b).ok_or(Error::IntegerOverflow)? / prev;
                }
                m[i * n + k] = 0;
            }
            prev = at(&m, k, k);
        }
        Ok(sign * at(&m, n - 1, n - 1))
    }
}

impl Index<(usize, usize)> for IMat {
    type Output = i64;

    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}
