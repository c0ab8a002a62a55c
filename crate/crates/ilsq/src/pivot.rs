//! One-step nonexact solver: symmetric factorization with minimum diagonal
//! pivoting followed by a single backward pass of conditional rounding.
//!
//! Eliminating the smallest remaining diagonal first pushes the largest
//! pivots to the end of the factor, so the backward pass fixes the
//! best-determined ambiguity first and conditions every later rounding on
//! the integers already fixed. No coordinate is ever revisited.

use crate::decorrelate::{decorrelate, DecorrelatedProblem};
use crate::error::Error;
use crate::linalg::{round_ties_away, round_vec, to_floats, Mat, SPD_PIVOT_REL};
use crate::model::{objective_int, IntegerLsProblem, IntegerSolution};

/// Permuted triangular factorization `H1 = P L Lᵀ Pᵀ` where the permutation
/// records the elimination order (smallest updated diagonal first).
#[derive(Debug, Clone)]
pub struct PivotedFactor {
    perm: Vec<usize>,
    lower: Mat,
    pivot_values: Vec<f64>,
}

impl PivotedFactor {
    /// Original index eliminated at each step.
    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn lower(&self) -> &Mat {
        &self.lower
    }

    /// Updated diagonal values in elimination order (diagnostic).
    pub fn pivot_values(&self) -> &[f64] {
        &self.pivot_values
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// Applies `Pᵀ` to a vector: component `k` of the result is the
    /// component of `v` at the original index eliminated at step `k`.
    pub fn permute(&self, v: &[f64]) -> Vec<f64> {
        self.perm.iter().map(|&idx| v[idx]).collect()
    }

    /// Applies `P`: scatters elimination-ordered components back to
    /// original positions.
    pub fn unpermute(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; v.len()];
        for (k, &idx) in self.perm.iter().enumerate() {
            out[idx] = v[k];
        }
        out
    }

    /// Reconstructs `P L Lᵀ Pᵀ` (test and diagnostic use).
    pub fn reconstruct(&self) -> Mat {
        let n = self.dim();
        let mut out = Mat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.lower[(a, k)] * self.lower[(b, k)];
                }
                out[(self.perm[a], self.perm[b])] = s;
            }
        }
        out
    }
}

/// Factorizes an SPD matrix choosing, at every step, the minimum among the
/// not-yet-eliminated updated diagonal entries. Ties go to the lowest
/// original index.
pub fn factorize_min_pivot(h1: &Mat) -> Result<PivotedFactor, Error> {
    if h1.rows() != h1.cols() {
        return Err(Error::DimensionMismatch {
            context: "factorization input must be square",
        });
    }
    let n = h1.rows();
    let threshold = SPD_PIVOT_REL * h1.max_diag().max(0.0);

    let mut s = h1.clone();
    let mut active = vec![true; n];
    let mut perm = Vec::with_capacity(n);
    let mut pivot_values = Vec::with_capacity(n);
    // Column k holds the factor column of step k, indexed by original row.
    let mut cols = Mat::zeros(n, n);

    for k in 0..n {
        let mut pivot_idx = usize::MAX;
        let mut pivot = f64::INFINITY;
        for i in 0..n {
            if active[i] && s[(i, i)] < pivot {
                pivot = s[(i, i)];
                pivot_idx = i;
            }
        }
        if pivot.is_nan() || pivot <= threshold {
            return Err(Error::NotSpd {
                context: "minimum-pivot factorization broke down",
            });
        }
        perm.push(pivot_idx);
        pivot_values.push(pivot);
        let root = pivot.sqrt();
        cols[(pivot_idx, k)] = root;
        active[pivot_idx] = false;
        for j in 0..n {
            if active[j] {
                cols[(j, k)] = s[(j, pivot_idx)] / root;
            }
        }
        for j in 0..n {
            if !active[j] {
                continue;
            }
            for l in 0..n {
                if active[l] {
                    let update = s[(j, pivot_idx)] * s[(l, pivot_idx)] / pivot;
                    s[(j, l)] -= update;
                }
            }
        }
    }

    // Rows re-ordered by elimination step give the lower-triangular factor.
    let mut lower = Mat::zeros(n, n);
    for a in 0..n {
        for k in 0..n {
            lower[(a, k)] = cols[(perm[a], k)];
        }
    }
    Ok(PivotedFactor {
        perm,
        lower,
        pivot_values,
    })
}

/// One backward pass of conditional rounding: for `i` from the last row of
/// the factor down to the first,
/// `z(i) = round(ẑ(i) - Σ_{j>i} l_ji (z(j) - ẑ(j)) / l_ii)`.
///
/// `z2_float` must already be in elimination order (see
/// [`PivotedFactor::permute`]). Returns the integer vector and the number
/// of rounding operations performed, which is always exactly the dimension.
pub fn solve_sequential_counted(factor: &PivotedFactor, z2_float: &[f64]) -> (Vec<i64>, usize) {
    let n = factor.dim();
    assert_eq!(
        z2_float.len(),
        n,
        "float vector length must match the factor"
    );
    let l = factor.lower();
    let mut z = vec![0i64; n];
    let mut roundings = 0usize;
    for i in (0..n).rev() {
        let mut correction = 0.0;
        for j in (i + 1)..n {
            correction += l[(j, i)] * (z[j] as f64 - z2_float[j]);
        }
        z[i] = round_ties_away(z2_float[i] - correction / l[(i, i)]);
        roundings += 1;
    }
    (z, roundings)
}

/// [`solve_sequential_counted`] without the instrumentation.
pub fn solve_sequential(factor: &PivotedFactor, z2_float: &[f64]) -> Vec<i64> {
    solve_sequential_counted(factor, z2_float).0
}

/// Runs the full one-step pipeline on an already-decorrelated problem:
/// permute, factorize, round sequentially, un-permute, map back. The
/// reported objective is evaluated on the original problem.
pub fn solve_on_decorrelated(
    problem: &IntegerLsProblem,
    dp: &DecorrelatedProblem,
) -> Result<IntegerSolution, Error> {
    let factor = factorize_min_pivot(dp.weight())?;
    let z2 = factor.permute(dp.float_solution());
    let (z2_int, roundings) = solve_sequential_counted(&factor, &z2);
    debug_assert_eq!(roundings, dp.dim());
    let z1_int = factor.unpermute(&z2_int);
    let z_int = dp.map().map_back(&z1_int)?;
    let objective = objective_int(problem, &to_floats(&z_int))?;
    Ok(IntegerSolution {
        z_int,
        objective_int: objective,
    })
}

/// The one-step minimum-pivot solver. With `use_decorrelation` the problem
/// is first reduced by a unimodular transform; without it the same pipeline
/// runs with the identity map.
pub fn solve_pivot(
    problem: &IntegerLsProblem,
    use_decorrelation: bool,
) -> Result<IntegerSolution, Error> {
    let dp = if use_decorrelation {
        decorrelate(problem)?
    } else {
        DecorrelatedProblem::identity(problem)
    };
    solve_on_decorrelated(problem, &dp)
}

/// Baseline: componentwise rounding of the float solution, ties away from
/// zero.
pub fn solve_round(problem: &IntegerLsProblem) -> IntegerSolution {
    let z_int = round_vec(problem.float_solution());
    let objective = objective_int(problem, &to_floats(&z_int))
        .expect("rounded vector has the problem dimension");
    IntegerSolution {
        z_int,
        objective_int: objective,
    }
}
