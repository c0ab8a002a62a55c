//! Unimodular decorrelation of the ambiguity weight matrix.
//!
//! Elementary integer congruence steps reduce every off-diagonal entry of
//! the SPD matrix until `|h_ij| <= min(h_ii, h_jj) / 2` holds for all
//! pairs. The accumulated transform and its inverse transpose are kept in
//! exact 64-bit integers, so mapping lattice points between the original
//! and decorrelated coordinates is exact.

use crate::error::Error;
use crate::linalg::{round_ties_away, IMat, Mat};
use crate::model::IntegerLsProblem;

/// Slack applied to the reduction condition, relative to the largest
/// diagonal entry.
pub const REDUCTION_SLACK_REL: f64 = 1e-12;

/// Step cap is `STEP_CAP_FACTOR * q^2`; exceeding it signals numerical
/// pathology rather than a legitimate long reduction.
pub const STEP_CAP_FACTOR: usize = 1000;

/// Accumulated unimodular transform `Gt` together with `(Gtᵀ)⁻¹`,
/// maintained incrementally in exact integer arithmetic.
///
/// Coordinates map as `z1 = (Gtᵀ)⁻¹ z` (forward, into the decorrelated
/// frame) and `z = Gtᵀ z1` (back).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    gt: IMat,
    gt_inv_t: IMat,
}

impl UnimodularMap {
    pub fn identity(dim: usize) -> Self {
        UnimodularMap {
            gt: IMat::identity(dim),
            gt_inv_t: IMat::identity(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.gt.dim()
    }

    pub fn gt(&self) -> &IMat {
        &self.gt
    }

    pub fn gt_inv_t(&self) -> &IMat {
        &self.gt_inv_t
    }

    /// Left-multiplies the accumulated transform by an elementary matrix
    /// that is the identity except for `-mult` at `(target, source)`, and
    /// keeps the inverse transpose in sync.
    pub fn apply_step(&mut self, target: usize, source: usize, mult: i64) -> Result<(), Error> {
        // Gt <- G1 Gt subtracts, (Gtᵀ)⁻¹ <- G1⁻ᵀ (Gtᵀ)⁻¹ adds with rows swapped.
        self.gt.row_add_multiple(
            target,
            source,
            mult.checked_neg().ok_or(Error::IntegerOverflow)?,
        )?;
        self.gt_inv_t.row_add_multiple(source, target, mult)?;
        Ok(())
    }

    /// Maps a decorrelated-frame integer vector back to the original frame,
    /// `z = Gtᵀ z1`, exactly.
    pub fn map_back(&self, z1: &[i64]) -> Result<Vec<i64>, Error> {
        self.gt.transpose().matvec(z1)
    }

    /// Maps an original-frame integer vector into the decorrelated frame,
    /// `z1 = (Gtᵀ)⁻¹ z`, exactly.
    pub fn map_forward(&self, z: &[i64]) -> Result<Vec<i64>, Error> {
        self.gt_inv_t.matvec(z)
    }

    /// Forward map for real vectors (used for the float solution).
    pub fn map_forward_float(&self, z: &[f64]) -> Vec<f64> {
        self.gt_inv_t.matvec_f64(z)
    }

    /// Exact consistency check: `Gtᵀ (Gtᵀ)⁻¹ = I` in integer arithmetic.
    pub fn is_consistent(&self) -> bool {
        match self.gt.transpose().matmul(&self.gt_inv_t) {
            Ok(prod) => prod.is_identity(),
            Err(_) => false,
        }
    }
}

/// The decorrelated problem: reduced weight, transformed float solution,
/// the transform that produced them, and the carried constant.
#[derive(Debug, Clone)]
pub struct DecorrelatedProblem {
    weight: Mat,
    float_solution: Vec<f64>,
    map: UnimodularMap,
    constant: f64,
}

impl DecorrelatedProblem {
    /// Wraps a problem without transforming it (identity map). Used when
    /// a solver is run with decorrelation disabled.
    pub fn identity(problem: &IntegerLsProblem) -> Self {
        DecorrelatedProblem {
            weight: problem.weight().clone(),
            float_solution: problem.float_solution().to_vec(),
            map: UnimodularMap::identity(problem.dim()),
            constant: problem.constant(),
        }
    }

    pub fn weight(&self) -> &Mat {
        &self.weight
    }

    pub fn float_solution(&self) -> &[f64] {
        &self.float_solution
    }

    pub fn map(&self) -> &UnimodularMap {
        &self.map
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn dim(&self) -> usize {
        self.float_solution.len()
    }

    /// Views the decorrelated data as a standalone integer LS problem.
    pub fn as_problem(&self) -> IntegerLsProblem {
        IntegerLsProblem::new(
            self.weight.clone(),
            self.float_solution.clone(),
            self.constant,
        )
        .expect("decorrelated weight stays symmetric positive definite")
    }
}

/// Parameters of one elementary reduction step on the pair `(i, j)`:
/// the row of the larger diagonal receives `-mult` times the row of the
/// smaller. `None` when the pair already satisfies the condition.
fn step_params(a: &Mat, i: usize, j: usize) -> Option<(usize, usize, i64)> {
    let (small, large) = if a[(i, i)] <= a[(j, j)] {
        (i, j)
    } else {
        (j, i)
    };
    let a_min = a[(small, small)];
    let off = a[(i, j)];
    if off.abs() <= 0.5 * a_min {
        return None;
    }
    let mult = round_ties_away(off / a_min);
    debug_assert_ne!(mult, 0);
    Some((large, small, mult))
}

/// Builds the elementary integer matrix of one reduction step for the pair
/// `(i, j)` of a symmetric matrix: the identity unless
/// `|a_ij| > min(a_ii, a_jj) / 2`, in which case the entry at the row of the
/// larger diagonal and the column of the smaller becomes
/// `-round(a_ij / a_min)`. Ties `a_ii = a_jj` treat `i` as the smaller.
pub fn reduction_step(a: &Mat, i: usize, j: usize) -> IMat {
    assert_ne!(i, j);
    let n = a.rows();
    let mut g = IMat::identity(n);
    if let Some((large, small, mult)) = step_params(a, i, j) {
        g[(large, small)] = -mult;
    }
    g
}

/// Applies the elementary congruence `G1 A G1ᵀ` in place: row `large` minus
/// `mult` times row `small`, then the same on columns.
fn apply_congruence(a: &mut Mat, large: usize, small: usize, mult: i64) {
    let m = mult as f64;
    let n = a.rows();
    for k in 0..n {
        let v = a[(small, k)];
        a[(large, k)] -= m * v;
    }
    for k in 0..n {
        let v = a[(k, small)];
        a[(k, large)] -= m * v;
    }
}

/// True when every off-diagonal pair satisfies the reduction condition
/// `|h_ij| <= min(h_ii, h_jj) / 2 + tol`.
pub fn check_reduced(h: &Mat, tol: f64) -> bool {
    let n = h.rows();
    for i in 0..n {
        for j in (i + 1)..n {
            if h[(i, j)].abs() > 0.5 * h[(i, i)].min(h[(j, j)]) + tol {
                return false;
            }
        }
    }
    true
}

/// True iff the integer matrix has determinant +1 or -1, decided by exact
/// fraction-free elimination.
pub fn is_unimodular(g: &IMat) -> Result<bool, Error> {
    Ok(g.det_exact()?.abs() == 1)
}

/// Decorrelates the problem: sweeps all pairs `(i, j)`, `i < j`, in
/// row-major order, applying elementary steps wherever the reduction
/// condition is violated, until a full sweep is clean. The working matrix
/// is refreshed as `Gt H Gtᵀ` from the original after every sweep to keep
/// float drift out of the result.
pub fn decorrelate(problem: &IntegerLsProblem) -> Result<DecorrelatedProblem, Error> {
    let h = problem.weight();
    h.cholesky().map_err(|_| Error::NotSpd {
        context: "decorrelation input is not positive definite",
    })?;
    let q = problem.dim();
    let cap = STEP_CAP_FACTOR * q * q;

    let mut map = UnimodularMap::identity(q);
    let mut work = h.clone();
    let mut steps = 0usize;
    loop {
        let mut changed = false;
        for i in 0..q {
            for j in (i + 1)..q {
                let slack = REDUCTION_SLACK_REL * work.max_diag();
                let bound = 0.5 * work[(i, i)].min(work[(j, j)]) + slack;
                if work[(i, j)].abs() <= bound {
                    continue;
                }
                let (large, small, mult) =
                    step_params(&work, i, j).expect("violated pair yields a nontrivial step");
                apply_congruence(&mut work, large, small, mult);
                map.apply_step(large, small, mult)?;
                steps += 1;
                if steps > cap {
                    return Err(Error::ReductionStall { steps, cap });
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
        work = refresh_congruence(&map, h);
    }

    let float_solution = map.map_forward_float(problem.float_solution());
    Ok(DecorrelatedProblem {
        weight: work,
        float_solution,
        map,
        constant: problem.constant(),
    })
}

/// `Gt H Gtᵀ` recomputed from the original matrix, symmetrized.
fn refresh_congruence(map: &UnimodularMap, h: &Mat) -> Mat {
    let gt = map.gt().to_mat();
    gt.matmul(&h.matmul(&gt.transpose())).symmetrized()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spd(rows: Vec<Vec<f64>>) -> Mat {
        Mat::from_rows(rows).unwrap()
    }

    #[test]
    fn reduction_step_reduces_larger_diagonal() {
        let a = spd(vec![vec![4.0, 1.2], vec![1.2, 1.0]]);
        let g = reduction_step(&a, 0, 1);
        assert_eq!(g.to_rows(), vec![vec![1, -1], vec![0, 1]]);
        let gf = g.to_mat();
        let reduced = gf.matmul(&a.matmul(&gf.transpose()));
        assert!((reduced[(0, 0)] - 2.6).abs() < 1e-12);
        assert!((reduced[(0, 1)] - 0.2).abs() < 1e-12);
        assert!((reduced[(1, 1)] - 1.0).abs() < 1e-12);
        // The update formula for the larger diagonal:
        // max - 2 round(a_ij/a_min) a_ij + a_min round(a_ij/a_min)^2.
        let predicted = 4.0 - 2.0 * 1.0 * 1.2 + 1.0 * 1.0;
        assert!((reduced[(0, 0)] - predicted).abs() < 1e-12);
    }

    #[test]
    fn reduction_step_is_identity_when_condition_holds() {
        let a = spd(vec![vec![1.0, 0.2], vec![0.2, 1.0]]);
        assert!(reduction_step(&a, 0, 1).is_identity());
        let d = spd(vec![vec![3.0, 0.0], vec![0.0, 1.0]]);
        assert!(reduction_step(&d, 0, 1).is_identity());
    }

    #[test]
    fn boundary_half_does_not_step() {
        // |a_ij| exactly half the smaller diagonal must not trigger a step,
        // otherwise the sweep would oscillate.
        let a = spd(vec![vec![2.0, 0.5], vec![0.5, 1.0]]);
        assert!(reduction_step(&a, 0, 1).is_identity());
    }

    #[test]
    fn decorrelate_two_by_two_example() {
        let problem = IntegerLsProblem::new(
            spd(vec![vec![4.0, 1.2], vec![1.2, 1.0]]),
            vec![2.2, 0.7],
            0.0,
        )
        .unwrap();
        let dp = decorrelate(&problem).unwrap();
        assert_eq!(dp.map().gt().to_rows(), vec![vec![1, -1], vec![0, 1]]);
        assert!((dp.weight()[(0, 0)] - 2.6).abs() < 1e-12);
        assert!((dp.weight()[(0, 1)] - 0.2).abs() < 1e-12);
        assert!((dp.weight()[(1, 1)] - 1.0).abs() < 1e-12);
        // z1 = (Gtᵀ)⁻¹ ẑ with (Gtᵀ)⁻¹ = [[1,0],[1,1]].
        assert!((dp.float_solution()[0] - 2.2).abs() < 1e-12);
        assert!((dp.float_solution()[1] - 2.9).abs() < 1e-12);
        assert!(check_reduced(dp.weight(), 1e-12 * dp.weight().max_diag()));
    }

    #[test]
    fn decorrelate_diagonal_is_identity() {
        let problem = IntegerLsProblem::new(
            spd(vec![vec![3.0, 0.0], vec![0.0, 0.5]]),
            vec![1.4, -0.3],
            0.0,
        )
        .unwrap();
        let dp = decorrelate(&problem).unwrap();
        assert!(dp.map().gt().is_identity());
        assert_eq!(dp.weight(), problem.weight());
        assert_eq!(dp.float_solution(), problem.float_solution());
    }

    #[test]
    fn decorrelate_strong_correlation_preserves_determinant() {
        let h = spd(vec![vec![1.0, 0.9], vec![0.9, 1.0]]);
        let problem = IntegerLsProblem::new(h.clone(), vec![0.0, 0.0], 0.0).unwrap();
        let dp = decorrelate(&problem).unwrap();
        assert!(check_reduced(dp.weight(), 1e-12 * dp.weight().max_diag()));
        let det_in = h.cholesky().unwrap().det();
        let det_out = dp.weight().cholesky().unwrap().det();
        assert!((det_in - 0.19).abs() < 1e-12);
        assert!((det_out - det_in).abs() <= 1e-8 * det_in);
        assert!(is_unimodular(dp.map().gt()).unwrap());
    }

    #[test]
    fn map_back_examples() {
        let mut map = UnimodularMap::identity(2);
        assert_eq!(map.map_back(&[3, 1]).unwrap(), vec![3, 1]);
        // Gt = [[1,-1],[0,1]] comes from one elementary step.
        map.apply_step(0, 1, 1).unwrap();
        assert_eq!(map.gt().to_rows(), vec![vec![1, -1], vec![0, 1]]);
        assert_eq!(map.map_back(&[3, 1]).unwrap(), vec![3, -2]);
        assert!(map.is_consistent());
    }

    #[test]
    fn forward_then_back_is_identity() {
        let problem = IntegerLsProblem::new(
            spd(vec![
                vec![4.0, 1.9, 0.4],
                vec![1.9, 2.0, 1.1],
                vec![0.4, 1.1, 1.5],
            ]),
            vec![0.3, -1.2, 4.4],
            0.0,
        )
        .unwrap();
        let dp = decorrelate(&problem).unwrap();
        let mut state = 11u64;
        for _ in 0..100 {
            // Tiny xorshift keeps the case self-contained.
            let mut next = || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % 41) as i64 - 20
            };
            let z: Vec<i64> = (0..3).map(|_| next()).collect();
            let there = dp.map().map_forward(&z).unwrap();
            let back = dp.map().map_back(&there).unwrap();
            assert_eq!(back, z);
        }
    }

    #[test]
    fn unimodular_checks() {
        assert!(is_unimodular(&IMat::identity(3)).unwrap());
        assert!(is_unimodular(&IMat::from_rows(vec![vec![1, -1], vec![0, 1]]).unwrap()).unwrap());
        assert!(!is_unimodular(&IMat::from_rows(vec![vec![2, 0], vec![0, 1]]).unwrap()).unwrap());
    }

    #[test]
    fn check_reduced_examples() {
        assert!(check_reduced(
            &spd(vec![vec![2.6, 0.2], vec![0.2, 1.0]]),
            0.0
        ));
        assert!(!check_reduced(
            &spd(vec![vec![1.0, 0.9], vec![0.9, 1.0]]),
            0.0
        ));
        assert!(check_reduced(
            &spd(vec![vec![5.0, 0.0], vec![0.0, 1.0]]),
            0.0
        ));
    }

    #[test]
    fn argmin_is_preserved_by_the_transform() {
        // Enumerate a box around the float solution in both frames; the
        // optima must coincide through the map.
        let problem = IntegerLsProblem::new(
            spd(vec![vec![4.0, 1.2], vec![1.2, 1.0]]),
            vec![2.2, 0.7],
            0.0,
        )
        .unwrap();
        let dp = decorrelate(&problem).unwrap();
        let mut best_orig = (f64::INFINITY, vec![0i64; 2]);
        let mut best_mapped = (f64::INFINITY, vec![0i64; 2]);
        for z0 in -2..=6 {
            for z1 in -4..=5 {
                let z = vec![z0, z1];
                let f = crate::model::objective_int(&problem, &[z0 as f64, z1 as f64]).unwrap();
                if f < best_orig.0 {
                    best_orig = (f, z.clone());
                }
                let zt = dp.map().map_forward(&z).unwrap();
                let ft =
                    crate::model::objective_int(&dp.as_problem(), &[zt[0] as f64, zt[1] as f64])
                        .unwrap();
                assert!((f - ft).abs() <= 1e-10 * (1.0 + f.abs()));
                if ft < best_mapped.0 {
                    best_mapped = (ft, zt);
                }
            }
        }
        let back = dp.map().map_back(&best_mapped.1).unwrap();
        assert_eq!(back, best_orig.1);
        assert!((best_mapped.0 - best_orig.0).abs() < 1e-10);
    }
}
