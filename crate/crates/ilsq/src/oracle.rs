//! Brute-force enumeration over a box of lattice points; ground truth for
//! every other solver on small instances.
//!
//! Iteration is odometer-style (no recursion) in lexicographic order, so
//! ties resolve to the lexicographically smallest vector. The inner sweep
//! evaluates the objective as a quadratic in the fastest coordinate with
//! prefix sums recomputed per run, which keeps the cost near O(1) per
//! point without accumulating float drift. Reported objectives are always
//! recomputed from the full quadratic form.

use crate::decorrelate::decorrelate;
use crate::error::Error;
use crate::ilp::SearchBox;
use crate::linalg::{quad_form, round_vec, to_floats};
use crate::model::IntegerLsProblem;

/// Hard limit on the number of points a single enumeration may visit.
pub const ENUMERATION_GUARD: u128 = 10_000_000;

/// Two objectives closer than this count as a tie.
pub const TIE_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub z: Vec<i64>,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_z: Vec<i64>,
    pub best_objective: f64,
    /// Top candidates in ascending objective order; the head is the best.
    pub ranking: Vec<Candidate>,
    /// Set when the runner-up is within [`TIE_EPS`] of the best.
    pub ties: bool,
    /// Number of lattice points visited, `Π (width_i + 1)`.
    pub candidates: u64,
}

/// Exhaustively minimizes the integer LS objective over a box.
pub fn enumerate(
    problem: &IntegerLsProblem,
    bounds: &SearchBox,
    top_k: usize,
) -> Result<OracleResult, Error> {
    if bounds.dim() != problem.dim() {
        return Err(Error::DimensionMismatch {
            context: "box dimension must match the problem",
        });
    }
    let points = bounds.point_count();
    if points > ENUMERATION_GUARD {
        return Err(Error::BoxTooLarge {
            size: points,
            limit: ENUMERATION_GUARD,
        });
    }

    let q = problem.dim();
    let h = problem.weight();
    let zf = problem.float_solution();
    let lo = bounds.lower();
    let hi = bounds.upper();
    let last = q - 1;

    let mut z = lo.to_vec();
    let mut prefix_quad = 0.0;
    let mut prefix_cross = 0.0;
    let mut best: Option<(f64, Vec<i64>)> = None;
    let mut second: Option<(f64, Vec<i64>)> = None;
    let mut ranking: Vec<(f64, Vec<i64>)> = Vec::new();
    let mut count = 0u64;

    'sweep: loop {
        if z[last] == lo[last] {
            prefix_quad = 0.0;
            prefix_cross = 0.0;
            for i in 0..last {
                let di = z[i] as f64 - zf[i];
                for j in 0..last {
                    prefix_quad += di * h[(i, j)] * (z[j] as f64 - zf[j]);
                }
                prefix_cross += h[(last, i)] * di;
            }
        }
        let s = z[last] as f64 - zf[last];
        let value = prefix_quad + 2.0 * prefix_cross * s + h[(last, last)] * s * s;
        count += 1;

        match &best {
            None => best = Some((value, z.clone())),
            Some((best_value, _)) if value < *best_value => {
                second = best.take();
                best = Some((value, z.clone()));
            }
            _ => match &second {
                None => second = Some((value, z.clone())),
                Some((second_value, _)) if value < *second_value => {
                    second = Some((value, z.clone()));
                }
                _ => {}
            },
        }
        if top_k > 0 && (ranking.len() < top_k || value < ranking.last().expect("nonempty").0) {
            let pos = ranking.partition_point(|(obj, _)| *obj <= value);
            ranking.insert(pos, (value, z.clone()));
            ranking.truncate(top_k);
        }

        // Odometer advance, fastest coordinate last.
        let mut k = last;
        loop {
            z[k] += 1;
            if z[k] <= hi[k] {
                break;
            }
            z[k] = lo[k];
            if k == 0 {
                break 'sweep;
            }
            k -= 1;
        }
    }

    let (_, best_z) = best.expect("a box holds at least one point");
    let best_objective = quad_form(h, zf, &to_floats(&best_z));
    let ties = match &second {
        Some((_, second_z)) => quad_form(h, zf, &to_floats(second_z)) - best_objective < TIE_EPS,
        None => false,
    };
    let mut ranking: Vec<Candidate> = ranking
        .into_iter()
        .map(|(_, z)| {
            let objective = quad_form(h, zf, &to_floats(&z));
            Candidate { z, objective }
        })
        .collect();
    ranking.sort_by(|a, b| {
        a.objective
            .partial_cmp(&b.objective)
            .expect("finite objectives")
    });

    Ok(OracleResult {
        best_z,
        best_objective,
        ranking,
        ties,
        candidates: count,
    })
}

/// Global minimum of the integer LS objective over all of Z^q.
///
/// Decorrelates the problem, bounds the level set of the rounded solution's
/// objective by its axis-aligned ellipsoid box in the transformed frame
/// (half-width `sqrt(f_ref (H1⁻¹)_ii)` per coordinate), enumerates it, and
/// maps the result back. Any integer vector beating the rounded solution
/// must lie inside that box, so the optimum is global.
pub fn global_minimum(problem: &IntegerLsProblem) -> Result<OracleResult, Error> {
    let dp = decorrelate(problem)?;
    let transformed = dp.as_problem();
    let rounded = round_vec(transformed.float_solution());
    let f_ref = quad_form(
        transformed.weight(),
        transformed.float_solution(),
        &to_floats(&rounded),
    );
    let chol = transformed.weight().cholesky()?;
    let inv_diag = chol.inverse_diag();

    let mut lower = Vec::with_capacity(problem.dim());
    let mut upper = Vec::with_capacity(problem.dim());
    for (i, zf) in transformed.float_solution().iter().enumerate() {
        let radius = (f_ref * inv_diag[i]).max(0.0).sqrt() * (1.0 + 1e-9);
        lower.push((zf - radius).floor() as i64);
        upper.push((zf + radius).ceil() as i64);
    }
    let bounds = SearchBox::new(lower, upper)?;
    let transformed_result = enumerate(&transformed, &bounds, 5)?;

    let h = problem.weight();
    let zf = problem.float_solution();
    let mut ranking = Vec::with_capacity(transformed_result.ranking.len());
    for candidate in &transformed_result.ranking {
        let z = dp.map().map_back(&candidate.z)?;
        let objective = quad_form(h, zf, &to_floats(&z));
        ranking.push(Candidate { z, objective });
    }
    ranking.sort_by(|a, b| {
        a.objective
            .partial_cmp(&b.objective)
            .expect("finite objectives")
    });
    let best = ranking
        .first()
        .expect("enumeration returned candidates")
        .clone();
    Ok(OracleResult {
        best_z: best.z,
        best_objective: best.objective,
        ranking,
        ties: transformed_result.ties,
        candidates: transformed_result.candidates,
    })
}
