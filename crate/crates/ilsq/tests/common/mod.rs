//! Shared random-instance builders for the integration suites.
#![allow(dead_code)] // each test target uses a different subset

use ilsq::linalg::Mat;
use ilsq::model::IntegerLsProblem;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Equicorrelated SPD matrix: every off-diagonal correlation has magnitude
/// exactly `corr`, with random diagonal scales and a random sign pattern.
pub fn equicorrelated_spd(
    q: usize,
    corr: f64,
    scale_lo: f64,
    scale_hi: f64,
    rng: &mut ChaCha8Rng,
) -> Mat {
    let scales: Vec<f64> = (0..q)
        .map(|_| rng.random_range(scale_lo..scale_hi))
        .collect();
    let signs: Vec<f64> = (0..q)
        .map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 })
        .collect();
    let mut h = Mat::zeros(q, q);
    for i in 0..q {
        for j in 0..q {
            let r = if i == j { 1.0 } else { corr };
            h[(i, j)] = signs[i] * signs[j] * scales[i] * scales[j] * r;
        }
    }
    h
}

/// Factor-model SPD matrix: unit rows mixing a shared direction with an
/// independent one, plus a small ridge to keep the spectrum bounded away
/// from zero. Correlations cluster around `corr²`.
pub fn factor_spd(q: usize, corr: f64, scale_lo: f64, scale_hi: f64, rng: &mut ChaCha8Rng) -> Mat {
    let dim = q + 5;
    let normal = StandardNormal;
    let shared: Vec<f64> = (0..dim).map(|_| normal.sample(rng)).collect();
    let shared_norm = shared.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(q);
    for _ in 0..q {
        let own: Vec<f64> = (0..dim).map(|_| normal.sample(rng)).collect();
        let mix = (1.0 - corr * corr).max(0.0).sqrt();
        let row: Vec<f64> = own
            .iter()
            .zip(&shared)
            .map(|(o, s)| corr * s / shared_norm + mix * o)
            .collect();
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        rows.push(row.into_iter().map(|v| v / norm).collect());
    }
    let ridge = 1e-3;
    let scales: Vec<f64> = (0..q)
        .map(|_| rng.random_range(scale_lo..scale_hi))
        .collect();
    let mut h = Mat::zeros(q, q);
    for i in 0..q {
        for j in 0..q {
            let mut r: f64 = rows[i].iter().zip(&rows[j]).map(|(a, b)| a * b).sum();
            if i == j {
                r += ridge;
            }
            h[(i, j)] = scales[i] * scales[j] * r / (1.0 + ridge);
        }
    }
    h
}

/// Correlation magnitude drawn up to `max_corr`, mixing the two
/// construction styles.
pub fn random_spd(q: usize, max_corr: f64, rng: &mut ChaCha8Rng) -> Mat {
    let corr = rng.random_range(0.0..max_corr);
    if rng.random_bool(0.5) {
        equicorrelated_spd(q, corr, 0.3, 3.0, rng)
    } else {
        factor_spd(q, corr, 0.3, 3.0, rng)
    }
}

/// Integer LS problem whose float solution is a lattice point plus noise
/// with the statistically consistent covariance `noise² H⁻¹`. Correlation
/// magnitude is drawn up to `max_corr`.
pub fn random_problem(
    q: usize,
    max_corr: f64,
    noise: f64,
    rng: &mut ChaCha8Rng,
) -> IntegerLsProblem {
    let corr = rng.random_range(0.0..max_corr);
    let h = if rng.random_bool(0.5) {
        equicorrelated_spd(q, corr, 0.7, 1.4, rng)
    } else {
        factor_spd(q, corr, 0.7, 1.4, rng)
    };
    let chol = h.cholesky().expect("generated matrices are SPD");
    let normal = StandardNormal;
    let u: Vec<f64> = (0..q).map(|_| normal.sample(rng)).collect();
    let shaped = chol.backward(&u);
    let z_float: Vec<f64> = (0..q)
        .map(|i| rng.random_range(-10..=10) as f64 + noise * shaped[i])
        .collect();
    IntegerLsProblem::new(h, z_float, 0.0).expect("generated problems are valid")
}
