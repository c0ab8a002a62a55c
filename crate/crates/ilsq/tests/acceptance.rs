//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line (visible with `--nocapture`) and pinning its tolerance
//! and runtime budget in code.

mod common;

use common::{equicorrelated_spd, factor_spd, random_problem, rng};
use ilsq::decorrelate::{check_reduced, decorrelate, is_unimodular};
use ilsq::ilp::{
    build_qubo, decode, encode, encode_point, kappa_box, linearize, solve_branch_bound, solve_ilp,
    BoxSpec, SearchBox,
};
use ilsq::linalg::{quad_form, round_vec, to_floats, Mat};
use ilsq::model::{
    generate_synthetic, objective_full, objective_int, recover_real, reduce, IntegerLsProblem,
    MixedSolution,
};
use ilsq::oracle::{enumerate, global_minimum};
use ilsq::pivot::{factorize_min_pivot, solve_pivot, solve_round, solve_sequential_counted};
use rand::Rng;
use std::time::Instant;

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "[acceptance] {criterion}: {} ({detail})",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "{criterion} failed: {detail}");
}

/// Criterion 1: the decorrelation theorem suite. 1000 random SPD matrices,
/// q in 2..=10, off-diagonal correlations up to 0.999.
#[test]
fn criterion_1_decorrelation_theorem_suite() {
    let budget_s = 30.0;
    let start = Instant::now();
    let mut r = rng(201);
    for case in 0..1000 {
        let q = 2 + case % 9;
        let corr = r.random_range(0.0..0.999f64);
        let h = if case % 2 == 0 {
            equicorrelated_spd(q, corr, 0.3, 3.0, &mut r)
        } else {
            factor_spd(q, corr, 0.3, 3.0, &mut r)
        };
        let zf: Vec<f64> = (0..q).map(|_| r.random_range(-5.0..5.0)).collect();
        let problem = IntegerLsProblem::new(h.clone(), zf, 0.0).unwrap();

        // Terminates within the step cap (an error would fail the test).
        let dp = decorrelate(&problem).unwrap();
        let h1 = dp.weight();

        // Reduction condition with slack 1e-12 * max diagonal.
        assert!(
            check_reduced(h1, 1e-12 * h1.max_diag()),
            "case {case}: reduction condition violated"
        );
        // |det Gt| = 1 exactly.
        assert!(
            is_unimodular(dp.map().gt()).unwrap(),
            "case {case}: transform not unimodular"
        );
        // Congruence residual below 1e-9 times the input magnitude.
        let gt = dp.map().gt().to_mat();
        let congruent = gt.matmul(&h.matmul(&gt.transpose()));
        let mut residual: f64 = 0.0;
        for i in 0..q {
            for j in 0..q {
                residual = residual.max((congruent[(i, j)] - h1[(i, j)]).abs());
            }
        }
        assert!(
            residual <= 1e-9 * h.max_abs(),
            "case {case}: congruence residual {residual}"
        );
        // Determinant preserved to 1e-8 relative.
        let det_in = h.cholesky().unwrap().det();
        let det_out = h1.cholesky().unwrap().det();
        assert!(
            (det_in - det_out).abs() <= 1e-8 * det_in,
            "case {case}: determinant drift {det_in} vs {det_out}"
        );
        // Determinant-diagonal inequality on input and output.
        let prod_in: f64 = (0..q).map(|i| h[(i, i)]).product();
        let prod_out: f64 = (0..q).map(|i| h1[(i, i)]).product();
        assert!(
            det_in <= prod_in * (1.0 + 1e-12),
            "case {case}: input diagonal bound"
        );
        assert!(
            det_out <= prod_out * (1.0 + 1e-12),
            "case {case}: output diagonal bound"
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 1 (decorrelation theorem suite)",
        elapsed < budget_s,
        &format!("1000 instances in {elapsed:.2}s, budget {budget_s}s"),
    );
}

/// Criterion 2: the objective decomposition identity on 100 random mixed
/// models with 50 random integer probes each.
#[test]
fn criterion_2_decomposition_identity() {
    let budget_s = 10.0;
    let start = Instant::now();
    let mut r = rng(202);
    let mut worst: f64 = 0.0;
    for case in 0..100 {
        let p = 1 + case % 3;
        let q = 2 + case % 4;
        let m = p + q + 4 + case % 5;
        let noise = r.random_range(0.0..0.5);
        let corr = r.random_range(0.0..0.8);
        let synth = generate_synthetic(p, q, m, noise, corr, r.random()).unwrap();
        let problem = reduce(&synth.model).unwrap();
        for _ in 0..50 {
            let z: Vec<i64> = (0..q).map(|_| r.random_range(-12..=12)).collect();
            let beta = recover_real(&synth.model, &z).unwrap();
            let full = objective_full(&synth.model, &beta, &to_floats(&z)).unwrap();
            let int = objective_int(&problem, &to_floats(&z)).unwrap();
            let rel = (full - (int + problem.constant())).abs() / (1.0 + full);
            worst = worst.max(rel);
            assert!(
                rel <= 1e-8,
                "case {case}: relative decomposition error {rel}"
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 2 (decomposition identity)",
        elapsed < budget_s,
        &format!("100x50 probes, worst relative error {worst:.2e}, {elapsed:.2}s"),
    );
}

/// Criterion 3: exactness of the 0-1 programming route against the
/// enumeration oracle on 200 random problems, q <= 5, box width <= 8.
#[test]
fn criterion_3_ilp_route_is_exact() {
    let budget_s = 60.0;
    let start = Instant::now();
    let mut r = rng(203);
    let mut matches = 0;
    let total = 200;
    for case in 0..total {
        let q = 2 + case % 4; // 2..=5
        let problem = random_problem(q, 0.9, 0.3, &mut r);
        let dp = decorrelate(&problem).unwrap();

        // Box of width <= 8 around the rounded decorrelated solution.
        let center = round_vec(dp.float_solution());
        let half = 1 + (case % 4) as i64; // widths 2, 4, 6, 8
        let lower: Vec<i64> = center.iter().map(|c| c - half).collect();
        let upper: Vec<i64> = center.iter().map(|c| c + half).collect();
        let bounds = SearchBox::new(lower, upper).unwrap();

        let ilp = solve_ilp(&problem, &BoxSpec::Explicit(bounds.clone())).unwrap();
        // The oracle enumerates the same feasible set in the decorrelated
        // frame; objectives agree because the transform preserves them.
        let oracle = enumerate(&dp.as_problem(), &bounds, 2).unwrap();
        if (ilp.objective_int - oracle.best_objective).abs() <= 1e-10 {
            matches += 1;
        } else {
            panic!(
                "case {case}: ilp {} vs oracle {}",
                ilp.objective_int, oracle.best_objective
            );
        }
        // Vector equality whenever the oracle saw no tie at the optimum.
        if !oracle.ties {
            let oracle_z = dp.map().map_back(&oracle.best_z).unwrap();
            assert_eq!(ilp.z_int, oracle_z, "case {case}: argmin mismatch without ties");
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 3 (exact 0-1 route)",
        matches == total && elapsed < budget_s,
        &format!("{matches}/{total} oracle matches, {elapsed:.2}s"),
    );
}

fn criterion_4_instances() -> Vec<IntegerLsProblem> {
    let mut r = rng(204);
    (0..500)
        .map(|case| {
            let q = 4 + case % 5; // 4..=8
            random_problem(q, 0.8, 0.2, &mut r)
        })
        .collect()
}

/// Criterion 4: statistical quality of the one-step pivot solver against
/// plain rounding on 500 moderately correlated instances, q in 4..=8.
#[test]
fn criterion_4_pivot_solver_quality() {
    let budget_s = 120.0;
    let start = Instant::now();
    let mut pivot_hits = 0usize;
    let mut round_hits = 0usize;
    let mut pivot_mean = 0.0;
    let mut round_mean = 0.0;
    let instances = criterion_4_instances();
    let total = instances.len();
    for problem in &instances {
        let truth = global_minimum(problem).unwrap();
        let pivot = solve_pivot(problem, true).unwrap();
        let round = solve_round(problem);
        if pivot.objective_int <= truth.best_objective + 1e-9 {
            pivot_hits += 1;
        }
        if round.objective_int <= truth.best_objective + 1e-9 {
            round_hits += 1;
        }
        pivot_mean += pivot.objective_int / total as f64;
        round_mean += round.objective_int / total as f64;
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 4 (pivot solver quality)",
        pivot_hits >= round_hits && pivot_mean <= round_mean && elapsed < budget_s,
        &format!(
            "success {pivot_hits}/{total} vs {round_hits}/{total}, mean objective \
             {pivot_mean:.4} vs {round_mean:.4}, {elapsed:.2}s"
        ),
    );
}

/// Criterion 5: with a diagonal weight the one-step solver degenerates to
/// plain rounding, exactly.
#[test]
fn criterion_5_diagonal_equivalence() {
    let mut r = rng(205);
    for case in 0..100 {
        let q = 2 + case % 6;
        let diag: Vec<f64> = (0..q).map(|_| r.random_range(0.2..4.0)).collect();
        let zf: Vec<f64> = (0..q).map(|_| r.random_range(-9.0..9.0)).collect();
        let problem = IntegerLsProblem::new(Mat::diag(&diag), zf, 0.0).unwrap();
        let pivot = solve_pivot(&problem, true).unwrap();
        let round = solve_round(&problem);
        assert_eq!(pivot.z_int, round.z_int, "case {case}");
    }
    report(
        "criterion 5 (diagonal equivalence)",
        true,
        "100 instances, exact equality",
    );
}

/// Criterion 6: noiseless synthetic models are recovered exactly by every
/// method.
#[test]
fn criterion_6_noiseless_recovery() {
    let mut r = rng(206);
    for case in 0..100 {
        let p = 1 + case % 3;
        let q = 2 + case % 4;
        let m = p + q + 5;
        let corr = r.random_range(0.0..0.7);
        let synth = generate_synthetic(p, q, m, 0.0, corr, r.random()).unwrap();
        let problem = reduce(&synth.model).unwrap();
        let sigma2 = synth.model.sigma2();

        let mut answers = vec![
            ("round", solve_round(&problem).z_int),
            ("pivot", solve_pivot(&problem, true).unwrap().z_int),
            (
                "pivot-nodecorrelate",
                solve_pivot(&problem, false).unwrap().z_int,
            ),
            (
                "ilp",
                solve_ilp(&problem, &BoxSpec::Kappa { kappa: 3.0, sigma2 })
                    .unwrap()
                    .z_int,
            ),
        ];
        let bounds = kappa_box(problem.weight(), problem.float_solution(), 3.0, sigma2).unwrap();
        answers.push(("enum", enumerate(&problem, &bounds, 1).unwrap().best_z));

        for (method, z) in answers.drain(..) {
            assert_eq!(z, synth.true_z, "case {case}, method {method}");
            let solution = MixedSolution::compute(&synth.model, &problem, &z).unwrap();
            assert!(
                solution.objective_full.abs() <= 1e-9,
                "case {case}, method {method}: residual objective {}",
                solution.objective_full
            );
        }
    }
    report(
        "criterion 6 (noiseless recovery)",
        true,
        "100 models x 5 methods",
    );
}

/// Criterion 7: encoding and linearization, exhaustively at small sizes.
#[test]
fn criterion_7_encoding_and_linearization() {
    let budget_s = 60.0;
    let start = Instant::now();

    // Round-trip and exact-box semantics for every width up to 16.
    for width in 0i64..=16 {
        for lo in [-9i64, -1, 0, 5] {
            let bounds = SearchBox::new(vec![lo], vec![lo + width]).unwrap();
            let enc = encode(&bounds);
            for z in lo..=lo + width {
                let bits = encode_point(&enc, &[z]).unwrap();
                assert_eq!(decode(&enc, &bits).unwrap(), vec![z]);
            }
            // Feasible bit patterns biject onto the box.
            let t = enc.total_bits();
            let mut decoded: Vec<i64> = (0u32..(1 << t))
                .filter_map(|mask| {
                    let bits: Vec<u8> = (0..t).map(|i| ((mask >> i) & 1) as u8).collect();
                    decode(&enc, &bits).ok().map(|z| z[0])
                })
                .collect();
            decoded.sort_unstable();
            let expected: Vec<i64> = (lo..=lo + width).collect();
            assert_eq!(decoded, expected, "width {width}, lo {lo}");
        }
    }

    // Folded 0-1 quadratic equals direct evaluation, and branch-and-bound
    // equals exhaustive bit enumeration, for up to 12 bits.
    let mut r = rng(207);
    for case in 0..10 {
        let q = 2 + case % 3;
        let problem = random_problem(q, 0.8, 0.4, &mut r);
        let dp = decorrelate(&problem).unwrap();
        let center = round_vec(dp.float_solution());
        let half = if q == 2 { 4 } else { 2 }; // keeps t_b <= 12
        let lower: Vec<i64> = center.iter().map(|c| c - half).collect();
        let upper: Vec<i64> = center.iter().map(|c| c + half).collect();
        let bounds = SearchBox::new(lower, upper).unwrap();
        let enc = encode(&bounds);
        let t = enc.total_bits();
        assert!(t <= 12, "case {case}: {t} bits");
        let qubo = build_qubo(&dp, &enc).unwrap();
        let ilp = linearize(&qubo, &enc);

        let a1 = enc.bit_matrix();
        let mut best = f64::INFINITY;
        for mask in 0u32..(1 << t) {
            let bits: Vec<u8> = (0..t).map(|i| ((mask >> i) & 1) as u8).collect();
            // Direct evaluation of the boxed objective at this bit vector.
            let bf: Vec<f64> = bits.iter().map(|&b| b as f64).collect();
            let z1: Vec<f64> = enc
                .bounds()
                .lower()
                .iter()
                .zip(a1.matvec(&bf))
                .map(|(&lo, off)| lo as f64 + off)
                .collect();
            let direct = quad_form(dp.weight(), dp.float_solution(), &z1);
            let folded = qubo.value_at(&bits);
            assert!(
                (direct - folded).abs() <= 1e-9 * (1.0 + direct.abs()),
                "case {case}, mask {mask}: {direct} vs {folded}"
            );
            if decode(&enc, &bits).is_ok() {
                best = best.min(ilp.value_at(&ilp.vars_from_bits(&bits)));
            }
        }
        let bb = solve_branch_bound(&ilp, None).unwrap();
        assert!(
            (bb.objective - best).abs() <= 1e-12 * (1.0 + best.abs()),
            "case {case}: branch and bound {} vs exhaustive {best}",
            bb.objective
        );
    }
    let elapsed = start.elapsed().as_secs_f64();
    report(
        "criterion 7 (encoding and linearization)",
        elapsed < budget_s,
        &format!("widths 0..=16 exhaustive, 10 QUBO/B&B instances, {elapsed:.2}s"),
    );
}

/// Criterion 8: the sequential solver rounds each coordinate exactly once
/// on every criterion-4 instance.
#[test]
fn criterion_8_one_pass_property() {
    for (case, problem) in criterion_4_instances().iter().enumerate() {
        let dp = decorrelate(problem).unwrap();
        let factor = factorize_min_pivot(dp.weight()).unwrap();
        let z2 = factor.permute(dp.float_solution());
        let (_, roundings) = solve_sequential_counted(&factor, &z2);
        assert_eq!(roundings, problem.dim(), "case {case}");
    }
    report(
        "criterion 8 (one rounding per coordinate)",
        true,
        "500 instances",
    );
}
