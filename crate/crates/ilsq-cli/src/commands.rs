//! Subcommand implementations: reduce, solve, generate, bench.

use crate::cli::{Cli, Command, Method};
use crate::error::CliError;
use crate::io::{
    self, mixed_model_file_json, parse_box_file, parse_problem_file, ProblemFile, ReducedFile,
    TruthFile,
};
use crate::report::{
    AllReport, BenchReport, DecorrelationReport, MethodBench, MethodObjective, SolveReport,
    StatsReport, SummaryReport,
};
use ilsq::decorrelate::{check_reduced, decorrelate, DecorrelatedProblem};
use ilsq::ilp::{kappa_box, solve_ilp, BoxSpec, SearchBox};
use ilsq::linalg::to_floats;
use ilsq::model::{
    generate_synthetic, objective_full, recover_real, reduce, IntegerLsProblem, MixedModel,
};
use ilsq::oracle::{enumerate, global_minimum, OracleResult};
use ilsq::pivot::{solve_on_decorrelated, solve_pivot, solve_round};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Reduce { input, output } => cmd_reduce(&input, output.as_deref()),
        Command::Solve {
            input,
            method,
            all,
            no_decorrelate,
            kappa,
            box_file,
            verify,
            output,
        } => cmd_solve(
            &input,
            method,
            all,
            no_decorrelate,
            kappa,
            box_file.as_deref(),
            verify,
            output.as_deref(),
        ),
        Command::Generate {
            p,
            q,
            m,
            noise,
            corr,
            seed,
            output,
            truth,
        } => cmd_generate(
            p,
            q,
            m,
            noise,
            corr,
            seed,
            output.as_deref(),
            truth.as_deref(),
        ),
        Command::Bench {
            instances,
            q,
            noise,
            corr,
            kappa,
            seed,
            output,
        } => cmd_bench(instances, q, noise, corr, kappa, seed, output.as_deref()),
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_reduce(input: &Path, output: Option<&Path>) -> Result<(), CliError> {
    let model = match parse_problem_file(&read_input(input)?)? {
        ProblemFile::Mixed(model) => model,
        ProblemFile::Reduced(_) => {
            return Err(CliError::Parse("input is already a reduced problem".into()))
        }
    };
    let problem = reduce(&model)?;
    let file = ReducedFile {
        h: problem.weight().to_rows(),
        z_float: problem.float_solution().to_vec(),
        c0: problem.constant(),
    };
    emit(&io::to_json_string(&file), output)
}

struct SolveContext {
    model: Option<MixedModel>,
    problem: IntegerLsProblem,
    sigma2: f64,
    no_decorrelate: bool,
    kappa: f64,
    explicit_box: Option<SearchBox>,
    oracle: Option<OracleResult>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    input: &Path,
    method: Option<Method>,
    all: bool,
    no_decorrelate: bool,
    kappa: f64,
    box_file: Option<&Path>,
    verify: bool,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let (model, problem) = match parse_problem_file(&read_input(input)?)? {
        ProblemFile::Mixed(model) => {
            let problem = reduce(&model)?;
            (Some(model), problem)
        }
        ProblemFile::Reduced(problem) => (None, problem),
    };
    let sigma2 = model.as_ref().map_or(1.0, |m| m.sigma2());
    let explicit_box = match box_file {
        Some(path) => Some(parse_box_file(&read_input(path)?)?),
        None => None,
    };

    let methods: Vec<Method> = if all {
        vec![Method::Round, Method::Pivot, Method::Ilp, Method::Enum]
    } else {
        vec![method.ok_or_else(|| CliError::Parse("pass --method or --all".into()))?]
    };

    let oracle = if verify {
        let bounds = kappa_box(problem.weight(), problem.float_solution(), kappa, sigma2)?;
        Some(enumerate(&problem, &bounds, 5)?)
    } else {
        None
    };

    let ctx = SolveContext {
        model,
        problem,
        sigma2,
        no_decorrelate,
        kappa,
        explicit_box,
        oracle,
    };

    let reports: Vec<SolveReport> = methods
        .iter()
        .map(|&m| run_method(&ctx, m))
        .collect::<Result<_, _>>()?;

    if all {
        let objectives: Vec<MethodObjective> = reports
            .iter()
            .map(|r| MethodObjective {
                method: r.method.clone(),
                objective_int: r.objective_int,
            })
            .collect();
        let best_method = objectives
            .iter()
            .min_by(|a, b| {
                a.objective_int
                    .partial_cmp(&b.objective_int)
                    .expect("finite")
            })
            .map(|o| o.method.clone())
            .expect("at least one method ran");
        let all_report = AllReport {
            reports,
            summary: SummaryReport {
                objectives,
                best_method,
            },
        };
        emit(&io::to_json_string(&all_report), output)
    } else {
        emit(&io::to_json_string(&reports[0]), output)
    }
}

fn run_method(ctx: &SolveContext, method: Method) -> Result<SolveReport, CliError> {
    let problem = &ctx.problem;
    let start = Instant::now();
    let (z_int, objective_int, mut stats, decorrelation) = match method {
        Method::Round => {
            let got = solve_round(problem);
            (
                got.z_int,
                got.objective_int,
                StatsReport::time_only(0.0),
                None,
            )
        }
        Method::Pivot => {
            let dp = if ctx.no_decorrelate {
                DecorrelatedProblem::identity(problem)
            } else {
                decorrelate(problem)?
            };
            let got = solve_on_decorrelated(problem, &dp)?;
            (
                got.z_int,
                got.objective_int,
                StatsReport::time_only(0.0),
                Some(decorrelation_report(&dp)),
            )
        }
        Method::Ilp => {
            let spec = match &ctx.explicit_box {
                Some(bounds) => BoxSpec::Explicit(bounds.clone()),
                None => BoxSpec::Kappa {
                    kappa: ctx.kappa,
                    sigma2: ctx.sigma2,
                },
            };
            let got = solve_ilp(problem, &spec)?;
            let dp = decorrelate(problem)?;
            let stats = StatsReport {
                wall_ms: 0.0,
                nodes: Some(got.stats.nodes),
                bits: Some(got.stats.bits as u64),
                products: Some(got.stats.products as u64),
                candidates: None,
            };
            (
                got.z_int,
                got.objective_int,
                stats,
                Some(decorrelation_report(&dp)),
            )
        }
        Method::Enum => {
            let bounds = match &ctx.explicit_box {
                Some(bounds) => bounds.clone(),
                None => kappa_box(
                    problem.weight(),
                    problem.float_solution(),
                    ctx.kappa,
                    ctx.sigma2,
                )?,
            };
            let got = enumerate(problem, &bounds, 5)?;
            let stats = StatsReport {
                wall_ms: 0.0,
                nodes: None,
                bits: None,
                products: None,
                candidates: Some(got.candidates),
            };
            (got.best_z, got.best_objective, stats, None)
        }
    };
    stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;

    let (beta, objective_full_value) = match &ctx.model {
        Some(model) => {
            let beta = recover_real(model, &z_int)?;
            let full = objective_full(model, &beta, &to_floats(&z_int))?;
            (Some(beta), full)
        }
        None => (None, objective_int + problem.constant()),
    };
    let matches_oracle = ctx.oracle.as_ref().map(|oracle| {
        objective_int <= oracle.best_objective + 1e-10 * (1.0 + oracle.best_objective.abs())
    });

    Ok(SolveReport {
        method: method.name().to_string(),
        z_int,
        beta,
        objective_int,
        objective_full: objective_full_value,
        c0: problem.constant(),
        decorrelation,
        stats,
        matches_oracle,
    })
}

fn decorrelation_report(dp: &DecorrelatedProblem) -> DecorrelationReport {
    DecorrelationReport {
        gt: dp.map().gt().to_rows(),
        h1: dp.weight().to_rows(),
        reduced: check_reduced(dp.weight(), 1e-12 * dp.weight().max_diag()),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    p: usize,
    q: usize,
    m: Option<usize>,
    noise: f64,
    corr: f64,
    seed: u64,
    output: Option<&Path>,
    truth: Option<&Path>,
) -> Result<(), CliError> {
    let m = m.unwrap_or(p + q + 6);
    let synth = generate_synthetic(p, q, m, noise, corr, seed)?;
    let model_json = mixed_model_file_json(&synth.model);
    let truth_json = io::to_json_string(&TruthFile {
        true_beta: synth.true_beta,
        true_z: synth.true_z,
    });

    emit(&model_json, output)?;
    let truth_path: Option<PathBuf> = match (truth, output) {
        (Some(path), _) => Some(path.to_path_buf()),
        (None, Some(out)) => Some(out.with_extension("truth.json")),
        (None, None) => None,
    };
    if let Some(path) = truth_path {
        fs::write(&path, truth_json)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn cmd_bench(
    instances: u64,
    q: usize,
    noise: f64,
    corr: f64,
    kappa: f64,
    seed: u64,
    output: Option<&Path>,
) -> Result<(), CliError> {
    if instances == 0 {
        return Err(CliError::Parse("bench needs at least one instance".into()));
    }
    let p = 2;
    let m = p + q + 6;
    let method_names = ["round", "pivot", "ilp"];
    let mut hits = [0u64; 3];
    let mut objective_sums = [0.0f64; 3];
    let mut wall_sums = [0.0f64; 3];

    for i in 0..instances {
        let synth = generate_synthetic(p, q, m, noise, corr, seed.wrapping_add(i))?;
        let problem = reduce(&synth.model)?;
        let truth = global_minimum(&problem)?;
        for (k, name) in method_names.iter().enumerate() {
            let start = Instant::now();
            let (objective, _z) = match *name {
                "round" => {
                    let got = solve_round(&problem);
                    (got.objective_int, got.z_int)
                }
                "pivot" => {
                    let got = solve_pivot(&problem, true)?;
                    (got.objective_int, got.z_int)
                }
                _ => {
                    let got = solve_ilp(
                        &problem,
                        &BoxSpec::Kappa {
                            kappa,
                            sigma2: synth.model.sigma2(),
                        },
                    )?;
                    (got.objective_int, got.z_int)
                }
            };
            wall_sums[k] += start.elapsed().as_secs_f64() * 1e3;
            objective_sums[k] += objective;
            if objective <= truth.best_objective + 1e-9 {
                hits[k] += 1;
            }
        }
    }

    let methods: Vec<MethodBench> = method_names
        .iter()
        .enumerate()
        .map(|(k, name)| MethodBench {
            method: name.to_string(),
            success_rate: hits[k] as f64 / instances as f64,
            mean_objective: objective_sums[k] / instances as f64,
            mean_wall_ms: wall_sums[k] / instances as f64,
        })
        .collect();
    let bench = BenchReport {
        instances,
        q: q as u64,
        noise,
        correlation: corr,
        kappa,
        seed,
        methods,
    };

    eprintln!(
        "{:<8} {:>12} {:>16} {:>14}",
        "method", "success", "mean objective", "mean wall ms"
    );
    for m in &bench.methods {
        eprintln!(
            "{:<8} {:>12.4} {:>16.6} {:>14.4}",
            m.method, m.success_rate, m.mean_objective, m.mean_wall_ms
        );
    }
    emit(&io::to_json_string(&bench), output)
}
