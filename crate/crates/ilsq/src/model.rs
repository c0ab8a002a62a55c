//! Mixed real/integer linear observation model and its reduction to the
//! standard integer least-squares problem.
//!
//! The model is `y = A β + B z + ε` with real parameters `β`, integer
//! parameters `z`, weight matrix `P` and variance component `σ²`. The real
//! parameters are eliminated through the weighted normal equations, leaving
//! a quadratic `(z − ẑ)ᵀ H (z − ẑ)` plus a constant.

use crate::error::Error;
use crate::linalg::{dot, quad_form, round_vec, to_floats, Mat};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Max-abs relative asymmetry tolerated in a weight matrix.
const WEIGHT_SYMMETRY_TOL: f64 = 1e-12;

/// Retry budget for synthetic generation before giving up.
pub const GENERATION_RETRIES: usize = 100;

/// Linearized mixed observation model.
///
/// Immutable after construction; the constructor checks symmetry and
/// positive definiteness of the weight matrix and full column rank of the
/// joint design.
#[derive(Debug, Clone)]
pub struct MixedModel {
    observations: Vec<f64>,
    real_design: Mat,
    int_design: Mat,
    weight: Mat,
    sigma2: f64,
}

impl MixedModel {
    pub fn new(
        observations: Vec<f64>,
        real_design: Mat,
        int_design: Mat,
        weight: Mat,
        sigma2: f64,
    ) -> Result<Self, Error> {
        let m = observations.len();
        if real_design.rows() != m || int_design.rows() != m {
            return Err(Error::DimensionMismatch {
                context: "design row count must match observation count",
            });
        }
        if weight.rows() != m || weight.cols() != m {
            return Err(Error::DimensionMismatch {
                context: "weight matrix must be m x m",
            });
        }
        let p = real_design.cols();
        let q = int_design.cols();
        if q == 0 {
            return Err(Error::DimensionMismatch {
                context: "model needs at least one integer parameter",
            });
        }
        if m < p + q {
            return Err(Error::DimensionMismatch {
                context: "fewer observations than parameters",
            });
        }
        if sigma2.is_nan() || sigma2 <= 0.0 {
            return Err(Error::DimensionMismatch {
                context: "variance component must be positive",
            });
        }
        if !weight.is_symmetric(WEIGHT_SYMMETRY_TOL) {
            return Err(Error::NotSpd {
                context: "weight matrix is not symmetric",
            });
        }
        weight.cholesky().map_err(|_| Error::NotSpd {
            context: "weight matrix is not positive definite",
        })?;

        // Full column rank of [A B]: the joint weighted normal matrix must
        // admit a Cholesky factorization.
        let mut joint = Mat::zeros(m, p + q);
        for i in 0..m {
            for j in 0..p {
                joint[(i, j)] = real_design[(i, j)];
            }
            for j in 0..q {
                joint[(i, p + j)] = int_design[(i, j)];
            }
        }
        let normal = joint
            .transpose()
            .matmul(&weight.matmul(&joint))
            .symmetrized();
        normal.cholesky().map_err(|_| Error::RankDeficient {
            context: "joint design [A B] is rank deficient",
        })?;

        Ok(MixedModel {
            observations,
            real_design,
            int_design,
            weight,
            sigma2,
        })
    }

    pub fn observations(&self) -> &[f64] {
        &self.observations
    }

    pub fn real_design(&self) -> &Mat {
        &self.real_design
    }

    pub fn int_design(&self) -> &Mat {
        &self.int_design
    }

    pub fn weight(&self) -> &Mat {
        &self.weight
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }

    pub fn num_observations(&self) -> usize {
        self.observations.len()
    }

    pub fn num_real(&self) -> usize {
        self.real_design.cols()
    }

    pub fn num_int(&self) -> usize {
        self.int_design.cols()
    }
}

/// Standard integer least-squares problem: minimize
/// `(z − ẑ)ᵀ H (z − ẑ)` over integer vectors `z`, plus a constant carried
/// from the elimination of the real parameters.
#[derive(Debug, Clone)]
pub struct IntegerLsProblem {
    weight: Mat,
    float_solution: Vec<f64>,
    constant: f64,
}

impl IntegerLsProblem {
    pub fn new(weight: Mat, float_solution: Vec<f64>, constant: f64) -> Result<Self, Error> {
        if weight.rows() != weight.cols() || weight.rows() != float_solution.len() {
            return Err(Error::DimensionMismatch {
                context: "ambiguity weight must be q x q",
            });
        }
        if float_solution.is_empty() {
            return Err(Error::DimensionMismatch {
                context: "problem needs at least one ambiguity",
            });
        }
        if !weight.is_symmetric(WEIGHT_SYMMETRY_TOL) {
            return Err(Error::NotSpd {
                context: "ambiguity weight is not symmetric",
            });
        }
        weight.cholesky().map_err(|_| Error::NotSpd {
            context: "ambiguity weight is not positive definite",
        })?;
        Ok(IntegerLsProblem {
            weight,
            float_solution,
            constant,
        })
    }

    pub fn weight(&self) -> &Mat {
        &self.weight
    }

    pub fn float_solution(&self) -> &[f64] {
        &self.float_solution
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn dim(&self) -> usize {
        self.float_solution.len()
    }
}

/// A full solution of the mixed problem: fixed integers, recovered reals,
/// and both objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedSolution {
    pub z_int: Vec<i64>,
    pub beta: Vec<f64>,
    pub objective_full: f64,
    pub objective_int: f64,
}

impl MixedSolution {
    /// Assembles the solution for a fixed integer vector: recovers the real
    /// parameters and evaluates both objectives.
    pub fn compute(
        model: &MixedModel,
        problem: &IntegerLsProblem,
        z_int: &[i64],
    ) -> Result<Self, Error> {
        let beta = recover_real(model, z_int)?;
        let zf = to_floats(z_int);
        let objective_full = objective_full(model, &beta, &zf)?;
        let objective_int = objective_int(problem, &zf)?;
        Ok(MixedSolution {
            z_int: z_int.to_vec(),
            beta,
            objective_full,
            objective_int,
        })
    }
}

/// Minimal integer solution fragment returned by the solvers.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegerSolution {
    pub z_int: Vec<i64>,
    pub objective_int: f64,
}

/// Eliminates the real parameters and returns the standard integer
/// least-squares problem.
///
/// `H = Bᵀ(P − PA(AᵀPA)⁻¹AᵀP)B` is formed through Cholesky factors and
/// triangular solves only; the constant term is recovered from the
/// decomposition identity at the rounded float solution, so no generalized
/// inverse is ever needed. With no real parameters the projector reduces to
/// the identity.
pub fn reduce(model: &MixedModel) -> Result<IntegerLsProblem, Error> {
    let b = model.int_design();
    let weight = model.weight();
    let pb = weight.matmul(b);
    let bpb = b.transpose().matmul(&pb);
    let bpy = b.transpose().matvec(&weight.matvec(model.observations()));

    let (h, rhs) = if model.num_real() == 0 {
        (bpb, bpy)
    } else {
        let a = model.real_design();
        let normal_a = a.transpose().matmul(&weight.matmul(a)).symmetrized();
        let chol_a = normal_a.cholesky().map_err(|_| Error::RankDeficient {
            context: "normal matrix of the real parameters is singular",
        })?;
        let apb = a.transpose().matmul(&pb);
        let apy = a.transpose().matvec(&weight.matvec(model.observations()));
        let x = chol_a.forward_mat(&apb);
        let u = chol_a.forward(&apy);
        let mut h = bpb;
        for i in 0..h.rows() {
            for j in 0..h.cols() {
                let mut s = 0.0;
                for k in 0..x.rows() {
                    s += x[(k, i)] * x[(k, j)];
                }
                h[(i, j)] -= s;
            }
        }
        let mut rhs = bpy;
        for (i, r) in rhs.iter_mut().enumerate() {
            let mut s = 0.0;
            for k in 0..x.rows() {
                s += x[(k, i)] * u[k];
            }
            *r -= s;
        }
        (h, rhs)
    };

    let h = h.symmetrized();
    let chol_h = h.cholesky().map_err(|_| Error::RankDeficient {
        context: "ambiguity normal matrix is singular",
    })?;
    let z_float = chol_h.solve(&rhs);

    // The constant splits the full objective as F = F₂ + c0 for every z;
    // evaluate the identity at the rounded float solution.
    let z_probe = round_vec(&z_float);
    let beta = recover_real(model, &z_probe)?;
    let zf = to_floats(&z_probe);
    let full = objective_full(model, &beta, &zf)?;
    let int_part = quad_form(&h, &z_float, &zf);
    let c0 = full - int_part;

    IntegerLsProblem::new(h, z_float, c0)
}

/// Recovers the real parameters for a fixed integer vector by solving the
/// weighted normal equations `AᵀPA β = AᵀP(y − B z)`.
pub fn recover_real(model: &MixedModel, z_int: &[i64]) -> Result<Vec<f64>, Error> {
    if z_int.len() != model.num_int() {
        return Err(Error::DimensionMismatch {
            context: "integer vector length must be q",
        });
    }
    if model.num_real() == 0 {
        return Ok(Vec::new());
    }
    let a = model.real_design();
    let weight = model.weight();
    let normal = a.transpose().matmul(&weight.matmul(a)).symmetrized();
    let chol = normal.cholesky().map_err(|_| Error::RankDeficient {
        context: "normal matrix of the real parameters is singular",
    })?;
    let zf = to_floats(z_int);
    let shifted: Vec<f64> = model
        .observations()
        .iter()
        .zip(model.int_design().matvec(&zf))
        .map(|(y, bz)| y - bz)
        .collect();
    let rhs = a.transpose().matvec(&weight.matvec(&shifted));
    Ok(chol.solve(&rhs))
}

/// Weighted residual quadratic `(y − Aβ − Bz)ᵀ P (y − Aβ − Bz)`.
pub fn objective_full(model: &MixedModel, beta: &[f64], z: &[f64]) -> Result<f64, Error> {
    if beta.len() != model.num_real() {
        return Err(Error::DimensionMismatch {
            context: "beta length must be p",
        });
    }
    if z.len() != model.num_int() {
        return Err(Error::DimensionMismatch {
            context: "integer vector length must be q",
        });
    }
    let mut residual = model.observations().to_vec();
    if !beta.is_empty() {
        for (r, ab) in residual.iter_mut().zip(model.real_design().matvec(beta)) {
            *r -= ab;
        }
    }
    for (r, bz) in residual.iter_mut().zip(model.int_design().matvec(z)) {
        *r -= bz;
    }
    Ok(dot(&residual, &model.weight().matvec(&residual)))
}

/// Integer least-squares quadratic `(z − ẑ)ᵀ H (z − ẑ)`. Real-valued probes
/// are allowed.
pub fn objective_int(problem: &IntegerLsProblem, z: &[f64]) -> Result<f64, Error> {
    if z.len() != problem.dim() {
        return Err(Error::DimensionMismatch {
            context: "integer vector length must be q",
        });
    }
    Ok(quad_form(problem.weight(), problem.float_solution(), z))
}

/// A generated model together with the parameters that produced it.
#[derive(Debug, Clone)]
pub struct SyntheticModel {
    pub model: MixedModel,
    pub true_beta: Vec<f64>,
    pub true_z: Vec<i64>,
}

/// Generates a random mixed model with known ground truth.
///
/// `correlation_strength` in `[0, 1)` mixes a shared component into the
/// integer design columns, which drives up the correlation of the float
/// ambiguities. Noise is drawn with covariance `noise_sigma² P⁻¹`, matching
/// the model's stochastic assumption. Deterministic for a fixed seed.
pub fn generate_synthetic(
    p: usize,
    q: usize,
    m: usize,
    noise_sigma: f64,
    correlation_strength: f64,
    seed: u64,
) -> Result<SyntheticModel, Error> {
    if m < p + q || q == 0 {
        return Err(Error::DimensionMismatch {
            context: "generation needs m >= p + q and q >= 1",
        });
    }
    if noise_sigma.is_nan() || noise_sigma < 0.0 {
        return Err(Error::DimensionMismatch {
            context: "noise standard deviation must be nonnegative",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;

    for _ in 0..GENERATION_RETRIES {
        let mut a = Mat::zeros(m, p);
        for i in 0..m {
            for j in 0..p {
                a[(i, j)] = normal.sample(&mut rng);
            }
        }
        let shared: Vec<f64> = (0..m).map(|_| normal.sample(&mut rng)).collect();
        let mut b = Mat::zeros(m, q);
        for j in 0..q {
            for i in 0..m {
                let own: f64 = normal.sample(&mut rng);
                b[(i, j)] = (1.0 - correlation_strength) * own + correlation_strength * shared[i];
            }
        }
        let weights: Vec<f64> = (0..m).map(|_| rng.random_range(0.5..2.0)).collect();
        let weight = Mat::diag(&weights);

        let true_beta: Vec<f64> = (0..p).map(|_| normal.sample(&mut rng)).collect();
        let true_z: Vec<i64> = (0..q).map(|_| rng.random_range(-10..=10)).collect();

        let mut y = vec![0.0; m];
        if p > 0 {
            for (yi, ab) in y.iter_mut().zip(a.matvec(&true_beta)) {
                *yi += ab;
            }
        }
        for (yi, bz) in y.iter_mut().zip(b.matvec(&to_floats(&true_z))) {
            *yi += bz;
        }
        for (i, yi) in y.iter_mut().enumerate() {
            let u: f64 = normal.sample(&mut rng);
            *yi += noise_sigma * u / weights[i].sqrt();
        }

        let sigma2 = (noise_sigma * noise_sigma).max(1e-12);
        match MixedModel::new(y, a, b, weight, sigma2) {
            Ok(model) => {
                return Ok(SyntheticModel {
                    model,
                    true_beta,
                    true_z,
                })
            }
            Err(Error::RankDeficient { .. }) | Err(Error::NotSpd { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GenerationFailed {
        attempts: GENERATION_RETRIES,
    })
}
