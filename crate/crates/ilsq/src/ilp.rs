//! Exact solver route: hard box bounds, binary expansion of the bounded
//! integers, a 0-1 quadratic objective, its linearization into a 0-1
//! linear program, and a small exact branch-and-bound solver.
//!
//! Boxes live in the decorrelated coordinate frame; the final solution is
//! mapped back to the original frame at the end of the pipeline.

use crate::decorrelate::{decorrelate, DecorrelatedProblem};
use crate::error::Error;
use crate::linalg::{to_floats, Mat};
use crate::model::{objective_int, IntegerLsProblem};
use crate::pivot::{factorize_min_pivot, solve_sequential};

/// Default half-width multiplier for derived boxes (roughly 99.7% coverage
/// under normality).
pub const DEFAULT_KAPPA: f64 = 3.0;

/// Guard on the number of binary variables a 0-1 program may carry.
pub const MAX_BITS: usize = 30;

/// Per-coordinate integer bounds `lower_i <= z_i <= upper_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBox {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl SearchBox {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self, Error> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                context: "box bound lengths differ",
            });
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::DimensionMismatch {
                context: "box lower bound exceeds upper bound",
            });
        }
        if lower
            .iter()
            .zip(&upper)
            .any(|(&l, &u)| u as i128 - l as i128 > i64::MAX as i128)
        {
            return Err(Error::BoxTooLarge {
                size: u128::MAX,
                limit: i64::MAX as u128,
            });
        }
        Ok(SearchBox { lower, upper })
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn width(&self, i: usize) -> i64 {
        self.upper[i] - self.lower[i]
    }

    pub fn contains(&self, z: &[i64]) -> bool {
        z.len() == self.dim()
            && z.iter()
                .enumerate()
                .all(|(i, &v)| self.lower[i] <= v && v <= self.upper[i])
    }

    pub fn clamp(&self, z: &[i64]) -> Vec<i64> {
        z.iter()
            .enumerate()
            .map(|(i, &v)| v.clamp(self.lower[i], self.upper[i]))
            .collect()
    }

    /// Number of lattice points, saturating at `u128::MAX`.
    pub fn point_count(&self) -> u128 {
        let mut count: u128 = 1;
        for i in 0..self.dim() {
            let w = (self.width(i) as u128) + 1;
            count = count.saturating_mul(w);
        }
        count
    }
}

/// Box centered on `center` with half-width `kappa` standard deviations per
/// coordinate, where the variance is `sigma2` times the diagonal of the
/// inverse of `weight`.
pub fn kappa_box(
    weight: &Mat,
    center: &[f64],
    kappa: f64,
    sigma2: f64,
) -> Result<SearchBox, Error> {
    if center.len() != weight.rows() {
        return Err(Error::DimensionMismatch {
            context: "box center length must match the weight",
        });
    }
    let chol = weight.cholesky().map_err(|_| Error::NotSpd {
        context: "box construction needs a positive definite weight",
    })?;
    let inv_diag = chol.inverse_diag();
    let mut lower = Vec::with_capacity(center.len());
    let mut upper = Vec::with_capacity(center.len());
    // Saturate far inside i64 so spans can never overflow downstream.
    let cast = |v: f64| v.clamp(-4.6e18, 4.6e18) as i64;
    for (i, &c) in center.iter().enumerate() {
        let sigma = (sigma2 * inv_diag[i]).max(0.0).sqrt();
        lower.push(cast((c - kappa * sigma).floor()));
        upper.push(cast((c + kappa * sigma).ceil()));
    }
    SearchBox::new(lower, upper)
}

/// Default box around the decorrelated float solution.
pub fn default_box(dp: &DecorrelatedProblem, kappa: f64, sigma2: f64) -> Result<SearchBox, Error> {
    kappa_box(dp.weight(), dp.float_solution(), kappa, sigma2)
}

/// Binary expansion of a box: coordinate `i` is written as
/// `lower_i + Σ_j 2^j b_i(j)` with `ceil(log2(width + 1))` bits, plus a cap
/// constraint whenever the bit range overshoots the width.
#[derive(Debug, Clone)]
pub struct BinaryEncoding {
    bounds: SearchBox,
    bit_counts: Vec<u32>,
    offsets: Vec<usize>,
    bit_coord: Vec<usize>,
    bit_weight: Vec<i64>,
    caps: Vec<Option<i64>>,
}

impl BinaryEncoding {
    pub fn bounds(&self) -> &SearchBox {
        &self.bounds
    }

    /// Bits per coordinate; zero for degenerate (single-point) coordinates.
    pub fn bit_counts(&self) -> &[u32] {
        &self.bit_counts
    }

    pub fn total_bits(&self) -> usize {
        self.bit_coord.len()
    }

    /// Coordinate owning each bit.
    pub fn bit_coord(&self) -> &[usize] {
        &self.bit_coord
    }

    /// Power-of-two weight of each bit.
    pub fn bit_weight(&self) -> &[i64] {
        &self.bit_weight
    }

    /// Per-coordinate cap `Σ 2^j b_i(j) <= width_i`, present only where the
    /// bit range overshoots.
    pub fn caps(&self) -> &[Option<i64>] {
        &self.caps
    }

    /// First bit index of each coordinate.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// The bits-to-offsets matrix: `q x total_bits` with entries `2^j`.
    pub fn bit_matrix(&self) -> Mat {
        let mut a1 = Mat::zeros(self.bounds.dim(), self.total_bits());
        for (bit, (&coord, &w)) in self.bit_coord.iter().zip(&self.bit_weight).enumerate() {
            a1[(coord, bit)] = w as f64;
        }
        a1
    }
}

/// Builds the binary expansion of a box. Bit counts follow
/// `floor(log2(width)) + 1` for positive widths and zero for fixed
/// coordinates.
pub fn encode(bounds: &SearchBox) -> BinaryEncoding {
    let q = bounds.dim();
    let mut bit_counts = Vec::with_capacity(q);
    let mut offsets = Vec::with_capacity(q);
    let mut bit_coord = Vec::new();
    let mut bit_weight = Vec::new();
    let mut caps = Vec::with_capacity(q);
    for i in 0..q {
        let width = bounds.width(i);
        offsets.push(bit_coord.len());
        if width == 0 {
            bit_counts.push(0);
            caps.push(None);
            continue;
        }
        let r = 64 - (width as u64).leading_zeros();
        bit_counts.push(r);
        for j in 0..r {
            bit_coord.push(i);
            bit_weight.push(1i64 << j);
        }
        // 2^r - 1 can exceed the width; a cap restores exact box semantics.
        let max_value = if r == 64 { i64::MAX } else { (1i64 << r) - 1 };
        caps.push(if max_value > width { Some(width) } else { None });
    }
    BinaryEncoding {
        bounds: bounds.clone(),
        bit_counts,
        offsets,
        bit_coord,
        bit_weight,
        caps,
    }
}

/// Decodes a bit vector to the integer point `lower + Σ 2^j b`, rejecting
/// non-binary entries and cap violations.
pub fn decode(enc: &BinaryEncoding, bits: &[u8]) -> Result<Vec<i64>, Error> {
    if bits.len() != enc.total_bits() {
        return Err(Error::DimensionMismatch {
            context: "bit vector length must match the encoding",
        });
    }
    for (i, &b) in bits.iter().enumerate() {
        if b > 1 {
            return Err(Error::BitOutOfRange { index: i });
        }
    }
    let q = enc.bounds.dim();
    let mut z = enc.bounds.lower().to_vec();
    let mut values = vec![0i64; q];
    for (bit, &b) in bits.iter().enumerate() {
        if b == 1 {
            let c = enc.bit_coord[bit];
            values[c] = values[c]
                .checked_add(enc.bit_weight[bit])
                .ok_or(Error::IntegerOverflow)?;
        }
    }
    for i in 0..q {
        if values[i] > enc.bounds.width(i) {
            return Err(Error::CapViolated { coordinate: i });
        }
        z[i] = z[i].checked_add(values[i]).ok_or(Error::IntegerOverflow)?;
    }
    Ok(z)
}

/// Encodes a point of the box into its bit vector (the inverse of
/// [`decode`] on the box).
pub fn encode_point(enc: &BinaryEncoding, z: &[i64]) -> Result<Vec<u8>, Error> {
    if z.len() != enc.bounds.dim() {
        return Err(Error::DimensionMismatch {
            context: "point length must match the box",
        });
    }
    let mut bits = vec![0u8; enc.total_bits()];
    for (i, &v) in z.iter().enumerate() {
        if v < enc.bounds.lower()[i] || v > enc.bounds.upper()[i] {
            return Err(Error::CapViolated { coordinate: i });
        }
        let mut value = v - enc.bounds.lower()[i];
        for j in (0..enc.bit_counts[i]).rev() {
            let bit = enc.offsets[i] + j as usize;
            if value >= enc.bit_weight[bit] {
                value -= enc.bit_weight[bit];
                bits[bit] = 1;
            }
        }
        debug_assert_eq!(value, 0);
    }
    Ok(bits)
}

/// 0-1 quadratic objective over the encoding bits: constant, linear and
/// strictly-lower pairwise coefficients, with squared bits already folded
/// into the linear part.
#[derive(Debug, Clone)]
pub struct Qubo {
    linear: Vec<f64>,
    pairwise: Mat,
    constant: f64,
}

impl Qubo {
    pub fn linear(&self) -> &[f64] {
        &self.linear
    }

    /// Symmetric pairwise coefficient of `b_i b_j`, `i != j`, already
    /// doubled; read with `i > j`.
    pub fn pairwise(&self) -> &Mat {
        &self.pairwise
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn num_bits(&self) -> usize {
        self.linear.len()
    }

    /// Evaluates the folded expansion at a bit vector.
    pub fn value_at(&self, bits: &[u8]) -> f64 {
        assert_eq!(bits.len(), self.num_bits());
        let mut total = self.constant;
        for (i, &b) in bits.iter().enumerate() {
            if b == 0 {
                continue;
            }
            total += self.linear[i];
            for (j, &bj) in bits.iter().enumerate().take(i) {
                if bj == 1 {
                    total += self.pairwise[(i, j)];
                }
            }
        }
        total
    }
}

/// Expands `(A1 b + lower - zf)ᵀ H1 (A1 b + lower - zf)` into constant,
/// linear and pairwise bit terms, folding `b² = b`.
pub fn build_qubo(dp: &DecorrelatedProblem, enc: &BinaryEncoding) -> Result<Qubo, Error> {
    if enc.bounds.dim() != dp.dim() {
        return Err(Error::DimensionMismatch {
            context: "encoding dimension must match the problem",
        });
    }
    let h = dp.weight();
    let q = dp.dim();
    let t = enc.total_bits();
    let shift: Vec<f64> = enc
        .bounds
        .lower()
        .iter()
        .zip(dp.float_solution())
        .map(|(&lo, zf)| lo as f64 - zf)
        .collect();
    let mut constant = 0.0;
    for i in 0..q {
        for j in 0..q {
            constant += shift[i] * h[(i, j)] * shift[j];
        }
    }
    let grad = h.matvec(&shift);

    let mut linear = vec![0.0; t];
    let mut pairwise = Mat::zeros(t, t);
    for a in 0..t {
        let (ca, wa) = (enc.bit_coord[a], enc.bit_weight[a] as f64);
        // Linear part plus the folded diagonal quadratic term.
        linear[a] = 2.0 * grad[ca] * wa + wa * wa * h[(ca, ca)];
        for b in 0..a {
            let (cb, wb) = (enc.bit_coord[b], enc.bit_weight[b] as f64);
            let coeff = 2.0 * wa * wb * h[(ca, cb)];
            pairwise[(a, b)] = coeff;
            pairwise[(b, a)] = coeff;
        }
    }
    Ok(Qubo {
        linear,
        pairwise,
        constant,
    })
}

/// Index of the product variable for the bit pair `i >= j`.
pub fn product_index(i: usize, j: usize) -> usize {
    debug_assert!(i >= j);
    i * (i + 1) / 2 + j
}

/// Index of the diagonal product variable carrying bit `i` itself.
pub fn diag_index(i: usize) -> usize {
    product_index(i, i)
}

/// Inverse of [`product_index`].
pub fn product_pair(k: usize) -> (usize, usize) {
    let mut i = ((((8 * k + 1) as f64).sqrt() as usize).saturating_sub(1)) / 2;
    while product_index(i + 1, 0) <= k {
        i += 1;
    }
    while product_index(i, 0) > k {
        i -= 1;
    }
    (i, k - product_index(i, 0))
}

/// One product-variable linking constraint:
/// `v_product >= v_left + v_right - 1`, `v_product <= v_left`,
/// `v_product <= v_right`, with `left` and `right` the diagonal variables
/// of the two bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkConstraint {
    pub product: usize,
    pub left: usize,
    pub right: usize,
}

/// One cap constraint `Σ weight_k v_k <= bound` over diagonal variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapConstraint {
    pub terms: Vec<(usize, i64)>,
    pub bound: i64,
}

/// 0-1 linear program over product variables, one per bit pair `i >= j`.
/// Product variables with zero cost are omitted from the constraint list;
/// they cannot affect the optimum.
#[derive(Debug, Clone)]
pub struct Ilp01 {
    cost: Vec<f64>,
    constant: f64,
    links: Vec<LinkConstraint>,
    caps: Vec<CapConstraint>,
    num_bits: usize,
}

impl Ilp01 {
    pub fn cost(&self) -> &[f64] {
        &self.cost
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn links(&self) -> &[LinkConstraint] {
        &self.links
    }

    pub fn caps(&self) -> &[CapConstraint] {
        &self.caps
    }

    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    /// Total number of product variables, `t_b (t_b + 1) / 2`.
    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn value_at(&self, vars: &[u8]) -> f64 {
        assert_eq!(vars.len(), self.num_vars());
        self.constant
            + self
                .cost
                .iter()
                .zip(vars)
                .filter(|(_, &v)| v == 1)
                .map(|(c, _)| c)
                .sum::<f64>()
    }

    /// Completes a bit assignment into the full product-variable vector.
    pub fn vars_from_bits(&self, bits: &[u8]) -> Vec<u8> {
        assert_eq!(bits.len(), self.num_bits);
        let mut vars = vec![0u8; self.num_vars()];
        for i in 0..self.num_bits {
            for j in 0..=i {
                vars[product_index(i, j)] = bits[i] & bits[j];
            }
        }
        vars
    }

    /// Checks the linking inequalities and caps for a 0-1 vector.
    pub fn is_feasible(&self, vars: &[u8]) -> bool {
        if vars.len() != self.num_vars() || vars.iter().any(|&v| v > 1) {
            return false;
        }
        for link in &self.links {
            let (p, l, r) = (vars[link.product], vars[link.left], vars[link.right]);
            if (p as i8) < (l as i8) + (r as i8) - 1 || p > l || p > r {
                return false;
            }
        }
        for cap in &self.caps {
            let sum: i64 = cap
                .terms
                .iter()
                .map(|&(k, w)| if vars[k] == 1 { w } else { 0 })
                .sum();
            if sum > cap.bound {
                return false;
            }
        }
        true
    }
}

/// Linearizes the 0-1 quadratic objective: every product `b_i b_j` becomes
/// a variable with the triangular index law, linked by the three standard
/// inequalities; caps are re-expressed over the diagonal variables.
pub fn linearize(qubo: &Qubo, enc: &BinaryEncoding) -> Ilp01 {
    let t_b = qubo.num_bits();
    let t_v = t_b * (t_b + 1) / 2;
    let mut cost = vec![0.0; t_v];
    let mut links = Vec::new();
    for i in 0..t_b {
        cost[diag_index(i)] = qubo.linear()[i];
        for j in 0..i {
            let c = qubo.pairwise()[(i, j)];
            cost[product_index(i, j)] = c;
            if c != 0.0 {
                links.push(LinkConstraint {
                    product: product_index(i, j),
                    left: diag_index(i),
                    right: diag_index(j),
                });
            }
        }
    }
    let mut caps = Vec::new();
    for (coord, cap) in enc.caps().iter().enumerate() {
        if let Some(bound) = cap {
            let terms: Vec<(usize, i64)> = (0..enc.total_bits())
                .filter(|&bit| enc.bit_coord()[bit] == coord)
                .map(|bit| (diag_index(bit), enc.bit_weight()[bit]))
                .collect();
            caps.push(CapConstraint {
                terms,
                bound: *bound,
            });
        }
    }
    Ilp01 {
        cost,
        constant: qubo.constant(),
        links,
        caps,
        num_bits: t_b,
    }
}

/// Branch-and-bound result: optimal bits, the completed product-variable
/// vector, the objective, and the node count.
#[derive(Debug, Clone)]
pub struct BbSolution {
    pub bits: Vec<u8>,
    pub vars: Vec<u8>,
    pub objective: f64,
    pub nodes: u64,
}

struct BbContext<'a> {
    ilp: &'a Ilp01,
    diag_cost: Vec<f64>,
    incident: Vec<Vec<(usize, f64)>>,
    // Cap group per bit (index into group_bound), and the bit's weight there.
    bit_group: Vec<Option<usize>>,
    bit_capweight: Vec<i64>,
    group_bound: Vec<i64>,
    group_sum: Vec<i64>,
    assignment: Vec<i8>,
    incumbent: f64,
    best: Option<Vec<u8>>,
    nodes: u64,
}

impl BbContext<'_> {
    fn dfs(&mut self, idx: usize, determined: f64, optimistic: f64) {
        self.nodes += 1;
        if self.ilp.constant() + determined + optimistic >= self.incumbent {
            return;
        }
        if idx == self.ilp.num_bits() {
            self.incumbent = self.ilp.constant() + determined;
            self.best = Some(self.assignment.iter().map(|&a| a as u8).collect());
            return;
        }
        for value in [0u8, 1u8] {
            if value == 1 {
                if let Some(g) = self.bit_group[idx] {
                    if self.group_sum[g] + self.bit_capweight[idx] > self.group_bound[g] {
                        continue;
                    }
                }
            }
            let mut det = determined;
            let mut opt = optimistic;
            let c_diag = self.diag_cost[idx];
            det += if value == 1 { c_diag } else { 0.0 };
            opt -= c_diag.min(0.0);
            for &(other, c) in &self.incident[idx] {
                match self.assignment[other] {
                    -1 => {
                        // Later bit still free: fixing this one to zero
                        // settles the product at zero.
                        if value == 0 {
                            opt -= c.min(0.0);
                        }
                    }
                    0 => {} // product was settled when `other` went to zero
                    _ => {
                        det += if value == 1 { c } else { 0.0 };
                        opt -= c.min(0.0);
                    }
                }
            }
            self.assignment[idx] = value as i8;
            if value == 1 {
                if let Some(g) = self.bit_group[idx] {
                    self.group_sum[g] += self.bit_capweight[idx];
                }
            }
            self.dfs(idx + 1, det, opt);
            if value == 1 {
                if let Some(g) = self.bit_group[idx] {
                    self.group_sum[g] -= self.bit_capweight[idx];
                }
            }
            self.assignment[idx] = -1;
        }
    }
}

/// Exact minimization of the 0-1 linear program by depth-first search over
/// the bit (diagonal) variables with exact product propagation. The bound
/// adds, for every still-undetermined term, the best value it could reach;
/// subtrees that cannot beat the incumbent are pruned. An optional warm
/// start seeds the incumbent.
pub fn solve_branch_bound(ilp: &Ilp01, warm_start: Option<&[u8]>) -> Result<BbSolution, Error> {
    let t_b = ilp.num_bits();
    if t_b > MAX_BITS {
        return Err(Error::BoxTooLarge {
            size: t_b as u128,
            limit: MAX_BITS as u128,
        });
    }

    let diag_cost: Vec<f64> = (0..t_b).map(|i| ilp.cost()[diag_index(i)]).collect();
    let mut incident: Vec<Vec<(usize, f64)>> = vec![Vec::new(); t_b];
    for link in ilp.links() {
        let (i, j) = product_pair(link.product);
        let c = ilp.cost()[link.product];
        incident[i].push((j, c));
        incident[j].push((i, c));
    }
    let mut bit_group: Vec<Option<usize>> = vec![None; t_b];
    let mut bit_capweight: Vec<i64> = vec![0; t_b];
    let mut group_bound = Vec::with_capacity(ilp.caps().len());
    for (g, cap) in ilp.caps().iter().enumerate() {
        group_bound.push(cap.bound);
        for &(var, w) in &cap.terms {
            let (bit, other) = product_pair(var);
            debug_assert_eq!(bit, other, "cap terms reference diagonal variables");
            bit_group[bit] = Some(g);
            bit_capweight[bit] = w;
        }
    }

    let mut optimistic = 0.0;
    for &c in &diag_cost {
        optimistic += c.min(0.0);
    }
    for link in ilp.links() {
        optimistic += ilp.cost()[link.product].min(0.0);
    }

    let group_count = ilp.caps().len();
    let mut ctx = BbContext {
        ilp,
        diag_cost,
        incident,
        bit_group,
        bit_capweight,
        group_bound,
        group_sum: vec![0; group_count],
        assignment: vec![-1; t_b],
        incumbent: f64::INFINITY,
        best: None,
        nodes: 0,
    };
    if let Some(bits) = warm_start {
        let vars = ilp.vars_from_bits(bits);
        if ilp.is_feasible(&vars) {
            ctx.incumbent = ilp.value_at(&vars);
            ctx.best = Some(bits.to_vec());
        }
    }
    ctx.dfs(0, 0.0, optimistic);

    let bits = ctx.best.ok_or(Error::Infeasible)?;
    let vars = ilp.vars_from_bits(&bits);
    let objective = ilp.value_at(&vars);
    Ok(BbSolution {
        bits,
        vars,
        objective,
        nodes: ctx.nodes,
    })
}

/// Box selection for [`solve_ilp`]: either a derived default box or an
/// explicit one (in decorrelated coordinates).
#[derive(Debug, Clone)]
pub enum BoxSpec {
    Kappa { kappa: f64, sigma2: f64 },
    Explicit(SearchBox),
}

/// Solver statistics for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IlpStats {
    pub nodes: u64,
    pub bits: usize,
    pub products: usize,
}

/// Result of the exact route.
#[derive(Debug, Clone)]
pub struct IlpSolution {
    pub z_int: Vec<i64>,
    pub objective_int: f64,
    pub stats: IlpStats,
}

/// The full exact pipeline: decorrelate, bound, expand to bits, build and
/// linearize the 0-1 objective, branch and bound (warm-started from the
/// one-step pivot solution), decode and map back. The returned vector
/// attains the minimum over every integer point whose decorrelated image
/// lies in the box.
pub fn solve_ilp(problem: &IntegerLsProblem, spec: &BoxSpec) -> Result<IlpSolution, Error> {
    let dp = decorrelate(problem)?;
    let bounds = match spec {
        BoxSpec::Kappa { kappa, sigma2 } => default_box(&dp, *kappa, *sigma2)?,
        BoxSpec::Explicit(b) => {
            if b.dim() != dp.dim() {
                return Err(Error::DimensionMismatch {
                    context: "explicit box dimension must be q",
                });
            }
            b.clone()
        }
    };
    let enc = encode(&bounds);
    let qubo = build_qubo(&dp, &enc)?;
    let ilp = linearize(&qubo, &enc);

    // Warm start: one-step pivot solution in the decorrelated frame,
    // clamped into the box.
    let factor = factorize_min_pivot(dp.weight())?;
    let z2 = factor.permute(dp.float_solution());
    let z1_pivot = factor.unpermute(&solve_sequential(&factor, &z2));
    let warm_bits = encode_point(&enc, &bounds.clamp(&z1_pivot))?;

    let bb = solve_branch_bound(&ilp, Some(&warm_bits))?;
    let z1 = decode(&enc, &bb.bits)?;
    let z_int = dp.map().map_back(&z1)?;
    let objective = objective_int(problem, &to_floats(&z_int))?;
    Ok(IlpSolution {
        z_int,
        objective_int: objective,
        stats: IlpStats {
            nodes: bb.nodes,
            bits: ilp.num_bits(),
            products: ilp.num_vars(),
        },
    })
}
