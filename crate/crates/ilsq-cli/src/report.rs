//! Machine-readable report types emitted by the CLI.
//!
//! Every report serializes deterministically (struct key order is fixed);
//! the only nondeterministic fields are wall-clock times, which consumers
//! exclude from byte comparisons.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub method: String,
    pub z_int: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<f64>>,
    pub objective_int: f64,
    pub objective_full: f64,
    pub c0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decorrelation: Option<DecorrelationReport>,
    pub stats: StatsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matches_oracle: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecorrelationReport {
    #[serde(rename = "Gt")]
    pub gt: Vec<Vec<i64>>,
    #[serde(rename = "H1")]
    pub h1: Vec<Vec<f64>>,
    /// Result of the reduction-condition check on `H1`.
    pub reduced: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub wall_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub products: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<u64>,
}

impl StatsReport {
    pub fn time_only(wall_ms: f64) -> Self {
        StatsReport {
            wall_ms,
            nodes: None,
            bits: None,
            products: None,
            candidates: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AllReport {
    pub reports: Vec<SolveReport>,
    pub summary: SummaryReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub objectives: Vec<MethodObjective>,
    pub best_method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodObjective {
    pub method: String,
    pub objective_int: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub instances: u64,
    pub q: u64,
    pub noise: f64,
    pub correlation: f64,
    pub kappa: f64,
    pub seed: u64,
    pub methods: Vec<MethodBench>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodBench {
    pub method: String,
    /// Fraction of instances on which the method attained the oracle
    /// optimum objective.
    pub success_rate: f64,
    pub mean_objective: f64,
    pub mean_wall_ms: f64,
}
