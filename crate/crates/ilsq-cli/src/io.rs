//! Problem-file parsing and JSON emission.
//!
//! Two input kinds, auto-detected by key set: a mixed-model file
//! (`y`/`A`/`B` plus `P` or diagonal `weights`, optional `sigma2`) and a
//! reduced-problem file (`H`/`z_float`, optional `c0`). Floats are emitted
//! with 17 significant digits so every double round-trips exactly.

use crate::error::CliError;
use ilsq::ilp::SearchBox;
use ilsq::linalg::Mat;
use ilsq::model::{IntegerLsProblem, MixedModel};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};

/// `serde_json` formatter printing every float with 17 significant digits.
struct FloatFormatter;

impl serde_json::ser::Formatter for FloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FloatFormatter);
    value
        .serialize(&mut ser)
        .expect("report serialization is infallible");
    out.push(b'\n');
    String::from_utf8(out).expect("JSON output is UTF-8")
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
}

#[derive(Debug, Deserialize)]
struct MixedModelFile {
    y: Vec<f64>,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<f64>>,
    #[serde(rename = "P", default)]
    p: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
    #[serde(default = "default_sigma2")]
    sigma2: f64,
}

fn default_sigma2() -> f64 {
    1.0
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ReducedFile {
    #[serde(rename = "H")]
    pub h: Vec<Vec<f64>>,
    pub z_float: Vec<f64>,
    #[serde(default)]
    pub c0: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BoxFile {
    pub m0: Vec<i64>,
    pub m1: Vec<i64>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct TruthFile {
    pub true_beta: Vec<f64>,
    pub true_z: Vec<i64>,
}

/// A parsed input file: either a full mixed model or an already-reduced
/// problem.
pub enum ProblemFile {
    Mixed(MixedModel),
    Reduced(IntegerLsProblem),
}

pub fn parse_problem_file(text: &str) -> Result<ProblemFile, CliError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| CliError::Parse("input must be a JSON object".into()))?;
    if obj.contains_key("y") || obj.contains_key("A") || obj.contains_key("B") {
        let file: MixedModelFile =
            serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(ProblemFile::Mixed(mixed_model_from_file(file)?))
    } else if obj.contains_key("H") && obj.contains_key("z_float") {
        let file: ReducedFile =
            serde_json::from_value(value).map_err(|e| CliError::Parse(e.to_string()))?;
        Ok(ProblemFile::Reduced(reduced_from_file(file)?))
    } else {
        Err(CliError::Parse(
            "unrecognized problem file: expected y/A/B (mixed model) or H/z_float (reduced)".into(),
        ))
    }
}

fn mixed_model_from_file(file: MixedModelFile) -> Result<MixedModel, CliError> {
    let m = file.y.len();
    let weight = match (file.p, file.weights) {
        (Some(rows), None) => matrix(rows, "P")?,
        (None, Some(diag)) => {
            if diag.len() != m {
                return Err(CliError::Parse("weights length must match y".into()));
            }
            Mat::diag(&diag)
        }
        (Some(_), Some(_)) => {
            return Err(CliError::Parse("give either P or weights, not both".into()))
        }
        (None, None) => {
            return Err(CliError::Parse(
                "missing weight matrix: P or weights".into(),
            ))
        }
    };
    let a = matrix(file.a, "A")?;
    let b = matrix(file.b, "B")?;
    MixedModel::new(file.y, a, b, weight, file.sigma2).map_err(CliError::from)
}

fn reduced_from_file(file: ReducedFile) -> Result<IntegerLsProblem, CliError> {
    let h = matrix(file.h, "H")?;
    IntegerLsProblem::new(h, file.z_float, file.c0).map_err(CliError::from)
}

fn matrix(rows: Vec<Vec<f64>>, name: &str) -> Result<Mat, CliError> {
    Mat::from_rows(rows).map_err(|_| CliError::Parse(format!("{name} has ragged rows")))
}

pub fn parse_box_file(text: &str) -> Result<SearchBox, CliError> {
    let file: BoxFile = from_json_str(text)?;
    SearchBox::new(file.m0, file.m1).map_err(CliError::from)
}

/// Mixed-model file content for a model with a diagonal weight matrix.
pub fn mixed_model_file_json(model: &MixedModel) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        y: &'a [f64],
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        #[serde(rename = "B")]
        b: Vec<Vec<f64>>,
        weights: Vec<f64>,
        sigma2: f64,
    }
    let weights: Vec<f64> = (0..model.num_observations())
        .map(|i| model.weight()[(i, i)])
        .collect();
    to_json_string(&Out {
        y: model.observations(),
        a: model.real_design().to_rows(),
        b: model.int_design().to_rows(),
        weights,
        sigma2: model.sigma2(),
    })
}
