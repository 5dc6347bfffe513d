//! JSON job and result documents.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDoc {
    pub p: u64,
    #[serde(default = "one")]
    pub e: u32,
    #[serde(default = "one")]
    pub m: u32,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Relations,
    CheckInf,
    CheckV,
    EvalCpl,
    EvalLog,
    Verify,
    Act,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Relations => "relations",
            Command::CheckInf => "check-inf",
            Command::CheckV => "check-v",
            Command::EvalCpl => "eval-cpl",
            Command::EvalLog => "eval-log",
            Command::Verify => "verify",
            Command::Act => "act",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    /// Digits of series output.
    pub precision: Option<i64>,
    /// `"inf"` or a monic irreducible in x.
    pub place: Option<String>,
    /// Degree bound for the exhaustive cross-check of `relations`.
    pub degree_bound: Option<usize>,
    pub seed: Option<u64>,
}

/// A job. Points list coordinates as (p_{n-1}, ..., p_0), the order used
/// in the displays of the theory; `x` is θ, `t` the motive variable and
/// `g` the generator of F_{q^m} reported in the result header.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub field: FieldDoc,
    pub n: usize,
    #[serde(default)]
    pub command: Option<Command>,
    #[serde(default)]
    pub points: Vec<Vec<String>>,
    #[serde(default)]
    pub polynomials: Vec<String>,
    #[serde(default)]
    pub alphas: Vec<String>,
    /// Coefficients of the combination checked by `verify`.
    #[serde(default)]
    pub coefficients: Vec<String>,
    /// Element of F_q[t] applied by `act`.
    #[serde(default)]
    pub a: Option<String>,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldHeader {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub q: u64,
    /// Minimal polynomial of `g` over F_p, in the variable g.
    pub generator_modulus: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    /// `"inf"` or the place, e.g. `"x"` for θ.
    pub completion: String,
    pub valuation: i64,
    pub digits: Vec<String>,
    pub precision: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCheckDoc {
    pub ord_inf: Option<i64>,
    pub cond2: bool,
    pub cond3: bool,
    pub cond3_failures: Vec<(String, i64)>,
    pub bound: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub cond1: bool,
    pub cond1_solver: Option<bool>,
    pub points: Vec<PointCheckDoc>,
    pub overall: bool,
    pub applicable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Output {
    Relations {
        generators: Vec<Vec<String>>,
        c_values: Vec<(String, i64)>,
        divisor: Vec<(String, i64)>,
        d: usize,
        degree_bound: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        enumerated: Option<usize>,
    },
    Report {
        report: ReportDoc,
    },
    Series {
        values: Vec<SeriesDoc>,
    },
    Logs {
        logs: Vec<Vec<SeriesDoc>>,
    },
    Verify {
        /// `null` for an exact zero.
        residual_valuation: Option<i64>,
        precision: i64,
        verified: bool,
    },
    Act {
        images: Vec<Vec<String>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDoc {
    /// `"domain"` or `"internal"`.
    pub kind: String,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobResult {
    pub command: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldHeader>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<Output>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorDoc>,
    pub timing_ms: f64,
}
