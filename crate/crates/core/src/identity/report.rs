use num_complex::Complex64;
use serde::Serialize;

use super::registry::IdentityId;
use crate::error::{Error, Result};
use crate::formal::{format_gaussian, Mismatch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Numeric,
    Formal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportParams {
    /// Each `tau` as `[re, im]`.
    pub taus: Vec<[f64; 2]>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub order: Option<i64>,
}

impl ReportParams {
    pub fn formal(order: i64) -> Self {
        Self {
            taus: Vec::new(),
            seed: None,
            tolerance: None,
            order: Some(order),
        }
    }

    pub fn numeric(taus: &[Complex64], seed: u64, tolerance: f64) -> Self {
        Self {
            taus: taus.iter().map(|t| [t.re, t.im]).collect(),
            seed: Some(seed),
            tolerance: Some(tolerance),
            order: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    pub inputs: String,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MismatchRecord {
    pub pair: String,
    /// Absolute grade in quarter-powers of `q`.
    pub quarter_grade: i64,
    pub monomial: String,
    pub lhs: String,
    pub rhs: String,
}

impl MismatchRecord {
    pub fn new(pair: &str, m: &Mismatch) -> Self {
        Self {
            pair: pair.to_string(),
            quarter_grade: m.quarter_grade,
            monomial: m.monomial.to_string(),
            lhs: format_gaussian(&m.lhs),
            rhs: format_gaussian(&m.rhs),
        }
    }
}

/// Residual at one real nome of a limit identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrendPoint {
    pub q: f64,
    pub residual: f64,
}

/// Most failures kept per report; `failure_count` has the full number.
pub const MAX_RECORDED_FAILURES: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub id: IdentityId,
    pub mode: Mode,
    pub params: ReportParams,
    pub samples: usize,
    pub max_abs_residual: Option<f64>,
    pub certified_order: Option<i64>,
    pub status: Status,
    pub failure_count: usize,
    pub failures: Vec<FailureRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<MismatchRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub limit_trend: Vec<TrendPoint>,
}

impl IdentityReport {
    pub fn new(id: IdentityId, mode: Mode, params: ReportParams) -> Self {
        Self {
            id,
            mode,
            params,
            samples: 0,
            max_abs_residual: None,
            certified_order: None,
            status: Status::Fail,
            failure_count: 0,
            failures: Vec::new(),
            mismatch: None,
            limit_trend: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub(crate) fn push_failure(&mut self, f: FailureRecord) {
        self.failure_count += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(f);
        }
    }
}

pub fn reports_to_json(reports: &[IdentityReport]) -> Result<String> {
    serde_json::to_string_pretty(reports).map_err(|e| Error::Io(e.to_string()))
}

/// One row per report: `id, mode, samples, certified_order, max_abs_residual, status, failures`.
pub fn reports_to_csv(reports: &[IdentityReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record([
        "id",
        "mode",
        "samples",
        "certified_order",
        "max_abs_residual",
        "status",
        "failures",
    ])
    .map_err(io)?;
    for r in reports {
        let mode = match r.mode {
            Mode::Numeric => "numeric",
            Mode::Formal => "formal",
        };
        let status = if r.passed() { "pass" } else { "fail" };
        w.write_record([
            r.id.name(),
            mode.to_string(),
            r.samples.to_string(),
            r.certified_order.map(|o| o.to_string()).unwrap_or_default(),
            r.max_abs_residual
                .map(|x| format!("{x:e}"))
                .unwrap_or_default(),
            status.to_string(),
            r.failure_count.to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}
