//! Serialized report documents and the plain-text rendering.

use std::fmt::Write as _;

use ellhyp_core::catalog::Identity;
use ellhyp_core::params::{Shape, Size};
use ellhyp_core::verifier::VerificationReport;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub command: String,
    pub identity: Option<String>,
    pub suite: Option<String>,
    pub check: Option<String>,
    pub trials: Option<usize>,
    pub seed: u64,
    pub precision_bits: usize,
    pub nome_magnitude: f64,
    /// Explicit tolerance, or `None` for the per-precision default.
    pub tolerance: Option<String>,
    pub timing: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShapeJson {
    pub rank: usize,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub total: Option<usize>,
    #[serde(rename = "m", skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<Vec<usize>>,
}

impl From<&Shape> for ShapeJson {
    fn from(s: &Shape) -> Self {
        let (total, bounds) = match &s.size {
            Size::Unsized => (None, None),
            Size::Total(n) => (Some(*n), None),
            Size::Bounds(m) => (None, Some(m.entries().to_vec())),
        };
        ShapeJson { rank: s.rank, total, bounds }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub descriptor_id: String,
    pub shape: ShapeJson,
    pub trials: usize,
    pub seed: u64,
    pub precision_bits: usize,
    pub tolerance: String,
    /// Every digit of the binary value, in decimal.
    pub max_residual: String,
    pub passed: bool,
    pub p_zero: bool,
    pub wall_time_ms: f64,
    pub errors: Vec<String>,
}

impl ReportJson {
    pub fn new(r: &VerificationReport, timing: bool) -> Self {
        ReportJson {
            descriptor_id: r.descriptor_id.clone(),
            shape: (&r.shape).into(),
            trials: r.trials,
            seed: r.seed,
            precision_bits: r.precision_bits,
            tolerance: r.tolerance.to_decimal_string(),
            max_residual: r.max_residual.to_decimal_string(),
            passed: r.passed,
            p_zero: r.p_zero,
            wall_time_ms: if timing { r.wall_time_ns as f64 / 1e6 } else { 0.0 },
            errors: r.errors.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub version: String,
    pub config: ConfigEcho,
    pub passed: bool,
    pub reports: Vec<ReportJson>,
}

impl Document {
    pub fn new(config: ConfigEcho, reports: &[VerificationReport]) -> Self {
        let timing = config.timing;
        Document {
            version: FORMAT_VERSION.into(),
            passed: reports.iter().all(|r| r.passed),
            config,
            reports: reports.iter().map(|r| ReportJson::new(r, timing)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let shape = shape_label(&r.shape);
            let _ = write!(
                out,
                "{} {:<28} {:<16} trials={:<3} max={} tol={}",
                if r.passed { "PASS" } else { "FAIL" },
                r.descriptor_id,
                shape,
                r.trials,
                short(&r.max_residual),
                short(&r.tolerance),
            );
            if r.p_zero {
                out.push_str(" p=0");
            }
            if self.config.timing {
                let _ = write!(out, " {:.1}ms", r.wall_time_ms);
            }
            out.push('\n');
            for e in &r.errors {
                let _ = writeln!(out, "    {e}");
            }
        }
        let passed = self.reports.iter().filter(|r| r.passed).count();
        let _ = writeln!(out, "{passed}/{} reports passed", self.reports.len());
        out
    }
}

fn shape_label(s: &ShapeJson) -> String {
    match (&s.total, &s.bounds) {
        (Some(n), _) => format!("n={},N={n}", s.rank),
        (_, Some(m)) => {
            let m: Vec<String> = m.iter().map(|v| v.to_string()).collect();
            format!("n={},m=({})", s.rank, m.join(","))
        }
        _ => format!("n={}", s.rank),
    }
}

/// A full-precision decimal shortened to four significant digits.
pub fn short(decimal: &str) -> String {
    match decimal.parse::<f64>() {
        Ok(0.0) => "0".into(),
        Ok(v) if v.is_finite() => format!("{v:.3e}"),
        _ => decimal.to_string(),
    }
}

#[derive(Serialize)]
struct ListEntry {
    id: &'static str,
    family: String,
    domain: String,
    summary: &'static str,
}

pub fn list_json(ids: &[&dyn Identity]) -> String {
    let entries: Vec<ListEntry> = ids
        .iter()
        .map(|d| ListEntry {
            id: d.id(),
            family: d.family().to_string(),
            domain: d.domain_kind().to_string(),
            summary: d.summary(),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&serde_json::json!({ "version": FORMAT_VERSION, "identities": entries }))
        .expect("listing serializes");
    s.push('\n');
    s
}

pub fn list_text(ids: &[&dyn Identity]) -> String {
    let mut out = String::new();
    for d in ids {
        let _ = writeln!(out, "{:<26} {:<17} {:<14} {}", d.id(), d.family(), d.domain_kind(), d.summary());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ellhyp_core::lattice::MultiIndex;

    #[test]
    fn shortened_decimals() {
        assert_eq!(short("0"), "0");
        assert_eq!(short("1.5e-40"), "1.500e-40");
        assert_eq!(short("NaN"), "NaN");
    }

    #[test]
    fn shape_labels_match_core_display() {
        for s in [Shape::rank_only(2), Shape::total(3, 1), Shape::bounds(MultiIndex::new(vec![1, 2]))] {
            assert_eq!(shape_label(&(&s).into()), s.to_string());
        }
    }
}
