//! Report documents for a check run: a human text table and a versioned,
//! deterministic JSON tree (no timing fields).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::checks::{CheckReport, Verdict};
use crate::error::Result;
use crate::quotient::Quotient;

/// Version of the machine report layout.
pub const REPORT_VERSION: u32 = 1;

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DimRow {
    pub degree: usize,
    pub ambient: usize,
    pub ideal: usize,
    pub quotient: usize,
}

/// `n -> (d^n, dim J_n, dim A^n)` for `n = 0..=max_degree`.
pub fn dimension_table(q: &Quotient, max_degree: usize) -> Result<Vec<DimRow>> {
    Ok(q.dimension_table(max_degree)?
        .into_iter()
        .map(|(degree, ambient, ideal, quotient)| DimRow {
            degree,
            ambient,
            ideal,
            quotient,
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Overall {
    Pass,
    /// Nothing failed but at least one check was skipped.
    PassWithSkips,
    Fail,
}

impl Overall {
    pub fn of(checks: &[CheckReport]) -> Overall {
        if checks.iter().any(|c| c.failed()) {
            Overall::Fail
        } else if checks.iter().any(|c| c.skipped()) {
            Overall::PassWithSkips
        } else {
            Overall::Pass
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Overall::Pass => "pass",
            Overall::PassWithSkips => "pass-with-skips",
            Overall::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReportDocument {
    pub tool_version: String,
    pub input_digest: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<CheckReport>,
    /// `Err` carries the reason the table could not be built.
    pub dims: std::result::Result<Vec<DimRow>, String>,
}

impl ReportDocument {
    pub fn overall(&self) -> Overall {
        Overall::of(&self.checks)
    }

    pub fn machine(&self) -> String {
        let checks: Vec<Value> = self.checks.iter().map(check_json).collect();
        let dims = match &self.dims {
            Ok(rows) => Value::Array(
                rows.iter()
                    .map(|r| json!({"degree": r.degree, "ambient": r.ambient, "ideal": r.ideal, "quotient": r.quotient}))
                    .collect(),
            ),
            Err(m) => json!({"skipped": m}),
        };
        let doc = json!({
            "report_version": REPORT_VERSION,
            "tool_version": self.tool_version,
            "input_digest": self.input_digest,
            "config": self.config,
            "checks": checks,
            "dimensions": dims,
            "overall": self.overall().label(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "twistwick {}  input sha256 {}", self.tool_version, self.input_digest);
        let cfg: Vec<String> = self.config.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(s, "config: {}", cfg.join(" "));
        let _ = writeln!(s);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let _ = writeln!(
                s,
                "  {:<width$}  {:<21} {:>9.3} ms",
                c.name,
                c.verdict.label(),
                c.elapsed.as_secs_f64() * 1e3
            );
            if let Verdict::Skipped { message, .. } = &c.verdict {
                let _ = writeln!(s, "      {message}");
            }
            if let Some(w) = &c.witness {
                let labels: Vec<String> = w.labels.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let _ = writeln!(s, "      witness input: {}", w.input);
                if !labels.is_empty() {
                    let _ = writeln!(s, "      labels: {}", labels.join(" "));
                }
                let _ = writeln!(s, "      residual: {}", w.residual);
            }
        }
        let _ = writeln!(s);
        match &self.dims {
            Ok(rows) => {
                let _ = writeln!(s, "  {:>3}  {:>8}  {:>8}  {:>8}", "n", "d^n", "dim J_n", "dim A_n");
                for r in rows {
                    let _ = writeln!(s, "  {:>3}  {:>8}  {:>8}  {:>8}", r.degree, r.ambient, r.ideal, r.quotient);
                }
            }
            Err(m) => {
                let _ = writeln!(s, "  dimension table skipped: {m}");
            }
        }
        let _ = writeln!(s);
        let _ = writeln!(s, "overall: {}", self.overall().label());
        s
    }
}

fn check_json(c: &CheckReport) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), json!(c.name));
    m.insert("verdict".into(), json!(c.verdict.label()));
    if let Verdict::Skipped { message, .. } = &c.verdict {
        m.insert("skip_message".into(), json!(message));
    }
    m.insert("params".into(), json!(c.params));
    m.insert("details".into(), json!(c.details));
    if let Some(w) = &c.witness {
        m.insert(
            "witness".into(),
            json!({
                "input": w.input.to_string(),
                "input_signature": w.input.signature().to_string(),
                "labels": w.labels,
                "residual": w.residual.to_string(),
            }),
        );
    }
    if let Some(sol) = &c.solution {
        let cols: Vec<Value> = sol
            .iter()
            .map(|(x, a)| json!({"input": x.to_string(), "image": a.to_string()}))
            .collect();
        m.insert("solution".into(), Value::Array(cols));
    }
    Value::Object(m)
}
