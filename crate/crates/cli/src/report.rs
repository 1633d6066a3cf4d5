use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "error")]
    Error,
    #[serde(rename = "FAILED")]
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResultValue {
    Integer(i64),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OracleValue {
    Finite(u64),
    Inconclusive(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRecord {
    pub label: String,
    pub ideal: String,
    pub colength: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_colength: Option<OracleValue>,
}

impl ProvenanceRecord {
    pub fn agrees(&self) -> bool {
        self.oracle_colength.as_ref().is_none_or(|o| *o == OracleValue::Finite(self.colength))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub status: Status,
    pub result: Option<ResultValue>,
    pub error: Option<String>,
    pub provenance: Vec<ProvenanceRecord>,
    pub details: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<String>>>,
    pub seed: u64,
    pub oracle_checked: bool,
    pub timing_ms: u64,
}

impl Report {
    pub fn new(task: impl Into<String>, seed: u64) -> Self {
        Report {
            task: task.into(),
            status: Status::Ok,
            result: None,
            error: None,
            provenance: Vec::new(),
            details: BTreeMap::new(),
            gram: None,
            seed,
            oracle_checked: false,
            timing_ms: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => emit_text(r),
    }
}

fn emit_text(r: &Report) -> String {
    let mut s = String::new();
    let status = match r.status {
        Status::Ok => "ok",
        Status::Error => "error",
        Status::Failed => "FAILED",
    };
    let _ = writeln!(s, "task: {}", r.task);
    let _ = writeln!(s, "status: {status}");
    match &r.result {
        Some(ResultValue::Integer(v)) => {
            let _ = writeln!(s, "index = {v}");
        }
        Some(ResultValue::Matrix(m)) => {
            let _ = writeln!(s, "matrix =");
            for row in m {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>4}")).collect();
                let _ = writeln!(s, "  [{}]", cells.join(""));
            }
        }
        None => {}
    }
    if let Some(e) = &r.error {
        let _ = writeln!(s, "error: {e}");
    }
    if !r.provenance.is_empty() {
        let _ = writeln!(s, "provenance:");
        for p in &r.provenance {
            let oracle = match &p.oracle_colength {
                Some(OracleValue::Finite(v)) => format!("  oracle {v}"),
                Some(OracleValue::Inconclusive(t)) => format!("  oracle {t}"),
                None => String::new(),
            };
            let mark = if p.agrees() { "" } else { "  MISMATCH" };
            let _ = writeln!(s, "  {}: colength {}{oracle}{mark}  {}", p.label, p.colength, p.ideal);
        }
    }
    for (k, v) in &r.details {
        let _ = writeln!(s, "{k}: {v}");
    }
    if let Some(g) = &r.gram {
        let _ = writeln!(s, "gram:");
        for row in g {
            let _ = writeln!(s, "  [{}]", row.join(", "));
        }
    }
    let _ = writeln!(s, "seed: {}", r.seed);
    let _ = writeln!(s, "oracle_checked: {}", r.oracle_checked);
    let _ = writeln!(s, "timing_ms: {}", r.timing_ms);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("gsv V w", 7);
        r.result = Some(ResultValue::Integer(2));
        r.provenance.push(ProvenanceRecord {
            label: "I_GSV".into(),
            ideal: "(x, y)".into(),
            colength: 2,
            oracle_colength: Some(OracleValue::Finite(2)),
        });
        r.details.insert("n".into(), "2".into());
        r.oracle_checked = true;
        r
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let back: Report = serde_json::from_str(&emit_report(&r, Format::Json)).unwrap();
        assert_eq!(back, r);
        let mut m = Report::new("mobius", 0);
        m.result = Some(ResultValue::Matrix(vec![vec![1, -3], vec![0, 1]]));
        m.provenance.push(ProvenanceRecord {
            label: "x".into(),
            ideal: "(x)".into(),
            colength: 1,
            oracle_colength: Some(OracleValue::Inconclusive("inconclusive at cap 4".into())),
        });
        let back: Report = serde_json::from_str(&emit_report(&m, Format::Json)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn text_contains_index_line() {
        let t = emit_report(&sample(), Format::Text);
        assert!(t.contains("index = 2\n"));
        assert!(t.contains("oracle 2"));
    }
}
