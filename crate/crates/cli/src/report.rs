use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Serialize)]
pub struct Bounds {
    pub homological: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictEntry {
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Output of one invocation, in the JSON shape printed by `--format json`.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub instance: String,
    pub bounds: Bounds,
    pub verdicts: Vec<VerdictEntry>,
    pub series: BTreeMap<String, Vec<i64>>,
    pub tables: BTreeMap<String, Value>,
    pub timing_ms: Option<u64>,
    /// Set when a property or identity fails; selects exit code 1.
    #[serde(skip)]
    pub failed: bool,
    /// Human-readable extras for `--format text`.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, instance: &str, bounds: Bounds) -> Self {
        Report {
            command: command.into(),
            instance: instance.into(),
            bounds,
            verdicts: Vec::new(),
            series: BTreeMap::new(),
            tables: BTreeMap::new(),
            timing_ms: None,
            failed: false,
            notes: Vec::new(),
        }
    }

    pub fn verdict(
        &mut self,
        name: &str,
        verdict: impl ToString,
        bound: Option<usize>,
        detail: Option<String>,
    ) {
        self.verdicts.push(VerdictEntry {
            name: name.into(),
            verdict: verdict.to_string(),
            bound,
            detail,
        });
    }

    pub fn table<T: Serialize>(&mut self, name: &str, value: &T) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.tables.insert(name.into(), v);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} on {} (D = {}, seed = {})",
            self.command, self.instance, self.bounds.homological, self.bounds.seed
        );
        for v in &self.verdicts {
            let _ = write!(out, "  {}: {}", v.name, v.verdict);
            if let Some(b) = v.bound {
                let _ = write!(out, " [D = {b}]");
            }
            if let Some(d) = &v.detail {
                let _ = write!(out, " ({d})");
            }
            out.push('\n');
        }
        for (name, coeffs) in &self.series {
            let _ = writeln!(out, "  {name}: {coeffs:?}");
        }
        for note in &self.notes {
            for line in note.lines() {
                let _ = writeln!(out, "  {line}");
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "  time: {ms} ms");
        }
        out
    }
}
