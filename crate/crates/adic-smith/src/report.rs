//! Reports and their JSON and table serializations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub passed: bool,
    pub values: BTreeMap<String, Value>,
}

impl Row {
    pub fn at(level: usize) -> Self {
        Self {
            level: Some(level),
            depth: None,
            passed: true,
            values: BTreeMap::new(),
        }
    }

    pub fn plain() -> Self {
        Self {
            level: None,
            depth: None,
            passed: true,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.values.insert(key.into(), v.into());
        self
    }

    pub fn passed(mut self, ok: bool) -> Self {
        self.passed = ok;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub level: Option<usize>,
    pub name: String,
    /// Matrix rows as element literals.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub passed: bool,
    /// Which levels or depths failed, and why.
    pub failures: Vec<String>,
    pub rows: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<Certificate>>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            params: BTreeMap::new(),
            passed: true,
            failures: Vec::new(),
            rows: Vec::new(),
            certificates: None,
        }
    }

    pub fn param(&mut self, key: &str, v: impl ToString) {
        self.params.insert(key.into(), v.to_string());
    }

    /// Appends a row; a failed row fails the report with `why`.
    pub fn push(&mut self, row: Row, why: impl FnOnce() -> String) {
        log::info!(
            "{} level={:?} depth={:?} passed={}",
            self.command,
            row.level,
            row.depth,
            row.passed
        );
        if !row.passed {
            self.passed = false;
            self.failures.push(why());
        }
        self.rows.push(row);
    }

    pub fn fail(&mut self, why: String) {
        self.passed = false;
        self.failures.push(why);
    }

    pub fn certify(&mut self, c: Certificate) {
        self.certificates.get_or_insert_with(Vec::new).push(c);
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(out, "  {k} = {v}");
        }
        let keys: BTreeSet<&String> = self.rows.iter().flat_map(|r| r.values.keys()).collect();
        let has_level = self.rows.iter().any(|r| r.level.is_some());
        let has_depth = self.rows.iter().any(|r| r.depth.is_some());
        let mut header: Vec<String> = Vec::new();
        if has_level {
            header.push("level".into());
        }
        if has_depth {
            header.push("depth".into());
        }
        header.push("passed".into());
        header.extend(keys.iter().map(|k| k.to_string()));
        let mut cells: Vec<Vec<String>> = vec![header];
        for r in &self.rows {
            let mut line = Vec::new();
            if has_level {
                line.push(r.level.map_or(String::new(), |l| l.to_string()));
            }
            if has_depth {
                line.push(r.depth.map_or(String::new(), |d| d.to_string()));
            }
            line.push(if r.passed { "yes" } else { "NO" }.into());
            for k in &keys {
                line.push(r.values.get(*k).map_or(String::new(), cell));
            }
            cells.push(line);
        }
        let widths: Vec<usize> = (0..cells[0].len())
            .map(|c| cells.iter().map(|l| l[c].chars().count()).max().unwrap_or(0))
            .collect();
        for line in &cells {
            let padded: Vec<String> = line
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        }
        if let Some(certs) = &self.certificates {
            let _ = writeln!(out, "certificates:");
            for c in certs {
                let rows: Vec<String> = c.matrix.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                let at = c.level.map_or(String::new(), |l| format!(" (level {l})"));
                let _ = writeln!(out, "  {}{at}: [{}]", c.name, rows.join(", "));
            }
        }
        let _ = writeln!(out, "verdict: {}", if self.passed { "PASS" } else { "FAIL" });
        for f in &self.failures {
            let _ = writeln!(out, "  failure: {f}");
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Bool(b) => if *b { "yes" } else { "no" }.into(),
        Value::Array(xs) => xs.iter().map(cell).collect::<Vec<_>>().join(" "),
        Value::Object(o) if o.contains_key("free") && o.contains_key("torsion") => {
            format!("free {} torsion [{}]", cell(&o["free"]), cell(&o["torsion"]).replace(' ', ", "))
        }
        other => other.to_string(),
    }
}
