use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    /// Human-readable detail lines for text output.
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
            witness: None,
            data: None,
            lines: Vec::new(),
        }
    }

    pub fn witness<T: Serialize>(mut self, w: Option<T>) -> Self {
        self.witness = w.map(|w| to_value(&w));
        self
    }

    pub fn data<T: Serialize>(mut self, d: &T) -> Self {
        self.data = Some(to_value(d));
        self
    }

    pub fn lines<I: IntoIterator<Item = String>>(mut self, lines: I) -> Self {
        self.lines.extend(lines);
        self
    }
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<String>,
    pub checks: Vec<Check>,
    pub version: &'static str,
}

impl Report {
    pub fn new(command: &str, n: usize) -> Self {
        Self {
            command: command.to_string(),
            n,
            regime: None,
            checks: Vec::new(),
            version: VERSION,
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} N={}", self.command, self.n);
        if let Some(r) = &self.regime {
            let _ = write!(out, " regime={r}");
        }
        out.push('\n');
        for c in &self.checks {
            let _ = writeln!(out, "{} {}", if c.pass { "PASS" } else { "FAIL" }, c.name);
            for l in &c.lines {
                let _ = writeln!(out, "    {l}");
            }
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    witness: {w}");
            }
        }
        let _ = writeln!(
            out,
            "{}",
            if self.pass() {
                "all checks passed"
            } else {
                "some checks failed"
            }
        );
        out
    }
}

/// One row of the real-form table.
#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub spec: Value,
    pub label: Option<String>,
    pub signature: Option<[usize; 2]>,
    #[serde(skip)]
    pub spec_text: String,
    #[serde(skip)]
    pub members: usize,
}

pub fn table_text(rows: &[TableRow]) -> String {
    let mut out = String::new();
    for r in rows {
        let sig = r
            .signature
            .map(|[p, m]| format!("({p},{m})"))
            .unwrap_or_else(|| "-".into());
        let label = r.label.as_deref().unwrap_or("?");
        let _ = writeln!(out, "{label:<10} {sig:<8} {:>3}  {}", r.members, r.spec_text);
    }
    let _ = writeln!(out, "{} real forms", rows.len());
    out
}
