use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub value: Value,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub config: Value,
    pub verdicts: Vec<Verdict>,
    pub tables: BTreeMap<String, Value>,
    pub timing_ms: Option<u64>,
    pub version: String,
    /// Outcome driving the exit code.
    #[serde(skip)]
    pub outcome: bool,
    /// Preformatted diagrams for the m2 layout.
    #[serde(skip)]
    pub diagrams: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, config: Value) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            config,
            verdicts: Vec::new(),
            tables: BTreeMap::new(),
            timing_ms: None,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outcome: true,
            diagrams: Vec::new(),
        }
    }

    pub fn verdict(&mut self, name: &str, value: impl Serialize, provenance: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            value: serde_json::to_value(value).expect("serializable verdict"),
            provenance: provenance.into(),
        });
        self
    }

    pub fn table(&mut self, name: &str, value: impl Serialize) -> &mut Self {
        self.tables
            .insert(name.to_string(), serde_json::to_value(value).expect("serializable table"));
        self
    }

    pub fn diagram(&mut self, name: &str, text: String) -> &mut Self {
        self.diagrams.push((name.to_string(), text));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# {}\n\n", self.command);
        if let Value::Object(cfg) = &self.config {
            out.push_str("| option | value |\n|---|---|\n");
            for (k, v) in cfg {
                if !v.is_null() {
                    let _ = writeln!(out, "| {k} | {} |", inline(v));
                }
            }
            out.push('\n');
        }
        out.push_str("| verdict | value | provenance |\n|---|---|---|\n");
        for v in &self.verdicts {
            let _ = writeln!(out, "| {} | {} | {} |", v.name, inline(&v.value), v.provenance);
        }
        for (name, text) in &self.diagrams {
            let _ = write!(out, "\n## {name}\n\n```\n{text}```\n");
        }
        for (name, t) in &self.tables {
            if self.diagrams.iter().any(|(d, _)| d == name) {
                continue;
            }
            let _ = write!(
                out,
                "\n## {name}\n\n```json\n{}\n```\n",
                serde_json::to_string_pretty(t).unwrap()
            );
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "\ntiming: {ms} ms");
        }
        let _ = writeln!(out, "\nversion {}", self.version);
        out
    }

    /// Diagrams verbatim, then one `name: value` line per verdict.
    pub fn to_m2(&self) -> String {
        let mut out = String::new();
        for (_, text) in &self.diagrams {
            out.push_str(text);
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "-- {}: {}", v.name, inline(&v.value));
        }
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace('|', "\\|"),
        other => other.to_string().replace('|', "\\|"),
    }
}
