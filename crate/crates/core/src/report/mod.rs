//! Analysis reports: the full battery of checks for one instance, rendered
//! as stable text or as a versioned JSON document.

mod analyze;
mod instance;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::verdict::{Support, Verdict};

pub use analyze::{analyze, Analyzable, AnalyzeOptions};
pub use instance::{germ_text, load_instance, msf_text, AnyInstance};

/// Version of the machine-readable report layout.
pub const SCHEMA_VERSION: u32 = 1;

/// The hypothesis of the simplicity criterion that cannot be checked here.
pub const CSTAR_CAVEAT: &str = "C*=C*_r";

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Holds { support: Support },
    /// Holds provided an assumption that is stated but not verified.
    HoldsModulo { support: Support, caveat: String },
    Fails,
    Unknown { bound: usize },
}

impl Status {
    pub fn of<W, C>(v: &Verdict<W, C>) -> Self {
        match v {
            Verdict::Holds { support, .. } => Status::Holds {
                support: support.clone(),
            },
            Verdict::Fails { .. } => Status::Fails,
            Verdict::Unknown { bound } => Status::Unknown { bound: *bound },
        }
    }

    /// `Holds` and `HoldsModulo`.
    pub fn is_holding(&self) -> bool {
        matches!(self, Status::Holds { .. } | Status::HoldsModulo { .. })
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Status::Fails)
    }

    pub fn render(&self) -> String {
        match self {
            Status::Holds { support } => format!("HOLDS ({support})"),
            Status::HoldsModulo { support, caveat } => format!("HOLDS modulo {caveat} ({support})"),
            Status::Fails => "FAILS".into(),
            Status::Unknown { bound } => format!("UNKNOWN at bound {bound}"),
        }
    }
}

/// One record of the report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Stable key, e.g. `condition_h`.
    pub id: String,
    /// Human-readable name, e.g. `condition (H)`.
    pub title: String,
    #[serde(flatten)]
    pub status: Status,
    /// Witnesses, counterexamples and sub-results, one per line.
    pub details: Vec<String>,
}

impl Check {
    pub fn new(id: &str, title: &str, status: Status) -> Self {
        Check {
            id: id.into(),
            title: title.into(),
            status,
            details: Vec::new(),
        }
    }

    pub fn detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }

    pub fn details(mut self, lines: impl IntoIterator<Item = String>) -> Self {
        self.details.extend(lines);
        self
    }
}

/// Elements of the core found during the scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreSummary {
    pub bound: usize,
    pub shortcut: Option<String>,
    pub inside: Vec<String>,
    pub outside: usize,
    pub undecided: usize,
    /// An element outside the core and an element whose ideal misses it.
    pub example_outside: Option<(String, String)>,
}

/// `MSF_g` for one group element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MsfRow {
    pub element: String,
    pub max_len: usize,
    pub words: Vec<String>,
    pub finiteness: Status,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub instance: String,
    pub description: String,
    pub depth: usize,
    pub ep_cap: usize,
    pub core: CoreSummary,
    pub checks: Vec<Check>,
    pub msf_tables: Vec<MsfRow>,
}

impl Report {
    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "machine" => Ok(Format::Machine),
            other => Err(Error::usage(format!("unknown format {other:?}; use text or machine"))),
        }
    }
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Machine => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
    }
}

/// Read a report back from its machine form.
pub fn parse_machine(s: &str) -> Result<Report> {
    let report: Report = serde_json::from_str(s).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))?;
    if report.schema_version != SCHEMA_VERSION {
        return Err(Error::usage(format!(
            "unsupported schema version {}",
            report.schema_version
        )));
    }
    Ok(report)
}

pub fn format_set(words: &[String]) -> String {
    if words.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", words.join(", "))
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "instance: {}", r.instance);
    let _ = writeln!(out, "description: {}", r.description);
    let _ = writeln!(out, "depth: {}, ep cap: {}", r.depth, r.ep_cap);
    let c = &r.core;
    let how = c.shortcut.as_deref().map_or(String::new(), |s| format!(", via {s}"));
    let _ = writeln!(
        out,
        "core (bound={}{how}): {} inside, {} outside, {} undecided",
        c.bound,
        c.inside.len(),
        c.outside,
        c.undecided
    );
    let _ = writeln!(out, "  inside: {}", format_set(&c.inside));
    if let Some((p, q)) = &c.example_outside {
        let _ = writeln!(out, "  outside: {p}, whose ideal misses that of {q}");
    }
    for check in &r.checks {
        let _ = writeln!(out, "{}: {}", check.title, check.status.render());
        for d in &check.details {
            let _ = writeln!(out, "  {d}");
        }
    }
    if !r.msf_tables.is_empty() {
        let _ = writeln!(out, "minimal strongly fixed words:");
        for row in &r.msf_tables {
            let _ = writeln!(
                out,
                "  MSF_{} (length ≤ {}) = {}: finiteness {}",
                row.element,
                row.max_len,
                format_set(&row.words),
                row.finiteness.render()
            );
            for d in &row.details {
                let _ = writeln!(out, "    {d}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_rendering() {
        assert_eq!(Status::Unknown { bound: 4 }.render(), "UNKNOWN at bound 4");
        let s = Status::Holds {
            support: Support::exact("MSF finiteness").at(6),
        };
        assert_eq!(s.render(), "HOLDS (bound=6, via MSF finiteness)");
        let s = Status::HoldsModulo {
            support: Support::exact("x"),
            caveat: CSTAR_CAVEAT.into(),
        };
        assert_eq!(s.render(), "HOLDS modulo C*=C*_r (exact, via x)");
    }

    #[test]
    fn formats() {
        assert_eq!("text".parse::<Format>().unwrap(), Format::Text);
        assert!("xml".parse::<Format>().is_err());
    }
}
