//! Deterministic emission of posets, topologies and run reports as text,
//! JSON, or DOT.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use domcheck_core::poset::{ElementId, FinitePoset};
use domcheck_core::topology::FiniteTopology;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EmitFormat {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmitError {
    #[error("format `{format}` is not supported for {subject}")]
    UnsupportedFormat {
        format: &'static str,
        subject: &'static str,
    },
}

fn format_label(f: EmitFormat) -> &'static str {
    match f {
        EmitFormat::Text => "text",
        EmitFormat::Json => "json",
        EmitFormat::Dot => "dot",
    }
}

/// Cover pairs `(lo, hi)` of a finite poset, in index order.
pub fn cover_pairs(p: &FinitePoset) -> Vec<(ElementId, ElementId)> {
    let mut covers = Vec::new();
    for x in p.elements() {
        for y in p.elements() {
            if !p.lt(x, y) {
                continue;
            }
            let between = p.elements().any(|z| p.lt(x, z) && p.lt(z, y));
            if !between {
                covers.push((x, y));
            }
        }
    }
    covers
}

/// Emits a poset in the requested format. Text output is in the document
/// grammar, so it parses back; DOT lists covers as `lower -> upper` edges.
pub fn emit_poset(name: &str, p: &FinitePoset, format: EmitFormat) -> Result<String, EmitError> {
    let covers = cover_pairs(p);
    match format {
        EmitFormat::Text => {
            let mut out = format!("poset {name}\n");
            for x in p.elements() {
                out.push_str(&format!("elem {}\n", p.name(x)));
            }
            for (lo, hi) in covers {
                out.push_str(&format!("cover {} {}\n", p.name(lo), p.name(hi)));
            }
            Ok(out)
        }
        EmitFormat::Json => {
            let value = serde_json::json!({
                "name": name,
                "elements": p.names(),
                "covers": covers
                    .iter()
                    .map(|(lo, hi)| vec![p.name(*lo), p.name(*hi)])
                    .collect::<Vec<_>>(),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("static json")))
        }
        EmitFormat::Dot => {
            let mut out = format!("digraph {name} {{\n  rankdir=BT;\n");
            for x in p.elements() {
                out.push_str(&format!("  \"{}\";\n", p.name(x)));
            }
            for (lo, hi) in covers {
                out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.name(lo), p.name(hi)));
            }
            out.push_str("}\n");
            Ok(out)
        }
    }
}

/// Emits a topology as text or JSON; DOT does not apply to open families.
pub fn emit_topology(t: &FiniteTopology, format: EmitFormat) -> Result<String, EmitError> {
    let render = |s: &domcheck_core::Subset| -> Vec<String> {
        s.iter().map(|x| t.names()[x.0].clone()).collect()
    };
    match format {
        EmitFormat::Text => {
            let mut out = format!(
                "topology {} on {} points, {} opens\n",
                t.kind().label(),
                t.carrier_size(),
                t.opens().len()
            );
            for o in t.opens() {
                out.push_str(&format!("open {{{}}}\n", render(o).join(", ")));
            }
            Ok(out)
        }
        EmitFormat::Json => {
            let value = serde_json::json!({
                "kind": t.kind().label(),
                "carrier": t.names(),
                "opens": t.opens().iter().map(render).collect::<Vec<_>>(),
            });
            Ok(format!("{}\n", serde_json::to_string_pretty(&value).expect("static json")))
        }
        EmitFormat::Dot => Err(EmitError::UnsupportedFormat {
            format: format_label(format),
            subject: "topologies",
        }),
    }
}

/// One check outcome inside a run report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: String,
    /// `pass` / `fail` for assertions; `holds` / `fails` / `unknown` for
    /// model verdicts (data, not failures); `not-applicable` for skipped
    /// structural premises.
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub millis: u64,
}

/// Aggregated result of one suite run.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RunReport {
    pub version: String,
    pub input_digest: String,
    pub checks: Vec<CheckOutcome>,
}

impl RunReport {
    pub fn new(input_digest: String) -> RunReport {
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest,
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, id: String, outcome: &str, witness: Option<String>, millis: u64) {
        self.checks.push(CheckOutcome {
            id,
            outcome: outcome.to_string(),
            witness,
            millis,
        });
    }

    /// Only `fail` counts: model verdicts are results, not failures.
    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.outcome == "fail")
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }
}

/// Emits a run report as text or JSON.
pub fn emit_report(report: &RunReport, format: EmitFormat) -> Result<String, EmitError> {
    match format {
        EmitFormat::Text => {
            let mut out = String::new();
            for c in &report.checks {
                out.push_str(&format!("{:<6} {}", c.outcome.to_uppercase(), c.id));
                if let Some(w) = &c.witness {
                    out.push_str(&format!("  [{w}]"));
                }
                out.push('\n');
            }
            let failures = report.checks.iter().filter(|c| c.outcome == "fail").count();
            out.push_str(&format!(
                "{} checks, {} failed (digest {})\n",
                report.checks.len(),
                failures,
                &report.input_digest[..12.min(report.input_digest.len())]
            ));
            Ok(out)
        }
        EmitFormat::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(report).expect("report serializes")
        )),
        EmitFormat::Dot => Err(EmitError::UnsupportedFormat {
            format: format_label(format),
            subject: "run reports",
        }),
    }
}

/// Hex SHA-256 of the raw input bytes, used as the report digest.
pub fn input_digest(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doc::parse_poset_text;

    #[test]
    fn dot_output_lists_cover_edges() {
        let p = FinitePoset::two_atoms();
        let dot = emit_poset("V", &p, EmitFormat::Dot).unwrap();
        assert!(dot.contains("\"0\" -> \"a1\";"));
        assert!(dot.contains("\"0\" -> \"a2\";"));
        assert!(!dot.contains("\"a1\" -> \"a2\""));
    }

    #[test]
    fn text_round_trips_through_the_parser() {
        let p = FinitePoset::diamond();
        let text = emit_poset("D", &p, EmitFormat::Text).unwrap();
        let doc = parse_poset_text(&text).unwrap();
        let q = &doc.primary().unwrap().poset;
        assert_eq!(q.names(), p.names());
        assert!(q.same_order(&p));
    }

    #[test]
    fn emission_is_deterministic() {
        let p = FinitePoset::m3();
        for format in [EmitFormat::Text, EmitFormat::Json, EmitFormat::Dot] {
            assert_eq!(
                emit_poset("M", &p, format).unwrap(),
                emit_poset("M", &p, format).unwrap()
            );
        }
    }

    #[test]
    fn empty_report_serializes_with_empty_checks() {
        let report = RunReport::new(input_digest(b""));
        let json = emit_report(&report, EmitFormat::Json).unwrap();
        let parsed: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
        assert!(parsed.checks.is_empty());
    }

    #[test]
    fn report_round_trips_losslessly() {
        let mut report = RunReport::new(input_digest(b"fixture"));
        report.push("a.check".into(), "pass", None, 3);
        report.push("b.check".into(), "fails", Some("witness".into()), 0);
        let json = emit_report(&report, EmitFormat::Json).unwrap();
        let parsed: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, report);
        assert!(!report.failed());
    }

    #[test]
    fn unsupported_formats_error() {
        let p = FinitePoset::chain(2);
        let t = domcheck_core::topology::generate_topology(
            &p,
            domcheck_core::topology::TopologyKind::Scott,
        );
        assert!(emit_topology(&t, EmitFormat::Dot).is_err());
    }
}
