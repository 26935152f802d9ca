//! Rendering of computation results in the three supported formats.
//!
//! All emitters are deterministic: identical inputs produce identical
//! bytes. JSON payloads carry a top-level `schema_version`; every
//! scalar is a `p/q` string so nothing is lost to floating point.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::curvature::{ComplexField, RicciReport};
use crate::scalar::Scalar;
use crate::trig::TrigField;
use crate::verify::VerificationReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!(
                "unknown format '{other}' (expected text, json, or csv)"
            )),
        }
    }
}

fn json_envelope(kind: &str, payload: Value) -> String {
    let mut root = serde_json::Map::new();
    root.insert("schema_version".to_string(), json!(SCHEMA_VERSION));
    root.insert("kind".to_string(), json!(kind));
    match payload {
        Value::Object(fields) => {
            for (k, v) in fields {
                root.insert(k, v);
            }
        }
        other => {
            root.insert("value".to_string(), other);
        }
    }
    let mut out = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
    out.push('\n');
    out
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("serializable")
}

/// CSV-escapes a cell: quotes are doubled and cells containing commas,
/// quotes, or newlines are wrapped in quotes.
fn csv_cell(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn csv_row(cells: &[String]) -> String {
    cells
        .iter()
        .map(|c| csv_cell(c))
        .collect::<Vec<_>>()
        .join(",")
}

/// Renders a real field. Text is the canonical display form; CSV has
/// one mode per row.
pub fn render_field(field: &TrigField, format: Format) -> String {
    match format {
        Format::Text => format!("{field}\n"),
        Format::Json => json_envelope("field", json!({ "terms": to_value(field) })),
        Format::Csv => {
            let mut out = String::from("mode,cos,sin\n");
            for (mode, cos, sin) in field.iter() {
                out.push_str(&csv_row(&[
                    mode.to_string(),
                    cos.to_string(),
                    sin.to_string(),
                ]));
                out.push('\n');
            }
            out
        }
    }
}

/// Renders a field over the signed complex basis; CSV has one index
/// per row with exact real and imaginary parts.
pub fn render_complex_field(field: &ComplexField, format: Format) -> String {
    match format {
        Format::Text => format!("{field}\n"),
        Format::Json => json_envelope("complex_field", json!({ "terms": to_value(field) })),
        Format::Csv => {
            let mut out = String::from("index,re,im\n");
            for (index, coeff) in field.iter() {
                out.push_str(&csv_row(&[
                    index.to_string(),
                    coeff.re.to_string(),
                    coeff.im.to_string(),
                ]));
                out.push('\n');
            }
            out
        }
    }
}

/// Renders a single exact value.
pub fn render_scalar(value: &Scalar, format: Format) -> String {
    match format {
        Format::Text => format!("{value}\n"),
        Format::Json => json_envelope("scalar", json!({ "value": to_value(value) })),
        Format::Csv => format!("value\n{}\n", csv_cell(&value.to_string())),
    }
}

/// Renders the Ricci report: headline values plus one row per cutoff.
pub fn render_ricci(report: &RicciReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "ricci trace at n = {} (c = {}, h = {})\n",
                report.n, report.c, report.h
            );
            out.push_str(&format!("  regularized: {}\n", report.regularized));
            out.push_str(&format!("  closed form: {}\n", report.closed_form));
            if !report.cutoffs.is_empty() {
                out.push_str("  cutoff  partial_sum  boundary_term\n");
                for row in &report.cutoffs {
                    out.push_str(&format!(
                        "  {:<6}  {:<11}  {}\n",
                        row.cutoff, row.partial_sum, row.boundary_term
                    ));
                }
            }
            out
        }
        Format::Json => json_envelope("ricci", to_value(report)),
        Format::Csv => {
            let mut out =
                String::from("n,c,h,regularized,closed_form,cutoff,partial_sum,boundary_term\n");
            let head = [
                report.n.to_string(),
                report.c.to_string(),
                report.h.to_string(),
                report.regularized.to_string(),
                report.closed_form.to_string(),
            ];
            if report.cutoffs.is_empty() {
                let mut cells = head.to_vec();
                cells.extend(["".to_string(), "".to_string(), "".to_string()]);
                out.push_str(&csv_row(&cells));
                out.push('\n');
            }
            for row in &report.cutoffs {
                let mut cells = head.to_vec();
                cells.push(row.cutoff.to_string());
                cells.push(row.partial_sum.to_string());
                cells.push(row.boundary_term.to_string());
                out.push_str(&csv_row(&cells));
                out.push('\n');
            }
            out
        }
    }
}

/// Renders a verification run: one line per check, then the notes,
/// then a summary line. The measured elapsed time is deliberately
/// omitted from every format.
pub fn render_verification(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "suite {} (c = {}, h = {}, max mode {})\n",
                report.suite, report.c, report.h, report.max_mode
            );
            for check in &report.checks {
                let status = if check.pass { "pass" } else { "FAIL" };
                out.push_str(&format!("  {status}  {} [{}]\n", check.name, check.range));
                if let Some(ex) = &check.counterexample {
                    out.push_str(&format!("        inputs: {}\n", ex.inputs.join(", ")));
                    out.push_str(&format!("        lhs: {}\n", ex.lhs));
                    out.push_str(&format!("        rhs: {}\n", ex.rhs));
                }
            }
            for note in &report.notes {
                out.push_str(&format!("  note  {note}\n"));
            }
            let failed = report.checks.iter().filter(|c| !c.pass).count();
            if failed == 0 {
                out.push_str(&format!("all {} checks passed\n", report.checks.len()));
            } else {
                out.push_str(&format!(
                    "{failed} of {} checks failed\n",
                    report.checks.len()
                ));
            }
            out
        }
        Format::Json => json_envelope("verification", to_value(report)),
        Format::Csv => {
            let mut out = String::from("check,range,status,inputs,lhs,rhs\n");
            for check in &report.checks {
                let (inputs, lhs, rhs) = match &check.counterexample {
                    Some(ex) => (ex.inputs.join("; "), ex.lhs.clone(), ex.rhs.clone()),
                    None => (String::new(), String::new(), String::new()),
                };
                out.push_str(&csv_row(&[
                    check.name.clone(),
                    check.range.clone(),
                    if check.pass { "pass" } else { "fail" }.to_string(),
                    inputs,
                    lhs,
                    rhs,
                ]));
                out.push('\n');
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::ricci_report;
    use crate::verify::{run_verify, Suite};
    use crate::virasoro::CentralParams;

    #[test]
    fn format_names_round_trip() {
        for name in ["text", "json", "csv"] {
            let f: Format = name.parse().unwrap();
            assert_eq!(f.to_string(), name);
        }
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn field_rendering() {
        let field: TrigField = "cos(1t) - 1/2*sin(3t)".parse().unwrap();
        assert_eq!(
            render_field(&field, Format::Text),
            "cos(1t) - 1/2*sin(3t)\n"
        );
        let csv = render_field(&field, Format::Csv);
        assert_eq!(csv, "mode,cos,sin\n1,1,0\n3,0,-1/2\n");
        let json = render_field(&field, Format::Json);
        assert!(json.contains("\"schema_version\": 1"));
        assert!(json.contains("\"-1/2\""));
    }

    #[test]
    fn scalar_rendering_is_exact() {
        let v = Scalar::new(-268, 27);
        assert_eq!(render_scalar(&v, Format::Text), "-268/27\n");
        assert_eq!(render_scalar(&v, Format::Csv), "value\n-268/27\n");
        assert!(render_scalar(&v, Format::Json).contains("\"-268/27\""));
    }

    #[test]
    fn ricci_json_has_expected_fields() {
        let p = CentralParams::cubic();
        let report = ricci_report(&p, 1, &[1, 4]).unwrap();
        let json = render_ricci(&report, Format::Json);
        assert!(json.contains("\"regularized\": \"-2\""));
        assert!(json.contains("\"closed_form\": \"-2\""));
        assert!(json.contains("\"schema_version\": 1"));
        let csv = render_ricci(&report, Format::Csv);
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "n,c,h,regularized,closed_form,cutoff,partial_sum,boundary_term"
        );
        assert_eq!(lines.next().unwrap(), "1,12,1/2,-2,-2,1,-25/8,9/8");
    }

    #[test]
    fn verification_rendering_is_deterministic() {
        let p = CentralParams::cubic();
        let a = run_verify(Suite::Ricci, &p, 4).unwrap();
        let b = run_verify(Suite::Ricci, &p, 4).unwrap();
        for format in [Format::Text, Format::Json, Format::Csv] {
            assert_eq!(
                render_verification(&a, format),
                render_verification(&b, format)
            );
        }
        let text = render_verification(&a, Format::Text);
        assert!(text.contains("pass"));
        assert!(text.ends_with("checks passed\n"));
    }

    #[test]
    fn csv_cells_with_commas_are_quoted() {
        assert_eq!(csv_cell("a,b"), "\"a,b\"");
        assert_eq!(csv_cell("plain"), "plain");
        assert_eq!(csv_cell("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}
