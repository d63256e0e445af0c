//! Text and JSON rendering of report documents.

use std::fmt::Write;

use crate::command::{RenderedTable, ReportDocument};
use crate::error::{NearnessError, Result};
use crate::report::{ReportSection, WitnessEntry};
use crate::search::SearchSummary;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn render(doc: &ReportDocument, format: Format) -> String {
    match format {
        Format::Text => render_text(doc),
        Format::Json => render_json(doc),
    }
}

/// Pretty JSON with object keys in sorted order.
pub fn render_json(doc: &ReportDocument) -> String {
    let value = serde_json::to_value(doc).expect("report serializes");
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<ReportDocument> {
    serde_json::from_str(text).map_err(|e| NearnessError::at("report", e.to_string()))
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(", "))
}

fn witness(w: &WitnessEntry) -> String {
    match w {
        WitnessEntry::Element(x) => x.clone(),
        WitnessEntry::Set(s) => braces(s),
        WitnessEntry::Pairs(ps) => ps.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" "),
        WitnessEntry::Sets(ss) => ss.iter().map(|s| braces(s)).collect::<Vec<_>>().join(" "),
        WitnessEntry::Flag(b) => b.to_string(),
        WitnessEntry::Text(t) => t.clone(),
    }
}

fn section(out: &mut String, s: &ReportSection) {
    let status = if s.passed { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "== {} : {status}", s.subject);
    // Top-level checks first; embedded ones (prefix/id) after.
    let (top, nested): (Vec<_>, Vec<_>) = s.checks.iter().partition(|(id, _)| !id.contains('/'));
    for (id, c) in top.into_iter().chain(nested) {
        let kind = if c.required { "" } else { " (flag)" };
        let _ = write!(out, "  {id:<28} {}{kind}", c.verdict.label());
        if let Some(n) = &c.note {
            let _ = write!(out, "  [{n}]");
        }
        out.push('\n');
    }
    for (k, w) in &s.witnesses {
        let _ = writeln!(out, "  witness {k}: {}", witness(w));
    }
    for c in &s.counterexamples {
        let _ = writeln!(
            out,
            "  counterexample {}: ({}) -> ({}) {}",
            c.axiom,
            c.tuple.join(","),
            c.values.join(","),
            c.detail
        );
    }
    for a in &s.anomalies {
        let _ = writeln!(out, "  anomaly: {a}");
    }
}

/// Grid with the operation symbol in the corner, row = left operand.
pub fn table_text(t: &RenderedTable) -> String {
    let width = t
        .headers
        .iter()
        .chain(t.rows.iter().flat_map(|r| r.cells.iter().chain(std::iter::once(&r.header))))
        .chain(std::iter::once(&t.symbol))
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let pad = |s: &str| format!("{s:>width$}");
    let mut out = String::new();
    let _ = writeln!(out, "{}", t.name);
    let head: Vec<String> = t.headers.iter().map(|h| pad(h)).collect();
    let _ = writeln!(out, "  {} | {}", pad(&t.symbol), head.join(" "));
    let _ = writeln!(out, "  {}-+-{}", "-".repeat(width), "-".repeat(head.join(" ").chars().count()));
    for r in &t.rows {
        let cells: Vec<String> = r.cells.iter().map(|c| pad(c)).collect();
        let _ = writeln!(out, "  {} | {}", pad(&r.header), cells.join(" "));
    }
    out
}

fn search_text(out: &mut String, s: &SearchSummary) {
    let _ = writeln!(out, "search: size {} mode {}", s.size, s.mode);
    if let Some(seed) = s.seed {
        let _ = writeln!(out, "  seed {seed}");
    }
    if let Some(n) = s.samples {
        let _ = writeln!(out, "  samples {n}");
    }
    let _ = writeln!(out, "  feature assignments {}", s.feature_assignments);
    let _ = writeln!(out, "  table pairs {}", s.table_pairs);
    let _ = writeln!(out, "  found nearness rings (not ordinary) {}", s.found);
    let _ = writeln!(
        out,
        "  near groups: checked {}, found {}, several identities {}",
        s.near_groups.checked, s.near_groups.found, s.near_groups.several_identities
    );
    for t in &s.tallies {
        let _ = writeln!(
            out,
            "  features [{}] carrier {}: passing {}, ordinary {}, found {}",
            t.features.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","),
            braces(&t.carrier),
            t.passing,
            t.ordinary,
            t.found
        );
    }
    for (i, e) in s.examples.iter().enumerate() {
        let rows = |t: &Vec<Vec<String>>| t.iter().map(|r| r.join(" ")).collect::<Vec<_>>().join(" / ");
        let _ = writeln!(
            out,
            "  example {i}: features [{}] carrier {} add [{}] mul [{}]",
            e.features.join(","),
            braces(&e.carrier),
            rows(&e.add),
            rows(&e.mul)
        );
    }
}

pub fn render_text(doc: &ReportDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "nearness {}", doc.command.join(" "));
    for (k, v) in &doc.sets {
        let _ = writeln!(out, "{k} = {}", braces(v));
    }
    for (k, fam) in &doc.families {
        let parts: Vec<String> = fam.iter().map(|s| braces(s)).collect();
        let _ = writeln!(out, "{k} = {}", parts.join(" "));
    }
    for s in &doc.sections {
        section(&mut out, s);
    }
    for t in &doc.tables {
        out.push_str(&table_text(t));
    }
    for d in &doc.deviations {
        let _ = write!(out, "deviation {}: expected {} computed {}", d.subject, d.expected, d.computed);
        if let Some(n) = &d.note {
            let _ = write!(out, " ({n})");
        }
        out.push('\n');
    }
    for n in &doc.notes {
        let _ = writeln!(out, "note: {n}");
    }
    if let Some(s) = &doc.search {
        search_text(&mut out, s);
    } else if doc.sections.is_empty() {
        let _ = writeln!(out, "no checks requested");
    }
    let _ = writeln!(out, "result: {}", if doc.passed() { "pass" } else { "fail" });
    out
}
