//! Command implementations behind the `heckelab` binary.

pub mod diagram;
pub mod report;

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use heckelab::rootdata::RootKind;
use heckelab::suites::{self, SuiteReport};
use heckelab::tables::{self, ComputedTable, GoldenTables, RegimeCertificate, Table};

/// Failures, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("UNRESOLVED: {0}")]
    Unresolved(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Unresolved(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}

pub fn parse_kinds(kind: Option<&str>) -> Result<Vec<RootKind>, CliError> {
    match kind {
        None => Ok(RootKind::ALL.to_vec()),
        Some(k) => Ok(vec![k.parse().map_err(|e: heckelab::rootdata::RootError| CliError::Input(e.to_string()))?]),
    }
}

#[derive(Serialize)]
struct TableJson<'a> {
    root_system: String,
    table: &'a Table,
    certificates: Vec<RegimeCertificate>,
    errata: Vec<String>,
    mismatches: Vec<[String; 4]>,
}

/// Output of `tables`: the rendered tables and the mismatch lines.
pub struct TablesOutput {
    pub text: String,
    pub mismatches: Vec<String>,
}

/// Renders computed tables (or the golden ones with `golden_only`) and lists
/// every cell that differs from the corrected golden table.
pub fn cmd_tables(kinds: &[RootKind], json: bool, golden_only: bool, printed: bool) -> Result<TablesOutput, CliError> {
    let g = tables::golden();
    let mut text = String::new();
    let mut mismatches = Vec::new();
    let mut docs = Vec::new();
    for &kind in kinds {
        let reference = if printed { g.table(kind).clone() } else { g.corrected(kind) };
        let (table, diff) = if golden_only {
            (reference.clone(), Vec::new())
        } else {
            let ct = tables::compute_table(kind, &g);
            for (r, c, e) in &ct.errors {
                if e.starts_with("UNRESOLVED") {
                    return Err(CliError::Unresolved(format!("{kind} {} / {}: {e}", reference.rows[*r].name, reference.columns[*c].label)));
                }
            }
            let diff = ct.mismatches(&reference);
            (ct.table, diff)
        };
        for (row, col, want, got) in &diff {
            mismatches.push(format!("MISMATCH {kind} {row} / {col}: golden {want}, computed {got}"));
        }
        if json {
            docs.push(serde_json::to_value(TableJson {
                root_system: kind.to_string(),
                certificates: tables::certify_columns(&table),
                errata: g.errata_for(kind).iter().map(|e| e.reason.clone()).collect(),
                mismatches: diff.iter().map(|(a, b, c, d)| [a.clone(), b.clone(), c.clone(), d.clone()]).collect(),
                table: &table,
            })
            .map_err(|e| CliError::Invariant(e.to_string()))?);
        } else {
            if !text.is_empty() {
                text.push('\n');
            }
            text.push_str(&tables::render(kind, &table));
        }
    }
    if json {
        text = serde_json::to_string_pretty(&docs).map_err(|e| CliError::Invariant(e.to_string()))? + "\n";
    }
    Ok(TablesOutput { text, mismatches })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Tau,
    Tables,
    All,
}

fn all_tables(g: &GoldenTables) -> Vec<ComputedTable> {
    RootKind::ALL.iter().map(|&k| tables::compute_table(k, g)).collect()
}

/// Runs the requested suites; returns the summary text and the reports.
pub fn cmd_verify(suite: Suite) -> Result<(String, Vec<SuiteReport>), CliError> {
    let g = tables::golden();
    let map = |e: heckelab::decomp::DecompError| match e {
        heckelab::decomp::DecompError::Unresolved(m) => CliError::Unresolved(m),
        other => CliError::Invariant(other.to_string()),
    };
    let mut reports = Vec::new();
    let need_tables = matches!(suite, Suite::Relations | Suite::Tables | Suite::All);
    let computed = if need_tables { all_tables(&g) } else { Vec::new() };
    if matches!(suite, Suite::Relations | Suite::All) {
        reports.push(suites::relation_suite(&g, &computed).map_err(map)?);
    }
    if matches!(suite, Suite::Tau | Suite::All) {
        reports.push(suites::tau_suite(&g).map_err(map)?);
    }
    if matches!(suite, Suite::Tables | Suite::All) {
        reports.push(suites::table_suite(&g, &computed));
    }
    let mut text = String::new();
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(text, "{status} {}: {} subjects, {} checks, {} failures", r.name, r.subjects, r.checks, r.failures.len());
        for f in &r.failures {
            let _ = writeln!(text, "  {f}");
        }
    }
    Ok((text, reports))
}
