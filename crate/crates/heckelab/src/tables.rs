//! The composition-factor tables, as golden data and as recomputation.
//!
//! A table has one row per inventory family and one column per `q`-regime.
//! Each regime is realized at a concrete root of unity; the realization map is
//! part of the fixture, not of the code.  A cell lists the dimensions of the
//! pairwise non-isomorphic composition factors of `M(t)` in ascending order,
//! or is `N/A` when the row's character lies in the orbit of an earlier row at
//! that `q`.  Some rows are realized by a different representative at a
//! particular `q` (an *override*): there the printed name stops describing a
//! separate orbit and the table lists the orbit the representative moves to.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::decomp::{composition_factors, specialize, Decomposition, DecompError, Setting};
use crate::rootdata::{RootKind, RootSystem};
use crate::scalars::{Ctx, FieldContext, Param};
use crate::weights::{self, WeightPoint};

const GOLDEN_JSON: &str = include_str!("../data/golden_tables.json");

/// Marker used in fixtures and rendered tables for alias cells.
pub const NOT_APPLICABLE: &str = "N/A";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Column {
    pub label: String,
    /// The order `n` of the root of unity `q = ζ_n` realizing the regime.
    pub zeta: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub name: String,
    pub cells: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub columns: Vec<Column>,
    /// The exponents `k` of the regime predicates `q^k = 1` for this type.
    pub predicates: Vec<u32>,
    pub rows: Vec<Row>,
}

/// A row realized by another representative at one `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Override {
    #[serde(rename = "type")]
    pub kind: String,
    pub zeta: u32,
    pub row: String,
    /// Simple-root values `a1=..,a2=..` of the representative.
    pub realize: String,
}

/// A correction to the printed table: the cells of two rows are exchanged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    #[serde(rename = "type")]
    pub kind: String,
    pub swap_rows: [String; 2],
    pub reason: String,
}

/// At one `q`, `row` is listed as `N/A` in favour of the (possibly later)
/// row `to`, whose orbit contains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deferral {
    #[serde(rename = "type")]
    pub kind: String,
    pub zeta: u32,
    pub row: String,
    pub to: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTables {
    pub version: u32,
    /// The tables exactly as printed.
    pub tables: BTreeMap<String, Table>,
    pub overrides: Vec<Override>,
    #[serde(default)]
    pub errata: Vec<Erratum>,
    #[serde(default)]
    pub deferrals: Vec<Deferral>,
}

fn same_name(a: &str, b: &str) -> bool {
    weights::normalize_name(a) == weights::normalize_name(b)
}

impl GoldenTables {
    /// The table as printed.
    pub fn table(&self, kind: RootKind) -> &Table {
        &self.tables[&kind.to_string()]
    }

    /// The printed table with the errata applied; this is what computation
    /// is compared against.
    pub fn corrected(&self, kind: RootKind) -> Table {
        let mut t = self.table(kind).clone();
        for e in self.errata.iter().filter(|e| e.kind == kind.to_string()) {
            let a = t.rows.iter().position(|r| same_name(&r.name, &e.swap_rows[0])).expect("erratum row");
            let b = t.rows.iter().position(|r| same_name(&r.name, &e.swap_rows[1])).expect("erratum row");
            let cells = t.rows[a].cells.clone();
            t.rows[a].cells = std::mem::replace(&mut t.rows[b].cells, cells);
        }
        t
    }

    pub fn errata_for(&self, kind: RootKind) -> Vec<&Erratum> {
        self.errata.iter().filter(|e| e.kind == kind.to_string()).collect()
    }

    fn deferral(&self, kind: RootKind, zeta: u32, row: &str) -> Option<&Deferral> {
        self.deferrals.iter().find(|d| d.kind == kind.to_string() && d.zeta == zeta && same_name(&d.row, row))
    }

    pub fn override_for(&self, kind: RootKind, zeta: u32, row: &str) -> Option<&Override> {
        self.overrides.iter().find(|o| o.kind == kind.to_string() && o.zeta == zeta && same_name(&o.row, row))
    }
}

/// The embedded golden fixture.
pub fn golden() -> GoldenTables {
    serde_json::from_str(GOLDEN_JSON).expect("embedded golden tables are valid JSON")
}

/// Which regime predicates `q^k = 1` hold at `q = ζ_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeCertificate {
    pub zeta: u32,
    /// `(k, q^k = 1)` for each predicate of the type.
    pub predicates: Vec<(u32, bool)>,
}

impl RegimeCertificate {
    pub fn new(zeta: u32, predicates: &[u32]) -> Self {
        RegimeCertificate { zeta, predicates: predicates.iter().map(|&k| (k, k % zeta == 0)).collect() }
    }

    /// The smallest `k` with `q^k = 1` among the predicates, if any.
    pub fn strongest(&self) -> Option<u32> {
        self.predicates.iter().filter(|p| p.1).map(|p| p.0).min()
    }
}

/// The regime certificates of a table's columns.  Each column must be
/// distinguished from the others by the predicates that hold, and the first
/// column by none holding.
pub fn certify_columns(table: &Table) -> Vec<RegimeCertificate> {
    table.columns.iter().map(|c| RegimeCertificate::new(c.zeta, &table.predicates)).collect()
}

/// What was computed for one cell.
#[derive(Clone, Debug)]
pub struct CellOutcome {
    pub row: usize,
    pub column: usize,
    /// Rendered cell (`N/A` or the ascending class dimensions).
    pub cell: String,
    /// The earlier row whose orbit contains this one, for `N/A` cells.
    pub alias_of: Option<String>,
    /// Simple-root values of the representative, when overridden.
    pub realized_as: Option<String>,
    pub decomposition: Option<Decomposition>,
    pub seconds: f64,
}

fn context_for(kind: RootKind, zeta: u32) -> Ctx {
    let params: Vec<Param> = weights::inventory(kind).iter().flat_map(|f| f.params()).fold(Vec::new(), |mut acc, p| {
        if !acc.contains(&p) {
            acc.push(p);
        }
        acc
    });
    FieldContext::zeta(zeta, &params)
}

fn realized_weight(rs: &RootSystem, ctx: &FieldContext, realize: &str) -> Result<WeightPoint, DecompError> {
    Ok(weights::parse_character(rs, ctx, &format!("t{{{realize}}}"))?)
}

/// Decomposes `M(t)` after certified specialization of the free parameters.
pub fn decompose_weight(rs: &Arc<RootSystem>, ctx: &FieldContext, t: &WeightPoint) -> Result<Decomposition, DecompError> {
    let sp = specialize(rs, ctx, t, &[])?;
    if !sp.certified {
        return Err(DecompError::NoGenericSpecialization);
    }
    let s = Setting::new(rs, &sp.ctx, &sp.weight)?;
    let m = s.principal_series()?;
    composition_factors(&s, &m)
}

pub fn render_dims(dims: &[usize]) -> String {
    dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// Computes one cell of a table.
pub fn compute_cell(kind: RootKind, golden: &GoldenTables, row: usize, column: usize) -> Result<CellOutcome, DecompError> {
    let start = Instant::now();
    let table = golden.table(kind);
    let zeta = table.columns[column].zeta;
    let rs = Arc::new(RootSystem::new(kind));
    let ctx = context_for(kind, zeta);
    let fams = weights::inventory(kind);
    let name = &table.rows[row].name;
    let fam = weights::find_family(kind, name).ok_or_else(|| DecompError::Unresolved(format!("unknown row {name}")))?;
    let mut out = CellOutcome {
        row,
        column,
        cell: String::new(),
        alias_of: None,
        realized_as: None,
        decomposition: None,
        seconds: 0.0,
    };
    let family_weight = |row_name: &str| -> Result<WeightPoint, DecompError> {
        let f = fams
            .iter()
            .find(|f| same_name(f.name, row_name))
            .ok_or_else(|| DecompError::Unresolved(format!("unknown row {row_name}")))?;
        Ok(f.weight(&rs, &ctx, 0, 0)?)
    };
    let t = match golden.override_for(kind, zeta, name) {
        Some(o) => {
            out.realized_as = Some(o.realize.clone());
            realized_weight(&rs, &ctx, &o.realize)?
        }
        None => {
            let t = fam.weight(&rs, &ctx, 0, 0)?;
            if let Some(d) = golden.deferral(kind, zeta, name) {
                // the deferral is honoured only when the orbits really coincide
                if weights::orbit_contains(&rs, &ctx, &family_weight(&d.to)?, &t).is_some() {
                    out.alias_of = Some(d.to.clone());
                }
            }
            for earlier in &table.rows[..row] {
                if out.alias_of.is_some() {
                    break;
                }
                if golden.deferral(kind, zeta, &earlier.name).is_some_and(|d| same_name(&d.to, name)) {
                    continue;
                }
                if weights::orbit_contains(&rs, &ctx, &family_weight(&earlier.name)?, &t).is_some() {
                    out.alias_of = Some(earlier.name.clone());
                }
            }
            t
        }
    };
    if out.alias_of.is_some() {
        out.cell = NOT_APPLICABLE.to_string();
    } else {
        let d = decompose_weight(&rs, &ctx, &t)?;
        out.cell = render_dims(&d.class_dims());
        out.decomposition = Some(d);
    }
    out.seconds = start.elapsed().as_secs_f64();
    Ok(out)
}

/// A recomputed table.
#[derive(Clone, Debug)]
pub struct ComputedTable {
    pub kind: RootKind,
    pub table: Table,
    pub outcomes: Vec<CellOutcome>,
    pub errors: Vec<(usize, usize, String)>,
}

impl ComputedTable {
    /// Cells differing from the golden table: `(row name, column label, golden, computed)`.
    pub fn mismatches(&self, golden: &Table) -> Vec<(String, String, String, String)> {
        let mut out = Vec::new();
        for (a, b) in golden.rows.iter().zip(&self.table.rows) {
            for (c, (x, y)) in a.cells.iter().zip(&b.cells).enumerate() {
                if x != y {
                    out.push((a.name.clone(), golden.columns[c].label.clone(), x.clone(), y.clone()));
                }
            }
        }
        out
    }
}

/// Recomputes the table of a type, in parallel over cells.
pub fn compute_table(kind: RootKind, golden: &GoldenTables) -> ComputedTable {
    let g = golden.table(kind);
    let jobs: Vec<(usize, usize)> =
        (0..g.rows.len()).flat_map(|r| (0..g.columns.len()).map(move |c| (r, c))).collect();
    let results: Vec<((usize, usize), Result<CellOutcome, DecompError>)> =
        jobs.par_iter().map(|&(r, c)| ((r, c), compute_cell(kind, golden, r, c))).collect();
    let mut table = Table {
        columns: g.columns.clone(),
        predicates: g.predicates.clone(),
        rows: g.rows.iter().map(|r| Row { name: r.name.clone(), cells: vec![String::new(); g.columns.len()] }).collect(),
    };
    let mut outcomes = Vec::new();
    let mut errors = Vec::new();
    for ((r, c), res) in results {
        match res {
            Ok(o) => {
                table.rows[r].cells[c] = o.cell.clone();
                outcomes.push(o);
            }
            Err(e) => {
                table.rows[r].cells[c] = format!("ERROR({e})");
                errors.push((r, c, e.to_string()));
            }
        }
    }
    ComputedTable { kind, table, outcomes, errors }
}

/// Canonical text form of a table, shared by golden and computed tables so
/// that they can be compared byte for byte.
pub fn render(kind: RootKind, table: &Table) -> String {
    let mut widths: Vec<usize> = Vec::with_capacity(table.columns.len() + 1);
    widths.push(table.rows.iter().map(|r| r.name.len()).chain([kind.to_string().len()]).max().unwrap_or(0));
    for (c, col) in table.columns.iter().enumerate() {
        let w = table.rows.iter().map(|r| r.cells[c].len()).chain([col.label.len()]).max().unwrap_or(0);
        widths.push(w);
    }
    let line = |first: &str, rest: Vec<&str>| -> String {
        let mut s = format!("{:<w$}", first, w = widths[0]);
        for (i, cell) in rest.iter().enumerate() {
            let _ = write!(s, " | {:<w$}", cell, w = widths[i + 1]);
        }
        s.trim_end().to_string()
    };
    let mut out = String::new();
    let kind_name = kind.to_string();
    out.push_str(&line(&kind_name, table.columns.iter().map(|c| c.label.as_str()).collect()));
    out.push('\n');
    let zetas: Vec<String> = table.columns.iter().map(|c| format!("zeta:{}", c.zeta)).collect();
    out.push_str(&line("", zetas.iter().map(|s| s.as_str()).collect()));
    out.push('\n');
    for r in &table.rows {
        out.push_str(&line(&r.name, r.cells.iter().map(|s| s.as_str()).collect()));
        out.push('\n');
    }
    out
}
