//! Verification suites run over the whole inventory.
//!
//! Each suite returns a [`SuiteReport`] counting the individual identities it
//! checked and describing every failure.  The same functions back the CLI's
//! `verify` command and the acceptance tests.

use std::sync::Arc;

use rayon::prelude::*;

use crate::decomp::{self, specialize, DecompError, Setting};
use crate::heckemod::{self, CycModule, Sign};
use crate::rootdata::{RootKind, RootSystem};
use crate::scalars::{FieldContext, FieldOps, Param};
use crate::tables::{ComputedTable, GoldenTables};
use crate::weights;

#[derive(Clone, Debug, Default)]
pub struct SuiteReport {
    pub name: String,
    /// Number of modules (or cells) examined.
    pub subjects: usize,
    /// Number of individual identities checked.
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport { name: name.into(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn merge(&mut self, other: SuiteReport) {
        self.subjects += other.subjects;
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

/// One specialized inventory character at one tabulated `q`.
#[derive(Clone, Debug)]
pub struct InventoryPoint {
    pub kind: RootKind,
    pub zeta: u32,
    pub family: &'static str,
    pub variant: usize,
    pub lift: usize,
    pub setting: Setting,
}

impl InventoryPoint {
    pub fn describe(&self) -> String {
        format!("{} {} (variant {}, lift {}) at zeta:{}", self.kind, self.family, self.variant, self.lift, self.zeta)
    }
}

/// Every family, variant and lift of a type at every column of its table,
/// with the free parameters specialized generically.
pub fn inventory_points(golden: &GoldenTables, kind: RootKind) -> Result<Vec<InventoryPoint>, DecompError> {
    let rs = Arc::new(RootSystem::new(kind));
    let mut jobs = Vec::new();
    for col in &golden.table(kind).columns {
        for fam in weights::inventory(kind) {
            for variant in 0..fam.variants.len() {
                for lift in 0..rs.lift_count() {
                    jobs.push((col.zeta, fam.clone(), variant, lift));
                }
            }
        }
    }
    jobs.into_par_iter()
        .map(|(zeta, fam, variant, lift)| {
            let ctx = FieldContext::zeta(zeta, &[Param::Z, Param::W]);
            let t = fam.weight(&rs, &ctx, variant, lift)?;
            let sp = specialize(&rs, &ctx, &t, &[])?;
            if !sp.certified {
                return Err(DecompError::NoGenericSpecialization);
            }
            let setting = Setting::new(&rs, &sp.ctx, &sp.weight)?;
            Ok(InventoryPoint { kind, zeta, family: fam.name, variant, lift, setting })
        })
        .collect()
}

fn check_cyc(report: &mut SuiteReport, what: &str, rs: &RootSystem, m: &CycModule) {
    let r = heckemod::check_relations(&*m.field, rs, &m.q, &m.t, &m.x);
    report.subjects += 1;
    report.checks += r.checks.len();
    for c in r.failures() {
        report.failures.push(format!("{what}: {} fails at {:?}", c.relation, c.violation));
    }
}

/// All modules attached to one inventory point: the principal series, the
/// modules induced from one-dimensional parabolic characters, the calibrated
/// modules (regular weights) and the Clifford modules (`q² = 1`).
fn modules_at(p: &InventoryPoint) -> Result<Vec<(String, CycModule)>, DecompError> {
    let s = &p.setting;
    let rs = &s.rs;
    let ctx = &s.ctx;
    let t = &s.weight;
    let mut out = vec![("M(t)".to_string(), s.principal_series()?)];
    for i in 0..rs.rank() {
        for sign in [Sign::PlusQ, Sign::MinusQInv] {
            if let Ok(m) = heckemod::induced_onedim(rs, ctx, &[i], t, sign) {
                out.push((format!("induced from {{{}}} {:?}", i + 1, sign), s.convert(&m)?));
            }
        }
    }
    if weights::zp_sets(rs, ctx, t).zero.is_empty() {
        let graph = weights::calibration_graph(rs, ctx, &s.orbit);
        for (k, comp) in graph.components.iter().enumerate() {
            let m = heckemod::calibrated_module(rs, ctx, t, comp)?;
            out.push((format!("calibrated component {k}"), s.convert(&m)?));
        }
    }
    if ctx.is_one(&ctx.q_pow(2)) {
        let (gens, m) = heckemod::stabilizer_generators(rs, ctx, t);
        for irrep in heckemod::wt_irreps(gens.len(), m) {
            let module = heckemod::clifford_module(rs, ctx, t, &irrep)?;
            out.push((format!("Clifford {}", irrep.name), s.convert(&module)?));
        }
    }
    Ok(out)
}

/// Relations on every module met while computing the tables (principal
/// series and all factors of each cell), on the constructed modules of every
/// inventory point, on the one-dimensional modules of every column and on the
/// symbolic principal series at indeterminate `q`.
pub fn relation_suite(golden: &GoldenTables, tables: &[ComputedTable]) -> Result<SuiteReport, DecompError> {
    let mut report = SuiteReport::new("relations");
    for ct in tables {
        let rs = RootSystem::new(ct.kind);
        for o in &ct.outcomes {
            if let Some(d) = &o.decomposition {
                let cell = format!("{} {} col {}", ct.kind, ct.table.rows[o.row].name, ct.table.columns[o.column].label);
                for (k, simple) in d.simples.iter().enumerate() {
                    check_cyc(&mut report, &format!("{cell} factor {k}"), &rs, simple);
                }
            }
        }
    }
    for kind in RootKind::ALL {
        let points = inventory_points(golden, kind)?;
        let parts: Vec<Result<SuiteReport, DecompError>> = points
            .par_iter()
            .map(|p| {
                let mut r = SuiteReport::default();
                for (what, m) in modules_at(p)? {
                    check_cyc(&mut r, &format!("{}: {what}", p.describe()), &p.setting.rs, &m);
                }
                Ok(r)
            })
            .collect();
        for part in parts {
            report.merge(part?);
        }

        let rs = Arc::new(RootSystem::new(kind));
        for col in &golden.table(kind).columns {
            let ctx = FieldContext::zeta(col.zeta, &[]);
            for (k, od) in heckemod::one_dim_reps(&rs, &ctx)?.iter().enumerate() {
                let r = heckemod::verify_relations(&od.module);
                report.subjects += 1;
                report.checks += r.checks.len();
                for c in r.failures() {
                    report.failures.push(format!("{kind} one-dimensional #{k} at zeta:{}: {}", col.zeta, c.relation));
                }
            }
        }
        let ctx = FieldContext::generic(&[Param::Z, Param::W]);
        for fam in weights::inventory(kind) {
            let t = fam.weight(&rs, &ctx, 0, 0)?;
            let r = heckemod::verify_relations(&heckemod::principal_series(&rs, &ctx, &t));
            report.subjects += 1;
            report.checks += r.checks.len();
            for c in r.failures() {
                report.failures.push(format!("{kind} {} at generic q: {}", fam.name, c.relation));
            }
        }
    }
    Ok(report)
}

/// τ-operator identities on the principal series of every inventory point.
pub fn tau_suite(golden: &GoldenTables) -> Result<SuiteReport, DecompError> {
    let mut report = SuiteReport::new("tau");
    for kind in RootKind::ALL {
        let points = inventory_points(golden, kind)?;
        let parts: Vec<Result<SuiteReport, DecompError>> = points
            .par_iter()
            .map(|p| {
                let m = p.setting.principal_series()?;
                let r = decomp::tau_laws(&p.setting, &m)?;
                Ok(SuiteReport {
                    subjects: 1,
                    checks: r.checks,
                    failures: r.failures.iter().map(|f| format!("{}: {f}", p.describe())).collect(),
                    ..Default::default()
                })
            })
            .collect();
        for part in parts {
            report.merge(part?);
        }
    }
    Ok(report)
}

/// Cell-by-cell comparison of computed tables with the corrected golden tables.
pub fn table_suite(golden: &GoldenTables, tables: &[ComputedTable]) -> SuiteReport {
    let mut report = SuiteReport::new("tables");
    for ct in tables {
        let g = golden.corrected(ct.kind);
        report.subjects += g.rows.len() * g.columns.len();
        report.checks += g.rows.len() * g.columns.len();
        for (r, c, e) in &ct.errors {
            report.failures.push(format!("{} {} / {}: {e}", ct.kind, g.rows[*r].name, g.columns[*c].label));
        }
        for (row, col, want, got) in ct.mismatches(&g) {
            report.failures.push(format!("{} {row} / {col}: expected {want}, computed {got}", ct.kind));
        }
    }
    report
}
