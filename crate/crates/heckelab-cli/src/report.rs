//! JSON report types and the pipeline that fills them.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use heckelab::decomp::{composition_factors, specialize, Decomposition, DecompError, Setting, Specialized, Turn};
use heckelab::rootdata::{RootKind, RootSystem};
use heckelab::scalars::{Ctx, FieldContext, FieldSpec, Param, QKind};
use heckelab::tables;
use heckelab::weights::{self, WeightPoint};

use crate::CliError;

/// How `q` was requested and how it was realized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QReport {
    /// `"generic"` or `"zeta"`.
    pub kind: String,
    /// The requested order for `zeta:N`.
    pub order: Option<u32>,
    /// The order `n` of `q = ζ_n` used for the computation.
    pub realized_order: u32,
    /// Cyclotomic order `N` of the field the decomposition ran in.
    pub field_order: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamChoice {
    pub param: String,
    /// `e^{2πi·num/den}`.
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    /// The character as given on the command line.
    pub input: String,
    pub alpha_values: Vec<String>,
    pub omega_values: Vec<String>,
    pub lift: usize,
    pub specialization: Vec<ParamChoice>,
    /// Whether the specialization keeps `Z(t)`, `P(t)` and the orbit as for
    /// indeterminate parameters.
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub dim: usize,
    pub signature: BTreeMap<String, usize>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub root_system: String,
    pub q: QReport,
    pub weight: WeightReport,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
    pub kato_irreducible: bool,
    /// Calibration-graph components, as coset words.
    pub calibration_components: Vec<Vec<String>>,
    pub factors: Vec<FactorJson>,
    /// Ascending dimensions of the distinct factors.
    pub class_dims: Vec<usize>,
    /// Dimensions along the computed composition series, bottom first.
    pub series: Vec<usize>,
    pub timing_us: u64,
}

/// `generic` or `zeta:N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QArg {
    Generic,
    Zeta(u32),
}

impl std::str::FromStr for QArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("generic") {
            return Ok(QArg::Generic);
        }
        let n = s
            .strip_prefix("zeta:")
            .and_then(|n| n.trim().parse::<u32>().ok())
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("expected `generic` or `zeta:N`, got `{s}`"))?;
        Ok(QArg::Zeta(n))
    }
}

/// The character to study: an inventory name or explicit simple-root values.
#[derive(Clone, Debug)]
pub enum CharArg {
    Name(String),
    Values(String),
}

impl CharArg {
    pub fn text(&self) -> String {
        match self {
            CharArg::Name(n) => n.clone(),
            CharArg::Values(v) => format!("t{{{v}}}"),
        }
    }
}

/// `D` from `HECKELAB_FIELD_D`, defaulting to the library's choice.
pub fn root_denominator() -> Result<u32, CliError> {
    match std::env::var("HECKELAB_FIELD_D") {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| CliError::Input(format!("HECKELAB_FIELD_D must be a positive integer, got `{v}`"))),
        Err(_) => Ok(FieldSpec::new(QKind::Generic).root_denominator),
    }
}

/// The concrete order realizing a `q` argument: `zeta:N` itself, or the
/// generic column of the type's table.
pub fn realized_order(kind: RootKind, q: QArg) -> u32 {
    match q {
        QArg::Zeta(n) => n,
        QArg::Generic => tables::golden().table(kind).columns[0].zeta,
    }
}

pub fn context(q: QKind) -> Result<Ctx, CliError> {
    let spec = FieldSpec::new(q).with_params(&[Param::Z, Param::W]).with_root_denominator(root_denominator()?);
    FieldContext::new(spec).map_err(|e| CliError::Input(e.to_string()))
}

pub fn parse_weight(rs: &RootSystem, ctx: &FieldContext, ch: &CharArg, lift: usize) -> Result<WeightPoint, CliError> {
    let r = match ch {
        CharArg::Name(n) => {
            let fam = weights::find_family(rs.kind(), n)
                .ok_or_else(|| CliError::Input(format!("unknown character `{n}` for type {}", rs.kind())))?;
            if lift >= rs.lift_count() {
                return Err(CliError::Input(format!("lift must be below {}", rs.lift_count())));
            }
            fam.weight(rs, ctx, 0, lift)
        }
        CharArg::Values(v) => weights::parse_character(rs, ctx, &format!("t{{{v};lift={lift}}}")),
    };
    r.map_err(|e| CliError::Input(e.to_string()))
}

/// Parses `z=<expr>,w=<expr>` into turns; each value must be a root of unity.
/// A root of unity written directly: `1`, `-1`, `zeta(m)`, `zeta(m)^k`, or a
/// fraction of a turn `k/m`.  These need no field arithmetic, so any order is
/// accepted.
fn direct_turn(text: &str) -> Option<Turn> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match s.as_str() {
        "1" => return Some(Turn::zero()),
        "-1" => return Some(Turn::new(1, 2)),
        _ => {}
    }
    if let Some(rest) = s.strip_prefix("zeta(") {
        let (m, tail) = rest.split_once(')')?;
        let m: i64 = m.parse().ok().filter(|&m| m > 0)?;
        let k: i64 = match tail {
            "" => 1,
            t => t.strip_prefix('^')?.trim_start_matches('(').trim_end_matches(')').parse().ok()?,
        };
        return Some(Turn::new(k, m));
    }
    let (k, m) = s.split_once('/')?;
    let m: i64 = m.parse().ok().filter(|&m| m > 0)?;
    Some(Turn::new(k.parse().ok()?, m))
}

pub fn parse_specialization(ctx: &FieldContext, text: &str) -> Result<Vec<(Param, Turn)>, CliError> {
    let param = |k: &str| match k {
        "z" => Ok(Param::Z),
        "w" => Ok(Param::W),
        _ => Err(CliError::Input(format!("unknown parameter `{k}` (expected z or w)"))),
    };
    let mut direct = Vec::new();
    let mut rest = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected name=value, got `{part}`")))?;
        match direct_turn(v) {
            Some(t) => direct.push((param(k.trim())?, t)),
            None => rest.push(part),
        }
    }
    if rest.is_empty() {
        return Ok(direct);
    }
    let pairs = weights::parse_assignments(ctx, &rest.join(",")).map_err(|e| CliError::Input(e.to_string()))?;
    let f = ctx.field();
    let parsed: Result<Vec<_>, CliError> = pairs
        .into_iter()
        .map(|(k, v)| {
            let p = param(k.as_str())?;
            let e = ctx
                .to_cyc(&v)
                .and_then(|c| f.root_of_unity_exponent(&c))
                .ok_or_else(|| CliError::Input(format!("{k} = {} is not a root of unity", ctx.to_expr(&v))))?;
            Ok((p, Turn::new(e as i64, ctx.order() as i64)))
        })
        .collect();
    direct.extend(parsed?);
    Ok(direct)
}

fn map_decomp(e: DecompError) -> CliError {
    match e {
        DecompError::Unresolved(m) => CliError::Unresolved(m),
        DecompError::MissingParam(p) => CliError::Input(format!("the character needs a value for {p}; pass --specialize")),
        other => CliError::Input(other.to_string()),
    }
}

/// A decomposed character with everything needed for reports and diagrams.
pub struct Analysis {
    pub rs: Arc<RootSystem>,
    pub specialized: Specialized,
    pub setting: Setting,
    pub decomposition: Decomposition,
    pub realized_order: u32,
}

pub fn analyse(kind: RootKind, q: QArg, ch: &CharArg, lift: usize, spec: Option<&str>) -> Result<Analysis, CliError> {
    let rs = Arc::new(RootSystem::new(kind));
    let n = realized_order(kind, q);
    let ctx = context(QKind::Zeta(n))?;
    let t = parse_weight(&rs, &ctx, ch, lift)?;
    let fixed = match spec {
        Some(s) => parse_specialization(&ctx, s)?,
        None => Vec::new(),
    };
    let sp = specialize(&rs, &ctx, &t, &fixed).map_err(map_decomp)?;
    let setting = Setting::new(&rs, &sp.ctx, &sp.weight).map_err(map_decomp)?;
    let m = setting.principal_series().map_err(map_decomp)?;
    let decomposition = composition_factors(&setting, &m).map_err(map_decomp)?;
    Ok(Analysis { rs, specialized: sp, setting, decomposition, realized_order: n })
}

pub fn root_names(rs: &RootSystem, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&k| rs.root_name(&rs.positive_roots()[k])).collect()
}

pub fn decompose(kind: RootKind, q: QArg, ch: &CharArg, lift: usize, spec: Option<&str>) -> Result<DecompositionReport, CliError> {
    let start = Instant::now();
    let a = analyse(kind, q, ch, lift, spec)?;
    build_report(&a, q, ch, lift, start)
}

pub fn build_report(a: &Analysis, q: QArg, ch: &CharArg, lift: usize, start: Instant) -> Result<DecompositionReport, CliError> {
    let rs = &a.rs;
    let s = &a.setting;
    let ctx = &s.ctx;
    let t = &s.weight;
    let zp = weights::zp_sets(rs, ctx, t);
    let d = &a.decomposition;
    if d.total_dim() != rs.order() {
        return Err(CliError::Invariant(format!("factor dimensions sum to {}, not {}", d.total_dim(), rs.order())));
    }
    if a.specialized.zp != zp {
        return Err(CliError::Invariant("Z/P of the decomposed weight differ from the specialization".into()));
    }
    let graph = weights::calibration_graph(rs, ctx, &s.orbit);
    let (qkind, order) = match q {
        QArg::Generic => ("generic", None),
        QArg::Zeta(n) => ("zeta", Some(n)),
    };
    Ok(DecompositionReport {
        root_system: rs.kind().to_string(),
        q: QReport { kind: qkind.into(), order, realized_order: a.realized_order, field_order: ctx.order() },
        weight: WeightReport {
            input: ch.text(),
            alpha_values: t.alpha_values(rs, ctx).iter().map(|v| ctx.to_expr(v)).collect(),
            omega_values: t.omega_values().iter().map(|v| ctx.to_expr(v)).collect(),
            lift,
            specialization: a
                .specialized
                .choices
                .iter()
                .map(|(p, turn)| ParamChoice {
                    param: match p {
                        Param::Z => "z".into(),
                        Param::W => "w".into(),
                    },
                    num: turn.num,
                    den: turn.den,
                })
                .collect(),
            certified: a.specialized.certified,
        },
        z: root_names(rs, &zp.zero),
        p: root_names(rs, &zp.pole),
        orbit_size: s.orbit.len(),
        stabilizer_order: s.orbit.stabilizer.len(),
        kato_irreducible: zp.pole.is_empty(),
        calibration_components: graph
            .components
            .iter()
            .map(|c| c.iter().map(|&p| s.labels[p].clone()).collect())
            .collect(),
        factors: d
            .factors
            .iter()
            .map(|f| FactorJson { dim: f.dim, signature: f.signature.clone(), multiplicity: f.multiplicity })
            .collect(),
        class_dims: d.class_dims(),
        series: d.series.clone(),
        timing_us: start.elapsed().as_micros() as u64,
    })
}

/// One entry of `classify`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyEntry {
    pub name: String,
    pub alpha_values: Vec<String>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    pub generic_z: Vec<String>,
    pub generic_p: Vec<String>,
    /// Earlier entries whose orbit contains this one at this `q`.
    pub aliases: Vec<String>,
    pub merged_variants: usize,
    pub kato_irreducible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub root_system: String,
    pub q: String,
    /// Families with `Z(t) ∪ P(t)` non-empty for generic `q`.
    pub entries: Vec<ClassifyEntry>,
    /// Families that are generic (`Z = P = ∅` for generic `q`).
    pub generic_families: Vec<String>,
}

pub fn classify(kind: RootKind, q: QArg) -> Result<ClassifyReport, CliError> {
    let rs = RootSystem::new(kind);
    let (ctx, label) = match q {
        QArg::Generic => (context(QKind::Generic)?, "generic".to_string()),
        QArg::Zeta(n) => (context(QKind::Zeta(n))?, format!("zeta:{n}")),
    };
    let all = weights::classify_nongeneric(&rs, &ctx).map_err(|e| CliError::Input(e.to_string()))?;
    let mut entries = Vec::new();
    let mut generic_families = Vec::new();
    for e in all {
        if e.generic_zp.zero.is_empty() && e.generic_zp.pole.is_empty() {
            generic_families.push(e.name.to_string());
            continue;
        }
        entries.push(ClassifyEntry {
            name: e.name.into(),
            alpha_values: e.alpha_values.iter().map(|v| ctx.to_expr(v)).collect(),
            z: root_names(&rs, &e.zp.zero),
            p: root_names(&rs, &e.zp.pole),
            generic_z: root_names(&rs, &e.generic_zp.zero),
            generic_p: root_names(&rs, &e.generic_zp.pole),
            aliases: e.aliases.iter().map(|a| a.to_string()).collect(),
            merged_variants: e.merged_variants,
            kato_irreducible: e.zp.pole.is_empty(),
        });
    }
    Ok(ClassifyReport { root_system: kind.to_string(), q: label, entries, generic_families })
}
