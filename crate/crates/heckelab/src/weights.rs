//! Weights `t ∈ T = Hom(P, F^×)`, their Weyl orbits, the root sets `Z(t)` and
//! `P(t)`, calibration graphs, and the inventory of non-generic central
//! characters for each type.

use thiserror::Error;

use crate::rootdata::{Lat, RootKind, RootSystem};
use crate::scalars::{FieldContext, FieldOps, Param, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("lift index {0} out of range (this type has {1} lifts)")]
    LiftOutOfRange(usize, usize),
    #[error("expected {0} values, got {1}")]
    Arity(usize, usize),
    #[error("weight values must be nonzero")]
    ZeroValue,
    #[error("unknown character `{0}`")]
    UnknownCharacter(String),
    #[error("malformed character `{0}`: {1}")]
    BadCharacter(String, String),
}

/// A weight, stored by its values on the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightPoint {
    values: Vec<Scalar>,
}

impl WeightPoint {
    pub fn from_omega_values(values: Vec<Scalar>) -> Result<Self, WeightError> {
        if values.iter().any(|v| v.is_zero()) {
            return Err(WeightError::ZeroValue);
        }
        Ok(WeightPoint { values })
    }

    pub fn omega_values(&self) -> &[Scalar] {
        &self.values
    }

    /// `t(X^λ)` for λ in ω-coordinates.
    pub fn eval(&self, ctx: &FieldContext, lam: &Lat) -> Scalar {
        let mut acc = ctx.one();
        for (i, v) in self.values.iter().enumerate() {
            if lam[i] != 0 {
                acc = ctx.mul(&acc, &ctx.pow(v, lam[i]));
            }
        }
        acc
    }

    /// `t(X^α)` for α in α-coordinates.
    pub fn eval_alpha(&self, rs: &RootSystem, ctx: &FieldContext, a: &Lat) -> Scalar {
        self.eval(ctx, &rs.from_alpha(a))
    }

    /// Values on the simple roots.
    pub fn alpha_values(&self, rs: &RootSystem, ctx: &FieldContext) -> Vec<Scalar> {
        (0..rs.rank()).map(|i| self.eval(ctx, &rs.simple_root(i))).collect()
    }

    pub fn same(&self, ctx: &FieldContext, other: &WeightPoint) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(a, b)| ctx.eq(a, b))
    }
}

/// Builds the `lift`-th weight whose restriction to the root lattice takes
/// the given values on the simple roots.
///
/// The weight lattice modulo the root lattice is cyclic, generated by `ω_1`.
/// `t(ω_1)` is the `lift`-th entry of [`FieldContext::kth_root`] applied to
/// `t(det·ω_1)` (ascending root-of-unity exponent), and every other `ω_i` is
/// written as `k·ω_1` plus an element of the root lattice.
pub fn weight_from_simple_roots(
    rs: &RootSystem,
    ctx: &FieldContext,
    alpha: &[Scalar],
    lift: usize,
) -> Result<WeightPoint, WeightError> {
    let n = rs.rank();
    if alpha.len() != n {
        return Err(WeightError::Arity(n, alpha.len()));
    }
    if alpha.iter().any(|v| v.is_zero()) {
        return Err(WeightError::ZeroValue);
    }
    let count = rs.lift_count();
    if lift >= count {
        return Err(WeightError::LiftOutOfRange(lift, count));
    }
    let on_root_lattice = |a: &Lat| -> Scalar {
        let mut acc = ctx.one();
        for k in 0..n {
            if a[k] != 0 {
                acc = ctx.mul(&acc, &ctx.pow(&alpha[k], a[k]));
            }
        }
        acc
    };
    let (c, det) = rs.omega_alpha();
    // det·ω_1 in α-coordinates
    let base = [c[0][0], c[1][0]];
    let gen_value = if det == 1 {
        on_root_lattice(&base)
    } else {
        let roots = ctx.kth_root(&on_root_lattice(&base), det as u32)?;
        roots[lift].clone()
    };
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let mut om = [0i64; 2];
        om[i] = 1;
        let mut found = None;
        for k in 0..det {
            // ω_i − k·ω_1
            let v = [om[0] - k, om[1]];
            if let Some(a) = rs.to_alpha(&v) {
                found = Some((k, a));
                break;
            }
        }
        let (k, a) = found.expect("P/Q is generated by ω_1");
        values.push(ctx.mul(&ctx.pow(&gen_value, k), &on_root_lattice(&a)));
    }
    WeightPoint::from_omega_values(values)
}

/// `(w·t)(X^λ) = t(X^{w⁻¹λ})`.
pub fn weight_act(rs: &RootSystem, ctx: &FieldContext, w: usize, t: &WeightPoint) -> WeightPoint {
    let winv = rs.inv(w);
    let values = (0..rs.rank())
        .map(|i| {
            let mut om = [0i64; 2];
            om[i] = 1;
            t.eval(ctx, &rs.act(winv, &om))
        })
        .collect();
    WeightPoint { values }
}

/// Positive roots (as indices into [`RootSystem::positive_roots`]) where the
/// weight is `1`, respectively `q^{±2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZpSets {
    pub zero: Vec<usize>,
    pub pole: Vec<usize>,
}

pub fn zp_sets(rs: &RootSystem, ctx: &FieldContext, t: &WeightPoint) -> ZpSets {
    let q2 = ctx.q_pow(2);
    let qm2 = ctx.q_pow(-2);
    let one = ctx.one();
    let mut out = ZpSets::default();
    for (k, a) in rs.positive_roots().iter().enumerate() {
        let v = t.eval_alpha(rs, ctx, a);
        if ctx.eq(&v, &one) {
            out.zero.push(k);
        }
        if ctx.eq(&v, &q2) || ctx.eq(&v, &qm2) {
            out.pole.push(k);
        }
    }
    out
}

/// `M(t)` is irreducible iff `P(t)` is empty.
pub fn kato_irreducible(rs: &RootSystem, ctx: &FieldContext, t: &WeightPoint) -> bool {
    zp_sets(rs, ctx, t).pole.is_empty()
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// Distinct weights of `W₀t`, ordered by their representatives.
    pub weights: Vec<WeightPoint>,
    /// Minimal-length (then lexicographically least) `w` with `w·t` equal to each weight.
    pub reps: Vec<usize>,
    /// `W_t`, sorted by element index.
    pub stabilizer: Vec<usize>,
    /// Whether `W_t` coincides with the group generated by reflections in `Z(t)`.
    pub stabilizer_is_reflection_group: bool,
}

impl OrbitReport {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Position of a weight in the orbit.
    pub fn position(&self, ctx: &FieldContext, t: &WeightPoint) -> Option<usize> {
        self.weights.iter().position(|x| x.same(ctx, t))
    }
}

pub fn orbit_and_stabilizer(rs: &RootSystem, ctx: &FieldContext, t: &WeightPoint) -> OrbitReport {
    let mut weights: Vec<WeightPoint> = Vec::new();
    let mut reps = Vec::new();
    let mut stabilizer = Vec::new();
    for w in 0..rs.order() {
        let wt = weight_act(rs, ctx, w, t);
        if wt.same(ctx, t) {
            stabilizer.push(w);
        }
        if !weights.iter().any(|x| x.same(ctx, &wt)) {
            weights.push(wt);
            reps.push(w);
        }
    }
    let zp = zp_sets(rs, ctx, t);
    let gens: Vec<usize> = zp.zero.iter().map(|&k| rs.reflection(k)).collect();
    let generated = rs.generated(&gens);
    OrbitReport { stabilizer_is_reflection_group: generated == stabilizer, weights, reps, stabilizer }
}

#[derive(Clone, Debug)]
pub struct CalibrationGraph {
    /// Edges `(a, b, i)` between orbit positions with `b = s_i·a`.
    pub edges: Vec<(usize, usize, usize)>,
    /// Connected components as sorted lists of orbit positions.
    pub components: Vec<Vec<usize>>,
}

impl CalibrationGraph {
    pub fn component_of(&self, v: usize) -> usize {
        self.components.iter().position(|c| c.contains(&v)).expect("vertex in graph")
    }
}

pub fn calibration_graph(rs: &RootSystem, ctx: &FieldContext, orbit: &OrbitReport) -> CalibrationGraph {
    let n = orbit.len();
    let q2 = ctx.q_pow(2);
    let qm2 = ctx.q_pow(-2);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for i in 0..rs.rank() {
            let v = orbit.weights[a].eval(ctx, &rs.simple_root(i));
            if ctx.eq(&v, &q2) || ctx.eq(&v, &qm2) {
                continue;
            }
            let b = orbit
                .position(ctx, &weight_act(rs, ctx, rs.simple(i), &orbit.weights[a]))
                .expect("orbit is W-stable");
            if b == a {
                continue;
            }
            if a < b {
                edges.push((a, b, i));
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut root_of: Vec<(usize, usize)> = Vec::new();
    for v in 0..n {
        let r = find(&mut parent, v);
        match root_of.iter().find(|(x, _)| *x == r) {
            Some(&(_, k)) => comps[k].push(v),
            None => {
                root_of.push((r, comps.len()));
                comps.push(vec![v]);
            }
        }
    }
    CalibrationGraph { edges, components: comps }
}

/// Is `b` in the orbit of `a`?  For rank two the comparison is on the root
/// lattice (values on the simple roots); for A1 it is on the full weight.
/// Returns the smallest `w` with `w·a` equal to `b`.
pub fn orbit_contains(rs: &RootSystem, ctx: &FieldContext, a: &WeightPoint, b: &WeightPoint) -> Option<usize> {
    let target = if rs.kind() == RootKind::A1 { b.omega_values().to_vec() } else { b.alpha_values(rs, ctx) };
    (0..rs.order()).find(|&w| {
        let wa = weight_act(rs, ctx, w, a);
        let vals = if rs.kind() == RootKind::A1 { wa.omega_values().to_vec() } else { wa.alpha_values(rs, ctx) };
        vals.iter().zip(&target).all(|(x, y)| ctx.eq(x, y))
    })
}

/// One slot of a character template: a fixed expression or a free parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Slot {
    Fixed(&'static str),
    Free(Param),
}

/// A named family of central characters.
#[derive(Clone, Debug)]
pub struct CharacterFamily {
    /// Display name, e.g. `t_{q^2,1}`.
    pub name: &'static str,
    /// Values on the simple roots (ω-values for A1), one list per variant;
    /// the first variant is the representative.
    pub variants: Vec<Vec<Slot>>,
    /// Expected `Z(t)` / `P(t)` for generic `q`.
    pub generic_zp: ZpSets,
}

impl CharacterFamily {
    pub fn params(&self) -> Vec<Param> {
        let mut out = Vec::new();
        for s in &self.variants[0] {
            if let Slot::Free(p) = s {
                if !out.contains(p) {
                    out.push(*p);
                }
            }
        }
        out
    }

    /// Slot values of a variant as scalars.
    pub fn values(&self, ctx: &FieldContext, variant: usize) -> Result<Vec<Scalar>, WeightError> {
        self.variants[variant]
            .iter()
            .map(|s| match s {
                Slot::Fixed(e) => Ok(ctx.parse(e)?),
                Slot::Free(p) => {
                    if !ctx.has_param(*p) {
                        return Err(WeightError::Scalar(ScalarError::UnknownSymbol(
                            match p {
                                Param::Z => "z",
                                Param::W => "w",
                            }
                            .into(),
                        )));
                    }
                    Ok(ctx.param(*p))
                }
            })
            .collect()
    }

    /// The representative weight of a variant with the given lift.
    pub fn weight(&self, rs: &RootSystem, ctx: &FieldContext, variant: usize, lift: usize) -> Result<WeightPoint, WeightError> {
        let vals = self.values(ctx, variant)?;
        if rs.kind() == RootKind::A1 {
            return WeightPoint::from_omega_values(vals);
        }
        weight_from_simple_roots(rs, ctx, &vals, lift)
    }
}

fn zp(zero: &[usize], pole: &[usize]) -> ZpSets {
    ZpSets { zero: zero.to_vec(), pole: pole.to_vec() }
}

fn fam(name: &'static str, variants: &[&[&'static str]], zero: &[usize], pole: &[usize]) -> CharacterFamily {
    let variants = variants
        .iter()
        .map(|v| {
            v.iter()
                .map(|s| match *s {
                    "z" => Slot::Free(Param::Z),
                    "w" => Slot::Free(Param::W),
                    e => Slot::Fixed(e),
                })
                .collect()
        })
        .collect();
    CharacterFamily { name, variants, generic_zp: zp(zero, pole) }
}

/// The inventory of central characters for a type, in table order.  For
/// rank two the slots are the values on `α_1, α_2`; for A1 the value on `ω_1`.
pub fn inventory(kind: RootKind) -> Vec<CharacterFamily> {
    match kind {
        RootKind::A1 => vec![
            fam("t_{1}", &[&["1"]], &[0], &[]),
            fam("t_{-1}", &[&["-1"]], &[0], &[]),
            fam("t_{q}", &[&["q"]], &[], &[0]),
            fam("t_{-q}", &[&["-q"]], &[], &[0]),
            fam("t_{z}", &[&["z"]], &[], &[]),
        ],
        RootKind::A2 => vec![
            fam("t_{1,1}", &[&["1", "1"]], &[0, 1, 2], &[]),
            fam("t_{1,z}", &[&["1", "z"]], &[0], &[]),
            fam("t_{1,q^2}", &[&["1", "q^2"]], &[0], &[1, 2]),
            fam("t_{q^2,1}", &[&["q^2", "1"]], &[1], &[0, 2]),
            fam("t_{q^2,q^2}", &[&["q^2", "q^2"]], &[], &[0, 1]),
            fam("t_{q^2,z}", &[&["q^2", "z"]], &[], &[0]),
            fam("t_{z,w}", &[&["z", "w"]], &[], &[]),
        ],
        RootKind::C2 => vec![
            fam("t_{1,1}", &[&["1", "1"]], &[0, 1, 2, 3], &[]),
            fam("t_{-1,1}", &[&["-1", "1"]], &[1, 3], &[]),
            fam("t_{1,z}", &[&["1", "z"]], &[0], &[]),
            fam("t_{1,q^2}", &[&["1", "q^2"]], &[0], &[1, 2, 3]),
            fam("t_{q^2,1}", &[&["q^2", "1"]], &[1], &[0, 2]),
            fam("t_{q,1}", &[&["q", "1"]], &[1], &[3]),
            fam("t_{-q,1}", &[&["-q", "1"]], &[1], &[3]),
            fam("t_{z,1}", &[&["z", "1"]], &[1], &[]),
            fam("t_{q^2,q^2}", &[&["q^2", "q^2"]], &[], &[0, 1]),
            fam("t_{q^2,z}", &[&["q^2", "z"]], &[], &[0]),
            fam("t_{-1,q^2}", &[&["-1", "q^2"]], &[], &[1, 3]),
            fam("t_{z,q^2}", &[&["z", "q^2"]], &[], &[1]),
            fam("t_{z,w}", &[&["z", "w"]], &[], &[]),
        ],
        RootKind::G2 => vec![
            fam("t_{1,1}", &[&["1", "1"]], &[0, 1, 2, 3, 4, 5], &[]),
            fam("t_{1,-1}", &[&["1", "-1"]], &[0, 5], &[]),
            fam("t_{1^(1/3),1}", &[&["zeta(3)", "1"], &["zeta(3)^2", "1"]], &[1, 4, 5], &[]),
            fam("t_{1,q^2}", &[&["1", "q^2"]], &[0], &[1, 2, 3, 4]),
            fam("t_{1,+-q}", &[&["1", "q"], &["1", "-q"]], &[0], &[5]),
            fam("t_{1,z}", &[&["1", "z"]], &[0], &[]),
            fam("t_{q^2,1}", &[&["q^2", "1"]], &[1], &[0, 2]),
            fam("t_{q,1}", &[&["q", "1"]], &[1], &[3]),
            fam("t_{-q,1}", &[&["-q", "1"]], &[1], &[3]),
            fam(
                "t_{q^(2/3),1}",
                &[&["q^(2/3)", "1"], &["zeta(3)*q^(2/3)", "1"], &["zeta(3)^2*q^(2/3)", "1"]],
                &[1],
                &[4, 5],
            ),
            fam("t_{z,1}", &[&["z", "1"]], &[1], &[]),
            fam("t_{1^(1/3),q^2}", &[&["zeta(3)", "q^2"], &["zeta(3)^2", "q^2"]], &[], &[1, 4]),
            fam("t_{q^2,-q^-2}", &[&["q^2", "-q^-2"]], &[], &[0, 5]),
            fam("t_{q^2,q^2}", &[&["q^2", "q^2"]], &[], &[0, 1]),
            fam("t_{q^2,z}", &[&["q^2", "z"]], &[], &[0]),
            fam("t_{z,q^2}", &[&["z", "q^2"]], &[], &[1]),
            fam("t_{z,w}", &[&["z", "w"]], &[], &[]),
        ],
    }
}

/// Normalizes a character name so that `t_{q^{2},1}`, `t_{q^2,1}` and
/// `t_{q^2, 1}` agree.  `\pm`, `±` and `+-` are identified.
pub fn normalize_name(name: &str) -> String {
    name.replace("\\pm", "+-")
        .replace('±', "+-")
        .replace("pm", "+-")
        .chars()
        .filter(|c| !c.is_whitespace() && *c != '{' && *c != '}' && *c != '\\')
        .collect::<String>()
        .replace("^(", "^")
        .replace(')', "")
}

/// Looks up a family by display name.
pub fn find_family(kind: RootKind, name: &str) -> Option<CharacterFamily> {
    let key = normalize_name(name);
    inventory(kind).into_iter().find(|f| normalize_name(f.name) == key)
}

/// One classified character instantiated in a context.
#[derive(Clone, Debug)]
pub struct ClassifiedEntry {
    pub name: &'static str,
    pub weight: WeightPoint,
    pub alpha_values: Vec<Scalar>,
    /// `Z(t)`/`P(t)` computed in the context.
    pub zp: ZpSets,
    /// Expected sets for generic `q`.
    pub generic_zp: ZpSets,
    /// Earlier entries whose orbit contains this one at the context's `q`.
    pub aliases: Vec<&'static str>,
    /// Variants of this family that are in the same orbit as the representative.
    pub merged_variants: usize,
}

/// The inventory of a type, instantiated in `ctx` (which must declare the
/// parameters `z`, `w` needed by the families), with orbit coincidences at
/// this `q` recorded as aliases.
pub fn classify_nongeneric(rs: &RootSystem, ctx: &FieldContext) -> Result<Vec<ClassifiedEntry>, WeightError> {
    let fams = inventory(rs.kind());
    let mut out: Vec<ClassifiedEntry> = Vec::new();
    for f in &fams {
        let weight = f.weight(rs, ctx, 0, 0)?;
        let mut merged = 1;
        for v in 1..f.variants.len() {
            let other = f.weight(rs, ctx, v, 0)?;
            if orbit_contains(rs, ctx, &weight, &other).is_some() {
                merged += 1;
            }
        }
        let aliases = out
            .iter()
            .filter(|e| orbit_contains(rs, ctx, &e.weight, &weight).is_some())
            .map(|e| e.name)
            .collect();
        out.push(ClassifiedEntry {
            name: f.name,
            alpha_values: weight.alpha_values(rs, ctx),
            zp: zp_sets(rs, ctx, &weight),
            generic_zp: f.generic_zp.clone(),
            weight,
            aliases,
            merged_variants: merged,
        });
    }
    Ok(out)
}

/// Parses either an inventory name or the explicit form
/// `t{a1=<expr>,a2=<expr>;lift=<k>}` (A1: `t{w1=<expr>}`).
pub fn parse_character(rs: &RootSystem, ctx: &FieldContext, text: &str) -> Result<WeightPoint, WeightError> {
    let t = text.trim();
    if let Some(body) = t.strip_prefix("t{").and_then(|b| b.strip_suffix('}')) {
        let (vals, lift) = match body.split_once(';') {
            Some((v, l)) => {
                let l = l.trim();
                let k = l
                    .strip_prefix("lift=")
                    .and_then(|x| x.trim().parse::<usize>().ok())
                    .ok_or_else(|| WeightError::BadCharacter(text.into(), "expected lift=<k>".into()))?;
                (v, k)
            }
            None => (body, 0),
        };
        let assignments = parse_assignments(ctx, vals).map_err(|e| match e {
            WeightError::BadCharacter(_, m) => WeightError::BadCharacter(text.into(), m),
            other => other,
        })?;
        return weight_from_assignments(rs, ctx, &assignments, lift);
    }
    let fam_name = t;
    let f = find_family(rs.kind(), fam_name).ok_or_else(|| WeightError::UnknownCharacter(text.into()))?;
    f.weight(rs, ctx, 0, 0)
}

/// Splits `a1=<expr>,a2=<expr>` into `(key, value)` pairs, respecting parentheses.
pub fn parse_assignments(ctx: &FieldContext, text: &str) -> Result<Vec<(String, Scalar)>, WeightError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let bytes: Vec<char> = text.chars().collect();
    let mut pieces = Vec::new();
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                pieces.push(bytes[start..i].iter().collect::<String>());
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(bytes[start..].iter().collect::<String>());
    for p in pieces {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| WeightError::BadCharacter(text.into(), format!("expected key=value in `{}`", p)))?;
        out.push((k.trim().to_string(), ctx.parse(v.trim())?));
    }
    Ok(out)
}

/// Builds a weight from `a1=..,a2=..` (values on simple roots) or
/// `w1=..,w2=..` (values on fundamental weights).
pub fn weight_from_assignments(
    rs: &RootSystem,
    ctx: &FieldContext,
    assignments: &[(String, Scalar)],
    lift: usize,
) -> Result<WeightPoint, WeightError> {
    let n = rs.rank();
    let mut alpha: Vec<Option<Scalar>> = vec![None; n];
    let mut omega: Vec<Option<Scalar>> = vec![None; n];
    for (k, v) in assignments {
        let (slot, idx) = match k.split_at(1) {
            ("a", i) => (&mut alpha, i),
            ("w", i) => (&mut omega, i),
            _ => return Err(WeightError::BadCharacter(k.clone(), "keys are a<i> or w<i>".into())),
        };
        let i: usize = idx
            .parse()
            .ok()
            .filter(|&i: &usize| i >= 1 && i <= n)
            .ok_or_else(|| WeightError::BadCharacter(k.clone(), "index out of range".into()))?;
        slot[i - 1] = Some(v.clone());
    }
    if omega.iter().all(|x| x.is_some()) && alpha.iter().all(|x| x.is_none()) {
        return WeightPoint::from_omega_values(omega.into_iter().map(|x| x.unwrap()).collect());
    }
    if alpha.iter().all(|x| x.is_some()) && omega.iter().all(|x| x.is_none()) {
        let vals: Vec<Scalar> = alpha.into_iter().map(|x| x.unwrap()).collect();
        return weight_from_simple_roots(rs, ctx, &vals, lift);
    }
    Err(WeightError::BadCharacter(
        "weight".into(),
        format!("give all of a1..a{n} or all of w1..w{n}"),
    ))
}

#[cfg(test)]
mod tests;
