//! The affine Hecke algebra in its `T_w X^λ` normal form, and the
//! finite-dimensional modules built from it: principal series, modules
//! induced from one-dimensional parabolic modules, calibrated modules,
//! Clifford-induced modules at `q² = 1`, and the one-dimensional modules.
//!
//! A module is a family of exact matrices, one per `T_i` and per `X^{ω_i}`,
//! acting on column vectors.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::linalg::{self, Mat};
use crate::rootdata::{Lat, RootSystem};
use crate::scalars::{Ctx, Cyc, FieldContext, FieldOps, FieldRef, Scalar};
use crate::weights::{self, WeightError, WeightPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error("T_{0} cannot act by {1} on a weight with t(X^a{0}) = {2}")]
    SignMismatch(usize, &'static str, String),
    #[error("weight is not regular: Z(t) is nonempty")]
    NotRegular,
    #[error("the given set of orbit weights is not a calibration-graph component")]
    NotComponent,
    #[error("Clifford induction needs q^2 = 1")]
    QSquaredNotOne,
    #[error("matrices do not satisfy the relations of the stabilizer W_t: {0}")]
    BadIrrep(String),
    #[error("simple index {0} out of range")]
    BadIndex(usize),
}

/// A generator of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    T(usize),
    TInv(usize),
    X(Lat),
}

/// `(X^λ − X^{s_iλ}) / (1 − X^{−α_i})` as a list of `(exponent, coefficient)`.
///
/// With `k = ⟨λ, α_i^∨⟩` this is `X^λ(1 + X^{−α_i} + … + X^{−(k−1)α_i})`
/// for `k > 0` and `−X^λ(X^{α_i} + … + X^{|k|α_i})` for `k < 0`.
pub fn divided_difference(rs: &RootSystem, lam: &Lat, i: usize) -> Vec<(Lat, i64)> {
    let k = rs.pairing(lam, i);
    let a = rs.simple_root(i);
    let shift = |m: i64| [lam[0] + m * a[0], lam[1] + m * a[1]];
    if k > 0 {
        (0..k).map(|j| (shift(-j), 1)).collect()
    } else {
        (1..=-k).map(|j| (shift(j), -1)).collect()
    }
}

/// A finite linear combination of basis elements `T_w X^λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    terms: BTreeMap<(usize, Lat), Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn one(ctx: &FieldContext) -> Self {
        let mut e = Self::zero();
        e.add_term(ctx, 0, [0, 0], ctx.one());
        e
    }

    /// Terms keyed by `(Weyl element index, λ)`.
    pub fn terms(&self) -> &BTreeMap<(usize, Lat), Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, w: usize, lam: Lat) -> Option<&Scalar> {
        self.terms.get(&(w, lam))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, ctx: &FieldContext, w: usize, lam: Lat, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((w, lam)) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = ctx.add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, ctx: &FieldContext, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for ((w, l), c) in &other.terms {
            out.add_term(ctx, *w, *l, c.clone());
        }
        out
    }

    pub fn scale(&self, ctx: &FieldContext, c: &Scalar) -> AlgebraElement {
        let mut out = Self::zero();
        for ((w, l), x) in &self.terms {
            out.add_term(ctx, *w, *l, ctx.mul(x, c));
        }
        out
    }

    /// Equality as elements of the algebra (exact scalar comparison).
    pub fn same(&self, ctx: &FieldContext, other: &AlgebraElement) -> bool {
        let neg = other.scale(ctx, &ctx.from_int(-1));
        self.add(ctx, &neg).is_zero()
    }

    /// `self · X^μ`.
    pub fn right_mul_x(&self, mu: &Lat) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|((w, l), c)| ((*w, [l[0] + mu[0], l[1] + mu[1]]), c.clone())).collect(),
        }
    }

    /// `self · T_i`, moving `T_i` left past each `X^λ` with the cross
    /// relation and contracting `T_w T_i` with the quadratic relation.
    pub fn right_mul_t(&self, rs: &RootSystem, ctx: &FieldContext, i: usize) -> AlgebraElement {
        let qd = ctx.q_diff();
        let si = rs.simple(i);
        let mut out = Self::zero();
        for ((w, lam), c) in &self.terms {
            let ws = rs.mul(*w, si);
            let s_lam = rs.act(si, lam);
            // (T_w T_i) X^{s_i λ}
            if rs.length(ws) > rs.length(*w) {
                out.add_term(ctx, ws, s_lam, c.clone());
            } else {
                out.add_term(ctx, ws, s_lam, c.clone());
                out.add_term(ctx, *w, s_lam, ctx.mul(c, &qd));
            }
            // (q − q⁻¹) T_w · (X^λ − X^{s_iλ})/(1 − X^{−α_i})
            let cq = ctx.mul(c, &qd);
            for (mu, k) in divided_difference(rs, lam, i) {
                out.add_term(ctx, *w, mu, ctx.mul(&cq, &ctx.from_int(k)));
            }
        }
        out
    }

    pub fn right_mul(&self, rs: &RootSystem, ctx: &FieldContext, g: Generator) -> AlgebraElement {
        match g {
            Generator::X(mu) => self.right_mul_x(&mu),
            Generator::T(i) => self.right_mul_t(rs, ctx, i),
            Generator::TInv(i) => {
                // T_i⁻¹ = T_i − (q − q⁻¹)
                let a = self.right_mul_t(rs, ctx, i);
                a.add(ctx, &self.scale(ctx, &ctx.neg(&ctx.q_diff())))
            }
        }
    }
}

/// The unique expansion of a product of generators in the `T_w X^λ` basis.
pub fn normal_form(rs: &RootSystem, ctx: &FieldContext, word: &[Generator]) -> AlgebraElement {
    let mut e = AlgebraElement::one(ctx);
    for &g in word {
        e = e.right_mul(rs, ctx, g);
    }
    e
}

/// How a module was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    PrincipalSeries,
    Induced { subset: Vec<usize>, sign: Sign },
    Calibrated,
    Clifford { irrep: String },
    OneDimensional,
    Submodule,
    Quotient,
    Explicit,
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::PrincipalSeries => "principal-series",
            Provenance::Induced { .. } => "induced",
            Provenance::Calibrated => "calibrated",
            Provenance::Clifford { .. } => "clifford",
            Provenance::OneDimensional => "one-dimensional",
            Provenance::Submodule => "submodule",
            Provenance::Quotient => "quotient",
            Provenance::Explicit => "explicit",
        }
    }
}

/// Eigenvalue of `T_i` on the inducing one-dimensional module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    /// `T_i ↦ q`, requires `t(X^{α_i}) = q²`.
    PlusQ,
    /// `T_i ↦ −q⁻¹`, requires `t(X^{α_i}) = q⁻²`.
    MinusQInv,
}

impl Sign {
    pub fn value(&self, ctx: &FieldContext) -> Scalar {
        match self {
            Sign::PlusQ => ctx.q(),
            Sign::MinusQInv => ctx.neg(&ctx.q_pow(-1)),
        }
    }

    fn required(&self, ctx: &FieldContext) -> Scalar {
        match self {
            Sign::PlusQ => ctx.q_pow(2),
            Sign::MinusQInv => ctx.q_pow(-2),
        }
    }

    fn label(&self) -> &'static str {
        match self {
            Sign::PlusQ => "q",
            Sign::MinusQInv => "-q^-1",
        }
    }
}

/// A finite-dimensional module: one matrix per `T_i` and per `X^{ω_i}`.
#[derive(Clone, Debug)]
pub struct ModuleRep {
    rs: Arc<RootSystem>,
    ctx: Ctx,
    labels: Vec<String>,
    t: Vec<Mat<Scalar>>,
    x: Vec<Mat<Scalar>>,
    provenance: Provenance,
}

impl ModuleRep {
    pub fn from_matrices(
        rs: Arc<RootSystem>,
        ctx: Ctx,
        labels: Vec<String>,
        t: Vec<Mat<Scalar>>,
        x: Vec<Mat<Scalar>>,
        provenance: Provenance,
    ) -> ModuleRep {
        let d = labels.len();
        assert_eq!(t.len(), rs.rank());
        assert_eq!(x.len(), rs.rank());
        assert!(t.iter().chain(&x).all(|m| m.rows() == d && m.cols() == d));
        ModuleRep { rs, ctx, labels, t, x, provenance }
    }

    pub fn root_system(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Matrix of `T_i`.
    pub fn t(&self, i: usize) -> &Mat<Scalar> {
        &self.t[i]
    }

    /// Matrix of `X^{ω_i}`.
    pub fn x(&self, i: usize) -> &Mat<Scalar> {
        &self.x[i]
    }

    pub fn t_matrices(&self) -> &[Mat<Scalar>] {
        &self.t
    }

    pub fn x_matrices(&self) -> &[Mat<Scalar>] {
        &self.x
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: Provenance) -> Self {
        self.provenance = p;
        self
    }

    /// The same module with entries as plain cyclotomic numbers, when no
    /// entry involves an indeterminate.
    pub fn to_cyc(&self) -> Option<CycModule> {
        let conv = |m: &Mat<Scalar>| m.try_map(|s| self.ctx.to_cyc(s).ok_or(()));
        Some(CycModule {
            field: self.ctx.field().clone(),
            q: self.ctx.to_cyc(&self.ctx.q())?,
            t: self.t.iter().map(conv).collect::<Result<_, _>>().ok()?,
            x: self.x.iter().map(conv).collect::<Result<_, _>>().ok()?,
        })
    }
}

/// Module matrices over `Q(ζ_N)` for fully specialized modules.
#[derive(Clone, Debug)]
pub struct CycModule {
    pub field: FieldRef,
    pub q: Cyc,
    pub t: Vec<Mat<Cyc>>,
    pub x: Vec<Mat<Cyc>>,
}

impl CycModule {
    pub fn dim(&self) -> usize {
        self.t.first().map_or(0, |m| m.rows())
    }
}

/// Decomposes every `u ∈ W₀` as `u = u'·u''` with `u'` a minimal coset
/// representative and `u'' ∈ W_I`.
fn coset_decomposition(rs: &RootSystem, subset: &[usize]) -> (Vec<usize>, Vec<(usize, usize)>) {
    let reps = rs.minimal_coset_reps(subset);
    let sub = rs.parabolic(subset);
    let mut dec = vec![(0, 0); rs.order()];
    for (k, &r) in reps.iter().enumerate() {
        for &v in &sub {
            dec[rs.mul(r, v)] = (k, rs.length(v));
        }
    }
    (reps, dec)
}

fn t_word(rs: &RootSystem, w: usize) -> Vec<Generator> {
    rs.element(w).word.iter().map(|&i| Generator::T(i)).collect()
}

/// `H ⊗_{H_I} C_v` with `T_i v = sign·v` (`i ∈ I`) and `X^λ v = t(X^λ) v`.
pub fn induced_onedim(
    rs: &Arc<RootSystem>,
    ctx: &Ctx,
    subset: &[usize],
    t: &WeightPoint,
    sign: Sign,
) -> Result<ModuleRep, ModuleError> {
    for &i in subset {
        if i >= rs.rank() {
            return Err(ModuleError::BadIndex(i + 1));
        }
        let v = t.eval(ctx, &rs.simple_root(i));
        if !ctx.eq(&v, &sign.required(ctx)) {
            return Err(ModuleError::SignMismatch(i + 1, sign.label(), ctx.to_expr(&v)));
        }
    }
    let (reps, dec) = coset_decomposition(rs, subset);
    let d = reps.len();
    let sval = sign.value(ctx);
    let spow: Vec<Scalar> = (0..=rs.length(rs.longest())).map(|k| ctx.pow(&sval, k as i64)).collect();
    let act = |g: Generator| -> Mat<Scalar> {
        let mut m = linalg::zeros(&**ctx, d, d);
        for (col, &r) in reps.iter().enumerate() {
            let mut word = vec![g];
            word.extend(t_word(rs, r));
            let e = normal_form(rs, ctx, &word);
            for ((u, mu), c) in e.terms() {
                let (row, len) = dec[*u];
                let v = ctx.mul(&ctx.mul(c, &t.eval(ctx, mu)), &spow[len]);
                let cur = ctx.add(m.get(row, col), &v);
                m.set(row, col, cur);
            }
        }
        m
    };
    let n = rs.rank();
    let tm = (0..n).map(|i| act(Generator::T(i))).collect();
    let xm = (0..n)
        .map(|i| {
            let mut om = [0, 0];
            om[i] = 1;
            act(Generator::X(om))
        })
        .collect();
    let labels = reps.iter().map(|&r| rs.element(r).name()).collect();
    let provenance = if subset.is_empty() {
        Provenance::PrincipalSeries
    } else {
        Provenance::Induced { subset: subset.to_vec(), sign }
    };
    Ok(ModuleRep { rs: rs.clone(), ctx: ctx.clone(), labels, t: tm, x: xm, provenance })
}

/// `M(t)`, with basis `T_w v_t` in canonical-word order.
pub fn principal_series(rs: &Arc<RootSystem>, ctx: &Ctx, t: &WeightPoint) -> ModuleRep {
    induced_onedim(rs, ctx, &[], t, Sign::PlusQ).expect("no conditions for the trivial parabolic")
}

/// The calibrated module on a calibration-graph component of a regular weight.
///
/// `component` lists orbit positions (as in [`weights::OrbitReport`]).  The basis
/// vector `v_μ` for each weight `μ` of the component spans its weight space and
/// `T_i v_μ = (T_i)_μ v_μ + (q⁻¹ + (T_i)_μ) v_{s_iμ}` with
/// `(T_i)_μ = (q − q⁻¹)/(1 − μ(X^{−α_i}))`, the second term dropped when `s_iμ`
/// leaves the component.
pub fn calibrated_module(rs: &Arc<RootSystem>, ctx: &Ctx, t: &WeightPoint, component: &[usize]) -> Result<ModuleRep, ModuleError> {
    if !weights::zp_sets(rs, ctx, t).zero.is_empty() {
        return Err(ModuleError::NotRegular);
    }
    let orbit = weights::orbit_and_stabilizer(rs, ctx, t);
    let graph = weights::calibration_graph(rs, ctx, &orbit);
    let mut comp: Vec<usize> = component.to_vec();
    comp.sort();
    comp.dedup();
    if comp.is_empty() || comp.iter().any(|&p| p >= orbit.len()) || !graph.components.contains(&comp) {
        return Err(ModuleError::NotComponent);
    }
    let d = comp.len();
    let n = rs.rank();
    let qd = ctx.q_diff();
    let qinv = ctx.q_pow(-1);
    let mut tm = Vec::with_capacity(n);
    for i in 0..n {
        let mut m = linalg::zeros(&**ctx, d, d);
        for (col, &p) in comp.iter().enumerate() {
            let mu = &orbit.weights[p];
            let xa = mu.eval(ctx, &[-rs.simple_root(i)[0], -rs.simple_root(i)[1]]);
            let ti = ctx.div(&qd, &ctx.sub(&ctx.one(), &xa));
            m.set(col, col, ti.clone());
            let smu = weights::weight_act(rs, ctx, rs.simple(i), mu);
            let sp = orbit.position(ctx, &smu).expect("orbit is W-stable");
            if let Some(row) = comp.iter().position(|&x| x == sp) {
                m.set(row, col, ctx.add(&qinv, &ti));
            }
        }
        tm.push(m);
    }
    let xm = (0..n)
        .map(|i| {
            Mat::from_fn(d, d, |r, c| {
                if r == c {
                    orbit.weights[comp[r]].omega_values()[i].clone()
                } else {
                    ctx.zero()
                }
            })
        })
        .collect();
    let labels = comp.iter().map(|&p| rs.element(orbit.reps[p]).name()).collect();
    Ok(ModuleRep { rs: rs.clone(), ctx: ctx.clone(), labels, t: tm, x: xm, provenance: Provenance::Calibrated })
}

/// An irreducible representation of a stabilizer `W_t`, given on the
/// reflections in the simple roots of the `Z(t)` subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WtIrrep {
    pub name: String,
    pub dim: usize,
    pub gens: Vec<Mat<i64>>,
}

fn int_mat(rows: &[&[i64]]) -> Mat<i64> {
    Mat::from_rows(rows.iter().map(|r| r.to_vec()).collect())
}

/// Built-in irreducible representations of the reflection groups that occur
/// as stabilizers: trivial, `Z/2`, `Z/2 × Z/2`, `S₃`, dihedral of order 8 and 12.
/// `m` is the order of `r₁r₂` for two generators.
pub fn wt_irreps(ngens: usize, m: usize) -> Vec<WtIrrep> {
    let ch = |name: &str, signs: &[i64]| WtIrrep {
        name: name.into(),
        dim: 1,
        gens: signs.iter().map(|&s| int_mat(&[&[s]])).collect(),
    };
    match ngens {
        0 => vec![ch("trivial", &[])],
        1 => vec![ch("trivial", &[1]), ch("sign", &[-1])],
        _ => {
            let mut out = vec![ch("trivial", &[1, 1]), ch("sign", &[-1, -1])];
            if m % 2 == 0 {
                out.push(ch("eps1", &[-1, 1]));
                out.push(ch("eps2", &[1, -1]));
            }
            // reflection representation on the span of the two simple roots
            let (a, b) = match m {
                3 => (-1, -1),
                4 => (-2, -1),
                6 => (-3, -1),
                _ => (0, 0),
            };
            if m > 2 {
                out.push(WtIrrep {
                    name: "reflection".into(),
                    dim: 2,
                    gens: vec![int_mat(&[&[-1, -a], &[0, 1]]), int_mat(&[&[1, 0], &[-b, -1]])],
                });
            }
            if m == 6 {
                // inflated from the quotient by the centre, which is S₃
                out.push(WtIrrep {
                    name: "s3-standard".into(),
                    dim: 2,
                    gens: vec![int_mat(&[&[-1, 1], &[0, 1]]), int_mat(&[&[1, 0], &[1, -1]])],
                });
            }
            out
        }
    }
}

/// Positive-root indices of the simple roots of the subsystem `Z(t)`:
/// the elements of `Z(t)` that are not a sum of two others.
pub fn stabilizer_simple_roots(rs: &RootSystem, ctx: &FieldContext, t: &WeightPoint) -> Vec<usize> {
    let z = weights::zp_sets(rs, ctx, t).zero;
    let roots = rs.positive_roots();
    z.iter()
        .copied()
        .filter(|&k| {
            !z.iter().any(|&a| {
                z.iter().any(|&b| {
                    let s = [roots[a][0] + roots[b][0], roots[a][1] + roots[b][1]];
                    s == roots[k]
                })
            })
        })
        .collect()
}

/// The stabilizer generators (element indices) and the order of their product.
pub fn stabilizer_generators(rs: &RootSystem, ctx: &FieldContext, t: &WeightPoint) -> (Vec<usize>, usize) {
    let gens: Vec<usize> = stabilizer_simple_roots(rs, ctx, t).iter().map(|&k| rs.reflection(k)).collect();
    let m = if gens.len() == 2 {
        let p = rs.mul(gens[0], gens[1]);
        let mut acc = p;
        let mut k = 1;
        while acc != 0 {
            acc = rs.mul(acc, p);
            k += 1;
        }
        k
    } else {
        1
    };
    (gens, m)
}

fn check_irrep(irrep: &WtIrrep, ngens: usize, m: usize) -> Result<(), ModuleError> {
    if irrep.gens.len() != ngens {
        return Err(ModuleError::BadIrrep(format!("expected {} generators", ngens)));
    }
    let f = crate::scalars::CycloField::new(1);
    let conv = |a: &Mat<i64>| a.map(|&x| f.from_int(x));
    let id = linalg::identity(&*f, irrep.dim);
    let g: Vec<Mat<Cyc>> = irrep.gens.iter().map(conv).collect();
    for (k, x) in g.iter().enumerate() {
        if x.rows() != irrep.dim || x.cols() != irrep.dim {
            return Err(ModuleError::BadIrrep(format!("generator {} has the wrong size", k + 1)));
        }
        if !linalg::equal(&*f, &linalg::mul(&*f, x, x), &id) {
            return Err(ModuleError::BadIrrep(format!("generator {} is not an involution", k + 1)));
        }
    }
    if ngens == 2 {
        let p = linalg::mul(&*f, &g[0], &g[1]);
        if !linalg::equal(&*f, &linalg::pow(&*f, &p, m as u32), &id) {
            return Err(ModuleError::BadIrrep(format!("(r1 r2)^{} is not the identity", m)));
        }
    }
    Ok(())
}

/// `H ⊗_{C[X] ⋊ W_t} (C_t ⊗ ρ)` at `q² = 1`, where `T_i` acts as `s_i`.
pub fn clifford_module(rs: &Arc<RootSystem>, ctx: &Ctx, t: &WeightPoint, irrep: &WtIrrep) -> Result<ModuleRep, ModuleError> {
    if !ctx.is_one(&ctx.q_pow(2)) {
        return Err(ModuleError::QSquaredNotOne);
    }
    let (gens, m) = stabilizer_generators(rs, ctx, t);
    check_irrep(irrep, gens.len(), m)?;
    let orbit = weights::orbit_and_stabilizer(rs, ctx, t);
    // ρ on every element of W_t, by breadth-first search over the generators
    let k = irrep.dim;
    let to_s = |a: &Mat<i64>| a.map(|&x| ctx.from_int(x));
    let mut rho: Vec<Option<Mat<Scalar>>> = vec![None; rs.order()];
    rho[0] = Some(linalg::identity(&**ctx, k));
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        for (g, gm) in gens.iter().zip(&irrep.gens) {
            let v = rs.mul(u, *g);
            if rho[v].is_none() {
                rho[v] = Some(linalg::mul(&**ctx, rho[u].as_ref().unwrap(), &to_s(gm)));
                queue.push(v);
            }
        }
    }
    let cosets = orbit.len();
    let d = cosets * k;
    let n = rs.rank();
    let mut tm = Vec::with_capacity(n);
    for i in 0..n {
        let mut mat = linalg::zeros(&**ctx, d, d);
        for (p, &w) in orbit.reps.iter().enumerate() {
            let sw = rs.mul(rs.simple(i), w);
            let target = weights::weight_act(rs, ctx, sw, t);
            let pp = orbit.position(ctx, &target).expect("orbit is W-stable");
            let u = rs.mul(rs.inv(orbit.reps[pp]), sw);
            let r = rho[u].as_ref().expect("coset representative differs by an element of W_t");
            for a in 0..k {
                for b in 0..k {
                    mat.set(pp * k + a, p * k + b, r.get(a, b).clone());
                }
            }
        }
        tm.push(mat);
    }
    let xm = (0..n)
        .map(|i| Mat::from_fn(d, d, |r, c| if r == c { orbit.weights[r / k].omega_values()[i].clone() } else { ctx.zero() }))
        .collect();
    let labels = (0..d)
        .map(|j| format!("{}|{}", rs.element(orbit.reps[j / k]).name(), j % k + 1))
        .collect();
    Ok(ModuleRep {
        rs: rs.clone(),
        ctx: ctx.clone(),
        labels,
        t: tm,
        x: xm,
        provenance: Provenance::Clifford { irrep: irrep.name.clone() },
    })
}

/// A one-dimensional module together with its defining values.
#[derive(Clone, Debug)]
pub struct OneDim {
    pub t_values: Vec<Scalar>,
    pub weight: WeightPoint,
    pub module: ModuleRep,
}

/// All one-dimensional modules: `T_i ↦ q` with `t(X^{α_i}) = q²` or
/// `T_i ↦ −q⁻¹` with `t(X^{α_i}) = q⁻²`, for every lift of the root-lattice
/// values, with coinciding modules listed once.
pub fn one_dim_reps(rs: &Arc<RootSystem>, ctx: &Ctx) -> Result<Vec<OneDim>, ModuleError> {
    let n = rs.rank();
    let mut out: Vec<OneDim> = Vec::new();
    for pattern in 0..(1usize << n) {
        let signs: Vec<Sign> = (0..n).map(|i| if pattern >> i & 1 == 0 { Sign::PlusQ } else { Sign::MinusQInv }).collect();
        // braid relations with odd m force equal eigenvalues
        let consistent = (0..n).all(|i| (0..n).all(|j| i == j || rs.braid_exponent(i, j) % 2 == 0 || signs[i] == signs[j]));
        if !consistent {
            continue;
        }
        let tv: Vec<Scalar> = signs.iter().map(|s| s.value(ctx)).collect();
        let alpha: Vec<Scalar> = signs.iter().map(|s| s.required(ctx)).collect();
        for lift in 0..rs.lift_count() {
            let weight = weights::weight_from_simple_roots(rs, ctx, &alpha, lift)?;
            let dup = out.iter().any(|o| {
                o.weight.same(ctx, &weight) && o.t_values.iter().zip(&tv).all(|(a, b)| ctx.eq(a, b))
            });
            if dup {
                continue;
            }
            let one = |v: &Scalar| Mat::from_rows(vec![vec![v.clone()]]);
            let module = ModuleRep {
                rs: rs.clone(),
                ctx: ctx.clone(),
                labels: vec!["v".into()],
                t: tv.iter().map(one).collect(),
                x: weight.omega_values().iter().map(one).collect(),
                provenance: Provenance::OneDimensional,
            };
            out.push(OneDim { t_values: tv.clone(), weight, module });
        }
    }
    Ok(out)
}

/// Outcome of one relation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    /// First violating matrix entry `(row, col)`, if any.
    pub violation: Option<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    pub fn failures(&self) -> Vec<&RelationCheck> {
        self.checks.iter().filter(|c| c.violation.is_some()).collect()
    }
}

/// Checks the quadratic, braid and cross relations, commutativity and
/// invertibility of the `X^{ω_i}`, over any field domain.
pub fn check_relations<F: FieldOps>(f: &F, rs: &RootSystem, q: &F::E, t: &[Mat<F::E>], x: &[Mat<F::E>]) -> RelationReport {
    let n = rs.rank();
    let d = t.first().map_or(0, |m| m.rows());
    let id = linalg::identity(f, d);
    let qd = f.sub(q, &f.inv(q));
    let mut checks = Vec::new();
    let mut push = |relation: String, a: &Mat<F::E>, b: &Mat<F::E>| {
        checks.push(RelationCheck { relation, violation: linalg::first_difference(f, a, b) });
    };
    for i in 0..n {
        let lhs = linalg::mul(f, &t[i], &t[i]);
        let rhs = linalg::add(f, &linalg::scale(f, &t[i], &qd), &id);
        push(format!("quadratic T{}", i + 1), &lhs, &rhs);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let m = rs.braid_exponent(i, j);
            let alt = |a: usize, b: usize| {
                let mut acc = id.clone();
                for k in 0..m {
                    acc = linalg::mul(f, &acc, if k % 2 == 0 { &t[a] } else { &t[b] });
                }
                acc
            };
            push(format!("braid T{}T{}", i + 1, j + 1), &alt(i, j), &alt(j, i));
        }
    }
    let mut xinv = Vec::with_capacity(n);
    for (i, xi) in x.iter().enumerate() {
        match linalg::inverse(f, xi) {
            Some(inv) => {
                checks.push(RelationCheck { relation: format!("invertible X^w{}", i + 1), violation: None });
                xinv.push(inv);
            }
            None => {
                checks.push(RelationCheck { relation: format!("invertible X^w{}", i + 1), violation: Some((0, 0)) });
                return RelationReport { checks };
            }
        }
    }
    let mut push = |relation: String, a: &Mat<F::E>, b: &Mat<F::E>| {
        checks.push(RelationCheck { relation, violation: linalg::first_difference(f, a, b) });
    };
    for i in 0..n {
        for j in (i + 1)..n {
            push(
                format!("commute X^w{} X^w{}", i + 1, j + 1),
                &linalg::mul(f, &x[i], &x[j]),
                &linalg::mul(f, &x[j], &x[i]),
            );
        }
    }
    let x_pow = |mu: &Lat| -> Mat<F::E> {
        let mut acc = id.clone();
        for k in 0..n {
            let base = if mu[k] >= 0 { &x[k] } else { &xinv[k] };
            for _ in 0..mu[k].abs() {
                acc = linalg::mul(f, &acc, base);
            }
        }
        acc
    };
    for j in 0..n {
        let mut om = [0, 0];
        om[j] = 1;
        for i in 0..n {
            let lhs = linalg::mul(f, &x[j], &t[i]);
            let mut rhs = linalg::mul(f, &t[i], &x_pow(&rs.act(rs.simple(i), &om)));
            for (mu, c) in divided_difference(rs, &om, i) {
                let term = linalg::scale(f, &x_pow(&mu), &f.mul(&qd, &f.from_int(c)));
                rhs = linalg::add(f, &rhs, &term);
            }
            push(format!("cross X^w{} T{}", j + 1, i + 1), &lhs, &rhs);
        }
    }
    RelationReport { checks }
}

/// Relation report for a module (over plain cyclotomic numbers when possible).
pub fn verify_relations(m: &ModuleRep) -> RelationReport {
    if let Some(c) = m.to_cyc() {
        return check_relations(&*c.field, &m.rs, &c.q, &c.t, &c.x);
    }
    check_relations(&**m.ctx(), &m.rs, &m.ctx.q(), &m.t, &m.x)
}

#[cfg(test)]
mod tests;
