//! Weight spaces, τ-operators and composition factors of specialized modules.
//!
//! Everything here runs over a plain cyclotomic field: a module must first be
//! brought into a parameter-free context (see [`specialize`]).  A
//! [`Setting`] fixes the root system, that context and the central character;
//! modules are [`CycModule`]s whose weights lie in the setting's orbit.

use std::collections::BTreeMap;
use std::sync::Arc;

use thiserror::Error;

use crate::heckemod::{self, CycModule, ModuleError, ModuleRep};
use crate::linalg::{self, Mat, Subspace};
use crate::rootdata::{Lat, RootSystem};
use crate::scalars::{Ctx, Cyc, CycloField, FieldOps, FieldRef, ScalarError};
use crate::weights::{self, OrbitReport, WeightError, WeightPoint};

mod specialize;
mod taulaws;
pub use specialize::*;
pub use taulaws::*;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("the context still has free parameters or a symbolic q; specialize first")]
    NotSpecialized,
    #[error("the X-action has eigenvalues outside the orbit of the central character")]
    OutsideOrbit,
    #[error("tau_{0} is undefined: t(X^a{0}) = 1 on the source weight space")]
    TauUndefined(usize),
    #[error("subspace is not invariant under the generators")]
    NotInvariant,
    #[error("layer is not semisimple (nonzero radical)")]
    NotSemisimple,
    #[error("q must be a concrete root of unity to decompose")]
    NeedsConcreteQ,
    #[error("weight value `{0}` is not a root of unity times a parameter monomial")]
    NotRootOfUnity(String),
    #[error("no value is given for the parameter {0}")]
    MissingParam(&'static str),
    #[error("no specialization of the parameters keeps Z(t) and P(t) generic")]
    NoGenericSpecialization,
    #[error("UNRESOLVED: {0}")]
    Unresolved(String),
}

type Vector = Vec<Cyc>;

/// Root system, parameter-free context and central character of a computation.
#[derive(Clone, Debug)]
pub struct Setting {
    pub rs: Arc<RootSystem>,
    pub ctx: Ctx,
    pub weight: WeightPoint,
    pub orbit: OrbitReport,
    /// Coset word of each orbit weight.
    pub labels: Vec<String>,
    values: Vec<Vec<Cyc>>,
    q: Cyc,
}

impl Setting {
    pub fn new(rs: &Arc<RootSystem>, ctx: &Ctx, weight: &WeightPoint) -> Result<Setting, DecompError> {
        let q = ctx.to_cyc(&ctx.q()).ok_or(DecompError::NotSpecialized)?;
        let orbit = weights::orbit_and_stabilizer(rs, ctx, weight);
        let values = orbit
            .weights
            .iter()
            .map(|w| w.omega_values().iter().map(|v| ctx.to_cyc(v).ok_or(DecompError::NotSpecialized)).collect())
            .collect::<Result<Vec<Vec<Cyc>>, _>>()?;
        let labels = orbit.reps.iter().map(|&r| rs.element(r).name()).collect();
        Ok(Setting { rs: rs.clone(), ctx: ctx.clone(), weight: weight.clone(), orbit, labels, values, q })
    }

    pub fn field(&self) -> &FieldRef {
        self.ctx.field()
    }

    pub fn q(&self) -> &Cyc {
        &self.q
    }

    /// Values of the `p`-th orbit weight on the fundamental weights.
    pub fn omega_values(&self, p: usize) -> &[Cyc] {
        &self.values[p]
    }

    fn q_squared_is_one(&self) -> bool {
        let f = self.field();
        f.is_one(&f.mul(&self.q, &self.q))
    }

    /// Converts a module built in this setting's context.
    pub fn convert(&self, m: &ModuleRep) -> Result<CycModule, DecompError> {
        m.to_cyc().ok_or(DecompError::NotSpecialized)
    }

    /// `M(t)` for the setting's weight.
    pub fn principal_series(&self) -> Result<CycModule, DecompError> {
        self.convert(&heckemod::principal_series(&self.rs, &self.ctx, &self.weight))
    }
}

fn gens(m: &CycModule) -> impl Iterator<Item = &Mat<Cyc>> {
    m.t.iter().chain(m.x.iter())
}

fn stack<F: FieldOps>(f: &F, blocks: &[Mat<F::E>]) -> Mat<F::E> {
    let cols = blocks[0].cols();
    let rows: Vec<Vec<F::E>> = blocks.iter().flat_map(|b| (0..b.rows()).map(|r| b.row(r).to_vec())).collect();
    if rows.is_empty() {
        return linalg::zeros(f, 0, cols);
    }
    Mat::from_rows(rows)
}

fn shifted(f: &CycloField, a: &Mat<Cyc>, c: &Cyc) -> Mat<Cyc> {
    let mut m = a.clone();
    for i in 0..m.rows() {
        let v = f.sub(m.get(i, i), c);
        m.set(i, i, v);
    }
    m
}

/// Joint kernel of `(X^{ω_i} − c_i)^e` over all `i`.
fn joint_kernel(f: &CycloField, m: &CycModule, values: &[Cyc], e: u32) -> Vec<Vector> {
    let blocks: Vec<Mat<Cyc>> = m.x.iter().zip(values).map(|(x, c)| linalg::pow(f, &shifted(f, x, c), e)).collect();
    linalg::kernel(f, &stack(f, &blocks))
}

/// Generalized weight spaces, indexed by orbit position (possibly empty).
pub fn generalized_weight_spaces(s: &Setting, m: &CycModule) -> Result<Vec<Vec<Vector>>, DecompError> {
    let f = &**s.field();
    let d = m.dim();
    let spaces: Vec<Vec<Vector>> = (0..s.orbit.len()).map(|p| joint_kernel(f, m, &s.values[p], d as u32)).collect();
    if spaces.iter().map(|b| b.len()).sum::<usize>() != d {
        return Err(DecompError::OutsideOrbit);
    }
    Ok(spaces)
}

/// Joint eigenspaces, indexed by orbit position.
pub fn eigen_weight_spaces(s: &Setting, m: &CycModule) -> Vec<Vec<Vector>> {
    let f = &**s.field();
    (0..s.orbit.len()).map(|p| joint_kernel(f, m, &s.values[p], 1)).collect()
}

/// Generalized weight space dimensions by orbit position.
pub fn weight_dimensions(s: &Setting, m: &CycModule) -> Result<Vec<usize>, DecompError> {
    Ok(generalized_weight_spaces(s, m)?.iter().map(|b| b.len()).collect())
}

/// Matrix of `X^μ` (μ in ω-coordinates).
pub fn x_power(f: &CycloField, m: &CycModule, mu: &Lat) -> Mat<Cyc> {
    let mut acc = linalg::identity(f, m.dim());
    for (k, x) in m.x.iter().enumerate() {
        if mu[k] == 0 {
            continue;
        }
        let base = if mu[k] > 0 { x.clone() } else { linalg::inverse(f, x).expect("X is invertible") };
        acc = linalg::mul(f, &acc, &linalg::pow(f, &base, mu[k].unsigned_abs() as u32));
    }
    acc
}

/// Coordinates with respect to a linearly independent family.
struct Coords {
    basis: Vec<Vector>,
    pivots: Vec<usize>,
    inv: Mat<Cyc>,
}

impl Coords {
    fn new(f: &CycloField, basis: &[Vector]) -> Coords {
        let k = basis.len();
        if k == 0 {
            return Coords { basis: Vec::new(), pivots: Vec::new(), inv: Mat::from_fn(0, 0, |_, _| f.zero()) };
        }
        // pivot rows of the basis matrix are pivot columns of its transpose
        let mut bt = Mat::from_rows(basis.to_vec());
        let pivots = linalg::rref(f, &mut bt);
        assert_eq!(pivots.len(), k, "basis is not independent");
        let sub = Mat::from_fn(k, k, |i, j| basis[j][pivots[i]].clone());
        let inv = linalg::inverse(f, &sub).expect("pivot block invertible");
        Coords { basis: basis.to_vec(), pivots, inv }
    }

    fn solve(&self, f: &CycloField, v: &[Cyc]) -> Option<Vector> {
        let rhs: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let c = linalg::mul_vec(f, &self.inv, &rhs);
        // verify membership
        for (r, vr) in v.iter().enumerate() {
            let mut acc = f.zero();
            for (j, b) in self.basis.iter().enumerate() {
                if !c[j].is_zero() && !b[r].is_zero() {
                    acc = f.add(&acc, &f.mul(&c[j], &b[r]));
                }
            }
            if !f.equal(&acc, vr) {
                return None;
            }
        }
        Some(c)
    }
}

fn combine(f: &CycloField, basis: &[Vector], c: &[Cyc]) -> Vector {
    let d = basis.first().map_or(0, |b| b.len());
    let mut v = vec![f.zero(); d];
    for (b, cj) in basis.iter().zip(c) {
        if cj.is_zero() {
            continue;
        }
        for r in 0..d {
            if !b[r].is_zero() {
                v[r] = f.add(&v[r], &f.mul(cj, &b[r]));
            }
        }
    }
    v
}

/// Matrix of `τ_i = T_i − (q − q⁻¹)(1 − X^{−α_i})⁻¹` from `M_{t_src}^gen` to
/// `M_{s_i t_src}^gen`, in the coordinates of the bases returned by
/// [`generalized_weight_spaces`].
pub fn tau_matrix(s: &Setting, m: &CycModule, i: usize, src: usize) -> Result<TauBlock, DecompError> {
    let spaces = generalized_weight_spaces(s, m)?;
    tau_matrix_on(s, m, &spaces, i, src)
}

/// [`tau_matrix`] with the generalized weight spaces already computed.
fn tau_matrix_on(s: &Setting, m: &CycModule, spaces: &[Vec<Vector>], i: usize, src: usize) -> Result<TauBlock, DecompError> {
    let f = &**s.field();
    let rs = &s.rs;
    let a = rs.simple_root(i);
    let val = s.orbit.weights[src].eval(&s.ctx, &a);
    if s.ctx.is_one(&val) {
        return Err(DecompError::TauUndefined(i + 1));
    }
    let tgt = s
        .orbit
        .position(&s.ctx, &weights::weight_act(rs, &s.ctx, rs.simple(i), &s.orbit.weights[src]))
        .expect("orbit is W-stable");
    let src_basis = &spaces[src];
    let k = src_basis.len();
    let xinv = x_power(f, m, &[-a[0], -a[1]]);
    let src_coords = Coords::new(f, src_basis);
    // (1 − X^{−α_i}) restricted to the source
    let mut block_cols = Vec::with_capacity(k);
    for (j, b) in src_basis.iter().enumerate() {
        let y = linalg::mul_vec(f, &xinv, b);
        let mut c: Vector = src_coords.solve(f, &y).ok_or(DecompError::NotInvariant)?.iter().map(|x| f.neg(x)).collect();
        c[j] = f.add(&c[j], &f.one());
        block_cols.push(c);
    }
    let block = Mat::from_cols(k, &block_cols);
    let inv = linalg::inverse(f, &block).ok_or(DecompError::TauUndefined(i + 1))?;
    let qd = f.sub(&s.q, &f.inv(&s.q));
    let tgt_coords = Coords::new(f, &spaces[tgt]);
    let mut cols = Vec::with_capacity(k);
    for j in 0..k {
        let tb = linalg::mul_vec(f, &m.t[i], &src_basis[j]);
        let corr = combine(f, src_basis, &inv.col(j));
        let v: Vector = tb.iter().zip(&corr).map(|(x, y)| f.sub(x, &f.mul(&qd, y))).collect();
        cols.push(tgt_coords.solve(f, &v).ok_or(DecompError::NotInvariant)?);
    }
    Ok(TauBlock { source: src, target: tgt, matrix: Mat::from_cols(spaces[tgt].len(), &cols) })
}

/// A τ-operator between two generalized weight spaces.
#[derive(Clone, Debug)]
pub struct TauBlock {
    pub source: usize,
    pub target: usize,
    pub matrix: Mat<Cyc>,
}

/// Smallest invariant subspace containing `v`.
pub fn spin(m: &CycModule, v: &[Cyc]) -> Vec<Vector> {
    let f = &*m.field;
    let mut s = Subspace::new(m.dim());
    if !s.insert(f, v) {
        return Vec::new();
    }
    let mut queue = vec![v.to_vec()];
    while let Some(u) = queue.pop() {
        for g in gens(m) {
            let w = linalg::mul_vec(f, g, &u);
            if s.insert(f, &w) {
                if s.is_full() {
                    return s.into_basis();
                }
                queue.push(w);
            }
        }
    }
    s.into_basis()
}

/// Smallest invariant subspace containing all of `vs`.
pub fn spin_all(m: &CycModule, vs: &[Vector]) -> Vec<Vector> {
    let f = &*m.field;
    let mut s = Subspace::new(m.dim());
    let mut queue = Vec::new();
    for v in vs {
        if s.insert(f, v) {
            queue.push(v.clone());
        }
    }
    while let Some(u) = queue.pop() {
        for g in gens(m) {
            let w = linalg::mul_vec(f, g, &u);
            if s.insert(f, &w) {
                queue.push(w);
            }
        }
    }
    s.into_basis()
}

/// The module structure on an invariant subspace.
pub fn restrict(m: &CycModule, basis: &[Vector]) -> Result<CycModule, DecompError> {
    let f = &*m.field;
    let coords = Coords::new(f, basis);
    let k = basis.len();
    let map = |g: &Mat<Cyc>| -> Result<Mat<Cyc>, DecompError> {
        let cols = basis
            .iter()
            .map(|b| coords.solve(f, &linalg::mul_vec(f, g, b)).ok_or(DecompError::NotInvariant))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mat::from_cols(k, &cols))
    };
    Ok(CycModule {
        field: m.field.clone(),
        q: m.q.clone(),
        t: m.t.iter().map(map).collect::<Result<_, _>>()?,
        x: m.x.iter().map(map).collect::<Result<_, _>>()?,
    })
}

/// Change of basis to `[basis | complement]`, returning the complement too.
fn adapted_basis(f: &CycloField, d: usize, basis: &[Vector]) -> (Vec<Vector>, Mat<Cyc>, Mat<Cyc>) {
    let comp = Subspace::from_vectors(f, d, basis).complement(f);
    let all: Vec<Vector> = basis.iter().chain(comp.iter()).cloned().collect();
    let p = Mat::from_cols(d, &all);
    let pinv = linalg::inverse(f, &p).expect("adapted basis is a basis");
    (comp, p, pinv)
}

/// The module structure on `M / span(basis)` (in the coordinates of a
/// complement made of standard unit vectors).
pub fn quotient(m: &CycModule, basis: &[Vector]) -> CycModule {
    let f = &*m.field;
    let d = m.dim();
    let k = basis.len();
    let (_, p, pinv) = adapted_basis(f, d, basis);
    let idx: Vec<usize> = (k..d).collect();
    let map = |g: &Mat<Cyc>| {
        let conj = linalg::mul(f, &pinv, &linalg::mul(f, g, &p));
        conj.submatrix(&idx, &idx)
    };
    CycModule { field: m.field.clone(), q: m.q.clone(), t: m.t.iter().map(map).collect(), x: m.x.iter().map(map).collect() }
}

fn flatten(m: &Mat<Cyc>) -> Vector {
    m.entries().to_vec()
}

fn unflatten(d: usize, v: &[Cyc]) -> Mat<Cyc> {
    Mat::from_fn(d, d, |i, j| v[i * d + j].clone())
}

/// A basis of the (unital) matrix algebra generated by the module's generators.
pub fn algebra_closure(m: &CycModule) -> Vec<Mat<Cyc>> {
    let f = &*m.field;
    let d = m.dim();
    let mut s = Subspace::new(d * d);
    let id = linalg::identity(f, d);
    s.insert(f, &flatten(&id));
    let mut queue = vec![id];
    while let Some(b) = queue.pop() {
        for g in gens(m) {
            let p = linalg::mul(f, g, &b);
            if s.insert(f, &flatten(&p)) {
                if s.is_full() {
                    return s.basis().iter().map(|v| unflatten(d, v)).collect();
                }
                queue.push(p);
            }
        }
    }
    s.basis().iter().map(|v| unflatten(d, v)).collect()
}

/// `J = {a ∈ A : tr(ab) = 0 for all b ∈ A}`, the radical of `A` in characteristic zero.
pub fn radical(f: &CycloField, algebra: &[Mat<Cyc>]) -> Vec<Mat<Cyc>> {
    let n = algebra.len();
    if n == 0 {
        return Vec::new();
    }
    let d = algebra[0].rows();
    let tr = |a: &Mat<Cyc>, b: &Mat<Cyc>| {
        let mut acc = f.zero();
        for j in 0..d {
            for k in 0..d {
                let (x, y) = (a.get(j, k), b.get(k, j));
                if !x.is_zero() && !y.is_zero() {
                    acc = f.add(&acc, &f.mul(x, y));
                }
            }
        }
        acc
    };
    let mut gram = linalg::zeros(f, n, n);
    for a in 0..n {
        for b in a..n {
            let v = tr(&algebra[a], &algebra[b]);
            gram.set(a, b, v.clone());
            gram.set(b, a, v);
        }
    }
    linalg::kernel(f, &gram)
        .iter()
        .map(|c| {
            let mut acc = linalg::zeros(f, d, d);
            for (k, ck) in c.iter().enumerate() {
                if !ck.is_zero() {
                    acc = linalg::add(f, &acc, &linalg::scale(f, &algebra[k], ck));
                }
            }
            acc
        })
        .collect()
}

/// `0 ⊂ S₁ ⊂ … ⊂ M`, each `S_{k+1}/S_k` the socle of `M/S_k`.
#[derive(Clone, Debug)]
pub struct SocleFiltration {
    /// Cumulative bases of `S_1, S_2, …, M`.
    pub layers: Vec<Vec<Vector>>,
}

impl SocleFiltration {
    pub fn layer_dims(&self) -> Vec<usize> {
        let mut prev = 0;
        self.layers
            .iter()
            .map(|l| {
                let d = l.len() - prev;
                prev = l.len();
                d
            })
            .collect()
    }
}

/// The socle filtration; each socle is the common kernel of the radical of the
/// acting algebra.
pub fn socle_filtration(m: &CycModule) -> SocleFiltration {
    let f = &*m.field;
    let d = m.dim();
    let mut current: Vec<Vector> = Vec::new();
    let mut layers = Vec::new();
    while current.len() < d {
        let (comp, _, _) = adapted_basis(f, d, &current);
        let q = if current.is_empty() { m.clone() } else { quotient(m, &current) };
        let j = radical(f, &algebra_closure(&q));
        let soc: Vec<Vector> = if j.is_empty() {
            (0..q.dim())
                .map(|i| {
                    let mut e = vec![f.zero(); q.dim()];
                    e[i] = f.one();
                    e
                })
                .collect()
        } else {
            linalg::kernel(f, &stack(f, &j))
        };
        for y in soc {
            current.push(combine(f, &comp, &y));
        }
        layers.push(current.clone());
    }
    SocleFiltration { layers }
}

/// All module maps `a → b`, as matrices.
pub fn hom_space(a: &CycModule, b: &CycModule) -> Vec<Mat<Cyc>> {
    let f = &*a.field;
    let (da, db) = (a.dim(), b.dim());
    let n = da * db;
    let mut rows = Vec::new();
    for (ga, gb) in gens(a).zip(gens(b)) {
        // (Φ g_a − g_b Φ)_{rc} = 0, unknown Φ_{rk} at index r·da + k
        for r in 0..db {
            for c in 0..da {
                let mut row = vec![f.zero(); n];
                for k in 0..da {
                    let x = ga.get(k, c);
                    if !x.is_zero() {
                        row[r * da + k] = f.add(&row[r * da + k], x);
                    }
                }
                for k in 0..db {
                    let y = gb.get(r, k);
                    if !y.is_zero() {
                        row[k * da + c] = f.sub(&row[k * da + c], y);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = if rows.is_empty() { linalg::zeros(f, 1, n) } else { Mat::from_rows(rows) };
    linalg::kernel(f, &sys).iter().map(|v| Mat::from_fn(db, da, |r, k| v[r * da + k].clone())).collect()
}

/// Nonzero intertwiner between two modules of equal dimension; for simple
/// modules this decides isomorphism.
pub fn isomorphic(a: &CycModule, b: &CycModule) -> bool {
    a.dim() == b.dim() && !hom_space(a, b).is_empty()
}

/// An invariant complement of an invariant subspace, if one exists.
pub fn invariant_complement(m: &CycModule, basis: &[Vector]) -> Option<Vec<Vector>> {
    let f = &*m.field;
    let d = m.dim();
    let k = basis.len();
    let b = Mat::from_cols(d, basis);
    // unknown F (k×d), projection e = B F commuting with all generators and F B = I
    let n = k * d;
    let mut rows: Vec<Vector> = Vec::new();
    for g in gens(m) {
        let gb = linalg::mul(f, g, &b);
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![f.zero(); n + 1];
                for a in 0..k {
                    let bra = b.get(r, a);
                    if !bra.is_zero() {
                        for bb in 0..d {
                            let gv = g.get(bb, c);
                            if !gv.is_zero() {
                                row[a * d + bb] = f.add(&row[a * d + bb], &f.mul(bra, gv));
                            }
                        }
                    }
                    let x = gb.get(r, a);
                    if !x.is_zero() {
                        row[a * d + c] = f.sub(&row[a * d + c], x);
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    for a in 0..k {
        for c in 0..k {
            let mut row = vec![f.zero(); n + 1];
            for bb in 0..d {
                row[a * d + bb] = b.get(bb, c).clone();
            }
            row[n] = if a == c { f.one() } else { f.zero() };
            rows.push(row);
        }
    }
    let mut sys = Mat::from_rows(rows);
    let piv = linalg::rref(f, &mut sys);
    if piv.contains(&n) {
        return None;
    }
    let mut sol = vec![f.zero(); n];
    for (r, &p) in piv.iter().enumerate() {
        sol[p] = sys.get(r, n).clone();
    }
    let fm = Mat::from_fn(k, d, |a, c| sol[a * d + c].clone());
    let e = linalg::mul(f, &b, &fm);
    Some(linalg::kernel(f, &e))
}

/// Candidate scalars for eigenvalue and rank-drop searches: `0`, the
/// integers `−4..=4` and `±ζ_N^a`.
pub fn candidate_scalars(f: &CycloField) -> Vec<Cyc> {
    let mut out: Vec<Cyc> = (-4..=4).map(|k| f.from_int(k)).collect();
    for a in 0..f.order() as i64 {
        for s in [1, -1] {
            let z = f.mul_int(&f.zeta_pow(a), s);
            if !out.iter().any(|x| f.equal(x, &z)) {
                out.push(z);
            }
        }
    }
    out
}

/// At `q² = 1`, vectors of the eigenspace at orbit position `p` that generate
/// an irreducible `W_μ`-module (images of the idempotent attached to the first
/// basis vector of each irrep).
fn isotypic_vectors(s: &Setting, m: &CycModule, p: usize, eig: &[Vector]) -> Vec<Vector> {
    let f = &**s.field();
    let rs = &s.rs;
    let mu = &s.orbit.weights[p];
    let (sgens, order) = heckemod::stabilizer_generators(rs, &s.ctx, mu);
    let mut tw: Vec<Option<Mat<Cyc>>> = vec![None; rs.order()];
    let t_of = |tw: &mut Vec<Option<Mat<Cyc>>>, u: usize| -> Mat<Cyc> {
        if let Some(x) = &tw[u] {
            return x.clone();
        }
        let mut acc = linalg::identity(f, m.dim());
        for &i in &rs.element(u).word {
            acc = linalg::mul(f, &acc, &m.t[i]);
        }
        tw[u] = Some(acc.clone());
        acc
    };
    let mut out = Vec::new();
    for irrep in heckemod::wt_irreps(sgens.len(), order) {
        // ρ on each element of W_μ by breadth-first search
        let mut rho: Vec<Option<Mat<i64>>> = vec![None; rs.order()];
        rho[0] = Some(Mat::from_fn(irrep.dim, irrep.dim, |i, j| i64::from(i == j)));
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head];
            head += 1;
            for (g, gm) in sgens.iter().zip(&irrep.gens) {
                let v = rs.mul(u, *g);
                if rho[v].is_none() {
                    let a = rho[u].as_ref().unwrap();
                    let prod = Mat::from_fn(irrep.dim, irrep.dim, |i, j| {
                        (0..irrep.dim).map(|k| a.get(i, k) * gm.get(k, j)).sum::<i64>()
                    });
                    rho[v] = Some(prod);
                    queue.push(v);
                }
            }
        }
        let mut proj = linalg::zeros(f, m.dim(), m.dim());
        for &u in &queue {
            let c = *rho[rs.inv(u)].as_ref().expect("W_μ is closed under inverses").get(0, 0);
            if c != 0 {
                proj = linalg::add(f, &proj, &linalg::scale(f, &t_of(&mut tw, u), &f.from_int(c)));
            }
        }
        for v in eig {
            let w = linalg::mul_vec(f, &proj, v);
            if w.iter().any(|x| !x.is_zero()) {
                out.push(w);
                break;
            }
        }
    }
    out
}

/// A proper nonzero submodule, or `None` when the module is simple.
pub fn find_submodule(s: &Setting, m: &CycModule) -> Result<Option<Vec<Vector>>, DecompError> {
    let f = &**s.field();
    let d = m.dim();
    if d <= 1 {
        return Ok(None);
    }
    let eig = eigen_weight_spaces(s, m);
    if eig.iter().all(|e| e.is_empty()) {
        return Err(DecompError::OutsideOrbit);
    }
    for e in &eig {
        for v in e {
            let sp = spin(m, v);
            if sp.len() < d {
                return Ok(Some(sp));
            }
        }
    }
    if eig.iter().all(|e| e.len() <= 1) {
        return Ok(None);
    }
    if s.q_squared_is_one() {
        // a vector generating an irreducible W_μ-module spins to a simple module
        let (p, e) = eig.iter().enumerate().find(|(_, e)| !e.is_empty()).unwrap();
        let cands = isotypic_vectors(s, m, p, e);
        let v = cands.first().ok_or_else(|| DecompError::Unresolved("no isotypic vector".into()))?;
        let sp = spin(m, v);
        return Ok(if sp.len() < d { Some(sp) } else { None });
    }
    let alg = algebra_closure(m);
    if alg.len() == d * d {
        return Ok(None);
    }
    let j = radical(f, &alg);
    if !j.is_empty() {
        let cols: Vec<Vector> = j.iter().flat_map(|a| (0..d).map(|c| a.col(c))).collect();
        let jv = Subspace::from_vectors(f, d, &cols).into_basis();
        return Ok(Some(jv));
    }
    // semisimple but not absolutely simple: eigenvectors of the commutant
    let cands = candidate_scalars(f);
    for c in hom_space(m, m) {
        let scalar = linalg::equal(f, &c, &linalg::scale(f, &linalg::identity(f, d), c.get(0, 0)));
        if scalar {
            continue;
        }
        for lam in &cands {
            let ker = linalg::kernel(f, &shifted(f, &c, lam));
            if !ker.is_empty() && ker.len() < d {
                return Ok(Some(ker));
            }
        }
    }
    // rank-drop search along lines e_a + x e_b in each eigenspace
    for e in &eig {
        for a in 0..e.len() {
            for b in 0..e.len() {
                if a == b {
                    continue;
                }
                for x in &cands {
                    let v: Vector = e[a].iter().zip(&e[b]).map(|(p, r)| f.add(p, &f.mul(x, r))).collect();
                    let sp = spin(m, &v);
                    if !sp.is_empty() && sp.len() < d {
                        return Ok(Some(sp));
                    }
                }
            }
        }
    }
    Err(DecompError::Unresolved(format!(
        "semisimple module of dimension {} with acting algebra of dimension {} has no split over the candidate scalars",
        d,
        alg.len()
    )))
}

/// Simple submodules whose direct sum is the given semisimple module.
pub fn split_semisimple(s: &Setting, m: &CycModule) -> Result<Vec<Vec<Vector>>, DecompError> {
    let f = &**s.field();
    if !radical(f, &algebra_closure(m)).is_empty() {
        return Err(DecompError::NotSemisimple);
    }
    split_rec(s, m)
}

fn split_rec(s: &Setting, m: &CycModule) -> Result<Vec<Vec<Vector>>, DecompError> {
    let f = &**s.field();
    let Some(sub) = find_submodule(s, m)? else {
        let d = m.dim();
        return Ok(vec![(0..d)
            .map(|i| {
                let mut e = vec![f.zero(); d];
                e[i] = f.one();
                e
            })
            .collect()]);
    };
    let comp = invariant_complement(m, &sub).ok_or(DecompError::NotSemisimple)?;
    let mut out = Vec::new();
    for part in [sub, comp] {
        let inner = restrict(m, &part)?;
        for piece in split_rec(s, &inner)? {
            out.push(piece.iter().map(|c| combine(f, &part, c)).collect());
        }
    }
    Ok(out)
}

/// One isomorphism class of composition factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport {
    pub dim: usize,
    /// Generalized weight space dimensions, keyed by coset word; zero entries omitted.
    pub signature: BTreeMap<String, usize>,
    pub multiplicity: usize,
    /// Positions (from the bottom, starting at 0) in the computed composition series.
    pub layers: Vec<usize>,
}

impl FactorReport {
    /// Signature values in ascending order (independent of the base point).
    pub fn sorted_signature(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.signature.values().copied().collect();
        v.sort();
        v
    }
}

/// Composition factors of a module, grouped into isomorphism classes.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<FactorReport>,
    /// Dimensions along the composition series, bottom first.
    pub series: Vec<usize>,
    /// One simple module per class, in the order of `factors`.
    pub simples: Vec<CycModule>,
}

impl Decomposition {
    /// Ascending dimensions of the distinct simple factors (a table cell).
    pub fn class_dims(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.factors.iter().map(|f| f.dim).collect();
        v.sort();
        v
    }

    /// Σ dim × multiplicity.
    pub fn total_dim(&self) -> usize {
        self.factors.iter().map(|f| f.dim * f.multiplicity).sum()
    }

    /// Multiset of `(dim, sorted signature)` with multiplicities.
    pub fn shape(&self) -> Vec<(usize, Vec<usize>, usize)> {
        let mut v: Vec<_> = self.factors.iter().map(|f| (f.dim, f.sorted_signature(), f.multiplicity)).collect();
        v.sort();
        v
    }
}

fn composition_series(s: &Setting, m: &CycModule, out: &mut Vec<CycModule>) -> Result<(), DecompError> {
    match find_submodule(s, m)? {
        None => out.push(m.clone()),
        Some(sub) => {
            composition_series(s, &restrict(m, &sub)?, out)?;
            composition_series(s, &quotient(m, &sub), out)?;
        }
    }
    Ok(())
}

/// Composition factors, with isomorphism decided by intertwiner solves.
pub fn composition_factors(s: &Setting, m: &CycModule) -> Result<Decomposition, DecompError> {
    generalized_weight_spaces(s, m)?;
    let mut series = Vec::new();
    composition_series(s, m, &mut series)?;
    let mut factors: Vec<FactorReport> = Vec::new();
    let mut simples: Vec<CycModule> = Vec::new();
    for (pos, fm) in series.iter().enumerate() {
        let dims = weight_dimensions(s, fm)?;
        let signature: BTreeMap<String, usize> =
            dims.iter().enumerate().filter(|(_, &c)| c > 0).map(|(p, &c)| (s.labels[p].clone(), c)).collect();
        let found = (0..factors.len())
            .find(|&k| factors[k].dim == fm.dim() && factors[k].signature == signature && isomorphic(&simples[k], fm));
        match found {
            Some(k) => {
                factors[k].multiplicity += 1;
                factors[k].layers.push(pos);
            }
            None => {
                factors.push(FactorReport { dim: fm.dim(), signature, multiplicity: 1, layers: vec![pos] });
                simples.push(fm.clone());
            }
        }
    }
    Ok(Decomposition { factors, series: series.iter().map(|m| m.dim()).collect(), simples })
}

#[cfg(test)]
mod tests;
