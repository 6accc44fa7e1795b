//! The scalar field: fractions of Laurent polynomials in `u, g_z, g_w` over a
//! cyclotomic field, with `q = u^D`, `z = g_z^D`, `w = g_w^D`.
//!
//! When `q` is a concrete root of unity the generator `u` is not a variable
//! but the fixed number `ζ_{nD}` inside `Q(ζ_N)`; the same [`Scalar`] type
//! covers both regimes.

mod cyclo;
mod expr;
mod laurent;

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use thiserror::Error;

pub use cyclo::{cyclotomic_polynomial, Cyc, CycloField, FieldRef};
pub use laurent::{Laurent, Mono, NVARS, ONE_MONO};

/// Index of the `u` variable (generic `q` only).
pub const VAR_U: usize = 0;
/// Index of `g_z`, with `z = g_z^D`.
pub const VAR_Z: usize = 1;
/// Index of `g_w`, with `w = g_w^D`.
pub const VAR_W: usize = 2;

/// Largest cyclotomic order accepted by [`FieldContext::new`].
pub const MAX_ORDER: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("cyclotomic order {0} exceeds the supported bound {MAX_ORDER}")]
    OrderTooLarge(usize),
    #[error("malformed field description: {0}")]
    BadSpec(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent denominator {0} does not divide the root denominator {1}")]
    ExponentDenominator(i64, i64),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("zeta({0}) is not in Q(zeta_{1})")]
    ZetaNotInField(usize, usize),
    #[error("value is not a unit monomial times a root of unity")]
    NotMonomial,
    #[error("the {0}-th roots are not expressible in Q(zeta_{1}); enlarge the field")]
    RootsNotInField(u32, usize),
}

/// How `q` is fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QKind {
    Generic,
    /// `q = e^{2πi/n}`.
    Zeta(u32),
}

/// Free parameters that may appear in characters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Z,
    W,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    pub q_kind: QKind,
    /// `D`: `q`, `z`, `w` are the `D`-th powers of the generators.
    pub root_denominator: u32,
    pub free_params: Vec<Param>,
    /// Extra multiplier for the cyclotomic order (1 unless a caller needs
    /// more roots of unity than the default closure provides).
    pub extra_factor: u32,
}

impl FieldSpec {
    pub fn new(q_kind: QKind) -> Self {
        FieldSpec { q_kind, root_denominator: 6, free_params: Vec::new(), extra_factor: 1 }
    }

    pub fn with_params(mut self, params: &[Param]) -> Self {
        self.free_params = params.to_vec();
        self
    }

    pub fn with_root_denominator(mut self, d: u32) -> Self {
        self.root_denominator = d;
        self
    }

    pub fn with_extra_factor(mut self, k: u32) -> Self {
        self.extra_factor = k;
        self
    }

    /// `N = lcm(n·D, 2, 3) · extra` (`lcm(2, 3) · extra` for generic `q`).
    pub fn cyclotomic_order(&self) -> usize {
        let base = match self.q_kind {
            QKind::Generic => 6usize,
            QKind::Zeta(n) => (n as usize * self.root_denominator as usize).lcm(&6),
        };
        base * self.extra_factor.max(1) as usize
    }
}

/// An element of the scalar field; meaningful only with its [`FieldContext`].
#[derive(Clone, Debug, Eq, Hash)]
pub struct Scalar {
    num: Laurent,
    den: Laurent,
}

impl PartialEq for Scalar {
    /// Syntactic equality of canonical forms; use [`FieldContext::eq`] for
    /// guaranteed field equality when denominators are non-trivial.
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Scalar {
    pub fn numerator(&self) -> &Laurent {
        &self.num
    }

    pub fn denominator(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some((c, m))` if the scalar is a single term `c · m`.
    pub fn as_monomial(&self) -> Option<(Cyc, Mono)> {
        let d = self.den.as_constant()?;
        if !is_unit_den(d) {
            return None;
        }
        match self.num.terms() {
            [(m, c)] => Some((c.clone(), *m)),
            _ => None,
        }
    }
}

fn is_unit_den(d: &Cyc) -> bool {
    // canonical denominators are either 1 or a non-constant polynomial
    d.is_unity()
}

/// Arithmetic interface shared by every scalar domain used in linear algebra.
pub trait FieldOps: Send + Sync {
    type E: Clone + fmt::Debug + Send + Sync;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_int(&self, k: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn equal(&self, a: &Self::E, b: &Self::E) -> bool {
        self.is_zero(&self.sub(a, b))
    }
    fn div(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.mul(a, &self.inv(b))
    }
    fn is_one(&self, a: &Self::E) -> bool {
        self.equal(a, &self.one())
    }
    fn display(&self, a: &Self::E) -> String;
}

impl FieldOps for CycloField {
    type E = Cyc;
    fn zero(&self) -> Cyc {
        CycloField::zero(self)
    }
    fn one(&self) -> Cyc {
        CycloField::one(self)
    }
    fn from_int(&self, k: i64) -> Cyc {
        CycloField::from_int(self, k)
    }
    fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        CycloField::add(self, a, b)
    }
    fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        CycloField::sub(self, a, b)
    }
    fn neg(&self, a: &Cyc) -> Cyc {
        CycloField::neg(self, a)
    }
    fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        CycloField::mul(self, a, b)
    }
    fn inv(&self, a: &Cyc) -> Cyc {
        CycloField::inv(self, a)
    }
    fn is_zero(&self, a: &Cyc) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &Cyc, b: &Cyc) -> bool {
        a == b
    }
    fn is_one(&self, a: &Cyc) -> bool {
        CycloField::is_one(self, a)
    }
    fn display(&self, a: &Cyc) -> String {
        self.to_expr(a)
    }
}

/// A scalar field instance: the cyclotomic field plus the meaning of
/// `q`, `z`, `w`.
#[derive(Debug)]
pub struct FieldContext {
    spec: FieldSpec,
    field: FieldRef,
    q: Scalar,
    /// `Some(u)` when `q` is concrete and `u = ζ_{nD}` is a number.
    u_value: Option<Cyc>,
}

pub type Ctx = Arc<FieldContext>;

impl FieldContext {
    pub fn new(spec: FieldSpec) -> Result<Ctx, ScalarError> {
        if spec.root_denominator == 0 {
            return Err(ScalarError::BadSpec("root denominator must be positive".into()));
        }
        if let QKind::Zeta(0) = spec.q_kind {
            return Err(ScalarError::BadSpec("zeta order must be positive".into()));
        }
        let n = spec.cyclotomic_order();
        if n > MAX_ORDER {
            return Err(ScalarError::OrderTooLarge(n));
        }
        let field = CycloField::new(n);
        let d = spec.root_denominator as i32;
        let (q, u_value) = match spec.q_kind {
            QKind::Generic => {
                let mut m = ONE_MONO;
                m[VAR_U] = d;
                (Scalar { num: Laurent::term(m, field.one()), den: Laurent::constant(field.one()) }, None)
            }
            QKind::Zeta(k) => {
                let step = n / (k as usize * spec.root_denominator as usize);
                let u = field.zeta_pow(step as i64);
                let qv = field.pow(&u, d as i64);
                (
                    Scalar { num: Laurent::constant(qv), den: Laurent::constant(field.one()) },
                    Some(u),
                )
            }
        };
        Ok(Arc::new(FieldContext { spec, field, q, u_value }))
    }

    /// Convenience: generic `q`, default root denominator, given parameters.
    pub fn generic(params: &[Param]) -> Ctx {
        Self::new(FieldSpec::new(QKind::Generic).with_params(params)).expect("generic context")
    }

    /// Convenience: `q = ζ_n`, default root denominator, given parameters.
    pub fn zeta(n: u32, params: &[Param]) -> Ctx {
        Self::new(FieldSpec::new(QKind::Zeta(n)).with_params(params)).expect("zeta context")
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn field(&self) -> &FieldRef {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.field.order()
    }

    pub fn root_denominator(&self) -> i32 {
        self.spec.root_denominator as i32
    }

    pub fn q_kind(&self) -> QKind {
        self.spec.q_kind
    }

    pub fn has_param(&self, p: Param) -> bool {
        self.spec.free_params.contains(&p)
    }

    pub fn q(&self) -> Scalar {
        self.q.clone()
    }

    pub fn u_value(&self) -> Option<&Cyc> {
        self.u_value.as_ref()
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        self.pow(&self.q, k)
    }

    /// `q - q^{-1}`.
    pub fn q_diff(&self) -> Scalar {
        self.sub(&self.q, &self.q_pow(-1))
    }

    pub fn constant(&self, c: Cyc) -> Scalar {
        Scalar { num: Laurent::constant(c), den: Laurent::constant(self.field.one()) }
    }

    pub fn zeta_pow(&self, m: i64) -> Scalar {
        self.constant(self.field.zeta_pow(m))
    }

    /// `ζ_k`, the primitive `k`-th root `e^{2πi/k}`; requires `k | N`.
    pub fn zeta_of_order(&self, k: usize) -> Result<Scalar, ScalarError> {
        let n = self.order();
        if k == 0 || n % k != 0 {
            return Err(ScalarError::ZetaNotInField(k, n));
        }
        Ok(self.zeta_pow((n / k) as i64))
    }

    /// The monomial `g^m` in the generators (with `u` folded into a number for concrete `q`).
    pub fn monomial(&self, m: Mono) -> Scalar {
        self.monomial_with(self.field.one(), m)
    }

    pub fn monomial_with(&self, c: Cyc, mut m: Mono) -> Scalar {
        let mut c = c;
        if let Some(u) = &self.u_value {
            if m[VAR_U] != 0 {
                c = self.field.mul(&c, &self.field.pow(u, m[VAR_U] as i64));
                m[VAR_U] = 0;
            }
        }
        Scalar { num: Laurent::term(m, c), den: Laurent::constant(self.field.one()) }
    }

    /// The free parameter `z` or `w`.
    pub fn param(&self, p: Param) -> Scalar {
        let mut m = ONE_MONO;
        m[match p {
            Param::Z => VAR_Z,
            Param::W => VAR_W,
        }] = self.root_denominator();
        self.monomial(m)
    }

    fn make(&self, num: Laurent, den: Laurent) -> Scalar {
        assert!(!den.is_zero(), "zero denominator");
        let f = &*self.field;
        if num.is_zero() {
            return Scalar { num: Laurent::zero(), den: Laurent::constant(f.one()) };
        }
        // move monomial content of the denominator to the numerator
        let dm = den.min_mono();
        let neg = [-dm[0], -dm[1], -dm[2]];
        let mut num = num.shift(&neg);
        let mut den = den.shift(&neg);
        if let Some(c) = den.as_constant().cloned() {
            let ci = f.inv(&c);
            return Scalar { num: num.scale(f, &ci), den: Laurent::constant(f.one()) };
        }
        let lc = den.leading().expect("nonzero").1.clone();
        let lci = f.inv(&lc);
        num = num.scale(f, &lci);
        den = den.scale(f, &lci);
        if let Some(qt) = num.div_exact(f, &den) {
            return Scalar { num: qt, den: Laurent::constant(f.one()) };
        }
        let vn = num.variables();
        let vd = den.variables();
        let vars: Vec<usize> = (0..NVARS).filter(|&i| vn[i] || vd[i]).collect();
        if vars.len() == 1 {
            let g = Laurent::univariate_gcd(f, &num, &den, vars[0]);
            if g.len() > 1 {
                let gm = g.min_mono();
                let g = g.shift(&[-gm[0], -gm[1], -gm[2]]);
                if let (Some(n2), Some(d2)) = (num.div_exact(f, &g), den.div_exact(f, &g)) {
                    return self.make(n2, d2);
                }
            }
        }
        Scalar { num, den }
    }

    pub fn from_laurent(&self, p: Laurent) -> Scalar {
        self.make(p, Laurent::constant(self.field.one()))
    }

    pub fn fraction(&self, num: Laurent, den: Laurent) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.make(num, den))
    }

    pub fn pow(&self, a: &Scalar, e: i64) -> Scalar {
        if e == 0 {
            return self.one();
        }
        if let Some((c, m)) = a.as_monomial() {
            let f = &*self.field;
            let cm = f.pow(&c, e);
            let e32 = e as i32;
            return self.monomial_with(cm, [m[0] * e32, m[1] * e32, m[2] * e32]);
        }
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn try_inv(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        if a.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.inv(a))
    }

    /// Parameter-free, `u`-free value as a cyclotomic number.
    pub fn to_cyc(&self, a: &Scalar) -> Option<Cyc> {
        if a.is_zero() {
            return Some(self.field.zero());
        }
        let d = a.den.as_constant()?;
        let n = a.num.as_constant()?;
        Some(self.field.div(n, d))
    }

    /// Multiplicative order of `x` if it is a parameter-free root of unity.
    pub fn root_of_unity_order(&self, x: &Scalar) -> Option<usize> {
        let c = self.to_cyc(x)?;
        let m = self.field.root_of_unity_exponent(&c)?;
        let n = self.order();
        Some(n / m.gcd(&n))
    }

    /// All `k`-th roots of a unit monomial times a root of unity, in the
    /// order of increasing root-of-unity exponent.
    pub fn kth_root(&self, x: &Scalar, k: u32) -> Result<Vec<Scalar>, ScalarError> {
        assert!(k > 0);
        let (c, m) = x.as_monomial().ok_or(ScalarError::NotMonomial)?;
        let f = &*self.field;
        let e = f.root_of_unity_exponent(&c).ok_or(ScalarError::NotMonomial)?;
        let ki = k as i32;
        if m.iter().any(|&x| x % ki != 0) {
            return Err(ScalarError::RootsNotInField(k, self.order()));
        }
        let root_m = [m[0] / ki, m[1] / ki, m[2] / ki];
        let n = self.order();
        let roots: Vec<Scalar> = (0..n)
            .filter(|&j| (j * k as usize) % n == e)
            .map(|j| self.monomial_with(f.zeta_pow(j as i64), root_m))
            .collect();
        if roots.is_empty() {
            return Err(ScalarError::RootsNotInField(k, n));
        }
        Ok(roots)
    }

    /// Exact field equality (cross-multiplication).
    pub fn eq(&self, a: &Scalar, b: &Scalar) -> bool {
        if a == b {
            return true;
        }
        let f = &*self.field;
        if a.den.is_one(f) && b.den.is_one(f) {
            return false;
        }
        a.num.mul(f, &b.den) == b.num.mul(f, &a.den)
    }

    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        expr::parse(self, text)
    }

    pub fn to_expr(&self, a: &Scalar) -> String {
        expr::render(self, a)
    }

    /// Applies a ring homomorphism that fixes `Q(ζ_N)` and substitutes
    /// numbers for the variables `g_z`, `g_w` (and `u` if generic).
    pub fn substitute(&self, a: &Scalar, vals: &[Option<Cyc>; NVARS]) -> Scalar {
        let f = &*self.field;
        let sub = |p: &Laurent| -> Laurent {
            let terms = p
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut c = c.clone();
                    let mut m2 = *m;
                    for i in 0..NVARS {
                        if let Some(v) = &vals[i] {
                            if m[i] != 0 {
                                c = f.mul(&c, &f.pow(v, m[i] as i64));
                                m2[i] = 0;
                            }
                        }
                    }
                    (m2, c)
                })
                .collect();
            Laurent::from_terms(f, terms)
        };
        self.make(sub(&a.num), sub(&a.den))
    }
}

impl FieldOps for FieldContext {
    type E = Scalar;
    fn zero(&self) -> Scalar {
        Scalar { num: Laurent::zero(), den: Laurent::constant(self.field.one()) }
    }
    fn one(&self) -> Scalar {
        self.constant(self.field.one())
    }
    fn from_int(&self, k: i64) -> Scalar {
        self.constant(self.field.from_int(k))
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let f = &*self.field;
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let num = a.num.add(f, &b.num);
            if a.den.is_one(f) {
                return Scalar { num, den: a.den.clone() };
            }
            return self.make(num, a.den.clone());
        }
        let num = a.num.mul(f, &b.den).add(f, &b.num.mul(f, &a.den));
        self.make(num, a.den.mul(f, &b.den))
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        Scalar { num: a.num.neg(&self.field), den: a.den.clone() }
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        let f = &*self.field;
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if a.den.is_one(f) && b.den.is_one(f) {
            return Scalar { num: a.num.mul(f, &b.num), den: a.den.clone() };
        }
        self.make(a.num.mul(f, &b.num), a.den.mul(f, &b.den))
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero scalar");
        self.make(a.den.clone(), a.num.clone())
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &Scalar, b: &Scalar) -> bool {
        self.eq(a, b)
    }
    fn is_one(&self, a: &Scalar) -> bool {
        a.den.is_one(&self.field) && a.num.is_one(&self.field)
    }
    fn display(&self, a: &Scalar) -> String {
        self.to_expr(a)
    }
}

#[cfg(test)]
mod tests;
