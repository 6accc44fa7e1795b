//! Moving a weight into the smallest cyclotomic context that holds its values.
//!
//! Every weight in the inventory takes values of the form
//! `(root of unity) · g_z^a · g_w^b` once `q` is a root of unity, so after
//! choosing roots of unity for `g_z = z^{1/D}` and `g_w = w^{1/D}` every value
//! is a root of unity.  Roots of unity are handled as fractions of a full
//! turn, which keeps the search over parameter values free of field arithmetic.

use std::collections::HashMap;

use num_integer::Integer;

use super::DecompError;
use crate::rootdata::RootSystem;
use crate::scalars::{Ctx, FieldContext, FieldSpec, Param, QKind, VAR_U, VAR_W, VAR_Z};
use crate::weights::{self, WeightPoint, ZpSets};

/// `e^{2πi·num/den}`, kept reduced with `0 ≤ num < den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turn {
    pub num: i64,
    pub den: i64,
}

impl Turn {
    pub fn new(num: i64, den: i64) -> Turn {
        assert!(den > 0);
        let g = num.gcd(&den);
        let (n, d) = (num / g, den / g);
        Turn { num: n.rem_euclid(d), den: d }
    }

    pub fn zero() -> Turn {
        Turn { num: 0, den: 1 }
    }

    pub fn add(self, o: Turn) -> Turn {
        let den = self.den.lcm(&o.den);
        Turn::new(self.num * (den / self.den) + o.num * (den / o.den), den)
    }

    pub fn times(self, k: i64) -> Turn {
        Turn::new(self.num * k, self.den)
    }

    pub fn divide(self, k: i64) -> Turn {
        Turn::new(self.num, self.den * k)
    }

    /// Multiplicative order of the root of unity.
    pub fn order(self) -> i64 {
        self.den
    }
}

/// A weight value `ζ · g_z^a · g_w^b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct MonomialValue {
    constant: Turn,
    z: i64,
    w: i64,
}

impl MonomialValue {
    fn at(&self, gz: Turn, gw: Turn) -> Turn {
        self.constant.add(gz.times(self.z)).add(gw.times(self.w))
    }
}

/// A parameter-free copy of a weight.
#[derive(Clone, Debug)]
pub struct Specialized {
    pub ctx: Ctx,
    pub weight: WeightPoint,
    /// Chosen values of `z`, `w` (as turns).
    pub choices: Vec<(Param, Turn)>,
    /// `Z(t)`, `P(t)` after specialization.
    pub zp: ZpSets,
    /// Whether `Z`, `P` and the orbit size agree with the unspecialized weight.
    pub certified: bool,
}

fn euler_phi(mut n: i64) -> i64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The context with `q = ζ_n`, no fractional powers of `q` and cyclotomic
/// order `order` (a multiple of `lcm(n, 6)`).
pub fn reduced_context(n: u32, order: usize) -> Result<Ctx, DecompError> {
    let base = (n as usize).lcm(&6);
    assert_eq!(order % base, 0);
    let spec = FieldSpec::new(QKind::Zeta(n)).with_root_denominator(1).with_extra_factor((order / base) as u32);
    Ok(FieldContext::new(spec)?)
}

fn monomial_values(ctx: &FieldContext, t: &WeightPoint) -> Result<Vec<MonomialValue>, DecompError> {
    let f = ctx.field();
    let n = ctx.order() as i64;
    t.omega_values()
        .iter()
        .map(|v| {
            let bad = || DecompError::NotRootOfUnity(ctx.to_expr(v));
            let (c, m) = v.as_monomial().ok_or_else(bad)?;
            if m[VAR_U] != 0 {
                return Err(DecompError::NeedsConcreteQ);
            }
            let e = f.root_of_unity_exponent(&c).ok_or_else(bad)?;
            Ok(MonomialValue { constant: Turn::new(e as i64, n), z: m[VAR_Z] as i64, w: m[VAR_W] as i64 })
        })
        .collect()
}

fn build(n: u32, turns: &[Turn], cache: &mut HashMap<usize, Ctx>) -> Result<(Ctx, WeightPoint), DecompError> {
    let mut order = (n as i64).lcm(&6);
    for t in turns {
        order = order.lcm(&t.den);
    }
    let order = order as usize;
    let ctx = match cache.get(&order) {
        Some(c) => c.clone(),
        None => {
            let c = reduced_context(n, order)?;
            cache.insert(order, c.clone());
            c
        }
    };
    let vals = turns.iter().map(|t| ctx.zeta_pow(t.num * (order as i64 / t.den))).collect();
    Ok((ctx, WeightPoint::from_omega_values(vals)?))
}

/// Specializes the free parameters of `t`.
///
/// With `fixed` empty, values `g_z = ζ_M^a`, `g_w = ζ_M^b` are searched in
/// order of the degree of the resulting field, and the first choice that keeps
/// `Z(t)`, `P(t)` and the orbit size equal to their values for indeterminate
/// parameters is taken.  With `fixed`, the given values of `z`, `w` are used
/// (taking `g = z^{1/D}` with the smallest turn) and the result is reported as
/// certified only if those sets agree.
pub fn specialize(rs: &RootSystem, ctx: &FieldContext, t: &WeightPoint, fixed: &[(Param, Turn)]) -> Result<Specialized, DecompError> {
    let QKind::Zeta(n) = ctx.q_kind() else {
        return Err(DecompError::NeedsConcreteQ);
    };
    let mono = monomial_values(ctx, t)?;
    let uses_z = mono.iter().any(|m| m.z != 0);
    let uses_w = mono.iter().any(|m| m.w != 0);
    let expected_zp = weights::zp_sets(rs, ctx, t);
    let expected_orbit = weights::orbit_and_stabilizer(rs, ctx, t).len();
    let d = ctx.root_denominator() as i64;
    let mut cache = HashMap::new();

    let evaluate = |gz: Turn, gw: Turn, cache: &mut HashMap<usize, Ctx>| -> Result<Specialized, DecompError> {
        let turns: Vec<Turn> = mono.iter().map(|m| m.at(gz, gw)).collect();
        let (rctx, weight) = build(n, &turns, cache)?;
        let zp = weights::zp_sets(rs, &rctx, &weight);
        let orbit = weights::orbit_and_stabilizer(rs, &rctx, &weight).len();
        let mut choices = Vec::new();
        if uses_z {
            choices.push((Param::Z, gz.times(d)));
        }
        if uses_w {
            choices.push((Param::W, gw.times(d)));
        }
        Ok(Specialized { certified: zp == expected_zp && orbit == expected_orbit, ctx: rctx, weight, choices, zp })
    };

    if !fixed.is_empty() || (!uses_z && !uses_w) {
        let get = |p: Param, used: bool, name: &'static str| -> Result<Turn, DecompError> {
            match fixed.iter().find(|(q, _)| *q == p) {
                Some((_, v)) => Ok(v.divide(d)),
                None if used => Err(DecompError::MissingParam(name)),
                None => Ok(Turn::zero()),
            }
        };
        let gz = get(Param::Z, uses_z, "z")?;
        let gw = get(Param::W, uses_w, "w")?;
        return evaluate(gz, gw, &mut cache);
    }

    // enumerate candidates, cheapest field first
    let max_m: i64 = if uses_z && uses_w { 24 } else { 48 };
    let mut cands: Vec<(i64, i64, i64, i64, i64)> = Vec::new();
    for m in 2..=max_m {
        for a in 1..m {
            let bs: Vec<i64> = if uses_z && uses_w { (1..m).collect() } else { vec![0] };
            for b in bs {
                let (gz, gw) = if uses_z { (Turn::new(a, m), Turn::new(b, m)) } else { (Turn::zero(), Turn::new(a, m)) };
                if uses_z && !uses_w && a.gcd(&m) != 1 {
                    continue;
                }
                let mut order = (n as i64).lcm(&6);
                for mv in &mono {
                    order = order.lcm(&mv.at(gz, gw).den);
                }
                cands.push((euler_phi(order), order, m, a, b));
            }
        }
    }
    cands.sort();
    cands.dedup();
    for (_, _, m, a, b) in cands {
        let (gz, gw) = if uses_z { (Turn::new(a, m), Turn::new(b, m)) } else { (Turn::zero(), Turn::new(a, m)) };
        let s = evaluate(gz, gw, &mut cache)?;
        if s.certified {
            return Ok(s);
        }
    }
    Err(DecompError::NoGenericSpecialization)
}
