//! Exact arithmetic in the cyclotomic field `Q(ζ_N)`.
//!
//! Elements are stored as an integer coefficient vector in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}` together with a positive common denominator.  The
//! representation is canonical: the content of numerator and denominator is
//! coprime and the denominator is positive, so structural equality is field
//! equality.
//!
//! Most values met in practice have tiny coefficients, so every operation
//! first runs on `i64` storage with checked `i128` intermediates and only
//! falls back to `BigInt` when an intermediate overflows.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Upper bound on the table of reduced powers `ζ^m` kept per field.
const POWER_TABLE_LIMIT: usize = 1 << 22;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(Box<[i64]>, i64),
    Big(Box<[BigInt]>, BigInt),
}

/// An element of `Q(ζ_N)`; only meaningful together with its [`CycloField`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyc(Repr);

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(c, d) => write!(f, "Cyc({:?}/{})", c, d),
            Repr::Big(c, d) => {
                let cs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "Cyc([{}]/{})", cs.join(", "), d)
            }
        }
    }
}

/// The field `Q(ζ_N)` with its defining cyclotomic polynomial.
#[derive(Debug)]
pub struct CycloField {
    order: usize,
    phi: usize,
    /// Coefficients of `Φ_N`, lowest degree first; monic of degree `phi`.
    modulus: Vec<i64>,
    powers: Option<Vec<Vec<i64>>>,
    units: Vec<usize>,
}

pub type FieldRef = Arc<CycloField>;

fn poly_divide_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quo = vec![0i128; num.len() - dn];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[k + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quo
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    // Φ_n = (x^n - 1) / ∏_{d | n, d < n} Φ_d, building the divisors bottom-up.
    let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
    let mut cache: Vec<(usize, Vec<i128>)> = Vec::with_capacity(divisors.len());
    for &m in &divisors {
        let mut p = vec![0i128; m + 1];
        p[0] = -1;
        p[m] = 1;
        for (d, f) in &cache {
            if m % d == 0 {
                p = poly_divide_exact(&p, f);
            }
        }
        cache.push((m, p));
    }
    let (_, p) = cache.pop().expect("n is its own divisor");
    p.into_iter()
        .map(|c| i64::try_from(c).expect("cyclotomic coefficient exceeds i64"))
        .collect()
}

fn euler_phi(n: usize) -> usize {
    (1..=n).filter(|k| k.gcd(&n) == 1).count()
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i128
}

/// Normalizes a small numerator/denominator pair; `None` if it does not fit `i64`.
fn normalize_small(mut c: Vec<i128>, mut d: i128) -> Option<Cyc> {
    debug_assert!(d != 0);
    if c.iter().all(|&x| x == 0) {
        return Some(Cyc(Repr::Small(vec![0; c.len()].into_boxed_slice(), 1)));
    }
    let mut g = d;
    for &x in &c {
        if g == 1 {
            break;
        }
        g = gcd_i128(g, x);
    }
    if d < 0 {
        g = -g;
    }
    if g != 1 {
        for x in c.iter_mut() {
            *x /= g;
        }
        d /= g;
    }
    let d64 = i64::try_from(d).ok()?;
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        out.push(i64::try_from(x).ok()?);
    }
    Some(Cyc(Repr::Small(out.into_boxed_slice(), d64)))
}

fn normalize_big(mut c: Vec<BigInt>, mut d: BigInt) -> Cyc {
    debug_assert!(!d.is_zero());
    if c.iter().all(|x| x.is_zero()) {
        return Cyc(Repr::Small(vec![0; c.len()].into_boxed_slice(), 1));
    }
    let mut g = d.abs();
    for x in &c {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if d.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for x in c.iter_mut() {
            *x = &*x / &g;
        }
        d = &d / &g;
    }
    if let Some(d64) = d.to_i64() {
        let small: Option<Vec<i64>> = c.iter().map(|x| x.to_i64()).collect();
        if let Some(s) = small {
            return Cyc(Repr::Small(s.into_boxed_slice(), d64));
        }
    }
    Cyc(Repr::Big(c.into_boxed_slice(), d))
}

impl Cyc {
    fn big_parts(&self) -> (Vec<BigInt>, BigInt) {
        match &self.0 {
            Repr::Small(c, d) => (c.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*d)),
            Repr::Big(c, d) => (c.to_vec(), d.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Small(c, _) => c.iter().all(|&x| x == 0),
            Repr::Big(c, _) => c.iter().all(|x| x.is_zero()),
        }
    }

    /// Coefficient vector as exact rationals `(numerator, denominator)`, power-basis order.
    pub fn coefficients(&self) -> Vec<(BigInt, BigInt)> {
        let (c, d) = self.big_parts();
        c.into_iter()
            .map(|x| {
                let g = x.gcd(&d);
                if g.is_zero() {
                    (BigInt::zero(), BigInt::one())
                } else {
                    (&x / &g, &d / &g)
                }
            })
            .collect()
    }

    /// `Some(r)` if the element is rational, returned as a reduced fraction.
    pub fn as_rational(&self) -> Option<(BigInt, BigInt)> {
        let coeffs = self.coefficients();
        if coeffs.iter().skip(1).all(|(n, _)| n.is_zero()) {
            Some(coeffs[0].clone())
        } else {
            None
        }
    }

    /// Whether this is the element `1` (no field needed: the form is canonical).
    pub fn is_unity(&self) -> bool {
        match &self.0 {
            Repr::Small(c, d) => *d == 1 && c[0] == 1 && c[1..].iter().all(|&x| x == 0),
            Repr::Big(..) => false,
        }
    }

    /// The number of nonzero power-basis coefficients.
    pub fn support_len(&self) -> usize {
        match &self.0 {
            Repr::Small(c, _) => c.iter().filter(|&&x| x != 0).count(),
            Repr::Big(c, _) => c.iter().filter(|x| !x.is_zero()).count(),
        }
    }

    /// Rough size measure (bits of the largest stored integer), used for pivot-free diagnostics.
    pub fn height_bits(&self) -> u64 {
        match &self.0 {
            Repr::Small(c, d) => {
                let m = c.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0).max(d.unsigned_abs());
                64 - m.leading_zeros() as u64
            }
            Repr::Big(c, d) => c.iter().map(|x| x.bits()).max().unwrap_or(0).max(d.bits()),
        }
    }
}

impl CycloField {
    /// Builds `Q(ζ_n)`.
    pub fn new(order: usize) -> FieldRef {
        assert!(order >= 1, "cyclotomic order must be positive");
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        debug_assert_eq!(phi, euler_phi(order));
        let units = (1..=order).filter(|k| k.gcd(&order) == 1).map(|k| k % order).collect();
        let mut field = CycloField { order, phi, modulus, powers: None, units };
        if order.saturating_mul(phi) <= POWER_TABLE_LIMIT {
            let mut table = Vec::with_capacity(order);
            let mut cur = vec![0i64; phi];
            cur[0] = 1;
            for _ in 0..order {
                table.push(cur.clone());
                cur = field.shift_reduce(&cur);
            }
            field.powers = Some(table);
        }
        Arc::new(field)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Multiply a reduced small vector by `ζ` and reduce.
    fn shift_reduce(&self, v: &[i64]) -> Vec<i64> {
        let phi = self.phi;
        let mut out = vec![0i64; phi];
        let top = v[phi - 1];
        for j in (1..phi).rev() {
            out[j] = v[j - 1];
        }
        out[0] = 0;
        if top != 0 {
            for j in 0..phi {
                out[j] -= top * self.modulus[j];
            }
        }
        out
    }

    fn power_vec(&self, m: usize) -> Vec<i64> {
        let m = m % self.order;
        if let Some(t) = &self.powers {
            return t[m].clone();
        }
        let mut cur = vec![0i64; self.phi];
        cur[0] = 1;
        for _ in 0..m {
            cur = self.shift_reduce(&cur);
        }
        cur
    }

    pub fn zero(&self) -> Cyc {
        Cyc(Repr::Small(vec![0; self.phi].into_boxed_slice(), 1))
    }

    pub fn one(&self) -> Cyc {
        self.from_int(1)
    }

    pub fn from_int(&self, k: i64) -> Cyc {
        let mut c = vec![0i64; self.phi];
        c[0] = k;
        Cyc(Repr::Small(c.into_boxed_slice(), 1))
    }

    pub fn from_bigint(&self, k: &BigInt) -> Cyc {
        let mut c = vec![BigInt::zero(); self.phi];
        c[0] = k.clone();
        normalize_big(c, BigInt::one())
    }

    /// The rational `num/den`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Cyc {
        assert!(den != 0, "zero denominator");
        let mut c = vec![0i128; self.phi];
        c[0] = num as i128;
        normalize_small(c, den as i128).expect("ratio fits")
    }

    /// `ζ_N^m` for any integer `m`.
    pub fn zeta_pow(&self, m: i64) -> Cyc {
        let m = m.rem_euclid(self.order as i64) as usize;
        Cyc(Repr::Small(self.power_vec(m).into_boxed_slice(), 1))
    }

    pub fn is_one(&self, a: &Cyc) -> bool {
        a.is_unity()
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        match &a.0 {
            Repr::Small(c, d) => {
                if c.iter().all(|&x| x != i64::MIN) {
                    return Cyc(Repr::Small(c.iter().map(|&x| -x).collect(), *d));
                }
                let (c, d) = a.big_parts();
                normalize_big(c.into_iter().map(|x| -x).collect(), d)
            }
            Repr::Big(c, d) => Cyc(Repr::Big(c.iter().map(|x| -x).collect(), d.clone())),
        }
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Cyc {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if let (Repr::Small(ca, da), Repr::Small(cb, db)) = (&a.0, &b.0) {
            if let Some(r) = Self::add_small(ca, *da, cb, *db) {
                return r;
            }
        }
        let (ca, da) = a.big_parts();
        let (cb, db) = b.big_parts();
        let l = da.lcm(&db);
        let fa = &l / &da;
        let fb = &l / &db;
        let c = ca.iter().zip(cb.iter()).map(|(x, y)| x * &fa + y * &fb).collect();
        normalize_big(c, l)
    }

    fn add_small(ca: &[i64], da: i64, cb: &[i64], db: i64) -> Option<Cyc> {
        let (da, db) = (da as i128, db as i128);
        if da == db {
            let c = ca.iter().zip(cb.iter()).map(|(&x, &y)| x as i128 + y as i128).collect();
            return normalize_small(c, da);
        }
        let g = gcd_i128(da, db);
        let fa = db / g;
        let fb = da / g;
        let l = da.checked_mul(fa)?;
        let mut c = Vec::with_capacity(ca.len());
        for (&x, &y) in ca.iter().zip(cb.iter()) {
            let t = (x as i128).checked_mul(fa)?.checked_add((y as i128).checked_mul(fb)?)?;
            c.push(t);
        }
        normalize_small(c, l)
    }

    pub fn sub(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.add(a, &self.neg(b))
    }

    fn mul_small(&self, ca: &[i64], cb: &[i64]) -> Option<Vec<i128>> {
        let phi = self.phi;
        let mut prod = vec![0i128; 2 * phi - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as i128;
            for (j, &y) in cb.iter().enumerate() {
                if y != 0 {
                    prod[i + j] = prod[i + j].checked_add(x * y as i128)?;
                }
            }
        }
        for k in (phi..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                for j in 0..phi {
                    let m = self.modulus[j];
                    if m != 0 {
                        let t = c.checked_mul(m as i128)?;
                        prod[k - phi + j] = prod[k - phi + j].checked_sub(t)?;
                    }
                }
            }
        }
        prod.truncate(phi);
        Some(prod)
    }

    fn mul_big_vec(&self, ca: &[BigInt], cb: &[BigInt]) -> Vec<BigInt> {
        let phi = self.phi;
        let mut prod = vec![BigInt::zero(); 2 * phi - 1];
        for (i, x) in ca.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in cb.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for k in (phi..prod.len()).rev() {
            if !prod[k].is_zero() {
                let c = std::mem::take(&mut prod[k]);
                for j in 0..phi {
                    let m = self.modulus[j];
                    if m != 0 {
                        prod[k - phi + j] -= &c * m;
                    }
                }
            }
        }
        prod.truncate(phi);
        prod
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Cyc {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if let (Repr::Small(ca, da), Repr::Small(cb, db)) = (&a.0, &b.0) {
            if let Some(p) = self.mul_small(ca, cb) {
                let d = (*da as i128) * (*db as i128);
                if let Some(r) = normalize_small(p, d) {
                    return r;
                }
            }
        }
        let (ca, da) = a.big_parts();
        let (cb, db) = b.big_parts();
        normalize_big(self.mul_big_vec(&ca, &cb), da * db)
    }

    pub fn mul_int(&self, a: &Cyc, k: i64) -> Cyc {
        self.mul(a, &self.from_int(k))
    }

    /// Galois automorphism `ζ ↦ ζ^k` applied to an integer vector.
    fn galois_big(&self, c: &[BigInt], k: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.phi];
        for (j, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let p = self.power_vec(j * k % self.order);
            for (o, &pj) in out.iter_mut().zip(p.iter()) {
                if pj != 0 {
                    *o += x * pj;
                }
            }
        }
        out
    }

    /// The Galois conjugate `σ_k(a)`, `ζ ↦ ζ^k` with `gcd(k, N) = 1`.
    pub fn galois(&self, a: &Cyc, k: usize) -> Cyc {
        let (c, d) = a.big_parts();
        normalize_big(self.galois_big(&c, k % self.order), d)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Cyc) -> Cyc {
        assert!(!a.is_zero(), "inverse of zero in Q(zeta_{})", self.order);
        let (c, d) = a.big_parts();
        let nz: Vec<usize> = (0..self.phi).filter(|&j| !c[j].is_zero()).collect();
        if nz.len() == 1 {
            // c_j ζ^j / d  ->  d ζ^{-j} / c_j
            let j = nz[0];
            let p = self.power_vec((self.order - j) % self.order);
            let v: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x) * &d).collect();
            return normalize_big(v, c[j].clone());
        }
        if self.phi == 1 {
            return normalize_big(vec![d], c[0].clone());
        }
        // a^{-1} = ∏_{σ ≠ 1} σ(a) / N(a)
        let mut conj: Vec<BigInt> = {
            let mut one = vec![BigInt::zero(); self.phi];
            one[0] = BigInt::one();
            one
        };
        for &k in &self.units {
            if k == 1 {
                continue;
            }
            let s = self.galois_big(&c, k);
            conj = self.mul_big_vec(&conj, &s);
        }
        let norm = self.mul_big_vec(&c, &conj);
        debug_assert!(norm[1..].iter().all(|x| x.is_zero()), "norm is not rational");
        let n0 = norm[0].clone();
        let v: Vec<BigInt> = conj.into_iter().map(|x| x * &d).collect();
        normalize_big(v, n0)
    }

    pub fn div(&self, a: &Cyc, b: &Cyc) -> Cyc {
        self.mul(a, &self.inv(b))
    }

    pub fn pow(&self, a: &Cyc, e: i64) -> Cyc {
        let mut base = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `Some(m)` with `a = ζ_N^m` (`0 ≤ m < N`), if `a` is an `N`-th root of unity.
    pub fn root_of_unity_exponent(&self, a: &Cyc) -> Option<usize> {
        let (c, d) = match &a.0 {
            Repr::Small(c, d) => (c, *d),
            Repr::Big(..) => return None,
        };
        if d != 1 {
            return None;
        }
        (0..self.order).find(|&m| {
            let p = self.power_vec(m);
            p.iter().zip(c.iter()).all(|(x, y)| x == y)
        })
    }

    /// Textual form in the scalar expression grammar.
    pub fn to_expr(&self, a: &Cyc) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let coeffs = a.coefficients();
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (j, (n, d)) in coeffs.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let neg = n.is_negative();
            let n = n.abs();
            let coef = if d.is_one() { n.to_string() } else { format!("{}/{}", n, d) };
            let body = if j == 0 {
                coef
            } else {
                let z = if j == 1 {
                    format!("zeta({})", self.order)
                } else {
                    format!("zeta({})^{}", self.order, j)
                };
                if coef == "1" {
                    z
                } else {
                    format!("{}*{}", coef, z)
                }
            };
            parts.push((neg, body));
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.iter().enumerate() {
            if i == 0 {
                if *neg {
                    out.push('-');
                }
            } else {
                out.push_str(if *neg { " - " } else { " + " });
            }
            out.push_str(body);
        }
        out
    }

    /// Re-embeds an element of `Q(ζ_M)` (this field) into `Q(ζ_L)` for `M | L`.
    pub fn embed_into(&self, a: &Cyc, target: &CycloField) -> Cyc {
        assert!(target.order % self.order == 0, "embedding requires divisibility");
        let step = target.order / self.order;
        let (c, d) = a.big_parts();
        let mut out = vec![BigInt::zero(); target.phi];
        for (j, x) in c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let p = target.power_vec(j * step);
            for (o, &pj) in out.iter_mut().zip(p.iter()) {
                if pj != 0 {
                    *o += x * pj;
                }
            }
        }
        normalize_big(out, d)
    }
}
