//! Sparse Laurent polynomials in three variables over `Q(ζ_N)`.

use super::cyclo::{Cyc, CycloField};

/// Number of indeterminates: `u` (the root of `q`), `g_z`, `g_w`.
pub const NVARS: usize = 3;

pub type Mono = [i32; NVARS];

pub const ONE_MONO: Mono = [0; NVARS];

/// A Laurent polynomial, terms sorted by ascending lexicographic monomial
/// order with no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(Mono, Cyc)>,
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn mono_div(a: &Mono, b: &Mono) -> Mono {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { terms: Vec::new() }
    }

    pub fn constant(c: Cyc) -> Self {
        Self::term(ONE_MONO, c)
    }

    pub fn term(m: Mono, c: Cyc) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Laurent { terms: vec![(m, c)] }
        }
    }

    /// Builds from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(f: &CycloField, mut terms: Vec<(Mono, Cyc)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Mono, Cyc)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = f.add(&last.1, &c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| !c.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Cyc)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `Some(c)` if the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<&Cyc> {
        match self.terms.as_slice() {
            [] => None,
            [(m, c)] if *m == ONE_MONO => Some(c),
            _ => None,
        }
    }

    pub fn is_one(&self, f: &CycloField) -> bool {
        self.as_constant().is_some_and(|c| f.is_one(c))
    }

    pub fn leading(&self) -> Option<&(Mono, Cyc)> {
        self.terms.last()
    }

    /// Which variables occur with a nonzero exponent.
    pub fn variables(&self) -> [bool; NVARS] {
        let mut v = [false; NVARS];
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                if m[i] != 0 {
                    v[i] = true;
                }
            }
        }
        v
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_mono(&self) -> Mono {
        let mut out = match self.terms.first() {
            Some((m, _)) => *m,
            None => return ONE_MONO,
        };
        for (m, _) in &self.terms {
            for i in 0..NVARS {
                out[i] = out[i].min(m[i]);
            }
        }
        out
    }

    pub fn add(&self, f: &CycloField, other: &Laurent) -> Laurent {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = f.add(&a[i].1, &b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Laurent { terms: out }
    }

    pub fn neg(&self, f: &CycloField) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect() }
    }

    pub fn sub(&self, f: &CycloField, other: &Laurent) -> Laurent {
        self.add(f, &other.neg(f))
    }

    pub fn scale(&self, f: &CycloField, c: &Cyc) -> Laurent {
        if c.is_zero() {
            return Laurent::zero();
        }
        Laurent { terms: self.terms.iter().map(|(m, x)| (*m, f.mul(x, c))).collect() }
    }

    pub fn shift(&self, m: &Mono) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(x, c)| (mono_mul(x, m), c.clone())).collect() }
    }

    pub fn mul(&self, f: &CycloField, other: &Laurent) -> Laurent {
        if self.is_zero() || other.is_zero() {
            return Laurent::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(f, c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(f, c);
        }
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((mono_mul(ma, mb), f.mul(ca, cb)));
            }
        }
        Laurent::from_terms(f, terms)
    }

    /// Exact quotient `self / div` if `div` divides `self` in the Laurent ring.
    ///
    /// `div` must have no monomial factor (its minimal exponents are zero).
    pub fn div_exact(&self, f: &CycloField, div: &Laurent) -> Option<Laurent> {
        debug_assert!(div.min_mono() == ONE_MONO);
        if div.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let shift = self.min_mono();
        let mut rem = self.shift(&mono_div(&ONE_MONO, &shift));
        let (lm, lc) = div.leading().cloned().expect("nonzero");
        let lc_inv = f.inv(&lc);
        let mut quo: Vec<(Mono, Cyc)> = Vec::new();
        let mut steps = 0usize;
        while let Some((rm, rc)) = rem.leading().cloned() {
            let m = mono_div(&rm, &lm);
            if m.iter().any(|&e| e < 0) {
                return None;
            }
            let c = f.mul(&rc, &lc_inv);
            rem = rem.sub(f, &div.shift(&m).scale(f, &c));
            quo.push((m, c));
            steps += 1;
            if steps > 100_000 {
                return None;
            }
        }
        Some(Laurent::from_terms(f, quo).shift(&shift))
    }

    /// Evaluates with the given variable values (all must be units when exponents are negative).
    pub fn eval(&self, f: &CycloField, vals: &[Cyc; NVARS]) -> Cyc {
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                if m[i] != 0 {
                    t = f.mul(&t, &f.pow(&vals[i], m[i] as i64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Univariate view in variable `v`: dense coefficients after shifting to
    /// nonnegative exponents.  Requires that only `v` occurs.
    fn to_univariate(&self, f: &CycloField, v: usize) -> Vec<Cyc> {
        let lo = self.terms.iter().map(|(m, _)| m[v]).min().unwrap_or(0);
        let hi = self.terms.iter().map(|(m, _)| m[v]).max().unwrap_or(0);
        let mut out = vec![f.zero(); (hi - lo + 1) as usize];
        for (m, c) in &self.terms {
            out[(m[v] - lo) as usize] = c.clone();
        }
        out
    }

    fn from_univariate(f: &CycloField, lo: i32, coeffs: &[Cyc], v: usize) -> Laurent {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut m = ONE_MONO;
                m[v] = lo + k as i32;
                terms.push((m, c.clone()));
            }
        }
        Laurent::from_terms(f, terms)
    }

    /// Monic gcd of two polynomials in the single variable `v` (as honest
    /// polynomials, ignoring monomial factors).
    pub fn univariate_gcd(f: &CycloField, a: &Laurent, b: &Laurent, v: usize) -> Laurent {
        let mut x = a.to_univariate(f, v);
        let mut y = b.to_univariate(f, v);
        trim(&mut x);
        trim(&mut y);
        if x.is_empty() {
            return Laurent::from_univariate(f, 0, &monic(f, y), v);
        }
        while !y.is_empty() {
            let r = poly_rem(f, &x, &y);
            x = y;
            y = r;
        }
        Laurent::from_univariate(f, 0, &monic(f, x), v)
    }
}

fn trim(v: &mut Vec<Cyc>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn monic(f: &CycloField, mut v: Vec<Cyc>) -> Vec<Cyc> {
    trim(&mut v);
    if let Some(l) = v.last().cloned() {
        let li = f.inv(&l);
        for c in v.iter_mut() {
            *c = f.mul(c, &li);
        }
    }
    v
}

fn poly_rem(f: &CycloField, a: &[Cyc], b: &[Cyc]) -> Vec<Cyc> {
    let mut r = a.to_vec();
    trim(&mut r);
    let bl = b.len();
    let binv = f.inv(&b[bl - 1]);
    while r.len() >= bl {
        let k = r.len() - bl;
        let c = f.mul(&r[r.len() - 1], &binv);
        for j in 0..bl {
            let t = f.mul(&c, &b[j]);
            r[k + j] = f.sub(&r[k + j], &t);
        }
        trim(&mut r);
    }
    r
}
