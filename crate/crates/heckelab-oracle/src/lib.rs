//! Brute-force composition factors over a prime field.
//!
//! Module matrices over `Q(ζ_N)` are reduced modulo a prime `p ≡ 1 (mod N)`,
//! sending `ζ_N` to a primitive `N`-th root of unity in `F_p`.  Every
//! submodule contains a joint `X`-eigenvector, so a proper submodule is found
//! by spinning eigenvectors: all `p + 1` lines of an eigenspace of dimension
//! at most two, and vectors with coordinates in `{0} ∪ μ_N` (the candidate
//! roots) in larger eigenspaces.  Nothing here uses the library's linear
//! algebra or decomposition code.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use heckelab::heckemod::CycModule;
use heckelab::scalars::Cyc;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(self, a: u64) -> u64 {
        assert!(a != 0, "inverting zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }
    fn reduce(self, x: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        (((x % &m) + &m) % &m).to_u64().unwrap()
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Reduction map `Z[ζ_N]_(p) → F_p`.
pub struct Reduction {
    pub f: Fp,
    /// Image of `ζ_N`.
    pub zeta: u64,
    pub order: u64,
}

impl Reduction {
    /// The smallest prime `p ≡ 1 (mod N)` above `floor`.
    pub fn new(order: usize, floor: u64) -> Reduction {
        let n = order as u64;
        let mut p = (floor / n + 1) * n + 1;
        while !is_prime(p) {
            p += n;
        }
        let f = Fp { p };
        let factors = prime_factors(p - 1);
        let g = (2..p).find(|&g| factors.iter().all(|&l| f.pow(g, (p - 1) / l) != 1)).unwrap();
        Reduction { f, zeta: f.pow(g, (p - 1) / n), order: n }
    }

    pub fn map(&self, c: &Cyc) -> u64 {
        let f = self.f;
        let mut acc = 0;
        let mut power = 1;
        for (num, den) in c.coefficients() {
            let d = f.reduce(&den);
            assert!(d != 0, "denominator divisible by {}", f.p);
            acc = f.add(acc, f.mul(f.mul(f.reduce(&num), f.inv(d)), power));
            power = f.mul(power, self.zeta);
        }
        acc
    }

    fn roots(&self) -> Vec<u64> {
        (0..self.order).map(|k| self.f.pow(self.zeta, k)).collect()
    }
}

type M = Vec<Vec<u64>>;

/// A module over `F_p`: the `T_i` followed by the `X^{ω_i}`.
#[derive(Clone, Debug)]
pub struct ModP {
    pub gens: Vec<M>,
    pub rank: usize,
}

impl ModP {
    pub fn from_cyc(r: &Reduction, m: &CycModule) -> ModP {
        let conv = |a: &heckelab::linalg::Mat<Cyc>| -> M {
            (0..a.rows()).map(|i| (0..a.cols()).map(|j| r.map(a.get(i, j))).collect()).collect()
        };
        let gens = m.t.iter().chain(m.x.iter()).map(conv).collect();
        ModP { gens, rank: m.t.len() }
    }

    pub fn dim(&self) -> usize {
        self.gens[0].len()
    }

    fn x(&self) -> &[M] {
        &self.gens[self.rank..]
    }
}

fn apply(f: Fp, a: &M, v: &[u64]) -> Vec<u64> {
    a.iter().map(|row| row.iter().zip(v).fold(0, |s, (&x, &y)| f.add(s, f.mul(x, y)))).collect()
}

fn matmul(f: Fp, a: &M, b: &M) -> M {
    let n = b[0].len();
    a.iter()
        .map(|row| (0..n).map(|j| row.iter().enumerate().fold(0, |s, (k, &x)| f.add(s, f.mul(x, b[k][j])))).collect())
        .collect()
}

/// Fully reduced row echelon form; returns the pivot columns.
fn rref(f: Fp, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let inv = f.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let m = rows[k][c];
                for j in 0..ncols {
                    rows[k][j] = f.sub(rows[k][j], f.mul(m, rows[r][j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn kernel(f: Fp, rows: &M, ncols: usize) -> Vec<Vec<u64>> {
    let mut a = rows.clone();
    let pivots = rref(f, &mut a);
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; ncols];
            v[free] = 1;
            for (row, &pc) in a.iter().zip(&pivots) {
                v[pc] = f.sub(0, row[free]);
            }
            v
        })
        .collect()
}

/// Echelon basis of the span of `v` under the generators.
fn spin(f: Fp, m: &ModP, v: &[u64]) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(mut w) = queue.pop() {
        for (b, &pc) in basis.iter().zip(&pivots) {
            if w[pc] != 0 {
                let c = w[pc];
                for j in 0..w.len() {
                    w[j] = f.sub(w[j], f.mul(c, b[j]));
                }
            }
        }
        let Some(pc) = w.iter().position(|&x| x != 0) else { continue };
        let inv = f.inv(w[pc]);
        for x in w.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for b in basis.iter_mut() {
            if b[pc] != 0 {
                let c = b[pc];
                for j in 0..w.len() {
                    b[j] = f.sub(b[j], f.mul(c, w[j]));
                }
            }
        }
        for g in &m.gens {
            queue.push(apply(f, g, &w));
        }
        basis.push(w);
        pivots.push(pc);
    }
    (basis, pivots)
}

fn restrict(f: Fp, m: &ModP, basis: &[Vec<u64>], pivots: &[usize]) -> ModP {
    let gens = m
        .gens
        .iter()
        .map(|g| {
            let images: Vec<Vec<u64>> = basis.iter().map(|b| apply(f, g, b)).collect();
            // coordinates in a reduced echelon basis are the pivot entries
            (0..basis.len()).map(|i| images.iter().map(|img| img[pivots[i]]).collect()).collect()
        })
        .collect();
    ModP { gens, rank: m.rank }
}

fn quotient(f: Fp, m: &ModP, basis: &[Vec<u64>], pivots: &[usize]) -> ModP {
    let d = m.dim();
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let gens = m
        .gens
        .iter()
        .map(|g| {
            let images: Vec<Vec<u64>> = free
                .iter()
                .map(|&k| {
                    let mut e = vec![0; d];
                    e[k] = 1;
                    let mut w = apply(f, g, &e);
                    for (b, &pc) in basis.iter().zip(pivots) {
                        let c = w[pc];
                        if c != 0 {
                            for j in 0..d {
                                w[j] = f.sub(w[j], f.mul(c, b[j]));
                            }
                        }
                    }
                    w
                })
                .collect();
            (0..free.len()).map(|i| images.iter().map(|img| img[free[i]]).collect()).collect()
        })
        .collect();
    ModP { gens, rank: m.rank }
}

fn shifted(f: Fp, a: &M, c: u64) -> M {
    let mut out = a.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = f.sub(row[i], c);
    }
    out
}

/// Joint (generalized if `power > 1`) eigenspace of the `X^{ω_i}` for `values`.
fn joint_space(f: Fp, m: &ModP, values: &[u64], power: usize) -> Vec<Vec<u64>> {
    let d = m.dim();
    let mut rows = Vec::new();
    for (x, &c) in m.x().iter().zip(values) {
        let s = shifted(f, x, c);
        let mut p = s.clone();
        for _ in 1..power {
            p = matmul(f, &p, &s);
        }
        rows.extend(p);
    }
    kernel(f, &rows, d)
}

/// Vectors to spin in one eigenspace.
fn mesh(f: Fp, space: &[Vec<u64>], roots: &[u64]) -> Vec<Vec<u64>> {
    let mut basis = space.to_vec();
    rref(f, &mut basis);
    let combine = |coeffs: &[u64]| -> Vec<u64> {
        let d = basis[0].len();
        let mut v = vec![0; d];
        for (c, b) in coeffs.iter().zip(&basis) {
            for j in 0..d {
                v[j] = f.add(v[j], f.mul(*c, b[j]));
            }
        }
        v
    };
    let k = basis.len();
    let choices: Vec<u64> = if k <= 2 { (0..f.p).collect() } else { std::iter::once(0).chain(roots.iter().copied()).collect() };
    let mut out = Vec::new();
    // projective points: leading coefficient 1 at position `lead`, zeros before it
    for lead in 0..k {
        let tail = k - lead - 1;
        let mut idx = vec![0usize; tail];
        loop {
            let mut coeffs = vec![0; k];
            coeffs[lead] = 1;
            for (t, &i) in idx.iter().enumerate() {
                coeffs[lead + 1 + t] = choices[i];
            }
            out.push(combine(&coeffs));
            // odometer over the tail coordinates
            let mut pos = 0;
            while pos < tail {
                idx[pos] += 1;
                if idx[pos] < choices.len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == tail {
                break;
            }
        }
    }
    out
}

/// One composition factor: its dimension and its generalized weight
/// multiplicities, indexed like `weights`.
pub type Factor = (usize, Vec<usize>);

/// Composition factors of `m`, whose weights all lie in `weights`.
pub fn factors(r: &Reduction, m: &ModP, weights: &[Vec<u64>]) -> Vec<Factor> {
    let f = r.f;
    let d = m.dim();
    let roots = r.roots();
    let mut best: Option<(Vec<Vec<u64>>, Vec<usize>)> = None;
    'search: for w in weights {
        let space = joint_space(f, m, w, 1);
        if space.is_empty() {
            continue;
        }
        for v in mesh(f, &space, &roots) {
            let (basis, pivots) = spin(f, m, &v);
            if basis.len() < d && best.as_ref().is_none_or(|(b, _)| basis.len() < b.len()) {
                let one = basis.len() == 1;
                best = Some((basis, pivots));
                if one {
                    break 'search;
                }
            }
        }
    }
    match best {
        None => {
            let sig = weights.iter().map(|w| joint_space(f, m, w, d).len()).collect();
            vec![(d, sig)]
        }
        Some((basis, pivots)) => {
            let mut out = factors(r, &restrict(f, m, &basis, &pivots), weights);
            out.extend(factors(r, &quotient(f, m, &basis, &pivots), weights));
            out
        }
    }
}
