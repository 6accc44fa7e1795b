//! Dense exact linear algebra over any [`FieldOps`] domain.
//!
//! Matrices act on column vectors.  Elimination pivots on the first nonzero
//! entry in column order, so results are deterministic.

use crate::scalars::FieldOps;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Mat<E> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Mat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<E>]) -> Self {
        Mat::from_fn(rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<F2>(&self, mut f: impl FnMut(&E) -> F2) -> Mat<F2> {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn try_map<F2, Er>(&self, mut f: impl FnMut(&E) -> Result<F2, Er>) -> Result<Mat<F2>, Er> {
        let data = self.data.iter().map(&mut f).collect::<Result<Vec<_>, Er>>()?;
        Ok(Mat { rows: self.rows, cols: self.cols, data })
    }

    pub fn entries(&self) -> &[E] {
        &self.data
    }

    /// Rows and columns picked by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }
}

pub fn zeros<F: FieldOps>(f: &F, rows: usize, cols: usize) -> Mat<F::E> {
    Mat::from_fn(rows, cols, |_, _| f.zero())
}

pub fn identity<F: FieldOps>(f: &F, n: usize) -> Mat<F::E> {
    Mat::from_fn(n, n, |i, j| if i == j { f.one() } else { f.zero() })
}

pub fn mul<F: FieldOps>(f: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if f.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let y = b.get(k, j);
                if f.is_zero(y) {
                    continue;
                }
                let idx = i * out.cols + j;
                out.data[idx] = f.add(&out.data[idx], &f.mul(x, y));
            }
        }
    }
    out
}

pub fn mul_vec<F: FieldOps>(f: &F, a: &Mat<F::E>, v: &[F::E]) -> Vec<F::E> {
    assert_eq!(a.cols, v.len(), "dimension mismatch");
    (0..a.rows)
        .map(|i| {
            let mut acc = f.zero();
            for (k, x) in v.iter().enumerate() {
                let y = a.get(i, k);
                if !f.is_zero(x) && !f.is_zero(y) {
                    acc = f.add(&acc, &f.mul(y, x));
                }
            }
            acc
        })
        .collect()
}

pub fn add<F: FieldOps>(f: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    assert!(a.rows == b.rows && a.cols == b.cols);
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.add(x, y)).collect() }
}

pub fn sub<F: FieldOps>(f: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Mat<F::E> {
    assert!(a.rows == b.rows && a.cols == b.cols);
    Mat { rows: a.rows, cols: a.cols, data: a.data.iter().zip(&b.data).map(|(x, y)| f.sub(x, y)).collect() }
}

pub fn scale<F: FieldOps>(f: &F, a: &Mat<F::E>, c: &F::E) -> Mat<F::E> {
    a.map(|x| f.mul(x, c))
}

pub fn is_zero<F: FieldOps>(f: &F, a: &Mat<F::E>) -> bool {
    a.data.iter().all(|x| f.is_zero(x))
}

pub fn equal<F: FieldOps>(f: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> bool {
    a.rows == b.rows && a.cols == b.cols && a.data.iter().zip(&b.data).all(|(x, y)| f.equal(x, y))
}

/// First entry where the matrices differ.
pub fn first_difference<F: FieldOps>(f: &F, a: &Mat<F::E>, b: &Mat<F::E>) -> Option<(usize, usize)> {
    for i in 0..a.rows {
        for j in 0..a.cols {
            if !f.equal(a.get(i, j), b.get(i, j)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn trace<F: FieldOps>(f: &F, a: &Mat<F::E>) -> F::E {
    let mut acc = f.zero();
    for i in 0..a.rows.min(a.cols) {
        acc = f.add(&acc, a.get(i, i));
    }
    acc
}

pub fn pow<F: FieldOps>(f: &F, a: &Mat<F::E>, mut e: u32) -> Mat<F::E> {
    let mut acc = identity(f, a.rows);
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(f, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(f, &base, &base);
        }
    }
    acc
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref<F: FieldOps>(f: &F, m: &mut Mat<F::E>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c));
        for j in c..m.cols {
            let v = f.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if f.is_zero(&factor) {
                continue;
            }
            for j in c..m.cols {
                let y = m.get(r, j);
                if f.is_zero(y) {
                    continue;
                }
                let v = f.sub(m.get(i, j), &f.mul(&factor, y));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FieldOps>(f: &F, m: &Mat<F::E>) -> usize {
    let mut a = m.clone();
    rref(f, &mut a).len()
}

/// Basis of the null space `{v : m v = 0}`.
pub fn kernel<F: FieldOps>(f: &F, m: &Mat<F::E>) -> Vec<Vec<F::E>> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); m.cols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a.get(r, fc));
            }
            v
        })
        .collect()
}

pub fn inverse<F: FieldOps>(f: &F, m: &Mat<F::E>) -> Option<Mat<F::E>> {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut aug = Mat::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            f.one()
        } else {
            f.zero()
        }
    });
    let piv = rref(f, &mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(Mat::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
}

/// A row-reduced basis of a subspace, kept in echelon form for fast
/// membership tests and incremental extension.
#[derive(Clone, Debug)]
pub struct Subspace<E> {
    dim: usize,
    /// Echelon rows (normalized pivot = 1), with their pivot columns.
    rows: Vec<(usize, Vec<E>)>,
    /// The original spanning vectors that were accepted, in order.
    basis: Vec<Vec<E>>,
}

impl<E: Clone> Subspace<E> {
    pub fn new(dim: usize) -> Self {
        Subspace { dim, rows: Vec::new(), basis: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dim
    }

    pub fn basis(&self) -> &[Vec<E>] {
        &self.basis
    }

    pub fn into_basis(self) -> Vec<Vec<E>> {
        self.basis
    }
}

impl<E: Clone> Subspace<E> {
    fn reduce<F: FieldOps<E = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        let mut w = v.to_vec();
        for (p, r) in &self.rows {
            let c = w[*p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.dim {
                if !f.is_zero(&r[j]) {
                    w[j] = f.sub(&w[j], &f.mul(&c, &r[j]));
                }
            }
        }
        w
    }

    /// Adds `v` if it is independent; returns whether it was added.
    pub fn insert<F: FieldOps<E = E>>(&mut self, f: &F, v: &[E]) -> bool {
        let w = self.reduce(f, v);
        let Some(p) = (0..self.dim).find(|&j| !f.is_zero(&w[j])) else {
            return false;
        };
        let inv = f.inv(&w[p]);
        let w: Vec<E> = w.iter().map(|x| f.mul(x, &inv)).collect();
        // keep rows fully reduced at the new pivot
        for (_, r) in self.rows.iter_mut() {
            let c = r[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for j in 0..self.dim {
                if !f.is_zero(&w[j]) {
                    r[j] = f.sub(&r[j], &f.mul(&c, &w[j]));
                }
            }
        }
        self.rows.push((p, w));
        self.basis.push(v.to_vec());
        true
    }

    pub fn contains<F: FieldOps<E = E>>(&self, f: &F, v: &[E]) -> bool {
        self.reduce(f, v).iter().all(|x| f.is_zero(x))
    }

    pub fn from_vectors<F: FieldOps<E = E>>(f: &F, dim: usize, vs: &[Vec<E>]) -> Self {
        let mut s = Subspace::new(dim);
        for v in vs {
            s.insert(f, v);
        }
        s
    }

    /// Complement basis: standard unit vectors not in the span, appended greedily.
    pub fn complement<F: FieldOps<E = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut s = self.clone();
        let mut out = Vec::new();
        for j in 0..self.dim {
            let mut e = vec![f.zero(); self.dim];
            e[j] = f.one();
            if s.insert(f, &e) {
                out.push(e);
            }
        }
        out
    }
}

/// Intersection of two subspaces of the same ambient space.
pub fn intersect<F: FieldOps>(f: &F, a: &[Vec<F::E>], b: &[Vec<F::E>], dim: usize) -> Vec<Vec<F::E>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve Σ x_i a_i − Σ y_j b_j = 0
    let cols: Vec<Vec<F::E>> = a.iter().cloned().chain(b.iter().map(|v| v.iter().map(|x| f.neg(x)).collect())).collect();
    let m = Mat::from_cols(dim, &cols);
    let ker = kernel(f, &m);
    let mut out = Subspace::new(dim);
    for k in ker {
        let mut v = vec![f.zero(); dim];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(&k[i]) {
                continue;
            }
            for r in 0..dim {
                v[r] = f.add(&v[r], &f.mul(&k[i], &ai[r]));
            }
        }
        out.insert(f, &v);
    }
    out.into_basis()
}
