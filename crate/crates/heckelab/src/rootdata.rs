//! Root systems of rank at most two, their Weyl groups and lattice actions.
//!
//! Lattice vectors are [`Lat`] values in the basis of fundamental weights
//! `ω_1, ω_2`; for rank one the second coordinate is always zero.  Simple
//! reflections are indexed from zero internally and printed from one
//! (`s1`, `s2`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A weight-lattice vector in ω-coordinates.
pub type Lat = [i64; 2];

/// A 2×2 integer matrix acting on ω-coordinates (column vectors).
pub type LatMat = [[i64; 2]; 2];

const IDENTITY: LatMat = [[1, 0], [0, 1]];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("unknown root system `{0}` (expected A1, A2, C2 or G2)")]
    UnknownKind(String),
    #[error("malformed Weyl word `{0}`")]
    BadWord(String),
    #[error("simple index {0} out of range")]
    BadIndex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    A1,
    A2,
    C2,
    G2,
}

impl RootKind {
    pub const ALL: [RootKind; 4] = [RootKind::A1, RootKind::A2, RootKind::C2, RootKind::G2];
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RootKind::A1 => "A1",
            RootKind::A2 => "A2",
            RootKind::C2 => "C2",
            RootKind::G2 => "G2",
        })
    }
}

impl FromStr for RootKind {
    type Err = RootError;
    fn from_str(s: &str) -> Result<Self, RootError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(RootKind::A1),
            "A2" => Ok(RootKind::A2),
            "C2" | "B2" => Ok(RootKind::C2),
            "G2" => Ok(RootKind::G2),
            _ => Err(RootError::UnknownKind(s.to_string())),
        }
    }
}

/// An element of the finite Weyl group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Lexicographically least reduced word (0-based letters).
    pub word: Vec<usize>,
    /// Action on ω-coordinates.
    pub matrix: LatMat,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn act(&self, v: &Lat) -> Lat {
        mat_vec(&self.matrix, v)
    }

    /// `s1s2s1`-style name, `e` for the identity.
    pub fn name(&self) -> String {
        word_name(&self.word)
    }
}

pub fn word_name(word: &[usize]) -> String {
    if word.is_empty() {
        return "e".into();
    }
    word.iter().map(|i| format!("s{}", i + 1)).collect()
}

/// Parses `e` or `s1s2...` into 0-based letters.
pub fn parse_word(text: &str) -> Result<Vec<usize>, RootError> {
    let t = text.trim();
    if t == "e" || t.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let body = rest.strip_prefix('s').ok_or_else(|| RootError::BadWord(text.into()))?;
        let end = body.find('s').unwrap_or(body.len());
        let k: usize = body[..end].parse().map_err(|_| RootError::BadWord(text.into()))?;
        if k == 0 {
            return Err(RootError::BadWord(text.into()));
        }
        out.push(k - 1);
        rest = &body[end..];
    }
    Ok(out)
}

fn mat_mul(a: &LatMat, b: &LatMat) -> LatMat {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mat_vec(a: &LatMat, v: &Lat) -> Lat {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// Cartan data, positive roots and the full Weyl group of one root system.
#[derive(Clone, Debug)]
pub struct RootSystem {
    kind: RootKind,
    rank: usize,
    /// `cartan[i][j] = ⟨α_j, α_i^∨⟩`.
    cartan: [[i64; 2]; 2],
    /// Half squared root lengths `(α_i, α_i)/2`.
    symmetrizer: [i64; 2],
    /// Positive roots in α-coordinates, by height.
    positive: Vec<Lat>,
    elements: Vec<WeylElement>,
    index: HashMap<LatMat, usize>,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Reflection element for each positive root.
    reflections: Vec<usize>,
}

impl RootSystem {
    pub fn new(kind: RootKind) -> RootSystem {
        let (rank, cartan, symmetrizer) = match kind {
            RootKind::A1 => (1, [[2, 0], [0, 0]], [1, 0]),
            RootKind::A2 => (2, [[2, -1], [-1, 2]], [1, 1]),
            RootKind::C2 => (2, [[2, -2], [-1, 2]], [1, 2]),
            RootKind::G2 => (2, [[2, -3], [-1, 2]], [1, 3]),
        };
        let mut rs = RootSystem {
            kind,
            rank,
            cartan,
            symmetrizer,
            positive: Vec::new(),
            elements: Vec::new(),
            index: HashMap::new(),
            mult: Vec::new(),
            inverse: Vec::new(),
            reflections: Vec::new(),
        };
        rs.enumerate();
        rs.build_roots();
        rs
    }

    fn simple_matrix(&self, i: usize) -> LatMat {
        // s_i(λ) = λ - λ_i α_i, with α_i = column i of the Cartan matrix
        let mut m = IDENTITY;
        if self.rank == 1 {
            m[0][0] = -1;
            return m;
        }
        for r in 0..2 {
            m[r][i] -= self.cartan[r][i];
        }
        m
    }

    fn enumerate(&mut self) {
        let gens: Vec<LatMat> = (0..self.rank).map(|i| self.simple_matrix(i)).collect();
        let mut elements = vec![WeylElement { word: Vec::new(), matrix: IDENTITY }];
        let mut index = HashMap::new();
        index.insert(IDENTITY, 0usize);
        let mut head = 0;
        while head < elements.len() {
            let w = elements[head].clone();
            for (i, g) in gens.iter().enumerate() {
                let m = mat_mul(&w.matrix, g);
                if !index.contains_key(&m) {
                    let mut word = w.word.clone();
                    word.push(i);
                    index.insert(m, elements.len());
                    elements.push(WeylElement { word, matrix: m });
                }
            }
            head += 1;
        }
        let n = elements.len();
        let mut mult = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                mult[a][b] = index[&mat_mul(&elements[a].matrix, &elements[b].matrix)];
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| mult[a][b] == 0).expect("group")).collect();
        self.elements = elements;
        self.index = index;
        self.mult = mult;
        self.inverse = inverse;
    }

    fn build_roots(&mut self) {
        let mut all: Vec<Lat> = Vec::new();
        for w in &self.elements {
            for i in 0..self.rank {
                let r = self.to_alpha(&w.act(&self.simple_root(i))).expect("roots lie in Q");
                if !all.contains(&r) {
                    all.push(r);
                }
            }
        }
        let mut pos: Vec<Lat> = all.into_iter().filter(|r| r[0] >= 0 && r[1] >= 0).collect();
        pos.sort_by_key(|r| (r[0] + r[1], std::cmp::Reverse(*r)));
        self.positive = pos;
        let mut refl = Vec::new();
        for r in &self.positive.clone() {
            let lam = self.from_alpha(r);
            let w = self
                .elements
                .iter()
                .position(|w| {
                    (0..self.rank).all(|j| {
                        let e = unit(j);
                        let expect = sub(&e, &scale(&lam, self.coroot_pairing(&e, r)));
                        w.act(&e) == expect
                    })
                })
                .expect("reflection exists");
            refl.push(w);
        }
        self.reflections = refl;
    }

    pub fn kind(&self) -> RootKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `⟨α_j, α_i^∨⟩`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    /// Braid exponent `m_ij`.
    pub fn braid_exponent(&self, i: usize, j: usize) -> usize {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("finite type"),
        }
    }

    /// Order of the fundamental group `P/Q`, i.e. the number of lifts of a
    /// character of the root lattice to the weight lattice.
    pub fn lift_count(&self) -> usize {
        match self.kind {
            RootKind::A1 => 2,
            RootKind::A2 => 3,
            RootKind::C2 => 2,
            RootKind::G2 => 1,
        }
    }

    /// Squared length of `α_i` in the normalization where the short simple root has length² 2.
    pub fn root_length_sq(&self, i: usize) -> i64 {
        2 * self.symmetrizer[i]
    }

    /// Euclidean inner product of two weights in ω-coordinates.  Only used
    /// for drawing; the algebra never touches floating point.
    pub fn inner_product(&self, a: &Lat, b: &Lat) -> f64 {
        // (α_k, ω_j) = d_j δ_kj and ω_i = Σ_k C[k][i] α_k / det
        let (c, det) = self.omega_alpha();
        let mut s = 0.0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                // (ω_i, ω_j) = Σ_k C[k][i]/det (α_k, ω_j) = C[j][i] d_j / det
                let g = c[j][i] as f64 * self.symmetrizer[j] as f64 / det as f64;
                s += a[i] as f64 * b[j] as f64 * g;
            }
        }
        s
    }

    pub fn simple_root(&self, i: usize) -> Lat {
        if self.rank == 1 {
            return [2, 0];
        }
        [self.cartan[0][i], self.cartan[1][i]]
    }

    /// ω-coordinates of a vector given in α-coordinates.
    pub fn from_alpha(&self, a: &Lat) -> Lat {
        let mut out = [0; 2];
        for (j, c) in a.iter().enumerate().take(self.rank) {
            let r = self.simple_root(j);
            out[0] += c * r[0];
            out[1] += c * r[1];
        }
        out
    }

    /// `ω_i = Σ_k C[k][i] α_k / det`: returns `(C, det)`.
    pub fn omega_alpha(&self) -> ([[i64; 2]; 2], i64) {
        if self.rank == 1 {
            return ([[1, 0], [0, 0]], 2);
        }
        // columns of the Cartan matrix give α in ω; invert that 2×2 matrix
        let a = [[self.cartan[0][0], self.cartan[0][1]], [self.cartan[1][0], self.cartan[1][1]]];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        ([[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]], det)
    }

    /// α-coordinates if the vector lies in the root lattice.
    pub fn to_alpha(&self, v: &Lat) -> Option<Lat> {
        let (c, det) = self.omega_alpha();
        let mut out = [0; 2];
        for (k, slot) in out.iter_mut().enumerate().take(self.rank) {
            let num: i64 = (0..self.rank).map(|i| c[k][i] * v[i]).sum();
            if num % det != 0 {
                return None;
            }
            *slot = num / det;
        }
        if self.rank == 1 && v[1] != 0 {
            return None;
        }
        Some(out)
    }

    /// `⟨λ, α_i^∨⟩`: the i-th ω-coordinate.
    pub fn pairing(&self, v: &Lat, i: usize) -> i64 {
        v[i]
    }

    /// `⟨λ, α^∨⟩` for a positive root `α` given in α-coordinates.
    pub fn coroot_pairing(&self, v: &Lat, root_alpha: &Lat) -> i64 {
        // α^∨ = 2α/(α,α) = Σ_k a_k d_k α_k^∨ / (|α|²/2)
        let lam = self.from_alpha(root_alpha);
        let half_len: i64 = {
            let mut s = 0;
            for k in 0..self.rank {
                s += root_alpha[k] * self.symmetrizer[k] * lam[k];
            }
            s / 2
        };
        let num: i64 = (0..self.rank).map(|k| root_alpha[k] * self.symmetrizer[k] * v[k]).sum();
        num / half_len
    }

    pub fn positive_roots(&self) -> &[Lat] {
        &self.positive
    }

    /// Index of a positive root (α-coordinates) and whether `v` is its negative.
    pub fn root_index(&self, v_alpha: &Lat) -> Option<(usize, bool)> {
        if let Some(k) = self.positive.iter().position(|r| r == v_alpha) {
            return Some((k, false));
        }
        let neg = [-v_alpha[0], -v_alpha[1]];
        self.positive.iter().position(|r| *r == neg).map(|k| (k, true))
    }

    /// Reflection `s_α` as an element index, for the k-th positive root.
    pub fn reflection(&self, k: usize) -> usize {
        self.reflections[k]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, idx: usize) -> &WeylElement {
        &self.elements[idx]
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Index of the simple reflection `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        self.index[&self.simple_matrix(i)]
    }

    pub fn longest(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn length(&self, a: usize) -> usize {
        self.elements[a].word.len()
    }

    /// Element index for an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[usize]) -> Result<usize, RootError> {
        let mut w = 0;
        for &i in word {
            if i >= self.rank {
                return Err(RootError::BadIndex(i + 1));
            }
            w = self.mult[w][self.simple(i)];
        }
        Ok(w)
    }

    pub fn parse_element(&self, text: &str) -> Result<usize, RootError> {
        self.from_word(&parse_word(text)?)
    }

    pub fn act(&self, w: usize, v: &Lat) -> Lat {
        self.elements[w].act(v)
    }

    /// The chamber bijection `w ↦ w⁻¹`: the chamber `w⁻¹C` is labelled by `w`.
    pub fn chamber_label(&self, w: usize) -> usize {
        self.inverse[w]
    }

    /// Minimal-length representatives of `W₀/W_I`, in enumeration order.
    pub fn minimal_coset_reps(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&w| subset.iter().all(|&i| self.length(self.mul(w, self.simple(i))) > self.length(w)))
            .collect()
    }

    /// Elements of the parabolic subgroup generated by the given simple reflections.
    pub fn parabolic(&self, subset: &[usize]) -> Vec<usize> {
        let gens: Vec<usize> = subset.iter().map(|&i| self.simple(i)).collect();
        self.generated(&gens)
    }

    /// Subgroup generated by arbitrary elements, sorted by index.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(a) = stack.pop() {
            for &g in gens {
                let b = self.mul(a, g);
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    /// `a1+2*a2`-style name of a vector in α-coordinates.
    pub fn root_name(&self, a: &Lat) -> String {
        let mut out = String::new();
        for k in 0..self.rank {
            let c = a[k];
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&format!("{}*", c.abs()));
            }
            out.push_str(&format!("a{}", k + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

fn unit(j: usize) -> Lat {
    let mut e = [0; 2];
    e[j] = 1;
    e
}

fn sub(a: &Lat, b: &Lat) -> Lat {
    [a[0] - b[0], a[1] - b[1]]
}

fn scale(a: &Lat, k: i64) -> Lat {
    [a[0] * k, a[1] * k]
}
