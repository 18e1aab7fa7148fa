//! Defining vectors: a generator described by how often each nonzero column
//! type appears.
//!
//! Position `i` (0-based) of a defining vector stands for the column `α_{i+1}`,
//! the binary representation of `i + 1` with row 0 holding the least
//! significant bit. The same convention is used for `S_k` and `P_k`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

pub const MAX_SIMPLEX_K: usize = 16;
pub const MAX_PK_K: usize = 12;
/// Largest dimension for exact canonical forms.
pub const MAX_CANON_K: usize = 5;

#[inline]
pub(crate) fn parity(x: usize) -> bool {
    x.count_ones() & 1 == 1
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct DefiningVector {
    k: usize,
    entries: Vec<u32>,
}

impl DefiningVector {
    pub fn new(k: usize, entries: Vec<u32>) -> Result<Self> {
        if !(1..=MAX_SIMPLEX_K).contains(&k) {
            return Err(Error::InvalidArgument(format!("dimension {k} out of range")));
        }
        let len = (1usize << k) - 1;
        if entries.len() != len {
            return Err(Error::InvalidArgument(format!(
                "defining vector for k={k} needs {len} entries, got {}",
                entries.len()
            )));
        }
        if entries.iter().all(|&l| l == 0) {
            return Err(Error::InvalidArgument("defining vector sums to zero".into()));
        }
        Ok(DefiningVector { k, entries })
    }

    /// Constant vector `value * 1`.
    pub fn constant(k: usize, value: u32) -> Result<Self> {
        Self::new(k, vec![value; (1 << k) - 1])
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Length of the code: the sum of the entries.
    pub fn n(&self) -> usize {
        self.entries.iter().map(|&l| l as usize).sum()
    }

    pub fn l_max(&self) -> u32 {
        *self.entries.iter().max().expect("nonempty")
    }

    pub fn l_min(&self) -> u32 {
        *self.entries.iter().min().expect("nonempty")
    }

    pub fn is_constant(&self) -> bool {
        self.l_max() == self.l_min()
    }

    /// Gram matrix of the described generator, computed from entry parities.
    pub fn gram(&self) -> BitMatrix {
        gram_from_entries(self.k, &self.entries)
    }
}

pub(crate) fn gram_from_entries(k: usize, entries: &[u32]) -> BitMatrix {
    let mut g = BitMatrix::zeros(k, k);
    for (i, &l) in entries.iter().enumerate() {
        if l & 1 == 1 {
            let col = i + 1;
            for a in 0..k {
                if (col >> a) & 1 == 1 {
                    for b in 0..k {
                        if (col >> b) & 1 == 1 {
                            g.set(a, b, !g.get(a, b));
                        }
                    }
                }
            }
        }
    }
    g
}

impl fmt::Display for DefiningVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.k)?;
        for l in &self.entries {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

impl FromStr for DefiningVector {
    type Err = Error;

    /// Parses `k: l_1 l_2 ... l_N`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let (k, rest) = s
            .trim_end_matches('\n')
            .split_once(':')
            .ok_or_else(|| bad("expected `k: l_1 ... l_N`".into()))?;
        let k: usize = k.trim().parse().map_err(|_| bad(format!("bad dimension {k:?}")))?;
        let entries = rest
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| bad(format!("bad entry {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        DefiningVector::new(k, entries)
    }
}

/// `S_k` by the block recursion `S_{k+1} = (S_k 0 S_k ; 0 1 1)`, seeded with `S_1 = (1)`.
pub fn simplex_matrix(k: usize) -> Result<BitMatrix> {
    if !(2..=MAX_SIMPLEX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "simplex dimension {k} outside 2..={MAX_SIMPLEX_K}"
        )));
    }
    let mut s = BitMatrix::ones(1, 1);
    for j in 1..k {
        let w = s.col_count();
        let mut next = BitMatrix::zeros(j + 1, 2 * w + 1);
        for r in 0..j {
            for c in 0..w {
                if s.get(r, c) {
                    next.set(r, c, true);
                    next.set(r, w + 1 + c, true);
                }
            }
        }
        for c in w..2 * w + 1 {
            next.set(j, c, true);
        }
        s = next;
    }
    Ok(s)
}

fn build_pk(k: usize) -> BitMatrix {
    // P_1 = (1); P_{k+1} = (P 0 P ; 0 1 1 ; P 1 J-P)
    let mut p = BitMatrix::ones(1, 1);
    for _ in 1..k {
        let w = p.col_count();
        let size = 2 * w + 1;
        let mut next = BitMatrix::zeros(size, size);
        for r in 0..w {
            for c in 0..w {
                let bit = p.get(r, c);
                next.set(r, c, bit);
                next.set(r, w + 1 + c, bit);
                next.set(w + 1 + r, c, bit);
                next.set(w + 1 + r, w + 1 + c, !bit);
            }
            next.set(w + 1 + r, w, true);
        }
        for c in w..size {
            next.set(w, c, true);
        }
        p = next;
    }
    p
}

static PK_CACHE: [OnceLock<BitMatrix>; MAX_PK_K + 1] = [const { OnceLock::new() }; MAX_PK_K + 1];

fn check_pk_range(k: usize) -> Result<()> {
    if !(2..=MAX_PK_K).contains(&k) {
        return Err(Error::InvalidArgument(format!(
            "P_k dimension {k} outside 2..={MAX_PK_K}"
        )));
    }
    Ok(())
}

/// The `(2^k-1) x (2^k-1)` matrix whose rows are the nonzero codewords of `S_k`;
/// row `r` is the codeword of the message `α_{r+1}`.
pub fn pk_matrix(k: usize) -> Result<&'static BitMatrix> {
    check_pk_range(k)?;
    Ok(PK_CACHE[k].get_or_init(|| build_pk(k)))
}

/// `Q_k = J_k - P_k`.
pub fn qk_matrix(k: usize) -> Result<BitMatrix> {
    let p = pk_matrix(k)?;
    let n = p.row_count();
    let mut q = BitMatrix::ones(n, n);
    for r in 0..n {
        for c in 0..n {
            if p.get(r, c) {
                q.set(r, c, false);
            }
        }
    }
    Ok(q)
}

/// Counts columns of each type. Fails on zero columns.
pub fn defining_vector(g: &BitMatrix) -> Result<DefiningVector> {
    let k = g.row_count();
    if !(1..=MAX_SIMPLEX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!("dimension {k} out of range")));
    }
    let mut entries = vec![0u32; (1 << k) - 1];
    for c in 0..g.col_count() {
        match g.column_index(c) {
            0 => return Err(Error::ZeroColumn(c)),
            v => entries[v - 1] += 1,
        }
    }
    DefiningVector::new(k, entries)
}

/// Generator `(l_1 α_1, ..., l_N α_N)`, columns in increasing type order.
pub fn matrix_from_defvec(l: &DefiningVector) -> BitMatrix {
    let columns: Vec<usize> = l
        .entries
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i + 1, m as usize))
        .collect();
    BitMatrix::from_column_indices(l.k, &columns)
}

/// Codeword weights `W = P_k L^T` for raw entries; entry `r` is the weight of message `α_{r+1}`.
pub(crate) fn weights_from_entries(k: usize, entries: &[u32]) -> Vec<i64> {
    let n = (1usize << k) - 1;
    (1..=n)
        .map(|r| {
            entries
                .iter()
                .enumerate()
                .filter(|(i, _)| parity(r & (i + 1)))
                .map(|(_, &l)| l as i64)
                .sum()
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightProfile {
    /// Codeword weights ordered as the rows of `P_k`.
    pub weights: Vec<i64>,
    pub d: i64,
    /// `W - d 1`.
    pub excess: Vec<i64>,
    /// Sum of the excess.
    pub sigma: i64,
}

/// Evaluates `W^T = P_k L^T` with the cached `P_k` and derives `d`, the excess and `σ`.
pub fn weight_profile(l: &DefiningVector) -> Result<WeightProfile> {
    let p = pk_matrix(l.k)?;
    let n = p.row_count();
    let weights: Vec<i64> = (0..n)
        .map(|r| {
            (0..n)
                .filter(|&c| p.get(r, c))
                .map(|c| l.entries[c] as i64)
                .sum()
        })
        .collect();
    let d = *weights.iter().min().expect("nonempty");
    let excess: Vec<i64> = weights.iter().map(|w| w - d).collect();
    let sigma = excess.iter().sum();
    let expected = (1i64 << (l.k - 1)) * l.n() as i64 - d * n as i64;
    if sigma != expected {
        return Err(Error::Consistency(format!(
            "sigma {sigma} disagrees with 2^(k-1) n - d (2^k - 1) = {expected}"
        )));
    }
    Ok(WeightProfile {
        weights,
        d,
        excess,
        sigma,
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LiBounds {
    pub lo: i64,
    pub hi: i64,
}

impl LiBounds {
    pub fn clamped(self) -> (u32, u32) {
        (self.lo.max(0) as u32, self.hi.max(0) as u32)
    }

    pub fn contains(self, l: u32) -> bool {
        (l as i64) >= self.lo && (l as i64) <= self.hi
    }
}

/// Range forced on every entry of a defining vector of an `[n, k, d]` code
/// with excess sum `σ`: `ceil((d - σ)/2^(k-1)) <= l_i <= floor((d + σ)/2^(k-1))`.
pub fn li_bounds(d: i64, sigma: i64, k: usize) -> LiBounds {
    let q = 1i64 << (k - 1);
    LiBounds {
        lo: (d - sigma).div_euclid(q) + ((d - sigma).rem_euclid(q) != 0) as i64,
        hi: (d + sigma).div_euclid(q),
    }
}

/// `[(value, multiplicity)]` sorted by value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TypeSignature(pub Vec<(u32, usize)>);

impl fmt::Display for TypeSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (v, m)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            write!(f, "({v})_{m}")?;
        }
        write!(f, "]")
    }
}

pub fn type_signature(l: &DefiningVector) -> TypeSignature {
    let mut sorted = l.entries.clone();
    sorted.sort_unstable();
    let mut out: Vec<(u32, usize)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((last, m)) if *last == v => *m += 1,
            _ => out.push((v, 1)),
        }
    }
    TypeSignature(out)
}

/// The generalized anti-code of a defining vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AntiCode {
    /// Base multiplicity `l_max`.
    pub a: u32,
    /// Entries `a - l_i`. May contain zeros.
    pub anti_vector: Vec<u32>,
    pub k: usize,
    /// Length `a (2^k - 1) - n`.
    pub m: usize,
    /// Largest codeword weight of the anti-code, zero word included.
    pub delta: i64,
}

impl AntiCode {
    /// The anti-matrix `G^c`. It may have repeated columns; it never has zero columns
    /// but its rows need not be independent.
    pub fn matrix(&self) -> BitMatrix {
        let columns: Vec<usize> = self
            .anti_vector
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i + 1, m as usize))
            .collect();
        BitMatrix::from_column_indices(self.k, &columns)
    }

    pub fn gram(&self) -> BitMatrix {
        gram_from_entries(self.k, &self.anti_vector)
    }

    /// The source distance predicted by `d = a 2^(k-1) - δ`.
    pub fn implied_distance(&self) -> i64 {
        self.a as i64 * (1i64 << (self.k - 1)) - self.delta
    }

    /// Re-reads the anti-vector as a defining vector; fails if it is all zero.
    pub fn as_defining_vector(&self) -> Result<DefiningVector> {
        DefiningVector::new(self.k, self.anti_vector.clone())
    }
}

pub fn anti(l: &DefiningVector) -> Result<AntiCode> {
    if l.is_constant() {
        return Err(Error::InvalidArgument(
            "constant defining vector has an empty anti-code".into(),
        ));
    }
    let a = l.l_max();
    let anti_vector: Vec<u32> = l.entries.iter().map(|&x| a - x).collect();
    let m = anti_vector.iter().map(|&x| x as usize).sum();
    let delta = weights_from_entries(l.k, &anti_vector)
        .into_iter()
        .max()
        .unwrap_or(0)
        .max(0);
    Ok(AntiCode {
        a,
        anti_vector,
        k: l.k,
        m,
        delta,
    })
}

/// Reduced code at column type `v`: an invertible row operation sends `v` to
/// `e_1`, then the `e_1` columns and the first row are removed.
pub fn reduce(code: &LinearCode, v: usize) -> Result<LinearCode> {
    let k = code.k();
    if k < 2 {
        return Err(Error::InvalidArgument("cannot reduce a one-dimensional code".into()));
    }
    if v == 0 || v >= (1 << k) {
        return Err(Error::InvalidArgument(format!("{v} is not a nonzero {k}-bit column")));
    }
    let g = code.generator();
    let cols: Vec<usize> = (0..g.col_count()).map(|c| g.column_index(c)).collect();
    if !cols.contains(&v) {
        return Err(Error::ColumnAbsent(v));
    }
    // basis with v first, completed by unit vectors; its inverse maps v to e_1
    let mut basis = vec![v];
    for i in 0..k {
        let trial: Vec<usize> = basis.iter().copied().chain([1 << i]).collect();
        if BitMatrix::from_column_indices(k, &trial).rank() == trial.len() {
            basis = trial;
        }
    }
    let b = BitMatrix::from_column_indices(k, &basis);
    let t = b
        .inverse()?
        .ok_or_else(|| Error::Consistency("completed basis is singular".into()))?;
    let tg = t.matmul(g)?;
    let keep: Vec<usize> = (0..cols.len()).filter(|&c| cols[c] != v).collect();
    let rows: Vec<usize> = (1..k).collect();
    let reduced = tg.select_rows(&rows).select_columns(&keep);
    LinearCode::new(reduced)
}

/// Positions are 1-based inside the group search: `pi[i]` is the image of `α_i`.
struct GroupSearch<'a> {
    k: usize,
    entries: &'a [u32],
    pi: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    node_budget: u64,
}

impl<'a> GroupSearch<'a> {
    fn new(k: usize, entries: &'a [u32], node_budget: u64) -> Self {
        let size = 1usize << k;
        let mut used = vec![false; size];
        used[0] = true;
        GroupSearch {
            k,
            entries,
            pi: vec![0; size],
            used,
            nodes: 0,
            node_budget,
        }
    }

    #[inline]
    fn value(&self, position: usize) -> u32 {
        self.entries[position - 1]
    }

    fn assign_block(&mut self, level: usize, c: usize) {
        let half = 1usize << level;
        for j in 0..half {
            let p = c ^ self.pi[j];
            self.pi[half + j] = p;
            self.used[p] = true;
        }
    }

    fn clear_block(&mut self, level: usize) {
        let half = 1usize << level;
        for j in 0..half {
            let p = self.pi[half + j];
            self.used[p] = false;
        }
    }

    /// Lexicographic minimum over the orbit; `best` holds the running minimum.
    fn minimize(&mut self, level: usize, best: &mut [u32]) {
        if level == self.k || self.nodes >= self.node_budget {
            return;
        }
        let half = 1usize << level;
        let size = 1usize << self.k;
        for c in 1..size {
            if self.used[c] {
                continue;
            }
            self.nodes += 1;
            // compare block values with best[half-1 .. 2*half-1]
            let mut ord = std::cmp::Ordering::Equal;
            for j in 0..half {
                let v = self.value(c ^ self.pi[j]);
                let b = best[half + j - 1];
                if v != b {
                    ord = v.cmp(&b);
                    break;
                }
            }
            match ord {
                std::cmp::Ordering::Greater => continue,
                std::cmp::Ordering::Less => {
                    for j in 0..half {
                        best[half + j - 1] = self.value(c ^ self.pi[j]);
                    }
                    for x in best[2 * half - 1..].iter_mut() {
                        *x = u32::MAX;
                    }
                }
                std::cmp::Ordering::Equal => {}
            }
            self.assign_block(level, c);
            self.minimize(level + 1, best);
            self.clear_block(level);
        }
    }

    /// Searches for a group element whose image is lexicographically smaller than
    /// the vector itself on the first `known` positions. Returns true if one exists.
    fn find_smaller_prefix(&mut self, level: usize, known: usize) -> bool {
        if level == self.k {
            return false;
        }
        let half = 1usize << level;
        if half > known {
            return false;
        }
        let size = 1usize << self.k;
        'cand: for c in 1..size {
            if self.used[c] {
                continue;
            }
            for j in 0..half {
                let i = half + j;
                let p = c ^ self.pi[j];
                if i > known || p > known {
                    continue 'cand;
                }
                match self.value(p).cmp(&self.value(i)) {
                    std::cmp::Ordering::Less => return true,
                    std::cmp::Ordering::Greater => continue 'cand,
                    std::cmp::Ordering::Equal => {}
                }
            }
            self.assign_block(level, c);
            let found = self.find_smaller_prefix(level + 1, known);
            self.clear_block(level);
            if found {
                return true;
            }
        }
        false
    }
}

/// Lexicographically smallest vector in the `GL(k,2)` orbit of `l`, where a matrix
/// `A` acts by `(L∘π_A)_i = L_{π_A(i)}` and `α_{π_A(i)} = A α_i`. Exact for `k <= 5`.
pub fn canonicalize(l: &DefiningVector) -> Result<DefiningVector> {
    if l.k > MAX_CANON_K {
        return Err(Error::InvalidArgument(format!(
            "exact canonical form needs k <= {MAX_CANON_K}, got {}",
            l.k
        )));
    }
    Ok(canonicalize_with_budget(l, u64::MAX))
}

/// Best-effort canonical form: the group search stops after `node_budget` nodes
/// and returns the smallest image seen. Two vectors in one orbit may then get
/// different answers.
pub fn canonicalize_best_effort(l: &DefiningVector, node_budget: u64) -> DefiningVector {
    canonicalize_with_budget(l, node_budget)
}

fn canonicalize_with_budget(l: &DefiningVector, node_budget: u64) -> DefiningVector {
    let mut best = l.entries.clone();
    let mut search = GroupSearch::new(l.k, &l.entries, node_budget);
    search.minimize(0, &mut best);
    debug_assert!(best.iter().all(|&x| x != u32::MAX));
    DefiningVector {
        k: l.k,
        entries: best,
    }
}

/// True unless some group element provably maps the first `known` entries of
/// `entries` to something lexicographically smaller. Exact when `known` is the
/// full length.
pub(crate) fn prefix_may_be_canonical(k: usize, entries: &[u32], known: usize) -> bool {
    let mut search = GroupSearch::new(k, entries, u64::MAX);
    !search.find_smaller_prefix(0, known)
}

/// Image of `l` under the matrix whose columns are `images[0..k]` (as integers).
pub fn apply_gl(l: &DefiningVector, images: &[usize]) -> Result<DefiningVector> {
    let k = l.k;
    if images.len() != k || BitMatrix::from_column_indices(k, images).rank() != k {
        return Err(Error::InvalidArgument("not an invertible matrix".into()));
    }
    let image_of = |i: usize| -> usize {
        (0..k)
            .filter(|b| (i >> b) & 1 == 1)
            .fold(0, |acc, b| acc ^ images[b])
    };
    let n = l.entries.len();
    let mut out = vec![0u32; n];
    for i in 1..=n {
        out[i - 1] = l.entries[image_of(i) - 1];
    }
    DefiningVector::new(k, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dv(k: usize, e: &[u32]) -> DefiningVector {
        DefiningVector::new(k, e.to_vec()).unwrap()
    }

    fn random_dv(rng: &mut ChaCha8Rng, k: usize, max: u32) -> DefiningVector {
        loop {
            let e: Vec<u32> = (0..(1 << k) - 1).map(|_| rng.gen_range(0..=max)).collect();
            if let Ok(l) = DefiningVector::new(k, e) {
                return l;
            }
        }
    }

    fn random_gl(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
        loop {
            let cols: Vec<usize> = (0..k).map(|_| rng.gen_range(1..(1 << k))).collect();
            if BitMatrix::from_column_indices(k, &cols).rank() == k {
                return cols;
            }
        }
    }

    #[test]
    fn simplex_recursion() {
        let s2 = simplex_matrix(2).unwrap();
        assert_eq!(s2.to_g2m(), "2 3\n101\n011\n");
        let s3 = simplex_matrix(3).unwrap();
        assert_eq!(s3.column_index(3), 4);
        for k in 2..=8 {
            let s = simplex_matrix(k).unwrap();
            for j in 0..s.col_count() {
                assert_eq!(s.column_index(j), j + 1);
            }
        }
        let s6 = LinearCode::new(simplex_matrix(6).unwrap()).unwrap();
        assert_eq!(s6.min_distance().unwrap(), 32);
        assert!(simplex_matrix(1).is_err());
        assert!(simplex_matrix(17).is_err());
    }

    #[test]
    fn pk_recursion() {
        assert_eq!(pk_matrix(2).unwrap().to_g2m(), "3 3\n101\n011\n110\n");
        // rows are the codewords of the message α_r
        for k in 2..=7 {
            let p = pk_matrix(k).unwrap();
            for r in 0..p.row_count() {
                for c in 0..p.col_count() {
                    assert_eq!(p.get(r, c), parity((r + 1) & (c + 1)));
                }
            }
        }
        let s3 = LinearCode::new(simplex_matrix(3).unwrap()).unwrap();
        let p3 = pk_matrix(3).unwrap();
        let mut rows: Vec<Vec<u8>> = (0..7).map(|r| p3.row_bits(r)).collect();
        rows.sort();
        let mut words = Vec::new();
        crate::code::for_each_codeword_weight(s3.generator(), |m, _| {
            if m != 0 {
                words.push(s3.generator().combine_rows(m));
            }
        });
        let mut cw: Vec<Vec<u8>> = words
            .iter()
            .map(|w| (0..7).map(|c| ((w[0] >> c) & 1) as u8).collect())
            .collect();
        cw.sort();
        assert_eq!(rows, cw);
        let q = qk_matrix(4).unwrap();
        for r in 0..q.row_count() {
            assert_eq!(q.row_weight(r), 7);
        }
        assert!(pk_matrix(13).is_err());
    }

    #[test]
    fn pk_inverse_identity() {
        for k in 2..=6 {
            let p = pk_matrix(k).unwrap();
            let n = p.row_count();
            let pi = |r: usize, c: usize| p.get(r, c) as i64;
            for r in 0..n {
                for c in 0..n {
                    let v: i64 = (0..n).map(|t| pi(r, t) * (2 * pi(t, c) - 1)).sum();
                    let expect = if r == c { 1i64 << (k - 1) } else { 0 };
                    assert_eq!(v, expect, "k={k} r={r} c={c}");
                }
            }
        }
    }

    #[test]
    fn defining_vector_examples() {
        let s3 = simplex_matrix(3).unwrap();
        assert_eq!(defining_vector(&s3).unwrap().entries(), &[1; 7]);
        let s2 = simplex_matrix(2).unwrap();
        assert_eq!(
            defining_vector(&s2.hstack(&s2).unwrap()).unwrap().entries(),
            &[2, 2, 2]
        );
        let mut z = s2.clone();
        z.set(0, 0, false);
        assert!(matches!(defining_vector(&z), Err(Error::ZeroColumn(0))));
    }

    #[test]
    fn matrix_from_defvec_examples() {
        assert_eq!(matrix_from_defvec(&dv(2, &[1, 1, 1])), simplex_matrix(2).unwrap());
        let l1 = dv(3, &[2, 0, 1, 1, 2, 0, 2]);
        let g = matrix_from_defvec(&l1);
        assert_eq!((g.row_count(), g.col_count()), (3, 8));
        let s = 2;
        let l1s = dv(3, &[s + 1, s - 1, s, s, s + 1, s - 1, s + 1]);
        assert_eq!(matrix_from_defvec(&l1s).col_count(), 7 * s as usize + 1);
        assert!(DefiningVector::new(3, vec![0; 7]).is_err());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let l = random_dv(&mut rng, 4, 3);
            assert_eq!(defining_vector(&matrix_from_defvec(&l)).unwrap(), l);
        }
    }

    #[test]
    fn text_form() {
        let l = dv(2, &[3, 0, 1]);
        assert_eq!(l.to_string(), "2: 3 0 1");
        assert_eq!("2: 3 0 1".parse::<DefiningVector>().unwrap(), l);
        assert!("2: 3 0".parse::<DefiningVector>().is_err());
        assert!("x: 1 1 1".parse::<DefiningVector>().is_err());
        assert!("2 1 1 1".parse::<DefiningVector>().is_err());
    }

    #[test]
    fn weight_profile_examples() {
        let w = weight_profile(&DefiningVector::constant(3, 1).unwrap()).unwrap();
        assert_eq!(w.weights, vec![4; 7]);
        assert_eq!((w.d, w.sigma), (4, 0));
        // S_6 plus one extra column: [64, 6, 32]
        let mut e = vec![1u32; 63];
        e[0] += 1;
        let w = weight_profile(&dv(6, &e)).unwrap();
        assert_eq!((w.d, w.sigma), (32, 32));
        assert!(w.excess.contains(&0));
    }

    #[test]
    fn li_bounds_examples() {
        assert_eq!(li_bounds(32, 32, 6), LiBounds { lo: 0, hi: 2 });
        let b = li_bounds(32, 64, 6);
        assert_eq!((b.lo, b.hi), (-1, 3));
        assert_eq!(b.clamped(), (0, 3));
        assert_eq!(li_bounds(64, 0, 6), LiBounds { lo: 2, hi: 2 });
    }

    #[test]
    fn type_signatures() {
        let l1 = dv(3, &[2, 0, 1, 1, 2, 0, 2]);
        assert_eq!(type_signature(&l1).0, vec![(0, 2), (1, 2), (2, 3)]);
        let l2 = dv(3, &[3, 1, 1, 3, 1, 3, 1]);
        assert_eq!(type_signature(&l2).0, vec![(1, 4), (3, 3)]);
        assert_eq!(type_signature(&l2).to_string(), "[(1)_4 | (3)_3]");
        assert_eq!(type_signature(&DefiningVector::constant(3, 5).unwrap()).0, vec![(5, 7)]);
    }

    #[test]
    fn anti_examples() {
        let l1 = dv(3, &[2, 0, 1, 1, 2, 0, 2]);
        let a = anti(&l1).unwrap();
        assert_eq!(a.anti_vector, vec![0, 2, 1, 1, 0, 2, 0]);
        assert_eq!(a.a, 2);
        assert_eq!(a.m, 6);
        let l2 = dv(3, &[3, 1, 1, 3, 1, 3, 1]);
        let a2 = anti(&l2).unwrap();
        let anti_type = type_signature(&a2.as_defining_vector().unwrap());
        assert_eq!(anti_type.0, vec![(0, 3), (2, 4)]);
        assert_eq!(a2.gram().rank(), 0);
        assert!(LinearCode::new(matrix_from_defvec(&l2)).unwrap().is_so());
        assert!(anti(&DefiningVector::constant(3, 2).unwrap()).is_err());
    }

    #[test]
    fn anti_relations_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let l = random_dv(&mut rng, 4, 3);
            if l.is_constant() {
                continue;
            }
            let g = matrix_from_defvec(&l);
            let Ok(code) = LinearCode::new(g.clone()) else {
                continue;
            };
            let a = anti(&l).unwrap();
            assert_eq!(a.implied_distance(), code.min_distance().unwrap() as i64);
            // δ by enumerating the anti-matrix's codewords
            let gc = a.matrix();
            let mut max_w = 0;
            crate::code::for_each_codeword_weight(&gc, |_, w| max_w = max_w.max(w));
            assert_eq!(a.delta, max_w as i64);
            assert_eq!(g.gram(), gc.gram());
        }
    }

    #[test]
    fn double_anti() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let l = random_dv(&mut rng, 3, 4);
            if l.is_constant() {
                continue;
            }
            let lc = anti(&l).unwrap().as_defining_vector().unwrap();
            if lc.is_constant() {
                continue;
            }
            let lcc = anti(&lc).unwrap().anti_vector;
            let expect: Vec<u32> = l.entries().iter().map(|&x| x - l.l_min()).collect();
            assert_eq!(lcc, expect);
        }
    }

    #[test]
    fn reduce_examples() {
        let s3 = LinearCode::new(simplex_matrix(3).unwrap()).unwrap();
        let r = reduce(&s3, 1).unwrap();
        assert_eq!((r.n(), r.k(), r.min_distance().unwrap()), (6, 2, 4));
        assert_eq!(defining_vector(r.generator()).unwrap().entries(), &[2, 2, 2]);
        // S_6 plus an extra α_1 column reduces to 2·S_5
        let mut e = vec![1u32; 63];
        e[0] = 2;
        let c = LinearCode::new(matrix_from_defvec(&dv(6, &e))).unwrap();
        let r = reduce(&c, 1).unwrap();
        let p = r.params().unwrap();
        assert_eq!((p.n, p.k, p.d), (62, 5, 32));
        assert!(p.is_so());
        let rep = LinearCode::new(BitMatrix::ones(1, 4)).unwrap();
        assert!(reduce(&rep, 1).is_err());
        let s2 = LinearCode::new(simplex_matrix(2).unwrap()).unwrap();
        let only = LinearCode::new(s2.generator().select_columns(&[0, 1])).unwrap();
        assert!(matches!(reduce(&only, 3), Err(Error::ColumnAbsent(3))));
    }

    #[test]
    fn reduce_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 100 {
            let k = rng.gen_range(2..=5);
            let l = random_dv(&mut rng, k, 3);
            let Ok(c) = LinearCode::new(matrix_from_defvec(&l)) else {
                continue;
            };
            let v = (1..(1usize << k)).find(|&v| l.entries()[v - 1] > 0).unwrap();
            let r = reduce(&c, v).unwrap();
            assert_eq!(r.n(), c.n() - l.entries()[v - 1] as usize);
            assert_eq!(r.k(), k - 1);
            assert!(r.min_distance().unwrap() >= c.min_distance().unwrap());
            checked += 1;
        }
    }

    #[test]
    fn canonical_forms() {
        let c = DefiningVector::constant(3, 2).unwrap();
        assert_eq!(canonicalize(&c).unwrap(), c);
        assert_eq!(canonicalize(&dv(2, &[2, 2, 2])).unwrap(), dv(2, &[2, 2, 2]));
        assert_eq!(canonicalize(&dv(2, &[0, 3, 1])).unwrap(), dv(2, &[0, 1, 3]));
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for k in 2..=4 {
            for _ in 0..30 {
                let l = random_dv(&mut rng, k, 3);
                let a = random_gl(&mut rng, k);
                let m = apply_gl(&l, &a).unwrap();
                let cl = canonicalize(&l).unwrap();
                assert_eq!(cl, canonicalize(&m).unwrap());
                assert!(cl <= l);
                assert!(prefix_may_be_canonical(k, cl.entries(), cl.entries().len()));
            }
        }
        assert!(canonicalize(&DefiningVector::constant(6, 1).unwrap()).is_err());
    }

    #[test]
    fn canonical_form_matches_full_orbit_scan() {
        // all 168 elements of GL(3,2) listed explicitly
        let mut group = Vec::new();
        for a in 1..8 {
            for b in 1..8 {
                for c in 1..8 {
                    if BitMatrix::from_column_indices(3, &[a, b, c]).rank() == 3 {
                        group.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert_eq!(group.len(), 168);
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..100 {
            let l = random_dv(&mut rng, 3, 2);
            let min = group.iter().map(|g| apply_gl(&l, g).unwrap()).min().unwrap();
            assert_eq!(canonicalize(&l).unwrap(), min);
        }
    }

    #[test]
    fn best_effort_k6_is_in_orbit_and_not_larger() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let l = random_dv(&mut rng, 6, 2);
        let c = canonicalize_best_effort(&l, 100_000);
        assert!(c <= l);
        assert_eq!(type_signature(&c), type_signature(&l));
    }

    #[test]
    fn weight_profile_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for k in 3..=6 {
            for _ in 0..1000 {
                let l = random_dv(&mut rng, k, 2);
                let g = matrix_from_defvec(&l);
                let p = weight_profile(&l).unwrap();
                for (r, &w) in p.weights.iter().enumerate() {
                    let word = g.combine_rows((r + 1) as u64);
                    let brute: u32 = word.iter().map(|x| x.count_ones()).sum();
                    assert_eq!(w, brute as i64);
                }
                assert!(p.excess.iter().all(|&x| x >= 0));
                assert!(p.excess.contains(&0));
                assert!(p.sigma >= 0);
            }
        }
    }

    #[test]
    fn li_bounds_hold_on_random_codes() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for i in 0..10_000 {
            let k = 2 + i % 4;
            let l = random_dv(&mut rng, k, 4);
            let p = weight_profile(&l).unwrap();
            if p.d == 0 {
                continue;
            }
            let b = li_bounds(p.d, p.sigma, k);
            assert!(l.entries().iter().all(|&x| b.contains(x)), "{l} {b:?}");
        }
    }
}
