//! Dense matrices over GF(2) with rows packed into 64-bit words.
//!
//! Row `r`, column `c` lives in word `c / 64` of row `r`, bit `c % 64`.
//! Padding bits past `cols` are always zero, so derived equality is entrywise.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn words_for(cols: usize) -> usize {
    cols.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// All-one matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, true);
            }
        }
        m
    }

    /// Builds a matrix from rows of 0/1 values. All rows must have the same length.
    pub fn from_rows<R: AsRef<[u8]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    op: "from_rows",
                    left: format!("{cols} columns"),
                    right: format!("row {r} has {}", row.len()),
                });
            }
            for (c, &b) in row.iter().enumerate() {
                match b {
                    0 => {}
                    1 => m.set(r, c, true),
                    _ => return Err(Error::InvalidArgument(format!("entry {b} is not a bit"))),
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from a list of columns given as integers, bit `r` of the
    /// integer being the entry in row `r`.
    pub fn from_column_indices(rows: usize, columns: &[usize]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, &v) in columns.iter().enumerate() {
            for r in 0..rows {
                if (v >> r) & 1 == 1 {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn row_count(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn col_count(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / WORD] >> (c % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, bit: bool) {
        debug_assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / WORD];
        let mask = 1u64 << (c % WORD);
        if bit {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    #[inline]
    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// `row[dst] ^= row[src]`
    #[inline]
    fn xor_row_into(&mut self, src: usize, dst: usize) {
        debug_assert_ne!(src, dst);
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.data.split_at_mut(dst * s);
            (&lo[src * s..src * s + s], &mut hi[..s])
        } else {
            let (lo, hi) = self.data.split_at_mut(src * s);
            (&hi[..s] as &[u64], &mut lo[dst * s..dst * s + s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn row_is_zero(&self, r: usize) -> bool {
        self.row_words(r).iter().all(|&w| w == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Row `r` as a vector of 0/1 bytes.
    pub fn row_bits(&self, r: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(r, c) as u8).collect()
    }

    /// Column `c` as an integer with bit `r` holding row `r`. Requires at most 64 rows.
    pub fn column_index(&self, c: usize) -> usize {
        assert!(self.rows <= 64, "column_index needs at most 64 rows");
        let mut v = 0usize;
        for r in 0..self.rows {
            if self.get(r, c) {
                v |= 1 << r;
            }
        }
        v
    }

    pub fn column_is_zero(&self, c: usize) -> bool {
        (0..self.rows).all(|r| !self.get(r, c))
    }

    pub fn first_zero_column(&self) -> Option<usize> {
        if self.rows == 0 {
            return if self.cols > 0 { Some(0) } else { None };
        }
        let mut acc = vec![0u64; self.stride];
        for r in 0..self.rows {
            for (a, w) in acc.iter_mut().zip(self.row_words(r)) {
                *a |= w;
            }
        }
        (0..self.cols).find(|&c| (acc[c / WORD] >> (c % WORD)) & 1 == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Returns the reduced row echelon form (same shape, zero rows last) and
    /// the pivot columns in increasing order.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let (w, bit) = (c / WORD, 1u64 << (c % WORD));
            let Some(p) = (lead..self.rows).find(|&r| self.data[r * self.stride + w] & bit != 0)
            else {
                continue;
            };
            self.swap_rows(lead, p);
            for r in 0..self.rows {
                if r != lead && self.data[r * self.stride + w] & bit != 0 {
                    self.xor_row_into(lead, r);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        self.clone().rref_in_place().len()
    }

    /// Nonzero rows of the reduced echelon form: a canonical basis of the row space.
    pub fn row_basis(&self) -> BitMatrix {
        let (m, pivots) = self.rref();
        m.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
    }

    pub fn select_rows(&self, rows: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(rows.len(), self.cols);
        for (i, &r) in rows.iter().enumerate() {
            out.row_words_mut(i).copy_from_slice(self.row_words(r));
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, i, true);
                }
            }
        }
        out
    }

    /// Appends `v` (given as packed words of length `col_count`) as a new row.
    pub fn push_row_words(&mut self, words: &[u64]) {
        assert_eq!(words.len(), self.stride);
        self.data.extend_from_slice(words);
        self.rows += 1;
    }

    pub fn push_row_bits(&mut self, bits: &[u8]) {
        assert_eq!(bits.len(), self.cols);
        let mut words = vec![0u64; self.stride];
        for (c, &b) in bits.iter().enumerate() {
            if b != 0 {
                words[c / WORD] |= 1 << (c % WORD);
            }
        }
        self.push_row_words(&words);
    }

    pub fn matmul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "matmul",
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let (o, s) = (out.stride, other.stride);
                    let src = &other.data[k * s..k * s + s];
                    for (d, x) in out.data[r * o..r * o + o].iter_mut().zip(src) {
                        *d ^= x;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `G * G^T`, the Gram matrix of the rows.
    pub fn gram(&self) -> BitMatrix {
        let mut g = BitMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in i..self.rows {
                let parity = self
                    .row_words(i)
                    .iter()
                    .zip(self.row_words(j))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum::<u32>()
                    & 1;
                if parity == 1 {
                    g.set(i, j, true);
                    g.set(j, i, true);
                }
            }
        }
        g
    }

    /// Basis (as rows) of `{x : self * x^T = 0}`.
    pub fn nullspace(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (i, &f) in free.iter().enumerate() {
            out.set(i, f, true);
            for (pr, &pc) in pivots.iter().enumerate() {
                if r.get(pr, f) {
                    out.set(i, pc, true);
                }
            }
        }
        out
    }

    /// Basis of `rowspace(self) ∩ rowspace(other)`.
    pub fn intersect_rowspaces(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "intersect_rowspaces",
                left: format!("{} columns", self.cols),
                right: format!("{} columns", other.cols),
            });
        }
        // V ∩ W = (V^⊥ + W^⊥)^⊥
        let perp = self.nullspace().vstack(&other.nullspace())?;
        Ok(perp.nullspace().row_basis())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_invertible(&self) -> Result<bool> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rank() == self.rows)
    }

    pub fn inverse(&self) -> Result<Option<BitMatrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let aug = self.hstack(&BitMatrix::identity(n))?;
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Ok(None);
        }
        Ok(Some(red.select_columns(&(n..2 * n).collect::<Vec<_>>())))
    }

    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                op: "hstack",
                left: format!("{} rows", self.rows),
                right: format!("{} rows", other.rows),
            });
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(r, c, true);
                }
            }
            for c in 0..other.cols {
                if other.get(r, c) {
                    out.set(r, self.cols + c, true);
                }
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                op: "vstack",
                left: format!("{} columns", self.cols),
                right: format!("{} columns", other.cols),
            });
        }
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        Ok(out)
    }

    /// Linear combination of rows selected by the bits of `mask` (bit `i` is row `i`).
    pub fn combine_rows(&self, mask: u64) -> Vec<u64> {
        let mut acc = vec![0u64; self.stride];
        for r in 0..self.rows.min(64) {
            if (mask >> r) & 1 == 1 {
                for (a, w) in acc.iter_mut().zip(self.row_words(r)) {
                    *a ^= w;
                }
            }
        }
        acc
    }

    /// Serializes to the `.g2m` text format.
    pub fn to_g2m(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                s.push(if self.get(r, c) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the `.g2m` text format: a `k n` header then `k` rows of `n` bits.
    pub fn from_g2m(text: &str) -> Result<BitMatrix> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut parts = header.split(' ');
        let mut dim = |what: &str| -> Result<usize> {
            parts
                .next()
                .and_then(|p| p.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse {
                    line: 1,
                    msg: format!("expected `k n` header, bad {what}"),
                })
        };
        let rows = dim("k")?;
        let cols = dim("n")?;
        if parts.next().is_some() {
            return Err(Error::Parse {
                line: 1,
                msg: "trailing tokens in header".into(),
            });
        }
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            let (i, line) = lines.next().ok_or(Error::Parse {
                line: r + 2,
                msg: format!("expected {rows} rows, found {r}"),
            })?;
            if line.len() != cols {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected {cols} characters, found {}", line.len()),
                });
            }
            for (c, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    other => {
                        return Err(Error::Parse {
                            line: i + 1,
                            msg: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
        for (i, line) in lines {
            if !line.is_empty() {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: "unexpected content after the last row".into(),
                });
            }
        }
        Ok(m)
    }
}

impl FromStr for BitMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitMatrix::from_g2m(s)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            for c in 0..self.cols {
                write!(f, "{}", self.get(r, c) as u8)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_g2m())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&str]) -> BitMatrix {
        let rows: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| b - b'0').collect())
            .collect();
        BitMatrix::from_rows(&rows).unwrap()
    }

    fn simplex(k: usize) -> BitMatrix {
        BitMatrix::from_column_indices(k, &(1..(1 << k)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_examples() {
        assert_eq!(simplex(3).rank(), 3);
        assert_eq!(BitMatrix::ones(7, 7).rank(), 1);
        assert_eq!(simplex(3).gram().rank(), 0);
        assert_eq!(BitMatrix::zeros(0, 5).rank(), 0);
        assert_eq!(BitMatrix::zeros(3, 0).rank(), 0);
    }

    #[test]
    fn rref_examples() {
        let (r, p) = BitMatrix::identity(3).rref();
        assert_eq!(r, BitMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);

        let (r, p) = m(&["110", "011"]).rref();
        assert_eq!(r, m(&["101", "011"]));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = BitMatrix::zeros(2, 3).rref();
        assert!(r.is_zero());
        assert!(p.is_empty());
    }

    #[test]
    fn matmul_examples() {
        let s2 = m(&["101", "011"]);
        assert_eq!(s2.matmul(&s2.transpose()).unwrap(), m(&["01", "10"]));
        let j = BitMatrix::ones(7, 7);
        assert_eq!(j.matmul(&j).unwrap(), j);
        let x = m(&["1101", "0110", "1011"]);
        assert_eq!(BitMatrix::identity(3).matmul(&x).unwrap(), x);
        assert!(matches!(
            x.matmul(&x),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn gram_examples() {
        assert_eq!(m(&["101", "011"]).gram(), m(&["01", "10"]));
        assert!(simplex(6).gram().is_zero());
        assert_eq!(simplex(6).gram().row_count(), 6);
    }

    #[test]
    fn nullspace_examples() {
        assert_eq!(BitMatrix::identity(4).nullspace().row_count(), 0);
        let ns = m(&["111"]).nullspace();
        assert_eq!(ns.row_count(), 2);
        assert_eq!(ns.row_basis(), m(&["101", "011"]));
        let s3 = simplex(3);
        let ns = s3.nullspace();
        assert_eq!(ns.row_count(), 4);
        assert!(s3.matmul(&ns.transpose()).unwrap().is_zero());
    }

    #[test]
    fn intersect_examples() {
        let a = m(&["1100", "0011", "1111"]);
        assert_eq!(a.intersect_rowspaces(&a).unwrap().row_count(), 2);
        let x = m(&["10"]);
        let y = m(&["01"]);
        assert_eq!(x.intersect_rowspaces(&y).unwrap().row_count(), 0);
        let s6 = simplex(6);
        let hull = s6.intersect_rowspaces(&s6.nullspace()).unwrap();
        assert_eq!(hull.row_count(), 6);
        assert!(matches!(
            x.intersect_rowspaces(&a),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invertibility() {
        assert!(m(&["01", "10"]).is_invertible().unwrap());
        assert!(!BitMatrix::zeros(3, 3).is_invertible().unwrap());
        assert!(matches!(
            m(&["011"]).is_invertible(),
            Err(Error::NotSquare { .. })
        ));
        let a = m(&["110", "011", "001"]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.matmul(&inv).unwrap(), BitMatrix::identity(3));
        assert!(m(&["11", "11"]).inverse().unwrap().is_none());
    }

    #[test]
    fn g2m_roundtrip_and_errors() {
        let a = m(&["1010", "0111"]);
        let text = a.to_g2m();
        assert_eq!(text, "2 4\n1010\n0111\n");
        assert_eq!(BitMatrix::from_g2m(&text).unwrap(), a);
        assert_eq!(BitMatrix::from_g2m("2 4\n1010\n0111").unwrap(), a);
        assert!(BitMatrix::from_g2m("2 4\n1010\n").is_err());
        assert!(BitMatrix::from_g2m("2 4\n1010\n01110\n").is_err());
        assert!(BitMatrix::from_g2m("2 4\n1010\n0121\n").is_err());
        assert!(BitMatrix::from_g2m("2  4\n1010\n0111\n").is_err());
        assert!(BitMatrix::from_g2m("").is_err());
    }

    #[test]
    fn wide_rows_cross_word_boundaries() {
        let cols = 200;
        let mut a = BitMatrix::zeros(3, cols);
        for c in 0..cols {
            a.set(c % 3, c, true);
        }
        assert_eq!(a.rank(), 3);
        assert_eq!(a.nullspace().row_count(), cols - 3);
        assert_eq!(a.first_zero_column(), None);
        a.set(1, 130, false);
        assert_eq!(a.first_zero_column(), Some(130));
    }

    fn arb_matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(0u8..2, c), r)
                .prop_map(|rows| BitMatrix::from_rows(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(a in arb_matrix(20, 40)) {
            prop_assert_eq!(a.rank(), a.transpose().rank());
        }

        #[test]
        fn rref_preserves_rank_and_is_idempotent(a in arb_matrix(12, 30)) {
            let (r, p) = a.rref();
            prop_assert_eq!(r.rank(), a.rank());
            prop_assert_eq!(p.len(), a.rank());
            let (r2, p2) = r.rref();
            prop_assert_eq!(r2, r);
            prop_assert_eq!(p2, p);
        }

        #[test]
        fn nullspace_is_annihilated(a in arb_matrix(12, 30)) {
            let ns = a.nullspace();
            prop_assert!(a.matmul(&ns.transpose()).unwrap().is_zero());
            prop_assert_eq!(a.rank() + ns.row_count(), a.col_count());
        }

        #[test]
        fn intersection_dimension(a in arb_matrix(8, 16), seed in any::<u64>()) {
            let mut b = BitMatrix::zeros(0, a.col_count());
            let mut x = seed | 1;
            for _ in 0..(seed % 8 + 1) {
                let bits: Vec<u8> = (0..a.col_count()).map(|_| {
                    x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                    (x & 1) as u8
                }).collect();
                b.push_row_bits(&bits);
            }
            // share a row with `a` so the intersection is often nontrivial
            b.push_row_words(a.row_words(0));
            let i = a.intersect_rowspaces(&b).unwrap();
            let stacked = a.vstack(&b).unwrap();
            prop_assert_eq!(i.row_count(), a.rank() + b.rank() - stacked.rank());
            prop_assert_eq!(a.vstack(&i).unwrap().rank(), a.rank());
            prop_assert_eq!(b.vstack(&i).unwrap().rank(), b.rank());
        }

        #[test]
        fn gram_is_symmetric(a in arb_matrix(10, 40)) {
            let g = a.gram();
            prop_assert_eq!(g.transpose(), g.clone());
            prop_assert_eq!(g, a.matmul(&a.transpose()).unwrap());
        }
    }
}
