//! Binary linear codes given by a generator matrix.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// Largest dimension for which the minimum distance is computed by enumeration.
pub const MAX_ENUM_K: usize = 28;

/// Largest dimension accepted by [`LinearCode::extend_best_column`].
pub const MAX_EXTEND_K: usize = 20;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearCode {
    generator: BitMatrix,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub hull_dim: usize,
    /// Number of codewords of each weight `0..=n`.
    pub weight_distribution: Vec<u64>,
}

impl CodeParams {
    pub fn is_lcd(&self) -> bool {
        self.hull_dim == 0
    }

    pub fn is_so(&self) -> bool {
        self.hull_dim == self.k
    }
}

/// Streams the weights of all `2^k` codewords in Gray-code order, one row XOR per step.
/// The callback receives the message mask (bit `r` selects row `r`) and the weight.
pub(crate) fn for_each_codeword_weight(g: &BitMatrix, mut f: impl FnMut(u64, u32)) {
    let k = g.row_count();
    let stride = g.col_count().div_ceil(64);
    let mut acc = vec![0u64; stride];
    f(0, 0);
    for i in 1u64..(1u64 << k) {
        let flip = i.trailing_zeros() as usize;
        for (a, w) in acc.iter_mut().zip(g.row_words(flip)) {
            *a ^= w;
        }
        let gray = i ^ (i >> 1);
        f(gray, acc.iter().map(|w| w.count_ones()).sum());
    }
}

/// Minimum nonzero weight of the row space of `g` (rows assumed independent).
pub fn min_distance_of(g: &BitMatrix) -> usize {
    let mut d = u32::MAX;
    for_each_codeword_weight(g, |m, w| {
        if m != 0 && w < d {
            d = w;
        }
    });
    d as usize
}

/// Weight of every codeword indexed by message mask.
pub(crate) fn message_weights(g: &BitMatrix) -> Vec<u32> {
    let mut out = vec![0u32; 1 << g.row_count()];
    for_each_codeword_weight(g, |m, w| out[m as usize] = w);
    out
}

impl LinearCode {
    /// Validates a generator: full row rank, no zero column, `1 <= k <= n`.
    pub fn new(generator: BitMatrix) -> Result<Self> {
        let (k, n) = (generator.row_count(), generator.col_count());
        if k == 0 || n == 0 {
            return Err(Error::InvalidArgument(format!(
                "a code needs 1 <= k <= n, got k={k} n={n}"
            )));
        }
        if let Some(c) = generator.first_zero_column() {
            return Err(Error::ZeroColumn(c));
        }
        let rank = generator.rank();
        if rank != k {
            return Err(Error::RankDeficient { rank, rows: k });
        }
        Ok(LinearCode { generator })
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn into_generator(self) -> BitMatrix {
        self.generator
    }

    pub fn n(&self) -> usize {
        self.generator.col_count()
    }

    pub fn k(&self) -> usize {
        self.generator.row_count()
    }

    fn guard(&self) -> Result<()> {
        if self.k() > MAX_ENUM_K {
            return Err(Error::EnumerationGuard {
                k: self.k(),
                max: MAX_ENUM_K,
            });
        }
        Ok(())
    }

    pub fn min_distance(&self) -> Result<usize> {
        self.guard()?;
        Ok(min_distance_of(&self.generator))
    }

    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        self.guard()?;
        let mut dist = vec![0u64; self.n() + 1];
        for_each_codeword_weight(&self.generator, |_, w| dist[w as usize] += 1);
        Ok(dist)
    }

    pub fn params(&self) -> Result<CodeParams> {
        let weight_distribution = self.weight_distribution()?;
        let d = weight_distribution
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .expect("a code of dimension >= 1 has a nonzero codeword");
        Ok(CodeParams {
            n: self.n(),
            k: self.k(),
            d,
            hull_dim: self.hull_dim(),
            weight_distribution,
        })
    }

    pub fn gram(&self) -> BitMatrix {
        self.generator.gram()
    }

    /// `k - rank(G G^T)`.
    pub fn hull_dim(&self) -> usize {
        self.k() - self.gram().rank()
    }

    /// Basis of `C ∩ C^⊥`: the messages in the left kernel of the Gram matrix, encoded.
    pub fn hull_basis(&self) -> BitMatrix {
        let messages = self.gram().nullspace();
        messages
            .matmul(&self.generator)
            .expect("message length equals k")
            .row_basis()
    }

    pub fn is_lcd(&self) -> bool {
        self.hull_dim() == 0
    }

    pub fn is_so(&self) -> bool {
        self.gram().is_zero()
    }

    pub fn dual(&self) -> Result<LinearCode> {
        if self.k() == self.n() {
            return Err(Error::InvalidArgument(
                "the dual of the full space is the zero code".into(),
            ));
        }
        LinearCode::new(self.generator.nullspace())
    }

    /// Same row space.
    pub fn same_code(&self, other: &LinearCode) -> bool {
        self.generator.row_basis() == other.generator.row_basis()
    }

    pub fn juxtapose(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch {
                op: "juxtapose",
                left: format!("k={}", self.k()),
                right: format!("k={}", other.k()),
            });
        }
        Ok(LinearCode {
            generator: self.generator.hstack(&other.generator)?,
        })
    }

    /// `copies` side-by-side copies of this code.
    pub fn repeat(&self, copies: usize) -> Result<LinearCode> {
        if copies == 0 {
            return Err(Error::InvalidArgument("at least one copy is needed".into()));
        }
        let mut g = self.generator.clone();
        for _ in 1..copies {
            g = g.hstack(&self.generator)?;
        }
        Ok(LinearCode { generator: g })
    }

    fn append_column(&self, column: usize) -> LinearCode {
        let col = BitMatrix::from_column_indices(self.k(), &[column]);
        LinearCode {
            generator: self.generator.hstack(&col).expect("row counts agree"),
        }
    }

    /// The overall parity column: entry `j` is the weight of row `j` mod 2.
    pub fn parity_column(&self) -> usize {
        (0..self.k())
            .filter(|&r| self.generator.row_weight(r) % 2 == 1)
            .fold(0, |acc, r| acc | (1 << r))
    }

    /// Appends the overall parity column. Fails when every row already has even weight.
    pub fn extend_parity(&self) -> Result<LinearCode> {
        match self.parity_column() {
            0 => Err(Error::ZeroColumn(self.n())),
            p => Ok(self.append_column(p)),
        }
    }

    /// Tries every nonzero column type and keeps the extension with the largest
    /// minimum distance, breaking ties by the smallest column index. With
    /// `require_lcd` only LCD extensions are considered.
    pub fn extend_best_column(&self, require_lcd: bool) -> Result<LinearCode> {
        let k = self.k();
        if k > MAX_EXTEND_K {
            return Err(Error::EnumerationGuard {
                k,
                max: MAX_EXTEND_K,
            });
        }
        let weights = message_weights(&self.generator);
        let gram = self.gram();
        let mut best: Option<(usize, usize)> = None;
        for col in 1usize..(1 << k) {
            if require_lcd {
                let mut g = gram.clone();
                for a in 0..k {
                    for b in 0..k {
                        if (col >> a) & 1 == 1 && (col >> b) & 1 == 1 {
                            g.set(a, b, !g.get(a, b));
                        }
                    }
                }
                if g.rank() != k {
                    continue;
                }
            }
            let d = weights
                .iter()
                .enumerate()
                .skip(1)
                .map(|(m, &w)| w as usize + (m & col).count_ones() as usize % 2)
                .min()
                .unwrap_or(0);
            if best.is_none_or(|(bd, _)| d > bd) {
                best = Some((d, col));
            }
        }
        match best {
            Some((_, col)) => Ok(self.append_column(col)),
            None => Err(Error::NoLcdExtension),
        }
    }
}

/// `sum_{i<k} ceil(d / 2^i)`.
pub fn griesmer_min_length(k: usize, d: usize) -> usize {
    (0..k).map(|i| d.div_ceil(1 << i)).sum()
}

/// Largest `d` allowed by the Griesmer bound at length `n`, dimension `k`.
pub fn griesmer_max_d(n: usize, k: usize) -> usize {
    let mut d = 0;
    while griesmer_min_length(k, d + 1) <= n {
        d += 1;
    }
    d
}

/// A code with a hull basis and an LCD complement of the hull inside the code.
#[derive(Clone, Debug)]
pub struct NestedWitness {
    pub code: LinearCode,
    pub lcd_rows: BitMatrix,
    pub hull_rows: BitMatrix,
    /// Minimum distance of the LCD subcode.
    pub d1: usize,
    /// Minimum distance of the whole code.
    pub d2: usize,
}

impl NestedWitness {
    /// Checks every structural invariant of the witness.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Consistency(format!("nested witness: {what}")));
        let k = self.code.k();
        if self.hull_rows.row_count() != self.code.hull_dim() || self.hull_rows.rank() != self.hull_rows.row_count() {
            return fail("hull rows do not form a basis of the hull");
        }
        if !self.hull_rows.gram().is_zero() {
            return fail("hull rows are not self-orthogonal");
        }
        let cross = self
            .hull_rows
            .matmul(&self.code.generator().transpose())
            .expect("same length");
        if !cross.is_zero() {
            return fail("hull rows are not orthogonal to the code");
        }
        if !self.lcd_rows.gram().is_invertible().unwrap_or(false) {
            return fail("LCD rows have a singular Gram matrix");
        }
        let stacked = self.lcd_rows.vstack(&self.hull_rows)?;
        if stacked.rank() != k || stacked.vstack(self.code.generator())?.rank() != k {
            return fail("LCD rows and hull rows do not span the code");
        }
        if min_distance_of(&self.lcd_rows) != self.d1 || self.code.min_distance()? != self.d2 {
            return fail("stored distances disagree with enumeration");
        }
        Ok(())
    }
}

fn rows_lex_key(m: &BitMatrix) -> Vec<Vec<u8>> {
    (0..m.row_count()).map(|r| m.row_bits(r)).collect()
}

/// Splits a code into its hull and the best LCD complement of the hull.
///
/// All `2^(h(k-h))` complements are enumerated; the one whose subcode has the
/// largest minimum distance wins, ties going to the lexicographically smallest
/// reduced-echelon basis.
pub fn nested_witness(code: &LinearCode) -> Result<NestedWitness> {
    let k = code.k();
    let h = code.hull_dim();
    if h == 0 {
        return Err(Error::TrivialHull);
    }
    if h == k {
        return Err(Error::SelfOrthogonal);
    }
    if h * (k - h) > 24 {
        return Err(Error::EnumerationGuard {
            k: h * (k - h),
            max: 24,
        });
    }
    let hull_msgs = code.gram().nullspace();
    // complete the hull message basis with unit vectors
    let mut basis = hull_msgs.clone();
    let mut complement = BitMatrix::zeros(0, k);
    for i in 0..k {
        let mut unit = BitMatrix::zeros(1, k);
        unit.set(0, i, true);
        let trial = basis.vstack(&unit)?;
        if trial.rank() > basis.rank() {
            basis = trial;
            complement = complement.vstack(&unit)?;
        }
    }
    let r = k - h;
    let hull_rows = hull_msgs.matmul(code.generator())?;
    let comp_rows = complement.matmul(code.generator())?;

    let mut best: Option<(usize, Vec<Vec<u8>>, BitMatrix)> = None;
    for a in 0u64..(1u64 << (r * h)) {
        let mut rows = comp_rows.clone();
        let mut sub = BitMatrix::zeros(0, code.n());
        for i in 0..r {
            let mask = (a >> (i * h)) & ((1 << h) - 1);
            let mut row = rows.combine_rows(1 << i);
            for (x, y) in row.iter_mut().zip(hull_rows.combine_rows(mask)) {
                *x ^= y;
            }
            sub.push_row_words(&row);
        }
        rows = sub.row_basis();
        let d = min_distance_of(&rows);
        let key = rows_lex_key(&rows);
        let better = match &best {
            None => true,
            Some((bd, bk, _)) => d > *bd || (d == *bd && key < *bk),
        };
        if better {
            best = Some((d, key, rows));
        }
    }
    let (d1, _, lcd_rows) = best.expect("at least one complement exists");
    let w = NestedWitness {
        d2: code.min_distance()?,
        code: code.clone(),
        lcd_rows,
        hull_rows: hull_rows.row_basis(),
        d1,
    };
    w.verify()?;
    Ok(w)
}
