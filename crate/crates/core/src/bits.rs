//! Packed binary words and linear algebra over `F_2`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// A fixed-length bit vector; bits beyond `len` in the last limb are zero.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    len: usize,
    limbs: Vec<u64>,
}

impl BinaryWord {
    pub fn zeros(len: usize) -> Self {
        BinaryWord {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_fn(len: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut w = Self::zeros(len);
        for i in 0..len {
            if f(i) {
                w.limbs[i >> 6] |= 1 << (i & 63);
            }
        }
        w
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Self::from_fn(bits.len(), |i| bits[i] & 1 == 1)
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut w = Self::zeros(len);
        w.set(i, true);
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.limbs[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i & 63);
        if value {
            self.limbs[i >> 6] |= mask;
        } else {
            self.limbs[i >> 6] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.limbs[i >> 6] ^= 1 << (i & 63);
    }

    /// Hamming weight.
    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|l| l.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch");
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// Inner product over `F_2`.
    pub fn dot(&self, other: &Self) -> u8 {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        (ones & 1) as u8
    }

    /// `support(self) ⊆ support(other)`.
    pub fn support_within(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        self.limbs
            .iter()
            .zip(&other.limbs)
            .all(|(a, b)| a & !b == 0)
    }

    /// Positions of the set bits, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.limbs.iter().enumerate().flat_map(|(li, &limb)| {
            let mut rest = limb;
            core::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(li * 64 + b)
            })
        })
    }

    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    /// Hex form: bit `j` is bit `j mod 4` of hex digit `j / 4`, digits in order.
    pub fn to_hex(&self) -> String {
        (0..self.len.div_ceil(4))
            .map(|d| {
                let nibble = (0..4)
                    .filter(|b| 4 * d + b < self.len && self.get(4 * d + b))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(nibble, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(text: &str, len: usize) -> Result<Self> {
        let text = text.trim();
        if text.len() != len.div_ceil(4) {
            return Err(Error::Parse(alloc::format!(
                "expected {} hex digits for {len} bits, got {}",
                len.div_ceil(4),
                text.len()
            )));
        }
        let mut w = Self::zeros(len);
        for (d, ch) in text.chars().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(alloc::format!("bad hex digit `{ch}`")))?;
            for b in 0..4 {
                if nibble >> b & 1 == 1 {
                    if 4 * d + b >= len {
                        return Err(Error::Parse("padding bits must be zero".into()));
                    }
                    w.set(4 * d + b, true);
                }
            }
        }
        Ok(w)
    }

    pub fn to_bit_string(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    pub fn from_bit_string(text: &str) -> Result<Self> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse(alloc::format!("bad bit `{c}`"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Self::from_bits(&bits))
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryWord({})", self.to_bit_string())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bit_string())
    }
}

/// Dense row-major matrix over `F_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    cols: usize,
    rows: Vec<BinaryWord>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<BinaryWord>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(BitMatrix { cols, rows })
    }

    pub fn push_row(&mut self, row: BinaryWord) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.rows.push(row);
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[BinaryWord] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BinaryWord {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> BinaryWord {
        BinaryWord::from_fn(self.rows.len(), |i| self.rows[i].get(j))
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix {
            cols: self.rows.len(),
            rows: (0..self.cols).map(|j| self.column(j)).collect(),
        }
    }

    /// `Σ_i coeffs_i · row_i`.
    pub fn combine_rows(&self, coeffs: &BinaryWord) -> BinaryWord {
        assert_eq!(coeffs.len(), self.rows.len(), "coefficient length mismatch");
        let mut acc = BinaryWord::zeros(self.cols);
        for i in coeffs.support() {
            acc.xor_assign(&self.rows[i]);
        }
        acc
    }

    /// Reduced row echelon form (zero rows dropped) and pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(col)) else {
                continue;
            };
            rows.swap(r, p);
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (
            BitMatrix {
                cols: self.cols,
                rows,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        let mut basis = XorBasis::new(self.cols, 0);
        self.rows
            .iter()
            .filter(|r| basis.insert(r, &BinaryWord::zeros(0)))
            .count()
    }

    /// Basis of `{ v : row · v = 0 for every row }`, one vector per free column.
    pub fn kernel(&self) -> BitMatrix {
        let (echelon, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = BitMatrix::new(self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BinaryWord::unit(self.cols, free);
            for (row, &p) in echelon.rows.iter().zip(&pivots) {
                if row.get(free) {
                    v.set(p, true);
                }
            }
            out.push_row(v);
        }
        out
    }

    /// Is `word` in the row space?
    pub fn spans(&self, word: &BinaryWord) -> bool {
        let mut basis = XorBasis::new(self.cols, 0);
        for r in &self.rows {
            basis.insert(r, &BinaryWord::zeros(0));
        }
        basis.reduce(word).0.is_zero()
    }
}

/// Incremental echelon basis with provenance tags.
///
/// Every stored vector carries the tag combination of the inputs it was built
/// from, so a successful reduction tells which inputs sum to the target.
#[derive(Clone, Debug)]
pub struct XorBasis {
    len: usize,
    tag_len: usize,
    entries: Vec<(usize, BinaryWord, BinaryWord)>,
}

impl XorBasis {
    pub fn new(len: usize, tag_len: usize) -> Self {
        XorBasis {
            len,
            tag_len,
            entries: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Reduces `v` against the basis; returns the residual and the tag of
    /// the basis combination that was added.
    pub fn reduce(&self, v: &BinaryWord) -> (BinaryWord, BinaryWord) {
        assert_eq!(v.len(), self.len, "length mismatch");
        let mut x = v.clone();
        let mut tag = BinaryWord::zeros(self.tag_len);
        for (pivot, row, row_tag) in &self.entries {
            if x.get(*pivot) {
                x.xor_assign(row);
                tag.xor_assign(row_tag);
            }
        }
        (x, tag)
    }

    /// Adds `v` with provenance `tag`; returns whether it was independent.
    pub fn insert(&mut self, v: &BinaryWord, tag: &BinaryWord) -> bool {
        assert_eq!(tag.len(), self.tag_len, "tag length mismatch");
        let (x, mut t) = self.reduce(v);
        let Some(pivot) = x.support().next() else {
            return false;
        };
        t.xor_assign(tag);
        self.entries.push((pivot, x, t));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_word_ops() {
        let mut w = BinaryWord::zeros(70);
        w.set(0, true);
        w.set(65, true);
        assert_eq!(w.weight(), 2);
        assert_eq!(w.support().collect::<Vec<_>>(), [0, 65]);
        w.flip(65);
        assert_eq!(w.weight(), 1);
        let a = BinaryWord::from_bit_string("110").unwrap();
        let b = BinaryWord::from_bit_string("100").unwrap();
        assert!(b.support_within(&a));
        assert!(!a.support_within(&b));
        assert_eq!(a.dot(&b), 1);
        assert_eq!(a.xor(&b).to_bit_string(), "010");
    }

    #[test]
    fn hex_layout_is_little_endian_within_digits() {
        let w = BinaryWord::from_bit_string("100011").unwrap();
        assert_eq!(w.to_hex(), "13");
        assert_eq!(BinaryWord::from_hex("13", 6).unwrap(), w);
        assert!(BinaryWord::from_hex("1f", 6).is_err());
        assert!(BinaryWord::from_hex("1", 6).is_err());
    }

    #[test]
    fn kernel_is_orthogonal_complement() {
        let g = BitMatrix::from_rows(
            5,
            ["11010", "01101", "11010", "10111"]
                .iter()
                .map(|s| BinaryWord::from_bit_string(s).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(g.rank(), 2);
        let h = g.kernel();
        assert_eq!(h.num_rows(), 3);
        assert_eq!(h.rank(), 3);
        for hr in h.rows() {
            for gr in g.rows() {
                assert_eq!(hr.dot(gr), 0);
            }
        }
    }

    #[test]
    fn tagged_reduction_finds_combination() {
        let vs: Vec<BinaryWord> = ["1100", "0110", "0011"]
            .iter()
            .map(|s| BinaryWord::from_bit_string(s).unwrap())
            .collect();
        let mut basis = XorBasis::new(4, 3);
        for (i, v) in vs.iter().enumerate() {
            assert!(basis.insert(v, &BinaryWord::unit(3, i)));
        }
        let target = BinaryWord::from_bit_string("1001").unwrap();
        let (res, tag) = basis.reduce(&target);
        assert!(res.is_zero());
        let mut sum = BinaryWord::zeros(4);
        for i in tag.support() {
            sum.xor_assign(&vs[i]);
        }
        assert_eq!(sum, target);
        assert!(!basis
            .reduce(&BinaryWord::from_bit_string("1000").unwrap())
            .0
            .is_zero());
    }
}
