//! The Gray map `φ_k : R_k^n -> F_2^{2^k n}` and Lee weight.
//!
//! Writing `c = c_1 + u_k c_2` with `c_1, c_2 ∈ R_{k-1}^n`,
//! `φ_k(c) = (φ_{k-1}(c_2), φ_{k-1}(c_1) + φ_{k-1}(c_2))`, with `φ_0` the
//! identity on `F_2`. The recursion is applied to whole vectors, so the image
//! of a length-`n` word consists of `2^k` blocks of length `n`: bit `t·n + i`
//! is bit `t` of the `2^k`-bit pattern of coordinate `i`.

use alloc::vec::Vec;

pub use crate::bits::BinaryWord;
use crate::error::{Error, Result};
use crate::ring::RingElement;

/// `φ_k` of one coordinate given as a coefficient mask (bit `A` = `c_A`);
/// bit `t` of the result is output position `t`.
pub fn gray_pattern(k: u32, c: u16) -> u16 {
    if k == 0 {
        return c & 1;
    }
    let half = 1u32 << (k - 1);
    let low = ((1u32 << half) - 1) as u16;
    let c1 = c & low;
    let c2 = (c >> half) & low;
    let p1 = gray_pattern(k - 1, c1);
    let p2 = gray_pattern(k - 1, c2);
    p2 | (p1 ^ p2) << half
}

/// Lee weight of a single coordinate given as a coefficient mask.
#[inline]
pub fn lee_weight_bits(k: u32, c: u16) -> u32 {
    gray_pattern(k, c).count_ones()
}

/// Precomputed patterns and Lee weights for every element of `R_k`.
#[derive(Clone, Debug)]
pub struct GrayTable {
    k: u32,
    patterns: Vec<u16>,
}

impl GrayTable {
    pub fn new(k: u32) -> Self {
        let size = 1u32 << (1u32 << k);
        GrayTable {
            k,
            patterns: (0..size).map(|c| gray_pattern(k, c as u16)).collect(),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn pattern(&self, c: u16) -> u16 {
        self.patterns[c as usize]
    }

    #[inline]
    pub fn weight(&self, c: u16) -> u32 {
        self.patterns[c as usize].count_ones()
    }

    /// Gray image of a word of packed `R_k` coordinates.
    pub fn map(&self, word: &[u16]) -> BinaryWord {
        let n = word.len();
        let mut out = BinaryWord::zeros(n << self.k);
        for (i, &c) in word.iter().enumerate() {
            let mut p = self.pattern(c);
            while p != 0 {
                let t = p.trailing_zeros() as usize;
                out.set(t * n + i, true);
                p &= p - 1;
            }
        }
        out
    }

    pub fn lee_weight(&self, word: &[u16]) -> u64 {
        word.iter().map(|&c| self.weight(c) as u64).sum()
    }
}

fn packed(word: &[RingElement]) -> Result<(u32, Vec<u16>)> {
    let Some(first) = word.first() else {
        return Ok((0, Vec::new()));
    };
    let k = first.ring().generators();
    let bits = word
        .iter()
        .map(|e| {
            if e.ring().generators() != k {
                return Err(Error::RingMismatch);
            }
            e.binary_bits()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((k, bits))
}

/// `φ_k(word)`; every coordinate must have `F_2` coefficients.
pub fn gray_map(word: &[RingElement]) -> Result<BinaryWord> {
    let (k, bits) = packed(word)?;
    Ok(GrayTable::new(k).map(&bits))
}

/// Hamming weight of the Gray image.
pub fn lee_weight(word: &[RingElement]) -> Result<u64> {
    let (k, bits) = packed(word)?;
    Ok(bits.iter().map(|&c| lee_weight_bits(k, c) as u64).sum())
}

/// `w_H(y) = (len - Σ_i (-1)^{y_i}) / 2`.
pub fn hamming_via_character_sum(y: &BinaryWord) -> usize {
    let signs: i64 = (0..y.len()).map(|i| if y.get(i) { -1 } else { 1 }).sum();
    ((y.len() as i64 - signs) / 2) as usize
}
