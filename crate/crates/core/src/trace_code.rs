//! The trace code `C = { ev(a) = (Tr(a x))_{x ∈ L} : a ∈ R }` with `L = R*`.
//!
//! Coordinates are indexed by the units of `R` in canonical order, so the
//! code has ring length `n = (2^m - 1) 2^(m(2^k - 1))` and its Gray image has
//! binary length `N = 2^k n` and dimension `K = 2^k m`. Two nonzero Lee
//! weights occur:
//!
//! | weight | frequency |
//! |---|---|
//! | `w_1 = 2^(k-1) 2^(m(2^k-1)) (2^m - 1)` | `2^(m 2^k) - 2^m` |
//! | `w_2 = 2^(k-1) 2^(m(2^k-1)) 2^m` | `2^m - 1` |
//!
//! [`TraceCode`] enumerates everything explicitly and is limited to
//! `m · 2^k <= 24`; [`CodeParameters`] and [`predicted_distribution`] use
//! closed forms with arbitrary-precision integers.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bits::{BinaryWord, BitMatrix};
use crate::error::{Error, Result};
use crate::gf2m::{Gf2m, MAX_DEGREE};
use crate::gray::GrayTable;
use crate::ring::{RingElement, RingSpec, MAX_GENERATORS};
use crate::ENUMERATION_LIMIT_BITS;

fn pow2(e: u32) -> BigUint {
    BigUint::one() << e as usize
}

fn check_params(m: u32, k: u32) -> Result<()> {
    if !(1..=MAX_DEGREE).contains(&m) {
        return Err(Error::UnsupportedDegree(m));
    }
    if !(1..=MAX_GENERATORS).contains(&k) {
        return Err(Error::UnsupportedGenerators(k));
    }
    if m < 2 {
        return Err(Error::DegreeTooSmall(m));
    }
    Ok(())
}

/// Closed-form parameters of the Gray image `φ_k(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeParameters {
    pub m: u32,
    pub k: u32,
    /// Ring length `n = |R*|`.
    pub ring_length: BigUint,
    /// Binary length `N = 2^k n`.
    pub length: BigUint,
    /// Binary dimension `K = 2^k m`.
    pub dimension: u32,
    pub w1: BigUint,
    pub w2: BigUint,
    pub freq_w1: BigUint,
    pub freq_w2: BigUint,
}

impl CodeParameters {
    /// Requires `2 <= m <= 16` and `1 <= k <= 4`.
    pub fn new(m: u32, k: u32) -> Result<Self> {
        check_params(m, k)?;
        let q_minus_1 = pow2(m) - 1u32;
        let tail = m * ((1 << k) - 1);
        let ring_length = &q_minus_1 * pow2(tail);
        let block = pow2(k - 1 + tail);
        Ok(CodeParameters {
            m,
            k,
            length: &ring_length << k as usize,
            ring_length,
            dimension: m << k,
            w1: &block * &q_minus_1,
            w2: &block * pow2(m),
            freq_w1: pow2(m << k) - pow2(m),
            freq_w2: q_minus_1,
        })
    }

    /// Minimum distance `d = w_1`.
    pub fn distance(&self) -> &BigUint {
        &self.w1
    }

    pub fn predicted_distribution(&self) -> WeightDistribution {
        let mut dist = WeightDistribution::new();
        dist.add(BigUint::zero(), BigUint::one());
        dist.add(self.w1.clone(), self.freq_w1.clone());
        dist.add(self.w2.clone(), self.freq_w2.clone());
        dist
    }
}

/// The Lee weight spectrum predicted by the closed forms; `m >= 2`.
pub fn predicted_distribution(m: u32, k: u32) -> Result<WeightDistribution> {
    Ok(CodeParameters::new(m, k)?.predicted_distribution())
}

/// Lee weight of `ev(a)` by case analysis on `a`:
///
/// - `a = 0`: `0`;
/// - `a = c u_{1..k}` with `c ≠ 0`: `2^(2^k m + k - 1)`;
/// - every other `a` (units and the rest of the maximal ideal):
///   `2^(k-1) (2^m - 1) 2^(m(2^k - 1))`.
pub fn theoretical_lee_weight(a: &RingElement) -> Result<BigUint> {
    let ring = a.ring();
    let (m, k) = (ring.degree(), ring.generators());
    check_params(m, k)?;
    if a.is_zero() {
        return Ok(BigUint::zero());
    }
    let top = ring.full_mask();
    let only_top = a
        .coeffs()
        .iter()
        .enumerate()
        .all(|(mask, &c)| mask == top || c == 0);
    if only_top {
        Ok(pow2(((1 << k) * m) + k - 1))
    } else {
        Ok(pow2(k - 1) * (pow2(m) - 1u32) * pow2(m * ((1 << k) - 1)))
    }
}

/// A multiset of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightDistribution {
    entries: BTreeMap<BigUint, BigUint>,
}

impl WeightDistribution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_counts(counts: &BTreeMap<u64, u64>) -> Self {
        let mut dist = Self::new();
        for (&w, &f) in counts {
            dist.add(BigUint::from(w), BigUint::from(f));
        }
        dist
    }

    pub fn add(&mut self, weight: BigUint, frequency: BigUint) {
        if frequency.is_zero() {
            return;
        }
        *self.entries.entry(weight).or_default() += frequency;
    }

    /// `(weight, frequency)` pairs in ascending weight order.
    pub fn entries(&self) -> impl Iterator<Item = (&BigUint, &BigUint)> {
        self.entries.iter()
    }

    pub fn frequency(&self, weight: &BigUint) -> BigUint {
        self.entries.get(weight).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn min_nonzero(&self) -> Option<&BigUint> {
        self.entries.keys().find(|w| !w.is_zero())
    }

    pub fn max_weight(&self) -> Option<&BigUint> {
        self.entries.keys().next_back()
    }
}

/// The code `C` over `R_k` together with its ordered defining set `L = R*`.
#[derive(Clone, Debug)]
pub struct TraceCode {
    ring: RingSpec,
    units: Vec<RingElement>,
    gray: GrayTable,
}

impl TraceCode {
    /// Requires `m · 2^k <= 24`.
    pub fn new(ring: RingSpec) -> Result<Self> {
        if ring.encoding_bits() > ENUMERATION_LIMIT_BITS {
            return Err(Error::Guardrail(alloc::format!(
                "m·2^k = {} exceeds {}",
                ring.encoding_bits(),
                ENUMERATION_LIMIT_BITS
            )));
        }
        Ok(TraceCode {
            units: ring.enumerate_units()?,
            gray: GrayTable::new(ring.generators()),
            ring,
        })
    }

    /// Convenience constructor; `modulus = None` uses the built-in table.
    pub fn with_params(m: u32, k: u32, modulus: Option<u32>) -> Result<Self> {
        let field = match modulus {
            Some(p) => Gf2m::with_modulus(m, p)?,
            None => Gf2m::new(m)?,
        };
        Self::new(RingSpec::new(k, field)?)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn m(&self) -> u32 {
        self.ring.degree()
    }

    pub fn k(&self) -> u32 {
        self.ring.generators()
    }

    /// The defining set `L` in coordinate order.
    pub fn units(&self) -> &[RingElement] {
        &self.units
    }

    pub fn gray_table(&self) -> &GrayTable {
        &self.gray
    }

    /// `n = |L|`.
    pub fn ring_length(&self) -> usize {
        self.units.len()
    }

    /// `N = 2^k n`.
    pub fn binary_length(&self) -> usize {
        self.units.len() << self.k()
    }

    /// `K = 2^k m`.
    pub fn dimension(&self) -> usize {
        self.ring.encoding_bits() as usize
    }

    /// Number of codewords `|R| = 2^K`.
    pub fn size(&self) -> u64 {
        1 << self.dimension()
    }

    pub fn unit_position(&self, x: &RingElement) -> Option<usize> {
        self.ring.unit_position(x)
    }

    fn check_ring(&self, a: &RingElement) -> Result<()> {
        if a.ring() == self.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// `ev(a)` with each coordinate packed as an `R_k` mask.
    pub fn evaluate_bits(&self, a: &RingElement) -> Result<Vec<u16>> {
        self.check_ring(a)?;
        Ok(self
            .units
            .iter()
            .map(|x| a.mul_unchecked(x).trace_bits())
            .collect())
    }

    /// `ev(a) = (Tr(a x))_{x ∈ L}` as elements of `R_k`.
    pub fn evaluate(&self, a: &RingElement) -> Result<Vec<RingElement>> {
        self.check_ring(a)?;
        Ok(self.units.iter().map(|x| (*a * *x).trace_down()).collect())
    }

    /// `φ_k(ev(a))`.
    pub fn gray_image(&self, a: &RingElement) -> Result<BinaryWord> {
        Ok(self.gray.map(&self.evaluate_bits(a)?))
    }

    /// `w_L(ev(a))`.
    pub fn lee_weight_of(&self, a: &RingElement) -> Result<u64> {
        self.check_ring(a)?;
        Ok(self
            .units
            .iter()
            .map(|x| self.gray.weight(a.mul_unchecked(x).trace_bits()) as u64)
            .sum())
    }

    /// Every `(a, ev(a))`, `a` ascending.
    pub fn enumerate_code(&self) -> Vec<(RingElement, Vec<RingElement>)> {
        (0..self.size())
            .map(|i| {
                let a = self.ring.from_index_unchecked(i);
                let word = self.evaluate(&a).expect("same ring");
                (a, word)
            })
            .collect()
    }

    /// Gray images of all codewords, `a` ascending.
    pub fn gray_codewords(&self) -> Vec<BinaryWord> {
        let image = |i: u64| {
            self.gray_image(&self.ring.from_index_unchecked(i))
                .expect("same ring")
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..self.size()).into_par_iter().map(image).collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            (0..self.size()).map(image).collect()
        }
    }

    /// Packed `ev(a)` for the additive basis `a = x^t u_A`, in the bit order
    /// of the canonical encoding. `ev` is additive, so `ev(a)` is the XOR of
    /// the words at the set bits of `a`'s index.
    pub fn basis_words(&self) -> Vec<Vec<u16>> {
        (0..self.dimension())
            .map(|r| {
                self.evaluate_bits(&self.ring.from_index_unchecked(1 << r))
                    .expect("same ring")
            })
            .collect()
    }

    /// Lee weights for indices `block << bits .. (block + 1) << bits`,
    /// walking the block in Gray-code order so each step is one XOR.
    fn block_weights(&self, basis: &[Vec<u16>], block: u64, bits: u32) -> Vec<u64> {
        let base = block << bits;
        let mut word = vec![0u16; self.units.len()];
        for (r, b) in basis.iter().enumerate() {
            if base >> r & 1 == 1 {
                word.iter_mut().zip(b).for_each(|(w, x)| *w ^= x);
            }
        }
        let mut out = vec![0u64; 1 << bits];
        out[0] = self.gray.lee_weight(&word);
        for j in 1u64..1 << bits {
            let flip = &basis[j.trailing_zeros() as usize];
            let mut weight = 0u64;
            for (w, x) in word.iter_mut().zip(flip) {
                *w ^= x;
                weight += self.gray.weight(*w) as u64;
            }
            out[(j ^ (j >> 1)) as usize] = weight;
        }
        out
    }

    fn blocks(&self) -> (u64, u32) {
        let bits = (self.dimension() as u32).min(10);
        (self.size() >> bits, bits)
    }

    /// `w_L(ev(a))` for every `a`, indexed by canonical index.
    pub fn lee_weights(&self) -> Vec<u64> {
        let basis = self.basis_words();
        let (count, bits) = self.blocks();
        #[cfg(feature = "parallel")]
        let parts: Vec<Vec<u64>> = {
            use rayon::prelude::*;
            (0..count)
                .into_par_iter()
                .map(|b| self.block_weights(&basis, b, bits))
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let parts: Vec<Vec<u64>> = (0..count)
            .map(|b| self.block_weights(&basis, b, bits))
            .collect();
        parts.concat()
    }

    /// Observed Lee weight distribution over all `2^K` codewords.
    pub fn weight_distribution(&self) -> WeightDistribution {
        let basis = self.basis_words();
        let (count, bits) = self.blocks();
        let tally = |b: u64| {
            let mut counts = BTreeMap::new();
            for w in self.block_weights(&basis, b, bits) {
                *counts.entry(w).or_insert(0u64) += 1;
            }
            counts
        };
        #[cfg(feature = "parallel")]
        let counts = {
            use rayon::prelude::*;
            (0..count)
                .into_par_iter()
                .map(tally)
                .reduce(BTreeMap::new, merge_counts)
        };
        #[cfg(not(feature = "parallel"))]
        let counts = (0..count).map(tally).fold(BTreeMap::new(), merge_counts);
        WeightDistribution::from_counts(&counts)
    }

    /// `K × N` generator matrix of `φ_k(C)`. Row `r` is the image of the basis
    /// element `x^t u_A` with `r = m·A + t`, so row `r` corresponds to bit `r`
    /// of the canonical encoding of `a`.
    pub fn binary_generator_matrix(&self) -> Result<BitMatrix> {
        let dim = self.dimension();
        let rows = (0..dim)
            .map(|r| self.gray_image(&self.ring.from_index_unchecked(1 << r)))
            .collect::<Result<Vec<_>>>()?;
        let g = BitMatrix::from_rows(self.binary_length(), rows)?;
        let rank = g.rank();
        if rank != dim {
            return Err(Error::RankDeficient {
                expected: dim,
                got: rank,
            });
        }
        Ok(g)
    }

    /// The permutation `π` with `L[π(i)] = u · L[i]`; then
    /// `ev(a)_{π(i)} = ev(a u)_i`.
    pub fn coordinate_permutation(&self, u: &RingElement) -> Result<Vec<usize>> {
        self.check_ring(u)?;
        if !u.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(self
            .units
            .iter()
            .map(|x| {
                self.unit_position(&u.mul_unchecked(x))
                    .expect("units are closed under multiplication")
            })
            .collect())
    }
}

fn merge_counts(mut a: BTreeMap<u64, u64>, b: BTreeMap<u64, u64>) -> BTreeMap<u64, u64> {
    for (w, f) in b {
        *a.entry(w).or_insert(0) += f;
    }
    a
}
