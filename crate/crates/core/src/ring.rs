//! The ring `R = F_{2^m}[u_1, .., u_k] / (u_i^2 = 0, u_i u_j = u_j u_i)`.
//!
//! An element `Σ_A c_A u_A` is stored as its `2^k` coefficients indexed by
//! subset masks: bit `i - 1` of the mask stands for `u_i`, and mask `0` is the
//! constant term. With `m = 1` this is the binary ring `R_k`.
//!
//! The canonical integer encoding of an element concatenates the `m`-bit
//! coefficient representatives in mask order, mask `0` in the low bits. Unit
//! enumeration, code coordinates and every exported artifact are ordered by it.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul};

use crate::error::{Error, Result};
use crate::gf2m::{FieldElement, Gf2m};
use crate::ENUMERATION_LIMIT_BITS;

/// Largest supported number of nilpotent generators.
pub const MAX_GENERATORS: u32 = 4;

const MAX_COEFFS: usize = 1 << MAX_GENERATORS;

/// Parameters of the ring: number of generators and coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    k: u8,
    field: Gf2m,
}

impl RingSpec {
    pub fn new(k: u32, field: Gf2m) -> Result<Self> {
        if !(1..=MAX_GENERATORS).contains(&k) {
            return Err(Error::UnsupportedGenerators(k));
        }
        Ok(RingSpec { k: k as u8, field })
    }

    /// The binary ring `R_k` (coefficients in `F_2`).
    pub fn binary(k: u32) -> Result<Self> {
        Self::new(k, Gf2m::new(1)?)
    }

    /// Number of nilpotent generators `k`.
    pub fn generators(&self) -> u32 {
        self.k as u32
    }

    pub fn field(&self) -> Gf2m {
        self.field
    }

    /// Extension degree `m` of the coefficient field.
    pub fn degree(&self) -> u32 {
        self.field.degree()
    }

    /// Number of coefficients, `2^k`.
    pub fn num_coeffs(&self) -> usize {
        1 << self.k
    }

    /// Mask of the top monomial `u_1 u_2 .. u_k`.
    pub fn full_mask(&self) -> usize {
        self.num_coeffs() - 1
    }

    /// `m · 2^k`, the number of bits in the canonical encoding.
    pub fn encoding_bits(&self) -> u32 {
        self.degree() << self.k
    }

    pub fn is_binary(&self) -> bool {
        self.degree() == 1
    }

    /// The binary ring `R_k` with the same `k`.
    pub fn binary_subring(&self) -> RingSpec {
        RingSpec::binary(self.generators()).expect("k already validated")
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: *self,
            coeffs: [0; MAX_COEFFS],
        }
    }

    pub fn one(&self) -> RingElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// `c · u_A`.
    pub fn monomial(&self, mask: usize, c: FieldElement) -> Result<RingElement> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if mask >= self.num_coeffs() {
            return Err(Error::LengthMismatch {
                expected: self.num_coeffs(),
                got: mask + 1,
            });
        }
        let mut e = self.zero();
        e.coeffs[mask] = c.rep();
        Ok(e)
    }

    /// The generator `u_i`, `1 <= i <= k`.
    pub fn u(&self, i: u32) -> RingElement {
        assert!((1..=self.generators()).contains(&i), "no generator u_{i}");
        let mut e = self.zero();
        e.coeffs[1 << (i - 1)] = 1;
        e
    }

    /// Element from coefficient representatives in mask order.
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<RingElement> {
        if coeffs.len() != self.num_coeffs() {
            return Err(Error::LengthMismatch {
                expected: self.num_coeffs(),
                got: coeffs.len(),
            });
        }
        let mut e = self.zero();
        for (slot, &c) in e.coeffs.iter_mut().zip(coeffs) {
            *slot = self.field.element(c)?.rep();
        }
        Ok(e)
    }

    /// Inverse of [`RingElement::index`].
    pub fn from_index(&self, index: u64) -> Result<RingElement> {
        let bits = self.encoding_bits();
        if bits < 64 && index >> bits != 0 {
            return Err(Error::Parse(alloc::format!(
                "index {index} exceeds {bits}-bit encoding"
            )));
        }
        Ok(self.from_index_unchecked(index))
    }

    pub(crate) fn from_index_unchecked(&self, index: u64) -> RingElement {
        let m = self.degree();
        let mask = (1u64 << m) - 1;
        let mut e = self.zero();
        for (a, slot) in e.coeffs.iter_mut().take(self.num_coeffs()).enumerate() {
            let shift = m as usize * a;
            if shift < 64 {
                *slot = (index >> shift & mask) as u16;
            }
        }
        e
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.encoding_bits() > ENUMERATION_LIMIT_BITS {
            return Err(Error::Guardrail(alloc::format!(
                "m·2^k = {} exceeds {}",
                self.encoding_bits(),
                ENUMERATION_LIMIT_BITS
            )));
        }
        Ok(())
    }

    /// Number of elements, `2^(m 2^k)`; requires the enumeration guardrail.
    pub fn size(&self) -> Result<u64> {
        self.check_enumerable()?;
        Ok(1 << self.encoding_bits())
    }

    /// Every element in ascending canonical order.
    pub fn elements(&self) -> Result<impl Iterator<Item = RingElement> + '_> {
        let size = self.size()?;
        Ok((0..size).map(move |i| self.from_index_unchecked(i)))
    }

    /// The unit group `R*` in ascending canonical order.
    pub fn enumerate_units(&self) -> Result<Vec<RingElement>> {
        Ok(self.elements()?.filter(RingElement::is_unit).collect())
    }

    /// Position of a unit in [`RingSpec::enumerate_units`] order.
    pub fn unit_position(&self, x: &RingElement) -> Option<usize> {
        if x.ring != *self || !x.is_unit() || self.encoding_bits() > 63 {
            return None;
        }
        let m = self.degree();
        let index = x.index();
        let low = (1u64 << m) - 1;
        Some(((index >> m) * low + (index & low) - 1) as usize)
    }

    /// Embeds an element of `R_k` into this ring (coefficients `0`/`1`).
    pub fn lift(&self, r: &RingElement) -> Result<RingElement> {
        if r.ring.generators() != self.generators() {
            return Err(Error::RingMismatch);
        }
        let r = r.to_binary()?;
        Ok(RingElement {
            ring: *self,
            coeffs: r.coeffs,
        })
    }

    /// Parses the text form `[c_0, c_1, ..]` (decimal representatives in mask order).
    pub fn parse(&self, text: &str) -> Result<RingElement> {
        let inner = text
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(alloc::format!("expected `[..]`, got `{text}`")))?;
        let coeffs = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(alloc::format!("`{}`: {e}", t.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        self.from_coeffs(&coeffs)
    }

    /// Parses the compact hex form produced by [`RingElement::to_hex`].
    pub fn parse_hex(&self, text: &str) -> Result<RingElement> {
        let digits = text.trim();
        let digits = digits.strip_prefix("0x").unwrap_or(digits);
        let bits = self.encoding_bits() as usize;
        let mut values = alloc::vec![0u8; digits.len() * 4];
        for (pos, ch) in digits.chars().rev().enumerate() {
            let nibble = ch
                .to_digit(16)
                .ok_or_else(|| Error::Parse(alloc::format!("bad hex digit `{ch}`")))?;
            for b in 0..4 {
                values[4 * pos + b] = (nibble >> b & 1) as u8;
            }
        }
        if values.iter().skip(bits).any(|&b| b != 0) {
            return Err(Error::Parse(alloc::format!(
                "`{text}` exceeds {bits}-bit encoding"
            )));
        }
        values.resize(bits, 0);
        let m = self.degree() as usize;
        let coeffs: Vec<u32> = values
            .chunks(m)
            .map(|c| c.iter().rev().fold(0u32, |acc, &b| acc << 1 | b as u32))
            .collect();
        self.from_coeffs(&coeffs)
    }
}

/// An element `Σ_A c_A u_A` of some [`RingSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: RingSpec,
    // only the first 2^k entries are meaningful; the rest stay zero
    coeffs: [u16; MAX_COEFFS],
}

impl RingElement {
    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    /// Coefficient representatives in mask order.
    pub fn coeffs(&self) -> &[u16] {
        &self.coeffs[..self.ring.num_coeffs()]
    }

    pub fn coeff(&self, mask: usize) -> FieldElement {
        self.ring
            .field
            .element(self.coeffs[mask] as u32)
            .expect("coefficient in range")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Units are exactly the elements with a nonzero constant term.
    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    pub fn in_maximal_ideal(&self) -> bool {
        !self.is_unit()
    }

    /// Canonical integer encoding. Panics if `m · 2^k > 64`.
    pub fn index(&self) -> u64 {
        assert!(self.ring.encoding_bits() <= 64, "encoding exceeds 64 bits");
        let m = self.ring.degree() as usize;
        self.coeffs()
            .iter()
            .enumerate()
            .fold(0u64, |acc, (a, &c)| acc | (c as u64) << (m * a))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = *self;
        for (x, y) in out.coeffs.iter_mut().zip(other.coeffs) {
            *x ^= y;
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `(Σ c_A u_A)(Σ d_B u_B) = Σ_{A ∩ B = ∅} c_A d_B u_{A ∪ B}`.
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.ring.num_coeffs();
        let field = self.ring.field;
        let mut out = self.ring.zero();
        for a in 0..n {
            let c = self.coeffs[a];
            if c == 0 {
                continue;
            }
            for b in 0..n {
                if a & b == 0 && other.coeffs[b] != 0 {
                    out.coeffs[a | b] ^= field.mul_raw(c, other.coeffs[b]);
                }
            }
        }
        out
    }

    /// Multiplies every coefficient by a field scalar.
    pub fn scale(&self, c: FieldElement) -> Result<Self> {
        if c.field() != self.ring.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = *self;
        for x in out.coeffs.iter_mut() {
            *x = self.ring.field.mul_raw(*x, c.rep());
        }
        Ok(out)
    }

    /// Inverse of a unit: with `a = c(1 + ν)` and `ν` nilpotent,
    /// `a^-1 = c^-1 Σ_{t=0}^{k} ν^t`.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotAUnit);
        }
        let c_inv = self.coeff(0).inv()?;
        let mut nu = self.scale(c_inv)?;
        nu.coeffs[0] = 0;
        let mut sum = self.ring.one();
        let mut power = self.ring.one();
        for _ in 0..self.ring.generators() {
            power = power.mul_unchecked(&nu);
            sum = sum.try_add(&power)?;
        }
        debug_assert!(power.mul_unchecked(&nu).is_zero());
        sum.scale(c_inv)
    }

    /// Coefficient-wise field Frobenius `Σ c_A u_A -> Σ c_A^2 u_A`.
    pub fn frobenius(&self) -> Self {
        let mut out = *self;
        for x in out.coeffs.iter_mut() {
            *x = self.ring.field.square_raw(*x);
        }
        out
    }

    /// `Tr = Σ_{j<m} F^j`, returned as an element of `R_k`.
    pub fn trace_down(&self) -> RingElement {
        let mut acc = self.ring.zero();
        let mut power = *self;
        for _ in 0..self.ring.degree() {
            acc = acc.try_add(&power).expect("same ring");
            power = power.frobenius();
        }
        let mut out = self.ring.binary_subring().zero();
        for (dst, &src) in out.coeffs.iter_mut().zip(acc.coeffs()) {
            debug_assert!(src <= 1, "trace left F_2");
            *dst = src;
        }
        out
    }

    /// `Tr(self)` packed as a bit mask: bit `A` is `tr(c_A)`.
    #[inline]
    pub fn trace_bits(&self) -> u16 {
        let field = self.ring.field;
        self.coeffs()
            .iter()
            .enumerate()
            .fold(0u16, |acc, (a, &c)| acc | (field.trace_raw(c) as u16) << a)
    }

    /// Reinterprets an element with `0`/`1` coefficients as an element of `R_k`.
    pub fn to_binary(&self) -> Result<RingElement> {
        if let Some(mask) = self.coeffs().iter().position(|&c| c > 1) {
            return Err(Error::NonBinaryCoefficient { mask });
        }
        Ok(RingElement {
            ring: self.ring.binary_subring(),
            coeffs: self.coeffs,
        })
    }

    /// Coefficients of a binary element packed as a bit mask (bit `A` = `c_A`).
    pub fn binary_bits(&self) -> Result<u16> {
        let b = self.to_binary()?;
        Ok(b.coeffs()
            .iter()
            .enumerate()
            .fold(0u16, |acc, (a, &c)| acc | c << a))
    }

    /// Compact hex form: `m`-bit coefficient fields, mask `0` lowest,
    /// printed most significant digit first.
    pub fn to_hex(&self) -> String {
        let m = self.ring.degree() as usize;
        let bits = self.ring.encoding_bits() as usize;
        let digits = bits.div_ceil(4);
        let bit = |i: usize| -> u32 {
            if i >= bits {
                0
            } else {
                (self.coeffs[i / m] >> (i % m) & 1) as u32
            }
        };
        (0..digits)
            .rev()
            .map(|d| {
                let nibble = (0..4).fold(0, |acc, b| acc | bit(4 * d + b) << b);
                char::from_digit(nibble, 16).expect("nibble")
            })
            .collect()
    }
}

/// Binary-ring multiplication on packed masks (bit `A` = coefficient of `u_A`).
#[inline]
pub fn binary_mul_bits(k: u32, a: u16, b: u16) -> u16 {
    let n = 1usize << k;
    let mut out = 0u16;
    for x in 0..n {
        if a >> x & 1 == 0 {
            continue;
        }
        for y in 0..n {
            if x & y == 0 && b >> y & 1 == 1 {
                out ^= 1 << (x | y);
            }
        }
    }
    out
}

impl Add for RingElement {
    type Output = RingElement;

    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("ring mismatch")
    }
}

impl Mul for RingElement {
    type Output = RingElement;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("ring mismatch")
    }
}

impl PartialOrd for RingElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical-encoding order; elements of different rings are ordered by
/// `(k, m, modulus)` first.
impl Ord for RingElement {
    fn cmp(&self, other: &Self) -> Ordering {
        let key = |r: &RingSpec| (r.k, r.field.degree(), r.field.modulus());
        key(&self.ring)
            .cmp(&key(&other.ring))
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&c.to_string())?;
        }
        f.write_str("]")
    }
}
