//! Arithmetic in `GF(2^m)`, `1 <= m <= 16`, in polynomial basis.
//!
//! A field is described by a [`Gf2m`] value: the degree `m` and an irreducible
//! modulus given as a bit mask (bit `i` is the coefficient of `x^i`, so
//! `x^2 + x + 1` is `0x7`). Irreducibility is checked by trial division every
//! time a field is constructed, including for the built-in table.
//!
//! Elements ([`FieldElement`]) carry their field. Mixing elements of two
//! different fields is an error for the `try_*` methods and a panic for the
//! operator impls.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul};

use crate::error::{Error, Factorization, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Default moduli for `m = 1..=16`: the smallest irreducible polynomial of
/// each degree, except `m = 1` where `x + 1` is used instead of `x`.
pub const DEFAULT_MODULI: [u32; 16] = [
    0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

/// Degree of a polynomial over `F_2` given as a bit mask; `None` for zero.
pub fn poly_degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Remainder of `a` modulo `b` over `F_2`. Panics if `b` is zero.
pub fn poly_rem(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("polynomial division by zero");
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

fn poly_div(mut a: u32, b: u32) -> u32 {
    let db = poly_degree(b).expect("polynomial division by zero");
    let mut q = 0;
    while let Some(da) = poly_degree(a) {
        if da < db {
            break;
        }
        q |= 1 << (da - db);
        a ^= b << (da - db);
    }
    q
}

/// Complete factorization of `p` by trial division, smallest factors first.
///
/// Any divisor found while scanning candidates in increasing order is
/// irreducible, since its own factors would have been divided out earlier.
pub fn factorize(mut p: u32) -> Vec<(u32, u32)> {
    let mut factors = Vec::new();
    let mut q = 2u32;
    while let Some(dp) = poly_degree(p) {
        if dp == 0 {
            break;
        }
        let dq = poly_degree(q).unwrap_or(0);
        if 2 * dq > dp {
            // What is left has no factor of degree <= dp / 2.
            factors.push((p, 1));
            break;
        }
        let mut exp = 0;
        while poly_rem(p, q) == 0 {
            p = poly_div(p, q);
            exp += 1;
        }
        if exp > 0 {
            factors.push((q, exp));
        }
        q += 1;
    }
    factors
}

/// Formats a bit-mask polynomial as `x^2+x+1`.
#[derive(Clone, Copy, Debug)]
pub struct PolyDisplay(pub u32);

impl fmt::Display for PolyDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = poly_degree(self.0) else {
            return f.write_str("0");
        };
        let mut first = true;
        for i in (0..=deg).rev() {
            if self.0 >> i & 1 == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match i {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// The field `GF(2^m)` with a fixed irreducible modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Gf2m {
    degree: u8,
    modulus: u32,
    // bit i = tr(x^i); tr(a) is then the parity of (a & trace_mask)
    trace_mask: u16,
}

impl Gf2m {
    /// The field of degree `m` with the built-in modulus.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        Self::with_modulus(m, DEFAULT_MODULI[m as usize - 1])
    }

    /// The field of degree `m` reduced by `modulus`, after checking the
    /// modulus is irreducible of degree exactly `m`.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::UnsupportedDegree(m));
        }
        if poly_degree(modulus) != Some(m) {
            return Err(Error::WrongDegree { modulus, degree: m });
        }
        let factors = factorize(modulus);
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::Reducible {
                modulus,
                factors: Factorization(factors),
            });
        }
        let mut field = Gf2m {
            degree: m as u8,
            modulus,
            trace_mask: 0,
        };
        let mut mask = 0u16;
        for i in 0..m {
            if field.trace_by_frobenius(1 << i) == 1 {
                mask |= 1 << i;
            }
        }
        field.trace_mask = mask;
        Ok(field)
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> u32 {
        1 << self.degree
    }

    pub fn element(&self, rep: u32) -> Result<FieldElement> {
        if rep >= self.order() {
            return Err(Error::ElementOutOfRange {
                rep,
                degree: self.degree(),
            });
        }
        Ok(FieldElement {
            rep: rep as u16,
            field: *self,
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            rep: 0,
            field: *self,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            rep: 1,
            field: *self,
        }
    }

    /// The power-basis element `x^t`, `t < m`.
    pub fn basis(&self, t: u32) -> FieldElement {
        assert!(t < self.degree(), "basis index out of range");
        FieldElement {
            rep: 1 << t,
            field: *self,
        }
    }

    /// All elements in ascending order of representative.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |r| FieldElement {
            rep: r as u16,
            field: *self,
        })
    }

    /// The multiplicative group, ascending.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.elements().skip(1)
    }

    /// Shift-and-add product of two representatives.
    #[inline]
    pub fn mul_raw(&self, a: u16, b: u16) -> u16 {
        let top = 1u32 << self.degree;
        let mut a = a as u32;
        let mut b = b as u32;
        let mut acc = 0u32;
        while b != 0 {
            if b & 1 != 0 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a & top != 0 {
                a ^= self.modulus;
            }
        }
        acc as u16
    }

    #[inline]
    pub fn square_raw(&self, a: u16) -> u16 {
        self.mul_raw(a, a)
    }

    pub fn pow_raw(&self, mut a: u16, mut e: u32) -> u16 {
        let mut acc = 1u16;
        while e != 0 {
            if e & 1 != 0 {
                acc = self.mul_raw(acc, a);
            }
            a = self.square_raw(a);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace of a representative, via the precomputed linear form.
    #[inline]
    pub fn trace_raw(&self, a: u16) -> u8 {
        ((a & self.trace_mask).count_ones() & 1) as u8
    }

    /// `a + a^2 + a^4 + .. + a^(2^(m-1))`, evaluated term by term.
    fn trace_by_frobenius(&self, a: u16) -> u16 {
        let mut acc = 0;
        let mut power = a;
        for _ in 0..self.degree {
            acc ^= power;
            power = self.square_raw(power);
        }
        debug_assert!(acc <= 1, "trace left the prime field");
        acc
    }
}

impl fmt::Display for Gf2m {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {}", self.degree, PolyDisplay(self.modulus))
    }
}

/// An element of some `GF(2^m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    rep: u16,
    field: Gf2m,
}

impl FieldElement {
    /// Coefficient bits in polynomial basis.
    pub fn rep(&self) -> u16 {
        self.rep
    }

    pub fn field(&self) -> Gf2m {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        self.same_field(&other)?;
        Ok(FieldElement {
            rep: self.rep ^ other.rep,
            field: self.field,
        })
    }

    pub fn try_mul(self, other: Self) -> Result<Self> {
        self.same_field(&other)?;
        Ok(FieldElement {
            rep: self.field.mul_raw(self.rep, other.rep),
            field: self.field,
        })
    }

    /// Multiplicative inverse as `a^(2^m - 2)`.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement {
            rep: self.field.pow_raw(self.rep, self.field.order() - 2),
            field: self.field,
        })
    }

    pub fn pow(self, e: u32) -> Self {
        FieldElement {
            rep: self.field.pow_raw(self.rep, e),
            field: self.field,
        }
    }

    /// The Frobenius automorphism `a -> a^2`.
    pub fn frobenius(self) -> Self {
        FieldElement {
            rep: self.field.square_raw(self.rep),
            field: self.field,
        }
    }

    /// Absolute trace `tr(a) ∈ {0, 1}`.
    pub fn trace(self) -> u8 {
        self.field.trace_raw(self.rep)
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

/// `Σ_x (-1)^tr(z x)`, with `x` over the whole field or only its nonzero elements.
pub fn character_sum(z: FieldElement, over_units: bool) -> i64 {
    let field = z.field();
    let skip = usize::from(over_units);
    field
        .elements()
        .skip(skip)
        .map(|x| if (z * x).trace() == 0 { 1 } else { -1 })
        .sum()
}
