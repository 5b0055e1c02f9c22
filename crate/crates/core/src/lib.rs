//! Two-Lee-weight trace codes over the ring `R_k = F_2[u_1, .., u_k] / (u_i^2)`.
//!
//! The crate builds the code `C = { (Tr(a x))_{x ∈ R*} : a ∈ R }` where
//! `R = F_{2^m}[u_1, .., u_k] / (u_i^2)`, maps it to a binary code with the
//! recursive Gray map, and checks its structural properties by exhaustive
//! computation: the two-weight spectrum, Griesmer optimality, minimality of
//! every codeword, nondegeneracy of the trace form and the dual Lee distance.
//! The [`sss`] module turns the binary image into a Massey secret sharing
//! scheme.
//!
//! Layers, bottom up:
//!
//! - [`gf2m`]: arithmetic in `GF(2^m)` with a verified irreducible modulus.
//! - [`ring`]: the local ring `R` with subset-mask coefficients, units,
//!   Frobenius and the trace down to `R_k`.
//! - [`bits`]: packed binary words and linear algebra over `F_2`.
//! - [`gray`]: the Gray isometry `R_k^n -> F_2^{2^k n}` and Lee weights.
//! - [`trace_code`]: the code itself, its weight distribution and symmetry.
//! - [`analysis`]: bound and minimality checks, dual distance search.
//! - [`sss`]: share dealing and reconstruction, access structures.
//!
//! The crate is `no_std` (with `alloc`) when built without the default
//! `std` feature. The `parallel` feature spreads the codeword enumeration
//! over a rayon pool; results do not depend on the number of workers.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod bits;
mod error;
pub mod gf2m;
pub mod gray;
pub mod ring;
pub mod sss;
pub mod trace_code;

pub use error::{Error, Result};
pub use gf2m::{FieldElement, Gf2m};
pub use ring::{RingElement, RingSpec};
pub use trace_code::{CodeParameters, TraceCode, WeightDistribution};

/// Largest `m · 2^k` for which the full code (`2^(m 2^k)` codewords) is enumerated.
pub const ENUMERATION_LIMIT_BITS: u32 = 24;
