use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Irreducible factors of a rejected modulus, as `(factor mask, multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization(pub Vec<(u32, u32)>);

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (factor, exp) in &self.0 {
            write!(f, "({})", crate::gf2m::PolyDisplay(*factor))?;
            if *exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported extension degree {0}: expected 1 <= m <= 16")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} does not have degree {degree}")]
    WrongDegree { modulus: u32, degree: u32 },
    #[error("reducible: {factors}")]
    Reducible {
        modulus: u32,
        factors: Factorization,
    },
    #[error("element representative {rep:#x} out of range for GF(2^{degree})")]
    ElementOutOfRange { rep: u32, degree: u32 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported number of nilpotent generators {0}: expected 1 <= k <= 4")]
    UnsupportedGenerators(u32),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("coefficient outside F_2 at mask {mask:#b}")]
    NonBinaryCoefficient { mask: usize },
    #[error("expected {expected} items, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("m >= 2 required (got m = {0})")]
    DegreeTooSmall(u32),
    #[error("enumeration guardrail: {0}")]
    Guardrail(String),
    #[error("rank deficiency: expected rank {expected}, got {got}")]
    RankDeficient { expected: usize, got: usize },
    #[error("claim `{claim}` violated: {witness}")]
    TheoremViolation {
        claim: &'static str,
        witness: String,
    },
    #[error("{count} codewords are not minimal; access structure is undefined")]
    NotAllMinimal { count: usize },
    #[error("unknown participant {0}")]
    UnknownParticipant(usize),
    #[error("missing share for participant {0}")]
    MissingShare(usize),
    #[error("coalition is authorized; perfectness probe does not apply")]
    Authorized,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
