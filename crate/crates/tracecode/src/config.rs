use std::fmt;

use clap::ValueEnum;
use tracecode_core::ring::MAX_GENERATORS;
use tracecode_core::{Gf2m, RingSpec, TraceCode, ENUMERATION_LIMIT_BITS};

/// Bad flags or parameters; the CLI exits with status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<tracecode_core::Error> for UsageError {
    fn from(e: tracecode_core::Error) -> Self {
        UsageError(e.to_string())
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub m: u32,
    pub k: u32,
    pub modulus: Option<u32>,
    pub threads: Option<usize>,
    pub format: Format,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn new(m: u32, k: u32) -> Self {
        RunConfig {
            m,
            k,
            modulus: None,
            threads: None,
            format: Format::Json,
            seed: None,
        }
    }

    pub fn with_modulus(mut self, modulus: u32) -> Self {
        self.modulus = Some(modulus);
        self
    }

    pub fn field(&self) -> Result<Gf2m, UsageError> {
        if self.k == 0 || self.k > MAX_GENERATORS {
            return Err(tracecode_core::Error::UnsupportedGenerators(self.k).into());
        }
        Ok(match self.modulus {
            Some(p) => Gf2m::with_modulus(self.m, p)?,
            None => Gf2m::new(self.m)?,
        })
    }

    pub fn ring(&self) -> Result<RingSpec, UsageError> {
        Ok(RingSpec::new(self.k, self.field()?)?)
    }

    /// Theorem checks need `m >= 2`.
    pub fn require_theorem_range(&self) -> Result<(), UsageError> {
        self.field()?;
        if self.m < 2 {
            return Err(tracecode_core::Error::DegreeTooSmall(self.m).into());
        }
        Ok(())
    }

    pub fn require_enumerable(&self) -> Result<(), UsageError> {
        self.field()?;
        let bits = self.m << self.k;
        if bits > ENUMERATION_LIMIT_BITS {
            return Err(UsageError(format!(
                "enumeration guardrail: m·2^k = {bits} exceeds {ENUMERATION_LIMIT_BITS}"
            )));
        }
        Ok(())
    }

    pub fn code(&self) -> Result<TraceCode, UsageError> {
        self.require_enumerable()?;
        Ok(TraceCode::new(self.ring()?)?)
    }

    /// `{m, k, modulus}` as written into every report.
    pub fn parameters(&self) -> Result<Parameters, UsageError> {
        let field = self.field()?;
        Ok(Parameters {
            m: self.m,
            k: self.k,
            modulus: format!("{:#x}", field.modulus()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Parameters {
    pub m: u32,
    pub k: u32,
    pub modulus: String,
}

/// Accepts `0x13`, `13` (hex either way) or `x^4+x+1`.
pub fn parse_modulus(text: &str) -> Result<u32, UsageError> {
    let t = text.trim();
    if t.contains('x') && !t.starts_with("0x") && !t.starts_with("0X") {
        return parse_polynomial(t);
    }
    let digits = t.trim_start_matches("0x").trim_start_matches("0X");
    u32::from_str_radix(digits, 16).map_err(|_| UsageError(format!("bad modulus `{text}`")))
}

fn parse_polynomial(text: &str) -> Result<u32, UsageError> {
    let bad = || UsageError(format!("bad modulus `{text}`"));
    let mut mask = 0u32;
    for term in text.split('+').map(str::trim) {
        let exp = match term {
            "1" => 0,
            "x" => 1,
            _ => term
                .strip_prefix("x^")
                .and_then(|e| e.parse::<u32>().ok())
                .filter(|&e| e < 32)
                .ok_or_else(bad)?,
        };
        if mask >> exp & 1 == 1 {
            return Err(bad());
        }
        mask |= 1 << exp;
    }
    Ok(mask)
}

/// Comma or whitespace separated participant ids; empty means nobody.
pub fn parse_coalition(text: &str) -> Result<Vec<usize>, UsageError> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| UsageError(format!("bad participant id `{s}`")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_forms() {
        assert_eq!(parse_modulus("0x7").unwrap(), 7);
        assert_eq!(parse_modulus("b").unwrap(), 0xb);
        assert_eq!(parse_modulus("x^3+x^2+1").unwrap(), 0xd);
        assert_eq!(parse_modulus("x^2 + x + 1").unwrap(), 7);
        assert!(parse_modulus("x^2+x^2").is_err());
        assert!(parse_modulus("zz").is_err());
    }

    #[test]
    fn coalitions() {
        assert_eq!(parse_coalition("1, 2 3").unwrap(), [1, 2, 3]);
        assert!(parse_coalition("").unwrap().is_empty());
        assert!(parse_coalition("1,a").is_err());
    }

    #[test]
    fn guards() {
        assert_eq!(
            RunConfig::new(1, 1).require_theorem_range().unwrap_err().0,
            "m >= 2 required (got m = 1)"
        );
        assert!(RunConfig::new(7, 2).require_enumerable().is_err());
        assert!(RunConfig::new(2, 5).field().is_err());
        assert!(RunConfig::new(2, 1).with_modulus(5).field().is_err());
        assert_eq!(RunConfig::new(3, 1).parameters().unwrap().modulus, "0xb");
    }
}
