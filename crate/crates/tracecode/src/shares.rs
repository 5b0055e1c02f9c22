//! Share files and the secret-sharing commands.
//!
//! A share file is
//! `{m, k, modulus, rng, seed, secret_position, shares: [{participant, bit}]}`;
//! `modulus` and `rng` let `reconstruct` rebuild the exact scheme.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};
use tracecode_core::sss::{AccessStructure, Shares, SharingScheme, RNG_NAME};

use crate::config::{parse_modulus, Format, RunConfig, UsageError};
use crate::report::to_json;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareEntry {
    pub participant: usize,
    pub bit: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareFile {
    pub m: u32,
    pub k: u32,
    pub modulus: String,
    pub rng: String,
    pub seed: u64,
    pub secret_position: usize,
    pub shares: Vec<ShareEntry>,
}

impl ShareFile {
    pub fn new(config: &RunConfig, shares: &Shares) -> Result<Self, UsageError> {
        Ok(ShareFile {
            m: config.m,
            k: config.k,
            modulus: config.parameters()?.modulus,
            rng: RNG_NAME.to_string(),
            seed: shares.seed,
            secret_position: shares.secret_position,
            shares: shares
                .values
                .iter()
                .map(|(&participant, &bit)| ShareEntry { participant, bit })
                .collect(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, UsageError> {
        let file: ShareFile = serde_json::from_str(text)
            .map_err(|e| UsageError(format!("malformed share file: {e}")))?;
        if file.rng != RNG_NAME {
            return Err(UsageError(format!(
                "share file was dealt with `{}`, only `{RNG_NAME}` is supported",
                file.rng
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in &file.shares {
            if e.bit > 1 {
                return Err(UsageError(format!(
                    "malformed share file: participant {} has bit {}",
                    e.participant, e.bit
                )));
            }
            if !seen.insert(e.participant) {
                return Err(UsageError(format!(
                    "malformed share file: participant {} listed twice",
                    e.participant
                )));
            }
        }
        Ok(file)
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading share file {}", path.display()))?;
        Ok(Self::parse(&text)?)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }

    pub fn config(&self) -> Result<RunConfig, UsageError> {
        Ok(RunConfig::new(self.m, self.k).with_modulus(parse_modulus(&self.modulus)?))
    }

    pub fn shares(&self) -> Shares {
        Shares {
            secret_position: self.secret_position,
            seed: self.seed,
            values: self
                .shares
                .iter()
                .map(|e| (e.participant, e.bit))
                .collect::<BTreeMap<_, _>>(),
        }
    }
}

pub fn build_scheme(
    config: &RunConfig,
    secret_position: usize,
) -> Result<SharingScheme, UsageError> {
    config.require_theorem_range()?;
    let code = config.code()?;
    let n = code.binary_length();
    if secret_position >= n {
        return Err(UsageError(format!(
            "secret position {secret_position} out of range for length {n}"
        )));
    }
    Ok(SharingScheme::with_secret_position(
        code,
        config.seed.unwrap_or(0),
        secret_position,
    )?)
}

#[derive(Serialize)]
struct AccessJson<'a> {
    minimal_sets: &'a [Vec<usize>],
    dictators: &'a [usize],
}

pub fn render_access(access: &AccessStructure, format: Format) -> String {
    match format {
        Format::Json => to_json(&AccessJson {
            minimal_sets: &access.minimal_sets,
            dictators: &access.dictators,
        }),
        Format::Csv => {
            let mut out = String::new();
            for set in &access.minimal_sets {
                let _ = writeln!(out, "{}", join(set, ","));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "minimal access sets: {}", access.minimal_sets.len());
            for set in &access.minimal_sets {
                let _ = writeln!(out, "  [{}] ({} participants)", join(set, " "), set.len());
            }
            let _ = writeln!(out, "dictators: [{}]", join(&access.dictators, " "));
            out
        }
    }
}

fn join(ids: &[usize], sep: &str) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

#[derive(Serialize)]
struct ReconstructJson {
    status: &'static str,
    secret: Option<u8>,
}

pub fn render_secret(secret: Option<u8>, format: Format) -> String {
    match format {
        Format::Json => to_json(&ReconstructJson {
            status: if secret.is_some() {
                "recovered"
            } else {
                "unauthorized"
            },
            secret,
        }),
        Format::Csv | Format::Text => match secret {
            Some(s) => format!("{s}\n"),
            None => "unauthorized\n".to_string(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn share_file_round_trip() {
        let config = RunConfig {
            seed: Some(7),
            ..RunConfig::new(2, 1)
        };
        let scheme = build_scheme(&config, 0).unwrap();
        let shares = scheme.deal(1);
        let file = ShareFile::new(&config, &shares).unwrap();
        assert_eq!(file.shares.len(), 23);
        let back = ShareFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.shares(), shares);
        assert_eq!(back.config().unwrap().modulus, Some(7));
    }

    #[test]
    fn malformed_files() {
        assert!(ShareFile::parse("{").is_err());
        let bad_bit = r#"{"m":2,"k":1,"modulus":"0x7","rng":"chacha20","seed":1,"secret_position":0,"shares":[{"participant":1,"bit":2}]}"#;
        assert!(ShareFile::parse(bad_bit).unwrap_err().0.contains("bit 2"));
        let twice = r#"{"m":2,"k":1,"modulus":"0x7","rng":"chacha20","seed":1,"secret_position":0,"shares":[{"participant":1,"bit":0},{"participant":1,"bit":1}]}"#;
        assert!(ShareFile::parse(twice).unwrap_err().0.contains("twice"));
        let rng =
            r#"{"m":2,"k":1,"modulus":"0x7","rng":"pcg","seed":1,"secret_position":0,"shares":[]}"#;
        assert!(ShareFile::parse(rng).is_err());
    }

    #[test]
    fn secret_rendering() {
        assert_eq!(render_secret(None, Format::Text), "unauthorized\n");
        assert_eq!(render_secret(Some(1), Format::Text), "1\n");
        assert!(render_secret(Some(0), Format::Json).contains("\"recovered\""));
    }
}
