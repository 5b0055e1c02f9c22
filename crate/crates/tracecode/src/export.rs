//! Generator matrix, codeword list and weight table exports.
//!
//! Output is a pure function of the configuration. Codewords are listed by
//! ascending canonical index of `a`.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use tracecode_core::bits::BitMatrix;

use crate::config::{Format, Parameters, RunConfig, UsageError};
use crate::report::{to_json, weight_entries, WeightEntry};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Matrix,
    Codewords,
    Distribution,
}

#[derive(Serialize)]
struct MatrixJson {
    parameters: Parameters,
    rows: usize,
    cols: usize,
    /// One hex string per row; bit `j` is bit `j mod 4` of digit `j / 4`.
    hex: Vec<String>,
}

#[derive(Serialize)]
struct CodewordJson {
    a: String,
    weight: usize,
    word: String,
}

#[derive(Serialize)]
struct DistributionJson {
    parameters: Parameters,
    distribution: Vec<WeightEntry>,
}

pub fn export(config: &RunConfig, target: Target) -> Result<String, UsageError> {
    config.require_theorem_range()?;
    let code = config.code()?;
    match target {
        Target::Matrix => {
            let g = code.binary_generator_matrix()?;
            Ok(render_matrix(&g, config.format, config.parameters()?))
        }
        Target::Codewords => {
            let words = code.gray_codewords();
            let ring = code.ring();
            let label = |i: usize| ring.from_index(i as u64).expect("index in range").to_hex();
            Ok(match config.format {
                Format::Json => to_json(
                    &words
                        .iter()
                        .enumerate()
                        .map(|(i, w)| CodewordJson {
                            a: label(i),
                            weight: w.weight(),
                            word: w.to_hex(),
                        })
                        .collect::<Vec<_>>(),
                ),
                Format::Csv => words
                    .iter()
                    .enumerate()
                    .fold(String::new(), |mut out, (i, w)| {
                        let _ = writeln!(out, "{},{},{}", label(i), w.weight(), w.to_bit_string());
                        out
                    }),
                Format::Text => words.iter().fold(String::new(), |mut out, w| {
                    let _ = writeln!(out, "{w}");
                    out
                }),
            })
        }
        Target::Distribution => {
            let dist = code.weight_distribution();
            let entries = weight_entries(&dist);
            Ok(match config.format {
                Format::Json => to_json(&DistributionJson {
                    parameters: config.parameters()?,
                    distribution: entries,
                }),
                Format::Csv => entries.iter().fold(String::new(), |mut out, e| {
                    let _ = writeln!(out, "{},{}", e.weight, e.frequency);
                    out
                }),
                Format::Text => entries.iter().fold(String::new(), |mut out, e| {
                    let _ = writeln!(out, "{:>10} {}", e.weight, e.frequency);
                    out
                }),
            })
        }
    }
}

fn render_matrix(g: &BitMatrix, format: Format, parameters: Parameters) -> String {
    match format {
        Format::Json => to_json(&MatrixJson {
            parameters,
            rows: g.num_rows(),
            cols: g.num_cols(),
            hex: g.rows().iter().map(|r| r.to_hex()).collect(),
        }),
        Format::Csv => g.rows().iter().fold(String::new(), |mut out, r| {
            let line: Vec<&str> = (0..r.len())
                .map(|j| if r.get(j) { "1" } else { "0" })
                .collect();
            let _ = writeln!(out, "{}", line.join(","));
            out
        }),
        Format::Text => g.rows().iter().fold(String::new(), |mut out, r| {
            let _ = writeln!(out, "{}", r.to_hex());
            out
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(m: u32, k: u32, format: Format) -> RunConfig {
        RunConfig {
            format,
            ..RunConfig::new(m, k)
        }
    }

    #[test]
    fn matrix_shape() {
        let csv = export(&cfg(2, 1, Format::Csv), Target::Matrix).unwrap();
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows.len(), 4);
        assert!(rows.iter().all(|r| r.split(',').count() == 24));
        let hex = export(&cfg(2, 1, Format::Text), Target::Matrix).unwrap();
        assert!(hex.lines().all(|l| l.len() == 6));
    }

    #[test]
    fn distribution_csv() {
        let csv = export(&cfg(3, 1, Format::Csv), Target::Distribution).unwrap();
        assert_eq!(csv, "0,1\n56,56\n64,7\n");
    }

    #[test]
    fn codewords_listed_in_order() {
        let text = export(&cfg(2, 1, Format::Text), Target::Codewords).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 16);
        assert_eq!(lines[0], "0".repeat(24));
        let json = export(&cfg(2, 1, Format::Json), Target::Codewords).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 16);
    }
}
