//! The `verify` pipeline: eight checks on an enumerable code, in order.

use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;
use tracecode_core::analysis::{
    ab_minimality_condition, brute_force_minimality, check_group_action, dual_low_weight_search,
    griesmer_gap_identity, is_distance_optimal, nondegeneracy_check, MINIMALITY_SCAN_LIMIT,
};
use tracecode_core::trace_code::theoretical_lee_weight;
use tracecode_core::{CodeParameters, Error, TraceCode, WeightDistribution};

use crate::config::{Format, Parameters, RunConfig, UsageError};
use crate::report::{to_json, weight_entries, WeightEntry};

pub const CLAIMS: [&str; 8] = [
    "enumeration",
    "weight-distribution",
    "per-codeword-weight",
    "griesmer-optimality",
    "minimality",
    "nondegeneracy",
    "dual-lee-distance",
    "group-action",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: &'static str,
    pub parameters: Parameters,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Seconds.
    pub elapsed: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub parameters: Parameters,
    pub all_verified: bool,
    pub observed_distribution: Vec<WeightEntry>,
    pub claims: Vec<ClaimReport>,
}

impl VerifyReport {
    /// `(claim, status)` pairs, for comparing runs.
    pub fn verdicts(&self) -> Vec<(&'static str, Status)> {
        self.claims.iter().map(|c| (c.claim, c.status)).collect()
    }
}

type Outcome = Result<Option<String>, String>;

fn violation(e: Error) -> String {
    match e {
        Error::TheoremViolation { witness, .. } => witness,
        other => other.to_string(),
    }
}

/// Runs all checks; guardrails and bad parameters are usage errors, failed
/// checks are reported as `violated`.
pub fn run(config: &RunConfig) -> Result<VerifyReport, UsageError> {
    config.require_theorem_range()?;
    let parameters = config.parameters()?;
    let params = CodeParameters::new(config.m, config.k)?;
    let code = config.code()?;

    let mut claims = Vec::new();
    let mut record = |claim: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed().as_secs_f64();
        let (status, witness, note) = match outcome {
            Ok(note) => (Status::Verified, None, note),
            Err(w) => (Status::Violated, Some(w), None),
        };
        claims.push(ClaimReport {
            claim,
            parameters: parameters.clone(),
            status,
            witness,
            note,
            elapsed,
        });
    };

    // ev is additive, so rank K of the generator matrix means 2^K distinct
    // codewords; the weights of all of them are enumerated here once
    let mut weights = Vec::new();
    record(CLAIMS[0], &mut || {
        code.binary_generator_matrix().map_err(violation)?;
        weights = code.lee_weights();
        if weights.len() as u64 != code.size() {
            return Err(format!(
                "{} weights for {} codewords",
                weights.len(),
                code.size()
            ));
        }
        Ok(Some(format!("{} codewords", weights.len())))
    });

    let mut counts = std::collections::BTreeMap::new();
    for &w in &weights {
        *counts.entry(w).or_insert(0u64) += 1;
    }
    let observed = WeightDistribution::from_counts(&counts);
    record(CLAIMS[1], &mut || {
        let predicted = params.predicted_distribution();
        if observed == predicted {
            Ok(None)
        } else {
            Err(format!("observed {observed:?}, predicted {predicted:?}"))
        }
    });

    record(CLAIMS[2], &mut || per_codeword(&code, &weights));

    record(CLAIMS[3], &mut || {
        let r = is_distance_optimal(&params.length, params.dimension, params.distance());
        if !r.optimal {
            return Err(format!(
                "Griesmer sums {} and {} against N = {}",
                r.griesmer_sum_at_d, r.griesmer_sum_at_d_plus_1, params.length
            ));
        }
        let gap = griesmer_gap_identity(config.m, config.k).map_err(violation)?;
        Ok(Some(format!("gap {gap}")))
    });

    record(CLAIMS[4], &mut || {
        if !ab_minimality_condition(&params.w1, &params.w2) {
            return Err(format!("2·{} <= {}", params.w1, params.w2));
        }
        if code.size() > MINIMALITY_SCAN_LIMIT as u64 {
            return Ok(Some(format!(
                "pairwise scan skipped: {} codewords exceed {MINIMALITY_SCAN_LIMIT}; Ashikhmin–Barg only",
                code.size()
            )));
        }
        let offenders = brute_force_minimality(&code.gray_codewords()).map_err(violation)?;
        match offenders.first() {
            None => Ok(None),
            Some(&i) => Err(format!(
                "{} non-minimal codewords, first ev({})",
                offenders.len(),
                code.ring().from_index(i as u64).expect("index in range")
            )),
        }
    });

    record(CLAIMS[5], &mut || {
        nondegeneracy_check(&code.ring()).map_err(violation)?;
        Ok(None)
    });

    record(CLAIMS[6], &mut || {
        let res = dual_low_weight_search(&code, 2).map_err(violation)?;
        if let Some(w) = &res.weight_one {
            return Err(format!("Lee weight 1 dual word {:?}", w.entries));
        }
        match &res.weight_two {
            Some(w) => Ok(Some(format!(
                "d' = 2, witness {}",
                w.entries
                    .iter()
                    .map(|(i, g)| format!("y_{i} = {g}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ))),
            None => Err("no dual word of Lee weight <= 2".into()),
        }
    });

    record(CLAIMS[7], &mut || {
        let r = check_group_action(&code).map_err(violation)?;
        Ok((!r.exhaustive).then(|| {
            format!(
                "sampled: {} units and {} coordinates of {}",
                r.units_checked,
                r.coordinates_checked,
                code.ring_length()
            )
        }))
    });

    Ok(VerifyReport {
        all_verified: claims.iter().all(|c| c.status == Status::Verified),
        parameters,
        observed_distribution: weight_entries(&observed),
        claims,
    })
}

fn per_codeword(code: &TraceCode, weights: &[u64]) -> Outcome {
    let ring = code.ring();
    let check = |i: usize| -> Result<(), String> {
        let a = ring.from_index(i as u64).map_err(|e| e.to_string())?;
        let expected = theoretical_lee_weight(&a).map_err(|e| e.to_string())?;
        if BigUint::from(weights[i]) != expected {
            return Err(format!(
                "w_L(ev({a})) = {}, case formula {expected}",
                weights[i]
            ));
        }
        Ok(())
    };
    use rayon::prelude::*;
    (0..weights.len()).into_par_iter().try_for_each(check)?;
    Ok(None)
}

pub fn render(report: &VerifyReport, format: Format) -> String {
    match format {
        Format::Json => to_json(report),
        Format::Csv => report.claims.iter().fold(
            String::from("claim,status,elapsed,witness\n"),
            |mut out, c| {
                let w = c.witness.as_deref().unwrap_or("").replace(['"', ','], ";");
                let status = match c.status {
                    Status::Verified => "verified",
                    Status::Violated => "violated",
                };
                let _ = writeln!(out, "{},{status},{:.6},{w}", c.claim, c.elapsed);
                out
            },
        ),
        Format::Text => {
            let mut out = String::new();
            for c in &report.claims {
                let tag = match c.status {
                    Status::Verified => "PASS",
                    Status::Violated => "FAIL",
                };
                let _ = write!(out, "{tag} {:<20} {:>9.3}s", c.claim, c.elapsed);
                if let Some(w) = c.witness.as_ref().or(c.note.as_ref()) {
                    let _ = write!(out, "  {w}");
                }
                out.push('\n');
            }
            let _ = writeln!(
                out,
                "{}",
                if report.all_verified {
                    "all claims verified"
                } else {
                    "claims violated"
                }
            );
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_all_claims() {
        let r = run(&RunConfig::new(2, 1)).unwrap();
        assert!(r.all_verified, "{}", render(&r, Format::Text));
        let names: Vec<_> = r.claims.iter().map(|c| c.claim).collect();
        assert_eq!(names, CLAIMS);
    }

    #[test]
    fn guardrails_are_usage_errors() {
        assert!(run(&RunConfig::new(1, 1)).is_err());
        assert!(run(&RunConfig::new(7, 2)).is_err());
    }
}
