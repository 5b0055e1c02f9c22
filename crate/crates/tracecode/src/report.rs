//! Closed-form code summary (`info`) and JSON helpers.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;
use tracecode_core::analysis::{
    ab_minimality_condition, griesmer_gap_identity, is_distance_optimal, minimality_margin,
};
use tracecode_core::{CodeParameters, WeightDistribution};

use crate::config::{Format, Parameters, RunConfig, UsageError};

/// Serializes an arbitrary-precision integer as a bare JSON number.
pub fn big<S: Serializer, T: ToString>(value: &T, s: S) -> Result<S::Ok, S::Error> {
    RawValue::from_string(value.to_string())
        .map_err(serde::ser::Error::custom)?
        .serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightEntry {
    #[serde(serialize_with = "big")]
    pub weight: BigUint,
    #[serde(serialize_with = "big")]
    pub frequency: BigUint,
}

pub fn weight_entries(dist: &WeightDistribution) -> Vec<WeightEntry> {
    dist.entries()
        .map(|(w, f)| WeightEntry {
            weight: w.clone(),
            frequency: f.clone(),
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct GriesmerSummary {
    #[serde(serialize_with = "big")]
    pub sum_at_d: BigUint,
    #[serde(serialize_with = "big")]
    pub sum_at_d_plus_1: BigUint,
    pub optimal: bool,
    /// `Σ ⌈(d+1)/2^j⌉ - N`, evaluated directly.
    #[serde(serialize_with = "big")]
    pub gap: BigInt,
    /// `(2^k - 1)(m - 1) + k`.
    pub gap_closed_form: u64,
    pub gap_identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InfoReport {
    pub parameters: Parameters,
    #[serde(serialize_with = "big")]
    pub n: BigUint,
    #[serde(rename = "N", serialize_with = "big")]
    pub length: BigUint,
    #[serde(rename = "K")]
    pub dimension: u32,
    #[serde(serialize_with = "big")]
    pub w1: BigUint,
    #[serde(serialize_with = "big")]
    pub w2: BigUint,
    pub weights: Vec<WeightEntry>,
    pub griesmer: GriesmerSummary,
    #[serde(serialize_with = "big")]
    pub minimality_margin: BigUint,
    pub ab_condition: bool,
}

pub fn info(config: &RunConfig) -> Result<InfoReport, UsageError> {
    config.require_theorem_range()?;
    let p = CodeParameters::new(config.m, config.k)?;
    let report = is_distance_optimal(&p.length, p.dimension, p.distance());
    let closed = ((1u64 << p.k) - 1) * (p.m as u64 - 1) + p.k as u64;
    Ok(InfoReport {
        parameters: config.parameters()?,
        n: p.ring_length.clone(),
        length: p.length.clone(),
        dimension: p.dimension,
        w1: p.w1.clone(),
        w2: p.w2.clone(),
        weights: weight_entries(&p.predicted_distribution()),
        griesmer: GriesmerSummary {
            sum_at_d: report.griesmer_sum_at_d,
            sum_at_d_plus_1: report.griesmer_sum_at_d_plus_1,
            optimal: report.optimal,
            gap: report.gap,
            gap_closed_form: closed,
            gap_identity_holds: griesmer_gap_identity(p.m, p.k).is_ok(),
        },
        minimality_margin: minimality_margin(p.m, p.k)?,
        ab_condition: ab_minimality_condition(&p.w1, &p.w2),
    })
}

pub fn render_info(r: &InfoReport, format: Format) -> String {
    let rows: Vec<(&str, String)> = vec![
        ("m", r.parameters.m.to_string()),
        ("k", r.parameters.k.to_string()),
        ("modulus", r.parameters.modulus.clone()),
        ("n", r.n.to_string()),
        ("N", r.length.to_string()),
        ("K", r.dimension.to_string()),
        ("w1", r.w1.to_string()),
        ("w2", r.w2.to_string()),
        ("freq_w1", frequency_of(r, &r.w1)),
        ("freq_w2", frequency_of(r, &r.w2)),
        ("optimal", r.griesmer.optimal.to_string()),
        ("griesmer_sum_at_d", r.griesmer.sum_at_d.to_string()),
        (
            "griesmer_sum_at_d_plus_1",
            r.griesmer.sum_at_d_plus_1.to_string(),
        ),
        ("gap", r.griesmer.gap.to_string()),
        ("gap_closed_form", r.griesmer.gap_closed_form.to_string()),
        (
            "gap_identity_holds",
            r.griesmer.gap_identity_holds.to_string(),
        ),
        ("minimality_margin", r.minimality_margin.to_string()),
        ("ab_condition", r.ab_condition.to_string()),
    ];
    match format {
        Format::Json => to_json(r),
        Format::Csv => rows.iter().fold(String::new(), |mut out, (key, v)| {
            let _ = writeln!(out, "{key},{v}");
            out
        }),
        Format::Text => rows.iter().fold(String::new(), |mut out, (key, v)| {
            let _ = writeln!(out, "{key:<26}{v}");
            out
        }),
    }
}

fn frequency_of(r: &InfoReport, w: &BigUint) -> String {
    r.weights
        .iter()
        .find(|e| &e.weight == w)
        .map(|e| e.frequency.to_string())
        .unwrap_or_default()
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
