//! Checks of the code's extremal properties.
//!
//! - Griesmer optimality: `Σ_{i<K} ⌈d / 2^i⌉ <= N` holds for `d = w_1` and
//!   fails for `d + 1`, so no binary `[N, K, d + 1]` code exists.
//! - Minimality: the Ashikhmin–Barg ratio `w_min / w_max > 1/2`, and a direct
//!   support-inclusion scan over all codewords.
//! - Nondegeneracy of `(a, x) -> Tr(a x)`.
//! - The dual Lee distance over `R_k`, by exhaustive search of weight-1 and
//!   weight-2 dual words.
//! - The regular action of `L` on coordinates.
//!
//! Closed-form quantities use [`BigUint`]; `2^(m 2^k)` exceeds `u64` well
//! inside the supported parameter range.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::bits::BinaryWord;
use crate::error::{Error, Result};
use crate::gray::lee_weight_bits;
use crate::ring::{binary_mul_bits, RingElement, RingSpec};
use crate::trace_code::{CodeParameters, TraceCode};

/// `Σ_{i=0}^{K-1} ⌈d / 2^i⌉`.
pub fn griesmer_sum(dimension: u32, distance: &BigUint) -> BigUint {
    (0..dimension)
        .map(|i| {
            let div = BigUint::one() << i as usize;
            (distance + &div - 1u32) / div
        })
        .sum()
}

/// Outcome of the Griesmer test for `[N, K, d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OptimalityReport {
    pub length: BigUint,
    pub dimension: u32,
    pub distance: BigUint,
    pub griesmer_sum_at_d: BigUint,
    pub griesmer_sum_at_d_plus_1: BigUint,
    /// `griesmer_sum_at_d <= N < griesmer_sum_at_d_plus_1`.
    pub optimal: bool,
    /// `griesmer_sum_at_d_plus_1 - N`.
    pub gap: BigInt,
}

pub fn is_distance_optimal(
    length: &BigUint,
    dimension: u32,
    distance: &BigUint,
) -> OptimalityReport {
    let at_d = griesmer_sum(dimension, distance);
    let at_d1 = griesmer_sum(dimension, &(distance + 1u32));
    OptimalityReport {
        optimal: &at_d <= length && &at_d1 > length,
        gap: BigInt::from(at_d1.clone()) - BigInt::from(length.clone()),
        length: length.clone(),
        dimension,
        distance: distance.clone(),
        griesmer_sum_at_d: at_d,
        griesmer_sum_at_d_plus_1: at_d1,
    }
}

/// Evaluates `Σ_{j<K} ⌈(d+1)/2^j⌉ - N` for the closed-form `[N, K, d]` and
/// checks it equals `(2^k - 1)(m - 1) + k`, together with the two ceiling
/// regimes `2^(m(2^k-1)+k-1-j)(2^m-1) + 1` for `j <= m(2^k-1)+k-1` and
/// `2^(m 2^k + k - 1 - j)` above.
pub fn griesmer_gap_identity(m: u32, k: u32) -> Result<u64> {
    let params = CodeParameters::new(m, k)?;
    let d1 = params.distance() + 1u32;
    let split = m * ((1 << k) - 1) + k - 1;
    let q_minus_1 = (BigUint::one() << m as usize) - 1u32;
    let mut sum = BigUint::zero();
    for j in 0..params.dimension {
        let div = BigUint::one() << j as usize;
        let term = (&d1 + &div - 1u32) / div;
        let expected = if j <= split {
            (BigUint::one() << (split - j) as usize) * &q_minus_1 + 1u32
        } else {
            BigUint::one() << ((m << k) + k - 1 - j) as usize
        };
        if term != expected {
            return Err(Error::TheoremViolation {
                claim: "griesmer-ceiling-regimes",
                witness: format!("m={m} k={k} j={j}: ceiling {term}, expected {expected}"),
            });
        }
        sum += term;
    }
    let closed = ((1u64 << k) - 1) * (m as u64 - 1) + k as u64;
    if sum < params.length || sum.clone() - &params.length != BigUint::from(closed) {
        return Err(Error::TheoremViolation {
            claim: "griesmer-gap-identity",
            witness: format!(
                "m={m} k={k}: sum {sum}, N {}, closed form {closed}",
                params.length
            ),
        });
    }
    Ok(closed)
}

/// Ashikhmin–Barg: `w_min / w_max > 1/2`, i.e. `2 w_min > w_max`.
pub fn ab_minimality_condition(w_min: &BigUint, w_max: &BigUint) -> bool {
    (w_min << 1usize) > *w_max
}

/// `2 w_1 - w_2 = 2^(k-1) 2^(m(2^k-1)) (2^m - 2)`; zero exactly at `m = 1`.
pub fn minimality_margin(m: u32, k: u32) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::UnsupportedDegree(m));
    }
    if k == 0 {
        return Err(Error::UnsupportedGenerators(k));
    }
    let tail = (k - 1 + m * ((1 << k) - 1)) as usize;
    Ok((BigUint::one() << tail) * ((BigUint::one() << m as usize) - 2u32))
}

/// Largest code accepted by [`brute_force_minimality`] (`|code|^2 <= 2^20`).
pub const MINIMALITY_SCAN_LIMIT: usize = 1 << 10;

/// Indices of nonzero codewords whose support strictly contains the support
/// of another nonzero codeword.
pub fn brute_force_minimality(code: &[BinaryWord]) -> Result<Vec<usize>> {
    if code.len() > MINIMALITY_SCAN_LIMIT {
        return Err(Error::Guardrail(format!(
            "{} codewords exceed the pairwise scan limit {MINIMALITY_SCAN_LIMIT}",
            code.len()
        )));
    }
    let covers = |i: usize| -> bool {
        let c = &code[i];
        !c.is_zero()
            && code
                .iter()
                .any(|other| !other.is_zero() && other != c && other.support_within(c))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Ok((0..code.len())
            .into_par_iter()
            .filter(|&i| covers(i))
            .collect())
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok((0..code.len()).filter(|&i| covers(i)).collect())
    }
}

/// For every nonzero `x ∈ R` finds some `a` with `Tr(a x) ≠ 0`.
pub fn nondegeneracy_check(ring: &RingSpec) -> Result<()> {
    let size = ring.size()?;
    for xi in 1..size {
        let x = ring.from_index(xi)?;
        let witnessed = (0..size).any(|ai| {
            let a = ring.from_index(ai).expect("in range");
            (a * x).trace_bits() != 0
        });
        if !witnessed {
            return Err(Error::TheoremViolation {
                claim: "nondegeneracy",
                witness: format!("Tr(a·{x}) = 0 for every a"),
            });
        }
    }
    Ok(())
}

/// The sphere-packing step for the dual: a dual distance `d' >= 3` would
/// force `2^K >= 1 + N`. Returns `true` when `2^K < 1 + N`, refuting it.
pub fn sphere_packing_step(m: u32, k: u32) -> Result<bool> {
    let params = CodeParameters::new(m, k)?;
    let size = BigUint::one() << params.dimension as usize;
    Ok(size < params.length + 1u32)
}

/// A candidate dual word: nonzero entries `(coordinate, γ ∈ R_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualWitness {
    pub entries: Vec<(usize, RingElement)>,
}

impl DualWitness {
    pub fn lee_weight(&self) -> u64 {
        self.entries
            .iter()
            .map(|(_, g)| {
                let k = g.ring().generators();
                lee_weight_bits(k, g.binary_bits().expect("binary entry")) as u64
            })
            .sum()
    }
}

/// Result of the low-weight search in the `R_k`-dual of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSearchResult {
    pub max_lee: u32,
    pub weight_one: Option<DualWitness>,
    pub weight_two: Option<DualWitness>,
}

impl DualSearchResult {
    /// `d'` when the search pins it down.
    pub fn d_prime(&self) -> Option<u32> {
        if self.weight_one.is_some() {
            Some(1)
        } else if self.weight_two.is_some() {
            Some(2)
        } else {
            None
        }
    }

    pub fn d_prime_lower_bound(&self) -> u32 {
        self.d_prime().unwrap_or(self.max_lee + 1)
    }
}

/// Searches for `y ∈ R_k^n` with `Σ_x y_x ev(a)_x = 0` for all `a` and Lee
/// weight at most `max_lee ∈ {1, 2}`.
///
/// Candidates are a single coordinate with an entry of Lee weight 1 or 2, or
/// two coordinates with entries of Lee weight 1. Since `ev` is `R_k`-linear,
/// orthogonality to `ev(x^t)`, `t < m`, suffices; the first witness found
/// (coordinates ascending, then entries ascending) is re-checked against
/// every `a ∈ R`.
pub fn dual_low_weight_search(code: &TraceCode, max_lee: u32) -> Result<DualSearchResult> {
    if !(1..=2).contains(&max_lee) {
        return Err(Error::Guardrail(format!(
            "max_lee must be 1 or 2, got {max_lee}"
        )));
    }
    let ring = code.ring();
    let k = ring.generators();
    let bin = ring.binary_subring();
    let n = code.ring_length();
    let generators: Vec<Vec<u16>> = (0..ring.degree())
        .map(|t| {
            let a = ring.monomial(0, ring.field().basis(t))?;
            code.evaluate_bits(&a)
        })
        .collect::<Result<_>>()?;
    let by_weight = |w: u32| -> Vec<u16> {
        (0..1u32 << (1 << k))
            .map(|c| c as u16)
            .filter(|&c| lee_weight_bits(k, c) == w)
            .collect()
    };
    let w1 = by_weight(1);
    let w2 = by_weight(2);

    let single_ok = |i: usize, g: u16| generators.iter().all(|e| binary_mul_bits(k, g, e[i]) == 0);
    let pair_ok = |i: usize, g: u16, j: usize, h: u16| {
        generators
            .iter()
            .all(|e| binary_mul_bits(k, g, e[i]) ^ binary_mul_bits(k, h, e[j]) == 0)
    };
    let witness = |entries: &[(usize, u16)]| -> Result<DualWitness> {
        let entries = entries
            .iter()
            .map(|&(i, g)| Ok((i, bin.from_index(g as u64)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(DualWitness { entries })
    };

    let mut weight_one = None;
    'one: for i in 0..n {
        for &g in &w1 {
            if single_ok(i, g) {
                weight_one = Some(witness(&[(i, g)])?);
                break 'one;
            }
        }
    }

    let mut weight_two = None;
    if max_lee >= 2 {
        'two: for i in 0..n {
            for &g in &w2 {
                if single_ok(i, g) {
                    weight_two = Some(witness(&[(i, g)])?);
                    break 'two;
                }
            }
            for j in i + 1..n {
                for &g in &w1 {
                    for &h in &w1 {
                        if pair_ok(i, g, j, h) {
                            weight_two = Some(witness(&[(i, g), (j, h)])?);
                            break 'two;
                        }
                    }
                }
            }
        }
    }

    for w in weight_one.iter().chain(weight_two.iter()) {
        verify_dual_witness(code, w)?;
    }
    Ok(DualSearchResult {
        max_lee,
        weight_one,
        weight_two,
    })
}

/// Checks `Σ_x y_x Tr(a x) = 0` for every `a ∈ R`.
pub fn verify_dual_witness(code: &TraceCode, witness: &DualWitness) -> Result<()> {
    let ring = code.ring();
    let k = ring.generators();
    let entries = witness
        .entries
        .iter()
        .map(|(i, g)| Ok((code.units()[*i], g.binary_bits()?)))
        .collect::<Result<Vec<_>>>()?;
    for a in ring.elements()? {
        let acc = entries.iter().fold(0u16, |acc, (x, g)| {
            acc ^ binary_mul_bits(k, *g, (a * *x).trace_bits())
        });
        if acc != 0 {
            return Err(Error::TheoremViolation {
                claim: "dual-witness",
                witness: format!("{:?} is not orthogonal to ev({a})", witness.entries),
            });
        }
    }
    Ok(())
}

/// Largest ring length for which [`check_group_action`] covers every unit
/// and every coordinate; above it a fixed sample is used.
pub const GROUP_ACTION_FULL_LIMIT: usize = 4096;

/// Evenly spaced units and coordinates checked above the limit.
pub const GROUP_ACTION_SAMPLE: usize = 64;

/// Largest ring length for which `π(u) ∘ π(v) = π(uv)` is checked on all
/// pairs (cubic in `n`).
pub const COMPOSITION_CHECK_LIMIT: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupActionReport {
    /// Every unit and every coordinate was checked.
    pub exhaustive: bool,
    pub units_checked: usize,
    pub coordinates_checked: usize,
    pub composition_checked: bool,
}

/// Checks the action `π(u) : i -> position of u · L[i]` of `L` on the
/// coordinates.
///
/// - Regularity: for a coordinate `v`, `u -> π(u)(v)` must hit every
///   coordinate once (transitive with trivial stabilizers).
/// - Invariance: `π(u)` must send `ev(a)` to `ev(a u)`. Both `C` and `π(u)`
///   are additive, so the `K` basis elements `a = x^t u_A` suffice.
/// - For `n <= COMPOSITION_CHECK_LIMIT`, `π(u) ∘ π(v) = π(uv)`.
pub fn check_group_action(code: &TraceCode) -> Result<GroupActionReport> {
    let units = code.units();
    let n = units.len();
    let exhaustive = n <= GROUP_ACTION_FULL_LIMIT;
    let sample: Vec<usize> = if exhaustive {
        (0..n).collect()
    } else {
        (0..GROUP_ACTION_SAMPLE)
            .map(|i| i * n / GROUP_ACTION_SAMPLE)
            .collect()
    };
    let basis = code.basis_words();
    let ring = code.ring();

    let regular_at = |v: usize| -> Result<()> {
        let mut hit = vec![false; n];
        for u in units {
            let w = code.unit_position(&(*u * units[v])).expect("unit");
            if core::mem::replace(&mut hit[w], true) {
                return Err(Error::TheoremViolation {
                    claim: "regular-action",
                    witness: format!("two units send coordinate {v} to coordinate {w}"),
                });
            }
        }
        Ok(())
    };
    let invariant_under = |ui: usize| -> Result<Vec<usize>> {
        let u = &units[ui];
        let pi = code.coordinate_permutation(u)?;
        for r in 0..basis.len() {
            let a = ring.from_index(1 << r)?;
            let target = (a * *u).index();
            let mut expected = vec![0u16; n];
            for (s, b) in basis.iter().enumerate() {
                if target >> s & 1 == 1 {
                    expected.iter_mut().zip(b).for_each(|(e, x)| *e ^= x);
                }
            }
            if (0..n).any(|i| basis[r][pi[i]] != expected[i]) {
                return Err(Error::TheoremViolation {
                    claim: "code-invariance",
                    witness: format!("π({u}) does not send ev({a}) to ev({a}·{u})"),
                });
            }
        }
        Ok(pi)
    };

    #[cfg(feature = "parallel")]
    let perms: Vec<Vec<usize>> = {
        use rayon::prelude::*;
        sample.par_iter().try_for_each(|&v| regular_at(v))?;
        sample
            .par_iter()
            .map(|&u| invariant_under(u))
            .collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let perms: Vec<Vec<usize>> = {
        sample.iter().try_for_each(|&v| regular_at(v))?;
        sample
            .iter()
            .map(|&u| invariant_under(u))
            .collect::<Result<_>>()?
    };

    let composition_checked = n <= COMPOSITION_CHECK_LIMIT;
    if composition_checked {
        for (ui, u) in units.iter().enumerate() {
            for (vi, v) in units.iter().enumerate() {
                let uv = code.unit_position(&(*u * *v)).expect("unit");
                if (0..n).any(|i| perms[ui][perms[vi][i]] != perms[uv][i]) {
                    return Err(Error::TheoremViolation {
                        claim: "action-homomorphism",
                        witness: format!("π({u}) ∘ π({v}) ≠ π({u}·{v})"),
                    });
                }
            }
        }
    }
    Ok(GroupActionReport {
        exhaustive,
        units_checked: sample.len(),
        coordinates_checked: sample.len(),
        composition_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn griesmer_sums() {
        assert_eq!(griesmer_sum(4, &big(12)), big(23));
        assert_eq!(griesmer_sum(4, &big(13)), big(26));
        assert_eq!(griesmer_sum(1, &big(77)), big(77));
    }

    #[test]
    fn optimality_examples() {
        let r = is_distance_optimal(&big(24), 4, &big(12));
        assert!(r.optimal);
        assert_eq!(
            (r.griesmer_sum_at_d, r.griesmer_sum_at_d_plus_1),
            (big(23), big(26))
        );
        let r = is_distance_optimal(&big(112), 6, &big(56));
        assert!(r.optimal);
        assert_eq!(
            (r.griesmer_sum_at_d, r.griesmer_sum_at_d_plus_1),
            (big(111), big(115))
        );
        let r = is_distance_optimal(&big(24), 4, &big(16));
        assert!(!r.optimal);
        assert_eq!(r.griesmer_sum_at_d, big(30));
    }

    #[test]
    fn gap_identity_examples() {
        assert_eq!(griesmer_gap_identity(2, 1).unwrap(), 2);
        assert_eq!(griesmer_gap_identity(3, 1).unwrap(), 3);
        assert_eq!(griesmer_gap_identity(2, 2).unwrap(), 5);
        let r = is_distance_optimal(&big(768), 8, &big(384));
        assert_eq!(r.gap, BigInt::from(5));
        assert_eq!(griesmer_gap_identity(1, 1), Err(Error::DegreeTooSmall(1)));
    }

    #[test]
    fn ab_condition() {
        assert!(ab_minimality_condition(&big(12), &big(16)));
        assert!(ab_minimality_condition(&big(9), &big(9)));
        assert!(!ab_minimality_condition(&big(1), &big(2)));
    }

    #[test]
    fn margins() {
        assert_eq!(minimality_margin(2, 1).unwrap(), big(8));
        assert_eq!(minimality_margin(1, 1).unwrap(), big(0));
        assert_eq!(minimality_margin(3, 1).unwrap(), big(48));
    }

    #[test]
    fn brute_force_reports_strict_inclusion() {
        let code: Vec<BinaryWord> = ["000", "110", "100"]
            .iter()
            .map(|s| BinaryWord::from_bit_string(s).unwrap())
            .collect();
        assert_eq!(brute_force_minimality(&code).unwrap(), [1]);
        let too_big = vec![BinaryWord::zeros(1); MINIMALITY_SCAN_LIMIT + 1];
        assert!(brute_force_minimality(&too_big).is_err());
    }

    #[test]
    fn sphere_packing_examples() {
        for (m, k) in [(2, 1), (3, 1), (2, 2)] {
            assert!(sphere_packing_step(m, k).unwrap());
        }
    }

    #[test]
    fn nondegenerate_small() {
        let ring = TraceCode::with_params(2, 1, None).unwrap().ring();
        nondegeneracy_check(&ring).unwrap();
        assert!(ring
            .elements()
            .unwrap()
            .all(|a| (a * ring.zero()).trace_bits() == 0));
    }

    #[test]
    fn dual_search_small() {
        let code = TraceCode::with_params(2, 1, None).unwrap();
        let res = dual_low_weight_search(&code, 2).unwrap();
        assert!(res.weight_one.is_none());
        let w = res.weight_two.as_ref().unwrap();
        assert_eq!(w.lee_weight(), 2);
        assert_eq!(res.d_prime(), Some(2));
        let res = dual_low_weight_search(&code, 1).unwrap();
        assert_eq!(res.d_prime(), None);
        assert_eq!(res.d_prime_lower_bound(), 2);
        assert!(dual_low_weight_search(&code, 3).is_err());
    }

    #[test]
    fn bad_witness_is_rejected() {
        let code = TraceCode::with_params(2, 1, None).unwrap();
        let bin = code.ring().binary_subring();
        let w = DualWitness {
            entries: vec![(0, bin.one())],
        };
        assert!(matches!(
            verify_dual_witness(&code, &w),
            Err(Error::TheoremViolation {
                claim: "dual-witness",
                ..
            })
        ));
    }

    #[test]
    fn group_action_small() {
        let r = check_group_action(&TraceCode::with_params(2, 1, None).unwrap()).unwrap();
        assert!(r.exhaustive && r.composition_checked);
        assert_eq!(r.units_checked, 12);
    }
}
