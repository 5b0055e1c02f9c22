//! Massey secret sharing on the Gray image `φ_k(C)`.
//!
//! The dealer uses the dual code `D = φ_k(C)^⊥`, given by an `(N - K) × N`
//! generator matrix `H` with columns `g_0, .., g_{N-1}`. One coordinate (0 by
//! default) carries the secret and the other `N - 1` coordinates are the
//! participants. To share `s`, the dealer draws a uniform `u ∈ F_2^{N-K}`
//! with `u · g_0 = s` and hands participant `i` the bit `u · g_i`.
//!
//! A coalition `T` recovers `s` exactly when `g_0 = Σ_{i ∈ T} λ_i g_i`, which
//! happens exactly when some codeword `c ∈ φ_k(C)` has `c_0 = 1` and
//! `supp(c) \ {0} ⊆ T`. Because every nonzero codeword of `φ_k(C)` is minimal,
//! the minimal authorized coalitions are exactly those supports.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::analysis::brute_force_minimality;
use crate::bits::{BinaryWord, BitMatrix, XorBasis};
use crate::error::{Error, Result};
use crate::trace_code::TraceCode;

/// Identifier of the generator behind [`SharingScheme::deal_with_seed`].
pub const RNG_NAME: &str = "chacha20";

/// Largest `N - K` for which [`SharingScheme::perfectness_probe`] runs.
pub const PROBE_LIMIT_VARS: usize = 24;

#[derive(Clone, Debug)]
pub struct SharingScheme {
    code: TraceCode,
    generator: BitMatrix,
    dealer: BitMatrix,
    columns: Vec<BinaryWord>,
    secret_position: usize,
    seed: u64,
}

/// Bits handed out by one deal, keyed by participant coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shares {
    pub secret_position: usize,
    pub seed: u64,
    pub values: BTreeMap<usize, u8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AccessStructure {
    /// Sorted participant lists, in lexicographic order.
    pub minimal_sets: Vec<Vec<usize>>,
    /// Participants in every minimal set.
    pub dictators: Vec<usize>,
}

/// Exact counts of dealer messages consistent with a coalition's view.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOutcome {
    /// `(seed, #messages giving secret 0, #messages giving secret 1)`.
    pub counts: Vec<(u64, BigUint, BigUint)>,
}

impl ProbeOutcome {
    pub fn balanced(&self) -> bool {
        self.counts.iter().all(|(_, a, b)| a == b)
    }
}

impl SharingScheme {
    /// Builds the scheme with the secret at coordinate 0.
    pub fn build(code: TraceCode, seed: u64) -> Result<Self> {
        Self::with_secret_position(code, seed, 0)
    }

    pub fn with_secret_position(
        code: TraceCode,
        seed: u64,
        secret_position: usize,
    ) -> Result<Self> {
        if code.m() < 2 {
            return Err(Error::DegreeTooSmall(code.m()));
        }
        let n = code.binary_length();
        if secret_position >= n {
            return Err(Error::UnknownParticipant(secret_position));
        }
        let generator = code.binary_generator_matrix()?;
        let dealer = generator.kernel();
        let expected = n - generator.num_rows();
        let rank = dealer.rank();
        if rank != expected || dealer.num_rows() != expected {
            return Err(Error::RankDeficient {
                expected,
                got: rank,
            });
        }
        for (i, h) in dealer.rows().iter().enumerate() {
            if let Some(j) = generator.rows().iter().position(|g| g.dot(h) != 0) {
                return Err(Error::TheoremViolation {
                    claim: "dealer-orthogonality",
                    witness: format!("dealer row {i} · generator row {j} = 1"),
                });
            }
        }
        let columns = dealer.transpose().rows().to_vec();
        if columns[secret_position].is_zero() {
            return Err(Error::TheoremViolation {
                claim: "secret-column",
                witness: format!("dealer column {secret_position} is zero"),
            });
        }
        Ok(SharingScheme {
            code,
            generator,
            dealer,
            columns,
            secret_position,
            seed,
        })
    }

    pub fn code(&self) -> &TraceCode {
        &self.code
    }

    /// `K × N` generator matrix of `φ_k(C)`.
    pub fn generator_matrix(&self) -> &BitMatrix {
        &self.generator
    }

    /// `(N - K) × N` generator matrix of the dealer code.
    pub fn dealer_matrix(&self) -> &BitMatrix {
        &self.dealer
    }

    pub fn secret_position(&self) -> usize {
        self.secret_position
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn length(&self) -> usize {
        self.columns.len()
    }

    pub fn num_participants(&self) -> usize {
        self.columns.len() - 1
    }

    pub fn participants(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.columns.len()).filter(move |&i| i != self.secret_position)
    }

    fn message_len(&self) -> usize {
        self.dealer.num_rows()
    }

    /// Deals with the scheme's own seed.
    pub fn deal(&self, secret: u8) -> Shares {
        self.deal_with_seed(secret, self.seed)
    }

    /// Deterministic in `(scheme, secret, seed)`.
    pub fn deal_with_seed(&self, secret: u8, seed: u64) -> Shares {
        let u = self.message(secret, seed);
        let values = self
            .participants()
            .map(|i| (i, u.dot(&self.columns[i])))
            .collect();
        Shares {
            secret_position: self.secret_position,
            seed,
            values,
        }
    }

    /// The dealer message `u` for `(secret, seed)`: a uniform draw, moved to
    /// the other coset of `g_0^⊥` by a fixed vector when its secret bit is
    /// wrong, which keeps it uniform on the right coset.
    fn message(&self, secret: u8, seed: u64) -> BinaryWord {
        let len = self.message_len();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let words: Vec<u64> = (0..len.div_ceil(64)).map(|_| rng.next_u64()).collect();
        let mut u = BinaryWord::from_fn(len, |j| words[j / 64] >> (j % 64) & 1 == 1);
        let g0 = &self.columns[self.secret_position];
        if u.dot(g0) != (secret & 1) {
            let pivot = g0.support().next().expect("g_0 is nonzero");
            u.flip(pivot);
        }
        u
    }

    fn check_coalition(&self, coalition: &[usize]) -> Result<Vec<usize>> {
        let mut members = coalition.to_vec();
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members
            .iter()
            .find(|&&i| i >= self.columns.len() || i == self.secret_position)
        {
            return Err(Error::UnknownParticipant(bad));
        }
        Ok(members)
    }

    /// `λ` with `g_0 = Σ λ_j g_{members[j]}`, if one exists.
    fn combination(&self, members: &[usize]) -> Option<BinaryWord> {
        let mut basis = XorBasis::new(self.message_len(), members.len());
        for (j, &i) in members.iter().enumerate() {
            basis.insert(&self.columns[i], &BinaryWord::unit(members.len(), j));
        }
        let (residual, tag) = basis.reduce(&self.columns[self.secret_position]);
        residual.is_zero().then_some(tag)
    }

    pub fn is_authorized(&self, coalition: &[usize]) -> Result<bool> {
        let members = self.check_coalition(coalition)?;
        Ok(self.combination(&members).is_some())
    }

    /// The secret, or `None` when the coalition is not authorized.
    pub fn reconstruct(&self, coalition: &[usize], shares: &Shares) -> Result<Option<u8>> {
        let members = self.check_coalition(coalition)?;
        let values = members
            .iter()
            .map(|i| shares.values.get(i).copied().ok_or(Error::MissingShare(*i)))
            .collect::<Result<Vec<u8>>>()?;
        Ok(self
            .combination(&members)
            .map(|lambda| lambda.support().fold(0, |acc, j| acc ^ (values[j] & 1))))
    }

    /// Minimal authorized coalitions from the codewords of `φ_k(C)` that are
    /// 1 at the secret coordinate. Refuses if some codeword is not minimal.
    pub fn minimal_access_sets(&self) -> Result<AccessStructure> {
        let words = self.code.gray_codewords();
        let offenders = brute_force_minimality(&words)?;
        if !offenders.is_empty() {
            return Err(Error::NotAllMinimal {
                count: offenders.len(),
            });
        }
        let mut sets: Vec<Vec<usize>> = words
            .iter()
            .filter(|c| c.get(self.secret_position))
            .map(|c| c.support().filter(|&i| i != self.secret_position).collect())
            .collect();
        sets.sort();
        sets.dedup();

        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                if i != j && a.iter().all(|x| b.binary_search(x).is_ok()) {
                    return Err(Error::TheoremViolation {
                        claim: "access-antichain",
                        witness: format!("minimal set {i} is contained in minimal set {j}"),
                    });
                }
            }
        }

        let dictators = match sets.split_first() {
            Some((first, rest)) => first
                .iter()
                .copied()
                .filter(|x| rest.iter().all(|s| s.binary_search(x).is_ok()))
                .collect(),
            None => Vec::new(),
        };
        Ok(AccessStructure {
            minimal_sets: sets,
            dictators,
        })
    }

    /// For each seed in `seeds`, deals a random secret and counts, exactly,
    /// the dealer messages that agree with the coalition's shares and give
    /// secret 0 or 1. An unauthorized coalition sees equal counts.
    pub fn perfectness_probe(&self, coalition: &[usize], seeds: &[u64]) -> Result<ProbeOutcome> {
        let members = self.check_coalition(coalition)?;
        if self.message_len() > PROBE_LIMIT_VARS {
            return Err(Error::Guardrail(format!(
                "N - K = {} exceeds the exact-count limit {PROBE_LIMIT_VARS}",
                self.message_len()
            )));
        }
        if self.combination(&members).is_some() {
            return Err(Error::Authorized);
        }
        let counts = seeds
            .iter()
            .map(|&seed| {
                let secret = (seed & 1) as u8;
                let shares = self.deal_with_seed(secret, seed);
                let view: Vec<(usize, u8)> =
                    members.iter().map(|&i| (i, shares.values[&i])).collect();
                (
                    seed,
                    self.consistent_messages(&view, 0),
                    self.consistent_messages(&view, 1),
                )
            })
            .collect();
        Ok(ProbeOutcome { counts })
    }

    /// `#{u : u·g_i = b_i for (i, b_i) in view, u·g_0 = secret}`.
    fn consistent_messages(&self, view: &[(usize, u8)], secret: u8) -> BigUint {
        let vars = self.message_len();
        let augmented = |col: &BinaryWord, rhs: u8| {
            BinaryWord::from_fn(
                vars + 1,
                |j| if j < vars { col.get(j) } else { rhs & 1 == 1 },
            )
        };
        let mut basis = XorBasis::new(vars + 1, 0);
        let no_tag = BinaryWord::zeros(0);
        basis.insert(
            &augmented(&self.columns[self.secret_position], secret),
            &no_tag,
        );
        for &(i, b) in view {
            basis.insert(&augmented(&self.columns[i], b), &no_tag);
        }
        // inconsistent iff 0 = 1 lies in the span of the equations
        if basis.reduce(&BinaryWord::unit(vars + 1, vars)).0.is_zero() {
            return BigUint::ZERO;
        }
        BigUint::one() << (vars - basis.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scheme(m: u32, k: u32) -> SharingScheme {
        SharingScheme::build(TraceCode::with_params(m, k, None).unwrap(), 7).unwrap()
    }

    #[test]
    fn dealer_code_dimensions() {
        let s = scheme(2, 1);
        assert_eq!((s.dealer_matrix().num_rows(), s.length()), (20, 24));
        assert_eq!(s.num_participants(), 23);
        let s = scheme(3, 1);
        assert_eq!((s.dealer_matrix().num_rows(), s.length()), (106, 112));
        assert_eq!(s.num_participants(), 111);
        for h in s.dealer_matrix().rows() {
            assert!(s.generator_matrix().rows().iter().all(|g| g.dot(h) == 0));
        }
    }

    #[test]
    fn rejects_m_one() {
        let code = TraceCode::with_params(1, 1, None).unwrap();
        assert_eq!(
            SharingScheme::build(code, 0).err(),
            Some(Error::DegreeTooSmall(1))
        );
    }

    #[test]
    fn access_structure_small() {
        let s = scheme(2, 1);
        let access = s.minimal_access_sets().unwrap();
        assert_eq!(access.minimal_sets.len(), 8);
        let mut sizes: Vec<usize> = access.minimal_sets.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, [11, 11, 11, 11, 11, 11, 15, 15]);
        assert_eq!(access.dictators, [15]);
    }

    #[test]
    fn minimal_sets_reconstruct_and_proper_subsets_fail() {
        let s = scheme(2, 1);
        let access = s.minimal_access_sets().unwrap();
        for secret in [0u8, 1] {
            let shares = s.deal(secret);
            for set in &access.minimal_sets {
                assert_eq!(s.reconstruct(set, &shares).unwrap(), Some(secret));
                for drop in 0..set.len() {
                    let mut sub = set.clone();
                    sub.remove(drop);
                    assert_eq!(s.reconstruct(&sub, &shares).unwrap(), None);
                }
            }
        }
    }

    #[test]
    fn trivial_coalitions() {
        let s = scheme(2, 1);
        let all: Vec<usize> = s.participants().collect();
        for secret in [0u8, 1] {
            let shares = s.deal_with_seed(secret, 99);
            assert_eq!(s.reconstruct(&all, &shares).unwrap(), Some(secret));
            assert_eq!(s.reconstruct(&[], &shares).unwrap(), None);
            assert_eq!(s.reconstruct(&[1], &shares).unwrap(), None);
        }
        let shares = s.deal(1);
        assert_eq!(
            s.reconstruct(&[0], &shares),
            Err(Error::UnknownParticipant(0))
        );
        assert_eq!(
            s.reconstruct(&[24], &shares),
            Err(Error::UnknownParticipant(24))
        );
        let mut partial = shares.clone();
        partial.values.remove(&3);
        assert_eq!(
            s.reconstruct(&[3, 4], &partial),
            Err(Error::MissingShare(3))
        );
    }

    #[test]
    fn dealing_is_deterministic() {
        let s = scheme(2, 1);
        assert_eq!(s.deal_with_seed(1, 5), s.deal_with_seed(1, 5));
        assert_eq!(s.deal(0), s.deal(0));
        assert_ne!(s.deal_with_seed(1, 5), s.deal_with_seed(1, 6));
    }

    #[test]
    fn coalitions_without_dictator_are_unauthorized() {
        let s = scheme(2, 1);
        let access = s.minimal_access_sets().unwrap();
        let everyone_else: Vec<usize> = s
            .participants()
            .filter(|i| !access.dictators.contains(i))
            .collect();
        assert!(!s.is_authorized(&everyone_else).unwrap());
    }

    #[test]
    fn exact_counts_match_brute_force() {
        let s = scheme(2, 1);
        let vars = s.message_len();
        assert_eq!(vars, 20);
        let shares = s.deal_with_seed(1, 3);
        let view = [(5usize, shares.values[&5])];
        let mut brute = [0u64; 2];
        for x in 0u64..1 << vars {
            let u = BinaryWord::from_fn(vars, |j| x >> j & 1 == 1);
            if u.dot(&s.columns[5]) == view[0].1 {
                brute[u.dot(&s.columns[0]) as usize] += 1;
            }
        }
        assert_eq!(s.consistent_messages(&view, 0), BigUint::from(brute[0]));
        assert_eq!(s.consistent_messages(&view, 1), BigUint::from(brute[1]));
        assert_eq!(brute, [1 << 18, 1 << 18]);
    }

    #[test]
    fn probe_behaviour() {
        let s = scheme(2, 1);
        let seeds: Vec<u64> = (0..8).collect();
        let empty = s.perfectness_probe(&[], &seeds).unwrap();
        assert!(empty.balanced());
        assert_eq!(empty.counts[0].1, BigUint::one() << 19);
        for p in s.participants() {
            assert!(s.perfectness_probe(&[p], &seeds).unwrap().balanced());
        }
        let access = s.minimal_access_sets().unwrap();
        assert_eq!(
            s.perfectness_probe(&access.minimal_sets[0], &seeds),
            Err(Error::Authorized)
        );
    }

    #[test]
    fn other_secret_position() {
        let code = TraceCode::with_params(2, 1, None).unwrap();
        let s = SharingScheme::with_secret_position(code, 1, 5).unwrap();
        assert!(s.participants().all(|i| i != 5));
        let access = s.minimal_access_sets().unwrap();
        assert_eq!(access.minimal_sets.len(), 8);
        let shares = s.deal(1);
        assert_eq!(
            s.reconstruct(&access.minimal_sets[3], &shares).unwrap(),
            Some(1)
        );
        assert!(s.participants().any(|p| p == 0));
    }
}
