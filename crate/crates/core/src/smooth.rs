//! Smooth-number counting and the probability of finding a large prime
//! dividing a shifted value exactly once — the events behind every
//! witness search.

use crate::valuations::{factorize, MAX_INPUT};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmoothError {
    #[error("x = {x} exceeds the sieve cap {cap}")]
    LimitExceeded { x: u64, cap: u64 },
}

/// Sieve memory bound: 32-bit smallest-prime-factor entries keep the
/// table under 400 MB at this cap.
pub const PSI_CAP: u64 = 100_000_000;

/// Enumeration bound for exact probability runs.
pub const EXACT_CAP: u64 = 10_000_000;

/// Smallest-prime-factor table for 0..=limit; construction is the only
/// cost, queries are pure lookups.
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Self {
        assert!(limit <= PSI_CAP, "sieve limit above the memory cap");
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2usize;
        while i <= n {
            if spf[i] == 0 {
                for j in (i..=n).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
            i += 1;
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    /// True iff every prime factor of n is at most k (n within the table).
    pub fn is_smooth(&self, n: u64, k: u64) -> bool {
        let mut n = n as usize;
        while n > 1 {
            let p = self.spf[n] as u64;
            if p > k {
                return false;
            }
            while (n as u64).is_multiple_of(p) {
                n /= p as usize;
            }
        }
        true
    }

    /// True iff some prime p > k divides n exactly once.
    pub fn has_unit_prime_above(&self, n: u64, k: u64) -> bool {
        let mut n = n as usize;
        while n > 1 {
            let p = self.spf[n] as u64;
            let mut e = 0;
            while (n as u64).is_multiple_of(p) {
                n /= p as usize;
                e += 1;
            }
            if p > k && e == 1 {
                return true;
            }
        }
        false
    }
}

/// True iff all prime factors of n are at most k, by full factorization
/// (works for any n up to the 2^63 cap, no table required).
pub fn is_smooth(n: u64, k: u64) -> bool {
    factorize(n)
        .expect("positive input within cap")
        .pairs()
        .iter()
        .all(|&(p, _)| p <= k)
}

/// The exact count ψ(x, k) of k-smooth integers in [1, x].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothCount {
    pub x: u64,
    pub k: u64,
    pub count: u64,
}

/// Exact ψ(x, k) by a smallest-prime-factor sieve; x is capped at 10^8.
pub fn psi(x: u64, k: u64) -> Result<SmoothCount, SmoothError> {
    if x > PSI_CAP {
        return Err(SmoothError::LimitExceeded { x, cap: PSI_CAP });
    }
    if x == 0 {
        return Ok(SmoothCount { x, k, count: 0 });
    }
    if k >= x {
        // Every m <= x is x-smooth.
        return Ok(SmoothCount { x, k, count: x });
    }
    if k <= 1 {
        return Ok(SmoothCount { x, k, count: 1 });
    }
    let table = SpfTable::new(x);
    let count = (1..=x).filter(|&m| table.is_smooth(m, k)).count() as u64;
    Ok(SmoothCount { x, k, count })
}

/// How to evaluate the probability: exhaustively, or by seeded sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbMode {
    Exact,
    Sampled { samples: u64, seed: u64 },
}

/// Either the exact fraction of qualifying m in [1, x], or an empirical
/// estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum ProbEstimate {
    Exact { hits: u64, total: u64 },
    Sampled { hits: u64, total: u64, std_error: f64 },
}

impl ProbEstimate {
    pub fn value(&self) -> f64 {
        match *self {
            ProbEstimate::Exact { hits, total } | ProbEstimate::Sampled { hits, total, .. } => {
                hits as f64 / total as f64
            }
        }
    }
}

fn mulshift(u: u64, range: u64) -> u64 {
    ((u as u128 * range as u128) >> 64) as u64
}

/// Draws uniformly from [1, x] without rejection (widening multiply).
pub fn uniform_in(rng: &mut ChaCha8Rng, x: u64) -> u64 {
    1 + mulshift(rng.next_u64(), x)
}

/// P(∃ prime p > k with v_p(m) = 1) for m uniform in [1, x].
pub fn prob_exists_large_unit_prime(
    x: u64,
    k: u64,
    mode: ProbMode,
) -> Result<ProbEstimate, SmoothError> {
    match mode {
        ProbMode::Exact => {
            if x > EXACT_CAP {
                return Err(SmoothError::LimitExceeded { x, cap: EXACT_CAP });
            }
            let table = SpfTable::new(x);
            let hits = (1..=x)
                .filter(|&m| table.has_unit_prime_above(m, k))
                .count() as u64;
            Ok(ProbEstimate::Exact { hits, total: x })
        }
        ProbMode::Sampled { samples, seed } => {
            assert!(samples >= 1);
            assert!((1..=MAX_INPUT).contains(&x));
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for _ in 0..samples {
                let m = uniform_in(&mut rng, x);
                let ok = factorize(m)
                    .expect("sampled m within cap")
                    .pairs()
                    .iter()
                    .any(|&(p, e)| p > k && e == 1);
                if ok {
                    hits += 1;
                }
            }
            let p = hits as f64 / samples as f64;
            Ok(ProbEstimate::Sampled {
                hits,
                total: samples,
                std_error: (p * (1.0 - p) / samples as f64).sqrt(),
            })
        }
    }
}

/// For each shift i = 0..t−1, the smallest prime p > k dividing m − i
/// exactly once, if any. This is the event the witness searches consume:
/// the small-degree certifier reads it with k = 7, and the
/// odd-permutation and large-prime searches read single entries.
pub fn shifted_witness_profile(m: u64, k: u64, t: u64) -> Vec<Option<u64>> {
    assert!(t >= 1, "need at least one shift");
    assert!(m > t, "m must exceed the shift count");
    (0..t)
        .map(|i| {
            factorize(m - i)
                .expect("m - i is positive and within cap")
                .pairs()
                .iter()
                .find(|&&(p, e)| p > k && e == 1)
                .map(|&(p, _)| p)
        })
        .collect()
}
