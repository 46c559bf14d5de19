//! Exact p-adic valuations of integers, factorials, factorial ratios and
//! binomial coefficients, computed without ever constructing the large
//! integers themselves, plus deterministic 64-bit primality testing and
//! factorization.
//!
//! Everything here is exact integer arithmetic: valuations come from
//! Legendre's formula `v_p(n!) = Σ_i ⌊n/pⁱ⌋`, primality from a
//! Miller–Rabin witness set proven complete below 2^64, and factorization
//! from trial division followed by Brent-cycle Pollard rho with a fixed
//! parameter schedule, so results are reproducible.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::OnceLock;

/// Inputs larger than this are rejected at the API boundary; intermediate
/// products then always fit in 128 bits.
pub const MAX_INPUT: u64 = (1 << 63) - 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ValuationError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("input {0} exceeds the 2^63 - 1 cap")]
    InputTooLarge(u64),
    #[error("index {index} outside [0, {bound}]")]
    IndexOutOfRange { index: u64, bound: u64 },
}

/// A p-adic valuation: a non-negative integer, or infinity for the
/// valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u64),
    Infinite,
}

impl Valuation {
    pub fn is_zero(self) -> bool {
        self == Valuation::Finite(0)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

impl From<u64> for Valuation {
    fn from(v: u64) -> Self {
        Valuation::Finite(v)
    }
}

/// A complete prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// `(prime, exponent)` pairs, primes strictly increasing.
    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    /// The exponent of `p`, zero when `p` does not divide the input.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.pairs
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Multiplies the factorization back together.
    pub fn reassemble(&self) -> u64 {
        self.pairs
            .iter()
            .fold(1u64, |acc, &(p, e)| acc * p.pow(e))
    }
}

fn check_prime(p: u64) -> Result<(), ValuationError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ValuationError::NotPrime(p))
    }
}

fn check_cap(n: u64) -> Result<(), ValuationError> {
    if n > MAX_INPUT {
        Err(ValuationError::InputTooLarge(n))
    } else {
        Ok(())
    }
}

/// The exact exponent of the prime `p` in `n ≥ 1`.
pub fn vp_int(n: u64, p: u64) -> Result<u64, ValuationError> {
    check_prime(p)?;
    check_cap(n)?;
    if n == 0 {
        return Err(ValuationError::ZeroInput);
    }
    let mut n = n;
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    Ok(v)
}

/// `v_p(n!)` by Legendre's formula: `Σ_{i≥1} ⌊n/pⁱ⌋`.
pub fn vp_factorial(n: u64, p: u64) -> Result<u64, ValuationError> {
    check_prime(p)?;
    check_cap(n)?;
    let mut v = 0u64;
    let mut q = n / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    Ok(v)
}

/// `v_p(m!/j!)` for `0 ≤ j ≤ m`: the number of p-power divisors, counted
/// with multiplicity, among `j+1, …, m`.
pub fn vp_factorial_ratio(m: u64, j: u64, p: u64) -> Result<u64, ValuationError> {
    if j > m {
        return Err(ValuationError::IndexOutOfRange { index: j, bound: m });
    }
    Ok(vp_factorial(m, p)? - vp_factorial(j, p)?)
}

/// `v_p(C(k, j))` via the factorial formula `v_p(k!) − v_p(j!) − v_p((k−j)!)`.
pub fn vp_binomial(k: u64, j: u64, p: u64) -> Result<u64, ValuationError> {
    if j > k {
        return Err(ValuationError::IndexOutOfRange { index: j, bound: k });
    }
    Ok(vp_factorial(k, p)? - vp_factorial(j, p)? - vp_factorial(k - j, p)?)
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Witness set sufficient for deterministic Miller–Rabin on all n < 2^64
/// (Sorenson–Webster).
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic primality test for the full 64-bit range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_BOUND: u64 = 10_000;

fn trial_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut sieve = vec![true; TRIAL_BOUND as usize];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i < TRIAL_BOUND as usize {
            if sieve[i] {
                for j in (i * i..TRIAL_BOUND as usize).step_by(i) {
                    sieve[j] = false;
                }
            }
            i += 1;
        }
        (2..TRIAL_BOUND as usize)
            .filter(|&i| sieve[i])
            .map(|i| i as u64)
            .collect()
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent-cycle Pollard rho. `n` must be odd, composite, and free of
/// factors below `TRIAL_BOUND`; the `c` schedule 1, 2, 3, … makes the
/// returned factor a deterministic function of `n`.
fn pollard_rho_brent(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime(n));
    for c in 1u64.. {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut q = 1u64;
        let mut ys = y;
        let mut g = 1u64;
        let mut r = 1u64;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // Backtrack one step at a time from the last saved point.
            g = 1;
            let mut z = ys;
            while g == 1 {
                z = f(z);
                g = gcd(x.abs_diff(z), n);
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Complete prime factorization of `1 ≤ n < 2^63`.
pub fn factorize(n: u64) -> Result<Factorization, ValuationError> {
    if n == 0 {
        return Err(ValuationError::ZeroInput);
    }
    check_cap(n)?;
    let mut rest = n;
    let mut primes = Vec::new();
    for &p in trial_primes() {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    if rest > 1 {
        if rest < TRIAL_BOUND * TRIAL_BOUND {
            primes.push(rest);
        } else {
            factor_into(rest, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match pairs.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => pairs.push((p, 1)),
        }
    }
    Ok(Factorization { pairs })
}
