//! Independent verification oracle over prime fields.
//!
//! An instance is reduced modulo a random machine-word prime r and
//! factored by distinct-degree factorization. When the reduction is
//! squarefree, the multiset of irreducible-factor degrees is the cycle
//! type of a Frobenius element of the Galois group (Dedekind), so sampled
//! cycle types are sound group evidence with no Newton polygons involved:
//! a full-degree factor proves transitivity, an odd type rules out the
//! alternating group, and a large prime part yields a p-cycle.

use crate::certify::{Family, PolyInstance};
use crate::valuations::is_prime;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::sync::OnceLock;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("modulus {r} must be a prime larger than the degree {k}")]
    ModulusTooSmall { r: u64, k: u64 },
    #[error("{0} is not prime")]
    ModulusNotPrime(u64),
    #[error("modulus must be below 2^62")]
    ModulusTooLarge(u64),
    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefree(u64),
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("degree {0} leaves no room for prime sampling below 2^40")]
    DegreeTooLargeForSampling(u64),
}

const MAX_MODULUS: u64 = 1 << 62;

/// A dense polynomial over Z/rZ with r prime; the leading coefficient is
/// nonzero and the degree is `coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPoly {
    r: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

fn invmod(a: u64, m: u64) -> u64 {
    // m prime, a nonzero mod m.
    powmod(a, m - 2, m)
}

impl ModPoly {
    /// Builds from coefficients c_0 … c_k, trimming leading zeros.
    pub fn new(r: u64, mut coeffs: Vec<u64>) -> Result<Self, OracleError> {
        if !is_prime(r) {
            return Err(OracleError::ModulusNotPrime(r));
        }
        if r >= MAX_MODULUS {
            return Err(OracleError::ModulusTooLarge(r));
        }
        for c in coeffs.iter_mut() {
            *c %= r;
        }
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        Ok(ModPoly { r, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.r
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs == [0]
    }

    fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    fn make_monic(&self) -> ModPoly {
        let lead = *self.coeffs.last().unwrap();
        if lead == 1 {
            return self.clone();
        }
        let inv = invmod(lead, self.r);
        ModPoly {
            r: self.r,
            coeffs: self.coeffs.iter().map(|&c| mulmod(c, inv, self.r)).collect(),
        }
    }

    fn derivative(&self) -> ModPoly {
        let r = self.r;
        if self.coeffs.len() == 1 {
            return ModPoly { r, coeffs: vec![0] };
        }
        let mut coeffs: Vec<u64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, (i as u64) % r, r))
            .collect();
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
            coeffs.pop();
        }
        ModPoly { r, coeffs }
    }

    /// Remainder of self divided by a monic divisor.
    fn rem_monic(&self, div: &ModPoly) -> ModPoly {
        let r = self.r;
        debug_assert_eq!(*div.coeffs.last().unwrap(), 1);
        let d = div.degree();
        if self.degree() < d || self.is_zero() {
            return self.clone();
        }
        let mut rem = self.coeffs.clone();
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &dc) in div.coeffs.iter().enumerate().take(d) {
                let t = mulmod(c, dc, r);
                let idx = i - d + j;
                rem[idx] = (rem[idx] + r - t) % r;
            }
        }
        rem.truncate(d.max(1));
        while rem.len() > 1 && *rem.last().unwrap() == 0 {
            rem.pop();
        }
        ModPoly { r, coeffs: rem }
    }

    fn mul(&self, other: &ModPoly) -> ModPoly {
        let r = self.r;
        if self.is_zero() || other.is_zero() {
            return ModPoly { r, coeffs: vec![0] };
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, r) as u128 as u64) % r;
            }
        }
        ModPoly { r, coeffs }
    }

    fn mulrem(&self, other: &ModPoly, modulus: &ModPoly) -> ModPoly {
        self.mul(other).rem_monic(modulus)
    }

    /// self^e mod a monic modulus, square-and-multiply.
    fn powrem(&self, mut e: u64, modulus: &ModPoly) -> ModPoly {
        let r = self.r;
        let mut base = self.rem_monic(modulus);
        let mut acc = ModPoly { r, coeffs: vec![1] };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulrem(&base, modulus);
            }
            base = base.mulrem(&base, modulus);
            e >>= 1;
        }
        acc
    }

    fn gcd(&self, other: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let bm = b.make_monic();
            let rem = a.rem_monic(&bm);
            a = bm;
            b = rem;
        }
        a.make_monic()
    }

    fn divide_exact(&self, div: &ModPoly) -> ModPoly {
        // Both monic; the division is known to be exact.
        let r = self.r;
        let d = div.degree();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len() - d];
        for i in (d..rem.len()).rev() {
            let c = rem[i];
            quot[i - d] = c;
            if c == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &dc) in div.coeffs.iter().enumerate().take(d) {
                let t = mulmod(c, dc, r);
                let idx = i - d + j;
                rem[idx] = (rem[idx] + r - t) % r;
            }
        }
        ModPoly { r, coeffs: quot }
    }
}

/// The instance reduced modulo r: coefficient i is u_i times the partial
/// product (n+i+1)(n+i+2)⋯m, accumulated incrementally mod r, so the cost
/// is O(k) regardless of the size of m. Requires r > k so the Laguerre
/// binomial units are meaningful mod r and the leading unit ±1 survives.
pub fn reduce_instance(instance: &PolyInstance, r: u64) -> Result<ModPoly, OracleError> {
    let k = instance.k();
    if r <= k {
        return Err(OracleError::ModulusTooSmall { r, k });
    }
    if !is_prime(r) {
        return Err(OracleError::ModulusNotPrime(r));
    }
    if r >= MAX_MODULUS {
        return Err(OracleError::ModulusTooLarge(r));
    }
    let n = instance.n();
    let ku = k as usize;

    // Suffix products of (n+i+1..=m) mod r, from the leading coefficient down.
    let mut base = vec![0u64; ku + 1];
    base[ku] = 1;
    for i in (0..ku).rev() {
        let factor = (n + i as u64 + 1) % r;
        base[i] = mulmod(base[i + 1], factor, r);
    }

    let coeffs = match instance.family() {
        Family::Trimmed => base,
        Family::Laguerre => {
            // u_i = (-1)^i C(k, i) mod r, built multiplicatively; r > k
            // keeps every i invertible.
            let mut binom = 1u64;
            let mut out = Vec::with_capacity(ku + 1);
            for (i, &b) in base.iter().enumerate() {
                if i > 0 {
                    let num = (k - i as u64 + 1) % r;
                    binom = mulmod(binom, num, r);
                    binom = mulmod(binom, invmod(i as u64 % r, r), r);
                }
                let signed = if i % 2 == 0 { binom } else { (r - binom) % r };
                out.push(mulmod(signed, b, r));
            }
            out
        }
    };
    ModPoly::new(r, coeffs)
}

/// True iff gcd(f, f′) is constant, i.e. f has no repeated factor mod r.
pub fn squarefree_mod(f: &ModPoly) -> bool {
    debug_assert!(f.degree() >= 1);
    let d = f.derivative();
    if d.is_zero() {
        return false;
    }
    f.gcd(&d).is_constant()
}

/// Distinct-degree factorization: the multiset of irreducible-factor
/// degrees (ascending), obtained by iterating w ← w^r mod f and splitting
/// off gcd(w − x, f) at each degree. Degrees sum to deg f.
pub fn cycle_type_mod(f: &ModPoly) -> Result<Vec<u64>, OracleError> {
    if !squarefree_mod(f) {
        return Err(OracleError::NotSquarefree(f.r));
    }
    let r = f.r;
    let mut rest = f.make_monic();
    let x = ModPoly {
        r,
        coeffs: vec![0, 1],
    };
    let mut w = x.rem_monic(&rest);
    let mut t = Vec::new();
    let mut d = 0u64;
    while rest.degree() >= 1 {
        d += 1;
        if 2 * d > rest.degree() as u64 {
            // What is left is a single irreducible factor.
            t.push(rest.degree() as u64);
            break;
        }
        w = w.powrem(r, &rest);
        let mut diff = w.clone();
        // w - x mod rest
        if diff.coeffs.len() < 2 {
            diff.coeffs.resize(2, 0);
        }
        diff.coeffs[1] = (diff.coeffs[1] + r - 1) % r;
        while diff.coeffs.len() > 1 && *diff.coeffs.last().unwrap() == 0 {
            diff.coeffs.pop();
        }
        let g = rest.gcd(&diff);
        if g.degree() >= 1 {
            for _ in 0..g.degree() as u64 / d {
                t.push(d);
            }
            rest = rest.divide_exact(&g);
            w = w.rem_monic(&rest);
        }
    }
    t.sort_unstable();
    debug_assert_eq!(t.iter().sum::<u64>(), f.degree() as u64);
    Ok(t)
}

/// One sampled prime with the cycle type it produced, if the reduction
/// was squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusSample {
    pub r: u64,
    pub squarefree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cycle_type: Option<Vec<u64>>,
}

/// Which kinds of evidence have been seen so far.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceFound {
    /// A full-degree type [k]: transitivity, hence irreducibility.
    pub k_cycle: bool,
    /// A type of odd parity: the group is not inside A_k.
    pub odd_type: bool,
    /// A prime part p with k/2 < p < k − 2 (raise to the lcm of the other
    /// parts, all smaller than p, to isolate a p-cycle).
    pub jordan_p: Option<u64>,
    /// Small-degree route: a type [k−1, 1].
    pub k1_cycle: bool,
    /// Small-degree route: lcm of sampled element orders divisible by
    /// lcm(1..k).
    pub lcm_covered: bool,
    /// Degree-6 route: a type that does not occur in PGL_2(F_5) acting on
    /// the projective line over F_5.
    pub pgl_separated: bool,
}

/// The outcome of an oracle run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub confirmed_sk: bool,
    pub primes_tried: u64,
    pub evidence: Vec<FrobeniusSample>,
    pub seed: u64,
    pub found: EvidenceFound,
}

/// Cycle types of PGL_2(F_5) acting on the six points of the projective
/// line over F_5, by brute force over its 120 elements. These are the
/// types that cannot separate S_6 from PGL_2(F_5); any sampled type
/// outside this set does.
pub fn pgl2_f5_cycle_types() -> &'static BTreeSet<Vec<u64>> {
    static TYPES: OnceLock<BTreeSet<Vec<u64>>> = OnceLock::new();
    TYPES.get_or_init(|| {
        const Q: u64 = 5;
        const INF: usize = Q as usize; // points 0..4 are field elements, 5 is infinity
        let mut types = BTreeSet::new();
        for a in 0..Q {
            for b in 0..Q {
                for c in 0..Q {
                    for d in 0..Q {
                        if (a * d + 4 * b * c) % Q == 0 {
                            continue; // det = ad - bc = 0
                        }
                        // One matrix per projective class: first nonzero
                        // entry normalized to 1.
                        let lead = if a != 0 { a } else { b };
                        if lead != 1 {
                            continue;
                        }
                        let image = |x: usize| -> usize {
                            let (num, den) = if x == INF {
                                (a, c)
                            } else {
                                ((a * x as u64 + b) % Q, (c * x as u64 + d) % Q)
                            };
                            if den == 0 {
                                INF
                            } else {
                                (num * powmod(den, Q - 2, Q) % Q) as usize
                            }
                        };
                        let mut seen = [false; 6];
                        let mut t = Vec::new();
                        for start in 0..6 {
                            if seen[start] {
                                continue;
                            }
                            let mut len = 0u64;
                            let mut x = start;
                            while !seen[x] {
                                seen[x] = true;
                                x = image(x);
                                len += 1;
                            }
                            t.push(len);
                        }
                        t.sort_unstable();
                        types.insert(t);
                    }
                }
            }
        }
        types
    })
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn lcm_1_to(k: u64) -> u128 {
    (1..=k as u128).fold(1u128, lcm_u128)
}

fn type_is_odd(t: &[u64], k: u64) -> bool {
    (k - t.len() as u64) % 2 == 1
}

fn update_found(found: &mut EvidenceFound, t: &[u64], k: u64, order_lcm: &mut u128) {
    if t == [k] {
        found.k_cycle = true;
    }
    if k >= 2 && t.len() == 2 && t[0] == 1 && t[1] == k - 1 {
        found.k1_cycle = true;
    }
    if type_is_odd(t, k) {
        found.odd_type = true;
    }
    if found.jordan_p.is_none() {
        if let Some(&p) = t
            .iter()
            .find(|&&p| is_prime(p) && 2 * p > k && p + 2 < k)
        {
            found.jordan_p = Some(p);
        }
    }
    *order_lcm = t.iter().fold(*order_lcm, |acc, &part| {
        lcm_u128(acc, part as u128)
    });
    if k == 6 && !pgl2_f5_cycle_types().contains(t) {
        found.pgl_separated = true;
    }
}

fn confirmed(found: &EvidenceFound, k: u64) -> bool {
    if k == 1 {
        return found.k_cycle;
    }
    if k >= 8 {
        return found.k_cycle && found.odd_type && found.jordan_p.is_some();
    }
    // 2 <= k <= 7: a k-cycle and a (k-1)-cycle give 2-transitivity, an odd
    // type leaves S_k and PGL_2(F_5) (k = 6 only) as the 2-transitive
    // candidates not inside A_k, the lcm condition matches the
    // small-degree subgroup check, and for k = 6 a type outside the
    // PGL_2(F_5) set finishes the separation.
    let base = found.k_cycle && found.k1_cycle && found.odd_type && found.lcm_covered;
    if k == 6 {
        base && found.pgl_separated
    } else {
        base
    }
}

const SAMPLE_FLOOR: u64 = 1 << 20;
const SAMPLE_CEIL: u64 = 1 << 40;

/// Deterministically samples primes in (max(k, 2^20), 2^40), reduces the
/// instance, and collects Frobenius cycle types until the required
/// evidence is complete or the budget is exhausted. Non-squarefree
/// reductions are recorded but contribute no type.
pub fn oracle_confirm(
    instance: &PolyInstance,
    budget: u64,
    seed: u64,
) -> Result<OracleVerdict, OracleError> {
    if budget == 0 {
        return Err(OracleError::ZeroBudget);
    }
    let k = instance.k();
    let lo = k.max(SAMPLE_FLOOR);
    if lo + 2 >= SAMPLE_CEIL {
        return Err(OracleError::DegreeTooLargeForSampling(k));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = SAMPLE_CEIL - lo - 1; // candidates in [lo + 1, 2^40 - 1]
    let mut draw_prime = || loop {
        let u = rng.next_u64();
        let candidate = lo + 1 + ((u as u128 * span as u128) >> 64) as u64;
        if is_prime(candidate) {
            return candidate;
        }
    };

    let target_lcm = lcm_1_to(k);
    let mut order_lcm = 1u128;
    let mut found = EvidenceFound::default();
    let mut evidence = Vec::new();
    let mut primes_tried = 0u64;

    while primes_tried < budget {
        let r = draw_prime();
        primes_tried += 1;
        let f = reduce_instance(instance, r)?;
        if !squarefree_mod(&f) {
            evidence.push(FrobeniusSample {
                r,
                squarefree: false,
                cycle_type: None,
            });
            continue;
        }
        let t = cycle_type_mod(&f)?;
        update_found(&mut found, &t, k, &mut order_lcm);
        found.lcm_covered = order_lcm.is_multiple_of(target_lcm);
        evidence.push(FrobeniusSample {
            r,
            squarefree: true,
            cycle_type: Some(t),
        });
        if confirmed(&found, k) {
            break;
        }
    }

    Ok(OracleVerdict {
        confirmed_sk: confirmed(&found, k),
        primes_tried,
        evidence,
        seed,
        found,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::{certify, Conclusion};

    fn trimmed(n: u64, m: u64) -> PolyInstance {
        PolyInstance::new(Family::Trimmed, n, m).unwrap()
    }

    fn laguerre(n: u64, m: u64) -> PolyInstance {
        PolyInstance::new(Family::Laguerre, n, m).unwrap()
    }

    fn poly(r: u64, coeffs: &[u64]) -> ModPoly {
        ModPoly::new(r, coeffs.to_vec()).unwrap()
    }

    #[test]
    fn reduce_trimmed_mod_13() {
        // 11!/3! = 6652800 ≡ 11, and the leading coefficient is 1.
        let f = reduce_instance(&trimmed(3, 11), 13).unwrap();
        assert_eq!(f.coeffs()[0], 11);
        assert_eq!(*f.coeffs().last().unwrap(), 1);
        assert_eq!(f.degree(), 8);
    }

    #[test]
    fn reduce_with_huge_modulus_recovers_exact_coefficients() {
        // r far above 11!/3!: no reduction happens.
        let r = 2_305_843_009_213_693_951; // 2^61 - 1, prime
        let f = reduce_instance(&trimmed(3, 11), r).unwrap();
        let mut expect = Vec::new();
        for i in 0..=8u64 {
            let mut prod = 1u64;
            for j in 3 + i + 1..=11 {
                prod *= j;
            }
            expect.push(prod);
        }
        assert_eq!(f.coeffs(), &expect[..]);
    }

    #[test]
    fn reduce_laguerre_signs() {
        let f = reduce_instance(&laguerre(3, 11), 13).unwrap();
        // u_8 = (+1) C(8,8): leading coefficient 1.
        assert_eq!(*f.coeffs().last().unwrap(), 1);
        // u_1 = -C(8,1) = -8: coefficient 1 is -8 * (suffix product) mod 13.
        let trimmed_f = reduce_instance(&trimmed(3, 11), 13).unwrap();
        let expect = (13 - mulmod(8, trimmed_f.coeffs()[1], 13)) % 13;
        assert_eq!(f.coeffs()[1], expect);
    }

    #[test]
    fn reduce_rejects_small_modulus() {
        assert_eq!(
            reduce_instance(&trimmed(3, 11), 7),
            Err(OracleError::ModulusTooSmall { r: 7, k: 8 })
        );
    }

    #[test]
    fn squarefree_examples() {
        // x^2 - 1 mod 5: distinct roots.
        assert!(squarefree_mod(&poly(5, &[4, 0, 1])));
        // x^2 mod 5.
        assert!(!squarefree_mod(&poly(5, &[0, 0, 1])));
        // (x - 1)^2 = x^2 - 2x + 1 mod 7.
        assert!(!squarefree_mod(&poly(7, &[1, 5, 1])));
    }

    #[test]
    fn cycle_type_examples() {
        // x^2 + 1 is irreducible mod 3 (-1 is a non-residue).
        assert_eq!(cycle_type_mod(&poly(3, &[1, 0, 1])).unwrap(), vec![2]);
        // x^2 - 1 splits mod 5.
        assert_eq!(cycle_type_mod(&poly(5, &[4, 0, 1])).unwrap(), vec![1, 1]);
        // x^3 + x + 1 has no root mod 2, so it is irreducible.
        assert_eq!(cycle_type_mod(&poly(2, &[1, 1, 0, 1])).unwrap(), vec![3]);
        assert_eq!(
            cycle_type_mod(&poly(5, &[0, 0, 1])),
            Err(OracleError::NotSquarefree(5))
        );
    }

    #[test]
    fn cycle_type_of_known_product() {
        // (x^2 + 1)(x + 1)(x + 2) mod 3: degrees [1, 1, 2].
        let f = poly(3, &[1, 0, 1]).mul(&poly(3, &[1, 1])).mul(&poly(3, &[2, 1]));
        assert_eq!(cycle_type_mod(&f).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn degrees_always_sum_to_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let r = [1009u64, 2003, 65537][rng.next_u64() as usize % 3];
            let deg = 2 + (rng.next_u64() % 9) as usize;
            let mut coeffs: Vec<u64> = (0..=deg).map(|_| rng.next_u64() % r).collect();
            if coeffs[deg] == 0 {
                coeffs[deg] = 1;
            }
            let f = ModPoly::new(r, coeffs).unwrap();
            if f.degree() >= 1 && squarefree_mod(&f) {
                let t = cycle_type_mod(&f).unwrap();
                assert_eq!(t.iter().sum::<u64>(), f.degree() as u64);
            }
        }
    }

    #[test]
    fn reduction_matches_exact_coefficients_for_small_instances() {
        // Reference path: build the exact integer coefficients in 128-bit
        // arithmetic (m <= 25 keeps every product under 2^128) and reduce.
        for family in [Family::Trimmed, Family::Laguerre] {
            for m in 2..=25u64 {
                for n in 1..m {
                    let k = m - n;
                    for r in [13u64, 101, 1009] {
                        if r <= k {
                            continue;
                        }
                        let instance = PolyInstance::new(family, n, m).unwrap();
                        let f = reduce_instance(&instance, r).unwrap();
                        for i in 0..=k {
                            let mut c: u128 = 1;
                            for j in n + i + 1..=m {
                                c *= j as u128;
                            }
                            if family == Family::Laguerre {
                                let mut binom: u128 = 1;
                                for t in 1..=i {
                                    binom = binom * (k - t + 1) as u128 / t as u128;
                                }
                                c *= binom;
                            }
                            let mut expect = (c % r as u128) as u64;
                            if family == Family::Laguerre && i % 2 == 1 {
                                expect = (r - expect) % r;
                            }
                            assert_eq!(
                                f.coeffs()[i as usize],
                                expect,
                                "family={family} n={n} m={m} r={r} i={i}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cycle_type_of_brute_force_irreducibles() {
        // Ground truth by exhaustive divisor search over F_r for small
        // degrees, then products of distinct irreducibles must report
        // exactly their degree multiset.
        fn divides(f: &ModPoly, g: &ModPoly) -> bool {
            f.rem_monic(&g.make_monic()).is_zero()
        }
        fn irreducible_brute(f: &ModPoly) -> bool {
            let r = f.modulus();
            let deg = f.degree();
            for d in 1..=deg / 2 {
                // All r^d monic candidates of degree d, coefficient
                // vectors decoded base r.
                for code in 0..r.pow(d as u32) {
                    let mut coeffs = Vec::with_capacity(d + 1);
                    let mut c = code;
                    for _ in 0..d {
                        coeffs.push(c % r);
                        c /= r;
                    }
                    coeffs.push(1);
                    let g = ModPoly::new(r, coeffs).unwrap();
                    if divides(f, &g) {
                        return false;
                    }
                }
            }
            true
        }

        let r = 5u64;
        let mut irreducibles: Vec<ModPoly> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        while irreducibles.len() < 3 {
            let deg = 1 + (rng.next_u64() % 3) as usize;
            let mut coeffs: Vec<u64> = (0..deg).map(|_| rng.next_u64() % r).collect();
            coeffs.push(1);
            let f = ModPoly::new(r, coeffs).unwrap();
            if f.degree() == deg
                && irreducible_brute(&f)
                && !irreducibles.contains(&f)
            {
                irreducibles.push(f);
            }
        }
        let mut product = ModPoly::new(r, vec![1]).unwrap();
        let mut expect: Vec<u64> = Vec::new();
        for f in &irreducibles {
            product = product.mul(f);
            expect.push(f.degree() as u64);
        }
        expect.sort_unstable();
        assert_eq!(cycle_type_mod(&product).unwrap(), expect);
    }

    #[test]
    fn pgl2_f5_fixture() {
        let types = pgl2_f5_cycle_types();
        let expect: BTreeSet<Vec<u64>> = [
            vec![1, 1, 1, 1, 1, 1],
            vec![1, 1, 2, 2],
            vec![1, 1, 4],
            vec![1, 5],
            vec![2, 2, 2],
            vec![3, 3],
            vec![6],
        ]
        .into_iter()
        .collect();
        assert_eq!(*types, expect);
        // The group realizes an r-cycle for every r <= 6, which is exactly
        // why single-cycle evidence cannot separate it from S_6; the
        // separating types are [2,1^4], [3,1^3], [3,2,1] and [4,2].
        assert!(!types.contains(&vec![1, 2, 3]));
        assert!(!types.contains(&vec![2, 4]));
    }

    #[test]
    fn oracle_confirms_the_reference_instance() {
        let v = oracle_confirm(&trimmed(3, 11), 100, 1).unwrap();
        assert!(v.confirmed_sk);
        assert!(v.primes_tried <= 100);
        let v = oracle_confirm(&laguerre(3, 11), 100, 1).unwrap();
        assert!(v.confirmed_sk);
    }

    #[test]
    fn oracle_rejects_zero_budget() {
        assert_eq!(
            oracle_confirm(&trimmed(3, 11), 0, 1),
            Err(OracleError::ZeroBudget)
        );
    }

    #[test]
    fn oracle_small_k_uses_generation_criteria() {
        // Degree 2: x^2 + 3x + 6 has discriminant -15 < 0, group S_2; the
        // Jordan interval (1, 0) is empty, so confirmation rides on the
        // k-cycle, 1-cycle, parity and lcm evidence instead.
        let v = oracle_confirm(&trimmed(1, 3), 50, 1).unwrap();
        assert!(v.confirmed_sk);
        assert!(v.found.jordan_p.is_none());
    }

    #[test]
    fn oracle_is_seed_deterministic() {
        let a = oracle_confirm(&trimmed(3, 11), 40, 99).unwrap();
        let b = oracle_confirm(&trimmed(3, 11), 40, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn oracle_never_confirms_visibly_reducible_input() {
        // certify marks this inconclusive; the oracle must not find a
        // full-degree factor if the polynomial is actually reducible, and
        // either way a [k] type among samples proves irreducibility, so
        // confirmed_sk on a reducible polynomial is impossible by
        // construction. Exercise the pipeline on an inconclusive instance.
        let inst = trimmed(1, 9);
        assert_eq!(certify(&inst).conclusion, Conclusion::Inconclusive);
        let v = oracle_confirm(&inst, 60, 5).unwrap();
        for s in &v.evidence {
            if let Some(t) = &s.cycle_type {
                assert_eq!(t.iter().sum::<u64>(), 8);
            }
        }
    }

    #[test]
    fn verdict_json_shape() {
        let v = oracle_confirm(&trimmed(3, 11), 30, 1).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert!(json["confirmed_sk"].as_bool().unwrap());
        assert!(json["primes_tried"].as_u64().unwrap() >= 1);
        assert!(json["evidence"][0]["r"].as_u64().unwrap() > 1 << 20);
        assert_eq!(json["seed"], 1);
    }
}
