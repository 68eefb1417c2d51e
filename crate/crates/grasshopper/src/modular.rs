//! Residue arithmetic over the c_k pipeline: c_k mod p, small-prime divisor
//! scans of the exact values, and verification of the published
//! factorizations. Tooling for the finite-field side of the problem, which
//! itself stays open.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::coeffs::{self, DEFAULT_MEMO_CAP};
use crate::error::{Error, Result};
use crate::ring::ModRing;

/// A certified prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Certifies primality with the deterministic Miller-Rabin base set for
    /// 64-bit integers (no error probability in this range).
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        Ok(PrimeModulus(p))
    }

    pub fn get(&self) -> u64 {
        self.0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (the standard 12-base witness set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality by trial division up to the square root: absolute certainty at
/// tiny cost for the sizes the published factor lists contain.
pub fn is_prime_certified(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// c_k reduced mod p, computed by the same level sweep as the exact value
/// with only the coefficient ring substituted.
pub fn ck_mod(k: u32, p: &PrimeModulus) -> Result<u64> {
    ck_mod_with_cap(k, p, DEFAULT_MEMO_CAP)
}

pub fn ck_mod_with_cap(k: u32, p: &PrimeModulus, cap: usize) -> Result<u64> {
    coeffs::ck_in(&ModRing::new(p.get()), k, cap)
}

/// All primes up to `bound`, by sieve.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub prime: u64,
    pub residue: u64,
    pub divides: bool,
}

/// The primes up to `bound` dividing the exact c_k. The exact value is
/// computed once and trial-divided; a sample of rows is cross-checked
/// against the modular DP.
pub fn divisor_scan(k: u32, bound: u64) -> Result<Vec<u64>> {
    Ok(divisor_scan_table(k, bound)?
        .into_iter()
        .filter(|row| row.divides)
        .map(|row| row.prime)
        .collect())
}

pub fn divisor_scan_table(k: u32, bound: u64) -> Result<Vec<ScanRow>> {
    let exact = coeffs::ck(k)?;
    let rows: Vec<ScanRow> = primes_up_to(bound)
        .into_iter()
        .map(|prime| {
            let residue = (&exact % BigInt::from(prime))
                .to_u64()
                .expect("residue of a positive value fits u64");
            ScanRow {
                prime,
                residue,
                divides: residue == 0,
            }
        })
        .collect();
    // Cross-check a few rows through the mod-p DP.
    for row in rows.iter().take(3) {
        let via_dp = ck_mod(k, &PrimeModulus::new(row.prime)?)?;
        if via_dp != row.residue {
            return Err(Error::Internal(format!(
                "modular DP disagrees with exact residue at p = {}",
                row.prime
            )));
        }
    }
    Ok(rows)
}

/// A claimed prime factorization of c_k.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationClaim {
    pub k: u32,
    pub factors: Vec<(u64, u32)>,
}

impl FactorizationClaim {
    pub fn new(k: u32, factors: Vec<(u64, u32)>) -> Self {
        FactorizationClaim { k, factors }
    }

    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &(p, e) in &self.factors {
            acc *= BigInt::from(p).pow(e);
        }
        acc
    }
}

/// True iff the claim's factors are certified primes and their product is
/// exactly c_k. A composite claimed prime is an input error, not `false`.
pub fn verify_factorization(claim: &FactorizationClaim) -> Result<bool> {
    for &(p, _) in &claim.factors {
        if !is_prime_certified(p) {
            return Err(Error::invalid(format!("claimed factor {p} is composite")));
        }
    }
    Ok(claim.product() == coeffs::ck(claim.k)?)
}

/// The published factorization claims for c_3 through c_6.
pub fn published_claims() -> Vec<FactorizationClaim> {
    vec![
        FactorizationClaim::new(3, vec![(2, 1), (3, 2), (5, 1)]),
        FactorizationClaim::new(4, vec![(2, 5), (3, 3), (7, 1), (97, 1)]),
        FactorizationClaim::new(
            5,
            vec![(2, 2), (3, 1), (5, 4), (7, 1), (79, 1), (103, 1), (4_483, 1)],
        ),
        FactorizationClaim::new(
            6,
            vec![
                (2, 5),
                (3, 6),
                (5, 2),
                (11, 1),
                (23, 1),
                (223, 1),
                (239, 1),
                (1_002_820_739, 1),
            ],
        ),
    ]
}

/// Small-prime part of c_k plus the unfactored cofactor, for k beyond the
/// published lists. Completeness of the small part is only up to `bound`.
#[derive(Debug, Clone, Serialize)]
pub struct PartialFactorization {
    pub k: u32,
    pub factors: Vec<(u64, u32)>,
    pub cofactor: String,
    pub cofactor_is_one: bool,
}

pub fn partial_factorization(k: u32, bound: u64) -> Result<PartialFactorization> {
    let mut remaining = coeffs::ck(k)?;
    if remaining.is_negative() || remaining.is_zero() {
        return Err(Error::Internal("c_k must be positive".into()));
    }
    let mut factors = Vec::new();
    for p in primes_up_to(bound) {
        let big_p = BigInt::from(p);
        let mut exp = 0u32;
        loop {
            let (q, r) = remaining.div_rem(&big_p);
            if !r.is_zero() {
                break;
            }
            remaining = q;
            exp += 1;
        }
        if exp > 0 {
            factors.push((p, exp));
        }
    }
    Ok(PartialFactorization {
        k,
        factors,
        cofactor_is_one: remaining.is_one(),
        cofactor: remaining.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_certification() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_002_820_739));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(4_483 * 7));
        assert!(is_prime_certified(1_002_820_739));
        assert!(!is_prime_certified(1_002_820_741));
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..2000u64 {
            assert_eq!(is_prime_u64(n), is_prime_certified(n), "disagree at {n}");
        }
    }

    #[test]
    fn ck_mod_small_values() {
        assert_eq!(ck_mod(3, &PrimeModulus::new(7).unwrap()).unwrap(), 6);
        assert_eq!(ck_mod(3, &PrimeModulus::new(5).unwrap()).unwrap(), 0);
        assert_eq!(ck_mod(1, &PrimeModulus::new(2).unwrap()).unwrap(), 1);
        assert_eq!(ck_mod(1, &PrimeModulus::new(101).unwrap()).unwrap(), 1);
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(PrimeModulus::new(91).is_err());
    }

    #[test]
    fn scan_matches_published_small_factors() {
        assert_eq!(divisor_scan(4, 100).unwrap(), vec![2, 3, 7, 97]);
        assert_eq!(divisor_scan(3, 10).unwrap(), vec![2, 3, 5]);
        assert!(divisor_scan(1, 100).unwrap().is_empty());
    }

    #[test]
    fn published_claims_verify() {
        for claim in published_claims() {
            assert!(verify_factorization(&claim).unwrap(), "claim for k={}", claim.k);
        }
    }

    #[test]
    fn wrong_claim_fails() {
        let claim = FactorizationClaim::new(3, vec![(2, 1), (3, 2), (7, 1)]);
        assert!(!verify_factorization(&claim).unwrap());
    }

    #[test]
    fn composite_claimed_prime_is_error() {
        let claim = FactorizationClaim::new(3, vec![(6, 1), (15, 1)]);
        assert!(verify_factorization(&claim).is_err());
    }

    #[test]
    fn partial_factorization_recovers_c4() {
        let partial = partial_factorization(4, 100).unwrap();
        assert_eq!(partial.factors, vec![(2, 5), (3, 3), (7, 1), (97, 1)]);
        assert!(partial.cofactor_is_one);
    }
}
