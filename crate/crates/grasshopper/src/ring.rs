//! Coefficient-ring abstraction for the alpha recurrence.
//!
//! The exact-integer DP and the mod-p DP share one code path; the ring is the
//! single substitution point, so both variants visit identical memo keys and
//! differ only in coefficient arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub trait CoeffRing {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add_assign(&self, lhs: &mut Self::Elem, rhs: &Self::Elem);
    fn is_zero(&self, e: &Self::Elem) -> bool;
}

/// Arbitrary-precision signed integers; every operation is exact.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactRing;

impl CoeffRing for ExactRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn add_assign(&self, lhs: &mut BigInt, rhs: &BigInt) {
        *lhs += rhs;
    }

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }
}

/// Residues mod a fixed modulus p < 2^63 (sums of two residues must not wrap).
#[derive(Debug, Clone, Copy)]
pub struct ModRing {
    modulus: u64,
}

impl ModRing {
    pub fn new(modulus: u64) -> Self {
        assert!(modulus >= 2 && modulus < (1 << 63));
        ModRing { modulus }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl CoeffRing for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add_assign(&self, lhs: &mut u64, rhs: &u64) {
        *lhs += rhs;
        if *lhs >= self.modulus {
            *lhs -= self.modulus;
        }
    }

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }
}
