//! Brute-force ground truth for the coefficient pipeline: direct symbolic
//! expansion of the prefix-power polynomials and direct evaluation of the
//! alternating permutation sums. Everything here is exponential in n and only
//! meant for small instances; `coeffs` is the scalable path.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeffs::PolySpec;
use crate::error::{Error, Result};
use crate::route::MineField;

/// Default cap on n for symbolic expansion.
pub const DEFAULT_EXPAND_CAP: u32 = 4;
/// Default cap on k for permutation-sum evaluation (k = 5 means 10! terms).
pub const DEFAULT_EVAL_K_CAP: u32 = 5;
/// Default cap on k for the Nullstellensatz coefficient expansion.
pub const DEFAULT_NULLSTELLENSATZ_K_CAP: u32 = 2;

/// Exponent vector with graded-lexicographic ordering, for deterministic
/// iteration and serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact multivariate polynomial over the integers. Supports only what the
/// expansion needs: add, multiply, variable swap, coefficient extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensePoly {
    n_vars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl DensePoly {
    pub fn zero(n_vars: usize) -> Self {
        DensePoly {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n_vars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(n_vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; n_vars]), c);
        }
        p
    }

    pub fn var(n_vars: usize, i: usize) -> Self {
        assert!(i < n_vars);
        let mut exps = vec![0; n_vars];
        exps[i] = 1;
        let mut p = Self::zero(n_vars);
        p.terms.insert(Monomial(exps), BigInt::one());
        p
    }

    /// x_0 + x_1 + ... + x_{count-1}.
    pub fn prefix_sum(n_vars: usize, count: usize) -> Self {
        let mut p = Self::zero(n_vars);
        for i in 0..count {
            let mut exps = vec![0; n_vars];
            exps[i] = 1;
            p.terms.insert(Monomial(exps), BigInt::one());
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: &BigInt) {
        assert_eq!(exps.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(Monomial(exps)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, other: &DensePoly) {
        for (m, c) in &other.terms {
            self.add_term(m.0.clone(), c);
        }
    }

    pub fn scale(&mut self, c: &BigInt) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for v in self.terms.values_mut() {
            *v *= c;
        }
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        assert_eq!(self.n_vars, other.n_vars);
        let mut out = DensePoly::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let exps: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(exps, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> DensePoly {
        let mut out = DensePoly::constant(self.n_vars, 1);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// The polynomial with variables i and j exchanged.
    pub fn swap_vars(&self, i: usize, j: usize) -> DensePoly {
        let mut out = DensePoly::zero(self.n_vars);
        for (m, c) in &self.terms {
            let mut exps = m.0.clone();
            exps.swap(i, j);
            out.add_term(exps, c);
        }
        out
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }
}

/// A substitution point for the permutation sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalPoint(pub Vec<i64>);

impl EvalPoint {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("evaluation point must be nonempty"));
        }
        Ok(EvalPoint(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_distinct(&self) -> bool {
        let mut sorted = self.0.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }
}

/// Visit every permutation of `items` together with its sign, via Heap's
/// algorithm (one transposition per step, so the sign just alternates with
/// each swap).
pub fn for_each_permutation_signed<T: Copy>(items: &mut [T], mut f: impl FnMut(&[T], i64)) {
    let n = items.len();
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    f(items, sign);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            sign = -sign;
            f(items, sign);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Full symbolic expansion of the (n, u, v) polynomial: the signed sum over
/// all n! variable orders of the product of prefix-sum powers times the
/// total-sum power.
pub fn expand_q(spec: PolySpec) -> Result<DensePoly> {
    expand_q_with_cap(spec, DEFAULT_EXPAND_CAP)
}

pub fn expand_q_with_cap(spec: PolySpec, n_cap: u32) -> Result<DensePoly> {
    if spec.n > n_cap {
        return Err(Error::capacity("expand_q variable count", u64::from(n_cap)));
    }
    let n = spec.n as usize;
    if n == 1 {
        let mut p = DensePoly::zero(1);
        p.add_term(vec![spec.v], &BigInt::one());
        return Ok(p);
    }
    let total_pow = DensePoly::prefix_sum(n, n).pow(spec.v);
    let mut acc = DensePoly::zero(n);
    let mut order: Vec<usize> = (0..n).collect();
    for_each_permutation_signed(&mut order, |perm, sign| {
        let mut term = DensePoly::constant(n, 1);
        let mut prefix = DensePoly::zero(n);
        for &var in &perm[..n - 1] {
            prefix.add_term(
                {
                    let mut e = vec![0; n];
                    e[var] = 1;
                    e
                },
                &BigInt::one(),
            );
            term = term.mul(&prefix.pow(spec.u));
        }
        term = term.mul(&total_pow);
        term.scale(&BigInt::from(sign));
        acc.add_assign(&term);
    });
    Ok(acc)
}

/// Exact value of the Vandermonde product over ordered pairs of coordinates.
pub fn eval_vandermonde(point: &EvalPoint) -> BigInt {
    let coords = point.coords();
    let mut acc = BigInt::one();
    for i in 0..coords.len() {
        for j in (i + 1)..coords.len() {
            acc *= BigInt::from(coords[j] - coords[i]);
        }
    }
    acc
}

// Product of small factors, batched through i128 so BigInt multiplications
// are rare. |factors| must stay below 2^50 or so for the batching bound.
fn product_batched(factors: impl Iterator<Item = i64>) -> BigInt {
    const LIMIT: i128 = 1 << 63;
    let mut big = BigInt::one();
    let mut acc: i128 = 1;
    for f in factors {
        if f == 0 {
            return BigInt::zero();
        }
        acc *= i128::from(f);
        if acc.abs() >= LIMIT {
            big *= acc;
            acc = 1;
        }
    }
    big * acc
}

fn factorial_capped(k: u32, cap: u32) -> Result<()> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > cap {
        return Err(Error::capacity("permutation-sum k", u64::from(cap)));
    }
    Ok(())
}

// Signed permutation sum over all orders of `values`, with the per-order
// contribution computed from its prefix sums by `term`. Parallelized over the
// first element; the final reduction is in fixed branch order.
fn signed_permutation_sum(
    values: &[i64],
    term: impl Fn(&[i64]) -> BigInt + Sync,
) -> BigInt {
    let n = values.len();
    let branch_sums: Vec<BigInt> = (0..n)
        .into_par_iter()
        .map(|first| {
            // Sign of [values[first], rest...] relative to the identity order
            // is (-1)^first times the sign of the rest-permutation.
            let branch_sign = if first % 2 == 0 { 1 } else { -1 };
            let mut rest: Vec<i64> = values
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != first)
                .map(|(_, &v)| v)
                .collect();
            let mut sum = BigInt::zero();
            let mut prefixes = vec![0i64; n];
            for_each_permutation_signed(&mut rest, |perm, sign| {
                prefixes[0] = values[first];
                for (slot, &v) in perm.iter().enumerate() {
                    prefixes[slot + 1] = prefixes[slot] + v;
                }
                let mut t = term(&prefixes);
                if sign * branch_sign < 0 {
                    t = -t;
                }
                sum += t;
            });
            sum
        })
        .collect();
    let mut total = BigInt::zero();
    for s in branch_sums {
        total += s;
    }
    total
}

/// The alternating permutation sum of the mined prefix products: for each
/// order of the point's coordinates, the product over prefix lengths
/// 1..2k-1 and mines m of (prefix - m), signed by the permutation.
pub fn eval_q_mines(k: u32, mines: &MineField, point: &EvalPoint) -> Result<BigInt> {
    eval_q_mines_with_cap(k, mines, point, DEFAULT_EVAL_K_CAP)
}

pub fn eval_q_mines_with_cap(
    k: u32,
    mines: &MineField,
    point: &EvalPoint,
    k_cap: u32,
) -> Result<BigInt> {
    factorial_capped(k, k_cap)?;
    if mines.len() != k as usize {
        return Err(Error::invalid(format!(
            "mine set must have exactly k = {k} elements, got {}",
            mines.len()
        )));
    }
    let n = 2 * k as usize;
    if point.coords().len() != n {
        return Err(Error::invalid(format!(
            "point must have 2k = {n} coordinates, got {}",
            point.coords().len()
        )));
    }
    let mine_vals: Vec<i64> = mines.iter().collect();
    Ok(signed_permutation_sum(point.coords(), |prefixes| {
        product_batched(
            prefixes[..n - 1]
                .iter()
                .flat_map(|&p| mine_vals.iter().map(move |&m| p - m)),
        )
    }))
}

// The canonical mine-free sum: all mines replaced by 0, i.e. each proper
// prefix raised to the k-th power.
fn eval_q_zero(k: u32, point: &EvalPoint) -> BigInt {
    let n = 2 * k as usize;
    signed_permutation_sum(point.coords(), |prefixes| {
        product_batched(
            prefixes[..n - 1]
                .iter()
                .flat_map(|&p| std::iter::repeat(p).take(k as usize)),
        )
    })
}

/// c_k recovered by evaluating the permutation sum at one distinct-coordinate
/// point and dividing out the signed Vandermonde value. The division must be
/// exact; a remainder indicates a bug and is reported as an internal error.
pub fn ck_via_evaluation(k: u32) -> Result<BigInt> {
    ck_via_evaluation_with_cap(k, DEFAULT_EVAL_K_CAP)
}

pub fn ck_via_evaluation_with_cap(k: u32, k_cap: u32) -> Result<BigInt> {
    factorial_capped(k, k_cap)?;
    let point = EvalPoint::new((1..=2 * i64::from(k)).collect())?;
    ck_via_evaluation_at(k, &point, k_cap)
}

pub fn ck_via_evaluation_at(k: u32, point: &EvalPoint, k_cap: u32) -> Result<BigInt> {
    factorial_capped(k, k_cap)?;
    if point.coords().len() != 2 * k as usize {
        return Err(Error::invalid("point must have 2k coordinates"));
    }
    if !point.is_distinct() {
        return Err(Error::invalid("point coordinates must be pairwise distinct"));
    }
    let q_value = eval_q_zero(k, point);
    let mut v_value = eval_vandermonde(point);
    if k % 2 == 1 {
        v_value = -v_value;
    }
    let (quot, rem) = q_value.div_rem(&v_value);
    if !rem.is_zero() {
        return Err(Error::Internal(format!(
            "permutation sum not divisible by signed Vandermonde at {:?}",
            point.coords()
        )));
    }
    Ok(quot)
}

/// Coefficient of x_1^{2k-1}...x_{2k}^{2k-1} in the Vandermonde polynomial
/// times the mined prefix products with all mines at 0 (the nonvanishing
/// certificate of the grid argument). Full symbolic expansion; tiny k only.
pub fn nullstellensatz_coefficient(k: u32) -> Result<BigInt> {
    nullstellensatz_coefficient_with_cap(k, DEFAULT_NULLSTELLENSATZ_K_CAP)
}

pub fn nullstellensatz_coefficient_with_cap(k: u32, k_cap: u32) -> Result<BigInt> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    if k > k_cap {
        return Err(Error::capacity("nullstellensatz k", u64::from(k_cap)));
    }
    let n = 2 * k as usize;
    let mut p = vandermonde_poly(n);
    for ell in 1..n {
        p = p.mul(&DensePoly::prefix_sum(n, ell).pow(k));
    }
    Ok(p.coefficient(&vec![2 * k - 1; n]))
}

/// Product of (x_j - x_i) over i < j, expanded.
pub fn vandermonde_poly(n: usize) -> DensePoly {
    let mut p = DensePoly::constant(n, 1);
    for i in 0..n {
        for j in (i + 1)..n {
            let mut factor = DensePoly::var(n, j);
            let mut neg = DensePoly::var(n, i);
            neg.scale(&BigInt::from(-1));
            factor.add_assign(&neg);
            p = p.mul(&factor);
        }
    }
    p
}
