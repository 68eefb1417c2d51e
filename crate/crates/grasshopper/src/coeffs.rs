//! Exact computation of the coefficients alpha of the alternating prefix-power
//! polynomials, and of the staircase constants c_k.
//!
//! The coefficient alpha for index (n, u, v) and a strictly decreasing
//! exponent sequence d_1 > ... > d_n >= 0 satisfies:
//!
//! * base case n = 1: the polynomial is x^v, so alpha = 1 iff d_1 = v;
//! * homogeneity: alpha = 0 unless sum(d) = (n-1)u + v;
//! * v = 0 reduction: alpha = 0 for d_n > 0, and for d_n = 0 it equals the
//!   coefficient at (n-1, u, u) indexed by the first n-1 parts;
//! * v >= 1: alpha is the sum over positions i of the coefficient at
//!   (n, u, v-1) with d_i decremented; a decrement that creates a tie or a
//!   negative part contributes 0.
//!
//! `alpha` runs the recurrence top-down with memoization. `ck` runs the same
//! recurrence as a level-by-level table sweep (only two levels live at a
//! time), which is what makes k around 10 reachable in memory.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ring::{CoeffRing, ExactRing};

/// Default cap on memo/table entries.
pub const DEFAULT_MEMO_CAP: usize = 50_000_000;
/// Default cap on enumerated partitions in `coefficient_table`.
pub const DEFAULT_TABLE_CAP: usize = 2_000_000;

/// The index triple (n, u, v) of a prefix-power polynomial: n variables,
/// every proper prefix sum raised to u, the total sum raised to v.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolySpec {
    pub n: u32,
    pub u: u32,
    pub v: u32,
}

impl PolySpec {
    pub fn new(n: u32, u: u32, v: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::invalid("n must be at least 1"));
        }
        Ok(PolySpec { n, u, v })
    }

    /// Total degree of the polynomial; every nonzero coefficient's exponent
    /// vector sums to this.
    pub fn degree(&self) -> u64 {
        u64::from(self.n - 1) * u64::from(self.u) + u64::from(self.v)
    }
}

/// A strictly decreasing sequence d_1 > ... > d_n >= 0 indexing a coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinctPartition {
    parts: Vec<u32>,
}

impl DistinctPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("partition must have at least one part"));
        }
        if !parts.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::invalid(format!(
                "parts must be strictly decreasing, got {parts:?}"
            )));
        }
        Ok(DistinctPartition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().map(|&p| u64::from(p)).sum()
    }

    /// The staircase (m-1, m-2, ..., 1, 0).
    pub fn staircase(m: u32) -> Self {
        DistinctPartition {
            parts: (0..m).rev().collect(),
        }
    }
}

/// All nonzero coefficients of one polynomial, keyed by exponent sequence.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub spec: PolySpec,
    pub entries: std::collections::BTreeMap<DistinctPartition, BigInt>,
}

/// Memoized alpha evaluator for a fixed u (one table per polynomial family).
/// Concurrent callers share the memo behind a mutex; results do not depend on
/// scheduling since every memo value is a pure function of its key.
pub struct AlphaTable {
    u: u32,
    cap: usize,
    memo: Mutex<HashMap<(u32, u32, Vec<u32>), BigInt>>,
}

impl AlphaTable {
    pub fn new(u: u32) -> Self {
        Self::with_cap(u, DEFAULT_MEMO_CAP)
    }

    pub fn with_cap(u: u32, cap: usize) -> Self {
        AlphaTable {
            u,
            cap,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    /// Coefficient of x_1^{d_1}...x_n^{d_n} in the (n, u, v) polynomial.
    pub fn alpha(&self, n: u32, v: u32, d: &DistinctPartition) -> Result<BigInt> {
        if d.len() != n as usize {
            return Err(Error::invalid(format!(
                "partition length {} does not match n = {n}",
                d.len()
            )));
        }
        self.eval(n, v, d.parts())
    }

    fn eval(&self, n: u32, v: u32, parts: &[u32]) -> Result<BigInt> {
        let spec = PolySpec { n, u: self.u, v };
        // Homogeneity short-circuit.
        if parts.iter().map(|&p| u64::from(p)).sum::<u64>() != spec.degree() {
            return Ok(BigInt::zero());
        }
        if n == 1 {
            // x^v; homogeneity already forced d_1 = v.
            return Ok(BigInt::from(1));
        }
        let key = (n, v, parts.to_vec());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }

        let value = if v == 0 {
            let last = *parts.last().unwrap();
            if last > 0 {
                BigInt::zero()
            } else {
                self.eval(n - 1, self.u, &parts[..parts.len() - 1])?
            }
        } else {
            let mut acc = BigInt::zero();
            let mut child = parts.to_vec();
            for i in 0..parts.len() {
                if parts[i] == 0 {
                    continue; // decrement would go negative
                }
                if i + 1 < parts.len() && parts[i] - 1 == parts[i + 1] {
                    continue; // tie: coefficient is 0
                }
                child[i] = parts[i] - 1;
                acc += self.eval(n, v - 1, &child)?;
                child[i] = parts[i];
            }
            acc
        };

        let mut memo = self.memo.lock().unwrap();
        if memo.len() >= self.cap {
            return Err(Error::capacity("alpha memo entries", self.cap as u64));
        }
        memo.insert(key, value.clone());
        Ok(value)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.lock().unwrap().len()
    }
}

/// One-shot alpha: coefficient of the monomial indexed by `d` in the
/// polynomial indexed by `spec`.
pub fn alpha(spec: PolySpec, d: &DistinctPartition) -> Result<BigInt> {
    AlphaTable::new(spec.u).alpha(spec.n, spec.v, d)
}

/// Full nonzero-coefficient table for one polynomial, cross-checkable entry
/// by entry against `alpha`. Guarded by a cap on the number of candidate
/// partitions enumerated.
pub fn coefficient_table(spec: PolySpec) -> Result<CoefficientTable> {
    coefficient_table_with_cap(spec, DEFAULT_TABLE_CAP)
}

pub fn coefficient_table_with_cap(spec: PolySpec, cap: usize) -> Result<CoefficientTable> {
    let mut entries = std::collections::BTreeMap::new();
    let table = AlphaTable::new(spec.u);
    let mut count = 0usize;
    for parts in distinct_partitions(spec.degree(), spec.n) {
        count += 1;
        if count > cap {
            return Err(Error::capacity("coefficient_table partitions", cap as u64));
        }
        let d = DistinctPartition { parts };
        let value = table.alpha(spec.n, spec.v, &d)?;
        if !value.is_zero() {
            entries.insert(d, value);
        }
    }
    Ok(CoefficientTable { spec, entries })
}

/// All strictly decreasing sequences of `n` nonnegative parts summing to
/// `total`, in lexicographic order of the part vectors.
pub fn distinct_partitions(total: u64, n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n as usize);
    fn recurse(remaining: u64, slots: u32, max_part: u64, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 0 {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        // Remaining slots must fit below the previous part: largest possible
        // tail sum with first part p is p + (p-1) + ... (slots terms).
        let s = u64::from(slots);
        let min_first = if remaining > 0 { (remaining + s - 1) / s } else { 0 };
        let mut p = remaining.min(max_part);
        loop {
            if p < min_first || p + 1 < s {
                break;
            }
            current.push(p as u32);
            recurse(remaining - p, slots - 1, p.saturating_sub(1), current, out);
            current.pop();
            if p == 0 {
                break;
            }
            p -= 1;
        }
    }
    recurse(total, n, total, &mut current, &mut out);
    out
}

/// The staircase constant c_k: the coefficient of the monomial
/// x_1^{2k-1} x_2^{2k-2} ... x_{2k}^0 in the (2k, k, 0) polynomial.
pub fn ck(k: u32) -> Result<BigInt> {
    ck_in(&ExactRing, k, DEFAULT_MEMO_CAP)
}

/// c_k over an arbitrary coefficient ring. The sweep visits the same table
/// keys regardless of the ring.
pub fn ck_in<R: CoeffRing>(ring: &R, k: u32, cap: usize) -> Result<R::Elem> {
    if k < 1 {
        return Err(Error::invalid("k must be at least 1"));
    }
    let u = k;
    let n_final = 2 * k;

    // Level table for (n, u, v), keyed by the exponent sequence. Start at
    // n = 1, v = u: the polynomial x^u.
    let mut level: HashMap<Vec<u32>, R::Elem> = HashMap::new();
    level.insert(vec![u], ring.one());

    for n in 2..=n_final {
        // (n-1, u, u) -> (n, u, 0): append a zero part. Entries whose last
        // part is already 0 would collide with the new part and carry
        // coefficient 0 at the larger n.
        let mut appended: HashMap<Vec<u32>, R::Elem> = HashMap::with_capacity(level.len());
        for (mut parts, value) in level.drain() {
            if *parts.last().unwrap() == 0 {
                continue;
            }
            parts.push(0);
            appended.insert(parts, value);
        }
        level = appended;

        // The final level is (2k, k, 0); intermediate ones continue to
        // (n, u, u) via u single-increment sweeps.
        let v_target = if n == n_final { 0 } else { u };
        for _ in 0..v_target {
            let mut next: HashMap<Vec<u32>, R::Elem> =
                HashMap::with_capacity(level.len() + level.len() / 2);
            for (parts, value) in level.iter() {
                for i in 0..parts.len() {
                    // Incrementing part i must keep the sequence strictly
                    // decreasing.
                    if i > 0 && parts[i - 1] <= parts[i] + 1 {
                        continue;
                    }
                    let mut bumped = parts.clone();
                    bumped[i] += 1;
                    match next.entry(bumped) {
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            ring.add_assign(e.get_mut(), value);
                        }
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(value.clone());
                        }
                    }
                }
            }
            if next.len() > cap {
                return Err(Error::capacity("ck level-table entries", cap as u64));
            }
            level = next;
        }
    }

    let staircase: Vec<u32> = (0..n_final).rev().collect();
    Ok(level.remove(&staircase).unwrap_or_else(|| ring.zero()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[u32]) -> DistinctPartition {
        DistinctPartition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn base_case_is_power() {
        for u in 0..4 {
            for v in 0..5 {
                let spec = PolySpec::new(1, u, v).unwrap();
                assert_eq!(alpha(spec, &part(&[v])).unwrap(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn c1_via_alpha() {
        let spec = PolySpec::new(2, 1, 0).unwrap();
        assert_eq!(alpha(spec, &part(&[1, 0])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn c2_via_alpha() {
        let spec = PolySpec::new(4, 2, 0).unwrap();
        assert_eq!(alpha(spec, &part(&[3, 2, 1, 0])).unwrap(), BigInt::from(2));
    }

    #[test]
    fn homogeneity_short_circuit() {
        let spec = PolySpec::new(2, 1, 0).unwrap();
        assert_eq!(alpha(spec, &part(&[2, 0])).unwrap(), BigInt::zero());
    }

    #[test]
    fn invalid_partition_rejected() {
        assert!(DistinctPartition::new(vec![2, 2]).is_err());
        assert!(DistinctPartition::new(vec![1, 3]).is_err());
        assert!(DistinctPartition::new(vec![]).is_err());
    }

    #[test]
    fn partition_length_must_match_n() {
        let spec = PolySpec::new(3, 1, 0).unwrap();
        assert!(alpha(spec, &part(&[1, 0])).is_err());
    }

    #[test]
    fn small_ck_values() {
        assert_eq!(ck(1).unwrap(), BigInt::from(1));
        assert_eq!(ck(2).unwrap(), BigInt::from(2));
        assert_eq!(ck(3).unwrap(), BigInt::from(90));
        assert_eq!(ck(4).unwrap(), BigInt::from(586_656));
    }

    #[test]
    fn ck_matches_alpha_route() {
        for k in 1..=3u32 {
            let spec = PolySpec::new(2 * k, k, 0).unwrap();
            let stair = DistinctPartition::staircase(2 * k);
            assert_eq!(ck(k).unwrap(), alpha(spec, &stair).unwrap());
        }
    }

    #[test]
    fn table_of_trivial_spec() {
        let table = coefficient_table(PolySpec::new(1, 0, 3).unwrap()).unwrap();
        assert_eq!(table.entries.len(), 1);
        assert_eq!(table.entries[&part(&[3])], BigInt::from(1));
    }

    #[test]
    fn table_of_c1_spec() {
        let table = coefficient_table(PolySpec::new(2, 1, 0).unwrap()).unwrap();
        assert_eq!(table.entries.len(), 1);
        assert_eq!(table.entries[&part(&[1, 0])], BigInt::from(1));
    }

    #[test]
    fn distinct_partition_enumeration() {
        // 5 into 3 distinct nonnegative parts: (5,?..) ... enumerate by hand:
        // (4,1,0), (3,2,0) and (5,0,?) invalid ... plus (2,?) none.
        let parts = distinct_partitions(5, 3);
        assert_eq!(parts, vec![vec![4, 1, 0], vec![3, 2, 0]]);
    }

    #[test]
    fn memo_cap_fires() {
        let table = AlphaTable::with_cap(3, 4);
        let stair = DistinctPartition::staircase(6);
        match table.alpha(6, 0, &stair) {
            Err(Error::Capacity { .. }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }

    #[test]
    fn ck_cap_fires() {
        match ck_in(&ExactRing, 4, 10) {
            Err(Error::Capacity { .. }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
    }
}
