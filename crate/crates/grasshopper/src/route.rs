//! Exact decision and construction for signed-jump instances.
//!
//! The search collapses the n! orders to the subset lattice: after using a
//! set S of jumps the grasshopper stands at sum(S) no matter the internal
//! order, so a safe order exists iff there is a chain of subsets growing one
//! jump at a time whose proper-subset sums all avoid the mines. The full-set
//! sum is exempt: only the first n-1 partial sums are guarded.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::InstanceDoc;

/// Default cap on n for the subset DP (memory is 2^n states).
pub const DEFAULT_SUBSET_CAP: u32 = 24;
/// Cap on n for full n!-order enumeration.
pub const EXHAUSTIVE_CAP: u32 = 8;

/// The jump lengths: pairwise distinct integers, with 0 admitted only when
/// the instance opts in to "hops".
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JumpMultiset {
    jumps: Vec<i64>,
    allow_zero: bool,
}

impl JumpMultiset {
    pub fn new(jumps: Vec<i64>, allow_zero: bool) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &j in &jumps {
            if !seen.insert(j) {
                return Err(Error::invalid(format!("duplicate jump {j}")));
            }
            if j == 0 && !allow_zero {
                return Err(Error::invalid("jump 0 requires allow_zero"));
            }
        }
        Ok(JumpMultiset { jumps, allow_zero })
    }

    pub fn jumps(&self) -> &[i64] {
        &self.jumps
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn allows_zero(&self) -> bool {
        self.allow_zero
    }

    pub fn contains_zero(&self) -> bool {
        self.jumps.contains(&0)
    }
}

/// The forbidden landing points.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MineField {
    mines: BTreeSet<i64>,
}

impl MineField {
    pub fn new(mines: impl IntoIterator<Item = i64>) -> Self {
        MineField {
            mines: mines.into_iter().collect(),
        }
    }

    pub fn contains(&self, p: i64) -> bool {
        self.mines.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.mines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mines.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.mines.iter().copied()
    }

    pub fn without(&self, m: i64) -> MineField {
        let mut mines = self.mines.clone();
        mines.remove(&m);
        MineField { mines }
    }
}

/// A jump order together with its guarded partial sums (lengths 1..n-1).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Route {
    pub order: Vec<i64>,
    pub prefix_sums: Vec<i64>,
}

impl Route {
    pub fn from_order(order: Vec<i64>) -> Self {
        let mut prefix_sums = Vec::with_capacity(order.len().saturating_sub(1));
        let mut acc = 0i64;
        for &j in order.iter().take(order.len().saturating_sub(1)) {
            acc += j;
            prefix_sums.push(acc);
        }
        Route { order, prefix_sums }
    }

    /// Checks the full route invariant against an instance: permutation of
    /// the jumps, consistent partial sums, every guarded sum off the mines.
    pub fn is_valid_for(&self, jumps: &JumpMultiset, mines: &MineField) -> bool {
        let mut a: Vec<i64> = self.order.clone();
        let mut b: Vec<i64> = jumps.jumps().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return false;
        }
        let recomputed = Route::from_order(self.order.clone());
        if recomputed.prefix_sums != self.prefix_sums {
            return false;
        }
        self.prefix_sums.iter().all(|&s| !mines.contains(s))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Found(Route),
    Blocked,
}

impl Verdict {
    pub fn is_blocked(&self) -> bool {
        matches!(self, Verdict::Blocked)
    }

    pub fn route(&self) -> Option<&Route> {
        match self {
            Verdict::Found(r) => Some(r),
            Verdict::Blocked => None,
        }
    }
}

/// Finds a safe jump order, or proves none exists, by DP over the subset
/// lattice. Deterministic: predecessors are chosen by lowest jump index.
pub fn find_safe_order(jumps: &JumpMultiset, mines: &MineField) -> Result<Verdict> {
    find_safe_order_with_cap(jumps, mines, DEFAULT_SUBSET_CAP)
}

pub fn find_safe_order_with_cap(
    jumps: &JumpMultiset,
    mines: &MineField,
    cap: u32,
) -> Result<Verdict> {
    let n = jumps.len();
    if n == 0 {
        return Err(Error::invalid("instance must have at least one jump"));
    }
    if n > cap as usize {
        return Err(Error::capacity("subset-DP jump count", u64::from(cap)));
    }
    let vals = jumps.jumps();
    let size = 1usize << n;
    let full = size - 1;

    let mut sums = vec![0i64; size];
    let mut reachable = vec![false; size];
    let mut pred = vec![u8::MAX; size];
    reachable[0] = true;

    for mask in 1..size {
        let low = mask.trailing_zeros() as usize;
        sums[mask] = sums[mask & (mask - 1)] + vals[low];
        // Guarded states are the proper nonempty subsets.
        if mask != full && mines.contains(sums[mask]) {
            continue;
        }
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if reachable[mask & !(1 << i)] {
                reachable[mask] = true;
                pred[mask] = i as u8;
                break;
            }
        }
    }

    if !reachable[full] {
        return Ok(Verdict::Blocked);
    }
    let mut order = Vec::with_capacity(n);
    let mut mask = full;
    while mask != 0 {
        let i = pred[mask] as usize;
        order.push(vals[i]);
        mask &= !(1 << i);
    }
    order.reverse();
    Ok(Verdict::Found(Route::from_order(order)))
}

pub fn is_blocked(jumps: &JumpMultiset, mines: &MineField) -> Result<bool> {
    Ok(find_safe_order(jumps, mines)?.is_blocked())
}

/// Independent second implementation: try all n! orders. Test oracle for the
/// subset DP; refuses n beyond the factorial cap.
pub fn exhaustive_route(jumps: &JumpMultiset, mines: &MineField) -> Result<Option<Route>> {
    let n = jumps.len();
    if n > EXHAUSTIVE_CAP as usize {
        return Err(Error::capacity(
            "exhaustive enumeration jump count",
            u64::from(EXHAUSTIVE_CAP),
        ));
    }
    let mut vals = jumps.jumps().to_vec();
    vals.sort_unstable();
    let mut found: Option<Route> = None;
    crate::oracle::for_each_permutation_signed(&mut vals, |perm, _| {
        if found.is_some() {
            return;
        }
        let mut acc = 0i64;
        for &j in &perm[..n - 1] {
            acc += j;
            if mines.contains(acc) {
                return;
            }
        }
        found = Some(Route::from_order(perm.to_vec()));
    });
    Ok(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HopMode {
    Allowed,
    Prohibited,
}

/// The blocked family for a given n: mine fields one past the theorem bound
/// that stop every order. For even n the hop mode is irrelevant.
pub fn extremal_instance(n: u32, hops: HopMode) -> Result<(JumpMultiset, MineField)> {
    if n < 2 {
        return Err(Error::invalid("extremal instances start at n = 2"));
    }
    let (jumps, mines, allow_zero) = if n % 2 == 0 {
        let k = i64::from(n) / 2;
        let jumps: Vec<i64> = (-k + 1..=k + 1).filter(|&j| j != 0).collect();
        (jumps, (1..=k + 1).collect::<Vec<_>>(), false)
    } else {
        let k = i64::from(n - 1) / 2;
        match hops {
            HopMode::Allowed => {
                let jumps: Vec<i64> = (-k + 1..=k + 1).collect();
                (jumps, (1..=k + 1).collect(), true)
            }
            HopMode::Prohibited => {
                let jumps: Vec<i64> = (-k + 1..=k + 2).filter(|&j| j != 0).collect();
                (jumps, (1..=k + 2).collect(), false)
            }
        }
    };
    Ok((JumpMultiset::new(jumps, allow_zero)?, MineField::new(mines)))
}

/// The applicable mine-count bound: floor((n+1)/2) when every jump is
/// nonzero, floor(n/2) otherwise.
pub fn theorem_bound(jumps: &JumpMultiset) -> usize {
    let n = jumps.len();
    if jumps.contains_zero() {
        n / 2
    } else {
        (n + 1) / 2
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub mine_count: usize,
    pub all_nonzero: bool,
    pub bound: usize,
    pub bound_satisfied: bool,
    pub verdict: Verdict,
    /// Bound satisfied but no route found: must never happen.
    pub theorem_violation: bool,
}

pub fn verify_theorem_instance(jumps: &JumpMultiset, mines: &MineField) -> Result<VerificationReport> {
    let verdict = find_safe_order(jumps, mines)?;
    let bound = theorem_bound(jumps);
    let bound_satisfied = mines.len() <= bound;
    Ok(VerificationReport {
        n: jumps.len(),
        mine_count: mines.len(),
        all_nonzero: !jumps.contains_zero(),
        bound,
        bound_satisfied,
        theorem_violation: bound_satisfied && verdict.is_blocked(),
        verdict,
    })
}

/// Builds a route for an odd instance by the zero-insertion reduction: solve
/// the even instance with 0 added (or removed), then delete (or insert) the
/// hop. The insertion slot is between the first and second positions.
pub fn odd_reduction_route(jumps: &JumpMultiset, mines: &MineField) -> Result<Route> {
    let n = jumps.len();
    if n % 2 == 0 {
        return Err(Error::invalid("odd reduction requires an odd number of jumps"));
    }
    if mines.len() > theorem_bound(jumps) {
        return Err(Error::invalid(format!(
            "mine count {} exceeds the bound {} for this instance",
            mines.len(),
            theorem_bound(jumps)
        )));
    }
    if n == 1 {
        return Ok(Route::from_order(jumps.jumps().to_vec()));
    }

    if jumps.contains_zero() {
        let rest: Vec<i64> = jumps.jumps().iter().copied().filter(|&j| j != 0).collect();
        let even = JumpMultiset::new(rest, false)?;
        match find_safe_order(&even, mines)? {
            Verdict::Found(route) => {
                let mut order = route.order;
                order.insert(1, 0);
                Ok(Route::from_order(order))
            }
            Verdict::Blocked => Err(Error::TheoremViolation(format!(
                "even subinstance within bound came back blocked: jumps {:?}, mines {:?}",
                even.jumps(),
                mines.iter().collect::<Vec<_>>()
            ))),
        }
    } else {
        let mut extended = jumps.jumps().to_vec();
        extended.push(0);
        let even = JumpMultiset::new(extended, true)?;
        match find_safe_order(&even, mines)? {
            Verdict::Found(route) => {
                let order: Vec<i64> = route.order.into_iter().filter(|&j| j != 0).collect();
                Ok(Route::from_order(order))
            }
            Verdict::Blocked => Err(Error::TheoremViolation(format!(
                "zero-extended instance within bound came back blocked: jumps {:?}, mines {:?}",
                even.jumps(),
                mines.iter().collect::<Vec<_>>()
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignConfig {
    pub trials: u64,
    pub n_min: u32,
    pub n_max: u32,
    pub jump_min: i64,
    pub jump_max: i64,
    /// When true, an instance may include the hop 0.
    pub allow_zero: bool,
    pub seed: u64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            trials: 10_000,
            n_min: 2,
            n_max: 12,
            jump_min: -20,
            jump_max: 20,
            allow_zero: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CampaignStats {
    pub trials_run: u64,
    pub routes_found: u64,
    pub violations: u64,
    /// First bound-satisfying instance that came back blocked, serialized as
    /// an instance document. Always None unless the theorem is wrong or the
    /// solver is buggy.
    pub first_violation: Option<InstanceDoc>,
}

fn campaign_trial(config: &CampaignConfig, trial: u64) -> Result<(bool, JumpMultiset, MineField)> {
    // Independent stream per trial so the campaign parallelizes
    // deterministically.
    let mut rng = ChaCha8Rng::seed_from_u64(
        config
            .seed
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(trial),
    );
    let n = rng.gen_range(config.n_min..=config.n_max) as usize;
    let with_zero = config.allow_zero && rng.gen_bool(0.5);

    let mut pool: Vec<i64> = (config.jump_min..=config.jump_max)
        .filter(|&v| v != 0 || with_zero)
        .collect();
    if pool.len() < n {
        return Err(Error::invalid("jump range too small for requested n"));
    }
    let mut jumps = Vec::with_capacity(n);
    if with_zero {
        jumps.push(0);
        pool.retain(|&v| v != 0);
    }
    while jumps.len() < n {
        let idx = rng.gen_range(0..pool.len());
        jumps.push(pool.swap_remove(idx));
    }
    let jumps = JumpMultiset::new(jumps, with_zero)?;

    // Mines at the exact bound, drawn from the achievable prefix-sum range so
    // they are never trivially out of reach.
    let bound = theorem_bound(&jumps);
    let lo: i64 = jumps.jumps().iter().filter(|&&j| j < 0).sum();
    let hi: i64 = jumps.jumps().iter().filter(|&&j| j > 0).sum();
    let mut mines = BTreeSet::new();
    while mines.len() < bound {
        mines.insert(rng.gen_range(lo..=hi));
    }
    let mines = MineField::new(mines);

    let report = verify_theorem_instance(&jumps, &mines)?;
    Ok((report.theorem_violation, jumps, mines))
}

/// Random stress test at the exact theorem bound. Any blocked verdict is a
/// violation and aborts the campaign with the instance serialized.
pub fn random_campaign(config: &CampaignConfig) -> Result<CampaignStats> {
    if config.n_min < 2 || config.n_min > config.n_max {
        return Err(Error::invalid("campaign requires 2 <= n_min <= n_max"));
    }
    let outcomes: Vec<Result<(bool, JumpMultiset, MineField)>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| campaign_trial(config, trial))
        .collect();

    let mut stats = CampaignStats {
        trials_run: 0,
        routes_found: 0,
        violations: 0,
        first_violation: None,
    };
    for outcome in outcomes {
        let (violation, jumps, mines) = outcome?;
        stats.trials_run += 1;
        if violation {
            stats.violations += 1;
            if stats.first_violation.is_none() {
                stats.first_violation = Some(InstanceDoc::from_integers(
                    jumps.jumps(),
                    &mines.iter().collect::<Vec<_>>(),
                ));
            }
            break;
        }
        stats.routes_found += 1;
    }
    Ok(stats)
}
