//! Constructive solver for the positive-jumps problem: n distinct positive
//! jumps, at most n-1 mines, build a safe order by the two-case induction on
//! the largest jump. Real inputs are realized as exact rationals so every
//! comparison in the argument stays exact; there is no tolerance anywhere.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveInstance {
    jumps: Vec<BigRational>,
    mines: BTreeSet<BigRational>,
}

impl PositiveInstance {
    pub fn new(
        jumps: Vec<BigRational>,
        mines: impl IntoIterator<Item = BigRational>,
    ) -> Result<Self> {
        if jumps.is_empty() {
            return Err(Error::invalid("instance must have at least one jump"));
        }
        let mut seen = BTreeSet::new();
        for j in &jumps {
            if *j <= BigRational::zero() {
                return Err(Error::invalid(format!("jump {j} is not positive")));
            }
            if !seen.insert(j.clone()) {
                return Err(Error::invalid(format!("duplicate jump {j}")));
            }
        }
        let mines: BTreeSet<BigRational> = mines.into_iter().collect();
        if mines.len() > jumps.len() - 1 {
            return Err(Error::invalid(format!(
                "at most n-1 = {} mines allowed, got {}",
                jumps.len() - 1,
                mines.len()
            )));
        }
        Ok(PositiveInstance { jumps, mines })
    }

    pub fn from_integers(jumps: &[i64], mines: &[i64]) -> Result<Self> {
        PositiveInstance::new(
            jumps.iter().map(|&j| rat(j)).collect(),
            mines.iter().map(|&m| rat(m)),
        )
    }

    pub fn jumps(&self) -> &[BigRational] {
        &self.jumps
    }

    pub fn mines(&self) -> &BTreeSet<BigRational> {
        &self.mines
    }

    pub fn total(&self) -> BigRational {
        self.jumps.iter().sum()
    }
}

fn rat(v: i64) -> BigRational {
    BigRational::from(BigInt::from(v))
}

/// A jump order with its guarded partial sums (lengths 1..n-1), in exact
/// rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoute {
    pub order: Vec<BigRational>,
    pub prefix_sums: Vec<BigRational>,
}

impl PositiveRoute {
    fn from_order(order: Vec<BigRational>) -> Self {
        let mut prefix_sums = Vec::with_capacity(order.len().saturating_sub(1));
        let mut acc = BigRational::zero();
        for j in order.iter().take(order.len().saturating_sub(1)) {
            acc += j;
            prefix_sums.push(acc.clone());
        }
        PositiveRoute { order, prefix_sums }
    }

    pub fn is_valid_for(&self, instance: &PositiveInstance) -> bool {
        let mut a = self.order.clone();
        let mut b = instance.jumps.to_vec();
        a.sort();
        b.sort();
        a == b && self.prefix_sums.iter().all(|s| !instance.mines.contains(s))
    }
}

/// Pads the mine set to exactly n-1 mines with values strictly beyond the
/// total jump sum, which can never be hit by a partial sum.
pub fn pad_mines(instance: &PositiveInstance) -> PositiveInstance {
    let needed = instance.jumps.len() - 1;
    let mut mines = instance.mines.clone();
    let mut next = instance.total() + BigRational::from(BigInt::from(1));
    while mines.len() < needed {
        while mines.contains(&next) {
            next += BigRational::from(BigInt::from(1));
        }
        mines.insert(next.clone());
    }
    PositiveInstance {
        jumps: instance.jumps.clone(),
        mines,
    }
}

// One unwind step: how to splice the peeled-off largest jump back into the
// sub-route.
enum Splice {
    // Largest jump goes second: (j_1, a_n, j_2, ..., j_{n-1}).
    AfterFirst { largest: BigRational },
    // Largest jump goes right before the first sub-prefix reaching m_1.
    BeforeThreshold {
        largest: BigRational,
        threshold: BigRational,
    },
}

/// Builds a safe order for a positive instance by the largest-jump
/// induction, unrolled to a loop so deep instances cannot overflow the
/// stack.
pub fn positive_safe_order(instance: &PositiveInstance) -> Result<PositiveRoute> {
    let mut jumps = instance.jumps.to_vec();
    jumps.sort();
    let mut mines: Vec<BigRational> = instance.mines.iter().cloned().collect();

    let mut splices: Vec<Splice> = Vec::new();
    let mut order: Vec<BigRational>;

    loop {
        let n = jumps.len();
        if n == 1 {
            order = jumps;
            break;
        }

        // Pad to exactly n-1 mines and keep them sorted: m_1 < ... < m_{n-1}.
        let total: BigRational = jumps.iter().sum();
        {
            let existing: BTreeSet<&BigRational> = mines.iter().collect();
            let mut next = total.clone() + BigRational::from(BigInt::from(1));
            let mut padded = mines.clone();
            while padded.len() < n - 1 {
                while existing.contains(&next) {
                    next += BigRational::from(BigInt::from(1));
                }
                padded.push(next.clone());
                next += BigRational::from(BigInt::from(1));
            }
            padded.sort();
            mines = padded;
        }

        let largest = jumps.pop().unwrap();
        let rest_total = &total - &largest;
        let m1 = mines[0].clone();

        // If even the full sum of the remaining jumps stays below the lowest
        // mine, any order of them followed by the largest jump is safe.
        if rest_total < m1 {
            order = jumps;
            order.push(largest);
            break;
        }

        if let Some(pos) = mines.iter().position(|m| *m == largest) {
            // Case 1: the largest jump is itself a mine m_l. Keep the mines
            // below it, shift the mines above it down by the jump.
            let mut transformed: BTreeSet<BigRational> = mines[..pos].iter().cloned().collect();
            for m in &mines[pos + 1..] {
                transformed.insert(m - &largest);
            }
            mines = transformed.into_iter().collect();
            splices.push(Splice::AfterFirst { largest });
        } else {
            // Case 2: drop m_1, shift the rest down by the jump.
            let transformed: BTreeSet<BigRational> =
                mines[1..].iter().map(|m| m - &largest).collect();
            mines = transformed.into_iter().collect();
            splices.push(Splice::BeforeThreshold {
                largest,
                threshold: m1,
            });
        }
    }

    // Unwind, splicing each peeled jump back in.
    while let Some(splice) = splices.pop() {
        match splice {
            Splice::AfterFirst { largest } => {
                order.insert(1, largest);
            }
            Splice::BeforeThreshold { largest, threshold } => {
                let mut acc = BigRational::zero();
                let mut slot = order.len();
                for (i, j) in order.iter().enumerate() {
                    acc += j;
                    if acc >= threshold {
                        slot = i;
                        break;
                    }
                }
                debug_assert!(slot < order.len(), "threshold must be reachable");
                order.insert(slot, largest);
            }
        }
    }

    let route = PositiveRoute::from_order(order);
    if !route.is_valid_for(instance) {
        return Err(Error::Internal(format!(
            "constructed route fails validation for jumps {:?}",
            instance.jumps
        )));
    }
    Ok(route)
}
