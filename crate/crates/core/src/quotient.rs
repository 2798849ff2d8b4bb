//! The rank quotient `q = min l(F)/r(F)`, the 0/1 weights on which greedy
//! attains it, and the circuit-count lower bound.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::greedy::{greedy_ratio, TieBreak, Weights};
use crate::mask::Mask;
use crate::rational::{ratio, Rational};
use crate::setfamily::IndependenceSystem;

/// The rank quotient with a minimizing set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientReport {
    pub q: Rational,
    /// Among minimizers: smallest cardinality, then smallest mask.
    pub witness: Mask,
    pub lower_rank: usize,
    pub rank: usize,
}

/// Exact rank quotient by scanning every subset of the ground set.
pub fn rank_quotient(sys: &IndependenceSystem) -> Result<QuotientReport> {
    // (l, r, |F|, F) of the best candidate; l/r compared by cross-multiplying.
    let mut best: Option<(usize, usize, Mask)> = None;
    for f in sys.ground().all_subsets() {
        let (l, r) = sys.rank_pair(f);
        if r == 0 {
            continue;
        }
        let better = match best {
            None => true,
            Some((bl, br, bf)) => {
                let (lhs, rhs) = (l * br, bl * r);
                lhs < rhs || (lhs == rhs && (f.len(), f) < (bf.len(), bf))
            }
        };
        if better {
            best = Some((l, r, f));
        }
    }
    let (l, r, witness) = best.ok_or(Error::UndefinedQuotient)?;
    Ok(QuotientReport {
        q: ratio(l, r),
        witness,
        lower_rank: l,
        rank: r,
    })
}

/// 0/1 weights and a tie-break on which greedy achieves exactly `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightWeights {
    pub weights: Weights,
    pub tie_break: TieBreak,
    pub ratio: Rational,
}

/// Weights `1_F` for the quotient witness `F`, scanning a smallest basis of
/// `F` first. Greedy then takes that basis, cannot add anything else from
/// `F`, and collects weight `l(F)` against an optimum of `r(F)`.
///
/// If the direct ordering does not reach `q` the orderings of the weight-1
/// elements are searched exhaustively.
pub fn tight_weights(sys: &IndependenceSystem) -> Result<TightWeights> {
    let report = rank_quotient(sys)?;
    let n = sys.n();
    let weights = Weights::indicator(sys.ground(), report.witness);
    let small_basis = sys
        .bases_of(report.witness)
        .iter()
        .filter(|b| b.len() == report.lower_rank)
        .min()
        .expect("witness has a basis of minimum size");

    let tb = TieBreak::front_loaded(n, small_basis);
    let r = greedy_ratio(sys, &weights, &tb)?;
    if r == report.q {
        return Ok(TightWeights {
            weights,
            tie_break: tb,
            ratio: r,
        });
    }

    let ones: Vec<usize> = report.witness.iter().collect();
    let mut perm = ones.clone();
    loop {
        let mut order = perm.clone();
        order.extend((0..n).filter(|&e| !report.witness.contains(e)));
        let tb = TieBreak::new(order)?;
        let r = greedy_ratio(sys, &weights, &tb)?;
        if r == report.q {
            return Ok(TightWeights {
                weights,
                tie_break: tb,
                ratio: r,
            });
        }
        if !next_permutation(&mut perm) {
            return Err(Error::NotFound);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The largest circuit count `p` over augmentations and the implied bound
/// `q >= 1/p` (1 when `p <= 1`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitBound {
    pub p: usize,
    pub bound: Rational,
}

pub fn circuit_bound(sys: &IndependenceSystem) -> CircuitBound {
    let p = sys.max_circuits_on_augment();
    CircuitBound {
        p,
        bound: if p <= 1 { ratio(1, 1) } else { ratio(1, p) },
    }
}
