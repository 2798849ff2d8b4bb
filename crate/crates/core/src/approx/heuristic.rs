//! Seeded local search for a good inner matroid on ground sets too large
//! for enumeration.
//!
//! The search runs in two phases. The first moves over partition matroids
//! (blocks with capacities, the rest loops), which covers the trivial
//! starting points and most useful inner matroids. The second polishes the
//! best partition matroid with general moves on the basis family: add,
//! remove or swap a basis subject to basis exchange, truncate, free or
//! coloop extension by a loop, and turning an element into a loop.
//!
//! The score is `ρ` first and the mean of `r_M(S)/|S|` over `O` second, so
//! sideways moves that raise the rank of many members are preferred.

use alloc::vec::Vec;

use rand::Rng;

use super::{nonempty_members, ratio_sum_scaled, rho_of_bases, AcceptableSet, Frac};
use crate::error::{Error, Result};
use crate::instances::rng;
use crate::mask::Mask;
use crate::matroid::{check_basis_exchange, k_subsets, Matroid};
use crate::rational::Rational;
use crate::setfamily::{maximal_elements, IndependenceSystem, SetFamily};

/// Default number of proposed moves.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Candidate matroids with more bases than this are skipped.
const BASIS_LIMIT: u64 = 4096;

/// Probability `1/WORSE_ODDS` of accepting a worse move.
const WORSE_ODDS: u32 = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeuristicResult {
    /// `ρ` of the returned matroid, a lower bound on `ρ^M`.
    pub rho: Rational,
    pub matroid: Matroid,
    pub argmin: Mask,
    /// `ρ` of the best trivial candidate the search started from.
    pub start_rho: Rational,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Score {
    rho: Frac,
    mean: u128,
}

struct Scorer<'a> {
    o: &'a AcceptableSet,
    members: Vec<Mask>,
    scale: u128,
}

impl Scorer<'_> {
    fn score(&self, bases: &[Mask]) -> Score {
        let (rho, _) = rho_of_bases(bases, self.o).expect("nonempty acceptable set");
        Score {
            rho,
            mean: ratio_sum_scaled(bases, &self.members, self.scale),
        }
    }
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Blocks with capacities; elements outside every block are loops.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Partition {
    blocks: Vec<(Mask, usize)>,
}

impl Partition {
    fn basis_count(&self) -> u64 {
        self.blocks
            .iter()
            .fold(1u64, |acc, &(b, k)| acc.saturating_mul(binomial(b.len(), k)))
    }

    fn bases(&self) -> Option<Vec<Mask>> {
        if self.basis_count() > BASIS_LIMIT {
            return None;
        }
        let mut bases = alloc::vec![Mask::EMPTY];
        for &(block, k) in &self.blocks {
            let parts = k_subsets(block, k);
            bases = bases
                .iter()
                .flat_map(|b| parts.iter().map(move |p| b.union(*p)))
                .collect();
        }
        bases.sort_unstable();
        Some(bases)
    }

    fn normalize(&mut self) {
        self.blocks.retain(|(b, _)| !b.is_empty());
        for (b, k) in &mut self.blocks {
            *k = (*k).clamp(1, b.len());
        }
        self.blocks.sort();
    }

    fn remove(&mut self, e: usize) {
        for (b, _) in &mut self.blocks {
            *b = b.without(e);
        }
    }
}

/// Inner bases of a partition matroid, or `None` if it is not inner or too large.
fn inner_bases(sys: &IndependenceSystem, p: &Partition) -> Option<Vec<Mask>> {
    let bases = p.bases()?;
    bases.iter().all(|&b| sys.contains(b)).then_some(bases)
}

/// The loop matroid and, for each `k`, a uniform matroid `U^k` on a set
/// grown greedily in element order while it stays inner.
fn trivial_candidates(sys: &IndependenceSystem) -> Vec<Partition> {
    let mut out = alloc::vec![Partition { blocks: Vec::new() }];
    let rank = sys.rank(sys.ground().full());
    for k in 1..=rank {
        let mut x = Mask::EMPTY;
        for e in 0..sys.n() {
            let grown = x.with(e);
            let p = Partition {
                blocks: alloc::vec![(grown, k.min(grown.len()))],
            };
            if inner_bases(sys, &p).is_some() {
                x = grown;
            }
        }
        if !x.is_empty() {
            out.push(Partition {
                blocks: alloc::vec![(x, k.min(x.len()))],
            });
        }
    }
    out
}

fn propose_partition(p: &Partition, n: usize, rng: &mut impl Rng) -> Partition {
    let mut q = p.clone();
    if !q.blocks.is_empty() && rng.gen_ratio(1, 5) {
        let i = rng.gen_range(0..q.blocks.len());
        let (b, k) = q.blocks[i];
        q.blocks[i].1 = if rng.gen_bool(0.5) { k + 1 } else { k.saturating_sub(1) }.clamp(1, b.len());
    } else {
        let e = rng.gen_range(0..n);
        q.remove(e);
        let target = rng.gen_range(0..q.blocks.len() + 2);
        if target < q.blocks.len() {
            q.blocks[target].0 = q.blocks[target].0.with(e);
        } else if target == q.blocks.len() {
            q.blocks.push((Mask::singleton(e), 1));
        }
    }
    q.normalize();
    q
}

/// A general move on a basis family; `None` when the move does not apply.
fn propose_bases(sys: &IndependenceSystem, bases: &[Mask], rng: &mut impl Rng) -> Option<Vec<Mask>> {
    let rank = bases[0].len();
    let support = bases.iter().fold(Mask::EMPTY, |a, b| a.union(*b));
    let full = sys.ground().full();
    let loops = full.difference(support);
    let pick = |m: Mask, rng: &mut dyn rand::RngCore| -> Option<usize> {
        let elems: Vec<usize> = m.iter().collect();
        (!elems.is_empty()).then(|| elems[rng.gen_range(0..elems.len())])
    };
    let mut next: Vec<Mask> = match rng.gen_range(0..7) {
        // Add, swap or remove a single basis.
        0..=2 => {
            let b = bases[rng.gen_range(0..bases.len())];
            let x = pick(b, rng);
            let y = pick(full.difference(b), rng);
            let mut next = bases.to_vec();
            match rng.gen_range(0..3) {
                0 if bases.len() > 1 => {
                    next.retain(|&c| c != b);
                }
                kind => {
                    let (x, y) = (x?, y?);
                    let c = b.without(x).with(y);
                    if !sys.contains(c) || bases.contains(&c) {
                        return None;
                    }
                    if kind == 1 {
                        next.retain(|&d| d != b);
                    }
                    next.push(c);
                }
            }
            next.sort_unstable();
            if !check_basis_exchange(&SetFamily::new(sys.ground(), next.clone()).ok()?) {
                return None;
            }
            return Some(next);
        }
        // Truncate.
        3 => {
            if rank == 0 {
                return None;
            }
            bases.iter().flat_map(|b| b.iter().map(move |e| b.without(e))).collect()
        }
        // Free extension by a loop.
        4 => {
            let e = pick(loops, rng)?;
            let mut next = bases.to_vec();
            if rank > 0 {
                for b in bases {
                    for x in b.iter() {
                        next.push(b.without(x).with(e));
                    }
                }
            }
            next
        }
        // Coloop extension by a loop.
        5 => {
            let e = pick(loops, rng)?;
            bases.iter().map(|b| b.with(e)).collect()
        }
        // Turn a non-loop into a loop.
        _ => {
            let e = pick(support, rng)?;
            let avoid: Vec<Mask> = bases.iter().copied().filter(|b| !b.contains(e)).collect();
            if avoid.is_empty() {
                bases.iter().map(|b| b.without(e)).collect()
            } else {
                avoid
            }
        }
    };
    next.sort_unstable();
    next.dedup();
    let next = maximal_elements(next);
    if next.len() as u64 > BASIS_LIMIT || !next.iter().all(|&b| sys.contains(b)) {
        return None;
    }
    debug_assert!(check_basis_exchange(&SetFamily::new(sys.ground(), next.clone()).unwrap()));
    Some(next)
}

fn accept(new: Score, cur: Score, rng: &mut impl Rng) -> bool {
    new >= cur || rng.gen_ratio(1, WORSE_ODDS)
}

/// Local search for an inner matroid with large `ρ`; never worse than the
/// best trivial candidate. Deterministic for a given `seed` and `budget`.
pub fn rho_max_heuristic(
    sys: &IndependenceSystem,
    o: &AcceptableSet,
    budget: usize,
    seed: u64,
) -> Result<HeuristicResult> {
    let members = nonempty_members(o);
    if members.is_empty() {
        return Err(Error::EmptyAcceptableSet);
    }
    let scale = members
        .iter()
        .fold(1u128, |l, s| l / gcd(l, s.len() as u128) * s.len() as u128);
    let scorer = Scorer { o, members, scale };
    let mut rng = rng(seed);
    let n = sys.n();

    let mut best_p: Option<(Score, Partition, Vec<Mask>)> = None;
    for p in trivial_candidates(sys) {
        if let Some(bases) = inner_bases(sys, &p) {
            let s = scorer.score(&bases);
            if best_p.as_ref().is_none_or(|(bs, _, _)| s > *bs) {
                best_p = Some((s, p, bases));
            }
        }
    }
    let (start, start_p, start_bases) = best_p.expect("the loop matroid is inner");
    let start_rho = start.rho.to_rational();

    let (mut cur_s, mut cur_p) = (start, start_p);
    let (mut best_s, mut best_bases) = (start, start_bases);
    let phase_one = budget - budget / 4;
    if n > 0 {
        for _ in 0..phase_one {
            let q = propose_partition(&cur_p, n, &mut rng);
            let Some(bases) = inner_bases(sys, &q) else { continue };
            let s = scorer.score(&bases);
            if accept(s, cur_s, &mut rng) {
                cur_s = s;
                cur_p = q;
                if s > best_s {
                    best_s = s;
                    best_bases = bases;
                }
            }
        }
        let (mut cur_s, mut cur_b) = (best_s, best_bases.clone());
        for _ in phase_one..budget {
            let Some(bases) = propose_bases(sys, &cur_b, &mut rng) else { continue };
            let s = scorer.score(&bases);
            if accept(s, cur_s, &mut rng) {
                cur_s = s;
                cur_b = bases;
                if s > best_s {
                    best_s = s;
                    best_bases = cur_b.clone();
                }
            }
        }
    }

    let matroid = Matroid::from_bases_unchecked(sys.ground(), best_bases);
    let (rho, argmin) = rho_of_bases(matroid.bases(), o).expect("nonempty acceptable set");
    debug_assert_eq!(rho, best_s.rho);
    Ok(HeuristicResult {
        rho: rho.to_rational(),
        matroid,
        argmin,
        start_rho,
    })
}
