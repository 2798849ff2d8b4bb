//! Generators for the worked examples and for randomized test families.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::greedy::Weights;
use crate::mask::Mask;
use crate::matroid::{direct_sum, k_subsets, uniform, Matroid};
use crate::rational::{ratio, Rational};
use crate::setfamily::{GroundSet, IndependenceSystem, SetFamily};

/// Deterministic generator used by all seeded routines.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Union of `U^{k1}` on the first `e1` elements and `U^{k2}` on the next `e2`.
pub fn twin_peaks(e1: usize, k1: usize, e2: usize, k2: usize) -> Result<IndependenceSystem> {
    if !(k1 < e1 && e1 < k2 && k2 < e2) {
        return Err(Error::InvalidInput(alloc::format!(
            "twin peaks needs k1 < e1 < k2 < e2, got ({e1}, {k1}, {e2}, {k2})"
        )));
    }
    let ground = GroundSet::new(e1 + e2)?;
    let (m1, m2) = twin_peak_matroids(ground, e1, k1, k2);
    let mut gens = m1.bases().to_vec();
    gens.extend_from_slice(m2.bases());
    Ok(IndependenceSystem::from_generators(ground, gens))
}

/// The two uniform matroids whose union is the twin-peaks system.
pub fn twin_peak_matroids(ground: GroundSet, e1: usize, k1: usize, k2: usize) -> (Matroid, Matroid) {
    let first = Mask::full(e1);
    let second = ground.full().difference(first);
    (
        uniform(ground, first, k1).expect("k1 < e1"),
        uniform(ground, second, k2).expect("k2 < e2"),
    )
}

/// Stable sets of the path `1 - 2 - ... - n`.
pub fn path_stable_set(n: usize) -> Result<IndependenceSystem> {
    if n == 0 {
        return Err(Error::InvalidInput("path needs at least one vertex".into()));
    }
    let ground = GroundSet::new(n)?;
    // Maximal stable sets of a path: gaps of one or two vertices between
    // consecutive picks, starting at vertex 1 or 2 and ending at n-1 or n.
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Mask)> = vec![(0, Mask::singleton(0))];
    if n >= 2 {
        stack.push((1, Mask::singleton(1)));
    }
    while let Some((last, set)) = stack.pop() {
        if last + 2 >= n {
            out.push(set);
            continue;
        }
        stack.push((last + 2, set.with(last + 2)));
        if last + 3 < n {
            stack.push((last + 3, set.with(last + 3)));
        }
    }
    Ok(IndependenceSystem::from_generators(ground, out))
}

/// Matroid whose bases take `cap` elements from each block; elements in no
/// block are loops.
pub fn partition_matroid(ground: GroundSet, blocks: &[(Mask, usize)]) -> Result<Matroid> {
    let mut acc = Matroid::loops_only(ground);
    for &(block, cap) in blocks {
        acc = direct_sum(&acc, &uniform(ground, block, cap)?)?;
    }
    Ok(acc)
}

/// The two partition matroids (pairs `{1,2},{3,4},..` and `{2,3},{4,5},..`)
/// whose intersection is the stable-set system of the path.
pub fn path_partition_matroids(n: usize) -> Result<[Matroid; 2]> {
    let ground = GroundSet::new(n)?;
    let pairs = |start: usize| -> Vec<(Mask, usize)> {
        let mut blocks = Vec::new();
        let mut covered = Mask::EMPTY;
        let mut i = start;
        while i + 1 < n {
            let b = Mask::singleton(i).with(i + 1);
            blocks.push((b, 1));
            covered = covered.union(b);
            i += 2;
        }
        for e in ground.full().difference(covered).iter() {
            blocks.push((Mask::singleton(e), 1));
        }
        blocks
    };
    Ok([
        partition_matroid(ground, &pairs(0))?,
        partition_matroid(ground, &pairs(1))?,
    ])
}

/// Sets independent in every given matroid.
pub fn matroid_intersection(ms: &[Matroid]) -> Result<IndependenceSystem> {
    let first = ms
        .first()
        .ok_or_else(|| Error::InvalidInput("need at least one matroid".into()))?;
    let ground = first.ground();
    for m in ms {
        if m.ground() != ground {
            return Err(Error::GroundMismatch {
                left: ground.len(),
                right: m.ground().len(),
            });
        }
    }
    let common: Vec<Mask> = first
        .system()
        .independent_sets()
        .into_iter()
        .filter(|&s| ms[1..].iter().all(|m| m.contains(s)))
        .collect();
    Ok(IndependenceSystem::from_generators(ground, common))
}

/// A random partition matroid: random blocks with capacities in `1..=|block|`.
pub fn random_partition_matroid(n: usize, blocks: usize, rng: &mut impl Rng) -> Result<Matroid> {
    let ground = GroundSet::new(n)?;
    let blocks = blocks.max(1);
    let mut parts = vec![Mask::EMPTY; blocks];
    for e in 0..n {
        let b = rng.gen_range(0..blocks);
        parts[b] = parts[b].with(e);
    }
    let spec: Vec<(Mask, usize)> = parts
        .into_iter()
        .filter(|p| !p.is_empty())
        .map(|p| {
            let cap = rng.gen_range(1..=p.len());
            (p, cap)
        })
        .collect();
    partition_matroid(ground, &spec)
}

/// Probability given as `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    pub num: u32,
    pub den: u32,
}

impl Density {
    pub fn new(num: u32, den: u32) -> Result<Density> {
        if den == 0 || num > den {
            return Err(Error::InvalidInput(alloc::format!(
                "density {num}/{den} is not in [0, 1]"
            )));
        }
        Ok(Density { num, den })
    }

    fn hit(self, rng: &mut impl Rng) -> bool {
        rng.gen_range(0..self.den) < self.num
    }

    /// A trial that succeeds with probability `density^k`.
    fn hit_pow(self, k: usize, rng: &mut impl Rng) -> bool {
        (0..k).all(|_| self.hit(rng))
    }
}

/// Random independence system on `n <= 12` elements.
///
/// Each subset `S` with `|S| >= 2` becomes a generator with probability
/// `density^(|S|-1)`; every singleton is a generator, so the result is
/// normal. With `allow_loops`, singletons are drawn with probability
/// `density` as well.
pub fn random_hereditary(n: usize, density: Density, seed: u64, allow_loops: bool) -> Result<IndependenceSystem> {
    if n > 12 {
        return Err(Error::Capability {
            what: "random_hereditary",
            max: 12,
            n,
        });
    }
    let ground = GroundSet::new(n)?;
    let mut rng = rng(seed);
    let mut gens = Vec::new();
    for s in ground.all_subsets().skip(1) {
        let take = match (s.len(), allow_loops) {
            (1, false) => true,
            (1, true) => density.hit(&mut rng),
            (k, _) => density.hit_pow(k - 1, &mut rng),
        };
        if take {
            gens.push(s);
        }
    }
    Ok(IndependenceSystem::from_generators(ground, gens))
}

/// Every independence system on `n <= 5` elements, one per nonempty
/// antichain of maximal sets.
pub fn all_systems(n: usize) -> Result<Vec<IndependenceSystem>> {
    if n > 5 {
        return Err(Error::Capability {
            what: "exhaustive system enumeration",
            max: 5,
            n,
        });
    }
    let ground = GroundSet::new(n)?;
    let total = ground.subset_count() as u32;
    let mut out = Vec::new();
    let mut chosen: Vec<Mask> = Vec::new();
    // Masks are visited in ascending order, so a later mask can only be a
    // superset of an earlier one.
    fn walk(
        next: u32,
        total: u32,
        ground: GroundSet,
        chosen: &mut Vec<Mask>,
        out: &mut Vec<IndependenceSystem>,
    ) {
        if next == total {
            if !chosen.is_empty() {
                out.push(IndependenceSystem::from_generators(ground, chosen.clone()));
            }
            return;
        }
        let m = Mask(next);
        walk(next + 1, total, ground, chosen, out);
        if !chosen.iter().any(|c| c.is_subset_of(m)) {
            chosen.push(m);
            walk(next + 1, total, ground, chosen, out);
            chosen.pop();
        }
    }
    walk(0, total, ground, &mut chosen, &mut out);
    out.sort_by(|a, b| a.maximal_sets().cmp(b.maximal_sets()));
    Ok(out)
}

/// A random nonempty acceptable set: between one and four nonempty
/// independent sets of `sys`. Returns `None` if `sys` has no nonempty
/// independent set.
pub fn random_acceptable(sys: &IndependenceSystem, rng: &mut impl Rng) -> Option<SetFamily> {
    let pool: Vec<Mask> = sys.independent_sets().into_iter().filter(|s| !s.is_empty()).collect();
    if pool.is_empty() {
        return None;
    }
    let k = rng.gen_range(1..=pool.len().min(4));
    let picked: Vec<Mask> = pool.choose_multiple(rng, k).copied().collect();
    Some(SetFamily::new(sys.ground(), picked).expect("members come from the system"))
}

/// Random weights `a/b` with `a in 0..=max_num` and `b in 1..=max_den`.
pub fn random_weights(ground: GroundSet, max_num: u32, max_den: u32, rng: &mut impl Rng) -> Weights {
    let values = (0..ground.len())
        .map(|_| {
            let a = rng.gen_range(0..=max_num) as usize;
            let b = rng.gen_range(1..=max_den.max(1)) as usize;
            ratio(a, b)
        })
        .collect();
    Weights::new(ground, values).expect("nonnegative")
}

/// Every weight vector with entries in `0..=max` (`(max+1)^n` vectors).
pub fn all_small_weights(ground: GroundSet, max: u64) -> Vec<Weights> {
    let n = ground.len();
    let base = max + 1;
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let vals: Vec<u64> = (0..n)
                .map(|_| {
                    let d = code % base;
                    code /= base;
                    d
                })
                .collect();
            Weights::from_integers(ground, &vals).expect("nonnegative")
        })
        .collect()
}

/// Which acceptable family to use for the nine-vertex stable-set example.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StableSetReading {
    /// Stable sets of size exactly 4 meeting `{3,6,9}` at most once.
    Exactly4,
    /// Stable sets of size at most 4 meeting `{3,6,9}` at most once.
    AtMost4,
}

/// Acceptable family of the nine-vertex path example.
pub fn path9_acceptable(reading: StableSetReading) -> SetFamily {
    let sys = path_stable_set(9).expect("valid");
    let every_third = Mask::from_labels(&[3, 6, 9]);
    let members = sys
        .independent_sets()
        .into_iter()
        .filter(|s| s.intersection(every_third).len() <= 1)
        .filter(|s| match reading {
            StableSetReading::Exactly4 => s.len() == 4,
            StableSetReading::AtMost4 => s.len() <= 4,
        })
        .collect();
    SetFamily::new(sys.ground(), members).expect("valid masks")
}

/// `U^1_{1,2} ⊕ U^1_{4,5} ⊕ U^1_{7,8}` on nine elements.
pub fn path9_block_matroid() -> Matroid {
    let ground = GroundSet::new(9).expect("valid");
    partition_matroid(
        ground,
        &[
            (Mask::from_labels(&[1, 2]), 1),
            (Mask::from_labels(&[4, 5]), 1),
            (Mask::from_labels(&[7, 8]), 1),
        ],
    )
    .expect("disjoint blocks")
}

/// Where an expected fixture value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Stated together with the worked example.
    Stated,
    /// Computed independently by enumeration.
    Derived,
    /// Follows directly from the definitions.
    Definitional,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub key: &'static str,
    pub value: Rational,
    pub origin: Origin,
}

/// A worked example: system, acceptable family, inner matroid and the
/// values it is known to produce.
#[derive(Clone, Debug)]
pub struct FixtureBundle {
    pub name: &'static str,
    pub sys: IndependenceSystem,
    pub acceptable: Option<SetFamily>,
    pub inner: Option<Matroid>,
    pub expected: Vec<Expected>,
}

impl FixtureBundle {
    pub fn expected(&self, key: &str) -> Option<&Rational> {
        self.expected.iter().find(|e| e.key == key).map(|e| &e.value)
    }
}

pub const FIXTURE_NAMES: [&str; 6] = ["ex1a", "ex1b", "ex1c", "ex6", "twinpeaks_2134", "stab9"];

fn exp(key: &'static str, value: Rational, origin: Origin) -> Expected {
    Expected { key, value, origin }
}

/// The worked examples by name.
///
/// Expected keys: `rho` (of the bundled inner matroid), `rho_dagger` (same,
/// over the downward closure), `rho_max`, `rho_max_zero_knowledge`
/// (acceptable set = all independent sets), `q`, `q_dagger` (quotient of the
/// closure system), `greedy_dagger_123` (greedy on the closure system
/// with weights `1_{1,2,3}`) and `rho_at_most_4`.
pub fn worked_example(name: &str) -> Result<FixtureBundle> {
    let lab = Mask::from_labels;
    let g4 = GroundSet::new(4)?;
    let one = || ratio(1, 1);
    let half = || ratio(1, 2);
    let ex1 = || IndependenceSystem::from_maximal(g4, vec![lab(&[1, 2]), lab(&[3, 4])]);
    let u14 = || uniform(g4, g4.full(), 1);
    let bundle = match name {
        "ex1a" => FixtureBundle {
            name: "ex1a",
            sys: ex1()?,
            acceptable: Some(SetFamily::new(g4, (0..4).map(Mask::singleton).collect())?),
            inner: Some(u14()?),
            expected: vec![
                exp("rho", one(), Origin::Stated),
                exp("rho_max", one(), Origin::Stated),
            ],
        },
        "ex1b" => FixtureBundle {
            name: "ex1b",
            sys: ex1()?,
            acceptable: Some(SetFamily::new(g4, vec![lab(&[1, 2]), lab(&[3, 4])])?),
            inner: Some(u14()?),
            expected: vec![
                exp("rho", half(), Origin::Stated),
                exp("rho_max", half(), Origin::Derived),
            ],
        },
        "ex1c" => FixtureBundle {
            name: "ex1c",
            sys: IndependenceSystem::from_maximal(
                g4,
                vec![lab(&[1, 2, 3]), lab(&[1, 4]), lab(&[2, 4]), lab(&[3, 4])],
            )?,
            acceptable: Some(SetFamily::new(g4, vec![lab(&[2, 3]), lab(&[3, 4])])?),
            inner: Some(uniform(g4, lab(&[2, 3, 4]), 2)?),
            expected: vec![
                exp("rho", one(), Origin::Stated),
                exp("rho_max", one(), Origin::Stated),
            ],
        },
        "ex6" => {
            let g6 = GroundSet::new(6)?;
            FixtureBundle {
                name: "ex6",
                sys: IndependenceSystem::from_maximal(
                    g6,
                    vec![lab(&[1, 2, 3, 4]), lab(&[3, 4, 5, 6])],
                )?,
                acceptable: Some(SetFamily::new(
                    g6,
                    vec![lab(&[1, 2, 3, 4]), lab(&[3, 4, 5, 6])],
                )?),
                inner: Some(uniform(g6, lab(&[1, 2, 3, 4]), 4)?),
                expected: vec![
                    exp("rho", half(), Origin::Stated),
                    exp("rho_dagger", ratio(0, 1), Origin::Stated),
                ],
            }
        }
        "twinpeaks_2134" => {
            let sys = twin_peaks(2, 1, 4, 3)?;
            let (_, m2) = twin_peak_matroids(sys.ground(), 2, 1, 3);
            let e2 = sys.ground().full().difference(Mask::full(2));
            FixtureBundle {
                name: "twinpeaks_2134",
                acceptable: Some(SetFamily::new(sys.ground(), k_subsets(e2, 3))?),
                inner: Some(m2),
                sys,
                expected: vec![
                    exp("q", ratio(1, 3), Origin::Stated),
                    exp("rho", one(), Origin::Stated),
                    exp("rho_max_zero_knowledge", ratio(1, 3), Origin::Stated),
                ],
            }
        }
        "stab9" => FixtureBundle {
            name: "stab9",
            sys: path_stable_set(9)?,
            acceptable: Some(path9_acceptable(StableSetReading::Exactly4)),
            inner: Some(path9_block_matroid()),
            expected: vec![
                exp("rho", ratio(3, 4), Origin::Stated),
                exp("q", half(), Origin::Derived),
                exp("q_dagger", ratio(1, 3), Origin::Derived),
                exp("greedy_dagger_123", half(), Origin::Stated),
                exp("rho_at_most_4", ratio(0, 1), Origin::Derived),
            ],
        },
        other => {
            return Err(Error::InvalidInput(alloc::format!(
                "unknown fixture {other:?}; known: {}",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    Ok(bundle)
}
