//! Exhaustive enumeration of inner matroids and the exact `ρ^M`.
//!
//! Inner matroids of rank `k` are exactly the nonempty families of
//! `k`-subsets, all independent in the host, that satisfy basis exchange.
//! The search walks the candidate `k`-sets in ascending order deciding
//! in/out for each and prunes as soon as an included pair can no longer be
//! repaired by the still-undecided candidates.

use alloc::vec::Vec;

use super::{rho_of_bases, AcceptableSet, Frac};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::matroid::{k_subsets, Matroid};
use crate::rational::Rational;
use crate::setfamily::IndependenceSystem;

/// Largest ground set for exhaustive enumeration.
pub const EXACT_MAX_N: usize = 6;

const UNUSED: u8 = 0;
const OPEN: u8 = 1;
const IN: u8 = 2;
const OUT: u8 = 3;

fn check_size(sys: &IndependenceSystem, what: &'static str) -> Result<()> {
    if sys.n() > EXACT_MAX_N {
        return Err(Error::Capability {
            what,
            max: EXACT_MAX_N,
            n: sys.n(),
        });
    }
    Ok(())
}

/// Calls `visit` once with the sorted basis list of every inner matroid, in
/// order of rank and then lexicographically by basis list.
pub fn for_each_inner_basis_family(sys: &IndependenceSystem, mut visit: impl FnMut(&[Mask])) -> Result<()> {
    check_size(sys, "exact inner-matroid enumeration")?;
    visit(&[Mask::EMPTY]);
    let indep = sys.independence_table();
    let rank = sys.rank(sys.ground().full());
    let mut found: Vec<Vec<Mask>> = Vec::new();
    for k in 1..=rank {
        let cands: Vec<Mask> = k_subsets(sys.ground().full(), k)
            .into_iter()
            .filter(|s| indep[s.bits() as usize])
            .collect();
        let mut search = Search {
            status: alloc::vec![UNUSED; sys.ground().subset_count()],
            included: Vec::new(),
            cands: &cands,
            out: &mut found,
        };
        for c in &cands {
            search.status[c.bits() as usize] = OPEN;
        }
        search.run(0);
        found.sort();
        for bases in found.drain(..) {
            visit(&bases);
        }
    }
    Ok(())
}

/// Every inner matroid exactly once, ordered by rank and then basis list.
pub fn enumerate_inner_matroids(sys: &IndependenceSystem) -> Result<Vec<Matroid>> {
    let mut out = Vec::new();
    for_each_inner_basis_family(sys, |bases| {
        out.push(Matroid::from_bases_unchecked(sys.ground(), bases.to_vec()));
    })?;
    Ok(out)
}

struct Search<'a> {
    status: Vec<u8>,
    included: Vec<Mask>,
    cands: &'a [Mask],
    out: &'a mut Vec<Vec<Mask>>,
}

impl Search<'_> {
    fn alive(&self, s: Mask) -> bool {
        matches!(self.status[s.bits() as usize], OPEN | IN)
    }

    /// For every `x ∈ b1 \ b2` some `y ∈ b2 \ b1` gives a live `b1 - x + y`.
    fn exchange_ok(&self, b1: Mask, b2: Mask) -> bool {
        let only2 = b2.difference(b1);
        b1.difference(b2).iter().all(|x| {
            let base = b1.without(x);
            only2.iter().any(|y| self.alive(base.with(y)))
        })
    }

    fn run(&mut self, idx: usize) {
        if idx == self.cands.len() {
            if !self.included.is_empty() {
                let mut bases = self.included.clone();
                bases.sort();
                self.out.push(bases);
            }
            return;
        }
        let c = self.cands[idx];
        let slot = c.bits() as usize;

        self.status[slot] = IN;
        let ok = self
            .included
            .iter()
            .all(|&b| self.exchange_ok(b, c) && self.exchange_ok(c, b));
        if ok {
            self.included.push(c);
            self.run(idx + 1);
            self.included.pop();
        }

        self.status[slot] = OUT;
        let ok = self.included.iter().all(|&b1| {
            (b1.bits() ^ c.bits()).count_ones() != 2
                || self.included.iter().all(|&b2| self.exchange_ok(b1, b2))
        });
        if ok {
            self.run(idx + 1);
        }
        self.status[slot] = OPEN;
    }
}

/// The exact maximum of `ρ` over inner matroids with one maximizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoMax {
    pub rho: Rational,
    /// Among maximizers: largest rank, then fewest independent sets, then
    /// the first in enumeration order.
    pub matroid: Matroid,
    /// Member of `O` attaining `ρ` for `matroid`.
    pub argmin: Mask,
    /// Number of inner matroids examined.
    pub examined: usize,
}

pub fn rho_max_exact(sys: &IndependenceSystem, o: &AcceptableSet) -> Result<RhoMax> {
    if o.nonempty().next().is_none() {
        return Err(Error::EmptyAcceptableSet);
    }
    check_size(sys, "exact substitutability index")?;
    // (ρ, rank, independent count, bases, argmin)
    let mut best: Option<(Frac, usize, usize, Vec<Mask>, Mask)> = None;
    let mut examined = 0usize;
    for_each_inner_basis_family(sys, |bases| {
        examined += 1;
        let (frac, argmin) = rho_of_bases(bases, o).expect("nonempty acceptable set");
        let rank = bases[0].len();
        let replace = match &best {
            None => true,
            Some((bf, br, bc, _, _)) => {
                if frac != *bf {
                    frac > *bf
                } else if rank != *br {
                    rank > *br
                } else {
                    independent_count(bases) < *bc
                }
            }
        };
        if replace {
            best = Some((frac, rank, independent_count(bases), bases.to_vec(), argmin));
        }
    })?;
    let (frac, _, _, bases, argmin) = best.expect("the loop matroid is always inner");
    Ok(RhoMax {
        rho: frac.to_rational(),
        matroid: Matroid::from_bases_unchecked(sys.ground(), bases),
        argmin,
        examined,
    })
}

fn independent_count(bases: &[Mask]) -> usize {
    let mut all: Vec<Mask> = bases.iter().flat_map(|b| b.subsets()).collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Whether some inner matroid contains every member of `O`, i.e. `ρ^M = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerfectMatroid {
    Exists(Matroid),
    /// No inner matroid contains `O`; the best attainable `ρ` is given.
    Absent { best: Rational },
}

pub fn exists_perfect_matroid(sys: &IndependenceSystem, o: &AcceptableSet) -> Result<PerfectMatroid> {
    let best = rho_max_exact(sys, o)?;
    if best.rho == crate::rational::ratio(1, 1) {
        debug_assert!(o.iter().all(|s| best.matroid.contains(s)));
        Ok(PerfectMatroid::Exists(best.matroid))
    } else {
        Ok(PerfectMatroid::Absent { best: best.rho })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{all_systems, worked_example};
    use crate::matroid::check_basis_exchange;
    use crate::rational::ratio;
    use crate::setfamily::{GroundSet, SetFamily};

    fn lab(l: &[usize]) -> Mask {
        Mask::from_labels(l)
    }

    /// Brute force: every antichain of equal-size independent sets that
    /// passes basis exchange.
    fn brute_force_count(sys: &IndependenceSystem) -> usize {
        let indep = sys.independence_table();
        let mut count = 1;
        for k in 1..=sys.n() {
            let cands: Vec<Mask> = k_subsets(sys.ground().full(), k)
                .into_iter()
                .filter(|s| indep[s.bits() as usize])
                .collect();
            assert!(cands.len() <= 20);
            for pick in 1u32..(1u32 << cands.len()) {
                let fam: Vec<Mask> = (0..cands.len())
                    .filter(|&i| pick >> i & 1 == 1)
                    .map(|i| cands[i])
                    .collect();
                if check_basis_exchange(&SetFamily::new(sys.ground(), fam).unwrap()) {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn labelled_matroid_counts() {
        // Labelled matroids on n points: 1, 2, 5, 16, 68, 406, 3807.
        let want = [1usize, 2, 5, 16, 68, 406, 3807];
        for (n, &w) in want.iter().enumerate() {
            let free = IndependenceSystem::free(GroundSet::new(n).unwrap());
            let all = enumerate_inner_matroids(&free).unwrap();
            assert_eq!(all.len(), w, "n = {n}");
        }
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_systems() {
        for n in 1..=4 {
            for sys in all_systems(n).unwrap().iter().step_by(if n == 4 { 7 } else { 1 }) {
                let all = enumerate_inner_matroids(sys).unwrap();
                assert_eq!(all.len(), brute_force_count(sys));
                for m in &all {
                    assert!(m.system().is_matroid());
                    assert!(m.is_inner(sys));
                }
                let mut keys: Vec<_> = all.iter().map(|m| m.bases().to_vec()).collect();
                keys.dedup();
                assert_eq!(keys.len(), all.len());
            }
        }
    }

    #[test]
    fn capability_limit() {
        let sys = IndependenceSystem::free(GroundSet::new(7).unwrap());
        assert!(enumerate_inner_matroids(&sys).unwrap_err().is_capability());
    }

    #[test]
    fn rho_max_on_fixtures() {
        for name in ["ex1a", "ex1b", "ex1c"] {
            let f = worked_example(name).unwrap();
            let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
            let got = rho_max_exact(&f.sys, &o).unwrap();
            assert_eq!(Some(&got.rho), f.expected("rho_max"), "{name}");
        }
        let f = worked_example("ex1c").unwrap();
        let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
        let got = rho_max_exact(&f.sys, &o).unwrap();
        assert_eq!(got.matroid.bases(), &[lab(&[2, 3]), lab(&[3, 4])]);
        assert_eq!(got.matroid.support(), lab(&[2, 3, 4]));
        assert!(matches!(
            exists_perfect_matroid(&f.sys, &o).unwrap(),
            PerfectMatroid::Exists(_)
        ));

        let f = worked_example("ex1b").unwrap();
        let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
        assert_eq!(
            exists_perfect_matroid(&f.sys, &o).unwrap(),
            PerfectMatroid::Absent { best: ratio(1, 2) }
        );
    }

    #[test]
    fn zero_knowledge_twin_peaks_equals_quotient() {
        let f = worked_example("twinpeaks_2134").unwrap();
        let o = AcceptableSet::all_independent(&f.sys);
        let got = rho_max_exact(&f.sys, &o).unwrap();
        assert_eq!(&got.rho, f.expected("rho_max_zero_knowledge").unwrap());
    }
}
