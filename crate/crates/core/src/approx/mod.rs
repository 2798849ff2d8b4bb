//! Approximating an independence system from inside by a matroid.
//!
//! Given a host system `I`, an acceptable family `O ⊆ I` of sets believed to
//! contain the optimum, and an inner system `J ⊆ I`, the approximation
//! quality is
//!
//! ```text
//! ρ(I, O, J) = min over nonempty S ∈ O of  l_J(S) / |S|
//! ```
//!
//! and the substitutability index `ρ^M(I, O)` is its maximum over all inner
//! matroids. This module computes both exactly on small ground sets, searches
//! heuristically on larger ones, and exports the rank-reduction integer
//! program whose optimum is `ρ^M`.

mod enumerate;
mod heuristic;
mod ip;
mod milgrom;

pub use enumerate::{
    enumerate_inner_matroids, exists_perfect_matroid, for_each_inner_basis_family,
    rho_max_exact, PerfectMatroid, RhoMax, EXACT_MAX_N,
};
pub use heuristic::{rho_max_heuristic, HeuristicResult, DEFAULT_BUDGET};
pub use ip::{
    build_ip, export_ip, solve_ip_bruteforce, IpModel, IpSolution, Row, RowClass, Var,
    IP_BRUTE_FORCE_MAX_N, IP_MAX_N,
};
pub use milgrom::{in_w, verify_milgrom, MilgromReport, Violation};

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::matroid::Matroid;
use crate::rational::{ratio, Rational};
use crate::setfamily::{downward_closure, IndependenceSystem, SetFamily};

/// A nonempty family of independent sets of a host system. Not required to
/// be closed under subsets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AcceptableSet {
    sets: SetFamily,
}

impl AcceptableSet {
    pub fn new(host: &IndependenceSystem, sets: SetFamily) -> Result<AcceptableSet> {
        if sets.ground() != host.ground() {
            return Err(Error::GroundMismatch {
                left: host.n(),
                right: sets.ground().len(),
            });
        }
        if sets.is_empty() {
            return Err(Error::EmptyAcceptableSet);
        }
        if let Some(bad) = sets.iter().find(|&s| !host.contains(s)) {
            return Err(Error::InvalidAcceptableSet(bad));
        }
        Ok(AcceptableSet { sets })
    }

    /// Every independent set of `host`.
    pub fn all_independent(host: &IndependenceSystem) -> AcceptableSet {
        AcceptableSet {
            sets: SetFamily::from_sorted_unchecked(host.ground(), host.independent_sets()),
        }
    }

    /// The bases of `host`.
    pub fn bases(host: &IndependenceSystem) -> AcceptableSet {
        AcceptableSet {
            sets: host.maximal().clone(),
        }
    }

    /// The downward closure `O†`.
    pub fn dagger(&self) -> AcceptableSet {
        AcceptableSet {
            sets: downward_closure(&self.sets),
        }
    }

    /// `O†` as an independence system.
    pub fn closure_system(&self) -> IndependenceSystem {
        IndependenceSystem::hereditary_closure(&self.sets)
    }

    pub fn family(&self) -> &SetFamily {
        &self.sets
    }

    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.sets.iter()
    }

    pub fn nonempty(&self) -> impl Iterator<Item = Mask> + '_ {
        self.sets.iter().filter(|s| !s.is_empty())
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// `ρ` with the set attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoReport {
    pub rho: Rational,
    /// Minimizing member of `O`; ties go to the smallest cardinality, then mask.
    pub argmin: Mask,
    /// A smallest basis of `argmin` in the inner system.
    pub inner_basis: Mask,
}

/// A ratio `num / den` of small counts compared by cross-multiplication.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Frac {
    pub num: usize,
    pub den: usize,
}

impl Frac {
    pub fn new(num: usize, den: usize) -> Frac {
        debug_assert!(den > 0);
        Frac { num, den }
    }

    pub fn one() -> Frac {
        Frac { num: 1, den: 1 }
    }

    pub fn to_rational(self) -> Rational {
        ratio(self.num, self.den)
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Frac) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Frac) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

/// Picks the minimizing `(ratio, set)` with ties on smaller `|S|`, then mask.
fn argmin_ratio(items: impl Iterator<Item = (Frac, Mask)>) -> Option<(Frac, Mask)> {
    items.min_by(|(a, s), (b, t)| a.cmp(b).then(s.len().cmp(&t.len())).then(s.cmp(t)))
}

/// `ρ(I, O, J) = min over nonempty S ∈ O of l_J(S) / |S|`.
pub fn rho(sys: &IndependenceSystem, o: &AcceptableSet, inner: &IndependenceSystem) -> Result<RhoReport> {
    if inner.ground() != sys.ground() {
        return Err(Error::GroundMismatch {
            left: sys.n(),
            right: inner.n(),
        });
    }
    if let Some(&bad) = inner.maximal_sets().iter().find(|&&m| !sys.contains(m)) {
        return Err(Error::NotInner(bad));
    }
    let (frac, argmin) = argmin_ratio(
        o.nonempty()
            .map(|s| (Frac::new(inner.lower_rank(s), s.len()), s)),
    )
    .ok_or(Error::EmptyAcceptableSet)?;
    let inner_basis = inner
        .bases_of(argmin)
        .iter()
        .min_by_key(|b| (b.len(), *b))
        .expect("every set has a basis");
    Ok(RhoReport {
        rho: frac.to_rational(),
        argmin,
        inner_basis,
    })
}

/// `ρ` for an inner matroid, computed through its rank function.
pub fn rho_matroid(sys: &IndependenceSystem, o: &AcceptableSet, m: &Matroid) -> Result<RhoReport> {
    if m.ground() != sys.ground() {
        return Err(Error::GroundMismatch {
            left: sys.n(),
            right: m.ground().len(),
        });
    }
    if let Some(&bad) = m.bases().iter().find(|&&b| !sys.contains(b)) {
        return Err(Error::NotInner(bad));
    }
    let (frac, argmin) = rho_of_bases(m.bases(), o).ok_or(Error::EmptyAcceptableSet)?;
    let inner_basis = m
        .bases()
        .iter()
        .map(|b| b.intersection(argmin))
        .max_by(|a, b| a.len().cmp(&b.len()).then(b.cmp(a)))
        .expect("nonempty basis list");
    let report = RhoReport {
        rho: frac.to_rational(),
        argmin,
        inner_basis,
    };
    debug_assert_eq!(
        rho(sys, o, m.system()).map(|r| r.rho),
        Ok(report.rho.clone())
    );
    Ok(report)
}

/// `min r_M(S)/|S|` for a matroid given by its bases, using
/// `r_M(S) = max |B ∩ S|`.
pub(crate) fn rho_of_bases(bases: &[Mask], o: &AcceptableSet) -> Option<(Frac, Mask)> {
    argmin_ratio(o.nonempty().map(|s| {
        let r = bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0);
        (Frac::new(r, s.len()), s)
    }))
}

/// Sum of `r_M(S)/|S|` over nonempty members, scaled by `scale` (a common
/// multiple of the member sizes) so that it stays an integer.
pub(crate) fn ratio_sum_scaled(bases: &[Mask], members: &[Mask], scale: u128) -> u128 {
    members
        .iter()
        .map(|&s| {
            let r = bases.iter().map(|b| b.intersection(s).len()).max().unwrap_or(0) as u128;
            r * scale / s.len() as u128
        })
        .sum()
}

pub(crate) fn nonempty_members(o: &AcceptableSet) -> Vec<Mask> {
    o.nonempty().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{worked_example, path9_acceptable, path9_block_matroid, StableSetReading};
    use crate::matroid::uniform;
    use crate::setfamily::GroundSet;

    fn lab(l: &[usize]) -> Mask {
        Mask::from_labels(l)
    }

    #[test]
    fn rho_on_six_element_example() {
        let f = worked_example("ex6").unwrap();
        let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
        let m = f.inner.as_ref().unwrap();
        let r = rho(&f.sys, &o, m.system()).unwrap();
        assert_eq!(r.rho, ratio(1, 2));
        assert_eq!(r.argmin, lab(&[3, 4, 5, 6]));
        assert_eq!(r.inner_basis, lab(&[3, 4]));

        let r = rho(&f.sys, &o.dagger(), m.system()).unwrap();
        assert_eq!(r.rho, ratio(0, 1));
        assert_eq!(r.argmin, lab(&[5]));
        assert_eq!(r.inner_basis, Mask::EMPTY);
    }

    #[test]
    fn rho_is_one_when_inner_contains_acceptable() {
        let g = GroundSet::new(4).unwrap();
        let m = uniform(g, g.full(), 2).unwrap();
        let o = AcceptableSet::new(m.system(), SetFamily::new(g, alloc::vec![lab(&[1, 2]), lab(&[3])]).unwrap())
            .unwrap();
        assert_eq!(rho(m.system(), &o, m.system()).unwrap().rho, ratio(1, 1));
    }

    #[test]
    fn rho_matroid_examples() {
        for (name, want) in [("ex1a", ratio(1, 1)), ("ex1b", ratio(1, 2))] {
            let f = worked_example(name).unwrap();
            let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
            let r = rho_matroid(&f.sys, &o, f.inner.as_ref().unwrap()).unwrap();
            assert_eq!(r.rho, want, "{name}");
        }
        let sys = crate::instances::path_stable_set(9).unwrap();
        let o = AcceptableSet::new(&sys, path9_acceptable(StableSetReading::Exactly4)).unwrap();
        let r = rho_matroid(&sys, &o, &path9_block_matroid()).unwrap();
        assert_eq!(r.rho, ratio(3, 4));

        let o = AcceptableSet::new(&sys, path9_acceptable(StableSetReading::AtMost4)).unwrap();
        let r = rho_matroid(&sys, &o, &path9_block_matroid()).unwrap();
        assert_eq!(r.rho, ratio(0, 1));
        assert_eq!(r.argmin, lab(&[3]));
    }

    #[test]
    fn rho_errors() {
        let f = worked_example("ex1a").unwrap();
        let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
        let free = IndependenceSystem::free(f.sys.ground());
        assert!(matches!(rho(&f.sys, &o, &free), Err(Error::NotInner(_))));

        let only_empty = SetFamily::new(f.sys.ground(), alloc::vec![Mask::EMPTY]).unwrap();
        let o = AcceptableSet::new(&f.sys, only_empty).unwrap();
        assert_eq!(rho(&f.sys, &o, &f.sys), Err(Error::EmptyAcceptableSet));

        let dependent = SetFamily::new(f.sys.ground(), alloc::vec![lab(&[1, 3])]).unwrap();
        assert_eq!(
            AcceptableSet::new(&f.sys, dependent),
            Err(Error::InvalidAcceptableSet(lab(&[1, 3])))
        );
    }

    #[test]
    fn frac_ordering() {
        assert!(Frac::new(1, 2) < Frac::new(2, 3));
        assert_eq!(Frac::new(2, 4).cmp(&Frac::new(1, 2)), Ordering::Equal);
        assert!(Frac::new(0, 5) < Frac::new(1, 9));
    }
}
