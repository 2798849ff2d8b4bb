//! Ground sets, set families and independence systems stored by their
//! maximal independent sets.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::{Mask, MAX_ELEMENTS};

/// The ground set `{1, .., n}`.
///
/// Systems read from files always have `n >= 1`; derived systems (deleting
/// the last element, restricting to the empty set) may have `n = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet {
    n: u8,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<GroundSet> {
        if n > MAX_ELEMENTS {
            return Err(Error::Capability {
                what: "bitmask ground set",
                max: MAX_ELEMENTS,
                n,
            });
        }
        Ok(GroundSet { n: n as u8 })
    }

    #[inline]
    pub fn len(self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn full(self) -> Mask {
        Mask::full(self.len())
    }

    /// Number of subsets, `2^n`.
    #[inline]
    pub fn subset_count(self) -> usize {
        1usize << self.n
    }

    pub fn check(self, s: Mask) -> Result<()> {
        if s.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(Error::MaskOutOfRange {
                mask: s,
                n: self.len(),
            })
        }
    }

    pub fn check_elem(self, elem: usize) -> Result<()> {
        if elem < self.len() {
            Ok(())
        } else {
            Err(Error::InvalidInput(alloc::format!(
                "element {} outside ground set of size {}",
                elem + 1,
                self.n
            )))
        }
    }

    /// All masks `0 .. 2^n` in ascending numeric order.
    pub fn all_subsets(self) -> impl Iterator<Item = Mask> + Clone {
        (0..self.subset_count() as u32).map(Mask)
    }
}

/// A family of subsets kept sorted by mask value without duplicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<Mask>,
}

impl SetFamily {
    pub fn new(ground: GroundSet, mut members: Vec<Mask>) -> Result<SetFamily> {
        for &m in &members {
            ground.check(m)?;
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { ground, members })
    }

    pub(crate) fn from_sorted_unchecked(ground: GroundSet, members: Vec<Mask>) -> SetFamily {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SetFamily { ground, members }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn members(&self) -> &[Mask] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: Mask) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Mask> + '_ {
        self.members.iter().copied()
    }

    /// Union of all members.
    pub fn support(&self) -> Mask {
        self.members.iter().fold(Mask::EMPTY, |a, &m| a.union(m))
    }

    /// True if no member is a proper subset of another.
    pub fn is_antichain(&self) -> bool {
        let m = &self.members;
        (0..m.len()).all(|i| (0..m.len()).all(|j| i == j || !m[i].is_subset_of(m[j])))
    }

    pub fn into_members(self) -> Vec<Mask> {
        self.members
    }
}

/// Inclusion-maximal elements of `sets`, sorted ascending.
pub(crate) fn maximal_elements(mut sets: Vec<Mask>) -> Vec<Mask> {
    sets.sort_unstable_by(|a, b| b.len().cmp(&a.len()).then(a.cmp(b)));
    sets.dedup();
    let mut kept: Vec<Mask> = Vec::new();
    for s in sets {
        if !kept.iter().any(|&k| s.is_subset_of(k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// A hereditary family of subsets, stored by its maximal members.
///
/// Independence of `S` means `S` lies inside some maximal member, so the
/// hereditary axiom holds by construction. The maximal members are kept in
/// ascending mask order, which makes the representation canonical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndependenceSystem {
    maximal: SetFamily,
}

impl IndependenceSystem {
    /// Builds a system from an antichain of maximal independent sets.
    ///
    /// Rejects families that are not antichains. An empty list is read as
    /// the system in which only the empty set is independent.
    pub fn from_maximal(ground: GroundSet, maximal: Vec<Mask>) -> Result<IndependenceSystem> {
        let mut fam = SetFamily::new(ground, maximal)?;
        if !fam.is_antichain() {
            return Err(Error::InvalidInput(
                "maximal independent sets must form an antichain".into(),
            ));
        }
        if fam.is_empty() {
            fam.members.push(Mask::EMPTY);
        }
        Ok(IndependenceSystem { maximal: fam })
    }

    /// The system whose independent sets are all subsets of members of `family`.
    pub fn hereditary_closure(family: &SetFamily) -> IndependenceSystem {
        Self::from_generators(family.ground(), family.members().to_vec())
    }

    pub(crate) fn from_generators(ground: GroundSet, sets: Vec<Mask>) -> IndependenceSystem {
        let mut max = maximal_elements(sets);
        if max.is_empty() {
            max.push(Mask::EMPTY);
        }
        IndependenceSystem {
            maximal: SetFamily::from_sorted_unchecked(ground, max),
        }
    }

    /// Every subset of the ground set is independent.
    pub fn free(ground: GroundSet) -> IndependenceSystem {
        Self::from_generators(ground, vec![ground.full()])
    }

    /// Only the empty set is independent.
    pub fn trivial(ground: GroundSet) -> IndependenceSystem {
        Self::from_generators(ground, Vec::new())
    }

    pub fn ground(&self) -> GroundSet {
        self.maximal.ground()
    }

    pub fn n(&self) -> usize {
        self.ground().len()
    }

    /// The bases of `E`, i.e. the maximal independent sets.
    pub fn maximal(&self) -> &SetFamily {
        &self.maximal
    }

    pub fn maximal_sets(&self) -> &[Mask] {
        self.maximal.members()
    }

    /// Independence test without range validation; masks with bits outside
    /// the ground set are never independent.
    #[inline]
    pub fn contains(&self, s: Mask) -> bool {
        self.maximal_sets().iter().any(|&m| s.is_subset_of(m))
    }

    pub fn is_independent(&self, s: Mask) -> Result<bool> {
        self.ground().check(s)?;
        Ok(self.contains(s))
    }

    /// Every singleton is independent.
    pub fn is_normal(&self) -> bool {
        self.loops().is_empty()
    }

    /// Elements `e` with `{e}` dependent.
    pub fn loops(&self) -> Mask {
        self.ground().full().difference(self.maximal.support())
    }

    /// Independence of every subset, indexed by mask value.
    pub fn independence_table(&self) -> Vec<bool> {
        let n = self.n();
        let mut table = vec![false; self.ground().subset_count()];
        for &m in self.maximal_sets() {
            table[m.bits() as usize] = true;
        }
        for s in (0..table.len()).rev() {
            if table[s] {
                continue;
            }
            table[s] = (0..n).any(|e| s >> e & 1 == 0 && table[s | 1 << e]);
        }
        table
    }

    /// All independent sets in ascending mask order.
    pub fn independent_sets(&self) -> Vec<Mask> {
        self.independence_table()
            .iter()
            .enumerate()
            .filter(|(_, &i)| i)
            .map(|(s, _)| Mask(s as u32))
            .collect()
    }

    /// Inclusion-maximal independent subsets of `f`.
    ///
    /// Each basis of `f` is `M ∩ f` for some maximal set `M`, so it suffices
    /// to take the maximal elements among those intersections.
    pub fn bases_of(&self, f: Mask) -> SetFamily {
        let cuts = self.maximal_sets().iter().map(|&m| m.intersection(f)).collect();
        SetFamily::from_sorted_unchecked(self.ground(), maximal_elements(cuts))
    }

    /// All minimal dependent sets.
    pub fn circuits(&self) -> SetFamily {
        let table = self.independence_table();
        let circuits = (0..table.len())
            .filter(|&s| !table[s] && Mask(s as u32).iter().all(|e| table[s & !(1 << e)]))
            .map(|s| Mask(s as u32))
            .collect();
        SetFamily::from_sorted_unchecked(self.ground(), circuits)
    }

    /// Largest number of circuits inside `A ∪ {e}` over independent `A` and `e ∉ A`.
    pub fn max_circuits_on_augment(&self) -> usize {
        let table = self.independence_table();
        let circuits = self.circuits();
        let full = self.ground().full();
        let mut best = 0;
        for (a, _) in table.iter().enumerate().filter(|(_, &i)| i) {
            let a = Mask(a as u32);
            for e in full.difference(a).iter() {
                let grown = a.with(e);
                let count = circuits.iter().filter(|c| c.is_subset_of(grown)).count();
                best = best.max(count);
            }
        }
        best
    }

    /// The independent sets avoiding `elem`, on the ground set with `elem`
    /// removed and higher elements shifted down by one.
    pub fn delete(&self, elem: usize) -> Result<IndependenceSystem> {
        self.ground().check_elem(elem)?;
        let keep = self.ground().full().without(elem);
        let ground = GroundSet::new(self.n() - 1)?;
        let sets = self
            .maximal_sets()
            .iter()
            .map(|m| m.without(elem).compress(keep))
            .collect();
        Ok(Self::from_generators(ground, sets))
    }

    /// The independent subsets of `f`, relabelled onto `{1, .., |f|}`.
    pub fn restrict(&self, f: Mask) -> Result<IndependenceSystem> {
        self.ground().check(f)?;
        let ground = GroundSet::new(f.len())?;
        let sets = self
            .maximal_sets()
            .iter()
            .map(|m| m.intersection(f).compress(f))
            .collect();
        Ok(Self::from_generators(ground, sets))
    }

    /// The downward closure of `family`, which must consist of independent sets.
    pub fn dagger_closure(&self, family: &SetFamily) -> Result<SetFamily> {
        for s in family.iter() {
            if !self.contains(s) {
                return Err(Error::InvalidAcceptableSet(s));
            }
        }
        Ok(downward_closure(family))
    }

    /// True if every independent set of `self` is independent in `host`.
    pub fn is_contained_in(&self, host: &IndependenceSystem) -> bool {
        self.maximal_sets().iter().all(|&m| host.contains(m))
    }
}

/// All subsets of members of `family`, sorted.
pub fn downward_closure(family: &SetFamily) -> SetFamily {
    let mut out: Vec<Mask> = family.iter().flat_map(|m| m.subsets()).collect();
    if out.is_empty() {
        out.push(Mask::EMPTY);
    }
    out.sort_unstable();
    out.dedup();
    SetFamily::from_sorted_unchecked(family.ground(), out)
}
