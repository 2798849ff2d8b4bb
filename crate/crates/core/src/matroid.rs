//! Rank functions, the three matroid characterizations (augmentation, rank
//! axioms, basis exchange) and the matroid constructors used by the examples.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::setfamily::{maximal_elements, GroundSet, IndependenceSystem, SetFamily};

impl IndependenceSystem {
    /// Size of the largest independent subset of `f`.
    pub fn rank(&self, f: Mask) -> usize {
        self.maximal_sets()
            .iter()
            .map(|m| m.intersection(f).len())
            .max()
            .unwrap_or(0)
    }

    /// Size of the smallest basis of `f`.
    pub fn lower_rank(&self, f: Mask) -> usize {
        self.bases_of(f).iter().map(Mask::len).min().unwrap_or(0)
    }

    /// `(lower rank, rank)` of `f` from a single pass over its bases.
    pub fn rank_pair(&self, f: Mask) -> (usize, usize) {
        let bases = self.bases_of(f);
        let lo = bases.iter().map(Mask::len).min().unwrap_or(0);
        let hi = bases.iter().map(Mask::len).max().unwrap_or(0);
        (lo, hi)
    }

    pub fn rank_table(&self) -> RankTable {
        let values = self
            .ground()
            .all_subsets()
            .map(|f| self.rank(f) as u8)
            .collect();
        RankTable {
            ground: self.ground(),
            values,
        }
    }

    /// Augmentation check: for independent `I`, `J` with `|J| = |I| + 1`
    /// some `j ∈ J \ I` extends `I`. Restricting to `|J| = |I| + 1` is
    /// equivalent to the general `|I| < |J|` statement (pass to a subset of
    /// `J` of size `|I| + 1`).
    pub fn is_matroid(&self) -> bool {
        let table = self.independence_table();
        let n = self.n();
        let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
        for (s, &ind) in table.iter().enumerate() {
            if ind {
                by_size[(s as u32).count_ones() as usize].push(s as u32);
            }
        }
        for k in 0..n {
            for &i in &by_size[k] {
                for &j in &by_size[k + 1] {
                    let mut extra = j & !i;
                    let mut ok = false;
                    while extra != 0 {
                        let bit = extra & extra.wrapping_neg();
                        if table[(i | bit) as usize] {
                            ok = true;
                            break;
                        }
                        extra &= extra - 1;
                    }
                    if !ok {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A function from all subsets of the ground set to small nonnegative integers.
///
/// Used both for rank functions and for the rank reductions `δ` of the
/// integer program.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RankTable {
    ground: GroundSet,
    values: Vec<u8>,
}

impl RankTable {
    pub fn new(ground: GroundSet, values: Vec<u8>) -> Result<RankTable> {
        if values.len() != ground.subset_count() {
            return Err(Error::InvalidInput(alloc::format!(
                "rank table needs {} entries, got {}",
                ground.subset_count(),
                values.len()
            )));
        }
        Ok(RankTable { ground, values })
    }

    pub fn zero(ground: GroundSet) -> RankTable {
        RankTable {
            ground,
            values: vec![0; ground.subset_count()],
        }
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn get(&self, s: Mask) -> usize {
        self.values[s.bits() as usize] as usize
    }

    pub fn set(&mut self, s: Mask, v: usize) {
        self.values[s.bits() as usize] = v as u8;
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Checks (R1) `r(X) <= |X|`, (R2) monotonicity and (R3) submodularity.
    ///
    /// (R2) is checked on covers `X ⊂ X ∪ {j}` and (R3) in the local form
    /// `r(S+j+k) - r(S+j) <= r(S+k) - r(S)` for `j, k ∉ S`. Chaining covers
    /// gives monotonicity for all `X ⊆ Y`, and the local inequalities sum to
    /// the general `r(X ∪ Y) + r(X ∩ Y) <= r(X) + r(Y)`.
    pub fn check_rank_axioms(&self) -> bool {
        let n = self.ground.len();
        let r = |s: u32| self.values[s as usize] as i32;
        if r(0) != 0 {
            return false;
        }
        for s in 0..self.values.len() as u32 {
            if r(s) > s.count_ones() as i32 {
                return false;
            }
            for j in 0..n {
                let jb = 1u32 << j;
                if s & jb != 0 {
                    continue;
                }
                if r(s) > r(s | jb) {
                    return false;
                }
                for k in j + 1..n {
                    let kb = 1u32 << k;
                    if s & kb != 0 {
                        continue;
                    }
                    if r(s | jb | kb) - r(s | jb) > r(s | kb) - r(s) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Basis exchange: for bases `B1`, `B2` and `i ∈ B2 \ B1` there is
/// `j ∈ B1 \ B2` with `(B1 ∪ {i}) \ {j}` a basis.
pub fn check_basis_exchange(bases: &SetFamily) -> bool {
    if bases.is_empty() {
        return false;
    }
    for b1 in bases.iter() {
        for b2 in bases.iter() {
            for i in b2.difference(b1).iter() {
                let ok = b1
                    .difference(b2)
                    .iter()
                    .any(|j| bases.contains(b1.with(i).without(j)));
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// An independence system known to satisfy the matroid axioms.
///
/// Loops are allowed. The rank of `F` is computed as the largest
/// intersection of `F` with a basis, which is exact for matroids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matroid {
    system: IndependenceSystem,
}

impl Matroid {
    pub fn new(system: IndependenceSystem) -> Result<Matroid> {
        if system.is_matroid() {
            Ok(Matroid { system })
        } else {
            Err(Error::NotAMatroid)
        }
    }

    pub(crate) fn from_bases_unchecked(ground: GroundSet, bases: Vec<Mask>) -> Matroid {
        let system = IndependenceSystem::from_generators(ground, bases);
        debug_assert!(check_basis_exchange(system.maximal()));
        Matroid { system }
    }

    /// The matroid in which every element is a loop.
    pub fn loops_only(ground: GroundSet) -> Matroid {
        Matroid {
            system: IndependenceSystem::trivial(ground),
        }
    }

    pub fn free(ground: GroundSet) -> Matroid {
        Matroid {
            system: IndependenceSystem::free(ground),
        }
    }

    pub fn system(&self) -> &IndependenceSystem {
        &self.system
    }

    pub fn into_system(self) -> IndependenceSystem {
        self.system
    }

    pub fn ground(&self) -> GroundSet {
        self.system.ground()
    }

    pub fn bases(&self) -> &[Mask] {
        self.system.maximal_sets()
    }

    /// Rank of the whole ground set.
    pub fn rank_of_matroid(&self) -> usize {
        self.bases()[0].len()
    }

    #[inline]
    pub fn rank(&self, f: Mask) -> usize {
        self.system.rank(f)
    }

    #[inline]
    pub fn contains(&self, s: Mask) -> bool {
        self.system.contains(s)
    }

    /// Union of the bases; the complement consists of loops.
    pub fn support(&self) -> Mask {
        self.system.maximal().support()
    }

    pub fn is_inner(&self, host: &IndependenceSystem) -> bool {
        self.system.is_contained_in(host)
    }

    /// Number of independent sets.
    pub fn independent_count(&self) -> usize {
        let table = self.system.independence_table();
        table.iter().filter(|&&b| b).count()
    }

    pub fn rank_table(&self) -> RankTable {
        self.system.rank_table()
    }
}

/// All `k`-element subsets of `of`, ascending.
pub fn k_subsets(of: Mask, k: usize) -> Vec<Mask> {
    let elems: Vec<usize> = of.iter().collect();
    let m = elems.len();
    let mut out = Vec::new();
    if k > m {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().fold(Mask::EMPTY, |acc, &i| acc.with(elems[i])));
        let mut pos = k;
        loop {
            if pos == 0 {
                out.sort_unstable();
                return out;
            }
            pos -= 1;
            if idx[pos] < m - k + pos {
                break;
            }
        }
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// The uniform matroid of rank `k` on `elements`; other elements are loops.
pub fn uniform(ground: GroundSet, elements: Mask, k: usize) -> Result<Matroid> {
    ground.check(elements)?;
    if k > elements.len() {
        return Err(Error::InvalidInput(alloc::format!(
            "uniform rank {k} exceeds {} elements",
            elements.len()
        )));
    }
    Ok(Matroid::from_bases_unchecked(ground, k_subsets(elements, k)))
}

/// Direct sum of two matroids on the same ground set with disjoint supports.
pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<Matroid> {
    if a.ground() != b.ground() {
        return Err(Error::GroundMismatch {
            left: a.ground().len(),
            right: b.ground().len(),
        });
    }
    let overlap = a.support().intersection(b.support());
    if !overlap.is_empty() {
        return Err(Error::OverlappingSupports(overlap));
    }
    let mut bases = Vec::with_capacity(a.bases().len() * b.bases().len());
    for &x in a.bases() {
        for &y in b.bases() {
            bases.push(x.union(y));
        }
    }
    Ok(Matroid::from_bases_unchecked(a.ground(), bases))
}

/// The matroid with rank function `r - δ`, where `r` is the rank function of `sys`.
///
/// Its independent sets `{F : r(F) - δ_F = |F|}` all lie in `sys`, because
/// `|F| = r(F) - δ_F <= r(F) <= |F|` forces `r(F) = |F|`.
pub fn matroid_from_delta(sys: &IndependenceSystem, delta: &RankTable) -> Result<Matroid> {
    if delta.ground() != sys.ground() {
        return Err(Error::GroundMismatch {
            left: sys.n(),
            right: delta.ground().len(),
        });
    }
    let r = sys.rank_table();
    let mut reduced = RankTable::zero(sys.ground());
    for f in sys.ground().all_subsets() {
        let (rf, d) = (r.get(f), delta.get(f));
        if d > rf {
            return Err(Error::InvalidInput(alloc::format!(
                "delta {d} exceeds rank {rf} at {f}"
            )));
        }
        reduced.set(f, rf - d);
    }
    matroid_from_rank_table(&reduced)
}

/// The matroid whose independent sets are `{F : r(F) = |F|}` for a table
/// satisfying the rank axioms.
pub fn matroid_from_rank_table(r: &RankTable) -> Result<Matroid> {
    if !r.check_rank_axioms() {
        return Err(Error::NotAMatroid);
    }
    let indep: Vec<Mask> = r
        .ground()
        .all_subsets()
        .filter(|&f| r.get(f) == f.len())
        .collect();
    Ok(Matroid::from_bases_unchecked(r.ground(), maximal_elements(indep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{path_stable_set, twin_peaks};

    fn lab(l: &[usize]) -> Mask {
        Mask::from_labels(l)
    }

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    fn ex1a() -> IndependenceSystem {
        IndependenceSystem::from_maximal(g(4), vec![lab(&[1, 2]), lab(&[3, 4])]).unwrap()
    }

    fn ex6() -> IndependenceSystem {
        IndependenceSystem::from_maximal(g(6), vec![lab(&[1, 2, 3, 4]), lab(&[3, 4, 5, 6])])
            .unwrap()
    }

    #[test]
    fn rank_examples() {
        let m = uniform(g(6), lab(&[1, 2, 3, 4]), 4).unwrap();
        assert_eq!(m.rank(lab(&[3, 4, 5, 6])), 2);
        assert_eq!(ex6().rank(Mask::EMPTY), 0);
        let p9 = path_stable_set(9).unwrap();
        assert_eq!(p9.rank(p9.ground().full()), 5);
    }

    #[test]
    fn lower_rank_examples() {
        let p9 = path_stable_set(9).unwrap();
        assert_eq!(p9.lower_rank(p9.ground().full()), 3);
        assert_eq!(p9.lower_rank(Mask::EMPTY), 0);
        let tp = twin_peaks(2, 1, 4, 3).unwrap();
        assert_eq!(tp.lower_rank(lab(&[1, 3, 4, 5])), 1);
        assert_eq!(tp.rank(lab(&[1, 3, 4, 5])), 3);
    }

    #[test]
    fn is_matroid_examples() {
        assert!(!ex1a().is_matroid());
        assert!(uniform(g(4), g(4).full(), 2).unwrap().system().is_matroid());
        assert!(!ex6().is_matroid());
    }

    #[test]
    fn rank_axiom_examples() {
        let u14 = uniform(g(4), g(4).full(), 1).unwrap();
        assert!(u14.rank_table().check_rank_axioms());
        assert!(!ex1a().rank_table().check_rank_axioms());
        assert!(RankTable::zero(g(4)).check_rank_axioms());
    }

    #[test]
    fn basis_exchange_examples() {
        let f = |v: Vec<Mask>| SetFamily::new(g(4), v).unwrap();
        assert!(!check_basis_exchange(&f(vec![lab(&[1, 2]), lab(&[3, 4])])));
        assert!(check_basis_exchange(&f(vec![
            lab(&[1, 2]),
            lab(&[1, 3]),
            lab(&[2, 3])
        ])));
        // 2 and 4 are parallel and 3 is a coloop, so no basis {2,4} is needed.
        assert!(check_basis_exchange(&f(vec![lab(&[2, 3]), lab(&[3, 4])])));
        assert!(!check_basis_exchange(&f(vec![lab(&[1, 2]), lab(&[3])])));
    }

    #[test]
    fn uniform_examples() {
        let u14 = uniform(g(4), g(4).full(), 1).unwrap();
        assert_eq!(u14.bases(), &[lab(&[1]), lab(&[2]), lab(&[3]), lab(&[4])]);
        let u0 = uniform(g(4), lab(&[1, 2]), 0).unwrap();
        assert_eq!(u0.bases(), &[Mask::EMPTY]);
        let u = uniform(g(4), lab(&[2, 3, 4]), 2).unwrap();
        assert_eq!(u.bases(), &[lab(&[2, 3]), lab(&[2, 4]), lab(&[3, 4])]);
        assert!(uniform(g(4), lab(&[1]), 2).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let b = |l: &[usize]| uniform(g(9), lab(l), 1).unwrap();
        let m = direct_sum(&direct_sum(&b(&[1, 2]), &b(&[4, 5])).unwrap(), &b(&[7, 8])).unwrap();
        assert_eq!(m.rank_of_matroid(), 3);
        // One of two elements from each of three blocks.
        assert_eq!(m.bases().len(), 8);

        let a = uniform(g(4), lab(&[1, 2]), 1).unwrap();
        assert_eq!(direct_sum(&a, &Matroid::loops_only(g(4))).unwrap(), a);

        let s = direct_sum(
            &uniform(g(2), lab(&[1]), 1).unwrap(),
            &uniform(g(2), lab(&[2]), 1).unwrap(),
        )
        .unwrap();
        assert_eq!(s, Matroid::free(g(2)));

        assert!(matches!(
            direct_sum(&a, &uniform(g(4), lab(&[2, 3]), 1).unwrap()),
            Err(Error::OverlappingSupports(_))
        ));
    }

    #[test]
    fn from_delta_examples() {
        let u24 = uniform(g(4), g(4).full(), 2).unwrap();
        let same = matroid_from_delta(u24.system(), &RankTable::zero(g(4))).unwrap();
        assert_eq!(same, u24);

        let full_delta = u24.rank_table();
        let loops = matroid_from_delta(u24.system(), &full_delta).unwrap();
        assert_eq!(loops, Matroid::loops_only(g(4)));

        let sys = ex6();
        let block = lab(&[1, 2, 3, 4]);
        let mut delta = RankTable::zero(g(6));
        for s in g(6).all_subsets() {
            delta.set(s, sys.rank(s) - s.intersection(block).len());
        }
        let m = matroid_from_delta(&sys, &delta).unwrap();
        assert_eq!(m, uniform(g(6), block, 4).unwrap());
        assert!(m.is_inner(&sys));

        // r - δ = rank of ex1a itself is not submodular.
        assert_eq!(
            matroid_from_delta(&ex1a(), &RankTable::zero(g(4))),
            Err(Error::NotAMatroid)
        );
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(Mask::full(6), 3).len(), 20);
        assert_eq!(k_subsets(Mask::full(6), 0), vec![Mask::EMPTY]);
        assert!(k_subsets(Mask::full(2), 3).is_empty());
    }
}
