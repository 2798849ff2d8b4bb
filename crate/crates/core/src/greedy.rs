//! The greedy algorithm with an explicit tie-breaking order, and the
//! exhaustive optimum it is measured against.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::rational::{self, Rational};
use crate::setfamily::{GroundSet, IndependenceSystem};

/// Nonnegative exact weights, one per element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weights {
    ground: GroundSet,
    values: Vec<Rational>,
}

impl Weights {
    pub fn new(ground: GroundSet, values: Vec<Rational>) -> Result<Weights> {
        if values.len() != ground.len() {
            return Err(Error::InvalidInput(alloc::format!(
                "expected {} weights, got {}",
                ground.len(),
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !rational::is_nonnegative(v)) {
            return Err(Error::InvalidInput(alloc::format!(
                "weight of element {} is negative",
                i + 1
            )));
        }
        Ok(Weights { ground, values })
    }

    pub fn from_integers(ground: GroundSet, values: &[u64]) -> Result<Weights> {
        Weights::new(ground, values.iter().map(|&v| rational::from_int(v)).collect())
    }

    /// 1 on `set`, 0 elsewhere.
    pub fn indicator(ground: GroundSet, set: Mask) -> Weights {
        let values = (0..ground.len())
            .map(|e| rational::from_int(set.contains(e) as u64))
            .collect();
        Weights { ground, values }
    }

    pub fn zero(ground: GroundSet) -> Weights {
        Weights::indicator(ground, Mask::EMPTY)
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, elem: usize) -> &Rational {
        &self.values[elem]
    }

    /// `v(S)`.
    pub fn value(&self, s: Mask) -> Rational {
        s.iter().fold(Rational::zero(), |acc, e| acc + &self.values[e])
    }

    pub fn scale(&self, c: &Rational) -> Weights {
        Weights {
            ground: self.ground,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn support(&self) -> Mask {
        (0..self.values.len())
            .filter(|&e| !self.values[e].is_zero())
            .fold(Mask::EMPTY, |m, e| m.with(e))
    }

    /// Maximum of `v` over the sets in `family`; `None` for an empty family.
    pub fn max_over<'a>(&self, family: impl IntoIterator<Item = &'a Mask>) -> Option<(Mask, Rational)> {
        let mut best: Option<(Mask, Rational)> = None;
        for &s in family {
            let val = self.value(s);
            let better = match &best {
                None => true,
                Some((bs, bv)) => val > *bv || (val == *bv && s < *bs),
            };
            if better {
                best = Some((s, val));
            }
        }
        best
    }
}

/// A priority order over elements used to break ties between equal weights.
///
/// `order[0]` is scanned first among elements of equal weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TieBreak {
    order: Vec<usize>,
}

impl TieBreak {
    pub fn identity(n: usize) -> TieBreak {
        TieBreak {
            order: (0..n).collect(),
        }
    }

    /// From 0-based element positions; must be a permutation of `0..n`.
    pub fn new(order: Vec<usize>) -> Result<TieBreak> {
        let n = order.len();
        let mut seen = alloc::vec![false; n];
        for &e in &order {
            if e >= n || seen[e] {
                return Err(Error::InvalidInput(
                    "tie-break order must be a permutation of the elements".into(),
                ));
            }
            seen[e] = true;
        }
        Ok(TieBreak { order })
    }

    /// From 1-based element labels.
    pub fn from_labels(labels: &[usize]) -> Result<TieBreak> {
        if labels.contains(&0) {
            return Err(Error::InvalidInput("element labels start at 1".into()));
        }
        TieBreak::new(labels.iter().map(|l| l - 1).collect())
    }

    /// Moves the elements of `first` (in ascending order) to the front,
    /// keeping the identity order for the rest.
    pub fn front_loaded(n: usize, first: Mask) -> TieBreak {
        let mut order: Vec<usize> = first.iter().collect();
        order.extend((0..n).filter(|&e| !first.contains(e)));
        TieBreak { order }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn labels(&self) -> Vec<usize> {
        self.order.iter().map(|e| e + 1).collect()
    }

    fn positions(&self) -> Vec<usize> {
        let mut pos = alloc::vec![0; self.order.len()];
        for (p, &e) in self.order.iter().enumerate() {
            pos[e] = p;
        }
        pos
    }
}

/// A selected set together with its weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    pub set: Mask,
    pub value: Rational,
}

fn check_dims(sys: &IndependenceSystem, v: &Weights) -> Result<()> {
    if v.ground() != sys.ground() {
        return Err(Error::GroundMismatch {
            left: sys.n(),
            right: v.ground().len(),
        });
    }
    Ok(())
}

/// Scans elements by non-increasing weight, ties in tie-break order, adding
/// each element that keeps the current set independent.
pub fn greedy(sys: &IndependenceSystem, v: &Weights, tb: &TieBreak) -> Result<Selection> {
    check_dims(sys, v)?;
    if tb.len() != sys.n() {
        return Err(Error::InvalidInput(alloc::format!(
            "tie-break covers {} elements, system has {}",
            tb.len(),
            sys.n()
        )));
    }
    let pos = tb.positions();
    let mut order: Vec<usize> = (0..sys.n()).collect();
    order.sort_by(|&a, &b| v.get(b).cmp(v.get(a)).then(pos[a].cmp(&pos[b])));
    let mut set = Mask::EMPTY;
    for e in order {
        if sys.contains(set.with(e)) {
            set = set.with(e);
        }
    }
    Ok(Selection {
        value: v.value(set),
        set,
    })
}

/// A maximum-weight basis by exhaustive search over the bases; ties go to
/// the smallest mask.
pub fn optimal_basis(sys: &IndependenceSystem, v: &Weights) -> Result<Selection> {
    check_dims(sys, v)?;
    let (set, value) = v
        .max_over(sys.maximal_sets())
        .expect("an independence system has at least one basis");
    Ok(Selection { set, value })
}

/// `v(I_g) / v(I_o)`.
pub fn greedy_ratio(sys: &IndependenceSystem, v: &Weights, tb: &TieBreak) -> Result<Rational> {
    let opt = optimal_basis(sys, v)?;
    if opt.value.is_zero() {
        return Err(Error::UndefinedRatio);
    }
    let g = greedy(sys, v, tb)?;
    Ok(g.value / opt.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{path_stable_set, twin_peaks};
    use crate::matroid::uniform;
    use crate::rational::ratio;

    fn lab(l: &[usize]) -> Mask {
        Mask::from_labels(l)
    }

    #[test]
    fn greedy_examples() {
        let g4 = GroundSet::new(4).unwrap();
        let u24 = uniform(g4, g4.full(), 2).unwrap();
        let v = Weights::from_integers(g4, &[3, 2, 2, 1]).unwrap();
        let out = greedy(u24.system(), &v, &TieBreak::identity(4)).unwrap();
        assert_eq!(out.set, lab(&[1, 2]));
        assert_eq!(out.value, ratio(5, 1));

        let tp = twin_peaks(2, 1, 4, 3).unwrap();
        let v = Weights::indicator(tp.ground(), lab(&[1, 3, 4, 5]));
        let out = greedy(&tp, &v, &TieBreak::identity(6)).unwrap();
        assert_eq!(out.set, lab(&[1]));
        assert_eq!(out.value, ratio(1, 1));

        let p9 = path_stable_set(9).unwrap();
        let out = greedy(&p9, &Weights::zero(p9.ground()), &TieBreak::identity(9)).unwrap();
        assert_eq!(out.value, ratio(0, 1));
        assert!(p9.bases_of(p9.ground().full()).contains(out.set));
    }

    #[test]
    fn tie_break_changes_outcome() {
        let g4 = GroundSet::new(4).unwrap();
        let sys = IndependenceSystem::from_maximal(g4, alloc::vec![lab(&[1, 2]), lab(&[3, 4])]).unwrap();
        let v = Weights::from_integers(g4, &[1, 1, 1, 1]).unwrap();
        let a = greedy(&sys, &v, &TieBreak::identity(4)).unwrap();
        let b = greedy(&sys, &v, &TieBreak::from_labels(&[3, 1, 2, 4]).unwrap()).unwrap();
        assert_eq!(a.set, lab(&[1, 2]));
        assert_eq!(b.set, lab(&[3, 4]));
    }

    #[test]
    fn optimum_examples() {
        let tp = twin_peaks(2, 1, 4, 3).unwrap();
        let v = Weights::indicator(tp.ground(), lab(&[1, 3, 4, 5]));
        let o = optimal_basis(&tp, &v).unwrap();
        assert_eq!((o.set, o.value), (lab(&[3, 4, 5]), ratio(3, 1)));

        let p9 = path_stable_set(9).unwrap();
        let v = Weights::indicator(p9.ground(), p9.ground().full());
        let o = optimal_basis(&p9, &v).unwrap();
        assert_eq!((o.set, o.value), (lab(&[1, 3, 5, 7, 9]), ratio(5, 1)));

        let o = optimal_basis(&p9, &Weights::zero(p9.ground())).unwrap();
        assert_eq!(o.value, ratio(0, 1));
    }

    #[test]
    fn ratio_examples() {
        let tp = twin_peaks(2, 1, 4, 3).unwrap();
        let v = Weights::indicator(tp.ground(), lab(&[1, 3, 4, 5]));
        assert_eq!(greedy_ratio(&tp, &v, &TieBreak::identity(6)).unwrap(), ratio(1, 3));

        let p9 = path_stable_set(9).unwrap();
        let v = Weights::indicator(p9.ground(), p9.ground().full());
        assert_eq!(greedy_ratio(&p9, &v, &TieBreak::identity(9)).unwrap(), ratio(1, 1));

        assert_eq!(
            greedy_ratio(&p9, &Weights::zero(p9.ground()), &TieBreak::identity(9)),
            Err(Error::UndefinedRatio)
        );
    }

    #[test]
    fn input_validation() {
        let g = GroundSet::new(3).unwrap();
        assert!(Weights::new(g, alloc::vec![ratio(1, 1)]).is_err());
        assert!(Weights::new(
            g,
            alloc::vec![ratio(1, 1), ratio(1, 1), -ratio(1, 1)]
        )
        .is_err());
        assert!(TieBreak::from_labels(&[1, 1, 2]).is_err());
        assert!(TieBreak::from_labels(&[0, 1, 2]).is_err());
        assert_eq!(TieBreak::front_loaded(4, lab(&[2, 4])).labels(), alloc::vec![2, 4, 1, 3]);
    }
}
