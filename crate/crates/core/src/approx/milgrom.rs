//! The weight class `W` on which `O` is known to hold an optimum, and the
//! empirical check of the inner-matroid guarantee over it.
//!
//! For an inner matroid `M` the guarantee compares `V*(M, v)`, the best
//! weight of an `M`-independent set, with `V*(O, v)`, the best weight of a
//! member of `O`, over weights `v ∈ W`. The lower bound `ρ` is attained by
//! the indicator of the minimizing member. The bound itself is checked on
//! sampled and exhaustively enumerated weights and any violation is kept.

use alloc::vec::Vec;

use num_traits::Zero;

use super::{rho_matroid, AcceptableSet};
use crate::error::Result;
use crate::greedy::Weights;
use crate::instances::{all_small_weights, random_weights, rng};
use crate::mask::Mask;
use crate::matroid::Matroid;
use crate::rational::Rational;
use crate::setfamily::IndependenceSystem;

/// Ground sets up to this size also get every weight vector in `{0,1,2}^n`.
const EXHAUSTIVE_MAX_N: usize = 6;

/// Whether some member of `O` has maximum weight among all independent sets.
pub fn in_w(sys: &IndependenceSystem, o: &AcceptableSet, v: &Weights) -> bool {
    let (_, best) = v
        .max_over(sys.maximal_sets())
        .expect("an independence system has at least one basis");
    o.iter().any(|s| v.value(s) == best)
}

/// A weight vector in `W` on which the matroid does worse than `ρ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub weights: Weights,
    /// `V*(M, v) / V*(O, v)`.
    pub ratio: Rational,
    pub matroid_value: Rational,
    pub acceptable_value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MilgromReport {
    pub rho: Rational,
    /// Weight vectors tried, and how many of them were in `W` with `V*(O, v) > 0`.
    pub tried: usize,
    pub in_w: usize,
    /// Smallest ratio seen over the counted vectors.
    pub sampled_min: Option<Rational>,
    /// The indicator of the member of `O` attaining `ρ`.
    pub witness: Weights,
    pub witness_ratio: Rational,
    pub witness_in_w: bool,
    /// First vector with ratio below `ρ`, if any.
    pub violation: Option<Violation>,
}

impl MilgromReport {
    /// The bound held on every counted vector and the witness is tight.
    pub fn passed(&self) -> bool {
        self.violation.is_none() && self.witness_in_w && self.witness_ratio == self.rho
    }
}

fn best_value<'a>(v: &Weights, sets: impl IntoIterator<Item = &'a Mask>) -> Rational {
    v.max_over(sets).map(|(_, x)| x).unwrap_or_else(Rational::zero)
}

/// Checks `V*(M, v) >= ρ · V*(O, v)` for `v ∈ W` on `trials` seeded random
/// vectors, plus all of `{0,1,2}^n` when `n <= 6`, and checks that the
/// indicator of the minimizing member attains `ρ`.
pub fn verify_milgrom(
    sys: &IndependenceSystem,
    o: &AcceptableSet,
    m: &Matroid,
    trials: usize,
    seed: u64,
) -> Result<MilgromReport> {
    let report = rho_matroid(sys, o, m)?;
    let rho = report.rho.clone();
    let ground = sys.ground();

    let witness = Weights::indicator(ground, report.argmin);
    let witness_ratio = best_value(&witness, m.bases()) / best_value(&witness, o.family().members());
    let witness_in_w = in_w(sys, o, &witness);

    let mut weights: Vec<Weights> = Vec::new();
    if sys.n() <= EXHAUSTIVE_MAX_N {
        weights.extend(all_small_weights(ground, 2));
    }
    let mut r = rng(seed);
    weights.extend((0..trials).map(|_| random_weights(ground, 10, 4, &mut r)));

    let mut out = MilgromReport {
        rho,
        tried: weights.len(),
        in_w: 0,
        sampled_min: None,
        witness,
        witness_ratio,
        witness_in_w,
        violation: None,
    };
    for v in weights {
        if !in_w(sys, o, &v) {
            continue;
        }
        let ov = best_value(&v, o.family().members());
        if ov.is_zero() {
            continue;
        }
        out.in_w += 1;
        let mv = best_value(&v, m.bases());
        let ratio = &mv / &ov;
        if out.sampled_min.as_ref().is_none_or(|x| ratio < *x) {
            out.sampled_min = Some(ratio.clone());
        }
        if ratio < out.rho && out.violation.is_none() {
            out.violation = Some(Violation {
                weights: v,
                ratio,
                matroid_value: mv,
                acceptable_value: ov,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::approx::rho_max_exact;
    use crate::instances::{all_systems, worked_example, random_acceptable};
    use crate::rational::ratio;
    use crate::setfamily::SetFamily;

    fn lab(l: &[usize]) -> Mask {
        Mask::from_labels(l)
    }

    #[test]
    fn w_membership() {
        let f = worked_example("ex6").unwrap();
        let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
        assert!(in_w(&f.sys, &o, &Weights::zero(f.sys.ground())));
        let v = Weights::indicator(f.sys.ground(), lab(&[5]));
        assert!(in_w(&f.sys, &o, &v));
        let v = Weights::indicator(f.sys.ground(), lab(&[1, 2, 3, 4]));
        assert!(in_w(&f.sys, &o, &v));
        let only = SetFamily::new(f.sys.ground(), alloc::vec![lab(&[1, 2, 3, 4])]).unwrap();
        let o = AcceptableSet::new(&f.sys, only).unwrap();
        let v = Weights::indicator(f.sys.ground(), lab(&[5, 6]));
        assert!(!in_w(&f.sys, &o, &v));
    }

    #[test]
    fn witness_is_tight_on_fixtures() {
        for name in ["ex1a", "ex1b", "ex1c", "ex6"] {
            let f = worked_example(name).unwrap();
            let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
            let rep = verify_milgrom(&f.sys, &o, f.inner.as_ref().unwrap(), 50, 1).unwrap();
            assert!(rep.witness_in_w, "{name}");
            assert_eq!(rep.witness_ratio, rep.rho, "{name}");
        }
    }

    #[test]
    fn bound_fails_for_non_hereditary_acceptable_set() {
        // On ex6, v = 1_{5} lies in W because {5} is a member of O attaining
        // the maximum 1, but element 5 is a loop of M so V*(M, v) = 0.
        let f = worked_example("ex6").unwrap();
        let o = AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
        let m = f.inner.as_ref().unwrap();
        assert_eq!(m.rank(lab(&[5])), 0);
        let rep = verify_milgrom(&f.sys, &o, m, 0, 0).unwrap();
        assert_eq!(rep.rho, ratio(1, 2));
        assert!(!rep.passed());
        let bad = rep.violation.unwrap();
        assert_eq!(bad.ratio, ratio(0, 1));
        assert_eq!(rep.sampled_min, Some(ratio(0, 1)));
    }

    #[test]
    fn bound_holds_for_hereditary_acceptable_sets() {
        let mut r = rng(5);
        for sys in all_systems(4).unwrap().iter().step_by(3) {
            let Some(fam) = random_acceptable(sys, &mut r) else { continue };
            let o = AcceptableSet::new(sys, fam).unwrap().dagger();
            let best = rho_max_exact(sys, &o).unwrap();
            let rep = verify_milgrom(sys, &o, &best.matroid, 20, 2).unwrap();
            assert!(rep.passed(), "{:?} {:?}", sys.maximal_sets(), o.family().members());
        }
    }
}
