//! The rank-reduction integer program.
//!
//! An inner matroid is described by reductions `δ_S = r(S) - r'(S)` of the
//! host rank function, where `r'` must satisfy the rank axioms. Its value is
//! `min over S ∈ O of 1 - δ_S / r(S)`, linearized as `r(S)·t + δ_S <= r(S)`
//! with `t` maximized. The axioms are written locally: monotonicity on
//! cover pairs and submodularity on `(S, {j, k})` triples.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use super::{AcceptableSet, Frac};
use crate::error::{Error, Result};
use crate::mask::Mask;
use crate::matroid::{matroid_from_delta, RankTable};
use crate::rational::Rational;
use crate::setfamily::{GroundSet, IndependenceSystem};

/// Largest ground set for which a model is built.
pub const IP_MAX_N: usize = 16;
/// Largest ground set for the exhaustive solver.
pub const IP_BRUTE_FORCE_MAX_N: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Delta(Mask),
    T,
}

impl core::fmt::Display for Var {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Var::Delta(s) => write!(f, "d_{s}"),
            Var::T => f.write_str("t"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowClass {
    Monotone,
    Submodular,
    Objective,
}

/// `Σ coef · var <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub class: RowClass,
    pub name: String,
    pub terms: Vec<(Var, i64)>,
    pub rhs: i64,
}

impl Row {
    fn holds(&self, delta: &RankTable, t: &Rational) -> bool {
        let mut lhs = Rational::from_integer(0.into());
        for &(var, c) in &self.terms {
            let val = match var {
                Var::Delta(s) => Rational::from_integer((delta.get(s) as i64).into()),
                Var::T => t.clone(),
            };
            lhs += val * Rational::from_integer(c.into());
        }
        lhs <= Rational::from_integer(self.rhs.into())
    }
}

/// The model for a host system and acceptable family. Rows are generated on
/// demand so large models are not materialized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpModel {
    ground: GroundSet,
    rank: RankTable,
    objective_sets: Vec<Mask>,
}

pub fn build_ip(sys: &IndependenceSystem, o: &AcceptableSet) -> Result<IpModel> {
    if sys.n() > IP_MAX_N {
        return Err(Error::Capability {
            what: "integer program construction",
            max: IP_MAX_N,
            n: sys.n(),
        });
    }
    let rank = sys.rank_table();
    let objective_sets = o.iter().filter(|&s| rank.get(s) > 0).collect();
    Ok(IpModel {
        ground: sys.ground(),
        rank,
        objective_sets,
    })
}

fn r(model: &IpModel, s: Mask) -> i64 {
    model.rank.get(s) as i64
}

impl IpModel {
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Rank function of the host.
    pub fn rank(&self) -> &RankTable {
        &self.rank
    }

    /// Members of `O` with positive rank.
    pub fn objective_sets(&self) -> &[Mask] {
        &self.objective_sets
    }

    pub fn variable_count(&self) -> usize {
        self.ground.subset_count() + 1
    }

    /// `d_{S+j} - d_S <= r(S+j) - r(S)` for every cover pair, by `(S, j)`.
    pub fn monotone_rows(&self) -> impl Iterator<Item = Row> + '_ {
        let n = self.ground.len();
        self.ground.all_subsets().flat_map(move |s| {
            (0..n).filter(move |&j| !s.contains(j)).map(move |j| {
                let t = s.with(j);
                Row {
                    class: RowClass::Monotone,
                    name: alloc::format!("mono_{s}_{}", j + 1),
                    terms: alloc::vec![(Var::Delta(t), 1), (Var::Delta(s), -1)],
                    rhs: r(self, t) - r(self, s),
                }
            })
        })
    }

    /// `-d_{S+j+k} + d_{S+j} + d_{S+k} - d_S <= r(S+j) + r(S+k) - r(S) - r(S+j+k)`
    /// for `j < k` outside `S`, by `(S, j, k)`.
    pub fn submodular_rows(&self) -> impl Iterator<Item = Row> + '_ {
        let n = self.ground.len();
        self.ground.all_subsets().flat_map(move |s| {
            (0..n)
                .filter(move |&j| !s.contains(j))
                .flat_map(move |j| (j + 1..n).filter(move |&k| !s.contains(k)).map(move |k| (j, k)))
                .map(move |(j, k)| {
                    let (sj, sk, sjk) = (s.with(j), s.with(k), s.with(j).with(k));
                    Row {
                        class: RowClass::Submodular,
                        name: alloc::format!("sub_{s}_{}_{}", j + 1, k + 1),
                        terms: alloc::vec![
                            (Var::Delta(sjk), -1),
                            (Var::Delta(sj), 1),
                            (Var::Delta(sk), 1),
                            (Var::Delta(s), -1),
                        ],
                        rhs: r(self, sj) + r(self, sk) - r(self, s) - r(self, sjk),
                    }
                })
        })
    }

    /// `r(S)·t + d_S <= r(S)` for `S ∈ O` with `r(S) > 0`.
    pub fn objective_rows(&self) -> impl Iterator<Item = Row> + '_ {
        self.objective_sets.iter().map(move |&s| Row {
            class: RowClass::Objective,
            name: alloc::format!("obj_{s}"),
            terms: alloc::vec![(Var::T, r(self, s)), (Var::Delta(s), 1)],
            rhs: r(self, s),
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = Row> + '_ {
        self.monotone_rows()
            .chain(self.submodular_rows())
            .chain(self.objective_rows())
    }

    /// Whether `(δ, t)` satisfies bounds and every row.
    pub fn is_feasible(&self, delta: &RankTable, t: &Rational) -> bool {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        delta.ground() == self.ground
            && *t >= zero
            && *t <= one
            && delta.get(Mask::EMPTY) == 0
            && self.ground.all_subsets().all(|s| delta.get(s) <= self.rank.get(s))
            && self.rows().all(|row| row.holds(delta, t))
    }

    /// Objective value `min over S of 1 - δ_S / r(S)` (1 when no set counts).
    pub fn value(&self, delta: &RankTable) -> Rational {
        self.value_frac(|s| delta.get(s)).to_rational()
    }

    fn value_frac(&self, delta: impl Fn(Mask) -> usize) -> Frac {
        self.objective_sets
            .iter()
            .map(|&s| {
                let rs = self.rank.get(s);
                Frac::new(rs - delta(s), rs)
            })
            .min()
            .unwrap_or(Frac::one())
    }
}

fn write_term(out: &mut String, first: bool, var: Var, c: i64) {
    let sign = if c < 0 { "-" } else if first { "" } else { "+" };
    let mag = c.unsigned_abs();
    let sep = if sign.is_empty() { "" } else { " " };
    if mag == 1 {
        let _ = write!(out, " {sign}{sep}{var}");
    } else {
        let _ = write!(out, " {sign}{sep}{mag} {var}");
    }
}

/// Solver-ready text. Identical input gives byte-identical output.
pub fn export_ip(model: &IpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ rank reduction model, n = {}", model.ground.len());
    out.push_str("OBJECTIVE\n maximize\n obj: t\nCONSTRAINTS\n");
    for row in model.rows() {
        let _ = write!(out, " {}:", row.name);
        for (i, &(var, c)) in row.terms.iter().enumerate() {
            write_term(&mut out, i == 0, var, c);
        }
        let _ = writeln!(out, " <= {}", row.rhs);
    }
    out.push_str("BOUNDS\n");
    for s in model.ground.all_subsets() {
        let _ = writeln!(out, " 0 <= d_{s} <= {}", model.rank.get(s));
    }
    out.push_str(" 0 <= t <= 1\nGENERAL\n");
    for s in model.ground.all_subsets() {
        let _ = writeln!(out, " d_{s}");
    }
    out.push_str("END\n");
    out
}

/// Exhaustive optimum of the model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IpSolution {
    pub t_star: Rational,
    /// An optimal `δ`; among optima the first in search order (smallest
    /// reductions on small masks first).
    pub delta: RankTable,
    /// Number of feasible `δ` found; each one was converted into an inner
    /// matroid and checked.
    pub feasible: usize,
}

/// Enumerates every feasible `δ` by assigning `r'(S)` in ascending mask
/// order, pruning with the cover and local submodularity rows as soon as
/// their sets are assigned. Every feasible `δ` is converted back into an
/// inner matroid.
pub fn solve_ip_bruteforce(model: &IpModel, sys: &IndependenceSystem, o: &AcceptableSet) -> Result<IpSolution> {
    let n = model.ground.len();
    if n > IP_BRUTE_FORCE_MAX_N {
        return Err(Error::Capability {
            what: "exhaustive integer program solving",
            max: IP_BRUTE_FORCE_MAX_N,
            n,
        });
    }
    if sys.ground() != model.ground {
        return Err(Error::GroundMismatch {
            left: n,
            right: sys.n(),
        });
    }
    debug_assert!(o.iter().filter(|&s| model.rank.get(s) > 0).eq(model.objective_sets.iter().copied()));
    let size = model.ground.subset_count();
    let mut st = Solver {
        model,
        sys,
        reduced: alloc::vec![0usize; size],
        best: None,
        feasible: 0,
        error: None,
    };
    st.assign(1);
    if let Some(e) = st.error {
        return Err(e);
    }
    let (frac, delta) = st.best.expect("the all-loops reduction is always feasible");
    Ok(IpSolution {
        t_star: frac.to_rational(),
        delta,
        feasible: st.feasible,
    })
}

struct Solver<'a> {
    model: &'a IpModel,
    sys: &'a IndependenceSystem,
    /// `r'` so far, indexed by mask.
    reduced: Vec<usize>,
    best: Option<(Frac, RankTable)>,
    feasible: usize,
    error: Option<Error>,
}

impl Solver<'_> {
    fn consistent(&self, s: Mask) -> bool {
        let rs = self.reduced[s.bits() as usize];
        let elems: Vec<usize> = s.iter().collect();
        for &j in &elems {
            let below = self.reduced[s.without(j).bits() as usize];
            if below > rs || rs > below + 1 {
                return false;
            }
        }
        for (a, &j) in elems.iter().enumerate() {
            for &k in &elems[a + 1..] {
                let base = s.without(j).without(k);
                let lhs = rs + self.reduced[base.bits() as usize];
                let rhs = self.reduced[s.without(j).bits() as usize] + self.reduced[s.without(k).bits() as usize];
                if lhs > rhs {
                    return false;
                }
            }
        }
        true
    }

    fn assign(&mut self, idx: usize) {
        if self.error.is_some() {
            return;
        }
        if idx == self.reduced.len() {
            self.leaf();
            return;
        }
        let s = Mask(idx as u32);
        let top = self.model.rank.get(s);
        for v in (0..=top).rev() {
            self.reduced[idx] = v;
            if self.consistent(s) {
                self.assign(idx + 1);
            }
        }
        self.reduced[idx] = 0;
    }

    fn leaf(&mut self) {
        let mut delta = RankTable::zero(self.model.ground);
        for s in self.model.ground.all_subsets() {
            delta.set(s, self.model.rank.get(s) - self.reduced[s.bits() as usize]);
        }
        self.feasible += 1;
        match matroid_from_delta(self.sys, &delta) {
            Ok(m) => {
                let back = m.rank_table();
                let round_trip = self
                    .model
                    .ground
                    .all_subsets()
                    .all(|s| back.get(s) == self.reduced[s.bits() as usize]);
                if !round_trip || !m.is_inner(self.sys) {
                    self.error = Some(Error::NotAMatroid);
                    return;
                }
            }
            Err(e) => {
                self.error = Some(e);
                return;
            }
        }
        let frac = self.model.value_frac(|s| delta.get(s));
        if self.best.as_ref().is_none_or(|(b, _)| frac > *b) {
            self.best = Some((frac, delta));
        }
    }
}
