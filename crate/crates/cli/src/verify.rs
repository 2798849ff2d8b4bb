//! Property suites run by `verify`.
//!
//! Each suite checks one family of invariants on every system with
//! `n <= 4` and on `--samples` seeded random normal systems for each size
//! from 5 to `--n-max`. Instances are numbered in that order; sharding keeps
//! instance `i` iff `i mod m = k`, and each instance draws its randomness
//! from its own index, so shards reproduce the unsharded run exactly.

use std::str::FromStr;

use matroid_approx::approx::{
    build_ip, enumerate_inner_matroids, exists_perfect_matroid, rho_max_exact, solve_ip_bruteforce,
    verify_milgrom, PerfectMatroid, EXACT_MAX_N, IP_BRUTE_FORCE_MAX_N,
};
use matroid_approx::instances::{all_small_weights, all_systems, random_acceptable, random_hereditary, random_weights, rng, Density};
use matroid_approx::matroid::check_basis_exchange;
use matroid_approx::quotient::{circuit_bound, tight_weights};
use matroid_approx::rational::ratio;
use matroid_approx::{
    greedy, greedy_ratio, optimal_basis, rank_quotient, AcceptableSet, Error, IndependenceSystem, Matroid,
    SetFamily, TieBreak, Weights,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::io::{hexes, weights_strings, Inputs};
use crate::report::Report;
use crate::{Failure, Output, Suite, VerifyArgs};

/// Largest size covered exhaustively.
const EXHAUSTIVE_N: usize = 4;
/// Largest size for which `{0,1,2}^n` is enumerated in the matroid suite.
const SMALL_WEIGHTS_N: usize = 6;
/// Largest size accepted by `random_hereditary`.
const RANDOM_MAX_N: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shard {
    pub k: usize,
    pub m: usize,
}

impl FromStr for Shard {
    type Err = String;

    fn from_str(s: &str) -> Result<Shard, String> {
        let (k, m) = s.split_once('/').ok_or("expected k/m")?;
        let k: usize = k.parse().map_err(|_| "k is not a number")?;
        let m: usize = m.parse().map_err(|_| "m is not a number")?;
        if m == 0 || k >= m {
            return Err("need 0 <= k < m".into());
        }
        Ok(Shard { k, m })
    }
}

pub fn parse_shard(s: &str) -> Result<Shard, String> {
    s.parse()
}

/// A failing instance, with whatever extra data reproduces the failure.
struct Counterexample {
    sys: IndependenceSystem,
    acceptable: Option<SetFamily>,
    inner: Option<Matroid>,
    weights: Option<Weights>,
    perm: Option<Vec<usize>>,
    detail: String,
}

impl Counterexample {
    fn new(sys: &IndependenceSystem, detail: String) -> Counterexample {
        Counterexample {
            sys: sys.clone(),
            acceptable: None,
            inner: None,
            weights: None,
            perm: None,
            detail,
        }
    }

    fn to_json(&self, suite: &str) -> Value {
        let mut v = json!({
            "suite": suite,
            "n": self.sys.n(),
            "maximal_independent": hexes(self.sys.maximal_sets()),
        });
        let obj = v.as_object_mut().expect("object");
        if let Some(a) = &self.acceptable {
            obj.insert("acceptable".into(), json!(hexes(a.members())));
        }
        if let Some(m) = &self.inner {
            obj.insert("inner".into(), json!(hexes(m.bases())));
        }
        if let Some(w) = &self.weights {
            obj.insert("v".into(), json!(weights_strings(w)));
        }
        if let Some(p) = &self.perm {
            obj.insert("perm".into(), json!(p));
        }
        obj.insert("detail".into(), json!(self.detail));
        v
    }
}

type Check = Result<usize, Box<Counterexample>>;

fn fail(sys: &IndependenceSystem, detail: String) -> Check {
    Err(Box::new(Counterexample::new(sys, detail)))
}

fn instance_rng(seed: u64, index: usize) -> impl Rng {
    rng(seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn quotient(sys: &IndependenceSystem) -> Option<matroid_approx::Rational> {
    match rank_quotient(sys) {
        Ok(q) => Some(q.q),
        Err(Error::UndefinedQuotient) => None,
        Err(e) => unreachable!("rank quotient of a valid system: {e}"),
    }
}

fn check_greedy(sys: &IndependenceSystem, r: &mut impl Rng, trials: usize) -> Check {
    let Some(q) = quotient(sys) else { return Ok(0) };
    let mut checks = 0;
    for _ in 0..trials {
        let v = random_weights(sys.ground(), 10, 4, r);
        let mut order: Vec<usize> = (0..sys.n()).collect();
        order.shuffle(r);
        let tb = TieBreak::new(order).expect("a permutation");
        match greedy_ratio(sys, &v, &tb) {
            Ok(g) if q <= g && g <= ratio(1, 1) => checks += 1,
            Ok(g) => {
                let mut c = Counterexample::new(sys, format!("greedy ratio {g} outside [{q}, 1]"));
                c.weights = Some(v);
                c.perm = Some(tb.labels());
                return Err(Box::new(c));
            }
            Err(Error::UndefinedRatio) => {}
            Err(e) => unreachable!("{e}"),
        }
    }
    if q < ratio(1, 1) {
        let t = tight_weights(sys).expect("non-matroid has tight weights");
        let g = greedy_ratio(sys, &t.weights, &t.tie_break).expect("positive optimum");
        let binary = t.weights.values().iter().all(|x| *x == ratio(0, 1) || *x == ratio(1, 1));
        if g != q || !binary {
            let mut c = Counterexample::new(sys, format!("tight weights give {g}, q = {q}"));
            c.weights = Some(t.weights);
            c.perm = Some(t.tie_break.labels());
            return Err(Box::new(c));
        }
        checks += 1;
    }
    Ok(checks)
}

fn check_quotient(sys: &IndependenceSystem) -> Check {
    let Some(q) = quotient(sys) else { return Ok(0) };
    let b = circuit_bound(sys);
    if q < b.bound {
        return fail(sys, format!("q = {q} < 1/{}", b.p));
    }
    if (q == ratio(1, 1)) != sys.is_matroid() {
        return fail(sys, format!("q = {q} disagrees with the augmentation test"));
    }
    Ok(2)
}

fn check_matroid(sys: &IndependenceSystem, r: &mut impl Rng, trials: usize) -> Check {
    let aug = sys.is_matroid();
    let axioms = sys.rank_table().check_rank_axioms();
    let exchange = check_basis_exchange(sys.maximal());
    if aug != axioms || axioms != exchange {
        return fail(
            sys,
            format!("augmentation {aug}, rank axioms {axioms}, basis exchange {exchange} disagree"),
        );
    }
    let tb = TieBreak::identity(sys.n());
    let mut checks = 1;
    if aug {
        let mut ws = if sys.n() <= SMALL_WEIGHTS_N {
            all_small_weights(sys.ground(), 2)
        } else {
            Vec::new()
        };
        ws.extend((0..trials).map(|_| random_weights(sys.ground(), 10, 4, r)));
        for v in ws {
            let g = greedy(sys, &v, &tb).expect("same ground set").value;
            let opt = optimal_basis(sys, &v).expect("same ground set").value;
            if g != opt {
                let mut c = Counterexample::new(sys, format!("greedy {g} < optimum {opt} on a matroid"));
                c.weights = Some(v);
                return Err(Box::new(c));
            }
            checks += 1;
        }
    } else {
        let t = tight_weights(sys).expect("non-matroid has tight weights");
        let g = greedy(sys, &t.weights, &t.tie_break).expect("same ground set").value;
        let opt = optimal_basis(sys, &t.weights).expect("same ground set").value;
        if g >= opt {
            let mut c = Counterexample::new(sys, "greedy optimal on tight weights of a non-matroid".into());
            c.weights = Some(t.weights);
            return Err(Box::new(c));
        }
        checks += 1;
    }
    Ok(checks)
}

fn check_index(sys: &IndependenceSystem) -> Check {
    let Some(q) = quotient(sys) else { return Ok(0) };
    for (name, o) in [
        ("all independent sets", AcceptableSet::all_independent(sys)),
        ("bases", AcceptableSet::bases(sys)),
    ] {
        let best = rho_max_exact(sys, &o).expect("n within the exact range");
        if best.rho > q {
            let mut c = Counterexample::new(sys, format!("rho^M = {} > q = {q} with O = {name}", best.rho));
            c.acceptable = Some(o.family().clone());
            c.inner = Some(best.matroid);
            return Err(Box::new(c));
        }
    }
    Ok(2)
}

fn check_perfect(sys: &IndependenceSystem, r: &mut impl Rng) -> Check {
    let Some(fam) = random_acceptable(sys, r) else { return Ok(0) };
    let o = AcceptableSet::new(sys, fam.clone()).expect("members are independent");
    let via_index = matches!(exists_perfect_matroid(sys, &o), Ok(PerfectMatroid::Exists(_)));
    let closure = o.dagger();
    let via_containment = enumerate_inner_matroids(sys)
        .expect("n within the exact range")
        .iter()
        .any(|m| closure.iter().all(|s| m.contains(s)));
    if via_index != via_containment {
        let mut c = Counterexample::new(
            sys,
            format!("rho = 1 attainable: {via_index}; inner matroid containing the closure: {via_containment}"),
        );
        c.acceptable = Some(fam);
        return Err(Box::new(c));
    }
    Ok(1)
}

fn check_milgrom(sys: &IndependenceSystem, r: &mut impl Rng, trials: usize, seed: u64) -> Check {
    let Some(fam) = random_acceptable(sys, r) else { return Ok(0) };
    let o = AcceptableSet::new(sys, fam.clone()).expect("members are independent");
    let inner = enumerate_inner_matroids(sys).expect("n within the exact range");
    let m = inner.choose(r).expect("the loop matroid is always inner").clone();
    let rep = verify_milgrom(sys, &o, &m, trials, seed).expect("valid triple");
    if rep.passed() {
        return Ok(rep.in_w + 1);
    }
    let mut c = Counterexample::new(sys, String::new());
    c.acceptable = Some(fam);
    match rep.violation {
        Some(v) => {
            c.detail = format!(
                "v in W gives V*(M, v) / V*(O, v) = {}/{} = {} < rho = {}",
                v.matroid_value, v.acceptable_value, v.ratio, rep.rho
            );
            c.weights = Some(v.weights);
        }
        None => {
            c.detail = format!("indicator witness gives {} (in W: {}), rho = {}", rep.witness_ratio, rep.witness_in_w, rep.rho);
            c.weights = Some(rep.witness);
        }
    }
    c.inner = Some(m);
    Err(Box::new(c))
}

fn check_ip(sys: &IndependenceSystem, r: &mut impl Rng) -> Check {
    if sys.n() > IP_BRUTE_FORCE_MAX_N {
        return Ok(0);
    }
    let Some(fam) = random_acceptable(sys, r) else { return Ok(0) };
    let o = AcceptableSet::new(sys, fam.clone()).expect("members are independent");
    let model = build_ip(sys, &o).expect("n within range");
    let sol = solve_ip_bruteforce(&model, sys, &o);
    let exact = rho_max_exact(sys, &o).expect("n within the exact range");
    let detail = match sol {
        Ok(s) if s.t_star == exact.rho && s.feasible == exact.examined => return Ok(s.feasible + 1),
        Ok(s) => format!(
            "t* = {} over {} feasible points; rho^M = {} over {} inner matroids",
            s.t_star, s.feasible, exact.rho, exact.examined
        ),
        Err(e) => e.to_string(),
    };
    let mut c = Counterexample::new(sys, detail);
    c.acceptable = Some(fam);
    Err(Box::new(c))
}

const SUITES: [Suite; 7] = [
    Suite::Greedy,
    Suite::Quotient,
    Suite::Matroid,
    Suite::Index,
    Suite::Perfect,
    Suite::Milgrom,
    Suite::Ip,
];

fn name(s: Suite) -> &'static str {
    match s {
        Suite::All => "all",
        Suite::Greedy => "greedy",
        Suite::Quotient => "quotient",
        Suite::Matroid => "matroid",
        Suite::Index => "index",
        Suite::Perfect => "perfect",
        Suite::Milgrom => "milgrom",
        Suite::Ip => "ip",
    }
}

fn needs_enumeration(s: Suite) -> bool {
    matches!(s, Suite::Index | Suite::Perfect | Suite::Milgrom)
}

fn instances(n_max: usize, samples: usize, seed: u64) -> Result<Vec<IndependenceSystem>, Failure> {
    let mut out = Vec::new();
    for n in 1..=n_max.min(EXHAUSTIVE_N) {
        out.extend(all_systems(n)?);
    }
    let half = Density::new(1, 2)?;
    for n in EXHAUSTIVE_N + 1..=n_max {
        for i in 0..samples as u64 {
            let s = seed.wrapping_mul(1_000_003).wrapping_add((n as u64) << 32).wrapping_add(i);
            out.push(random_hereditary(n, half, s, false)?);
        }
    }
    Ok(out)
}

struct SuiteOutcome {
    suite: Suite,
    instances: usize,
    checks: usize,
    failure: Option<Box<Counterexample>>,
}

fn run_suite(suite: Suite, systems: &[(usize, &IndependenceSystem)], a: &VerifyArgs) -> SuiteOutcome {
    let results: Vec<Check> = systems
        .par_iter()
        .map(|&(i, sys)| {
            let mut r = instance_rng(a.seed ^ suite as u64, i);
            match suite {
                Suite::Greedy => check_greedy(sys, &mut r, a.trials),
                Suite::Quotient => check_quotient(sys),
                Suite::Matroid => check_matroid(sys, &mut r, a.trials),
                Suite::Index => check_index(sys),
                Suite::Perfect => check_perfect(sys, &mut r),
                Suite::Milgrom => check_milgrom(sys, &mut r, a.trials, a.seed.wrapping_add(i as u64)),
                Suite::Ip => check_ip(sys, &mut r),
                Suite::All => unreachable!("expanded before dispatch"),
            }
        })
        .collect();
    let mut out = SuiteOutcome {
        suite,
        instances: systems.len(),
        checks: 0,
        failure: None,
    };
    // Instances are ordered by ground-set size, so the first failure is a smallest one.
    for res in results {
        match res {
            Ok(k) => out.checks += k,
            Err(c) => {
                if out.failure.is_none() {
                    out.failure = Some(c);
                }
            }
        }
    }
    out
}

pub fn run(a: VerifyArgs, float: bool) -> Result<Output, Failure> {
    let suites: Vec<Suite> = if a.suite == Suite::All {
        SUITES.to_vec()
    } else {
        vec![a.suite]
    };
    if a.n_max == 0 {
        return Err(Failure::validation("--n-max must be at least 1"));
    }
    if a.n_max > RANDOM_MAX_N {
        return Err(Error::Capability { what: "verify", max: RANDOM_MAX_N, n: a.n_max }.into());
    }
    if a.n_max > EXACT_MAX_N {
        if let Some(&s) = suites.iter().find(|&&s| needs_enumeration(s)) {
            return Err(Failure::Capability(format!(
                "suite {} enumerates inner matroids and needs n <= {EXACT_MAX_N}, got n = {}",
                name(s),
                a.n_max
            )));
        }
    }
    let systems = instances(a.n_max, a.samples, a.seed)?;
    let shard = a.shard.unwrap_or(Shard { k: 0, m: 1 });
    let picked: Vec<(usize, &IndependenceSystem)> = systems
        .iter()
        .enumerate()
        .filter(|(i, _)| i % shard.m == shard.k)
        .collect();

    let outcomes: Vec<SuiteOutcome> = suites.iter().map(|&s| run_suite(s, &picked, &a)).collect();

    let mut r = Report::new(float);
    let passed = outcomes.iter().all(|o| o.failure.is_none());
    r.put("passed", passed)
        .put("suite", name(a.suite))
        .put("n_max", a.n_max)
        .put("seed", a.seed)
        .put("trials", a.trials)
        .put("samples", a.samples)
        .put("shard", format!("{}/{}", shard.k, shard.m));
    let rows: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            let mut v = json!({
                "suite": name(o.suite),
                "instances": o.instances,
                "checks": o.checks,
                "passed": o.failure.is_none(),
            });
            if let Some(c) = &o.failure {
                v["counterexample"] = c.to_json(name(o.suite));
            }
            v
        })
        .collect();
    r.put("suites", rows);
    if let Some((o, c)) = outcomes
        .iter()
        .filter_map(|o| o.failure.as_ref().map(|c| (o, c)))
        .min_by_key(|(_, c)| c.sys.n())
    {
        r.put("counterexample", c.to_json(name(o.suite)));
    }
    if passed {
        Ok(Output::Report(r, Inputs::new().digest()))
    } else {
        Err(Failure::Verify(Box::new(r)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shards_parse() {
        assert_eq!(parse_shard("1/3"), Ok(Shard { k: 1, m: 3 }));
        assert!(parse_shard("3/3").is_err());
        assert!(parse_shard("0/0").is_err());
        assert!(parse_shard("2").is_err());
    }

    #[test]
    fn instance_list_is_ordered_by_size() {
        let xs = instances(5, 3, 1).unwrap();
        assert!(xs.windows(2).all(|w| w[0].n() <= w[1].n()));
        assert_eq!(xs.iter().filter(|s| s.n() == 5).count(), 3);
        assert_eq!(instances(5, 3, 1).unwrap(), xs);
    }

    #[test]
    fn counterexample_json_lists_extras() {
        let sys = IndependenceSystem::free(matroid_approx::GroundSet::new(2).unwrap());
        let mut c = Counterexample::new(&sys, "x".into());
        c.perm = Some(vec![2, 1]);
        let v = c.to_json("greedy");
        assert_eq!(
            v.to_string(),
            r#"{"suite":"greedy","n":2,"maximal_independent":["0x3"],"perm":[2,1],"detail":"x"}"#
        );
    }
}
