//! Subcommands other than `verify`.

use std::path::Path;

use matroid_approx::approx::{
    build_ip, export_ip as export_model, in_w, rho_max_exact, rho_max_heuristic, solve_ip_bruteforce,
    EXACT_MAX_N,
};
use matroid_approx::instances::{
    worked_example, path_stable_set, random_hereditary, random_weights, rng, twin_peaks, Density,
};
use matroid_approx::matroid::{matroid_from_delta, uniform};
use matroid_approx::quotient::{circuit_bound, tight_weights};
use matroid_approx::rational::{self, ratio, Rational};
use matroid_approx::{
    greedy as run_greedy, greedy_ratio, optimal_basis, rank_quotient, rho as rho_of, rho_matroid,
    AcceptableSet, Error, GroundSet, IndependenceSystem, Mask, Matroid, TieBreak, Weights,
};
use rayon::prelude::*;

use crate::io::{self, sets_json, system_json, weights_strings, Inputs};
use crate::report::Report;
use crate::{
    AcceptableArgs, CheckArgs, CompareArgs, ExportIpArgs, Failure, GenArgs, GenKind, GreedyArgs, Output,
    QArgs, RhoArgs, RhoMaxArgs,
};

fn done(r: Report, inputs: Inputs) -> Result<Output, Failure> {
    Ok(Output::Report(r, inputs.digest()))
}

fn emit(text: String, out: Option<&Path>, float: bool) -> Result<Output, Failure> {
    match out {
        None => Ok(Output::Text(text)),
        Some(path) => {
            io::write(path, &text)?;
            let mut r = Report::new(float);
            r.put("written", [path.display().to_string()]);
            done(r, Inputs::new())
        }
    }
}

fn parse_density(s: &str) -> Result<Density, Failure> {
    let bad = || Failure::validation(format!("density {s:?}: expected p/q with 0 <= p <= q"));
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let q: u32 = q.trim().parse().map_err(|_| bad())?;
    Density::new(p, q).map_err(|_| bad())
}

pub fn gen(a: GenArgs, float: bool) -> Result<Output, Failure> {
    let (sys, out) = match a.kind {
        GenKind::TwinPeaks { e1, k1, e2, k2, out } => (twin_peaks(e1, k1, e2, k2)?, out),
        GenKind::Path { n, out } => (path_stable_set(n)?, out),
        GenKind::Random {
            n,
            density,
            seed,
            allow_loops,
            out,
        } => {
            let d = parse_density(&density)?;
            (random_hereditary(n, d, seed, allow_loops)?, out)
        }
        GenKind::Uniform { n, k, out } => {
            let g = GroundSet::new(n)?;
            (uniform(g, g.full(), k)?.into_system(), out)
        }
        GenKind::Fixture {
            name,
            with_acceptable,
            with_inner,
            out_dir,
        } => return gen_fixture(&name, with_acceptable, with_inner, &out_dir, float),
    };
    emit(system_json(&sys), out.as_deref(), float)
}

fn gen_fixture(name: &str, with_acceptable: bool, with_inner: bool, dir: &Path, float: bool) -> Result<Output, Failure> {
    let f = worked_example(name)?;
    let mut files = vec![(format!("{name}.json"), system_json(&f.sys))];
    if with_acceptable {
        let fam = f
            .acceptable
            .as_ref()
            .ok_or_else(|| Failure::validation(format!("fixture {name} has no acceptable set")))?;
        files.push((format!("{name}.acceptable.json"), sets_json(fam)));
    }
    if with_inner {
        let m = f
            .inner
            .as_ref()
            .ok_or_else(|| Failure::validation(format!("fixture {name} has no inner matroid")))?;
        files.push((format!("{name}.inner.json"), system_json(m.system())));
    }
    std::fs::create_dir_all(dir).map_err(|e| Failure::validation(format!("{}: {e}", dir.display())))?;
    let mut written = Vec::new();
    for (file, text) in files {
        let path = dir.join(file);
        io::write(&path, &text)?;
        written.push(path.display().to_string());
    }
    let mut r = Report::new(float);
    r.put("fixture", name).put("written", written);
    let mut exp = r.child();
    for e in &f.expected {
        exp.rat(e.key, &e.value);
    }
    r.put("expected", exp.into_value());
    done(r, Inputs::new())
}

fn acceptable_set(
    inputs: &mut Inputs,
    a: &AcceptableArgs,
    sys: &IndependenceSystem,
) -> Result<(AcceptableSet, &'static str), Failure> {
    if let Some(path) = &a.acceptable {
        let fam = inputs.sets(path, sys.ground())?;
        let o = AcceptableSet::new(sys, fam).map_err(|e| Failure::from(e).context(path))?;
        Ok((o, "file"))
    } else if a.bases {
        Ok((AcceptableSet::bases(sys), "bases"))
    } else {
        Ok((AcceptableSet::all_independent(sys), "all_independent"))
    }
}

pub fn check(a: CheckArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let is_matroid = sys.is_matroid();
    if a.require_matroid && !is_matroid {
        return Err(Failure::validation(format!("{}: system is not a matroid", a.system.display())));
    }
    let full = sys.ground().full();
    let (l, r_full) = sys.rank_pair(full);
    let mut r = Report::new(float);
    r.put("n", sys.n())
        .put("maximal", sys.maximal_sets().len())
        .put("independent", sys.independent_sets().len())
        .put("rank", r_full)
        .put("lower_rank", l)
        .put("normal", sys.is_normal())
        .mask("loops", sys.loops())
        .put("matroid", is_matroid)
        .put("circuits", sys.circuits().len())
        .put("max_circuits_on_augment", sys.max_circuits_on_augment());
    if let Some(path) = &a.acceptable {
        let fam = inputs.sets(path, sys.ground())?;
        let o = AcceptableSet::new(&sys, fam).map_err(|e| Failure::from(e).context(path))?;
        r.put("acceptable", o.len()).masks("acceptable_support", &[o.family().support()]);
    }
    done(r, inputs)
}

pub fn greedy(a: GreedyArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let v = inputs.weights(&a.weights, sys.ground())?;
    let tb = match &a.tiebreak {
        Some(p) => inputs.tiebreak(p, sys.n())?,
        None => TieBreak::identity(sys.n()),
    };
    let g = run_greedy(&sys, &v, &tb)?;
    let opt = optimal_basis(&sys, &v)?;
    let ratio = match greedy_ratio(&sys, &v, &tb) {
        Ok(x) => Some(x),
        Err(Error::UndefinedRatio) => None,
        Err(e) => return Err(e.into()),
    };
    let mut r = Report::new(float);
    r.mask("set", g.set)
        .rat("value", &g.value)
        .mask("optimal_set", opt.set)
        .rat("optimum", &opt.value)
        .opt_rat("ratio", ratio.as_ref())
        .put("tiebreak", tb.labels());
    done(r, inputs)
}

pub fn q(a: QArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let q = rank_quotient(&sys)?;
    let mut r = Report::new(float);
    r.rat("q", &q.q).mask("witness", q.witness).put("l", q.lower_rank).put("r", q.rank);
    if a.tight {
        let t = tight_weights(&sys)?;
        let mut tr = r.child();
        tr.put("v", weights_strings(&t.weights))
            .put("perm", t.tie_break.labels())
            .rat("ratio", &t.ratio);
        r.put("tight", tr.into_value());
        let b = circuit_bound(&sys);
        r.put("p", b.p).rat("circuit_bound", &b.bound);
    }
    done(r, inputs)
}

fn load_inner(inputs: &mut Inputs, path: &Path, sys: &IndependenceSystem) -> Result<Matroid, Failure> {
    let m = inputs.matroid(path)?;
    if m.ground() != sys.ground() {
        return Err(Error::GroundMismatch {
            left: sys.n(),
            right: m.ground().len(),
        }
        .into());
    }
    if !m.is_inner(sys) {
        return Err(Failure::validation(format!("{}: not contained in the system", path.display())));
    }
    Ok(m)
}

pub fn rho(a: RhoArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let fam = inputs.sets(&a.acceptable, sys.ground())?;
    let o = AcceptableSet::new(&sys, fam).map_err(|e| Failure::from(e).context(&a.acceptable))?;
    let m = load_inner(&mut inputs, &a.inner, &sys)?;
    let rep = if a.dagger {
        rho_of(&sys, &o.dagger(), m.system())?
    } else {
        rho_matroid(&sys, &o, &m)?
    };
    let mut r = Report::new(float);
    r.rat("rho", &rep.rho)
        .mask("witness", rep.argmin)
        .mask("inner_basis", rep.inner_basis)
        .put("dagger", a.dagger);
    done(r, inputs)
}

struct Chosen {
    matroid: Matroid,
    rho: Rational,
    argmin: Mask,
    method: &'static str,
}

fn best_inner(sys: &IndependenceSystem, o: &AcceptableSet, heuristic: bool, budget: usize, seed: u64) -> Result<Chosen, Failure> {
    if heuristic {
        let h = rho_max_heuristic(sys, o, budget, seed)?;
        Ok(Chosen {
            matroid: h.matroid,
            rho: h.rho,
            argmin: h.argmin,
            method: "heuristic",
        })
    } else {
        let e = rho_max_exact(sys, o)?;
        Ok(Chosen {
            matroid: e.matroid,
            rho: e.rho,
            argmin: e.argmin,
            method: "exact",
        })
    }
}

pub fn rho_max(a: RhoMaxArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let (o, which) = acceptable_set(&mut inputs, &a.acceptable, &sys)?;
    let mut r = Report::new(float);
    let best = if a.heuristic {
        let h = rho_max_heuristic(&sys, &o, a.budget, a.seed)?;
        r.rat("start_rho", &h.start_rho).put("budget", a.budget).put("seed", a.seed);
        Chosen {
            matroid: h.matroid,
            rho: h.rho,
            argmin: h.argmin,
            method: "heuristic",
        }
    } else {
        let e = rho_max_exact(&sys, &o)?;
        r.put("examined", e.examined);
        Chosen {
            matroid: e.matroid,
            rho: e.rho,
            argmin: e.argmin,
            method: "exact",
        }
    };
    r.rat("rho", &best.rho)
        .mask("witness", best.argmin)
        .put("method", best.method)
        .put("acceptable", which)
        .put("inner_rank", best.matroid.rank_of_matroid())
        .masks("inner_bases", best.matroid.bases());
    if let Some(path) = &a.inner_out {
        io::write(path, &system_json(best.matroid.system()))?;
        r.put("written", [path.display().to_string()]);
    }
    done(r, inputs)
}

pub fn export_ip(a: ExportIpArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let (o, which) = acceptable_set(&mut inputs, &a.acceptable, &sys)?;
    let model = build_ip(&sys, &o)?;
    let text = export_model(&model);
    if a.out.is_none() && !a.solve {
        return Ok(Output::Text(text));
    }
    let mut r = Report::new(float);
    r.put("acceptable", which)
        .put("variables", model.variable_count())
        .put("monotone_rows", model.monotone_rows().count())
        .put("submodular_rows", model.submodular_rows().count())
        .put("objective_rows", model.objective_rows().count());
    if let Some(path) = &a.out {
        io::write(path, &text)?;
        r.put("written", [path.display().to_string()]);
    }
    if a.solve {
        let sol = solve_ip_bruteforce(&model, &sys, &o)?;
        let m = matroid_from_delta(&sys, &sol.delta)?;
        r.rat("t_star", &sol.t_star)
            .put("feasible", sol.feasible)
            .masks("inner_bases", m.bases());
    }
    done(r, inputs)
}

/// Running minimum, its weight vector and exact mean of a ratio column.
#[derive(Default)]
struct Column {
    min: Option<Rational>,
    worst: Option<Vec<String>>,
    sum: Option<Rational>,
    count: u64,
}

impl Column {
    fn add(&mut self, x: &Rational, v: &Weights) {
        if self.min.as_ref().is_none_or(|m| x < m) {
            self.min = Some(x.clone());
            self.worst = Some(weights_strings(v));
        }
        self.sum = Some(self.sum.take().unwrap_or_else(|| ratio(0, 1)) + x);
        self.count += 1;
    }

    fn report(&self, parent: &Report) -> serde_json::Value {
        let mut r = parent.child();
        let mean = self.sum.as_ref().map(|s| s / rational::from_int(self.count));
        r.opt_rat("min", self.min.as_ref())
            .put("min_v", &self.worst)
            .opt_rat("mean", mean.as_ref());
        r.into_value()
    }
}

fn best_value(v: &Weights, sets: &[Mask]) -> Rational {
    v.max_over(sets).map(|(_, x)| x).unwrap_or_else(|| ratio(0, 1))
}

pub fn compare(a: CompareArgs, float: bool) -> Result<Output, Failure> {
    let mut inputs = Inputs::new();
    let sys = inputs.system(&a.system)?;
    let (o, which) = acceptable_set(&mut inputs, &a.acceptable, &sys)?;
    let chosen = match &a.inner {
        Some(path) => {
            let m = load_inner(&mut inputs, path, &sys)?;
            let rep = rho_matroid(&sys, &o, &m)?;
            Chosen {
                matroid: m,
                rho: rep.rho,
                argmin: rep.argmin,
                method: "given",
            }
        }
        None => best_inner(&sys, &o, sys.n() > EXACT_MAX_N, a.budget, a.seed)?,
    };
    let closure = o.closure_system();
    let tb = TieBreak::identity(sys.n());

    let mut r0 = rng(a.seed);
    let weights: Vec<Weights> = (0..a.trials).map(|_| random_weights(sys.ground(), 10, 4, &mut r0)).collect();
    let rows: Vec<Option<[Rational; 3]>> = weights
        .par_iter()
        .map(|v| {
            if !in_w(&sys, &o, v) {
                return None;
            }
            let opt = best_value(v, sys.maximal_sets());
            if opt == ratio(0, 1) {
                return None;
            }
            let g = run_greedy(&sys, v, &tb).expect("same ground set").value;
            let gd = run_greedy(&closure, v, &tb).expect("same ground set").value;
            let mv = best_value(v, chosen.matroid.bases());
            Some([g / &opt, gd / &opt, mv / &opt])
        })
        .collect();
    let mut cols: [Column; 3] = Default::default();
    for (v, row) in weights.iter().zip(&rows) {
        for (c, x) in cols.iter_mut().zip(row.iter().flatten()) {
            c.add(x, v);
        }
    }

    let mut r = Report::new(float);
    r.put("acceptable", which)
        .put("inner_method", chosen.method)
        .rat("rho", &chosen.rho)
        .mask("witness", chosen.argmin)
        .masks("inner_bases", chosen.matroid.bases())
        .put("trials", a.trials)
        .put("in_w", cols[0].count)
        .put("seed", a.seed);
    let greedy_col = cols[0].report(&r);
    let dagger_col = cols[1].report(&r);
    let inner_col = cols[2].report(&r);
    r.put("greedy", greedy_col).put("greedy_dagger", dagger_col).put("inner", inner_col);
    if let Ok(t) = tight_weights(&closure) {
        let g = run_greedy(&closure, &t.weights, &t.tie_break)?.value;
        let opt = optimal_basis(&sys, &t.weights)?.value;
        let mut tr = r.child();
        tr.put("v", weights_strings(&t.weights)).put("perm", t.tie_break.labels());
        if opt != ratio(0, 1) {
            tr.rat("ratio", &(g / opt));
        }
        r.put("greedy_dagger_tight", tr.into_value());
    }
    done(r, inputs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn density_strings() {
        let d = parse_density("1/2").unwrap();
        assert_eq!((d.num, d.den), (1, 2));
        let d = parse_density("1").unwrap();
        assert_eq!((d.num, d.den), (1, 1));
        assert!(parse_density("3/2").is_err());
        assert!(parse_density("half").is_err());
    }

    #[test]
    fn column_mean_is_exact() {
        let g = GroundSet::new(1).unwrap();
        let mut c = Column::default();
        c.add(&ratio(1, 3), &Weights::from_integers(g, &[2]).unwrap());
        c.add(&ratio(1, 2), &Weights::from_integers(g, &[1]).unwrap());
        assert_eq!(c.min, Some(ratio(1, 3)));
        let v = c.report(&Report::new(false));
        assert_eq!(v.to_string(), r#"{"min":"1/3","min_v":["2"],"mean":"5/12"}"#);
    }

    #[test]
    fn written_sets_round_trip() {
        let fam = worked_example("ex6").unwrap().acceptable.unwrap();
        assert_eq!(io::parse_sets(&sets_json(&fam)).unwrap(), fam);
        assert_eq!(io::hexes(&[Mask(0x1d)]), ["0x1d"]);
    }
}
