//! Re-derives every expected value carried by the worked-example fixtures.

use matroid_approx::approx::{rho_max_exact, rho_max_heuristic, DEFAULT_BUDGET};
use matroid_approx::instances::{
    path9_acceptable, worked_example, Origin, StableSetReading, FIXTURE_NAMES,
};
use matroid_approx::{
    greedy_ratio, rank_quotient, rho, rho_matroid, AcceptableSet, IndependenceSystem, Mask,
    Rational, TieBreak, Weights,
};

fn derive(name: &str, key: &str) -> Rational {
    let f = worked_example(name).unwrap();
    let o = || AcceptableSet::new(&f.sys, f.acceptable.clone().unwrap()).unwrap();
    let m = || f.inner.clone().unwrap();
    match key {
        "rho" => rho_matroid(&f.sys, &o(), &m()).unwrap().rho,
        "rho_dagger" => rho(&f.sys, &o().dagger(), m().system()).unwrap().rho,
        "rho_max" if f.sys.n() <= 6 => rho_max_exact(&f.sys, &o()).unwrap().rho,
        "rho_max" => rho_max_heuristic(&f.sys, &o(), DEFAULT_BUDGET, 0).unwrap().rho,
        "rho_max_zero_knowledge" => {
            rho_max_exact(&f.sys, &AcceptableSet::all_independent(&f.sys)).unwrap().rho
        }
        "q" => rank_quotient(&f.sys).unwrap().q,
        "q_dagger" => rank_quotient(&o().closure_system()).unwrap().q,
        "greedy_dagger_123" => {
            let closure = o().closure_system();
            let f123 = Mask::from_labels(&[1, 2, 3]);
            let small = closure.bases_of(f123).iter().min_by_key(|b| b.len()).unwrap();
            let v = Weights::indicator(closure.ground(), f123);
            greedy_ratio(&closure, &v, &TieBreak::front_loaded(closure.n(), small)).unwrap()
        }
        "rho_at_most_4" => {
            let o = AcceptableSet::new(&f.sys, path9_acceptable(StableSetReading::AtMost4)).unwrap();
            rho_matroid(&f.sys, &o, &m()).unwrap().rho
        }
        other => panic!("no derivation for {other}"),
    }
}

#[test]
fn every_expected_value_is_reproduced() {
    let mut seen = 0;
    for name in FIXTURE_NAMES {
        let f = worked_example(name).unwrap();
        for e in &f.expected {
            assert_eq!(derive(name, e.key), e.value, "{name}.{} ({:?})", e.key, e.origin);
            seen += 1;
        }
    }
    assert!(seen >= 15);
}

#[test]
fn fixtures_are_consistent() {
    for name in FIXTURE_NAMES {
        let f = worked_example(name).unwrap();
        assert_eq!(IndependenceSystem::hereditary_closure(f.sys.maximal()), f.sys);
        if let Some(fam) = &f.acceptable {
            assert!(AcceptableSet::new(&f.sys, fam.clone()).is_ok(), "{name}");
        }
        if let Some(m) = &f.inner {
            assert!(m.is_inner(&f.sys), "{name}");
            assert!(m.system().is_matroid(), "{name}");
        }
        assert!(f.expected.iter().any(|e| e.origin == Origin::Stated));
    }
    assert!(worked_example("ex7").is_err());
}

#[test]
fn path_example_facts() {
    let f = worked_example("stab9").unwrap();
    let full = f.sys.ground().full();
    assert_eq!(f.sys.rank(full), 5);
    assert!(f.sys.maximal().contains(Mask::from_labels(&[1, 3, 5, 7, 9])));
    assert!(f.sys.maximal().contains(Mask::from_labels(&[2, 5, 8])));
    // The largest stable set is dependent in the block matroid.
    assert!(!f.inner.unwrap().contains(Mask::from_labels(&[1, 3, 5, 7, 9])));
}
