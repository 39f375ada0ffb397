//! Cross-module runs: generators feed constructions, cocycles feed systems,
//! systems feed Fock models and the suite.

use std::sync::Arc;

use kgt_core::cocycle::{are_cohomologous, check_cocycle, product_cocycle, skew_lift, Coboundary, Cocycle};
use kgt_core::constructions::{cartesian, skew_product, GroupTable};
use kgt_core::degree::MultiDegree;
use kgt_core::fock::checks::{commutation_check, commutation_phase};
use kgt_core::fock::FockSpace;
use kgt_core::kgraph::{f1, f2, validate_skeleton};
use kgt_core::phase::Phase;
use kgt_core::scalar::{Complex64, GaussRat};
use kgt_core::system::System;
use kgt_core::verify::{fixture_instances, random_cocycle, random_kgraph, run_checks, select, GraphBounds, Status, SuiteConfig};
use proptest::prelude::*;

fn ms() -> u64 {
    0
}

#[test]
fn every_check_passes_or_skips_on_the_fixtures() {
    let cfg = SuiteConfig { max_fock_dim: 120, max_cases: 16, max_degree_sets: 3, ..SuiteConfig::default() };
    let report = run_checks(&select("all").unwrap(), &fixture_instances(), &cfg, &ms);
    let failures: Vec<_> = report.failures().map(|c| format!("{} on {}: {:?}", c.check, c.instance, c.status)).collect();
    assert!(failures.is_empty(), "{failures:#?}");
    for c in &report.cases {
        if let Status::Skipped(why) = &c.status {
            let expected = c.instance.starts_with("omega") || why.contains("no three") || why.contains("no squares");
            assert!(expected, "{} skipped on {}: {why}", c.check, c.instance);
        }
    }
}

#[test]
fn swapped_square_is_rejected() {
    let mut sk = f1().skeleton();
    sk.squares[0].second = ["e".into(), "f".into()];
    assert!(validate_skeleton(&sk).is_err());
}

#[test]
fn torus_phase_matches_the_rotation_angle() {
    for theta in [Phase::turns(1, 4), Phase::turns(1, 6), Phase::radians(1, 1), Phase::float(0.3)] {
        let c = Cocycle::theta(Arc::new(f1()), theta);
        let sys = System::<Complex64>::new(&c, 1e-12).unwrap();
        let space = FockSpace::x(&sys, &MultiDegree::from([1, 1]));
        let g = sys.graph().clone();
        let r = commutation_phase(&space, &sys, &g.edge_path(0), &g.edge_path(1)).unwrap();
        let want = theta.to_complex();
        assert!((r - want).norm() < 1e-12, "θ = {theta}: r = {r}");
    }
}

#[test]
fn lifted_and_product_cocycles_drive_exact_fock_models() {
    let g2 = Arc::new(f2());
    let base = random_cocycle(9, &g2, &MultiDegree::from([3]), true);
    let skew = skew_product(&g2, &GroupTable::cyclic(3), &[1, 2]).unwrap();
    let lifted = skew_lift(&base, &skew).unwrap();
    assert!(check_cocycle(&lifted, &MultiDegree::from([3]), 0.0).passed());
    let prod = cartesian(&g2, &skew.graph);
    let c = product_cocycle(&base, &lifted, &prod).unwrap();
    assert!(c.is_quarter_turn_valued());
    let sys = System::<GaussRat>::new(&c, 0.0).unwrap();
    let space = FockSpace::x(&sys, &MultiDegree::from([1, 1]));
    assert!(commutation_check(&space, &sys, usize::MAX).passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_instances_are_cocycles_on_valid_graphs(seed in any::<u64>(), k in 1usize..4, quarter in any::<bool>()) {
        let bounds = GraphBounds { k, max_edges_per_color: 3, ..GraphBounds::default() };
        let g = Arc::new(random_kgraph(seed, &bounds).unwrap());
        prop_assert_eq!(&validate_skeleton(&g.skeleton()).unwrap(), &*g);
        prop_assert!(g.is_source_free().is_ok());
        let cap = MultiDegree::splat(k, 2);
        let c = random_cocycle(seed ^ 1, &g, &cap, quarter);
        let r = check_cocycle(&c, &cap, 1e-9);
        prop_assert!(r.passed(), "{:?}", r.counterexample);
        prop_assert!(!quarter || c.is_quarter_turn_valued());
    }

    #[test]
    fn coboundary_twists_are_recovered(seed in any::<u64>(), p in -6i64..6, q in 1i64..7) {
        let bounds = GraphBounds { k: 2, max_edges_per_color: 3, ..GraphBounds::default() };
        let g = Arc::new(random_kgraph(seed, &bounds).unwrap());
        let cap = MultiDegree::splat(2, 2);
        let c = random_cocycle(seed, &g, &cap, false);
        let mut b = Coboundary::new();
        for e in 0..g.edge_count() {
            b.set(g.edge_path(e), Phase::turns(p * (e as i64 + 1), q));
        }
        let db = Cocycle::coboundary(g.clone(), b);
        let twisted = Cocycle::pointwise(vec![c.clone(), db]).unwrap();
        prop_assert!(check_cocycle(&twisted, &cap, 1e-9).passed());
        prop_assert!(are_cohomologous(&twisted, &c, &cap, 1e-9).is_ok());
    }
}
