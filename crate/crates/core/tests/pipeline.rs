//! Bounded-depth integration tests of the full pipeline: search, verify,
//! canonicalize, compare. A cap of n roots must reproduce exactly the
//! golden systems with at most n positive roots, because every completion
//! path stays within the size of the system it builds.

use weyl3::classify::{ClassifyConfig, classify};
use weyl3::golden::golden;
use weyl3::groupoid::{OrderKey, canonical_form, orbit};
use weyl3::lattice::Root;
use weyl3::search::{SearchConfig, enumerate};

fn bounded(max_roots: usize) -> ClassifyConfig {
    ClassifyConfig {
        search: SearchConfig { max_roots, parallel_depth: 0, ..SearchConfig::default() },
        ..ClassifyConfig::default()
    }
}

fn golden_prefix(max_roots: usize) -> Vec<Vec<Root>> {
    golden().iter().filter(|g| g.words.len() <= max_roots).map(|g| g.roots()).collect()
}

#[test]
fn depth_8_reproduces_first_three_systems() {
    let out = classify(&bounded(8)).unwrap();
    let got: Vec<Vec<Root>> = out.records.iter().map(|r| r.root_vecs()).collect();
    assert_eq!(got, golden_prefix(8));
}

#[test]
fn depth_13_reproduces_first_fourteen_systems() {
    let out = classify(&bounded(13)).unwrap();
    assert_eq!(out.records.len(), 14);
    let got: Vec<Vec<Root>> = out.records.iter().map(|r| r.root_vecs()).collect();
    assert_eq!(got, golden_prefix(13));
    for (rec, g) in out.records.iter().zip(golden()) {
        assert_eq!(rec.orbit_size, g.orbit_size, "nr {}", g.nr);
        assert_eq!(rec.cover_size, g.cover_size, "nr {}", g.nr);
        assert_eq!(rec.hom, g.hom, "nr {}", g.nr);
        assert_eq!(rec.planes, g.planes, "nr {}", g.nr);
    }
}

#[test]
fn shortcut_is_independent_at_bounded_depth() {
    for max_roots in [12, 14] {
        let with = enumerate(&SearchConfig {
            max_roots,
            parallel_depth: 0,
            ..SearchConfig::default()
        });
        let without = enumerate(&SearchConfig {
            max_roots,
            parallel_depth: 0,
            use_required_root: false,
            ..SearchConfig::default()
        });
        let canon = |sets: Vec<Vec<Root>>| {
            let mut out: Vec<Vec<Root>> = sets
                .iter()
                .filter_map(|s| orbit(s).ok().map(|o| canonical_form(&o, OrderKey::HeightLex)))
                .collect();
            out.sort();
            out.dedup();
            out
        };
        assert_eq!(with, without, "raw emissions at {max_roots}");
        assert_eq!(canon(with), canon(without), "canonical sets at {max_roots}");
    }
}

#[test]
fn parallel_run_is_deterministic() {
    let seq = enumerate(&SearchConfig { max_roots: 12, parallel_depth: 0, ..SearchConfig::default() });
    let par = enumerate(&SearchConfig { max_roots: 12, parallel_depth: 4, ..SearchConfig::default() });
    assert_eq!(seq, par);
}

#[test]
fn emitted_states_satisfy_monotone_frontier() {
    let emitted = enumerate(&SearchConfig { max_roots: 10, parallel_depth: 0, ..SearchConfig::default() });
    for set in &emitted {
        assert!(set.windows(2).all(|w| w[0] < w[1]));
        assert!(set.iter().all(|r| r.is_positive()));
    }
}
