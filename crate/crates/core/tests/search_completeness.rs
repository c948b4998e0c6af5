use std::collections::BTreeSet;
use std::time::Duration;

use dwm::construct::{gs_assemble, embedded_seeds, GsQuadSeed, Embedded};
use dwm::search::{
    check_hint, check_hint_with, enumerate_all, resume, search_with, SearchOptions, SearchOutcome, SearchProblem,
};
use dwm::verify::certify_dw;
use dwm::Error;

type Key = Vec<i8>;

fn key(seeds: &[GsQuadSeed; 3]) -> Key {
    seeds.iter().flat_map(|s| s.rows().iter().flatten().copied()).collect()
}

/// Every triple of 1x1 quads, assembled and certified directly.
fn brute_force_n1() -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    for code in 0..3usize.pow(12) {
        let mut c = code;
        let cells: Vec<i8> = (0..12)
            .map(|_| {
                let v = (c % 3) as i8 - 1;
                c /= 3;
                v
            })
            .collect();
        let seeds: Vec<GsQuadSeed> = cells
            .chunks(4)
            .map(|q| GsQuadSeed::new(vec![q[0]], vec![q[1]], vec![q[2]], vec![q[3]]).unwrap())
            .collect();
        let Ok(ms) = seeds.iter().map(gs_assemble).collect::<dwm::Result<Vec<_>>>() else { continue };
        if certify_dw(&ms, &[1, 1, 1]).unwrap().passed() {
            out.insert(cells);
        }
    }
    out
}

fn enumerate(pruning: bool, symmetry: bool) -> BTreeSet<Key> {
    let p = SearchProblem::new(1).unwrap();
    let opts = SearchOptions { pruning, symmetry, ..SearchOptions::default() };
    let (sols, _) = enumerate_all(&p, &opts).unwrap();
    let set: BTreeSet<Key> = sols.iter().map(key).collect();
    assert_eq!(set.len(), sols.len(), "duplicate leaves");
    set
}

#[test]
fn n1_pruned_and_unpruned_agree_with_brute_force() {
    let oracle = brute_force_n1();
    assert_eq!(oracle.len(), 48);
    assert_eq!(enumerate(true, false), oracle);
    assert_eq!(enumerate(false, false), oracle);
}

#[test]
fn n1_symmetry_reduction_keeps_one_per_orbit() {
    let oracle = brute_force_n1();
    let reduced = enumerate(true, true);
    assert_eq!(reduced, enumerate(false, true));
    assert!(reduced.is_subset(&oracle));
    assert_eq!(reduced.len(), 6);
    for r in &reduced {
        assert!(r.chunks(4).all(|q| q.iter().find(|&&v| v != 0) == Some(&1)));
    }
}

/// Rotates each row type so the first nonzero of quad 1 sits at 0, then
/// makes every row's first nonzero +1.
fn normalize(s: &[GsQuadSeed; 3]) -> [GsQuadSeed; 3] {
    let mut rows: Vec<[Vec<i8>; 4]> = s.iter().map(|q| q.rows().clone()).collect();
    for t in 1..4 {
        if let Some(p) = rows[0][t].iter().position(|&v| v != 0) {
            for q in rows.iter_mut() {
                q[t].rotate_left(p);
            }
        }
    }
    for row in rows.iter_mut().flat_map(|q| q.iter_mut()) {
        if row.iter().find(|&&v| v != 0).is_some_and(|&f| f < 0) {
            row.iter_mut().for_each(|v| *v = -*v);
        }
    }
    std::array::from_fn(|q| {
        let [a, b, c, d] = rows[q].clone();
        GsQuadSeed::new(a, b, c, d).unwrap()
    })
}

#[test]
fn embedded_triples_survive_pruning() {
    for (n, which) in [(7, Embedded::Dw28), (13, Embedded::Dw52)] {
        let p = SearchProblem::new(n).unwrap();
        let raw = embedded_seeds(which);
        let report = check_hint(&p, &raw).unwrap();
        assert!(report.accepted, "n={n}: {report:?}");
        let norm = normalize(&raw);
        let ms: Vec<_> = norm.iter().map(|s| gs_assemble(s).unwrap()).collect();
        assert!(certify_dw(&ms, &[norm[0].weight(); 3]).unwrap().passed());
        let report = check_hint_with(&p, &norm, &SearchOptions::default()).unwrap();
        assert!(report.accepted, "n={n} normalized: {report:?}");
    }
}

#[test]
fn n7_found_and_certified() {
    let p = SearchProblem::new(7).unwrap();
    let SearchOutcome::Found(res) = search_with(&p, &SearchOptions::default(), None).unwrap() else {
        panic!("no solution at n=7")
    };
    assert!(res.collection().unwrap().is_fully_certified());
    let opts = SearchOptions { threads: 4, ..SearchOptions::default() };
    let SearchOutcome::Found(par) = search_with(&p, &opts, None).unwrap() else { panic!("parallel run failed") };
    assert_eq!(key(&par.seeds), key(&res.seeds));
}

#[test]
fn resume_matches_uninterrupted_run() {
    let p = SearchProblem::new(7).unwrap();
    let opts = SearchOptions::default();
    let SearchOutcome::Found(direct) = search_with(&p, &opts, None).unwrap() else { panic!("no solution") };
    let short = p.clone().with_budget(100, Duration::from_secs(60));
    let mut outcome = search_with(&short, &opts, None).unwrap();
    let mut hops = 0;
    let found = loop {
        match outcome {
            SearchOutcome::BudgetExceeded { checkpoint: Some(c), .. } => {
                hops += 1;
                outcome = resume(&short, &opts, &c.to_bytes(), None).unwrap();
            }
            SearchOutcome::Found(r) => break r,
            other => panic!("unexpected outcome {other:?}"),
        }
    };
    assert!(hops >= 5);
    assert_eq!(key(&found.seeds), key(&direct.seeds));
    assert_eq!(found.stats.nodes, direct.stats.nodes);
    assert_eq!(found.stats.prunes, direct.stats.prunes);
}

#[test]
fn stale_checkpoint_is_rejected() {
    let p = SearchProblem::new(7).unwrap().with_budget(50, Duration::from_secs(60));
    let opts = SearchOptions::default();
    let SearchOutcome::BudgetExceeded { checkpoint: Some(c), .. } = search_with(&p, &opts, None).unwrap() else {
        panic!("budget of 50 nodes should run out")
    };
    let other = p.clone().with_rng_seed(9);
    assert!(matches!(resume(&other, &opts, &c.to_bytes(), None), Err(Error::StaleCheckpoint { .. })));
    let p13 = SearchProblem::new(13).unwrap();
    assert!(matches!(resume(&p13, &opts, &c.to_bytes(), None), Err(Error::StaleCheckpoint { .. })));
    let mut bytes = c.to_bytes();
    bytes.truncate(bytes.len() - 3);
    assert!(matches!(resume(&p, &opts, &bytes, None), Err(Error::BadCheckpoint(_))));
}

#[test]
fn seeded_value_order_still_finds_valid_triples() {
    for seed in [1, 2, 3] {
        let p = SearchProblem::new(7).unwrap().with_rng_seed(seed);
        let SearchOutcome::Found(res) = search_with(&p, &SearchOptions::default(), None).unwrap() else {
            panic!("seed {seed}: no solution")
        };
        assert!(res.collection().unwrap().is_fully_certified());
    }
}
