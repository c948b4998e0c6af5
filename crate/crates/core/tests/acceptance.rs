//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::time::{Duration, Instant};

use dwm::construct::{family, lift, pair_family, embedded_dw, embedded_seeds, DwCollection, Family, Embedded};
use dwm::matcore::{IntMatrix, TernaryMatrix};
use dwm::scheme::{
    certify_scheme, check_auxiliary_identities, check_block_identities, check_split_identity, closed_form_l1,
    coclique_bound_check, intersection_matrix_l1, intersection_tensor, sylvester_hadamard,
};
use dwm::search::{enumerate_all, search_with, SearchOptions, SearchOutcome, SearchProblem};
use dwm::spectra::{certify_eigenmatrices, closed_form_p, compare, eigenmatrices_from_l1};
use dwm::verify::check_pair_conditions;

type Verdict = dwm::Result<(bool, String)>;

struct Suite {
    lines: Vec<String>,
    failed: usize,
    produced: Vec<(String, DwCollection)>,
}

impl Suite {
    fn run(&mut self, id: usize, name: &str, limit: Duration, f: impl FnOnce(&mut Self) -> Verdict) {
        let start = Instant::now();
        let verdict = f(self);
        let took = start.elapsed();
        let (ok, detail) = match verdict {
            Ok((ok, detail)) if took <= limit => (ok, detail),
            Ok((_, detail)) => (false, format!("{detail}; over the {limit:?} limit")),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            self.failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        let line = format!("{tag} criterion {id}: {name} [{detail}] ({:.2}s)", took.as_secs_f64());
        println!("{line}");
        self.lines.push(line);
    }

    fn keep(&mut self, label: impl Into<String>, dw: &DwCollection) {
        self.produced.push((label.into(), dw.clone()));
    }
}

/// `W W^T = w I`, `W^T = -W` and `Σ|W_i| = J - I`, by direct arithmetic.
fn direct_skew_cover(ms: &[TernaryMatrix], w: i64) -> bool {
    let n = ms[0].order();
    let weighing = ms.iter().all(|m| m.gram() == IntMatrix::scaled_identity(n, w));
    let skew = ms.iter().all(|m| m.transpose() == m.negate());
    let cover = (0..n).all(|r| {
        (0..n).all(|c| ms.iter().map(|m| m.get(r, c).unsigned_abs() as usize).sum::<usize>() == (r != c) as usize)
    });
    weighing && skew && cover
}

/// Every symmetric Hadamard `L` and symmetric zero-diagonal signed permutation
/// `M` of order 2 with `L M^T = M L^T`: there are none.
fn no_lm_pair_of_order_two() -> bool {
    let signs = [-1i8, 1];
    let mut found = 0;
    for &a in &signs {
        for &b in &signs {
            for &c in &signs {
                let l = TernaryMatrix::from_rows(&[vec![a, b], vec![b, c]]).unwrap();
                for &e in &signs {
                    let m = TernaryMatrix::from_rows(&[vec![0, e], vec![e, 0]]).unwrap();
                    let hadamard = l.gram() == IntMatrix::scaled_identity(2, 2);
                    if hadamard && l.mul(&m.transpose()).unwrap() == m.mul(&l.transpose()).unwrap() {
                        found += 1;
                    }
                }
            }
        }
    }
    found == 0
}

fn main() {
    let mut s = Suite { lines: Vec::new(), failed: 0, produced: Vec::new() };

    s.run(1, "embedded order-28 and order-52 triples", Duration::from_secs(1), |s| {
        let mut ok = true;
        for (which, w) in [(Embedded::Dw28, 9), (Embedded::Dw52, 17)] {
            let ms: Vec<_> = embedded_seeds(which).iter().map(|q| dwm::construct::gs_assemble(q)).collect::<dwm::Result<_>>()?;
            ok &= direct_skew_cover(&ms, w);
            s.keep(format!("{which:?}"), &embedded_dw(which));
        }
        Ok((ok, "WW^T = wI, skew, complete cover for w = 9, 17".into()))
    });

    s.run(2, "pair families of orders 2..32", Duration::from_secs(10), |_| {
        let mut checked = 0;
        let mut ok = true;
        for m in 1..=5 {
            let (hk, lm) = pair_family(m);
            // No LM pair exists at order 2, so that family starts at order 4.
            let lm_size = if m == 1 { 0 } else { (1 << m) - 1 };
            ok &= hk.len() == (1 << m) - 1 && lm.len() == lm_size;
            for fam in [hk, lm] {
                ok &= check_pair_conditions(&fam).passed();
                checked += fam.len();
            }
        }
        ok &= no_lm_pair_of_order_two();
        Ok((ok, format!("{checked} pairs; exhaustive search finds no LM pair of order 2")))
    });

    s.run(3, "lifting", Duration::from_secs(5), |s| {
        let hk = pair_family(2).0;
        let big = lift(&embedded_dw(Embedded::Dw28), &hk)?;
        let base = DwCollection::certify(hk.perms(), vec![1; 3])?;
        let small = lift(&base, &hk)?;
        let ok = big.is_fully_certified()
            && big.notation() == "DW(112;[37]^3)"
            && small.is_fully_certified()
            && small.notation() == "DW(16;[5]^3)";
        s.keep("lift dw28", &big);
        s.keep("lift K-triple", &small);
        Ok((ok, format!("{}, {}", big.notation(), small.notation())))
    });

    s.run(4, "infinite families at desk scale", Duration::from_secs(30), |s| {
        let want = [
            (Family::Powers2 { n: 2, m: 1 }, "DW(4;[1]^3)"),
            (Family::Powers2 { n: 2, m: 2 }, "DW(16;[5]^3)"),
            (Family::Powers2 { n: 2, m: 3 }, "DW(64;[21]^3)"),
            (Family::Powers2 { n: 3, m: 2 }, "DW(64;[9]^7)"),
            (Family::F7 { m: 1 }, "DW(112;[37]^3)"),
            (Family::F13 { m: 1 }, "DW(208;[69]^3)"),
        ];
        let mut ok = true;
        let mut got = Vec::new();
        for (fam, notation) in want {
            let dw = family(fam, None)?;
            ok &= dw.is_fully_certified() && dw.notation() == notation;
            got.push(dw.notation());
            s.keep(fam.to_string(), &dw);
        }
        ok &= matches!(family(Family::F10 { m: 1 }, None), Err(dwm::Error::MissingBaseData(_)));
        Ok((ok, format!("{}; f10 needs a base file", got.join(", "))))
    });

    s.run(5, "search at n=7 and pruning soundness at n=1", Duration::from_secs(600), |s| {
        let p = SearchProblem::new(7)?.with_budget(100_000_000, Duration::from_secs(600));
        let SearchOutcome::Found(res) = search_with(&p, &SearchOptions::default(), None)? else {
            return Ok((false, "no triple within 1e8 nodes".into()));
        };
        let ms: Vec<_> = res.seeds.iter().map(dwm::construct::gs_assemble).collect::<dwm::Result<_>>()?;
        let found = direct_skew_cover(&ms, 9);
        s.keep("search n=7", &res.collection()?);
        let p1 = SearchProblem::new(1)?;
        let sets: Vec<Vec<_>> = [true, false]
            .into_iter()
            .map(|pruning| {
                let opts = SearchOptions { pruning, symmetry: false, ..SearchOptions::default() };
                let mut v: Vec<Vec<Vec<i8>>> = enumerate_all(&p1, &opts)
                    .map(|(sols, _)| sols.iter().map(|t| t.iter().flat_map(|q| q.rows().to_vec()).collect()).collect())
                    .unwrap_or_default();
                v.sort();
                v
            })
            .collect();
        let agree = !sets[0].is_empty() && sets[0] == sets[1];
        Ok((
            found && agree,
            format!("{} nodes; n=1 sets of size {} and {}", res.stats.nodes, sets[0].len(), sets[1].len()),
        ))
    });

    let cases = [(1, 1, 1, 3, 4), (1, 1, 3, 4, 24), (3, 9, 1, 3, 112)];

    s.run(6, "association scheme suite", Duration::from_secs(60), |_| {
        let mut ok = true;
        for (k, m, l, classes, vertices) in cases {
            let rel = common::scheme(k, m, l);
            ok &= rel.d() == classes && rel.vertices() == vertices;
            ok &= certify_scheme(&rel).passed();
            ok &= intersection_tensor(&rel)?.p == common::brute_force_tensor(&rel);
        }
        Ok((ok, "3, 4, 3 classes on 4, 24, 112 vertices; tensors match counting".into()))
    });

    s.run(7, "intersection matrix and eigenmatrices", Duration::from_secs(60), |_| {
        let mut ok = true;
        let mut perms = Vec::new();
        for (k, m, l, _, _) in cases {
            let rel = common::scheme(k, m, l);
            let l1 = intersection_matrix_l1(&rel)?;
            ok &= l1 == closed_form_l1(k, m, l)?;
            let e = eigenmatrices_from_l1(&l1, &rel)?;
            ok &= certify_eigenmatrices(&e, &rel)?.passed();
            let cmp = compare(&e, &closed_form_p(k as u64, m as u64, l as u64))?;
            ok &= cmp.passed();
            perms.push(cmp.check("p_rows").and_then(|c| c.note.clone()).unwrap_or_default());
        }
        Ok((ok, perms.join("; ")))
    });

    s.run(8, "auxiliary and block identities", Duration::from_secs(60), |_| {
        let mut ok = true;
        for order in [2, 4, 8, 16] {
            ok &= check_auxiliary_identities(&sylvester_hadamard(order)?)?.passed();
        }
        for (k, l) in [(1, 1), (1, 3), (3, 1), (3, 5)] {
            ok &= check_block_identities(&sylvester_hadamard(k * l + 1)?, k, l)?.passed();
        }
        Ok((ok, "orders 2, 4, 8, 16; (k,l) = (1,1), (1,3), (3,1), (3,5)".into()))
    });

    s.run(9, "coclique bound", Duration::from_secs(60), |_| {
        let mut ok = true;
        let mut sizes = Vec::new();
        for (k, m, l, _, _) in cases {
            let cert = coclique_bound_check(&common::scheme(k, m, l))?;
            ok &= cert.passed();
            sizes.push((l * (k * l + 1)).to_string());
        }
        Ok((ok, format!("cocliques of size {}", sizes.join(", "))))
    });

    s.run(10, "split identity for every produced collection", Duration::from_secs(60), |s| {
        let mut ok = !s.produced.is_empty();
        let mut bad = Vec::new();
        for (label, dw) in &s.produced {
            if !(dw.is_fully_certified() && check_split_identity(dw).passed()) {
                ok = false;
                bad.push(label.clone());
            }
        }
        for (k, m) in [(1, 1), (3, 9), (3, 17)] {
            ok &= check_split_identity(&common::dw_for(k, m)).passed();
        }
        Ok((ok, format!("{} collections; failing: [{}]", s.produced.len() + 3, bad.join(", "))))
    });

    println!("{} of {} criteria passed", s.lines.len() - s.failed, s.lines.len());
    if s.failed > 0 {
        std::process::exit(1);
    }
}
