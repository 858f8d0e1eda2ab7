//! Acceptance gate: eleven numbered criteria covering generators,
//! constructions, oracle agreement, exhaustive-search cross-checks, the
//! coloring claim, the independent-set and good-subgraph guarantees, the
//! parameter predicates, frontier search fixtures, and pipeline soundness.
//! Each test prints exactly one `criterion NN <name>: pass/fail` line.
//!
//! Budget knobs (seconds) for the frontier searches:
//! `TURANLAB_ACCEPT_V10_SECS`, `TURANLAB_ACCEPT_V11_SECS`,
//! `TURANLAB_ACCEPT_V12_SECS`; set `TURANLAB_ACCEPT_V12=1` to attempt
//! n = 12. A frontier search that exhausts its budget downgrades to a
//! lower-bound check and still passes, reported as such.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turanlab::{run_exact_ex, DriverOpts};
use turanlab_core::bounds::{lemma1_bound, tp2_exact_value};
use turanlab_core::construct::{
    best_known_tp3_free, family_claimed_edges, tp4_lower_construction, ConstructionSpec, Family,
};
use turanlab_core::detect::{
    contains_subgraph, find_cycle, find_tp3, verify_tp4_coloring_claim, Forbidden,
};
use turanlab_core::graph::{Graph, VertexSet};
use turanlab_core::prooflab::{
    check_parameter_inequalities, extract_good_subgraph, greedy_independent_set, witness_pipeline,
    Params,
};
use turanlab_core::pyramids::{pyramid_edge_count, pyramid_vertex_count, triangular_pyramid};
use turanlab_core::search::{cross_check_formulas, SearchStatus, SlotOrder};
use turanlab_core::{ratio, Rational};

fn verdict(num: u32, name: &str, pass: bool, detail: &str) {
    println!("criterion {num:02} {name}: {} — {detail}", if pass { "pass" } else { "fail" });
    assert!(pass, "criterion {num:02} {name}: {detail}");
}

fn secs(elapsed: Duration) -> String {
    format!("{:.1} s", elapsed.as_secs_f64())
}

fn env_secs(name: &str, default: u64) -> Duration {
    let v = std::env::var(name).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default);
    Duration::from_secs(v)
}

/// Seeded G(n, p).
fn gnp(rng: &mut ChaCha8Rng, n: u16, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n as usize, &edges).expect("generated pairs are valid")
}

/// Seeded graph with exactly `e` edges on `v` vertices.
fn random_exact_edges(rng: &mut ChaCha8Rng, v: u16, e: usize) -> Graph {
    let mut picked: BTreeSet<(u16, u16)> = BTreeSet::new();
    while picked.len() < e {
        let a = rng.random_range(0..v);
        let b = rng.random_range(0..v);
        if a != b {
            picked.insert((a.min(b), a.max(b)));
        }
    }
    let edges: Vec<(u16, u16)> = picked.into_iter().collect();
    Graph::from_edges(v as usize, &edges).expect("pairs are valid")
}

/// Compacted subgraph induced on `keep`.
fn induced(g: &Graph, keep: &VertexSet) -> Graph {
    let ids: Vec<u16> = keep.iter().collect();
    let mut edges = Vec::new();
    for (i, &u) in ids.iter().enumerate() {
        for (j, &v) in ids.iter().enumerate().skip(i + 1) {
            if g.has_edge(u, v) {
                edges.push((i as u16, j as u16));
            }
        }
    }
    Graph::from_edges(ids.len(), &edges).expect("compacted ids are in range")
}

#[test]
fn criterion_01_generator_counts() {
    let started = Instant::now();
    for k in 1..=8u32 {
        let pyr = triangular_pyramid(k).unwrap();
        let (want_v, want_e) = ((k as u64 + 1) * (k as u64 + 2) / 2, 3 * k as u64 * (k as u64 + 1) / 2);
        assert_eq!(pyr.graph.n() as u64, want_v, "vertex count at k={k}");
        assert_eq!(pyr.graph.edge_count() as u64, want_e, "edge count at k={k}");
        assert_eq!(pyramid_vertex_count(k), want_v);
        assert_eq!(pyramid_edge_count(k), want_e);
    }
    let tp1 = triangular_pyramid(1).unwrap().graph;
    assert_eq!(tp1, Graph::complete(3).unwrap(), "one layer is the triangle");
    let tp3 = triangular_pyramid(3).unwrap().graph;
    let ok = (tp3.n(), tp3.edge_count()) == (10, 18);
    verdict(
        1,
        "generator-counts",
        ok,
        &format!("k=1..8 counts exact, TP_1 = K_3, TP_3 = 10v/18e ({})", secs(started.elapsed())),
    );
}

#[test]
fn criterion_02_construction_formulas() {
    let started = Instant::now();
    let mut built = 0u32;
    for n in 4..=60usize {
        for family in [Family::EvenK5, Family::OddK5, Family::Div6] {
            let spec = ConstructionSpec { family, n, seed: 0 };
            let g = match spec.build() {
                Ok(g) => g,
                Err(_) => continue, // size outside this family's residue class
            };
            let claimed = family_claimed_edges(family, n as u64)
                .unwrap_or_else(|| panic!("{} built n={n} but claims nothing", family.label()));
            assert_eq!(
                Rational::from(g.edge_count() as i128),
                claimed,
                "{} edge count at n={n}",
                family.label()
            );
            assert!(
                find_tp3(&g).is_none(),
                "{} at n={n} contains the ten-point pyramid",
                family.label()
            );
            built += 1;
        }
    }
    let ok = built >= 17; // 6 even_k5 + 6 odd_k5 + 10 div6 sizes up to 60, minus tiny ones
    verdict(
        2,
        "construction-formulas",
        ok,
        &format!("{built} constructions n<=60 match closed forms and are free ({})", secs(started.elapsed())),
    );
}

#[test]
fn criterion_03_oracle_equivalence() {
    let started = Instant::now();
    let mut checked = 0u64;
    let pattern = Forbidden::Tp3.pattern();
    for (pi, &p) in [0.3f64, 0.5, 0.7].iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xFACE + pi as u64);
        for _ in 0..3334 {
            let n = rng.random_range(1..=15);
            let g = gnp(&mut rng, n, p);
            let fast = find_tp3(&g);
            let generic = contains_subgraph(&g, &pattern);
            assert_eq!(
                fast.is_some(),
                generic.is_some(),
                "oracles disagree on n={n} p={p} ({} edges)",
                g.edge_count()
            );
            if let Some(w) = &fast {
                w.validate(&g).expect("specialized witness revalidates");
            }
            if let Some(e) = &generic {
                e.validate(&g, &pattern).expect("generic witness revalidates");
            }
            checked += 1;
        }
    }
    verdict(
        3,
        "oracle-equivalence",
        checked >= 10_000,
        &format!("{checked} seeded graphs, 0 disagreements ({})", secs(started.elapsed())),
    );
}

#[test]
fn criterion_04_closed_form_cross_checks() {
    let started = Instant::now();
    let rows = cross_check_formulas(8, None).expect("exhaustive engine agrees with closed forms");
    // triangle rows n=1..8 plus tetrahedron rows {1,2,3,4,6,7,8}
    assert_eq!(rows.len(), 15, "row count");
    for want in [(6u16, 11u64), (7, 15), (8, 20)] {
        assert_eq!(tp2_exact_value(want.0 as u64).unwrap(), want.1);
        let row = rows
            .iter()
            .find(|r| r.n == want.0 && r.formula == "tp2_exact_value")
            .expect("tetrahedron row present");
        assert_eq!((row.expected, row.got), (want.1, want.1), "n={}", want.0);
    }
    verdict(
        4,
        "closed-form-cross-checks",
        true,
        &format!("15 exhaustive values equal their closed forms ({})", secs(started.elapsed())),
    );
}

#[test]
fn criterion_05_coloring_claim() {
    let started = Instant::now();
    let report = verify_tp4_coloring_claim();
    // cross-count the admissible colorings: independent color-1 sets of TP_4
    let tp4 = triangular_pyramid(4).unwrap().graph;
    let edges: Vec<(u16, u16)> = tp4.edges().collect();
    let mut independent = 0u64;
    for mask in 0u32..1 << 15 {
        if edges.iter().all(|&(u, v)| mask >> u & 1 == 0 || mask >> v & 1 == 0) {
            independent += 1;
        }
    }
    let ok = report.all_pass && report.counterexample.is_none() && report.colorings_checked == independent;
    verdict(
        5,
        "coloring-claim",
        ok,
        &format!(
            "all {} admissible colorings of 2^15 pass (count matches direct enumeration) ({})",
            report.colorings_checked,
            secs(started.elapsed())
        ),
    );
}

#[test]
fn criterion_06_tp4_lower_construction() {
    let started = Instant::now();
    let pattern = Forbidden::Tp4.pattern();
    let mut built = 0u32;
    for n in (4..=40usize).step_by(2) {
        for seed in 0..5u64 {
            let t = tp4_lower_construction(n, seed).unwrap();
            assert!(
                contains_subgraph(&t.graph, &pattern).is_none(),
                "tp4_lower(n={n}, seed={seed}) contains the fifteen-point pyramid"
            );
            let inner = induced(&t.graph, &t.class2);
            assert!(
                find_cycle(&inner, 6).unwrap().is_none(),
                "class-2 induced graph of tp4_lower(n={n}, seed={seed}) has a 6-cycle"
            );
            built += 1;
        }
    }
    verdict(
        6,
        "tp4-lower-construction",
        built == 19 * 5,
        &format!("{built} graphs free with 6-cycle-free second class ({})", secs(started.elapsed())),
    );
}

#[test]
fn criterion_07_independent_set_claim() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x15EA5E);
    let mut worst_slack = i64::MAX;
    for _ in 0..1000 {
        let v: u16 = rng.random_range(20..=110);
        let g = random_exact_edges(&mut rng, v, 2 * v as usize);
        let s = greedy_independent_set(&g);
        let need = (3 * v as u64).div_ceil(55);
        let got = s.len() as u64;
        assert!(
            got >= need,
            "independent set of {got} below the {need} guarantee at v={v}"
        );
        worst_slack = worst_slack.min(got as i64 - need as i64);
    }
    verdict(
        7,
        "independent-set-claim",
        true,
        &format!(
            "1000 graphs with e=2v, v in [20,110]; worst slack over ceil(3v/55) was {worst_slack} ({})",
            secs(started.elapsed())
        ),
    );
}

#[test]
fn criterion_08_good_subgraph_fixed_point() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x600D);
    let mut nonempty = 0u32;
    for i in 0..1000 {
        let n = rng.random_range(1..=40);
        let p = [0.2, 0.5, 0.8][i % 3];
        let g = gnp(&mut rng, n, p);
        let (h, removed) = extract_good_subgraph(&g);
        assert_eq!(h.n() as usize + removed.len(), n as usize, "every vertex accounted for");
        let v = h.n() as u64;
        for x in h.vertices() {
            assert!(
                h.degree(x) as u64 > v / 2 + 1,
                "survivor degree {} too low in a {v}-vertex core",
                h.degree(x)
            );
        }
        for (x, y) in h.edges() {
            assert!(
                (h.degree(x) + h.degree(y) - 1) as u64 >= v + 2,
                "edge ({x},{y}) violates the codegree floor in a {v}-vertex core"
            );
        }
        if v > 0 {
            nonempty += 1;
        }
    }
    let k5p = {
        let mut edges: Vec<(u16, u16)> =
            (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        edges.push((0, 5));
        Graph::from_edges(6, &edges).unwrap()
    };
    let (h, removed) = extract_good_subgraph(&k5p);
    let ok = (h.n(), h.edge_count(), removed.as_slice()) == (5, 10, &[5][..]);
    verdict(
        8,
        "good-subgraph-fixed-point",
        ok,
        &format!(
            "1000 extractions scan clean ({nonempty} nonempty cores); pendant vertex peels off K_5 ({})",
            secs(started.elapsed())
        ),
    );
}

#[test]
fn criterion_09_parameter_checker() {
    let started = Instant::now();
    let delta = ratio(1, 2);
    let beta = delta / Rational::from(9296);
    // the slice inequality is tight at beta = delta/9296: each side is
    // exactly (6/7) * delta/1328 per vertex
    let n = Rational::from(100_000);
    let lhs = delta * n / Rational::from(1328) - beta * n;
    let rhs = ratio(6, 7) * (delta * n / Rational::from(1328));
    assert_eq!(lhs, rhs, "slice bound must hold with equality at the floor value");

    let params = Params::auto(delta, ratio(1, 1024));
    let report = check_parameter_inequalities(&params, 100_000).unwrap();
    let ok = report.b1 && report.b2 && report.b3 && report.beta_def && report.all;
    verdict(
        9,
        "parameter-checker",
        ok,
        &format!(
            "b2 tight at beta=delta/9296; frozen triple (1/2, 1/18592, 1/1024) satisfies all four ({})",
            secs(started.elapsed())
        ),
    );
}

#[test]
fn criterion_10_frontier_fixtures() {
    let started = Instant::now();
    // regression values, frozen the first time the exhaustive runs finished
    let frozen: [(u16, Option<u64>); 3] = [(10, FROZEN_V10), (11, FROZEN_V11), (12, None)];
    let budgets = [
        env_secs("TURANLAB_ACCEPT_V10_SECS", 600),
        env_secs("TURANLAB_ACCEPT_V11_SECS", 60),
        env_secs("TURANLAB_ACCEPT_V12_SECS", 600),
    ];
    let attempt_v12 = std::env::var("TURANLAB_ACCEPT_V12").is_ok_and(|v| v == "1");
    let mut details = Vec::new();
    for (i, &(n, frozen_value)) in frozen.iter().enumerate() {
        if n == 12 && !attempt_v12 {
            continue;
        }
        let lower = best_known_tp3_free(n as usize).unwrap().0.edge_count() as u64;
        let upper = {
            let b = lemma1_bound(n as u64);
            (*b.numer() / *b.denom()) as u64 // floor: the bound is positive
        };
        let forward = run_exact_ex(
            n,
            Forbidden::Tp3,
            &DriverOpts { budget: Some(budgets[i]), ..DriverOpts::default() },
        )
        .unwrap();
        assert!(
            forward.value >= lower && forward.value <= upper,
            "n={n}: value {} outside [{lower}, {upper}]",
            forward.value
        );
        match forward.status {
            SearchStatus::Exact => {
                let reverse = run_exact_ex(
                    n,
                    Forbidden::Tp3,
                    &DriverOpts {
                        budget: Some(budgets[i]),
                        slot_order: SlotOrder::RowReverse,
                        ..DriverOpts::default()
                    },
                )
                .unwrap();
                assert_eq!(
                    (reverse.status, reverse.value),
                    (SearchStatus::Exact, forward.value),
                    "n={n}: branch orders disagree"
                );
                if let Some(f) = frozen_value {
                    assert_eq!(forward.value, f, "n={n}: regression against the frozen fixture");
                }
                details.push(format!("n={n} exact={} (both orders)", forward.value));
            }
            _ => {
                // budget exhausted: the incumbent is still a certified lower
                // bound inside the sandwich, reported as a downgrade
                details.push(format!(
                    "n={n} budget {}s exhausted, lower bound {} within sandwich [{lower}, {upper}]",
                    budgets[i].as_secs(),
                    forward.value
                ));
            }
        }
    }
    verdict(10, "frontier-fixtures", true, &format!("{} ({})", details.join("; "), secs(started.elapsed())));
}

/// Exhaustive values frozen from completed reference runs; `None` until a
/// run has finished once on the record. The n = 10 value 37 was produced
/// by both branch orders with identical two-graph extremal lists, and
/// exceeds the conjectured 36 — the prediction fails at this size.
const FROZEN_V10: Option<u64> = Some(37);
const FROZEN_V11: Option<u64> = None;

#[test]
fn criterion_11_pipeline_soundness() {
    let started = Instant::now();
    let params = Params::auto(ratio(1, 2), ratio(1, 1024));
    let n: u16 = 30;
    let floor_edges = (n as u32 * n as u32) / 4 + 2 * n as u32; // 285
    let mut rng = ChaCha8Rng::seed_from_u64(0x50FA);
    let mut found = 0u32;
    for _ in 0..200 {
        let mut g = gnp(&mut rng, n, 0.72);
        while g.edge_count() <= floor_edges {
            let (a, b) = (rng.random_range(0..n), rng.random_range(0..n));
            if a != b && !g.has_edge(a, b) {
                let mut edges: Vec<(u16, u16)> = g.edges().collect();
                edges.push((a.min(b), a.max(b)));
                g = Graph::from_edges(n as usize, &edges).unwrap();
            }
        }
        let (witness, _trace) = witness_pipeline(&g, &params);
        let direct = find_tp3(&g);
        assert_eq!(
            witness.is_some(),
            direct.is_some(),
            "pipeline verdict diverges from direct search on a {}-edge graph",
            g.edge_count()
        );
        if witness.is_some() {
            found += 1;
        }
    }
    verdict(
        11,
        "pipeline-soundness",
        true,
        &format!(
            "200 dense graphs (n=30, e>285): verdicts agree, {found} with witnesses ({})",
            secs(started.elapsed())
        ),
    );
}
