//! Randomized invariant checks across the public API: codec roundtrips,
//! closed-form identities, witness self-validation, parameter-predicate
//! monotonicity, and the exhaustive engine's maximality/monotonicity
//! contracts on sizes small enough to afford inside a property runner.

use proptest::prelude::*;

use turanlab_core::bounds::{mantel_bound, turan_edges, turan_graph};
use turanlab_core::detect::{find_forbidden, find_tp3, Forbidden, ForbiddenWitness};
use turanlab_core::graph::Graph;
use turanlab_core::graph6::{parse_graph6, write_graph6};
use turanlab_core::prooflab::{
    check_parameter_inequalities, greedy_independent_set, Params, IS_DEGREE_CUTOFF,
};
use turanlab_core::search::{exact_ex, SearchOpts};
use turanlab_core::{ratio, Rational};

/// A graph on up to `max_n` vertices with an arbitrary edge subset.
fn arb_graph(max_n: u16) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n as usize * n.saturating_sub(1) as usize / 2;
        prop::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n as usize, &edges).expect("pairs are in range")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_roundtrips(g in arb_graph(40)) {
        let text = write_graph6(&g);
        let back = parse_graph6(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn turan_identities(n in 0u64..200, r in 1u64..6) {
        prop_assert_eq!(turan_edges(n, 2).unwrap(), mantel_bound(n));
        let g = turan_graph(n as usize, r).unwrap();
        prop_assert_eq!(g.edge_count() as u64, turan_edges(n, r).unwrap());
    }

    #[test]
    fn found_witnesses_revalidate(g in arb_graph(14)) {
        if let Some(w) = find_tp3(&g) {
            prop_assert!(w.validate(&g).is_ok());
        }
        for family in [Forbidden::K3, Forbidden::Tp2, Forbidden::W7, Forbidden::C6] {
            match find_forbidden(&g, family) {
                None => {}
                Some(ForbiddenWitness::Map(e)) => {
                    prop_assert!(e.validate(&g, &family.pattern()).is_ok());
                }
                Some(ForbiddenWitness::Pyramid(w)) => {
                    prop_assert!(w.validate(&g).is_ok());
                }
            }
        }
    }

    #[test]
    fn independent_sets_are_independent(g in arb_graph(24)) {
        let s = greedy_independent_set(&g);
        let picked: Vec<u16> = s.iter().collect();
        for (i, &u) in picked.iter().enumerate() {
            prop_assert!(g.degree(u) <= IS_DEGREE_CUTOFF);
            for &v in &picked[i + 1..] {
                prop_assert!(!g.has_edge(u, v), "picked adjacent pair {u},{v}");
            }
        }
    }

    /// Within the safe window, growing gamma never breaks the first or third
    /// predicate once they hold.
    #[test]
    fn gamma_growth_is_monotone(
        dnum in 1i128..8, gnum in 1i128..31, step in 1i128..31, n in 50u64..5000,
    ) {
        let delta = ratio(dnum, 8);
        let g1 = ratio(gnum, 992);           // < 1/32
        let g2 = ratio((gnum + step).min(30), 992);
        prop_assume!(g2 > g1);
        let p1 = Params::auto(delta, g1);
        let p2 = Params::auto(delta, g2);
        let r1 = check_parameter_inequalities(&p1, n).unwrap();
        let r2 = check_parameter_inequalities(&p2, n).unwrap();
        if r1.b1 {
            prop_assert!(r2.b1, "b1 lost raising gamma {g1} -> {g2} at delta={delta}");
        }
        if r1.b3 {
            prop_assert!(r2.b3, "b3 lost raising gamma {g1} -> {g2} at delta={delta}");
        }
    }

    /// Scale-freeness: the verdict vector ignores n (every term is degree-2
    /// homogeneous in n).
    #[test]
    fn parameter_checks_ignore_n(
        dnum in 1i128..8, bnum in 1i128..40, gnum in 1i128..40, n1 in 1u64..10000, n2 in 1u64..10000,
    ) {
        let p = Params::new(ratio(dnum, 8), ratio(bnum, 40000), ratio(gnum, 1200));
        let r1 = check_parameter_inequalities(&p, n1).unwrap();
        let r2 = check_parameter_inequalities(&p, n2).unwrap();
        prop_assert_eq!((r1.b1, r1.b2, r1.b3, r1.beta_def), (r2.b1, r2.b2, r2.b3, r2.beta_def));
    }
}

/// Exhaustive-engine contracts are too slow for 64 proptest cases each, so
/// the small-size sweeps below run once and cover every case in the range.

#[test]
fn exact_values_grow_with_n() {
    for forbid in [Forbidden::K3, Forbidden::C6, Forbidden::Tp2] {
        let mut prev = 0;
        for n in 1..=6u16 {
            let r = exact_ex(n, forbid, &SearchOpts::default()).unwrap();
            assert!(
                r.value >= prev,
                "{} shrank at n={n}: {} < {prev}",
                forbid.label(),
                r.value
            );
            prev = r.value;
        }
    }
}

#[test]
fn small_hosts_cannot_contain_the_ten_point_pyramid() {
    // the pattern spans 10 vertices, so every smaller host is free and the
    // complete graph is extremal
    for n in 1..=7u16 {
        let r = exact_ex(n, Forbidden::Tp3, &SearchOpts::default()).unwrap();
        assert_eq!(r.value, n as u64 * (n as u64 - 1) / 2, "n={n}");
        assert_eq!(r.nodes_expanded, 0, "seed should close the search at n={n}");
    }
}

#[test]
fn extremal_graphs_are_maximal() {
    for (n, forbid) in [
        (6u16, Forbidden::K3),
        (6, Forbidden::C6),
        (6, Forbidden::Tp2),
        (5, Forbidden::W7),
    ] {
        let opts = SearchOpts { collect_extremal: true, ..SearchOpts::default() };
        let r = exact_ex(n, forbid, &opts).unwrap();
        assert!(r.dedup_exhaustive && !r.extremal_truncated);
        assert!(!r.extremal_graphs.is_empty());
        for text in &r.extremal_graphs {
            let g = parse_graph6(text).unwrap();
            assert_eq!(g.edge_count() as u64, r.value);
            assert!(find_forbidden(&g, forbid).is_none(), "extremal graph not free: {text}");
            let edges: Vec<(u16, u16)> = g.edges().collect();
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) {
                        continue;
                    }
                    let mut plus = edges.clone();
                    plus.push((u, v));
                    let bigger = Graph::from_edges(n as usize, &plus).unwrap();
                    assert!(
                        find_forbidden(&bigger, forbid).is_some(),
                        "{text} + ({u},{v}) is still {}-free, not maximal",
                        forbid.label()
                    );
                }
            }
        }
    }
}

#[test]
fn rational_rendering_roundtrips_value() {
    let samples: [(Rational, &str); 4] = [
        (ratio(36, 1), "36"),
        (ratio(171, 4), "171/4"),
        (ratio(-3, 9), "-1/3"),
        (ratio(0, 5), "0"),
    ];
    for (r, want) in samples {
        assert_eq!(turanlab_core::bounds::render_rational(&r), want);
    }
}
