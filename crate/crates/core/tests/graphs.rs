mod common;

use common::*;
use detarr::graphs::{
    chordal_build_order, chordless_cycle_witness, is_chordal, is_chordless_cycle,
    longest_chordless_cycle, pdim_lower_bound, satisfies_clique_condition, Chordality, Graph,
    GraphError, PdimBound,
};

fn check_against_oracle(g: &Graph) {
    let oracle = oracle_is_chordal(g);
    match is_chordal(g) {
        Chordality::Chordal(order) => {
            assert!(oracle, "MCS says chordal, oracle disagrees: {g}");
            assert!(satisfies_clique_condition(g, order.as_slice()));
        }
        Chordality::NotChordal(w) => {
            assert!(!oracle, "MCS says not chordal, oracle disagrees: {g}");
            assert!(
                w.len() >= 4 && is_chordless_cycle(g, &w),
                "bad witness {w:?} for {g}"
            );
        }
    }
}

#[test]
fn oracle_agreement_all_labeled_graphs_up_to_six() {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            check_against_oracle(&graph_from_mask(n, mask));
        }
    }
}

#[test]
fn oracle_agreement_random_seven_and_eight() {
    let mut r = rng(0x6a5_0007);
    for t in 0..300 {
        let n = 7 + t % 2;
        let p = [0.3, 0.5, 0.7][t % 3];
        check_against_oracle(&random_graph(&mut r, n, p));
    }
}

#[test]
fn longest_hole_matches_oracle() {
    let mut r = rng(0x6a5_0008);
    for t in 0..150 {
        let g = random_graph(&mut r, 5 + t % 4, 0.4);
        assert_eq!(
            longest_chordless_cycle(&g).unwrap(),
            oracle_longest_hole(&g),
            "{g}"
        );
    }
}

#[test]
fn pdim_bound_on_cycles() {
    for k in 4..=8 {
        match pdim_lower_bound(&Graph::cycle(k)).unwrap() {
            PdimBound::AtLeast { bound, cycle } => {
                assert_eq!(bound, k - 3);
                assert_eq!(cycle.len(), k);
            }
            PdimBound::NoObstruction => panic!("C_{k} has a hole"),
        }
    }
    assert_eq!(
        pdim_lower_bound(&Graph::complete(6)).unwrap(),
        PdimBound::NoObstruction
    );
    assert!(matches!(
        pdim_lower_bound(&Graph::cycle(13)),
        Err(GraphError::GuardExceeded { .. })
    ));
}

#[test]
fn chordal_graphs_have_no_witness() {
    for g in [Graph::complete(7), Graph::path(6), Graph::empty(4)] {
        assert_eq!(chordless_cycle_witness(&g), None);
        let b = chordal_build_order(&g).unwrap();
        assert_eq!(b.order.len(), g.n());
        assert_eq!(b.component_starts.len(), g.components().len());
    }
}

#[test]
fn union_of_chordal_graphs_is_chordal() {
    let g = Graph::complete(4).disjoint_union(&Graph::path(3));
    assert!(is_chordal(&g).is_chordal());
    let h = g.disjoint_union(&Graph::cycle(5));
    assert_eq!(chordless_cycle_witness(&h).map(|c| c.len()), Some(5));
}

#[test]
fn file_format_round_trip() {
    let mut r = rng(0x6a5_0009);
    for _ in 0..50 {
        let g = random_graph(&mut r, 6, 0.5);
        assert_eq!(Graph::parse(&g.to_file_string()).unwrap(), g);
    }
    let g = Graph::parse("# header\ncomplete 4 # K4\n").unwrap();
    assert_eq!(g, Graph::complete(4));
    assert_eq!(
        Graph::parse("3\n1 2\n\n2 x\n"),
        Err(GraphError::Parse {
            line: 4,
            message: "bad vertex 'x'".into()
        })
    );
}
