//! Randomised invariants over the public API.

use proptest::prelude::*;
use proptest::sample::subsequence;

use crate::atlas::{Atlas, AtlasMeta};
use crate::game::MoveResult;
use crate::search::LinkRecord;
use crate::sieve::sieve;
use crate::solver::oracle_outcome;
use crate::structure::{dead_edges, mutually_threatening_pairs};
use crate::{graph6, Graph, LinkGame, OutcomeClass, Solver};

fn graph_on(n: usize) -> impl Strategy<Value = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let len = pairs.len();
    subsequence(pairs, 0..=len).prop_map(move |edges| Graph::from_edges(n, &edges).unwrap())
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(graph_on)
}

fn game(max_n: usize) -> impl Strategy<Value = LinkGame> {
    (2..=max_n)
        .prop_flat_map(|n| (graph_on(n), 0..n, 1..n))
        .prop_map(|(g, s, off)| {
            let t = (s + off) % g.n();
            LinkGame::new(g, s, t).unwrap()
        })
}

fn with_perm<T: std::fmt::Debug + Clone>(
    inner: impl Strategy<Value = T>,
    n_of: fn(&T) -> usize,
) -> impl Strategy<Value = (T, Vec<u8>)> {
    inner.prop_flat_map(move |x| {
        let n = n_of(&x);
        let perm: Vec<u8> = (0..n as u8).collect();
        (Just(x), Just(perm).prop_shuffle())
    })
}

fn relabel(g: &LinkGame, perm: &[u8]) -> LinkGame {
    LinkGame::new(
        g.graph().permuted(perm),
        perm[g.s()] as usize,
        perm[g.t()] as usize,
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn graph6_round_trip(g in graph(16)) {
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_key_ignores_labels((g, perm) in with_perm(game(9), |g: &LinkGame| g.n())) {
        let h = relabel(&g, &perm);
        prop_assert_eq!(g.canonical_key(), h.canonical_key());
        let swapped = LinkGame::new(*g.graph(), g.t(), g.s()).unwrap();
        prop_assert_eq!(g.canonical_key(), swapped.canonical_key());
        prop_assert_eq!(g.canonical().canonical_key(), g.canonical_key());
    }

    #[test]
    fn sieve_ignores_labels((g, perm) in with_perm(graph(9), |g: &Graph| g.n())) {
        let a = sieve(&g);
        let b = sieve(&g.permuted(&perm));
        prop_assert_eq!(a.keep, b.keep);
        prop_assert_eq!(a.failed, b.failed);
    }

    #[test]
    fn solver_matches_oracle(g in game(7)) {
        prop_assert_eq!(Solver::new().outcome(&g), oracle_outcome(&g).unwrap());
    }

    #[test]
    fn outcome_ignores_labels((g, perm) in with_perm(game(9), |g: &LinkGame| g.n())) {
        let mut solver = Solver::new();
        let a = solver.outcome(&g);
        solver.clear();
        prop_assert_eq!(a, solver.outcome(&relabel(&g, &perm)));
    }

    #[test]
    fn extra_edges_never_hurt_short(g in game(8), u in 0usize..8, v in 0usize..8) {
        let (u, v) = (u % g.n(), v % g.n());
        prop_assume!(u != v);
        let mut bigger = *g.graph();
        bigger.add_edge(u, v);
        let mut solver = Solver::new();
        prop_assert!(solver.outcome(&g.with_graph(bigger)) >= solver.outcome(&g));
    }

    #[test]
    fn weak_means_some_first_move_wins(g in game(7)) {
        let mut solver = Solver::new();
        let class = solver.outcome(&g);
        let wins_first = (0..g.n()).filter(|&v| !g.is_terminal(v) && g.play_area() >> v & 1 == 1).any(|v| {
            match g.short_vertex(v).unwrap() {
                MoveResult::ShortWin => true,
                MoveResult::CutWin => false,
                MoveResult::Position(p) => oracle_outcome(&p).unwrap() == OutcomeClass::Strong,
            }
        });
        prop_assert_eq!(wins_first || g.terminals_adjacent(), class >= OutcomeClass::Weak);
    }

    #[test]
    fn dead_edges_are_removable(g in game(7)) {
        let class = oracle_outcome(&g).unwrap();
        for (u, v) in dead_edges(&g) {
            prop_assert_eq!(oracle_outcome(&g.without_edge(u, v)).unwrap(), class, "edge {}-{}", u, v);
        }
    }

    #[test]
    fn threatened_pairs_are_lost(g in game(7)) {
        let class = oracle_outcome(&g).unwrap();
        for (a, b) in mutually_threatening_pairs(&g) {
            let keep = g.graph().vertices() & !(1 << a) & !(1 << b);
            prop_assert_eq!(oracle_outcome(&g.restrict(keep)).unwrap(), class, "pair {}-{}", a, b);
        }
    }

    #[test]
    fn atlas_round_trip(games in prop::collection::vec(game(7), 1..6)) {
        let mut records: Vec<LinkRecord> = Vec::new();
        // records need connected graphs
        for r in games.iter().filter_map(|g| LinkRecord::solve(g).ok()) {
            if !records.iter().any(|x| x.key().unwrap() == r.key().unwrap()) {
                records.push(r);
            }
        }
        let atlas = Atlas::new(AtlasMeta::new(2, 7, "test"), records.clone()).unwrap();
        let mut text = Vec::new();
        atlas.write(&mut text).unwrap();
        let back = Atlas::read(text.as_slice()).unwrap();
        prop_assert_eq!(back.records(), atlas.records());
        prop_assert_eq!(&back.meta, &atlas.meta);
        for r in back.records() {
            prop_assert!(r.check().is_ok());
        }
        // order-normalised: writing the reversed input gives the same bytes
        records.reverse();
        let mut again = Vec::new();
        Atlas::new(AtlasMeta::new(2, 7, "test"), records).unwrap().write(&mut again).unwrap();
        prop_assert_eq!(text, again);
    }
}
