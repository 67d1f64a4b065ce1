//! Shannon games: a graph with an unordered pair of terminals, the two move
//! types, and the structural summary of a link.

use serde::{Deserialize, Serialize};

use crate::canon::{self, CanonicalKey};
use crate::error::{Error, Result};
use crate::graph::{bit, members, Graph, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LinkGame {
    graph: Graph,
    s: u8,
    t: u8,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Move {
    Short(usize),
    Cut(usize),
}

impl Move {
    pub fn vertex(self) -> usize {
        match self {
            Move::Short(v) | Move::Cut(v) => v,
        }
    }
}

/// Result of a single move.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MoveResult {
    Position(LinkGame),
    /// The move joined the terminals.
    ShortWin,
    /// The move separated the terminals.
    CutWin,
}

impl MoveResult {
    pub fn position(self) -> Option<LinkGame> {
        match self {
            MoveResult::Position(g) => Some(g),
            _ => None,
        }
    }
}

impl LinkGame {
    pub fn new(graph: Graph, s: usize, t: usize) -> Result<Self> {
        if s == t || s >= graph.n() || t >= graph.n() {
            return Err(Error::InvalidTerminals { s, t });
        }
        Ok(LinkGame {
            graph,
            s: s as u8,
            t: t as u8,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> Result<Self> {
        LinkGame::new(Graph::from_edges(n, edges)?, s, t)
    }

    #[inline]
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Number of non-terminal vertices.
    #[inline]
    pub fn weight(&self) -> usize {
        self.n() - 2
    }

    #[inline]
    pub fn s(&self) -> usize {
        self.s as usize
    }

    #[inline]
    pub fn t(&self) -> usize {
        self.t as usize
    }

    #[inline]
    pub fn terminals(&self) -> (usize, usize) {
        (self.s(), self.t())
    }

    #[inline]
    pub fn terminal_set(&self) -> VertexSet {
        bit(self.s()) | bit(self.t())
    }

    #[inline]
    pub fn is_terminal(&self, v: usize) -> bool {
        v == self.s() || v == self.t()
    }

    /// Non-terminal vertices.
    #[inline]
    pub fn play_area(&self) -> VertexSet {
        self.graph.vertices() & !self.terminal_set()
    }

    #[inline]
    pub fn terminals_adjacent(&self) -> bool {
        self.graph.has_edge(self.s(), self.t())
    }

    pub fn terminals_connected(&self) -> bool {
        self.graph.reach(self.s(), self.graph.vertices()) & bit(self.t()) != 0
    }

    pub fn without_edge(&self, u: usize, v: usize) -> LinkGame {
        LinkGame {
            graph: self.graph.without_edge(u, v),
            ..*self
        }
    }

    pub fn with_graph(&self, graph: Graph) -> LinkGame {
        LinkGame { graph, ..*self }
    }

    fn check_move(&self, v: usize) -> Result<()> {
        self.graph.check(v)?;
        if self.is_terminal(v) {
            return Err(Error::TerminalMove(v));
        }
        Ok(())
    }

    /// Keeps only `keep` (which must contain both terminals), relabelling densely.
    pub fn restrict(&self, keep: VertexSet) -> LinkGame {
        debug_assert_eq!(keep & self.terminal_set(), self.terminal_set());
        let (graph, map) = self.graph.induced(keep);
        LinkGame {
            graph,
            s: map[self.s()],
            t: map[self.t()],
        }
    }

    /// Drops every vertex outside the terminals' component. The terminals must
    /// be connected.
    pub fn terminal_component(&self) -> LinkGame {
        let comp = self.graph.reach(self.s(), self.graph.vertices());
        if comp == self.graph.vertices() {
            *self
        } else {
            self.restrict(comp)
        }
    }

    /// Short claims `v`: `v` is removed and its neighbourhood becomes a clique.
    pub fn short_vertex(&self, v: usize) -> Result<MoveResult> {
        self.check_move(v)?;
        Ok(self.short_unchecked(v))
    }

    pub(crate) fn short_unchecked(&self, v: usize) -> MoveResult {
        let nb = self.graph.neighbors(v);
        if nb & self.terminal_set() == self.terminal_set() {
            return MoveResult::ShortWin;
        }
        let mut g = self.graph;
        g.add_clique(nb);
        let keep = g.vertices() & !bit(v);
        MoveResult::Position(self.with_graph(g).restrict(keep))
    }

    /// Cut claims `v`: `v` and its edges are deleted, and anything no longer
    /// connected to the terminals is discarded.
    pub fn cut_vertex(&self, v: usize) -> Result<MoveResult> {
        self.check_move(v)?;
        Ok(self.cut_unchecked(v))
    }

    pub(crate) fn cut_unchecked(&self, v: usize) -> MoveResult {
        let rest = self.graph.vertices() & !bit(v);
        let comp = self.graph.reach(self.s(), rest);
        if comp & bit(self.t()) == 0 {
            return MoveResult::CutWin;
        }
        MoveResult::Position(self.restrict(comp))
    }

    /// Plays a sequence of moves, given by original vertex indices, and
    /// reports the first decisive result or the final position.
    pub fn play(&self, moves: &[Move]) -> Result<MoveResult> {
        let mut g = self.graph;
        let mut gone: VertexSet = 0;
        for &m in moves {
            let v = m.vertex();
            self.check_move(v)?;
            if gone & bit(v) != 0 {
                return Err(Error::Usage(format!("vertex {v} played twice")));
            }
            let nb = g.neighbors(v);
            if let Move::Short(_) = m {
                if nb & self.terminal_set() == self.terminal_set() {
                    return Ok(MoveResult::ShortWin);
                }
                g.add_clique(nb);
            }
            for u in members(nb) {
                g.remove_edge(u, v);
            }
            gone |= bit(v);
            if let Move::Cut(_) = m {
                let rest = g.vertices() & !gone;
                if g.reach(self.s(), rest) & bit(self.t()) == 0 {
                    return Ok(MoveResult::CutWin);
                }
            }
        }
        let comp = g.reach(self.s(), g.vertices() & !gone);
        Ok(MoveResult::Position(self.with_graph(g).restrict(comp)))
    }

    /// `u` surrounds `v`: every neighbour of `v` other than `u` is a neighbour of `u`.
    pub fn surrounds(&self, u: usize, v: usize) -> Result<bool> {
        self.graph.check(u)?;
        self.graph.check(v)?;
        if u == v {
            return Err(Error::Usage("surrounds needs two distinct vertices".into()));
        }
        Ok(self.graph.surrounds(u, v))
    }

    pub fn canonical_key(&self) -> CanonicalKey {
        canon::game_key(&self.graph, self.s(), self.t())
    }

    /// The canonical representative, with terminals at 0 and 1.
    pub fn canonical(&self) -> LinkGame {
        LinkGame {
            graph: self.canonical_key().graph(),
            s: 0,
            t: 1,
        }
    }

    pub fn border(&self, terminal: usize) -> VertexSet {
        self.graph.neighbors(terminal) & !self.terminal_set()
    }

    pub fn summarize(&self) -> Result<LinkSummary> {
        if !self.graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let (s, t) = self.terminals();
        let bs = self.border(s);
        let bt = self.border(t);
        let centre = self.play_area() & !bs & !bt;
        Ok(LinkSummary {
            w: self.weight(),
            d_s: self.graph.degree(s),
            d_t: self.graph.degree(t),
            p: centre.count_ones() as usize,
            edges: self.graph.edge_count(),
            d_max: self.graph.max_degree(),
            dist_st: self.graph.distance(s, t).unwrap_or(usize::MAX),
            borders_overlap: bs & bt != 0,
        })
    }

    /// Every pair `{x, y}` that is the exact neighbourhood of some vertex set,
    /// with the maximal such set. See [`two_cut_components`].
    pub fn two_cut_components(&self) -> Vec<TwoCut> {
        two_cut_components(&self.graph)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LinkSummary {
    pub w: usize,
    pub d_s: usize,
    pub d_t: usize,
    pub p: usize,
    #[serde(rename = "E")]
    pub edges: usize,
    pub d_max: usize,
    pub dist_st: usize,
    pub borders_overlap: bool,
}

/// A 2-vertex separator and the vertices it cuts off.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwoCut {
    pub separator: (usize, usize),
    /// Union of the components of `G - {x, y}` whose neighbourhood is exactly `{x, y}`.
    pub region: VertexSet,
    /// The individual components making up `region`.
    pub parts: Vec<VertexSet>,
}

/// All pairs `{x, y}` together with the maximal set `U` with `Γ(U) = {x, y}`.
///
/// Candidate separators come from deleting each vertex in turn and taking the
/// articulation vertices of what remains; a pair whose removal leaves a single
/// component (so that `U` is everything else) is picked up by the completion
/// pass over pairs not yet seen.
pub fn two_cut_components(g: &Graph) -> Vec<TwoCut> {
    let n = g.n();
    let all = g.vertices();
    let mut candidates = vec![0 as VertexSet; n];
    for x in 0..n {
        let rest = all & !bit(x);
        let art = g.articulation_points(rest);
        candidates[x] |= art;
        // G - x itself disconnected: any second vertex still separates
        if g.components(rest).len() > 1 {
            candidates[x] |= rest;
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            // completion: the rest of the graph is one component bounded by x, y
            let rest = all & !bit(x) & !bit(y);
            if rest != 0 && g.reach(rest.trailing_zeros() as usize, rest) == rest {
                candidates[x] |= bit(y);
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..n {
        for y in members(candidates[x] & !crate::graph::full_set(x + 1)) {
            let pair = bit(x) | bit(y);
            let rest = all & !pair;
            let mut region = 0;
            let mut parts = Vec::new();
            for comp in g.components(rest) {
                let boundary = members(comp).fold(0, |acc, v| acc | g.neighbors(v)) & !comp;
                if boundary == pair {
                    region |= comp;
                    parts.push(comp);
                }
            }
            if region != 0 {
                out.push(TwoCut {
                    separator: (x, y),
                    region,
                    parts,
                });
            }
        }
    }
    out
}

/// Components of `G - {x, y}` bounded by exactly `{x, y}`, for one separator.
pub(crate) fn bounded_components(g: &Graph, x: usize, y: usize) -> Vec<VertexSet> {
    let pair = bit(x) | bit(y);
    g.components(g.vertices() & !pair)
        .into_iter()
        .filter(|&comp| members(comp).fold(0, |acc, v| acc | g.neighbors(v)) & !comp == pair)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn sorted(mut v: Vec<(usize, usize, VertexSet)>) -> Vec<(usize, usize, VertexSet)> {
        v.sort();
        v
    }

    #[test]
    fn short_w1_joins_terminals() {
        let w1 = named::w1();
        assert_eq!(w1.short_vertex(2).unwrap(), MoveResult::ShortWin);
        assert_eq!(w1.cut_vertex(2).unwrap(), MoveResult::CutWin);
    }

    #[test]
    fn short_s2_joins_terminals_and_cut_leaves_w1() {
        let s2 = named::s2();
        assert_eq!(s2.short_vertex(2).unwrap(), MoveResult::ShortWin);
        let after = s2.cut_vertex(2).unwrap().position().unwrap();
        assert_eq!(after.canonical_key(), named::w1().canonical_key());
    }

    #[test]
    fn short_on_path_adds_edge_to_terminal() {
        // s=0, a=1, b=2, t=3
        let p = LinkGame::from_edges(4, &[(0, 1), (1, 2), (2, 3)], 0, 3).unwrap();
        let after = p.short_vertex(1).unwrap().position().unwrap();
        assert_eq!(after.n(), 3);
        assert_eq!(after.terminals(), (0, 2));
        assert!(after.graph().has_edge(0, 1));
        assert!(after.graph().has_edge(1, 2));
        assert_eq!(after.canonical_key(), named::w1().canonical_key());
    }

    #[test]
    fn cut_w3_leaves_path() {
        // s=0 v=2 a=3 b=4 t=1
        let w3 = named::w3();
        let after = w3.cut_vertex(3).unwrap().position().unwrap();
        let expect = LinkGame::from_edges(4, &[(0, 2), (2, 3), (3, 1)], 0, 1).unwrap();
        assert_eq!(after.canonical_key(), expect.canonical_key());
    }

    #[test]
    fn cut_discards_unreachable_vertices() {
        // s=0 - 2 - t=1, with a pendant 3 hanging off 4 which hangs off 2
        let g = LinkGame::from_edges(5, &[(0, 2), (2, 1), (0, 4), (4, 1), (4, 3)], 0, 1).unwrap();
        let after = g.cut_vertex(4).unwrap().position().unwrap();
        assert_eq!(after.n(), 3);
    }

    #[test]
    fn moves_reject_terminals_and_range() {
        let w1 = named::w1();
        assert!(matches!(w1.short_vertex(0), Err(Error::TerminalMove(0))));
        assert!(matches!(w1.cut_vertex(1), Err(Error::TerminalMove(1))));
        assert!(matches!(
            w1.cut_vertex(7),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn surrounds_examples() {
        let tri = LinkGame::from_edges(3, &[(0, 1), (1, 2), (0, 2)], 0, 1).unwrap();
        assert!(tri.surrounds(0, 1).unwrap());
        let s2 = named::s2();
        assert!(s2.surrounds(2, 3).unwrap());
        assert!(s2.surrounds(3, 2).unwrap());
        assert!(!s2.surrounds(0, 2).unwrap());
        assert!(s2.surrounds(1, 1).is_err());
    }

    #[test]
    fn summaries_of_small_links() {
        let w1 = named::w1().summarize().unwrap();
        assert_eq!(
            (w1.w, w1.edges, w1.d_max, w1.borders_overlap),
            (1, 2, 2, true)
        );
        let w3 = named::w3().summarize().unwrap();
        assert_eq!(
            (w3.w, w3.edges, w3.d_max, w3.p, w3.d_s, w3.d_t),
            (3, 5, 3, 0, 1, 2)
        );
        assert!(!w3.borders_overlap);
        let s2 = named::s2().summarize().unwrap();
        assert_eq!((s2.w, s2.edges, s2.d_max), (2, 4, 2));
        let disconnected = LinkGame::from_edges(3, &[(0, 2)], 0, 1).unwrap();
        assert!(matches!(disconnected.summarize(), Err(Error::Disconnected)));
    }

    #[test]
    fn two_cuts_of_small_links() {
        let w1 = named::w1();
        let cuts: Vec<_> = w1
            .two_cut_components()
            .into_iter()
            .map(|c| (c.separator.0, c.separator.1, c.region))
            .collect();
        assert_eq!(cuts, vec![(0, 1, bit(2))]);

        // s=0 a=1 b=2 t=3
        let p = LinkGame::from_edges(4, &[(0, 1), (1, 2), (2, 3)], 0, 3).unwrap();
        let cuts: Vec<_> = p
            .two_cut_components()
            .into_iter()
            .map(|c| (c.separator.0, c.separator.1, c.region))
            .collect();
        assert_eq!(
            sorted(cuts),
            vec![(0, 2, bit(1)), (0, 3, bit(1) | bit(2)), (1, 3, bit(2))]
        );

        let w3 = named::w3(); // s=0 t=1 v=2 a=3 b=4
        let cut = w3
            .two_cut_components()
            .into_iter()
            .find(|c| c.separator == (1, 2))
            .unwrap();
        assert_eq!(cut.region, bit(3) | bit(4));
        assert_eq!(cut.parts.len(), 2);
    }

    #[test]
    fn two_cuts_match_pair_deletion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(21);
        for _ in 0..300 {
            let n = rng.gen_range(3..=9);
            let mut g = Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mut brute = Vec::new();
            for x in 0..n {
                for y in x + 1..n {
                    let region = bounded_components(&g, x, y)
                        .into_iter()
                        .fold(0, |a, c| a | c);
                    if region != 0 {
                        brute.push((x, y, region));
                    }
                }
            }
            let fast: Vec<_> = two_cut_components(&g)
                .into_iter()
                .map(|c| (c.separator.0, c.separator.1, c.region))
                .collect();
            assert_eq!(sorted(fast), sorted(brute), "{g:?}");
        }
    }
}
