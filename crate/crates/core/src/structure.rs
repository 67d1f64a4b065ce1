//! Structural predicates on links: transverse and dead edges, surrounding,
//! supporting and threatening pairs, and the three reductions (induced
//! subgames, mutually supporting pairs, short-cuts).
//!
//! Deadness and threat use only sufficient rules: a non-terminal vertex is
//! dead when its neighbourhood is a clique (degree 0 and 1 included); an edge
//! is dead when it is transverse between two non-terminals or joins two
//! neighbours of one terminal. Every detector here is therefore sound but not
//! complete.

use crate::error::{Error, Result};
use crate::game::{bounded_components, LinkGame, Move, MoveResult};
use crate::graph::{bit, members, Graph, VertexSet};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum PairKind {
    MutuallySurrounding,
    MutuallySupporting,
    MutuallyThreatening,
    ShortCut,
    Bridge,
}

pub type Edge = (usize, usize);
pub type Pair = (usize, usize);

/// Edges `uv` where one endpoint surrounds the other.
pub fn transverse_edges(g: &Graph) -> Vec<Edge> {
    g.edges()
        .filter(|&(u, v)| g.surrounds(u, v) || g.surrounds(v, u))
        .collect()
}

fn dead_edges_once(game: &LinkGame, g: &Graph) -> Vec<Edge> {
    let (s, t) = game.terminals();
    let bs = g.neighbors(s);
    let bt = g.neighbors(t);
    g.edges()
        .filter(|&(u, v)| {
            let across =
                (bs & bit(u) != 0 && bs & bit(v) != 0) || (bt & bit(u) != 0 && bt & bit(v) != 0);
            let transverse = !game.is_terminal(u)
                && !game.is_terminal(v)
                && (g.surrounds(u, v) || g.surrounds(v, u));
            across || transverse
        })
        .collect()
}

/// Dead edges found by the sufficient rules, iterated to a fixed point: each
/// round's edges are removed before the next round looks again.
pub fn dead_edges(game: &LinkGame) -> Vec<Edge> {
    let mut g = *game.graph();
    let mut out = Vec::new();
    loop {
        let found = dead_edges_once(game, &g);
        if found.is_empty() {
            out.sort_unstable();
            return out;
        }
        for &(u, v) in &found {
            g.remove_edge(u, v);
        }
        out.extend(found);
    }
}

/// Game with every non-terminal transverse edge removed (one pass, on the
/// original surrounding relation).
fn without_transverse(game: &LinkGame) -> Graph {
    let mut g = *game.graph();
    for (u, v) in transverse_edges(game.graph()) {
        if !game.is_terminal(u) && !game.is_terminal(v) {
            g.remove_edge(u, v);
        }
    }
    g
}

/// Pairs on a bare graph where each vertex surrounds the other.
pub fn graph_mutually_surrounding_pairs(g: &Graph) -> Vec<Pair> {
    let n = g.n();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if g.surrounds(u, v) && g.surrounds(v, u) {
                out.push((u, v));
            }
        }
    }
    out
}

/// Mutually surrounding pairs after deleting the dead transverse edges, not
/// counting the terminal pair itself.
pub fn mutually_surrounding_pairs(game: &LinkGame) -> Vec<Pair> {
    let (s, t) = game.terminals();
    let terminals = (s.min(t), s.max(t));
    graph_mutually_surrounding_pairs(&without_transverse(game))
        .into_iter()
        .filter(|&p| p != terminals)
        .collect()
}

/// Pairs Short can fill in as a free move: mutually surrounding pairs of
/// non-terminals once dead transverse edges are gone.
pub fn mutually_supporting_pairs(game: &LinkGame) -> Vec<Pair> {
    mutually_surrounding_pairs(game)
        .into_iter()
        .filter(|&(a, b)| !game.is_terminal(a) && !game.is_terminal(b))
        .collect()
}

/// Is `b` dead once `a` is removed? Sufficient test: `b`'s remaining
/// neighbourhood is a clique.
pub(crate) fn dead_after_cut(g: &Graph, a: usize, b: usize) -> bool {
    let nb = g.neighbors(b) & !bit(a);
    members(nb).all(|u| (g.neighbors(u) | bit(u)) & nb == nb)
}

pub(crate) fn mutually_threatening(g: &Graph, a: usize, b: usize) -> bool {
    g.has_edge(a, b) && dead_after_cut(g, a, b) && dead_after_cut(g, b, a)
}

/// Adjacent non-terminal pairs where cutting either leaves the other dead.
pub fn mutually_threatening_pairs(game: &LinkGame) -> Vec<Pair> {
    let g = game.graph();
    g.edges()
        .filter(|&(a, b)| {
            !game.is_terminal(a) && !game.is_terminal(b) && mutually_threatening(g, a, b)
        })
        .collect()
}

/// Threatening pairs restricted to the vertices in `among`.
pub(crate) fn has_threatening_pair(g: &Graph, among: VertexSet) -> bool {
    members(among).any(|a| {
        members(g.neighbors(a) & among & !((bit(a) << 1) - 1))
            .any(|b| mutually_threatening(g, a, b))
    })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BridgeReduction {
    pub game: LinkGame,
    /// Bridges replaced by an edge.
    pub reduced: usize,
    /// A bridge whose ends were already adjacent was found; it is left in place.
    pub non_simple: bool,
}

fn find_bridge(game: &LinkGame, skip_non_simple: bool) -> Option<(usize, usize, usize, usize)> {
    let g = game.graph();
    let area = game.play_area();
    for a in members(area) {
        if g.degree(a) != 2 {
            continue;
        }
        for b in members(area & !((bit(a) << 1) - 1)) {
            if g.degree(b) == 2 && g.neighbors(a) == g.neighbors(b) {
                let mut it = members(g.neighbors(a));
                let x = it.next().unwrap();
                let y = it.next().unwrap();
                if skip_non_simple && g.has_edge(x, y) {
                    continue;
                }
                return Some((a, b, x, y));
            }
        }
    }
    None
}

/// Repeatedly replaces a bridge (two non-terminal degree-2 vertices with the
/// same two neighbours) by an edge between those neighbours.
pub fn bridge_reduce(game: &LinkGame) -> BridgeReduction {
    let mut g = *game;
    let mut reduced = 0;
    while let Some((a, b, x, y)) = find_bridge(&g, true) {
        let mut graph = *g.graph();
        graph.add_edge(x, y);
        g = g
            .with_graph(graph)
            .restrict(graph.vertices() & !bit(a) & !bit(b));
        reduced += 1;
    }
    let non_simple = find_bridge(&g, false).is_some();
    BridgeReduction {
        game: g,
        reduced,
        non_simple,
    }
}

/// Ordered pairs `(a, b)`: adjacent non-terminals, `b` of degree 2 adjacent to
/// exactly one terminal and at graph distance 2 from the other.
pub fn short_cuts(game: &LinkGame) -> Vec<Pair> {
    let g = game.graph();
    let (s, t) = game.terminals();
    let area = game.play_area();
    let mut out = Vec::new();
    for b in members(area) {
        if g.degree(b) != 2 {
            continue;
        }
        let far = match (g.has_edge(b, s), g.has_edge(b, t)) {
            (true, false) => t,
            (false, true) => s,
            _ => continue,
        };
        if g.distance(b, far) != Some(2) {
            continue;
        }
        for a in members(g.neighbors(b) & area) {
            out.push((a, b));
        }
    }
    out.sort_unstable();
    out
}

/// Cut `b` and short `a` for a short-cut `(a, b)`.
pub fn apply_short_cut(game: &LinkGame, (a, b): Pair) -> Result<MoveResult> {
    if !short_cuts(game).contains(&(a, b)) {
        return Err(Error::Usage(format!("({a}, {b}) is not a short-cut")));
    }
    game.play(&[Move::Cut(b), Move::Short(a)])
}

/// Short both members of a mutually supporting pair.
pub fn capture_pair(game: &LinkGame, (a, b): Pair) -> Result<MoveResult> {
    let key = (a.min(b), a.max(b));
    if !mutually_supporting_pairs(game).contains(&key) {
        return Err(Error::Usage(format!(
            "({a}, {b}) is not a mutually supporting pair"
        )));
    }
    game.play(&[Move::Short(a), Move::Short(b)])
}

/// A proper induced Shannon game: play area `region`, terminals `terminals`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InducedGame {
    pub region: VertexSet,
    pub terminals: Pair,
}

/// Terminal-free vertex sets `U` with `|Γ(U)| = 2`, at least two vertices,
/// and smaller than the play area. Each `U` is a union of components of
/// `G - Γ(U)` bounded by exactly `Γ(U)`.
pub fn induced_subgames(game: &LinkGame) -> Vec<InducedGame> {
    let g = game.graph();
    let area = game.play_area();
    let w = game.weight();
    let mut out = Vec::new();
    for cut in g_two_cut_pairs(g) {
        let (x, y) = cut;
        let parts: Vec<VertexSet> = bounded_components(g, x, y)
            .into_iter()
            .filter(|&c| c & !area == 0)
            .collect();
        let k = parts.len();
        for mask in 1u32..(1 << k) {
            let region = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .fold(0, |acc, i| acc | parts[i]);
            let size = region.count_ones() as usize;
            if size >= 2 && size < w {
                out.push(InducedGame {
                    region,
                    terminals: (x, y),
                });
            }
        }
    }
    out
}

fn g_two_cut_pairs(g: &Graph) -> Vec<Pair> {
    crate::game::two_cut_components(g)
        .into_iter()
        .map(|c| c.separator)
        .collect()
}

/// The induced game as a standalone link.
pub fn induced_game(game: &LinkGame, sub: &InducedGame) -> LinkGame {
    let (x, y) = sub.terminals;
    let keep = sub.region | bit(x) | bit(y);
    let (graph, map) = game.graph().induced(keep);
    LinkGame::new(graph, map[x] as usize, map[y] as usize).expect("separator vertices are distinct")
}
