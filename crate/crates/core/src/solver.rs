//! Outcome classification of Shannon games.
//!
//! [`Solver`] is a memoised AND/OR search over positions in the
//! delete-and-clique model of [`LinkGame`]. [`oracle_outcome`] is an
//! independent, deliberately naive search over vertex colourings used to
//! cross-check it.

use std::cell::RefCell;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::error::{Error, Result};
use crate::game::{LinkGame, MoveResult};
use crate::graph::{bit, members, VertexSet};

/// Three-valued game classification, ordered `CutSecured < Weak < Strong`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum OutcomeClass {
    /// Cut wins even moving second.
    CutSecured,
    /// Short wins moving first but not moving second.
    Weak,
    /// Short wins even moving second.
    Strong,
}

impl fmt::Display for OutcomeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutcomeClass::CutSecured => "CutSecured",
            OutcomeClass::Weak => "Weak",
            OutcomeClass::Strong => "Strong",
        })
    }
}

/// Entries beyond this many are dropped wholesale to bound memory.
const MEMO_LIMIT: usize = 1 << 24;

#[derive(Clone, Debug)]
pub struct SolverOptions {
    /// Remove non-terminal vertices whose neighbourhood is a clique (this
    /// includes degree 0 and 1) before each lookup. Such vertices are dead.
    pub prune_dead: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { prune_dead: true }
    }
}

#[derive(Default)]
pub struct Solver {
    options: SolverOptions,
    memo: FxHashMap<(CanonicalKey, bool), bool>,
    nodes: u64,
}

impl Solver {
    pub fn new() -> Self {
        Solver::default()
    }

    pub fn with_options(options: SolverOptions) -> Self {
        Solver {
            options,
            ..Solver::default()
        }
    }

    /// Positions expanded so far.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    /// Does Short win with the given side to move?
    pub fn short_wins(&mut self, g: &LinkGame, short_moves_first: bool) -> bool {
        if g.terminals_adjacent() {
            return true;
        }
        if !g.terminals_connected() {
            return false;
        }
        let g = self.normalize(&g.terminal_component());
        self.solve(&g, short_moves_first)
    }

    pub fn outcome(&mut self, g: &LinkGame) -> OutcomeClass {
        if self.short_wins(g, false) {
            OutcomeClass::Strong
        } else if self.short_wins(g, true) {
            OutcomeClass::Weak
        } else {
            OutcomeClass::CutSecured
        }
    }

    /// Vertices whose shorting turns the weak link `g` strong.
    pub fn pivots(&mut self, g: &LinkGame) -> Result<Vec<usize>> {
        let class = self.outcome(g);
        if class != OutcomeClass::Weak {
            return Err(Error::NotWeak(class));
        }
        Ok(members(g.play_area())
            .filter(|&v| match g.short_unchecked(v) {
                MoveResult::ShortWin => true,
                MoveResult::Position(p) => self.short_wins(&p, false),
                MoveResult::CutWin => unreachable!(),
            })
            .collect())
    }

    /// Every single-edge deletion strictly lowers the outcome class.
    /// Cut-secured games are never minimal.
    pub fn is_minimal(&mut self, g: &LinkGame) -> bool {
        let class = self.outcome(g);
        self.is_minimal_as(g, class)
    }

    /// [`Solver::is_minimal`] for a game already known to have outcome `class`.
    pub fn is_minimal_as(&mut self, g: &LinkGame, class: OutcomeClass) -> bool {
        let short_first = match class {
            OutcomeClass::CutSecured => return false,
            OutcomeClass::Weak => true,
            OutcomeClass::Strong => false,
        };
        let graph = g.graph();
        // triangle edges are the likeliest spectators
        let mut edges: Vec<(usize, usize)> = graph.edges().collect();
        edges.sort_by_key(|&(u, v)| graph.common_neighbors(u, v) == 0);
        edges
            .into_iter()
            .all(|(u, v)| !self.short_wins(&g.without_edge(u, v), short_first))
    }

    fn normalize(&self, g: &LinkGame) -> LinkGame {
        if !self.options.prune_dead {
            return *g;
        }
        let mut g = *g;
        loop {
            let graph = g.graph();
            let dead = members(g.play_area()).find(|&v| graph.is_simplicial(v));
            match dead {
                Some(v) => {
                    let keep = graph.vertices() & !bit(v);
                    g = g.restrict(keep);
                }
                None => return g,
            }
        }
    }

    fn solve(&mut self, g: &LinkGame, short_to_move: bool) -> bool {
        let key = (g.canonical_key(), short_to_move);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        self.nodes += 1;
        let result = if short_to_move {
            self.short_move(g)
        } else {
            self.cut_move(g)
        };
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(key, result);
        result
    }

    fn short_move(&mut self, g: &LinkGame) -> bool {
        let graph = g.graph();
        let (s, t) = g.terminals();
        let bs = graph.neighbors(s);
        let bt = graph.neighbors(t);
        let area = g.play_area();
        if area & bs & bt != 0 {
            return true;
        }
        // vertices touching both borders first
        let mut order: Vec<usize> = members(area).collect();
        order.sort_by_key(|&v| {
            let nb = graph.neighbors(v);
            let touches = (nb & (bs | bit(s)) != 0) as usize + (nb & (bt | bit(t)) != 0) as usize;
            (
                std::cmp::Reverse(touches),
                std::cmp::Reverse(graph.degree(v)),
            )
        });
        for v in order {
            match g.short_unchecked(v) {
                MoveResult::ShortWin => return true,
                MoveResult::Position(p) => {
                    let p = self.normalize(&p);
                    if p.terminals_adjacent() || self.solve(&p, false) {
                        return true;
                    }
                }
                MoveResult::CutWin => unreachable!(),
            }
        }
        false
    }

    fn cut_move(&mut self, g: &LinkGame) -> bool {
        let graph = g.graph();
        let area = g.play_area();
        let art = graph.articulation_points(graph.vertices()) & area;
        let mut order: Vec<usize> = members(art).collect();
        let (s, t) = g.terminals();
        let near: VertexSet = (graph.neighbors(s) | graph.neighbors(t)) & area & !art;
        order.extend(members(near));
        order.extend(members(area & !art & !near));
        for v in order {
            match g.cut_unchecked(v) {
                MoveResult::CutWin => return false,
                MoveResult::Position(p) => {
                    let p = self.normalize(&p);
                    if !self.solve(&p, true) {
                        return false;
                    }
                }
                MoveResult::ShortWin => unreachable!(),
            }
        }
        true
    }
}

thread_local! {
    static SOLVER: RefCell<Solver> = RefCell::new(Solver::new());
}

fn with_solver<R>(f: impl FnOnce(&mut Solver) -> R) -> R {
    SOLVER.with(|s| f(&mut s.borrow_mut()))
}

/// [`Solver::short_wins`] on this thread's shared solver.
pub fn short_wins(g: &LinkGame, short_moves_first: bool) -> bool {
    with_solver(|s| s.short_wins(g, short_moves_first))
}

pub fn outcome(g: &LinkGame) -> OutcomeClass {
    with_solver(|s| s.outcome(g))
}

pub fn pivots(g: &LinkGame) -> Result<Vec<usize>> {
    with_solver(|s| s.pivots(g))
}

pub fn is_minimal(g: &LinkGame) -> bool {
    with_solver(|s| s.is_minimal(g))
}

/// Size limit for [`oracle_outcome`].
pub const ORACLE_MAX_VERTICES: usize = 8;

/// Outcome by exhaustive play over vertex colourings, without memoisation,
/// canonical forms or any pruning. Short wins once the terminals are joined by
/// a path through Short's vertices; Cut wins once every path meets a Cut vertex.
pub fn oracle_outcome(g: &LinkGame) -> Result<OutcomeClass> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(Error::OracleTooLarge {
            n: g.n(),
            max: ORACLE_MAX_VERTICES,
        });
    }
    let mut board = Board {
        g,
        short: 0,
        cut: 0,
    };
    Ok(if board.short_wins(false) {
        OutcomeClass::Strong
    } else if board.short_wins(true) {
        OutcomeClass::Weak
    } else {
        OutcomeClass::CutSecured
    })
}

struct Board<'a> {
    g: &'a LinkGame,
    short: VertexSet,
    cut: VertexSet,
}

impl Board<'_> {
    fn walk(&self, through: VertexSet) -> bool {
        let graph = self.g.graph();
        let (s, t) = self.g.terminals();
        let mut seen = bit(s);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for v in 0..graph.n() {
                if !graph.has_edge(u, v) || seen & bit(v) != 0 {
                    continue;
                }
                if v == t {
                    return true;
                }
                if through & bit(v) != 0 {
                    seen |= bit(v);
                    stack.push(v);
                }
            }
        }
        false
    }

    fn short_wins(&mut self, short_to_move: bool) -> bool {
        if self.walk(self.short) {
            return true;
        }
        let open = self.g.play_area() & !self.short & !self.cut;
        if !self.walk(open | self.short) {
            return false;
        }
        for v in 0..self.g.n() {
            if open & bit(v) == 0 {
                continue;
            }
            let won = if short_to_move {
                self.short |= bit(v);
                let r = self.short_wins(false);
                self.short &= !bit(v);
                r
            } else {
                self.cut |= bit(v);
                let r = !self.short_wins(true);
                self.cut &= !bit(v);
                r
            };
            if won {
                return short_to_move;
            }
        }
        !short_to_move
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn edge() -> LinkGame {
        LinkGame::from_edges(2, &[(0, 1)], 0, 1).unwrap()
    }

    fn path4() -> LinkGame {
        LinkGame::from_edges(4, &[(0, 2), (2, 3), (3, 1)], 0, 1).unwrap()
    }

    #[test]
    fn base_cases() {
        let mut solver = Solver::new();
        assert!(solver.short_wins(&edge(), true));
        assert!(solver.short_wins(&edge(), false));
        assert!(solver.short_wins(&named::w1(), true));
        assert!(!solver.short_wins(&named::w1(), false));
        assert!(solver.short_wins(&named::s2(), false));
        let split = LinkGame::from_edges(3, &[(0, 2)], 0, 1).unwrap();
        assert!(!solver.short_wins(&split, true));
    }

    #[test]
    fn outcomes_of_named_links() {
        assert_eq!(outcome(&edge()), OutcomeClass::Strong);
        assert_eq!(outcome(&named::w1()), OutcomeClass::Weak);
        assert_eq!(outcome(&named::s2()), OutcomeClass::Strong);
        assert_eq!(outcome(&named::w3()), OutcomeClass::Weak);
        assert_eq!(outcome(&path4()), OutcomeClass::CutSecured);
        assert_eq!(oracle_outcome(&edge()).unwrap(), OutcomeClass::Strong);
        assert_eq!(oracle_outcome(&named::w1()).unwrap(), OutcomeClass::Weak);
        assert_eq!(oracle_outcome(&path4()).unwrap(), OutcomeClass::CutSecured);
    }

    #[test]
    fn pivots_of_small_links() {
        assert_eq!(pivots(&named::w1()).unwrap(), vec![2]);
        assert_eq!(pivots(&named::w3()).unwrap(), vec![2]);
        assert!(matches!(
            pivots(&named::s2()),
            Err(Error::NotWeak(OutcomeClass::Strong))
        ));
    }

    #[test]
    fn minimality_of_small_links() {
        assert!(is_minimal(&named::w1()));
        assert!(is_minimal(&named::s2()));
        assert!(is_minimal(&named::w3()));
        let mut g = *named::s2().graph();
        g.add_edge(0, 1);
        assert!(!is_minimal(&named::s2().with_graph(g)));
        assert!(!is_minimal(&path4()));
    }

    #[test]
    fn oracle_size_bound() {
        let big = named::chain(4).unwrap();
        assert!(matches!(
            oracle_outcome(&big),
            Err(Error::OracleTooLarge { .. })
        ));
    }

    #[test]
    fn pruning_does_not_change_outcomes() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(99);
        let mut plain = Solver::with_options(SolverOptions { prune_dead: false });
        let mut pruned = Solver::new();
        for _ in 0..400 {
            let n = rng.gen_range(3..=8);
            let mut g = crate::graph::Graph::empty(n).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        g.add_edge(u, v);
                    }
                }
            }
            let game = LinkGame::new(g, 0, 1).unwrap();
            let expect = oracle_outcome(&game).unwrap();
            assert_eq!(plain.outcome(&game), expect, "{g:?}");
            assert_eq!(pruned.outcome(&game), expect, "{g:?}");
        }
    }
}
