//! Necessary conditions a bare graph must meet before any terminal
//! assignment on it can be a minimal weak link. Conditions run cheapest
//! first and the verdict names the first one that failed.

use std::collections::BTreeMap;
use std::fmt;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::canon::{graph_key, CanonicalKey};
use crate::game::LinkGame;
use crate::graph::{bit, members, Graph, VertexSet};
use crate::structure::{
    graph_mutually_surrounding_pairs, has_threatening_pair, transverse_edges, Pair,
};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum SieveCondition {
    /// `d1 + d2 >= 3` for n > 3.
    PairFloor,
    /// `d1 + d2 <= (n + 1) / 2` for n <= 9.
    PairHalf,
    /// `d1 + d2 <= n - 4` for n > 7.
    PairCeiling,
    /// `d1 + d2 + d3 <= n` for n > 5.
    TripleCeiling,
    /// `d1 + d2 + d3 <= n - 1` for n > 7.
    TripleTight,
    /// `d1 + dn <= n - 3` for n > 7.
    MinMax,
    Connected,
    TransverseCount,
    TransversePendant,
    TriangleFree,
    BridgeReduced,
    PendantNeighbour,
    SurroundingOverlap,
    SurroundingTriangles,
    TerminalPairs,
    NeverTerminalThreat,
    OpeningMove,
    PairBorders,
    PairThreat,
}

impl SieveCondition {
    pub const ALL: [SieveCondition; 19] = [
        SieveCondition::PairFloor,
        SieveCondition::PairHalf,
        SieveCondition::PairCeiling,
        SieveCondition::TripleCeiling,
        SieveCondition::TripleTight,
        SieveCondition::MinMax,
        SieveCondition::Connected,
        SieveCondition::TransverseCount,
        SieveCondition::TransversePendant,
        SieveCondition::TriangleFree,
        SieveCondition::BridgeReduced,
        SieveCondition::PendantNeighbour,
        SieveCondition::SurroundingOverlap,
        SieveCondition::SurroundingTriangles,
        SieveCondition::TerminalPairs,
        SieveCondition::NeverTerminalThreat,
        SieveCondition::OpeningMove,
        SieveCondition::PairBorders,
        SieveCondition::PairThreat,
    ];

    /// Position in the numbered condition list (all degree bounds are item 1).
    pub fn item(self) -> u8 {
        use SieveCondition::*;
        match self {
            PairFloor | PairHalf | PairCeiling | TripleCeiling | TripleTight | MinMax => 1,
            Connected => 2,
            TransverseCount => 3,
            TransversePendant => 4,
            TriangleFree => 5,
            BridgeReduced => 6,
            PendantNeighbour => 7,
            SurroundingOverlap => 8,
            SurroundingTriangles => 9,
            TerminalPairs => 10,
            NeverTerminalThreat => 11,
            OpeningMove => 12,
            PairBorders => 13,
            PairThreat => 14,
        }
    }

    pub fn label(self) -> &'static str {
        use SieveCondition::*;
        match self {
            PairFloor => "d1+d2>=3",
            PairHalf => "2(d1+d2)<=n+1",
            PairCeiling => "d1+d2<=n-4",
            TripleCeiling => "d1+d2+d3<=n",
            TripleTight => "d1+d2+d3<=n-1",
            MinMax => "d1+dn<=n-3",
            Connected => "connected",
            TransverseCount => "transverse-count",
            TransversePendant => "transverse-pendant",
            TriangleFree => "triangle-free-vertices",
            BridgeReduced => "bridge-reduced",
            PendantNeighbour => "pendant-neighbour",
            SurroundingOverlap => "surrounding-overlap",
            SurroundingTriangles => "surrounding-triangles",
            TerminalPairs => "terminal-pairs",
            NeverTerminalThreat => "never-terminal-threat",
            OpeningMove => "opening-move",
            PairBorders => "pair-borders",
            PairThreat => "pair-threat",
        }
    }
}

impl fmt::Display for SieveCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:>2} {}", self.item(), self.label())
    }
}

#[derive(Clone, Debug, Default)]
pub struct SieveOptions {
    /// Skip the `d1 + dn` bound entirely.
    pub relax_min_max: bool,
    /// Graphs allowed to break the `d1 + dn` bound.
    pub exempt: FxHashSet<CanonicalKey>,
    /// Per pair, drop candidate pivots in a border that have an edge from
    /// their other neighbours back into the same border, and drop pairs left
    /// with no candidate pivot.
    pub tighten: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SieveVerdict {
    pub keep: bool,
    pub failed: Option<SieveCondition>,
    pub terminal_pairs: Vec<Pair>,
    pub pivots: Vec<usize>,
}

impl SieveVerdict {
    fn fail(c: SieveCondition) -> Self {
        SieveVerdict {
            keep: false,
            failed: Some(c),
            terminal_pairs: Vec::new(),
            pivots: Vec::new(),
        }
    }
}

/// First violated degree bound for an ascending degree sequence, if any.
pub fn degree_bound_failure(seq: &[usize], n: usize) -> Option<SieveCondition> {
    use SieveCondition::*;
    if seq.len() < 3 {
        // n <= 2: only the half bound can apply
        let pair: usize = seq.iter().take(2).sum();
        return (seq.len() == 2 && 2 * pair > n + 1).then_some(PairHalf);
    }
    let pair = seq[0] + seq[1];
    let triple = pair + seq[2];
    let min_max = seq[0] + seq[seq.len() - 1];
    if n > 3 && pair < 3 {
        return Some(PairFloor);
    }
    if n <= 9 && 2 * pair > n + 1 {
        return Some(PairHalf);
    }
    if n > 7 && pair + 4 > n {
        return Some(PairCeiling);
    }
    if n > 5 && triple > n {
        return Some(TripleCeiling);
    }
    if n > 7 && triple + 1 > n {
        return Some(TripleTight);
    }
    if n > 7 && min_max + 3 > n {
        return Some(MinMax);
    }
    None
}

pub fn degree_bounds_ok(seq: &[usize], n: usize) -> bool {
    degree_bound_failure(seq, n).is_none()
}

pub fn sieve(g: &Graph) -> SieveVerdict {
    sieve_with(g, &SieveOptions::default())
}

pub fn sieve_with(g: &Graph, options: &SieveOptions) -> SieveVerdict {
    run(g, options, true)
}

fn run(g: &Graph, options: &SieveOptions, top: bool) -> SieveVerdict {
    use SieveCondition::*;
    let n = g.n();
    let all = g.vertices();

    // 1
    match degree_bound_failure(&g.degree_sequence(), n) {
        None => {}
        Some(MinMax) if !top || options.relax_min_max || options.exempt.contains(&graph_key(g)) => {
        }
        Some(c) => return SieveVerdict::fail(c),
    }
    // 2
    if !g.is_connected() {
        return SieveVerdict::fail(Connected);
    }
    let pendants = g.pendants();
    // 3, 4
    if n > 3 {
        let transverse = transverse_edges(g);
        if transverse.len() > 1 {
            return SieveVerdict::fail(TransverseCount);
        }
        if let Some(&(u, v)) = transverse.first() {
            if pendants & (bit(u) | bit(v)) == 0 {
                return SieveVerdict::fail(TransversePendant);
            }
        }
    }
    // 5
    let triangle_free = g.triangle_free_vertices();
    if triangle_free.count_ones() < 3 {
        return SieveVerdict::fail(TriangleFree);
    }
    // 6
    if let Some((a, b, x, y)) = graph_bridge(g) {
        if g.has_edge(x, y) {
            return SieveVerdict::fail(BridgeReduced);
        }
        let mut h = *g;
        h.add_edge(x, y);
        let (reduced, _) = h.induced(all & !bit(a) & !bit(b));
        if !run(&reduced, options, false).keep {
            return SieveVerdict::fail(BridgeReduced);
        }
    }
    // 7
    if n > 3 {
        for p in members(pendants) {
            let v = g.neighbors(p).trailing_zeros() as usize;
            if triangle_free & bit(v) == 0 || g.degree(v) <= 2 {
                return SieveVerdict::fail(PendantNeighbour);
            }
        }
    }
    // 8, 9
    let surrounding = graph_mutually_surrounding_pairs(g);
    if n > 3 {
        let mut seen: VertexSet = 0;
        for &(u, v) in &surrounding {
            if seen & (bit(u) | bit(v)) != 0 {
                return SieveVerdict::fail(SurroundingOverlap);
            }
            seen |= bit(u) | bit(v);
        }
    }
    if surrounding
        .iter()
        .any(|&(u, v)| triangle_free & bit(u) == 0 || triangle_free & bit(v) == 0)
    {
        return SieveVerdict::fail(SurroundingTriangles);
    }
    // 10
    let mut pairs = candidate_terminal_pairs(g);
    if pairs.is_empty() {
        return SieveVerdict::fail(TerminalPairs);
    }
    let in_any = pairs.iter().fold(0, |acc, &(s, t)| acc | bit(s) | bit(t));
    let in_all = pairs
        .iter()
        .fold(all, |acc, &(s, t)| acc & (bit(s) | bit(t)));
    // 11
    if has_threatening_pair(g, all & !in_any) {
        return SieveVerdict::fail(NeverTerminalThreat);
    }
    // 12
    let pivots: Vec<usize> = if pendants != 0 {
        let mut v: Vec<usize> = members(pendants)
            .map(|p| g.neighbors(p).trailing_zeros() as usize)
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    } else {
        members(all & !in_all)
            .filter(|&v| candidate_pivot(g, v, &pairs, triangle_free, all & !in_any))
            .collect()
    };
    if pivots.is_empty() {
        return SieveVerdict::fail(OpeningMove);
    }
    // 13
    if n > 5 {
        pairs.retain(|&pair| pair_borders_ok(g, pair));
        if options.tighten {
            pairs.retain(|&pair| pivots.iter().any(|&b| pivot_fits_pair(g, pair, b)));
        }
        if pairs.is_empty() {
            return SieveVerdict::fail(PairBorders);
        }
    }
    // 14
    pairs.retain(|&(s, t)| !has_threatening_pair(g, all & !bit(s) & !bit(t)));
    if pairs.is_empty() {
        return SieveVerdict::fail(PairThreat);
    }
    SieveVerdict {
        keep: true,
        failed: None,
        terminal_pairs: pairs,
        pivots,
    }
}

/// Two degree-2 vertices with the same neighbours `x`, `y`.
fn graph_bridge(g: &Graph) -> Option<(usize, usize, usize, usize)> {
    let two: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
    for (i, &a) in two.iter().enumerate() {
        for &b in &two[i + 1..] {
            if g.neighbors(a) == g.neighbors(b) {
                let mut it = members(g.neighbors(a));
                let x = it.next()?;
                let y = it.next()?;
                return Some((a, b, x, y));
            }
        }
    }
    None
}

fn candidate_pivot(
    g: &Graph,
    v: usize,
    pairs: &[Pair],
    triangle_free: VertexSet,
    never_terminal: VertexSet,
) -> bool {
    if triangle_free & bit(v) == 0 {
        return false;
    }
    match g.degree(v) {
        0 | 1 => return false,
        2 => {
            let mut it = members(g.neighbors(v));
            let (x, y) = (it.next().unwrap(), it.next().unwrap());
            if !pairs.contains(&(x, y)) {
                return false;
            }
        }
        _ => {}
    }
    let others = g.vertices() & !bit(v);
    if members(others).any(|u| g.surrounds(u, v)) {
        return false;
    }
    !members(never_terminal & !bit(v)).any(|u| g.surrounds(v, u))
}

/// A border pivot `b` of `s` has no edge from `Γ(b) \ {s}` into `B_s \ {b}`.
fn pivot_fits_pair(g: &Graph, (s, t): Pair, b: usize) -> bool {
    if b == s || b == t {
        return false;
    }
    [s, t].iter().all(|&term| {
        if !g.has_edge(b, term) {
            return true;
        }
        let border = g.neighbors(term) & !bit(b);
        members(g.neighbors(b) & !bit(term)).all(|c| g.neighbors(c) & border == 0)
    })
}

fn pair_borders_ok(g: &Graph, (s, t): Pair) -> bool {
    let n = g.n();
    let bs = g.neighbors(s);
    let bt = g.neighbors(t);
    let p = n as isize - 2 - bs.count_ones() as isize - bt.count_ones() as isize;
    for (near, far) in [(bs, bt), (bt, bs)] {
        if members(near).any(|b| (g.neighbors(b) & far).count_ones() > 1) {
            return false;
        }
    }
    if n > 7 {
        let rest = g.vertices() & !bit(s) & !bit(t);
        if members(rest).any(|v| {
            (g.neighbors(v) & bs).count_ones() > 1 && (g.neighbors(v) & bt).count_ones() > 1
        }) {
            return false;
        }
    }
    let slack = if n > 7 { 1 } else { 2 };
    members(bs | bt).all(|b| g.degree(b) as isize <= p + slack)
}

/// Unordered pairs that could be the terminals of a minimal weak link on `g`.
pub fn candidate_terminal_pairs(g: &Graph) -> Vec<Pair> {
    let n = g.n();
    if n < 3 {
        return Vec::new();
    }
    let w = n - 2;
    let pendants = g.pendants();
    if n > 3 && pendants.count_ones() > 1 {
        return Vec::new();
    }
    let triangle_free = g.triangle_free_vertices();
    let all = g.vertices();
    let mut out = Vec::new();
    for s in members(triangle_free) {
        for t in members(triangle_free & !((bit(s) << 1) - 1)) {
            let pair = bit(s) | bit(t);
            if g.has_edge(s, t) || pendants & !pair != 0 {
                continue;
            }
            if n > 3 && g.common_neighbors(s, t) > 0 {
                continue;
            }
            let sum = g.degree(s) + g.degree(t);
            if (w <= 7 && 2 * sum > w + 3) || (w > 3 && sum + 1 > w) || (w > 5 && sum + 2 > w) {
                continue;
            }
            let rest = all & !pair;
            if members(rest).any(|u| g.surrounds(s, u) || g.surrounds(t, u)) {
                continue;
            }
            out.push((s, t));
        }
    }
    out
}

/// Per-condition discard counts over a batch of graphs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SieveStats {
    pub seen: usize,
    pub kept: usize,
    pub discarded: BTreeMap<SieveCondition, usize>,
}

impl SieveStats {
    pub fn record(&mut self, verdict: &SieveVerdict) {
        self.seen += 1;
        match verdict.failed {
            None => self.kept += 1,
            Some(c) => *self.discarded.entry(c).or_default() += 1,
        }
    }

    pub fn merge(mut self, other: SieveStats) -> SieveStats {
        self.seen += other.seen;
        self.kept += other.kept;
        for (c, k) in other.discarded {
            *self.discarded.entry(c).or_default() += k;
        }
        self
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum BoundClause {
    /// p >= 1 for w > 3.
    CentreOne,
    /// p >= 2 for w > 5.
    CentreTwo,
    /// 2 (d_s + d_t) <= w + 3 for w <= 7.
    TerminalDegrees,
    /// d_b <= p + 2 for w > 3.
    BorderLoose,
    /// d_b <= p + 1 for w > 5.
    BorderTight,
    /// d_max + min(d_s, d_t) <= w - 1 for w > 5.
    MaxDegree,
    /// At most one articulation vertex.
    Articulation,
    /// At most one pendant, and it is a terminal, for w > 1.
    Pendant,
    /// Borders are disjoint for w > 1.
    DisjointBorders,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub clauses: Vec<(BoundClause, bool)>,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|&(_, ok)| ok)
    }

    pub fn failures(&self) -> Vec<BoundClause> {
        self.clauses
            .iter()
            .filter(|&&(_, ok)| !ok)
            .map(|&(c, _)| c)
            .collect()
    }
}

/// Evaluates every degree, centre and articulation bound that applies at the
/// weight of `link`, which should be a minimal weak link.
pub fn theorem_bounds_check(link: &LinkGame) -> BoundsReport {
    use BoundClause::*;
    let g = link.graph();
    let w = link.weight();
    let (s, t) = link.terminals();
    let (ds, dt) = (g.degree(s), g.degree(t));
    let bs = g.neighbors(s);
    let bt = g.neighbors(t);
    let borders = bs | bt;
    let p = (g.vertices() & !link.terminal_set() & !borders).count_ones() as usize;
    let mut clauses = Vec::new();
    if w > 3 {
        clauses.push((CentreOne, p >= 1));
        clauses.push((BorderLoose, members(borders).all(|b| g.degree(b) <= p + 2)));
    }
    if w > 5 {
        clauses.push((CentreTwo, p >= 2));
        clauses.push((BorderTight, members(borders).all(|b| g.degree(b) <= p + 1)));
        clauses.push((MaxDegree, g.max_degree() + ds.min(dt) < w));
    }
    if w <= 7 {
        clauses.push((TerminalDegrees, 2 * (ds + dt) <= w + 3));
    }
    clauses.push((
        Articulation,
        g.articulation_points(g.vertices()).count_ones() <= 1,
    ));
    if w > 1 {
        let pendants = g.pendants();
        clauses.push((
            Pendant,
            pendants.count_ones() <= 1 && pendants & !link.terminal_set() == 0,
        ));
        clauses.push((DisjointBorders, bs & bt == 0));
    }
    BoundsReport { clauses }
}
