//! Simple undirected graphs on at most [`MAX_VERTICES`] vertices, stored as one
//! neighbour bitset per vertex.

use std::fmt;

use crate::error::{Error, Result};

/// Largest graph the crate handles. Each adjacency row is a single word.
pub const MAX_VERTICES: usize = 16;

/// A set of vertices, bit `v` set when vertex `v` is a member.
pub type VertexSet = u32;

#[inline]
pub(crate) fn bit(v: usize) -> VertexSet {
    1 << v
}

#[inline]
pub(crate) fn full_set(n: usize) -> VertexSet {
    if n >= 32 {
        u32::MAX
    } else {
        (1 << n) - 1
    }
}

/// Iterator over the members of a [`VertexSet`] in increasing order.
#[derive(Clone, Copy, Debug)]
pub struct Members(VertexSet);

impl Iterator for Members {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

#[inline]
pub fn members(set: VertexSet) -> Members {
    Members(set)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Graph {
    n: u8,
    adj: [VertexSet; MAX_VERTICES],
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCap {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check(u)?;
            g.check(v)?;
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows. Rows are symmetrised and
    /// diagonal bits dropped.
    pub(crate) fn from_rows(n: usize, rows: &[VertexSet]) -> Self {
        let mut g = Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        };
        let all = full_set(n);
        for u in 0..n {
            for v in members(rows[u] & all & !bit(u)) {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        full_set(self.n())
    }

    pub(crate) fn check(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { v, n: self.n() })
        }
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    #[inline]
    pub fn rows(&self) -> &[VertexSet] {
        &self.adj[..self.n()]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] & bit(v) != 0
    }

    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = *self;
        g.remove_edge(u, v);
        g
    }

    /// Makes every pair of vertices in `set` adjacent.
    pub fn add_clique(&mut self, set: VertexSet) {
        for v in members(set) {
            self.adj[v] |= set & !bit(v);
        }
    }

    pub fn edge_count(&self) -> usize {
        self.rows()
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(u, v)` with `u < v`, in row order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n())
            .flat_map(move |u| members(self.adj[u] & !full_set(u + 1)).map(move |v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Vertices reachable from `v` using only vertices in `within`.
    pub fn reach(&self, v: usize, within: VertexSet) -> VertexSet {
        let mut seen = bit(v) & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in members(frontier) {
                next |= self.adj[u];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertices()) == self.vertices()
    }

    /// Connected components of the subgraph induced by `within`.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            let c = self.reach(v, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// Breadth-first distance from `u` to `v`, `None` when disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        if u == v {
            return Some(0);
        }
        let mut seen = bit(u);
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for w in members(frontier) {
                next |= self.adj[w];
            }
            next &= !seen;
            if next & bit(v) != 0 {
                return Some(d);
            }
            seen |= next;
            frontier = next;
        }
        None
    }

    /// Number of common neighbours, the `(u, v)` entry of the squared
    /// adjacency matrix.
    #[inline]
    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        (self.adj[u] & self.adj[v]).count_ones() as usize
    }

    /// `u` surrounds `v` when every neighbour of `v` other than `u` is also a
    /// neighbour of `u`.
    #[inline]
    pub fn surrounds(&self, u: usize, v: usize) -> bool {
        self.adj[v] & !bit(u) & !self.adj[u] == 0
    }

    /// True when `v` lies on no triangle.
    pub fn is_triangle_free(&self, v: usize) -> bool {
        let nb = self.adj[v];
        members(nb).all(|u| self.adj[u] & nb == 0)
    }

    pub fn triangle_free_vertices(&self) -> VertexSet {
        (0..self.n())
            .filter(|&v| self.is_triangle_free(v))
            .fold(0, |acc, v| acc | bit(v))
    }

    pub fn triangle_count(&self) -> usize {
        self.edges()
            .map(|(u, v)| (self.adj[u] & self.adj[v] & !full_set(v + 1)).count_ones() as usize)
            .sum()
    }

    /// Neighbourhood forms a clique.
    pub fn is_simplicial(&self, v: usize) -> bool {
        let nb = self.adj[v];
        members(nb).all(|u| (self.adj[u] | bit(u)) & nb == nb)
    }

    pub fn pendants(&self) -> VertexSet {
        (0..self.n())
            .filter(|&v| self.degree(v) == 1)
            .fold(0, |acc, v| acc | bit(v))
    }

    /// Articulation vertices of the subgraph induced by `within`.
    pub fn articulation_points(&self, within: VertexSet) -> VertexSet {
        let mut disc = [u8::MAX; MAX_VERTICES];
        let mut low = [0u8; MAX_VERTICES];
        let mut out = 0;
        let mut timer = 0u8;
        for root in members(within) {
            if disc[root] != u8::MAX {
                continue;
            }
            self.dfs_low(
                root, None, within, &mut disc, &mut low, &mut timer, &mut out,
            );
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs_low(
        &self,
        v: usize,
        parent: Option<usize>,
        within: VertexSet,
        disc: &mut [u8; MAX_VERTICES],
        low: &mut [u8; MAX_VERTICES],
        timer: &mut u8,
        out: &mut VertexSet,
    ) {
        disc[v] = *timer;
        low[v] = *timer;
        *timer += 1;
        let mut children = 0;
        for u in members(self.adj[v] & within) {
            if disc[u] == u8::MAX {
                children += 1;
                self.dfs_low(u, Some(v), within, disc, low, timer, out);
                low[v] = low[v].min(low[u]);
                if parent.is_some() && low[u] >= disc[v] {
                    *out |= bit(v);
                }
            } else if Some(u) != parent {
                low[v] = low[v].min(disc[u]);
            }
        }
        if parent.is_none() && children > 1 {
            *out |= bit(v);
        }
    }

    /// Induced subgraph on `keep`, relabelled densely in increasing vertex
    /// order. Returns the new graph and the old-to-new index map.
    pub fn induced(&self, keep: VertexSet) -> (Graph, [u8; MAX_VERTICES]) {
        let mut map = [u8::MAX; MAX_VERTICES];
        for (i, v) in members(keep).enumerate() {
            map[v] = i as u8;
        }
        let n = keep.count_ones() as usize;
        let mut g = Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        };
        for v in members(keep) {
            let mut row = 0;
            for u in members(self.adj[v] & keep) {
                row |= bit(map[u] as usize);
            }
            g.adj[map[v] as usize] = row;
        }
        (g, map)
    }

    /// Copy of the graph with one extra vertex adjacent to `nbrs`.
    pub fn with_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        let n = self.n();
        if n + 1 > MAX_VERTICES {
            return Err(Error::VertexCap {
                n: n + 1,
                max: MAX_VERTICES,
            });
        }
        let mut g = *self;
        g.n += 1;
        for u in members(nbrs & full_set(n)) {
            g.add_edge(u, n);
        }
        Ok(g)
    }

    /// Applies the relabelling `perm` (old vertex `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[u8]) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for v in 0..self.n() {
            let mut row = 0;
            for u in members(self.adj[v]) {
                row |= bit(perm[u] as usize);
            }
            g.adj[perm[v] as usize] = row;
        }
        g
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        let mut first = true;
        for (u, v) in self.edges() {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
            first = false;
        }
        write!(f, ")")
    }
}
