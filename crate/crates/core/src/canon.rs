//! Canonical labelling of small vertex-coloured graphs.
//!
//! Individualisation-refinement: colour refinement to an equitable ordered
//! partition, then branch on the first non-singleton cell. Every leaf is a
//! relabelling; the canonical form is the leaf with the smallest adjacency
//! rows. Automorphisms found when two leaves coincide prune sibling branches
//! lying in the same orbit of the pointwise stabiliser of the current prefix.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use crate::graph::{bit, members, Graph, VertexSet, MAX_VERTICES};

type Labels = [u8; MAX_VERTICES];

/// Identifies the isomorphism class of a graph, optionally with an unordered
/// terminal pair. Packs the canonical adjacency matrix, so the canonical
/// representative can be recovered with [`CanonicalKey::graph`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(u128);

const TERMINAL_FLAG: u128 = 1 << 127;

impl CanonicalKey {
    fn pack(g: &Graph, terminals: bool) -> Self {
        let n = g.n();
        let mut bits: u128 = 0;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if g.has_edge(i, j) {
                    bits |= 1 << k;
                }
                k += 1;
            }
        }
        let mut key = bits | ((n as u128 - 1) << 120);
        if terminals {
            key |= TERMINAL_FLAG;
        }
        CanonicalKey(key)
    }

    pub fn n(&self) -> usize {
        ((self.0 >> 120) & 0xf) as usize + 1
    }

    /// True for keys of terminal-coloured games; the terminals of the
    /// canonical representative are vertices 0 and 1.
    pub fn has_terminals(&self) -> bool {
        self.0 & TERMINAL_FLAG != 0
    }

    /// The canonical representative.
    pub fn graph(&self) -> Graph {
        let n = self.n();
        let mut rows = [0 as VertexSet; MAX_VERTICES];
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.0 >> k & 1 == 1 {
                    rows[i] |= bit(j);
                    rows[j] |= bit(i);
                }
                k += 1;
            }
        }
        Graph::from_rows(n, &rows)
    }

    pub fn as_bytes(&self) -> [u8; 16] {
        self.0.to_be_bytes()
    }

    pub fn from_bytes(bytes: [u8; 16]) -> Self {
        CanonicalKey(u128::from_be_bytes(bytes))
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({:032x})", self.0)
    }
}

impl FromStr for CanonicalKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        u128::from_str_radix(s.trim(), 16)
            .map(CanonicalKey)
            .map_err(|e| Error::Usage(format!("bad canonical key {s:?}: {e}")))
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:032x}", self.0)
    }
}

/// Canonical form of an uncoloured graph.
pub fn graph_key(g: &Graph) -> CanonicalKey {
    let colors = [0u8; MAX_VERTICES];
    let labels = canonical_labels(g, &colors[..g.n()]);
    CanonicalKey::pack(&g.permuted(&labels), false)
}

/// Canonical form of a graph whose terminal pair `s, t` forms its own colour
/// class. The terminals receive canonical labels 0 and 1.
pub fn game_key(g: &Graph, s: usize, t: usize) -> CanonicalKey {
    let labels = game_labels(g, s, t);
    CanonicalKey::pack(&g.permuted(&labels), true)
}

pub(crate) fn game_labels(g: &Graph, s: usize, t: usize) -> Labels {
    let mut colors = [1u8; MAX_VERTICES];
    colors[s] = 0;
    colors[t] = 0;
    canonical_labels(g, &colors[..g.n()])
}

/// Canonical relabelling: vertex `v` maps to `labels[v]`. `colors` assigns an
/// initial colour class per vertex; classes are ordered by colour value and
/// must themselves be isomorphism invariant.
pub fn canonical_labels(g: &Graph, colors: &[u8]) -> Labels {
    let n = g.n();
    debug_assert_eq!(colors.len(), n);
    let mut start = [0u8; MAX_VERTICES];
    // normalise colours to dense ranks
    let mut present: Vec<u8> = colors.to_vec();
    present.sort_unstable();
    present.dedup();
    for v in 0..n {
        start[v] = present.binary_search(&colors[v]).unwrap() as u8;
    }
    let k = refine(g, &mut start, present.len());
    let mut search = Search {
        g,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut prefix = Vec::with_capacity(n);
    search.descend(start, k, &mut prefix);
    search.best.expect("search reaches at least one leaf").0
}

/// Colour refinement to the coarsest equitable partition finer than the
/// input. Colours stay ordered: a refined cell sits where its parent cell was.
fn refine(g: &Graph, colors: &mut Labels, mut k: usize) -> usize {
    let n = g.n();
    loop {
        if k == n {
            return k;
        }
        let mut cells = [0 as VertexSet; MAX_VERTICES];
        for v in 0..n {
            cells[colors[v] as usize] |= bit(v);
        }
        let mut sigs = [(0u128, 0u8); MAX_VERTICES];
        for v in 0..n {
            let row = g.neighbors(v);
            let mut sig = (colors[v] as u128) << 100;
            for (c, cell) in cells.iter().enumerate().take(k) {
                sig |= ((row & cell).count_ones() as u128) << (95 - 5 * c);
            }
            sigs[v] = (sig, v as u8);
        }
        let sigs = &mut sigs[..n];
        sigs.sort_unstable();
        let mut next = 0u8;
        for i in 0..n {
            if i > 0 && sigs[i].0 != sigs[i - 1].0 {
                next += 1;
            }
            colors[sigs[i].1 as usize] = next;
        }
        let new_k = next as usize + 1;
        if new_k == k {
            return k;
        }
        k = new_k;
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<(Labels, Graph)>,
    best: Option<(Labels, Graph)>,
    autos: Vec<Labels>,
}

impl Search<'_> {
    fn descend(&mut self, colors: Labels, k: usize, prefix: &mut Vec<u8>) {
        if k == self.n {
            self.leaf(colors);
            return;
        }
        let mut counts = [0u8; MAX_VERTICES];
        for v in 0..self.n {
            counts[colors[v] as usize] += 1;
        }
        let target = (0..k).find(|&c| counts[c] > 1).unwrap() as u8;
        let cell: Vec<usize> = (0..self.n).filter(|&v| colors[v] == target).collect();
        let mut explored: VertexSet = 0;
        for &v in &cell {
            if explored != 0 && self.equivalent_to_explored(v, explored, prefix) {
                continue;
            }
            let mut child = colors;
            for c in child.iter_mut().take(self.n) {
                if *c > target {
                    *c += 1;
                }
            }
            for &u in &cell {
                if u != v {
                    child[u] = target + 1;
                }
            }
            let ck = refine(self.g, &mut child, k + 1);
            prefix.push(v as u8);
            self.descend(child, ck, prefix);
            prefix.pop();
            explored |= bit(v);
        }
    }

    /// Is `v` in the orbit of an explored sibling under the automorphisms found
    /// so far that fix every vertex of `prefix`?
    fn equivalent_to_explored(&self, v: usize, explored: VertexSet, prefix: &[u8]) -> bool {
        let mut parent: Labels = [0; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(parent: &mut Labels, mut x: usize) -> usize {
            while parent[x] as usize != x {
                parent[x] = parent[parent[x] as usize];
                x = parent[x] as usize;
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if prefix.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            any = true;
            for x in 0..self.n {
                let a = find(&mut parent, x);
                let b = find(&mut parent, gamma[x] as usize);
                if a != b {
                    parent[a] = b as u8;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        members(explored).any(|u| find(&mut parent, u) == root)
    }

    fn leaf(&mut self, labels: Labels) {
        let image = self.g.permuted(&labels);
        let Some((first_labels, first_image)) = &self.first else {
            self.first = Some((labels, image));
            self.best = Some((labels, image));
            return;
        };
        if image == *first_image {
            let gamma = automorphism(first_labels, &labels, self.n);
            self.autos.push(gamma);
            return;
        }
        let (best_labels, best_image) = self.best.as_ref().unwrap();
        match image.rows().cmp(best_image.rows()) {
            std::cmp::Ordering::Less => self.best = Some((labels, image)),
            std::cmp::Ordering::Equal => {
                let gamma = automorphism(best_labels, &labels, self.n);
                self.autos.push(gamma);
            }
            std::cmp::Ordering::Greater => {}
        }
    }
}

/// Two labellings producing the same image differ by an automorphism:
/// `v -> reference^-1(labels(v))`.
fn automorphism(reference: &Labels, labels: &Labels, n: usize) -> Labels {
    let mut inverse = [0u8; MAX_VERTICES];
    for v in 0..n {
        inverse[reference[v] as usize] = v as u8;
    }
    let mut gamma = [0u8; MAX_VERTICES];
    for v in 0..n {
        gamma[v] = inverse[labels[v] as usize];
    }
    gamma
}
