//! Isomorphism classes of graphs and Shannon games by vertex augmentation.
//!
//! Every graph on `n` vertices arises from some graph on `n - 1` vertices by
//! adding one vertex, so the classes at `n` are the canonical forms of all
//! one-vertex extensions of the classes at `n - 1`. Levels are cached per
//! process since several consumers walk the same sizes.

use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::canon::{game_key, graph_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::game::LinkGame;
use crate::graph::{Graph, VertexSet, MAX_VERTICES};

type Level = Arc<Vec<CanonicalKey>>;

fn levels() -> &'static Mutex<Vec<Option<Level>>> {
    static LEVELS: OnceLock<Mutex<Vec<Option<Level>>>> = OnceLock::new();
    LEVELS.get_or_init(|| Mutex::new(vec![None; MAX_VERTICES + 1]))
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::VertexCap {
            n,
            max: MAX_VERTICES,
        });
    }
    Ok(())
}

/// Canonical keys of every graph (connected or not) on `n` vertices, sorted.
pub fn all_graphs(n: usize) -> Result<Level> {
    check_size(n)?;
    if let Some(level) = levels().lock().unwrap()[n].clone() {
        return Ok(level);
    }
    let level = if n == 1 {
        vec![graph_key(&Graph::empty(1)?)]
    } else {
        let parents = all_graphs(n - 1)?;
        extend_all(&parents)
    };
    let level = Arc::new(level);
    levels().lock().unwrap()[n] = Some(level.clone());
    Ok(level)
}

fn extend_all(parents: &[CanonicalKey]) -> Vec<CanonicalKey> {
    let mut keys: Vec<CanonicalKey> = parents
        .par_iter()
        .flat_map_iter(|key| {
            let g = key.graph();
            let subsets: VertexSet = 1 << g.n();
            let mut local: Vec<CanonicalKey> = (0..subsets)
                .map(|nbrs| graph_key(&g.with_vertex(nbrs).expect("size checked")))
                .collect();
            local.sort_unstable();
            local.dedup();
            local
        })
        .collect();
    keys.par_sort_unstable();
    keys.dedup();
    keys
}

/// Canonical connected graphs of one size, split into deterministic chunks.
#[derive(Clone, Debug)]
pub struct GraphStream {
    n: usize,
    keys: Level,
}

impl GraphStream {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn graphs(&self) -> impl Iterator<Item = Graph> + '_ {
        self.keys.iter().map(|k| k.graph())
    }

    pub fn par_graphs(&self) -> impl ParallelIterator<Item = Graph> + '_ {
        self.keys.par_iter().map(|k| k.graph())
    }

    /// Chunk `index` of `count` contiguous chunks in canonical order.
    pub fn chunk(&self, index: usize, count: usize) -> &[CanonicalKey] {
        let len = self.keys.len();
        let lo = len * index / count;
        let hi = len * (index + 1) / count;
        &self.keys[lo..hi]
    }
}

pub fn connected_graphs(n: usize) -> Result<GraphStream> {
    let all = all_graphs(n)?;
    let keys: Vec<CanonicalKey> = all
        .par_iter()
        .copied()
        .filter(|k| k.graph().is_connected())
        .collect();
    Ok(GraphStream {
        n,
        keys: Arc::new(keys),
    })
}

/// Non-isomorphic terminal pairs on one graph, as games with canonical keys.
pub fn games_on(g: &Graph) -> Vec<(CanonicalKey, LinkGame)> {
    let n = g.n();
    let mut out: Vec<(CanonicalKey, LinkGame)> = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            let key = game_key(g, s, t);
            if !out.iter().any(|(k, _)| *k == key) {
                out.push((key, LinkGame::new(*g, s, t).expect("distinct terminals")));
            }
        }
    }
    out.sort_unstable_by_key(|(k, _)| *k);
    out
}

/// All non-isomorphic Shannon games on connected graphs of size `n`.
pub fn shannon_games(n: usize) -> Result<Vec<LinkGame>> {
    let stream = connected_graphs(n)?;
    Ok(stream
        .par_graphs()
        .flat_map_iter(|g| games_on(&g).into_iter().map(|(_, game)| game))
        .collect())
}

pub fn count_shannon_games(n: usize) -> Result<usize> {
    let stream = connected_graphs(n)?;
    Ok(stream.par_graphs().map(|g| games_on(&g).len()).sum())
}
