//! Exhaustive search for minimal weak links of one size, and derivation of
//! minimal strong links from them.

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::atlas::{classify_reducibility, Reducibility};
use crate::canon::{graph_key, CanonicalKey};
use crate::enumerate::{all_graphs, connected_graphs, games_on};
use crate::error::{Error, Result};
use crate::game::{LinkGame, LinkSummary};
use crate::graph::{bit, Graph, VertexSet};
use crate::graph6;
use crate::sieve::{sieve_with, SieveCondition, SieveOptions, SieveStats};
use crate::solver::{OutcomeClass, Solver};
use crate::structure::graph_mutually_surrounding_pairs;

/// One link in canonical form (terminals at 0 and 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRecord {
    pub n: usize,
    pub w: usize,
    pub g6: String,
    pub terminals: (usize, usize),
    pub class: OutcomeClass,
    pub minimal: bool,
    pub pivots: Vec<usize>,
    pub flags: Reducibility,
    pub summary: LinkSummary,
}

impl LinkRecord {
    /// Builds the record of `game` from an already known outcome class and
    /// minimality.
    pub fn with_solver(
        game: &LinkGame,
        solver: &mut Solver,
        class: OutcomeClass,
        minimal: bool,
    ) -> Result<Self> {
        let c = game.canonical();
        let pivots = if class == OutcomeClass::Weak {
            solver.pivots(&c)?
        } else {
            Vec::new()
        };
        Ok(LinkRecord {
            n: c.n(),
            w: c.weight(),
            g6: graph6::encode(c.graph()),
            terminals: c.terminals(),
            class,
            minimal,
            pivots,
            flags: classify_reducibility(&c),
            summary: c.summarize()?,
        })
    }

    /// Solves `game` from scratch and records it.
    pub fn solve(game: &LinkGame) -> Result<Self> {
        let mut solver = Solver::new();
        let class = solver.outcome(game);
        let minimal = solver.is_minimal_as(game, class);
        Self::with_solver(game, &mut solver, class, minimal)
    }

    pub fn game(&self) -> Result<LinkGame> {
        LinkGame::new(
            graph6::decode(&self.g6)?,
            self.terminals.0,
            self.terminals.1,
        )
    }

    pub fn key(&self) -> Result<CanonicalKey> {
        Ok(self.game()?.canonical_key())
    }

    /// Re-solves the stored game and checks every stored field.
    pub fn check(&self) -> Result<()> {
        let game = self.game()?;
        let fresh = LinkRecord::solve(&game)?;
        let mismatch = |what: &str| {
            Err(Error::Integrity(format!(
                "{}: stored {what} differs",
                self.g6
            )))
        };
        if game.canonical() != game {
            return mismatch("labelling");
        }
        if fresh.class != self.class {
            return mismatch("class");
        }
        if fresh.minimal != self.minimal {
            return mismatch("minimality");
        }
        if fresh.pivots != self.pivots {
            return mismatch("pivots");
        }
        if fresh.flags != self.flags {
            return mismatch("flags");
        }
        if fresh.summary != self.summary || fresh.n != self.n || fresh.w != self.w {
            return mismatch("summary");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Direct,
    Sieved,
    Incremental11,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::Direct => "direct",
            SearchMode::Sieved => "sieved",
            SearchMode::Incremental11 => "incremental11",
        })
    }
}

impl FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(SearchMode::Direct),
            "sieved" => Ok(SearchMode::Sieved),
            "incremental11" => Ok(SearchMode::Incremental11),
            other => Err(Error::Usage(format!("unknown search mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub sieve: SieveOptions,
    /// Directory for per-chunk result shards; finished chunks are reused.
    pub checkpoint: Option<PathBuf>,
    /// Number of chunks the graph list is split into when checkpointing.
    pub chunks: Option<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    pub n: usize,
    pub records: Vec<LinkRecord>,
    /// Graphs examined (connected graphs, or augmented candidates).
    pub graphs: usize,
    /// Games solved.
    pub games: usize,
    pub sieve: SieveStats,
    /// Graphs that break the `d1 + dn` bound yet carry a minimal weak link.
    pub exceptions: Vec<CanonicalKey>,
}

#[derive(Default, Serialize, Deserialize)]
struct ChunkResult {
    records: Vec<LinkRecord>,
    graphs: usize,
    games: usize,
    sieve: SieveStats,
    exceptions: Vec<String>,
}

impl ChunkResult {
    fn merge(mut self, other: ChunkResult) -> ChunkResult {
        self.records.extend(other.records);
        self.graphs += other.graphs;
        self.games += other.games;
        self.sieve = self.sieve.merge(other.sieve);
        self.exceptions.extend(other.exceptions);
        self
    }
}

pub fn find_minimal_weak(n: usize, mode: SearchMode) -> Result<SearchReport> {
    find_minimal_weak_with(n, mode, &SearchOptions::default())
}

pub fn find_minimal_weak_with(
    n: usize,
    mode: SearchMode,
    options: &SearchOptions,
) -> Result<SearchReport> {
    match mode {
        SearchMode::Direct => {
            let keys = connected_graphs(n)?;
            run_chunks(n, keys.keys(), options, |solver, g, out| {
                direct_graph(solver, g, OutcomeClass::Weak, out)
            })
        }
        SearchMode::Sieved => {
            let keys = connected_graphs(n)?;
            run_chunks(n, keys.keys(), options, |solver, g, out| {
                sieved_graph(solver, g, &options.sieve, out)
            })
        }
        SearchMode::Incremental11 => {
            if n != 11 {
                return Err(Error::Usage(format!(
                    "incremental11 searches n = 11, not {n}"
                )));
            }
            incremental(n, options)
        }
    }
}

/// Direct search for minimal strong links on `n` vertices.
pub fn find_minimal_strong_direct(n: usize) -> Result<SearchReport> {
    let keys = connected_graphs(n)?;
    run_chunks(
        n,
        keys.keys(),
        &SearchOptions::default(),
        |solver, g, out| direct_graph(solver, g, OutcomeClass::Strong, out),
    )
}

fn direct_graph(
    solver: &mut Solver,
    g: &Graph,
    want: OutcomeClass,
    out: &mut ChunkResult,
) -> Result<()> {
    out.graphs += 1;
    for (_, game) in games_on(g) {
        out.games += 1;
        let class = solver.outcome(&game);
        if class == want && solver.is_minimal_as(&game, class) {
            out.records
                .push(LinkRecord::with_solver(&game, solver, class, true)?);
        }
    }
    Ok(())
}

fn sieved_graph(
    solver: &mut Solver,
    g: &Graph,
    options: &SieveOptions,
    out: &mut ChunkResult,
) -> Result<()> {
    out.graphs += 1;
    let verdict = sieve_with(g, options);
    out.sieve.record(&verdict);
    let (pairs, exceptional) = if verdict.keep {
        (verdict.terminal_pairs, false)
    } else if verdict.failed == Some(SieveCondition::MinMax) {
        // the one bound with a known exception: run the rest of the sieve
        let relaxed = SieveOptions {
            relax_min_max: true,
            ..options.clone()
        };
        let v = sieve_with(g, &relaxed);
        (v.terminal_pairs, true)
    } else {
        return Ok(());
    };
    let mut seen: Vec<CanonicalKey> = Vec::new();
    for (s, t) in pairs {
        let game = LinkGame::new(*g, s, t)?;
        let key = game.canonical_key();
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        out.games += 1;
        let class = solver.outcome(&game);
        if class == OutcomeClass::Weak && solver.is_minimal_as(&game, class) {
            out.records
                .push(LinkRecord::with_solver(&game, solver, class, true)?);
            if exceptional {
                out.exceptions.push(graph_key(g).to_string());
            }
        }
    }
    Ok(())
}

fn run_chunks<F>(
    n: usize,
    keys: &[CanonicalKey],
    options: &SearchOptions,
    work: F,
) -> Result<SearchReport>
where
    F: Fn(&mut Solver, &Graph, &mut ChunkResult) -> Result<()> + Sync,
{
    let count = options.chunks.unwrap_or(64).clamp(1, keys.len().max(1));
    let run_chunk = |index: usize| -> Result<ChunkResult> {
        if let Some(dir) = &options.checkpoint {
            if let Some(done) = load_shard(dir, n, index)? {
                return Ok(done);
            }
        }
        let lo = keys.len() * index / count;
        let hi = keys.len() * (index + 1) / count;
        let mut solver = Solver::new();
        let mut out = ChunkResult::default();
        for key in &keys[lo..hi] {
            work(&mut solver, &key.graph(), &mut out)?;
        }
        if let Some(dir) = &options.checkpoint {
            save_shard(dir, n, index, &out)?;
        }
        Ok(out)
    };
    let merged = (0..count)
        .into_par_iter()
        .map(run_chunk)
        .try_reduce(ChunkResult::default, |a, b| Ok(a.merge(b)))?;
    finish(n, merged)
}

fn finish(n: usize, merged: ChunkResult) -> Result<SearchReport> {
    let mut keyed: Vec<(CanonicalKey, LinkRecord)> = merged
        .records
        .into_iter()
        .map(|r| Ok((r.key()?, r)))
        .collect::<Result<_>>()?;
    keyed.sort_by_key(|(k, _)| *k);
    keyed.dedup_by_key(|(k, _)| *k);
    let mut exceptions: Vec<CanonicalKey> = merged
        .exceptions
        .iter()
        .map(|hex| hex.parse())
        .collect::<Result<_>>()?;
    exceptions.sort_unstable();
    exceptions.dedup();
    Ok(SearchReport {
        n,
        records: keyed.into_iter().map(|(_, r)| r).collect(),
        graphs: merged.graphs,
        games: merged.games,
        sieve: merged.sieve,
        exceptions,
    })
}

fn shard_path(dir: &Path, n: usize, index: usize) -> PathBuf {
    dir.join(format!("n{n:02}-chunk{index:05}.json"))
}

fn load_shard(dir: &Path, n: usize, index: usize) -> Result<Option<ChunkResult>> {
    let path = shard_path(dir, n, index);
    if !path.exists() {
        return Ok(None);
    }
    let reader = BufReader::new(fs::File::open(path)?);
    let mut text = String::new();
    for line in reader.lines() {
        text.push_str(&line?);
    }
    Ok(Some(serde_json::from_str(&text)?))
}

fn save_shard(dir: &Path, n: usize, index: usize, out: &ChunkResult) -> Result<()> {
    fs::create_dir_all(dir)?;
    let final_path = shard_path(dir, n, index);
    let tmp = final_path.with_extension("tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        serde_json::to_writer(&mut w, out)?;
        w.flush()?;
    }
    fs::rename(tmp, final_path)?;
    Ok(())
}

/// Two-stage augmentation: graphs on `n - 2` vertices gain a vertex to form
/// intermediates with at least two triangle-free vertices and no adjacent
/// mutually surrounding pair; intermediates gain a further vertex and the
/// connected results go through the sieve.
fn incremental(n: usize, options: &SearchOptions) -> Result<SearchReport> {
    if n < 4 {
        return Err(Error::Usage("incremental search needs n >= 4".into()));
    }
    let base = all_graphs(n - 2)?;
    let middle = augment(&base, intermediate_ok);
    let finals = augment(&middle, |g| g.is_connected());
    run_chunks(n, &finals, options, |solver, g, out| {
        sieved_graph(solver, g, &options.sieve, out)
    })
}

pub(crate) fn intermediate_ok(g: &Graph) -> bool {
    g.triangle_free_vertices().count_ones() >= 2
        && !graph_mutually_surrounding_pairs(g)
            .iter()
            .any(|&(u, v)| g.has_edge(u, v))
}

fn augment(parents: &[CanonicalKey], keep: impl Fn(&Graph) -> bool + Sync) -> Vec<CanonicalKey> {
    let mut keys: Vec<CanonicalKey> = parents
        .par_iter()
        .flat_map_iter(|key| {
            let g = key.graph();
            let mut local: Vec<CanonicalKey> = (0..(1 as VertexSet) << g.n())
                .filter_map(|nbrs| {
                    let h = g.with_vertex(nbrs).ok()?;
                    keep(&h).then(|| graph_key(&h))
                })
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

/// Same pipeline as `incremental11`, exposed for any size so the two-stage
/// construction can be checked against the plain sieved search.
#[doc(hidden)]
pub fn find_minimal_weak_incremental(n: usize) -> Result<SearchReport> {
    incremental(n, &SearchOptions::default())
}

/// Minimal strong links one weight down, by removing the pendant terminal of
/// each weak link that has one and moving that terminal to its neighbour.
pub fn derive_minimal_strong(weak: &[LinkRecord]) -> Result<Vec<LinkRecord>> {
    let mut solver = Solver::new();
    let mut seen: FxHashSet<CanonicalKey> = FxHashSet::default();
    let mut out: Vec<(CanonicalKey, LinkRecord)> = Vec::new();
    for record in weak {
        let game = record.game()?;
        let g = game.graph();
        for (pendant, other) in [(game.s(), game.t()), (game.t(), game.s())] {
            if g.degree(pendant) != 1 {
                continue;
            }
            let v = g.neighbors(pendant).trailing_zeros() as usize;
            let (h, map) = g.induced(g.vertices() & !bit(pendant));
            let strong = LinkGame::new(h, map[v] as usize, map[other] as usize)?;
            let key = strong.canonical_key();
            if !seen.insert(key) {
                continue;
            }
            let class = solver.outcome(&strong);
            if class != OutcomeClass::Strong || !solver.is_minimal_as(&strong, class) {
                return Err(Error::Integrity(format!(
                    "removing the pendant of {} gives a {class} game that is not a minimal strong link",
                    record.g6
                )));
            }
            out.push((
                key,
                LinkRecord::with_solver(&strong, &mut solver, class, true)?,
            ));
        }
    }
    out.sort_by_key(|(k, _)| *k);
    Ok(out.into_iter().map(|(_, r)| r).collect())
}

/// Reads records written by [`write_records`], one JSON object per line.
pub fn read_records(reader: impl BufRead) -> Result<Vec<LinkRecord>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(
            serde_json::from_str(&line).map_err(|source| Error::AtlasFormat {
                line: i + 1,
                source,
            })?,
        );
    }
    Ok(out)
}

pub fn write_records(mut writer: impl Write, records: &[LinkRecord]) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut writer, r)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named;

    fn count(n: usize, mode: SearchMode) -> usize {
        find_minimal_weak(n, mode).unwrap().records.len()
    }

    #[test]
    fn small_weak_counts() {
        for (n, want) in [(2, 0), (3, 1), (4, 0), (5, 1), (6, 0)] {
            assert_eq!(count(n, SearchMode::Direct), want, "direct n={n}");
            assert_eq!(count(n, SearchMode::Sieved), want, "sieved n={n}");
        }
    }

    #[test]
    fn records_round_trip() {
        let r = &find_minimal_weak(5, SearchMode::Sieved).unwrap().records[0];
        assert_eq!(r.key().unwrap(), named::w3().canonical_key());
        assert_eq!(r.pivots.len(), 1);
        r.check().unwrap();
        let mut buf = Vec::new();
        write_records(&mut buf, std::slice::from_ref(r)).unwrap();
        assert_eq!(read_records(&buf[..]).unwrap(), vec![r.clone()]);
    }

    #[test]
    fn strong_from_small_weak_links() {
        let w1 = LinkRecord::solve(&named::w1()).unwrap();
        let w3 = LinkRecord::solve(&named::w3()).unwrap();
        let from_w1 = derive_minimal_strong(&[w1]).unwrap();
        assert_eq!(from_w1.len(), 1);
        assert_eq!(from_w1[0].summary.edges, 1);
        let from_w3 = derive_minimal_strong(&[w3]).unwrap();
        assert_eq!(from_w3[0].key().unwrap(), named::s2().canonical_key());
        let direct = find_minimal_strong_direct(4).unwrap();
        assert_eq!(direct.records, from_w3);
    }

    #[test]
    fn incremental_construction_at_small_sizes() {
        for n in [5, 7] {
            let inc = find_minimal_weak_incremental(n).unwrap();
            let sieved = find_minimal_weak(n, SearchMode::Sieved).unwrap();
            assert_eq!(inc.records, sieved.records, "n={n}");
        }
        assert!(find_minimal_weak(9, SearchMode::Incremental11).is_err());
    }

    #[test]
    fn checkpoints_are_reused() {
        let dir = std::env::temp_dir().join(format!("links-ckpt-{}", std::process::id()));
        let options = SearchOptions {
            checkpoint: Some(dir.clone()),
            chunks: Some(5),
            ..Default::default()
        };
        let first = find_minimal_weak_with(7, SearchMode::Sieved, &options).unwrap();
        assert_eq!(fs::read_dir(&dir).unwrap().count(), 5);
        let second = find_minimal_weak_with(7, SearchMode::Sieved, &options).unwrap();
        assert_eq!(first.records, second.records);
        assert_eq!(first.records.len(), 5);
        fs::remove_dir_all(dir).unwrap();
    }
}
