//! Collections of link records, their reducibility classification, and the
//! names used for small links.

use std::io::{BufRead, Write};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::canon::CanonicalKey;
use crate::error::{Error, Result};
use crate::game::{LinkGame, MoveResult};
use crate::graph::members;
use crate::named;
use crate::search::LinkRecord;
use crate::solver::OutcomeClass;
use crate::structure::{
    bridge_reduce, capture_pair, induced_subgames, mutually_supporting_pairs, short_cuts,
};

/// Which of the three reductions apply to a link.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Reducibility {
    #[serde(rename = "S")]
    pub s: bool,
    #[serde(rename = "P")]
    pub p: bool,
    #[serde(rename = "T")]
    pub t: bool,
}

impl Reducibility {
    pub fn any(&self) -> bool {
        self.s || self.p || self.t
    }
}

pub fn classify_reducibility(game: &LinkGame) -> Reducibility {
    Reducibility {
        s: !induced_subgames(game).is_empty() || bridge_reduce(game).reduced > 0,
        p: !mutually_supporting_pairs(game).is_empty(),
        t: !short_cuts(game).is_empty(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasMeta {
    pub n_min: usize,
    pub n_max: usize,
    pub mode: String,
    pub version: String,
}

impl AtlasMeta {
    pub fn new(n_min: usize, n_max: usize, mode: impl Into<String>) -> Self {
        AtlasMeta {
            n_min,
            n_max,
            mode: mode.into(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

pub const ATLAS_NAMES: [&str; 11] = [
    "W5A", "W5B", "W5C", "W5X", "W5Z", "W7A", "W7B", "W7C", "W7D", "W7E", "W7F",
];

#[derive(Serialize, Deserialize)]
struct MetaLine {
    meta: AtlasMeta,
}

/// Link records keyed by canonical form, sorted by size then key.
#[derive(Clone, Debug)]
pub struct Atlas {
    pub meta: AtlasMeta,
    records: Vec<LinkRecord>,
    keys: Vec<CanonicalKey>,
    index: FxHashMap<CanonicalKey, usize>,
}

impl Atlas {
    pub fn new(meta: AtlasMeta, records: Vec<LinkRecord>) -> Result<Self> {
        let mut keyed: Vec<(usize, CanonicalKey, LinkRecord)> = records
            .into_iter()
            .map(|r| Ok((r.n, r.key()?, r)))
            .collect::<Result<_>>()?;
        keyed.sort_by_key(|(n, k, _)| (*n, *k));
        let mut index = FxHashMap::default();
        let mut keys = Vec::with_capacity(keyed.len());
        let mut recs = Vec::with_capacity(keyed.len());
        for (i, (_, key, record)) in keyed.into_iter().enumerate() {
            if index.insert(key, i).is_some() {
                return Err(Error::Integrity(format!(
                    "duplicate atlas entry {}",
                    record.g6
                )));
            }
            keys.push(key);
            recs.push(record);
        }
        Ok(Atlas {
            meta,
            records: recs,
            keys,
            index,
        })
    }

    pub fn records(&self) -> &[LinkRecord] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, key: &CanonicalKey) -> Option<&LinkRecord> {
        self.index.get(key).map(|&i| &self.records[i])
    }

    pub fn contains(&self, key: &CanonicalKey) -> bool {
        self.index.contains_key(key)
    }

    pub fn keyed(&self) -> impl Iterator<Item = (&CanonicalKey, &LinkRecord)> {
        self.keys.iter().zip(&self.records)
    }

    /// Minimal links of one class and weight.
    pub fn links(&self, class: OutcomeClass, w: usize) -> impl Iterator<Item = &LinkRecord> {
        self.records
            .iter()
            .filter(move |r| r.class == class && r.minimal && r.w == w)
    }

    /// Sizes with no coverage in `lo..=hi`.
    pub fn missing_sizes(&self, lo: usize, hi: usize) -> Vec<usize> {
        (lo..=hi)
            .filter(|&n| n < self.meta.n_min || n > self.meta.n_max)
            .collect()
    }

    pub fn merge(&mut self, other: Atlas) -> Result<()> {
        let meta = AtlasMeta {
            n_min: self.meta.n_min.min(other.meta.n_min),
            n_max: self.meta.n_max.max(other.meta.n_max),
            mode: self.meta.mode.clone(),
            version: self.meta.version.clone(),
        };
        let mut records = std::mem::take(&mut self.records);
        records.extend(other.records);
        *self = Atlas::new(meta, records)?;
        Ok(())
    }

    pub fn write(&self, mut writer: impl Write) -> Result<()> {
        serde_json::to_writer(
            &mut writer,
            &MetaLine {
                meta: self.meta.clone(),
            },
        )?;
        writer.write_all(b"\n")?;
        for r in &self.records {
            serde_json::to_writer(&mut writer, r)?;
            writer.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read(reader: impl BufRead) -> Result<Self> {
        let mut meta = None;
        let mut records = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parse = |e| Error::AtlasFormat {
                line: i + 1,
                source: e,
            };
            if i == 0 && line.contains("\"meta\"") {
                let m: MetaLine = serde_json::from_str(&line).map_err(parse)?;
                meta = Some(m.meta);
                continue;
            }
            records.push(serde_json::from_str::<LinkRecord>(&line).map_err(parse)?);
        }
        let meta = meta.unwrap_or_else(|| {
            let lo = records.iter().map(|r| r.n).min().unwrap_or(0);
            let hi = records.iter().map(|r| r.n).max().unwrap_or(0);
            AtlasMeta::new(lo, hi, "unknown")
        });
        Atlas::new(meta, records)
    }

    /// Resolves a link name. Structural names need no atlas; names of links
    /// only known from drawings are matched against weight-5 and weight-7
    /// records by their reducibility, pendant and reduction signatures.
    pub fn named(&self, name: &str) -> Result<NamedLink> {
        if let Some(game) = named::structural(name) {
            return Ok(NamedLink {
                game: game?,
                provisional: false,
            });
        }
        let upper = name.trim().to_ascii_uppercase();
        if !ATLAS_NAMES.contains(&upper.as_str()) {
            return Err(Error::UnknownName(name.to_string()));
        }
        let bindings = self.bindings()?;
        bindings
            .into_iter()
            .find(|(n, _)| *n == upper)
            .map(|(_, b)| b)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Every atlas-resolved name with its link.
    pub fn bindings(&self) -> Result<Vec<(String, NamedLink)>> {
        let mut out = Vec::new();
        let w5: Vec<LinkGame> = self
            .links(OutcomeClass::Weak, 5)
            .map(|r| r.game())
            .collect::<Result<_>>()?;
        if w5.is_empty() {
            return Err(Error::Usage(
                "naming weight-5 and weight-7 links needs an atlas covering n = 7 and n = 9".into(),
            ));
        }
        let sc2 = named::chain(2)?.canonical_key();
        let pendant = |g: &LinkGame| members(g.terminal_set()).find(|&v| g.graph().degree(v) == 1);
        let strip = |g: &LinkGame| -> Option<CanonicalKey> {
            let p = pendant(g)?;
            let other = if p == g.s() { g.t() } else { g.s() };
            let v = g.graph().neighbors(p).trailing_zeros() as usize;
            let (h, map) = g.graph().induced(g.graph().vertices() & !(1 << p));
            LinkGame::new(h, map[v] as usize, map[other] as usize)
                .ok()
                .map(|x| x.canonical_key())
        };
        let mut with_pendant = Vec::new();
        for g in &w5 {
            let flags = classify_reducibility(g);
            if !flags.s {
                out.push(("W5Z".to_string(), NamedLink::exact(*g)));
            } else if pendant(g).is_none() {
                out.push(("W5X".to_string(), NamedLink::exact(*g)));
            } else if strip(g) == Some(sc2) {
                out.push(("W5C".to_string(), NamedLink::exact(*g)));
            } else {
                with_pendant.push(*g);
            }
        }
        // W5A and W5B lose their pendant to the same strong link; nothing
        // textual tells them apart, so they are ordered by canonical key
        with_pendant.sort_by_key(|g| g.canonical_key());
        for (name, g) in ["W5A", "W5B"].iter().zip(&with_pendant) {
            out.push((
                name.to_string(),
                NamedLink {
                    game: *g,
                    provisional: true,
                },
            ));
        }

        let find = |name: &str| out.iter().find(|(n, _)| n == name).map(|(_, b)| b.game);
        let (w5x, w5z) = (find("W5X"), find("W5Z"));
        let w7: Vec<LinkGame> = self
            .links(OutcomeClass::Weak, 7)
            .map(|r| r.game())
            .collect::<Result<_>>()?;
        let mut p_to_x = Vec::new();
        let mut p_to_z = Vec::new();
        let mut rest = Vec::new();
        for g in w7 {
            let flags = classify_reducibility(&g);
            if flags.s {
                continue;
            }
            if flags.p {
                let target = captured_contains(&g);
                if w5x.is_some_and(|x| target.contains(&x.canonical_key())) {
                    p_to_x.push(g);
                    continue;
                }
                if w5z.is_some_and(|z| target.contains(&z.canonical_key())) {
                    p_to_z.push(g);
                    continue;
                }
            }
            rest.push(g);
        }
        for list in [&mut p_to_x, &mut p_to_z, &mut rest] {
            list.sort_by_key(|g| g.canonical_key());
        }
        if let [only] = p_to_x.as_slice() {
            out.push(("W7A".to_string(), NamedLink::exact(*only)));
        }
        for (name, g) in ["W7B", "W7C"].iter().zip(&p_to_z) {
            out.push((
                name.to_string(),
                NamedLink {
                    game: *g,
                    provisional: true,
                },
            ));
        }
        for (name, g) in ["W7D", "W7E", "W7F"].iter().zip(&rest) {
            out.push((
                name.to_string(),
                NamedLink {
                    game: *g,
                    provisional: true,
                },
            ));
        }
        Ok(out)
    }
}

/// Canonical keys of the position after capturing each mutually supporting
/// pair, and of that position with any one edge removed.
fn captured_contains(g: &LinkGame) -> Vec<CanonicalKey> {
    let mut out = Vec::new();
    for pair in mutually_supporting_pairs(g) {
        if let Ok(MoveResult::Position(p)) = capture_pair(g, pair) {
            out.push(p.canonical_key());
            for (u, v) in p.graph().edges() {
                out.push(p.without_edge(u, v).canonical_key());
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NamedLink {
    pub game: LinkGame,
    /// The name was bound by an arbitrary tie-break among links with the
    /// same signature.
    pub provisional: bool,
}

impl NamedLink {
    fn exact(game: LinkGame) -> Self {
        NamedLink {
            game,
            provisional: false,
        }
    }
}
