//! Summary tables over an atlas, and the reference values they are compared
//! against.

use std::fmt::Write as _;

use serde::Serialize;

use crate::atlas::Atlas;
use crate::enumerate::{connected_graphs, count_shannon_games};
use crate::error::{Error, Result};
use crate::search::LinkRecord;
use crate::solver::OutcomeClass;

/// One size of the search: graph and game counts, sieve survivors, links.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct SearchRow {
    pub n: usize,
    pub connected_graphs: u64,
    /// `None` where only an estimate exists.
    pub games: Option<u64>,
    pub sieved: Option<u64>,
    pub minimal_links: u64,
    pub s_irreducible: u64,
}

/// Statistics of the minimal links of one weight.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct WeightRow {
    pub w: usize,
    pub links: usize,
    /// Smallest centre over links with disjoint, non-empty borders.
    pub p_min: Option<usize>,
    pub e_min: usize,
    pub e_max: usize,
    pub dmax_min: usize,
    pub dmax_max: usize,
    pub s_irr: usize,
    pub p_irr: usize,
    pub t_irr: usize,
    pub spt_irr: usize,
}

const fn search_row(
    n: usize,
    connected: u64,
    games: Option<u64>,
    sieved: Option<u64>,
    links: u64,
    s_irr: u64,
) -> SearchRow {
    SearchRow {
        n,
        connected_graphs: connected,
        games,
        sieved,
        minimal_links: links,
        s_irreducible: s_irr,
    }
}

const fn weight_row(
    w: usize,
    links: usize,
    p_min: Option<usize>,
    (e_min, e_max): (usize, usize),
    (dmax_min, dmax_max): (usize, usize),
    (s_irr, p_irr, t_irr, spt_irr): (usize, usize, usize, usize),
) -> WeightRow {
    WeightRow {
        w,
        links,
        p_min,
        e_min,
        e_max,
        dmax_min,
        dmax_max,
        s_irr,
        p_irr,
        t_irr,
        spt_irr,
    }
}

/// Reference search statistics, n = 2..=11. The n = 10, 11 game counts and
/// the n = 11 sieve count are only given approximately.
pub const REFERENCE_SEARCH: [SearchRow; 10] = [
    search_row(2, 1, Some(1), Some(0), 0, 0),
    search_row(3, 2, Some(3), Some(1), 1, 1),
    search_row(4, 6, Some(16), Some(0), 0, 0),
    search_row(5, 21, Some(98), Some(1), 1, 0),
    search_row(6, 112, Some(879), Some(0), 0, 0),
    search_row(7, 853, Some(11260), Some(9), 5, 1),
    search_row(8, 11117, Some(230505), Some(35), 0, 0),
    search_row(9, 261080, Some(7949596), Some(737), 36, 8),
    search_row(10, 11716571, None, Some(21523), 24, 7),
    search_row(11, 1006700565, None, None, 953, 312),
];

/// Reference minimal weak link statistics by weight.
pub const REFERENCE_WEAK: [WeightRow; 6] = [
    weight_row(1, 1, None, (2, 2), (2, 2), (0, 1, 1, 0)),
    weight_row(3, 1, Some(0), (5, 5), (3, 3), (0, 0, 0, 0)),
    weight_row(5, 5, Some(1), (8, 9), (3, 4), (1, 1, 2, 0)),
    weight_row(7, 36, Some(2), (11, 13), (3, 5), (8, 8, 20, 2)),
    weight_row(8, 24, Some(3), (14, 16), (4, 5), (7, 24, 24, 7)),
    weight_row(9, 953, Some(3), (14, 21), (3, 6), (312, 544, 766, 208)),
];

/// Reference minimal strong link statistics by weight.
pub const REFERENCE_STRONG: [WeightRow; 6] = [
    weight_row(0, 1, None, (1, 1), (1, 1), (1, 1, 1, 1)),
    weight_row(2, 1, None, (4, 4), (2, 2), (0, 0, 1, 0)),
    weight_row(4, 2, Some(0), (7, 8), (3, 3), (1, 0, 1, 0)),
    weight_row(6, 14, Some(0), (10, 12), (3, 4), (4, 2, 6, 0)),
    weight_row(7, 10, Some(1), (13, 15), (4, 5), (10, 10, 5, 5)),
    weight_row(8, 304, Some(1), (13, 20), (3, 6), (196, 163, 204, 120)),
];

pub fn reference_search(n: usize) -> Option<&'static SearchRow> {
    REFERENCE_SEARCH.iter().find(|r| r.n == n)
}

pub fn reference_weight(class: OutcomeClass, w: usize) -> Option<&'static WeightRow> {
    let rows: &[WeightRow] = match class {
        OutcomeClass::Weak => &REFERENCE_WEAK,
        OutcomeClass::Strong => &REFERENCE_STRONG,
        OutcomeClass::CutSecured => &[],
    };
    rows.iter().find(|r| r.w == w)
}

/// Row statistics over a set of records of one weight.
pub fn weight_row_of(w: usize, records: &[&LinkRecord]) -> WeightRow {
    // the centre is only counted for links whose borders are disjoint and non-empty
    let p_min = records
        .iter()
        .filter(|r| !r.summary.borders_overlap && r.summary.p < r.w)
        .map(|r| r.summary.p)
        .min();
    let edges = records.iter().map(|r| r.summary.edges);
    let dmax = records.iter().map(|r| r.summary.d_max);
    WeightRow {
        w,
        links: records.len(),
        p_min,
        e_min: edges.clone().min().unwrap_or(0),
        e_max: edges.max().unwrap_or(0),
        dmax_min: dmax.clone().min().unwrap_or(0),
        dmax_max: dmax.max().unwrap_or(0),
        s_irr: records.iter().filter(|r| !r.flags.s).count(),
        p_irr: records.iter().filter(|r| !r.flags.p).count(),
        t_irr: records.iter().filter(|r| !r.flags.t).count(),
        spt_irr: records.iter().filter(|r| !r.flags.any()).count(),
    }
}

/// Weight rows for one class over the atlas, for every weight whose size
/// `w + 2` lies within `n_max`. Weights without links are omitted.
pub fn weight_rows(atlas: &Atlas, class: OutcomeClass, n_max: usize) -> Result<Vec<WeightRow>> {
    // strong links of weight w come from weak links of weight w + 1
    let needed = if class == OutcomeClass::Strong {
        n_max + 1
    } else {
        n_max
    };
    let missing = atlas.missing_sizes(2.min(needed), needed);
    if !missing.is_empty() {
        return Err(Error::IncompleteAtlas(missing));
    }
    Ok((0..=n_max.saturating_sub(2))
        .filter_map(|w| {
            let records: Vec<&LinkRecord> = atlas.links(class, w).collect();
            (!records.is_empty()).then(|| weight_row_of(w, &records))
        })
        .collect())
}

/// Search rows for `n = 2..=n_max`: graph and game counts by enumeration,
/// link counts from the atlas. Sieve survivors are not recorded in an atlas.
pub fn search_rows(atlas: &Atlas, n_max: usize) -> Result<Vec<SearchRow>> {
    let missing = atlas.missing_sizes(2, n_max);
    if !missing.is_empty() {
        return Err(Error::IncompleteAtlas(missing));
    }
    (2..=n_max)
        .map(|n| {
            let records: Vec<&LinkRecord> = atlas.links(OutcomeClass::Weak, n - 2).collect();
            Ok(SearchRow {
                n,
                connected_graphs: connected_graphs(n)?.len() as u64,
                games: Some(count_shannon_games(n)? as u64),
                sieved: None,
                minimal_links: records.len() as u64,
                s_irreducible: records.iter().filter(|r| !r.flags.s).count() as u64,
            })
        })
        .collect()
}

fn range(lo: usize, hi: usize) -> String {
    format!("{lo}-{hi}")
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn render_weight_rows(rows: &[WeightRow], csv: bool) -> String {
    let header = [
        "w", "links", "p_min", "E", "d_max", "S_irr", "P_irr", "T_irr", "SPT_irr",
    ];
    let cells: Vec<[String; 9]> = rows
        .iter()
        .map(|r| {
            [
                r.w.to_string(),
                r.links.to_string(),
                opt(r.p_min),
                range(r.e_min, r.e_max),
                range(r.dmax_min, r.dmax_max),
                r.s_irr.to_string(),
                r.p_irr.to_string(),
                r.t_irr.to_string(),
                r.spt_irr.to_string(),
            ]
        })
        .collect();
    render(&header, &cells, csv)
}

pub fn render_search_rows(rows: &[SearchRow], csv: bool) -> String {
    let header = ["n", "connected", "games", "sieved", "minimal", "S_irr"];
    let cells: Vec<[String; 6]> = rows
        .iter()
        .map(|r| {
            [
                r.n.to_string(),
                r.connected_graphs.to_string(),
                opt(r.games),
                opt(r.sieved),
                r.minimal_links.to_string(),
                r.s_irreducible.to_string(),
            ]
        })
        .collect();
    render(&header, &cells, csv)
}

fn render<const K: usize>(header: &[&str; K], cells: &[[String; K]], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        let _ = writeln!(out, "{}", header.join(","));
        for row in cells {
            let _ = writeln!(out, "{}", row.join(","));
        }
        return out;
    }
    let mut width = header.map(str::len);
    for row in cells {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |row: Vec<&str>| {
        row.iter()
            .zip(&width)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    for row in cells {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
    out
}
