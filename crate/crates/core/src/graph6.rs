//! graph6 text encoding: a size byte followed by the upper triangle of the
//! adjacency matrix in column order, six bits per printable byte.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = String::with_capacity(1 + (n * (n - 1) / 2).div_ceil(6));
    out.push((n as u8 + 63) as char);
    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((chunk + 63) as char);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((chunk << (6 - filled)) + 63) as char);
    }
    out
}

pub fn decode(text: &str) -> Result<Graph> {
    let body = text.trim_end_matches(['\n', '\r']);
    let (skip, body) = match body.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, body),
    };
    let bytes = body.as_bytes();
    let bad = |i: usize, reason: &str| Error::Graph6 {
        offset: skip + i,
        reason: reason.to_string(),
    };
    let &first = bytes.first().ok_or_else(|| bad(0, "empty input"))?;
    if first == b'~' {
        return Err(bad(0, "sizes above 62 are not supported"));
    }
    if !(63..=126).contains(&first) {
        return Err(bad(0, "size byte out of range"));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(bad(0, "graphs need at least one vertex"));
    }
    if n > MAX_VERTICES {
        return Err(Error::VertexCap {
            n,
            max: MAX_VERTICES,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let want = 1 + bits.div_ceil(6);
    if bytes.len() != want {
        let at = bytes.len().min(want);
        return Err(bad(
            at,
            &format!("expected {want} bytes, found {}", bytes.len()),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let pos = 1 + k / 6;
            let byte = bytes[pos];
            if !(63..=126).contains(&byte) {
                return Err(bad(pos, "byte out of range"));
            }
            if (byte - 63) >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if let Some(&last) = bytes.get(want - 1).filter(|_| !bits.is_multiple_of(6)) {
        if !(63..=126).contains(&last) {
            return Err(bad(want - 1, "byte out of range"));
        }
        if (last - 63) & ((1 << (6 - bits % 6)) - 1) != 0 {
            return Err(bad(want - 1, "padding bits are not zero"));
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    /// Straight transcription of the format: bit string first, then bytes.
    fn reference(n: usize, edges: &[(usize, usize)]) -> String {
        let mut bits = Vec::new();
        for j in 1..n {
            for i in 0..j {
                bits.push(edges.contains(&(i, j)) || edges.contains(&(j, i)));
            }
        }
        while bits.len() % 6 != 0 {
            bits.push(false);
        }
        let mut s = String::new();
        s.push(char::from(63 + n as u8));
        for c in bits.chunks(6) {
            let v = c.iter().fold(0u8, |acc, &b| acc * 2 + b as u8);
            s.push(char::from(63 + v));
        }
        s
    }

    #[test]
    fn fixed_strings() {
        let k4: Vec<_> = (0..4)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        assert_eq!(reference(4, &k4), "C~");
        assert_eq!(encode(&Graph::from_edges(4, &k4).unwrap()), "C~");
        assert_eq!(reference(1, &[]), "@");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // path 0-1-2-3-4
        let p5 = [(0, 1), (1, 2), (2, 3), (3, 4)];
        assert_eq!(
            encode(&Graph::from_edges(5, &p5).unwrap()),
            reference(5, &p5)
        );
    }

    #[test]
    fn random_round_trips_match_reference() {
        let mut rng = StdRng::seed_from_u64(6);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=MAX_VERTICES);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges).unwrap();
            let text = encode(&g);
            assert_eq!(text, reference(n, &edges));
            assert_eq!(decode(&text).unwrap(), g);
        }
    }

    #[test]
    fn malformed_input_reports_offset() {
        assert!(matches!(decode("?"), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(decode(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(decode("C"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(
            decode("C~~"),
            Err(Error::Graph6 { offset: 2, .. })
        ));
        assert!(matches!(
            decode("D\x10?"),
            Err(Error::Graph6 { offset: 1, .. })
        ));
        assert!(matches!(decode("B@"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(
            decode("Q????????????????????"),
            Err(Error::VertexCap { .. })
        ));
        assert_eq!(decode(">>graph6<<C~\n").unwrap().edge_count(), 6);
        assert!(matches!(
            decode(">>graph6<<C"),
            Err(Error::Graph6 { offset: 11, .. })
        ));
    }
}
