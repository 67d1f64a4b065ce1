//! Constructors for the links that are defined by their structure alone.
//! Links only known from drawings are resolved against an atlas, see
//! [`crate::atlas::Atlas::named`].

use crate::error::{Error, Result};
use crate::game::LinkGame;

/// Path `s - v - t`. Terminals 0 and 1, the middle vertex is 2.
pub fn w1() -> LinkGame {
    LinkGame::from_edges(3, &[(0, 2), (2, 1)], 0, 1).unwrap()
}

/// Bridge: two degree-2 vertices 2, 3 each joined to both terminals.
pub fn s2() -> LinkGame {
    LinkGame::from_edges(4, &[(0, 2), (0, 3), (2, 1), (3, 1)], 0, 1).unwrap()
}

/// Pendant terminal 0 on vertex 2, which is bridged (via 3 and 4) to terminal 1.
pub fn w3() -> LinkGame {
    LinkGame::from_edges(5, &[(0, 2), (2, 3), (2, 4), (3, 1), (4, 1)], 0, 1).unwrap()
}

/// Chain of `k` mutually supporting pairs in series: rails `u_i`, `l_i` with
/// edges along each rail and crosswise between consecutive stages.
/// Terminals are 0 and 1; stage `i` is vertices `2 + 2i` and `3 + 2i`.
pub fn chain(k: usize) -> Result<LinkGame> {
    if k == 0 {
        return Err(Error::Usage("chain needs at least one stage".into()));
    }
    let n = 2 * k + 2;
    let upper = |i: usize| 2 + 2 * i;
    let lower = |i: usize| 3 + 2 * i;
    let mut edges = vec![
        (0, upper(0)),
        (0, lower(0)),
        (upper(k - 1), 1),
        (lower(k - 1), 1),
    ];
    for i in 0..k - 1 {
        edges.push((upper(i), upper(i + 1)));
        edges.push((lower(i), lower(i + 1)));
        edges.push((upper(i), lower(i + 1)));
        edges.push((lower(i), upper(i + 1)));
    }
    LinkGame::from_edges(n, &edges, 0, 1)
}

/// [`chain`] with a new pendant terminal attached to the first terminal.
pub fn chain_with_pendant(k: usize) -> Result<LinkGame> {
    let c = chain(k)?;
    let g = c.graph().with_vertex(1 << c.s())?;
    LinkGame::new(g, g.n() - 1, c.t())
}

/// Names resolvable without an atlas: `W1`, `W3`, `S2`, `SC<k>`, `SC<k>+pendant`.
pub fn structural(name: &str) -> Option<Result<LinkGame>> {
    let upper = name.trim().to_ascii_uppercase();
    match upper.as_str() {
        "W1" => return Some(Ok(w1())),
        "W3" => return Some(Ok(w3())),
        "S2" => return Some(Ok(s2())),
        _ => {}
    }
    let rest = upper.strip_prefix("SC")?;
    let (digits, pendant) = match rest.strip_suffix("+PENDANT") {
        Some(d) => (d, true),
        None => (rest, false),
    };
    let k: usize = digits.parse().ok()?;
    Some(if pendant {
        chain_with_pendant(k)
    } else {
        chain(k)
    })
}
