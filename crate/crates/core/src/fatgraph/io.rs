//! The `.fat` text format.
//!
//! ```text
//! darts N
//! tail d
//! v: d1 d2 ... dk      (one line per vertex, inbound darts counterclockwise)
//! e: d d'              (one line per edge)
//! ```
//!
//! Ids are 1-based decimals. The writer lists each vertex starting at its
//! smallest dart, vertices sorted by that dart, then edges sorted by their
//! smaller dart. Blank lines and `#` comments are ignored by the reader.

use super::{Dart, FatGraph, FatGraphError};

pub(super) fn write_fat(g: &FatGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("darts {}\n", g.num_darts()));
    out.push_str(&format!("tail {}\n", g.tail()));
    let mut verts: Vec<Vec<Dart>> = g
        .vertex_cycles()
        .map(|c| {
            let k = c.iter().enumerate().min_by_key(|(_, d)| **d).map(|(k, _)| k).unwrap_or(0);
            c[k..].iter().chain(&c[..k]).copied().collect()
        })
        .collect();
    verts.sort();
    for v in verts {
        let ids: Vec<String> = v.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!("v: {}\n", ids.join(" ")));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("e: {a} {b}\n"));
    }
    out
}

pub(super) fn parse_fat(s: &str) -> Result<FatGraph, FatGraphError> {
    let mut n: Option<usize> = None;
    let mut tail: Option<u32> = None;
    let mut rot: Vec<Option<u32>> = Vec::new();
    let mut inv: Vec<Option<u32>> = Vec::new();

    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| FatGraphError::Parse { line: lineno + 1, msg: msg.to_string() };
        let (head, rest) = match line.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (line, ""),
        };
        let ids = |text: &str, count: usize| -> Result<Vec<u32>, FatGraphError> {
            let mut out = Vec::new();
            for tok in text.split_whitespace() {
                let id: u32 = tok.parse().map_err(|_| err(&format!("bad dart id {tok:?}")))?;
                if id == 0 || id as usize > count {
                    return Err(err(&format!("dart id {id} out of range 1..={count}")));
                }
                out.push(id - 1);
            }
            Ok(out)
        };
        match head {
            "darts" => {
                if n.is_some() {
                    return Err(err("duplicate darts line"));
                }
                let count: usize = rest.parse().map_err(|_| err("bad dart count"))?;
                n = Some(count);
                rot = vec![None; count];
                inv = vec![None; count];
            }
            "tail" => {
                let count = n.ok_or_else(|| err("tail before darts"))?;
                let v = ids(rest, count)?;
                if v.len() != 1 {
                    return Err(err("tail takes one dart"));
                }
                tail = Some(v[0]);
            }
            "v:" => {
                let count = n.ok_or_else(|| err("vertex before darts"))?;
                let v = ids(rest, count)?;
                if v.is_empty() {
                    return Err(err("empty vertex"));
                }
                for (k, &d) in v.iter().enumerate() {
                    if rot[d as usize].is_some() {
                        return Err(err(&format!("dart {} in two vertices", d + 1)));
                    }
                    rot[d as usize] = Some(v[(k + 1) % v.len()]);
                }
            }
            "e:" => {
                let count = n.ok_or_else(|| err("edge before darts"))?;
                let v = ids(rest, count)?;
                if v.len() != 2 {
                    return Err(err("edge takes two darts"));
                }
                for (a, b) in [(v[0], v[1]), (v[1], v[0])] {
                    if inv[a as usize].is_some() {
                        return Err(err(&format!("dart {} in two edges", a + 1)));
                    }
                    inv[a as usize] = Some(b);
                }
            }
            _ => return Err(err(&format!("unknown directive {head:?}"))),
        }
    }
    let missing = |what: &str| FatGraphError::Parse { line: 0, msg: format!("missing {what}") };
    n.ok_or_else(|| missing("darts line"))?;
    let tail = tail.ok_or_else(|| missing("tail line"))?;
    let rot: Option<Vec<u32>> = rot.into_iter().collect();
    let inv: Option<Vec<u32>> = inv.into_iter().collect();
    let rot = rot.ok_or_else(|| missing("vertex for some dart"))?;
    let inv = inv.ok_or_else(|| missing("edge for some dart"))?;
    FatGraph::new(inv, rot, Dart(tail))
}
