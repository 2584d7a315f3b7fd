//! Plain-text graph format and graph6 import/export.
//!
//! Text format:
//!
//! ```text
//! # optional comment lines
//! n 3
//! e 0 1 1
//! e 1 2 2
//! ```
//!
//! Edge lines carry `u v multiplicity`, each unordered pair at most once.
//! Output sorts edge lines by (min endpoint, max endpoint).

use std::fmt::Write as _;

use super::MultiGraph;
use crate::error::{Error, Result};

pub fn to_text(g: &MultiGraph) -> String {
    let mut s = String::new();
    writeln!(s, "n {}", g.vertex_count()).unwrap();
    for (u, v, m) in g.edges() {
        writeln!(s, "e {u} {v} {m}").unwrap();
    }
    s
}

pub fn parse_text(input: &str) -> Result<MultiGraph> {
    let mut graph: Option<MultiGraph> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let mut parts = line.split_whitespace();
        let tag = parts.next().unwrap_or_default();
        let nums: Vec<&str> = parts.collect();
        let parse_num = |s: &str| -> Result<u64> {
            s.parse::<u64>()
                .map_err(|_| err(format!("expected a non-negative integer, found `{s}`")))
        };
        match (tag, &mut graph) {
            ("n", None) => {
                if nums.len() != 1 {
                    return Err(err("expected `n <N>`".into()));
                }
                graph = Some(MultiGraph::new(parse_num(nums[0])? as usize));
            }
            ("n", Some(_)) => return Err(err("duplicate `n` line".into())),
            ("e", Some(g)) => {
                if nums.len() != 3 {
                    return Err(err("expected `e <u> <v> <mult>`".into()));
                }
                let u = parse_num(nums[0])? as usize;
                let v = parse_num(nums[1])? as usize;
                let m = parse_num(nums[2])?;
                if m == 0 {
                    return Err(err("multiplicity must be at least 1".into()));
                }
                let n = g.vertex_count();
                if u >= n || v >= n {
                    return Err(err(format!("vertex out of range for n = {n}")));
                }
                if u == v {
                    return Err(err(format!("loop at vertex {u}")));
                }
                if g.has_edge(u, v) {
                    return Err(err(format!("pair {{{u},{v}}} listed twice")));
                }
                g.add_edge(u, v, m as u32)?;
            }
            ("e", None) => return Err(err("edge before `n` line".into())),
            _ => return Err(err(format!("unknown line `{line}`"))),
        }
    }
    graph.ok_or(Error::Parse {
        line: 0,
        message: "missing `n` line".into(),
    })
}

/// Splits on blank lines and parses each non-empty block.
pub fn parse_text_blocks(input: &str) -> Result<Vec<MultiGraph>> {
    let mut out = Vec::new();
    let mut block = String::new();
    let mut offset = 0;
    let mut block_start = 0;
    for (i, line) in input.lines().enumerate() {
        if line.trim().is_empty() {
            if has_content(&block) {
                out.push(parse_text(&block).map_err(|e| shift_line(e, block_start))?);
            }
            block.clear();
            offset = i + 1;
            continue;
        }
        if block.is_empty() {
            block_start = offset;
        }
        block.push_str(line);
        block.push('\n');
    }
    if has_content(&block) {
        out.push(parse_text(&block).map_err(|e| shift_line(e, block_start))?);
    }
    Ok(out)
}

fn has_content(block: &str) -> bool {
    block
        .lines()
        .any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn shift_line(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse {
            line: line + by,
            message,
        },
        other => other,
    }
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// graph6 encoding of a simple graph.
pub fn to_graph6(g: &MultiGraph) -> Result<String> {
    if !g.is_simple() {
        return Err(Error::Invalid(
            "graph6 export requires a simple graph".into(),
        ));
    }
    let n = g.vertex_count();
    let mut bytes = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else if (n as u64) < (1u64 << 36) {
        bytes.push(126);
        bytes.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        return Err(Error::Invalid("graph too large for graph6".into()));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(bytes).expect("graph6 is printable ASCII"))
}

pub fn parse_graph6(input: &str) -> Result<MultiGraph> {
    let s = input.trim();
    let s = s.strip_prefix(GRAPH6_HEADER).unwrap_or(s);
    let err = |message: &str| Error::Parse {
        line: 1,
        message: format!("graph6: {message}"),
    };
    let data: Vec<u8> = s.bytes().collect();
    if data.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(err("byte outside 63..=126"));
    }
    let (n, mut pos) = if data.first() == Some(&126) {
        if data.get(1) == Some(&126) {
            if data.len() < 8 {
                return Err(err("truncated size"));
            }
            let n = data[2..8]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 8)
        } else {
            if data.len() < 4 {
                return Err(err("truncated size"));
            }
            let n = data[1..4]
                .iter()
                .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
            (n, 4)
        }
    } else if let Some(&b) = data.first() {
        ((b - 63) as usize, 1)
    } else {
        return Err(err("empty input"));
    };
    let bits_needed = n * n.saturating_sub(1) / 2;
    let bytes_needed = bits_needed.div_ceil(6);
    if data.len() != pos + bytes_needed {
        return Err(err("wrong number of adjacency bytes"));
    }
    let mut g = MultiGraph::new(n);
    let mut bit = 0;
    let mut cur = 0u8;
    for j in 1..n {
        for i in 0..j {
            if bit % 6 == 0 {
                cur = data[pos] - 63;
                pos += 1;
            }
            let set = (cur >> (5 - bit % 6)) & 1 == 1;
            if set {
                g.add_edge(i, j, 1)?;
            }
            bit += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, grid, path};
    use proptest::prelude::*;

    #[test]
    fn text_is_sorted_and_exact() {
        let g = MultiGraph::from_multi_edges(3, &[(2, 1, 2), (1, 0, 1)]).unwrap();
        assert_eq!(to_text(&g), "n 3\ne 0 1 1\ne 1 2 2\n");
        assert_eq!(to_text(&MultiGraph::new(0)), "n 0\n");
    }

    #[test]
    fn text_accepts_comments() {
        let g = parse_text("# a triangle\nn 3\n# edges\ne 0 1 1\ne 1 2 1\ne 0 2 1\n").unwrap();
        assert_eq!(g, complete(3));
    }

    #[test]
    fn text_rejects_malformed_input() {
        for bad in [
            "e 0 1 1\n",
            "n 2\ne 0 0 1\n",
            "n 2\ne 0 2 1\n",
            "n 2\ne 0 1 0\n",
            "n 2\ne 0 1 1\ne 1 0 1\n",
            "n 2\nn 3\n",
            "n x\n",
            "",
            "n 2\nv 1\n",
        ] {
            assert!(parse_text(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn blocks_split_on_blank_lines() {
        let s = format!("{}\n{}\n\n", to_text(&path(3)), to_text(&cycle(4)));
        let gs = parse_text_blocks(&s).unwrap();
        assert_eq!(gs, vec![path(3), cycle(4)]);
    }

    #[test]
    fn graph6_known_strings() {
        // nauty reference encodings
        assert_eq!(to_graph6(&MultiGraph::new(0)).unwrap(), "?");
        assert_eq!(to_graph6(&complete(2)).unwrap(), "A_");
        assert_eq!(to_graph6(&complete(3)).unwrap(), "Bw");
        assert_eq!(to_graph6(&complete(4)).unwrap(), "C~");
        assert_eq!(to_graph6(&path(4)).unwrap(), "Ch");
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), complete(3));
        assert!(to_graph6(&MultiGraph::from_multi_edges(2, &[(0, 1, 2)]).unwrap()).is_err());
        assert!(parse_graph6("Bww").is_err());
    }

    #[test]
    fn graph6_large_vertex_counts() {
        let g = grid(8).unwrap();
        let s = to_graph6(&g).unwrap();
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    fn arb_multigraph(max_n: usize) -> impl Strategy<Value = MultiGraph> {
        (0..=max_n).prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(0u32..4, pairs).prop_map(move |ms| {
                let mut g = MultiGraph::new(n);
                let mut k = 0;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if ms[k] > 0 {
                            g.add_edge(u, v, ms[k]).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn text_round_trip_is_label_identical(g in arb_multigraph(9)) {
            prop_assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
        }

        #[test]
        fn graph6_round_trip(g in arb_multigraph(12)) {
            let s = g.simplified();
            prop_assert_eq!(parse_graph6(&to_graph6(&s).unwrap()).unwrap(), s);
        }
    }
}
