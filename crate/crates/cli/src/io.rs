use std::io::Read;

use serde_json::{json, Value};
use univobs::graph::{parse_graph6, parse_text, parse_text_blocks, to_graph6, to_text};
use univobs::{Error, MultiGraph, Result};

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Invalid(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

pub fn write_output(path: &str, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

/// Text format when the first meaningful line starts with `n `, graph6
/// otherwise.
fn is_text(input: &str) -> bool {
    input
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_none_or(|l| l.starts_with("n ") || l == "n")
}

pub fn read_graph(path: &str) -> Result<MultiGraph> {
    let input = read_input(path)?;
    if is_text(&input) {
        parse_text(&input)
    } else {
        parse_graph6(input.trim())
    }
}

/// Blank-line separated text blocks, or one graph6 string per line.
pub fn read_graph_list(path: &str) -> Result<Vec<MultiGraph>> {
    let input = read_input(path)?;
    if is_text(&input) {
        parse_text_blocks(&input)
    } else {
        input
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(parse_graph6)
            .collect()
    }
}

pub fn graph_json(g: &MultiGraph) -> Value {
    let edges: Vec<Value> = g.edges().map(|(u, v, m)| json!([u, v, m])).collect();
    let mut v = json!({
        "vertices": g.vertex_count(),
        "edges": edges,
    });
    if g.is_simple() {
        if let Ok(s) = to_graph6(g) {
            v["graph6"] = json!(s);
        }
    }
    v
}

/// The graph text on one line, for TSV cells.
pub fn graph_cell(g: &MultiGraph) -> String {
    to_text(g).trim_end().replace('\n', "; ")
}
