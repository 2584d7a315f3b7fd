//! Exact solvers for the width parameters and related graph parameters.
//!
//! Layout parameters are computed by dynamic programming over vertex subsets
//! (the set of vertices already placed), so running time is `O(2^n n^2)`.
//! Vertex-layout parameters ignore multiplicities; cutwidth counts them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::relations::{Containment, GraphSet, Relation};

/// Block pathwidth aggregates over blocks with `max`; see [`bi_pathwidth`].
pub const BLOCK_AGGREGATE: &str = "max";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParameterKind {
    Treewidth,
    Pathwidth,
    Cutwidth,
    BiPathwidth,
    EdgeDegree,
    /// Fewest vertex deletions leaving no listed graph as a minor.
    ZApex(GraphSet),
}

impl ParameterKind {
    /// The relation under which the parameter is monotone.
    pub fn relation(&self) -> Relation {
        match self {
            ParameterKind::Cutwidth | ParameterKind::EdgeDegree => Relation::Immersion,
            _ => Relation::Minor,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ParameterKind::Treewidth => "tw",
            ParameterKind::Pathwidth => "pw",
            ParameterKind::Cutwidth => "cw",
            ParameterKind::BiPathwidth => "bi_pw",
            ParameterKind::EdgeDegree => "edge_degree",
            ParameterKind::ZApex(_) => "z_apex",
        }
    }

    /// Every kind that takes no extra data.
    pub fn plain() -> [ParameterKind; 5] {
        [
            ParameterKind::Treewidth,
            ParameterKind::Pathwidth,
            ParameterKind::Cutwidth,
            ParameterKind::BiPathwidth,
            ParameterKind::EdgeDegree,
        ]
    }
}

impl fmt::Display for ParameterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParameterKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "tw" | "treewidth" => Ok(ParameterKind::Treewidth),
            "pw" | "pathwidth" => Ok(ParameterKind::Pathwidth),
            "cw" | "cutwidth" => Ok(ParameterKind::Cutwidth),
            "bi_pw" | "bipw" | "bi_pathwidth" => Ok(ParameterKind::BiPathwidth),
            "edge_degree" | "ed" | "delta_e" => Ok(ParameterKind::EdgeDegree),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

/// Largest vertex counts accepted by each solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub treewidth: usize,
    pub pathwidth: usize,
    pub cutwidth: usize,
    pub z_apex: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            treewidth: 14,
            pathwidth: 16,
            cutwidth: 14,
            z_apex: 12,
        }
    }
}

impl Limits {
    /// Raised limits for one-off checks on larger graphs (memory grows as
    /// `2^n`).
    pub fn extended() -> Self {
        Limits {
            treewidth: 20,
            pathwidth: 20,
            cutwidth: 20,
            z_apex: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "snake_case")]
pub enum Witness {
    Layout(Vec<usize>),
    VertexSet(Vec<usize>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub value: usize,
    pub witness: Witness,
}

fn check_limit(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::budget(what, n, limit));
    }
    Ok(())
}

fn masks(g: &MultiGraph) -> Vec<u32> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).fold(0u32, |acc, (u, _)| acc | (1 << u)))
        .collect()
}

/// Generic subset DP: `best(S) = min_{v in S} max(best(S - v), step(S - v, v))`
/// over prefixes `S`, and a layout achieving `best(V)`.
fn layout_dp(n: usize, step: impl Fn(u32, usize) -> usize) -> (usize, Vec<usize>) {
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut best = vec![usize::MAX; 1usize << n];
    let mut choice = vec![0u8; 1usize << n];
    best[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            let cost = best[prev as usize].max(step(prev, v));
            if cost < best[s as usize] {
                best[s as usize] = cost;
                choice[s as usize] = v as u8;
            }
        }
    }
    let mut layout = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let v = choice[s as usize] as usize;
        layout.push(v);
        s &= !(1 << v);
    }
    layout.reverse();
    (best[full as usize], layout)
}

/// Component of `v` in the graph induced on `allowed`.
fn component(adj: &[u32], allowed: u32, v: usize) -> u32 {
    let mut seen = 1u32 << v;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            let x = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[x] & allowed;
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

fn neighbourhood(adj: &[u32], s: u32) -> u32 {
    let mut out = 0;
    let mut f = s;
    while f != 0 {
        let x = f.trailing_zeros() as usize;
        f &= f - 1;
        out |= adj[x];
    }
    out
}

/// Prefix vertices adjacent to the component of the suffix containing `v`.
fn treewidth_step(adj: &[u32], full: u32, prefix: u32, v: usize) -> usize {
    let comp = component(adj, full & !prefix, v);
    (neighbourhood(adj, comp) & prefix).count_ones() as usize
}

/// Prefix vertices with a neighbour outside the prefix.
fn separation(adj: &[u32], full: u32, prefix: u32) -> usize {
    let outside = full & !prefix;
    let mut count = 0;
    let mut f = prefix;
    while f != 0 {
        let x = f.trailing_zeros() as usize;
        f &= f - 1;
        if adj[x] & outside != 0 {
            count += 1;
        }
    }
    count
}

fn full_mask(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        (1u32 << n) - 1
    }
}

pub fn treewidth(g: &MultiGraph) -> Result<Solution> {
    treewidth_with(g, &Limits::default())
}

pub fn treewidth_with(g: &MultiGraph, limits: &Limits) -> Result<Solution> {
    let n = g.vertex_count();
    check_limit("treewidth vertex count", n, limits.treewidth.min(31))?;
    let adj = masks(g);
    let full = full_mask(n);
    let (value, layout) = layout_dp(n, |prefix, v| treewidth_step(&adj, full, prefix, v));
    Ok(Solution {
        value,
        witness: Witness::Layout(layout),
    })
}

pub fn pathwidth(g: &MultiGraph) -> Result<Solution> {
    pathwidth_with(g, &Limits::default())
}

pub fn pathwidth_with(g: &MultiGraph, limits: &Limits) -> Result<Solution> {
    let n = g.vertex_count();
    check_limit("pathwidth vertex count", n, limits.pathwidth.min(31))?;
    let adj = masks(g);
    let full = full_mask(n);
    let (value, layout) = layout_dp(n, |prefix, _| separation(&adj, full, prefix));
    Ok(Solution {
        value,
        witness: Witness::Layout(layout),
    })
}

pub fn cutwidth(g: &MultiGraph) -> Result<Solution> {
    cutwidth_with(g, &Limits::default())
}

pub fn cutwidth_with(g: &MultiGraph, limits: &Limits) -> Result<Solution> {
    let n = g.vertex_count();
    check_limit("cutwidth vertex count", n, limits.cutwidth.min(31))?;
    let edges: Vec<(usize, usize, u32)> = g.edges().collect();
    let (value, layout) = layout_dp(n, |prefix, _| {
        edges
            .iter()
            .filter(|&&(a, b, _)| ((prefix >> a) & 1) != ((prefix >> b) & 1))
            .map(|&(_, _, m)| m as usize)
            .sum()
    });
    Ok(Solution {
        value,
        witness: Witness::Layout(layout),
    })
}

/// Vertex sets of the blocks: maximal 2-connected subgraphs, bridges and
/// isolated vertices.
pub fn blocks(g: &MultiGraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0;
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        g: &MultiGraph,
        v: usize,
        parent: Option<usize>,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<usize>>,
    ) {
        disc[v] = *time;
        low[v] = *time;
        *time += 1;
        for (w, _) in g.neighbors(v) {
            if Some(w) == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                stack.push((v, w));
                dfs(g, w, Some(v), disc, low, time, stack, out);
                low[v] = low[v].min(low[w]);
                if low[w] >= disc[v] {
                    let mut block = Vec::new();
                    while let Some((a, b)) = stack.pop() {
                        block.push(a);
                        block.push(b);
                        if (a, b) == (v, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    block.dedup();
                    out.push(block);
                }
            } else if disc[w] < disc[v] {
                stack.push((v, w));
                low[v] = low[v].min(disc[w]);
            }
        }
    }

    for v in 0..n {
        if disc[v] == usize::MAX {
            if g.degree(v) == 0 {
                disc[v] = time;
                time += 1;
                out.push(vec![v]);
            } else {
                dfs(
                    g, v, None, &mut disc, &mut low, &mut time, &mut stack, &mut out,
                );
            }
        }
    }
    out.sort();
    out
}

/// Maximum pathwidth over the blocks of `g` (zero for `K0`).
///
/// Aggregating with `min` would not be minor-monotone: a pendant edge on
/// `K4` adds a block of pathwidth one.
pub fn bi_pathwidth(g: &MultiGraph) -> Result<Solution> {
    bi_pathwidth_with(g, &Limits::default())
}

pub fn bi_pathwidth_with(g: &MultiGraph, limits: &Limits) -> Result<Solution> {
    let mut value = 0;
    let mut worst = Vec::new();
    for b in blocks(g) {
        let pw = pathwidth_with(&g.induced(&b), limits)?.value;
        if pw > value || worst.is_empty() {
            value = value.max(pw);
            worst = b;
        }
    }
    Ok(Solution {
        value,
        witness: Witness::VertexSet(worst),
    })
}

pub fn edge_degree(g: &MultiGraph) -> Solution {
    let best = (0..g.vertex_count()).max_by_key(|&v| (g.edge_degree(v), std::cmp::Reverse(v)));
    Solution {
        value: g.max_edge_degree(),
        witness: match best {
            Some(v) => Witness::VertexSet(vec![v]),
            None => Witness::None,
        },
    }
}

/// Fewest vertices whose deletion leaves no member of `z_list` as a minor.
pub fn z_apex(g: &MultiGraph, z_list: &GraphSet) -> Result<Solution> {
    z_apex_with(g, z_list, &Limits::default())
}

pub fn z_apex_with(g: &MultiGraph, z_list: &GraphSet, limits: &Limits) -> Result<Solution> {
    let n = g.vertex_count();
    check_limit("z-apex vertex count", n, limits.z_apex.min(31))?;
    let minor = Containment::new(Relation::Minor);
    let free_of = |h: &MultiGraph| -> Result<bool> {
        for z in z_list {
            if minor.contains(z, h)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for size in 0..=n {
        for set in subsets_of_size(n, size) {
            let keep: Vec<usize> = (0..n).filter(|v| !set.contains(v)).collect();
            if free_of(&g.induced(&keep))? {
                return Ok(Solution {
                    value: size,
                    witness: Witness::VertexSet(set),
                });
            }
        }
    }
    Err(Error::Inconsistent(
        "deleting every vertex leaves K0, which must be excluded".into(),
    ))
}

/// `k`-subsets of `0..n` in lexicographic order.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn solve(kind: &ParameterKind, g: &MultiGraph) -> Result<Solution> {
    solve_with(kind, g, &Limits::default())
}

pub fn solve_with(kind: &ParameterKind, g: &MultiGraph, limits: &Limits) -> Result<Solution> {
    match kind {
        ParameterKind::Treewidth => treewidth_with(&g.simplified(), limits),
        ParameterKind::Pathwidth => pathwidth_with(&g.simplified(), limits),
        ParameterKind::Cutwidth => cutwidth_with(g, limits),
        ParameterKind::BiPathwidth => bi_pathwidth_with(&g.simplified(), limits),
        ParameterKind::EdgeDegree => Ok(edge_degree(g)),
        ParameterKind::ZApex(z) => z_apex_with(&g.simplified(), z, limits),
    }
}

pub fn value(kind: &ParameterKind, g: &MultiGraph) -> Result<usize> {
    solve(kind, g).map(|s| s.value)
}

/// Membership of `g` in the class of graphs with parameter at most `k`.
pub fn parameter_at_most(kind: &ParameterKind, k: usize, g: &MultiGraph) -> Result<bool> {
    if let ParameterKind::EdgeDegree = kind {
        return Ok(g.max_edge_degree() <= k);
    }
    Ok(value(kind, g)? <= k)
}

/// The width of a given layout, evaluated position by position straight from
/// the definitions. Only layout parameters are accepted.
pub fn layout_width(kind: &ParameterKind, g: &MultiGraph, layout: &[usize]) -> Result<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    if layout.len() != n
        || layout
            .iter()
            .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
    {
        return Err(Error::Invalid(
            "layout is not a permutation of the vertices".into(),
        ));
    }
    let mut pos = vec![0; n];
    for (i, &v) in layout.iter().enumerate() {
        pos[v] = i;
    }
    let mut width = 0;
    for i in 0..n {
        let cost = match kind {
            ParameterKind::Treewidth => {
                // component of layout[i] among layout[i..]
                let mut comp = vec![false; n];
                let mut stack = vec![layout[i]];
                comp[layout[i]] = true;
                while let Some(x) = stack.pop() {
                    for (y, _) in g.neighbors(x) {
                        if pos[y] >= i && !comp[y] {
                            comp[y] = true;
                            stack.push(y);
                        }
                    }
                }
                layout[..i]
                    .iter()
                    .filter(|&&p| g.neighbors(p).any(|(y, _)| comp[y]))
                    .count()
            }
            ParameterKind::Pathwidth => layout[..i]
                .iter()
                .filter(|&&p| g.neighbors(p).any(|(y, _)| pos[y] >= i))
                .count(),
            ParameterKind::Cutwidth => g
                .edges()
                .filter(|&(a, b, _)| (pos[a] < i) != (pos[b] < i))
                .map(|(_, _, m)| m as usize)
                .sum(),
            other => {
                return Err(Error::Invalid(format!("{other} is not a layout parameter")));
            }
        };
        width = width.max(cost);
    }
    Ok(width)
}

/// Treewidth by the elimination-ordering recurrence: eliminating `v` after
/// the set `S` costs the number of vertices outside `S + v` reachable from
/// `v` through `S`. Independent of the layout formulation above.
pub fn treewidth_by_elimination(g: &MultiGraph) -> Result<usize> {
    let n = g.vertex_count();
    check_limit("treewidth vertex count", n, 20)?;
    let adj = masks(g);
    let full = full_mask(n);
    let mut best = vec![usize::MAX; 1usize << n];
    best[0] = 0;
    for s in 1..=full {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let prev = s & !(1 << v);
            // reach through prev from v
            let through = component(&adj, prev | (1 << v), v);
            let reach = neighbourhood(&adj, through) & !prev & !(1 << v);
            let cost = best[prev as usize].max(reach.count_ones() as usize);
            best[s as usize] = best[s as usize].min(cost);
        }
    }
    Ok(best[full as usize])
}

/// Treewidth by simulating every elimination order with explicit fill-in.
/// Factorial time; for graphs on at most seven vertices.
pub fn treewidth_by_fill(g: &MultiGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 8, "fill simulation is factorial");
    let adj = masks(g);
    let mut best = usize::MAX;
    let mut order: Vec<usize> = (0..n).collect();
    loop {
        let mut a = adj.clone();
        let mut width = 0;
        let mut gone = 0u32;
        for &v in &order {
            let nb = a[v] & !gone;
            width = width.max(nb.count_ones() as usize);
            let mut f = nb;
            while f != 0 {
                let x = f.trailing_zeros() as usize;
                f &= f - 1;
                a[x] |= nb & !(1 << x);
            }
            gone |= 1 << v;
        }
        best = best.min(width);
        if !next_permutation(&mut order) {
            break;
        }
    }
    if n == 0 {
        0
    } else {
        best
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
