use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Whether a graph operation collapses parallel edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Parallel edges created by a merge collapse to multiplicity one.
    Simple,
    /// Parallel edges accumulate.
    Multigraph,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Simple => f.write_str("simple"),
            Mode::Multigraph => f.write_str("multigraph"),
        }
    }
}

/// A loopless undirected graph with edge multiplicities.
///
/// Vertices are `0..vertex_count()`. The adjacency is stored as a dense
/// symmetric multiplicity matrix; every graph this crate handles is small.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiGraph {
    n: usize,
    mult: Vec<u32>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            mult: vec![0; n * n],
        }
    }

    /// Simple graph from an edge list. Repeated pairs are ignored.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for &(u, v) in edges {
            g.check_pair(u, v)?;
            g.set_multiplicity(u, v, 1);
        }
        Ok(g)
    }

    pub fn from_multi_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut g = MultiGraph::new(n);
        for &(u, v, m) in edges {
            g.add_edge(u, v, m)?;
        }
        Ok(g)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Total number of edges, counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges().map(|(_, _, m)| m as usize).sum()
    }

    /// Number of adjacent vertex pairs.
    pub fn pair_count(&self) -> usize {
        self.edges().count()
    }

    /// Vertices plus edges with multiplicity; strictly decreases under every
    /// single-step reduction and bounds containment under all four relations.
    pub fn size(&self) -> usize {
        self.n + self.edge_count()
    }

    #[inline]
    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.mult[u * self.n + v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.multiplicity(u, v) > 0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.n,
            })
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        Ok(())
    }

    #[inline]
    fn set_multiplicity(&mut self, u: usize, v: usize, m: u32) {
        self.mult[u * self.n + v] = m;
        self.mult[v * self.n + u] = m;
    }

    /// Adds `m` parallel copies of `{u, v}`.
    pub fn add_edge(&mut self, u: usize, v: usize, m: u32) -> Result<()> {
        self.check_pair(u, v)?;
        let cur = self.multiplicity(u, v);
        self.set_multiplicity(u, v, cur + m);
        Ok(())
    }

    /// Adds a fresh isolated vertex and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        let n = self.n;
        let mut mult = vec![0; (n + 1) * (n + 1)];
        for u in 0..n {
            mult[u * (n + 1)..u * (n + 1) + n].copy_from_slice(&self.mult[u * n..u * n + n]);
        }
        self.n = n + 1;
        self.mult = mult;
        n
    }

    /// Neighbours of `v` with multiplicities, ascending by label.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        let row = &self.mult[v * self.n..(v + 1) * self.n];
        row.iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(u, &m)| (u, m))
    }

    /// Number of distinct neighbours.
    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Number of edge units incident to `v`.
    pub fn edge_degree(&self, v: usize) -> usize {
        self.neighbors(v).map(|(_, m)| m as usize).sum()
    }

    /// Edges `(u, v, multiplicity)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |u| {
            ((u + 1)..n).filter_map(move |v| {
                let m = self.multiplicity(u, v);
                (m > 0).then_some((u, v, m))
            })
        })
    }

    pub fn is_simple(&self) -> bool {
        self.mult.iter().all(|&m| m <= 1)
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// Collapses every multiplicity to one.
    pub fn simplified(&self) -> MultiGraph {
        MultiGraph {
            n: self.n,
            mult: self.mult.iter().map(|&m| m.min(1)).collect(),
        }
    }

    pub fn in_mode(&self, mode: Mode) -> MultiGraph {
        match mode {
            Mode::Simple => self.simplified(),
            Mode::Multigraph => self.clone(),
        }
    }

    /// The subgraph induced by `keep` (ascending labels are preserved in
    /// order; vertex `keep[i]` becomes `i`).
    pub fn induced(&self, keep: &[usize]) -> MultiGraph {
        let k = keep.len();
        let mut g = MultiGraph::new(k);
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                let m = self.multiplicity(a, b);
                if m > 0 {
                    g.set_multiplicity(i, j, m);
                }
            }
        }
        g
    }

    /// Applies a relabeling where `perm[v]` is the new label of `v`.
    pub fn permuted(&self, perm: &[usize]) -> MultiGraph {
        let mut g = MultiGraph::new(self.n);
        for (u, v, m) in self.edges() {
            g.set_multiplicity(perm[u], perm[v], m);
        }
        g
    }

    pub fn delete_vertex(&self, v: usize) -> Result<MultiGraph> {
        self.check_vertex(v)?;
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        Ok(self.induced(&keep))
    }

    /// Removes one unit of multiplicity from `{u, v}`.
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<MultiGraph> {
        self.check_pair(u, v)?;
        let m = self.multiplicity(u, v);
        if m == 0 {
            return Err(Error::EdgeAbsent { u, v });
        }
        let mut g = self.clone();
        g.set_multiplicity(u, v, m - 1);
        Ok(g)
    }

    /// Removes every unit of `{u, v}`.
    pub fn delete_all_edges(&self, u: usize, v: usize) -> Result<MultiGraph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent { u, v });
        }
        let mut g = self.clone();
        g.set_multiplicity(u, v, 0);
        Ok(g)
    }

    /// Merges `u` and `v`. The merged vertex takes the smaller label and the
    /// remaining labels are compacted in order. Loops vanish.
    pub fn contract_edge(&self, u: usize, v: usize, mode: Mode) -> Result<MultiGraph> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(Error::EdgeAbsent { u, v });
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let mut g = self.clone();
        g.set_multiplicity(keep, gone, 0);
        for w in 0..self.n {
            if w == keep || w == gone {
                continue;
            }
            let extra = self.multiplicity(gone, w);
            if extra == 0 {
                continue;
            }
            let cur = g.multiplicity(keep, w);
            let merged = match mode {
                Mode::Simple => 1,
                Mode::Multigraph => cur + extra,
            };
            g.set_multiplicity(keep, w, merged);
        }
        g.delete_vertex(gone)
    }

    /// Lifts `{x, y}` and `{y, z}` into `{x, z}`.
    pub fn lift_pair(&self, x: usize, y: usize, z: usize) -> Result<MultiGraph> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        self.check_vertex(z)?;
        if x == z {
            return Err(Error::InvalidLift {
                x,
                y,
                z,
                reason: "lifting would create a loop",
            });
        }
        if x == y || y == z {
            return Err(Error::InvalidLift {
                x,
                y,
                z,
                reason: "edges must meet at a common middle vertex",
            });
        }
        if !self.has_edge(x, y) || !self.has_edge(y, z) {
            return Err(Error::InvalidLift {
                x,
                y,
                z,
                reason: "an edge is absent",
            });
        }
        let mut g = self.clone();
        g.set_multiplicity(x, y, self.multiplicity(x, y) - 1);
        g.set_multiplicity(y, z, self.multiplicity(y, z) - 1);
        g.set_multiplicity(x, z, self.multiplicity(x, z) + 1);
        Ok(g)
    }

    /// Replaces one unit of `{u, v}` by a path through a new last vertex.
    pub fn subdivide_edge(&self, u: usize, v: usize) -> Result<MultiGraph> {
        let mut g = self.delete_edge(u, v)?;
        let w = g.add_vertex();
        g.set_multiplicity(u, w, 1);
        g.set_multiplicity(w, v, 1);
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let mut g = MultiGraph::new(self.n + other.n);
        for (u, v, m) in self.edges() {
            g.set_multiplicity(u, v, m);
        }
        for (u, v, m) in other.edges() {
            g.set_multiplicity(u + self.n, v + self.n, m);
        }
        g
    }

    /// `k` disjoint copies of `self`.
    pub fn copies(&self, k: usize) -> MultiGraph {
        (0..k).fold(MultiGraph::new(0), |acc, _| acc.disjoint_union(self))
    }

    /// Connected components as ascending vertex lists, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = vec![s];
            while let Some(x) = stack.pop() {
                for (y, _) in self.neighbors(x) {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Acyclic as a multigraph: a parallel pair counts as a cycle.
    pub fn is_forest(&self) -> bool {
        self.is_simple() && self.edge_count() + self.components().len() == self.n
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn max_edge_degree(&self) -> usize {
        (0..self.n).map(|v| self.edge_degree(v)).max().unwrap_or(0)
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) == 0).count()
    }

    /// All graphs one single step below `self`: every vertex deletion, every
    /// edge-unit deletion, and then either every contraction (`minor`) or
    /// every lifting (`!minor`). Duplicates are not removed.
    pub fn single_step_reductions(&self, minor: bool, mode: Mode) -> Vec<MultiGraph> {
        let mut out = Vec::new();
        for v in 0..self.n {
            out.push(self.delete_vertex(v).expect("vertex in range"));
        }
        let edges: Vec<_> = self.edges().collect();
        for &(u, v, _) in &edges {
            out.push(self.delete_edge(u, v).expect("edge present"));
        }
        if minor {
            for &(u, v, _) in &edges {
                out.push(self.contract_edge(u, v, mode).expect("edge present"));
            }
        } else {
            for y in 0..self.n {
                let nb: Vec<usize> = self.neighbors(y).map(|(x, _)| x).collect();
                for (i, &x) in nb.iter().enumerate() {
                    for &z in &nb[i + 1..] {
                        out.push(self.lift_pair(x, y, z).expect("valid lift"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiGraph(n={}; ", self.n)?;
        let mut first = true;
        for (u, v, m) in self.edges() {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{u}-{v}")?;
            } else {
                write!(f, "{u}-{v}x{m}")?;
            }
        }
        f.write_str(")")
    }
}
