//! Named graphs and parametric graph families.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;
use crate::relations::Relation;

fn index_error(what: &str, index: usize, min: usize) -> Error {
    Error::InvalidIndex {
        what: what.to_string(),
        index,
        min,
    }
}

/// `K_n`.
pub fn complete(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v, 1).expect("distinct vertices");
        }
    }
    g
}

/// `K_{m,n}`; the first side is `0..m`.
pub fn complete_bipartite(m: usize, n: usize) -> MultiGraph {
    let mut g = MultiGraph::new(m + n);
    for u in 0..m {
        for v in m..m + n {
            g.add_edge(u, v, 1).expect("distinct vertices");
        }
    }
    g
}

/// The path on `n` vertices.
pub fn path(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new(n);
    for v in 1..n {
        g.add_edge(v - 1, v, 1).expect("distinct vertices");
    }
    g
}

/// The cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> MultiGraph {
    assert!(n >= 3, "a simple cycle needs at least three vertices");
    let mut g = path(n);
    g.add_edge(n - 1, 0, 1).expect("distinct vertices");
    g
}

/// `K_{1,k}` with centre `0`.
pub fn star(k: usize) -> MultiGraph {
    let mut g = MultiGraph::new(k + 1);
    for v in 1..=k {
        g.add_edge(0, v, 1).expect("distinct vertices");
    }
    g
}

/// Two vertices joined by `k` parallel edges.
pub fn theta(k: usize) -> Result<MultiGraph> {
    if k == 0 {
        return Err(index_error("theta", k, 1));
    }
    MultiGraph::from_multi_edges(2, &[(0, 1, k as u32)])
}

/// The `k x k` grid; vertex `(r, c)` is `r * k + c`.
pub fn grid(k: usize) -> Result<MultiGraph> {
    if k == 0 {
        return Err(index_error("grid", k, 1));
    }
    let mut g = MultiGraph::new(k * k);
    for r in 0..k {
        for c in 0..k {
            let v = r * k + c;
            if c + 1 < k {
                g.add_edge(v, v + 1, 1)?;
            }
            if r + 1 < k {
                g.add_edge(v, v + k, 1)?;
            }
        }
    }
    Ok(g)
}

/// Rooted complete ternary tree with children kept left to right.
///
/// The root has three children and every other internal vertex two, so all
/// internal vertices have degree three. Depth counts edges from root to
/// leaves; depth one is `K_{1,3}`. Labels are assigned breadth first, which
/// makes the leaves consecutive and left to right.
#[derive(Debug, Clone)]
struct TernaryTree {
    children: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    leaves: Vec<usize>,
}

impl TernaryTree {
    fn build(depth: usize) -> TernaryTree {
        let mut children: Vec<Vec<usize>> = vec![Vec::new()];
        let mut parent: Vec<Option<usize>> = vec![None];
        let mut frontier = vec![0usize];
        for level in 0..depth {
            let arity = if level == 0 { 3 } else { 2 };
            let mut next = Vec::new();
            for &v in &frontier {
                for _ in 0..arity {
                    let c = children.len();
                    children.push(Vec::new());
                    parent.push(Some(v));
                    children[v].push(c);
                    next.push(c);
                }
            }
            frontier = next;
        }
        TernaryTree {
            children,
            parent,
            leaves: frontier,
        }
    }

    fn graph(&self) -> MultiGraph {
        let mut g = MultiGraph::new(self.children.len());
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = *p {
                g.add_edge(p, v, 1).expect("tree edge");
            }
        }
        g
    }
}

/// Complete ternary tree `T_k`, `k >= 1`.
pub fn ternary_tree(k: usize) -> Result<MultiGraph> {
    if k == 0 {
        return Err(index_error("ternary_tree", k, 1));
    }
    Ok(TernaryTree::build(k).graph())
}

/// `T_k` plus an apex (the last vertex) adjacent to every leaf, `k >= 2`.
pub fn ternary_tree_apex(k: usize) -> Result<MultiGraph> {
    if k < 2 {
        return Err(index_error("ternary_tree_apex", k, 2));
    }
    let t = TernaryTree::build(k);
    let mut g = t.graph();
    let apex = g.add_vertex();
    for &l in &t.leaves {
        g.add_edge(l, apex, 1)?;
    }
    Ok(g)
}

/// The planar dual of `T^a_k` with one edge of every parallel pair
/// subdivided once, `k >= 2`.
///
/// The embedding is the drawing with the root on top, children left to
/// right and the apex below the leaves in the outer face. Dual vertices are
/// faces, numbered by first visit when darts are scanned in lexicographic
/// order. Of each parallel pair, the unit on the lexicographically first
/// dual pair is the one subdivided; new vertices are appended in that order.
pub fn ternary_tree_apex_dual(k: usize) -> Result<MultiGraph> {
    if k < 2 {
        return Err(index_error("ternary_tree_apex_dual", k, 2));
    }
    let t = TernaryTree::build(k);
    let n_tree = t.children.len();
    let apex = n_tree;
    let n = n_tree + 1;
    // counter-clockwise rotation at each vertex
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n_tree {
        if let Some(p) = t.parent[v] {
            rot[v].push(p);
        }
        rot[v].extend(t.children[v].iter().copied());
    }
    for &l in &t.leaves {
        rot[l].push(apex);
    }
    rot[apex] = t.leaves.iter().rev().copied().collect();

    let primal_edges: usize = rot.iter().map(Vec::len).sum::<usize>() / 2;
    let mut face_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut faces = 0usize;
    let mut darts: Vec<(usize, usize)> = Vec::new();
    for (u, nb) in rot.iter().enumerate() {
        for &v in nb {
            darts.push((u, v));
        }
    }
    darts.sort_unstable();
    for &start in &darts {
        if face_of.contains_key(&start) {
            continue;
        }
        let mut d = start;
        loop {
            face_of.insert(d, faces);
            let (u, v) = d;
            let at_v = &rot[v];
            let i = at_v.iter().position(|&x| x == u).expect("dart reversal");
            let w = at_v[(i + 1) % at_v.len()];
            d = (v, w);
            if d == start {
                break;
            }
        }
        faces += 1;
    }
    // Euler's formula certifies the rotation system is planar.
    if n + faces != primal_edges + 2 {
        return Err(Error::Inconsistent(format!(
            "embedding of T^a_{k} is not planar: V={n} E={primal_edges} F={faces}"
        )));
    }
    let mut dual = MultiGraph::new(faces);
    for (u, nb) in rot.iter().enumerate() {
        for &v in nb {
            if u < v {
                let (a, b) = (face_of[&(u, v)], face_of[&(v, u)]);
                if a == b {
                    return Err(Error::Inconsistent(format!(
                        "bridge {{{u},{v}}} in T^a_{k}"
                    )));
                }
                dual.add_edge(a, b, 1)?;
            }
        }
    }
    let doubled: Vec<(usize, usize, u32)> = dual.edges().filter(|&(_, _, m)| m > 1).collect();
    let mut out = dual;
    for (a, b, m) in doubled {
        if m != 2 {
            return Err(Error::Inconsistent(format!(
                "dual pair {{{a},{b}}} has multiplicity {m}"
            )));
        }
        out = out.subdivide_edge(a, b)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "graph", rename_all = "snake_case")]
pub enum Generator {
    Grid,
    TernaryTree,
    TernaryTreeApex,
    TernaryTreeApexDual,
    Star,
    Theta,
    Path,
    Complete,
    /// `k` disjoint copies of a fixed graph.
    #[serde(serialize_with = "serialize_graph_text")]
    Copies(MultiGraph),
}

fn serialize_graph_text<S: serde::Serializer>(
    g: &MultiGraph,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::graph::to_text(g))
}

/// An indexed graph sequence `k -> H_k` for `k >= base_index`, declared
/// monotone under `relation`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ParametricFamily {
    pub name: String,
    pub base_index: usize,
    pub relation: Relation,
    pub generator: Generator,
}

impl fmt::Display for ParametricFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub const FAMILY_NAMES: [&str; 8] = [
    "grid",
    "ternary_tree",
    "ternary_tree_apex",
    "ternary_tree_apex_dual",
    "star",
    "theta",
    "path",
    "complete",
];

impl ParametricFamily {
    fn named(name: &str, base_index: usize, relation: Relation, generator: Generator) -> Self {
        ParametricFamily {
            name: name.to_string(),
            base_index,
            relation,
            generator,
        }
    }

    pub fn grid() -> Self {
        Self::named("grid", 1, Relation::Minor, Generator::Grid)
    }

    pub fn ternary_tree() -> Self {
        Self::named("ternary_tree", 1, Relation::Minor, Generator::TernaryTree)
    }

    pub fn ternary_tree_apex() -> Self {
        Self::named(
            "ternary_tree_apex",
            2,
            Relation::Minor,
            Generator::TernaryTreeApex,
        )
    }

    pub fn ternary_tree_apex_dual() -> Self {
        Self::named(
            "ternary_tree_apex_dual",
            2,
            Relation::Minor,
            Generator::TernaryTreeApexDual,
        )
    }

    /// Stars `K_{1,k}` from `k = 1`.
    pub fn star() -> Self {
        Self::named("star", 1, Relation::Immersion, Generator::Star)
    }

    pub fn theta() -> Self {
        Self::named("theta", 1, Relation::Immersion, Generator::Theta)
    }

    /// Paths `P_k` on `k` vertices from `k = 1`.
    pub fn path() -> Self {
        Self::named("path", 1, Relation::Minor, Generator::Path)
    }

    pub fn complete() -> Self {
        Self::named("complete", 1, Relation::Minor, Generator::Complete)
    }

    /// `<k . z>` for `k >= 1`.
    pub fn copies_of(z: &MultiGraph) -> Self {
        Self::named(
            &format!(
                "copies[{}]",
                crate::graph::to_graph6(&z.simplified()).unwrap_or_default()
            ),
            1,
            Relation::Minor,
            Generator::Copies(z.clone()),
        )
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            "grid" => Self::grid(),
            "ternary_tree" | "tree" => Self::ternary_tree(),
            "ternary_tree_apex" | "tree_apex" => Self::ternary_tree_apex(),
            "ternary_tree_apex_dual" | "tree_apex_dual" => Self::ternary_tree_apex_dual(),
            "star" => Self::star(),
            "theta" => Self::theta(),
            "path" => Self::path(),
            "complete" => Self::complete(),
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    /// The same sequence declared monotone under another relation.
    pub fn with_relation(mut self, relation: Relation) -> Self {
        self.relation = relation;
        self
    }

    pub fn get(&self, k: usize) -> Result<MultiGraph> {
        if k < self.base_index {
            return Err(index_error(&self.name, k, self.base_index));
        }
        match &self.generator {
            Generator::Grid => grid(k),
            Generator::TernaryTree => ternary_tree(k),
            Generator::TernaryTreeApex => ternary_tree_apex(k),
            Generator::TernaryTreeApexDual => ternary_tree_apex_dual(k),
            Generator::Star => Ok(star(k)),
            Generator::Theta => theta(k),
            Generator::Path => Ok(path(k)),
            Generator::Complete => Ok(complete(k)),
            Generator::Copies(z) => Ok(z.copies(k)),
        }
    }

    /// The first `len` members as `(index, graph)`.
    pub fn prefix(&self, len: usize) -> Result<Vec<(usize, MultiGraph)>> {
        (self.base_index..self.base_index + len)
            .map(|k| self.get(k).map(|g| (k, g)))
            .collect()
    }

    /// Checks that `size()` strictly increases over the first `len` members.
    pub fn check_growth(&self, len: usize) -> Result<()> {
        let p = self.prefix(len)?;
        for w in p.windows(2) {
            if w[1].1.size() <= w[0].1.size() {
                return Err(Error::Invalid(format!(
                    "family {} does not grow strictly between indices {} and {}",
                    self.name, w[0].0, w[1].0
                )));
            }
        }
        Ok(())
    }
}
