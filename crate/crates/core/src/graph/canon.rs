//! Canonical labeling by colour refinement plus individualization search.
//!
//! The search tree is the usual one: refine to an equitable colouring, pick
//! the first non-singleton cell, individualize each of its vertices in turn.
//! Leaves are discrete colourings; the canonical labeling is the leaf whose
//! relabeled adjacency code is lexicographically largest. Automorphisms found
//! between equal leaves prune sibling branches lying in a common orbit.

use std::cmp::Ordering;
use std::fmt;

use super::MultiGraph;

/// Bytes identifying an isomorphism class: two big-endian bytes of vertex
/// count followed by the upper-triangle multiplicities (two bytes each,
/// big-endian, row-major) of the canonically relabeled graph.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

/// Total order on isomorphism classes: vertex count, then total edge
/// multiplicity, then canonical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnumOrder {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub form: CanonicalForm,
}

impl EnumOrder {
    pub fn of(g: &MultiGraph) -> Self {
        EnumOrder {
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            form: canonical_form(g),
        }
    }
}

pub fn canonical_form(g: &MultiGraph) -> CanonicalForm {
    let perm = canonical_labeling(g);
    CanonicalForm(encode(g, &perm))
}

/// The canonically relabeled copy of `g`.
pub fn canonical_graph(g: &MultiGraph) -> MultiGraph {
    g.permuted(&canonical_labeling(g))
}

pub fn are_isomorphic(a: &MultiGraph, b: &MultiGraph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = (0..a.vertex_count()).map(|v| a.edge_degree(v)).collect();
    let mut db: Vec<usize> = (0..b.vertex_count()).map(|v| b.edge_degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && canonical_form(a) == canonical_form(b)
}

/// `perm[v]` is the canonical position of vertex `v`.
pub fn canonical_labeling(g: &MultiGraph) -> Vec<usize> {
    let n = g.vertex_count();
    if n == 0 {
        return Vec::new();
    }
    let mut colors = vec![0u32; n];
    refine(g, &mut colors);
    let mut search = Search {
        g,
        best: None,
        autos: Vec::new(),
    };
    search.visit(colors, Vec::new());
    search.best.expect("search reaches a leaf").1
}

fn encode(g: &MultiGraph, perm: &[usize]) -> Vec<u8> {
    let n = g.vertex_count();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut out = Vec::with_capacity(2 + n * n);
    out.extend_from_slice(&(n as u16).to_be_bytes());
    for i in 0..n {
        for j in (i + 1)..n {
            let m = g.multiplicity(inv[i], inv[j]).min(u16::MAX as u32) as u16;
            out.extend_from_slice(&m.to_be_bytes());
        }
    }
    out
}

fn leaf_code(g: &MultiGraph, perm: &[usize]) -> Vec<u32> {
    let n = g.vertex_count();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let mut out = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(g.multiplicity(inv[i], inv[j]));
        }
    }
    out
}

/// Refines `colors` to the coarsest equitable colouring finer than it.
/// Colours are renumbered to `0..k` in an order that depends only on
/// isomorphism-invariant signatures.
fn refine(g: &MultiGraph, colors: &mut [u32]) {
    let n = g.vertex_count();
    let mut classes = count_classes(colors);
    loop {
        let mut sigs: Vec<(u32, Vec<(u32, u32)>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u32)> = g.neighbors(v).map(|(u, m)| (colors[u], m)).collect();
                nb.sort_unstable();
                (colors[v], nb, v)
            })
            .collect();
        sigs.sort_unstable();
        let mut rank = 0u32;
        for i in 0..n {
            if i > 0 && (sigs[i].0 != sigs[i - 1].0 || sigs[i].1 != sigs[i - 1].1) {
                rank += 1;
            }
            colors[sigs[i].2] = rank;
        }
        let now = rank as usize + 1;
        if now == classes {
            break;
        }
        classes = now;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c: Vec<u32> = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a MultiGraph,
    best: Option<(Vec<u32>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn visit(&mut self, colors: Vec<u32>, fixed: Vec<usize>) {
        let n = self.g.vertex_count();
        let mut counts = vec![0usize; n];
        for &c in &colors {
            counts[c as usize] += 1;
        }
        let target = counts.iter().position(|&c| c > 1);
        let Some(target) = target else {
            self.leaf(colors.iter().map(|&c| c as usize).collect());
            return;
        };
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] as usize == target).collect();
        let mut explored: Vec<usize> = Vec::new();
        for &w in &cell {
            if !explored.is_empty() && self.in_explored_orbit(w, &explored, &fixed) {
                continue;
            }
            let mut child: Vec<u32> = colors.iter().map(|&c| 2 * c + 1).collect();
            child[w] = 2 * colors[w];
            refine(self.g, &mut child);
            let mut f = fixed.clone();
            f.push(w);
            self.visit(child, f);
            explored.push(w);
        }
    }

    fn in_explored_orbit(&self, w: usize, explored: &[usize], fixed: &[usize]) -> bool {
        let n = self.g.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        let mut any = false;
        for a in &self.autos {
            if fixed.iter().any(|&v| a[v] != v) {
                continue;
            }
            any = true;
            for v in 0..n {
                let (x, y) = (find(&mut parent, v), find(&mut parent, a[v]));
                if x != y {
                    parent[x] = y;
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        explored.iter().any(|&e| find(&mut parent, e) == rw)
    }

    fn leaf(&mut self, perm: Vec<usize>) {
        let code = leaf_code(self.g, &perm);
        match &self.best {
            None => self.best = Some((code, perm)),
            Some((best_code, best_perm)) => match code.cmp(best_code) {
                Ordering::Greater => self.best = Some((code, perm)),
                Ordering::Equal => {
                    let n = perm.len();
                    let mut inv_best = vec![0usize; n];
                    for (v, &p) in best_perm.iter().enumerate() {
                        inv_best[p] = v;
                    }
                    let auto: Vec<usize> = (0..n).map(|v| inv_best[perm[v]]).collect();
                    if auto.iter().enumerate().any(|(v, &a)| a != v) {
                        self.autos.push(auto);
                    }
                }
                Ordering::Less => {}
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite, cycle, path, star, theta};
    use proptest::prelude::*;

    #[test]
    fn path_relabelings_are_isomorphic() {
        let a = MultiGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = MultiGraph::from_edges(3, &[(2, 0), (0, 1)]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn non_isomorphic_examples() {
        assert!(!are_isomorphic(&theta(2).unwrap(), &path(3)));
        assert!(!are_isomorphic(&star(3), &path(4)));
        assert!(!are_isomorphic(&cycle(6), &complete(3).copies(2)));
        assert!(!are_isomorphic(&complete_bipartite(3, 3), &cycle(6)));
    }

    #[test]
    fn multiplicity_matters() {
        let a = MultiGraph::from_multi_edges(3, &[(0, 1, 2), (1, 2, 1)]).unwrap();
        let b = MultiGraph::from_multi_edges(3, &[(0, 1, 1), (1, 2, 2)]).unwrap();
        let c = MultiGraph::from_multi_edges(3, &[(0, 1, 1), (0, 2, 2)]).unwrap();
        assert!(are_isomorphic(&a, &b));
        assert!(are_isomorphic(&a, &c));
        let d = MultiGraph::from_multi_edges(3, &[(0, 1, 3)]).unwrap();
        assert!(!are_isomorphic(&a, &d));
    }

    #[test]
    fn symmetric_graphs_canonicalize() {
        // large automorphism groups exercise orbit pruning
        for g in [
            complete(8),
            complete_bipartite(4, 4),
            cycle(9),
            MultiGraph::new(7),
        ] {
            let c = canonical_graph(&g);
            assert_eq!(canonical_form(&c), canonical_form(&g));
        }
    }

    fn arb_multigraph(max_n: usize, max_m: u32) -> impl Strategy<Value = MultiGraph> {
        (0..=max_n).prop_flat_map(move |n| {
            let pairs = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(0..=max_m, pairs).prop_map(move |ms| {
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
        #[test]
        fn permuted_copies_share_canonical_form(
            g in arb_multigraph(8, 2),
            seed in any::<u64>(),
        ) {
            let n = g.vertex_count();
            let mut perm: Vec<usize> = (0..n).collect();
            // deterministic shuffle from the seed
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (s >> 33) as usize % (i + 1);
                perm.swap(i, j);
            }
            let h = g.permuted(&perm);
            prop_assert!(are_isomorphic(&g, &h));
            prop_assert_eq!(canonical_form(&g), canonical_form(&h));
            prop_assert_eq!(canonical_graph(&g), canonical_graph(&h));
        }
    }
}
