//! Exhaustive generation of non-isomorphic multigraphs by vertex augmentation.
//!
//! Every graph on `n` vertices arises from its subgraph induced on the first
//! `n - 1` vertices by adding one vertex with some multiplicity vector, so
//! extending one representative per class at level `n - 1` in every possible
//! way and deduplicating by canonical form yields every class at level `n`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{canonical_form, canonical_graph, CanonicalForm, EnumOrder, MultiGraph};
use crate::error::{Error, Result};

/// Size limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EnumBudget {
    /// Largest vertex count when `mult_max <= 1`.
    pub max_simple_vertices: usize,
    /// Largest vertex count when `mult_max > 1`.
    pub max_multi_vertices: usize,
    pub max_multiplicity: u32,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_simple_vertices: 8,
            max_multi_vertices: 6,
            max_multiplicity: 3,
        }
    }
}

impl EnumBudget {
    pub fn unlimited() -> Self {
        EnumBudget {
            max_simple_vertices: usize::MAX,
            max_multi_vertices: usize::MAX,
            max_multiplicity: u32::MAX,
        }
    }

    pub fn check(&self, n_max: usize, mult_max: u32) -> Result<()> {
        if mult_max > self.max_multiplicity {
            return Err(Error::budget(
                "enumeration multiplicity",
                mult_max as usize,
                self.max_multiplicity as usize,
            ));
        }
        let limit = if mult_max <= 1 {
            self.max_simple_vertices
        } else {
            self.max_multi_vertices
        };
        if n_max > limit {
            return Err(Error::budget("enumeration vertex count", n_max, limit));
        }
        Ok(())
    }
}

/// One representative per isomorphism class with at most `n_max` vertices and
/// multiplicities at most `mult_max`, in [`EnumOrder`]. The predicate filters
/// after generation.
pub fn enumerate_graphs(
    n_max: usize,
    mult_max: u32,
    predicate: Option<&(dyn Fn(&MultiGraph) -> bool + Sync)>,
) -> Result<Vec<MultiGraph>> {
    enumerate_graphs_with(&EnumBudget::default(), n_max, mult_max, predicate)
}

pub fn enumerate_graphs_with(
    budget: &EnumBudget,
    n_max: usize,
    mult_max: u32,
    predicate: Option<&(dyn Fn(&MultiGraph) -> bool + Sync)>,
) -> Result<Vec<MultiGraph>> {
    budget.check(n_max, mult_max)?;
    let mut out = Vec::new();
    let mut level = vec![MultiGraph::new(0)];
    out.extend(level.iter().cloned());
    for _ in 1..=n_max {
        level = augment_level(&level, mult_max);
        out.extend(level.iter().cloned());
    }
    if let Some(p) = predicate {
        out.retain(|g| p(g));
    }
    sort_enum_order(&mut out);
    Ok(out)
}

/// Like [`enumerate_graphs`] but only ever extends members. Exact when the
/// predicate is closed under vertex deletion, which every minor- or
/// immersion-closed class is.
pub fn enumerate_hereditary(
    budget: &EnumBudget,
    n_max: usize,
    mult_max: u32,
    predicate: &(dyn Fn(&MultiGraph) -> bool + Sync),
) -> Result<Vec<MultiGraph>> {
    budget.check(n_max, mult_max)?;
    let mut out = Vec::new();
    let mut level: Vec<MultiGraph> = vec![MultiGraph::new(0)];
    level.retain(|g| predicate(g));
    out.extend(level.iter().cloned());
    for _ in 1..=n_max {
        if level.is_empty() {
            break;
        }
        level = augment_level(&level, mult_max);
        level = level.into_par_iter().filter(|g| predicate(g)).collect();
        out.extend(level.iter().cloned());
    }
    sort_enum_order(&mut out);
    Ok(out)
}

/// All classes obtained by adding one vertex to a member of `level`,
/// canonically labeled and sorted by canonical form.
pub fn augment_level(level: &[MultiGraph], mult_max: u32) -> Vec<MultiGraph> {
    let found: Vec<(CanonicalForm, MultiGraph)> = level
        .par_iter()
        .flat_map_iter(|g| augmentations(g, mult_max))
        .map(|g| {
            let c = canonical_graph(&g);
            (canonical_form(&c), c)
        })
        .collect();
    let mut uniq: HashMap<CanonicalForm, MultiGraph> = HashMap::with_capacity(found.len());
    for (k, g) in found {
        uniq.entry(k).or_insert(g);
    }
    let mut v: Vec<(CanonicalForm, MultiGraph)> = uniq.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp(&b.0));
    v.into_iter().map(|(_, g)| g).collect()
}

/// Every way of attaching a new last vertex with multiplicities in
/// `0..=mult_max` towards each existing vertex.
pub fn augmentations(g: &MultiGraph, mult_max: u32) -> impl Iterator<Item = MultiGraph> + '_ {
    let n = g.vertex_count();
    let base = mult_max as u64 + 1;
    let total = base
        .checked_pow(n as u32)
        .expect("augmentation count overflow");
    (0..total).map(move |mut code| {
        let mut h = g.clone();
        let w = h.add_vertex();
        for u in 0..n {
            let m = (code % base) as u32;
            code /= base;
            if m > 0 {
                h.add_edge(u, w, m).expect("fresh pair");
            }
        }
        h
    })
}

pub fn sort_enum_order(graphs: &mut Vec<MultiGraph>) {
    let mut keyed: Vec<(EnumOrder, MultiGraph)> = graphs
        .par_drain(..)
        .map(|g| (EnumOrder::of(&g), g))
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    graphs.extend(keyed.into_iter().map(|(_, g)| g));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, path};
    use crate::graph::are_isomorphic;
    use std::collections::HashSet;

    /// Oracle: every labeled graph, deduplicated by brute-force permutation.
    fn naive_classes(n_max: usize, mult_max: u32) -> Vec<MultiGraph> {
        let mut reps: Vec<MultiGraph> = Vec::new();
        for n in 0..=n_max {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
                .collect();
            let base = mult_max as u64 + 1;
            for mut code in 0..base.pow(pairs.len() as u32) {
                let mut g = MultiGraph::new(n);
                for &(u, v) in &pairs {
                    let m = (code % base) as u32;
                    code /= base;
                    if m > 0 {
                        g.add_edge(u, v, m).unwrap();
                    }
                }
                if !reps.iter().any(|r| iso_by_permutation(r, &g)) {
                    reps.push(g);
                }
            }
        }
        reps
    }

    fn iso_by_permutation(a: &MultiGraph, b: &MultiGraph) -> bool {
        if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
            return false;
        }
        let n = a.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if a.permuted(&perm) == *b {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
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

    #[test]
    fn simple_graphs_up_to_three_vertices() {
        let got = enumerate_graphs(3, 1, None).unwrap();
        assert_eq!(got.len(), 8);
        let oracle = naive_classes(3, 1);
        assert_eq!(oracle.len(), 8);
        let sizes: Vec<(usize, usize)> = got
            .iter()
            .map(|g| (g.vertex_count(), g.edge_count()))
            .collect();
        assert_eq!(
            sizes,
            vec![
                (0, 0),
                (1, 0),
                (2, 0),
                (2, 1),
                (3, 0),
                (3, 1),
                (3, 2),
                (3, 3)
            ]
        );
        assert!(are_isomorphic(&got[6], &path(3)));
        assert!(are_isomorphic(&got[7], &complete(3)));
    }

    #[test]
    fn multigraphs_up_to_two_vertices() {
        let got = enumerate_graphs(2, 2, None).unwrap();
        let sizes: Vec<(usize, usize)> = got
            .iter()
            .map(|g| (g.vertex_count(), g.edge_count()))
            .collect();
        assert_eq!(sizes, vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)]);
    }

    #[test]
    fn counts_match_naive_oracle() {
        for (n, m) in [(4, 1), (5, 1), (3, 2), (4, 2), (3, 3)] {
            let got = enumerate_graphs_with(&EnumBudget::unlimited(), n, m, None).unwrap();
            let oracle = naive_classes(n, m);
            assert_eq!(got.len(), oracle.len(), "n={n} m={m}");
            for o in &oracle {
                assert!(got.iter().any(|g| are_isomorphic(g, o)));
            }
        }
    }

    #[test]
    fn forests_on_four_vertices() {
        let is_forest = |g: &MultiGraph| g.is_forest();
        let got = enumerate_graphs(4, 1, Some(&is_forest)).unwrap();
        let oracle: Vec<_> = naive_classes(4, 1)
            .into_iter()
            .filter(|g| g.is_forest())
            .collect();
        // K0, K1, 2K1, K2, 3K1, K2+K1, P3, 4K1, K2+2K1, 2K2, P3+K1, P4, K13
        assert_eq!(got.len(), 13);
        assert_eq!(got.len(), oracle.len());
        let pruned = enumerate_hereditary(&EnumBudget::default(), 4, 1, &is_forest).unwrap();
        assert_eq!(pruned, got);
    }

    #[test]
    fn known_simple_counts() {
        let got = enumerate_graphs(7, 1, None).unwrap();
        let mut per_n = [0usize; 8];
        for g in &got {
            per_n[g.vertex_count()] += 1;
        }
        assert_eq!(per_n, [1, 1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn output_is_strictly_increasing_and_duplicate_free() {
        let got = enumerate_graphs(6, 1, None).unwrap();
        let keys: Vec<EnumOrder> = got.iter().map(EnumOrder::of).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        let forms: HashSet<_> = keys.iter().map(|k| k.form.clone()).collect();
        assert_eq!(forms.len(), got.len());
        let multi = enumerate_graphs(4, 2, None).unwrap();
        let keys: Vec<EnumOrder> = multi.iter().map(EnumOrder::of).collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_enforced() {
        assert!(matches!(
            enumerate_graphs(9, 1, None),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(enumerate_graphs(7, 3, None).is_err());
        assert!(enumerate_graphs(3, 4, None).is_err());
    }
}
