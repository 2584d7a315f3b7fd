mod common;

use proptest::prelude::*;
use univobs::graph::{
    are_isomorphic, canonical_form, enumerate_graphs, parse_text, to_text, EnumOrder,
};
use univobs::{Mode, MultiGraph};

proptest! {
    #[test]
    fn permuted_copy_is_isomorphic(g in common::graphs(7, 2), seed in any::<u64>()) {
        let n = g.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher-Yates driven by the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permuted(&perm);
        prop_assert!(are_isomorphic(&g, &h));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn reductions_keep_graphs_loopless_and_contiguous(g in common::graphs(6, 2)) {
        for minor in [true, false] {
            for r in g.single_step_reductions(minor, Mode::Multigraph) {
                prop_assert!(r.vertex_count() <= g.vertex_count());
                for (u, v, m) in r.edges() {
                    prop_assert!(u < v && v < r.vertex_count() && m > 0);
                }
            }
        }
    }

    #[test]
    fn simple_contraction_stays_simple(g in common::graphs(7, 1)) {
        let edges: Vec<_> = g.edges().collect();
        for (u, v, _) in edges {
            prop_assert!(g.contract_edge(u, v, Mode::Simple).unwrap().is_simple());
        }
    }

    #[test]
    fn lifting_moves_degree_from_the_middle(g in common::graphs(6, 3)) {
        for y in 0..g.vertex_count() {
            let nb: Vec<usize> = g.neighbors(y).map(|(x, _)| x).collect();
            for (i, &x) in nb.iter().enumerate() {
                for &z in &nb[i + 1..] {
                    let l = g.lift_pair(x, y, z).unwrap();
                    prop_assert_eq!(l.edge_degree(x), g.edge_degree(x));
                    prop_assert_eq!(l.edge_degree(z), g.edge_degree(z));
                    prop_assert_eq!(l.edge_degree(y) + 2, g.edge_degree(y));
                }
            }
        }
    }

    #[test]
    fn text_round_trip(g in common::graphs(9, 3)) {
        prop_assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
    }
}

#[test]
fn enumeration_is_ordered_and_duplicate_free_up_to_six() {
    let all = enumerate_graphs(6, 1, None).unwrap();
    assert_eq!(all.len(), 1 + 1 + 2 + 4 + 11 + 34 + 156);
    for w in all.windows(2) {
        assert!(EnumOrder::of(&w[0]) < EnumOrder::of(&w[1]));
    }
    let mut forms: Vec<_> = all.iter().map(canonical_form).collect();
    forms.sort();
    forms.dedup();
    assert_eq!(forms.len(), all.len());
}

#[test]
fn multigraph_enumeration_counts() {
    // pairs of vertices with multiplicity 0..=2: 1, 1, 3, 10 classes on 0..=3 vertices
    let all = enumerate_graphs(3, 2, None).unwrap();
    let by_n: Vec<usize> = (0..=3)
        .map(|n| all.iter().filter(|g| g.vertex_count() == n).count())
        .collect();
    assert_eq!(by_n, [1, 1, 3, 10]);
    assert!(all.iter().any(|g: &MultiGraph| !g.is_simple()));
}
