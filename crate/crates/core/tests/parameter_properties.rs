mod common;

use proptest::prelude::*;
use univobs::families::{complete, cycle, grid, path, star, ternary_tree, theta};
use univobs::parameters::{
    layout_width, solve, treewidth_by_fill, value, z_apex, ParameterKind, Witness,
};
use univobs::relations::GraphSet;
use univobs::{Mode, MultiGraph, Relation};

fn layout_of(kind: &ParameterKind, g: &MultiGraph) -> (usize, Vec<usize>) {
    let s = solve(kind, g).unwrap();
    match s.witness {
        Witness::Layout(l) => (s.value, l),
        other => panic!("{kind} gave {other:?}"),
    }
}

fn triangle_free_set() -> GraphSet {
    [complete(3)].into_iter().collect()
}

#[test]
fn known_values() {
    let tw = ParameterKind::Treewidth;
    let pw = ParameterKind::Pathwidth;
    let cw = ParameterKind::Cutwidth;
    for n in 1..=7 {
        assert_eq!(value(&tw, &complete(n)).unwrap(), n - 1);
        assert_eq!(value(&cw, &complete(n)).unwrap(), n * n / 4);
    }
    for k in 2..=3 {
        assert_eq!(value(&tw, &grid(k).unwrap()).unwrap(), k);
        assert_eq!(value(&pw, &grid(k).unwrap()).unwrap(), k);
    }
    assert_eq!(value(&pw, &path(9)).unwrap(), 1);
    assert_eq!(value(&pw, &cycle(6)).unwrap(), 2);
    assert_eq!(value(&pw, &ternary_tree(2).unwrap()).unwrap(), 2);
    assert_eq!(value(&cw, &star(5)).unwrap(), 3);
    assert_eq!(value(&cw, &theta(4).unwrap()).unwrap(), 4);
    assert_eq!(
        value(&ParameterKind::EdgeDegree, &theta(4).unwrap()).unwrap(),
        4
    );
    // two triangles sharing a vertex: one deletion kills both
    let bowtie =
        MultiGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
    assert_eq!(z_apex(&bowtie, &triangle_free_set()).unwrap().value, 1);
    assert_eq!(
        z_apex(&complete(3).copies(2), &triangle_free_set())
            .unwrap()
            .value,
        2
    );
}

#[test]
fn bi_pathwidth_takes_the_worst_block() {
    // two 3x3 grids glued at a cut vertex: each block has pathwidth 3
    let g3 = grid(3).unwrap();
    let mut g = g3.disjoint_union(&g3);
    g.add_edge(8, 9, 1).unwrap();
    assert_eq!(value(&ParameterKind::BiPathwidth, &g).unwrap(), 3);
    assert_eq!(
        value(&ParameterKind::BiPathwidth, &ternary_tree(3).unwrap()).unwrap(),
        1
    );
}

#[test]
fn solvers_reject_oversized_graphs() {
    assert!(solve(&ParameterKind::Treewidth, &path(40)).is_err());
    assert!(solve(&ParameterKind::EdgeDegree, &path(40)).is_ok());
    assert!(layout_width(&ParameterKind::EdgeDegree, &path(3), &[0, 1, 2]).is_err());
    assert!(layout_width(&ParameterKind::Pathwidth, &path(3), &[0, 0, 2]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn witnesses_realise_their_value(g in common::graphs(8, 2)) {
        for kind in [ParameterKind::Treewidth, ParameterKind::Pathwidth, ParameterKind::Cutwidth] {
            let target = if kind == ParameterKind::Cutwidth { g.clone() } else { g.simplified() };
            let (v, layout) = layout_of(&kind, &target);
            prop_assert_eq!(layout_width(&kind, &target, &layout).unwrap(), v);
        }
    }

    #[test]
    fn treewidth_matches_fill_simulation(g in common::graphs(7, 1)) {
        prop_assert_eq!(value(&ParameterKind::Treewidth, &g).unwrap(), treewidth_by_fill(&g));
    }

    #[test]
    fn widths_are_ordered(g in common::graphs(8, 2)) {
        let tw = value(&ParameterKind::Treewidth, &g).unwrap();
        let bi = value(&ParameterKind::BiPathwidth, &g).unwrap();
        let pw = value(&ParameterKind::Pathwidth, &g).unwrap();
        let cw = value(&ParameterKind::Cutwidth, &g).unwrap();
        let ed = value(&ParameterKind::EdgeDegree, &g).unwrap();
        prop_assert!(tw <= bi && bi <= pw && pw <= cw, "tw {} bi {} pw {} cw {}", tw, bi, pw, cw);
        prop_assert!(2 * cw >= ed);
    }

    #[test]
    fn parameters_drop_along_their_relation(g in common::graphs(7, 2), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for kind in ParameterKind::plain() {
            let minor = kind.relation() == Relation::Minor;
            let (host, mode) = if minor { (g.simplified(), Mode::Simple) } else { (g.clone(), Mode::Multigraph) };
            let below = common::reduce(&mut rng, &host, minor, mode, 2);
            prop_assert!(value(&kind, &below).unwrap() <= value(&kind, &host).unwrap(), "{}", kind);
        }
    }

    #[test]
    fn z_apex_witness_clears_the_list(g in common::graphs(7, 1), seed in any::<u64>()) {
        use rand::SeedableRng;
        let z = triangle_free_set();
        let s = z_apex(&g, &z).unwrap();
        let Witness::VertexSet(del) = &s.witness else { panic!("vertex set expected") };
        prop_assert_eq!(del.len(), s.value);
        let keep: Vec<usize> = (0..g.vertex_count()).filter(|v| !del.contains(v)).collect();
        prop_assert!(g.induced(&keep).is_forest());
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let below = common::reduce(&mut rng, &g, true, Mode::Simple, 2);
        prop_assert!(z_apex(&below, &z).unwrap().value <= s.value);
    }
}
