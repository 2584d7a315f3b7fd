#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use univobs::{Mode, MultiGraph};

/// Graphs on `1..=max_n` vertices with multiplicities in `0..=mult`.
pub fn graphs(max_n: usize, mult: u32) -> impl Strategy<Value = MultiGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(0..=mult, n * (n - 1) / 2).prop_map(move |ms| {
            let mut g = MultiGraph::new(n);
            let mut it = ms.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    let m = it.next().expect("one entry per pair");
                    if m > 0 {
                        g.add_edge(u, v, m).unwrap();
                    }
                }
            }
            g
        })
    })
}

/// A graph `steps` single reductions below `g`.
pub fn reduce(
    rng: &mut impl Rng,
    g: &MultiGraph,
    minor: bool,
    mode: Mode,
    steps: usize,
) -> MultiGraph {
    let mut h = g.clone();
    for _ in 0..steps {
        let options = h.single_step_reductions(minor, mode);
        if options.is_empty() {
            break;
        }
        h = options[rng.gen_range(0..options.len())].clone();
    }
    h
}
