use univobs::families::{complete, complete_bipartite};
use univobs::graph::{enumerate_graphs, parse_text_blocks};
use univobs::obstructions::{
    compute_obstructions, is_antichain, obstruction_chain, GraphClass, NamedClass, NAMED_CLASSES,
};
use univobs::parameters::ParameterKind;
use univobs::relations::{excl_within, min_elements, set_dominates, Budget, Containment, GraphSet};
use univobs::verify::{
    APEX_FOREST_FIXTURE, FOREST_FIXTURE, OUTERPLANAR_FIXTURE, STARS_FIXTURE, SUBCUBIC_FIXTURE,
    THETA_FIXTURE,
};
use univobs::{Mode, Relation};

struct Header {
    relation: Relation,
    n_max: usize,
    mult_max: u32,
}

/// `# <class> obstructions under <relation>, up to <n> vertices, multiplicity <m>`
fn header(text: &str) -> Header {
    let line = text.lines().next().unwrap();
    let words: Vec<&str> = line
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|w| !w.is_empty())
        .collect();
    let relation = match words[4] {
        "minor" => Relation::Minor,
        "immersion" => Relation::Immersion,
        other => panic!("relation {other}"),
    };
    Header {
        relation,
        n_max: words[7].parse().unwrap(),
        mult_max: words.last().unwrap().parse().unwrap(),
    }
}

fn fixture_for(class: NamedClass) -> &'static str {
    match class {
        NamedClass::Forests => FOREST_FIXTURE,
        NamedClass::Outerplanar => OUTERPLANAR_FIXTURE,
        NamedClass::ApexForests => APEX_FOREST_FIXTURE,
        NamedClass::SubcubicForests => SUBCUBIC_FIXTURE,
        NamedClass::StarsOrEdgeless => STARS_FIXTURE,
        NamedClass::ThetaLike => THETA_FIXTURE,
    }
}

fn containment(relation: Relation, mult_max: u32) -> Containment {
    let mode = if mult_max > 1 {
        Mode::Multigraph
    } else {
        Mode::Simple
    };
    Containment::new(relation)
        .with_mode(mode)
        .with_budget(Budget::unlimited())
}

#[test]
fn computed_sets_match_stored_fixtures() {
    for class in NAMED_CLASSES {
        let text = fixture_for(class);
        let h = header(text);
        assert_eq!(h.relation, class.relation());
        let stored: GraphSet = parse_text_blocks(text).unwrap().into_iter().collect();
        let rep = compute_obstructions(&GraphClass::Named(class), h.relation, h.n_max, h.mult_max)
            .unwrap();
        assert!(
            rep.obstructions.same_classes(&stored),
            "{class}: {:?}",
            rep.obstruction_texts()
        );
        assert!(is_antichain(h.relation, rep.mode, &rep.obstructions).unwrap());
    }
}

#[test]
fn search_agrees_with_minimal_non_members() {
    let cases = [
        (NamedClass::Forests, 6, 1),
        (NamedClass::Outerplanar, 6, 1),
        (NamedClass::SubcubicForests, 5, 2),
        (NamedClass::StarsOrEdgeless, 5, 2),
        (NamedClass::ThetaLike, 5, 2),
    ];
    for (class, n, m) in cases {
        let universe = enumerate_graphs(n, m, None).unwrap();
        let outside: GraphSet = universe
            .iter()
            .filter(|g| !class.contains(g).unwrap())
            .cloned()
            .collect();
        let c = containment(class.relation(), m);
        let oracle = min_elements(&c, &outside).unwrap();
        let rep = compute_obstructions(&GraphClass::Named(class), class.relation(), n, m).unwrap();
        assert!(
            rep.obstructions.same_classes(&oracle),
            "{class} at n <= {n}"
        );
    }
}

#[test]
fn excluding_the_obstructions_recovers_the_class() {
    let cases = [
        (NamedClass::Forests, 6, 1),
        (NamedClass::Outerplanar, 6, 1),
        (NamedClass::SubcubicForests, 5, 2),
    ];
    for (class, n, m) in cases {
        let universe: GraphSet = enumerate_graphs(n, m, None).unwrap().into_iter().collect();
        let obs: GraphSet = parse_text_blocks(fixture_for(class))
            .unwrap()
            .into_iter()
            .collect();
        let c = containment(class.relation(), m);
        let excl = excl_within(&c, &obs, &universe).unwrap();
        let members: GraphSet = universe
            .iter()
            .filter(|g| class.contains(g).unwrap())
            .cloned()
            .collect();
        assert!(excl.same_classes(&members), "{class}");
    }
}

#[test]
fn outerplanar_obstructions_are_the_classical_pair() {
    let stored: GraphSet = parse_text_blocks(OUTERPLANAR_FIXTURE)
        .unwrap()
        .into_iter()
        .collect();
    let classical: GraphSet = [complete(4), complete_bipartite(2, 3)]
        .into_iter()
        .collect();
    assert!(stored.same_classes(&classical));
}

#[test]
fn treewidth_obstructions_grow_with_the_bound() {
    let obs = |k| {
        compute_obstructions(
            &GraphClass::Bounded {
                kind: ParameterKind::Treewidth,
                k,
            },
            Relation::Minor,
            5,
            1,
        )
        .unwrap()
        .obstructions
    };
    let (one, two) = (obs(1), obs(2));
    assert!(one.same_classes(&[complete(3)].into_iter().collect()));
    assert!(two.same_classes(&[complete(4)].into_iter().collect()));
    let c = containment(Relation::Minor, 1);
    // every obstruction for the larger bound sits above one for the smaller
    assert!(set_dominates(&c, &one, &two).unwrap());
    assert!(!set_dominates(&c, &two, &one).unwrap());
    let chain = obstruction_chain(&ParameterKind::Treewidth, Relation::Minor, 2, 5, 1).unwrap();
    assert_eq!(chain.links.len(), 2);
    assert!(c.contains(&chain.links[0].1, &chain.links[1].1).unwrap());
}

#[test]
fn unsupported_relation_is_an_error() {
    let class = GraphClass::Named(NamedClass::Forests);
    assert!(compute_obstructions(&class, Relation::Subgraph, 4, 1).is_err());
}
