//! Obstruction sets inside a bounded universe, obstruction chains and
//! family sample checks.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{complete, complete_bipartite, ParametricFamily};
use crate::graph::{
    augment_level, canonical_form, sort_enum_order, to_text, CanonicalForm, Mode, MultiGraph,
};
use crate::omnivore::ClassSpec;
use crate::parameters::{self, Limits, ParameterKind};
use crate::relations::{Budget, Containment, GraphSet, Relation};

/// Built-in closed classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedClass {
    Forests,
    Outerplanar,
    /// Graphs with a vertex whose removal leaves a forest (and `K0`).
    ApexForests,
    /// Simple forests of maximum degree three.
    SubcubicForests,
    /// Graphs obtainable from a star by immersion: simple graphs whose
    /// components are vertices, edges and at most one larger star.
    StarsOrEdgeless,
    /// Graphs obtainable from some `theta_k` by immersion: at most two
    /// vertices.
    ThetaLike,
}

pub const NAMED_CLASSES: [NamedClass; 6] = [
    NamedClass::Forests,
    NamedClass::Outerplanar,
    NamedClass::ApexForests,
    NamedClass::SubcubicForests,
    NamedClass::StarsOrEdgeless,
    NamedClass::ThetaLike,
];

impl NamedClass {
    pub fn name(self) -> &'static str {
        match self {
            NamedClass::Forests => "forests",
            NamedClass::Outerplanar => "outerplanar",
            NamedClass::ApexForests => "apex_forests",
            NamedClass::SubcubicForests => "subcubic_forests",
            NamedClass::StarsOrEdgeless => "stars_or_edgeless",
            NamedClass::ThetaLike => "theta_like",
        }
    }

    pub fn relation(self) -> Relation {
        match self {
            NamedClass::Forests | NamedClass::Outerplanar | NamedClass::ApexForests => {
                Relation::Minor
            }
            _ => Relation::Immersion,
        }
    }

    pub fn contains(self, g: &MultiGraph) -> Result<bool> {
        Ok(match self {
            NamedClass::Forests => is_forest(g),
            NamedClass::Outerplanar => is_outerplanar(g)?,
            NamedClass::ApexForests => is_apex_forest(g),
            NamedClass::SubcubicForests => is_subcubic_forest(g),
            NamedClass::StarsOrEdgeless => is_star_or_edgeless(g),
            NamedClass::ThetaLike => is_theta_like(g),
        })
    }
}

impl fmt::Display for NamedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        NAMED_CLASSES
            .into_iter()
            .find(|c| c.name() == s || c.name().trim_end_matches('s') == s)
            .ok_or(Error::UnknownName(s))
    }
}

pub fn is_forest(g: &MultiGraph) -> bool {
    g.is_forest()
}

/// No `K4` and no `K_{2,3}` minor.
pub fn is_outerplanar(g: &MultiGraph) -> Result<bool> {
    let c = Containment::new(Relation::Minor).with_budget(Budget::unlimited());
    let g = g.simplified();
    Ok(!c.contains(&complete(4), &g)? && !c.contains(&complete_bipartite(2, 3), &g)?)
}

pub fn is_apex_forest(g: &MultiGraph) -> bool {
    if !g.is_simple() {
        return false;
    }
    g.is_forest()
        || (0..g.vertex_count()).any(|v| g.delete_vertex(v).expect("in range").is_forest())
}

pub fn is_subcubic_forest(g: &MultiGraph) -> bool {
    g.is_forest() && g.max_degree() <= 3
}

pub fn is_star_or_edgeless(g: &MultiGraph) -> bool {
    if !g.is_forest() {
        return false;
    }
    let mut big = 0;
    for comp in g.components() {
        if comp.len() <= 2 {
            continue;
        }
        let star = comp.iter().any(|&v| g.degree(v) == comp.len() - 1);
        if !star {
            return false;
        }
        big += 1;
    }
    big <= 1
}

pub fn is_theta_like(g: &MultiGraph) -> bool {
    g.vertex_count() <= 2
}

/// A class to compute obstructions for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphClass {
    Named(NamedClass),
    /// Graphs with `kind <= k`.
    Bounded {
        kind: ParameterKind,
        k: usize,
    },
    Spec(ClassSpec),
}

impl GraphClass {
    pub fn contains(&self, g: &MultiGraph) -> Result<bool> {
        match self {
            GraphClass::Named(c) => c.contains(g),
            GraphClass::Bounded { kind, k } => {
                parameters::solve_with(kind, g, &Limits::extended()).map(|s| s.value <= *k)
            }
            GraphClass::Spec(s) => s.contains(g),
        }
    }

    pub fn relation(&self) -> Relation {
        match self {
            GraphClass::Named(c) => c.relation(),
            GraphClass::Bounded { kind, .. } => kind.relation(),
            GraphClass::Spec(s) => s.relation,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            GraphClass::Named(c) => c.name().to_string(),
            GraphClass::Bounded { kind, k } => format!("{kind} <= {k}"),
            GraphClass::Spec(s) => format!("excl[{}]", s.obstructions.len()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub relation: Relation,
    pub mode: Mode,
    pub class: String,
    pub n_max: usize,
    pub mult_max: u32,
    pub obstructions: GraphSet,
    /// Class members found in the universe.
    pub members: usize,
    pub note: String,
}

impl ObstructionReport {
    pub fn obstruction_texts(&self) -> Vec<String> {
        self.obstructions.iter().map(to_text).collect()
    }
}

/// Caches predicate answers by canonical form during one computation.
struct Oracle<'a> {
    class: &'a GraphClass,
    seen: Mutex<HashMap<CanonicalForm, bool>>,
}

impl Oracle<'_> {
    fn contains(&self, g: &MultiGraph) -> Result<bool> {
        let key = canonical_form(g);
        if let Some(&v) = self.seen.lock().expect("cache lock").get(&key) {
            return Ok(v);
        }
        let v = self.class.contains(g)?;
        self.seen.lock().expect("cache lock").insert(key, v);
        Ok(v)
    }
}

fn describe(g: &MultiGraph) -> String {
    to_text(g).trim_end().replace('\n', "; ")
}

/// The minimal non-members (under `relation`, in the class's natural mode)
/// among graphs with at most `n_max` vertices and multiplicity at most
/// `mult_max`.
///
/// Every obstruction loses a vertex to a member, so level `n` candidates
/// are the one-vertex extensions of level `n - 1` members. A candidate is
/// an obstruction when it is not a member and all its single-step
/// reductions are; members whose reductions leave the class are reported as
/// a closure failure.
pub fn compute_obstructions(
    class: &GraphClass,
    relation: Relation,
    n_max: usize,
    mult_max: u32,
) -> Result<ObstructionReport> {
    let mode = if mult_max > 1 {
        Mode::Multigraph
    } else {
        Mode::Simple
    };
    let minor_steps = match relation {
        Relation::Minor => true,
        Relation::Immersion => false,
        other => {
            return Err(Error::Invalid(format!(
                "obstruction computation supports minor and immersion, not {other}"
            )))
        }
    };
    let oracle = Oracle {
        class,
        seen: Mutex::new(HashMap::new()),
    };
    let mut obstructions: Vec<MultiGraph> = Vec::new();
    let mut members = 0usize;
    let mut level = vec![MultiGraph::new(0)];
    for n in 0..=n_max {
        if n > 0 {
            level = augment_level(&level, mult_max);
        }
        let verdicts: Vec<Result<(bool, bool)>> = level
            .par_iter()
            .map(|g| {
                let member = oracle.contains(g)?;
                let mut reductions_in = true;
                for r in g.single_step_reductions(minor_steps, mode) {
                    if !oracle.contains(&r)? {
                        if member {
                            return Err(Error::NotClosed {
                                predicate: class.describe(),
                                member: describe(g),
                                reduction: describe(&r),
                            });
                        }
                        reductions_in = false;
                        break;
                    }
                }
                Ok((member, reductions_in))
            })
            .collect();
        let mut next = Vec::new();
        for (g, v) in level.into_iter().zip(verdicts) {
            let (member, reductions_in) = v?;
            if member {
                next.push(g);
            } else if reductions_in {
                obstructions.push(g);
            }
        }
        members += next.len();
        level = next;
    }
    sort_enum_order(&mut obstructions);
    let report = ObstructionReport {
        relation,
        mode,
        class: class.describe(),
        n_max,
        mult_max,
        obstructions: obstructions.into_iter().collect(),
        members,
        note: format!(
            "complete for graphs with at most {n_max} vertices and edge multiplicity at most {mult_max}; larger obstructions are not searched"
        ),
    };
    Ok(report)
}

/// Pairwise non-containment of a report's set.
pub fn is_antichain(relation: Relation, mode: Mode, set: &GraphSet) -> Result<bool> {
    let c = Containment::new(relation)
        .with_mode(mode)
        .with_budget(Budget::unlimited());
    let s = set.as_slice();
    for (i, a) in s.iter().enumerate() {
        for (j, b) in s.iter().enumerate() {
            if i != j && c.contains(a, b)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct ObstructionChain {
    pub kind: String,
    pub relation: Relation,
    /// `(level, graph)` with the graph an obstruction for `kind <= level`.
    pub links: Vec<(usize, MultiGraph)>,
}

/// A chain `C_1 <= C_2 <= ... <= C_m` with `C_i` an obstruction for
/// `kind <= i`, found by depth-first search over the computed sets.
pub fn obstruction_chain(
    kind: &ParameterKind,
    relation: Relation,
    length: usize,
    n_max: usize,
    mult_max: u32,
) -> Result<ObstructionChain> {
    let mut sets = Vec::with_capacity(length);
    for i in 1..=length {
        let class = GraphClass::Bounded {
            kind: kind.clone(),
            k: i,
        };
        sets.push(compute_obstructions(&class, relation, n_max, mult_max)?.obstructions);
    }
    let c = Containment::new(relation)
        .with_mode(if mult_max > 1 {
            Mode::Multigraph
        } else {
            Mode::Simple
        })
        .with_budget(Budget::unlimited());
    fn dfs(
        c: &Containment,
        sets: &[GraphSet],
        i: usize,
        path: &mut Vec<MultiGraph>,
    ) -> Result<bool> {
        if i == sets.len() {
            return Ok(true);
        }
        for g in &sets[i] {
            if let Some(last) = path.last() {
                if !c.contains(last, g)? {
                    continue;
                }
            }
            path.push(g.clone());
            if dfs(c, sets, i + 1, path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
    let mut path = Vec::new();
    if !dfs(&c, &sets, 0, &mut path)? {
        return Err(Error::NotFound(format!(
            "no {relation} chain of {kind} obstructions of length {length} within {n_max} vertices"
        )));
    }
    Ok(ObstructionChain {
        kind: kind.name().to_string(),
        relation,
        links: path
            .into_iter()
            .enumerate()
            .map(|(i, g)| (i + 1, g))
            .collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub level: usize,
    pub obstructions: usize,
    /// Least family index holding some obstruction, with the family name
    /// and the obstruction as graph text.
    pub embedding: Option<(usize, String, String)>,
}

/// For each `k <= k_max`, the least index `f(k)` such that some member of
/// `obs(kind <= k)` is contained in the `f(k)`-th member of some family.
/// Families are scanned while their members fit the containment budget; an
/// absent embedding is reported, not treated as an error.
pub fn universal_sample_check(
    kind: &ParameterKind,
    relation: Relation,
    families: &[ParametricFamily],
    k_max: usize,
    n_max: usize,
    mult_max: u32,
) -> Result<Vec<SampleRow>> {
    let c = Containment::new(relation)
        .with_mode(if mult_max > 1 {
            Mode::Multigraph
        } else {
            Mode::Simple
        })
        .with_budget(Budget::default());
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let class = GraphClass::Bounded {
            kind: kind.clone(),
            k,
        };
        let obs = compute_obstructions(&class, relation, n_max, mult_max)?.obstructions;
        let mut best: Option<(usize, String, String)> = None;
        for f in families {
            let mut j = f.base_index;
            loop {
                if best.as_ref().is_some_and(|b| b.0 <= j) {
                    break;
                }
                let h = f.get(j)?;
                if h.vertex_count() > c.budget.max_host {
                    break;
                }
                let mut hit = None;
                for u in &obs {
                    if c.contains(u, &h)? {
                        hit = Some(u.clone());
                        break;
                    }
                }
                if let Some(u) = hit {
                    best = Some((j, f.name.clone(), to_text(&u)));
                    break;
                }
                j += 1;
            }
        }
        rows.push(SampleRow {
            level: k,
            obstructions: obs.len(),
            embedding: best,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::star;
    use crate::graph::{are_isomorphic, enumerate_graphs};
    use crate::relations::min_elements;

    fn has(set: &GraphSet, g: &MultiGraph) -> bool {
        set.contains_graph(g)
    }

    #[test]
    fn forests_small() {
        let r = compute_obstructions(
            &GraphClass::Named(NamedClass::Forests),
            Relation::Minor,
            5,
            1,
        )
        .unwrap();
        assert_eq!(r.obstructions.len(), 1);
        assert!(has(&r.obstructions, &complete(3)));
    }

    #[test]
    fn theta_like() {
        let r = compute_obstructions(
            &GraphClass::Named(NamedClass::ThetaLike),
            Relation::Immersion,
            4,
            2,
        )
        .unwrap();
        assert_eq!(r.obstructions.len(), 1);
        assert!(has(&r.obstructions, &MultiGraph::new(3)));
    }

    #[test]
    fn non_closed_predicate_is_rejected() {
        // contracting the middle edge of two joined claws creates degree four
        let class = GraphClass::Bounded {
            kind: ParameterKind::EdgeDegree,
            k: 3,
        };
        assert!(matches!(
            compute_obstructions(&class, Relation::Minor, 6, 1),
            Err(Error::NotClosed { .. })
        ));
        let none = ClassSpec::new(Relation::Subgraph, GraphSet::new());
        assert!(compute_obstructions(&GraphClass::Spec(none), Relation::Subgraph, 3, 1).is_err());
    }

    #[test]
    fn literal_star_class_is_not_lifting_closed() {
        // K_{1,4} is a star, but lifting two of its edges gives P3 + K2
        let s = star(4);
        let lifted = s.lift_pair(1, 0, 2).unwrap();
        assert!(is_star_or_edgeless(&s));
        assert!(is_star_or_edgeless(&lifted));
        assert!(!lifted.is_connected());
    }

    #[test]
    fn step_minimal_equals_set_minimal() {
        let class = GraphClass::Named(NamedClass::Outerplanar);
        let r = compute_obstructions(&class, Relation::Minor, 5, 1).unwrap();
        let universe = enumerate_graphs(5, 1, None).unwrap();
        let outside: GraphSet = universe
            .into_iter()
            .filter(|g| !class.contains(g).unwrap())
            .collect();
        let mins = min_elements(&Containment::new(Relation::Minor), &outside).unwrap();
        assert!(mins.same_classes(&r.obstructions));
    }

    #[test]
    fn pathwidth_chain() {
        let ch = obstruction_chain(&ParameterKind::Pathwidth, Relation::Minor, 2, 7, 1).unwrap();
        assert!(are_isomorphic(&ch.links[0].1, &complete(3)));
        assert_eq!(ch.links.len(), 2);
    }

    #[test]
    fn edge_degree_sample() {
        let fams = [ParametricFamily::theta(), ParametricFamily::star()];
        let rows = universal_sample_check(
            &ParameterKind::EdgeDegree,
            Relation::Immersion,
            &fams,
            2,
            4,
            3,
        )
        .unwrap();
        assert_eq!(rows[1].embedding.as_ref().unwrap().0, 3);
    }

    #[test]
    fn names_parse() {
        for c in NAMED_CLASSES {
            assert_eq!(c.name().parse::<NamedClass>().unwrap(), c);
        }
        assert_eq!("forest".parse::<NamedClass>().unwrap(), NamedClass::Forests);
    }
}
