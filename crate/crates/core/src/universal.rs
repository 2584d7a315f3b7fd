//! The parameter defined by a collection of graph sequences, gap functions
//! and the obstruction-based approximation driver.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::ParametricFamily;
use crate::graph::{Mode, MultiGraph};
use crate::parameters::{self, Limits, ParameterKind};
use crate::relations::{Budget, Containment, Relation};

/// Containment budget used when family members are patterns.
pub fn sequence_budget() -> Budget {
    Budget {
        max_pattern: 24,
        max_host: 24,
        time_limit: None,
    }
}

/// `1 + max{j : H_j <= g}`, or the base index when no member fits.
///
/// This is the literal minimum over `k` of "no member from index `k` on is
/// contained in `g`": members strictly grow, so only those no larger than
/// `g` need testing, and the minimal members of any tail that fit are
/// exactly the fitting members.
pub fn p_of_sequence_with(
    c: &Containment,
    family: &ParametricFamily,
    g: &MultiGraph,
) -> Result<usize> {
    let mut best = None;
    let mut k = family.base_index;
    let mut prev_size = 0;
    loop {
        let h = family.get(k)?;
        if h.size() <= prev_size && k > family.base_index {
            return Err(Error::Invalid(format!(
                "family {} does not grow strictly at index {k}",
                family.name
            )));
        }
        prev_size = h.size();
        if h.size() > g.size() {
            break;
        }
        if c.contains(&h, g)? {
            best = Some(k);
        }
        k += 1;
    }
    Ok(best.map_or(family.base_index, |j| j + 1))
}

/// [`p_of_sequence_with`] under the family's own relation and default mode.
pub fn p_of_sequence(family: &ParametricFamily, g: &MultiGraph) -> Result<usize> {
    let c = Containment::new(family.relation).with_budget(sequence_budget());
    p_of_sequence_with(&c, family, g)
}

/// A finite collection of sequences compared under one relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeCollection {
    pub name: String,
    pub relation: Relation,
    pub mode: Mode,
    pub families: Vec<ParametricFamily>,
    /// Prefix length used for primality and antichain evidence.
    pub prefix: usize,
    #[serde(skip)]
    pub budget: Budget,
}

pub const COLLECTION_NAMES: [&str; 5] = ["grids", "trees", "blocks", "edge_degree", "cutwidth"];

impl PrimeCollection {
    pub fn new(
        name: &str,
        relation: Relation,
        families: Vec<ParametricFamily>,
        prefix: usize,
    ) -> Self {
        PrimeCollection {
            name: name.to_string(),
            relation,
            mode: relation.default_mode(),
            families: families
                .into_iter()
                .map(|f| f.with_relation(relation))
                .collect(),
            prefix,
            budget: sequence_budget(),
        }
    }

    /// `{grid}` under minors, for treewidth.
    pub fn grids() -> Self {
        Self::new("grids", Relation::Minor, vec![ParametricFamily::grid()], 3)
    }

    /// `{ternary tree}` under minors, for pathwidth.
    pub fn trees() -> Self {
        Self::new(
            "trees",
            Relation::Minor,
            vec![ParametricFamily::ternary_tree()],
            3,
        )
    }

    /// `{tree with apex, its dual}` under minors, for block pathwidth.
    pub fn blocks() -> Self {
        Self::new(
            "blocks",
            Relation::Minor,
            vec![
                ParametricFamily::ternary_tree_apex(),
                ParametricFamily::ternary_tree_apex_dual(),
            ],
            2,
        )
    }

    /// `{theta, star}` under immersion, for edge-degree.
    pub fn edge_degree() -> Self {
        Self::new(
            "edge_degree",
            Relation::Immersion,
            vec![ParametricFamily::theta(), ParametricFamily::star()],
            5,
        )
    }

    /// `{theta, star, ternary tree}` under immersion, for cutwidth.
    pub fn cutwidth() -> Self {
        Self::new(
            "cutwidth",
            Relation::Immersion,
            vec![
                ParametricFamily::theta(),
                ParametricFamily::star(),
                ParametricFamily::ternary_tree(),
            ],
            3,
        )
    }

    pub fn by_name(name: &str) -> Result<Self> {
        Ok(match name {
            "grids" | "grid" => Self::grids(),
            "trees" | "tree" => Self::trees(),
            "blocks" => Self::blocks(),
            "edge_degree" => Self::edge_degree(),
            "cutwidth" => Self::cutwidth(),
            other => return Err(Error::UnknownName(other.to_string())),
        })
    }

    pub fn shipped() -> Vec<PrimeCollection> {
        COLLECTION_NAMES
            .iter()
            .map(|n| Self::by_name(n).expect("registered name"))
            .collect()
    }

    pub fn with_budget(mut self, budget: Budget) -> Self {
        self.budget = budget;
        self
    }

    pub fn containment(&self) -> Containment {
        Containment::new(self.relation)
            .with_mode(self.mode)
            .with_budget(self.budget)
    }

    pub fn max_base(&self) -> usize {
        self.families
            .iter()
            .map(|f| f.base_index)
            .max()
            .unwrap_or(0)
    }

    /// `max` over families of the per-sequence value.
    pub fn p_max_form(&self, g: &MultiGraph) -> Result<usize> {
        let c = self.containment();
        let mut best = 0;
        for f in &self.families {
            best = best.max(p_of_sequence_with(&c, f, g)?);
        }
        Ok(best)
    }

    /// `min{k : no family has its k-th member in g}`; indices below a
    /// family's base count as contained.
    pub fn p_min_form(&self, g: &MultiGraph) -> Result<usize> {
        let c = self.containment();
        let start = self
            .families
            .iter()
            .map(|f| f.base_index)
            .min()
            .unwrap_or(0);
        let mut k = start;
        loop {
            let mut any = false;
            let mut all_larger = true;
            for f in &self.families {
                if k < f.base_index {
                    any = true;
                    all_larger = false;
                    continue;
                }
                let h = f.get(k)?;
                if h.size() <= g.size() {
                    all_larger = false;
                    if c.contains(&h, g)? {
                        any = true;
                    }
                }
            }
            if !any {
                return Ok(k);
            }
            if all_larger {
                return Err(Error::Inconsistent(format!(
                    "index {k} is contained although every member is larger than the graph"
                )));
            }
            k += 1;
        }
    }
}

impl fmt::Display for PrimeCollection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.families.iter().map(|x| x.name.as_str()).collect();
        write!(f, "{}{{{}}}", self.relation, names.join(", "))
    }
}

/// Both forms of the collection parameter; they must agree.
pub fn p_of_collection(coll: &PrimeCollection, g: &MultiGraph) -> Result<usize> {
    let a = coll.p_max_form(g)?;
    let b = coll.p_min_form(g)?;
    if a != b {
        return Err(Error::Inconsistent(format!(
            "collection {coll}: max form {a} differs from min form {b}"
        )));
    }
    Ok(a)
}

/// Finite evidence that a collection is prime and an antichain.
#[derive(Debug, Clone, Serialize)]
pub struct CollectionEvidence {
    /// Families whose prefix is a chain.
    pub chains: Vec<(String, bool)>,
    /// For each ordered pair `(a, b)`: an index of `a` whose member lies
    /// below no member of `b` within the prefix.
    pub separations: Vec<(String, String, Option<usize>)>,
}

impl CollectionEvidence {
    pub fn holds(&self) -> bool {
        self.chains.iter().all(|c| c.1) && self.separations.iter().all(|s| s.2.is_some())
    }
}

impl PrimeCollection {
    pub fn evidence(&self) -> Result<CollectionEvidence> {
        let c = self.containment();
        let prefixes: Vec<Vec<(usize, MultiGraph)>> = self
            .families
            .iter()
            .map(|f| f.prefix(self.prefix))
            .collect::<Result<_>>()?;
        let mut chains = Vec::new();
        for (f, p) in self.families.iter().zip(&prefixes) {
            let mut ok = true;
            for w in p.windows(2) {
                ok &= c.contains(&w[0].1, &w[1].1)?;
            }
            chains.push((f.name.clone(), ok));
        }
        let mut separations = Vec::new();
        for (i, a) in self.families.iter().enumerate() {
            for (j, b) in self.families.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut found = None;
                for (k, h) in &prefixes[i] {
                    let mut below_some = false;
                    for (_, x) in &prefixes[j] {
                        if c.contains(h, x)? {
                            below_some = true;
                            break;
                        }
                    }
                    if !below_some {
                        found = Some(*k);
                        break;
                    }
                }
                separations.push((a.name.clone(), b.name.clone(), found));
            }
        }
        Ok(CollectionEvidence {
            chains,
            separations,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum GapFunction {
    Identity,
    /// `a k + b`
    Linear {
        a: usize,
        b: usize,
    },
    /// `k^c + b`
    Polynomial {
        c: u32,
        b: usize,
    },
    /// Explicit values on `0..len`; undefined beyond.
    Tabulated {
        values: Vec<usize>,
    },
}

impl GapFunction {
    pub fn apply(&self, k: usize) -> Result<usize> {
        match self {
            GapFunction::Identity => Ok(k),
            GapFunction::Linear { a, b } => Ok(a * k + b),
            GapFunction::Polynomial { c, b } => Ok(k.pow(*c) + b),
            GapFunction::Tabulated { values } => {
                values.get(k).copied().ok_or(Error::InvalidIndex {
                    what: "tabulated gap".into(),
                    index: k,
                    min: 0,
                })
            }
        }
    }

    pub fn is_monotone(&self) -> bool {
        match self {
            GapFunction::Tabulated { values } => values.windows(2).all(|w| w[0] <= w[1]),
            _ => true,
        }
    }
}

/// `identity`, `linear:a,b`, `poly:c,b` or `table:v0,v1,...`.
impl FromStr for GapFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("bad gap function `{s}`"));
        let (tag, args) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad()))
                .collect::<Result<_>>()?
        };
        let gap = match (tag, nums.as_slice()) {
            ("identity", []) => GapFunction::Identity,
            ("linear", [a, b]) => GapFunction::Linear { a: *a, b: *b },
            ("poly", [c, b]) => GapFunction::Polynomial {
                c: u32::try_from(*c).map_err(|_| bad())?,
                b: *b,
            },
            ("table", v) if !v.is_empty() => GapFunction::Tabulated { values: v.to_vec() },
            _ => return Err(bad()),
        };
        if !gap.is_monotone() {
            return Err(Error::Invalid(format!(
                "gap function `{s}` is not monotone"
            )));
        }
        Ok(gap)
    }
}

impl fmt::Display for GapFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GapFunction::Identity => write!(f, "k"),
            GapFunction::Linear { a, b } => write!(f, "{a}k+{b}"),
            GapFunction::Polynomial { c, b } => write!(f, "k^{c}+{b}"),
            GapFunction::Tabulated { values } => write!(f, "table{values:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "bound", rename_all = "snake_case")]
pub enum Verdict {
    /// The target parameter exceeds this value.
    Above(usize),
    /// The target parameter is at most this value.
    AtMost(usize),
}

/// If the collection parameter exceeds `gap(k)` the target exceeds `k`;
/// otherwise the target is at most `gap(gap(k))`.
pub fn approximate(
    coll: &PrimeCollection,
    gap: &GapFunction,
    g: &MultiGraph,
    k: usize,
) -> Result<Verdict> {
    let p = p_of_collection(coll, g)?;
    let gk = gap.apply(k)?;
    if p > gk {
        Ok(Verdict::Above(k))
    } else {
        Ok(Verdict::AtMost(gap.apply(gk)?))
    }
}

/// Which verdicts a certificate vouches for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Sides {
    Both,
    AboveOnly,
}

/// A target parameter, a collection and a gap under which [`approximate`]
/// is sound, with the range of `k` it is claimed for.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: ParameterKind,
    pub collection: PrimeCollection,
    pub gap: GapFunction,
    pub sides: Sides,
    pub min_k: usize,
    /// Set when the gap was fitted to a corpus instead of proved.
    pub empirical: Option<&'static str>,
}

/// Gap fitted on all trees with at most nine vertices; see
/// [`fit_gap`]. Valid for `k <= 2` only.
pub const TREE_PATHWIDTH_GAP: [usize; 3] = [1, 2, 2];

impl Certificate {
    /// A grid minor of order `k + 1` forces treewidth above `k`; the
    /// converse bound is not claimed.
    pub fn treewidth_grids() -> Self {
        Certificate {
            kind: ParameterKind::Treewidth,
            collection: PrimeCollection::grids(),
            gap: GapFunction::Linear { a: 1, b: 1 },
            sides: Sides::AboveOnly,
            min_k: 1,
            empirical: None,
        }
    }

    /// `p - 1 <= edge degree <= (p - 1)^2`, so `k^2 + 1` works both ways.
    pub fn edge_degree() -> Self {
        Certificate {
            kind: ParameterKind::EdgeDegree,
            collection: PrimeCollection::edge_degree(),
            gap: GapFunction::Polynomial { c: 2, b: 1 },
            sides: Sides::Both,
            min_k: 0,
            empirical: None,
        }
    }

    pub fn pathwidth_trees() -> Self {
        Certificate {
            kind: ParameterKind::Pathwidth,
            collection: PrimeCollection::trees(),
            gap: GapFunction::Tabulated {
                values: TREE_PATHWIDTH_GAP.to_vec(),
            },
            sides: Sides::Both,
            min_k: 0,
            empirical: Some("fitted on trees with at most 9 vertices"),
        }
    }

    pub fn shipped() -> Vec<Certificate> {
        vec![
            Self::treewidth_grids(),
            Self::edge_degree(),
            Self::pathwidth_trees(),
        ]
    }

    /// Whether `verdict` is consistent with the exact `value`, for the sides
    /// this certificate covers.
    pub fn sound(&self, verdict: Verdict, value: usize) -> bool {
        match verdict {
            Verdict::Above(k) => value > k,
            Verdict::AtMost(b) => self.sides == Sides::AboveOnly || value <= b,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapRow {
    pub index: usize,
    pub parameter: usize,
    pub collection: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub kind: String,
    pub collection: String,
    pub rows: Vec<GapRow>,
    /// Largest collection value seen per parameter value.
    pub collection_given_parameter: BTreeMap<usize, usize>,
    /// Largest parameter value seen per collection value.
    pub parameter_given_collection: BTreeMap<usize, usize>,
}

pub fn gap_report(
    kind: &ParameterKind,
    coll: &PrimeCollection,
    corpus: &[MultiGraph],
) -> Result<GapReport> {
    let rows: Vec<Result<GapRow>> = corpus
        .par_iter()
        .enumerate()
        .map(|(index, g)| {
            Ok(GapRow {
                index,
                parameter: parameters::solve_with(kind, g, &Limits::default())?.value,
                collection: p_of_collection(coll, g)?,
            })
        })
        .collect();
    let rows: Vec<GapRow> = rows.into_iter().collect::<Result<_>>()?;
    let mut cgp = BTreeMap::new();
    let mut pgc = BTreeMap::new();
    for r in &rows {
        let e = cgp.entry(r.parameter).or_insert(0);
        *e = (*e).max(r.collection);
        let e = pgc.entry(r.collection).or_insert(0);
        *e = (*e).max(r.parameter);
    }
    Ok(GapReport {
        kind: kind.name().to_string(),
        collection: coll.to_string(),
        rows,
        collection_given_parameter: cgp,
        parameter_given_collection: pgc,
    })
}

/// The least monotone table `f` on `0..=max` with `p <= f(q)` and
/// `q <= f(p)` for every row `(p, q)` of the report.
pub fn fit_gap(report: &GapReport) -> GapFunction {
    let top = report
        .rows
        .iter()
        .map(|r| r.parameter.max(r.collection))
        .max()
        .unwrap_or(0);
    let mut values = vec![0usize; top + 1];
    for r in &report.rows {
        values[r.collection] = values[r.collection].max(r.parameter);
        values[r.parameter] = values[r.parameter].max(r.collection);
    }
    for i in 1..values.len() {
        values[i] = values[i].max(values[i - 1]);
    }
    GapFunction::Tabulated { values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{grid, path, star, theta};

    #[test]
    fn sequence_values() {
        let c = Containment::new(Relation::Minor).with_budget(Budget::unlimited());
        assert_eq!(
            p_of_sequence_with(&c, &ParametricFamily::ternary_tree(), &path(100)).unwrap(),
            1
        );
        assert_eq!(
            p_of_sequence(&ParametricFamily::grid(), &grid(3).unwrap()).unwrap(),
            4
        );
        assert_eq!(
            p_of_sequence(&ParametricFamily::theta(), &theta(5).unwrap()).unwrap(),
            6
        );
    }

    #[test]
    fn collection_values() {
        let d = PrimeCollection::edge_degree();
        assert_eq!(p_of_collection(&d, &theta(5).unwrap()).unwrap(), 6);
        assert_eq!(p_of_collection(&d, &star(7)).unwrap(), 8);
        assert_eq!(p_of_collection(&d, &MultiGraph::new(0)).unwrap(), 1);
        assert_eq!(
            p_of_collection(&PrimeCollection::blocks(), &MultiGraph::new(0)).unwrap(),
            2
        );
    }

    #[test]
    fn approximation_branches() {
        let g = grid(3).unwrap();
        let coll = PrimeCollection::grids();
        let v = approximate(&coll, &GapFunction::Linear { a: 1, b: 1 }, &g, 2).unwrap();
        assert_eq!(v, Verdict::Above(2));
        let theta5 = theta(5).unwrap();
        let d = PrimeCollection::edge_degree();
        // value 6
        assert_eq!(
            approximate(&d, &GapFunction::Identity, &theta5, 2).unwrap(),
            Verdict::Above(2)
        );
        assert_eq!(
            approximate(&d, &GapFunction::Identity, &theta5, 7).unwrap(),
            Verdict::AtMost(7)
        );
    }

    #[test]
    fn gap_functions() {
        assert_eq!(GapFunction::Polynomial { c: 2, b: 1 }.apply(3).unwrap(), 10);
        assert_eq!(GapFunction::Linear { a: 2, b: 1 }.apply(3).unwrap(), 7);
        let t = GapFunction::Tabulated {
            values: vec![1, 2, 2],
        };
        assert!(t.is_monotone());
        assert!(t.apply(3).is_err());
        assert!(!GapFunction::Tabulated { values: vec![2, 1] }.is_monotone());
        assert_eq!(
            "linear:1,1".parse::<GapFunction>().unwrap(),
            GapFunction::Linear { a: 1, b: 1 }
        );
        assert_eq!(
            "poly:2,1".parse::<GapFunction>().unwrap(),
            GapFunction::Polynomial { c: 2, b: 1 }
        );
        assert_eq!(
            "identity".parse::<GapFunction>().unwrap(),
            GapFunction::Identity
        );
        assert!("table:3,1".parse::<GapFunction>().is_err());
        assert!("linear:1".parse::<GapFunction>().is_err());
    }

    #[test]
    fn non_growing_family_is_rejected() {
        let mut f = ParametricFamily::copies_of(&MultiGraph::new(0));
        f.relation = Relation::Minor;
        assert!(p_of_sequence(&f, &path(3)).is_err());
    }
}
