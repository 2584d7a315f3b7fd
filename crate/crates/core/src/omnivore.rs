//! Finite class presentations and the step-by-step omnivore construction.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::graph::{
    augment_level, canonical_form, parse_text_blocks, sort_enum_order, to_text, EnumBudget, Mode,
    MultiGraph,
};
use crate::relations::{Budget, Containment, GraphSet, Relation};

/// A class given as all graphs excluding a finite obstruction list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub relation: Relation,
    pub mode: Mode,
    /// Largest edge multiplicity considered when enumerating the class.
    pub mult_cap: u32,
    pub obstructions: GraphSet,
}

impl ClassSpec {
    pub fn new(relation: Relation, obstructions: GraphSet) -> Self {
        let mode = relation.default_mode();
        ClassSpec {
            relation,
            mode,
            mult_cap: if mode == Mode::Simple { 1 } else { 2 },
            obstructions,
        }
    }

    pub fn with_mode(mut self, mode: Mode, mult_cap: u32) -> Self {
        self.mode = mode;
        self.mult_cap = if mode == Mode::Simple { 1 } else { mult_cap };
        self
    }

    pub fn containment(&self) -> Containment {
        Containment::new(self.relation)
            .with_mode(self.mode)
            .with_budget(Budget::unlimited())
    }

    /// Membership: no listed obstruction is contained in `g`.
    pub fn contains(&self, g: &MultiGraph) -> Result<bool> {
        let c = self.containment();
        let g = g.in_mode(self.mode);
        for o in &self.obstructions {
            if c.contains(o, &g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Fails unless the obstruction list is an antichain.
    pub fn check_antichain(&self) -> Result<()> {
        let c = self.containment();
        let obs = self.obstructions.as_slice();
        for (i, a) in obs.iter().enumerate() {
            for (j, b) in obs.iter().enumerate() {
                if i != j && c.contains(a, b)? {
                    return Err(Error::Invalid(format!(
                        "obstruction {i} is contained in obstruction {j}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A string identifying the class up to isomorphism of the list.
    pub fn key(&self) -> String {
        let forms: Vec<String> = self
            .obstructions
            .forms()
            .iter()
            .map(|f| f.to_hex())
            .collect();
        format!(
            "{}|{}|{}|{}",
            self.relation,
            self.mode,
            self.mult_cap,
            forms.join(",")
        )
    }

    /// Header lines, a blank line, then graph text blocks separated by blank
    /// lines.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "relation {}", self.relation).unwrap();
        match self.mode {
            Mode::Simple => writeln!(s, "mode simple").unwrap(),
            Mode::Multigraph => writeln!(s, "mode multigraph {}", self.mult_cap).unwrap(),
        }
        for g in &self.obstructions {
            s.push('\n');
            s.push_str(&to_text(g));
        }
        s
    }

    pub fn parse(input: &str) -> Result<Self> {
        let mut relation = None;
        let mut mode = None;
        let mut body_start = None;
        let lines: Vec<&str> = input.lines().collect();
        for (i, raw) in lines.iter().enumerate() {
            let line = raw.trim();
            if line.starts_with('#') {
                continue;
            }
            if line.is_empty() {
                if relation.is_some() {
                    body_start = Some(i);
                    break;
                }
                continue;
            }
            let err = |message: String| Error::Parse {
                line: i + 1,
                message,
            };
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["relation", r] => relation = Some(r.parse::<Relation>()?),
                ["mode", "simple"] => mode = Some((Mode::Simple, 1)),
                ["mode", "multigraph"] => mode = Some((Mode::Multigraph, 2)),
                ["mode", "multigraph", m] => {
                    let m: u32 = m
                        .parse()
                        .map_err(|_| err(format!("bad multiplicity cap `{m}`")))?;
                    if m == 0 {
                        return Err(err("multiplicity cap must be positive".into()));
                    }
                    mode = Some((Mode::Multigraph, m));
                }
                _ => return Err(err(format!("unexpected header line `{line}`"))),
            }
        }
        let relation = relation.ok_or(Error::Parse {
            line: 0,
            message: "missing `relation` header".into(),
        })?;
        let body = match body_start {
            Some(i) => lines[i..].join("\n"),
            None => String::new(),
        };
        let graphs = parse_text_blocks(&body).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line: line + body_start.unwrap_or(0),
                message,
            },
            other => other,
        })?;
        let mut spec = ClassSpec::new(relation, graphs.into_iter().collect());
        if let Some((m, cap)) = mode {
            spec = spec.with_mode(m, cap);
        }
        spec.check_antichain()?;
        Ok(spec)
    }
}

type MemoKey = (String, usize, Option<String>);

fn memo() -> &'static Mutex<HashMap<MemoKey, MultiGraph>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, MultiGraph>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Members of the class with at most `n_max` vertices, by level.
fn member_levels(class: &ClassSpec, n_max: usize) -> Result<Vec<Vec<MultiGraph>>> {
    let mut levels = Vec::new();
    let mut level = vec![MultiGraph::new(0)];
    for n in 0..=n_max {
        if n > 0 {
            level = augment_level(&level, class.mult_cap);
        }
        let mut kept = Vec::new();
        for g in level {
            if class.contains(&g)? {
                kept.push(g);
            }
        }
        sort_enum_order(&mut kept);
        level = kept;
        levels.push(level.clone());
    }
    Ok(levels)
}

/// The enumeration-least member `H` of the class that contains `prev` and
/// every member on at most `k` vertices.
pub fn omnivore_step(
    class: &ClassSpec,
    k: usize,
    prev: Option<&MultiGraph>,
    budget: &EnumBudget,
) -> Result<MultiGraph> {
    if k == 0 {
        return Err(Error::InvalidIndex {
            what: "omnivore step".into(),
            index: k,
            min: 1,
        });
    }
    let key = (class.key(), k, prev.map(|p| canonical_form(p).to_hex()));
    if let Some(g) = memo().lock().expect("memo lock").get(&key) {
        return Ok(g.clone());
    }
    let n_max = if class.mult_cap <= 1 {
        budget.max_simple_vertices
    } else {
        budget.max_multi_vertices
    };
    budget.check(0, class.mult_cap)?;
    if k > n_max {
        return Err(Error::budget("omnivore step vertex count", k, n_max));
    }
    let c = class.containment();
    let levels = member_levels(class, k)?;
    let small: Vec<MultiGraph> = levels.iter().flatten().cloned().collect();
    let fits = |h: &MultiGraph| -> Result<bool> {
        if let Some(p) = prev {
            if !c.contains(p, h)? {
                return Ok(false);
            }
        }
        for s in &small {
            if !c.contains(s, h)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut level = vec![MultiGraph::new(0)];
    for n in 0..=n_max {
        if n > 0 {
            let mut next = Vec::new();
            for g in augment_level(&level, class.mult_cap) {
                if class.contains(&g)? {
                    next.push(g);
                }
            }
            level = next;
        }
        sort_enum_order(&mut level);
        for h in &level {
            if fits(h)? {
                memo().lock().expect("memo lock").insert(key, h.clone());
                return Ok(h.clone());
            }
        }
    }
    Err(Error::NotFound(format!(
        "no omnivore step {k} among class members with at most {n_max} vertices"
    )))
}

/// Steps `1..=k_max`, each fed the previous output.
pub fn omnivore_prefix(
    class: &ClassSpec,
    k_max: usize,
    budget: &EnumBudget,
) -> Result<Vec<MultiGraph>> {
    let mut out: Vec<MultiGraph> = Vec::new();
    for k in 1..=k_max {
        let h = omnivore_step(class, k, out.last(), budget)?;
        out.push(h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, complete_bipartite};
    use crate::graph::are_isomorphic;

    fn forests() -> ClassSpec {
        ClassSpec::new(Relation::Minor, [complete(3)].into_iter().collect())
    }

    #[test]
    fn first_steps_for_forests() {
        let b = EnumBudget::default();
        let h1 = omnivore_step(&forests(), 1, None, &b).unwrap();
        assert_eq!(h1, MultiGraph::new(1));
        let h2 = omnivore_step(&forests(), 2, Some(&h1), &b).unwrap();
        assert!(are_isomorphic(&h2, &complete(2)));
        assert!(omnivore_step(&forests(), 0, None, &b).is_err());
    }

    #[test]
    fn spec_text_round_trip() {
        let spec = ClassSpec::new(
            Relation::Minor,
            [complete(4), complete_bipartite(2, 3)]
                .into_iter()
                .collect(),
        );
        let text = spec.to_text();
        assert!(text.starts_with("relation minor\nmode simple\n\nn 4\n"));
        let back = ClassSpec::parse(&text).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.key(), spec.key());
    }

    #[test]
    fn spec_parse_errors() {
        assert!(ClassSpec::parse("mode simple\n").is_err());
        assert!(ClassSpec::parse("relation minor\nmode weird\n").is_err());
        assert!(ClassSpec::parse("relation minor\nmode multigraph 0\n").is_err());
        // K3 is a minor of K4: not an antichain
        let bad = format!(
            "relation minor\n\n{}\n{}",
            to_text(&complete(3)),
            to_text(&complete(4))
        );
        assert!(ClassSpec::parse(&bad).is_err());
        let multi =
            ClassSpec::parse("relation immersion\nmode multigraph 3\n\nn 2\ne 0 1 2\n").unwrap();
        assert_eq!((multi.mode, multi.mult_cap), (Mode::Multigraph, 3));
    }

    #[test]
    fn membership() {
        let f = forests();
        assert!(f.contains(&complete(2)).unwrap());
        assert!(!f.contains(&complete(3)).unwrap());
    }
}
