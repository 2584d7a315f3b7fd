use std::time::Duration;

use serde_json::{json, Map, Value};
use univobs::families::ParametricFamily;
use univobs::graph::{to_graph6, to_text, Mode};
use univobs::obstructions::{compute_obstructions, GraphClass, NamedClass};
use univobs::omnivore::ClassSpec;
use univobs::parameters::{self, ParameterKind, BLOCK_AGGREGATE};
use univobs::poset::{rado_star_antichain_witness, rado_truncation, FinitePoset};
use univobs::relations::{Budget, Containment, GraphSet, Relation};
use univobs::universal::{
    approximate, gap_report, p_of_collection, p_of_sequence_with, GapFunction, PrimeCollection,
};
use univobs::verify::{all_graphs, run_suite, Suite};
use univobs::{Error, MultiGraph, Result};

use crate::io::{graph_cell, graph_json, read_graph, read_graph_list, read_input, write_output};
use crate::{Cli, Command, Format, PosetCommand, UniversalCommand};

pub struct Outcome {
    pub text: String,
    /// False only when a verification suite fails.
    pub verified: bool,
}

/// A command result with its configuration and a tabular view.
struct Report {
    command: &'static str,
    config: Map<String, Value>,
    result: Value,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Report {
    fn new(command: &'static str, cli: &Cli) -> Self {
        let mut config = Map::new();
        config.insert("nmax".into(), json!(cli.nmax));
        config.insert("multmax".into(), json!(cli.multmax));
        config.insert("budget_ms".into(), json!(cli.budget_ms));
        config.insert("size".into(), json!("vertices + edges"));
        config.insert("block_aggregate".into(), json!(BLOCK_AGGREGATE));
        Report {
            command,
            config,
            result: Value::Null,
            header: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        self.config.insert(key.into(), value);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let v = json!({
                    "command": self.command,
                    "config": self.config,
                    "result": self.result,
                });
                let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
                s.push('\n');
                s
            }
            Format::Tsv => {
                let mut s = format!("# command\t{}\n", self.command);
                for (k, v) in &self.config {
                    match v {
                        Value::String(text) => s.push_str(&format!("# {k}\t{text}\n")),
                        other => s.push_str(&format!("# {k}\t{other}\n")),
                    }
                }
                s.push_str(&self.header.join("\t"));
                s.push('\n');
                for r in &self.rows {
                    s.push_str(&r.join("\t"));
                    s.push('\n');
                }
                s
            }
        }
    }
}

fn budget(cli: &Cli) -> Budget {
    Budget::default().with_time_limit(cli.budget_ms.map(Duration::from_millis))
}

fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "simple" => Ok(Mode::Simple),
        "multigraph" | "multi" => Ok(Mode::Multigraph),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Simple => "simple",
        Mode::Multigraph => "multigraph",
    }
}

fn collection(cli: &Cli, name: &str) -> Result<PrimeCollection> {
    let c = PrimeCollection::by_name(name)?;
    let b = c
        .budget
        .with_time_limit(cli.budget_ms.map(Duration::from_millis));
    Ok(c.with_budget(b))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut verified = true;
    let report = match &cli.command {
        Command::Contain(a) => {
            let relation: Relation = a.relation.parse()?;
            let mode = match &a.mode {
                Some(m) => parse_mode(m)?,
                None => relation.default_mode(),
            };
            let h = read_graph(&a.h)?;
            let g = read_graph(&a.g)?;
            let c = Containment::new(relation)
                .with_mode(mode)
                .with_budget(budget(cli));
            let contains = c.contains(&h, &g)?;
            let mut r = Report::new("contain", cli);
            r.set("relation", json!(relation.name()));
            r.set("mode", json!(mode_name(mode)));
            r.result = json!({ "contains": contains });
            r.header = vec!["contains"];
            r.rows = vec![vec![contains.to_string()]];
            r
        }
        Command::Param(a) => {
            let g = read_graph(&a.g)?;
            let kinds: Vec<ParameterKind> = if a.all_kinds {
                ParameterKind::plain().to_vec()
            } else {
                let name = a.kind.as_deref().unwrap_or_default();
                if name == "z_apex" {
                    let path =
                        a.z.as_deref()
                            .ok_or_else(|| Error::Invalid("z_apex needs --z".into()))?;
                    let list: GraphSet = read_graph_list(path)?.into_iter().collect();
                    vec![ParameterKind::ZApex(list)]
                } else {
                    vec![name.parse()?]
                }
            };
            let mut r = Report::new("param", cli);
            r.header = vec!["kind", "value", "witness"];
            let mut values = Vec::new();
            for kind in &kinds {
                let s = parameters::solve(kind, &g)?;
                r.rows.push(vec![
                    kind.name().into(),
                    s.value.to_string(),
                    serde_json::to_string(&s.witness).expect("witness serializes"),
                ]);
                values.push(json!({ "kind": kind.name(), "value": s.value, "witness": s.witness }));
            }
            r.result = json!(values);
            r
        }
        Command::Obs(a) => {
            let class = match (&a.class, &a.kind, &a.spec) {
                (Some(c), _, _) => GraphClass::Named(c.parse::<NamedClass>()?),
                (None, Some(kind), _) => GraphClass::Bounded {
                    kind: kind.parse()?,
                    k: a.k.expect("clap requires k with kind"),
                },
                (None, None, Some(path)) => GraphClass::Spec(ClassSpec::parse(&read_input(path)?)?),
                _ => {
                    return Err(Error::Invalid(
                        "obs needs --class, --kind with --k, or --spec".into(),
                    ))
                }
            };
            let relation = match &a.relation {
                Some(r) => r.parse()?,
                None => class.relation(),
            };
            let n_max = cli.nmax.unwrap_or(6);
            let mult_max = cli.multmax.unwrap_or(if relation == Relation::Immersion {
                2
            } else {
                1
            });
            let rep = compute_obstructions(&class, relation, n_max, mult_max)?;
            let mut r = Report::new("obs", cli);
            r.set("nmax", json!(n_max));
            r.set("multmax", json!(mult_max));
            r.set("relation", json!(relation.name()));
            r.set("mode", json!(mode_name(rep.mode)));
            let graphs: Vec<Value> = rep.obstructions.iter().map(graph_json).collect();
            r.result = json!({
                "class": rep.class,
                "members": rep.members,
                "note": rep.note,
                "obstructions": graphs,
                "text": rep.obstruction_texts(),
            });
            r.header = vec!["index", "vertices", "edges", "graph"];
            r.rows = rep
                .obstructions
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    vec![
                        i.to_string(),
                        g.vertex_count().to_string(),
                        g.edge_count().to_string(),
                        graph_cell(g),
                    ]
                })
                .collect();
            r
        }
        Command::Gen(a) => {
            let family = ParametricFamily::by_name(&a.family)?;
            let g = family.get(a.k)?;
            let body = if a.graph6 {
                format!("{}\n", to_graph6(&g)?)
            } else {
                format!("# family {} k {}\n{}", family.name, a.k, to_text(&g))
            };
            if a.out == "-" {
                return Ok(Outcome {
                    text: body,
                    verified,
                });
            }
            write_output(&a.out, &body)?;
            let mut r = Report::new("gen", cli);
            r.set("family", json!(family.name));
            r.result = json!({ "k": a.k, "out": a.out, "graph": graph_json(&g) });
            r.header = vec!["family", "k", "vertices", "edges", "out"];
            r.rows = vec![vec![
                family.name.clone(),
                a.k.to_string(),
                g.vertex_count().to_string(),
                g.edge_count().to_string(),
                a.out.clone(),
            ]];
            r
        }
        Command::Universal(u) => universal(cli, u)?,
        Command::Poset(p) => poset(cli, p)?,
        Command::Verify(a) => {
            let suite: Suite = a.suite.parse()?;
            let rep = run_suite(suite);
            verified = rep.passed;
            let mut r = Report::new("verify", cli);
            r.set("suite", json!(a.suite));
            r.result = serde_json::to_value(&rep).expect("report serializes");
            r.header = vec!["check", "status", "detail"];
            r.rows = rep
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.id.clone(),
                        if c.passed { "PASS" } else { "FAIL" }.into(),
                        c.detail.clone(),
                    ]
                })
                .collect();
            r
        }
    };
    Ok(Outcome {
        text: report.render(cli.format),
        verified,
    })
}

fn collection_config(r: &mut Report, c: &PrimeCollection) {
    r.set("collection", json!(c.name));
    r.set("relation", json!(c.relation.name()));
    r.set("mode", json!(mode_name(c.mode)));
    let bases: Vec<Value> = c
        .families
        .iter()
        .map(|f| json!({ "family": f.name, "base_index": f.base_index }))
        .collect();
    r.set("families", json!(bases));
}

fn universal(cli: &Cli, cmd: &UniversalCommand) -> Result<Report> {
    Ok(match cmd {
        UniversalCommand::Eval {
            collection: name,
            g,
        } => {
            let coll = collection(cli, name)?;
            let g = read_graph(g)?.in_mode(coll.mode);
            let value = p_of_collection(&coll, &g)?;
            let cont = coll.containment();
            let mut r = Report::new("universal eval", cli);
            collection_config(&mut r, &coll);
            r.header = vec!["family", "value"];
            let mut per = Vec::new();
            for f in &coll.families {
                let v = p_of_sequence_with(&cont, f, &g)?;
                r.rows.push(vec![f.name.clone(), v.to_string()]);
                per.push(json!({ "family": f.name, "value": v }));
            }
            r.rows.push(vec!["collection".into(), value.to_string()]);
            r.result = json!({ "value": value, "families": per });
            r
        }
        UniversalCommand::Approx {
            collection: name,
            gap,
            g,
            k,
        } => {
            let coll = collection(cli, name)?;
            let gap: GapFunction = gap.parse()?;
            let g = read_graph(g)?.in_mode(coll.mode);
            let verdict = approximate(&coll, &gap, &g, *k)?;
            let mut r = Report::new("universal approx", cli);
            collection_config(&mut r, &coll);
            r.set("gap", json!(gap.to_string()));
            r.result = json!({ "k": k, "verdict": verdict });
            let (tag, bound) = match verdict {
                univobs::universal::Verdict::Above(b) => ("above", b),
                univobs::universal::Verdict::AtMost(b) => ("at_most", b),
            };
            r.header = vec!["k", "verdict", "bound"];
            r.rows = vec![vec![k.to_string(), tag.into(), bound.to_string()]];
            r
        }
        UniversalCommand::Gap {
            kind,
            collection: name,
            corpus,
        } => {
            let coll = collection(cli, name)?;
            let kind: ParameterKind = kind.parse()?;
            let n_max = cli.nmax.unwrap_or(6);
            let mult_max = cli.multmax.unwrap_or(1);
            let graphs: Vec<MultiGraph> = match corpus {
                Some(path) => read_graph_list(path)?,
                None => all_graphs(n_max, mult_max)?,
            };
            let graphs: Vec<MultiGraph> = graphs.iter().map(|g| g.in_mode(coll.mode)).collect();
            let rep = gap_report(&kind, &coll, &graphs)?;
            let mut r = Report::new("universal gap", cli);
            collection_config(&mut r, &coll);
            r.set("kind", json!(kind.name()));
            match corpus {
                Some(path) => r.set("corpus", json!(path)),
                None => {
                    r.set("nmax", json!(n_max));
                    r.set("multmax", json!(mult_max));
                }
            }
            r.header = vec!["index", "parameter", "collection", "graph"];
            r.rows = rep
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.index.to_string(),
                        row.parameter.to_string(),
                        row.collection.to_string(),
                        graph_cell(&graphs[row.index]),
                    ]
                })
                .collect();
            r.result = serde_json::to_value(&rep).expect("report serializes");
            r
        }
    })
}

fn poset(cli: &Cli, cmd: &PosetCommand) -> Result<Report> {
    Ok(match cmd {
        PosetCommand::Width { input } => {
            let p = FinitePoset::parse(&read_input(input)?)?;
            let width = p.width();
            let mut r = Report::new("poset width", cli);
            let antichain: Option<Vec<String>> = p
                .max_antichain()
                .ok()
                .map(|a| a.iter().map(|&i| p.labels()[i].clone()).collect());
            r.result = json!({ "elements": p.len(), "width": width, "antichain": antichain });
            r.header = vec!["elements", "width"];
            r.rows = vec![vec![p.len().to_string(), width.to_string()]];
            r
        }
        PosetCommand::Chains { input } => {
            let p = FinitePoset::parse(&read_input(input)?)?;
            let chains: Vec<Vec<String>> = p
                .chain_partition()
                .iter()
                .map(|c| c.iter().map(|&i| p.labels()[i].clone()).collect())
                .collect();
            let mut r = Report::new("poset chains", cli);
            r.header = vec!["chain", "elements"];
            r.rows = chains
                .iter()
                .enumerate()
                .map(|(i, c)| vec![i.to_string(), c.join(" ")])
                .collect();
            r.result = json!({ "width": chains.len(), "chains": chains });
            r
        }
        PosetCommand::Rado { n, m } => {
            let p = rado_truncation(*n)?;
            let width = p.width();
            let witness = match m {
                Some(m) => Some(rado_star_antichain_witness(*m, *n)?),
                None => None,
            };
            let mut r = Report::new("poset rado", cli);
            r.set("n", json!(n));
            r.set("m", json!(m));
            r.result = json!({ "elements": p.len(), "width": width, "witness": witness });
            r.header = vec!["n", "elements", "width", "witness"];
            r.rows = vec![vec![
                n.to_string(),
                p.len().to_string(),
                width.to_string(),
                witness.map(|w| w.to_string()).unwrap_or_default(),
            ]];
            r
        }
    })
}
