//! Plain-text instance format and solver result records.
//!
//! ```text
//! c optional comments
//! p pfree <n> <m>
//! v <id> <weight>      (ids are 1-based; a vertex without a v line weighs 1)
//! e <u> <v>
//! ```
//!
//! Exactly `m` edge lines must follow the header.

use std::collections::HashSet;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::eds::EdsStats;
use crate::graph::{Graph, VertexSet, WeightedGraph};
use crate::mwis::{Solution, SolveStats};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: vertex id {id} outside 1..={n}")]
    IdOutOfRange { line: usize, id: usize, n: usize },
}

fn parse_err(line: usize, msg: impl Into<String>) -> IoError {
    IoError::Parse { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, IoError> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn vertex_id(tok: Option<&str>, line: usize, n: usize) -> Result<usize, IoError> {
    let id: usize = field(tok, line, "vertex id")?;
    if id == 0 || id > n {
        return Err(IoError::IdOutOfRange { line, id, n });
    }
    Ok(id - 1)
}

pub fn parse_instance(text: &str) -> Result<WeightedGraph, IoError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut weights = Vec::new();
    let mut weight_set = Vec::new();
    let mut edges = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        if kind == "c" {
            continue;
        }
        match (kind, header) {
            ("p", None) => {
                let fmt: String = field(toks.next(), line, "format name")?;
                if fmt != "pfree" {
                    return Err(parse_err(line, format!("unknown format `{fmt}`")));
                }
                let n: usize = field(toks.next(), line, "vertex count")?;
                let m: usize = field(toks.next(), line, "edge count")?;
                header = Some((n, m, line));
                weights = vec![1i64; n];
                weight_set = vec![false; n];
            }
            ("p", Some(_)) => return Err(parse_err(line, "second header line")),
            (_, None) => return Err(parse_err(line, "expected header `p pfree n m` first")),
            ("v", Some((n, _, _))) => {
                let v = vertex_id(toks.next(), line, n)?;
                let w: i64 = field(toks.next(), line, "weight")?;
                if std::mem::replace(&mut weight_set[v], true) {
                    return Err(parse_err(line, format!("weight of vertex {} given twice", v + 1)));
                }
                weights[v] = w;
            }
            ("e", Some((n, _, _))) => {
                let u = vertex_id(toks.next(), line, n)?;
                let v = vertex_id(toks.next(), line, n)?;
                if u == v {
                    return Err(IoError::SelfLoop { line, v: v + 1 });
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return Err(IoError::DuplicateEdge {
                        line,
                        u: u + 1,
                        v: v + 1,
                    });
                }
                edges.push((u, v));
            }
            (other, _) => return Err(parse_err(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(parse_err(line, "trailing tokens"));
        }
    }

    let (n, m, _) = header.ok_or_else(|| parse_err(last_line.max(1), "missing header"))?;
    if edges.len() != m {
        return Err(parse_err(
            last_line,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    let graph = Graph::from_edges(n, edges).expect("edges validated while parsing");
    Ok(WeightedGraph::new(graph, weights).expect("one weight per vertex"))
}

/// Canonical text form: header, one `v` line per vertex, edges sorted.
pub fn write_instance(gw: &WeightedGraph) -> String {
    let g = &gw.graph;
    let mut out = format!("p pfree {} {}\n", g.n(), g.edge_count());
    for (v, w) in gw.weights.iter().enumerate() {
        out.push_str(&format!("v {} {}\n", v + 1, w));
    }
    let mut edges: Vec<_> = g.edges().map(|(u, v)| (u.min(v), u.max(v))).collect();
    edges.sort_unstable();
    for (u, v) in edges {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Problem {
    Mwis,
    Eds,
}

/// Outcome of a solver run as printed by the command-line tool.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRecord {
    pub problem: Problem,
    /// `optimal`, `no-solution`, or an error code such as `budget-exceeded`.
    pub status: String,
    pub weight: Option<i64>,
    /// 1-based vertex ids in increasing order.
    pub solution: Vec<usize>,
    pub stats: Value,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("refusing to report an invalid {problem:?} solution: {reason}")]
pub struct InvalidSolution {
    pub problem: Problem,
    pub reason: String,
}

fn one_based(s: &VertexSet) -> Vec<usize> {
    s.iter().map(|v| v + 1).collect()
}

fn check_weight(gw: &WeightedGraph, sol: &Solution, problem: Problem) -> Result<(), InvalidSolution> {
    let actual = gw.weight_of(&sol.chosen);
    if actual != sol.weight {
        return Err(InvalidSolution {
            problem,
            reason: format!("claimed weight {} but the set weighs {actual}", sol.weight),
        });
    }
    Ok(())
}

impl ResultRecord {
    /// Re-checks independence and weight before building the record.
    pub fn mwis(gw: &WeightedGraph, sol: &Solution, stats: &SolveStats) -> Result<Self, InvalidSolution> {
        if !gw.graph.is_independent(&sol.chosen) {
            return Err(InvalidSolution {
                problem: Problem::Mwis,
                reason: "set is not independent".into(),
            });
        }
        check_weight(gw, sol, Problem::Mwis)?;
        Ok(ResultRecord {
            problem: Problem::Mwis,
            status: "optimal".into(),
            weight: Some(sol.weight),
            solution: one_based(&sol.chosen),
            stats: mwis_stats_json(stats),
        })
    }

    pub fn eds(gw: &WeightedGraph, sol: Option<&Solution>, stats: &EdsStats) -> Result<Self, InvalidSolution> {
        let Some(sol) = sol else {
            return Ok(ResultRecord {
                problem: Problem::Eds,
                status: "no-solution".into(),
                weight: None,
                solution: Vec::new(),
                stats: eds_stats_json(stats),
            });
        };
        if !gw.graph.is_efficient_dominating(&sol.chosen) {
            return Err(InvalidSolution {
                problem: Problem::Eds,
                reason: "set is not an efficient dominating set".into(),
            });
        }
        check_weight(gw, sol, Problem::Eds)?;
        Ok(ResultRecord {
            problem: Problem::Eds,
            status: "optimal".into(),
            weight: Some(sol.weight),
            solution: one_based(&sol.chosen),
            stats: eds_stats_json(stats),
        })
    }

    pub fn error(problem: Problem, code: &str, message: &str) -> Self {
        ResultRecord {
            problem,
            status: code.to_string(),
            weight: None,
            solution: Vec::new(),
            stats: json!({ "message": message }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn to_plain(&self) -> String {
        let problem = match self.problem {
            Problem::Mwis => "mwis",
            Problem::Eds => "eds",
        };
        let weight = self.weight.map_or_else(|| "-".to_string(), |w| w.to_string());
        let ids: Vec<String> = self.solution.iter().map(usize::to_string).collect();
        format!(
            "problem {problem}\nstatus {}\nweight {weight}\nsolution {}\nstats {}\n",
            self.status,
            ids.join(" "),
            self.stats
        )
    }
}

pub fn mwis_stats_json(s: &SolveStats) -> Value {
    json!({
        "findis_nodes": s.findis_nodes,
        "findisnuke_nodes": s.findisnuke_nodes,
        "fallback_calls": s.fallback_calls,
        "below_gamma_events": s.below_gamma_events,
        "max_depth": s.max_depth,
        "seed_steps": s.seed_steps,
        "small_pmc_violations": s.small_pmc_violations,
        "seed_rejections": s.seed_rejections,
        "nuke_decrease_violations": s.nuke_decrease_violations,
        "min_hit_ratio": s.min_hit_ratio.map(|r| r.to_string()),
    })
}

pub fn eds_stats_json(s: &EdsStats) -> Value {
    json!({
        "components": s.components,
        "bags": s.bags,
        "state_counts": s.state_counts,
        "max_states": s.max_states,
        "branch_nodes": s.branch_nodes,
        "shrink_warnings": s.shrink_warnings,
        "fallbacks": s.fallbacks,
    })
}
