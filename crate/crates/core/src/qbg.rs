//! The combinatorial quantum Bruhat graph and Property O.
//!
//! Vertices are the Schubert labels. There are two kinds of edge:
//!
//! - classical `u -> v` when `v` is a lower Bruhat cover of `u`;
//! - quantum `u -> v` of degree `d != 0` when
//!   `l(v) - l(u) = 2 d1 + (2n-1) d2 - 1` and `v` sits under the curve
//!   neighborhood `Gamma_d(X(u))`.
//!
//! "Sits under" is read as `v <= some component` by default
//! ([`QbgRule::SubComponent`]); [`QbgRule::Strict`] requires `v` to be a
//! component itself.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::digraph::{gcd, Digraph};
use crate::error::{check_rank, Error, Result};
use crate::moment_graph::{degree_color, Degree};
use crate::nbhd::{gamma, NeighborhoodSource};
use crate::space::FlagSpace;
use crate::weyl::{BarValue, FlagLabel};

/// First Chern class `c1 = a1 [X(div1)] + a2 [X(div2)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub n: u32,
    pub a1: u64,
    pub a2: u64,
    pub div1: FlagLabel,
    pub div2: FlagLabel,
    pub fano_index: u64,
}

pub fn chern_data(n: u32) -> Result<ChernData> {
    check_rank(n)?;
    let div1 = FlagLabel::new(n, BarValue::barred(3), BarValue::barred(2))?;
    let second = if n == 2 { BarValue::plain(3) } else { BarValue::barred(4) };
    let div2 = FlagLabel::new(n, BarValue::barred(2), second)?;
    let (a1, a2) = (2, 2 * u64::from(n) - 1);
    Ok(ChernData { n, a1, a2, div1, div2, fano_index: gcd(a1, a2) })
}

/// `l(v) - l(u)` required of a quantum edge of degree `d`.
pub fn length_gap(n: u32, d: Degree) -> i64 {
    2 * i64::from(d.d1) + (2 * i64::from(n) - 1) * i64::from(d.d2) - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum QbgRule {
    #[default]
    SubComponent,
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Classical,
    Quantum(Degree),
}

impl Serialize for EdgeKind {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(match self {
            EdgeKind::Classical => "classical",
            EdgeKind::Quantum(_) => "quantum",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QbgEdge {
    pub u: FlagLabel,
    pub v: FlagLabel,
    pub kind: EdgeKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deg: Option<Degree>,
}

impl QbgEdge {
    fn new(u: FlagLabel, v: FlagLabel, kind: EdgeKind) -> Self {
        let deg = match kind {
            EdgeKind::Classical => None,
            EdgeKind::Quantum(d) => Some(d),
        };
        QbgEdge { u, v, kind, deg }
    }
}

#[derive(Debug, Clone)]
pub struct QBGraph {
    pub n: u32,
    pub rule: QbgRule,
    pub vertices: Vec<FlagLabel>,
    /// Classical edges first, then quantum edges by degree; within a block
    /// by source then target vertex index.
    pub edges: Vec<QbgEdge>,
    digraph: Digraph,
}

/// Degrees `d != 0` whose length gap fits inside the poset.
pub fn quantum_degrees(n: u32, max_length: u32) -> Vec<Degree> {
    let bound = i64::from(max_length);
    let mut out = Vec::new();
    for d2 in 0.. {
        if length_gap(n, Degree::new(0, d2)) > bound {
            break;
        }
        for d1 in 0.. {
            let d = Degree::new(d1, d2);
            if length_gap(n, d) > bound {
                break;
            }
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    out.sort();
    out
}

/// Edges `u -> v` produced by the degree-`d` rule, as vertex index pairs.
/// At `d = 0` this is the classical rule.
pub fn rule_edges(space: &FlagSpace, d: Degree, rule: QbgRule, source: NeighborhoodSource) -> Result<Vec<(usize, usize)>> {
    let poset = space.poset();
    let gap = length_gap(space.n(), d);
    let mut out = Vec::new();
    for u in 0..poset.len() {
        let nbhd = gamma(space, &poset.label(u), d, source)?;
        let comps = nbhd
            .components()
            .iter()
            .map(|c| poset.index_of(c))
            .collect::<Result<Vec<_>>>()?;
        for v in 0..poset.len() {
            if i64::from(poset.length(v)) - i64::from(poset.length(u)) != gap {
                continue;
            }
            let under = match rule {
                QbgRule::SubComponent => comps.iter().any(|&c| poset.leq(v, c)),
                QbgRule::Strict => comps.contains(&v),
            };
            if under {
                out.push((u, v));
            }
        }
    }
    Ok(out)
}

pub fn build_qbg(space: &FlagSpace, rule: QbgRule, source: NeighborhoodSource) -> Result<QBGraph> {
    let poset = space.poset();
    let mut edges = Vec::new();
    for u in 0..poset.len() {
        for v in poset.lower_covers(u) {
            edges.push(QbgEdge::new(poset.label(u), poset.label(v), EdgeKind::Classical));
        }
    }
    for d in quantum_degrees(space.n(), poset.max_length()) {
        for (u, v) in rule_edges(space, d, rule, source)? {
            edges.push(QbgEdge::new(poset.label(u), poset.label(v), EdgeKind::Quantum(d)));
        }
    }
    let mut digraph = Digraph::new(poset.len());
    for e in &edges {
        digraph.add_edge(poset.index_of(&e.u)?, poset.index_of(&e.v)?)?;
    }
    Ok(QBGraph { n: space.n(), rule, vertices: poset.labels().to_vec(), edges, digraph })
}

impl QBGraph {
    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    pub fn edges_between(&self, u: &FlagLabel, v: &FlagLabel) -> impl Iterator<Item = &QbgEdge> {
        let (u, v) = (*u, *v);
        self.edges.iter().filter(move |e| e.u == u && e.v == v)
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.digraph.is_strongly_connected()
    }

    pub fn cycle_length_gcd(&self) -> Result<u64> {
        self.digraph.cycle_length_gcd()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph qbg_n{} {{", self.n).unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for v in &self.vertices {
            writeln!(out, "  \"{v}\" [label=\"({v})\"];").unwrap();
        }
        for e in &self.edges {
            match e.kind {
                EdgeKind::Classical => writeln!(out, "  \"{}\" -> \"{}\" [color=black];", e.u, e.v),
                EdgeKind::Quantum(d) => writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [color={}, style=dashed, label=\"{d}\"];",
                    e.u,
                    e.v,
                    degree_color(d)
                ),
            }
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self, verdict: Option<&PropertyOVerdict>) -> serde_json::Value {
        serde_json::json!({
            "schema": "oddflag.qbg.v1",
            "n": self.n,
            "rule": self.rule,
            "edges": self.edges,
            "verdict": verdict,
        })
    }

    /// Text form matching the golden edge lists: `u -> v classical` or
    /// `u -> v (d1,d2)`.
    pub fn edge_lines(&self) -> Vec<String> {
        self.edges
            .iter()
            .map(|e| match e.kind {
                EdgeKind::Classical => format!("{} -> {} classical", e.u, e.v),
                EdgeKind::Quantum(d) => format!("{} -> {} {d}", e.u, e.v),
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCycle {
    pub vertices: Vec<FlagLabel>,
    /// Kind of each edge `vertices[i] -> vertices[i+1]`, wrapping around.
    pub kinds: Vec<EdgeKind>,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyOVerdict {
    pub n: u32,
    pub strongly_connected: bool,
    pub gcd: Option<u64>,
    pub fano_index: u64,
    pub holds: bool,
    pub witness_cycles: Vec<WitnessCycle>,
}

/// `(1|2) -> (2|1) -> (1|2)` and
/// `(1|2) -> (1|bar3) -> (1|bar4) -> ... -> (1|bar(n+1)) -> (1|n+1) -> ... -> (1|3) -> (1|2)`.
pub fn witness_cycle_paths(n: u32) -> Result<Vec<Vec<FlagLabel>>> {
    check_rank(n)?;
    let l = |a: BarValue, b: BarValue| FlagLabel::new(n, a, b);
    let (one, two) = (BarValue::plain(1), BarValue::plain(2));
    let short = vec![l(one, two)?, l(two, one)?];
    let mut long = vec![l(one, two)?];
    for k in 3..=n + 1 {
        long.push(l(one, BarValue::barred(k))?);
    }
    for k in (3..=n + 1).rev() {
        long.push(l(one, BarValue::plain(k))?);
    }
    Ok(vec![short, long])
}

fn verify_cycle(g: &QBGraph, path: &[FlagLabel]) -> Result<WitnessCycle> {
    let mut kinds = Vec::with_capacity(path.len());
    for (i, u) in path.iter().enumerate() {
        let v = &path[(i + 1) % path.len()];
        let kind = g
            .edges_between(u, v)
            .map(|e| e.kind)
            .min()
            .ok_or_else(|| Error::Verification(format!("witness cycle edge {u} -> {v} is missing at n={}", g.n)))?;
        kinds.push(kind);
    }
    Ok(WitnessCycle { vertices: path.to_vec(), kinds, length: path.len() })
}

/// Strong connectivity, the cycle-length gcd against the Fano index, and
/// the two explicit witness cycles checked edge by edge.
pub fn property_o_verdict(g: &QBGraph) -> Result<PropertyOVerdict> {
    let chern = chern_data(g.n)?;
    let strongly_connected = g.is_strongly_connected();
    let gcd = if strongly_connected { Some(g.cycle_length_gcd()?) } else { None };
    let witness_cycles = witness_cycle_paths(g.n)?
        .iter()
        .map(|p| verify_cycle(g, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(PropertyOVerdict {
        n: g.n,
        strongly_connected,
        gcd,
        fano_index: chern.fano_index,
        holds: strongly_connected && gcd == Some(chern.fano_index),
        witness_cycles,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub u: FlagLabel,
    pub v: FlagLabel,
    pub d: Degree,
}

/// Quantum edges whose endpoints are not joined by any single moment-graph
/// edge, in edge order.
pub fn moment_discrepancies(space: &FlagSpace, g: &QBGraph) -> Vec<Discrepancy> {
    g.edges
        .iter()
        .filter_map(|e| match e.kind {
            EdgeKind::Quantum(d) if !space.graph().joins(&e.u, &e.v) => Some(Discrepancy { u: e.u, v: e.v, d }),
            _ => None,
        })
        .collect()
}
