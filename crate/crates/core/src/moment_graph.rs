//! The degree-labelled moment graph of `IF(1,2;E)`.
//!
//! Vertices are the odd labels. Each root `alpha` in `R+ \ R+_P` joins `w`
//! to `w s_alpha`; the curve it represents has one of four degrees:
//!
//! | roots                                   | degree  | DOT colour |
//! |-----------------------------------------|---------|------------|
//! | `t1-t2`                                 | `(1,0)` | green      |
//! | `t2 ± tj` (j >= 3), `2t2`               | `(0,1)` | orange     |
//! | `t1 ± tj` (j >= 3), `2t1`               | `(1,1)` | blue       |
//! | `t1+t2`                                 | `(1,2)` | purple     |

use std::fmt::{self, Write as _};
use std::ops::Add;

use serde::{Serialize, Serializer};

use crate::error::{check_rank, domain, Result};
use crate::weyl::{enumerate_even_labels, enumerate_labels, FlagLabel, Reflection, Root};

/// An effective curve class `(d1, d2)`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree {
    pub d1: u32,
    pub d2: u32,
}

impl Degree {
    pub const ZERO: Degree = Degree { d1: 0, d2: 0 };

    pub const fn new(d1: u32, d2: u32) -> Self {
        Degree { d1, d2 }
    }

    /// Componentwise `<=`.
    pub fn leq(self, other: Degree) -> bool {
        self.d1 <= other.d1 && self.d2 <= other.d2
    }

    /// Componentwise maximum.
    pub fn join(self, other: Degree) -> Degree {
        Degree::new(self.d1.max(other.d1), self.d2.max(other.d2))
    }

    pub fn is_zero(self) -> bool {
        self == Degree::ZERO
    }

    /// Every degree `<= self`, `d1` outermost.
    pub fn below(self) -> impl Iterator<Item = Degree> {
        (0..=self.d1).flat_map(move |d1| (0..=self.d2).map(move |d2| Degree::new(d1, d2)))
    }

    /// Parse `d1,d2`.
    pub fn parse(s: &str) -> Result<Degree> {
        let err = || crate::Error::Parse { input: s.to_string(), reason: "expected `d1,d2`".into() };
        let (x, y) = s.split_once(',').ok_or_else(err)?;
        Ok(Degree::new(x.trim().parse().map_err(|_| err())?, y.trim().parse().map_err(|_| err())?))
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        Degree::new(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

impl Serialize for Degree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.d1, self.d2].serialize(serializer)
    }
}

pub fn degree_of_root(root: Root) -> Result<Degree> {
    if root.is_levi() {
        return Err(domain(format!("{root} is a root of the Levi factor and has no degree")));
    }
    Ok(match root {
        Root::Diff(1, 2) => Degree::new(1, 0),
        Root::Sum(1, 2) => Degree::new(1, 2),
        _ if root.first_index() == 2 => Degree::new(0, 1),
        _ => Degree::new(1, 1),
    })
}

/// Degree of a chain of reflections: counts per degree class, with each
/// `t1+t2` step contributing `(1,2)`.
pub fn chain_degree(roots: &[Root]) -> Result<Degree> {
    let mut counts = [0u32; 4];
    for &root in roots {
        let slot = match degree_of_root(root)? {
            Degree { d1: 1, d2: 0 } => 0,
            Degree { d1: 0, d2: 1 } => 1,
            Degree { d1: 1, d2: 1 } => 2,
            _ => 3,
        };
        counts[slot] += 1;
    }
    let [c10, c01, c11, c12] = counts;
    Ok(Degree::new(c10 + c11 + c12, c01 + c11 + 2 * c12))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MomentEdge {
    pub u: FlagLabel,
    pub v: FlagLabel,
    pub deg: Degree,
    pub root: Root,
}

/// Unoriented moment graph. Edges are stored once per unordered pair and
/// root; parallel edges from different roots are kept.
#[derive(Debug, Clone, Serialize)]
pub struct MomentGraph {
    pub n: u32,
    pub vertices: Vec<FlagLabel>,
    pub edges: Vec<MomentEdge>,
    #[serde(skip)]
    adjacency: Vec<Vec<(usize, Degree)>>,
}

pub fn build_moment_graph(n: u32) -> Result<MomentGraph> {
    check_rank(n)?;
    MomentGraph::build(n, enumerate_labels(n)?, false)
}

/// Moment graph of the ambient even manifold `IF(1,2; C^{2n+2})`.
pub fn build_even_moment_graph(n: u32) -> Result<MomentGraph> {
    check_rank(n)?;
    MomentGraph::build(n, enumerate_even_labels(n)?, true)
}

impl MomentGraph {
    fn build(n: u32, vertices: Vec<FlagLabel>, even: bool) -> Result<Self> {
        let index: std::collections::HashMap<_, _> = vertices.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let roots = Root::non_levi_roots(n);
        let mut edges = Vec::new();
        for (i, w) in vertices.iter().enumerate() {
            for &root in &roots {
                let target = match w.reflect(root)? {
                    Reflection::Label(l) => l,
                    Reflection::EvenOnly(l) if even => l,
                    Reflection::EvenOnly(_) | Reflection::Fixed => continue,
                };
                let j = index[&target];
                if i < j {
                    edges.push(MomentEdge { u: *w, v: target, deg: degree_of_root(root)?, root });
                }
            }
        }
        Ok(Self::from_parts(n, vertices, edges))
    }

    fn from_parts(n: u32, vertices: Vec<FlagLabel>, edges: Vec<MomentEdge>) -> Self {
        let index: std::collections::HashMap<_, _> = vertices.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let mut adjacency = vec![Vec::new(); vertices.len()];
        for e in &edges {
            let (i, j) = (index[&e.u], index[&e.v]);
            adjacency[i].push((j, e.deg));
            adjacency[j].push((i, e.deg));
        }
        MomentGraph { n, vertices, edges, adjacency }
    }

    /// Full subgraph on the odd vertices, keeping vertex order.
    pub fn restrict_to_odd(&self) -> MomentGraph {
        let vertices: Vec<_> = self.vertices.iter().copied().filter(FlagLabel::is_odd).collect();
        let edges = self.edges.iter().copied().filter(|e| e.u.is_odd() && e.v.is_odd()).collect();
        Self::from_parts(self.n, vertices, edges)
    }

    /// Neighbours of vertex `i` (by vertex index) with edge degrees, one
    /// entry per edge.
    pub fn neighbors(&self, i: usize) -> &[(usize, Degree)] {
        &self.adjacency[i]
    }

    /// Whether some edge (any root) joins `u` and `v`.
    pub fn joins(&self, u: &FlagLabel, v: &FlagLabel) -> bool {
        self.edges.iter().any(|e| (e.u == *u && e.v == *v) || (e.u == *v && e.v == *u))
    }

    pub fn count_by_degree(&self, deg: Degree) -> usize {
        self.edges.iter().filter(|e| e.deg == deg).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "oddflag.moment-graph.v1",
            "n": self.n,
            "vertices": self.vertices,
            "edges": self.edges,
        })
    }
}

pub fn degree_color(deg: Degree) -> &'static str {
    match (deg.d1, deg.d2) {
        (1, 0) => "green",
        (0, 1) => "orange",
        (1, 1) => "blue",
        (1, 2) => "purple",
        _ => "black",
    }
}

/// Graphviz rendering, optionally restricted to edges of one degree. Nodes
/// are always all emitted, in vertex order.
pub fn to_dot(g: &MomentGraph, only: Option<Degree>) -> String {
    let mut out = String::new();
    writeln!(out, "graph moment_graph_n{} {{", g.n).unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for v in &g.vertices {
        writeln!(out, "  \"{v}\" [label=\"({v})\"];").unwrap();
    }
    for e in g.edges.iter().filter(|e| only.is_none_or(|d| d == e.deg)) {
        writeln!(
            out,
            "  \"{}\" -- \"{}\" [color={}, label=\"{}\", tooltip=\"{}\"];",
            e.u,
            e.v,
            degree_color(e.deg),
            e.deg,
            e.root
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> FlagLabel {
        FlagLabel::parse(s, 2).unwrap()
    }

    #[test]
    fn root_degrees() {
        assert_eq!(degree_of_root(Root::Diff(1, 2)).unwrap(), Degree::new(1, 0));
        assert_eq!(degree_of_root(Root::Long(2)).unwrap(), Degree::new(0, 1));
        assert_eq!(degree_of_root(Root::Sum(1, 2)).unwrap(), Degree::new(1, 2));
        assert_eq!(degree_of_root(Root::Sum(2, 4)).unwrap(), Degree::new(0, 1));
        assert_eq!(degree_of_root(Root::Diff(1, 3)).unwrap(), Degree::new(1, 1));
        assert_eq!(degree_of_root(Root::Long(1)).unwrap(), Degree::new(1, 1));
        assert!(degree_of_root(Root::Diff(3, 4)).is_err());
    }

    #[test]
    fn degree_classes_partition() {
        for n in 2..=6 {
            let mut sizes = std::collections::BTreeMap::new();
            for r in Root::non_levi_roots(n) {
                *sizes.entry(degree_of_root(r).unwrap()).or_insert(0u32) += 1;
            }
            let expect = [(Degree::new(0, 1), 2 * n - 1), (Degree::new(1, 0), 1), (Degree::new(1, 1), 2 * n - 1), (Degree::new(1, 2), 1)];
            assert_eq!(sizes.into_iter().collect::<Vec<_>>(), expect);
        }
    }

    #[test]
    fn chain_degrees() {
        assert_eq!(chain_degree(&[]).unwrap(), Degree::ZERO);
        assert_eq!(chain_degree(&[Root::Diff(1, 2), Root::Long(2)]).unwrap(), Degree::new(1, 1));
        assert_eq!(chain_degree(&[Root::Sum(1, 2)]).unwrap(), Degree::new(1, 2));
        assert!(chain_degree(&[Root::Long(3)]).is_err());
    }

    #[test]
    fn neighbours_of_identity() {
        let g = build_moment_graph(2).unwrap();
        let id = label("1|2");
        let mut got: Vec<_> = g
            .edges
            .iter()
            .filter(|e| e.u == id || e.v == id)
            .map(|e| format!("{}@{}", if e.u == id { e.v } else { e.u }, e.deg))
            .collect();
        got.sort();
        assert_eq!(got, ["-3|2@(1,1)", "1|-2@(0,1)", "1|-3@(0,1)", "1|3@(0,1)", "2|1@(1,0)", "3|2@(1,1)"]);
    }

    #[test]
    fn n2_edge_counts() {
        let g = build_moment_graph(2).unwrap();
        assert_eq!(g.count_by_degree(Degree::new(1, 0)), 8);
        assert_eq!(g.count_by_degree(Degree::new(0, 1)), 18);
        assert_eq!(g.count_by_degree(Degree::new(1, 1)), 18);
        assert_eq!(g.count_by_degree(Degree::new(1, 2)), 4);
        assert_eq!(g.edges.len(), 48);
        assert!(g.edges.iter().all(|e| e.u != e.v));
    }

    #[test]
    fn odd_graph_is_full_subgraph_of_even_graph() {
        for n in 2..=3 {
            let odd = build_moment_graph(n).unwrap();
            let restricted = build_even_moment_graph(n).unwrap().restrict_to_odd();
            assert_eq!(odd.vertices, restricted.vertices);
            let key = |e: &MomentEdge| {
                let (a, b) = if e.u < e.v { (e.u, e.v) } else { (e.v, e.u) };
                (a, b, e.root)
            };
            let mut x: Vec<_> = odd.edges.iter().map(key).collect();
            let mut y: Vec<_> = restricted.edges.iter().map(key).collect();
            x.sort();
            y.sort();
            assert_eq!(x, y);
        }
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = build_moment_graph(3).unwrap();
        for i in 0..g.vertices.len() {
            for &(j, d) in g.neighbors(i) {
                assert!(g.neighbors(j).iter().filter(|&&(k, e)| k == i && e == d).count() >= 1);
            }
        }
    }

    #[test]
    fn dot_output() {
        let g = build_moment_graph(2).unwrap();
        let dot = to_dot(&g, None);
        assert_eq!(dot.lines().filter(|l| l.contains("[label=\"(")).count(), 16);
        assert_eq!(dot, to_dot(&g, None));
        let purple = to_dot(&g, Some(Degree::new(1, 2)));
        assert_eq!(purple.lines().filter(|l| l.contains(" -- ")).count(), 4);
    }

    #[test]
    fn degree_parse() {
        assert_eq!(Degree::parse("1,2").unwrap(), Degree::new(1, 2));
        assert_eq!(Degree::parse(" 0 , 3 ").unwrap(), Degree::new(0, 3));
        assert!(Degree::parse("1;2").is_err());
        assert!(Degree::parse("-1,2").is_err());
    }
}
