//! Plain directed graphs on `0..len`: reachability, strong connectivity and
//! the period (gcd of closed-walk lengths).

use std::collections::VecDeque;

use crate::error::{domain, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(len: usize) -> Self {
        Digraph { out: vec![Vec::new(); len], inc: vec![Vec::new(); len] }
    }

    pub fn from_edges(len: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Digraph::new(len);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Parallel edges are kept once.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.len() || v >= self.len() {
            return Err(domain(format!("edge ({u},{v}) out of range for {} vertices", self.len())));
        }
        if !self.out[u].contains(&v) {
            self.out[u].push(v);
            self.inc[v].push(u);
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.out.len()
    }

    pub fn is_empty(&self) -> bool {
        self.out.is_empty()
    }

    pub fn successors(&self, u: usize) -> &[usize] {
        &self.out[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    fn bfs(adj: &[Vec<usize>], root: usize) -> Vec<Option<usize>> {
        let mut depth = vec![None; adj.len()];
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = depth[u].unwrap_or(0);
            for &v in &adj[u] {
                if depth[v].is_none() {
                    depth[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        depth
    }

    /// Every vertex reaches vertex 0 and is reached from it.
    pub fn is_strongly_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        Self::bfs(&self.out, 0).iter().all(Option::is_some) && Self::bfs(&self.inc, 0).iter().all(Option::is_some)
    }

    /// Period of a strongly connected graph: the gcd over all edges `u -> v`
    /// of `depth(u) + 1 - depth(v)`, with BFS depths from vertex 0.
    pub fn cycle_length_gcd(&self) -> Result<u64> {
        if !self.is_strongly_connected() {
            return Err(domain("cycle length gcd needs a strongly connected graph"));
        }
        if self.is_empty() {
            return Err(domain("the empty graph has no cycles"));
        }
        let depth = Self::bfs(&self.out, 0);
        let mut g = 0u64;
        for (u, succ) in self.out.iter().enumerate() {
            for &v in succ {
                let du = depth[u].unwrap_or(0) as i64;
                let dv = depth[v].unwrap_or(0) as i64;
                g = gcd(g, (du + 1 - dv).unsigned_abs());
            }
        }
        if g == 0 {
            return Err(domain("graph has no cycles"));
        }
        Ok(g)
    }

    /// Whether `path` (closed: last vertex returns to the first) uses only
    /// edges of the graph.
    pub fn has_cycle(&self, path: &[usize]) -> bool {
        !path.is_empty() && path.iter().zip(path.iter().cycle().skip(1)).all(|(&u, &v)| self.has_edge(u, v))
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Lengths of all simple cycles of length at most `max_len`.
    pub(crate) fn simple_cycle_lengths(g: &Digraph, max_len: usize) -> Vec<usize> {
        fn extend(g: &Digraph, start: usize, path: &mut Vec<usize>, max_len: usize, out: &mut Vec<usize>) {
            let last = *path.last().unwrap();
            for &v in g.successors(last) {
                if v == start {
                    out.push(path.len());
                } else if v > start && !path.contains(&v) && path.len() < max_len {
                    path.push(v);
                    extend(g, start, path, max_len, out);
                    path.pop();
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..g.len() {
            extend(g, s, &mut vec![s], max_len, &mut out);
        }
        out
    }

    #[test]
    fn two_cycle_has_period_two() {
        let g = Digraph::from_edges(2, [(0, 1), (1, 0)]).unwrap();
        assert!(g.is_strongly_connected());
        assert_eq!(g.cycle_length_gcd().unwrap(), 2);
    }

    #[test]
    fn triangle_has_period_three() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.cycle_length_gcd().unwrap(), 3);
        assert!(g.has_cycle(&[1, 2, 0]));
        assert!(!g.has_cycle(&[0, 2, 1]));
    }

    #[test]
    fn triangle_with_chord_is_aperiodic() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 2), (2, 0), (1, 0)]).unwrap();
        assert_eq!(g.cycle_length_gcd().unwrap(), 1);
    }

    #[test]
    fn single_vertex() {
        let g = Digraph::new(1);
        assert!(g.is_strongly_connected());
        assert!(g.cycle_length_gcd().is_err());
        let looped = Digraph::from_edges(1, [(0, 0)]).unwrap();
        assert_eq!(looped.cycle_length_gcd().unwrap(), 1);
    }

    #[test]
    fn path_is_not_strongly_connected() {
        let g = Digraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(!g.is_strongly_connected());
        assert!(g.cycle_length_gcd().is_err());
        assert!(g.clone().add_edge(0, 9).is_err());
    }

    #[test]
    fn period_matches_simple_cycles_on_small_graphs() {
        // two cycles of lengths 4 and 6 sharing vertex 0
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
        edges.extend([(0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 0)]);
        let g = Digraph::from_edges(9, edges).unwrap();
        let lens = simple_cycle_lengths(&g, 8);
        assert_eq!(lens.iter().fold(0, |a, &b| gcd(a, b as u64)), 2);
        assert_eq!(g.cycle_length_gcd().unwrap(), 2);
    }
}
