//! Curve neighborhoods `Gamma_d(X(w))`, computed two ways.
//!
//! [`gamma_bfs`] searches the moment graph: starting from every `u <= w`, it
//! follows chains whose total degree stays `<= d` and returns the Bruhat
//! maximal vertices reached. [`gamma_closed_form`] evaluates the published
//! case table for `IF(1,2;E)` directly. [`cross_check`] compares the two.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::moment_graph::Degree;
use crate::space::FlagSpace;
use crate::weyl::{bruhat_leq, BarValue, FlagLabel, SchubertPoset};

/// `X(v1) u ... u X(vs)`, recorded by the pairwise incomparable `vi`, sorted
/// by `(length, rank(a), rank(b))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct SchubertUnion {
    components: Vec<FlagLabel>,
}

impl SchubertUnion {
    pub fn new(mut components: Vec<FlagLabel>) -> Result<Self> {
        let first = *components.first().ok_or_else(|| domain("a Schubert union needs a component"))?;
        if components.iter().any(|c| c.n() != first.n()) {
            return Err(domain("components of a Schubert union must share the rank"));
        }
        components.sort_by_cached_key(FlagLabel::sort_key);
        components.dedup();
        for (i, x) in components.iter().enumerate() {
            for y in &components[i + 1..] {
                if bruhat_leq(x, y)? || bruhat_leq(y, x)? {
                    return Err(domain(format!("{x} and {y} are comparable")));
                }
            }
        }
        Ok(SchubertUnion { components })
    }

    pub fn single(label: FlagLabel) -> Self {
        SchubertUnion { components: vec![label] }
    }

    /// From an antichain of poset indices; index order is the canonical order.
    pub(crate) fn from_indices(poset: &SchubertPoset, mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        SchubertUnion { components: indices.into_iter().map(|i| poset.label(i)).collect() }
    }

    pub fn components(&self) -> &[FlagLabel] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn n(&self) -> u32 {
        self.components[0].n()
    }

    pub fn contains_component(&self, label: &FlagLabel) -> bool {
        self.components.contains(label)
    }

    /// Inclusion of varieties, with the order looked up in `poset`.
    pub fn leq_in(&self, other: &SchubertUnion, poset: &SchubertPoset) -> Result<bool> {
        for u in &self.components {
            let i = poset.index_of(u)?;
            let mut covered = false;
            for v in &other.components {
                if poset.leq(i, poset.index_of(v)?) {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for SchubertUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Inclusion `U ⊆ V`: every component of `U` lies below some component of `V`.
pub fn union_leq(u: &SchubertUnion, v: &SchubertUnion) -> Result<bool> {
    for x in &u.components {
        let mut covered = false;
        for y in &v.components {
            if bruhat_leq(x, y)? {
                covered = true;
                break;
            }
        }
        if !covered {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximal vertices reachable from the down-set of `w` by a moment-graph
/// chain of degree `<= d`.
///
/// A search state is `(vertex, degree spent)`. Degrees are only partially
/// ordered, so each vertex keeps the antichain of minimal spends seen so far
/// and a new state is dropped when some recorded spend is `<=` it.
pub fn gamma_bfs(space: &FlagSpace, w: &FlagLabel, d: Degree) -> Result<SchubertUnion> {
    let poset = space.poset();
    let graph = space.graph();
    let start = poset.index_of(w)?;

    let mut frontier: Vec<Vec<Degree>> = vec![Vec::new(); poset.len()];
    let mut queue = VecDeque::new();
    for u in poset.down_set(start) {
        frontier[u].push(Degree::ZERO);
        queue.push_back((u, Degree::ZERO));
    }
    while let Some((x, spent)) = queue.pop_front() {
        // stale: a cheaper spend at x superseded this state
        if !frontier[x].contains(&spent) {
            continue;
        }
        for &(y, deg) in graph.neighbors(x) {
            let next = spent + deg;
            if !next.leq(d) || frontier[y].iter().any(|s| s.leq(next)) {
                continue;
            }
            frontier[y].retain(|s| !next.leq(*s));
            frontier[y].push(next);
            queue.push_back((y, next));
        }
    }
    let reached: Vec<usize> = (0..poset.len()).filter(|&i| !frontier[i].is_empty()).collect();
    Ok(SchubertUnion::from_indices(poset, poset.maximal(&reached)))
}

/// The case table for `IF(1,2;E)`:
///
/// 1. `(d1 >= 1, 0)`: `X(a|b)` if `a > b`, else `X(b|a)`;
/// 2. `(0, d2 >= 1)`: `X(a|bar3)` if `a in {2, bar2}`, else `X(a|bar2)`;
/// 3. `(d1 >= 1, 1)`: `X(bar3|2) u X(bar2|1)` for `(1|2)` and `(2|1)`,
///    `X(bar2|bar3)` if `bar2 in {a, b}`, otherwise `X(bar2|max(a, b))`;
/// 4. `(d1 >= 1, d2 >= 2)`: `X(bar2|bar3)`.
pub fn gamma_closed_form(w: &FlagLabel, d: Degree) -> SchubertUnion {
    let (a, b) = (w.a(), w.b());
    let two = BarValue::plain(2);
    let bar2 = BarValue::barred(2);
    let bar3 = BarValue::barred(3);
    let one = |label: FlagLabel| SchubertUnion { components: vec![label] };
    match (d.d1, d.d2) {
        (0, 0) => one(*w),
        (_, 0) => one(if a > b { *w } else { w.with(b, a) }),
        (0, _) => one(if a == two || a == bar2 { w.with(a, bar3) } else { w.with(a, bar2) }),
        (_, 1) => {
            let (one_, two_) = (BarValue::plain(1), two);
            if (a, b) == (one_, two_) || (a, b) == (two_, one_) {
                let mut components = vec![w.with(bar3, two), w.with(bar2, one_)];
                components.sort_by_cached_key(FlagLabel::sort_key);
                SchubertUnion { components }
            } else if a == bar2 || b == bar2 {
                one(w.with(bar2, bar3))
            } else {
                one(w.with(bar2, a.max(b)))
            }
        }
        _ => one(w.with(bar2, bar3)),
    }
}

/// Which computation backs a curve neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeighborhoodSource {
    #[default]
    ClosedForm,
    Search,
}

pub fn gamma(space: &FlagSpace, w: &FlagLabel, d: Degree, source: NeighborhoodSource) -> Result<SchubertUnion> {
    match source {
        NeighborhoodSource::ClosedForm => {
            space.index_of(w)?;
            Ok(gamma_closed_form(w, d))
        }
        NeighborhoodSource::Search => gamma_bfs(space, w, d),
    }
}

/// A single `(w, d)` result, as surfaced by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Neighborhood {
    pub w: FlagLabel,
    pub d: Degree,
    pub components: SchubertUnion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub w: FlagLabel,
    pub d: Degree,
    pub search: SchubertUnion,
    pub closed_form: SchubertUnion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    pub n: u32,
    pub dmax: Degree,
    pub cells: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare search and closed form on every vertex and every `d <= dmax`.
pub fn cross_check(space: &FlagSpace, dmax: Degree) -> Result<CrossCheckReport> {
    let mut cells = 0;
    let mut mismatches = Vec::new();
    for w in space.labels() {
        for d in dmax.below() {
            cells += 1;
            let search = gamma_bfs(space, w, d)?;
            let closed_form = gamma_closed_form(w, d);
            if search != closed_form {
                mismatches.push(Mismatch { w: *w, d, search, closed_form });
            }
        }
    }
    Ok(CrossCheckReport { n: space.n(), dmax, cells, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str, n: u32) -> FlagLabel {
        FlagLabel::parse(s, n).unwrap()
    }

    fn union(labels: &[&str], n: u32) -> SchubertUnion {
        SchubertUnion::new(labels.iter().map(|s| label(s, n)).collect()).unwrap()
    }

    #[test]
    fn union_order_examples() {
        assert!(union_leq(&union(&["1|2"], 2), &union(&["-2|-3"], 2)).unwrap());
        assert!(!union_leq(&union(&["-3|2"], 2), &union(&["-2|1"], 2)).unwrap());
        assert!(!union_leq(&union(&["-2|1"], 2), &union(&["-3|2"], 2)).unwrap());
        assert!(union_leq(&union(&["2|1"], 2), &union(&["-3|2", "-2|1"], 2)).unwrap());
    }

    #[test]
    fn union_rejects_comparable_components() {
        assert!(SchubertUnion::new(vec![label("1|2", 2), label("2|1", 2)]).is_err());
        assert!(SchubertUnion::new(vec![]).is_err());
        assert!(SchubertUnion::new(vec![label("1|2", 2), label("1|2", 3)]).is_err());
    }

    #[test]
    fn search_reproduces_worked_example() {
        let space = FlagSpace::new(2).unwrap();
        let id = label("1|2", 2);
        assert_eq!(gamma_bfs(&space, &id, Degree::new(1, 1)).unwrap(), union(&["-3|2", "-2|1"], 2));
        assert_eq!(gamma_bfs(&space, &id, Degree::new(0, 1)).unwrap(), union(&["1|-2"], 2));
        assert_eq!(gamma_bfs(&space, &id, Degree::new(1, 0)).unwrap(), union(&["2|1"], 2));
        for w in space.labels() {
            assert_eq!(gamma_bfs(&space, w, Degree::ZERO).unwrap(), SchubertUnion::single(*w));
        }
    }

    #[test]
    fn closed_form_examples() {
        let cf = |s: &str, n, d1, d2| gamma_closed_form(&label(s, n), Degree::new(d1, d2)).to_string();
        assert_eq!(cf("1|2", 2, 1, 0), "2|1");
        assert_eq!(cf("-2|1", 2, 0, 5), "-2|-3");
        assert_eq!(cf("1|2", 2, 1, 2), "-2|-3");
        assert_eq!(cf("5|2", 5, 1, 1), "-2|5");
        assert_eq!(cf("1|2", 3, 3, 1), "-3|2 -2|1");
        assert_eq!(cf("3|-4", 3, 1, 1), "-2|-4");
        assert_eq!(cf("-3|-2", 3, 1, 0), "-2|-3");
        assert_eq!(cf("-2|-3", 3, 1, 0), "-2|-3");
    }

    #[test]
    fn closed_form_outputs_are_antichains() {
        for n in 2..=4 {
            for w in crate::weyl::enumerate_labels(n).unwrap() {
                for d in Degree::new(3, 3).below() {
                    let u = gamma_closed_form(&w, d);
                    assert!(SchubertUnion::new(u.components().to_vec()).is_ok());
                }
            }
        }
    }

    // Two-step chains from (a|b) land where the degree pattern says.
    fn two_step(space: &FlagSpace, w: &FlagLabel, first: Degree, second: Degree) -> Vec<FlagLabel> {
        let g = space.graph();
        let i = space.index_of(w).unwrap();
        let mut out = Vec::new();
        for &(j, d) in g.neighbors(i) {
            if d != first {
                continue;
            }
            for &(k, e) in g.neighbors(j) {
                if e == second {
                    out.push(space.labels()[k]);
                }
            }
        }
        out
    }

    #[test]
    fn chains_swap_then_move_second_value() {
        let space = FlagSpace::new(3).unwrap();
        for w in space.labels() {
            for t in two_step(&space, w, Degree::new(1, 0), Degree::new(0, 1)) {
                assert_eq!(t.a(), w.b(), "{w} -> {t}");
                assert_ne!(t.b().letter(), w.b().letter());
            }
        }
    }

    #[test]
    fn chains_move_second_value_then_swap() {
        let space = FlagSpace::new(3).unwrap();
        for w in space.labels() {
            for t in two_step(&space, w, Degree::new(0, 1), Degree::new(1, 0)) {
                assert_eq!(t.b(), w.a(), "{w} -> {t}");
                assert_ne!(t.a().letter(), w.a().letter());
            }
        }
    }

    #[test]
    fn degree_one_one_edges_move_first_value() {
        let space = FlagSpace::new(3).unwrap();
        let g = space.graph();
        for e in g.edges.iter().filter(|e| e.deg == Degree::new(1, 1)) {
            assert_eq!(e.u.b(), e.v.b());
            assert_ne!(e.u.a(), e.v.a());
            if e.u.a().letter() == e.v.a().letter() {
                assert_eq!(e.root.to_string(), "2t1");
            }
        }
    }

    #[test]
    fn cross_check_zero_budget() {
        let space = FlagSpace::new(2).unwrap();
        let r = cross_check(&space, Degree::ZERO).unwrap();
        assert_eq!(r.cells, 16);
        assert!(r.passed());
    }
}
