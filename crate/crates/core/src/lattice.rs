//! Lattices of curve neighborhoods.
//!
//! For a fixed `X(a|b)` the neighborhoods `Gamma_d(X(a|b))`, `d >= (0,0)`,
//! take at most five values, attained at the degrees
//! `(0,0), (1,0), (0,1), (1,1), (1,2)`. Ordered by inclusion they form a
//! distributive lattice of one of seven shapes.

use std::fmt::{self, Write as _};

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{domain, Error, Result};
use crate::moment_graph::Degree;
use crate::nbhd::{gamma, NeighborhoodSource, SchubertUnion};
use crate::space::FlagSpace;
use crate::weyl::{BarValue, FlagLabel};

/// A finite partial order given by its full relation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// From a relation; checks reflexivity, antisymmetry and transitivity.
    pub fn from_relation(size: usize, rel: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                leq[i * size + j] = rel(i, j);
            }
        }
        let p = FinitePoset { size, leq };
        for i in 0..size {
            if !p.leq(i, i) {
                return Err(domain(format!("relation is not reflexive at {i}")));
            }
            for j in 0..size {
                if i != j && p.leq(i, j) && p.leq(j, i) {
                    return Err(domain(format!("relation is not antisymmetric at ({i},{j})")));
                }
                for k in 0..size {
                    if p.leq(i, j) && p.leq(j, k) && !p.leq(i, k) {
                        return Err(domain(format!("relation is not transitive at ({i},{j},{k})")));
                    }
                }
            }
        }
        Ok(p)
    }

    /// Reflexive-transitive closure of the given strict relations `i < j`.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut m = vec![false; size * size];
        for i in 0..size {
            m[i * size + i] = true;
        }
        for &(i, j) in covers {
            if i >= size || j >= size {
                return Err(domain(format!("cover ({i},{j}) out of range")));
            }
            m[i * size + j] = true;
        }
        for k in 0..size {
            for i in 0..size {
                for j in 0..size {
                    if m[i * size + k] && m[k * size + j] {
                        m[i * size + j] = true;
                    }
                }
            }
        }
        Self::from_relation(size, |i, j| m[i * size + j])
    }

    pub fn chain(size: usize) -> Self {
        Self::from_relation(size, |i, j| i <= j).expect("a chain is a partial order")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.size + j]
    }

    fn least(&self, candidates: &[usize]) -> Option<usize> {
        candidates.iter().copied().find(|&c| candidates.iter().all(|&x| self.leq(c, x)))
    }

    fn greatest(&self, candidates: &[usize]) -> Option<usize> {
        candidates.iter().copied().find(|&c| candidates.iter().all(|&x| self.leq(x, c)))
    }

    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        let ub: Vec<_> = (0..self.size).filter(|&c| self.leq(a, c) && self.leq(b, c)).collect();
        self.least(&ub)
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let lb: Vec<_> = (0..self.size).filter(|&c| self.leq(c, a) && self.leq(c, b)).collect();
        self.greatest(&lb)
    }

    pub fn bottom(&self) -> Option<usize> {
        self.least(&(0..self.size).collect::<Vec<_>>())
    }

    pub fn top(&self) -> Option<usize> {
        self.greatest(&(0..self.size).collect::<Vec<_>>())
    }

    /// Every pair has a least upper bound and a greatest lower bound.
    pub fn is_lattice(&self) -> bool {
        (0..self.size)
            .tuple_combinations()
            .all(|(a, b)| self.join(a, b).is_some() && self.meet(a, b).is_some())
    }

    /// `i < j` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.size {
            for j in 0..self.size {
                if i != j
                    && self.leq(i, j)
                    && !(0..self.size).any(|k| k != i && k != j && self.leq(i, k) && self.leq(k, j))
                {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn lattice_ops(&self) -> Result<(Vec<usize>, Vec<usize>)> {
        let n = self.size;
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = self.join(a, b).ok_or_else(|| domain("not a lattice: missing join"))?;
                meet[a * n + b] = self.meet(a, b).ok_or_else(|| domain("not a lattice: missing meet"))?;
            }
        }
        Ok((join, meet))
    }

    /// `a v (b ^ c) = (a v b) ^ (a v c)` for all triples.
    pub fn satisfies_distributive_law(&self) -> Result<bool> {
        let n = self.size;
        let (join, meet) = self.lattice_ops()?;
        let j = |a: usize, b: usize| join[a * n + b];
        let m = |a: usize, b: usize| meet[a * n + b];
        Ok((0..n)
            .cartesian_product(0..n)
            .cartesian_product(0..n)
            .all(|((a, b), c)| j(a, m(b, c)) == m(j(a, b), j(a, c))))
    }

    /// A five-element sublattice (closed under this lattice's join and meet)
    /// isomorphic to `M3` or `N5`, if one exists.
    pub fn forbidden_sublattice(&self) -> Result<Option<(ForbiddenSublattice, [usize; 5])>> {
        let n = self.size;
        let (join, meet) = self.lattice_ops()?;
        for subset in (0..n).combinations(5) {
            let closed = subset.iter().all(|&a| {
                subset
                    .iter()
                    .all(|&b| subset.contains(&join[a * n + b]) && subset.contains(&meet[a * n + b]))
            });
            if !closed {
                continue;
            }
            if let Some(kind) = self.five_element_shape(&subset) {
                let mut arr = [0; 5];
                arr.copy_from_slice(&subset);
                return Ok(Some((kind, arr)));
            }
        }
        Ok(None)
    }

    fn five_element_shape(&self, s: &[usize]) -> Option<ForbiddenSublattice> {
        let bottom = s.iter().copied().find(|&x| s.iter().all(|&y| self.leq(x, y)))?;
        let top = s.iter().copied().find(|&x| s.iter().all(|&y| self.leq(y, x)))?;
        let middle: Vec<_> = s.iter().copied().filter(|&x| x != bottom && x != top).collect();
        let comparable_pairs = middle
            .iter()
            .tuple_combinations()
            .filter(|&(&x, &y)| self.leq(x, y) || self.leq(y, x))
            .count();
        match comparable_pairs {
            0 => Some(ForbiddenSublattice::M3),
            1 => Some(ForbiddenSublattice::N5),
            _ => None,
        }
    }

    /// Distributivity decided twice: by the distributive law and by the
    /// absence of `M3`/`N5` sublattices. The two must agree.
    pub fn is_distributive(&self) -> Result<bool> {
        if !self.is_lattice() {
            return Err(domain("distributivity is only defined for lattices"));
        }
        let by_law = self.satisfies_distributive_law()?;
        let by_sublattices = self.forbidden_sublattice()?.is_none();
        if by_law != by_sublattices {
            return Err(Error::Internal(format!(
                "distributive law says {by_law}, M3/N5 search says {by_sublattices}"
            )));
        }
        Ok(by_law)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ForbiddenSublattice {
    M3,
    N5,
}

/// Degrees whose neighborhoods exhaust every value of `Gamma_d(X(w))`.
pub const REPRESENTATIVE_DEGREES: [Degree; 5] =
    [Degree::new(0, 0), Degree::new(1, 0), Degree::new(0, 1), Degree::new(1, 1), Degree::new(1, 2)];

/// The poset `{Gamma_d(X(base))}_d` under inclusion.
#[derive(Debug, Clone)]
pub struct CnLattice {
    pub base: FlagLabel,
    /// Distinct neighborhoods, in order of first appearance along
    /// [`REPRESENTATIVE_DEGREES`]; element 0 is `X(base)`.
    pub elements: Vec<SchubertUnion>,
    /// First representative degree producing each element.
    pub witnesses: Vec<Degree>,
    pub order: FinitePoset,
}

pub fn build_cn_lattice(space: &FlagSpace, base: &FlagLabel) -> Result<CnLattice> {
    build_cn_lattice_with(space, base, NeighborhoodSource::ClosedForm)
}

pub fn build_cn_lattice_with(space: &FlagSpace, base: &FlagLabel, source: NeighborhoodSource) -> Result<CnLattice> {
    let mut elements: Vec<SchubertUnion> = Vec::new();
    let mut witnesses = Vec::new();
    for d in REPRESENTATIVE_DEGREES {
        let g = gamma(space, base, d, source)?;
        if !elements.contains(&g) {
            elements.push(g);
            witnesses.push(d);
        }
    }
    let poset = space.poset();
    let mut rel = vec![false; elements.len() * elements.len()];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            rel[i * elements.len() + j] = x.leq_in(y, poset)?;
        }
    }
    let size = elements.len();
    let order = FinitePoset::from_relation(size, |i, j| rel[i * size + j])?;
    Ok(CnLattice { base: *base, elements, witnesses, order })
}

pub fn is_lattice(l: &CnLattice) -> bool {
    l.order.is_lattice()
}

pub fn is_distributive(l: &CnLattice) -> Result<bool> {
    l.order.is_distributive()
}

/// The seven lattice shapes that occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Shape {
    /// Only for the top cell.
    Trivial,
    Chain2,
    /// `X(a|b) < Gamma_(0,1) < top`.
    Chain3ViaSecond,
    /// `X(a|b) < Gamma_(1,0) < top`.
    Chain3ViaFirst,
    Chain4,
    Diamond,
    DiamondPlusTop,
}

impl Shape {
    pub const ALL: [Shape; 7] = [
        Shape::Trivial,
        Shape::Chain2,
        Shape::Chain3ViaSecond,
        Shape::Chain3ViaFirst,
        Shape::Chain4,
        Shape::Diamond,
        Shape::DiamondPlusTop,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Shape::Trivial => "trivial",
            Shape::Chain2 => "2-chain",
            Shape::Chain3ViaSecond => "3-chain-(0,1)",
            Shape::Chain3ViaFirst => "3-chain-(1,0)",
            Shape::Chain4 => "4-chain",
            Shape::Diamond => "diamond",
            Shape::DiamondPlusTop => "diamond-plus-top",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Shape> {
        Shape::ALL.into_iter().find(|s| s.tag() == tag)
    }

    /// Whether `(a|b)` satisfies the table's condition for this shape.
    pub fn predicate(self, w: &FlagLabel) -> bool {
        let (a, b) = (w.a(), w.b());
        let bar2 = BarValue::barred(2);
        let bar3 = BarValue::barred(3);
        let outside = |x: BarValue| x != bar2 && x != bar3;
        match self {
            Shape::Trivial => a == bar2 && b == bar3,
            Shape::Chain2 => (a == bar2 && b != bar3) || (a == bar3 && b == bar2),
            Shape::Chain3ViaSecond => a == bar3 && b != bar2,
            Shape::Chain3ViaFirst => b == bar2 && a != bar3,
            Shape::Chain4 => outside(a) && outside(b) && a > b,
            Shape::Diamond => b == bar3 && a != bar2,
            Shape::DiamondPlusTop => outside(a) && outside(b) && a < b,
        }
    }

    /// Shapes whose predicate `w` satisfies; exactly one when the table
    /// partitions the vertex set.
    pub fn matching(w: &FlagLabel) -> Vec<Shape> {
        Shape::ALL.into_iter().filter(|s| s.predicate(w)).collect()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for Shape {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.tag())
    }
}

/// Shape read off the order structure, without looking at the base label.
pub fn structural_shape(l: &CnLattice) -> Result<Shape> {
    let p = &l.order;
    let size = p.size();
    let is_chain = (0..size).tuple_combinations().all(|(i, j)| p.leq(i, j) || p.leq(j, i));
    let unexpected = || Error::Verification(format!("unexpected lattice shape for {}", l.base));
    Ok(match (size, is_chain) {
        (1, _) => Shape::Trivial,
        (2, true) => Shape::Chain2,
        (3, true) => {
            let middle = (0..3)
                .find(|&i| Some(i) != p.bottom() && Some(i) != p.top())
                .ok_or_else(unexpected)?;
            match l.witnesses[middle] {
                Degree { d1: 0, d2: 1 } => Shape::Chain3ViaSecond,
                Degree { d1: 1, d2: 0 } => Shape::Chain3ViaFirst,
                _ => return Err(unexpected()),
            }
        }
        (4, true) => Shape::Chain4,
        (4, false) => Shape::Diamond,
        (5, false) => {
            let hasse = p.hasse_edges();
            let bottom = p.bottom().ok_or_else(unexpected)?;
            if hasse.iter().filter(|&&(i, _)| i == bottom).count() == 2 && hasse.len() == 5 {
                Shape::DiamondPlusTop
            } else {
                return Err(unexpected());
            }
        }
        _ => return Err(unexpected()),
    })
}

/// Classify the lattice and check that the base label satisfies the
/// matching condition of the shape table.
pub fn classify_shape(l: &CnLattice) -> Result<Shape> {
    let shape = structural_shape(l)?;
    if !shape.predicate(&l.base) {
        return Err(Error::Verification(format!(
            "{} has lattice shape {shape} but satisfies {:?}",
            l.base,
            Shape::matching(&l.base).iter().map(|s| s.tag()).collect::<Vec<_>>()
        )));
    }
    Ok(shape)
}

impl CnLattice {
    pub fn to_json(&self) -> Result<serde_json::Value> {
        let shape = structural_shape(self)?;
        Ok(serde_json::json!({
            "schema": "oddflag.lattice.v1",
            "base": self.base,
            "elements": self.elements,
            "witnesses": self.witnesses,
            "hasse": self.order.hasse_edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "shape": shape,
            "predicted": Shape::matching(&self.base),
        }))
    }

    /// Hasse diagram, bottom to top.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let id = self.base.to_string().replace('-', "m").replace('|', "_");
        writeln!(out, "digraph lattice_{id} {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for (i, (e, d)) in self.elements.iter().zip(&self.witnesses).enumerate() {
            let text = e.components().iter().map(|c| format!("X({c})")).join(" ∪ ");
            writeln!(out, "  e{i} [label=\"{text}\", tooltip=\"d={d}\"];").unwrap();
        }
        for (i, j) in self.order.hasse_edges() {
            writeln!(out, "  e{i} -> e{j} [arrowhead=none];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> FinitePoset {
        FinitePoset::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap()
    }

    fn n5() -> FinitePoset {
        // 0 < c(1) < a(2) < 1(4), 0 < b(3) < 1(4)
        FinitePoset::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap()
    }

    #[test]
    fn chains_are_distributive_lattices() {
        for k in 1..=6 {
            let c = FinitePoset::chain(k);
            assert!(c.is_lattice());
            assert!(c.is_distributive().unwrap());
        }
    }

    #[test]
    fn missing_join_is_not_a_lattice() {
        let p = FinitePoset::from_covers(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(!p.is_lattice());
        assert!(p.is_distributive().is_err());
    }

    #[test]
    fn m3_and_n5_are_not_distributive() {
        let m = m3();
        assert!(m.is_lattice());
        assert!(!m.is_distributive().unwrap());
        assert_eq!(m.forbidden_sublattice().unwrap().unwrap().0, ForbiddenSublattice::M3);
        let n = n5();
        assert!(n.is_lattice());
        assert!(!n.is_distributive().unwrap());
        assert_eq!(n.forbidden_sublattice().unwrap().unwrap().0, ForbiddenSublattice::N5);
    }

    #[test]
    fn boolean_lattice_is_distributive() {
        // subsets of {x, y, z} by bitmask
        let p = FinitePoset::from_relation(8, |i, j| i & j == i).unwrap();
        assert!(p.is_distributive().unwrap());
        // M3 sits inside the partition lattice of a 3-set only once we add it;
        // M3 with an extra top still fails.
        let q = FinitePoset::from_covers(6, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (4, 5)]).unwrap();
        assert!(!q.is_distributive().unwrap());
    }

    #[test]
    fn from_relation_rejects_non_orders() {
        assert!(FinitePoset::from_relation(2, |_, _| true).is_err());
        assert!(FinitePoset::from_relation(2, |i, j| i != j).is_err());
        assert!(FinitePoset::from_relation(3, |i, j| i == j || (i, j) == (0, 1) || (i, j) == (1, 2)).is_err());
    }

    #[test]
    fn n2_examples() {
        let space = FlagSpace::new(2).unwrap();
        let lat = |s: &str| build_cn_lattice(&space, &FlagLabel::parse(s, 2).unwrap()).unwrap();

        let top = lat("-2|-3");
        assert_eq!(top.elements.len(), 1);
        assert_eq!(classify_shape(&top).unwrap(), Shape::Trivial);

        let l = lat("-2|1");
        assert_eq!(l.elements.iter().map(|e| e.to_string()).collect::<Vec<_>>(), ["-2|1", "-2|-3"]);
        assert!(l.order.leq(0, 1));
        assert_eq!(classify_shape(&l).unwrap(), Shape::Chain2);

        let id = lat("1|2");
        assert_eq!(id.elements.len(), 5);
        assert_eq!(id.witnesses, REPRESENTATIVE_DEGREES);
        assert!(!id.order.leq(1, 2) && !id.order.leq(2, 1));
        assert!(id.order.leq(1, 3) && id.order.leq(2, 3) && id.order.leq(3, 4));
        assert_eq!(classify_shape(&id).unwrap(), Shape::DiamondPlusTop);

        assert_eq!(classify_shape(&lat("-3|2")).unwrap(), Shape::Chain3ViaSecond);
        assert_eq!(classify_shape(&lat("1|-2")).unwrap(), Shape::Chain3ViaFirst);
        assert_eq!(classify_shape(&lat("1|-3")).unwrap(), Shape::Diamond);
        assert_eq!(classify_shape(&lat("3|1")).unwrap(), Shape::Chain4);
    }

    #[test]
    fn representative_degrees_exhaust_search_values() {
        for n in 2..=4 {
            let space = FlagSpace::new(n).unwrap();
            for w in space.labels() {
                let l = build_cn_lattice_with(&space, w, NeighborhoodSource::Search).unwrap();
                for d in Degree::new(3, 3).below() {
                    let g = crate::nbhd::gamma_bfs(&space, w, d).unwrap();
                    assert!(l.elements.contains(&g), "n={n} {w} d={d}");
                }
            }
        }
    }

    #[test]
    fn shape_tags_round_trip() {
        for s in Shape::ALL {
            assert_eq!(Shape::from_tag(s.tag()), Some(s));
        }
    }

    #[test]
    fn json_and_dot_exports() {
        let space = FlagSpace::new(2).unwrap();
        let l = build_cn_lattice(&space, &FlagLabel::parse("1|2", 2).unwrap()).unwrap();
        let j = l.to_json().unwrap();
        assert_eq!(j["shape"], "diamond-plus-top");
        assert_eq!(j["elements"][3], serde_json::json!(["-3|2", "-2|1"]));
        assert_eq!(j["hasse"].as_array().unwrap().len(), 5);
        let dot = l.to_dot();
        assert_eq!(dot.matches("arrowhead=none").count(), 5);
        assert!(dot.contains("X(-3|2) ∪ X(-2|1)"));
    }
}
