//! Reference data for `n = 2`, shipped with the crate, and diffs of freshly
//! computed results against it.
//!
//! Every file is line-oriented; `#` starts a comment line.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{build_cn_lattice_with, structural_shape};
use crate::moment_graph::{Degree, MomentGraph};
use crate::nbhd::{gamma, NeighborhoodSource, SchubertUnion};
use crate::qbg::QBGraph;
use crate::space::FlagSpace;
use crate::weyl::FlagLabel;

/// Hand-transcribed moment graph: `u -- v (d1,d2)`.
pub const MOMENT_GRAPH_REFERENCE_N2: &str = include_str!("../golden/moment_graph_reference_n2.txt");
/// Moment graph frozen from the build: `u -- v (d1,d2) root`.
pub const MOMENT_GRAPH_N2: &str = include_str!("../golden/moment_graph_n2.txt");
/// `w d1,d2 component...`
pub const NEIGHBORHOODS_N2: &str = include_str!("../golden/neighborhoods_n2.txt");
/// `w shape-tag`
pub const LATTICE_SHAPES_N2: &str = include_str!("../golden/lattice_shapes_n2.txt");
/// `u -> v classical` or `u -> v (d1,d2)`.
pub const QBG_REFERENCE_N2: &str = include_str!("../golden/qbg_reference_n2.txt");

pub fn data_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Multiset difference between expected and computed lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GoldenDiff {
    pub name: String,
    pub expected: usize,
    pub computed: usize,
    /// In the golden file but not computed.
    pub missing: Vec<String>,
    /// Computed but not in the golden file.
    pub unexpected: Vec<String>,
}

impl GoldenDiff {
    pub fn new(name: &str, expected: Vec<String>, computed: Vec<String>) -> Self {
        let mut counts: BTreeMap<&str, i64> = BTreeMap::new();
        for l in &expected {
            *counts.entry(l).or_default() += 1;
        }
        for l in &computed {
            *counts.entry(l).or_default() -= 1;
        }
        let mut missing = Vec::new();
        let mut unexpected = Vec::new();
        for (line, c) in counts {
            let target = if c > 0 { &mut missing } else { &mut unexpected };
            target.extend(std::iter::repeat_n(line.to_string(), c.unsigned_abs() as usize));
        }
        GoldenDiff { name: name.to_string(), expected: expected.len(), computed: computed.len(), missing, unexpected }
    }

    pub fn passed(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }
}

fn unordered(u: &FlagLabel, v: &FlagLabel) -> (FlagLabel, FlagLabel) {
    if u.sort_key() <= v.sort_key() {
        (*u, *v)
    } else {
        (*v, *u)
    }
}

/// `u -- v (d1,d2)` with the endpoints in vertex order.
pub fn moment_edge_lines(g: &MomentGraph) -> Vec<String> {
    g.edges
        .iter()
        .map(|e| {
            let (u, v) = unordered(&e.u, &e.v);
            format!("{u} -- {v} {}", e.deg)
        })
        .collect()
}

/// [`moment_edge_lines`] with the root appended.
pub fn moment_edge_lines_with_roots(g: &MomentGraph) -> Vec<String> {
    g.edges
        .iter()
        .map(|e| {
            let (u, v) = unordered(&e.u, &e.v);
            format!("{u} -- {v} {} {}", e.deg, e.root)
        })
        .collect()
}

fn normalize_moment_line(line: &str, n: u32) -> Result<String> {
    let parse_err = || crate::Error::Parse { input: line.to_string(), reason: "expected `u -- v (d1,d2)`".into() };
    let mut parts = line.split_whitespace();
    let (u, sep, v, d) = (parts.next(), parts.next(), parts.next(), parts.next());
    let (Some(u), Some("--"), Some(v), Some(d)) = (u, sep, v, d) else {
        return Err(parse_err());
    };
    let (u, v) = unordered(&FlagLabel::parse(u, n)?, &FlagLabel::parse(v, n)?);
    let d = Degree::parse(d.trim_start_matches('(').trim_end_matches(')'))?;
    Ok(format!("{u} -- {v} {d}"))
}

pub fn diff_moment_graph_reference(space: &FlagSpace) -> Result<GoldenDiff> {
    let expected = data_lines(MOMENT_GRAPH_REFERENCE_N2)
        .map(|l| normalize_moment_line(l, 2))
        .collect::<Result<Vec<_>>>()?;
    Ok(GoldenDiff::new("moment graph (reference)", expected, moment_edge_lines(space.graph())))
}

pub fn diff_moment_graph_frozen(space: &FlagSpace) -> GoldenDiff {
    let expected = data_lines(MOMENT_GRAPH_N2).map(str::to_string).collect();
    GoldenDiff::new("moment graph (frozen)", expected, moment_edge_lines_with_roots(space.graph()))
}

pub fn diff_neighborhoods(space: &FlagSpace, source: NeighborhoodSource) -> Result<GoldenDiff> {
    let mut expected = Vec::new();
    let mut computed = Vec::new();
    for line in data_lines(NEIGHBORHOODS_N2) {
        let mut parts = line.split_whitespace();
        let (Some(w), Some(d)) = (parts.next(), parts.next()) else {
            return Err(crate::Error::Parse { input: line.into(), reason: "expected `w d1,d2 components`".into() });
        };
        let w = FlagLabel::parse(w, 2)?;
        let d = Degree::parse(d)?;
        let comps = parts.map(|c| FlagLabel::parse(c, 2)).collect::<Result<Vec<_>>>()?;
        expected.push(format!("{w} {d} {}", SchubertUnion::new(comps)?));
        computed.push(format!("{w} {d} {}", gamma(space, &w, d, source)?));
    }
    Ok(GoldenDiff::new("neighborhoods", expected, computed))
}

pub fn diff_lattice_shapes(space: &FlagSpace, source: NeighborhoodSource) -> Result<GoldenDiff> {
    let expected = data_lines(LATTICE_SHAPES_N2).map(str::to_string).collect();
    let computed = space
        .labels()
        .iter()
        .map(|w| {
            let l = build_cn_lattice_with(space, w, source)?;
            Ok(format!("{w} {}", structural_shape(&l)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GoldenDiff::new("lattice shapes", expected, computed))
}

pub fn diff_qbg_reference(g: &QBGraph) -> GoldenDiff {
    let expected = data_lines(QBG_REFERENCE_N2).map(str::to_string).collect();
    GoldenDiff::new("quantum Bruhat graph (reference)", expected, g.edge_lines())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qbg::{build_qbg, QbgRule};

    #[test]
    fn diff_counts_multiplicity() {
        let d = GoldenDiff::new(
            "t",
            vec!["a".into(), "a".into(), "b".into()],
            vec!["a".into(), "c".into()],
        );
        assert_eq!(d.missing, ["a", "b"]);
        assert_eq!(d.unexpected, ["c"]);
        assert!(!d.passed());
        assert!(GoldenDiff::new("t", vec!["x".into()], vec!["x".into()]).passed());
    }

    #[test]
    fn reference_moment_graph_matches() {
        let space = FlagSpace::new(2).unwrap();
        let d = diff_moment_graph_reference(&space).unwrap();
        assert!(d.passed(), "{d:?}");
        assert_eq!(d.expected, 48);
    }

    #[test]
    fn frozen_moment_graph_matches() {
        let space = FlagSpace::new(2).unwrap();
        let d = diff_moment_graph_frozen(&space);
        assert!(d.passed(), "{d:?}");
    }

    #[test]
    fn neighborhoods_match_both_sources() {
        let space = FlagSpace::new(2).unwrap();
        for source in [NeighborhoodSource::ClosedForm, NeighborhoodSource::Search] {
            assert!(diff_neighborhoods(&space, source).unwrap().passed());
        }
    }

    #[test]
    fn lattice_shapes_match_search_neighborhoods() {
        let space = FlagSpace::new(2).unwrap();
        let d = diff_lattice_shapes(&space, NeighborhoodSource::Search).unwrap();
        assert!(d.passed(), "{d:?}");
        assert_eq!(d.expected, 16);
    }

    #[test]
    fn closed_form_lattice_differs_at_two_bar_three() {
        let space = FlagSpace::new(2).unwrap();
        let d = diff_lattice_shapes(&space, NeighborhoodSource::ClosedForm).unwrap();
        assert_eq!(d.missing, ["2|-3 diamond"]);
        assert_eq!(d.unexpected, ["2|-3 3-chain-(1,0)"]);
    }

    #[test]
    fn qbg_reference_matches_only_under_subcomponent_rule() {
        let space = FlagSpace::new(2).unwrap();
        let g = build_qbg(&space, QbgRule::SubComponent, NeighborhoodSource::ClosedForm).unwrap();
        let d = diff_qbg_reference(&g);
        assert!(d.passed(), "{d:?}");
        let strict = build_qbg(&space, QbgRule::Strict, NeighborhoodSource::ClosedForm).unwrap();
        let d = diff_qbg_reference(&strict);
        assert_eq!(d.missing, ["1|2 -> 1|-3 (0,1)"]);
        assert!(d.unexpected.is_empty());
    }

    #[test]
    fn malformed_reference_lines_are_rejected() {
        assert!(normalize_moment_line("1|2 -> 2|1 (1,0)", 2).is_err());
        assert!(normalize_moment_line("1|2 --", 2).is_err());
        assert_eq!(normalize_moment_line("2|1 -- 1|2 (1,0)", 2).unwrap(), "1|2 -- 2|1 (1,0)");
    }
}
