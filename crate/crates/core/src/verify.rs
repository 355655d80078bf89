//! One-shot verification suite over `n = 2..=n_max`.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{check_rank, Result};
use crate::golden::{self, GoldenDiff};
use crate::lattice::{build_cn_lattice_with, classify_shape, is_distributive, structural_shape, Shape};
use crate::moment_graph::Degree;
use crate::nbhd::{cross_check, NeighborhoodSource};
use crate::qbg::{build_qbg, moment_discrepancies, property_o_verdict, QbgRule};
use crate::space::FlagSpace;
use crate::weyl::dimension_report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyOptions {
    pub n_max: u32,
    pub rule: QbgRule,
    /// Backing for lattices and the quantum Bruhat graph.
    pub source: NeighborhoodSource,
    /// Largest degree swept when comparing search and closed form.
    pub dmax: Degree,
}

impl VerifyOptions {
    pub fn new(n_max: u32) -> Self {
        VerifyOptions { n_max, rule: QbgRule::default(), source: NeighborhoodSource::default(), dmax: Degree::new(2, 2) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub passed: bool,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub options: VerifyOptions,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: &str, n: Option<u32>, passed: bool, detail: Value) -> Check {
    Check { name: name.to_string(), n, passed, detail }
}

fn golden_check(diff: GoldenDiff) -> Check {
    let passed = diff.passed();
    check(&format!("golden: {}", diff.name), Some(2), passed, json!(diff))
}

fn rank_checks(n: u32, opts: &VerifyOptions) -> Result<Vec<Check>> {
    let space = FlagSpace::new(n)?;
    let mut out = Vec::new();

    let dims = dimension_report(n)?;
    let count = space.labels().len();
    out.push(check(
        "enumeration",
        Some(n),
        count == 4 * (n as usize).pow(2) && dims.odd_dimension == 4 * n - 2,
        json!({ "labels": count, "dimension": dims }),
    ));

    let report = cross_check(&space, opts.dmax)?;
    out.push(check(
        "curve neighborhoods: search vs closed form",
        Some(n),
        report.passed(),
        json!({ "cells": report.cells, "mismatches": report.mismatches }),
    ));

    let mut failures = Vec::new();
    let mut shapes = std::collections::BTreeMap::<Shape, usize>::new();
    for w in space.labels() {
        let l = build_cn_lattice_with(&space, w, opts.source)?;
        let shape = structural_shape(&l).ok();
        if let Some(s) = shape {
            *shapes.entry(s).or_default() += 1;
        }
        let matching = Shape::matching(w);
        let reason = if !l.order.is_lattice() {
            Some("not a lattice".to_string())
        } else if !is_distributive(&l)? {
            Some("not distributive".to_string())
        } else if matching.len() != 1 {
            Some(format!("{} shape predicates match", matching.len()))
        } else {
            classify_shape(&l).err().map(|e| e.to_string())
        };
        if let Some(reason) = reason {
            failures.push(json!({ "w": w, "shape": shape, "predicted": matching, "reason": reason }));
        }
    }
    let shapes: Value = shapes.iter().map(|(s, c)| (s.tag().to_string(), json!(c))).collect();
    out.push(check(
        "lattices",
        Some(n),
        failures.is_empty(),
        json!({ "source": opts.source, "shapes": shapes, "failures": failures }),
    ));

    let g = build_qbg(&space, opts.rule, opts.source)?;
    match property_o_verdict(&g) {
        Ok(v) => out.push(check("property O", Some(n), v.holds, json!(v))),
        Err(e) => out.push(check("property O", Some(n), false, json!({ "error": e.to_string() }))),
    }

    if n == 2 {
        let ds = moment_discrepancies(&space, &g);
        out.push(check("quantum edges outside the moment graph", Some(n), true, json!(ds)));
        out.push(golden_check(golden::diff_moment_graph_reference(&space)?));
        out.push(golden_check(golden::diff_moment_graph_frozen(&space)));
        out.push(golden_check(golden::diff_neighborhoods(&space, NeighborhoodSource::ClosedForm)?));
        out.push(golden_check(golden::diff_lattice_shapes(&space, opts.source)?));
        out.push(golden_check(golden::diff_qbg_reference(&g)));
    }
    Ok(out)
}

/// Run every check; failures are recorded in the report, not returned as
/// errors. Errors mean the suite could not run.
pub fn run_verification(opts: &VerifyOptions) -> Result<VerificationReport> {
    check_rank(opts.n_max)?;
    let per_rank: Vec<Result<Vec<Check>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (2..=opts.n_max).map(|n| scope.spawn(move || rank_checks(n, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("verification thread panicked")).collect()
    });
    let mut checks = Vec::new();
    for r in per_rank {
        checks.extend(r?);
    }
    Ok(VerificationReport {
        schema: "oddflag.verify.v1",
        options: *opts,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}
