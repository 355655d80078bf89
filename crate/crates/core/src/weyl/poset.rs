use std::collections::HashMap;

use serde::Serialize;

use super::label::{BarValue, FlagLabel};
use crate::error::{check_rank, domain, Result};

fn alphabet(n: u32) -> impl Iterator<Item = BarValue> + Clone {
    (1..=n + 1).flat_map(|k| [BarValue::plain(k), BarValue::barred(k)])
}

fn sorted_by_key(mut labels: Vec<FlagLabel>) -> Vec<FlagLabel> {
    labels.sort_by_cached_key(FlagLabel::sort_key);
    labels
}

/// Every odd label `(a|b)` of rank `n`, sorted by `(length, rank(a), rank(b))`.
pub fn enumerate_labels(n: u32) -> Result<Vec<FlagLabel>> {
    check_rank(n)?;
    let labels = alphabet(n)
        .flat_map(|a| alphabet(n).map(move |b| (a, b)))
        .filter_map(|(a, b)| FlagLabel::new(n, a, b).ok())
        .collect();
    Ok(sorted_by_key(labels))
}

/// Labels of the ambient even manifold (`bar(1)` allowed), same ordering.
pub fn enumerate_even_labels(n: u32) -> Result<Vec<FlagLabel>> {
    check_rank(n)?;
    let labels = alphabet(n)
        .flat_map(|a| alphabet(n).map(move |b| (a, b)))
        .filter_map(|(a, b)| FlagLabel::new_even(n, a, b).ok())
        .collect();
    Ok(sorted_by_key(labels))
}

pub fn bruhat_leq(u: &FlagLabel, v: &FlagLabel) -> Result<bool> {
    if u.n() != v.n() {
        return Err(domain(format!("cannot compare {u} (n={}) with {v} (n={})", u.n(), v.n())));
    }
    Ok(u.minimal_representative().bruhat_leq(&v.minimal_representative()))
}

/// All odd `u <= w`, including `w`.
pub fn down_set(w: &FlagLabel) -> Vec<FlagLabel> {
    let top = w.minimal_representative();
    enumerate_labels(w.n())
        .expect("label carries a valid rank")
        .into_iter()
        .filter(|u| u.minimal_representative().bruhat_leq(&top))
        .collect()
}

/// Lower covers of `v`: every `u <= v` with `length(u) = length(v) - 1`.
pub fn covers(v: &FlagLabel) -> Vec<FlagLabel> {
    let len = v.length();
    if len == 0 {
        return Vec::new();
    }
    down_set(v).into_iter().filter(|u| u.length() + 1 == len).collect()
}

/// The Bruhat poset of odd labels for one rank, with lengths and the order
/// relation precomputed. Indices follow [`enumerate_labels`].
#[derive(Debug, Clone)]
pub struct SchubertPoset {
    n: u32,
    labels: Vec<FlagLabel>,
    lengths: Vec<u32>,
    index: HashMap<FlagLabel, usize>,
    leq: Vec<bool>,
}

impl SchubertPoset {
    pub fn new(n: u32) -> Result<Self> {
        Self::from_labels(n, enumerate_labels(n)?)
    }

    /// Poset on the even labels, used by the comparison with the ambient manifold.
    pub fn new_even(n: u32) -> Result<Self> {
        Self::from_labels(n, enumerate_even_labels(n)?)
    }

    fn from_labels(n: u32, labels: Vec<FlagLabel>) -> Result<Self> {
        let reps: Vec<_> = labels.iter().map(|l| l.minimal_representative()).collect();
        let lengths = reps.iter().map(|r| r.length()).collect();
        let doubled: Vec<_> = reps.iter().map(|r| r.doubled()).collect();
        let size = labels.len();
        let mut leq = vec![false; size * size];
        for i in 0..size {
            for j in 0..size {
                leq[i * size + j] = super::perm::type_a_bruhat_leq(&doubled[i], &doubled[j]);
            }
        }
        let index = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        Ok(SchubertPoset { n, labels, lengths, index, leq })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[FlagLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> FlagLabel {
        self.labels[i]
    }

    pub fn index_of(&self, label: &FlagLabel) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| domain(format!("{label} (n={}) is not a vertex for n={}", label.n(), self.n)))
    }

    pub fn length(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.labels.len() + j]
    }

    pub fn max_length(&self) -> u32 {
        self.lengths.iter().copied().max().unwrap_or(0)
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.leq(u, i)).collect()
    }

    pub fn lower_covers(&self, i: usize) -> Vec<usize> {
        let len = self.lengths[i];
        (0..self.len())
            .filter(|&u| self.lengths[u] + 1 == len && self.leq(u, i))
            .collect()
    }

    /// Maximal elements of `set`, in index order.
    pub fn maximal(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set
            .iter()
            .copied()
            .filter(|&x| !set.iter().any(|&y| y != x && self.leq(x, y)))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Dimension of the odd manifold computed by root counting, next to the
/// closed formulas printed in the literature for comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub n: u32,
    /// `length(bar2|bar3)`.
    pub odd_dimension: u32,
    /// `length(bar1|bar2)`, the ambient even manifold.
    pub even_dimension: u32,
    pub codimension: i64,
    /// The stated formula `4n - 6` for the odd dimension.
    pub stated_odd_dimension: i64,
    /// The stated formula `4n - 4` for the even dimension.
    pub stated_even_dimension: i64,
    pub discrepancy: bool,
}

pub fn dimension_report(n: u32) -> Result<DimensionReport> {
    check_rank(n)?;
    let odd_dimension = FlagLabel::top(n)?.length();
    let even_dimension = FlagLabel::new_even(n, BarValue::barred(1), BarValue::barred(2))?.length();
    let stated_odd_dimension = 4 * n as i64 - 6;
    let stated_even_dimension = 4 * n as i64 - 4;
    Ok(DimensionReport {
        n,
        odd_dimension,
        even_dimension,
        codimension: even_dimension as i64 - odd_dimension as i64,
        stated_odd_dimension,
        stated_even_dimension,
        discrepancy: odd_dimension as i64 != stated_odd_dimension || even_dimension as i64 != stated_even_dimension,
    })
}
