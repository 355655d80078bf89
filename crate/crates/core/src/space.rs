use crate::error::Result;
use crate::moment_graph::{build_moment_graph, MomentGraph};
use crate::weyl::{FlagLabel, SchubertPoset};

/// Everything precomputed for one rank `n`: the Bruhat poset and the moment
/// graph on the same vertex order. Immutable once built.
#[derive(Debug, Clone)]
pub struct FlagSpace {
    poset: SchubertPoset,
    graph: MomentGraph,
}

impl FlagSpace {
    pub fn new(n: u32) -> Result<Self> {
        let poset = SchubertPoset::new(n)?;
        let graph = build_moment_graph(n)?;
        debug_assert_eq!(poset.labels(), &graph.vertices[..]);
        Ok(FlagSpace { poset, graph })
    }

    pub fn n(&self) -> u32 {
        self.poset.n()
    }

    pub fn poset(&self) -> &SchubertPoset {
        &self.poset
    }

    pub fn graph(&self) -> &MomentGraph {
        &self.graph
    }

    pub fn labels(&self) -> &[FlagLabel] {
        self.poset.labels()
    }

    pub fn index_of(&self, label: &FlagLabel) -> Result<usize> {
        self.poset.index_of(label)
    }

    pub fn top(&self) -> FlagLabel {
        FlagLabel::top(self.n()).expect("rank checked at construction")
    }
}
