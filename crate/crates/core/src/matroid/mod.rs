//! Binary and graphic matroids over at most 64 ground elements, and the
//! predicates relating them to partial linear spaces.
//!
//! A model of a space is read off by labels: point `x` maps to the ground
//! element named `x`. Every predicate first checks that this is a bijection.

mod binary;
mod graph;
mod graphic;
mod model;
mod parallel;
mod search;

pub use binary::BinaryMatroid;
pub use graph::{chordless_circuits, extendible_triangles, is_wheely, wheel_of, wheels, LabeledGraph, Wheel};
pub use graphic::{is_graphic, same_matroid, GraphicResult, DEFAULT_GRAPHIC_BOUND};
pub use model::{
    check_circuit_friendly, check_cycle_preserving, check_line_pres, check_rank_model, check_triangle_friendly,
    label_map, CircuitFriendlyReport, CycleCheck, CyclePresReport, RankModelReport,
};
pub use parallel::parallel_connection;
pub use search::{
    binary_model_search, enumerate_binary_models, graph_trigger_check, ModelSearch, TriggerReport,
    DEFAULT_MODEL_POINT_BOUND,
};

use crate::bits;
use crate::pls::PlsError;

/// Largest ground set for exhaustive circuit enumeration.
pub const DEFAULT_CIRCUIT_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("labels do not form a bijection: {0}")]
    NotABijection(String),
    #[error("matroid is not simple")]
    NotSimple,
    #[error("some line maps to an independent set")]
    NotLinePreserving,
    #[error("grounds share element {0} besides the connecting element")]
    GroundOverlap(String),
    #[error("element {0} is missing")]
    MissingElement(String),
    #[error("element {0} is a loop")]
    LoopElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("column {0} does not fit dimension {1}")]
    DimensionMismatch(String, usize),
    #[error("graph has a loop at {0}")]
    GraphLoop(String),
    #[error("graph has parallel edges {0} and {1}")]
    ParallelEdges(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{0} elements exceed the supported 64")]
    TooManyElements(usize),
    #[error(transparent)]
    Pls(#[from] PlsError),
}

/// A matroid on ground `0..size()`, given by its rank function on masks.
pub trait Matroid {
    fn size(&self) -> usize;
    fn element_name(&self, e: usize) -> &str;
    fn rank_of(&self, set: u64) -> usize;

    fn ground(&self) -> u64 {
        bits::full(self.size())
    }

    fn rank(&self) -> usize {
        self.rank_of(self.ground())
    }

    fn element_index(&self, name: &str) -> Option<usize> {
        (0..self.size()).find(|&e| self.element_name(e) == name)
    }

    fn is_independent(&self, set: u64) -> bool {
        self.rank_of(set) == bits::count(set)
    }

    /// Minimal dependent: removing any single element leaves an independent set.
    fn is_circuit(&self, set: u64) -> bool {
        let k = bits::count(set);
        k > 0 && self.rank_of(set) == k - 1 && bits::ones(set).all(|e| self.is_independent(set & !bits::bit(e)))
    }

    fn closure(&self, set: u64) -> u64 {
        let r = self.rank_of(set);
        (0..self.size()).filter(|&e| self.rank_of(set | bits::bit(e)) == r).fold(set, |m, e| m | bits::bit(e))
    }

    /// Circuits inside `set`, ordered by size then mask.
    fn circuits_within(&self, set: u64, bound: usize) -> Result<Vec<u64>, MatroidError> {
        if bits::count(set) > bound {
            return Err(MatroidError::BoundExceeded(format!(
                "circuit enumeration over {} elements exceeds the bound {bound}",
                bits::count(set)
            )));
        }
        let mut out: Vec<u64> = bits::submasks(set).filter(|&s| self.is_circuit(s)).collect();
        out.sort_by_key(|&s| (bits::count(s), s));
        Ok(out)
    }

    fn circuits(&self) -> Result<Vec<u64>, MatroidError> {
        self.circuits_within(self.ground(), DEFAULT_CIRCUIT_BOUND)
    }

    /// No loops and no parallel pairs.
    fn is_simple(&self) -> bool {
        let n = self.size();
        (0..n).all(|e| self.rank_of(bits::bit(e)) == 1)
            && (0..n).all(|e| (e + 1..n).all(|f| self.rank_of(bits::bit(e) | bits::bit(f)) == 2))
    }

    fn names_of(&self, set: u64) -> Vec<String> {
        bits::ones(set).map(|e| self.element_name(e).to_string()).collect()
    }
}

/// Connected components of a matroid: elements sharing a circuit. Computed
/// from fundamental circuits of a greedy basis, which determine them.
pub fn matroid_components<M: Matroid + ?Sized>(m: &M) -> Vec<u64> {
    let n = m.size();
    let mut basis = 0u64;
    for e in 0..n {
        if m.is_independent(basis | bits::bit(e)) {
            basis |= bits::bit(e);
        }
    }
    let mut uf = petgraph::unionfind::UnionFind::<usize>::new(n);
    for e in bits::ones(m.ground() & !basis) {
        if m.rank_of(bits::bit(e)) == 0 {
            continue;
        }
        // b lies on the fundamental circuit of e iff swapping b for e keeps a basis
        for b in bits::ones(basis) {
            if m.is_independent(basis & !bits::bit(b) | bits::bit(e)) {
                uf.union(e, b);
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, u64> = Default::default();
    for e in 0..n {
        *groups.entry(uf.find(e)).or_default() |= bits::bit(e);
    }
    let mut out: Vec<u64> = groups.into_values().collect();
    out.sort_by_key(|m| m.trailing_zeros());
    out
}
