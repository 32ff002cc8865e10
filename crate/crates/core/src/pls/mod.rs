//! Partial linear spaces whose lines have exactly three points.
//!
//! Points are stored in natural label order (`"2" < "10"`), lines as
//! ascending index triples in lexicographic order. At most 64 points.

mod augment;
mod classify;
mod cycles;
mod iso;
mod links;
mod split;
mod structure;
mod triangles;

pub use augment::{
    add_path, recognize_augmented_ump, replay_history, AddPathResult, AugmentRecord, AugmentedUmp,
    DEFAULT_AUGMENT_LINE_BOUND,
};
pub use classify::{classify_pls, classify_with_bound, is_testifying_ordering, sparse_ordering, PlsProfile};
pub use cycles::{enumerate_cycles, enumerate_cycles_bounded, Cycle, DEFAULT_CYCLE_POINT_BOUND};
pub use iso::find_isomorphism;
pub use links::{midpoint_links, LinkType, MidpointLink};
pub use split::{split_rank, SplitRank, DEFAULT_SPLIT_LINE_BOUND};
pub use structure::{blueprint_graph, pieces, tree_decomposition, Blueprint, TreePiece};
pub(crate) use structure::plotted_point;
pub use triangles::find_triangle_configurations;

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bits;
use crate::names::natural_cmp;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlsError {
    #[error("line {0:?} does not have exactly 3 distinct points")]
    LineSizeNot3(Vec<String>),
    #[error("lines {0:?} and {1:?} share two points")]
    LinesShareTwoPoints([String; 3], [String; 3]),
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("{0} points exceed the supported 64")]
    TooManyPoints(usize),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("not a QIMP: line {0:?} has no quasi-isolated point")]
    NotAQimp([String; 3]),
    #[error("not a UMP")]
    NotAUmp,
    #[error("not connected")]
    NotConnected,
    #[error("path endpoints must be distinct")]
    SameEndpoints,
    #[error("new line through {0} and {1} would share two points with an existing line")]
    PathCollision(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pls {
    names: Vec<String>,
    lines: Vec<[usize; 3]>,
    line_masks: Vec<u64>,
    pencils: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentsRank {
    pub components: Vec<Vec<String>>,
    pub c: usize,
    pub rk: i64,
    pub isolated: Vec<String>,
}

impl Pls {
    pub fn new<S: AsRef<str>, T: AsRef<str>>(points: &[S], lines: &[[T; 3]]) -> Result<Pls, PlsError> {
        let mut names: Vec<String> = points.iter().map(|s| s.as_ref().to_string()).collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(PlsError::DuplicatePoint(w[0].clone()));
            }
        }
        if names.len() > 64 {
            return Err(PlsError::TooManyPoints(names.len()));
        }
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut idx_lines = Vec::with_capacity(lines.len());
        for l in lines {
            let mut t = [0usize; 3];
            for (k, p) in l.iter().enumerate() {
                t[k] = *index.get(p.as_ref()).ok_or_else(|| PlsError::UnknownPoint(p.as_ref().to_string()))?;
            }
            t.sort_unstable();
            if t[0] == t[1] || t[1] == t[2] {
                return Err(PlsError::LineSizeNot3(l.iter().map(|s| s.as_ref().to_string()).collect()));
            }
            idx_lines.push(t);
        }
        Pls::from_indices(names, idx_lines)
    }

    /// Points are exactly those on some line.
    pub fn from_lines<T: AsRef<str>>(lines: &[[T; 3]]) -> Result<Pls, PlsError> {
        let mut pts: Vec<&str> = lines.iter().flat_map(|l| l.iter().map(|s| s.as_ref())).collect();
        pts.sort_unstable();
        pts.dedup();
        Pls::new(&pts, lines)
    }

    /// `names` must already be in natural order; lines are index triples.
    fn from_indices(names: Vec<String>, mut lines: Vec<[usize; 3]>) -> Result<Pls, PlsError> {
        for l in lines.iter_mut() {
            l.sort_unstable();
        }
        lines.sort_unstable();
        let line_masks: Vec<u64> = lines.iter().map(|l| bits::from_iter(l.iter().copied())).collect();
        for i in 0..lines.len() {
            for j in 0..i {
                if bits::count(line_masks[i] & line_masks[j]) > 1 {
                    let nm = |l: &[usize; 3]| l.map(|p| names[p].clone());
                    return Err(PlsError::LinesShareTwoPoints(nm(&lines[j]), nm(&lines[i])));
                }
            }
        }
        let mut pencils = vec![Vec::new(); names.len()];
        for (i, l) in lines.iter().enumerate() {
            for &p in l {
                pencils[p].push(i);
            }
        }
        Ok(Pls { names, lines, line_masks, pencils })
    }

    /// Builds from labels in arbitrary order; lines reference positions in `names`.
    pub(crate) fn from_unsorted(names: Vec<String>, lines: &[[usize; 3]]) -> Result<Pls, PlsError> {
        let named: Vec<[&str; 3]> = lines.iter().map(|l| l.map(|p| names[p].as_str())).collect();
        Pls::new(&names, &named)
    }

    pub fn n_points(&self) -> usize {
        self.names.len()
    }

    pub fn n_lines(&self) -> usize {
        self.lines.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, p: usize) -> &str {
        &self.names[p]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn lines(&self) -> &[[usize; 3]] {
        &self.lines
    }

    pub fn line_mask(&self, l: usize) -> u64 {
        self.line_masks[l]
    }

    pub fn line_names(&self, l: usize) -> [String; 3] {
        self.lines[l].map(|p| self.names[p].clone())
    }

    pub fn all_points_mask(&self) -> u64 {
        bits::full(self.n_points())
    }

    /// Indices of the lines through `p`, ascending.
    pub fn pencil(&self, p: usize) -> &[usize] {
        &self.pencils[p]
    }

    pub fn degree(&self, p: usize) -> usize {
        self.pencils[p].len()
    }

    /// On exactly one line.
    pub fn is_quasi_isolated(&self, p: usize) -> bool {
        self.pencils[p].len() == 1
    }

    /// The line [a, b], if any.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.pencils[a].iter().copied().find(|&l| bits::contains(self.line_masks[l], b))
    }

    /// The point of line `l` other than `a` and `b`.
    pub fn third(&self, l: usize, a: usize, b: usize) -> usize {
        bits::ones(self.line_masks[l] & !bits::bit(a) & !bits::bit(b)).next().expect("line has a third point")
    }

    pub fn rank(&self) -> i64 {
        self.n_points() as i64 - self.n_lines() as i64
    }

    /// Connected components as ascending point lists, ordered by least point.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.n_points());
        for l in &self.lines {
            uf.union(l[0], l[1]);
            uf.union(l[0], l[2]);
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut out: Vec<Vec<usize>> = Vec::new();
        for p in 0..self.n_points() {
            let r = uf.find(p);
            let k = *slot.entry(r).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[k].push(p);
        }
        out
    }

    pub fn components_and_rank(&self) -> ComponentsRank {
        let comps = self.components();
        ComponentsRank {
            c: comps.len(),
            rk: self.rank(),
            isolated: comps.iter().filter(|c| c.len() == 1).map(|c| self.names[c[0]].clone()).collect(),
            components: comps.iter().map(|c| c.iter().map(|&p| self.names[p].clone()).collect()).collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Sub-space on the points in `points` and lines in `lines` (masks over indices).
    pub fn restrict(&self, points: u64, lines: u64) -> Pls {
        let keep: Vec<usize> = bits::ones(points).collect();
        let mut pos = vec![usize::MAX; self.n_points()];
        for (k, &p) in keep.iter().enumerate() {
            pos[p] = k;
        }
        let names = keep.iter().map(|&p| self.names[p].clone()).collect();
        let ls = bits::ones(lines)
            .map(|l| {
                let t = self.lines[l].map(|p| pos[p]);
                assert!(t.iter().all(|&p| p != usize::MAX), "line point outside restriction");
                t
            })
            .collect();
        Pls::from_indices(names, ls).expect("sub-space of a valid space is valid")
    }

    /// Sub-space spanned by a set of lines (points = union of the lines).
    pub fn line_subspace(&self, lines: u64) -> Pls {
        let pts = bits::ones(lines).fold(0, |m, l| m | self.line_masks[l]);
        self.restrict(pts, lines)
    }

    pub fn all_lines_mask(&self) -> u64 {
        assert!(self.n_lines() <= 64);
        bits::full(self.n_lines())
    }

    /// Every line has a quasi-isolated point.
    pub fn is_qimp(&self) -> bool {
        self.lines.iter().all(|l| l.iter().any(|&p| self.is_quasi_isolated(p)))
    }

    /// The point/line incidence graph is a forest.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n_points();
        let mut uf = UnionFind::new(n + self.n_lines());
        self.lines.iter().enumerate().all(|(i, l)| l.iter().all(|&p| uf.union(p, n + i)))
    }

    /// Adds fresh points and lines; line entries index into the extended name list.
    pub(crate) fn extend(&self, new_points: &[String], new_lines: &[[usize; 3]]) -> Result<Pls, PlsError> {
        let mut all = self.names.clone();
        all.extend(new_points.iter().cloned());
        let mut lines: Vec<[usize; 3]> = self.lines.clone();
        lines.extend_from_slice(new_lines);
        Pls::from_unsorted(all, &lines)
    }
}
