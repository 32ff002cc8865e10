use petgraph::unionfind::UnionFind;

use crate::bits;

use super::{matroid_components, BinaryMatroid, LabeledGraph, Matroid, MatroidError};

pub const DEFAULT_GRAPHIC_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphicResult {
    Graphic(LabeledGraph),
    NotGraphic,
}

/// Searches, per connected component of rank `r`, for a spanning tree on
/// `r + 1` vertices carrying a basis such that every other element's
/// fundamental circuit closes a tree path. Simple matroids only.
pub fn is_graphic(m: &BinaryMatroid) -> Result<GraphicResult, MatroidError> {
    if m.size() > DEFAULT_GRAPHIC_BOUND {
        return Err(MatroidError::BoundExceeded(format!(
            "graphicness search over {} elements exceeds the bound {DEFAULT_GRAPHIC_BOUND}",
            m.size()
        )));
    }
    if !m.is_simple() {
        return Err(MatroidError::NotSimple);
    }
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, usize, String)> = Vec::new();
    for comp in matroid_components(m) {
        let mut basis = Vec::new();
        let mut bmask = 0u64;
        for e in bits::ones(comp) {
            if m.is_independent(bmask | bits::bit(e)) {
                bmask |= bits::bit(e);
                basis.push(e);
            }
        }
        let fundamental: Vec<(usize, Vec<usize>)> = bits::ones(comp & !bmask)
            .map(|e| {
                let path = (0..basis.len())
                    .filter(|&i| m.is_independent(bmask & !bits::bit(basis[i]) | bits::bit(e)))
                    .collect();
                (e, path)
            })
            .collect();
        let r = basis.len();
        let mut t = TreeSearch { r, ends: Vec::with_capacity(r), fundamental: &fundamental };
        let mut uf = UnionFind::new(r + 1);
        if !t.place(0, &mut uf) {
            return Ok(GraphicResult::NotGraphic);
        }
        let off = vertices.len();
        vertices.extend((0..=r).map(|v| format!("v{}", off + v)));
        for (i, &(u, v)) in t.ends.iter().enumerate() {
            edges.push((off + u, off + v, m.element_name(basis[i]).to_string()));
        }
        for (e, path) in &fundamental {
            let (u, v) = path_ends(&t.ends, path).expect("accepted trees close every fundamental circuit");
            edges.push((off + u, off + v, m.element_name(*e).to_string()));
        }
    }
    // restore ground order for the edge list
    edges.sort_by_key(|(_, _, l)| m.element_index(l));
    let g = LabeledGraph::new(&vertices, &edges)?;
    debug_assert!(same_matroid(m, &g));
    Ok(GraphicResult::Graphic(g))
}

struct TreeSearch<'a> {
    r: usize,
    ends: Vec<(usize, usize)>,
    fundamental: &'a [(usize, Vec<usize>)],
}

impl TreeSearch<'_> {
    /// Vertices are numbered by first appearance, which removes relabelings.
    fn place(&mut self, i: usize, uf: &mut UnionFind<usize>) -> bool {
        if i == self.r {
            return self.fundamental.iter().all(|(_, p)| path_ends(&self.ends, p).is_some());
        }
        let fresh = self.ends.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
        let mut options: Vec<(usize, usize)> = (0..fresh).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        if fresh <= self.r {
            options.extend((0..fresh).map(|u| (u, fresh)));
        }
        if fresh < self.r {
            options.push((fresh, fresh + 1));
        }
        for (u, v) in options {
            if uf.equiv(u, v) {
                continue;
            }
            let mut next = uf.clone();
            next.union(u, v);
            self.ends.push((u, v));
            if self.consistent() && self.place(i + 1, &mut next) {
                return true;
            }
            self.ends.pop();
        }
        false
    }

    /// Placed edges of each fundamental path keep maximum degree two.
    fn consistent(&self) -> bool {
        self.fundamental.iter().all(|(_, path)| {
            let mut deg = vec![0u8; self.r + 1];
            path.iter().filter(|&&i| i < self.ends.len()).all(|&i| {
                let (u, v) = self.ends[i];
                deg[u] += 1;
                deg[v] += 1;
                deg[u] <= 2 && deg[v] <= 2
            })
        })
    }
}

/// Endpoints of the edges `path` if they form one simple path.
fn path_ends(ends: &[(usize, usize)], path: &[usize]) -> Option<(usize, usize)> {
    let n = ends.iter().map(|&(_, v)| v + 1).max().unwrap_or(0);
    let mut deg = vec![0usize; n];
    let mut uf = UnionFind::new(n);
    for &i in path {
        let (u, v) = ends[i];
        deg[u] += 1;
        deg[v] += 1;
        if !uf.union(u, v) {
            return None;
        }
    }
    if deg.iter().any(|&d| d > 2) {
        return None;
    }
    let odd: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    (odd.len() == 2).then(|| (odd[0], odd[1]))
}

/// Equal names and equal ranks on every subset. Exhaustive: use on small grounds.
pub fn same_matroid<A: Matroid + ?Sized, B: Matroid + ?Sized>(a: &A, b: &B) -> bool {
    if a.size() != b.size() {
        return false;
    }
    let Some(map): Option<Vec<usize>> = (0..a.size()).map(|e| b.element_index(a.element_name(e))).collect() else {
        return false;
    };
    bits::submasks(a.ground()).all(|s| a.rank_of(s) == b.rank_of(bits::ones(s).fold(0, |m, e| m | bits::bit(map[e]))))
}
