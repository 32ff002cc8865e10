use std::collections::{HashMap, HashSet, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::names::natural_cmp;

use super::{BinaryMatroid, Matroid, MatroidError};

/// Cap on the number of chordless circuits collected before giving up.
pub const DEFAULT_CHORDLESS_LIMIT: usize = 200_000;

/// Simple graph whose edges carry distinct labels. Edge endpoints are stored
/// as `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    labels: Vec<String>,
}

/// Hub, spoke edges and rim edges. Two spokes make a degenerate wheel: a
/// triangle with a single rim edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Wheel {
    pub hub: usize,
    pub spokes: u64,
    pub rims: u64,
}

impl Wheel {
    pub fn is_degenerate(&self) -> bool {
        bits::count(self.spokes) == 2
    }

    pub fn edges(&self) -> u64 {
        self.spokes | self.rims
    }
}

impl LabeledGraph {
    pub fn new<S: AsRef<str>, A: AsRef<str>>(
        vertices: &[S],
        edges: &[(usize, usize, A)],
    ) -> Result<LabeledGraph, MatroidError> {
        if edges.len() > 64 {
            return Err(MatroidError::TooManyElements(edges.len()));
        }
        let vertices: Vec<String> = vertices.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(MatroidError::DuplicateElement(v.clone()));
            }
        }
        let mut labels_seen = HashSet::new();
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        let mut out_edges = Vec::with_capacity(edges.len());
        let mut labels = Vec::with_capacity(edges.len());
        for (k, (u, v, label)) in edges.iter().enumerate() {
            let (u, v) = (*u.min(v), *u.max(v));
            if v >= vertices.len() {
                return Err(MatroidError::UnknownVertex(v.to_string()));
            }
            if u == v {
                return Err(MatroidError::GraphLoop(vertices[u].clone()));
            }
            let label = label.as_ref().to_string();
            if !labels_seen.insert(label.clone()) {
                return Err(MatroidError::DuplicateElement(label));
            }
            if let Some(&other) = pairs.get(&(u, v)) {
                return Err(MatroidError::ParallelEdges(edges[other].2.as_ref().to_string(), label));
            }
            pairs.insert((u, v), k);
            out_edges.push((u, v));
            labels.push(label);
        }
        Ok(LabeledGraph { vertices, edges: out_edges, labels })
    }

    /// Vertices are the endpoint names in natural order.
    pub fn from_named_edges<A: AsRef<str>, B: AsRef<str>, C: AsRef<str>>(
        edges: &[(A, B, C)],
    ) -> Result<LabeledGraph, MatroidError> {
        let mut names: Vec<String> =
            edges.iter().flat_map(|(a, b, _)| [a.as_ref().to_string(), b.as_ref().to_string()]).collect();
        names.sort_by(|a, b| natural_cmp(a, b));
        names.dedup();
        LabeledGraph::with_vertices(&names, edges)
    }

    /// Like [`LabeledGraph::from_named_edges`] but with an explicit vertex list,
    /// which may contain isolated vertices.
    pub fn with_vertices<S: AsRef<str>, A: AsRef<str>, B: AsRef<str>, C: AsRef<str>>(
        vertices: &[S],
        edges: &[(A, B, C)],
    ) -> Result<LabeledGraph, MatroidError> {
        let idx: HashMap<&str, usize> = vertices.iter().enumerate().map(|(i, s)| (s.as_ref(), i)).collect();
        let mut e = Vec::with_capacity(edges.len());
        for (a, b, c) in edges {
            let u = *idx.get(a.as_ref()).ok_or_else(|| MatroidError::UnknownVertex(a.as_ref().to_string()))?;
            let v = *idx.get(b.as_ref()).ok_or_else(|| MatroidError::UnknownVertex(b.as_ref().to_string()))?;
            e.push((u, v, c.as_ref()));
        }
        LabeledGraph::new(vertices, &e)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    /// Mask of edges incident with `v`.
    pub fn star(&self, v: usize) -> u64 {
        self.edges.iter().enumerate().filter(|(_, &(a, b))| a == v || b == v).fold(0, |m, (e, _)| m | bits::bit(e))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect();
        out.sort_unstable();
        out
    }

    /// Vertices touched by the edges in `set`.
    pub fn endpoints(&self, set: u64) -> Vec<usize> {
        let mut out: Vec<usize> = bits::ones(set).flat_map(|e| [self.edges[e].0, self.edges[e].1]).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Vertex-edge incidence vectors; needs at most 64 vertices.
    pub fn to_binary(&self) -> Result<BinaryMatroid, MatroidError> {
        if self.vertices.len() > 64 {
            return Err(MatroidError::TooManyElements(self.vertices.len()));
        }
        let cols: Vec<u64> = self.edges.iter().map(|&(u, v)| bits::bit(u) | bits::bit(v)).collect();
        BinaryMatroid::new(&self.labels, self.vertices.len(), &cols)
    }

    fn adjacency(&self) -> Vec<Vec<Option<usize>>> {
        let n = self.vertices.len();
        let mut adj = vec![vec![None; n]; n];
        for (e, &(u, v)) in self.edges.iter().enumerate() {
            adj[u][v] = Some(e);
            adj[v][u] = Some(e);
        }
        adj
    }

    fn cycle_mask(&self, adj: &[Vec<Option<usize>>], cyc: &[usize]) -> u64 {
        (0..cyc.len()).fold(0, |m, i| m | bits::bit(adj[cyc[i]][cyc[(i + 1) % cyc.len()]].expect("cycle edge")))
    }
}

impl Matroid for LabeledGraph {
    fn size(&self) -> usize {
        self.edges.len()
    }

    fn element_name(&self, e: usize) -> &str {
        &self.labels[e]
    }

    /// |V| minus the number of components of the spanning subgraph.
    fn rank_of(&self, set: u64) -> usize {
        let mut uf = UnionFind::<usize>::new(self.vertices.len());
        bits::ones(set).filter(|&e| uf.union(self.edges[e].0, self.edges[e].1)).count()
    }
}

/// Chordless circuits as vertex sequences starting at their least vertex,
/// second vertex smaller than the last.
fn chordless_vertex_cycles(g: &LabeledGraph, limit: usize) -> Result<Vec<Vec<usize>>, MatroidError> {
    let adj = g.adjacency();
    let n = g.n_vertices();
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..n {
        path.push(s);
        extend(&adj, s, &mut path, &mut out, limit)?;
        path.pop();
    }
    Ok(out)
}

fn extend(
    adj: &[Vec<Option<usize>>],
    s: usize,
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    limit: usize,
) -> Result<(), MatroidError> {
    let last = *path.last().unwrap();
    for v in s + 1..adj.len() {
        if adj[last][v].is_none() || path.contains(&v) {
            continue;
        }
        // interior vertices other than the start and the current end must not see v
        if path.len() > 2 && path[1..path.len() - 1].iter().any(|&w| adj[w][v].is_some()) {
            continue;
        }
        if path.len() >= 2 && adj[s][v].is_some() {
            if path[1] < v {
                if out.len() >= limit {
                    return Err(MatroidError::BoundExceeded(format!("more than {limit} chordless circuits")));
                }
                let mut c = path.clone();
                c.push(v);
                out.push(c);
            }
            continue;
        }
        path.push(v);
        extend(adj, s, path, out, limit)?;
        path.pop();
    }
    Ok(())
}

/// Chordless circuits as edge masks, ordered by length then mask.
pub fn chordless_circuits(g: &LabeledGraph) -> Result<Vec<u64>, MatroidError> {
    let adj = g.adjacency();
    let mut out: Vec<u64> = chordless_vertex_cycles(g, DEFAULT_CHORDLESS_LIMIT)?
        .iter()
        .map(|c| g.cycle_mask(&adj, c))
        .collect();
    out.sort_by_key(|&m| (bits::count(m), m));
    Ok(out)
}

/// Wheels whose rim is a chordless circuit. A triangle is reported once per
/// choice of hub among its corners, besides any nondegenerate wheel it rims.
pub fn wheels(g: &LabeledGraph) -> Result<Vec<Wheel>, MatroidError> {
    let adj = g.adjacency();
    let mut out = Vec::new();
    for cyc in chordless_vertex_cycles(g, DEFAULT_CHORDLESS_LIMIT)? {
        let rims = g.cycle_mask(&adj, &cyc);
        for h in 0..g.n_vertices() {
            if !cyc.contains(&h) && cyc.iter().all(|&v| adj[h][v].is_some()) {
                let spokes = cyc.iter().fold(0, |m, &v| m | bits::bit(adj[h][v].unwrap()));
                out.push(Wheel { hub: h, spokes, rims });
            }
        }
        if cyc.len() == 3 {
            for i in 0..3 {
                let (h, a, b) = (cyc[i], cyc[(i + 1) % 3], cyc[(i + 2) % 3]);
                let spokes = bits::bit(adj[h][a].unwrap()) | bits::bit(adj[h][b].unwrap());
                out.push(Wheel { hub: h, spokes, rims: bits::bit(adj[a][b].unwrap()) });
            }
        }
    }
    out.sort_by_key(|w| (w.edges(), w.hub));
    Ok(out)
}

/// Every chordless circuit is a triangle or the rim of a nondegenerate wheel.
pub fn is_wheely(g: &LabeledGraph) -> Result<bool, MatroidError> {
    let adj = g.adjacency();
    Ok(chordless_vertex_cycles(g, DEFAULT_CHORDLESS_LIMIT)?.iter().all(|cyc| {
        cyc.len() == 3 || (0..g.n_vertices()).any(|h| !cyc.contains(&h) && cyc.iter().all(|&v| adj[h][v].is_some()))
    }))
}

/// Triangles contained in some nondegenerate wheel, as edge masks. A triangle
/// `xyz` qualifies iff for some corner `x`, `y` and `z` stay connected inside
/// the neighbourhood of `x` after deleting the edge `yz`.
pub fn extendible_triangles(g: &LabeledGraph) -> Vec<u64> {
    let adj = g.adjacency();
    let n = g.n_vertices();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if adj[a][b].is_none() {
                continue;
            }
            for c in b + 1..n {
                if adj[a][c].is_none() || adj[b][c].is_none() {
                    continue;
                }
                let ok = [(a, b, c), (b, a, c), (c, a, b)].iter().any(|&(x, y, z)| linked_around(&adj, x, y, z));
                if ok {
                    out.push(bits::bit(adj[a][b].unwrap()) | bits::bit(adj[a][c].unwrap()) | bits::bit(adj[b][c].unwrap()));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

fn linked_around(adj: &[Vec<Option<usize>>], x: usize, y: usize, z: usize) -> bool {
    let n = adj.len();
    let mut seen = vec![false; n];
    seen[y] = true;
    let mut queue = VecDeque::from([y]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if v == x || seen[v] || adj[u][v].is_none() || adj[x][v].is_none() {
                continue;
            }
            if (u == y && v == z) || (u == z && v == y) {
                continue;
            }
            if v == z {
                return true;
            }
            seen[v] = true;
            queue.push_back(v);
        }
    }
    false
}

/// Recognizes `set` as exactly the edge set of a wheel; triangles report
/// their least corner as hub.
pub fn wheel_of(g: &LabeledGraph, set: u64) -> Option<Wheel> {
    let verts = g.endpoints(set);
    for &h in &verts {
        let spokes = set & g.star(h);
        let k = bits::count(spokes);
        if k < 2 {
            continue;
        }
        let rims = set & !spokes;
        let ends: Vec<usize> = bits::ones(spokes).map(|e| if g.edge(e).0 == h { g.edge(e).1 } else { g.edge(e).0 }).collect();
        if verts.len() != k + 1 {
            continue;
        }
        if k == 2 {
            if bits::count(rims) == 1 && g.edge_between(ends[0], ends[1]) == Some(rims.trailing_zeros() as usize) {
                return Some(Wheel { hub: h, spokes, rims });
            }
            continue;
        }
        if bits::count(rims) != k {
            continue;
        }
        // rims: every end has degree 2 and the rim graph is connected
        let mut deg: HashMap<usize, usize> = HashMap::new();
        let mut uf = UnionFind::<usize>::new(g.n_vertices());
        for e in bits::ones(rims) {
            let (u, v) = g.edge(e);
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
            uf.union(u, v);
        }
        let root = uf.find(ends[0]);
        if ends.iter().all(|&v| deg.get(&v) == Some(&2) && uf.find(v) == root) {
            return Some(Wheel { hub: h, spokes, rims });
        }
    }
    None
}
