use petgraph::unionfind::UnionFind;

use crate::lattice::{classify, Lattice};
use crate::matroid::LabeledGraph;

use super::graph_embed::build_partition_embedding;
use super::{EmbeddingError, Partition, PartitionEmbedding};

/// Most join-irreducibles for the graph search.
pub const BRUTE_FORCE_JI_BOUND: usize = 10;
/// Largest n for the direct search over Part(n).
pub const DIRECT_SEARCH_BOUND: usize = 6;

fn require_modular(l: &Lattice) -> Result<(), EmbeddingError> {
    if classify(l).modular {
        Ok(())
    } else {
        Err(crate::lattice::LatticeError::NotModular.into())
    }
}

/// Assigns an edge on d(L) + 1 vertices to each join-irreducible in
/// lattice order. Vertices are numbered by first appearance, so each graph
/// is met once per edge order. Once J(a) is fully assigned its edges must
/// have rank h(a), and no other assigned edge may close a cycle with them.
struct GraphSearch<'a> {
    l: &'a Lattice,
    n_vertices: usize,
    /// Position of each join-irreducible in lattice index order.
    ji_elems: Vec<usize>,
    below: Vec<u64>,
    /// Elements whose J(a) completes at each position.
    completes_at: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    /// Component labels of φ(J(a)) for completed elements.
    comps: Vec<Option<Vec<usize>>>,
}

impl GraphSearch<'_> {
    fn run(&mut self, t: usize, fresh: usize) -> Option<LabeledGraph> {
        if t == self.ji_elems.len() {
            let names: Vec<String> = (1..=self.n_vertices).map(|v| v.to_string()).collect();
            let labeled: Vec<(usize, usize, &str)> =
                self.edges.iter().zip(&self.ji_elems).map(|(&(u, v), &p)| (u, v, self.l.name(p))).collect();
            let g = LabeledGraph::new(&names, &labeled).ok()?;
            return build_partition_embedding(self.l, &g).ok().map(|_| g);
        }
        let v = self.n_vertices;
        let mut options: Vec<(usize, usize)> = Vec::new();
        for b in 1..fresh.min(v) {
            options.extend((0..b).map(|a| (a, b)));
        }
        if fresh < v {
            options.extend((0..fresh).map(|a| (a, fresh)));
        }
        if fresh + 1 < v {
            options.push((fresh, fresh + 1));
        }
        for e in options {
            if self.edges.contains(&e) || !self.admissible(e) {
                continue;
            }
            self.edges.push(e);
            let saved: Vec<usize> = self.completes_at[t].clone();
            let mut ok = true;
            for &a in &saved {
                match self.components_if_valid(a) {
                    Some(c) => self.comps[a] = Some(c),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                let next_fresh = fresh.max(e.1 + 1);
                if let Some(g) = self.run(t + 1, next_fresh) {
                    return Some(g);
                }
            }
            for &a in &saved {
                self.comps[a] = None;
            }
            self.edges.pop();
        }
        None
    }

    /// The new edge stays outside the closure of every completed J(a).
    fn admissible(&self, (u, v): (usize, usize)) -> bool {
        self.comps.iter().flatten().all(|c| c[u] != c[v])
    }

    /// Rank h(a) and closedness among the edges assigned so far.
    fn components_if_valid(&self, a: usize) -> Option<Vec<usize>> {
        let mut uf = UnionFind::<usize>::new(self.n_vertices);
        let mut rank = 0;
        for k in crate::bits::ones(self.below[a]) {
            let (u, v) = self.edges[k];
            rank += uf.union(u, v) as usize;
        }
        if rank != self.l.height_of(a) {
            return None;
        }
        let comp: Vec<usize> = (0..self.n_vertices).map(|x| uf.find(x)).collect();
        let outside = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(k, _)| !crate::bits::contains(self.below[a], k))
            .all(|(_, &(u, v))| comp[u] != comp[v]);
        outside.then_some(comp)
    }
}

/// A connected graph on d(L) + 1 vertices that lattice-models `l`, found by
/// exhaustive search; `None` proves that no tight partition embedding exists.
pub fn brute_force_graph_model(l: &Lattice) -> Result<Option<LabeledGraph>, EmbeddingError> {
    require_modular(l)?;
    let ji = l.join_irreducibles();
    if ji.len() > BRUTE_FORCE_JI_BOUND {
        return Err(EmbeddingError::BoundExceeded(format!(
            "{} join-irreducibles exceed the search bound {BRUTE_FORCE_JI_BOUND}",
            ji.len()
        )));
    }
    let n_vertices = l.height() + 1;
    if ji.len() > n_vertices * (n_vertices - 1) / 2 {
        return Ok(None);
    }
    let below: Vec<u64> = (0..l.len()).map(|a| ji.mask(a)).collect();
    let mut completes_at = vec![Vec::new(); ji.len()];
    for a in 0..l.len() {
        if let Some(last) = crate::bits::ones(below[a]).last() {
            completes_at[last].push(a);
        }
    }
    let mut s = GraphSearch {
        l,
        n_vertices,
        ji_elems: ji.elems.clone(),
        below,
        completes_at,
        edges: Vec::new(),
        comps: vec![None; l.len()],
    };
    Ok(s.run(0, 0))
}

/// Tight embedding into Part(n) via a searched graph model, padded with
/// singletons; `None` when n < d(L) + 1 or no model exists.
pub fn brute_force_embedding_search(l: &Lattice, n: usize) -> Result<Option<PartitionEmbedding>, EmbeddingError> {
    let Some(g) = brute_force_graph_model(l)? else { return Ok(None) };
    if n < g.n_vertices() {
        return Ok(None);
    }
    let e = build_partition_embedding(l, &g)?;
    debug_assert!(e.is_tight());
    e.padded(n).map(Some)
}

/// Independent oracle: images chosen directly in Part(n). A join-irreducible
/// merges two blocks of its lower cover's image; any other element is the
/// join of its lower covers' images. Meets are checked as soon as both sides
/// are assigned, the full certificate at the end.
pub fn direct_partition_search(l: &Lattice, n: usize) -> Result<Option<PartitionEmbedding>, EmbeddingError> {
    require_modular(l)?;
    if n > DIRECT_SEARCH_BOUND {
        return Err(EmbeddingError::BoundExceeded(format!("direct search limited to n <= {DIRECT_SEARCH_BOUND}")));
    }
    if n == 0 {
        return Ok(None);
    }
    fn go(l: &Lattice, n: usize, map: &mut Vec<Partition>) -> Option<PartitionEmbedding> {
        let a = map.len();
        if a == l.len() {
            let e = PartitionEmbedding::new(l, n, map.clone()).ok()?;
            return e.is_tight().then_some(e);
        }
        let lower = l.lower_covers(a);
        let candidates: Vec<Partition> = if lower.len() == 1 {
            let base = &map[lower[0]];
            let k = base.n_blocks();
            (0..k).flat_map(|i| (i + 1..k).map(move |j| base.merge_blocks(i, j))).collect()
        } else {
            let j = lower.iter().skip(1).fold(map[lower[0]].clone(), |acc, &b| acc.join(&map[b]));
            if lower.iter().all(|&b| map[b].is_covered_by(&j)) {
                vec![j]
            } else {
                vec![]
            }
        };
        for c in candidates {
            let consistent = (0..a).all(|x| map[l.meet(a, x)] == c.meet(&map[x]));
            if !consistent {
                continue;
            }
            map.push(c);
            if let Some(e) = go(l, n, map) {
                return Some(e);
            }
            map.pop();
        }
        None
    }
    Ok(go(l, n, &mut vec![Partition::singletons(n)]))
}
