use petgraph::unionfind::UnionFind;

use crate::bits;
use crate::lattice::Lattice;
use crate::matroid::{LabeledGraph, Matroid};

use super::model::{check_lattice_model_graph, ji_map};
use super::{EmbeddingError, Partition, PartitionEmbedding};

/// Φ(a) = components of the edges modeling J(a), on the graph's vertices.
/// The graph must lattice-model `l` and be connected, hence has d(L) + 1
/// vertices.
pub fn build_partition_embedding(l: &Lattice, g: &LabeledGraph) -> Result<PartitionEmbedding, EmbeddingError> {
    let report = check_lattice_model_graph(l, g)?;
    if let Some(f) = report.failure {
        return Err(EmbeddingError::ModelCheckFailed(format!("{f:?}")));
    }
    if g.rank() + 1 != g.n_vertices() {
        return Err(EmbeddingError::GraphDisconnected);
    }
    let phi = ji_map(l, g, true)?;
    let ji = l.join_irreducibles();
    let map = (0..l.len())
        .map(|a| Partition::comp(g.n_vertices(), bits::ones(ji.mask(a)).map(|k| g.edge(phi[k]))))
        .collect();
    PartitionEmbedding::new(l, g.n_vertices(), map)
}

/// Identifies the least vertex of every component with the least vertex of
/// the first, after dropping vertices on no edge. Circuits are unchanged.
pub fn connect_components(g: &LabeledGraph) -> LabeledGraph {
    let n = g.n_vertices();
    let mut uf = UnionFind::<usize>::new(n);
    let mut used = vec![false; n];
    for e in 0..g.n_edges() {
        let (u, v) = g.edge(e);
        uf.union(u, v);
        used[u] = true;
        used[v] = true;
    }
    let mut anchor: Option<usize> = None;
    let mut glue = UnionFind::<usize>::new(n);
    let mut seen_root = vec![false; n];
    for v in (0..n).filter(|&v| used[v]) {
        let r = uf.find(v);
        if !std::mem::replace(&mut seen_root[r], true) {
            match anchor {
                None => anchor = Some(v),
                Some(a) => {
                    glue.union(a, v);
                }
            }
        }
    }
    let mut id = vec![usize::MAX; n];
    let mut names = Vec::new();
    for v in (0..n).filter(|&v| used[v]) {
        let r = glue.find(v);
        if id[r] == usize::MAX {
            id[r] = names.len();
            names.push(g.vertex_name(v).to_string());
        }
    }
    let edges: Vec<(usize, usize, &str)> = (0..g.n_edges())
        .map(|e| {
            let (u, v) = g.edge(e);
            (id[glue.find(u)], id[glue.find(v)], g.label(e))
        })
        .collect();
    LabeledGraph::new(&names, &edges).expect("gluing distinct components keeps the graph simple")
}

#[derive(Debug, Clone)]
pub struct ExtractedModel {
    /// Connected, on d(L) + 1 vertices.
    pub graph: LabeledGraph,
    /// Components with at least one edge before gluing.
    pub components: usize,
}

/// For each join-irreducible p, the edge joining the least elements of the
/// two blocks of Φ(p_*) merged in Φ(p); components are then glued.
pub fn extract_model_from_embedding(l: &Lattice, e: &PartitionEmbedding) -> Result<ExtractedModel, EmbeddingError> {
    if !e.is_tight() {
        return Err(EmbeddingError::NotTight);
    }
    let ji = l.join_irreducibles();
    let mut edges = Vec::with_capacity(ji.len());
    for (k, &p) in ji.elems.iter().enumerate() {
        let (hi, lo) = (e.image(p), e.image(ji.lower_star[k]));
        let mut merged = lo.blocks().into_iter().filter(|b| merged_into(hi, lo, b[0]));
        let (a, b) = (merged.next(), merged.next());
        let (Some(a), Some(b)) = (a, b) else { return Err(EmbeddingError::NotTight) };
        edges.push((a[0], b[0], l.name(p).to_string()));
    }
    let names: Vec<String> = (1..=e.n).map(|v| v.to_string()).collect();
    let raw = LabeledGraph::new(&names, &edges)
        .map_err(|err| EmbeddingError::ModelCheckFailed(format!("extracted edges are not simple: {err}")))?;
    let components = {
        let mut uf = UnionFind::<usize>::new(e.n);
        for &(u, v, _) in &edges {
            uf.union(u, v);
        }
        let mut roots: Vec<usize> = edges.iter().map(|&(u, _, _)| uf.find(u)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    };
    let graph = connect_components(&raw);
    let report = check_lattice_model_graph(l, &graph)?;
    if let Some(f) = report.failure {
        return Err(EmbeddingError::ModelCheckFailed(format!("{f:?}")));
    }
    Ok(ExtractedModel { graph, components })
}

/// The `lo` block of `x` shares its `hi` block with another `lo` block.
fn merged_into(hi: &Partition, lo: &Partition, x: usize) -> bool {
    (0..lo.ground_size()).any(|y| hi.same_block(x, y) && !lo.same_block(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::families;

    fn triangle() -> LabeledGraph {
        LabeledGraph::from_named_edges(&[("1", "2", "a1"), ("2", "3", "a2"), ("1", "3", "a3")]).unwrap()
    }

    #[test]
    fn m3_lands_on_the_atoms_of_part3() {
        let e = build_partition_embedding(&families::m_n(3), &triangle()).unwrap();
        assert!(e.is_tight());
        let image = |a: &str| e.image(e.lattice.index_of(a).unwrap()).to_string();
        assert_eq!([image("a1"), image("a2"), image("a3")], ["12|3", "1|23", "13|2"]);
        let x = extract_model_from_embedding(&e.lattice, &e).unwrap();
        assert_eq!((x.graph.n_vertices(), x.graph.n_edges(), x.components), (3, 3, 1));
    }

    #[test]
    fn boolean_square_on_a_path() {
        let b2 = families::boolean(2);
        let names: Vec<&str> = b2.atoms().iter().map(|&a| b2.name(a)).collect();
        let g = LabeledGraph::from_named_edges(&[("1", "2", names[0]), ("2", "3", names[1])]).unwrap();
        assert!(build_partition_embedding(&b2, &g).unwrap().is_tight());
    }

    #[test]
    fn disconnected_models_are_refused_then_glued() {
        let b2 = families::boolean(2);
        let names: Vec<&str> = b2.atoms().iter().map(|&a| b2.name(a)).collect();
        let g = LabeledGraph::from_named_edges(&[("1", "2", names[0]), ("3", "4", names[1])]).unwrap();
        assert!(matches!(build_partition_embedding(&b2, &g), Err(EmbeddingError::GraphDisconnected)));
        let c = connect_components(&g);
        assert_eq!(c.n_vertices(), 3);
        assert!(build_partition_embedding(&b2, &c).unwrap().is_tight());
    }

    #[test]
    fn non_tight_maps_are_refused() {
        let c2 = families::chain(2);
        let e = PartitionEmbedding::new(&c2, 2, vec![Partition::whole(2), Partition::whole(2)]).unwrap();
        assert!(matches!(extract_model_from_embedding(&c2, &e), Err(EmbeddingError::NotTight)));
    }
}
