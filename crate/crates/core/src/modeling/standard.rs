use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bits;
use crate::matroid::{check_circuit_friendly, check_cycle_preserving, LabeledGraph, Matroid};
use crate::pls::{tree_decomposition, Pls, PlsError, TreePiece};

use super::ModelingError;

#[derive(Debug, Clone, Serialize)]
pub struct StandardModel {
    #[serde(skip)]
    pub graph: LabeledGraph,
    /// Number of QIMP pieces glued together.
    pub pieces: usize,
    /// Matroid rank of each piece's own graph.
    pub piece_mrk: Vec<usize>,
    pub mrk: usize,
    pub rk: i64,
    /// mrk equals the sum of piece ranks minus (pieces − 1), and equals rk.
    pub identity_holds: bool,
    pub cycle_preserving: bool,
    pub circuit_friendly: bool,
}

/// Star model of one QIMP piece: a hub, a spoke per unplotted point and a
/// rim per line carrying its plotted point. Plotting is relative to the
/// piece's own lines.
struct PieceGraph {
    vertices: Vec<String>,
    /// (endpoint, endpoint, point) with endpoints indexing `vertices`.
    edges: Vec<(usize, usize, usize)>,
}

fn piece_graph(p: &Pls, piece: &TreePiece, hub: String, tag: &dyn Fn(usize) -> String) -> PieceGraph {
    let deg_in = |x: usize| p.pencil(x).iter().filter(|&&l| bits::contains(piece.lines, l)).count();
    let mut plotted = 0u64;
    let mut rims = Vec::new();
    for l in bits::ones(piece.lines) {
        let line = p.lines()[l];
        let m = *line.iter().find(|&&x| deg_in(x) == 1).expect("piece lines keep a quasi-isolated point");
        plotted |= bits::bit(m);
        let mut ends = line.iter().copied().filter(|&x| x != m);
        rims.push((ends.next().unwrap(), ends.next().unwrap(), m));
    }
    let mut vertices = vec![hub];
    let mut vertex_of = vec![usize::MAX; p.n_points()];
    let mut edges = Vec::new();
    for x in bits::ones(piece.points & !plotted) {
        vertex_of[x] = vertices.len();
        vertices.push(tag(x));
        edges.push((0, vertex_of[x], x));
    }
    edges.extend(rims.into_iter().map(|(u, w, m)| (vertex_of[u], vertex_of[w], m)));
    PieceGraph { vertices, edges }
}

fn hub_name(p: &Pls) -> String {
    let mut h = "0".to_string();
    while p.index_of(&h).is_some() {
        h.push('*');
    }
    h
}

/// Standard graph of a QIMP: one hub for the whole space, which keeps the
/// graph connected and gives mrk = |V| − 1 = rk.
pub fn standard_graph_qimp(p: &Pls) -> Result<StandardModel, ModelingError> {
    if let Some(l) = (0..p.n_lines()).find(|&l| crate::pls::plotted_point(p, l).is_none()) {
        return Err(ModelingError::NotAQimp(p.line_names(l)));
    }
    let whole = TreePiece { points: p.all_points_mask(), lines: p.all_lines_mask(), glue: None };
    assemble(p, &[whole])
}

/// Standard graphs of the QIMP pieces of a UMP, glued along the edges of
/// shared points; roots of separate components share the first hub.
pub fn standard_graph_ump(p: &Pls) -> Result<StandardModel, ModelingError> {
    let pieces = tree_decomposition(p).map_err(|e| match e {
        PlsError::NotAUmp => ModelingError::NotAUmp,
        other => other.into(),
    })?;
    assemble(p, &pieces)
}

fn assemble(p: &Pls, pieces: &[TreePiece]) -> Result<StandardModel, ModelingError> {
    let single = pieces.len() == 1;
    let hub = hub_name(p);
    let mut vertices: Vec<String> = Vec::new();
    let mut copies: Vec<Vec<(usize, usize)>> = vec![Vec::new(); p.n_points()];
    let mut hubs = Vec::new();
    let mut piece_mrk = Vec::new();
    for (k, piece) in pieces.iter().enumerate() {
        let (h, tag): (String, Box<dyn Fn(usize) -> String>) = if single {
            (hub.clone(), Box::new(|x| p.name(x).to_string()))
        } else {
            (format!("{hub}@{k}"), Box::new(move |x| format!("{}@{k}", p.name(x))))
        };
        let pg = piece_graph(p, piece, h, &*tag);
        let off = vertices.len();
        hubs.push(off);
        let local: Vec<(usize, usize, &str)> = pg.edges.iter().map(|&(u, v, x)| (u, v, p.name(x))).collect();
        piece_mrk.push(LabeledGraph::new(&pg.vertices, &local)?.rank());
        vertices.extend(pg.vertices);
        for (u, v, x) in pg.edges {
            copies[x].push((off + u, off + v));
        }
    }
    let mut uf = UnionFind::<usize>::new(vertices.len());
    for cs in &copies {
        for &(a, b) in &cs[1..] {
            uf.union(cs[0].0, a);
            uf.union(cs[0].1, b);
        }
    }
    for (k, piece) in pieces.iter().enumerate().skip(1) {
        if piece.glue.is_none() {
            uf.union(hubs[0], hubs[k]);
        }
    }
    // a class is named by its first vertex
    let mut rep = vec![usize::MAX; vertices.len()];
    let mut names = Vec::new();
    let mut class_id = vec![0usize; vertices.len()];
    for v in 0..vertices.len() {
        let r = uf.find(v);
        if rep[r] == usize::MAX {
            rep[r] = names.len();
            names.push(vertices[v].clone());
        }
        class_id[v] = rep[r];
    }
    let edges: Vec<(usize, usize, &str)> =
        (0..p.n_points()).map(|x| (class_id[copies[x][0].0], class_id[copies[x][0].1], p.name(x))).collect();
    let graph = LabeledGraph::new(&names, &edges)?;
    let mrk = graph.rank();
    let rk = p.rank();
    let glued = pieces.iter().skip(1).filter(|t| t.glue.is_some()).count();
    let identity_holds = mrk as i64 == rk && mrk + glued == piece_mrk.iter().sum::<usize>();
    let cycle_preserving = check_cycle_preserving(p, &graph)?.ok;
    let circuit_friendly = check_circuit_friendly(p, &graph)?.ok;
    Ok(StandardModel {
        graph,
        pieces: pieces.len(),
        piece_mrk,
        mrk,
        rk,
        identity_holds,
        cycle_preserving,
        circuit_friendly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_rank_model, wheel_of};

    fn qimp1() -> Pls {
        Pls::from_lines(&[["p1", "m12", "p2"], ["p1", "m13", "p3"], ["p2", "q", "p3"]]).unwrap()
    }

    #[test]
    fn triangle_qimp_has_four_vertices() {
        let m = standard_graph_qimp(&qimp1()).unwrap();
        assert_eq!(m.graph.n_vertices(), 4);
        assert_eq!((m.mrk, m.rk), (3, 3));
        assert!(m.identity_holds && m.cycle_preserving && m.circuit_friendly);
    }

    #[test]
    fn two_line_qimp() {
        let p = Pls::from_lines(&[["p1'", "m12'", "p2'"], ["p2'", "m23'", "p3'"]]).unwrap();
        let m = standard_graph_qimp(&p).unwrap();
        assert_eq!(m.graph.n_vertices(), 4);
        assert_eq!(m.rk, 3);
        assert_eq!(m.mrk as i64, m.rk);
    }

    #[test]
    fn hexagon_gives_the_six_spoke_wheel() {
        let lines: Vec<[String; 3]> =
            (1..=6).map(|i| [format!("p{i}"), format!("q{i}"), format!("p{}", i % 6 + 1)]).collect();
        let p = Pls::from_lines(&lines).unwrap();
        let m = standard_graph_qimp(&p).unwrap();
        let w = wheel_of(&m.graph, m.graph.ground()).unwrap();
        assert_eq!(bits::count(w.spokes), 6);
    }

    #[test]
    fn glued_qimps_satisfy_the_gluing_identity() {
        let p = Pls::from_lines(&[
            ["p1", "m12", "p2"],
            ["p1", "m13", "p3"],
            ["p2", "q", "p3"],
            ["q", "m12'", "p2'"],
            ["p2'", "m23'", "p3'"],
        ])
        .unwrap();
        assert!(!p.is_qimp());
        let m = standard_graph_ump(&p).unwrap();
        assert_eq!(m.pieces, 2);
        assert_eq!(m.graph.n_vertices(), 6);
        assert_eq!((m.mrk, m.rk), (5, 5));
        assert_eq!(m.piece_mrk, vec![3, 3]);
        assert!(m.identity_holds && m.cycle_preserving && m.circuit_friendly);
        assert!(check_rank_model(&p, &m.graph).unwrap().ok);
    }

    #[test]
    fn single_qimp_matches_the_qimp_construction() {
        let a = standard_graph_qimp(&qimp1()).unwrap();
        let b = standard_graph_ump(&qimp1()).unwrap();
        assert_eq!(a.graph, b.graph);
    }

    #[test]
    fn rejects_non_qimp_and_non_ump() {
        let q = Pls::from_lines(&[["a", "b", "c"], ["a", "d", "e"], ["b", "d", "f"], ["c", "e", "f"]]).unwrap();
        assert!(matches!(standard_graph_qimp(&q), Err(ModelingError::NotAQimp(_))));
        let l1 = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"], ["7", "8", "1"], ["2", "9", "5"]])
            .unwrap();
        assert!(matches!(standard_graph_ump(&l1), Err(ModelingError::NotAUmp)));
    }

    #[test]
    fn disconnected_spaces_share_a_hub() {
        let p = Pls::new(&["a", "b", "c", "d", "e", "f", "z"], &[["a", "b", "c"], ["d", "e", "f"]]).unwrap();
        let m = standard_graph_ump(&p).unwrap();
        assert_eq!((m.mrk as i64, m.rk), (5, 5));
        assert!(m.identity_holds);
    }
}
