use std::collections::HashSet;

use crate::bits;
use crate::matroid::{check_circuit_friendly, LabeledGraph, Matroid};
use crate::names::FreshNames;
use crate::pls::{Pls, PlsError};

use super::ModelingError;

#[derive(Debug, Clone)]
pub struct ExtendedModel {
    pub pls: Pls,
    pub graph: LabeledGraph,
    /// Increase of the space's rank.
    pub rho: i64,
    /// New vertices; equals the increase of the graph's rank.
    pub mu: usize,
    /// Re-check of circuit-friendliness, done when the input was
    /// circuit-friendly, the path has an inner point and its ends lie on a
    /// common line.
    pub circuit_friendly: Option<bool>,
}

/// Adds the path `path[0], path[1], …, path[n−1]` (inner names fresh, ends
/// existing) with one midpoint per step, and models it by a dented wheel at
/// the vertex shared by the ends' edges: each inner point becomes a new
/// spoke, each midpoint the rim between consecutive spokes.
pub fn extend_graph_with_path<S: AsRef<str>>(
    p: &Pls,
    g: &LabeledGraph,
    path: &[S],
    midpoints: Option<&[S]>,
) -> Result<ExtendedModel, ModelingError> {
    let path: Vec<String> = path.iter().map(|s| s.as_ref().to_string()).collect();
    let n = path.len();
    if n < 2 {
        return Err(ModelingError::InvalidPath("a path needs two ends".into()));
    }
    let (x, y) = (&path[0], &path[n - 1]);
    let xi = p.index_of(x).ok_or_else(|| PlsError::UnknownPoint(x.clone()))?;
    let yi = p.index_of(y).ok_or_else(|| PlsError::UnknownPoint(y.clone()))?;
    if xi == yi {
        return Err(PlsError::SameEndpoints.into());
    }
    if n == 2 && p.line_through(xi, yi).is_some() {
        return Err(ModelingError::PathCollision(x.clone(), y.clone()));
    }
    let inner: Vec<String> = path[1..n - 1].to_vec();
    let mids: Vec<String> = match midpoints {
        Some(m) if m.len() == n - 1 => m.iter().map(|s| s.as_ref().to_string()).collect(),
        Some(_) => return Err(ModelingError::InvalidPath(format!("expected {} midpoints", n - 1))),
        None => {
            let taken: Vec<String> = p.names().iter().chain(&inner).cloned().collect();
            let mut fresh = FreshNames::new(&taken);
            (0..n - 1).map(|_| fresh.fresh()).collect()
        }
    };
    let mut seen: HashSet<&str> = p.names().iter().map(String::as_str).collect();
    for name in inner.iter().chain(&mids) {
        if !seen.insert(name) {
            return Err(ModelingError::InvalidPath(format!("{name} is not a fresh point")));
        }
    }

    // the space
    let base = p.n_points();
    let mut junction = vec![xi];
    junction.extend((0..inner.len()).map(|i| base + i));
    junction.push(yi);
    let lines: Vec<[usize; 3]> = (0..n - 1).map(|i| [junction[i], base + inner.len() + i, junction[i + 1]]).collect();
    let new_points: Vec<String> = inner.iter().chain(&mids).cloned().collect();
    let pls = p.extend(&new_points, &lines)?;

    // the graph
    let ex = g.element_index(x).ok_or_else(|| ModelingError::InvalidPath(format!("no edge labelled {x}")))?;
    let ey = g.element_index(y).ok_or_else(|| ModelingError::InvalidPath(format!("no edge labelled {y}")))?;
    let ((a1, a2), (b1, b2)) = (g.edge(ex), g.edge(ey));
    let (hub, a, b) = if a1 == b1 || a1 == b2 {
        (a1, a2, if a1 == b1 { b2 } else { b1 })
    } else if a2 == b1 || a2 == b2 {
        (a2, a1, if a2 == b1 { b2 } else { b1 })
    } else {
        return Err(ModelingError::EdgesNotIncident(x.clone(), y.clone()));
    };
    if n == 2 && g.edge_between(a, b).is_some() {
        return Err(ModelingError::PathCollision(x.clone(), y.clone()));
    }
    let mut vnames: Vec<String> = g.vertex_names().to_vec();
    let mut fresh_v = FreshNames::new(g.vertex_names());
    let mut beta = vec![a];
    for _ in 0..inner.len() {
        beta.push(vnames.len());
        vnames.push(fresh_v.fresh());
    }
    beta.push(b);
    let mut edges: Vec<(usize, usize, String)> =
        (0..g.n_edges()).map(|e| (g.edge(e).0, g.edge(e).1, g.label(e).to_string())).collect();
    for (i, name) in inner.iter().enumerate() {
        edges.push((hub, beta[i + 1], name.clone()));
    }
    for (i, name) in mids.iter().enumerate() {
        edges.push((beta[i], beta[i + 1], name.clone()));
    }
    let graph = LabeledGraph::new(&vnames, &edges)?;

    let rho = pls.rank() - p.rank();
    let mu = graph.n_vertices() - g.n_vertices();
    debug_assert_eq!(rho, mu as i64);
    debug_assert_eq!(graph.rank() - g.rank(), mu);
    let supported = n >= 3 && p.line_through(xi, yi).is_some();
    let circuit_friendly = if supported && check_circuit_friendly(p, g)?.ok {
        Some(check_circuit_friendly(&pls, &graph)?.ok)
    } else {
        None
    };
    debug_assert!(bits::count(pls.all_points_mask()) == graph.n_edges());
    Ok(ExtendedModel { pls, graph, rho, mu, circuit_friendly })
}
