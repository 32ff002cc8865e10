use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bits;

use super::{Lattice, LatticeError, Mopls};

/// The part of a line space outside J(a); lines may shrink to two points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalPls {
    pub points: Vec<String>,
    /// Lines as position lists into `points` (length 2 or 3), ascending.
    pub lines: Vec<Vec<usize>>,
    pub acyclic: bool,
}

impl LocalPls {
    /// Restricts `lines` on `names` to the points outside `removed`.
    pub fn restrict(names: &[String], lines: &[[usize; 3]], removed: u64) -> LocalPls {
        let kept: Vec<usize> = (0..names.len()).filter(|&p| !bits::contains(removed, p)).collect();
        let mut pos = vec![usize::MAX; names.len()];
        for (k, &p) in kept.iter().enumerate() {
            pos[p] = k;
        }
        let mut local: Vec<Vec<usize>> = lines
            .iter()
            .map(|l| l.iter().filter(|&&p| pos[p] != usize::MAX).map(|&p| pos[p]).collect::<Vec<_>>())
            .filter(|l| l.len() >= 2)
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        local.sort();
        let acyclic = incidence_forest(kept.len(), &local);
        LocalPls { points: kept.iter().map(|&p| names[p].clone()).collect(), lines: local, acyclic }
    }
}

/// The bipartite point/line incidence graph has no cycle.
fn incidence_forest(n_points: usize, lines: &[Vec<usize>]) -> bool {
    let mut uf = UnionFind::new(n_points + lines.len());
    lines.iter().enumerate().all(|(i, l)| l.iter().all(|&p| uf.union(p, n_points + i)))
}

pub fn localize_at_coatom(l: &Lattice, mopls: &Mopls, a: usize) -> Result<LocalPls, LatticeError> {
    if !l.coatoms().contains(&a) {
        return Err(LatticeError::NotACoatom(l.name(a).to_string()));
    }
    let removed = bits::from_iter((0..mopls.points.len()).filter(|&k| l.leq(mopls.points[k], a)));
    Ok(LocalPls::restrict(&mopls.names, &mopls.lines, removed))
}

/// Every coatom localization is acyclic.
pub fn is_locally_acyclic(l: &Lattice, mopls: &Mopls) -> bool {
    l.coatoms()
        .iter()
        .all(|&a| localize_at_coatom(l, mopls, a).is_ok_and(|loc| loc.acyclic))
}
