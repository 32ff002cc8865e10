use serde::Serialize;

use super::{enumerate_cycles_bounded, midpoint_links, pieces, Cycle, Pls, PlsError, DEFAULT_CYCLE_POINT_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlsProfile {
    pub acyclic: bool,
    pub qimp: bool,
    pub ump: bool,
    pub nmpl: bool,
    pub bmpl: bool,
    pub sparse: bool,
    /// A testifying line ordering when sparse, as line indices.
    pub sparse_ordering: Option<Vec<usize>>,
    pub small_girth: bool,
    pub two_connected_qimp: bool,
    pub n_cycles: usize,
}

pub fn classify_pls(p: &Pls) -> Result<PlsProfile, PlsError> {
    classify_with_bound(p, DEFAULT_CYCLE_POINT_BOUND)
}

/// Like [`classify_pls`] with an explicit bound on points per enumerated cycle.
pub fn classify_with_bound(p: &Pls, max_points: usize) -> Result<PlsProfile, PlsError> {
    let cycles = enumerate_cycles_bounded(p, None, max_points)?;
    Ok(profile_from_cycles(p, &cycles))
}

pub(crate) fn profile_from_cycles(p: &Pls, cycles: &[Cycle]) -> PlsProfile {
    let qimp = p.is_qimp();
    let mut nmpl = true;
    let mut bmpl = true;
    for c in cycles {
        for l in midpoint_links(p, c) {
            nmpl = false;
            bmpl &= l.benign;
        }
    }
    let sparse_ordering = sparse_ordering(p);
    PlsProfile {
        acyclic: cycles.is_empty(),
        qimp,
        ump: is_ump_from_cycles(p, cycles),
        nmpl,
        bmpl,
        sparse: sparse_ordering.is_some(),
        sparse_ordering,
        small_girth: cycles.iter().all(|c| c.len() <= 4),
        two_connected_qimp: qimp && p.n_lines() > 0 && p.is_connected() && pieces(p).len() == 1,
        n_cycles: cycles.len(),
    }
}

/// Every line has one midpoint across all cycles through it.
pub(crate) fn is_ump_from_cycles(p: &Pls, cycles: &[Cycle]) -> bool {
    let mut mid = vec![usize::MAX; p.n_lines()];
    for c in cycles {
        for (&l, &m) in c.lines.iter().zip(&c.midpoints) {
            if mid[l] == usize::MAX {
                mid[l] = m;
            } else if mid[l] != m {
                return false;
            }
        }
    }
    true
}

/// A testifying ordering, found by repeatedly removing the lowest-index
/// line with a private point. Removability only grows as lines vanish,
/// so the greedy choice never blocks a solution.
pub fn sparse_ordering(p: &Pls) -> Option<Vec<usize>> {
    let mut alive: Vec<bool> = vec![true; p.n_lines()];
    let mut deg: Vec<usize> = (0..p.n_points()).map(|x| p.degree(x)).collect();
    let mut removed = Vec::with_capacity(p.n_lines());
    while removed.len() < p.n_lines() {
        let l = (0..p.n_lines()).find(|&l| alive[l] && p.lines()[l].iter().any(|&x| deg[x] == 1))?;
        alive[l] = false;
        for &x in &p.lines()[l] {
            deg[x] -= 1;
        }
        removed.push(l);
    }
    removed.reverse();
    Some(removed)
}

/// Each line after the first brings a point not on earlier lines.
pub fn is_testifying_ordering(p: &Pls, order: &[usize]) -> bool {
    let mut seen = vec![false; p.n_lines()];
    if order.len() != p.n_lines() || order.iter().any(|&l| l >= p.n_lines() || std::mem::replace(&mut seen[l], true)) {
        return false;
    }
    let mut covered = 0u64;
    for (i, &l) in order.iter().enumerate() {
        if i > 0 && p.line_mask(l) & !covered == 0 {
            return false;
        }
        covered |= p.line_mask(l);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits;

    fn lambda1() -> Pls {
        Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"], ["7", "8", "1"], ["2", "9", "5"]]).unwrap()
    }

    fn fano() -> Pls {
        Pls::from_lines(&[
            ["a", "c", "p"],
            ["b", "c", "x"],
            ["a", "b", "q"],
            ["a", "x", "r"],
            ["b", "p", "r"],
            ["c", "q", "r"],
            ["p", "q", "x"],
        ])
        .unwrap()
    }

    fn line_index(p: &Pls, l: [&str; 3]) -> usize {
        let m = bits::from_iter(l.iter().map(|s| p.index_of(s).unwrap()));
        (0..p.n_lines()).find(|&i| p.line_mask(i) == m).unwrap()
    }

    #[test]
    fn lambda1_profile() {
        let p = lambda1();
        let prof = classify_pls(&p).unwrap();
        assert!(!prof.ump && !prof.bmpl && !prof.nmpl && !prof.qimp && !prof.acyclic);
        assert!(prof.sparse);
        assert!(is_testifying_ordering(&p, prof.sparse_ordering.as_ref().unwrap()));
        let listed = [["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"], ["7", "8", "1"], ["2", "9", "5"]];
        let order: Vec<usize> = listed.iter().map(|&l| line_index(&p, l)).collect();
        assert!(is_testifying_ordering(&p, &order));
    }

    #[test]
    fn fano_is_not_sparse() {
        let prof = classify_pls(&fano()).unwrap();
        assert!(!prof.sparse && prof.sparse_ordering.is_none());
        assert!(prof.small_girth);
    }

    #[test]
    fn acyclic_space_is_everything_vacuously() {
        let p = Pls::from_lines(&[["a", "b", "c"], ["c", "d", "e"]]).unwrap();
        let prof = classify_pls(&p).unwrap();
        assert!(prof.acyclic && prof.ump && prof.nmpl && prof.bmpl && prof.sparse && prof.qimp && prof.small_girth);
    }

    #[test]
    fn empty_line_set() {
        let p = Pls::new(&["x"], &[] as &[[&str; 3]]).unwrap();
        let prof = classify_pls(&p).unwrap();
        assert!(prof.acyclic && prof.qimp && prof.ump && prof.bmpl && prof.sparse);
        assert_eq!(prof.sparse_ordering, Some(vec![]));
    }

    #[test]
    fn triangle_is_two_connected_qimp() {
        let p = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "1"]]).unwrap();
        let prof = classify_pls(&p).unwrap();
        assert!(prof.two_connected_qimp && prof.ump && prof.nmpl);
    }

    #[test]
    fn bad_orderings_are_rejected() {
        let p = fano();
        assert!(!is_testifying_ordering(&p, &[0, 1, 2, 3, 4, 5, 6]));
        assert!(!is_testifying_ordering(&p, &[0, 0]));
    }
}
