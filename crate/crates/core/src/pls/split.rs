use std::collections::HashSet;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::bits;

use super::{Pls, PlsError};

pub const DEFAULT_SPLIT_LINE_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitRank {
    pub r_star: usize,
    /// An acyclic space reached with `r_star` splittings; copies of a point
    /// `x` are named `x`, `x'`, `x''`, ….
    #[serde(skip)]
    pub acyclic_witness: Pls,
    /// rk = |Λ| − r* + c.
    pub identity_holds: bool,
}

/// A state is the multiset of (pencil, original point) pairs, kept sorted.
type State = Vec<(u64, usize)>;

fn components(state: &State, n_lines: usize) -> (usize, bool) {
    let n = state.len();
    let mut uf = UnionFind::new(n + n_lines);
    let mut forest = true;
    for (i, &(pencil, _)) in state.iter().enumerate() {
        for l in bits::ones(pencil) {
            forest &= uf.union(i, n + l);
        }
    }
    let mut roots: Vec<usize> = (0..n + n_lines).map(|v| uf.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    (roots.len(), forest)
}

/// Least number of point splittings that make the space acyclic without
/// changing its component count, by breadth-first search over split states.
pub fn split_rank(p: &Pls) -> Result<SplitRank, PlsError> {
    split_rank_bounded(p, DEFAULT_SPLIT_LINE_BOUND)
}

pub fn split_rank_bounded(p: &Pls, max_lines: usize) -> Result<SplitRank, PlsError> {
    if p.n_lines() > max_lines {
        return Err(PlsError::BoundExceeded(format!(
            "point splitting on {} lines exceeds the bound {max_lines}",
            p.n_lines()
        )));
    }
    let m = p.n_lines();
    let mut start: State = (0..p.n_points()).map(|x| (bits::from_iter(p.pencil(x).iter().copied()), x)).collect();
    start.sort_unstable();
    let (c, _) = components(&start, m);
    let mut level = vec![start.clone()];
    let mut seen: HashSet<State> = HashSet::from([start]);
    let mut depth = 0;
    loop {
        if let Some(done) = level.iter().find(|s| components(s, m).1) {
            let witness = witness(p, done);
            let identity_holds = p.rank() == m as i64 - depth as i64 + c as i64;
            return Ok(SplitRank { r_star: depth, acyclic_witness: witness, identity_holds });
        }
        let mut next = Vec::new();
        for s in &level {
            for (i, &(pencil, origin)) in s.iter().enumerate() {
                if bits::count(pencil) < 2 {
                    continue;
                }
                let low = pencil & pencil.wrapping_neg();
                let rest = pencil & !low;
                // parts containing the lowest line, proper and nonempty
                for sub in bits::submasks(rest) {
                    let part = low | sub;
                    if part == pencil {
                        continue;
                    }
                    let mut t: State = s.clone();
                    t[i] = (part, origin);
                    t.push((pencil & !part, origin));
                    t.sort_unstable();
                    if components(&t, m).0 == c && seen.insert(t.clone()) {
                        next.push(t);
                    }
                }
            }
        }
        if next.is_empty() {
            unreachable!("a cyclic space always admits a non-disconnecting split");
        }
        level = next;
        depth += 1;
    }
}

fn witness(p: &Pls, s: &State) -> Pls {
    let mut copies = vec![0usize; p.n_points()];
    let mut names = Vec::with_capacity(s.len());
    let mut line_pts: Vec<Vec<usize>> = vec![Vec::new(); p.n_lines()];
    for (k, &(pencil, origin)) in s.iter().enumerate() {
        names.push(format!("{}{}", p.name(origin), "'".repeat(copies[origin])));
        copies[origin] += 1;
        for l in bits::ones(pencil) {
            line_pts[l].push(k);
        }
    }
    let lines: Vec<[usize; 3]> = line_pts.iter().map(|v| [v[0], v[1], v[2]]).collect();
    Pls::from_unsorted(names, &lines).expect("split states keep lines of size 3")
}
