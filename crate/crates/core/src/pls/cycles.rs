use serde::Serialize;

use crate::bits;

use super::{Pls, PlsError};

/// Cycle enumeration refuses larger spaces unless the caller raises the bound.
pub const DEFAULT_CYCLE_POINT_BOUND: usize = 40;

/// A cycle in canonical form: the least junction first, and the second
/// junction smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Cycle {
    pub junctions: Vec<usize>,
    /// `lines[i]` joins `junctions[i]` and `junctions[i + 1]` (cyclically).
    pub lines: Vec<usize>,
    /// `midpoints[i]` is the third point of `lines[i]`.
    pub midpoints: Vec<usize>,
    /// C*: junctions and midpoints.
    pub support: u64,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.junctions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.junctions.is_empty()
    }

    pub fn line_mask(&self) -> u64 {
        bits::from_iter(self.lines.iter().copied())
    }

    pub fn midpoint_mask(&self) -> u64 {
        bits::from_iter(self.midpoints.iter().copied())
    }

    pub fn junction_mask(&self) -> u64 {
        bits::from_iter(self.junctions.iter().copied())
    }

    /// Position of the C-line whose midpoint is `q`.
    pub fn midpoint_position(&self, q: usize) -> Option<usize> {
        self.midpoints.iter().position(|&m| m == q)
    }

    pub fn junction_names(&self, p: &Pls) -> Vec<String> {
        self.junctions.iter().map(|&j| p.name(j).to_string()).collect()
    }

    /// Rebuilds a cycle from a junction tuple, validating every condition.
    pub fn from_junctions(p: &Pls, junctions: &[usize]) -> Option<Cycle> {
        let n = junctions.len();
        if n < 3 {
            return None;
        }
        let mut lines = Vec::with_capacity(n);
        let mut midpoints = Vec::with_capacity(n);
        let mut support = 0u64;
        for i in 0..n {
            let (a, b) = (junctions[i], junctions[(i + 1) % n]);
            let l = p.line_through(a, b)?;
            let m = p.third(l, a, b);
            if i + 1 < n && p.line_mask(l) & support & !bits::bit(a) != 0 {
                return None;
            }
            if i + 1 == n && bits::contains(support, m) {
                return None;
            }
            support |= p.line_mask(l);
            lines.push(l);
            midpoints.push(m);
        }
        (bits::count(support) == 2 * n).then(|| canonical(Cycle { junctions: junctions.to_vec(), lines, midpoints, support }))
    }
}

fn canonical(c: Cycle) -> Cycle {
    let n = c.len();
    let start = (0..n).min_by_key(|&i| c.junctions[i]).unwrap();
    let fwd = c.junctions[(start + 1) % n] < c.junctions[(start + n - 1) % n];
    let mut j = Vec::with_capacity(n);
    let mut l = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    for k in 0..n {
        if fwd {
            let i = (start + k) % n;
            j.push(c.junctions[i]);
            l.push(c.lines[i]);
            m.push(c.midpoints[i]);
        } else {
            let i = (start + n - k) % n;
            j.push(c.junctions[i]);
            // line between junction i and its predecessor
            let li = (i + n - 1) % n;
            l.push(c.lines[li]);
            m.push(c.midpoints[li]);
        }
    }
    Cycle { junctions: j, lines: l, midpoints: m, support: c.support }
}

/// All cycles with at most `max_len` junctions (`None`: no length limit),
/// sorted by length then junction tuple.
pub fn enumerate_cycles(p: &Pls, max_len: Option<usize>) -> Result<Vec<Cycle>, PlsError> {
    enumerate_cycles_bounded(p, max_len, DEFAULT_CYCLE_POINT_BOUND)
}

pub fn enumerate_cycles_bounded(p: &Pls, max_len: Option<usize>, max_points: usize) -> Result<Vec<Cycle>, PlsError> {
    if p.n_points() > max_points {
        return Err(PlsError::BoundExceeded(format!(
            "cycle enumeration on {} points exceeds the bound {max_points}",
            p.n_points()
        )));
    }
    let max_len = max_len.unwrap_or(p.n_points() / 2).min(p.n_points() / 2);
    let mut out = Vec::new();
    for start in 0..p.n_points() {
        let mut st = Dfs { p, max_len, start, junctions: vec![start], lines: vec![], support: bits::bit(start), out: &mut out };
        st.extend();
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.junctions.cmp(&b.junctions)));
    Ok(out)
}

struct Dfs<'a> {
    p: &'a Pls,
    max_len: usize,
    start: usize,
    junctions: Vec<usize>,
    lines: Vec<usize>,
    support: u64,
    out: &'a mut Vec<Cycle>,
}

impl Dfs<'_> {
    fn extend(&mut self) {
        let k = self.junctions.len();
        let last = *self.junctions.last().unwrap();
        if k >= 3 && self.junctions[1] < last {
            if let Some(l) = self.p.line_through(last, self.start) {
                let q = self.p.third(l, last, self.start);
                if !bits::contains(self.support, q) {
                    let mut lines = self.lines.clone();
                    lines.push(l);
                    let mut midpoints: Vec<usize> = (0..k - 1)
                        .map(|i| self.p.third(self.lines[i], self.junctions[i], self.junctions[i + 1]))
                        .collect();
                    midpoints.push(q);
                    self.out.push(Cycle {
                        junctions: self.junctions.clone(),
                        lines,
                        midpoints,
                        support: self.support | bits::bit(q),
                    });
                }
            }
        }
        if k >= self.max_len {
            return;
        }
        for &l in self.p.pencil(last) {
            let lm = self.p.line_mask(l);
            // the new line meets the path only in its current end
            if lm & self.support != bits::bit(last) {
                continue;
            }
            for next in bits::ones(lm & !bits::bit(last)) {
                if next <= self.start {
                    continue;
                }
                self.junctions.push(next);
                self.lines.push(l);
                self.support |= lm;
                self.extend();
                self.support &= !(lm & !bits::bit(last));
                self.lines.pop();
                self.junctions.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(p: &Pls, names: &[&str]) -> Vec<usize> {
        names.iter().map(|s| p.index_of(s).unwrap()).collect()
    }

    fn lambda1() -> Pls {
        Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"], ["7", "8", "1"], ["2", "9", "5"]]).unwrap()
    }

    #[test]
    fn lambda1_cycles() {
        let p = lambda1();
        let cs = enumerate_cycles(&p, None).unwrap();
        let tuples: Vec<Vec<usize>> = cs.iter().map(|c| c.junctions.clone()).collect();
        assert!(tuples.contains(&ix(&p, &["1", "3", "5", "7"])));
        assert!(tuples.contains(&ix(&p, &["1", "2", "5", "7"])));
        for c in &cs {
            assert_eq!(bits::count(c.support), 2 * c.len());
            assert_eq!(Cycle::from_junctions(&p, &c.junctions).as_ref(), Some(c));
        }
    }

    #[test]
    fn triangle_has_one_cycle() {
        let p = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "1"]]).unwrap();
        let cs = enumerate_cycles(&p, None).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].junctions, ix(&p, &["1", "3", "5"]));
        assert_eq!(cs[0].midpoints, ix(&p, &["2", "4", "6"]));
    }

    #[test]
    fn a_tree_of_lines_has_no_cycles() {
        let p = Pls::from_lines(&[["a", "b", "c"], ["c", "d", "e"], ["c", "f", "g"]]).unwrap();
        assert!(enumerate_cycles(&p, None).unwrap().is_empty());
    }

    #[test]
    fn closing_line_needs_a_new_point() {
        // [1,2,3,4] is a path, [4,1] = {4,1,5} exists but 5 lies on [2,3].
        let p = Pls::from_lines(&[["1", "a", "2"], ["2", "5", "3"], ["3", "b", "4"], ["4", "1", "5"]]).unwrap();
        let cs = enumerate_cycles(&p, None).unwrap();
        assert!(cs.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn max_len_limits_output() {
        let p = lambda1();
        let all = enumerate_cycles(&p, None).unwrap();
        let short = enumerate_cycles(&p, Some(3)).unwrap();
        assert!(short.iter().all(|c| c.len() <= 3));
        assert_eq!(short.len(), all.iter().filter(|c| c.len() <= 3).count());
    }

    #[test]
    fn point_bound_is_enforced() {
        assert!(matches!(enumerate_cycles_bounded(&lambda1(), None, 5), Err(PlsError::BoundExceeded(_))));
    }
}
