use std::collections::VecDeque;

use serde::Serialize;

use crate::bits;

use super::{classify::is_ump_from_cycles, enumerate_cycles, Pls, PlsError};

/// Blueprint of a connected QIMP: plotting `mid` on each edge `(u, v, mid)`
/// gives back the space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Blueprint {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize, usize)>,
}

impl Blueprint {
    /// Re-plots the blueprint with the original labels.
    pub fn plot(&self, p: &Pls) -> Pls {
        let mut pts: Vec<&str> = self.vertices.iter().map(|&v| p.name(v)).collect();
        pts.extend(self.edges.iter().map(|e| p.name(e.2)));
        let lines: Vec<[&str; 3]> = self.edges.iter().map(|&(u, v, m)| [p.name(u), p.name(m), p.name(v)]).collect();
        Pls::new(&pts, &lines).expect("plotting a simple graph yields a valid space")
    }
}

/// The smallest quasi-isolated point of line `l`, if any.
pub(crate) fn plotted_point(p: &Pls, l: usize) -> Option<usize> {
    p.lines()[l].iter().copied().find(|&x| p.is_quasi_isolated(x))
}

pub fn blueprint_graph(p: &Pls) -> Result<Blueprint, PlsError> {
    if !p.is_connected() {
        return Err(PlsError::NotConnected);
    }
    let mut mids = 0u64;
    let mut edges = Vec::with_capacity(p.n_lines());
    for l in 0..p.n_lines() {
        let m = plotted_point(p, l).ok_or_else(|| PlsError::NotAQimp(p.line_names(l)))?;
        let mut rest = bits::ones(p.line_mask(l) & !bits::bit(m));
        let (u, v) = (rest.next().unwrap(), rest.next().unwrap());
        mids |= bits::bit(m);
        edges.push((u, v, m));
    }
    let vertices = (0..p.n_points()).filter(|&x| !bits::contains(mids, x)).collect();
    Ok(Blueprint { vertices, edges })
}

/// Lines grouped by the 2-connected blocks of the point/line incidence
/// graph; a line outside every cycle forms its own piece. Ordered by least line.
pub fn pieces(p: &Pls) -> Vec<u64> {
    let n = p.n_points();
    let total = n + p.n_lines();
    let mut adj = vec![Vec::new(); total];
    for (i, l) in p.lines().iter().enumerate() {
        for &x in l {
            adj[x].push(n + i);
            adj[n + i].push(x);
        }
    }
    let mut block_of_line = vec![usize::MAX; p.n_lines()];
    let mut blocks: Vec<u64> = Vec::new();
    let mut t = Tarjan { adj: &adj, disc: vec![usize::MAX; total], low: vec![0; total], time: 0, stack: vec![], on_block: |edges: &[(usize, usize)]| {
        if edges.len() < 2 {
            return;
        }
        let mut mask = 0u64;
        for &(a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    mask |= bits::bit(v - n);
                }
            }
        }
        for l in bits::ones(mask) {
            block_of_line[l] = blocks.len();
        }
        blocks.push(mask);
    }};
    for v in 0..total {
        if t.disc[v] == usize::MAX {
            t.run(v, usize::MAX);
        }
    }
    let mut out: Vec<u64> = blocks;
    for (l, &b) in block_of_line.iter().enumerate() {
        if b == usize::MAX {
            out.push(bits::bit(l));
        }
    }
    out.sort_by_key(|m| m.trailing_zeros());
    out
}

struct Tarjan<'a, F: FnMut(&[(usize, usize)])> {
    adj: &'a [Vec<usize>],
    disc: Vec<usize>,
    low: Vec<usize>,
    time: usize,
    stack: Vec<(usize, usize)>,
    on_block: F,
}

impl<F: FnMut(&[(usize, usize)])> Tarjan<'_, F> {
    fn run(&mut self, u: usize, parent: usize) {
        self.disc[u] = self.time;
        self.low[u] = self.time;
        self.time += 1;
        for k in 0..self.adj[u].len() {
            let v = self.adj[u][k];
            if self.disc[v] == usize::MAX {
                self.stack.push((u, v));
                self.run(v, u);
                self.low[u] = self.low[u].min(self.low[v]);
                if self.low[v] >= self.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = self.stack.pop() {
                        block.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    (self.on_block)(&block);
                }
            } else if v != parent && self.disc[v] < self.disc[u] {
                self.stack.push((u, v));
                self.low[u] = self.low[u].min(self.disc[v]);
            }
        }
    }
}

/// Every line of `lines` keeps a point that lies on no other line of `lines`.
pub(crate) fn lines_form_qimp(p: &Pls, lines: u64) -> bool {
    bits::ones(lines).all(|l| {
        p.lines()[l]
            .iter()
            .any(|&x| p.pencil(x).iter().filter(|&&k| bits::contains(lines, k)).count() == 1)
    })
}

/// One member of a tree of QIMPes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreePiece {
    pub points: u64,
    pub lines: u64,
    /// The single point shared with the earlier pieces; `None` starts a new component.
    pub glue: Option<usize>,
}

/// Splits a UMP into a tree of QIMPes: pieces in breadth-first order, each
/// merged into the piece it hangs from while the union stays a QIMP.
pub fn tree_decomposition(p: &Pls) -> Result<Vec<TreePiece>, PlsError> {
    let cycles = enumerate_cycles(p, None)?;
    if !is_ump_from_cycles(p, &cycles) {
        return Err(PlsError::NotAUmp);
    }
    if p.is_qimp() {
        return Ok(vec![TreePiece { points: p.all_points_mask(), lines: p.all_lines_mask(), glue: None }]);
    }
    let ps = pieces(p);
    let mut piece_of_line = vec![0usize; p.n_lines()];
    for (k, &m) in ps.iter().enumerate() {
        for l in bits::ones(m) {
            piece_of_line[l] = k;
        }
    }
    let mut group_of = vec![usize::MAX; ps.len()];
    let mut groups: Vec<TreePiece> = Vec::new();
    let mut seen_points = 0u64;
    for comp in p.components() {
        let x0 = comp[0];
        if p.degree(x0) == 0 {
            groups.push(TreePiece { points: bits::bit(x0), lines: 0, glue: None });
            continue;
        }
        let root = piece_of_line[p.pencil(x0)[0]];
        let mut queue = VecDeque::from([(root, None::<(usize, usize)>)]);
        group_of[root] = usize::MAX - 1;
        while let Some((k, attach)) = queue.pop_front() {
            let lines = ps[k];
            let pts = bits::ones(lines).fold(0, |m, l| m | p.line_mask(l));
            let merged = match attach {
                Some((host, _)) => {
                    let g = group_of[host];
                    let union = groups[g].lines | lines;
                    if lines_form_qimp(p, union) {
                        groups[g].lines = union;
                        groups[g].points |= pts;
                        group_of[k] = g;
                        true
                    } else {
                        false
                    }
                }
                None => false,
            };
            if !merged {
                if !lines_form_qimp(p, lines) {
                    return Err(PlsError::NotAUmp);
                }
                group_of[k] = groups.len();
                groups.push(TreePiece { points: pts, lines, glue: attach.map(|a| a.1) });
            }
            for x in bits::ones(pts & !seen_points) {
                for &l in p.pencil(x) {
                    let q = piece_of_line[l];
                    if group_of[q] == usize::MAX {
                        group_of[q] = usize::MAX - 1;
                        queue.push_back((q, Some((k, x))));
                    }
                }
            }
            seen_points |= pts;
        }
    }
    Ok(groups)
}
