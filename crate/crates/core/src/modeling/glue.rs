use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::matroid::{LabeledGraph, Matroid};
use crate::pls::Pls;

use super::ModelingError;

pub const DEFAULT_GLUE_LINE_BOUND: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueModel {
    pub graph: LabeledGraph,
    /// One bit per non-reference triangle edge, in gluing order.
    pub flips: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GlueSearch {
    Found(GlueModel),
    Exhausted,
}

/// Each line starts as its own triangle; all edges carrying one label are
/// then glued onto the first, each either straight or flipped. A partial
/// gluing is abandoned as soon as an edge collapses to a loop or two labels
/// land on the same vertex pair; both defects are permanent.
struct Glue<'a> {
    p: &'a Pls,
    copies: Vec<Vec<(usize, usize)>>,
    tasks: Vec<(usize, usize)>,
    n_vertices: usize,
    require_rank: bool,
    flips: Vec<bool>,
    out: Vec<GlueModel>,
    limit: usize,
}

impl Glue<'_> {
    fn run(&mut self, t: usize, uf: &UnionFind<usize>) -> bool {
        if t == self.tasks.len() {
            let g = self.build(uf);
            if !self.require_rank || g.rank() as i64 == self.p.rank() {
                self.out.push(GlueModel { graph: g, flips: self.flips.clone() });
            }
            return self.out.len() >= self.limit;
        }
        let (x, j) = self.tasks[t];
        let (a0, b0) = self.copies[x][0];
        let (aj, bj) = self.copies[x][j];
        for flip in [false, true] {
            let mut next = uf.clone();
            if flip {
                next.union(a0, bj);
                next.union(b0, aj);
            } else {
                next.union(a0, aj);
                next.union(b0, bj);
            }
            if self.is_dud(&next) {
                continue;
            }
            self.flips.push(flip);
            let stop = self.run(t + 1, &next);
            self.flips.pop();
            if stop {
                return true;
            }
        }
        false
    }

    fn is_dud(&self, uf: &UnionFind<usize>) -> bool {
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        for (x, cs) in self.copies.iter().enumerate() {
            for &(a, b) in cs {
                let (u, v) = (uf.find(a), uf.find(b));
                if u == v {
                    return true;
                }
                if *owner.entry((u.min(v), u.max(v))).or_insert(x) != x {
                    return true;
                }
            }
        }
        false
    }

    fn build(&self, uf: &UnionFind<usize>) -> LabeledGraph {
        let mut id: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.n_vertices {
            let r = uf.find(v);
            let k = id.len();
            id.entry(r).or_insert(k);
        }
        let names: Vec<String> = (0..id.len()).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize, &str)> = (0..self.p.n_points())
            .map(|x| {
                let (a, b) = self.copies[x][0];
                (id[&uf.find(a)], id[&uf.find(b)], self.p.name(x))
            })
            .collect();
        LabeledGraph::new(&names, &edges).expect("non-dud gluings are simple")
    }
}

/// Up to `limit` line-preserving graphs reachable by gluing, in flip order
/// (lowest flip vector first). Labels are glued by descending number of
/// lines through them, ties in point order. Points on no line become
/// separate edges.
pub fn enumerate_glue_models(p: &Pls, require_rank: bool, limit: usize) -> Result<Vec<GlueModel>, ModelingError> {
    if p.n_lines() > DEFAULT_GLUE_LINE_BOUND {
        return Err(ModelingError::BoundExceeded(format!(
            "gluing {} triangles exceeds the bound {DEFAULT_GLUE_LINE_BOUND}",
            p.n_lines()
        )));
    }
    let mut copies = vec![Vec::new(); p.n_points()];
    for (l, &[x, y, z]) in p.lines().iter().enumerate() {
        let b = 3 * l;
        copies[x].push((b, b + 1));
        copies[y].push((b + 1, b + 2));
        copies[z].push((b + 2, b));
    }
    let mut n_vertices = 3 * p.n_lines();
    for c in copies.iter_mut().filter(|c| c.is_empty()) {
        c.push((n_vertices, n_vertices + 1));
        n_vertices += 2;
    }
    let mut order: Vec<usize> = (0..p.n_points()).filter(|&x| p.degree(x) >= 2).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(p.degree(x)));
    let tasks = order.iter().flat_map(|&x| (1..p.degree(x)).map(move |j| (x, j))).collect();
    let mut g = Glue { p, copies, tasks, n_vertices, require_rank, flips: Vec::new(), out: Vec::new(), limit };
    let uf = UnionFind::new(n_vertices);
    if !g.is_dud(&uf) {
        g.run(0, &uf);
    }
    Ok(g.out)
}

pub fn naive_glue_search(p: &Pls, require_rank: bool) -> Result<GlueSearch, ModelingError> {
    Ok(match enumerate_glue_models(p, require_rank, 1)?.pop() {
        Some(m) => GlueSearch::Found(m),
        None => GlueSearch::Exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{check_line_pres, wheel_of};

    fn cycle_pls(n: usize) -> Pls {
        let lines: Vec<[String; 3]> =
            (1..=n).map(|i| [format!("p{i}"), format!("q{i}"), format!("p{}", i % n + 1)]).collect();
        Pls::from_lines(&lines).unwrap()
    }

    #[test]
    fn single_line_is_a_triangle() {
        let p = Pls::from_lines(&[["a", "b", "c"]]).unwrap();
        let GlueSearch::Found(m) = naive_glue_search(&p, true).unwrap() else { panic!() };
        assert_eq!(m.graph.n_vertices(), 3);
        assert!(m.flips.is_empty());
    }

    #[test]
    fn shared_label_needs_the_flip() {
        let p = Pls::from_lines(&[["a", "b", "c"], ["a", "e", "f"], ["c", "d", "e"]]).unwrap();
        let GlueSearch::Found(m) = naive_glue_search(&p, false).unwrap() else { panic!() };
        // the first bit glues the two edges labelled a
        assert!(m.flips[0]);
        assert!(check_line_pres(&p, &m.graph).unwrap());
        let all = enumerate_glue_models(&p, false, 100).unwrap();
        assert!(all.iter().all(|m| m.flips[0]));
    }

    #[test]
    fn lambda1_has_no_rank_preserving_gluing() {
        let p = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"], ["7", "8", "1"], ["2", "9", "5"]])
            .unwrap();
        assert_eq!(naive_glue_search(&p, true).unwrap(), GlueSearch::Exhausted);
    }

    #[test]
    fn short_cycles_glue_only_to_wheels() {
        for n in 3..=4 {
            let p = cycle_pls(n);
            let models = enumerate_glue_models(&p, false, usize::MAX).unwrap();
            assert!(!models.is_empty());
            for m in &models {
                assert!(wheel_of(&m.graph, m.graph.ground()).is_some(), "n = {n}");
            }
        }
    }

    #[test]
    fn five_cycle_admits_a_rank_deficient_gluing() {
        let p = cycle_pls(5);
        let models = enumerate_glue_models(&p, false, usize::MAX).unwrap();
        let odd = models.iter().find(|m| wheel_of(&m.graph, m.graph.ground()).is_none()).expect("non-wheel");
        assert_eq!(odd.graph.n_vertices(), 5);
        assert_eq!(odd.graph.rank(), 4);
        assert_eq!(p.rank(), 5);
    }
}
