use std::collections::HashSet;

use serde::Serialize;

use crate::pls::Pls;

use super::{is_graphic, BinaryMatroid, GraphicResult, MatroidError};

pub const DEFAULT_MODEL_POINT_BOUND: usize = 24;
/// Most canonical models examined by the graph-trigger check.
pub const DEFAULT_TRIGGER_MODEL_LIMIT: usize = 5_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelSearch {
    Found(BinaryMatroid),
    Unsatisfiable,
}

/// Labellings are generated in canonical form: following the point order,
/// each label is either in the span of the earlier ones or the next unit
/// vector. The span of `r` pivots is then exactly `1..2^r`, and every
/// labelling is met once per change of coordinates.
struct Search<'a> {
    p: &'a Pls,
    dim_max: usize,
    exact: Option<usize>,
    labels: Vec<u64>,
    used: HashSet<u64>,
    rank: usize,
    limit: usize,
    out: Vec<BinaryMatroid>,
}

impl Search<'_> {
    fn run(&mut self, x: usize) -> bool {
        let n = self.p.n_points();
        if x == n {
            if self.exact.map_or(true, |d| self.rank == d) {
                let m = BinaryMatroid::new(self.p.names(), self.rank, &self.labels).expect("labels fit the dimension");
                self.out.push(m);
            }
            return self.out.len() >= self.limit;
        }
        if let Some(d) = self.exact {
            if self.rank + (n - x) < d {
                return false;
            }
        }
        let mut forced = None;
        for &l in self.p.pencil(x) {
            let [a, b] = others(self.p.lines()[l], x);
            if a < x && b < x {
                let f = self.labels[a] ^ self.labels[b];
                if forced.is_some_and(|g| g != f) {
                    return false;
                }
                forced = Some(f);
            }
        }
        let candidates: Vec<u64> = match forced {
            Some(f) => vec![f],
            None => {
                let top = if self.rank < self.dim_max { 1u64 << self.rank } else { (1u64 << self.rank) - 1 };
                (1..=top).collect()
            }
        };
        for v in candidates {
            if v == 0 || self.used.contains(&v) || !self.lookahead(x, v) {
                continue;
            }
            let pivot = v == 1u64 << self.rank;
            self.labels.push(v);
            self.used.insert(v);
            self.rank += pivot as usize;
            let stop = self.run(x + 1);
            self.rank -= pivot as usize;
            self.used.remove(&v);
            self.labels.pop();
            if stop {
                return true;
            }
        }
        false
    }

    /// A line with one earlier point and one later point fixes the later
    /// label; it must still be free.
    fn lookahead(&self, x: usize, v: u64) -> bool {
        self.p.pencil(x).iter().all(|&l| {
            let [a, b] = others(self.p.lines()[l], x);
            let (lo, hi) = (a.min(b), a.max(b));
            !(lo < x && hi > x) || !self.used.contains(&(v ^ self.labels[lo]))
        })
    }
}

fn others(line: [usize; 3], x: usize) -> [usize; 2] {
    let mut it = line.into_iter().filter(|&y| y != x);
    [it.next().unwrap(), it.next().unwrap()]
}

/// Canonical simple binary labellings under which every line sums to zero.
/// With a target, only labellings of exactly that rank are returned.
pub fn enumerate_binary_models(
    p: &Pls,
    rank_target: Option<i64>,
    limit: usize,
) -> Result<Vec<BinaryMatroid>, MatroidError> {
    if p.n_points() > DEFAULT_MODEL_POINT_BOUND {
        return Err(MatroidError::BoundExceeded(format!(
            "binary model search over {} points exceeds the bound {DEFAULT_MODEL_POINT_BOUND}",
            p.n_points()
        )));
    }
    let (dim_max, exact) = match rank_target {
        Some(t) if t < 0 => return Ok(Vec::new()),
        Some(t) => (t as usize, Some(t as usize)),
        None => (p.n_points(), None),
    };
    if dim_max > 63 {
        return Err(MatroidError::BoundExceeded(format!("dimension {dim_max} exceeds 63")));
    }
    let mut s =
        Search { p, dim_max, exact, labels: Vec::new(), used: HashSet::new(), rank: 0, limit, out: Vec::new() };
    s.run(0);
    Ok(s.out)
}

pub fn binary_model_search(p: &Pls, rank_target: Option<i64>) -> Result<ModelSearch, MatroidError> {
    Ok(match enumerate_binary_models(p, rank_target, 1)?.pop() {
        Some(m) => ModelSearch::Found(m),
        None => ModelSearch::Unsatisfiable,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriggerReport {
    pub is_trigger: bool,
    /// No rank-preserving binary model exists at all.
    pub vacuous: bool,
    pub models: usize,
    #[serde(skip)]
    pub counterexample: Option<BinaryMatroid>,
}

/// Every canonical binary model of rank `rk(p)` must be graphic.
pub fn graph_trigger_check(p: &Pls) -> Result<TriggerReport, MatroidError> {
    let models = enumerate_binary_models(p, Some(p.rank()), DEFAULT_TRIGGER_MODEL_LIMIT + 1)?;
    if models.len() > DEFAULT_TRIGGER_MODEL_LIMIT {
        return Err(MatroidError::BoundExceeded(format!("more than {DEFAULT_TRIGGER_MODEL_LIMIT} binary models")));
    }
    let mut counterexample = None;
    for m in &models {
        if let GraphicResult::NotGraphic = is_graphic(m)? {
            counterexample = Some(m.clone());
            break;
        }
    }
    Ok(TriggerReport {
        is_trigger: counterexample.is_none(),
        vacuous: models.is_empty(),
        models: models.len(),
        counterexample,
    })
}
