use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::names::FreshNames;

use super::{classify::is_ump_from_cycles, enumerate_cycles, Cycle, LinkType, Pls, PlsError};

pub const DEFAULT_AUGMENT_LINE_BOUND: usize = 16;

/// One benign link added to a space: `link` runs from `link[0]` to its last
/// point through fresh inner points, and `midpoints` are the fresh third
/// points of its lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AugmentRecord {
    pub cycle: Vec<String>,
    pub link: Vec<String>,
    #[serde(rename = "type")]
    pub kind: u8,
    pub midpoints: Vec<String>,
}

impl AugmentRecord {
    pub fn link_type(&self) -> LinkType {
        if self.kind == 1 {
            LinkType::Type1
        } else {
            LinkType::Type2
        }
    }
}

#[derive(Debug, Clone)]
pub struct AddPathResult {
    pub pls: Pls,
    /// The path [x, z1, …, zs, y] by label.
    pub path: Vec<String>,
    /// Fresh midpoint of each path line, in path order.
    pub midpoints: Vec<String>,
    /// Set when the path is a benign midpoint-link of a cycle of the input.
    pub record: Option<AugmentRecord>,
}

impl AddPathResult {
    pub fn benign_link(&self) -> bool {
        self.record.is_some()
    }
}

/// Adds the path [x, z1, …, zs, y] with `inner_count = s` fresh inner points
/// and one fresh midpoint per line. Fresh labels are drawn in path order:
/// first midpoint, first inner point, second midpoint, ….
pub fn add_path(p: &Pls, x: &str, y: &str, inner_count: usize) -> Result<AddPathResult, PlsError> {
    let xi = p.index_of(x).ok_or_else(|| PlsError::UnknownPoint(x.to_string()))?;
    let yi = p.index_of(y).ok_or_else(|| PlsError::UnknownPoint(y.to_string()))?;
    if xi == yi {
        return Err(PlsError::SameEndpoints);
    }
    if inner_count == 0 && p.line_through(xi, yi).is_some() {
        return Err(PlsError::PathCollision(x.to_string(), y.to_string()));
    }
    let mut fresh = FreshNames::new(p.names());
    let base = p.n_points();
    let mut new_points = Vec::new();
    let mut path_idx = vec![xi];
    let mut mid_idx = Vec::new();
    for k in 0..=inner_count {
        mid_idx.push(base + new_points.len());
        new_points.push(fresh.fresh());
        if k < inner_count {
            path_idx.push(base + new_points.len());
            new_points.push(fresh.fresh());
        }
    }
    path_idx.push(yi);
    let lines: Vec<[usize; 3]> = (0..=inner_count).map(|k| [path_idx[k], mid_idx[k], path_idx[k + 1]]).collect();
    let out = p.extend(&new_points, &lines)?;
    let all: Vec<String> = p.names().iter().chain(&new_points).cloned().collect();
    let path: Vec<String> = path_idx.iter().map(|&i| all[i].clone()).collect();
    let midpoints: Vec<String> = mid_idx.iter().map(|&i| all[i].clone()).collect();
    let cycles = enumerate_cycles(p, None)?;
    let record = benign_cycle(&cycles, xi, yi, false).map(|(c, kind)| AugmentRecord {
        cycle: c.junction_names(p),
        link: path.clone(),
        kind: kind.number(),
        midpoints: midpoints.clone(),
    });
    Ok(AddPathResult { pls: out, path, midpoints, record })
}

/// The first cycle (in canonical order) for which x and y are the endpoints
/// of a benign midpoint-link.
fn benign_cycle(cycles: &[Cycle], x: usize, y: usize, type1_only: bool) -> Option<(&Cycle, LinkType)> {
    cycles.iter().find_map(|c| {
        let n = c.len();
        let (mx, my) = (c.midpoint_position(x), c.midpoint_position(y));
        let (jx, jy) = (c.junctions.iter().position(|&j| j == x), c.junctions.iter().position(|&j| j == y));
        let same_line = |i: usize, j: usize| j == i || j == (i + 1) % n;
        match (mx, my, jx, jy) {
            (Some(i), _, _, Some(j)) | (_, Some(i), Some(j), _) if same_line(i, j) => Some((c, LinkType::Type1)),
            (Some(i), Some(j), _, _) if !type1_only && ((i + 1) % n == j || (j + 1) % n == i) => {
                Some((c, LinkType::Type2))
            }
            _ => None,
        }
    })
}

/// Replays a history by adding each link's endpoints with fresh inner points.
pub fn replay_history(base: &Pls, history: &[AugmentRecord]) -> Result<Pls, PlsError> {
    let mut cur = base.clone();
    for r in history {
        let (x, y) = (&r.link[0], r.link.last().unwrap());
        cur = add_path(&cur, x, y, r.link.len() - 2)?.pls;
    }
    Ok(cur)
}

#[derive(Debug, Clone)]
pub struct AugmentedUmp {
    pub yes: bool,
    /// The UMP reached by removing the history's links.
    pub base: Option<Pls>,
    /// Links in the order they are added to `base`.
    pub history: Vec<AugmentRecord>,
}

/// Searches for a sequence of removable benign midpoint-links whose removal
/// leaves a UMP. A removable link has quasi-isolated midpoints and inner
/// points on exactly the two adjacent link lines.
pub fn recognize_augmented_ump(p: &Pls, type1_only: bool) -> Result<AugmentedUmp, PlsError> {
    recognize_bounded(p, type1_only, DEFAULT_AUGMENT_LINE_BOUND)
}

pub fn recognize_bounded(p: &Pls, type1_only: bool, max_lines: usize) -> Result<AugmentedUmp, PlsError> {
    if p.n_lines() > max_lines {
        return Err(PlsError::BoundExceeded(format!(
            "augmentation search on {} lines exceeds the bound {max_lines}",
            p.n_lines()
        )));
    }
    let mut search = Search { p, type1_only, failed: HashSet::new() };
    let mut history = Vec::new();
    match search.run(p.all_points_mask(), p.all_lines_mask(), &mut history)? {
        Some(base) => {
            history.reverse();
            Ok(AugmentedUmp { yes: true, base: Some(base), history })
        }
        None => Ok(AugmentedUmp { yes: false, base: None, history: vec![] }),
    }
}

struct Search<'a> {
    p: &'a Pls,
    type1_only: bool,
    failed: HashSet<(u64, u64)>,
}

/// A candidate link in sub-space indices.
struct Candidate {
    path: Vec<usize>,
    lines: u64,
    mids: Vec<usize>,
}

impl Search<'_> {
    /// On success returns the base UMP; `removed` collects records in removal order.
    fn run(&mut self, points: u64, lines: u64, removed: &mut Vec<AugmentRecord>) -> Result<Option<Pls>, PlsError> {
        if self.failed.contains(&(points, lines)) {
            return Ok(None);
        }
        let sub = self.p.restrict(points, lines);
        let cycles = enumerate_cycles(&sub, None)?;
        if is_ump_from_cycles(&sub, &cycles) {
            return Ok(Some(sub));
        }
        let pt_orig: Vec<usize> = bits::ones(points).collect();
        let ln_orig: Vec<usize> = bits::ones(lines).collect();
        for cand in removable_paths(&sub) {
            let inner = bits::from_iter(cand.path[1..cand.path.len() - 1].iter().copied());
            let gone_pts = inner | bits::from_iter(cand.mids.iter().copied());
            let rest_pts = sub.all_points_mask() & !gone_pts;
            let rest_lines = sub.all_lines_mask() & !cand.lines;
            let rest = sub.restrict(rest_pts, rest_lines);
            // indices of the endpoints inside `rest`
            let pos = |x: usize| bits::count(rest_pts & bits::full(x));
            let (x, y) = (pos(cand.path[0]), pos(*cand.path.last().unwrap()));
            let rest_cycles = enumerate_cycles(&rest, None)?;
            let Some((c, kind)) = benign_cycle(&rest_cycles, x, y, self.type1_only) else {
                continue;
            };
            let record = AugmentRecord {
                cycle: c.junction_names(&rest),
                link: cand.path.iter().map(|&i| sub.name(i).to_string()).collect(),
                kind: kind.number(),
                midpoints: cand.mids.iter().map(|&i| sub.name(i).to_string()).collect(),
            };
            let orig_pts = bits::from_iter(bits::ones(rest_pts).map(|i| pt_orig[i]));
            let orig_lines = bits::from_iter(bits::ones(rest_lines).map(|i| ln_orig[i]));
            removed.push(record);
            if let Some(base) = self.run(orig_pts, orig_lines, removed)? {
                return Ok(Some(base));
            }
            removed.pop();
        }
        self.failed.insert((points, lines));
        Ok(None)
    }
}

fn removable_paths(s: &Pls) -> Vec<Candidate> {
    let mut out: Vec<Candidate> = Vec::new();
    let mut seen: HashSet<(u64, u64, u64)> = HashSet::new();
    for l in 0..s.n_lines() {
        for x in s.lines()[l] {
            let mut path = vec![x];
            let mut mids = Vec::new();
            walk(s, l, x, bits::bit(x), &mut path, &mut mids, 0, &mut |path, mids, lines| {
                let ends = bits::bit(path[0]) | bits::bit(*path.last().unwrap());
                if seen.insert((ends, lines, bits::from_iter(mids.iter().copied()))) {
                    out.push(Candidate { path: path.to_vec(), lines, mids: mids.to_vec() });
                }
            });
        }
    }
    out
}

/// Extends the path ending at `from` along line `l`.
#[allow(clippy::too_many_arguments)]
fn walk(
    s: &Pls,
    l: usize,
    from: usize,
    used: u64,
    path: &mut Vec<usize>,
    mids: &mut Vec<usize>,
    lines: u64,
    emit: &mut dyn FnMut(&[usize], &[usize], u64),
) {
    let lines = lines | bits::bit(l);
    for m in s.lines()[l] {
        if m == from || s.degree(m) != 1 {
            continue;
        }
        let w = s.third(l, from, m);
        if bits::contains(used, w) {
            continue;
        }
        path.push(w);
        mids.push(m);
        emit(path, mids, lines);
        if s.degree(w) == 2 {
            let next = s.pencil(w).iter().copied().find(|&k| k != l).unwrap();
            let next_mask = s.line_mask(next) & !bits::bit(w);
            if !bits::contains(lines, next) && next_mask & used == 0 {
                walk(s, next, w, used | bits::bit(w) | bits::bit(m), path, mids, lines, emit);
            }
        }
        path.pop();
        mids.pop();
    }
}
