use std::collections::HashSet;

use serde::Serialize;

use crate::bits;
use crate::pls::{enumerate_cycles, sparse_ordering, Pls};

use super::{chordless_circuits, extendible_triangles, LabeledGraph, Matroid, MatroidError};

/// Point index → ground index, matching names. Fails unless this is a bijection.
pub fn label_map<M: Matroid + ?Sized>(p: &Pls, m: &M) -> Result<Vec<usize>, MatroidError> {
    if p.n_points() != m.size() {
        return Err(MatroidError::NotABijection(format!("{} points but {} elements", p.n_points(), m.size())));
    }
    let mut used = 0u64;
    let mut psi = Vec::with_capacity(p.n_points());
    for x in 0..p.n_points() {
        let e = m
            .element_index(p.name(x))
            .ok_or_else(|| MatroidError::NotABijection(format!("no element labelled {}", p.name(x))))?;
        used |= bits::bit(e);
        psi.push(e);
    }
    debug_assert_eq!(used, m.ground());
    Ok(psi)
}

fn image(psi: &[usize], points: u64) -> u64 {
    bits::ones(points).fold(0, |m, x| m | bits::bit(psi[x]))
}

fn preimage(psi: &[usize], elems: u64) -> u64 {
    psi.iter().enumerate().filter(|&(_, &e)| bits::contains(elems, e)).fold(0, |m, (x, _)| m | bits::bit(x))
}

fn line_pres_with<M: Matroid + ?Sized>(p: &Pls, m: &M, psi: &[usize]) -> bool {
    (0..p.n_lines()).all(|l| m.rank_of(image(psi, p.line_mask(l))) < 3)
}

/// Every line maps to a dependent triple of a simple matroid.
pub fn check_line_pres<M: Matroid + ?Sized>(p: &Pls, m: &M) -> Result<bool, MatroidError> {
    let psi = label_map(p, m)?;
    if !m.is_simple() {
        return Err(MatroidError::NotSimple);
    }
    Ok(line_pres_with(p, m, &psi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankModelReport {
    pub ok: bool,
    pub line_pres: bool,
    pub mrk: usize,
    pub rk: i64,
    /// `mrk ≤ rk`, reported when the space is sparse and lines are preserved.
    pub sparse_bound: Option<bool>,
}

pub fn check_rank_model<M: Matroid + ?Sized>(p: &Pls, m: &M) -> Result<RankModelReport, MatroidError> {
    let line_pres = check_line_pres(p, m)?;
    let (mrk, rk) = (m.rank(), p.rank());
    let sparse_bound = (line_pres && sparse_ordering(p).is_some()).then_some(mrk as i64 <= rk);
    Ok(RankModelReport { ok: mrk as i64 == rk, line_pres, mrk, rk, sparse_bound })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCheck {
    pub junctions: Vec<String>,
    /// Midpoint images form a circuit.
    pub circuit: bool,
    /// Rank of the cycle's own subspace: its number of lines.
    pub rk: usize,
    /// Matroid rank of the image of the cycle support.
    pub mrk: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CyclePresReport {
    /// Circuit-based: every cycle's midpoints map to a circuit.
    pub ok: bool,
    /// Rank-based: every cycle has `rk == mrk`.
    pub rank_based: bool,
    /// Both readings agree cycle by cycle.
    pub consistent: bool,
    pub cycles: Vec<CycleCheck>,
}

pub fn check_cycle_preserving<M: Matroid + ?Sized>(p: &Pls, m: &M) -> Result<CyclePresReport, MatroidError> {
    let psi = label_map(p, m)?;
    if !m.is_simple() || !line_pres_with(p, m, &psi) {
        return Err(MatroidError::NotLinePreserving);
    }
    let mut cycles = Vec::new();
    for c in enumerate_cycles(p, None)? {
        cycles.push(CycleCheck {
            junctions: c.junction_names(p),
            circuit: m.is_circuit(image(&psi, c.midpoint_mask())),
            rk: c.len(),
            mrk: m.rank_of(image(&psi, c.support)),
        });
    }
    let ok = cycles.iter().all(|c| c.circuit);
    let rank_based = cycles.iter().all(|c| c.rk == c.mrk);
    let consistent = cycles.iter().all(|c| c.circuit == (c.rk == c.mrk));
    Ok(CyclePresReport { ok, rank_based, consistent, cycles })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitFriendlyReport {
    pub ok: bool,
    /// Preimages of chordless circuits that are neither a line nor a cycle's midpoints.
    pub offending_circuits: Vec<Vec<String>>,
}

/// Every chordless circuit pulls back to a line or to a cycle's midpoint set.
/// Lines need not map to triangles.
pub fn check_circuit_friendly(p: &Pls, g: &LabeledGraph) -> Result<CircuitFriendlyReport, MatroidError> {
    let psi = label_map(p, g)?;
    let mut allowed: HashSet<u64> = (0..p.n_lines()).map(|l| p.line_mask(l)).collect();
    allowed.extend(enumerate_cycles(p, None)?.iter().map(|c| c.midpoint_mask()));
    let mut offending = Vec::new();
    for gamma in chordless_circuits(g)? {
        let pre = preimage(&psi, gamma);
        if !allowed.contains(&pre) {
            offending.push(bits::ones(pre).map(|x| p.name(x).to_string()).collect());
        }
    }
    Ok(CircuitFriendlyReport { ok: offending.is_empty(), offending_circuits: offending })
}

/// Every extendible triangle pulls back to a line.
pub fn check_triangle_friendly(p: &Pls, g: &LabeledGraph) -> Result<bool, MatroidError> {
    let psi = label_map(p, g)?;
    let lines: HashSet<u64> = (0..p.n_lines()).map(|l| p.line_mask(l)).collect();
    Ok(extendible_triangles(g).into_iter().all(|t| lines.contains(&preimage(&psi, t))))
}
