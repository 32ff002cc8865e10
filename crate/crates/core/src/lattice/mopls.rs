use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::bits;
use crate::names::natural_cmp;
use crate::pls::Pls;

use super::{profile::is_modular, Lattice, LatticeError};

/// Lines on the join-irreducibles of a modular lattice: one 3-element
/// constant-join set per join value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mopls {
    /// Lattice indices of the points (the join-irreducibles, ascending).
    pub points: Vec<usize>,
    pub names: Vec<String>,
    /// `below[k]`: points ≤ point k, as a mask over positions (contains k).
    pub below: Vec<u64>,
    /// Lines as ascending position triples.
    pub lines: Vec<[usize; 3]>,
    /// Common pairwise join of each line.
    pub line_join: Vec<usize>,
}

impl Mopls {
    /// The underlying partial linear space, labeled by lattice names.
    pub fn to_pls(&self) -> Pls {
        let lines: Vec<[&str; 3]> = self
            .lines
            .iter()
            .map(|l| l.map(|k| self.names[k].as_str()))
            .collect();
        Pls::new(&self.names, &lines).expect("lines of a modular lattice satisfy the PLS axiom")
    }

    pub fn reconstruct(&self) -> Result<Reconstruction, LatticeError> {
        reconstruct_from_mopls(&self.names, &self.below, &self.lines)
    }

    /// Isomorphism a ↦ J(a) from `l` onto the lattice of closed ideals, if it is one.
    pub fn round_trip_map(&self, l: &Lattice) -> Option<Vec<usize>> {
        let r = self.reconstruct().ok()?;
        let ji = l.join_irreducibles();
        let index: HashMap<u64, usize> = r.ideals.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let f: Option<Vec<usize>> = (0..l.len()).map(|a| index.get(&ji.mask(a)).copied()).collect();
        let f = f?;
        l.is_isomorphism(&r.lattice, &f).then_some(f)
    }
}

/// Maximal cliques with constant join, grouped by join value (ascending).
fn constant_join_cliques(l: &Lattice) -> Result<(Vec<usize>, BTreeMap<usize, Vec<u64>>), LatticeError> {
    if !is_modular(l) {
        return Err(LatticeError::NotModular);
    }
    let ji = l.join_irreducibles();
    let m = ji.len();
    if m > 64 {
        return Err(LatticeError::TooManyJoinIrreducibles(m));
    }
    let mut adj: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for a in 0..m {
        for b in a + 1..m {
            let v = l.join(ji.elems[a], ji.elems[b]);
            let row = adj.entry(v).or_insert_with(|| vec![0; m]);
            row[a] |= bits::bit(b);
            row[b] |= bits::bit(a);
        }
    }
    let mut out = BTreeMap::new();
    for (v, nbr) in adj {
        let mut cliques = Vec::new();
        bron_kerbosch(&nbr, 0, bits::full(m), 0, &mut cliques);
        for &c in &cliques {
            if bits::count(c) >= 4 {
                let names = bits::ones(c).map(|k| l.name(ji.elems[k]).to_string()).collect();
                return Err(LatticeError::LineTooLarge(names, bits::count(c)));
            }
        }
        cliques.retain(|&c| bits::count(c) == 3);
        if !cliques.is_empty() {
            out.insert(v, cliques);
        }
    }
    Ok((ji.elems, out))
}

fn bron_kerbosch(nbr: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = bits::ones(p | x).max_by_key(|&u| bits::count(nbr[u] & p)).unwrap();
    for v in bits::ones(p & !nbr[pivot]) {
        bron_kerbosch(nbr, r | bits::bit(v), p & nbr[v], x & nbr[v], out);
        p &= !bits::bit(v);
        x |= bits::bit(v);
    }
}

fn assemble(l: &Lattice, elems: Vec<usize>, chosen: Vec<(usize, u64)>) -> Mopls {
    let names: Vec<String> = elems.iter().map(|&p| l.name(p).to_string()).collect();
    let below = elems
        .iter()
        .map(|&p| bits::from_iter((0..elems.len()).filter(|&k| l.leq(elems[k], p))))
        .collect();
    let mut pairs: Vec<([usize; 3], usize)> = chosen
        .into_iter()
        .map(|(v, c)| {
            let mut it = bits::ones(c);
            ([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()], v)
        })
        .collect();
    pairs.sort();
    let (lines, line_join) = pairs.into_iter().unzip();
    Mopls { points: elems, names, below, lines, line_join }
}

/// Lines sorted by point names in natural order, for lexicographic choice.
fn name_key(names: &[String], clique: u64) -> Vec<&str> {
    let mut v: Vec<&str> = bits::ones(clique).map(|k| names[k].as_str()).collect();
    v.sort_by(|a, b| natural_cmp(a, b));
    v
}

/// The MoPLS with the lexicographically least line (by point labels) per join value.
pub fn extract_mopls(l: &Lattice) -> Result<Mopls, LatticeError> {
    let (elems, groups) = constant_join_cliques(l)?;
    let names: Vec<String> = elems.iter().map(|&p| l.name(p).to_string()).collect();
    let chosen = groups
        .into_iter()
        .map(|(v, cs)| {
            let best = cs
                .into_iter()
                .min_by(|&a, &b| {
                    let (ka, kb) = (name_key(&names, a), name_key(&names, b));
                    ka.iter()
                        .zip(&kb)
                        .map(|(x, y)| natural_cmp(x, y))
                        .find(|o| o.is_ne())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap();
            (v, best)
        })
        .collect();
    Ok(assemble(l, elems, chosen))
}

/// Every maximal family of mutually inequivalent lines, up to `limit` families.
pub fn enumerate_mopls_families(l: &Lattice, limit: usize) -> Result<Vec<Mopls>, LatticeError> {
    let (elems, groups) = constant_join_cliques(l)?;
    let groups: Vec<(usize, Vec<u64>)> = groups.into_iter().collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; groups.len()];
    loop {
        if out.len() >= limit {
            break;
        }
        let chosen = groups.iter().zip(&choice).map(|((v, cs), &i)| (*v, cs[i])).collect();
        out.push(assemble(l, elems.clone(), chosen));
        // odometer increment
        let mut k = 0;
        while k < groups.len() {
            choice[k] += 1;
            if choice[k] < groups[k].1.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == groups.len() {
            break;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub lattice: Lattice,
    /// Point mask of each lattice element's ideal.
    pub ideals: Vec<u64>,
}

/// Lattice of Λ-closed order ideals of (points, ≤), ordered by inclusion.
pub fn reconstruct_from_mopls(
    names: &[String],
    below: &[u64],
    lines: &[[usize; 3]],
) -> Result<Reconstruction, LatticeError> {
    let m = names.len();
    if m > 64 {
        return Err(LatticeError::TooManyJoinIrreducibles(m));
    }
    let bad = |msg: String| Err(LatticeError::InvalidPls(msg));
    if below.len() != m {
        return bad("order has wrong size".into());
    }
    for p in 0..m {
        if !bits::contains(below[p], p) {
            return bad(format!("order is not reflexive at {}", names[p]));
        }
        for q in bits::ones(below[p]) {
            if below[q] & !below[p] != 0 {
                return bad(format!("order is not transitive at {}", names[p]));
            }
            if q != p && bits::contains(below[q], p) {
                return bad(format!("order is not antisymmetric at {}", names[p]));
            }
        }
    }
    let line_masks: Vec<u64> = lines.iter().map(|l| bits::from_iter(l.iter().copied())).collect();
    for (i, l) in lines.iter().enumerate() {
        if l.iter().any(|&p| p >= m) || bits::count(line_masks[i]) != 3 {
            return bad(format!("line {i} is not three distinct points"));
        }
        for j in 0..i {
            if bits::count(line_masks[i] & line_masks[j]) > 1 {
                return bad(format!("lines {j} and {i} share two points"));
            }
        }
    }
    let closure = |mut x: u64| loop {
        let mut y = x;
        for p in bits::ones(x) {
            y |= below[p];
        }
        for &lm in &line_masks {
            if bits::count(y & lm) >= 2 {
                y |= lm;
            }
        }
        if y == x {
            return x;
        }
        x = y;
    };
    let mut ideals = vec![0u64];
    let mut index: HashMap<u64, usize> = HashMap::from([(0, 0)]);
    let mut covers = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let x = ideals[i];
        let mut succ: Vec<u64> = (0..m)
            .filter(|&p| !bits::contains(x, p) && below[p] & !bits::bit(p) & !x == 0)
            .map(|p| closure(x | bits::bit(p)))
            .collect();
        succ.sort_unstable();
        succ.dedup();
        // Covers of x are the minimal one-step closures.
        let minimal: Vec<u64> = succ
            .iter()
            .copied()
            .filter(|&y| !succ.iter().any(|&z| z != y && z & !y == 0))
            .collect();
        for y in minimal {
            let j = *index.entry(y).or_insert_with(|| {
                ideals.push(y);
                queue.push_back(ideals.len() - 1);
                ideals.len() - 1
            });
            covers.push((i, j));
        }
    }
    let ideal_names: Vec<String> = ideals
        .iter()
        .map(|&x| {
            let mut v: Vec<&str> = bits::ones(x).map(|p| names[p].as_str()).collect();
            v.sort_by(|a, b| natural_cmp(a, b));
            format!("{{{}}}", v.join(","))
        })
        .collect();
    let mask_of: HashMap<String, u64> = ideal_names.iter().cloned().zip(ideals.iter().copied()).collect();
    let lattice = Lattice::from_covers(ideal_names, &covers)?;
    let ideals = lattice.names().iter().map(|nm| mask_of[nm]).collect();
    Ok(Reconstruction { lattice, ideals })
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn m3_has_one_line() {
        let mo = extract_mopls(&m_n(3)).unwrap();
        assert_eq!(mo.lines, vec![[0, 1, 2]]);
        assert_eq!(mo.line_join, vec![m_n(3).top()]);
    }

    #[test]
    fn m4_has_a_large_line() {
        assert!(matches!(extract_mopls(&m_n(4)), Err(LatticeError::LineTooLarge(_, 4))));
    }

    #[test]
    fn m3_times_d2_is_line_plus_isolated_point() {
        let l = product(&m_n(3), &chain(2));
        let mo = extract_mopls(&l).unwrap();
        assert_eq!(mo.points.len(), 4);
        assert_eq!(mo.lines.len(), 1);
        let pls = mo.to_pls();
        assert_eq!(pls.components().len(), 2);
        assert!(mo.round_trip_map(&l).is_some());
    }

    #[test]
    fn antichain_with_line_gives_m3() {
        let r = reconstruct_from_mopls(&s(&["p", "q", "r"]), &[1, 2, 4], &[[0, 1, 2]]).unwrap();
        assert_eq!(r.lattice.len(), 5);
        assert_eq!(r.lattice.atoms().len(), 3);
    }

    #[test]
    fn no_lines_gives_down_sets() {
        // x < y, z incomparable: ideals ∅, x, z, xy, xz, xyz
        let r = reconstruct_from_mopls(&s(&["x", "y", "z"]), &[0b001, 0b011, 0b100], &[]).unwrap();
        assert_eq!(r.lattice.len(), 6);
        assert!(crate::lattice::classify(&r.lattice).distributive);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let e = reconstruct_from_mopls(&s(&["a", "b", "c", "d"]), &[1, 2, 4, 8], &[[0, 1, 2], [0, 1, 3]]);
        assert!(matches!(e, Err(LatticeError::InvalidPls(_))));
        let e = reconstruct_from_mopls(&s(&["a", "b"]), &[0b11, 0b11], &[]);
        assert!(matches!(e, Err(LatticeError::InvalidPls(_))));
    }

    #[test]
    fn subspace_lattice_mopls_is_fano() {
        let l = subspace_lattice(3);
        let mo = extract_mopls(&l).unwrap();
        assert_eq!(mo.points.len(), 7);
        assert_eq!(mo.lines.len(), 7);
        assert!(mo.round_trip_map(&l).is_some());
    }

    #[test]
    fn families_enumerate_alternatives() {
        // Boolean lattices have no lines: exactly one (empty) family.
        let fam = enumerate_mopls_families(&boolean(2), 10).unwrap();
        assert_eq!(fam.len(), 1);
        assert!(fam[0].lines.is_empty());
    }
}
