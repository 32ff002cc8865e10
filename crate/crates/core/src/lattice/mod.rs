//! Finite lattices given by their cover relation.
//!
//! Elements are renumbered along a linear extension of the order, so the
//! bottom is always index 0 and the top is index `n - 1`. Caller labels are
//! kept and used for all output.

mod congruence;
pub mod families;
mod localize;
mod mopls;
mod profile;

pub use congruence::{maximal_congruences, principal_congruence, Congruence, MaximalCongruences};
pub use localize::{is_locally_acyclic, localize_at_coatom, LocalPls};
pub use mopls::{
    enumerate_mopls_families, extract_mopls, reconstruct_from_mopls, Mopls, Reconstruction,
};
pub use profile::{classify, ji_bound, two_distributive_witness, JiBound, LatticeProfile};

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::cmp::Reverse;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("empty cover list")]
    Empty,
    #[error("cover relation has a cycle or a loop through {0}")]
    NotAPoset(String),
    #[error("pair ({0}, {1}) is not a cover: it is implied by transitivity")]
    NotCovers(String, String),
    #[error("elements {0} and {1} lack a unique {2}")]
    NotALattice(String, String, &'static str),
    #[error("lattice is not modular")]
    NotModular,
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("constant-join set {0:?} has {1} points; only 3-element lines are supported")]
    LineTooLarge(Vec<String>, usize),
    #[error("element {0} is not a coatom")]
    NotACoatom(String),
    #[error("invalid partial linear space: {0}")]
    InvalidPls(String),
    #[error("{0} join-irreducibles exceed the supported 64")]
    TooManyJoinIrreducibles(usize),
}

/// A finite lattice with precomputed meet, join and height tables.
#[derive(Debug, Clone)]
pub struct Lattice {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    meet: Vec<usize>,
    join: Vec<usize>,
    height: Vec<usize>,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.covers == other.covers
    }
}

impl Lattice {
    /// Builds a lattice from labeled cover pairs `(lower, upper)`.
    pub fn from_named_covers<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<Lattice, LatticeError> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut names = Vec::new();
        let mut idx = |s: &str, names: &mut Vec<String>| {
            *index.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        };
        let mut covers = Vec::with_capacity(pairs.len());
        for (a, b) in pairs {
            let i = idx(a.as_ref(), &mut names);
            let j = idx(b.as_ref(), &mut names);
            covers.push((i, j));
        }
        Lattice::from_covers(names, &covers)
    }

    /// Builds a lattice on `names.len()` elements from index cover pairs.
    pub fn from_covers(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Lattice, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let mut up: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in covers {
            assert!(a < n && b < n, "cover index out of range");
            if a == b {
                return Err(LatticeError::NotAPoset(names[a].clone()));
            }
            up[a].insert(b);
        }
        // Kahn's algorithm, smallest original index first, gives the linear extension.
        let mut indeg = vec![0usize; n];
        for ups in &up {
            for &b in ups {
                indeg[b] += 1;
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&i| indeg[i] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(v)) = heap.pop() {
            order.push(v);
            for &w in &up[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    heap.push(Reverse(w));
                }
            }
        }
        if order.len() != n {
            let stuck = (0..n).find(|&i| indeg[i] > 0).unwrap();
            return Err(LatticeError::NotAPoset(names[stuck].clone()));
        }
        let mut pos = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            pos[v] = k;
        }
        let new_names: Vec<String> = order.iter().map(|&v| names[v].clone()).collect();
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (v, ups) in up.iter().enumerate() {
            upper[pos[v]] = ups.iter().map(|&w| pos[w]).collect();
            upper[pos[v]].sort_unstable();
        }
        Lattice::assemble(new_names, upper)
    }

    /// Builds a lattice from an order predicate; covers are derived.
    pub fn from_leq(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Lattice, LatticeError> {
        let n = names.len();
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a == b || !leq(a, b) || leq(b, a) {
                    continue;
                }
                let between = (0..n).any(|c| c != a && c != b && leq(a, c) && leq(c, b) && !leq(c, a) && !leq(b, c));
                if !between {
                    covers.push((a, b));
                }
            }
        }
        Lattice::from_covers(names, &covers)
    }

    /// `upper` is indexed along a linear extension (every cover goes upward).
    fn assemble(names: Vec<String>, upper: Vec<Vec<usize>>) -> Result<Lattice, LatticeError> {
        let n = names.len();
        let words = n.div_ceil(64);
        // above[v] = bitset of w >= v
        let mut above = vec![vec![0u64; words]; n];
        for v in (0..n).rev() {
            above[v][v / 64] |= 1 << (v % 64);
            for &w in &upper[v] {
                let (head, tail) = above.split_at_mut(w);
                for (x, y) in head[v].iter_mut().zip(tail[0].iter()) {
                    *x |= *y;
                }
            }
        }
        let ge = |v: usize, w: usize| above[v][w / 64] >> (w % 64) & 1 == 1; // v <= w
        for v in 0..n {
            for &w in &upper[v] {
                if upper[v].iter().any(|&z| z != w && ge(z, w)) {
                    return Err(LatticeError::NotCovers(names[v].clone(), names[w].clone()));
                }
            }
        }
        let mut below = vec![vec![0u64; words]; n];
        for v in 0..n {
            for w in 0..n {
                if ge(v, w) {
                    below[w][v / 64] |= 1 << (v % 64);
                }
            }
        }
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        let first = |set: &[u64]| -> Option<usize> {
            set.iter().enumerate().find(|(_, &x)| x != 0).map(|(k, &x)| k * 64 + x.trailing_zeros() as usize)
        };
        let last = |set: &[u64]| -> Option<usize> {
            set.iter().enumerate().rev().find(|(_, &x)| x != 0).map(|(k, &x)| k * 64 + 63 - x.leading_zeros() as usize)
        };
        let subset = |a: &[u64], b: &[u64]| a.iter().zip(b).all(|(x, y)| x & !y == 0);
        let mut buf = vec![0u64; words];
        for a in 0..n {
            for b in a..n {
                for k in 0..words {
                    buf[k] = above[a][k] & above[b][k];
                }
                let j = first(&buf)
                    .filter(|&j| subset(&buf, &above[j]))
                    .ok_or_else(|| LatticeError::NotALattice(names[a].clone(), names[b].clone(), "join"))?;
                for k in 0..words {
                    buf[k] = below[a][k] & below[b][k];
                }
                let m = last(&buf)
                    .filter(|&m| subset(&buf, &below[m]))
                    .ok_or_else(|| LatticeError::NotALattice(names[a].clone(), names[b].clone(), "meet"))?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }
        let mut lower: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut covers = Vec::new();
        for v in 0..n {
            for &w in &upper[v] {
                lower[w].push(v);
                covers.push((v, w));
            }
        }
        covers.sort_unstable();
        let mut height = vec![0usize; n];
        for v in 0..n {
            for &w in &upper[v] {
                height[w] = height[w].max(height[v] + 1);
            }
        }
        Ok(Lattice { names, covers, upper, lower, meet, join, height })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Cover pairs, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper[x].binary_search(&y).is_ok()
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.join(x, y) == y
    }

    /// Length of the longest chain from the bottom to `x`.
    pub fn height_of(&self, x: usize) -> usize {
        self.height[x]
    }

    /// d(L): height of the top element.
    pub fn height(&self) -> usize {
        self.height[self.top()]
    }

    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Every cover raises the height by exactly one.
    pub fn is_graded(&self) -> bool {
        self.covers.iter().all(|&(a, b)| self.height[b] == self.height[a] + 1)
    }

    pub fn coatoms(&self) -> &[usize] {
        self.lower_covers(self.top())
    }

    pub fn atoms(&self) -> &[usize] {
        self.upper_covers(self.bottom())
    }

    pub fn join_irreducibles(&self) -> JoinIrreducibles {
        JoinIrreducibles::new(self)
    }

    /// Cover pairs by label, sorted lexicographically by label.
    pub fn named_covers(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|&(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        v.sort_by(|x, y| {
            crate::names::natural_cmp(&x.0, &y.0).then_with(|| crate::names::natural_cmp(&x.1, &y.1))
        });
        v
    }

    /// True when `f` is an order isomorphism from `self` onto `other`.
    pub fn is_isomorphism(&self, other: &Lattice, f: &[usize]) -> bool {
        let n = self.len();
        if n != other.len() || f.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in f {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| self.leq(a, b) == other.leq(f[a], f[b])))
    }
}

/// Join-irreducible elements: exactly one lower cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinIrreducibles {
    /// Lattice indices of join-irreducibles, ascending.
    pub elems: Vec<usize>,
    /// Lattice index → position in `elems`.
    pub pos: Vec<Option<usize>>,
    /// p_* for each position.
    pub lower_star: Vec<usize>,
    /// For each lattice element a, positions of J(a), ascending.
    pub below: Vec<Vec<usize>>,
}

impl JoinIrreducibles {
    fn new(l: &Lattice) -> Self {
        let elems: Vec<usize> = (0..l.len()).filter(|&x| l.lower_covers(x).len() == 1).collect();
        let mut pos = vec![None; l.len()];
        for (k, &p) in elems.iter().enumerate() {
            pos[p] = Some(k);
        }
        let lower_star = elems.iter().map(|&p| l.lower_covers(p)[0]).collect();
        let below = (0..l.len())
            .map(|a| (0..elems.len()).filter(|&k| l.leq(elems[k], a)).collect())
            .collect();
        JoinIrreducibles { elems, pos, lower_star, below }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// J(a) as a mask over positions; requires |J| ≤ 64.
    pub fn mask(&self, a: usize) -> u64 {
        assert!(self.len() <= 64);
        crate::bits::from_iter(self.below[a].iter().copied())
    }
}

#[cfg(test)]
mod tests {
    use super::families::*;
    use super::*;

    #[test]
    fn two_chain_is_smallest_nontrivial() {
        let l = Lattice::from_named_covers(&[("0", "1")]).unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l.height(), 1);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.name(l.top()), "1");
    }

    #[test]
    fn m3_from_covers() {
        let l = Lattice::from_named_covers(&[
            ("0", "p"),
            ("0", "q"),
            ("0", "r"),
            ("p", "1"),
            ("q", "1"),
            ("r", "1"),
        ])
        .unwrap();
        assert_eq!(l.height(), 2);
        let p = l.index_of("p").unwrap();
        let q = l.index_of("q").unwrap();
        assert_eq!(l.name(l.join(p, q)), "1");
        assert_eq!(l.name(l.meet(p, q)), "0");
    }

    #[test]
    fn pentagon_is_a_lattice() {
        let l = Lattice::from_named_covers(&[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]).unwrap();
        assert_eq!(l.len(), 5);
        assert!(!l.is_graded());
    }

    #[test]
    fn bottom_is_renumbered_to_zero() {
        let l = Lattice::from_named_covers(&[("x", "top"), ("bot", "x"), ("bot", "y"), ("y", "top")]).unwrap();
        assert_eq!(l.name(0), "bot");
        assert_eq!(l.name(l.top()), "top");
    }

    #[test]
    fn rejects_cycles() {
        let e = Lattice::from_named_covers(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap_err();
        assert!(matches!(e, LatticeError::NotAPoset(_)));
    }

    #[test]
    fn rejects_transitive_pairs() {
        let e = Lattice::from_named_covers(&[("a", "b"), ("b", "c"), ("a", "c")]).unwrap_err();
        assert_eq!(e, LatticeError::NotCovers("a".into(), "c".into()));
    }

    #[test]
    fn rejects_non_lattices() {
        // two minimal elements
        let e = Lattice::from_named_covers(&[("a", "c"), ("b", "c")]).unwrap_err();
        assert!(matches!(e, LatticeError::NotALattice(..)));
        // bowtie: two incomparable upper bounds
        let e = Lattice::from_named_covers(&[
            ("0", "a"),
            ("0", "b"),
            ("a", "c"),
            ("a", "d"),
            ("b", "c"),
            ("b", "d"),
            ("c", "1"),
            ("d", "1"),
        ])
        .unwrap_err();
        assert!(matches!(e, LatticeError::NotALattice(..)));
    }

    #[test]
    fn join_irreducibles_of_small_lattices() {
        let m3 = m_n(3);
        let j = m3.join_irreducibles();
        assert_eq!(j.len(), 3);
        assert_eq!(j.below[m3.top()], vec![0, 1, 2]);
        assert!(j.below[m3.bottom()].is_empty());

        let sq = product(&chain(2), &chain(2));
        assert_eq!(sq.join_irreducibles().len(), 2);
        let l2 = product(&m_n(3), &chain(2));
        assert_eq!(l2.join_irreducibles().len(), 4);
    }

    #[test]
    fn lower_star_is_unique_lower_cover() {
        let c = chain(4);
        let j = c.join_irreducibles();
        for (k, &p) in j.elems.iter().enumerate() {
            assert_eq!(c.lower_covers(p), &[j.lower_star[k]]);
        }
    }

    #[test]
    fn from_leq_matches_from_covers() {
        let b3 = boolean(3);
        let again = Lattice::from_leq(b3.names().to_vec(), |a, b| b3.leq(a, b)).unwrap();
        assert_eq!(again, b3);
    }
}
