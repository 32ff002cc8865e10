use petgraph::unionfind::UnionFind;

use super::{profile::is_modular, Lattice, LatticeError};

/// A congruence: `class[x]` is the least element index of x's class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Congruence {
    class: Vec<usize>,
}

impl Congruence {
    fn from_union_find(uf: &UnionFind<usize>, n: usize) -> Self {
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = uf.find(x);
            least[r] = least[r].min(x);
        }
        Congruence { class: (0..n).map(|x| least[uf.find(x)]).collect() }
    }

    pub fn identity(n: usize) -> Self {
        Congruence { class: (0..n).collect() }
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class[x]
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class[x] == self.class[y]
    }

    /// Classes as sorted index lists, ordered by least element.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.class.len()];
        for (x, &c) in self.class.iter().enumerate() {
            if slot[c] == usize::MAX {
                slot[c] = out.len();
                out.push(Vec::new());
            }
            out[slot[c]].push(x);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.class.iter().enumerate().all(|(x, &c)| x == c)
    }

    pub fn is_all(&self) -> bool {
        self.class.iter().all(|&c| c == 0)
    }

    /// θ ≤ ψ as equivalence relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.class.len()).all(|x| other.same(x, self.class[x]))
    }

    /// Equivalence-relation join; for lattice congruences this is again a congruence.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.class.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.class[x]);
            uf.union(x, other.class[x]);
        }
        Congruence::from_union_find(&uf, n)
    }

    /// Substitution property for meets and joins with every element.
    pub fn is_compatible(&self, l: &Lattice) -> bool {
        let n = l.len();
        (0..n).all(|x| {
            let y = self.class[x];
            (0..n).all(|z| self.same(l.meet(x, z), l.meet(y, z)) && self.same(l.join(x, z), l.join(y, z)))
        })
    }

    /// Quotient lattice, each class named after its least element; also the
    /// projection from elements of `l` to indices of the quotient.
    pub fn quotient(&self, l: &Lattice) -> (Lattice, Vec<usize>) {
        let reps: Vec<usize> = self.classes().iter().map(|c| c[0]).collect();
        let names = reps.iter().map(|&r| l.name(r).to_string()).collect();
        let q = Lattice::from_leq(names, |a, b| self.same(l.join(reps[a], reps[b]), reps[b]))
            .expect("quotient of a lattice by a congruence is a lattice");
        let proj = (0..l.len())
            .map(|x| q.index_of(l.name(self.class[x])).expect("class representative present"))
            .collect();
        (q, proj)
    }
}

/// Least congruence identifying `a` and `b`.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut work = vec![(a, b)];
    while let Some((x, y)) = work.pop() {
        if !uf.union(x, y) {
            continue;
        }
        // Translates of every merged pair; equivalence chains carry the rest.
        for z in 0..n {
            work.push((l.meet(x, z), l.meet(y, z)));
            work.push((l.join(x, z), l.join(y, z)));
        }
    }
    Congruence::from_union_find(&uf, n)
}

#[derive(Debug, Clone)]
pub struct MaximalCongruences {
    pub congruences: Vec<Congruence>,
    pub s: usize,
    pub factors: Vec<Lattice>,
    /// `projections[i][x]` is the image of x in `factors[i]`.
    pub projections: Vec<Vec<usize>>,
}

/// Maximal congruences of a modular lattice. The congruence lattice is
/// Boolean, so its coatoms are the joins of all atoms but one.
pub fn maximal_congruences(l: &Lattice) -> Result<MaximalCongruences, LatticeError> {
    if !is_modular(l) {
        return Err(LatticeError::NotModular);
    }
    let mut principal: Vec<Congruence> = Vec::new();
    for &(x, y) in l.covers() {
        let c = principal_congruence(l, x, y);
        if !principal.contains(&c) {
            principal.push(c);
        }
    }
    let atoms: Vec<Congruence> = principal
        .iter()
        .filter(|c| !principal.iter().any(|d| d != *c && d.refines(c)))
        .cloned()
        .collect();
    let congruences: Vec<Congruence> = (0..atoms.len())
        .map(|i| {
            atoms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Congruence::identity(l.len()), |acc, (_, c)| acc.join(c))
        })
        .collect();
    let (factors, projections): (Vec<Lattice>, Vec<Vec<usize>>) =
        congruences.iter().map(|c| c.quotient(l)).unzip();
    debug_assert_eq!(factors.iter().map(Lattice::height).sum::<usize>(), l.height());
    Ok(MaximalCongruences { s: congruences.len(), congruences, factors, projections })
}

#[cfg(test)]
mod tests {
    use super::super::families::*;
    use super::*;

    #[test]
    fn two_chain_is_simple() {
        let mc = maximal_congruences(&chain(2)).unwrap();
        assert_eq!(mc.s, 1);
        assert_eq!(mc.factors[0].len(), 2);
    }

    #[test]
    fn m3_times_d2_has_two_factors() {
        let l = product(&m_n(3), &chain(2));
        let mc = maximal_congruences(&l).unwrap();
        assert_eq!(mc.s, 2);
        let mut sizes: Vec<usize> = mc.factors.iter().map(Lattice::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 5]);
        for c in &mc.congruences {
            assert!(c.is_compatible(&l));
        }
    }

    #[test]
    fn boolean_cube_has_three_two_element_factors() {
        let mc = maximal_congruences(&boolean(3)).unwrap();
        assert_eq!(mc.s, 3);
        assert!(mc.factors.iter().all(|f| f.len() == 2));
    }

    #[test]
    fn chain_congruences_collapse_single_covers() {
        let c = chain(4);
        let th = principal_congruence(&c, 1, 2);
        assert_eq!(th.classes(), vec![vec![0], vec![1, 2], vec![3]]);
        assert!(th.is_compatible(&c));
        assert_eq!(maximal_congruences(&c).unwrap().s, 3);
    }

    #[test]
    fn m3_is_simple() {
        let m3 = m_n(3);
        let th = principal_congruence(&m3, 0, 1);
        assert!(th.is_all());
        assert_eq!(maximal_congruences(&m3).unwrap().s, 1);
    }

    #[test]
    fn projections_are_homomorphisms() {
        let l = glued_sum(&chain(2), &m_n(3));
        let mc = maximal_congruences(&l).unwrap();
        for (f, proj) in mc.factors.iter().zip(&mc.projections) {
            for x in 0..l.len() {
                for y in 0..l.len() {
                    assert_eq!(proj[l.join(x, y)], f.join(proj[x], proj[y]));
                    assert_eq!(proj[l.meet(x, y)], f.meet(proj[x], proj[y]));
                }
            }
        }
    }

    #[test]
    fn non_modular_is_rejected() {
        let n5 = Lattice::from_named_covers(&[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")]).unwrap();
        assert!(matches!(maximal_congruences(&n5), Err(LatticeError::NotModular)));
    }
}
