use serde::Serialize;

use crate::bits;
use crate::lattice::Lattice;
use crate::matroid::{chordless_circuits, LabeledGraph, Matroid};

use super::EmbeddingError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum ModelFailure {
    /// A chordless circuit whose point `point` is not below the join of the others.
    CircuitJoin { circuit: Vec<String>, point: String },
    /// The image of J(a) is not closed: `extra` lies in its closure.
    NotClosed { element: String, extra: String },
    /// The matroid rank differs from the lattice height.
    Rank { mrk: usize, height: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeModelReport {
    pub ok: bool,
    pub failure: Option<ModelFailure>,
}

impl LatticeModelReport {
    fn from(failure: Option<ModelFailure>) -> Self {
        LatticeModelReport { ok: failure.is_none(), failure }
    }
}

/// Join-irreducible position → ground element, matched by name.
pub(crate) fn ji_map<M: Matroid + ?Sized>(l: &Lattice, m: &M, exact: bool) -> Result<Vec<usize>, EmbeddingError> {
    let ji = l.join_irreducibles();
    if ji.len() > 64 {
        return Err(EmbeddingError::BoundExceeded(format!("{} join-irreducibles exceed 64", ji.len())));
    }
    if exact && m.size() != ji.len() {
        return Err(EmbeddingError::NotABijection(format!("{} elements for {} join-irreducibles", m.size(), ji.len())));
    }
    ji.elems
        .iter()
        .map(|&p| m.element_index(l.name(p)).ok_or_else(|| EmbeddingError::NotABijection(format!("no element named {}", l.name(p)))))
        .collect()
}

fn image(phi: &[usize], positions: u64) -> u64 {
    bits::from_iter(bits::ones(positions).map(|k| phi[k]))
}

/// Closure condition on every J(a) and rank condition, read in the
/// matroid restricted to the image of J.
pub fn check_lattice_model<M: Matroid + ?Sized>(l: &Lattice, m: &M) -> Result<LatticeModelReport, EmbeddingError> {
    let phi = ji_map(l, m, true)?;
    if !m.is_simple() {
        return Err(EmbeddingError::NotSimple);
    }
    let ji = l.join_irreducibles();
    let all = m.ground();
    for a in 0..l.len() {
        let s = image(&phi, ji.mask(a));
        let extra = m.closure(s) & all & !s;
        if extra != 0 {
            let e = extra.trailing_zeros() as usize;
            return Ok(LatticeModelReport::from(Some(ModelFailure::NotClosed {
                element: l.name(a).to_string(),
                extra: m.element_name(e).to_string(),
            })));
        }
    }
    Ok(LatticeModelReport::from(rank_failure(l, m.rank())))
}

fn rank_failure(l: &Lattice, mrk: usize) -> Option<ModelFailure> {
    (mrk != l.height()).then(|| ModelFailure::Rank { mrk, height: l.height() })
}

/// Graph form: every chordless circuit X satisfies q ≤ ⋁(X ∖ q) for each
/// q ∈ X, and mrk = d(L).
pub fn check_lattice_model_graph(l: &Lattice, g: &LabeledGraph) -> Result<LatticeModelReport, EmbeddingError> {
    let phi = ji_map(l, g, true)?;
    let ji = l.join_irreducibles();
    let mut point_of = vec![0usize; g.n_edges()];
    for (k, &e) in phi.iter().enumerate() {
        point_of[e] = ji.elems[k];
    }
    for c in chordless_circuits(g)? {
        let pts: Vec<usize> = bits::ones(c).map(|e| point_of[e]).collect();
        for (i, &q) in pts.iter().enumerate() {
            let rest = l.join_all(pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x));
            if !l.leq(q, rest) {
                return Ok(LatticeModelReport::from(Some(ModelFailure::CircuitJoin {
                    circuit: g.names_of(c),
                    point: l.name(q).to_string(),
                })));
            }
        }
    }
    Ok(LatticeModelReport::from(rank_failure(l, g.rank())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::families;
    use crate::matroid::BinaryMatroid;

    /// 0 < q < p, r, s < 1: a chain glued below M3.
    fn l2() -> Lattice {
        Lattice::from_named_covers(&[("0", "q"), ("q", "p"), ("q", "r"), ("q", "s"), ("p", "1"), ("r", "1"), ("s", "1")])
            .unwrap()
    }

    fn square() -> LabeledGraph {
        LabeledGraph::from_named_edges(&[("1", "2", "p"), ("2", "3", "q"), ("3", "4", "r"), ("4", "1", "s")]).unwrap()
    }

    #[test]
    fn four_circuit_models_the_glued_lattice() {
        let r = check_lattice_model_graph(&l2(), &square()).unwrap();
        assert!(r.ok, "{r:?}");
        assert!(check_lattice_model(&l2(), &square()).unwrap().ok);
    }

    #[test]
    fn triangle_models_m3() {
        let t = LabeledGraph::from_named_edges(&[("1", "2", "a1"), ("2", "3", "a2"), ("1", "3", "a3")]).unwrap();
        assert!(check_lattice_model_graph(&families::m_n(3), &t).unwrap().ok);
    }

    #[test]
    fn product_fails_on_the_four_circuit() {
        // J(M3 × D2): three atoms of M3 and one of D2; the square is a circuit
        let l = families::product(&families::m_n(3), &families::chain(2));
        let names: Vec<&str> = l.join_irreducibles().elems.iter().map(|&p| l.name(p)).collect();
        let g = LabeledGraph::from_named_edges(&[
            ("1", "2", names[0]),
            ("2", "3", names[1]),
            ("3", "4", names[2]),
            ("4", "1", names[3]),
        ])
        .unwrap();
        let r = check_lattice_model_graph(&l, &g).unwrap();
        assert!(matches!(r.failure, Some(ModelFailure::CircuitJoin { .. })));
        assert!(!check_lattice_model(&l, &g).unwrap().ok);
    }

    #[test]
    fn rank_and_bijection_failures() {
        let path = LabeledGraph::from_named_edges(&[("1", "2", "p"), ("2", "3", "q"), ("3", "4", "r"), ("4", "5", "s")]).unwrap();
        let r = check_lattice_model_graph(&l2(), &path).unwrap();
        assert_eq!(r.failure, Some(ModelFailure::Rank { mrk: 4, height: 3 }));
        let short = LabeledGraph::from_named_edges(&[("1", "2", "p")]).unwrap();
        assert!(matches!(check_lattice_model_graph(&l2(), &short), Err(EmbeddingError::NotABijection(_))));
    }

    #[test]
    fn binary_closure_condition() {
        let l = l2();
        // p, q, r independent and s = p + q + r: the square again
        let m = BinaryMatroid::from_bit_strings(&[("p", "100"), ("q", "010"), ("r", "001"), ("s", "111")]).unwrap();
        assert!(check_lattice_model(&l, &m).unwrap().ok);
        // s = p + r is the line {p, r, s}: still a model
        let line = BinaryMatroid::from_bit_strings(&[("p", "100"), ("q", "010"), ("r", "001"), ("s", "101")]).unwrap();
        assert!(check_lattice_model(&l, &line).unwrap().ok);
        // s = p + q lies in the closure of J(p) = {q, p}
        let bad = BinaryMatroid::from_bit_strings(&[("p", "100"), ("q", "010"), ("r", "001"), ("s", "110")]).unwrap();
        let r = check_lattice_model(&l, &bad).unwrap();
        assert!(matches!(r.failure, Some(ModelFailure::NotClosed { .. })));
        let loopy = BinaryMatroid::from_bit_strings(&[("p", "100"), ("q", "010"), ("r", "001"), ("s", "000")]).unwrap();
        assert!(matches!(check_lattice_model(&l, &loopy), Err(EmbeddingError::NotSimple)));
    }
}
