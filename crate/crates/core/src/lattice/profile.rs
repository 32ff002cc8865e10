use serde::Serialize;

use super::{maximal_congruences, Lattice, LatticeError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticeProfile {
    pub graded: bool,
    pub height: usize,
    pub modular: bool,
    pub semimodular: bool,
    pub distributive: bool,
    pub two_distributive: bool,
    pub has_covering_m4: bool,
    pub thin: bool,
}

pub fn classify(l: &Lattice) -> LatticeProfile {
    let modular = is_modular(l);
    let distributive = is_distributive(l);
    let two_distributive = distributive || (two_distributive_identity(l) && (modular || dual_two_distributive_identity(l)));
    let has_covering_m4 = has_covering_m4(l);
    LatticeProfile {
        graded: l.is_graded(),
        height: l.height(),
        modular,
        semimodular: is_semimodular(l),
        distributive,
        two_distributive,
        has_covering_m4,
        thin: two_distributive && !has_covering_m4,
    }
}

/// x ≤ z ⇒ x ∨ (y ∧ z) = (x ∨ y) ∧ z, over all triples.
pub fn is_modular(l: &Lattice) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n).filter(|&z| l.leq(x, z)).all(|z| {
            (0..n).all(|y| l.join(x, l.meet(y, z)) == l.meet(l.join(x, y), z))
        })
    })
}

/// x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z), over all triples.
pub fn is_distributive(l: &Lattice) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n).all(|y| (y..n).all(|z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z))))
    })
}

/// x ∧ y ≺ x ⇒ y ≺ x ∨ y.
pub fn is_semimodular(l: &Lattice) -> bool {
    let n = l.len();
    (0..n).all(|x| (0..n).all(|y| !l.is_cover(l.meet(x, y), x) || l.is_cover(y, l.join(x, y))))
}

/// x ∧ (a ∨ b ∨ c) = (x∧(a∨b)) ∨ (x∧(a∨c)) ∨ (x∧(b∨c)); symmetric in a, b, c.
fn two_distributive_identity(l: &Lattice) -> bool {
    find_quadruple(l, |x, a, b, c| {
        let lhs = l.meet(x, l.join(l.join(a, b), c));
        let rhs = l.join(
            l.join(l.meet(x, l.join(a, b)), l.meet(x, l.join(a, c))),
            l.meet(x, l.join(b, c)),
        );
        lhs != rhs
    })
    .is_none()
}

fn dual_two_distributive_identity(l: &Lattice) -> bool {
    find_quadruple(l, |x, a, b, c| {
        let lhs = l.join(x, l.meet(l.meet(a, b), c));
        let rhs = l.meet(
            l.meet(l.join(x, l.meet(a, b)), l.join(x, l.meet(a, c))),
            l.join(x, l.meet(b, c)),
        );
        lhs != rhs
    })
    .is_none()
}

/// A quadruple `(x, a, b, c)` violating the 2-distributive identity, if any.
pub fn two_distributive_witness(l: &Lattice) -> Option<[usize; 4]> {
    find_quadruple(l, |x, a, b, c| {
        l.meet(x, l.join(l.join(a, b), c))
            != l.join(
                l.join(l.meet(x, l.join(a, b)), l.meet(x, l.join(a, c))),
                l.meet(x, l.join(b, c)),
            )
    })
}

fn find_quadruple(l: &Lattice, bad: impl Fn(usize, usize, usize, usize) -> bool) -> Option<[usize; 4]> {
    let n = l.len();
    for x in 0..n {
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    if bad(x, a, b, c) {
                        return Some([x, a, b, c]);
                    }
                }
            }
        }
    }
    None
}

/// Some interval [b, a] of height 2 has at least four atoms.
pub fn has_covering_m4(l: &Lattice) -> bool {
    (0..l.len()).any(|b| {
        let mut count = vec![0usize; l.len()];
        for &c in l.upper_covers(b) {
            for &a in l.upper_covers(c) {
                count[a] += 1;
            }
        }
        count.iter().any(|&k| k >= 4)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct JiBound {
    pub lhs: usize,
    pub rhs: i64,
    pub sharp: bool,
}

/// |J| against 2·d − s for a modular lattice.
pub fn ji_bound(l: &Lattice) -> Result<JiBound, LatticeError> {
    let s = maximal_congruences(l)?.s;
    let lhs = l.join_irreducibles().len();
    let rhs = 2 * l.height() as i64 - s as i64;
    Ok(JiBound { lhs, rhs, sharp: lhs as i64 == rhs })
}
