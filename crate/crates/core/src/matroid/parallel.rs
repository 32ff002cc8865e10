use crate::bits;

use super::{BinaryMatroid, Matroid, MatroidError};

/// Glues `m1` and `m2` along their common element `z`. Coordinates are
/// stacked, then the difference of the two `z` columns is factored out, so
/// both copies of `z` become one element. Ground: `m1` in order, then `m2`
/// without `z`.
pub fn parallel_connection(m1: &BinaryMatroid, m2: &BinaryMatroid, z: &str) -> Result<BinaryMatroid, MatroidError> {
    let z1 = m1.element_index(z).ok_or_else(|| MatroidError::MissingElement(z.to_string()))?;
    let z2 = m2.element_index(z).ok_or_else(|| MatroidError::MissingElement(z.to_string()))?;
    if let Some(name) = m2.names().iter().find(|n| n.as_str() != z && m1.element_index(n).is_some()) {
        return Err(MatroidError::GroundOverlap(name.clone()));
    }
    if m1.column(z1) == 0 || m2.column(z2) == 0 {
        return Err(MatroidError::LoopElement(z.to_string()));
    }
    let (d1, d2) = (m1.dim(), m2.dim());
    if d1 + d2 > 65 {
        return Err(MatroidError::BoundExceeded(format!("dimension {} exceeds 64", d1 + d2 - 1)));
    }
    let lift2 = |c: u64| -> u128 { (c as u128) << d1 };
    let w: u128 = m1.column(z1) as u128 ^ lift2(m2.column(z2));
    let pivot = 127 - w.leading_zeros() as usize;
    // v ↦ v reduced modulo w, then coordinate `pivot` removed
    let project = |v: u128| -> u64 {
        let v = if v >> pivot & 1 == 1 { v ^ w } else { v };
        let low = v & ((1u128 << pivot) - 1);
        let high = v >> (pivot + 1);
        (low | high << pivot) as u64
    };
    let mut names = m1.names().to_vec();
    let mut cols: Vec<u64> = m1.columns().iter().map(|&c| project(c as u128)).collect();
    for e in 0..m2.size() {
        if e != z2 {
            names.push(m2.element_name(e).to_string());
            cols.push(project(lift2(m2.column(e))));
        }
    }
    if names.len() > 64 {
        return Err(MatroidError::TooManyElements(names.len()));
    }
    let out = BinaryMatroid::new(&names, d1 + d2 - 1, &cols)?;
    debug_assert_eq!(out.rank(), m1.rank() + m2.rank() - 1);
    debug_assert!(bits::count(out.ground()) == m1.size() + m2.size() - 1);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::super::{is_graphic, GraphicResult, LabeledGraph};
    use super::*;

    /// Circuits predicted by gluing: each side's circuits, plus unions of a
    /// circuit through `z` on each side with `z` removed.
    fn predicted(m1: &BinaryMatroid, m2: &BinaryMatroid, z: &str) -> BTreeSet<BTreeSet<String>> {
        let c1: Vec<BTreeSet<String>> =
            m1.circuits().unwrap().iter().map(|&c| m1.names_of(c).into_iter().collect()).collect();
        let c2: Vec<BTreeSet<String>> =
            m2.circuits().unwrap().iter().map(|&c| m2.names_of(c).into_iter().collect()).collect();
        let mut out: BTreeSet<BTreeSet<String>> = c1.iter().chain(&c2).cloned().collect();
        for a in c1.iter().filter(|c| c.contains(z)) {
            for b in c2.iter().filter(|c| c.contains(z)) {
                let mut u: BTreeSet<String> = a.union(b).cloned().collect();
                u.remove(z);
                out.insert(u);
            }
        }
        out
    }

    fn actual(m: &BinaryMatroid) -> BTreeSet<BTreeSet<String>> {
        m.circuits().unwrap().iter().map(|&c| m.names_of(c).into_iter().collect()).collect()
    }

    #[test]
    fn two_triangles_glued() {
        let t1 = BinaryMatroid::new(&["a", "b", "z"], 2, &[1, 2, 3]).unwrap();
        let t2 = BinaryMatroid::new(&["c", "d", "z"], 2, &[1, 2, 3]).unwrap();
        let m = parallel_connection(&t1, &t2, "z").unwrap();
        assert_eq!(m.size(), 5);
        assert_eq!(m.rank(), 3);
        let c = actual(&m);
        assert_eq!(c.len(), 3);
        assert!(c.contains(&["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect()));
        assert_eq!(c, predicted(&t1, &t2, "z"));
    }

    #[test]
    fn triangle_with_independent_pair() {
        let t = BinaryMatroid::new(&["a", "b", "z"], 2, &[1, 2, 3]).unwrap();
        let pair = BinaryMatroid::new(&["z", "y"], 2, &[1, 2]).unwrap();
        let m = parallel_connection(&t, &pair, "z").unwrap();
        assert_eq!(actual(&m), predicted(&t, &pair, "z"));
        assert_eq!(actual(&m).len(), 1);
    }

    #[test]
    fn squares_glued_on_an_edge_stay_graphic() {
        let sq = |p: &str| {
            LabeledGraph::from_named_edges(&[
                ("1", "2", "z".to_string()),
                ("2", "3", format!("{p}1")),
                ("3", "4", format!("{p}2")),
                ("4", "1", format!("{p}3")),
            ])
            .unwrap()
            .to_binary()
            .unwrap()
        };
        let (a, b) = (sq("a"), sq("b"));
        let m = parallel_connection(&a, &b, "z").unwrap();
        assert_eq!(actual(&m), predicted(&a, &b, "z"));
        assert!(matches!(is_graphic(&m).unwrap(), GraphicResult::Graphic(_)));
    }

    #[test]
    fn errors() {
        let t = BinaryMatroid::new(&["a", "b", "z"], 2, &[1, 2, 3]).unwrap();
        let u = BinaryMatroid::new(&["a", "z"], 2, &[1, 2]).unwrap();
        assert_eq!(parallel_connection(&t, &u, "z"), Err(MatroidError::GroundOverlap("a".into())));
        assert_eq!(parallel_connection(&t, &u, "q"), Err(MatroidError::MissingElement("q".into())));
    }
}
