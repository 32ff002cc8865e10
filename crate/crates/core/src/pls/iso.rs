use crate::bits;

use super::Pls;

/// A point bijection from `a` onto `b` mapping lines onto lines, if one exists.
pub fn find_isomorphism(a: &Pls, b: &Pls) -> Option<Vec<usize>> {
    if a.n_points() != b.n_points() || a.n_lines() != b.n_lines() {
        return None;
    }
    let mut da: Vec<usize> = (0..a.n_points()).map(|x| a.degree(x)).collect();
    let mut db: Vec<usize> = (0..b.n_points()).map(|x| b.degree(x)).collect();
    let (sa, sb) = (da.clone(), db.clone());
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return None;
    }
    // Assign high-degree points first: they constrain the most.
    let mut order: Vec<usize> = (0..a.n_points()).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(sa[x]));
    let b_lines: std::collections::HashSet<u64> = (0..b.n_lines()).map(|l| b.line_mask(l)).collect();
    let mut map = vec![usize::MAX; a.n_points()];
    let mut used = 0u64;
    if assign(a, b, &order, 0, &sa, &sb, &b_lines, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn assign(
    a: &Pls,
    b: &Pls,
    order: &[usize],
    k: usize,
    sa: &[usize],
    sb: &[usize],
    b_lines: &std::collections::HashSet<u64>,
    map: &mut [usize],
    used: &mut u64,
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    for y in 0..b.n_points() {
        if bits::contains(*used, y) || sa[x] != sb[y] {
            continue;
        }
        map[x] = y;
        // every line of a through x whose points are all mapped must map to a line of b
        let ok = a.pencil(x).iter().all(|&l| {
            let pts = a.lines()[l];
            if pts.iter().all(|&z| map[z] != usize::MAX) {
                b_lines.contains(&bits::from_iter(pts.iter().map(|&z| map[z])))
            } else {
                true
            }
        });
        if ok {
            *used |= bits::bit(y);
            if assign(a, b, order, k + 1, sa, sb, b_lines, map, used) {
                return true;
            }
            *used &= !bits::bit(y);
        }
        map[x] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeled_triangle_is_isomorphic() {
        let a = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "1"]]).unwrap();
        let b = Pls::from_lines(&[["x", "a", "y"], ["y", "b", "z"], ["z", "c", "x"]]).unwrap();
        let f = find_isomorphism(&a, &b).unwrap();
        for l in a.lines() {
            let m = bits::from_iter(l.iter().map(|&p| f[p]));
            assert!((0..b.n_lines()).any(|k| b.line_mask(k) == m));
        }
    }

    #[test]
    fn path_and_star_differ() {
        let a = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"]]).unwrap();
        let b = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["3", "6", "7"]]).unwrap();
        assert!(find_isomorphism(&a, &b).is_none());
    }
}
