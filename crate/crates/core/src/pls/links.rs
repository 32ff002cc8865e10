use std::collections::VecDeque;

use serde::Serialize;

use crate::bits;

use super::{Cycle, Pls};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LinkType {
    /// Midpoint to junction.
    Type1,
    /// Midpoint to midpoint.
    Type2,
}

impl LinkType {
    pub fn number(self) -> u8 {
        match self {
            LinkType::Type1 => 1,
            LinkType::Type2 => 2,
        }
    }
}

/// A path meeting the cycle support exactly in its two endpoints, the first
/// of which is a midpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct MidpointLink {
    pub kind: LinkType,
    pub path: Vec<usize>,
    pub benign: bool,
}

/// One shortest link per endpoint pair. Benignity depends only on the
/// endpoints, so this decides both "has a link" and "all links benign".
pub fn midpoint_links(p: &Pls, c: &Cycle) -> Vec<MidpointLink> {
    let mut out = Vec::new();
    let n = c.len();
    for (i, &q) in c.midpoints.iter().enumerate() {
        for (j, &pj) in c.junctions.iter().enumerate() {
            if let Some(path) = shortest_link(p, c.support, q, pj) {
                let on_same_line = j == i || j == (i + 1) % n;
                out.push(MidpointLink { kind: LinkType::Type1, path, benign: on_same_line });
            }
        }
        for (j, &qj) in c.midpoints.iter().enumerate().skip(i + 1) {
            if let Some(path) = shortest_link(p, c.support, q, qj) {
                let intersecting = j == i + 1 || (i == 0 && j == n - 1);
                out.push(MidpointLink { kind: LinkType::Type2, path, benign: intersecting });
            }
        }
    }
    out
}

/// Shortest point sequence from `u` to `v` along lines meeting `support`
/// only inside {u, v}. Shortest sequences are automatically paths.
fn shortest_link(p: &Pls, support: u64, u: usize, v: usize) -> Option<Vec<usize>> {
    let ends = bits::bit(u) | bits::bit(v);
    let allowed = |l: usize| p.line_mask(l) & support & !ends == 0;
    let mut prev = vec![usize::MAX; p.n_points()];
    prev[u] = u;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &l in p.pencil(x) {
            if !allowed(l) {
                continue;
            }
            for y in bits::ones(p.line_mask(l) & !bits::bit(x)) {
                // u is a start only; it never reappears inside
                if prev[y] == usize::MAX && y != u {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
    }
    if prev[v] == usize::MAX {
        return None;
    }
    let mut path = vec![v];
    while *path.last().unwrap() != u {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::super::enumerate_cycles;
    use super::*;

    fn j2() -> Pls {
        Pls::from_lines(&[
            ["1", "2", "3"],
            ["3", "4", "5"],
            ["5", "6", "1"],
            ["6", "7", "8"],
            ["8", "9", "10"],
            ["10", "11", "5"],
            ["1", "12", "13"],
            ["13", "14", "7"],
        ])
        .unwrap()
    }

    fn names(p: &Pls, path: &[usize]) -> Vec<String> {
        path.iter().map(|&x| p.name(x).to_string()).collect()
    }

    fn cycle(p: &Pls, js: &[&str]) -> Cycle {
        let ix: Vec<usize> = js.iter().map(|s| p.index_of(s).unwrap()).collect();
        Cycle::from_junctions(p, &ix).unwrap()
    }

    #[test]
    fn triangle_has_benign_type1_link() {
        let p = j2();
        let c = cycle(&p, &["1", "3", "5"]);
        let links = midpoint_links(&p, &c);
        let l = links
            .iter()
            .find(|l| names(&p, &l.path) == ["6", "8", "10", "5"])
            .expect("link [6,8,10,5]");
        assert_eq!(l.kind, LinkType::Type1);
        assert!(l.benign);
    }

    #[test]
    fn square_has_benign_type2_link() {
        let p = j2();
        let c = cycle(&p, &["5", "6", "8", "10"]);
        let links = midpoint_links(&p, &c);
        let l = links
            .iter()
            .find(|l| names(&p, &l.path) == ["1", "13", "7"])
            .expect("link [1,13,7]");
        assert_eq!(l.kind, LinkType::Type2);
        assert!(l.benign);
    }

    #[test]
    fn all_links_of_j2_are_benign() {
        let p = j2();
        for c in enumerate_cycles(&p, None).unwrap() {
            assert!(midpoint_links(&p, &c).iter().all(|l| l.benign));
        }
    }

    #[test]
    fn single_line_link_is_detected() {
        // In the 5-line space, [2,5] links midpoint 2 of (1,3,5,7) to junction 5.
        let p = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "7"], ["7", "8", "1"], ["2", "9", "5"]])
            .unwrap();
        let c = cycle(&p, &["1", "3", "5", "7"]);
        let links = midpoint_links(&p, &c);
        assert!(links.iter().any(|l| names(&p, &l.path) == ["2", "5"] && !l.benign));
    }

    #[test]
    fn triangle_alone_has_no_links() {
        let p = Pls::from_lines(&[["1", "2", "3"], ["3", "4", "5"], ["5", "6", "1"]]).unwrap();
        let c = enumerate_cycles(&p, None).unwrap().remove(0);
        assert!(midpoint_links(&p, &c).is_empty());
    }
}
