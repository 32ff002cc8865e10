use crate::bits;

use super::Pls;

/// Four lines meeting pairwise in six distinct points, with no further line
/// inside those six points. Each result lists ascending line indices.
pub fn find_triangle_configurations(p: &Pls) -> Vec<[usize; 4]> {
    let m = p.n_lines();
    let meets = |a: usize, b: usize| bits::count(p.line_mask(a) & p.line_mask(b)) == 1;
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            if !meets(a, b) {
                continue;
            }
            for c in b + 1..m {
                if !meets(a, c) || !meets(b, c) {
                    continue;
                }
                for d in c + 1..m {
                    if !(meets(a, d) && meets(b, d) && meets(c, d)) {
                        continue;
                    }
                    let quad = [a, b, c, d];
                    let union = quad.iter().fold(0, |u, &l| u | p.line_mask(l));
                    if bits::count(union) != 6 {
                        continue;
                    }
                    let extra = (0..m).any(|l| !quad.contains(&l) && p.line_mask(l) & !union == 0);
                    if !extra {
                        out.push(quad);
                    }
                }
            }
        }
    }
    out
}
