//! Canonical ordering of user-facing labels: numeric labels compare by
//! value, everything else by chunked natural order ("p2" < "p10").

use std::cmp::Ordering;

/// Natural ordering of labels: digit runs compare numerically.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut xa, mut xb) = (a.as_bytes(), b.as_bytes());
    loop {
        match (xa.first(), xb.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(ca), Some(cb)) if ca.is_ascii_digit() && cb.is_ascii_digit() => {
                let la = xa.iter().take_while(|c| c.is_ascii_digit()).count();
                let lb = xb.iter().take_while(|c| c.is_ascii_digit()).count();
                let (da, db) = (trim_zeros(&xa[..la]), trim_zeros(&xb[..lb]));
                let ord = da.len().cmp(&db.len()).then_with(|| da.cmp(db));
                if ord != Ordering::Equal {
                    return ord;
                }
                xa = &xa[la..];
                xb = &xb[lb..];
            }
            (Some(ca), Some(cb)) => {
                if ca != cb {
                    return ca.cmp(cb);
                }
                xa = &xa[1..];
                xb = &xb[1..];
            }
        }
    }
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let k = d.iter().take_while(|&&c| c == b'0').count();
    &d[k.min(d.len().saturating_sub(1))..]
}

/// Produces labels not present in `taken`: continues the numeric sequence
/// when every existing label is a non-negative integer, else uses `n1, n2, …`.
pub struct FreshNames {
    numeric: bool,
    next: u64,
    taken: std::collections::HashSet<String>,
}

impl FreshNames {
    pub fn new<'a, I: IntoIterator<Item = &'a String>>(taken: I) -> Self {
        let taken: std::collections::HashSet<String> = taken.into_iter().cloned().collect();
        let numeric = taken.iter().all(|s| s.parse::<u64>().is_ok());
        let next = if numeric {
            taken.iter().filter_map(|s| s.parse::<u64>().ok()).max().map_or(1, |m| m + 1)
        } else {
            1
        };
        FreshNames { numeric, next, taken }
    }

    pub fn fresh(&mut self) -> String {
        loop {
            let candidate = if self.numeric {
                self.next.to_string()
            } else {
                format!("n{}", self.next)
            };
            self.next += 1;
            if self.taken.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_labels_sort_by_value() {
        let mut v = vec!["10", "9", "1", "2"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["1", "2", "9", "10"]);
    }

    #[test]
    fn mixed_labels_sort_naturally() {
        let mut v = vec!["p10", "p2", "a", "0@2", "0@10"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, vec!["0@2", "0@10", "a", "p2", "p10"]);
    }

    #[test]
    fn fresh_numeric_continues_sequence() {
        let taken: Vec<String> = (1..=6).map(|i| i.to_string()).collect();
        let mut f = FreshNames::new(&taken);
        assert_eq!(f.fresh(), "7");
        assert_eq!(f.fresh(), "8");
    }

    #[test]
    fn fresh_symbolic_avoids_collisions() {
        let taken = vec!["a".to_string(), "n1".to_string()];
        let mut f = FreshNames::new(&taken);
        assert_eq!(f.fresh(), "n2");
    }
}
