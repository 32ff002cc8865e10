//! Standard lattice families used as fixtures and test generators.

use super::Lattice;

/// The chain 0 < 1 < … < n−1.
pub fn chain(n: usize) -> Lattice {
    assert!(n >= 1);
    let names = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    Lattice::from_covers(names, &covers).expect("chains are lattices")
}

/// Bottom, `k` atoms `a1..ak`, top. `m_n(3)` is M₃.
pub fn m_n(k: usize) -> Lattice {
    assert!(k >= 1);
    let mut names = vec!["0".to_string()];
    names.extend((1..=k).map(|i| format!("a{i}")));
    names.push("1".to_string());
    let mut covers = Vec::new();
    for i in 1..=k {
        covers.push((0, i));
        covers.push((i, k + 1));
    }
    Lattice::from_covers(names, &covers).expect("M_k is a lattice")
}

/// Subsets of a `k`-set, named by bit strings (`"0"`, `"1"`, …).
pub fn boolean(k: usize) -> Lattice {
    assert!(k < 16);
    let n = 1usize << k;
    let names = (0..n).map(|m| format!("{m:0width$b}", width = k.max(1))).collect();
    let mut covers = Vec::new();
    for m in 0..n {
        for i in 0..k {
            if m & (1 << i) == 0 {
                covers.push((m, m | (1 << i)));
            }
        }
    }
    Lattice::from_covers(names, &covers).expect("boolean lattices are lattices")
}

/// Direct product, elements named `(x,y)`.
pub fn product(a: &Lattice, b: &Lattice) -> Lattice {
    let (na, nb) = (a.len(), b.len());
    let names = (0..na)
        .flat_map(|x| (0..nb).map(move |y| (x, y)))
        .map(|(x, y)| format!("({},{})", a.name(x), b.name(y)))
        .collect();
    let mut covers = Vec::new();
    for x in 0..na {
        for y in 0..nb {
            for &x2 in a.upper_covers(x) {
                covers.push((x * nb + y, x2 * nb + y));
            }
            for &y2 in b.upper_covers(y) {
                covers.push((x * nb + y, x * nb + y2));
            }
        }
    }
    Lattice::from_covers(names, &covers).expect("products of lattices are lattices")
}

/// Glued sum: the top of `a` is identified with the bottom of `b`.
/// Labels of `b` that clash with labels of `a` get a trailing `'`.
pub fn glued_sum(a: &Lattice, b: &Lattice) -> Lattice {
    let mut names: Vec<String> = a.names().to_vec();
    let mut map = vec![0usize; b.len()];
    map[b.bottom()] = a.top();
    for y in 0..b.len() {
        if y == b.bottom() {
            continue;
        }
        let mut name = b.name(y).to_string();
        while names.contains(&name) {
            name.push('\'');
        }
        map[y] = names.len();
        names.push(name);
    }
    let mut covers: Vec<(usize, usize)> = a.covers().to_vec();
    covers.extend(b.covers().iter().map(|&(x, y)| (map[x], map[y])));
    Lattice::from_covers(names, &covers).expect("glued sums of lattices are lattices")
}

/// Subspaces of GF(2)^k, each named by its nonzero vectors in ascending
/// integer form joined by `,` (the zero subspace is `"0"`).
pub fn subspace_lattice(k: usize) -> Lattice {
    subspace_lattice_named(k, |v| v.to_string())
}

/// Subspace lattice with caller-chosen vector names; a subspace is named by
/// its nonzero vectors' names in ascending vector order.
pub fn subspace_lattice_named(k: usize, vector_name: impl Fn(u64) -> String) -> Lattice {
    assert!((1..=5).contains(&k));
    let q = 1u64 << k;
    // Subspaces as masks over the 2^k vectors; enumerate by closing spans.
    let mut spaces: Vec<u64> = vec![1];
    let mut i = 0;
    while i < spaces.len() {
        let s = spaces[i];
        for v in 1..q {
            if s >> v & 1 == 0 {
                let t = span_add(s, v, q);
                if !spaces.contains(&t) {
                    spaces.push(t);
                }
            }
        }
        i += 1;
    }
    spaces.sort_by_key(|s| (s.count_ones(), *s));
    let names = spaces
        .iter()
        .map(|&s| {
            let parts: Vec<String> = (1..q).filter(|&v| s >> v & 1 == 1).map(&vector_name).collect();
            if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(",")
            }
        })
        .collect();
    let subset = |a: u64, b: u64| a & !b == 0;
    Lattice::from_leq(names, |x, y| subset(spaces[x], spaces[y])).expect("subspace lattices are lattices")
}

fn span_add(space: u64, v: u64, q: u64) -> u64 {
    let mut out = space;
    for w in 0..q {
        if space >> w & 1 == 1 {
            out |= 1 << (w ^ v);
        }
    }
    out
}

/// Order ideals of a poset given by down-set masks (`below[p]` contains `p`).
pub fn down_sets(names: &[String], below: &[u64]) -> Lattice {
    super::reconstruct_from_mopls(names, below, &[])
        .expect("order ideals of a poset form a lattice")
        .lattice
}
