use std::fmt;
use std::str::FromStr;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::lattice::Lattice;

use super::EmbeddingError;

/// Largest n for which Part(n) is materialized as a [`Lattice`]; Bell(7) = 877.
pub const PARTITION_LATTICE_BOUND: usize = 7;

/// A set partition of `0..n`, stored as a restricted growth string: block
/// ids are numbered by least element, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    fn canonical(labels: impl IntoIterator<Item = usize>) -> Partition {
        let mut renumber = std::collections::HashMap::new();
        let block_of = labels
            .into_iter()
            .map(|x| {
                let k = renumber.len();
                *renumber.entry(x).or_insert(k)
            })
            .collect();
        Partition { block_of }
    }

    pub fn singletons(n: usize) -> Partition {
        Partition { block_of: (0..n).collect() }
    }

    pub fn whole(n: usize) -> Partition {
        Partition { block_of: vec![0; n] }
    }

    /// Blocks must be disjoint and cover `0..n`.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition, EmbeddingError> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(EmbeddingError::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n || label[x] != usize::MAX {
                    return Err(EmbeddingError::InvalidPartition(format!("element {} misplaced", x + 1)));
                }
                label[x] = b;
            }
        }
        if let Some(x) = label.iter().position(|&b| b == usize::MAX) {
            return Err(EmbeddingError::InvalidPartition(format!("element {} uncovered", x + 1)));
        }
        Ok(Partition::canonical(label))
    }

    /// Connected components of the graph `(0..n, edges)`.
    pub fn comp(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Partition {
        let mut uf = UnionFind::<usize>::new(n);
        for (u, v) in edges {
            uf.union(u, v);
        }
        Partition::canonical((0..n).map(|x| uf.find(x)))
    }

    pub fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn n_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&m| m + 1)
    }

    /// Height in Part(n): n minus the number of blocks.
    pub fn rank(&self) -> usize {
        self.ground_size() - self.n_blocks()
    }

    /// Blocks in canonical order, each ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n_blocks()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    pub fn same_block(&self, x: usize, y: usize) -> bool {
        self.block_of[x] == self.block_of[y]
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.ground_size(), other.ground_size());
        let n = self.ground_size();
        Partition::canonical(self.block_of.iter().zip(&other.block_of).map(|(&a, &b)| a * n + b))
    }

    pub fn join(&self, other: &Partition) -> Partition {
        debug_assert_eq!(self.ground_size(), other.ground_size());
        let n = self.ground_size();
        let mut uf = UnionFind::<usize>::new(n);
        let mut first_a = vec![usize::MAX; n];
        let mut first_b = vec![usize::MAX; n];
        for x in 0..n {
            for (first, b) in [(&mut first_a, self.block_of[x]), (&mut first_b, other.block_of[x])] {
                if first[b] == usize::MAX {
                    first[b] = x;
                } else {
                    uf.union(first[b], x);
                }
            }
        }
        Partition::canonical((0..n).map(|x| uf.find(x)))
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.n_blocks()];
        self.block_of.iter().zip(&other.block_of).all(|(&a, &b)| {
            if image[a] == usize::MAX {
                image[a] = b;
            }
            image[a] == b
        })
    }

    /// `other` covers `self`: exactly two blocks of `self` merged.
    pub fn is_covered_by(&self, other: &Partition) -> bool {
        self.n_blocks() == other.n_blocks() + 1 && self.leq(other)
    }

    /// Blocks `i` and `j` united.
    pub fn merge_blocks(&self, i: usize, j: usize) -> Partition {
        Partition::canonical(self.block_of.iter().map(|&x| if x == j { i } else { x }))
    }

    /// The same partition on `0..n` with new singletons appended.
    pub fn padded(&self, n: usize) -> Partition {
        assert!(n >= self.ground_size());
        let k = self.n_blocks();
        let extra = (0..n - self.ground_size()).map(|i| k + i);
        Partition { block_of: self.block_of.iter().copied().chain(extra).collect() }
    }

    /// Every partition of `0..n`, in restricted-growth-string order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Partition>) {
            if cur.len() == n {
                out.push(Partition { block_of: cur.clone() });
                return;
            }
            let top = if cur.is_empty() { 0 } else { max + 1 };
            for b in 0..=top {
                cur.push(b);
                go(n, cur, max.max(b), out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, &mut Vec::new(), 0, &mut out);
        out
    }
}

/// Part(n) with elements named by their text form.
pub fn partition_lattice(n: usize) -> Result<Lattice, EmbeddingError> {
    if n == 0 || n > PARTITION_LATTICE_BOUND {
        return Err(EmbeddingError::BoundExceeded(format!(
            "Part({n}) is materialized only for 1 <= n <= {PARTITION_LATTICE_BOUND}"
        )));
    }
    let parts = Partition::all(n);
    let index: std::collections::HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let mut covers = Vec::new();
    for (i, q) in parts.iter().enumerate() {
        let k = q.n_blocks();
        for a in 0..k {
            for b in a + 1..k {
                covers.push((i, index[&q.merge_blocks(a, b)]));
            }
        }
    }
    let names = parts.iter().map(Partition::to_string).collect();
    Ok(Lattice::from_covers(names, &covers)?)
}

/// Elements print 1-based, blocks by least element and separated by `|`;
/// from n = 10 on, elements inside a block are comma separated.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.ground_size() >= 10 { "," } else { "" };
        let text: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(sep))
            .collect();
        f.write_str(&text.join("|"))
    }
}

impl FromStr for Partition {
    type Err = EmbeddingError;

    /// Without commas each digit is an element, except that a string of
    /// multi-digit singletons ("1|2|…|10") is also accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::singletons(0));
        }
        let parse = |tokens: Vec<Vec<&str>>| -> Result<Partition, EmbeddingError> {
            let bad = || EmbeddingError::InvalidPartition(s.to_string());
            let blocks: Vec<Vec<usize>> = tokens
                .iter()
                .map(|b| {
                    b.iter()
                        .map(|t| t.trim().parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1).ok_or_else(bad))
                        .collect()
                })
                .collect::<Result<_, _>>()?;
            let n = blocks.iter().map(Vec::len).sum();
            Partition::from_blocks(n, &blocks)
        };
        if s.contains(',') {
            return parse(s.split('|').map(|b| b.split(',').collect()).collect());
        }
        let digits = parse(s.split('|').map(|b| b.trim().split("").filter(|t| !t.is_empty()).collect()).collect());
        digits.or_else(|e| parse(s.split('|').map(|b| vec![b]).collect()).map_err(|_| e))
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Partition {
    type Error = EmbeddingError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}
