use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bits;

use super::{Matroid, MatroidError};

/// Columns over GF(2)^dim, bit `i` of a column being coordinate `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryMatroid {
    names: Vec<String>,
    dim: usize,
    columns: Vec<u64>,
}

/// Rank of the span of `vectors` by elimination on leading bits.
pub(crate) fn gf2_rank<I: IntoIterator<Item = u64>>(vectors: I) -> usize {
    let mut basis = [0u64; 64];
    let mut r = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                r += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    r
}

impl BinaryMatroid {
    pub fn new<S: AsRef<str>>(names: &[S], dim: usize, columns: &[u64]) -> Result<BinaryMatroid, MatroidError> {
        if names.len() > 64 {
            return Err(MatroidError::TooManyElements(names.len()));
        }
        if dim > 64 {
            return Err(MatroidError::DimensionMismatch("*".into(), dim));
        }
        assert_eq!(names.len(), columns.len(), "one column per element");
        let mut seen = HashSet::new();
        for (s, &c) in names.iter().zip(columns) {
            let s = s.as_ref();
            if !seen.insert(s) {
                return Err(MatroidError::DuplicateElement(s.to_string()));
            }
            if c & !bits::full(dim) != 0 {
                return Err(MatroidError::DimensionMismatch(s.to_string(), dim));
            }
        }
        Ok(BinaryMatroid { names: names.iter().map(|s| s.as_ref().to_string()).collect(), dim, columns: columns.to_vec() })
    }

    /// Columns written as bit strings, leftmost character = coordinate 0.
    pub fn from_bit_strings<S: AsRef<str>, T: AsRef<str>>(cols: &[(S, T)]) -> Result<BinaryMatroid, MatroidError> {
        let dim = cols.first().map_or(0, |c| c.1.as_ref().len());
        let mut names = Vec::new();
        let mut columns = Vec::new();
        for (name, b) in cols {
            let b = b.as_ref();
            if b.len() != dim || !b.chars().all(|c| c == '0' || c == '1') {
                return Err(MatroidError::DimensionMismatch(name.as_ref().to_string(), dim));
            }
            names.push(name.as_ref().to_string());
            columns.push(b.chars().enumerate().filter(|&(_, c)| c == '1').fold(0, |m, (i, _)| m | bits::bit(i)));
        }
        BinaryMatroid::new(&names, dim, &columns)
    }

    pub fn bit_string(&self, e: usize) -> String {
        (0..self.dim).map(|i| if bits::contains(self.columns[e], i) { '1' } else { '0' }).collect()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn column(&self, e: usize) -> u64 {
        self.columns[e]
    }

    /// All 2^k − 1 nonzero vectors of GF(2)^k, named by their value.
    pub fn projective_geometry(k: usize) -> BinaryMatroid {
        let cols: Vec<u64> = (1..1u64 << k).collect();
        let names: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
        BinaryMatroid::new(&names, k, &cols).expect("projective geometry is well formed")
    }

    /// Same element order; coordinates changed so the column matrix is in
    /// reduced row echelon form with zero rows dropped. Equal outputs mean
    /// the inputs differ by an invertible change of coordinates.
    pub fn canonical(&self) -> BinaryMatroid {
        let n = self.columns.len();
        // rows as masks over elements
        let mut rows: Vec<u64> = (0..self.dim)
            .map(|i| (0..n).filter(|&e| bits::contains(self.columns[e], i)).fold(0, |m, e| m | bits::bit(e)))
            .collect();
        let mut r = 0;
        for e in 0..n {
            let Some(p) = (r..rows.len()).find(|&i| bits::contains(rows[i], e)) else { continue };
            rows.swap(r, p);
            for i in 0..rows.len() {
                if i != r && bits::contains(rows[i], e) {
                    rows[i] ^= rows[r];
                }
            }
            r += 1;
        }
        rows.truncate(r);
        let columns: Vec<u64> =
            (0..n).map(|e| (0..r).filter(|&i| bits::contains(rows[i], e)).fold(0, |m, i| m | bits::bit(i))).collect();
        BinaryMatroid { names: self.names.clone(), dim: r, columns }
    }

    /// Restriction to the elements of `set`, in ground order.
    pub fn restrict(&self, set: u64) -> BinaryMatroid {
        let names: Vec<String> = bits::ones(set).map(|e| self.names[e].clone()).collect();
        let columns: Vec<u64> = bits::ones(set).map(|e| self.columns[e]).collect();
        BinaryMatroid { names, dim: self.dim, columns }
    }
}

impl Matroid for BinaryMatroid {
    fn size(&self) -> usize {
        self.names.len()
    }

    fn element_name(&self, e: usize) -> &str {
        &self.names[e]
    }

    fn rank_of(&self, set: u64) -> usize {
        gf2_rank(bits::ones(set).map(|e| self.columns[e]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_term_dependency_is_a_circuit() {
        let m = BinaryMatroid::new(&["e1", "e2", "e3", "e4", "s"], 4, &[1, 2, 4, 8, 3]).unwrap();
        let circuits = m.circuits().unwrap();
        assert_eq!(circuits, vec![0b10011]);
        assert_eq!(m.rank(), 4);
        assert_eq!(m.closure(0b00011), 0b10011);
    }

    #[test]
    fn fano_has_rank_three_and_is_simple() {
        let f = BinaryMatroid::projective_geometry(3);
        assert_eq!(f.size(), 7);
        assert_eq!(f.rank(), 3);
        assert!(f.is_simple());
        let c = f.circuits().unwrap();
        assert_eq!(c.iter().filter(|&&s| bits::count(s) == 3).count(), 7);
        assert_eq!(c.iter().filter(|&&s| bits::count(s) == 4).count(), 7);
    }

    #[test]
    fn canonical_ignores_coordinate_changes() {
        let a = BinaryMatroid::new(&["x", "y", "z"], 2, &[0b01, 0b10, 0b11]).unwrap();
        let b = BinaryMatroid::new(&["x", "y", "z"], 3, &[0b110, 0b100, 0b010]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().dim(), 2);
    }

    #[test]
    fn bit_strings_round_trip() {
        let m = BinaryMatroid::from_bit_strings(&[("a", "100"), ("b", "011")]).unwrap();
        assert_eq!(m.column(1), 0b110);
        assert_eq!(m.bit_string(1), "011");
        assert!(BinaryMatroid::from_bit_strings(&[("a", "10"), ("b", "1")]).is_err());
    }

    #[test]
    fn loops_and_parallels_break_simplicity() {
        assert!(!BinaryMatroid::new(&["a", "b"], 2, &[1, 0]).unwrap().is_simple());
        assert!(!BinaryMatroid::new(&["a", "b"], 2, &[1, 1]).unwrap().is_simple());
        assert!(BinaryMatroid::new(&["a", "a"], 2, &[1, 2]).is_err());
    }
}
