use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lattice::Lattice;

use super::{EmbeddingError, Partition};

/// Computed, never assumed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub is_homomorphism: bool,
    pub is_cover_preserving: bool,
    pub maps_bottom_to_bottom: bool,
}

impl Certificate {
    pub fn is_tight(&self) -> bool {
        self.is_homomorphism && self.is_cover_preserving && self.maps_bottom_to_bottom
    }
}

/// A map from a lattice into Part(n) together with its certificate.
#[derive(Debug, Clone)]
pub struct PartitionEmbedding {
    pub lattice: Lattice,
    pub n: usize,
    /// Indexed by lattice element.
    pub map: Vec<Partition>,
    pub certificate: Certificate,
}

/// JSON form: element name → partition text, plus the certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub n: usize,
    pub map: BTreeMap<String, Partition>,
    pub certificate: Certificate,
}

pub fn certify(l: &Lattice, n: usize, map: &[Partition]) -> Certificate {
    let len = l.len();
    let is_homomorphism = (0..len).all(|a| {
        (a + 1..len).all(|b| {
            map[l.meet(a, b)] == map[a].meet(&map[b]) && map[l.join(a, b)] == map[a].join(&map[b])
        })
    });
    let is_cover_preserving = l.covers().iter().all(|&(a, b)| map[a].is_covered_by(&map[b]));
    let maps_bottom_to_bottom = map[l.bottom()] == Partition::singletons(n);
    Certificate { is_homomorphism, is_cover_preserving, maps_bottom_to_bottom }
}

impl PartitionEmbedding {
    pub fn new(l: &Lattice, n: usize, map: Vec<Partition>) -> Result<PartitionEmbedding, EmbeddingError> {
        if map.len() != l.len() {
            return Err(EmbeddingError::SizeMismatch(format!("{} images for {} elements", map.len(), l.len())));
        }
        if let Some(q) = map.iter().find(|q| q.ground_size() != n) {
            return Err(EmbeddingError::SizeMismatch(format!("partition {q} is not on {n} elements")));
        }
        let certificate = certify(l, n, &map);
        // a cover-preserving map from the bottom climbs d(L) ranks
        debug_assert!(!certificate.is_tight() || n > l.height());
        Ok(PartitionEmbedding { lattice: l.clone(), n, map, certificate })
    }

    /// Re-certifies a named map; every element needs an image.
    pub fn from_named(l: &Lattice, n: usize, named: &BTreeMap<String, Partition>) -> Result<Self, EmbeddingError> {
        let map = (0..l.len())
            .map(|a| {
                named.get(l.name(a)).cloned().ok_or_else(|| EmbeddingError::SizeMismatch(format!("no image for {}", l.name(a))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if named.len() != l.len() {
            return Err(EmbeddingError::SizeMismatch("images name unknown elements".into()));
        }
        PartitionEmbedding::new(l, n, map)
    }

    pub fn is_tight(&self) -> bool {
        self.certificate.is_tight()
    }

    pub fn image(&self, a: usize) -> &Partition {
        &self.map[a]
    }

    /// The same map into Part(m), m ≥ n, with new singletons; tightness is kept.
    pub fn padded(&self, m: usize) -> Result<PartitionEmbedding, EmbeddingError> {
        if m < self.n {
            return Err(EmbeddingError::SizeMismatch(format!("cannot shrink Part({}) to Part({m})", self.n)));
        }
        PartitionEmbedding::new(&self.lattice, m, self.map.iter().map(|q| q.padded(m)).collect())
    }

    pub fn report(&self) -> EmbeddingReport {
        EmbeddingReport {
            n: self.n,
            map: (0..self.lattice.len()).map(|a| (self.lattice.name(a).to_string(), self.map[a].clone())).collect(),
            certificate: self.certificate,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::families;

    #[test]
    fn atoms_of_part3_embed_m3() {
        let m3 = families::m_n(3);
        let img = ["1|2|3", "12|3", "13|2", "1|23", "123"];
        let map: Vec<Partition> = img.iter().map(|s| s.parse().unwrap()).collect();
        let e = PartitionEmbedding::new(&m3, 3, map).unwrap();
        assert!(e.is_tight());
        assert!(e.padded(5).unwrap().is_tight());
    }

    #[test]
    fn each_failure_is_reported() {
        let c3 = families::chain(3);
        let skip: Vec<Partition> = ["1|2|3", "12|3", "1234"].iter().map(|s| s.parse::<Partition>().unwrap().padded(4)).collect();
        let e = PartitionEmbedding::new(&c3, 4, skip).unwrap();
        assert!(e.certificate.is_homomorphism && !e.certificate.is_cover_preserving);
        let lifted: Vec<Partition> = ["12|3", "123", "123"].iter().map(|s| s.parse().unwrap()).collect();
        let e = PartitionEmbedding::new(&c3, 3, lifted).unwrap();
        assert!(!e.certificate.maps_bottom_to_bottom && !e.certificate.is_cover_preserving);
        let m3 = families::m_n(3);
        let bad: Vec<Partition> = ["1|2|3", "12|3", "12|3", "1|23", "123"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(!PartitionEmbedding::new(&m3, 3, bad).unwrap().certificate.is_homomorphism);
    }

    #[test]
    fn report_round_trip() {
        let c2 = families::chain(2);
        let e = PartitionEmbedding::new(&c2, 2, vec![Partition::singletons(2), Partition::whole(2)]).unwrap();
        let json = serde_json::to_string(&e.report()).unwrap();
        let back: EmbeddingReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e.report());
        assert!(json.contains("\"12\""));
        let again = PartitionEmbedding::from_named(&c2, back.n, &back.map).unwrap();
        assert_eq!(again.map, e.map);
    }
}
