use serde::Serialize;

use crate::bits;
use crate::lattice::Lattice;
use crate::matroid::Matroid;

use super::model::{ji_map, ModelFailure};
use super::EmbeddingError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricCertificate {
    pub is_homomorphism: bool,
    pub is_cover_preserving: bool,
    pub maps_bottom_to_bottom: bool,
}

/// Φ(a) = closure of φ(J(a)) in the whole matroid, as a flat mask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeometricEmbedding {
    pub flats: Vec<u64>,
    pub ranks: Vec<usize>,
    /// Height of the lattice of flats.
    pub flat_height: usize,
    pub certificate: GeometricCertificate,
}

impl GeometricEmbedding {
    pub fn is_tight(&self) -> bool {
        let c = &self.certificate;
        c.is_homomorphism && c.is_cover_preserving && c.maps_bottom_to_bottom
    }
}

/// Join-irreducibles go to the equally named elements of `m`, which may
/// have further elements. Closedness is read inside the image of J, where
/// the restriction must be simple; the embedding itself uses the global
/// closure.
pub fn build_geometric_embedding<M: Matroid + ?Sized>(l: &Lattice, m: &M) -> Result<GeometricEmbedding, EmbeddingError> {
    let phi = ji_map(l, m, false)?;
    let ji = l.join_irreducibles();
    let e = bits::from_iter(phi.iter().copied());
    let simple = bits::ones(e).all(|x| m.rank_of(bits::bit(x)) == 1)
        && phi.iter().enumerate().all(|(i, &x)| phi[i + 1..].iter().all(|&y| m.rank_of(bits::bit(x) | bits::bit(y)) == 2));
    if !simple {
        return Err(EmbeddingError::NotSimple);
    }
    let image = |a: usize| bits::from_iter(bits::ones(ji.mask(a)).map(|k| phi[k]));
    for a in 0..l.len() {
        let s = image(a);
        let extra = m.closure(s) & e & !s;
        if extra != 0 {
            let f = ModelFailure::NotClosed {
                element: l.name(a).to_string(),
                extra: m.element_name(extra.trailing_zeros() as usize).to_string(),
            };
            return Err(EmbeddingError::ModelCheckFailed(format!("{f:?}")));
        }
    }
    if m.rank_of(e) != l.height() {
        let f = ModelFailure::Rank { mrk: m.rank_of(e), height: l.height() };
        return Err(EmbeddingError::ModelCheckFailed(format!("{f:?}")));
    }
    let flats: Vec<u64> = (0..l.len()).map(|a| m.closure(image(a))).collect();
    let ranks: Vec<usize> = flats.iter().map(|&f| m.rank_of(f)).collect();
    let n = l.len();
    let is_homomorphism = (0..n).all(|a| {
        (a + 1..n).all(|b| {
            flats[l.meet(a, b)] == flats[a] & flats[b] && flats[l.join(a, b)] == m.closure(flats[a] | flats[b])
        })
    });
    let is_cover_preserving = l
        .covers()
        .iter()
        .all(|&(a, b)| flats[a] & !flats[b] == 0 && flats[a] != flats[b] && ranks[b] == ranks[a] + 1);
    let maps_bottom_to_bottom = flats[l.bottom()] == m.closure(0);
    Ok(GeometricEmbedding {
        flats,
        ranks,
        flat_height: m.rank(),
        certificate: GeometricCertificate { is_homomorphism, is_cover_preserving, maps_bottom_to_bottom },
    })
}
