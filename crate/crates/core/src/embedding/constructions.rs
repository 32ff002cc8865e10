use crate::bits;
use crate::lattice::{classify, maximal_congruences, Lattice};

use super::search::brute_force_embedding_search;
use super::{EmbeddingError, Partition, PartitionEmbedding};

/// Anchored form: with J = J(L) and an extra anchor point |J|, the image of
/// a has the single block J(a) ∪ {anchor} and singletons elsewhere. Lands in
/// Part(|J| + 1), whose height |J| equals d(L).
pub fn distributive_embedding(l: &Lattice) -> Result<PartitionEmbedding, EmbeddingError> {
    if !classify(l).distributive {
        return Err(EmbeddingError::NotDistributive);
    }
    let ji = l.join_irreducibles();
    let anchor = ji.len();
    let map = (0..l.len())
        .map(|a| Partition::comp(anchor + 1, bits::ones(ji.mask(a)).map(|k| (k, anchor))))
        .collect();
    PartitionEmbedding::new(l, anchor + 1, map)
}

/// Juxtaposes factor embeddings of the quotients by the maximal congruences,
/// each on its own stretch of the ground set. `factors[i]` must embed the
/// i-th quotient as returned by [`maximal_congruences`].
pub fn subdirect_embedding(l: &Lattice, factors: &[PartitionEmbedding]) -> Result<PartitionEmbedding, EmbeddingError> {
    let mc = maximal_congruences(l)?;
    if factors.len() != mc.s {
        return Err(EmbeddingError::SizeMismatch(format!("{} factor embeddings for {} factors", factors.len(), mc.s)));
    }
    for (i, f) in factors.iter().enumerate() {
        if f.lattice != mc.factors[i] {
            return Err(EmbeddingError::SizeMismatch(format!("factor embedding {i} is for another lattice")));
        }
        if !f.is_tight() {
            return Err(EmbeddingError::FactorNotTight(i));
        }
    }
    let n: usize = factors.iter().map(|f| f.n).sum();
    let map = (0..l.len())
        .map(|a| {
            let mut edges = Vec::new();
            let mut off = 0;
            for (i, f) in factors.iter().enumerate() {
                for block in f.image(mc.projections[i][a]).blocks() {
                    edges.extend(block.windows(2).map(|w| (off + w[0], off + w[1])));
                }
                off += f.n;
            }
            Partition::comp(n, edges)
        })
        .collect();
    PartitionEmbedding::new(l, n, map)
}

/// Factors embedded by the anchored construction when distributive and by
/// exhaustive search otherwise.
pub fn subdirect_embedding_auto(l: &Lattice) -> Result<PartitionEmbedding, EmbeddingError> {
    let mc = maximal_congruences(l)?;
    let factors = mc
        .factors
        .iter()
        .enumerate()
        .map(|(i, f)| {
            if classify(f).distributive {
                distributive_embedding(f)
            } else {
                brute_force_embedding_search(f, f.height() + 1)?.ok_or(EmbeddingError::FactorNotTight(i))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    subdirect_embedding(l, &factors)
}
