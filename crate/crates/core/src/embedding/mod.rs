//! Partitions and tight embeddings of modular lattices into partition
//! lattices. Every [`PartitionEmbedding`] carries a certificate computed by
//! checking all pairs and all covers.

mod constructions;
mod geometric;
mod graph_embed;
mod model;
mod partition;
mod pipeline;
mod search;
mod tight;

pub use constructions::{distributive_embedding, subdirect_embedding, subdirect_embedding_auto};
pub use geometric::{build_geometric_embedding, GeometricCertificate, GeometricEmbedding};
pub use graph_embed::{build_partition_embedding, connect_components, extract_model_from_embedding, ExtractedModel};
pub use model::{check_lattice_model, check_lattice_model_graph, LatticeModelReport, ModelFailure};
pub use partition::{partition_lattice, Partition, PARTITION_LATTICE_BOUND};
pub use pipeline::{pipeline_embed_thin, Branch, BranchAttempt, PipelineReport, PIPELINE_GLUE_LIMIT, PIPELINE_TRIGGER_LIMIT};
pub use search::{
    brute_force_embedding_search, brute_force_graph_model, direct_partition_search, BRUTE_FORCE_JI_BOUND,
    DIRECT_SEARCH_BOUND,
};
pub use tight::{certify, Certificate, EmbeddingReport, PartitionEmbedding};

use crate::lattice::LatticeError;
use crate::matroid::MatroidError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EmbeddingError {
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("labelling is not a bijection onto the join-irreducibles: {0}")]
    NotABijection(String),
    #[error("the modeling matroid is not simple")]
    NotSimple,
    #[error("lattice model check failed: {0}")]
    ModelCheckFailed(String),
    #[error("the modeling graph is disconnected")]
    GraphDisconnected,
    #[error("lattice is not distributive")]
    NotDistributive,
    #[error("factor embedding {0} is not tight")]
    FactorNotTight(usize),
    #[error("the embedding is not tight")]
    NotTight,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}
