//! Constructive graph models of partial linear spaces. Every graph returned
//! here labels its edges by point names, so the modeling bijection is read
//! off the labels.

mod augmented;
mod extend;
mod glue;
mod standard;

pub use augmented::{model_augmented_ump, model_recognized_augmented_ump, AugmentMode, AugmentedModel};
pub use extend::{extend_graph_with_path, ExtendedModel};
pub use glue::{enumerate_glue_models, naive_glue_search, GlueModel, GlueSearch, DEFAULT_GLUE_LINE_BOUND};
pub use standard::{standard_graph_qimp, standard_graph_ump, StandardModel};

use crate::matroid::MatroidError;
use crate::pls::PlsError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelingError {
    #[error("not a QIMP: line {0:?} has no quasi-isolated point")]
    NotAQimp([String; 3]),
    #[error("not a UMP")]
    NotAUmp,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("edges {0} and {1} are not incident")]
    EdgesNotIncident(String, String),
    #[error("path between {0} and {1} collides with the existing model")]
    PathCollision(String, String),
    #[error("mode violation: {0}")]
    ModeViolation(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    Pls(#[from] PlsError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}
