//! Tight (cover-preserving, bottom-preserving) embeddings of finite modular
//! lattices into partition lattices.
//!
//! The crate follows one chain of constructions:
//! lattice → partial linear space on its join-irreducibles → graph or binary
//! matroid modeling that space → partition embedding of the lattice.
//! Every step ships a brute-force checker so results can be certified at
//! desk scale.
//!
//! * [`lattice`]: finite lattices, structural predicates, congruences, line
//!   extraction and localization.
//! * [`pls`]: partial linear spaces with 3-element lines: cycles, the
//!   QIMP/UMP/NMPL/BMPL hierarchy, sparsity, augmentation, point splitting.
//! * [`matroid`]: binary and graphic matroids, modeling predicates, wheels,
//!   model search and a graphicness oracle.
//! * [`modeling`]: constructive graph models (gluing search, standard graphs,
//!   path extension).
//! * [`embedding`]: partitions, lattice-model checks, embedding constructions
//!   and the end-to-end pipeline.
//! * [`io`]: text/JSON formats, the fixture corpus and the job runner behind
//!   the `tightembed` binary.

pub mod bits;
pub mod embedding;
pub mod io;
pub mod lattice;
pub mod matroid;
pub mod modeling;
pub mod names;
pub mod pls;


pub use embedding::{Partition, PartitionEmbedding};
pub use lattice::Lattice;
pub use matroid::{BinaryMatroid, LabeledGraph, Matroid};

pub use pls::Pls;
