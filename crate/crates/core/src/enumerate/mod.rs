//! Isomorphism-class enumeration: canonical labeling, graph generation,
//! free trees and graph6 input streams.

mod augment;
mod canon;
mod stream;
mod trees;

use thiserror::Error;

pub use augment::{
    all_graphs, augmentation_branches, connected_graphs, connected_graphs_capped, connected_graphs_parallel,
    AugmentationStream, CONNECTED_EXTENDED_ORDER, CONNECTED_MAX_ORDER,
};
pub use canon::{
    canonical_form, canonical_graph, canonical_graph6, canonical_labeling, is_isomorphic, CanonicalForm, Labeling,
    CANON_MAX_ORDER,
};
pub use stream::{maybe_gzip, open_graph6_source, read_graph6_stream, ErrorPolicy, Graph6Stream, StreamError};
pub use trees::{free_trees, FreeTrees, TREE_MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("canonical labeling supports at most {max} vertices, got {n}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("enumeration order must be in 1..={max}, got {n}")]
    OrderOutOfRange { n: usize, max: usize },
}
