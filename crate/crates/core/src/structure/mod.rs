//! Partitions and quotient matrices, interlacing, and the Hoffman-type
//! clique/coclique bounds together with exhaustive oracles for them.

mod bounds;
mod interlacing;
mod partition;
mod quotient;

use thiserror::Error;

pub use bounds::{
    check_equality_case, clique_order_bound, hoffman_coclique_bound, max_clique, max_coclique, Bound,
};
pub use interlacing::{check_interlacing, check_interlacing_with, Interlacing, INTERLACING_TOL, TIGHTNESS_TOL};
pub use partition::Partition;
pub use quotient::{is_equitable, quotient_matrix, quotient_spectrum, QuotientMatrix};

use crate::graph::GraphError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("invalid partition: {0}")]
    InvalidPartition(&'static str),
    #[error("partition covers {partition} vertices, graph has {graph}")]
    OrderMismatch { partition: usize, graph: usize },
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph has no edges")]
    Edgeless,
    #[error("small spectrum has {small} values, more than the {big} of the large one")]
    TooManyValues { small: usize, big: usize },
    #[error("vertices {0} and {1} of the proposed clique are not adjacent")]
    NotAClique(usize, usize),
    #[error("clique has order {actual}, the equality case needs {expected}")]
    WrongCliqueOrder { expected: usize, actual: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}
