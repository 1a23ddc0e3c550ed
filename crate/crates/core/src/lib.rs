//! Markov-Dyck shifts of rotationally homogeneous graphs.
//!
//! The crate builds the graphs from height data, reduces words in the graph
//! inverse semigroup, counts periodic points by brute force, evaluates the
//! zeta function from excursion series, certifies Perron roots and radical
//! closed forms, implements the block-code conjugacy onto the companion edge
//! shift, and samples its measures of maximal entropy.

pub mod census;
pub mod conjugacy;
pub mod error;
pub mod graphs;
pub mod sampling;
pub mod semigroup;
pub mod series;
pub mod spectra;
pub mod zeta;

pub use census::{census, census_with, CensusOptions, MultiplierClass, PeriodicCensus};
pub use conjugacy::{BlockCode, HeightReduction, Window};
pub use error::{Error, Result};
pub use graphs::{
    build_companion, build_rotational, dyck_graph, fibonacci_graph, AdjacencyMatrix, EdgeId, Graph, HeightData,
    VertexId,
};
pub use sampling::{mme_checks, sample_path, ParryChain};
pub use semigroup::{InverseSemigroup, Letter, SemigroupElement, Sign};
pub use series::PowerSeries;
pub use spectra::{entropy, perron_root, CertifiedReal, IntegerPolynomial};
pub use zeta::{zeta_md, Reading, ZetaReport};
