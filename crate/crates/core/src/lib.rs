//! Length-constrained cuts, parallel-greedy graphs and length-constrained
//! expander decompositions, with every comparison done in exact arithmetic.
//!
//! The numeric core is generic over [`Scalar`]; the aliases below fix the
//! exact rational instantiation that all lemma checks are stated for.

pub mod arboricity;
pub mod cut;
pub mod decomposition;
pub mod demand;
pub mod dispersal;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod graph;
pub mod io;
pub mod parallel_greedy;
pub mod report;
pub mod scalar;

pub use cut::{
    demand_size, demand_size_at, demand_size_with_mode, evaluate_cut, sparsity,
    verify_cut_sequence, CutEvaluation, CutSequenceReport, DemandSize, WitnessMode,
};
pub use demand::Demand;
pub use error::{Error, Result};
pub use graph::{Distance, Edge, NodeWeighting};
pub use scalar::{ratio, Extended, Scalar};

/// Arbitrary-precision rational; the default scalar.
pub type Rational = num_rational::BigRational;

/// Graph with exact rational lengths and integer capacities.
pub type LengthCapGraph = graph::Graph<Rational>;
pub type MovingCut = cut::MovingCut<Rational>;

/// Floating-point instantiation for exploratory runs.
pub type FloatGraph = graph::Graph<f64>;
pub type FloatCut = cut::MovingCut<f64>;

pub use graph::Graph;
