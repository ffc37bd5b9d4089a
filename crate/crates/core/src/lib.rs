//! Graph 3-coloring with a hybrid artificial bee colony.
//!
//! The search runs over real-valued vertex weights ([`abc`]); each weight
//! vector is decoded into a coloring by a weight-guided DSatur
//! ([`decoder`]) and scored by the number of vertices touching a
//! monochromatic edge ([`graph::penalty`]). [`generator`] produces hidden
//! 3-colorable benchmark instances and [`harness`] runs and summarizes
//! experiment sweeps.

pub mod abc;
pub mod decoder;
pub mod dimacs;
pub mod error;
pub mod generator;
pub mod graph;
pub mod harness;
pub mod seed;

pub use abc::{solve, Colony, FoodSource, ScoutPolicy, SolveOutcome, SolverParams};
pub use decoder::{decode, DecodeResult, Decoder, WeightVector};
pub use dimacs::{parse_dimacs, write_dimacs};
pub use error::{GraphError, HarnessError, ParamsError, ParseError, ParseErrorKind, SpecError};
pub use generator::{generate, hidden_classes, Family, InstanceSpec};
pub use graph::{penalty, Coloring, Graph};
pub use harness::{
    ablation_table, aggregate, run_plan, AggregateStats, ExperimentPlan, RunOptions, RunRecord,
};
