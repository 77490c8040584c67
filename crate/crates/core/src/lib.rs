//! Judicious bisections of directed graphs.

pub mod cli;
pub mod constructions;
pub mod digraph;
pub mod engine;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod tight;

pub use digraph::{parse_digraph, CutStats, DegreeProfile, Digraph, GraphError, ParseError};
pub use graph::UndirectedGraph;
pub use engine::{optimal_bisect, prepare_pipeline, Bisection, BisectOutcome, Certificate, EngineConfig, ResultDocument};
