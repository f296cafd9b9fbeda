//! Exact analysis of probabilistic opacity for probabilistic transition
//! systems and interval-valued Markov chains.

pub mod alphabet;
pub mod automata;
pub mod disclosure;
pub mod error;
pub mod gen;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod measure;
pub mod modal;
pub mod model;
pub mod rational;
pub mod relations;

pub use alphabet::{Alphabet, Letter, Observation};
pub use error::{Error, Result};
pub use model::text::{parse_model, write_model};
pub use model::{Distribution, Idtmc, Interval, LabeledGraph, Model, Pts, Violation};
pub use rational::Rational;
