use thiserror::Error;

use crate::model::Violation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the analyses. Negative verdicts (no simulation, LP
/// infeasible, ...) are not errors; they are returned as values.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid model: {}", format_violations(.0))]
    InvalidModel(Vec<Violation>),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("alphabet mismatch: {{{}}} vs {{{}}}", .left.join(","), .right.join(","))]
    AlphabetMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },

    #[error("empty distribution polytope at state {state}")]
    EmptyPolytope { state: String },

    #[error("choice {state}->{successor} = {value} lies outside the edge interval")]
    ChoiceOutsideInterval {
        state: String,
        successor: String,
        value: String,
    },

    #[error("invalid distribution at {context}: {reason}")]
    InvalidDistribution { context: String, reason: String },

    #[error("invalid observation: {0}")]
    InvalidObservation(String),

    #[error("not observation-live: {0}")]
    NotObservationLive(String),

    #[error("state budget of {budget} automaton states exceeded")]
    StateBudgetExceeded { budget: usize },

    #[error("modal edges: {}", format_edges(.edges))]
    ModalEdgesPresent { edges: Vec<(String, String)> },

    #[error("sampled run did not enter a bottom component within {horizon} steps")]
    HorizonTooShort { horizon: usize },

    #[error("satisfaction witness row for {pts_state} has zero mass at pair ({pts_state}, {spec_state})")]
    DegenerateRow {
        pts_state: String,
        spec_state: String,
    },

    #[error("run {run} of the simulating system has a zero-probability similarity class")]
    UnreachableSimClass { run: String },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("invalid scheduler: {0}")]
    InvalidScheduler(String),

    #[error("linear program is unbounded")]
    Unbounded,
}

fn format_violations(v: &[Violation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

fn format_edges(edges: &[(String, String)]) -> String {
    edges
        .iter()
        .map(|(a, b)| format!("{a}->{b}"))
        .collect::<Vec<_>>()
        .join(", ")
}
