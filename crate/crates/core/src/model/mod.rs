//! Probabilistic models: PTSs, interval-valued DTMCs, and their schedulers.

mod distribution;
mod idtmc;
mod interval;
mod polytope;
mod pts;
mod scheduler;
pub mod text;

use std::fmt;

pub use distribution::Distribution;
pub use idtmc::{Idtmc, IdtmcBuilder};
pub use interval::{sum_attainable, Interval};
pub use polytope::{interior_point, polytope_vertices};
pub use pts::{Pts, PtsBuilder};
pub use scheduler::{
    interior_choice, schedule_memoryless, unfold, DepthBoundedScheduler, MemorylessChoice,
};

use crate::alphabet::{Alphabet, Letter};

/// Read access shared by PTSs and IDTMCs: a finite, state-labeled graph whose
/// edges are the transitions that can carry positive probability.
pub trait LabeledGraph {
    fn alphabet(&self) -> &Alphabet;
    fn num_states(&self) -> usize;
    fn initial(&self) -> usize;
    fn label(&self, state: usize) -> Letter;
    fn state_name(&self, state: usize) -> &str;
    fn successors(&self, state: usize) -> Vec<usize>;

    fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.num_states()).map(|s| self.successors(s)).collect()
    }
}

/// One problem found by model validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    InitMissing,
    LabelOutsideAlphabet {
        state: String,
    },
    ProbabilityOutOfRange {
        state: String,
        successor: String,
        value: String,
    },
    DistributionSum {
        state: String,
        sum: String,
    },
    EmptyPolytope {
        state: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::InitMissing => write!(f, "no initial state"),
            Violation::LabelOutsideAlphabet { state } => {
                write!(f, "state {state}: label outside alphabet")
            }
            Violation::ProbabilityOutOfRange {
                state,
                successor,
                value,
            } => write!(
                f,
                "state {state}: probability {value} to {successor} not in (0, 1]"
            ),
            Violation::DistributionSum { state, sum } => {
                write!(f, "state {state}: distribution sum ≠ 1 (is {sum})")
            }
            Violation::EmptyPolytope { state } => {
                write!(f, "state {state}: empty distribution polytope")
            }
        }
    }
}

/// Either kind of model, as read from a model file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Pts(Pts),
    Idtmc(Idtmc),
}

impl Model {
    pub fn validate(&self) -> Vec<Violation> {
        match self {
            Model::Pts(p) => p.validate(),
            Model::Idtmc(s) => s.validate(),
        }
    }

    pub fn graph(&self) -> &dyn LabeledGraph {
        match self {
            Model::Pts(p) => p,
            Model::Idtmc(s) => s,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Model::Pts(_) => "pts",
            Model::Idtmc(_) => "idtmc",
        }
    }
}

/// Validation report; empty iff the model is valid.
pub fn validate_model(model: &Model) -> Vec<Violation> {
    model.validate()
}
