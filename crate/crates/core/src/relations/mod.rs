//! Satisfaction, simulation and bisimulation checking, the conversion of
//! satisfaction witnesses into simulation witnesses, and scheduler transfer
//! along a simulation.

mod bisim;
mod satisfaction;
mod simulation;
mod transfer;
mod witness;

use std::collections::{BTreeMap, BTreeSet};

pub use bisim::{check_prob_bisimulation, Bisimulation, Side};
pub use satisfaction::{check_satisfaction, sat_witness_to_simulation};
pub use simulation::{check_simulation_idtmc, check_simulation_pts};
pub use transfer::{
    transfer_scheduler, transfer_scheduler_weighted, verify_cone_equality, ClassWeight, ConeReport,
};
pub use witness::{
    parse_sat_witness, parse_sim_witness, validate_sat_witness, validate_sim_witness,
    write_sat_witness, write_sim_witness, Pair, SatWitness, SimWitness,
};

/// Why the initial pair did not survive the fixpoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// The initial pair.
    pub pair: Pair,
    pub reason: String,
    /// Pairs deleted by the fixpoint, in deletion order.
    pub removed: Vec<Pair>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W> {
    Holds(W),
    Refuted(Refutation),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds(w) => Some(w),
            Verdict::Refuted(_) => None,
        }
    }

    pub fn refutation(&self) -> Option<&Refutation> {
        match self {
            Verdict::Holds(_) => None,
            Verdict::Refuted(r) => Some(r),
        }
    }
}

/// Greatest fixpoint by repeated deletion: pairs are visited in lexicographic
/// order and removed as soon as `solve` fails against the current relation.
/// Returns the surviving relation, the last solution of every survivor, and
/// the deletion order.
pub(crate) fn greatest_fixpoint<T, F>(
    candidates: BTreeSet<Pair>,
    mut solve: F,
) -> (BTreeSet<Pair>, BTreeMap<Pair, T>, Vec<Pair>)
where
    F: FnMut(Pair, &BTreeSet<Pair>) -> Option<T>,
{
    let mut relation = candidates;
    let mut solutions = BTreeMap::new();
    let mut removed = Vec::new();
    loop {
        let mut changed = false;
        let pairs: Vec<Pair> = relation.iter().copied().collect();
        for pair in pairs {
            match solve(pair, &relation) {
                Some(sol) => {
                    solutions.insert(pair, sol);
                }
                None => {
                    relation.remove(&pair);
                    solutions.remove(&pair);
                    removed.push(pair);
                    changed = true;
                }
            }
        }
        if !changed {
            return (relation, solutions, removed);
        }
    }
}

fn refutation(
    init: Pair,
    labels_match: bool,
    removed: Vec<Pair>,
    describe: impl Fn(Pair) -> String,
) -> Refutation {
    let reason = if labels_match {
        format!(
            "no valid transfer remains for {} after {} deletions",
            describe(init),
            removed.len()
        )
    } else {
        format!("{}: labels differ", describe(init))
    };
    Refutation {
        pair: init,
        reason,
        removed,
    }
}
