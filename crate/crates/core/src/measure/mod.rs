//! Exact probabilities of ω-regular languages and cones in PTSs.

mod monte_carlo;
mod product;

use std::collections::BTreeMap;

use num_traits::Zero;

pub use monte_carlo::{monte_carlo_probability, MonteCarloEstimate};
pub use product::ProductChain;

use crate::alphabet::{Letter, Observation};
use crate::automata::{
    build_disclosure_dpa, check_observation_liveness, trace_nba, Dpa, DEFAULT_STATE_BUDGET,
};
use crate::error::{Error, Result};
use crate::model::{LabeledGraph, Pts};
use crate::rational::{one, Rational};

/// Probability that the trace of a run lies in `L(dpa)`.
pub fn omega_probability(pts: &Pts, dpa: &Dpa) -> Result<Rational> {
    let chain = ProductChain::build(pts, dpa)?;
    Ok(chain.acceptance_probabilities().swap_remove(0))
}

/// Probability of the cone of runs whose trace starts with `word` (the first
/// letter is the initial label).
pub fn cone_probability(pts: &Pts, word: &[Letter]) -> Rational {
    let Some((&first, rest)) = word.split_first() else {
        return one();
    };
    if pts.label(pts.initial()) != first {
        return Rational::zero();
    }
    let mut mass: BTreeMap<usize, Rational> = BTreeMap::from([(pts.initial(), one())]);
    for &l in rest {
        let mut next: BTreeMap<usize, Rational> = BTreeMap::new();
        for (s, m) in &mass {
            for (&t, p) in pts.row(*s) {
                if pts.label(t) == l {
                    *next.entry(t).or_insert_with(Rational::zero) += m * p;
                }
            }
        }
        if next.is_empty() {
            return Rational::zero();
        }
        mass = next;
    }
    mass.values().sum()
}

/// Every word of length `1..=k` with a non-zero cone, with its probability.
pub fn cones_up_to(pts: &Pts, k: usize) -> BTreeMap<Vec<Letter>, Rational> {
    let mut out = BTreeMap::new();
    if k == 0 {
        return out;
    }
    // word -> state -> mass
    let mut layer: BTreeMap<Vec<Letter>, BTreeMap<usize, Rational>> = BTreeMap::from([(
        vec![pts.label(pts.initial())],
        BTreeMap::from([(pts.initial(), one())]),
    )]);
    for len in 1..=k {
        for (w, m) in &layer {
            out.insert(w.clone(), m.values().sum());
        }
        if len == k {
            break;
        }
        let mut next: BTreeMap<Vec<Letter>, BTreeMap<usize, Rational>> = BTreeMap::new();
        for (w, m) in &layer {
            for (s, ms) in m {
                for (&t, p) in pts.row(*s) {
                    let mut w2 = w.clone();
                    w2.push(pts.label(t));
                    *next
                        .entry(w2)
                        .or_default()
                        .entry(t)
                        .or_insert_with(Rational::zero) += ms * p;
                }
            }
        }
        layer = next;
    }
    out
}

/// Probability that a run of `pts` discloses the secret `phi` to an observer
/// of `obs`.
pub fn disclosure_pts(pts: &Pts, obs: &Observation, phi: &Dpa) -> Result<Rational> {
    disclosure_pts_with_budget(pts, obs, phi, DEFAULT_STATE_BUDGET)
}

pub fn disclosure_pts_with_budget(
    pts: &Pts,
    obs: &Observation,
    phi: &Dpa,
    budget: usize,
) -> Result<Rational> {
    pts.alphabet().ensure_same(obs.alphabet())?;
    pts.alphabet().ensure_same(phi.alphabet())?;
    if !check_observation_liveness(pts, obs) {
        return Err(Error::NotObservationLive(format!(
            "a reachable cycle of the model emits no letter of {}",
            obs.observed_alphabet()
        )));
    }
    let v = build_disclosure_dpa(&trace_nba(pts), phi, obs, budget)?;
    omega_probability(pts, &v)
}

/// Disclosure of the secret plus disclosure of its complement.
pub fn symmetric_disclosure_pts(pts: &Pts, obs: &Observation, phi: &Dpa) -> Result<Rational> {
    Ok(disclosure_pts(pts, obs, phi)? + disclosure_pts(pts, obs, &phi.complement())?)
}
