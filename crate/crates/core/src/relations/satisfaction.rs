use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lp::{lp_feasible, LinearProblem, Relation};
use crate::model::{Distribution, Idtmc, LabeledGraph, Pts};
use crate::rational::{one, Rational};
use crate::relations::witness::add_interval;
use crate::relations::{
    greatest_fixpoint, refutation, validate_sim_witness, Pair, SatWitness, SimWitness, Verdict,
};

/// Transportation problem for `(q, s)`: rows fixed to `Δ(q)`, columns inside
/// `T(s)` with open ends strict, support restricted to `relation`.
fn joint_for(
    pts: &Pts,
    spec: &Idtmc,
    (q, s): Pair,
    relation: &BTreeSet<Pair>,
) -> Option<BTreeMap<Pair, Rational>> {
    let mut vars: Vec<Pair> = Vec::new();
    for &u in pts.row(q).keys() {
        let before = vars.len();
        vars.extend(relation.range((u, 0)..(u + 1, 0)).copied());
        if vars.len() == before {
            return None;
        }
    }
    let mut lp = LinearProblem::new(vars.len());
    for (&u, p) in pts.row(q) {
        let row = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.0 == u)
            .map(|(i, _)| (i, one()))
            .collect();
        lp.add(row, Relation::Eq, p.clone());
    }
    let columns: BTreeSet<usize> = spec
        .row(s)
        .keys()
        .copied()
        .chain(vars.iter().map(|v| v.1))
        .collect();
    for t in columns {
        let expr: Vec<(usize, Rational)> = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.1 == t)
            .map(|(i, _)| (i, one()))
            .collect();
        let iv = spec.interval(s, t);
        if expr.is_empty() {
            if !iv.contains_zero() {
                return None;
            }
            continue;
        }
        add_interval(&mut lp, expr, &iv, true);
    }
    let x = lp_feasible(&lp)?;
    Some(
        vars.into_iter()
            .zip(x)
            .filter(|(_, p)| !p.is_zero())
            .collect(),
    )
}

/// Decides whether `pts` satisfies `spec` by a greatest fixpoint over
/// label-matching pairs.
pub fn check_satisfaction(pts: &Pts, spec: &Idtmc) -> Result<Verdict<SatWitness>> {
    pts.alphabet().ensure_same(spec.alphabet())?;
    let candidates: BTreeSet<Pair> = (0..pts.num_states())
        .flat_map(|q| (0..spec.num_states()).map(move |s| (q, s)))
        .filter(|&(q, s)| pts.label(q) == spec.label(s))
        .collect();
    let init = (pts.initial(), spec.initial());
    let labels_match = candidates.contains(&init);
    let (relation, joint, removed) =
        greatest_fixpoint(candidates, |pair, rel| joint_for(pts, spec, pair, rel));
    if !relation.contains(&init) {
        let describe = |(q, s): Pair| format!("({}, {})", pts.state_name(q), spec.state_name(s));
        return Ok(Verdict::Refuted(refutation(
            init,
            labels_match,
            removed,
            describe,
        )));
    }
    Ok(Verdict::Holds(SatWitness { relation, joint }))
}

/// Turns a satisfaction witness into a simulation of the PTS (seen as a
/// point-interval IDTMC) by `spec`: `δ(q')(s') = joint(q', s') / Δ(q)(q')`.
pub fn sat_witness_to_simulation(pts: &Pts, spec: &Idtmc, w: &SatWitness) -> Result<SimWitness> {
    let mut delta = BTreeMap::new();
    for &(q, s) in &w.relation {
        let joint = w.joint.get(&(q, s)).ok_or_else(|| {
            Error::InvalidWitness(format!(
                "no joint distribution for ({}, {})",
                pts.state_name(q),
                spec.state_name(s)
            ))
        })?;
        let mut rows = BTreeMap::new();
        for (&u, p) in pts.row(q) {
            let weights: Vec<(usize, Rational)> = joint
                .iter()
                .filter(|((v, _), _)| *v == u)
                .map(|(&(_, t), m)| (t, m / p))
                .collect();
            if weights.iter().all(|(_, m)| m.is_zero()) {
                return Err(Error::DegenerateRow {
                    pts_state: pts.state_name(u).to_owned(),
                    spec_state: spec.state_name(s).to_owned(),
                });
            }
            let d = Distribution::new(weights)
                .map_err(|e| Error::InvalidWitness(format!("row {}: {e}", pts.state_name(u))))?;
            rows.insert(u, d);
        }
        delta.insert((q, s), rows);
    }
    let sim = SimWitness {
        relation: w.relation.clone(),
        delta,
    };
    validate_sim_witness(&Idtmc::from_pts(pts), spec, &sim).map_err(Error::InvalidWitness)?;
    Ok(sim)
}
