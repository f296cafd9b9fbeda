use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::alphabet::Letter;
use crate::error::{Error, Result};
use crate::measure::cones_up_to;
use crate::model::{DepthBoundedScheduler, Distribution, Idtmc, LabeledGraph, Pts};
use crate::rational::{one, Rational};
use crate::relations::SimWitness;

fn run_name(g: &dyn LabeledGraph, run: &[usize]) -> String {
    run.iter()
        .map(|&s| g.state_name(s))
        .collect::<Vec<_>>()
        .join(".")
}

/// How the runs of a similarity class are weighted when mixing their
/// choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassWeight {
    /// `μ(ρ1) ∝ P(ρ1)` over every `s1`-run related to `ρ2` step by step.
    RunProbability,
    /// `μ(ρ1) ∝` the mass flowing from `ρ1` into `ρ2` through the witness,
    /// `P(ρ1)` times the product of the `δ` entries along the two runs. The
    /// class is the set of runs with positive flow.
    #[default]
    Coupling,
}

/// Builds a scheduler for `s2` whose scheduled system simulates `s1` under
/// `a1`, on every run of at most `k` states, weighting classes by
/// [`ClassWeight::Coupling`].
///
/// For a run `ρ2` with class `sim(ρ2)` and weights `μ`,
/// `A2(ρ2)(s2') = Σ μ(ρ1) Σ A1(ρ1)(s1')·δ(s1')(s2')`, where `δ` is the
/// witness row of the pair formed by the last states of `ρ1` and `ρ2`.
pub fn transfer_scheduler(
    s1: &Idtmc,
    s2: &Idtmc,
    w: &SimWitness,
    a1: &DepthBoundedScheduler,
    k: usize,
) -> Result<DepthBoundedScheduler> {
    transfer_scheduler_weighted(s1, s2, w, a1, k, ClassWeight::Coupling)
}

/// [`transfer_scheduler`] with an explicit class weighting. Under
/// [`ClassWeight::RunProbability`] a run whose class has probability zero is
/// reported as [`Error::UnreachableSimClass`], and cone probabilities are
/// only preserved when each `s1`-run feeds a single `s2`-run.
pub fn transfer_scheduler_weighted(
    s1: &Idtmc,
    s2: &Idtmc,
    w: &SimWitness,
    a1: &DepthBoundedScheduler,
    k: usize,
    weight: ClassWeight,
) -> Result<DepthBoundedScheduler> {
    s1.alphabet().ensure_same(s2.alphabet())?;
    let root = (s1.initial(), s2.initial());
    if !w.relation.contains(&root) {
        return Err(Error::InvalidWitness("initial pair is not related".into()));
    }
    let mut choices = BTreeMap::new();
    type Class = Vec<(Vec<usize>, Rational)>;
    let mut level: Vec<(Vec<usize>, Class)> = vec![(vec![root.1], vec![(vec![root.0], one())])];
    for len in 1..=k {
        let mut next = Vec::new();
        for (rho2, class) in level {
            let total: Rational = class.iter().map(|(_, p)| p).sum();
            if !total.is_positive() {
                return Err(Error::UnreachableSimClass {
                    run: run_name(s2, &rho2),
                });
            }
            let last2 = *rho2.last().expect("runs are non-empty");
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (rho1, p) in &class {
                let last1 = *rho1.last().expect("runs are non-empty");
                let choice = a1.get(rho1).ok_or_else(|| {
                    Error::InvalidScheduler(format!("undefined on run {}", run_name(s1, rho1)))
                })?;
                let rows = w.delta.get(&(last1, last2)).ok_or_else(|| {
                    Error::InvalidWitness(format!(
                        "no delta for ({}, {})",
                        s1.state_name(last1),
                        s2.state_name(last2)
                    ))
                })?;
                let mu = p / &total;
                for (u, pu) in choice.iter() {
                    let d = rows.get(&u).ok_or_else(|| {
                        Error::InvalidWitness(format!("no row for {}", s1.state_name(u)))
                    })?;
                    for (t, pt) in d.iter() {
                        *acc.entry(t).or_insert_with(Rational::zero) += &mu * pu * pt;
                    }
                }
            }
            let a2 = Distribution::new(acc)?;
            if len < k {
                for t in a2.support() {
                    let mut child2 = rho2.clone();
                    child2.push(t);
                    let mut child_class = Vec::new();
                    for (rho1, p) in &class {
                        let last1 = *rho1.last().expect("runs are non-empty");
                        let choice = a1.get(rho1).expect("checked above");
                        let rows = &w.delta[&(last1, last2)];
                        for (u, pu) in choice.iter() {
                            let mass = match weight {
                                ClassWeight::RunProbability => {
                                    w.relation.contains(&(u, t)).then(|| p * pu)
                                }
                                ClassWeight::Coupling => {
                                    let flow = p * pu * rows[&u].get(t);
                                    flow.is_positive().then_some(flow)
                                }
                            };
                            if let Some(mass) = mass {
                                let mut child1 = rho1.clone();
                                child1.push(u);
                                child_class.push((child1, mass));
                            }
                        }
                    }
                    next.push((child2, child_class));
                }
            }
            choices.insert(rho2, a2);
        }
        level = next;
    }
    let a2 = DepthBoundedScheduler::new(k, choices);
    a2.check(s2)?;
    Ok(a2)
}

/// Comparison of the cone probabilities of two PTSs on all words of length
/// at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeReport {
    pub max_discrepancy: Rational,
    /// A word reaching the maximal discrepancy, when it is non-zero.
    pub worst_word: Option<Vec<Letter>>,
    /// Words with a positive cone in the first system only.
    pub only_first: Vec<Vec<Letter>>,
    pub only_second: Vec<Vec<Letter>>,
    pub words_compared: usize,
}

impl ConeReport {
    pub fn equal(&self) -> bool {
        self.max_discrepancy.is_zero() && self.only_first.is_empty() && self.only_second.is_empty()
    }
}

pub fn verify_cone_equality(a1: &Pts, a2: &Pts, k: usize) -> Result<ConeReport> {
    a1.alphabet().ensure_same(a2.alphabet())?;
    let c1 = cones_up_to(a1, k);
    let c2 = cones_up_to(a2, k);
    let words: BTreeSet<&Vec<Letter>> = c1.keys().chain(c2.keys()).collect();
    let zero = Rational::zero();
    let mut report = ConeReport {
        max_discrepancy: Rational::zero(),
        worst_word: None,
        only_first: Vec::new(),
        only_second: Vec::new(),
        words_compared: words.len(),
    };
    for w in words {
        let p1 = c1.get(w).unwrap_or(&zero);
        let p2 = c2.get(w).unwrap_or(&zero);
        match (p1.is_positive(), p2.is_positive()) {
            (true, false) => report.only_first.push(w.clone()),
            (false, true) => report.only_second.push(w.clone()),
            _ => {}
        }
        let diff = (p1 - p2).abs();
        if diff > report.max_discrepancy {
            report.max_discrepancy = diff;
            report.worst_word = Some(w.clone());
        }
    }
    Ok(report)
}
