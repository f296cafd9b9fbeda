use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{interior_point, Distribution, Idtmc, LabeledGraph, Pts};
use crate::rational::{format_rational, one};

/// A memoryless scheduler: one distribution per IDTMC state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MemorylessChoice {
    rows: Vec<Distribution>,
}

impl MemorylessChoice {
    pub fn new(rows: Vec<Distribution>) -> Self {
        MemorylessChoice { rows }
    }

    pub fn row(&self, state: usize) -> &Distribution {
        &self.rows[state]
    }

    pub fn rows(&self) -> &[Distribution] {
        &self.rows
    }

    /// Checks every row against the intervals of `idtmc`, open endpoints
    /// included.
    pub fn check(&self, idtmc: &Idtmc) -> Result<()> {
        if self.rows.len() != idtmc.num_states() {
            return Err(Error::InvalidScheduler(format!(
                "choice has {} rows for {} states",
                self.rows.len(),
                idtmc.num_states()
            )));
        }
        for (s, row) in self.rows.iter().enumerate() {
            check_row(idtmc, s, row)?;
        }
        Ok(())
    }
}

fn check_row(idtmc: &Idtmc, state: usize, row: &Distribution) -> Result<()> {
    let offending = idtmc
        .row(state)
        .keys()
        .copied()
        .chain(row.support())
        .find(|&t| !idtmc.interval(state, t).contains(&row.get(t)));
    match offending {
        None => Ok(()),
        Some(t) => Err(Error::ChoiceOutsideInterval {
            state: idtmc.state_name(state).to_owned(),
            successor: idtmc.state_name(t).to_owned(),
            value: format_rational(&row.get(t)),
        }),
    }
}

/// The PTS obtained by scheduling `idtmc` with a memoryless choice: same
/// states and labels, `Δ(s) = B(s)`.
pub fn schedule_memoryless(idtmc: &Idtmc, choice: &MemorylessChoice) -> Result<Pts> {
    choice.check(idtmc)?;
    let mut b = Pts::builder(idtmc.alphabet().clone());
    for s in 0..idtmc.num_states() {
        b.state(idtmc.state_name(s), idtmc.alphabet().name(idtmc.label(s)));
    }
    for s in 0..idtmc.num_states() {
        for (t, p) in choice.row(s).iter() {
            b.edge(s, t, p.clone());
        }
    }
    b.init(idtmc.initial());
    b.build()
}

/// A valid memoryless choice that stays strictly inside every non-degenerate
/// interval (barycentre of the closure vertices at every state).
pub fn interior_choice(idtmc: &Idtmc) -> Result<MemorylessChoice> {
    let rows = (0..idtmc.num_states())
        .map(|s| interior_point(idtmc, s))
        .collect::<Result<Vec<_>>>()?;
    Ok(MemorylessChoice { rows })
}

/// A history-dependent scheduler defined on every finite run with at most
/// `depth` states. Runs are state-index sequences starting at the initial
/// state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DepthBoundedScheduler {
    depth: usize,
    choices: BTreeMap<Vec<usize>, Distribution>,
}

impl DepthBoundedScheduler {
    pub fn new(depth: usize, choices: BTreeMap<Vec<usize>, Distribution>) -> Self {
        DepthBoundedScheduler { depth, choices }
    }

    /// Unrolls a memoryless choice over all positive-probability runs.
    pub fn from_memoryless(idtmc: &Idtmc, choice: &MemorylessChoice, depth: usize) -> Self {
        let mut choices = BTreeMap::new();
        let mut frontier = vec![vec![idtmc.initial()]];
        for _ in 0..depth {
            let mut next = Vec::new();
            for run in frontier {
                let last = *run.last().expect("runs are non-empty");
                let row = choice.row(last).clone();
                for t in row.support() {
                    let mut child = run.clone();
                    child.push(t);
                    next.push(child);
                }
                choices.insert(run, row);
            }
            frontier = next;
        }
        DepthBoundedScheduler { depth, choices }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn get(&self, run: &[usize]) -> Option<&Distribution> {
        self.choices.get(run)
    }

    pub fn choices(&self) -> &BTreeMap<Vec<usize>, Distribution> {
        &self.choices
    }

    /// Every assigned distribution must lie in the intervals of the run's last
    /// state.
    pub fn check(&self, idtmc: &Idtmc) -> Result<()> {
        for (run, d) in &self.choices {
            let last = *run
                .last()
                .ok_or_else(|| Error::InvalidScheduler("empty run".into()))?;
            if run.len() > self.depth {
                return Err(Error::InvalidScheduler(format!(
                    "run of length {} exceeds depth {}",
                    run.len(),
                    self.depth
                )));
            }
            check_row(idtmc, last, d)?;
        }
        Ok(())
    }
}

/// Materializes the scheduled PTS `S(A)` restricted to runs of at most
/// `depth + 1` states. States are runs (named `s0.s1.…`); runs without a
/// scheduled choice are made absorbing, so cone probabilities are exact for
/// words of length up to `depth + 1`.
pub fn unfold(idtmc: &Idtmc, scheduler: &DepthBoundedScheduler) -> Result<Pts> {
    scheduler.check(idtmc)?;
    let mut b = Pts::builder(idtmc.alphabet().clone());
    let name = |run: &[usize]| {
        run.iter()
            .map(|&s| idtmc.state_name(s))
            .collect::<Vec<_>>()
            .join(".")
    };
    let root = vec![idtmc.initial()];
    let label = |s: usize| idtmc.alphabet().name(idtmc.label(s)).to_owned();
    let root_id = b.state(name(&root), &label(idtmc.initial()));
    b.init(root_id);
    let mut stack = vec![(root, root_id)];
    while let Some((run, id)) = stack.pop() {
        match scheduler.get(&run) {
            Some(d) => {
                for (t, p) in d.iter() {
                    let mut child = run.clone();
                    child.push(t);
                    let cid = b.state(name(&child), &label(t));
                    b.edge(id, cid, p.clone());
                    stack.push((child, cid));
                }
            }
            None => {
                b.edge(id, id, one());
            }
        }
    }
    b.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::model::Interval;
    use crate::rational::ratio;

    fn s_nm() -> Idtmc {
        let mut b = Idtmc::builder(Alphabet::new(["a", "b", "c"]));
        let a = b.state("a", "a");
        let c = b.state("c", "c");
        let fin = b.state("b", "b");
        let open = Interval::new(ratio(0, 1), ratio(1, 1), true, false).unwrap();
        b.edge(a, c, open.clone())
            .edge(a, fin, open)
            .edge(c, fin, Interval::point(one()).unwrap())
            .edge(fin, fin, Interval::point(one()).unwrap())
            .init(a);
        b.build().unwrap()
    }

    #[test]
    fn boundary_choice_is_rejected() {
        let m = s_nm();
        let choice = MemorylessChoice::new(vec![
            Distribution::dirac(1),
            Distribution::dirac(2),
            Distribution::dirac(2),
        ]);
        let err = schedule_memoryless(&m, &choice).unwrap_err();
        assert!(
            matches!(err, Error::ChoiceOutsideInterval { ref successor, .. } if successor == "b")
        );
    }

    #[test]
    fn unfolding_has_tree_shape() {
        let m = s_nm();
        let choice = interior_choice(&m).unwrap();
        let sched = DepthBoundedScheduler::from_memoryless(&m, &choice, 2);
        let pts = unfold(&m, &sched).unwrap();
        assert!(pts.validate().is_empty());
        // a; a.c, a.b; a.c.b, a.b.b
        assert_eq!(pts.num_states(), 5);
    }
}
