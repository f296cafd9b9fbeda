//! Modal edges: edges that some scheduler can block on every visit.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{
    interior_point, sum_attainable, Idtmc, Interval, LabeledGraph, MemorylessChoice,
};
use crate::rational::Rational;

/// Least probability a valid distribution can give an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeMinimum {
    pub value: Rational,
    pub attainable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeVerdict {
    pub from: usize,
    pub to: usize,
    pub modal: bool,
    pub minimum: EdgeMinimum,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModalReport {
    pub edges: Vec<EdgeVerdict>,
}

impl ModalReport {
    pub fn is_modal(&self) -> bool {
        self.edges.iter().any(|e| e.modal)
    }

    pub fn modal_edges(&self) -> impl Iterator<Item = &EdgeVerdict> {
        self.edges.iter().filter(|e| e.modal)
    }

    /// Modal edges as `(from, to)` state names.
    pub fn modal_names(&self, spec: &Idtmc) -> Vec<(String, String)> {
        self.modal_edges()
            .map(|e| {
                (
                    spec.state_name(e.from).to_owned(),
                    spec.state_name(e.to).to_owned(),
                )
            })
            .collect()
    }
}

fn require_nonempty(spec: &Idtmc, s: usize) -> Result<()> {
    if spec.polytope_nonempty(s) {
        Ok(())
    } else {
        Err(Error::EmptyPolytope {
            state: spec.state_name(s).to_owned(),
        })
    }
}

/// `max(lo, 1 − Σ_{t ≠ to} hi)`, and whether some valid distribution attains
/// it once open bounds are taken into account.
pub fn min_edge_probability(spec: &Idtmc, from: usize, to: usize) -> Result<EdgeMinimum> {
    require_nonempty(spec, from)?;
    let iv = spec.interval(from, to);
    let others: Vec<&Interval> = spec
        .row(from)
        .iter()
        .filter(|(&t, _)| t != to)
        .map(|(_, iv)| iv)
        .collect();
    let others_hi: Rational = others.iter().map(|iv| iv.hi().clone()).sum();
    let slack = Rational::one() - others_hi;
    let value = if *iv.lo() > slack {
        iv.lo().clone()
    } else {
        slack
    };
    let value = value.max(Rational::zero());
    let attainable =
        iv.contains(&value) && sum_attainable(others.iter().copied(), &(Rational::one() - &value));
    Ok(EdgeMinimum { value, attainable })
}

/// Classifies every present edge. An edge is modal iff its interval contains
/// zero and the remaining edges can carry all the mass: their maxima sum to
/// more than one, or to exactly one with every upper bound closed.
pub fn modal_edges(spec: &Idtmc) -> Result<ModalReport> {
    let mut edges = Vec::new();
    for s in 0..spec.num_states() {
        require_nonempty(spec, s)?;
        for (&t, iv) in spec.row(s) {
            let modal = if !iv.contains_zero() {
                false
            } else {
                let others = spec.row(s).iter().filter(|(&u, _)| u != t);
                let m: Rational = others.clone().map(|(_, o)| o.hi().clone()).sum();
                if m > Rational::one() {
                    true
                } else if m < Rational::one() {
                    false
                } else {
                    others.clone().all(|(_, o)| !o.hi_open())
                }
            };
            edges.push(EdgeVerdict {
                from: s,
                to: t,
                modal,
                minimum: min_edge_probability(spec, s, t)?,
            });
        }
    }
    Ok(ModalReport { edges })
}

/// A memoryless choice giving probability zero to the edge `from → to`, if
/// one exists. Other states get an interior point of their polytope.
pub fn blocking_choice(spec: &Idtmc, from: usize, to: usize) -> Result<Option<MemorylessChoice>> {
    let min = min_edge_probability(spec, from, to)?;
    if !(min.value.is_zero() && min.attainable) {
        return Ok(None);
    }
    let mut blocked = spec.clone();
    let mut row = spec.row(from).clone();
    row.remove(&to);
    blocked.replace_row(from, row);
    let rows = (0..spec.num_states())
        .map(|s| interior_point(&blocked, s))
        .collect::<Result<Vec<_>>>()?;
    let choice = MemorylessChoice::new(rows);
    choice.check(spec)?;
    Ok(Some(choice))
}
