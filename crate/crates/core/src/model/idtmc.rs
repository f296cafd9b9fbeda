use std::collections::{BTreeMap, HashMap};

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::model::interval::sum_attainable;
use crate::model::{Interval, LabeledGraph, Pts, Violation};
use crate::rational::one;

/// An interval-valued DTMC. Absent edges carry the point interval `[0, 0]`;
/// explicit `[0, 0]` edges are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idtmc {
    alphabet: Alphabet,
    names: Vec<String>,
    init: usize,
    labels: Vec<Letter>,
    rows: Vec<BTreeMap<usize, Interval>>,
}

impl Idtmc {
    pub fn builder(alphabet: Alphabet) -> IdtmcBuilder {
        IdtmcBuilder {
            alphabet,
            names: Vec::new(),
            index: HashMap::new(),
            labels: Vec::new(),
            rows: Vec::new(),
            init: None,
        }
    }

    /// Views a PTS as an IDTMC whose intervals are points.
    pub fn from_pts(pts: &Pts) -> Idtmc {
        let rows = (0..pts.num_states())
            .map(|s| {
                pts.row(s)
                    .iter()
                    .filter_map(|(&t, p)| Interval::point(p.clone()).ok().map(|iv| (t, iv)))
                    .filter(|(_, iv)| iv.allows_positive())
                    .collect()
            })
            .collect();
        Idtmc {
            alphabet: pts.alphabet().clone(),
            names: pts.names().to_vec(),
            init: pts.initial(),
            labels: (0..pts.num_states()).map(|s| pts.label(s)).collect(),
            rows,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Present edges of `state` (those whose interval admits a positive value).
    pub fn row(&self, state: usize) -> &BTreeMap<usize, Interval> {
        &self.rows[state]
    }

    pub fn interval(&self, from: usize, to: usize) -> Interval {
        self.rows[from]
            .get(&to)
            .cloned()
            .unwrap_or_else(Interval::zero)
    }

    /// Same model with every open endpoint closed.
    pub fn closure(&self) -> Idtmc {
        let mut out = self.clone();
        for row in &mut out.rows {
            for iv in row.values_mut() {
                *iv = iv.closure();
            }
        }
        out
    }

    pub fn has_open_bounds(&self) -> bool {
        self.rows
            .iter()
            .flat_map(|r| r.values())
            .any(|iv| !iv.is_closed())
    }

    /// Exact emptiness test of the distribution polytope of `state`, honouring
    /// open endpoints.
    pub fn polytope_nonempty(&self, state: usize) -> bool {
        sum_attainable(self.rows[state].values(), &one())
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.init >= self.names.len() {
            out.push(Violation::InitMissing);
        }
        for s in 0..self.names.len() {
            if self.labels[s] >= self.alphabet.len() {
                out.push(Violation::LabelOutsideAlphabet {
                    state: self.names[s].clone(),
                });
            }
            if !self.polytope_nonempty(s) {
                out.push(Violation::EmptyPolytope {
                    state: self.names[s].clone(),
                });
            }
        }
        out
    }

    pub fn require_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModel(v))
        }
    }

    pub(crate) fn replace_row(&mut self, state: usize, row: BTreeMap<usize, Interval>) {
        self.rows[state] = row
            .into_iter()
            .filter(|(_, iv)| iv.allows_positive())
            .collect();
    }
}

impl LabeledGraph for Idtmc {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn num_states(&self) -> usize {
        self.names.len()
    }
    fn initial(&self) -> usize {
        self.init
    }
    fn label(&self, state: usize) -> Letter {
        self.labels[state]
    }
    fn state_name(&self, state: usize) -> &str {
        &self.names[state]
    }
    fn successors(&self, state: usize) -> Vec<usize> {
        self.rows[state].keys().copied().collect()
    }
}

#[derive(Debug)]
pub struct IdtmcBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, usize>,
    labels: Vec<Letter>,
    rows: Vec<BTreeMap<usize, Interval>>,
    init: Option<usize>,
}

impl IdtmcBuilder {
    /// Adds a state; panics on a label outside the alphabet.
    pub fn state(&mut self, name: impl Into<String>, label: &str) -> usize {
        let name = name.into();
        let letter = self
            .alphabet
            .index(label)
            .unwrap_or_else(|| panic!("label `{label}` not in alphabet"));
        let id = self.names.len();
        self.index.insert(name.clone(), id);
        self.names.push(name);
        self.labels.push(letter);
        self.rows.push(BTreeMap::new());
        id
    }

    pub fn init(&mut self, state: usize) -> &mut Self {
        self.init = Some(state);
        self
    }

    pub fn edge(&mut self, from: usize, to: usize, interval: Interval) -> &mut Self {
        if interval.allows_positive() {
            self.rows[from].insert(to, interval);
        } else {
            self.rows[from].remove(&to);
        }
        self
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn build(self) -> Result<Idtmc> {
        let init = self
            .init
            .ok_or(Error::InvalidModel(vec![Violation::InitMissing]))?;
        Ok(Idtmc {
            alphabet: self.alphabet,
            names: self.names,
            init,
            labels: self.labels,
            rows: self.rows,
        })
    }
}
