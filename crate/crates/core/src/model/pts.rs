use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter};
use crate::error::{Error, Result};
use crate::model::{LabeledGraph, Violation};
use crate::rational::{format_rational, Rational};

/// A finite probabilistic transition system: a state-labeled DTMC.
///
/// Rows are stored as given; [`Pts::validate`] reports rows that are not
/// distributions. Analyses call [`Pts::require_valid`] first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pts {
    alphabet: Alphabet,
    names: Vec<String>,
    init: usize,
    labels: Vec<Letter>,
    rows: Vec<BTreeMap<usize, Rational>>,
}

impl Pts {
    pub fn builder(alphabet: Alphabet) -> PtsBuilder {
        PtsBuilder {
            alphabet,
            names: Vec::new(),
            index: HashMap::new(),
            labels: Vec::new(),
            rows: Vec::new(),
            init: None,
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

    pub fn row(&self, state: usize) -> &BTreeMap<usize, Rational> {
        &self.rows[state]
    }

    pub fn prob(&self, from: usize, to: usize) -> Rational {
        self.rows[from]
            .get(&to)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.init >= self.names.len() {
            out.push(Violation::InitMissing);
        }
        for (s, row) in self.rows.iter().enumerate() {
            let name = &self.names[s];
            if self.labels[s] >= self.alphabet.len() {
                out.push(Violation::LabelOutsideAlphabet {
                    state: name.clone(),
                });
            }
            for (t, p) in row {
                if *p <= Rational::zero() || *p > crate::rational::one() {
                    out.push(Violation::ProbabilityOutOfRange {
                        state: name.clone(),
                        successor: self.names[*t].clone(),
                        value: format_rational(p),
                    });
                }
            }
            let sum: Rational = row.values().sum();
            if sum != crate::rational::one() {
                out.push(Violation::DistributionSum {
                    state: name.clone(),
                    sum: format_rational(&sum),
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
}

impl LabeledGraph for Pts {
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
        self.rows[state]
            .iter()
            .filter(|(_, p)| **p > Rational::zero())
            .map(|(&t, _)| t)
            .collect()
    }
}

#[derive(Debug)]
pub struct PtsBuilder {
    alphabet: Alphabet,
    names: Vec<String>,
    index: HashMap<String, usize>,
    labels: Vec<Letter>,
    rows: Vec<BTreeMap<usize, Rational>>,
    init: Option<usize>,
}

impl PtsBuilder {
    /// Adds a state; returns its index. Panics on an unknown label, which is a
    /// programming error for builder users (the text parser checks first).
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

    pub fn edge(&mut self, from: usize, to: usize, p: Rational) -> &mut Self {
        self.rows[from].insert(to, p);
        self
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn build(self) -> Result<Pts> {
        let init = self
            .init
            .ok_or(Error::InvalidModel(vec![Violation::InitMissing]))?;
        Ok(Pts {
            alphabet: self.alphabet,
            names: self.names,
            init,
            labels: self.labels,
            rows: self.rows,
        })
    }
}
