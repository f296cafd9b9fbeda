use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// A finite-support probability distribution over state indices. Every stored
/// value is strictly positive and the values sum to exactly one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Distribution(BTreeMap<usize, Rational>);

impl Distribution {
    /// Builds a distribution, dropping zero weights.
    pub fn new(weights: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, v) in weights {
            if v < Rational::zero() {
                return Err(Error::InvalidDistribution {
                    context: format!("successor #{k}"),
                    reason: format!("negative weight {}", format_rational(&v)),
                });
            }
            if !v.is_zero() {
                *map.entry(k).or_insert_with(Rational::zero) += v;
            }
        }
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidDistribution {
                context: "distribution".into(),
                reason: format!("weights sum to {}", format_rational(&total)),
            });
        }
        Ok(Distribution(map))
    }

    pub fn dirac(state: usize) -> Self {
        Distribution(BTreeMap::from([(state, Rational::one())]))
    }

    pub fn get(&self, state: usize) -> Rational {
        self.0.get(&state).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_map(&self) -> &BTreeMap<usize, Rational> {
        &self.0
    }
}
