use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Dpa;
use crate::error::{Error, Result};
use crate::measure::ProductChain;
use crate::model::Pts;
use crate::rational::to_f64;

/// Frequency estimate with a 95% Wilson score interval.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub samples: usize,
    pub hits: usize,
    pub estimate: f64,
    pub half_width: f64,
    pub low: f64,
    pub high: f64,
}

impl MonteCarloEstimate {
    fn new(samples: usize, hits: usize) -> Self {
        const Z: f64 = 1.959_963_984_540_054;
        let n = samples as f64;
        let p = hits as f64 / n;
        let z2 = Z * Z;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = Z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        MonteCarloEstimate {
            samples,
            hits,
            estimate: p,
            half_width: half,
            low: if hits == 0 {
                0.0
            } else {
                (center - half).max(0.0)
            },
            high: if hits == samples {
                1.0
            } else {
                (center + half).min(1.0)
            },
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.low <= p && p <= self.high
    }
}

/// Samples runs of `pts` until they enter a bottom component of the product
/// with `dpa`, counting those that land in an accepting one.
pub fn monte_carlo_probability(
    pts: &Pts,
    dpa: &Dpa,
    samples: usize,
    horizon: usize,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    assert!(samples > 0, "at least one sample");
    let chain = ProductChain::build(pts, dpa)?;
    let bottoms = chain.bottom_components();
    let cumulative: Vec<Vec<(usize, f64)>> = chain
        .rows
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .map(|(t, p)| {
                    acc += to_f64(p);
                    (*t, acc)
                })
                .collect()
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0;
    for _ in 0..samples {
        let mut s = 0;
        let mut steps = 0;
        let accepted = loop {
            if let Some(acc) = bottoms[s] {
                break acc;
            }
            if steps == horizon {
                return Err(Error::HorizonTooShort { horizon });
            }
            let row = &cumulative[s];
            let x: f64 = rng.random::<f64>() * row.last().expect("non-empty row").1;
            s = row
                .iter()
                .find(|(_, c)| x < *c)
                .unwrap_or_else(|| row.last().expect("non-empty row"))
                .0;
            steps += 1;
        };
        if accepted {
            hits += 1;
        }
    }
    Ok(MonteCarloEstimate::new(samples, hits))
}
