use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::model::{LabeledGraph, Pts};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

/// The coarsest probabilistic bisimulation on the disjoint union of two PTSs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bisimulation {
    pub blocks: Vec<Vec<(Side, usize)>>,
    /// Whether the two initial states share a block.
    pub bisimilar: bool,
}

impl Bisimulation {
    pub fn block_of(&self, side: Side, state: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(&(side, state)))
    }
}

/// Partition refinement: states are split until related states carry the
/// same label and the same mass `Δ(s)(R)` into every block `R`.
pub fn check_prob_bisimulation(a1: &Pts, a2: &Pts) -> Result<Bisimulation> {
    a1.alphabet().ensure_same(a2.alphabet())?;
    let n1 = a1.num_states();
    let states: Vec<(Side, usize)> = (0..n1)
        .map(|s| (Side::Left, s))
        .chain((0..a2.num_states()).map(|s| (Side::Right, s)))
        .collect();
    let pts = |side: Side| if side == Side::Left { a1 } else { a2 };
    let offset = |side: Side| if side == Side::Left { 0 } else { n1 };

    let mut block: Vec<usize> = states.iter().map(|&(side, s)| pts(side).label(s)).collect();
    let mut count = usize::MAX;
    loop {
        type Signature = (usize, Vec<(usize, Rational)>);
        let mut ids: BTreeMap<Signature, usize> = BTreeMap::new();
        let sigs: Vec<Signature> = states
            .iter()
            .map(|&(side, s)| {
                let mut mass: BTreeMap<usize, Rational> = BTreeMap::new();
                for (&t, p) in pts(side).row(s) {
                    *mass
                        .entry(block[offset(side) + t])
                        .or_insert_with(Rational::zero) += p;
                }
                (block[offset(side) + s], mass.into_iter().collect())
            })
            .collect();
        for sig in &sigs {
            let next = ids.len();
            ids.entry(sig.clone()).or_insert(next);
        }
        block = sigs.iter().map(|sig| ids[sig]).collect();
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }

    let mut blocks: Vec<Vec<(Side, usize)>> = vec![Vec::new(); count];
    for (i, st) in states.iter().enumerate() {
        blocks[block[i]].push(*st);
    }
    blocks.sort();
    let bisimilar = block[a1.initial()] == block[n1 + a2.initial()];
    Ok(Bisimulation { blocks, bisimilar })
}
