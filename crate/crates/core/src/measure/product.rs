use std::collections::HashMap;

use num_traits::Zero;

use crate::automata::{Color, Dpa};
use crate::error::Result;
use crate::graph::tarjan_scc;
use crate::linalg::absorption_values;
use crate::model::{LabeledGraph, Pts};
use crate::rational::{one, Rational};

/// Reachable part of `pts × dpa`. The automaton reads the label of every
/// state entered, the initial one included.
#[derive(Debug, Clone)]
pub struct ProductChain {
    pub states: Vec<(usize, usize)>,
    pub rows: Vec<Vec<(usize, Rational)>>,
    pub colors: Vec<Color>,
}

impl ProductChain {
    pub fn build(pts: &Pts, dpa: &Dpa) -> Result<Self> {
        pts.alphabet().ensure_same(dpa.alphabet())?;
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut chain = ProductChain {
            states: Vec::new(),
            rows: Vec::new(),
            colors: Vec::new(),
        };
        let init = (
            pts.initial(),
            dpa.next(dpa.initial(), pts.label(pts.initial())),
        );
        ids.insert(init, 0);
        chain.states.push(init);
        let mut cursor = 0;
        while cursor < chain.states.len() {
            let (s, d) = chain.states[cursor];
            let mut row = Vec::new();
            for (&t, p) in pts.row(s) {
                let key = (t, dpa.next(d, pts.label(t)));
                let id = *ids.entry(key).or_insert_with(|| {
                    chain.states.push(key);
                    chain.states.len() - 1
                });
                row.push((id, p.clone()));
            }
            chain.colors.push(dpa.color(d));
            chain.rows.push(row);
            cursor += 1;
        }
        Ok(chain)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|(t, _)| *t).collect())
            .collect()
    }

    /// `Some(accepting)` for states inside a bottom SCC; a BSCC accepts iff
    /// its least color is even.
    pub fn bottom_components(&self) -> Vec<Option<bool>> {
        let g = self.graph();
        let mut comp_of = vec![usize::MAX; g.len()];
        let sccs = tarjan_scc(&g);
        for (k, comp) in sccs.iter().enumerate() {
            for &s in comp {
                comp_of[s] = k;
            }
        }
        let mut out = vec![None; g.len()];
        for (k, comp) in sccs.iter().enumerate() {
            let bottom = comp.iter().all(|&s| g[s].iter().all(|&t| comp_of[t] == k));
            if bottom {
                let min = comp
                    .iter()
                    .map(|&s| self.colors[s])
                    .min()
                    .expect("non-empty");
                for &s in comp {
                    out[s] = Some(min % 2 == 0);
                }
            }
        }
        out
    }

    /// Probability, per product state, of ending in an accepting BSCC.
    pub fn acceptance_probabilities(&self) -> Vec<Rational> {
        let g = self.graph();
        let bottoms = self.bottom_components();
        let good: Vec<bool> = bottoms.iter().map(|b| *b == Some(true)).collect();
        let bad: Vec<bool> = bottoms.iter().map(|b| *b == Some(false)).collect();
        let reach_good = crate::graph::can_reach(&g, &good);
        let reach_bad = crate::graph::can_reach(&g, &bad);
        let known: Vec<Option<Rational>> = (0..g.len())
            .map(|s| {
                if !reach_good[s] {
                    Some(Rational::zero())
                } else if !reach_bad[s] {
                    Some(one())
                } else {
                    None
                }
            })
            .collect();
        absorption_values(&self.rows, &known)
    }
}
