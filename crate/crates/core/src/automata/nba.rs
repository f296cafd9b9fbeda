use std::collections::BTreeSet;

use crate::alphabet::{Alphabet, Letter};
use crate::automata::Lasso;
use crate::graph::{can_reach, is_nontrivial, reachable, tarjan_scc};

/// A nondeterministic Büchi automaton with state-based acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nba {
    alphabet: Alphabet,
    initial: Vec<usize>,
    // trans[state][letter] = sorted successors
    trans: Vec<Vec<Vec<usize>>>,
    accepting: Vec<bool>,
}

impl Nba {
    /// An automaton with `states` states and no transitions.
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        Nba {
            alphabet,
            initial: Vec::new(),
            trans: vec![vec![Vec::new(); k]; states],
            accepting: vec![false; states],
        }
    }

    pub fn add_state(&mut self, accepting: bool) -> usize {
        self.trans.push(vec![Vec::new(); self.alphabet.len()]);
        self.accepting.push(accepting);
        self.trans.len() - 1
    }

    pub fn add_initial(&mut self, state: usize) {
        if let Err(i) = self.initial.binary_search(&state) {
            self.initial.insert(i, state);
        }
    }

    pub fn add_transition(&mut self, from: usize, letter: Letter, to: usize) {
        let succ = &mut self.trans[from][letter];
        if let Err(i) = succ.binary_search(&to) {
            succ.insert(i, to);
        }
    }

    pub fn set_accepting(&mut self, state: usize, accepting: bool) {
        self.accepting[state] = accepting;
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.trans.len()
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn successors(&self, state: usize, letter: Letter) -> &[usize] {
        &self.trans[state][letter]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn all_accepting(&self) -> bool {
        self.accepting.iter().all(|&a| a)
    }

    pub fn num_transitions(&self) -> usize {
        self.trans.iter().flatten().map(Vec::len).sum()
    }

    /// Letter-agnostic successor lists.
    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.trans
            .iter()
            .map(|row| {
                row.iter()
                    .flatten()
                    .copied()
                    .collect::<BTreeSet<_>>()
                    .into_iter()
                    .collect()
            })
            .collect()
    }

    /// States lying on a reachable cycle through an accepting state, plus every
    /// state that can reach one ("useful" states).
    fn useful(&self) -> Vec<bool> {
        let g = self.graph();
        let reach = reachable(&g, self.initial.iter().copied());
        let mut good = vec![false; g.len()];
        for comp in tarjan_scc(&g) {
            if reach[comp[0]] && is_nontrivial(&g, &comp) && comp.iter().any(|&s| self.accepting[s])
            {
                for &s in &comp {
                    good[s] = true;
                }
            }
        }
        let co = can_reach(&g, &good);
        (0..g.len()).map(|s| reach[s] && co[s]).collect()
    }

    pub fn is_empty(&self) -> bool {
        !self.useful().iter().any(|&u| u)
    }

    /// Removes states that are unreachable or cannot continue into an
    /// accepting cycle. The language is unchanged.
    pub fn trim(&self) -> Nba {
        let keep = self.useful();
        let mut map = vec![usize::MAX; self.num_states()];
        let mut out = Nba::new(self.alphabet.clone(), 0);
        for s in 0..self.num_states() {
            if keep[s] {
                map[s] = out.add_state(self.accepting[s]);
            }
        }
        for s in 0..self.num_states() {
            if !keep[s] {
                continue;
            }
            for l in self.alphabet.letters() {
                for &t in &self.trans[s][l] {
                    if keep[t] {
                        out.add_transition(map[s], l, map[t]);
                    }
                }
            }
        }
        for &i in &self.initial {
            if keep[i] {
                out.add_initial(map[i]);
            }
        }
        out
    }

    /// Exact membership of `u v^ω`: search for a reachable cycle through an
    /// accepting state in the product with the lasso's positions.
    pub fn accepts(&self, word: &Lasso) -> bool {
        let positions = word.period_end();
        let n = self.num_states();
        let id = |q: usize, p: usize| q * positions + p;
        let mut succ = vec![Vec::new(); n * positions];
        for q in 0..n {
            for p in 0..positions {
                let l = word.letter_at(p);
                let np = word.next_pos(p);
                succ[id(q, p)] = self.trans[q][l].iter().map(|&t| id(t, np)).collect();
            }
        }
        let reach = reachable(&succ, self.initial.iter().map(|&q| id(q, 0)));
        tarjan_scc(&succ).into_iter().any(|comp| {
            reach[comp[0]]
                && is_nontrivial(&succ, &comp)
                && comp.iter().any(|&v| self.accepting[v / positions])
        })
    }
}
