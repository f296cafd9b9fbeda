//! Safra–Piterman determinization with compact, age-ordered node names.

use std::collections::HashMap;

use crate::alphabet::Letter;
use crate::automata::dpa::Color;
use crate::automata::{Dpa, Nba};
use crate::error::{Error, Result};

pub const DEFAULT_STATE_BUDGET: usize = 1_000_000;

/// Fixed-width set of NBA states.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            (0..64)
                .filter(move |b| w >> b & 1 == 1)
                .map(move |b| k * 64 + b)
        })
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn or_assign(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }

    fn minus_assign(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a &= !b;
        }
    }
}

/// Node `i` has name `i + 1`; names grow with age, so children of a node are
/// ordered oldest first by index. `parent[0]` is unused (root).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Tree {
    parent: Vec<usize>,
    label: Vec<Bits>,
}

struct Ctx<'a> {
    nba: &'a Nba,
    accepting: Bits,
    n: usize,
}

impl Ctx<'_> {
    fn post(&self, set: &Bits, letter: Letter) -> Bits {
        let mut out = Bits::empty(self.n);
        for q in set.iter() {
            for &t in self.nba.successors(q, letter) {
                out.insert(t);
            }
        }
        out
    }

    fn step(&self, tree: &Tree, letter: Letter) -> (Tree, Color) {
        let old = tree.label.len();
        let mut parent = tree.parent.clone();
        let mut label: Vec<Bits> = tree.label.iter().map(|s| self.post(s, letter)).collect();
        // Spawn a youngest child holding the accepting part of each label.
        for v in 0..old {
            let acc = label[v].and(&self.accepting);
            if !acc.is_empty() {
                parent.push(v);
                label.push(acc);
            }
        }
        let total = label.len();
        let mut children = vec![Vec::new(); total];
        for v in 1..total {
            children[parent[v]].push(v);
        }
        // Horizontal merge: a state stays only in the oldest branch.
        fn merge(v: usize, forbidden: &Bits, label: &mut [Bits], children: &[Vec<usize>]) {
            label[v].minus_assign(forbidden);
            let mut acc = forbidden.clone();
            for &c in &children[v] {
                merge(c, &acc, label, children);
                let lc = label[c].clone();
                acc.or_assign(&lc);
            }
        }
        let mut alive = vec![true; total];
        if total > 0 {
            merge(0, &Bits::empty(self.n), &mut label, &children);
        }
        // Remove empty nodes (with their subtrees, which are empty too).
        for v in 0..total {
            if label[v].is_empty() || (v > 0 && !alive[parent[v]]) {
                alive[v] = false;
            }
        }
        // Vertical merge.
        let mut green = vec![false; total];
        for v in 0..total {
            if !alive[v] {
                continue;
            }
            let kids: Vec<usize> = children[v].iter().copied().filter(|&c| alive[c]).collect();
            if kids.is_empty() {
                continue;
            }
            let mut union = Bits::empty(self.n);
            for &c in &kids {
                union.or_assign(&label[c]);
            }
            if union == label[v] {
                green[v] = true;
                let mut stack = kids;
                while let Some(c) = stack.pop() {
                    alive[c] = false;
                    stack.extend(children[c].iter().copied());
                }
            }
        }
        let mut color = 2 * self.n as Color + 1;
        for v in 0..old {
            if green[v] {
                color = 2 * (v as Color + 1);
                break;
            }
            if !alive[v] {
                color = 2 * (v as Color + 1) - 1;
                break;
            }
        }
        // Compact names preserving age order.
        let mut rename = vec![usize::MAX; total];
        let mut next = Tree {
            parent: Vec::new(),
            label: Vec::new(),
        };
        for v in 0..total {
            if alive[v] {
                rename[v] = next.label.len();
                next.parent.push(if v == 0 { 0 } else { rename[parent[v]] });
                next.label.push(label[v].clone());
            }
        }
        (next, color)
    }
}

/// Language-equivalent DPA for `nba`, minimized. Fails with
/// `StateBudgetExceeded` once more than `budget` automaton states are built.
pub fn nba_determinize(nba: &Nba, budget: usize) -> Result<Dpa> {
    let nba = nba.trim();
    let n = nba.num_states();
    let alphabet = nba.alphabet().clone();
    if nba.initial().is_empty() {
        return Ok(Dpa::empty(alphabet));
    }
    let mut accepting = Bits::empty(n);
    let mut init_set = Bits::empty(n);
    for q in 0..n {
        if nba.is_accepting(q) {
            accepting.insert(q);
        }
    }
    for &q in nba.initial() {
        init_set.insert(q);
    }
    let ctx = Ctx {
        nba: &nba,
        accepting,
        n,
    };
    let top = 2 * n as Color + 1;
    let init = (
        Tree {
            parent: vec![0],
            label: vec![init_set],
        },
        top,
    );
    let mut ids: HashMap<(Tree, Color), usize> = HashMap::new();
    let mut keys: Vec<(Tree, Color)> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    ids.insert(init.clone(), 0);
    keys.push(init);
    let mut cursor = 0;
    while cursor < keys.len() {
        let tree = keys[cursor].0.clone();
        let mut row = Vec::with_capacity(alphabet.len());
        for l in alphabet.letters() {
            let key = ctx.step(&tree, l);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    if keys.len() >= budget {
                        return Err(Error::StateBudgetExceeded { budget });
                    }
                    let id = keys.len();
                    ids.insert(key.clone(), id);
                    keys.push(key);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
        cursor += 1;
    }
    let colors = keys.iter().map(|k| k.1).collect();
    Ok(Dpa::new(alphabet, 0, delta, colors)?.minimize())
}
