use std::collections::{BTreeMap, BTreeSet};

use crate::disclosure::VertexMdp;
use crate::graph::tarjan_scc;

/// A maximal end component: its states and, for each of them, the indices of
/// the actions that stay inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mec {
    pub states: Vec<usize>,
    pub actions: BTreeMap<usize, Vec<usize>>,
}

pub fn mec_decompose(m: &VertexMdp) -> Vec<Mec> {
    mecs_within(m, &vec![true; m.num_states()])
}

/// Maximal end components of the sub-MDP on `allowed`: actions that may leave
/// the current candidate component are dropped, and states left without
/// actions are removed, until nothing changes.
pub(crate) fn mecs_within(m: &VertexMdp, allowed: &[bool]) -> Vec<Mec> {
    let n = m.num_states();
    let mut alive = allowed.to_vec();
    let mut kept: Vec<Vec<usize>> = (0..n)
        .map(|x| {
            if !allowed[x] {
                return Vec::new();
            }
            (0..m.actions(x).len())
                .filter(|&a| m.actions(x)[a].support().all(|t| allowed[t]))
                .collect()
        })
        .collect();
    for x in 0..n {
        alive[x] &= !kept[x].is_empty();
    }
    loop {
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                if !alive[x] {
                    return Vec::new();
                }
                kept[x]
                    .iter()
                    .flat_map(|&a| m.actions(x)[a].support())
                    .collect()
            })
            .collect();
        let mut comp = vec![usize::MAX; n];
        let sccs: Vec<Vec<usize>> = tarjan_scc(&succ)
            .into_iter()
            .filter(|c| alive[c[0]])
            .collect();
        for (i, c) in sccs.iter().enumerate() {
            for &x in c {
                comp[x] = i;
            }
        }
        let mut changed = false;
        for x in 0..n {
            if !alive[x] {
                continue;
            }
            let before = kept[x].len();
            kept[x].retain(|&a| {
                m.actions(x)[a]
                    .support()
                    .all(|t| alive[t] && comp[t] == comp[x])
            });
            changed |= kept[x].len() != before;
            if kept[x].is_empty() {
                alive[x] = false;
                changed = true;
            }
        }
        if !changed {
            return sccs
                .into_iter()
                .map(|states| Mec {
                    actions: states.iter().map(|&x| (x, kept[x].clone())).collect(),
                    states,
                })
                .collect();
        }
    }
}

/// End components whose least color is even: for every even color `c`, the
/// maximal end components of the sub-MDP with colors `≥ c` that contain a
/// state of color `c`. Components are listed by increasing `c`.
pub fn winning_mecs(m: &VertexMdp) -> Vec<Mec> {
    let colors: BTreeSet<u32> = (0..m.num_states()).map(|x| m.color(x)).collect();
    let mut out = Vec::new();
    for &c in colors.iter().filter(|&&c| c % 2 == 0) {
        let allowed: Vec<bool> = (0..m.num_states()).map(|x| m.color(x) >= c).collect();
        out.extend(
            mecs_within(m, &allowed)
                .into_iter()
                .filter(|mec| mec.states.iter().any(|&x| m.color(x) == c)),
        );
    }
    out
}

/// States from which some strategy satisfies the parity condition with
/// probability one by staying in a winning end component.
pub fn winning_states(m: &VertexMdp) -> Vec<bool> {
    let mut win = vec![false; m.num_states()];
    for mec in winning_mecs(m) {
        for x in mec.states {
            win[x] = true;
        }
    }
    win
}
