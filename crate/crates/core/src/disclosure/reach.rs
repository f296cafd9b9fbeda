use num_traits::{One, Zero};

use crate::disclosure::VertexMdp;
use crate::graph::can_reach;
use crate::linalg::absorption_values;
use crate::rational::Rational;

/// Values of a memoryless deterministic policy. States that cannot reach the
/// target under the policy are fixed to zero first, so the remaining system
/// is non-singular.
fn evaluate(m: &VertexMdp, target: &[bool], policy: &[usize]) -> Vec<Rational> {
    let n = m.num_states();
    let rows: Vec<Vec<(usize, Rational)>> = (0..n)
        .map(|x| {
            m.actions(x)[policy[x]]
                .iter()
                .map(|(t, p)| (t, p.clone()))
                .collect()
        })
        .collect();
    let succ: Vec<Vec<usize>> = rows
        .iter()
        .map(|r| r.iter().map(|(t, _)| *t).collect())
        .collect();
    let live = can_reach(&succ, target);
    let known: Vec<Option<Rational>> = (0..n)
        .map(|x| {
            if target[x] {
                Some(Rational::one())
            } else if !live[x] {
                Some(Rational::zero())
            } else {
                None
            }
        })
        .collect();
    absorption_values(&rows, &known)
}

/// Maximal probability of reaching `target` from every state, with an
/// optimal memoryless deterministic policy (action index per state).
///
/// Exact policy iteration: states that cannot reach the target at all are
/// settled graph-theoretically, the initial policy follows shortest paths to
/// the target, and an action replaces the current one only when it is
/// strictly better.
pub fn max_reachability(m: &VertexMdp, target: &[bool]) -> (Vec<Rational>, Vec<usize>) {
    let n = m.num_states();
    let graph = m.graph();
    let possible = can_reach(&graph, target);

    let mut policy = vec![0usize; n];
    let mut settled: Vec<bool> = target.to_vec();
    loop {
        let mut grew = false;
        let snapshot = settled.clone();
        for x in 0..n {
            if settled[x] || !possible[x] {
                continue;
            }
            if let Some(a) = m
                .actions(x)
                .iter()
                .position(|d| d.support().any(|t| snapshot[t]))
            {
                policy[x] = a;
                settled[x] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }

    loop {
        let values = evaluate(m, target, &policy);
        let mut improved = false;
        for x in 0..n {
            if target[x] || !possible[x] {
                continue;
            }
            let q = |a: usize| -> Rational {
                m.actions(x)[a].iter().map(|(t, p)| p * &values[t]).sum()
            };
            let mut best = q(policy[x]);
            for a in 0..m.actions(x).len() {
                let v = q(a);
                if v > best {
                    best = v;
                    policy[x] = a;
                    improved = true;
                }
            }
        }
        if !improved {
            return (values, policy);
        }
    }
}
