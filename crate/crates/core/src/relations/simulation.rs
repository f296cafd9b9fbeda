use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::error::Result;
use crate::lp::{lp_feasible, LinearProblem, Relation};
use crate::model::{polytope_vertices, Distribution, Idtmc, LabeledGraph, Pts};
use crate::rational::{one, Rational};
use crate::relations::witness::{add_interval, check_image};
use crate::relations::{greatest_fixpoint, refutation, Pair, SimWitness, Verdict};

/// Closure vertices of one state together with whether each one is itself a
/// valid distribution (lies on no open bound).
struct StateShape {
    vertices: Vec<(Distribution, bool)>,
    carrying: Vec<usize>,
}

fn shape(s1: &Idtmc, a: usize) -> Result<StateShape> {
    let vertices: Vec<(Distribution, bool)> = polytope_vertices(s1, a)?
        .into_iter()
        .map(|v| {
            let valid = s1.row(a).iter().all(|(&t, iv)| iv.contains(&v.get(t)));
            (v, valid)
        })
        .collect();
    let carrying: BTreeSet<usize> = vertices.iter().flat_map(|(v, _)| v.support()).collect();
    Ok(StateShape {
        vertices,
        carrying: carrying.into_iter().collect(),
    })
}

/// One LP in `δ(s1')(s2')`: rows sum to one, support inside `relation`, and
/// the image of every closure vertex lies in `T2(s2)`. Open ends are strict
/// at vertices that are valid distributions, or everywhere with `all_strict`.
fn delta_lp(
    s2: &Idtmc,
    shape: &StateShape,
    b: usize,
    relation: &BTreeSet<Pair>,
    all_strict: bool,
) -> Option<BTreeMap<usize, Distribution>> {
    let mut vars: Vec<Pair> = Vec::new();
    for &u in &shape.carrying {
        let before = vars.len();
        vars.extend(relation.range((u, 0)..(u + 1, 0)).copied());
        if vars.len() == before {
            return None;
        }
    }
    let mut lp = LinearProblem::new(vars.len());
    for &u in &shape.carrying {
        let row = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| v.0 == u)
            .map(|(i, _)| (i, one()))
            .collect();
        lp.add(row, Relation::Eq, one());
    }
    let columns: BTreeSet<usize> = s2
        .row(b)
        .keys()
        .copied()
        .chain(vars.iter().map(|v| v.1))
        .collect();
    for (v, valid) in &shape.vertices {
        for &t in &columns {
            let expr: Vec<(usize, Rational)> = vars
                .iter()
                .enumerate()
                .filter(|(_, x)| x.1 == t && !v.get(x.0).is_zero())
                .map(|(i, x)| (i, v.get(x.0)))
                .collect();
            let iv = s2.interval(b, t);
            let strict = all_strict || *valid;
            if expr.is_empty() {
                let zero_ok = if strict {
                    iv.contains_zero()
                } else {
                    iv.closure().contains_zero()
                };
                if !zero_ok {
                    return None;
                }
                continue;
            }
            add_interval(&mut lp, expr, &iv, strict);
        }
    }
    let x = lp_feasible(&lp)?;
    let mut rows: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for (&(u, t), p) in vars.iter().zip(x) {
        rows.entry(u).or_default().push((t, p));
    }
    Some(
        rows.into_iter()
            .map(|(u, w)| (u, Distribution::new(w).expect("rows sum to one")))
            .collect(),
    )
}

/// Decides whether `s2` simulates `s1` by a greatest fixpoint over
/// label-matching pairs.
///
/// Each pair is tested with one LP whose open-end constraints are strict only
/// at the vertices that are valid distributions; if the resulting `δ` fails the
/// exact image check, a second LP with strict constraints at every vertex is
/// tried before the pair is deleted.
pub fn check_simulation_idtmc(s1: &Idtmc, s2: &Idtmc) -> Result<Verdict<SimWitness>> {
    s1.alphabet().ensure_same(s2.alphabet())?;
    let shapes = (0..s1.num_states())
        .map(|a| shape(s1, a))
        .collect::<Result<Vec<_>>>()?;
    let candidates: BTreeSet<Pair> = (0..s1.num_states())
        .flat_map(|a| (0..s2.num_states()).map(move |b| (a, b)))
        .filter(|&(a, b)| s1.label(a) == s2.label(b))
        .collect();
    let init = (s1.initial(), s2.initial());
    let labels_match = candidates.contains(&init);
    let (relation, delta, removed) = greatest_fixpoint(candidates, |(a, b), rel| {
        [false, true].into_iter().find_map(|all_strict| {
            let rows = delta_lp(s2, &shapes[a], b, rel, all_strict)?;
            check_image(s1, s2, (a, b), &rows).ok().map(|()| rows)
        })
    });
    if !relation.contains(&init) {
        let describe = |(a, b): Pair| format!("({}, {})", s1.state_name(a), s2.state_name(b));
        return Ok(Verdict::Refuted(refutation(
            init,
            labels_match,
            removed,
            describe,
        )));
    }
    Ok(Verdict::Holds(SimWitness { relation, delta }))
}

/// Simulation between PTSs: the vertex condition collapses to
/// `Σ Δ1(s1)(s1')·δ(s1')(s2') = Δ2(s2)(s2')`.
pub fn check_simulation_pts(a1: &Pts, a2: &Pts) -> Result<Verdict<SimWitness>> {
    check_simulation_idtmc(&Idtmc::from_pts(a1), &Idtmc::from_pts(a2))
}
