use std::collections::BTreeSet;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Distribution, Idtmc, LabeledGraph};
use crate::rational::{one, Rational};

/// Vertices of the closure of the distribution polytope of `state`:
/// `{ f : lo ≤ f ≤ hi on every edge, Σ f = 1 }`.
///
/// A vertex has at most one coordinate strictly between its bounds, so the
/// enumeration fixes every other coordinate at a bound and solves for the free
/// one. Output is duplicate-free and sorted lexicographically by the value
/// vector over the successors in index order.
pub fn polytope_vertices(idtmc: &Idtmc, state: usize) -> Result<Vec<Distribution>> {
    let row = idtmc.row(state);
    let succ: Vec<usize> = row.keys().copied().collect();
    let lo: Vec<Rational> = row.values().map(|iv| iv.lo().clone()).collect();
    let hi: Vec<Rational> = row.values().map(|iv| iv.hi().clone()).collect();
    let vertices = box_simplex_vertices(&lo, &hi);
    if vertices.is_empty() {
        return Err(Error::EmptyPolytope {
            state: idtmc.state_name(state).to_owned(),
        });
    }
    Ok(vertices
        .into_iter()
        .map(|v| {
            Distribution::new(succ.iter().copied().zip(v))
                .expect("vertex coordinates form a distribution")
        })
        .collect())
}

pub(crate) fn box_simplex_vertices(lo: &[Rational], hi: &[Rational]) -> Vec<Vec<Rational>> {
    let m = lo.len();
    let mut out: BTreeSet<Vec<Rational>> = BTreeSet::new();
    if m == 0 {
        return Vec::new();
    }
    let target = one();
    for free in 0..m {
        let others = m - 1;
        for mask in 0u64..(1u64 << others) {
            let mut point = vec![Rational::zero(); m];
            let mut sum = Rational::zero();
            let mut bit = 0;
            for (i, slot) in point.iter_mut().enumerate() {
                if i == free {
                    continue;
                }
                *slot = if mask >> bit & 1 == 1 {
                    hi[i].clone()
                } else {
                    lo[i].clone()
                };
                sum += &*slot;
                bit += 1;
            }
            let rest = &target - &sum;
            if rest >= lo[free] && rest <= hi[free] {
                point[free] = rest;
                out.insert(point);
            }
        }
    }
    out.into_iter().collect()
}

/// A point of the (possibly open) polytope of `state`: the barycentre of the
/// closure vertices, which lies in the relative interior of the closure and
/// therefore in the polytope itself whenever the polytope is non-empty.
pub fn interior_point(idtmc: &Idtmc, state: usize) -> Result<Distribution> {
    let vertices = polytope_vertices(idtmc, state)?;
    let weight = Rational::new(1.into(), (vertices.len() as i64).into());
    let mut acc = std::collections::BTreeMap::<usize, Rational>::new();
    for v in &vertices {
        for (t, p) in v.iter() {
            *acc.entry(t).or_insert_with(Rational::zero) += p * &weight;
        }
    }
    let d = Distribution::new(acc)?;
    let inside = idtmc
        .row(state)
        .iter()
        .all(|(&t, iv)| iv.contains(&d.get(t)));
    if inside {
        Ok(d)
    } else {
        Err(Error::EmptyPolytope {
            state: idtmc.state_name(state).to_owned(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::model::Interval;
    use crate::rational::ratio;

    fn one_state(intervals: &[Interval]) -> Idtmc {
        let mut b = Idtmc::builder(Alphabet::new(["a"]));
        let s = b.state("s", "a");
        let succ: Vec<usize> = (0..intervals.len())
            .map(|i| b.state(format!("t{i}"), "a"))
            .collect();
        for (t, iv) in succ.iter().zip(intervals) {
            b.edge(s, *t, iv.clone());
        }
        for &t in &succ {
            b.edge(t, t, Interval::point(one()).unwrap());
        }
        b.init(s);
        b.build().unwrap()
    }

    #[test]
    fn two_full_edges() {
        let full = Interval::closed(ratio(0, 1), ratio(1, 1)).unwrap();
        let m = one_state(&[full.clone(), full]);
        let v = polytope_vertices(&m, 0).unwrap();
        assert_eq!(v, vec![Distribution::dirac(2), Distribution::dirac(1)]);
    }

    #[test]
    fn forced_single_edge() {
        let m = one_state(&[Interval::point(one()).unwrap()]);
        assert_eq!(
            polytope_vertices(&m, 0).unwrap(),
            vec![Distribution::dirac(1)]
        );
    }

    #[test]
    fn empty_closure_is_reported() {
        let iv = Interval::closed(ratio(3, 5), ratio(7, 10)).unwrap();
        let m = one_state(&[iv.clone(), iv]);
        assert!(matches!(
            polytope_vertices(&m, 0),
            Err(Error::EmptyPolytope { .. })
        ));
    }

    #[test]
    fn interior_point_respects_open_bounds() {
        let half_open = Interval::new(ratio(0, 1), ratio(1, 1), true, false).unwrap();
        let m = one_state(&[half_open.clone(), half_open]);
        let p = interior_point(&m, 0).unwrap();
        assert_eq!(p.get(1), ratio(1, 2));
        assert_eq!(p.get(2), ratio(1, 2));
    }
}
