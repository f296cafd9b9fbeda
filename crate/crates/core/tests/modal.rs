mod common;

use common::*;
use num_traits::{One, Signed, Zero};
use opacity_core::gen::random_interval_row;
use opacity_core::lp::{lp_feasible, lp_maximize, LinearProblem, LpOutcome, Relation};
use opacity_core::modal::{blocking_choice, min_edge_probability, modal_edges};
use opacity_core::model::{Idtmc, Interval};
use opacity_core::rational::{one, ratio};
use opacity_core::{Alphabet, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GRID: [(i64, i64); 7] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (3, 4), (1, 1)];

fn grid_interval(rng: &mut impl Rng) -> Interval {
    loop {
        let (a, b) = GRID[rng.random_range(0..GRID.len())];
        let (c, d) = GRID[rng.random_range(0..GRID.len())];
        let (lo, hi) = (ratio(a, b).min(ratio(c, d)), ratio(a, b).max(ratio(c, d)));
        if let Ok(iv) = Interval::new(lo, hi, rng.random_bool(0.4), rng.random_bool(0.4)) {
            return iv;
        }
    }
}

/// One state `s` with the given outgoing intervals, each successor absorbing.
fn star(row: &[Interval]) -> Idtmc {
    let mut b = Idtmc::builder(Alphabet::new(["a"]));
    let s = b.state("s", "a");
    for (i, iv) in row.iter().enumerate() {
        let t = b.state(format!("t{i}"), "a");
        b.edge(s, t, iv.clone());
        b.edge(t, t, Interval::point(one()).unwrap());
    }
    b.init(s);
    b.build().unwrap()
}

fn polytope(row: &[Interval], strict: bool) -> LinearProblem {
    let mut lp = LinearProblem::new(row.len());
    for (i, iv) in row.iter().enumerate() {
        let lo = if strict && iv.lo_open() {
            Relation::Gt
        } else {
            Relation::Ge
        };
        let hi = if strict && iv.hi_open() {
            Relation::Lt
        } else {
            Relation::Le
        };
        lp.add(vec![(i, one())], lo, iv.lo().clone());
        lp.add(vec![(i, one())], hi, iv.hi().clone());
    }
    lp.add(
        (0..row.len()).map(|i| (i, one())).collect(),
        Relation::Eq,
        one(),
    );
    lp
}

/// Infimum of `x_edge` over the valid distributions, and whether it is
/// reached by one of them.
fn oracle(row: &[Interval], edge: usize) -> (Rational, bool) {
    let LpOutcome::Optimal { value, .. } = lp_maximize(&polytope(row, false), &[(edge, -one())])
    else {
        panic!("closed polytope of a valid row is non-empty");
    };
    let min = -value;
    let mut at = polytope(row, true);
    at.add(vec![(edge, one())], Relation::Eq, min.clone());
    (min, lp_feasible(&at).is_some())
}

#[test]
fn fig4_modal_edges() {
    let m = idtmc(FIG4A);
    let report = modal_edges(&m).unwrap();
    assert_eq!(
        report.modal_names(&m),
        vec![("a".into(), "c".into()), ("a".into(), "b".into())]
    );
    let min = min_edge_probability(&m, 0, 1).unwrap();
    assert!(min.value.is_zero() && min.attainable);
    assert!(!modal_edges(&idtmc(FIG4B)).unwrap().is_modal());
}

#[test]
fn open_right_neighbour_is_not_modal() {
    let m = star(&[
        Interval::closed(ratio(0, 1), one()).unwrap(),
        Interval::new(ratio(0, 1), one(), false, true).unwrap(),
    ]);
    let report = modal_edges(&m).unwrap();
    assert!(!report.edges[0].modal);
    assert!(report.edges[1].modal);
}

#[test]
fn minimum_with_a_capped_neighbour() {
    let m = star(&[
        Interval::closed(ratio(1, 4), ratio(2, 3)).unwrap(),
        Interval::closed(ratio(0, 1), one()).unwrap(),
    ]);
    let min = min_edge_probability(&m, 0, 2).unwrap();
    assert_eq!(min.value, ratio(1, 3));
    assert!(min.attainable);
    assert!(!modal_edges(&m).unwrap().edges[1].modal);
}

#[test]
fn verdicts_match_the_lp_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut states = 0;
    let mut modal = 0;
    while states < 600 {
        let k = rng.random_range(1..=5);
        let row: Vec<Interval> = if rng.random_bool(0.5) {
            (0..k).map(|_| grid_interval(&mut rng)).collect()
        } else {
            random_interval_row(&mut rng, k, false)
        };
        let feasible = lp_feasible(&polytope(&row, true)).is_some();
        let m = star(&row);
        assert_eq!(m.polytope_nonempty(0), feasible);
        if !feasible {
            assert!(modal_edges(&m).is_err());
            continue;
        }
        let report = modal_edges(&m).unwrap();
        // [0, 0] rows are absent edges and get no verdict.
        for e in report.edges.iter().filter(|e| e.from == 0) {
            let i = e.to - 1;
            let (value, attainable) = oracle(&row, i);
            assert!(!value.is_negative());
            assert_eq!(e.minimum.value, value, "{row:?} edge {i}");
            assert_eq!(e.minimum.attainable, attainable, "{row:?} edge {i}");
            assert_eq!(e.modal, value.is_zero() && attainable, "{row:?} edge {i}");
            let block = blocking_choice(&m, 0, i + 1).unwrap();
            assert_eq!(block.is_some(), e.modal);
            if let Some(c) = block {
                c.check(&m).unwrap();
                assert!(c.row(0).get(i + 1).is_zero());
                assert!(c.row(0).iter().map(|(_, p)| p).sum::<Rational>().is_one());
            }
            modal += usize::from(e.modal);
        }
        states += 1;
    }
    assert!(modal > 50);
}
