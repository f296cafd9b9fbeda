//! Seeded random instances for property tests and benchmarks.

use num_traits::Zero;
use rand::Rng;

use crate::alphabet::Alphabet;
use crate::automata::{Color, Dpa};
use crate::model::{interior_point, Distribution, Idtmc, Interval, LabeledGraph, Pts};
use crate::rational::{one, ratio, Rational};

/// `k` positive rationals with small denominators summing to one.
pub fn random_weights<R: Rng>(rng: &mut R, k: usize) -> Vec<Rational> {
    let raw: Vec<i64> = (0..k).map(|_| rng.random_range(1..=6)).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|w| ratio(w, total)).collect()
}

fn pick_successors<R: Rng>(rng: &mut R, n: usize, max: usize) -> Vec<usize> {
    let k = rng.random_range(1..=max.min(n));
    let mut all: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        all.swap(i, j);
    }
    let mut out = all[..k].to_vec();
    out.sort_unstable();
    out
}

fn state_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

pub fn random_pts<R: Rng>(rng: &mut R, n: usize, alphabet: &Alphabet) -> Pts {
    let mut b = Pts::builder(alphabet.clone());
    for name in state_names(n) {
        let l = rng.random_range(0..alphabet.len());
        b.state(name, alphabet.name(l));
    }
    for s in 0..n {
        let succ = pick_successors(rng, n, 3);
        for (t, p) in succ.iter().zip(random_weights(rng, succ.len())) {
            b.edge(s, *t, p);
        }
    }
    b.init(0);
    b.build().expect("initial state set")
}

/// A complete DPA with colors in `1..=max_color`.
pub fn random_dpa<R: Rng>(rng: &mut R, m: usize, alphabet: &Alphabet, max_color: Color) -> Dpa {
    let delta = (0..m)
        .map(|_| {
            (0..alphabet.len())
                .map(|_| rng.random_range(0..m))
                .collect()
        })
        .collect();
    let colors = (0..m).map(|_| rng.random_range(1..=max_color)).collect();
    Dpa::new(alphabet.clone(), 0, delta, colors).expect("well-formed")
}

fn random_fraction<R: Rng>(rng: &mut R) -> Rational {
    const CHOICES: [(i64, i64); 6] = [(0, 1), (1, 4), (1, 3), (1, 2), (2, 3), (1, 1)];
    let (p, q) = CHOICES[rng.random_range(0..CHOICES.len())];
    ratio(p, q)
}

/// Intervals around a random distribution, so the polytope is never empty.
/// With `non_modal`, a lower bound of zero is always open.
pub fn random_interval_row<R: Rng>(rng: &mut R, k: usize, non_modal: bool) -> Vec<Interval> {
    random_weights(rng, k)
        .into_iter()
        .map(|f| {
            let lo = &f - &f * random_fraction(rng);
            let hi = &f + (one() - &f) * random_fraction(rng);
            let lo_open = if lo.is_zero() && non_modal {
                true
            } else {
                lo < f && rng.random_bool(0.3)
            };
            let hi_open = hi > f && rng.random_bool(0.3);
            Interval::new(lo, hi, lo_open, hi_open).expect("bounds surround an interior value")
        })
        .collect()
}

pub fn random_idtmc<R: Rng>(rng: &mut R, n: usize, alphabet: &Alphabet, non_modal: bool) -> Idtmc {
    let mut b = Idtmc::builder(alphabet.clone());
    for name in state_names(n) {
        let l = rng.random_range(0..alphabet.len());
        b.state(name, alphabet.name(l));
    }
    for s in 0..n {
        let succ = pick_successors(rng, n, 3);
        let row = random_interval_row(rng, succ.len(), non_modal);
        for (t, iv) in succ.iter().zip(row) {
            b.edge(s, *t, iv);
        }
    }
    b.init(0);
    b.build().expect("initial state set")
}

/// A refinement of `spec` that `spec` simulates: intervals are narrowed
/// around an interior point, and optionally one state is split into two
/// copies sharing its incoming intervals halved. Also returns, for each new
/// state, the state of `spec` it refines.
pub fn random_refinement<R: Rng>(rng: &mut R, spec: &Idtmc, split: bool) -> (Idtmc, Vec<usize>) {
    let n = spec.num_states();
    let target = if split {
        Some(rng.random_range(0..n))
    } else {
        None
    };
    let mut origin: Vec<usize> = (0..n).collect();
    if let Some(q) = target {
        origin.push(q);
    }
    let mut b = Idtmc::builder(spec.alphabet().clone());
    for (i, &o) in origin.iter().enumerate() {
        let name = if i < n {
            spec.state_name(o).to_owned()
        } else {
            format!("{}'", spec.state_name(o))
        };
        b.state(name, spec.alphabet().name(spec.label(o)));
    }
    for (i, &o) in origin.iter().enumerate() {
        let f: Distribution = interior_point(spec, o).expect("valid spec");
        for (&t, iv) in spec.row(o) {
            let narrowed = narrow(rng, iv, &f.get(t));
            match target {
                Some(q) if q == t => {
                    let half = halve(&narrowed);
                    b.edge(i, t, half.clone());
                    b.edge(i, n, half);
                }
                _ => {
                    b.edge(i, t, narrowed);
                }
            }
        }
    }
    b.init(spec.initial());
    (b.build().expect("initial state set"), origin)
}

/// A sub-interval of `iv` still containing the interior value `f`.
fn narrow<R: Rng>(rng: &mut R, iv: &Interval, f: &Rational) -> Interval {
    let shrink_lo = random_fraction(rng);
    let shrink_hi = random_fraction(rng);
    let lo = iv.lo() + (f - iv.lo()) * &shrink_lo;
    let hi = iv.hi() - (iv.hi() - f) * &shrink_hi;
    let lo_open = if shrink_lo.is_zero() {
        iv.lo_open()
    } else {
        lo < *f && rng.random_bool(0.3)
    };
    let hi_open = if shrink_hi.is_zero() {
        iv.hi_open()
    } else {
        hi > *f && rng.random_bool(0.3)
    };
    Interval::new(lo, hi, lo_open, hi_open).expect("sub-interval around an interior value")
}

fn halve(iv: &Interval) -> Interval {
    let h = ratio(1, 2);
    Interval::new(iv.lo() * &h, iv.hi() * &h, iv.lo_open(), iv.hi_open()).expect("scaled interval")
}
