mod common;

use common::*;
use opacity_core::automata::*;
use opacity_core::{Alphabet, LabeledGraph, Observation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn lasso(alpha: &Alphabet, text: &str) -> Lasso {
    Lasso::parse(alpha, text).unwrap()
}

fn random_lasso(rng: &mut ChaCha8Rng, k: usize, max: usize) -> Lasso {
    let u = rng.random_range(0..=max);
    let v = rng.random_range(1..=max);
    Lasso::new(
        (0..u).map(|_| rng.random_range(0..k)).collect(),
        (0..v).map(|_| rng.random_range(0..k)).collect(),
    )
}

/// Explicit path search: is `u v^ω` the label trace of an infinite run?
/// Tracks the set of model states compatible with each position of the
/// folded lasso and looks for a cycle in the (state, position) graph.
fn is_trace(model: &dyn LabeledGraph, w: &Lasso) -> bool {
    let n = model.num_states();
    let p = w.period_end();
    let init = model.initial();
    if model.label(init) != w.letter_at(0) {
        return false;
    }
    // node (s, i): run is at s, which read letter i.
    let mut reach = vec![vec![false; p]; n];
    let mut stack = vec![(init, 0)];
    reach[init][0] = true;
    while let Some((s, i)) = stack.pop() {
        let j = w.next_pos(i);
        for t in model.successors(s) {
            if model.label(t) == w.letter_at(j) && !reach[t][j] {
                reach[t][j] = true;
                stack.push((t, j));
            }
        }
    }
    // Any reachable node in the periodic part that lies on a cycle.
    let on_cycle = |s0: usize, i0: usize| {
        let mut seen = vec![vec![false; p]; n];
        let mut stack = vec![(s0, i0)];
        while let Some((s, i)) = stack.pop() {
            let j = w.next_pos(i);
            for t in model.successors(s) {
                if model.label(t) == w.letter_at(j) {
                    if (t, j) == (s0, i0) {
                        return true;
                    }
                    if !seen[t][j] {
                        seen[t][j] = true;
                        stack.push((t, j));
                    }
                }
            }
        }
        false
    };
    (0..n).any(|s| (0..p).any(|i| reach[s][i] && on_cycle(s, i)))
}

#[test]
fn fig1a_traces() {
    let a1 = pts(FIG1A);
    let alpha = a1.alphabet().clone();
    let nba = trace_nba(&a1);
    for w in ["ab(d)", "ac(d)", "abc(d)"] {
        assert!(nba.accepts(&lasso(&alpha, w)), "{w}");
    }
    for w in [
        "(a)", "a(d)", "abb(d)", "acc(d)", "b(d)", "abcd(c)", "(abcd)",
    ] {
        assert!(!nba.accepts(&lasso(&alpha, w)), "{w}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..500 {
        let w = random_lasso(&mut rng, alpha.len(), 6);
        assert_eq!(nba.accepts(&w), is_trace(&a1, &w));
    }
}

#[test]
fn fig4_traces() {
    let m = idtmc(FIG4B);
    let alpha = m.alphabet().clone();
    let nba = trace_nba(&m);
    assert!(nba.accepts(&lasso(&alpha, "ac(b)")));
    assert!(nba.accepts(&lasso(&alpha, "a(b)")));
    assert!(!nba.accepts(&lasso(&alpha, "acc(b)")));
}

#[test]
fn complement_of_phi_b() {
    let phi = dpa(PHI_B);
    let alpha = phi.alphabet().clone();
    let neg = dpa_complement(&phi);
    assert!(phi.accepts(&lasso(&alpha, "ab(d)")));
    assert!(!neg.accepts(&lasso(&alpha, "ab(d)")));
    assert!(neg.accepts(&lasso(&alpha, "ac(d)")));
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let back = dpa_complement(&neg);
    let as_nba = dpa_to_nba(&phi);
    for _ in 0..500 {
        let w = random_lasso(&mut rng, alpha.len(), 8);
        assert_ne!(phi.accepts(&w), neg.accepts(&w));
        assert_eq!(phi.accepts(&w), back.accepts(&w));
        assert_eq!(phi.accepts(&w), as_nba.accepts(&w));
    }
}

#[test]
fn constant_automata() {
    let alpha = Alphabet::new(["a", "b"]);
    let all = Dpa::universal(alpha.clone());
    let none = Dpa::empty(alpha.clone());
    let w = lasso(&alpha, "(a)");
    assert!(all.accepts(&w));
    assert!(!dpa_complement(&all).accepts(&w));
    assert!(dpa_to_nba(&all).accepts(&w));
    assert!(dpa_to_nba(&none).is_empty());
    assert_eq!(dpa_to_nba(&all).num_states(), 1);
}

#[test]
fn traces_in_phi_b() {
    let a1 = pts(FIG1A);
    let alpha = a1.alphabet().clone();
    let both = nba_intersect(&trace_nba(&a1), &dpa_to_nba(&dpa(PHI_B))).unwrap();
    assert!(both.accepts(&lasso(&alpha, "ab(d)")));
    assert!(both.accepts(&lasso(&alpha, "abc(d)")));
    assert!(!both.accepts(&lasso(&alpha, "ac(d)")));
    let uni = dpa_to_nba(&Dpa::universal(alpha.clone()));
    let same = nba_intersect(&both, &uni).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..300 {
        let w = random_lasso(&mut rng, alpha.len(), 6);
        assert_eq!(same.accepts(&w), both.accepts(&w));
    }
    let none = nba_intersect(&both, &dpa_to_nba(&dpa_complement(&dpa(PHI_B)))).unwrap();
    assert!(none.is_empty());
}

#[test]
fn projection_of_fig1a() {
    let a1 = pts(FIG1A);
    let alpha = a1.alphabet().clone();
    let obs = Observation::new(&alpha, &["a", "c", "d"]).unwrap();
    let observed = obs.observed_alphabet();
    let p = nba_project(&trace_nba(&a1), &obs).unwrap();
    assert!(p.accepts(&lasso(&observed, "a(d)")));
    assert!(p.accepts(&lasso(&observed, "ac(d)")));
    assert!(!p.accepts(&lasso(&observed, "acc(d)")));
    assert!(!p.accepts(&lasso(&observed, "(a)")));

    let full = Observation::full(&alpha);
    let id = nba_project(&trace_nba(&a1), &full).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let w = random_lasso(&mut rng, alpha.len(), 6);
        assert_eq!(id.accepts(&w), is_trace(&a1, &w));
    }
}

#[test]
fn inverse_projection_recovers_abd() {
    let a1 = pts(FIG1A);
    let alpha = a1.alphabet().clone();
    let obs = Observation::new(&alpha, &["a", "c", "d"]).unwrap();
    let observed = obs.observed_alphabet();
    // {a d^ω} over the observed alphabet
    let ad = {
        let mut n = Nba::new(observed.clone(), 3);
        n.add_initial(0);
        n.add_transition(0, observed.index("a").unwrap(), 1);
        n.add_transition(1, observed.index("d").unwrap(), 2);
        n.add_transition(2, observed.index("d").unwrap(), 2);
        n.set_accepting(2, true);
        n
    };
    let lifted = nba_inverse_project(&ad, &alpha, &obs).unwrap();
    let back = nba_intersect(&lifted, &trace_nba(&a1)).unwrap();
    assert!(back.accepts(&lasso(&alpha, "ab(d)")));
    assert!(!back.accepts(&lasso(&alpha, "ac(d)")));
    assert!(!back.accepts(&lasso(&alpha, "abc(d)")));
    assert!(!lifted.accepts(&lasso(&alpha, "a(b)")));
    let round = nba_project(&lifted, &obs).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let w = random_lasso(&mut rng, observed.len(), 6);
        assert_eq!(round.accepts(&w), ad.accepts(&w));
    }
}

#[test]
fn liveness() {
    let a1 = pts(FIG1A);
    let alpha = a1.alphabet().clone();
    assert!(check_observation_liveness(
        &a1,
        &Observation::new(&alpha, &["a", "c", "d"]).unwrap()
    ));
    assert!(check_observation_liveness(&a1, &Observation::full(&alpha)));
    assert!(!check_observation_liveness(
        &a1,
        &Observation::new(&alpha, &["a", "b"]).unwrap()
    ));
    let hidden_loop = nba_project(
        &trace_nba(&a1),
        &Observation::new(&alpha, &["a", "b"]).unwrap(),
    );
    assert!(matches!(
        hidden_loop,
        Err(opacity_core::Error::NotObservationLive(_))
    ));
}

fn random_nba(rng: &mut ChaCha8Rng, alpha: &Alphabet, n: usize) -> Nba {
    let mut a = Nba::new(alpha.clone(), n);
    a.add_initial(0);
    if rng.random_bool(0.3) {
        a.add_initial(rng.random_range(0..n));
    }
    for s in 0..n {
        a.set_accepting(s, rng.random_bool(0.35));
        for l in alpha.letters() {
            for t in 0..n {
                if rng.random_bool(0.3) {
                    a.add_transition(s, l, t);
                }
            }
        }
    }
    a
}

#[test]
fn determinization_agrees_with_nba() {
    let alpha = Alphabet::new(["a", "b"]);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for round in 0..120 {
        let n = 1 + round % 5;
        let a = random_nba(&mut rng, &alpha, n);
        let d = nba_determinize(&a, DEFAULT_STATE_BUDGET).unwrap();
        for _ in 0..150 {
            let w = random_lasso(&mut rng, 2, 6);
            assert_eq!(d.accepts(&w), a.accepts(&w), "round {round}, word {w:?}");
        }
        assert_eq!(d.is_empty(), a.is_empty());
    }
}

#[test]
fn determinization_examples() {
    let alpha = Alphabet::new(["a", "b", "c", "d"]);
    let empty = Nba::new(alpha.clone(), 1);
    assert!(nba_determinize(&empty, 10).unwrap().is_empty());

    // a Σ^ω ∪ b Σ^ω
    let mut u = Nba::new(alpha.clone(), 3);
    u.add_initial(0);
    u.add_transition(0, 0, 1);
    u.add_transition(0, 1, 2);
    for s in [1, 2] {
        u.set_accepting(s, true);
        for l in alpha.letters() {
            u.add_transition(s, l, s);
        }
    }
    let d = nba_determinize(&u, 100).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let w = random_lasso(&mut rng, 4, 5);
        assert_eq!(d.accepts(&w), w.letter_at(0) <= 1);
    }

    // infinitely many a's: the classic non-deterministic-only property
    // ("finitely many b") must still determinize.
    let ab = Alphabet::new(["a", "b"]);
    let mut fin_b = Nba::new(ab.clone(), 2);
    fin_b.add_initial(0);
    for l in ab.letters() {
        fin_b.add_transition(0, l, 0);
    }
    fin_b.add_transition(0, 0, 1);
    fin_b.add_transition(1, 0, 1);
    fin_b.set_accepting(1, true);
    let d = nba_determinize(&fin_b, 100).unwrap();
    assert!(d.accepts(&lasso(&ab, "bb(a)")));
    assert!(!d.accepts(&lasso(&ab, "(ab)")));
    assert!(matches!(
        nba_determinize(&fin_b, 1),
        Err(opacity_core::Error::StateBudgetExceeded { budget: 1 })
    ));
}

#[test]
fn disclosure_language_of_fig1a() {
    let a1 = pts(FIG1A);
    let alpha = a1.alphabet().clone();
    let obs = Observation::new(&alpha, &["a", "c", "d"]).unwrap();
    let phi = dpa(PHI_B);
    let v = build_disclosure_dpa(&trace_nba(&a1), &phi, &obs, DEFAULT_STATE_BUDGET).unwrap();
    assert!(v.accepts(&lasso(&alpha, "ab(d)")));
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let abd = lasso(&alpha, "ab(d)");
    for _ in 0..500 {
        let w = random_lasso(&mut rng, alpha.len(), 5);
        let expected = w.prefix().len() <= 2
            && (0..2 + w.cycle().len()).all(|i| w.letter_at(i) == abd.letter_at(i));
        assert_eq!(v.accepts(&w), expected, "{}", w.render(&alpha));
    }
    // nothing outside the secret: V = traces
    let all = Dpa::universal(alpha.clone());
    let v = build_disclosure_dpa(&trace_nba(&a1), &all, &obs, DEFAULT_STATE_BUDGET).unwrap();
    for _ in 0..300 {
        let w = random_lasso(&mut rng, alpha.len(), 5);
        assert_eq!(v.accepts(&w), is_trace(&a1, &w));
    }
}

#[test]
fn disclosure_language_of_fig4b_is_empty() {
    let m = idtmc(FIG4B);
    let obs = Observation::new(m.alphabet(), &["a", "b"]).unwrap();
    let v =
        build_disclosure_dpa(&trace_nba(&m), &dpa(SECRET_C), &obs, DEFAULT_STATE_BUDGET).unwrap();
    assert!(v.is_empty());
    let c = pts(FIG4C);
    let v =
        build_disclosure_dpa(&trace_nba(&c), &dpa(SECRET_C), &obs, DEFAULT_STATE_BUDGET).unwrap();
    assert!(v.accepts(&Lasso::parse(c.alphabet(), "ac(b)").unwrap()));
}

#[test]
fn dpa_text_round_trip() {
    let phi = dpa(PHI_B);
    let again = parse_dpa(&write_dpa(&phi)).unwrap();
    assert_eq!(phi, again);
    let missing = "dpa\nalphabet a b\nstate x color 2 init\ntrans x a x\n";
    assert!(matches!(
        parse_dpa(missing),
        Err(opacity_core::Error::Parse { line: 3, .. })
    ));
}
