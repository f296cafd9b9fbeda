mod common;

use std::collections::BTreeSet;

use common::*;
use num_traits::{One, Zero};
use opacity_core::automata::Dpa;
use opacity_core::disclosure::*;
use opacity_core::gen::{random_dpa, random_idtmc, random_refinement, random_weights};
use opacity_core::graph::{can_reach, tarjan_scc};
use opacity_core::linalg::solve;
use opacity_core::lp::{lp_maximize, LinearProblem, LpOutcome, Relation};
use opacity_core::measure::disclosure_pts;
use opacity_core::modal::modal_edges;
use opacity_core::model::{
    interior_choice, interior_point, polytope_vertices, schedule_memoryless, MemorylessChoice,
};
use opacity_core::rational::ratio;
use opacity_core::relations::check_simulation_idtmc;
use opacity_core::{Alphabet, Distribution, Error, Idtmc, LabeledGraph, Observation, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_mdp(rng: &mut impl Rng, n: usize, max_actions: usize, max_color: u32) -> VertexMdp {
    let actions = (0..n)
        .map(|_| {
            (0..rng.random_range(1..=max_actions))
                .map(|_| {
                    let k = rng.random_range(1..=n.min(3));
                    let mut targets: Vec<usize> = (0..n).collect();
                    for i in 0..k {
                        let j = rng.random_range(i..n);
                        targets.swap(i, j);
                    }
                    targets.truncate(k);
                    Distribution::new(targets.into_iter().zip(random_weights(rng, k))).unwrap()
                })
                .collect()
        })
        .collect();
    let colors = (0..n).map(|_| rng.random_range(1..=max_color)).collect();
    VertexMdp::from_actions(actions, colors, 0).unwrap()
}

/// Reachability values of one deterministic policy, solved directly.
fn policy_values(m: &VertexMdp, target: &[bool], policy: &[usize]) -> Vec<Rational> {
    let n = m.num_states();
    let succ: Vec<Vec<usize>> = (0..n)
        .map(|x| m.actions(x)[policy[x]].support().collect())
        .collect();
    let live = can_reach(&succ, target);
    let mut a = vec![vec![Rational::zero(); n]; n];
    let mut b = vec![Rational::zero(); n];
    for x in 0..n {
        a[x][x] = Rational::one();
        if target[x] {
            b[x] = Rational::one();
        } else if live[x] {
            for (t, p) in m.actions(x)[policy[x]].iter() {
                a[x][t] -= p;
            }
        }
    }
    solve(a, b).expect("non-singular")
}

fn all_policies(m: &VertexMdp) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for x in 0..m.num_states() {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..m.actions(x).len()).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Union of all end components with an even least color, found by trying
/// every state subset.
fn brute_force_winning(m: &VertexMdp) -> Vec<bool> {
    let n = m.num_states();
    let mut win = vec![false; n];
    for mask in 1u32..(1 << n) {
        let inside = |x: usize| mask >> x & 1 == 1;
        let states: Vec<usize> = (0..n).filter(|&x| inside(x)).collect();
        let succ: Vec<Vec<usize>> = (0..n)
            .map(|x| {
                if !inside(x) {
                    return Vec::new();
                }
                m.actions(x)
                    .iter()
                    .filter(|d| d.support().all(inside))
                    .flat_map(|d| d.support())
                    .collect()
            })
            .collect();
        let closed = states.iter().all(|&x| !succ[x].is_empty());
        let connected = tarjan_scc(&succ)
            .iter()
            .any(|c| c.len() == states.len() && inside(c[0]));
        let least = states.iter().map(|&x| m.color(x)).min().unwrap();
        if closed && connected && least % 2 == 0 {
            for x in states {
                win[x] = true;
            }
        }
    }
    win
}

fn obs(alphabet: &Alphabet, letters: &[&str]) -> Observation {
    Observation::new(alphabet, letters).unwrap()
}

/// A valid memoryless choice picked at random between the interior point and
/// the closure vertices.
fn random_choice(rng: &mut impl Rng, spec: &Idtmc) -> MemorylessChoice {
    let rows = (0..spec.num_states())
        .map(|s| {
            let centre = interior_point(spec, s).unwrap();
            let vertices = polytope_vertices(spec, s).unwrap();
            let v = &vertices[rng.random_range(0..vertices.len())];
            let w = ratio(rng.random_range(0..4), 4);
            let row = Distribution::new(
                centre
                    .iter()
                    .map(|(t, p)| (t, p * (Rational::one() - &w)))
                    .chain(v.iter().map(|(t, p)| (t, p * &w)))
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            if spec.row(s).iter().all(|(&t, iv)| iv.contains(&row.get(t))) {
                row
            } else {
                centre
            }
        })
        .collect();
    MemorylessChoice::new(rows)
}

#[test]
fn fig4_non_modal_disclosure_is_zero() {
    let spec = idtmc(FIG4B);
    let phi = dpa(SECRET_C);
    let r = max_disclosure(&spec, &obs(spec.alphabet(), &["a", "b"]), &phi).unwrap();
    assert_eq!(r.value, Rational::zero());
    assert!(r.disclosure_dpa.is_empty());
    assert!(r.closure_applied);
}

#[test]
fn fig4_modal_specification_is_rejected() {
    let spec = idtmc(FIG4A);
    let phi = dpa(SECRET_C);
    let err = max_disclosure(&spec, &obs(spec.alphabet(), &["a", "b"]), &phi).unwrap_err();
    match err {
        Error::ModalEdgesPresent { edges } => {
            assert_eq!(
                edges,
                vec![("a".into(), "c".into()), ("a".into(), "b".into())]
            );
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn fig1c_matches_single_step_lp() {
    // Maximize the mass of the left b-branch: x1 + x2 + x3 = 1 within the
    // three interval constraints.
    let mut lp = LinearProblem::new(3);
    let bounds = [
        (ratio(1, 8), ratio(8, 9)),
        (ratio(1, 8), ratio(2, 3)),
        (ratio(1, 9), ratio(1, 3)),
    ];
    for (i, (lo, hi)) in bounds.iter().enumerate() {
        lp.add(vec![(i, ratio(1, 1))], Relation::Ge, lo.clone());
        lp.add(vec![(i, ratio(1, 1))], Relation::Le, hi.clone());
    }
    lp.add(
        (0..3).map(|i| (i, ratio(1, 1))).collect(),
        Relation::Eq,
        ratio(1, 1),
    );
    let LpOutcome::Optimal { value: oracle, .. } = lp_maximize(&lp, &[(0, ratio(1, 1))]) else {
        panic!("bounded LP");
    };
    assert_eq!(oracle, ratio(55, 72));

    let spec = idtmc(FIG1C);
    let o = obs(spec.alphabet(), &["a", "c", "d"]);
    let phi = dpa(PHI_B);
    let r = max_disclosure(&spec, &o, &phi).unwrap();
    assert_eq!(r.value, oracle);
    assert!(r.supremum_attained && !r.closure_applied);
    let witness = r.scheduled_pts(&spec).unwrap();
    assert_eq!(disclosure_pts(&witness, &o, &phi).unwrap(), oracle);
}

#[test]
fn closing_intervals() {
    let open = idtmc(FIG4B);
    let closed = close_intervals(&open);
    assert!(!closed.has_open_bounds());
    assert_eq!(closed.interval(0, 1).to_string(), "[0/1, 1/1]");
    let fig1c = idtmc(FIG1C);
    assert_eq!(close_intervals(&fig1c), fig1c);
    assert_eq!(close_intervals(&closed), closed);
}

#[test]
fn vertex_mdp_shapes() {
    let spec = close_intervals(&idtmc(FIG4B));
    let trivial = Dpa::universal(spec.alphabet().clone());
    let m = build_vertex_mdp(&spec, &trivial).unwrap();
    assert_eq!(m.actions(m.initial()).len(), 2);

    let point = idtmc(
        &FIG1C
            .replace("[1/8, 8/9]", "[1/2, 1/2]")
            .replace("[1/8, 2/3]", "[1/4, 1/4]")
            .replace("[1/9, 1/3]", "[1/4, 1/4]"),
    );
    let m = build_vertex_mdp(&point, &dpa(PHI_B)).unwrap();
    assert!((0..m.num_states()).all(|x| m.actions(x).len() == 1));

    // Bound patterns: two coordinates at a bound, the third free.
    let fig1c = idtmc(FIG1C);
    let bounds = [
        (ratio(1, 8), ratio(8, 9)),
        (ratio(1, 8), ratio(2, 3)),
        (ratio(1, 9), ratio(1, 3)),
    ];
    let mut points = BTreeSet::new();
    for free in 0..3 {
        for pattern in 0..4 {
            let mut x = vec![Rational::zero(); 3];
            for (bit, i) in (0..3).filter(|&i| i != free).enumerate() {
                x[i] = if pattern >> bit & 1 == 1 {
                    bounds[i].1.clone()
                } else {
                    bounds[i].0.clone()
                };
            }
            x[free] = Rational::one() - x.iter().sum::<Rational>();
            if x[free] >= bounds[free].0 && x[free] <= bounds[free].1 {
                points.insert(x);
            }
        }
    }
    let m = build_vertex_mdp(&fig1c, &dpa(PHI_B)).unwrap();
    assert_eq!(m.state(m.initial()).0, 0);
    assert_eq!(m.actions(m.initial()).len(), points.len());
}

#[test]
fn end_components() {
    let single = VertexMdp::from_actions(vec![vec![Distribution::dirac(0)]], vec![2], 0).unwrap();
    assert_eq!(mec_decompose(&single).len(), 1);
    assert_eq!(winning_states(&single), vec![true]);
    let odd = VertexMdp::from_actions(vec![vec![Distribution::dirac(0)]], vec![1], 0).unwrap();
    assert_eq!(winning_states(&odd), vec![false]);

    // 0 -> 1 -> 2 (absorbing): only the absorbing state is in an end component.
    let chain = VertexMdp::from_actions(
        vec![
            vec![Distribution::dirac(1)],
            vec![Distribution::dirac(2)],
            vec![Distribution::dirac(2)],
        ],
        vec![1, 1, 2],
        0,
    )
    .unwrap();
    let mecs = mec_decompose(&chain);
    assert_eq!(mecs.len(), 1);
    assert_eq!(mecs[0].states, vec![2]);

    // Colors {1, 2}: state 0 (color 1) can be avoided by looping on state 1.
    let avoid = VertexMdp::from_actions(
        vec![
            vec![Distribution::dirac(1)],
            vec![Distribution::dirac(0), Distribution::dirac(1)],
        ],
        vec![1, 2],
        0,
    )
    .unwrap();
    assert_eq!(mec_decompose(&avoid).len(), 1);
    assert_eq!(winning_states(&avoid), vec![false, true]);

    let spec = close_intervals(&idtmc(FIG4B));
    let m = build_vertex_mdp(&spec, &dpa(SECRET_C)).unwrap();
    let mecs = mec_decompose(&m);
    // The b loop appears once per automaton state: reached directly or via c.
    assert_eq!(mecs.len(), 2);
    assert!(mecs
        .iter()
        .all(|c| c.states.len() == 1 && m.state(c.states[0]).0 == 2));
    assert_eq!(winning_states(&m).iter().filter(|&&w| w).count(), 1);

    // Against the one-state automaton of the (empty) disclosing language the
    // loop is a single end component.
    let r = max_disclosure(
        &idtmc(FIG4B),
        &obs(spec.alphabet(), &["a", "b"]),
        &dpa(SECRET_C),
    )
    .unwrap();
    let m = build_vertex_mdp(&spec, &r.disclosure_dpa).unwrap();
    let mecs = mec_decompose(&m);
    assert_eq!(mecs.len(), 1);
    assert_eq!(m.state(mecs[0].states[0]).0, 2);
    assert!(winning_states(&m).iter().all(|w| !w));
}

#[test]
fn winning_states_match_sub_component_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..200 {
        let n = rng.random_range(1..=5);
        let m = random_mdp(&mut rng, n, 3, 4);
        assert_eq!(winning_states(&m), brute_force_winning(&m));
        for mec in mec_decompose(&m) {
            for (x, acts) in &mec.actions {
                assert!(!acts.is_empty());
                for &a in acts {
                    assert!(m.actions(*x)[a].support().all(|t| mec.states.contains(&t)));
                }
            }
        }
    }
}

#[test]
fn reachability_matches_policy_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..150 {
        let n = rng.random_range(1..=6);
        let m = random_mdp(&mut rng, n, 3, 2);
        let target: Vec<bool> = (0..n).map(|_| rng.random_bool(0.3)).collect();
        let (values, policy) = max_reachability(&m, &target);
        let mut best = vec![Rational::zero(); n];
        for p in all_policies(&m) {
            for (b, v) in best.iter_mut().zip(policy_values(&m, &target, &p)) {
                if v > *b {
                    *b = v;
                }
            }
        }
        assert_eq!(values, best);
        assert_eq!(policy_values(&m, &target, &policy), best);
    }
    let m = random_mdp(&mut rng, 4, 2, 2);
    assert!(max_reachability(&m, &[true; 4])
        .0
        .iter()
        .all(|v| v.is_one()));
    assert!(max_reachability(&m, &[false; 4])
        .0
        .iter()
        .all(|v| v.is_zero()));
}

/// Specifications with no modal edge and an observer that sees a letter on
/// every reachable cycle.
fn non_modal_instance(rng: &mut impl Rng, alphabet: &Alphabet) -> Option<(Idtmc, Observation)> {
    let n = rng.random_range(1..=3);
    let spec = random_idtmc(rng, n, alphabet, true);
    if modal_edges(&spec).unwrap().is_modal() {
        return None;
    }
    let o = if rng.random_bool(0.5) {
        Observation::full(alphabet)
    } else {
        obs(alphabet, &["a"])
    };
    opacity_core::automata::check_observation_liveness(&spec, &o).then_some((spec, o))
}

#[test]
fn every_scheduling_is_below_the_maximum() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let alphabet = Alphabet::new(["a", "b"]);
    let mut checked = 0;
    while checked < 40 {
        let Some((spec, o)) = non_modal_instance(&mut rng, &alphabet) else {
            continue;
        };
        let phi = random_dpa(&mut rng, 2, &alphabet, 2);
        let r = max_disclosure(&spec, &o, &phi).unwrap();
        assert!(r.value >= Rational::zero() && r.value <= Rational::one());
        if r.disclosure_dpa.is_empty() {
            assert!(r.value.is_zero());
        }
        for _ in 0..3 {
            let a = schedule_memoryless(&spec, &random_choice(&mut rng, &spec)).unwrap();
            assert!(disclosure_pts(&a, &o, &phi).unwrap() <= r.value);
        }
        if r.supremum_attained {
            let w = r.scheduled_pts(&spec).unwrap();
            assert_eq!(disclosure_pts(&w, &o, &phi).unwrap(), r.value);
        }
        checked += 1;
    }
}

#[test]
fn disclosure_is_monotone_under_simulation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let alphabet = Alphabet::new(["a", "b"]);
    let mut checked = 0;
    while checked < 30 {
        let Some((s2, o)) = non_modal_instance(&mut rng, &alphabet) else {
            continue;
        };
        let split = rng.random_bool(0.5);
        let (s1, _) = random_refinement(&mut rng, &s2, split);
        if modal_edges(&s1).unwrap().is_modal() {
            continue;
        }
        assert!(check_simulation_idtmc(&s1, &s2).unwrap().holds());
        let phi = random_dpa(&mut rng, 2, &alphabet, 2);
        let d1 = max_disclosure(&s1, &o, &phi).unwrap().value;
        let d2 = max_disclosure(&s2, &o, &phi).unwrap().value;
        assert!(d1 <= d2, "{d1} > {d2}");
        checked += 1;
    }
}

#[test]
fn point_specification_agrees_with_the_pts_pipeline() {
    let a = pts(FIG1A);
    let spec = Idtmc::from_pts(&a);
    let o = obs(a.alphabet(), &["a", "c", "d"]);
    let phi = dpa(PHI_B);
    let r = max_disclosure(&spec, &o, &phi).unwrap();
    assert_eq!(r.value, ratio(1, 4));
    assert_eq!(r.value, disclosure_pts(&a, &o, &phi).unwrap());
}

#[test]
fn open_binding_bound_gives_an_unattained_supremum() {
    let spec = idtmc(&FIG1C.replace("[1/8, 2/3]", "(1/8, 2/3]"));
    let o = obs(spec.alphabet(), &["a", "c", "d"]);
    let r = max_disclosure(&spec, &o, &dpa(PHI_B)).unwrap();
    assert_eq!(r.value, ratio(55, 72));
    assert!(r.closure_applied && !r.supremum_attained);
    let inside = schedule_memoryless(&spec, &interior_choice(&spec).unwrap()).unwrap();
    assert!(disclosure_pts(&inside, &o, &dpa(PHI_B)).unwrap() < r.value);
}
