use std::collections::HashMap;

use crate::alphabet::{Alphabet, Observation};
use crate::automata::{Dpa, Nba};
use crate::error::{Error, Result};
use crate::graph::{is_nontrivial, reachable, tarjan_scc};
use crate::model::LabeledGraph;

/// Explores a product lazily from its initial states, numbering states in
/// discovery order.
struct Explorer<K> {
    ids: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: std::hash::Hash + Eq + Clone> Explorer<K> {
    fn new() -> Self {
        Explorer {
            ids: HashMap::new(),
            keys: Vec::new(),
        }
    }

    /// Returns the id and whether the key is new.
    fn intern(&mut self, key: K) -> (usize, bool) {
        if let Some(&id) = self.ids.get(&key) {
            return (id, false);
        }
        let id = self.keys.len();
        self.ids.insert(key.clone(), id);
        self.keys.push(key);
        (id, true)
    }
}

/// Parity to Büchi: a guessing copy plus, for every even color `c`, a copy
/// that only allows colors `≥ c` and accepts on color `c`.
pub fn dpa_to_nba(dpa: &Dpa) -> Nba {
    let n = dpa.num_states();
    let c0 = dpa.color(0);
    if (0..n).all(|s| dpa.color(s) == c0) {
        // Single color: the structure itself, accepting everywhere or nowhere.
        let mut out = Nba::new(dpa.alphabet().clone(), n);
        out.add_initial(dpa.initial());
        for s in 0..n {
            out.set_accepting(s, c0.is_multiple_of(2));
            for l in dpa.alphabet().letters() {
                out.add_transition(s, l, dpa.next(s, l));
            }
        }
        return out;
    }
    let mut evens: Vec<u32> = (0..n)
        .map(|s| dpa.color(s))
        .filter(|c| c % 2 == 0)
        .collect();
    evens.sort_unstable();
    evens.dedup();
    // Key: (state, None) for the guessing copy, (state, Some(c)) for copy c.
    let mut ex: Explorer<(usize, Option<u32>)> = Explorer::new();
    let mut out = Nba::new(dpa.alphabet().clone(), 0);
    let (i, _) = ex.intern((dpa.initial(), None));
    out.add_state(false);
    out.add_initial(i);
    let mut stack = vec![i];
    while let Some(id) = stack.pop() {
        let (q, copy) = ex.keys[id];
        for l in dpa.alphabet().letters() {
            let t = dpa.next(q, l);
            let tc = dpa.color(t);
            let mut targets = Vec::new();
            match copy {
                None => {
                    targets.push((t, None));
                    for &c in evens.iter().filter(|&&c| tc >= c) {
                        targets.push((t, Some(c)));
                    }
                }
                Some(c) if tc >= c => targets.push((t, Some(c))),
                Some(_) => {}
            }
            for key in targets {
                let (tid, fresh) = ex.intern(key);
                if fresh {
                    out.add_state(matches!(key.1, Some(c) if c == tc));
                    stack.push(tid);
                }
                out.add_transition(id, l, tid);
            }
        }
    }
    out
}

/// Product NBA accepting `L(a) ∩ L(b)`.
pub fn nba_intersect(a: &Nba, b: &Nba) -> Result<Nba> {
    a.alphabet().ensure_same(b.alphabet())?;
    if b.all_accepting() {
        return Ok(simple_product(a, b, false));
    }
    if a.all_accepting() {
        return Ok(simple_product(b, a, true));
    }
    // Flag 0 waits for an accepting state of `a`, flag 1 for one of `b`.
    let mut ex: Explorer<(usize, usize, u8)> = Explorer::new();
    let mut out = Nba::new(a.alphabet().clone(), 0);
    let mut stack = Vec::new();
    for &p in a.initial() {
        for &q in b.initial() {
            let (id, fresh) = ex.intern((p, q, 0));
            if fresh {
                out.add_state(a.is_accepting(p));
                stack.push(id);
            }
            out.add_initial(id);
        }
    }
    while let Some(id) = stack.pop() {
        let (p, q, f) = ex.keys[id];
        let nf = match f {
            0 if a.is_accepting(p) => 1,
            1 if b.is_accepting(q) => 0,
            _ => f,
        };
        for l in a.alphabet().letters() {
            for &p2 in a.successors(p, l) {
                for &q2 in b.successors(q, l) {
                    let (tid, fresh) = ex.intern((p2, q2, nf));
                    if fresh {
                        out.add_state(nf == 0 && a.is_accepting(p2));
                        stack.push(tid);
                    }
                    out.add_transition(id, l, tid);
                }
            }
        }
    }
    Ok(out)
}

/// Product where `all` accepts everywhere; acceptance comes from `main`.
/// `swapped` only restores the (main, all) vs (all, main) key order, which
/// keeps state numbering independent of argument order.
fn simple_product(main: &Nba, all: &Nba, swapped: bool) -> Nba {
    let mut ex: Explorer<(usize, usize)> = Explorer::new();
    let mut out = Nba::new(main.alphabet().clone(), 0);
    let mut stack = Vec::new();
    let key = |m: usize, o: usize| if swapped { (o, m) } else { (m, o) };
    for &p in main.initial() {
        for &q in all.initial() {
            let (id, fresh) = ex.intern(key(p, q));
            if fresh {
                out.add_state(main.is_accepting(p));
                stack.push((id, p, q));
            }
            out.add_initial(id);
        }
    }
    while let Some((id, p, q)) = stack.pop() {
        for l in main.alphabet().letters() {
            for &p2 in main.successors(p, l) {
                for &q2 in all.successors(q, l) {
                    let (tid, fresh) = ex.intern(key(p2, q2));
                    if fresh {
                        out.add_state(main.is_accepting(p2));
                        stack.push((tid, p2, q2));
                    }
                    out.add_transition(id, l, tid);
                }
            }
        }
    }
    out
}

/// Fails when some reachable, co-reachable state can loop forever on hidden
/// letters while visiting an accepting state (its words would have a finite
/// observation).
fn require_observation_live(a: &Nba, obs: &Observation) -> Result<()> {
    let hidden: Vec<Vec<usize>> = (0..a.num_states())
        .map(|s| {
            let mut v: Vec<usize> = a
                .alphabet()
                .letters()
                .filter(|&l| !obs.is_observable(l))
                .flat_map(|l| a.successors(s, l).iter().copied())
                .collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    for comp in tarjan_scc(&hidden) {
        if is_nontrivial(&hidden, &comp) && comp.iter().any(|&s| a.is_accepting(s)) {
            return Err(Error::NotObservationLive(format!(
                "an accepted word has only finitely many letters in {}",
                obs.observed_alphabet()
            )));
        }
    }
    Ok(())
}

/// NBA over the observed alphabet accepting `π_ob(L(a))`. Hidden letters are
/// treated as silent moves; the state flag records whether an accepting state
/// was passed since the previous observable letter.
pub fn nba_project(a: &Nba, obs: &Observation) -> Result<Nba> {
    a.alphabet().ensure_same(obs.alphabet())?;
    let a = a.trim();
    require_observation_live(&a, obs)?;
    let observed = obs.observed_alphabet();
    let hidden_letters: Vec<usize> = a
        .alphabet()
        .letters()
        .filter(|&l| !obs.is_observable(l))
        .collect();
    let visible_letters: Vec<usize> = a
        .alphabet()
        .letters()
        .filter(|&l| obs.is_observable(l))
        .collect();

    // closure[q] = (p, passed-accepting) reachable from q by hidden moves,
    // where the flag ignores q itself.
    let closure = |q: usize| -> Vec<(usize, bool)> {
        let mut seen = vec![[false; 2]; a.num_states()];
        let mut stack = vec![(q, false)];
        seen[q][0] = true;
        let mut out = Vec::new();
        while let Some((p, g)) = stack.pop() {
            out.push((p, g));
            for &l in &hidden_letters {
                for &t in a.successors(p, l) {
                    let ng = g || a.is_accepting(t);
                    if !seen[t][ng as usize] {
                        seen[t][ng as usize] = true;
                        stack.push((t, ng));
                    }
                }
            }
        }
        out
    };

    let mut ex: Explorer<(usize, bool)> = Explorer::new();
    let mut out = Nba::new(observed, 0);
    let mut stack = Vec::new();
    for &q in a.initial() {
        let key = (q, a.is_accepting(q));
        let (id, fresh) = ex.intern(key);
        if fresh {
            out.add_state(key.1);
            stack.push(id);
        }
        out.add_initial(id);
    }
    while let Some(id) = stack.pop() {
        let (q, _) = ex.keys[id];
        for (p, g) in closure(q) {
            for &l in &visible_letters {
                let ol = obs.project_letter(l).expect("visible");
                for &t in a.successors(p, l) {
                    let key = (t, g || a.is_accepting(t));
                    let (tid, fresh) = ex.intern(key);
                    if fresh {
                        out.add_state(key.1);
                        stack.push(tid);
                    }
                    out.add_transition(id, ol, tid);
                }
            }
        }
    }
    Ok(out.trim())
}

/// NBA over the full alphabet accepting the words with infinitely many
/// observable letters whose projection lies in `L(a)`.
pub fn nba_inverse_project(a: &Nba, alphabet: &Alphabet, obs: &Observation) -> Result<Nba> {
    alphabet.ensure_same(obs.alphabet())?;
    a.alphabet().ensure_same(&obs.observed_alphabet())?;
    // State (q, fresh): `fresh` iff the last letter read was observable.
    let n = a.num_states();
    let id = |q: usize, fresh: bool| 2 * q + fresh as usize;
    let mut out = Nba::new(alphabet.clone(), 2 * n);
    for q in 0..n {
        out.set_accepting(id(q, true), a.is_accepting(q));
        for f in [false, true] {
            for l in alphabet.letters() {
                match obs.project_letter(l) {
                    None => out.add_transition(id(q, f), l, id(q, false)),
                    Some(ol) => {
                        for &t in a.successors(q, ol) {
                            out.add_transition(id(q, f), l, id(t, true));
                        }
                    }
                }
            }
        }
    }
    for &q in a.initial() {
        out.add_initial(id(q, false));
    }
    Ok(out.trim())
}

/// Label-trace automaton of a model: a dispatch state reading the initial
/// label, then one state per model state entered on its own label. Every
/// state accepts.
pub fn trace_nba(model: &dyn LabeledGraph) -> Nba {
    let n = model.num_states();
    let mut out = Nba::new(model.alphabet().clone(), n + 1);
    for s in 0..=n {
        out.set_accepting(s, true);
    }
    let start = n;
    out.add_initial(start);
    let init = model.initial();
    out.add_transition(start, model.label(init), init);
    for s in 0..n {
        for t in model.successors(s) {
            out.add_transition(s, model.label(t), t);
        }
    }
    out.trim()
}

/// True iff every cycle reachable from the initial state passes through a
/// state with an observable label.
pub fn check_observation_liveness(model: &dyn LabeledGraph, obs: &Observation) -> bool {
    let adj = model.adjacency();
    let reach = reachable(&adj, [model.initial()]);
    let hidden: Vec<Vec<usize>> = (0..adj.len())
        .map(|s| {
            if reach[s] && !obs.is_observable(model.label(s)) {
                adj[s]
                    .iter()
                    .copied()
                    .filter(|&t| !obs.is_observable(model.label(t)))
                    .collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    tarjan_scc(&hidden)
        .iter()
        .all(|comp| !is_nontrivial(&hidden, comp))
}
