use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::automata::{Color, Dpa};
use crate::error::{Error, Result};
use crate::model::{polytope_vertices, Distribution, Idtmc, LabeledGraph};
use crate::rational::Rational;

/// A finite MDP whose actions are distributions over its own states. When
/// built from an IDTMC and a DPA, states are product pairs and the actions of
/// `(s, d)` are the closure vertices of `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMdp {
    states: Vec<(usize, usize)>,
    actions: Vec<Vec<Distribution>>,
    colors: Vec<Color>,
    init: usize,
}

impl VertexMdp {
    /// An MDP given directly by its actions. State `i` is recorded as the
    /// pair `(i, 0)`.
    pub fn from_actions(
        actions: Vec<Vec<Distribution>>,
        colors: Vec<Color>,
        init: usize,
    ) -> Result<Self> {
        let n = actions.len();
        let bad = |msg: String| Err(Error::InvalidAutomaton(msg));
        if colors.len() != n {
            return bad(format!("{} colors for {n} states", colors.len()));
        }
        if init >= n {
            return bad(format!("initial state {init} out of range"));
        }
        for (s, acts) in actions.iter().enumerate() {
            if acts.is_empty() {
                return bad(format!("state {s} has no action"));
            }
            if acts.iter().any(|d| d.support().any(|t| t >= n)) {
                return bad(format!("an action of state {s} leaves the state space"));
            }
        }
        Ok(VertexMdp {
            states: (0..n).map(|i| (i, 0)).collect(),
            actions,
            colors,
            init,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn initial(&self) -> usize {
        self.init
    }

    /// The `(model state, automaton state)` pair behind a state.
    pub fn state(&self, x: usize) -> (usize, usize) {
        self.states[x]
    }

    pub fn actions(&self, x: usize) -> &[Distribution] {
        &self.actions[x]
    }

    pub fn color(&self, x: usize) -> Color {
        self.colors[x]
    }

    pub fn num_actions(&self) -> usize {
        self.actions.iter().map(Vec::len).sum()
    }

    /// Successors under any action.
    pub fn graph(&self) -> Vec<Vec<usize>> {
        self.actions
            .iter()
            .map(|acts| {
                let mut succ: Vec<usize> = acts.iter().flat_map(|d| d.support()).collect();
                succ.sort_unstable();
                succ.dedup();
                succ
            })
            .collect()
    }
}

/// Product of a closed IDTMC with a DPA, restricted to the part reachable
/// from `(init, δ(d0, L(init)))`. The automaton reads the label of every state
/// entered.
pub fn build_vertex_mdp(spec: &Idtmc, v: &Dpa) -> Result<VertexMdp> {
    spec.alphabet().ensure_same(v.alphabet())?;
    let vertices = (0..spec.num_states())
        .map(|s| polytope_vertices(spec, s))
        .collect::<Result<Vec<_>>>()?;
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut states = Vec::new();
    let init = (
        spec.initial(),
        v.next(v.initial(), spec.label(spec.initial())),
    );
    ids.insert(init, 0);
    states.push(init);
    let mut actions = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let (s, d) = states[next];
        let mut acts = Vec::new();
        for vertex in &vertices[s] {
            let mut weights: BTreeMap<usize, Rational> = BTreeMap::new();
            for (t, p) in vertex.iter() {
                let key = (t, v.next(d, spec.label(t)));
                let id = *ids.entry(key).or_insert_with(|| {
                    states.push(key);
                    states.len() - 1
                });
                *weights.entry(id).or_insert_with(Rational::zero) += p;
            }
            acts.push(Distribution::new(weights)?);
        }
        actions.push(acts);
        next += 1;
    }
    let colors = states.iter().map(|&(_, d)| v.color(d)).collect();
    Ok(VertexMdp {
        states,
        actions,
        colors,
        init: 0,
    })
}
