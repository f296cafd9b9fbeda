//! Worst-case disclosure of non-modal IDTMCs: interval closure, the
//! vertex-action product MDP, parity end components and exact maximal
//! reachability.

mod mdp;
mod mec;
mod reach;

use std::collections::BTreeMap;

use num_traits::Zero;

pub use mdp::{build_vertex_mdp, VertexMdp};
pub use mec::{mec_decompose, winning_mecs, winning_states, Mec};
pub use reach::max_reachability;

use crate::alphabet::Observation;
use crate::automata::{
    build_disclosure_dpa_with_sizes, check_observation_liveness, trace_nba, DisclosureSizes, Dpa,
    DEFAULT_STATE_BUDGET,
};
use crate::error::{Error, Result};
use crate::graph::reachable;
use crate::modal::modal_edges;
use crate::model::{Distribution, Idtmc, LabeledGraph, Pts};
use crate::rational::Rational;

/// The same IDTMC with every interval closed.
pub fn close_intervals(spec: &Idtmc) -> Idtmc {
    spec.closure()
}

/// Result of [`max_disclosure`].
#[derive(Debug, Clone)]
pub struct MaxDisclosure {
    pub value: Rational,
    /// Automaton of the disclosing traces.
    pub disclosure_dpa: Dpa,
    pub mdp: VertexMdp,
    /// Optimal memoryless policy on the product: for every product state a
    /// distribution over product states, a convex combination of its vertex
    /// actions.
    pub policy: Vec<Distribution>,
    /// Whether the specification had open bounds that were closed.
    pub closure_applied: bool,
    /// False when the value is positive and the optimal policy uses, on a
    /// reachable product state, a distribution lying on an open bound of the
    /// original specification; the value is then a supremum approached by
    /// valid schedulers.
    pub supremum_attained: bool,
    pub sizes: DisclosureSizes,
}

impl MaxDisclosure {
    /// The policy's row at product state `x`, as a distribution over model
    /// states.
    pub fn model_row(&self, x: usize) -> Distribution {
        Distribution::new(
            self.policy[x]
                .iter()
                .map(|(y, p)| (self.mdp.state(y).0, p.clone())),
        )
        .expect("product rows project to distributions")
    }

    /// The implementation obtained by scheduling `spec` with the witness
    /// policy, the automaton state serving as memory. Only the part reachable
    /// from the initial product state is kept.
    pub fn scheduled_pts(&self, spec: &Idtmc) -> Result<Pts> {
        let live = self.reachable();
        let mut ids = vec![usize::MAX; live.len()];
        let mut b = Pts::builder(spec.alphabet().clone());
        for x in (0..live.len()).filter(|&x| live[x]) {
            let (s, d) = self.mdp.state(x);
            let name = format!(
                "{}@{}",
                spec.state_name(s),
                self.disclosure_dpa.state_name(d)
            );
            ids[x] = b.state(name, spec.alphabet().name(spec.label(s)));
        }
        for x in (0..live.len()).filter(|&x| live[x]) {
            for (y, p) in self.policy[x].iter() {
                b.edge(ids[x], ids[y], p.clone());
            }
        }
        b.init(ids[self.mdp.initial()]);
        b.build()
    }

    fn reachable(&self) -> Vec<bool> {
        let succ: Vec<Vec<usize>> = self.policy.iter().map(|d| d.support().collect()).collect();
        reachable(&succ, [self.mdp.initial()])
    }
}

/// Supremum, over the schedulers of a non-modal `spec`, of the probability of
/// disclosing `phi` to an observer of `obs`.
pub fn max_disclosure(spec: &Idtmc, obs: &Observation, phi: &Dpa) -> Result<MaxDisclosure> {
    max_disclosure_with_budget(spec, obs, phi, DEFAULT_STATE_BUDGET)
}

pub fn max_disclosure_with_budget(
    spec: &Idtmc,
    obs: &Observation,
    phi: &Dpa,
    budget: usize,
) -> Result<MaxDisclosure> {
    spec.alphabet().ensure_same(obs.alphabet())?;
    spec.alphabet().ensure_same(phi.alphabet())?;
    spec.require_valid()?;
    let report = modal_edges(spec)?;
    if report.is_modal() {
        return Err(Error::ModalEdgesPresent {
            edges: report.modal_names(spec),
        });
    }
    if !check_observation_liveness(spec, obs) {
        return Err(Error::NotObservationLive(format!(
            "a reachable cycle of the model emits no letter of {}",
            obs.observed_alphabet()
        )));
    }
    // Without modal edges every scheduler yields the same trace set.
    let (v, sizes) = build_disclosure_dpa_with_sizes(&trace_nba(spec), phi, obs, budget)?;
    let closed = close_intervals(spec);
    let mdp = build_vertex_mdp(&closed, &v)?;

    let mut stay: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for mec in winning_mecs(&mdp) {
        for (x, acts) in mec.actions {
            stay.entry(x).or_insert(acts);
        }
    }
    let target: Vec<bool> = (0..mdp.num_states())
        .map(|x| stay.contains_key(&x))
        .collect();
    let (values, reach_policy) = max_reachability(&mdp, &target);

    let policy: Vec<Distribution> = (0..mdp.num_states())
        .map(|x| match stay.get(&x) {
            Some(acts) => mix(acts.iter().map(|&a| &mdp.actions(x)[a])),
            None => mdp.actions(x)[reach_policy[x]].clone(),
        })
        .collect();

    let mut result = MaxDisclosure {
        value: values[mdp.initial()].clone(),
        disclosure_dpa: v,
        mdp,
        policy,
        closure_applied: spec.has_open_bounds(),
        supremum_attained: true,
        sizes,
    };
    let live = result.reachable();
    // Every scheduler attains a zero value.
    result.supremum_attained = result.value.is_zero()
        || (0..live.len()).filter(|&x| live[x]).all(|x| {
            let s = result.mdp.state(x).0;
            let row = result.model_row(x);
            spec.row(s).iter().all(|(&t, iv)| iv.contains(&row.get(t)))
        });
    Ok(result)
}

/// Uniform mixture of distributions.
fn mix<'a>(ds: impl Iterator<Item = &'a Distribution>) -> Distribution {
    let ds: Vec<&Distribution> = ds.collect();
    let w = Rational::new(1.into(), (ds.len() as i64).into());
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for d in ds {
        for (t, p) in d.iter() {
            *acc.entry(t).or_insert_with(Rational::zero) += p * &w;
        }
    }
    Distribution::new(acc).expect("a mixture of distributions is one")
}
