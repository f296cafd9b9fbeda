use crate::alphabet::Observation;
use crate::automata::{
    dpa_to_nba, nba_determinize, nba_intersect, nba_inverse_project, nba_project, Dpa, Nba,
};
use crate::error::Result;

/// Sizes of the intermediate automata built by [`build_disclosure_dpa`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DisclosureSizes {
    pub traces: usize,
    pub outside_secret: usize,
    pub projected: usize,
    pub ambiguous_dpa: usize,
    pub disclosing_nba: usize,
    pub disclosing_dpa: usize,
}

/// DPA for the disclosing traces: those in the secret whose observation is not
/// shared by any trace outside it.
pub fn build_disclosure_dpa(
    traces: &Nba,
    phi: &Dpa,
    obs: &Observation,
    budget: usize,
) -> Result<Dpa> {
    build_disclosure_dpa_with_sizes(traces, phi, obs, budget).map(|(d, _)| d)
}

pub fn build_disclosure_dpa_with_sizes(
    traces: &Nba,
    phi: &Dpa,
    obs: &Observation,
    budget: usize,
) -> Result<(Dpa, DisclosureSizes)> {
    traces.alphabet().ensure_same(phi.alphabet())?;
    traces.alphabet().ensure_same(obs.alphabet())?;
    let mut sizes = DisclosureSizes {
        traces: traces.num_states(),
        ..Default::default()
    };
    let outside = nba_intersect(traces, &dpa_to_nba(&phi.complement()))?.trim();
    sizes.outside_secret = outside.num_states();
    let projected = nba_project(&outside, obs)?;
    sizes.projected = projected.num_states();
    let ambiguous = nba_inverse_project(&projected, traces.alphabet(), obs)?;
    let ambiguous = nba_determinize(&ambiguous, budget)?;
    sizes.ambiguous_dpa = ambiguous.num_states();
    let inside = nba_intersect(traces, &dpa_to_nba(phi))?.trim();
    let disclosing = nba_intersect(&inside, &dpa_to_nba(&ambiguous.complement()))?.trim();
    sizes.disclosing_nba = disclosing.num_states();
    let dpa = nba_determinize(&disclosing, budget)?;
    sizes.disclosing_dpa = dpa.num_states();
    Ok((dpa, sizes))
}
