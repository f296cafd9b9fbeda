//! ω-automata: parity and Büchi automata, boolean operations, observation
//! projections and determinization.

mod determinize;
mod disclosure;
mod dpa;
mod lasso;
mod nba;
mod ops;

pub use determinize::{nba_determinize, DEFAULT_STATE_BUDGET};
pub use disclosure::{build_disclosure_dpa, build_disclosure_dpa_with_sizes, DisclosureSizes};
pub use dpa::{parse_dpa, write_dpa, Color, Dpa};
pub use lasso::Lasso;
pub use nba::Nba;
pub use ops::{
    check_observation_liveness, dpa_to_nba, nba_intersect, nba_inverse_project, nba_project,
    trace_nba,
};

/// Complement of a DPA (every color shifted by one).
pub fn dpa_complement(a: &Dpa) -> Dpa {
    a.complement()
}
