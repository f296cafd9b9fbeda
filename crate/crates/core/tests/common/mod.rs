#![allow(dead_code)]

use opacity_core::automata::{parse_dpa, Dpa};
use opacity_core::{parse_model, Idtmc, Model, Pts};

pub fn pts(text: &str) -> Pts {
    match parse_model(text).expect("fixture parses") {
        Model::Pts(p) => p,
        Model::Idtmc(_) => panic!("expected a pts"),
    }
}

pub fn idtmc(text: &str) -> Idtmc {
    match parse_model(text).expect("fixture parses") {
        Model::Idtmc(m) => m,
        Model::Pts(_) => panic!("expected an idtmc"),
    }
}

pub fn dpa(text: &str) -> Dpa {
    parse_dpa(text).expect("fixture parses")
}

pub const FIG1A: &str = include_str!("../../../../models/fig1a.pts");
pub const FIG1B: &str = include_str!("../../../../models/fig1b.pts");
pub const FIG1C: &str = include_str!("../../../../models/fig1c.idtmc");
pub const FIG2S0: &str = include_str!("../../../../models/fig2s0.idtmc");
pub const FIG2A1: &str = include_str!("../../../../models/fig2a1.pts");
pub const FIG2A2: &str = include_str!("../../../../models/fig2a2.pts");
pub const FIG3S1: &str = include_str!("../../../../models/fig3s1.idtmc");
pub const FIG3S2: &str = include_str!("../../../../models/fig3s2.idtmc");
pub const FIG4A: &str = include_str!("../../../../models/fig4a.idtmc");
pub const FIG4B: &str = include_str!("../../../../models/fig4b.idtmc");
pub const FIG4C: &str = include_str!("../../../../models/fig4c.pts");
pub const FIG4D: &str = include_str!("../../../../models/fig4d.pts");
pub const PHI_B: &str = include_str!("../../../../models/phi_b.dpa");
pub const SECRET_C: &str = include_str!("../../../../models/secret_c.dpa");
