//! Minimal-model characters, their `m`-graded decomposition and the
//! path-side identities.

pub mod gen;
pub mod rigged;
pub mod rocha;

pub use gen::{path_side_gen, verify_gen, verify_iands, verify_nonnegativity};
pub use rigged::{rigged_path_gf, verify_rigged, RiggedGf};
pub use rocha::{
    i_m, i_m_floor_bound, rocha2_rhs, rocha_caridi, verify_partition_expansion, verify_rocha2,
};
