//! `sl_2` fusion-product characters, level-1 affine characters, the
//! Euler-Poincare multiplicity formula, and the graded characters of the
//! unitary series.

mod affine;
mod fusion;
mod grading;

pub use affine::{
    abf_finitized, abf_target, conformal_weight, euler_multiplicity, flipped_pi2_tensor,
    level1_char, pi2_fermionic_sum, verify_abf, verify_pi2pi3, AffineLevelData,
};
pub use fusion::{
    ch_mixed, ch_mixed_closed, ch_pi1_fused, ch_pi2_fused, verify_exact_sequence_chars, verify_pmn,
};
pub use grading::{
    graded_13_char, graded_13_char_euler, graded_sum, verify_grading, verify_i1_sector,
};
