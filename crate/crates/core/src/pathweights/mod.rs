//! Model parameters, the tau labelling, path weights, restricted paths and
//! configuration sums.

pub mod params;
pub mod path;
pub mod tau;
pub mod weights;
pub mod xsum;

pub use params::ModelParams;
pub use path::{count_paths, enumerate_paths, last_rigging_bound, Path, RiggedPath};
pub use tau::{verify_tau, LabelRule, TauLabel, TauTable};
pub use weights::{valid_pair, valid_triple, valid_triples, weight};
pub use xsum::{
    config_sum_x, config_sum_x_brute, f_function, verify_x_bruteforce, verify_xandf, xandf_rhs,
    XTable,
};
