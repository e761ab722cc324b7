//! Exact truncated Laurent series in `q` and the elementary q-functions.

mod dense;
pub mod exponent;
pub mod qfunctions;
pub mod series;
pub mod zchar;

pub use exponent::QExp;
pub use qfunctions::{poch_inv, q_binomial, q_binomial_below, q_trinomial, supernomial2, Supernomial2};
pub use series::{Agreement, QSeries};
pub use zchar::QZChar;
