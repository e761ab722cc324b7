//! Exact q-series engine for Virasoro minimal-model characters, restricted
//! path configuration sums and `sl_2` fusion-product characters.

pub mod error;
pub mod fusionchar;
pub mod pathweights;
pub mod qcore;
pub mod report;
pub mod supernomial;
pub mod vircharacters;
mod window;

pub use error::{Error, Result};
pub use qcore::{QExp, QSeries, QZChar};
pub use report::{CaseResult, Status, SuiteReport};
