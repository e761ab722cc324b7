use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::exponent::QExp;
use super::series::{Agreement, QSeries};
use crate::error::Result;

/// Graded character `sum_alpha ch_q(V^alpha) z^alpha`, indexed by the
/// `h`-eigenvalue `alpha`.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QZChar {
    components: BTreeMap<i64, QSeries>,
}

impl QZChar {
    pub fn new() -> Self {
        QZChar::default()
    }

    /// `z^0` with coefficient 1.
    pub fn trivial() -> Self {
        let mut c = QZChar::new();
        c.insert(0, QSeries::one());
        c
    }

    /// Adds `s` to the component at `alpha`.
    pub fn insert(&mut self, alpha: i64, s: QSeries) {
        let merged = match self.components.remove(&alpha) {
            Some(old) => &old + &s,
            None => s,
        };
        if !(merged.is_exact() && merged.is_zero()) {
            self.components.insert(alpha, merged);
        }
    }

    /// Component at `alpha`; exact zero when absent.
    pub fn component(&self, alpha: i64) -> QSeries {
        self.components.get(&alpha).cloned().unwrap_or_default()
    }

    pub fn components(&self) -> impl Iterator<Item = (&i64, &QSeries)> {
        self.components.iter()
    }

    pub fn weights(&self) -> impl Iterator<Item = i64> + '_ {
        self.components.keys().copied()
    }

    pub fn map<F: Fn(&QSeries) -> QSeries>(&self, f: F) -> QZChar {
        let mut out = QZChar::new();
        for (a, s) in &self.components {
            out.insert(*a, f(s));
        }
        out
    }

    /// `ch_{q^{-1}, z}`: flips `q` in every component, weights unchanged.
    pub fn flip(&self) -> Result<QZChar> {
        let mut out = QZChar::new();
        for (a, s) in &self.components {
            out.insert(*a, s.flip()?);
        }
        Ok(out)
    }

    pub fn shift(&self, e: QExp) -> QZChar {
        self.map(|s| s.shift(e))
    }

    pub fn mul_series(&self, f: &QSeries) -> QZChar {
        self.map(|s| s * f)
    }

    /// Tensor product with the `(j+1)`-dimensional `sl_2` module placed in
    /// `q`-degree 0.
    pub fn tensor_pi(&self, j: u32) -> QZChar {
        let j = j as i64;
        let mut out = QZChar::new();
        for (a, s) in &self.components {
            for w in (-j..=j).step_by(2) {
                out.insert(a + w, s.clone());
            }
        }
        out
    }

    pub fn add(&self, other: &QZChar) -> QZChar {
        let mut out = self.clone();
        for (a, s) in &other.components {
            out.insert(*a, s.clone());
        }
        out
    }

    /// Dimension at `q = z = 1` (exact components only).
    pub fn total_at_one(&self) -> Result<BigInt> {
        let mut total = BigInt::default();
        for s in self.components.values() {
            total += s.eval_at_one()?;
        }
        Ok(total)
    }

    /// `component(alpha) == component(-alpha)` for every weight.
    pub fn is_symmetric(&self) -> bool {
        self.components
            .iter()
            .all(|(a, s)| self.component(-a).agreement(s).is_equal())
    }

    /// First disagreeing weight, compared on the common known range.
    pub fn agreement(&self, other: &QZChar) -> std::result::Result<(), (i64, Agreement)> {
        let keys: BTreeSet<i64> = self.weights().chain(other.weights()).collect();
        for a in keys {
            let ag = self.component(a).agreement(&other.component(a));
            if !ag.is_equal() {
                return Err((a, ag));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QZChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.components.iter()).finish()
    }
}
