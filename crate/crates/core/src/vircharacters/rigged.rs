//! Brute-force generating function of admissible rigged paths.

use super::rocha::rocha_caridi;
use crate::error::Result;
use crate::pathweights::{enumerate_paths, last_rigging_bound, weight, Path, TauTable};
use crate::qcore::{QExp, QSeries};
use crate::report::{CaseResult, SuiteReport};

/// Result of [`rigged_path_gf`].
pub struct RiggedGf {
    /// Unnormalised character, known below `Delta_{r,a} + qmax`.
    pub series: QSeries,
    /// Admissible rigged paths counted.
    pub count: u64,
    /// Largest path length tried.
    pub m_reached: usize,
    /// The length cap stopped the scan before three empty lengths in a row.
    pub hit_cap: bool,
}

struct Walk<'a> {
    path: &'a Path,
    weights: Vec<QExp>,
    /// `tail[i]` = `sum_{j=1}^{i-1} sum_{k=j}^{i-1} w_k`, the excess of
    /// `n_1 + .. + n_{i-1}` over `(i-1) n_i` at its minimum.
    tail: Vec<QExp>,
    cosets: Vec<QExp>,
    base: QExp,
    cutoff: QExp,
    terms: Vec<QExp>,
}

impl Walk<'_> {
    /// Chooses `n_i` given the partial sum of `n_{i+1}, .., n_m`.
    fn descend(&mut self, i: usize, lower: QExp, partial: QExp) {
        let mut n = lower.ceil_to_coset(self.cosets[i]);
        loop {
            let least = self.base + partial + n * (i as i64) + self.tail[i];
            if least >= self.cutoff {
                return;
            }
            if i == 1 {
                self.terms.push(self.base + partial + n);
            } else {
                let w = self.weights[i - 1];
                self.descend(i - 1, n + w, partial + n);
            }
            n += QExp::ONE;
        }
    }
}

/// Sums `q^{Delta_{r,b} + n_1 + .. + n_m}` over admissible rigged paths of
/// every length, keeping degrees below `Delta_{r,a} + qmax`. Lengths are
/// scanned until three consecutive ones contribute nothing.
pub fn rigged_path_gf(tau: &TauTable, r: i64, a: i64, qmax: i64) -> Result<RiggedGf> {
    let params = *tau.params();
    params.require_path_regime()?;
    let b = params.b_of(r, a)?;
    let pp = params.pp;
    let cutoff = params.delta(r, a) + QExp::int(qmax);
    let base = params.delta(r, b);
    let cap = (4 * qmax + 16) as usize;

    let mut series = QSeries::zero_below(cutoff);
    let mut count = 0u64;
    let mut empty_run = 0;
    let mut m = 0usize;
    let mut hit_cap = false;
    loop {
        let mut found = false;
        for path in enumerate_paths(a, b, m, pp) {
            let terms = if m == 0 {
                if base < cutoff { vec![base] } else { vec![] }
            } else {
                let s = path.steps();
                // weights[i] = w(s_{i-1}, s_i, s_{i+1}) for 1 <= i < m
                let mut weights = vec![QExp::ZERO; m];
                for i in 1..m {
                    weights[i] = weight(s[i - 1], s[i], s[i + 1], tau)?;
                }
                let mut tail = vec![QExp::ZERO; m + 1];
                for (i, slot) in tail.iter_mut().enumerate().skip(2) {
                    // n_j - n_i >= w_j + .. + w_{i-1}
                    let mut extra = QExp::ZERO;
                    let mut run = QExp::ZERO;
                    for w in weights[1..i].iter().rev() {
                        run += *w;
                        extra += run;
                    }
                    *slot = extra;
                }
                let mut cosets = vec![QExp::ZERO; m + 1];
                for i in 1..=m {
                    cosets[i] = params.delta(r, s[i - 1]) - params.delta(r, s[i]);
                }
                let mut walk = Walk {
                    path: &path,
                    weights,
                    tail,
                    cosets,
                    base,
                    cutoff,
                    terms: Vec::new(),
                };
                let lower = last_rigging_bound(&params, r, s[m - 1], s[m]);
                walk.descend(m, lower, QExp::ZERO);
                debug_assert!(walk.path.len() == m);
                walk.terms
            };
            for e in terms {
                found = true;
                count += 1;
                series = &series + &QSeries::monomial(1, e);
            }
        }
        empty_run = if found { 0 } else { empty_run + 1 };
        if empty_run >= 3 {
            break;
        }
        if m >= cap {
            hit_cap = true;
            break;
        }
        m += 1;
    }
    Ok(RiggedGf {
        series,
        count,
        m_reached: m,
        hit_cap,
    })
}

/// Rigged-path generating function against `q^{Delta_{r,a}}` times the
/// Rocha-Caridi sum, for every `(r, a)`.
pub fn verify_rigged(tau: &TauTable, qmax: i64) -> SuiteReport {
    let params = *tau.params();
    let pairs: Vec<(i64, i64)> = (1..params.p)
        .flat_map(|r| (1..params.pp).map(move |a| (r, a)))
        .collect();
    SuiteReport::new(
        "rigged",
        "chi_{r,a}(q) = sum over admissible rigged paths ending at b(r,a) of q^{Delta_{r,b} + sum n_i}",
    )
    .param("p", params.p)
    .param("pp", params.pp)
    .param("qmax", qmax)
    .run(pairs, |(r, a)| {
        let id = format!("r={r}/a={a}");
        let gf = match rigged_path_gf(tau, r, a, qmax) {
            Ok(gf) => gf,
            Err(e) => return vec![CaseResult::fail(id, e.to_string())],
        };
        let chi = rocha_caridi(&params, r, a, QExp::int(qmax)).shift(params.delta(r, a));
        let mut case = CaseResult::compare(id, &gf.series, &chi);
        case.detail = format!(
            "{}; {} rigged paths, lengths 0..={}{}",
            case.detail,
            gf.count,
            gf.m_reached,
            if gf.hit_cap { ", length cap reached" } else { "" }
        );
        vec![case]
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathweights::{ModelParams, RiggedPath};

    #[test]
    fn highest_weight_term() {
        let params = ModelParams::new(4, 5).unwrap();
        let tau = TauTable::new(params).unwrap();
        for r in 1..4 {
            for a in 1..5 {
                let gf = rigged_path_gf(&tau, r, a, 4).unwrap();
                assert_eq!(gf.series.min_exponent(), Some(params.delta(r, a)), "r={r} a={a}");
                assert_eq!(gf.series.coeff(params.delta(r, a)).unwrap(), 1.into());
            }
        }
    }

    #[test]
    fn ising_vacuum_small() {
        let params = ModelParams::new(3, 4).unwrap();
        let tau = TauTable::new(params).unwrap();
        let gf = rigged_path_gf(&tau, 1, 1, 12).unwrap();
        assert!(gf.series.agreement(&rocha_caridi(&params, 1, 1, QExp::int(12))).is_equal());
        assert!(!gf.hit_cap);
    }

    #[test]
    fn minimal_rigging_is_admissible() {
        let params = ModelParams::new(3, 4).unwrap();
        let tau = TauTable::new(params).unwrap();
        let path = Path::new(vec![1, 3, 1], 4).unwrap();
        let rp = RiggedPath::new(path, vec![QExp::new(3, 2), QExp::new(1, 2)], 1).unwrap();
        assert!(rp.is_admissible(&params, &tau));
    }
}
