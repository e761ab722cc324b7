//! Configuration sums `X_{a,b,c,m}` by recurrence, by brute force and by the
//! alternating closed form in `f`.

use std::collections::BTreeMap;

use super::path::enumerate_paths;
use super::tau::{TauLabel, TauTable};
use super::weights::{valid_pair, valid_triple, weight};
use crate::qcore::{QExp, QSeries};
use crate::report::{CaseResult, SuiteReport};
use crate::supernomial::{s_plain, s_tilde};

/// `X_{a,b,c,m}` for a fixed start `a`, all `(b, c)` and `m <= m_max`.
pub struct XTable {
    a: i64,
    rows: Vec<BTreeMap<(i64, i64), QSeries>>,
}

impl XTable {
    pub fn new(a: i64, m_max: usize, tau: &TauTable) -> Self {
        let pp = tau.params().pp;
        let pairs: Vec<(i64, i64)> = (1..pp)
            .flat_map(|b| [b - 2, b, b + 2].into_iter().map(move |c| (b, c)))
            .filter(|&(b, c)| valid_pair(b, c, pp))
            .collect();
        let mut first = BTreeMap::new();
        if (1..pp).contains(&a) {
            for &(b, c) in &pairs {
                if b == a {
                    first.insert((b, c), QSeries::one());
                }
            }
        }
        let mut rows = vec![first];
        for m in 0..m_max {
            let prev = &rows[m];
            let mut next = BTreeMap::new();
            for &(b, c) in &pairs {
                let mut acc = QSeries::zero();
                for d in [b - 2, b, b + 2] {
                    if !valid_triple(d, b, c, pp) {
                        continue;
                    }
                    if let Some(x) = prev.get(&(d, b)) {
                        let w = weight(d, b, c, tau).expect("valid triple");
                        acc = &acc + &x.shift(w * (m as i64 + 1));
                    }
                }
                if !acc.is_zero() {
                    next.insert((b, c), acc);
                }
            }
            rows.push(next);
        }
        XTable { a, rows }
    }

    pub fn start(&self) -> i64 {
        self.a
    }

    pub fn m_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, b: i64, c: i64, m: usize) -> QSeries {
        self.rows[m].get(&(b, c)).cloned().unwrap_or_default()
    }
}

/// `X_{a,b,c,m}` by the recurrence.
pub fn config_sum_x(a: i64, b: i64, c: i64, m: usize, tau: &TauTable) -> QSeries {
    XTable::new(a, m, tau).get(b, c, m)
}

/// `X_{a,b,c,m}` as `sum q^{E(s)}` over paths `(s_0, .., s_{m+1})` with
/// `s_0 = a`, `s_m = b`, `s_{m+1} = c`.
pub fn config_sum_x_brute(a: i64, b: i64, c: i64, m: usize, tau: &TauTable) -> QSeries {
    let pp = tau.params().pp;
    if !valid_pair(b, c, pp) {
        return QSeries::zero();
    }
    let mut acc = QSeries::zero();
    for path in enumerate_paths(a, b, m, pp) {
        let mut steps = path.steps().to_vec();
        steps.push(c);
        let extended = super::path::Path::new(steps, pp).expect("extension is valid");
        acc = &acc + &QSeries::monomial(1, extended.energy(tau));
    }
    acc
}

/// `f_{a,b,c,m}` with `l = (b - a)/2`; zero outside its defining cases.
pub fn f_function(a: i64, b: i64, c: i64, m: i64, tau: &TauTable) -> QSeries {
    let pm = tau.params();
    let pp = pm.pp;
    if !(1..pp).contains(&b) || !(1..pp).contains(&c) || (a - b).rem_euclid(2) != 0 {
        return QSeries::zero();
    }
    let l = (b - a) / 2;
    if m < 0 || l.abs() > m {
        return QSeries::zero();
    }
    let inv_t = pm.inv_t();
    let base = QExp::int(m * m - l * l);
    match c - b {
        2 => {
            let e = inv_t * (l * (l + 1)) + base + pm.frac_over_t(b + 1) * (m - l);
            let s = if tau.label(b + 2) == TauLabel::OneA {
                s_tilde(m, l)
            } else {
                s_plain(m, l)
            };
            s.shift(e)
        }
        0 => {
            let e = inv_t * (l * (l - 1)) + base + (QExp::ONE - pm.frac_over_t(b - 1)) * l;
            if tau.label(b) == TauLabel::Two {
                s_tilde(m, l).shift(e + QExp::int(l))
            } else {
                s_plain(m, l).shift(e + QExp::int(m))
            }
        }
        -2 => {
            let e = inv_t * (l * (l - 1)) + base + (QExp::ONE - pm.frac_over_t(b - 1)) * (m + l);
            if tau.label(b - 2) == TauLabel::OneB {
                s_tilde(m, l).shift(e + QExp::int(l))
            } else {
                s_plain(m, l).shift(e)
            }
        }
        _ => QSeries::zero(),
    }
}

/// `sum_{eps = +-} eps sum_n f_{eps (a + 2 p' n), b, c, m}`. Only `n` with
/// `|l| <= m` can contribute, so the window is exact.
pub fn xandf_rhs(a: i64, b: i64, c: i64, m: i64, tau: &TauTable) -> QSeries {
    let pp = tau.params().pp;
    let period = 2 * pp;
    let mut acc = QSeries::zero();
    for eps in [1i64, -1] {
        // need |b - eps (a + 2 p' n)| <= 2m
        let centre = eps * b - a;
        let lo = (centre - 2 * m).div_euclid(period) - 1;
        let hi = (centre + 2 * m).div_euclid(period) + 1;
        for n in lo..=hi {
            let shifted = eps * (a + period * n);
            if (b - shifted).abs() > 2 * m {
                continue;
            }
            let f = f_function(shifted, b, c, m, tau);
            acc = if eps == 1 { &acc + &f } else { &acc - &f };
        }
    }
    acc
}

fn valid_xandf_triples(tau: &TauTable) -> Vec<(i64, i64, i64)> {
    let pp = tau.params().pp;
    let mut out = Vec::new();
    for a in 1..pp {
        for b in (1..pp).filter(|b| (a - b) % 2 == 0) {
            for c in [b - 2, b, b + 2] {
                if valid_pair(b, c, pp) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Recurrence `X` against the alternating `f` sum for every valid
/// `(a, b, c)` and `0 <= m <= m_max`.
pub fn verify_xandf(tau: &TauTable, m_max: usize) -> SuiteReport {
    let pm = *tau.params();
    let starts: Vec<i64> = (1..pm.pp).collect();
    let triples = valid_xandf_triples(tau);
    SuiteReport::new(
        "xandf",
        "X_{a,b,c,m} = sum_{eps=+-} eps sum_n f_{eps(a+2p'n),b,c,m}",
    )
    .param("p", pm.p)
    .param("pp", pm.pp)
    .param("mmax", m_max as i64)
    .run(starts, |a| {
        let table = XTable::new(a, m_max, tau);
        let mut cases = Vec::new();
        for &(ta, b, c) in triples.iter().filter(|t| t.0 == a) {
            for m in 0..=m_max {
                let lhs = table.get(b, c, m);
                let rhs = xandf_rhs(ta, b, c, m as i64, tau);
                cases.push(CaseResult::compare(
                    format!("a={ta}/b={b}/c={c}/m={m}"),
                    &lhs,
                    &rhs,
                ));
            }
        }
        cases
    })
}

/// Recurrence `X` against brute-force path enumeration.
pub fn verify_x_bruteforce(tau: &TauTable, m_max: usize) -> SuiteReport {
    let pm = *tau.params();
    let starts: Vec<i64> = (1..pm.pp).collect();
    let triples = valid_xandf_triples(tau);
    SuiteReport::new("xbrute", "X_{a,b,c,m} by recurrence = sum over paths of q^E")
        .param("p", pm.p)
        .param("pp", pm.pp)
        .param("mmax", m_max as i64)
        .run(starts, |a| {
            let table = XTable::new(a, m_max, tau);
            let mut cases = Vec::new();
            for &(_, b, c) in triples.iter().filter(|t| t.0 == a) {
                for m in 0..=m_max {
                    cases.push(CaseResult::compare(
                        format!("a={a}/b={b}/c={c}/m={m}"),
                        &table.get(b, c, m),
                        &config_sum_x_brute(a, b, c, m, tau),
                    ));
                }
            }
            cases
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathweights::params::ModelParams;

    fn ising() -> TauTable {
        TauTable::new(ModelParams::new(3, 4).unwrap()).unwrap()
    }

    #[test]
    fn initial_condition() {
        let tau = ising();
        assert_eq!(config_sum_x(1, 1, 3, 0, &tau), QSeries::one());
        assert!(config_sum_x(1, 3, 1, 0, &tau).is_zero());
        assert!(config_sum_x(1, 1, 1, 0, &tau).is_zero());
    }

    #[test]
    fn ising_example() {
        let tau = ising();
        let q = QSeries::monomial(1, QExp::ONE);
        assert_eq!(config_sum_x(1, 3, 1, 1, &tau), q);
        assert_eq!(config_sum_x_brute(1, 3, 1, 1, &tau), q);
        assert_eq!(xandf_rhs(1, 3, 1, 1, &tau), q);
    }

    #[test]
    fn f_trivial_cases() {
        let tau = TauTable::new(ModelParams::new(4, 7).unwrap()).unwrap();
        assert_eq!(f_function(3, 3, 5, 0, &tau), QSeries::one());
        assert!(f_function(1, 5, 5, 1, &tau).is_zero());
    }

    #[test]
    fn small_sweeps() {
        for (p, pp) in [(3, 4), (4, 7), (5, 8)] {
            let tau = TauTable::new(ModelParams::new(p, pp).unwrap()).unwrap();
            let r = verify_xandf(&tau, 3);
            assert!(r.passed(), "{:?}", r.failures().next());
            let r = verify_x_bruteforce(&tau, 3);
            assert!(r.passed(), "{:?}", r.failures().next());
        }
    }
}
