use serde::{Deserialize, Serialize};

use super::fusion::ch_pi2_fused;
use crate::error::{Error, Result};
use crate::pathweights::ModelParams;
use crate::qcore::{poch_inv, q_binomial, QExp, QSeries, QZChar};
use crate::report::{CaseResult, SuiteReport};
use crate::supernomial::s_plain;
use crate::vircharacters::rocha_caridi;
use crate::window::quadratic_window;

/// Level `k`, highest weight `l` of an integrable `sl_2` affine module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineLevelData {
    pub k: i64,
    pub l: i64,
}

impl AffineLevelData {
    pub fn new(k: i64, l: i64) -> Result<Self> {
        if k < 1 || !(0..=k).contains(&l) {
            return Err(Error::OutOfRange(format!("need 0 <= l={l} <= k={k}, k >= 1")));
        }
        Ok(AffineLevelData { k, l })
    }

    /// `Delta(l, k) = l(l+2) / (4(k+2))`.
    pub fn conformal_weight(&self) -> QExp {
        conformal_weight(self.l, self.k)
    }
}

/// `Delta(l, k) = l(l+2) / (4(k+2))`.
pub fn conformal_weight(l: i64, k: i64) -> QExp {
    QExp::new(l * (l + 2), 4 * (k + 2))
}

/// `ch_{q,z} L_{i,1} = sum_n q^{n^2 + n i} z^{2n+i} / (q)_inf` below
/// `cutoff`, highest weight vector at `q^0`.
pub fn level1_char(i: i64, cutoff: QExp) -> Result<QZChar> {
    if i != 0 && i != 1 {
        return Err(Error::OutOfRange(format!("level-1 weight i={i} must be 0 or 1")));
    }
    let inv = poch_inv(None, cutoff);
    let (lo, hi) = quadratic_window(1, i, QExp::ZERO, cutoff);
    let mut c = QZChar::new();
    for n in lo..=hi {
        let e = QExp::int(n * n + n * i);
        if e < cutoff {
            c.insert(2 * n + i, inv.shift(e).truncate(cutoff));
        }
    }
    Ok(c)
}

/// `sum_m q^{m^2}/(q)_m ch_{q^{-1},z} pi_2^{*m}` below `cutoff`. Component
/// `2l` of the `m`-th term starts at `(m^2 + l^2)/2`, so `m^2 < 2 cutoff`
/// suffices.
pub fn pi2_fermionic_sum(cutoff: QExp, with_prefactor: bool) -> QZChar {
    let mut c = QZChar::new();
    let mut m = 0i64;
    while QExp::new(m * m, 2) < cutoff {
        let inv = poch_inv(Some(m as u64), cutoff);
        let pre = if with_prefactor { m * m } else { 0 };
        for l in -m..=m {
            let term = &s_plain(m, l).shift(QExp::int(pre)) * &inv;
            c.insert(2 * l, term);
        }
        m += 1;
    }
    // every component is known below the cutoff, including absent ones
    let n_max = (cutoff.ceil() as f64).sqrt() as i64 + 2;
    for alpha in (-2 * n_max..=2 * n_max).step_by(2) {
        c.insert(alpha, QSeries::zero_below(cutoff));
    }
    c
}

/// `ch_{q,z} L_{0,1} = sum_m q^{m^2}/(q)_m ch_{q^{-1},z} pi_2^{*m}` in every
/// `z`-component below `cutoff`.
pub fn verify_pi2pi3(cutoff: QExp) -> SuiteReport {
    let mut report = SuiteReport::new(
        "pi2pi3",
        "ch_{q,z} L_{0,1} = sum_{m>=0} q^{m^2}/(q)_m ch_{q^{-1},z} pi_2^{*m}",
    )
    .param("qmax", cutoff.to_string());
    let lhs = level1_char(0, cutoff).expect("i = 0");
    let rhs = pi2_fermionic_sum(cutoff, true);
    let weights: std::collections::BTreeSet<i64> = lhs.weights().chain(rhs.weights()).collect();
    let weights: Vec<i64> = weights.into_iter().collect();
    report = report.run(weights, |alpha| {
        vec![CaseResult::compare(
            format!("alpha={alpha}"),
            &lhs.component(alpha),
            &rhs.component(alpha),
        )]
    });
    report
}

/// `sum_lambda q^{-(k+2) lambda^2 + (l+1) lambda} (V^{2(k+2)lambda - l} - V^{2(k+2)lambda - l - 2})`.
/// Only weights present in `v` contribute, so the sum is finite.
pub fn euler_multiplicity(v: &QZChar, k: i64, l: i64, cutoff: Option<QExp>) -> Result<QSeries> {
    if !(0..=k).contains(&l) {
        return Err(Error::OutOfRange(format!("need 0 <= l={l} <= k={k}")));
    }
    let period = 2 * (k + 2);
    let mut acc = QSeries::zero();
    for (alpha, s) in v.components() {
        for (offset, sign) in [(l, 1i64), (l + 2, -1)] {
            // alpha = period * lambda - offset
            if (alpha + offset).rem_euclid(period) != 0 {
                continue;
            }
            let lambda = (alpha + offset) / period;
            let e = QExp::int(-(k + 2) * lambda * lambda + (l + 1) * lambda);
            let term = s.shift(e);
            acc = if sign == 1 { &acc + &term } else { &acc - &term };
        }
    }
    Ok(match cutoff {
        Some(c) => acc.truncate(c),
        None => acc,
    })
}

/// Finitised character at size `N`:
/// `q^{(l-j)^2/4} (sum_lambda q^{(k+2)(k+3)lambda^2 + ((k+3)(j+1) - (k+2)(l+1))lambda} [2N, (2N-l+j)/2 + (k+3)lambda]
///  - sum_lambda q^{(k+2)(k+3)lambda^2 - ((k+3)(j+1) + (k+2)(l+1))lambda + (j+1)(l+1)} [2N, (2N-l-j-2)/2 + (k+3)lambda])`.
/// Zero when `l - j` is odd.
pub fn abf_finitized(n: i64, k: i64, j: i64, l: i64) -> Result<QSeries> {
    if !(0..=k).contains(&j) || !(0..=k + 1).contains(&l) || n < 0 {
        return Err(Error::OutOfRange(format!(
            "need N >= 0, 0 <= j={j} <= k={k}, 0 <= l={l} <= k+1"
        )));
    }
    if (l - j).rem_euclid(2) != 0 {
        return Ok(QSeries::zero());
    }
    let quad = (k + 2) * (k + 3);
    let parts = [
        (1i64, (k + 3) * (j + 1) - (k + 2) * (l + 1), 0, (2 * n - l + j) / 2),
        (-1, -((k + 3) * (j + 1) + (k + 2) * (l + 1)), (j + 1) * (l + 1), (2 * n - l - j - 2) / 2),
    ];
    let mut acc = QSeries::zero();
    for (sign, lin, c, base) in parts {
        // 0 <= base + (k+3) lambda <= 2N
        let lo = (-base).div_euclid(k + 3) - 1;
        let hi = (2 * n - base).div_euclid(k + 3) + 1;
        for lambda in lo..=hi {
            let idx = base + (k + 3) * lambda;
            if !(0..=2 * n).contains(&idx) {
                continue;
            }
            let e = QExp::int(quad * lambda * lambda + lin * lambda + c);
            let term = q_binomial(2 * n, idx).shift(e);
            acc = if sign == 1 { &acc + &term } else { &acc - &term };
        }
    }
    Ok(acc.shift(QExp::new((l - j) * (l - j), 4)))
}

/// `q^{Delta(l,k+1) - Delta(j,k)} chi^{(k+2,k+3)}_{j+1,l+1}` below
/// `(l-j)^2/4 + degree + 1`, i.e. `q^{(l-j)^2/4}` times the normalised
/// character.
pub fn abf_target(k: i64, j: i64, l: i64, degree: i64) -> QSeries {
    let params = ModelParams::unitary(k).expect("k >= 1");
    let chi = rocha_caridi(&params, j + 1, l + 1, QExp::int(degree + 1));
    let shift = params.delta(j + 1, l + 1) + conformal_weight(l, k + 1) - conformal_weight(j, k);
    chi.shift(shift)
}

/// Finitised sums at size `n` against the characters, for every `(j, l)`
/// with `l = j (mod 2)`, compared through `degree` above the leading power.
pub fn verify_abf(k: i64, n: i64, degree: i64) -> SuiteReport {
    let pairs: Vec<(i64, i64)> = (0..=k)
        .flat_map(|j| (0..=k + 1).map(move |l| (j, l)))
        .filter(|(j, l)| (l - j) % 2 == 0)
        .collect();
    SuiteReport::new(
        "abf",
        "finitised binomial sum at size N = q^{Delta(l,k+1)-Delta(j,k)} chi^{(k+2,k+3)}_{j+1,l+1} in low degrees",
    )
    .param("k", k)
    .param("N", n)
    .param("degree", degree)
    .run(pairs, |(j, l)| {
        let target = abf_target(k, j, l, degree);
        let finite = abf_finitized(n, k, j, l).expect("indices in range");
        vec![CaseResult::compare(format!("j={j}/l={l}"), &finite, &target)]
    })
}

/// `ch_{q^{-1}} pi_2^{*m} (x) pi_j`, the input of the Euler route.
pub fn flipped_pi2_tensor(m: i64, j: u32) -> QZChar {
    ch_pi2_fused(m).flip().expect("exact").tensor_pi(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn conformal_weights() {
        assert_eq!(conformal_weight(0, 3), QExp::ZERO);
        assert_eq!(AffineLevelData::new(1, 1).unwrap().conformal_weight(), QExp::new(1, 4));
        assert!(AffineLevelData::new(1, 2).is_err());
    }

    #[test]
    fn level1_leading_terms() {
        let c = level1_char(0, QExp::int(6)).unwrap();
        assert_eq!(c.component(0).coeff_at(0), BigInt::from(1));
        assert_eq!(c.component(2).min_exponent(), Some(QExp::ONE));
        assert!(c.is_symmetric());
        assert!(level1_char(2, QExp::ONE).is_err());
    }

    #[test]
    fn euler_of_trivial() {
        let e = euler_multiplicity(&QZChar::trivial(), 1, 0, None).unwrap();
        assert_eq!(e, QSeries::one());
    }

    #[test]
    fn dropping_prefactor_breaks_identity() {
        let cutoff = QExp::int(8);
        let lhs = level1_char(0, cutoff).unwrap();
        assert!(lhs.agreement(&pi2_fermionic_sum(cutoff, true)).is_ok());
        assert!(lhs.agreement(&pi2_fermionic_sum(cutoff, false)).is_err());
    }

    #[test]
    fn abf_small() {
        assert_eq!(abf_finitized(0, 1, 0, 0).unwrap(), QSeries::one());
        let r = verify_abf(1, 12, 8);
        assert!(r.passed(), "{:?}", r.failures().next());
    }
}
