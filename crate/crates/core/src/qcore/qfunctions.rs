//! Elementary q-functions: `1/(q)_m`, Gaussian binomials, q-trinomials and
//! the two-row q-supernomial `[L1, L2; a]`.

use std::collections::HashMap;

use num_bigint::BigInt;

use super::dense;
use super::exponent::QExp;
use super::series::QSeries;
use crate::error::{Error, Result};

/// `1/(q)_m` below `cutoff`; `m = None` is `1/(q)_inf`. `m = Some(0)` gives
/// the exact constant 1.
pub fn poch_inv(m: Option<u64>, cutoff: QExp) -> QSeries {
    if m == Some(0) {
        return QSeries::one();
    }
    let len = cutoff.ceil().max(0) as usize;
    QSeries::from_dense(dense::poch_inv(m, len), 0, Some(cutoff))
}

/// `(q^{L-a+1})_a / (q)_a`, zero for `a < 0` or `0 <= L < a`.
///
/// Negative `L` uses `(1 - q^{-n}) = -q^{-n}(1 - q^n)`, which gives
/// `(-1)^a q^{aL - a(a-1)/2} [a-L-1, a]`.
pub fn q_binomial(l: i64, a: i64) -> QSeries {
    if a < 0 || (l >= 0 && a > l) {
        return QSeries::zero();
    }
    if l >= 0 {
        return QSeries::from_dense(dense::qbinomial(l as u64, a as u64, None), 0, None);
    }
    let base = q_binomial(a - l - 1, a);
    let sign = if a % 2 == 0 { 1 } else { -1 };
    base.shift(QExp::int(a * l - a * (a - 1) / 2))
        .scale(&BigInt::from(sign))
}

/// `[L, a]` truncated below `cutoff`, for large `L` with a short window.
pub fn q_binomial_below(l: u64, a: u64, cutoff: QExp) -> QSeries {
    let len = cutoff.ceil().max(0) as usize;
    QSeries::from_dense(dense::qbinomial(l, a, Some(len)), 0, Some(cutoff))
}

/// `(q)_n / ((q)_a (q)_b (q)_c)` for `a + b + c = n`; zero if an index is
/// negative.
pub fn q_trinomial(n: i64, a: i64, b: i64, c: i64) -> Result<QSeries> {
    if a + b + c != n {
        return Err(Error::TrinomialSum { n, a, b, c });
    }
    if a < 0 || b < 0 || c < 0 {
        return Ok(QSeries::zero());
    }
    Ok(&q_binomial(n, a) * &q_binomial(n - a, b))
}

/// Memoised two-row supernomials `[L1, L2; a]_q` for even `L1`.
///
/// `[L1, L2; a]` is reduced to `L1 = 0` by
/// `[L1, L2; a] = q^{L1+L2-1} [L1-2, L2; a] + [L1-2, L2+1; a]`. The row
/// `[0, N; a]` is recovered from `[2N, 0; a] = [2N, a+N]_q` by solving the
/// triangular system `[2N, 0; a] = sum_j q^{(N-j)N} [N, j] [0, j; a]`.
#[derive(Default)]
pub struct Supernomial2 {
    memo: HashMap<(i64, i64, i64), QSeries>,
}

impl Supernomial2 {
    pub fn new() -> Self {
        Supernomial2::default()
    }

    /// `[L1, L2; a]`. `a` is a half-integer in general; for even `L1` only
    /// integer `a` can be nonzero.
    pub fn get(&mut self, l1: i64, l2: i64, a: QExp) -> Result<QSeries> {
        if l1 < 0 || l2 < 0 {
            return Err(Error::Precondition(format!(
                "supernomial rows must be nonnegative, got ({l1}, {l2})"
            )));
        }
        if l1 % 2 != 0 {
            return Err(Error::Precondition(format!(
                "supernomial row L1={l1} must be even"
            )));
        }
        if !a.is_integer() {
            return Ok(QSeries::zero());
        }
        Ok(self.even(l1, l2, a.numer()))
    }

    fn even(&mut self, l1: i64, l2: i64, a: i64) -> QSeries {
        if a.abs() > l1 / 2 + l2 {
            return QSeries::zero();
        }
        if let Some(s) = self.memo.get(&(l1, l2, a)) {
            return s.clone();
        }
        let value = if l1 == 0 {
            self.bottom(l2, a)
        } else if l2 == 0 {
            q_binomial(l1, a + l1 / 2)
        } else {
            let first = self.even(l1 - 2, l2, a).shift(QExp::int(l1 + l2 - 1));
            &first + &self.even(l1 - 2, l2 + 1, a)
        };
        self.memo.insert((l1, l2, a), value.clone());
        value
    }

    fn bottom(&mut self, n: i64, a: i64) -> QSeries {
        if n == 0 {
            return if a == 0 { QSeries::one() } else { QSeries::zero() };
        }
        let mut acc = q_binomial(2 * n, a + n);
        for j in 0..n {
            let lower = self.even(0, j, a);
            if lower.is_zero() {
                continue;
            }
            let term = (&q_binomial(n, j) * &lower).shift(QExp::int((n - j) * n));
            acc = &acc - &term;
        }
        acc
    }
}

/// One-shot `[L1, L2; a]_q`; see [`Supernomial2`].
pub fn supernomial2(l1: i64, l2: i64, a: QExp) -> Result<QSeries> {
    Supernomial2::new().get(l1, l2, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> QSeries {
        QSeries::from_dense(cs.iter().map(|&c| BigInt::from(c)).collect(), 0, None)
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(poch_inv(Some(0), QExp::int(10)), QSeries::one());
        assert_eq!(
            poch_inv(Some(1), QExp::int(4)),
            poly(&[1, 1, 1, 1]).truncate(QExp::int(4))
        );
        assert_eq!(poch_inv(None, QExp::int(6)).coeff_at(5), BigInt::from(7));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(q_binomial(7, 0), QSeries::one());
        assert_eq!(q_binomial(4, 2), poly(&[1, 1, 2, 1, 1]));
        assert!(q_binomial(2, 3).is_zero());
        assert!(q_binomial(3, -1).is_zero());
    }

    #[test]
    fn binomial_negative_top() {
        // [-1, a] = (1 - q^{-a}) ... / (q)_a = (-1)^a q^{-a(a+1)/2}
        assert_eq!(q_binomial(-1, 2), QSeries::monomial(1, QExp::int(-3)));
        assert_eq!(q_binomial(-1, 1), QSeries::monomial(-1, QExp::int(-1)));
    }

    #[test]
    fn trinomial_examples() {
        assert_eq!(q_trinomial(3, 3, 0, 0).unwrap(), QSeries::one());
        assert_eq!(q_trinomial(2, 1, 1, 0).unwrap(), poly(&[1, 1]));
        assert_eq!(q_trinomial(3, 1, 1, 1).unwrap(), &poly(&[1, 1, 1]) * &poly(&[1, 1]));
        assert!(q_trinomial(3, 1, 1, 0).is_err());
    }

    #[test]
    fn supernomial2_examples() {
        assert_eq!(supernomial2(0, 0, QExp::ZERO).unwrap(), QSeries::one());
        assert!(supernomial2(0, 0, QExp::ONE).unwrap().is_zero());
        assert_eq!(supernomial2(2, 0, QExp::ZERO).unwrap(), poly(&[1, 1]));
        assert_eq!(supernomial2(0, 2, QExp::ZERO).unwrap(), poly(&[1, 1, 1]));
        assert!(supernomial2(1, 0, QExp::new(1, 2)).is_err());
    }

    #[test]
    fn supernomial2_bottom_row_symmetric() {
        let mut t = Supernomial2::new();
        for m in 0..=8 {
            for a in 0..=m {
                let plus = t.get(0, m, QExp::int(a)).unwrap();
                let minus = t.get(0, m, QExp::int(-a)).unwrap();
                assert_eq!(plus, minus, "m={m} a={a}");
            }
        }
    }
}
