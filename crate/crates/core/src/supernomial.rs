//! The supernomials `S_{m,l}(q)` and `S~_{m,l}(q)` as explicit nu-sums, and
//! their three-term recurrences as a checkable suite.

use serde::{Deserialize, Serialize};

use crate::qcore::{q_binomial, QExp, QSeries};
use crate::report::{CaseResult, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupernomialKind {
    Plain,
    Tilde,
}

impl SupernomialKind {
    pub fn eval(self, m: i64, l: i64) -> QSeries {
        match self {
            SupernomialKind::Plain => s_plain(m, l),
            SupernomialKind::Tilde => s_tilde(m, l),
        }
    }
}

fn nu_sum(m: i64, l: i64, exponent: impl Fn(i64) -> i64) -> QSeries {
    if m < 0 || l.abs() > m {
        return QSeries::zero();
    }
    let lo = 0.max((m - l + 1).div_euclid(2));
    let hi = m.min(m - l);
    let mut acc = QSeries::zero();
    for nu in lo..=hi {
        let term = &q_binomial(m, nu) * &q_binomial(nu, m - l - nu);
        acc = &acc + &term.shift(QExp::int(exponent(nu)));
    }
    acc
}

/// `S_{m,l}(q) = sum_nu q^{(nu+l-m)(nu+l) + nu(nu-m)} [m, nu] [nu, m-l-nu]`.
pub fn s_plain(m: i64, l: i64) -> QSeries {
    nu_sum(m, l, |nu| (nu + l - m) * (nu + l) + nu * (nu - m))
}

/// `S~_{m,l}(q)`: same sum with exponent `(nu+l-m)(nu+l-1) + nu(nu-m)`.
pub fn s_tilde(m: i64, l: i64) -> QSeries {
    nu_sum(m, l, |nu| (nu + l - m) * (nu + l - 1) + nu * (nu - m))
}

/// Source of `S` and `S~` values for [`verify_s_recurrences_with`].
pub trait SupernomialSource: Sync {
    fn s(&self, m: i64, l: i64) -> QSeries;
    fn st(&self, m: i64, l: i64) -> QSeries;
}

/// The defining nu-sums.
pub struct Exact;

impl SupernomialSource for Exact {
    fn s(&self, m: i64, l: i64) -> QSeries {
        s_plain(m, l)
    }
    fn st(&self, m: i64, l: i64) -> QSeries {
        s_tilde(m, l)
    }
}

fn q(e: i64) -> QExp {
    QExp::int(e)
}

/// Checks the reflection rules and the six three-term recurrences for every
/// `0 <= m < m_max`, `|l| <= m + 1`.
pub fn verify_s_recurrences(m_max: i64) -> SuiteReport {
    verify_s_recurrences_with(m_max, &Exact)
}

pub fn verify_s_recurrences_with<S: SupernomialSource>(m_max: i64, src: &S) -> SuiteReport {
    let grid: Vec<(i64, i64)> = (0..m_max)
        .flat_map(|m| (-(m + 1)..=m + 1).map(move |l| (m, l)))
        .collect();
    SuiteReport::new(
        "supernomial",
        "S_{m,-l} = S_{m,l}, S~_{m,-l} = q^l S~_{m,l}, and six three-term recurrences for S_{m+1,l}, S~_{m+1,l}",
    )
    .param("m_max", m_max)
    .run(grid, |(m, l)| {
        let s = |mm: i64, ll: i64| src.s(mm, ll);
        let st = |mm: i64, ll: i64| src.st(mm, ll);
        let id = |name: &str| format!("{name}/m={m}/l={l}");
        let sum3 = |a: QSeries, b: QSeries, c: QSeries| &(&a + &b) + &c;
        vec![
            CaseResult::compare(id("relS0-plain"), &s(m, -l), &s(m, l)),
            CaseResult::compare(id("relS0-tilde"), &st(m, -l), &st(m, l).shift(q(l))),
            CaseResult::compare(
                id("relS1"),
                &s(m + 1, l),
                &sum3(
                    s(m, l + 1).shift(q(-m - l - 1)),
                    s(m, l),
                    st(m, l - 1).shift(q(-m + l - 1)),
                ),
            ),
            CaseResult::compare(
                id("relS2"),
                &s(m + 1, l),
                &sum3(
                    s(m, l + 1).shift(q(-m - l - 1)),
                    st(m, l).shift(q(-m)),
                    s(m, l - 1),
                ),
            ),
            CaseResult::compare(
                id("relS3"),
                &s(m + 1, l),
                &sum3(
                    st(m, l + 1).shift(q(-m)),
                    s(m, l),
                    s(m, l - 1).shift(q(-m + l - 1)),
                ),
            ),
            CaseResult::compare(
                id("relS4"),
                &st(m + 1, l),
                &sum3(
                    s(m, l + 1).shift(q(-l)),
                    s(m, l),
                    st(m, l - 1).shift(q(-m + l - 1)),
                ),
            ),
            CaseResult::compare(
                id("relS5"),
                &st(m + 1, l),
                &sum3(s(m, l + 1).shift(q(-l)), st(m, l).shift(q(-m)), s(m, l - 1)),
            ),
            CaseResult::compare(
                id("relS6"),
                &st(m + 1, l),
                &sum3(
                    st(m, l + 1).shift(q(-m - l)),
                    s(m, l).shift(q(-l)),
                    s(m, l - 1),
                ),
            ),
        ]
    })
}

/// `S_{m,l}` for `0 <= m <= m_max`, `|l| <= m`, as `(m, l, series)` rows.
pub fn table(m_max: i64) -> Vec<(i64, i64, QSeries)> {
    (0..=m_max)
        .flat_map(|m| (-m..=m).map(move |l| (m, l, s_plain(m, l))))
        .collect()
}
