use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::dense;
use super::exponent::QExp;
use crate::error::{Error, Result};

/// Sparse Laurent series in `q` with rational exponents and big-integer
/// coefficients.
///
/// A series is either *exact* (`cutoff() == None`, a finite Laurent
/// polynomial) or *truncated*: every coefficient strictly below the cutoff is
/// known and nothing at or above it is stored. Zero coefficients are never
/// stored.
///
/// `PartialEq` is structural. Use [`QSeries::agreement`] to compare two
/// series on their common known range.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct QSeries {
    terms: BTreeMap<QExp, BigInt>,
    cutoff: Option<QExp>,
}

/// Outcome of comparing two series on the range where both are known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Agreement {
    /// Coefficients agree for every exponent below `below` (`None`: both
    /// sides exact and identical).
    Equal { below: Option<QExp> },
    Mismatch {
        exponent: QExp,
        left: BigInt,
        right: BigInt,
    },
}

impl Agreement {
    pub fn is_equal(&self) -> bool {
        matches!(self, Agreement::Equal { .. })
    }
}

impl fmt::Display for Agreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Agreement::Equal { below: None } => write!(f, "equal (exact)"),
            Agreement::Equal { below: Some(c) } => write!(f, "equal below q^{c}"),
            Agreement::Mismatch {
                exponent,
                left,
                right,
            } => write!(f, "first mismatch at q^{exponent}: {left} != {right}"),
        }
    }
}

fn min_cutoff(a: Option<QExp>, b: Option<QExp>) -> Option<QExp> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl QSeries {
    pub fn zero() -> Self {
        QSeries::default()
    }

    pub fn one() -> Self {
        QSeries::monomial(1, QExp::ZERO)
    }

    /// `0 + O(q^cutoff)`.
    pub fn zero_below(cutoff: QExp) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            cutoff: Some(cutoff),
        }
    }

    pub fn monomial(coeff: impl Into<BigInt>, exp: QExp) -> Self {
        QSeries::from_terms([(exp, coeff.into())], None)
    }

    /// Collects terms, summing repeated exponents and dropping zeros and
    /// anything at or above `cutoff`.
    pub fn from_terms<I>(terms: I, cutoff: Option<QExp>) -> Self
    where
        I: IntoIterator<Item = (QExp, BigInt)>,
    {
        let mut out = QSeries {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (e, c) in terms {
            out.add_term(e, c);
        }
        out
    }

    /// Series `sum_i coeffs[i] q^(offset + i)`.
    pub fn from_dense(coeffs: Vec<BigInt>, offset: i64, cutoff: Option<QExp>) -> Self {
        QSeries::from_terms(
            coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (QExp::int(offset + i as i64), c)),
            cutoff,
        )
    }

    fn add_term(&mut self, e: QExp, c: BigInt) {
        if c.is_zero() || self.cutoff.is_some_and(|cut| e >= cut) {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn cutoff(&self) -> Option<QExp> {
        self.cutoff
    }

    pub fn is_exact(&self) -> bool {
        self.cutoff.is_none()
    }

    /// Lower bound on the support of the full (untruncated) series; `None`
    /// for the exact zero.
    pub fn floor(&self) -> Option<QExp> {
        let first = self.terms.keys().next().copied();
        match (first, self.cutoff) {
            (Some(e), Some(c)) => Some(e.min(c)),
            (Some(e), None) => Some(e),
            (None, c) => c,
        }
    }

    /// Known coefficient at `e`, `None` when `e` is at or above the cutoff.
    pub fn coeff(&self, e: QExp) -> Option<BigInt> {
        if self.cutoff.is_some_and(|c| e >= c) {
            return None;
        }
        Some(self.terms.get(&e).cloned().unwrap_or_default())
    }

    /// Coefficient at an integer exponent, zero when not stored.
    pub fn coeff_at(&self, e: i64) -> BigInt {
        self.terms.get(&QExp::int(e)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&QExp, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`QSeries::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// No stored terms (the series may still be truncated).
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exponent(&self) -> Option<QExp> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<QExp> {
        self.terms.keys().next_back().copied()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn first_negative(&self) -> Option<(QExp, BigInt)> {
        self.terms
            .iter()
            .find(|(_, c)| c.is_negative())
            .map(|(e, c)| (*e, c.clone()))
    }

    pub fn exponents_integral(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    /// Lowers the cutoff to `min(self.cutoff, cutoff)`.
    pub fn truncate(mut self, cutoff: QExp) -> Self {
        let c = min_cutoff(self.cutoff, Some(cutoff)).unwrap_or(cutoff);
        drop(self.terms.split_off(&c));
        self.cutoff = Some(c);
        self
    }

    /// Multiplies by `q^e`.
    pub fn shift(&self, e: QExp) -> Self {
        QSeries {
            terms: self.terms.iter().map(|(k, v)| (*k + e, v.clone())).collect(),
            cutoff: self.cutoff.map(|c| c + e),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        if factor.is_zero() {
            return QSeries {
                terms: BTreeMap::new(),
                cutoff: self.cutoff,
            };
        }
        QSeries {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (*k, v * factor))
                .collect(),
            cutoff: self.cutoff,
        }
    }

    /// `q -> q^{-1}`; only defined for exact series.
    pub fn flip(&self) -> Result<Self> {
        if !self.is_exact() {
            return Err(Error::NeedsExact);
        }
        Ok(QSeries {
            terms: self.terms.iter().map(|(k, v)| (-*k, v.clone())).collect(),
            cutoff: None,
        })
    }

    /// Value at `q = 1`; only defined for exact series.
    pub fn eval_at_one(&self) -> Result<BigInt> {
        if !self.is_exact() {
            return Err(Error::NeedsExact);
        }
        Ok(self.terms.values().sum())
    }

    /// Dense coefficient vector for exponents `from..to` (integer exponents
    /// only; fractional exponents are ignored).
    pub fn dense(&self, from: i64, to: i64) -> Vec<BigInt> {
        (from..to).map(|e| self.coeff_at(e)).collect()
    }

    /// Compares coefficients for every exponent below the smaller cutoff.
    pub fn agreement(&self, other: &QSeries) -> Agreement {
        let bound = min_cutoff(self.cutoff, other.cutoff);
        let keys: std::collections::BTreeSet<QExp> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .copied()
            .filter(|e| bound.is_none_or(|b| *e < b))
            .collect();
        for e in keys {
            let left = self.terms.get(&e).cloned().unwrap_or_default();
            let right = other.terms.get(&e).cloned().unwrap_or_default();
            if left != right {
                return Agreement::Mismatch {
                    exponent: e,
                    left,
                    right,
                };
            }
        }
        Agreement::Equal { below: bound }
    }

    fn integer_span(&self) -> Option<(i64, i64)> {
        if !self.exponents_integral() {
            return None;
        }
        let lo = self.min_exponent()?.numer();
        let hi = self.max_exponent()?.numer();
        Some((lo, hi))
    }

    fn mul_impl(&self, other: &QSeries) -> QSeries {
        let both_exact_zero = |s: &QSeries| s.is_exact() && s.is_zero();
        if both_exact_zero(self) || both_exact_zero(other) {
            return QSeries::zero();
        }
        let cutoff = {
            let left = match (self.cutoff, other.floor()) {
                (Some(c), Some(f)) => Some(c + f),
                _ => None,
            };
            let right = match (other.cutoff, self.floor()) {
                (Some(c), Some(f)) => Some(c + f),
                _ => None,
            };
            min_cutoff(left, right)
        };
        const DENSE_SPAN: i64 = 1 << 14;
        if let (Some((alo, ahi)), Some((blo, bhi))) = (self.integer_span(), other.integer_span()) {
            if ahi - alo < DENSE_SPAN && bhi - blo < DENSE_SPAN {
                let a = self.dense(alo, ahi + 1);
                let b = other.dense(blo, bhi + 1);
                let offset = alo + blo;
                let limit = cutoff.map(|c| (c.ceil() - offset).max(0) as usize);
                return QSeries::from_dense(dense::mul(&a, &b, limit), offset, cutoff);
            }
        }
        let mut out = QSeries {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = *ea + *eb;
                if cutoff.is_some_and(|c| e >= c) {
                    break;
                }
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    fn add_impl(&self, other: &QSeries, negate: bool) -> QSeries {
        let cutoff = min_cutoff(self.cutoff, other.cutoff);
        let mut out = QSeries {
            terms: BTreeMap::new(),
            cutoff,
        };
        for (e, c) in &self.terms {
            out.add_term(*e, c.clone());
        }
        for (e, c) in &other.terms {
            out.add_term(*e, if negate { -c } else { c.clone() });
        }
        out
    }

    /// Sum of an iterator of series (exact zero for an empty iterator).
    pub fn sum<'a, I: IntoIterator<Item = &'a QSeries>>(items: I) -> QSeries {
        let mut acc = QSeries::zero();
        for s in items {
            acc = &acc + s;
        }
        acc
    }
}

impl Add<&QSeries> for &QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, false)
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        self.add_impl(&rhs, false)
    }
}

impl Sub<&QSeries> for &QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self.add_impl(rhs, true)
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        self.add_impl(&rhs, true)
    }
}

impl Mul<&QSeries> for &QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_impl(rhs)
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        self.mul_impl(&rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&BigInt::from(-1))
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one();
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if *e == QExp::ONE {
                write!(f, "q")?;
            } else if e.is_integer() && !e.is_negative() {
                write!(f, "q^{e}")?;
            } else {
                write!(f, "q^({e})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        if let Some(c) = self.cutoff {
            if c.is_integer() && !c.is_negative() {
                write!(f, " + O(q^{c})")?;
            } else {
                write!(f, " + O(q^({c}))")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct ExpJson {
    num: i64,
    den: i64,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    num: i64,
    den: i64,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    terms: Vec<TermJson>,
    cutoff: Option<ExpJson>,
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesJson {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    num: e.numer(),
                    den: e.denom(),
                    coeff: c.to_string(),
                })
                .collect(),
            cutoff: self.cutoff.map(|c| ExpJson {
                num: c.numer(),
                den: c.denom(),
            }),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = SeriesJson::deserialize(deserializer)?;
        let exp = |num: i64, den: i64| {
            if den <= 0 {
                Err(D::Error::custom("exponent denominator must be positive"))
            } else {
                Ok(QExp::new(num, den))
            }
        };
        let cutoff = raw.cutoff.map(|c| exp(c.num, c.den)).transpose()?;
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((exp(t.num, t.den)?, c));
        }
        Ok(QSeries::from_terms(terms, cutoff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[i64]) -> QSeries {
        QSeries::from_dense(cs.iter().map(|&c| BigInt::from(c)).collect(), 0, None)
    }

    #[test]
    fn cancellation_in_sum() {
        let a = poly(&[1, 1]);
        let b = poly(&[-1, 0, 1]);
        assert_eq!(&a + &b, poly(&[0, 1, 1]));
    }

    #[test]
    fn zero_is_additive_identity() {
        let x = poly(&[3, 0, -2]);
        assert_eq!(&x + &QSeries::zero(), x);
    }

    #[test]
    fn truncation_dominates_sum() {
        let a = QSeries::one().truncate(QExp::int(5));
        let b = QSeries::monomial(1, QExp::int(7)).truncate(QExp::int(10));
        let s = &a + &b;
        assert_eq!(s, QSeries::one().truncate(QExp::int(5)));
        assert_eq!(s.cutoff(), Some(QExp::int(5)));
    }

    #[test]
    fn product_examples() {
        assert_eq!(&poly(&[1, 1]) * &poly(&[1, -1]), poly(&[1, 0, -1]));
        let x = poly(&[2, 0, 5]);
        assert_eq!(&x * &QSeries::one(), x);
        let half = QSeries::monomial(1, QExp::new(1, 2));
        let three_halves = QSeries::monomial(1, QExp::new(3, 2));
        assert_eq!(&half * &three_halves, QSeries::monomial(1, QExp::int(2)));
    }

    #[test]
    fn product_cutoff_is_pessimistic() {
        // (1 + q + O(q^3)) * (q^2 + O(q^4)): known below min(3 + 2, 4 + 0) = 4
        let a = poly(&[1, 1]).truncate(QExp::int(3));
        let b = QSeries::monomial(1, QExp::int(2)).truncate(QExp::int(4));
        let p = &a * &b;
        assert_eq!(p.cutoff(), Some(QExp::int(4)));
        assert_eq!(p.coeff_at(2), BigInt::from(1));
        assert_eq!(p.coeff_at(3), BigInt::from(1));
    }

    #[test]
    fn exact_times_truncated() {
        let a = QSeries::monomial(1, QExp::int(-2));
        let b = poly(&[1, 1, 1]).truncate(QExp::int(3));
        let p = &a * &b;
        assert_eq!(p.cutoff(), Some(QExp::int(1)));
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn truncate_drops_high_terms() {
        let t = poly(&[1, 2, 3, 4]).truncate(QExp::new(5, 2));
        assert_eq!(t.len(), 3);
        assert_eq!(t.cutoff(), Some(QExp::new(5, 2)));
        assert_eq!(t.coeff(QExp::int(3)), None);
    }

    #[test]
    fn agreement_reports_range_and_first_mismatch() {
        let a = poly(&[1, 2, 3]).truncate(QExp::int(10));
        let b = poly(&[1, 2, 3, 9]).truncate(QExp::int(3));
        assert_eq!(a.agreement(&b), Agreement::Equal { below: Some(QExp::int(3)) });
        let c = poly(&[1, 5]);
        match a.agreement(&c) {
            Agreement::Mismatch { exponent, .. } => assert_eq!(exponent, QExp::ONE),
            other => panic!("{other}"),
        }
    }

    #[test]
    fn flip_rejects_truncated() {
        assert!(QSeries::one().truncate(QExp::ONE).flip().is_err());
        assert_eq!(poly(&[0, 1]).flip().unwrap(), QSeries::monomial(1, QExp::int(-1)));
    }

    #[test]
    fn json_shape() {
        let s = QSeries::from_terms(
            [(QExp::new(1, 2), BigInt::from(-3)), (QExp::ZERO, BigInt::from(1))],
            Some(QExp::int(4)),
        );
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(
            j,
            r#"{"terms":[{"num":0,"den":1,"coeff":"1"},{"num":1,"den":2,"coeff":"-3"}],"cutoff":{"num":4,"den":1}}"#
        );
        let back: QSeries = serde_json::from_str(&j).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn display() {
        let s = QSeries::from_terms(
            [
                (QExp::ZERO, BigInt::from(1)),
                (QExp::ONE, BigInt::from(-2)),
                (QExp::new(3, 2), BigInt::from(1)),
            ],
            Some(QExp::int(2)),
        );
        assert_eq!(s.to_string(), "1 - 2q + q^(3/2) + O(q^2)");
    }
}
