use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational exponent of `q`, always in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct QExp(Ratio<i64>);

impl QExp {
    pub const ZERO: QExp = QExp(Ratio::new_raw(0, 1));
    pub const ONE: QExp = QExp(Ratio::new_raw(1, 1));

    /// Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        QExp(Ratio::new(num, den))
    }

    pub fn int(n: i64) -> Self {
        QExp(Ratio::from_integer(n))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(self) -> bool {
        self.0.is_negative()
    }

    pub fn floor(self) -> i64 {
        self.0.floor().to_integer()
    }

    pub fn ceil(self) -> i64 {
        self.0.ceil().to_integer()
    }

    /// `{x} = x - [x]`, always in `[0, 1)`.
    pub fn fract(self) -> QExp {
        QExp(self.0 - self.0.floor())
    }

    pub fn abs(self) -> QExp {
        QExp(self.0.abs())
    }

    /// True when `self - other` is an integer.
    pub fn congruent(self, other: QExp) -> bool {
        (self.0 - other.0).is_integer()
    }

    /// Smallest element of `residue + Z` that is `>= self`.
    pub fn ceil_to_coset(self, residue: QExp) -> QExp {
        let shift = self.0 - residue.0;
        QExp(residue.0 + shift.ceil())
    }

    /// True when the denominator divides `modulus`.
    pub fn denom_divides(self, modulus: i64) -> bool {
        modulus % self.denom() == 0
    }
}

impl From<i64> for QExp {
    fn from(n: i64) -> Self {
        QExp::int(n)
    }
}

impl From<Ratio<i64>> for QExp {
    fn from(r: Ratio<i64>) -> Self {
        QExp(r)
    }
}

impl Add for QExp {
    type Output = QExp;
    fn add(self, rhs: QExp) -> QExp {
        QExp(self.0 + rhs.0)
    }
}

impl AddAssign for QExp {
    fn add_assign(&mut self, rhs: QExp) {
        self.0 += rhs.0;
    }
}

impl Sub for QExp {
    type Output = QExp;
    fn sub(self, rhs: QExp) -> QExp {
        QExp(self.0 - rhs.0)
    }
}

impl Neg for QExp {
    type Output = QExp;
    fn neg(self) -> QExp {
        QExp(-self.0)
    }
}

impl Mul<i64> for QExp {
    type Output = QExp;
    fn mul(self, rhs: i64) -> QExp {
        QExp(self.0 * rhs)
    }
}

impl Mul for QExp {
    type Output = QExp;
    fn mul(self, rhs: QExp) -> QExp {
        QExp(self.0 * rhs.0)
    }
}

impl Zero for QExp {
    fn zero() -> Self {
        QExp::ZERO
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for QExp {
    fn one() -> Self {
        QExp::ONE
    }
}

impl fmt::Display for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for QExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct Raw {
    num: i64,
    den: i64,
}

impl Serialize for QExp {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        Raw {
            num: self.numer(),
            den: self.denom(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QExp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = Raw::deserialize(deserializer)?;
        if raw.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(QExp::new(raw.num, raw.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let e = QExp::new(6, -4);
        assert_eq!((e.numer(), e.denom()), (-3, 2));
    }

    #[test]
    fn fract_of_negative() {
        assert_eq!(QExp::new(-1, 3).fract(), QExp::new(2, 3));
        assert_eq!(QExp::int(-2).fract(), QExp::ZERO);
    }

    #[test]
    fn coset_ceiling() {
        let r = QExp::new(1, 2);
        assert_eq!(QExp::int(3).ceil_to_coset(r), QExp::new(7, 2));
        assert_eq!(QExp::new(5, 2).ceil_to_coset(r), QExp::new(5, 2));
        assert_eq!(QExp::new(-4, 3).ceil_to_coset(QExp::ZERO), QExp::int(-1));
    }
}
