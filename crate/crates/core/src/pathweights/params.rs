use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qcore::QExp;

/// Coprime pair `(p, p')` with `3 <= p < p'`, `t = p'/p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModelParams {
    pub p: i64,
    pub pp: i64,
}

impl ModelParams {
    pub fn new(p: i64, pp: i64) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidParams {
            p,
            pp,
            reason: reason.to_string(),
        };
        if p < 3 || pp <= p {
            return Err(bad("need 3 <= p < p'"));
        }
        if p.gcd(&pp) != 1 {
            return Err(bad("p and p' must be coprime"));
        }
        Ok(ModelParams { p, pp })
    }

    /// Unitary model `(k+2, k+3)`.
    pub fn unitary(k: i64) -> Result<Self> {
        ModelParams::new(k + 2, k + 3)
    }

    pub fn t(&self) -> Ratio<i64> {
        Ratio::new(self.pp, self.p)
    }

    /// `1 < t < 2`, the range where paths and weights are defined.
    pub fn in_path_regime(&self) -> bool {
        self.pp < 2 * self.p
    }

    pub fn require_path_regime(&self) -> Result<()> {
        if self.in_path_regime() {
            Ok(())
        } else {
            Err(Error::InvalidParams {
                p: self.p,
                pp: self.pp,
                reason: "path machinery needs 1 < p'/p < 2".into(),
            })
        }
    }

    /// Exponent denominators of every model quantity divide this.
    pub fn denominator_bound(&self) -> i64 {
        4 * self.p * self.pp
    }

    /// `Delta_{r,s} = ((r p' - s p)^2 - (p' - p)^2) / (4 p p')`.
    pub fn delta(&self, r: i64, s: i64) -> QExp {
        let x = r * self.pp - s * self.p;
        let y = self.pp - self.p;
        QExp::new(x * x - y * y, 4 * self.p * self.pp)
    }

    /// `c = 1 - 6 (p' - p)^2 / (p p')`.
    pub fn central_charge(&self) -> Ratio<i64> {
        let y = self.pp - self.p;
        Ratio::from_integer(1) - Ratio::new(6 * y * y, self.p * self.pp)
    }

    /// `[x / t]`.
    pub fn floor_over_t(&self, x: i64) -> i64 {
        (x * self.p).div_euclid(self.pp)
    }

    /// `{x / t}`.
    pub fn frac_over_t(&self, x: i64) -> QExp {
        QExp::new((x * self.p).rem_euclid(self.pp), self.pp)
    }

    /// `1 / t`.
    pub fn inv_t(&self) -> QExp {
        QExp::new(self.p, self.pp)
    }

    /// `tau(s) = [(s+1)/t] - [(s-1)/t]`.
    pub fn tau_value(&self, s: i64) -> i64 {
        self.floor_over_t(s + 1) - self.floor_over_t(s - 1)
    }

    pub fn check_r(&self, r: i64) -> Result<()> {
        if (1..self.p).contains(&r) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("r={r} not in [1, {}]", self.p - 1)))
        }
    }

    pub fn check_s(&self, s: i64) -> Result<()> {
        if (1..self.pp).contains(&s) {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("s={s} not in [1, {}]", self.pp - 1)))
        }
    }

    /// The unique `b = a (mod 2)` in `[1, p'-1]` minimising `Delta_{r,b}`.
    pub fn b_of(&self, r: i64, a: i64) -> Result<i64> {
        self.check_r(r)?;
        self.check_s(a)?;
        let start = if a % 2 == 0 { 2 } else { 1 };
        let mut best: Option<(QExp, i64)> = None;
        let mut tie = false;
        for b in (start..self.pp).step_by(2) {
            let d = self.delta(r, b);
            match best {
                None => best = Some((d, b)),
                Some((bd, _)) if d < bd => {
                    best = Some((d, b));
                    tie = false;
                }
                Some((bd, _)) if d == bd => tie = true,
                _ => {}
            }
        }
        let (_, b) = best.ok_or_else(|| Error::OutOfRange(format!("no s of parity {a}")))?;
        if tie {
            return Err(Error::BoundaryTie { r, a, b });
        }
        Ok(b)
    }

    /// Every coprime `(p, p')` with `1 < t < 2` and `p' <= pp_max`.
    pub fn path_models(pp_max: i64) -> Vec<ModelParams> {
        (4..=pp_max)
            .flat_map(|pp| (pp / 2 + 1..pp).map(move |p| (p, pp)))
            .filter_map(|(p, pp)| ModelParams::new(p, pp).ok())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_pairs() {
        assert!(ModelParams::new(4, 6).is_err());
        assert!(ModelParams::new(5, 4).is_err());
        assert!(ModelParams::new(2, 3).is_err());
    }

    #[test]
    fn ising_data() {
        let m = ModelParams::new(3, 4).unwrap();
        assert_eq!(m.central_charge(), Ratio::new(1, 2));
        assert_eq!(m.delta(1, 1), QExp::ZERO);
        assert_eq!(m.delta(1, 2), QExp::new(1, 16));
        assert_eq!(m.delta(1, 3), QExp::new(1, 2));
    }

    #[test]
    fn kac_symmetry_and_denominators() {
        for m in ModelParams::path_models(15) {
            for r in 1..m.p {
                for s in 1..m.pp {
                    let d = m.delta(r, s);
                    assert_eq!(d, m.delta(m.p - r, m.pp - s));
                    assert!(d.denom_divides(m.denominator_bound()));
                }
            }
        }
    }

    #[test]
    fn boundary_rule() {
        let ising = ModelParams::new(3, 4).unwrap();
        assert_eq!(ising.b_of(1, 3).unwrap(), 1);
        for k in 1..6 {
            let m = ModelParams::unitary(k).unwrap();
            for r in 1..m.p {
                for a in 1..m.pp {
                    let expected = if (r - a) % 2 == 0 { r } else { r + 1 };
                    assert_eq!(m.b_of(r, a).unwrap(), expected, "k={k} r={r} a={a}");
                }
            }
        }
        let m57 = ModelParams::new(5, 7).unwrap();
        let b = m57.b_of(2, 1).unwrap();
        for s in [1, 3, 5] {
            assert!(m57.delta(2, b) <= m57.delta(2, s));
        }
    }

    #[test]
    fn model_listing() {
        let models = ModelParams::path_models(8);
        assert!(models.contains(&ModelParams { p: 5, pp: 8 }));
        assert!(models.contains(&ModelParams { p: 3, pp: 4 }));
        assert!(!models.iter().any(|m| m.pp >= 2 * m.p));
    }
}
