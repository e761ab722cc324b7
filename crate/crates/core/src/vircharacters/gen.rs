use num_bigint::BigInt;

use super::rocha::i_m;
use crate::error::{Error, Result};
use crate::pathweights::{count_paths, enumerate_paths, ModelParams, TauTable, XTable};
use crate::qcore::{QExp, QSeries};
use crate::report::{CaseResult, SuiteReport};

fn require_boundary(params: &ModelParams, r: i64, a: i64, b: i64) -> Result<()> {
    let expected = params.b_of(r, a)?;
    if b != expected {
        return Err(Error::BoundaryMismatch { r, a, b, expected });
    }
    Ok(())
}

/// Exponent shift `m (Delta_{r,d} - Delta_{r,b} + delta_{d,b}) + Delta_{r,b} - Delta_{r,a}`.
fn boundary_shift(params: &ModelParams, r: i64, a: i64, b: i64, d: i64, m: i64) -> QExp {
    let delta = if d == b { 1 } else { 0 };
    (params.delta(r, d) - params.delta(r, b) + QExp::int(delta)) * m + params.delta(r, b)
        - params.delta(r, a)
}

/// Path side of the configuration-sum formula for `I_{r,a,b,m}`, summed over
/// `P_{a,b,m}`. Requires `b = b(r, a)`.
pub fn path_side_gen(tau: &TauTable, r: i64, a: i64, b: i64, m: usize) -> Result<QSeries> {
    let params = tau.params();
    params.require_path_regime()?;
    require_boundary(params, r, a, b)?;
    let mut acc = QSeries::zero();
    for path in enumerate_paths(a, b, m, params.pp) {
        let e = if m == 0 {
            params.delta(r, b) - params.delta(r, a)
        } else {
            let prev = path.steps()[m - 1];
            path.energy(tau) + boundary_shift(params, r, a, b, prev, m as i64)
        };
        acc = &acc + &QSeries::monomial(1, e);
    }
    Ok(acc)
}

fn all_ra(params: &ModelParams) -> Vec<(i64, i64)> {
    (1..params.p)
        .flat_map(|r| (1..params.pp).map(move |a| (r, a)))
        .collect()
}

/// Path configuration sum equals `I_{r,a,b(r,a),m}` for every `(r, a)` and
/// `m <= m_max`; exponents must be integral.
pub fn verify_gen(tau: &TauTable, m_max: usize) -> SuiteReport {
    let params = *tau.params();
    SuiteReport::new(
        "gen",
        "I_{r,a,b,m} = sum_{s in P_{a,b,m}} q^{E(s) + m(Delta_{r,s_{m-1}} - Delta_{r,b} + delta_{s_{m-1},b}) + Delta_{r,b} - Delta_{r,a}}, b = b(r,a)",
    )
    .param("p", params.p)
    .param("pp", params.pp)
    .param("mmax", m_max as i64)
    .run(all_ra(&params), |(r, a)| {
        let b = params.b_of(r, a).expect("r, a in range");
        (0..=m_max)
            .map(|m| {
                let id = format!("r={r}/a={a}/b={b}/m={m}");
                let lhs = path_side_gen(tau, r, a, b, m).expect("boundary from b_of");
                if !lhs.exponents_integral() {
                    return CaseResult::fail(id, format!("non-integral exponent in {lhs}"));
                }
                CaseResult::compare(id, &lhs, &i_m(&params, r, a, b, m as i64))
            })
            .collect()
    })
}

/// `I_m = sum_{d = b, b +- 2} q^{m(Delta_{r,d} - Delta_{r,b} + delta_{d,b}) + Delta_{r,b} - Delta_{r,a}} X_{a,d,b,m-1}`
/// for `1 <= m <= m_max`, with `b = b(r, a)`.
pub fn verify_iands(tau: &TauTable, m_max: usize) -> SuiteReport {
    let params = *tau.params();
    SuiteReport::new(
        "iands",
        "I_{r,a,b,m} = sum_{d=b,b+-2} q^{m(Delta_{r,d}-Delta_{r,b}+delta_{d,b}) + Delta_{r,b} - Delta_{r,a}} X_{a,d,b,m-1}",
    )
    .param("p", params.p)
    .param("pp", params.pp)
    .param("mmax", m_max as i64)
    .run(all_ra(&params), |(r, a)| {
        let b = params.b_of(r, a).expect("r, a in range");
        let table = XTable::new(a, m_max.saturating_sub(1), tau);
        (1..=m_max)
            .map(|m| {
                let mut rhs = QSeries::zero();
                for d in [b - 2, b, b + 2] {
                    if !(1..params.pp).contains(&d) {
                        continue;
                    }
                    let x = table.get(d, b, m - 1);
                    rhs = &rhs + &x.shift(boundary_shift(&params, r, a, b, d, m as i64));
                }
                CaseResult::compare(
                    format!("r={r}/a={a}/b={b}/m={m}"),
                    &i_m(&params, r, a, b, m as i64),
                    &rhs,
                )
            })
            .collect()
    })
}

/// Coefficients of `I_{r,a,b(r,a),m}` are nonnegative, and `I_m(1)` counts
/// `P_{a,b,m}`.
pub fn verify_nonnegativity(params: &ModelParams, m_max: usize) -> SuiteReport {
    let params = *params;
    SuiteReport::new(
        "nonnegativity",
        "I_{r,a,b(r,a),m} has nonnegative coefficients and I_{r,a,b,m}(1) = |P_{a,b,m}|",
    )
    .param("p", params.p)
    .param("pp", params.pp)
    .param("mmax", m_max as i64)
    .run(all_ra(&params), |(r, a)| {
        let b = params.b_of(r, a).expect("r, a in range");
        (0..=m_max)
            .map(|m| {
                let id = format!("r={r}/a={a}/b={b}/m={m}");
                let im = i_m(&params, r, a, b, m as i64);
                if let Some((e, c)) = im.first_negative() {
                    return CaseResult::fail(id, format!("coefficient {c} at q^{e}"));
                }
                let at_one = im.eval_at_one().expect("exact");
                let count: BigInt = count_paths(a, b, m, params.pp);
                if at_one != count {
                    return CaseResult::fail(id, format!("I_m(1) = {at_one}, |P| = {count}"));
                }
                CaseResult::pass(id, format!("I_m(1) = {at_one}"))
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_rejects_wrong_boundary() {
        let tau = TauTable::new(ModelParams::new(3, 4).unwrap()).unwrap();
        assert!(matches!(
            path_side_gen(&tau, 1, 1, 3, 2),
            Err(Error::BoundaryMismatch { expected: 1, .. })
        ));
    }

    #[test]
    fn gen_small_examples() {
        let tau = TauTable::new(ModelParams::new(3, 4).unwrap()).unwrap();
        assert_eq!(path_side_gen(&tau, 1, 1, 1, 0).unwrap(), QSeries::one());
        // (1,3,1): E = 1, plus 2 (Delta(1,3) - Delta(1,1)) = 1
        assert_eq!(
            path_side_gen(&tau, 1, 1, 1, 2).unwrap(),
            QSeries::monomial(1, QExp::int(2))
        );
    }

    #[test]
    fn small_sweeps() {
        for (p, pp) in [(3, 4), (4, 7)] {
            let tau = TauTable::new(ModelParams::new(p, pp).unwrap()).unwrap();
            for r in [verify_gen(&tau, 4), verify_iands(&tau, 4), verify_nonnegativity(tau.params(), 4)] {
                assert!(r.passed(), "{}: {:?}", r.suite, r.failures().next());
            }
        }
    }
}
