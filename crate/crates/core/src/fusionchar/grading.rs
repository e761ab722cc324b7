use super::affine::{conformal_weight, euler_multiplicity, flipped_pi2_tensor};
use crate::error::{Error, Result};
use crate::pathweights::ModelParams;
use crate::qcore::{poch_inv, QExp, QSeries};
use crate::report::{CaseResult, SuiteReport};
use crate::vircharacters::{i_m, i_m_floor_bound, rocha_caridi};

fn unitary_checked(k: i64, r: i64, s: i64) -> Result<ModelParams> {
    let params = ModelParams::unitary(k)?;
    params.check_r(r)?;
    params.check_s(s)?;
    Ok(params)
}

/// `i in {0, 1}` with `i = r - s (mod 2)`.
fn sector(r: i64, s: i64) -> i64 {
    (r - s).rem_euclid(2)
}

/// `q^{Delta_{r,s}} I_{r,s,r+i,m}(q) / (q)_m` for the unitary model
/// `(k+2, k+3)`, known below `q^{Delta_{r,s} + cutoff}`.
pub fn graded_13_char(k: i64, r: i64, s: i64, m: i64, cutoff: QExp) -> Result<QSeries> {
    let params = unitary_checked(k, r, s)?;
    if m < 0 {
        return Err(Error::OutOfRange(format!("m={m} must be nonnegative")));
    }
    let b = r + sector(r, s);
    let inv = poch_inv(Some(m as u64), cutoff);
    let piece = (&i_m(&params, r, s, b, m) * &inv).truncate(cutoff);
    Ok(piece.shift(params.delta(r, s)))
}

/// Same graded piece from the affine side:
/// `q^{Delta(j,k) - Delta(l,k+1) + m^2} / (q)_m` times the level `k+1`,
/// weight `l` multiplicity in `ch_{q^{-1}} pi_2^{*m} (x) pi_j`, where
/// `(j+1, l+1)` is the representative of `(r, s)` with `j = l (mod 2)`.
pub fn graded_13_char_euler(k: i64, r: i64, s: i64, m: i64, cutoff: QExp) -> Result<QSeries> {
    let params = unitary_checked(k, r, s)?;
    if m < 0 {
        return Err(Error::OutOfRange(format!("m={m} must be nonnegative")));
    }
    let (r1, s1) = if sector(r, s) == 0 {
        (r, s)
    } else {
        (params.p - r, params.pp - s)
    };
    let (j, l) = (r1 - 1, s1 - 1);
    let v = flipped_pi2_tensor(m, j as u32);
    let mult = euler_multiplicity(&v, k + 1, l, None)?;
    let inv = poch_inv(Some(m as u64), cutoff);
    let shift = conformal_weight(j, k) - conformal_weight(l, k + 1) + QExp::int(m * m);
    let relative = (&mult.shift(shift - params.delta(r, s)) * &inv).truncate(cutoff);
    Ok(relative.shift(params.delta(r, s)))
}

/// `sum_m graded_13_char(k, r, s, m)` below `q^{Delta_{r,s} + cutoff}`, and
/// the number of `m` used.
pub fn graded_sum(k: i64, r: i64, s: i64, cutoff: QExp) -> Result<(QSeries, i64)> {
    let params = unitary_checked(k, r, s)?;
    let b = r + sector(r, s);
    let delta = params.delta(r, s);
    let cap = 4 * cutoff.ceil().max(1) + 16;
    let mut acc = QSeries::zero_below(cutoff + delta);
    let mut m = 0;
    while m <= cap && i_m_floor_bound(&params, r, s, b, m, cutoff) < cutoff {
        acc = &acc + &graded_13_char(k, r, s, m, cutoff)?;
        m += 1;
    }
    Ok((acc, m))
}

fn kac_table(k: i64) -> Vec<(i64, i64)> {
    (1..=k + 1)
        .flat_map(|r| (1..=k + 2).map(move |s| (r, s)))
        .collect()
}

/// For `1 <= k <= k_max` and every `(r, s)`: nonnegative graded pieces for
/// `m <= m_max`, the sum over all `m` against the character below degree
/// `cutoff`, and agreement of the two constructions of each piece.
pub fn verify_grading(k_max: i64, m_max: i64, cutoff: QExp) -> SuiteReport {
    let grid: Vec<(i64, i64, i64)> = (1..=k_max)
        .flat_map(|k| kac_table(k).into_iter().map(move |(r, s)| (k, r, s)))
        .collect();
    SuiteReport::new(
        "grading",
        "q^{Delta_{r,s}} I_{r,s,r+i,m}/(q)_m >= 0; sum_m = chi^{(k+2,k+3)}_{r,s}; \
         = q^{Delta(j,k)-Delta(l,k+1)+m^2}/(q)_m sum_lambda q^{-(k+3)lambda^2+(l+1)lambda} \
         (ch_{q^{-1}} pi_2^{*m} (x) pi_j)[2(k+3)lambda-l] - [2(k+3)lambda-l-2]",
    )
    .param("kmax", k_max)
    .param("mmax", m_max)
    .param("qmax", cutoff.to_string())
    .run(grid, |(k, r, s)| {
        let id = |what: &str| format!("{what}/k={k}/r={r}/s={s}");
        let mut out = Vec::new();
        let mut negative = None;
        let mut routes = None;
        for m in 0..=m_max {
            let direct = graded_13_char(k, r, s, m, cutoff).expect("valid sector");
            if negative.is_none() {
                if let Some((e, c)) = direct.first_negative() {
                    negative = Some(format!("m={m}: coefficient {c} at q^{e}"));
                }
            }
            let euler = graded_13_char_euler(k, r, s, m, cutoff).expect("valid sector");
            if routes.is_none() {
                let ag = direct.agreement(&euler);
                if !ag.is_equal() {
                    routes = Some(format!("m={m}: {ag}"));
                }
            }
        }
        out.push(match negative {
            None => CaseResult::pass(id("nonnegative"), format!("m <= {m_max}")),
            Some(d) => CaseResult::fail(id("nonnegative"), d),
        });
        let params = ModelParams::unitary(k).expect("k >= 1");
        let chi = rocha_caridi(&params, r, s, cutoff).shift(params.delta(r, s));
        let (sum, used) = graded_sum(k, r, s, cutoff).expect("valid sector");
        let mut total = CaseResult::compare(id("sum"), &sum, &chi);
        total.detail = format!("{} (m < {used})", total.detail);
        out.push(total);
        out.push(match routes {
            None => CaseResult::pass(id("two-routes"), format!("m <= {m_max}")),
            Some(d) => CaseResult::fail(id("two-routes"), d),
        });
        out
    })
}

/// `graded_13_char(k, j+1, l+1, m) = graded_13_char(k, k-j+1, k-l+2, m)`
/// for `l != j (mod 2)` and `m <= m_max`.
pub fn verify_i1_sector(k: i64, m_max: i64, cutoff: QExp) -> SuiteReport {
    let grid: Vec<(i64, i64, i64)> = (0..=k)
        .flat_map(|j| (0..=k + 1).map(move |l| (j, l)))
        .filter(|(j, l)| (l - j).rem_euclid(2) == 1)
        .flat_map(|(j, l)| (0..=m_max).map(move |m| (j, l, m)))
        .collect();
    SuiteReport::new(
        "i1sector",
        "q^{Delta} I_{j+1,l+1,j+2,m}/(q)_m = q^{Delta} I_{k-j+1,k-l+2,k-j+1,m}/(q)_m for l - j odd",
    )
    .param("k", k)
    .param("mmax", m_max)
    .param("qmax", cutoff.to_string())
    .run(grid, |(j, l, m)| {
        let lhs = graded_13_char(k, j + 1, l + 1, m, cutoff).expect("valid sector");
        let rhs = graded_13_char(k, k - j + 1, k - l + 2, m, cutoff).expect("valid sector");
        vec![CaseResult::compare(format!("k={k}/j={j}/l={l}/m={m}"), &lhs, &rhs)]
    })
}
