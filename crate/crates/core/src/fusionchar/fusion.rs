use num_bigint::BigInt;
use num_traits::Pow;

use crate::qcore::{q_binomial, QExp, QZChar, Supernomial2};
use crate::report::{CaseResult, SuiteReport};
use crate::supernomial::s_plain;

/// `ch_{q,z} pi_1^{*m}`: `z^l -> [m, (m+l)/2]_q`.
pub fn ch_pi1_fused(m: i64) -> QZChar {
    let mut c = QZChar::new();
    for l in (-m..=m).step_by(2) {
        c.insert(l, q_binomial(m, (m + l) / 2));
    }
    c
}

/// `ch_{q,z} pi_2^{*m}`: `z^{2l} -> S_{m,l}(q^{-1})`.
pub fn ch_pi2_fused(m: i64) -> QZChar {
    let mut c = QZChar::new();
    for l in -m..=m {
        c.insert(2 * l, s_plain(m, l).flip().expect("exact"));
    }
    c
}

/// `ch_{q,z} pi_1^{*2 k1} * pi_2^{*k2}` from the supernomial recurrence.
pub fn ch_mixed(table: &mut Supernomial2, k1: i64, k2: i64) -> QZChar {
    let mut c = QZChar::new();
    for a in -(k1 + k2)..=(k1 + k2) {
        let s = table.get(2 * k1, k2, QExp::int(a)).expect("even first row");
        c.insert(2 * a, s);
    }
    c
}

/// Same character from `sum_j q^{(k1-j)(k1+k2)} [k1, j] S_{k2+j, a}(q^{-1})`.
pub fn ch_mixed_closed(k1: i64, k2: i64) -> QZChar {
    let mut c = QZChar::new();
    for j in 0..=k1 {
        let pre = q_binomial(k1, j).shift(QExp::int((k1 - j) * (k1 + k2)));
        for (alpha, s) in ch_pi2_fused(k2 + j).components() {
            c.insert(*alpha, &pre * s);
        }
    }
    c
}

fn zchar_case(id: String, lhs: &QZChar, rhs: &QZChar) -> CaseResult {
    match lhs.agreement(rhs) {
        Ok(()) => CaseResult::pass(id, "all weights agree"),
        Err((alpha, ag)) => CaseResult::fail(id, format!("weight {alpha}: {ag}")),
    }
}

/// For `1 <= k1 <= k_max`, `0 <= k2 <= k_max`: the fusion exact sequence
/// `ch pi_1^{*2k1} * pi_2^{*k2} = ch pi_1^{*2(k1-1)} * pi_2^{*(k2+1)} + q^{2k1+k2-1} ch pi_1^{*2(k1-1)} * pi_2^{*k2}`,
/// the recurrence table against the closed form, and dimensions `4^{k1} 3^{k2}`.
pub fn verify_exact_sequence_chars(k_max: i64) -> SuiteReport {
    let grid: Vec<(i64, i64)> = (1..=k_max)
        .flat_map(|k1| (0..=k_max).map(move |k2| (k1, k2)))
        .collect();
    SuiteReport::new(
        "exactseq",
        "ch pi_1^{*2k1}*pi_2^{*k2} = ch pi_1^{*2(k1-1)}*pi_2^{*(k2+1)} + q^{2k1+k2-1} ch pi_1^{*2(k1-1)}*pi_2^{*k2}",
    )
    .param("kmax", k_max)
    .run(grid, |(k1, k2)| {
        let mut table = Supernomial2::new();
        let id = |what: &str| format!("{what}/k1={k1}/k2={k2}");
        let lhs = ch_mixed_closed(k1, k2);
        let rhs = ch_mixed_closed(k1 - 1, k2 + 1)
            .add(&ch_mixed_closed(k1 - 1, k2).shift(QExp::int(2 * k1 + k2 - 1)));
        let dims = lhs.total_at_one().expect("exact");
        let want: BigInt = BigInt::from(4).pow(k1 as u32) * BigInt::from(3).pow(k2 as u32);
        vec![
            zchar_case(id("sequence"), &lhs, &rhs),
            zchar_case(id("recurrence-vs-closed"), &ch_mixed(&mut table, k1, k2), &lhs),
            if dims == want {
                CaseResult::pass(id("dimension"), format!("{dims}"))
            } else {
                CaseResult::fail(id("dimension"), format!("{dims} != {want}"))
            },
        ]
    })
}

/// `q^{N^2} ch_{q^{-1},z} pi_1^{*2N} = sum_{m=0}^N q^{m^2} [N, m] ch_{q^{-1},z} pi_2^{*m}`
/// for `1 <= N <= n_max`.
pub fn verify_pmn(n_max: i64) -> SuiteReport {
    SuiteReport::new(
        "pmn",
        "q^{N^2} ch_{q^{-1},z} pi_1^{*2N} = sum_{m=0}^{N} q^{m^2} [N,m]_q ch_{q^{-1},z} pi_2^{*m}",
    )
    .param("nmax", n_max)
    .run((1..=n_max).collect(), |n| {
        let lhs = ch_pi1_fused(2 * n)
            .flip()
            .expect("exact")
            .shift(QExp::int(n * n));
        let mut rhs = QZChar::new();
        for m in 0..=n {
            let pre = q_binomial(n, m).shift(QExp::int(m * m));
            rhs = rhs.add(&ch_pi2_fused(m).flip().expect("exact").mul_series(&pre));
        }
        let dim_l = lhs.total_at_one().expect("exact");
        let dim_r = rhs.total_at_one().expect("exact");
        let mut cases = vec![zchar_case(format!("N={n}"), &lhs, &rhs)];
        cases.push(if dim_l == dim_r && dim_l == BigInt::from(4).pow(n as u32) {
            CaseResult::pass(format!("dimension/N={n}"), format!("{dim_l}"))
        } else {
            CaseResult::fail(format!("dimension/N={n}"), format!("{dim_l} vs {dim_r}"))
        });
        cases
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::QSeries;

    fn poly(cs: &[i64]) -> QSeries {
        QSeries::from_dense(cs.iter().map(|&c| BigInt::from(c)).collect(), 0, None)
    }

    #[test]
    fn small_fusion_characters() {
        assert_eq!(ch_pi1_fused(0), QZChar::trivial());
        let c1 = ch_pi1_fused(1);
        assert_eq!(c1.component(1), QSeries::one());
        assert_eq!(c1.component(-1), QSeries::one());
        assert_eq!(ch_pi1_fused(2).component(0), poly(&[1, 1]));
        let p1 = ch_pi2_fused(1);
        for a in [-2, 0, 2] {
            assert_eq!(p1.component(a), QSeries::one());
        }
        assert_eq!(ch_pi2_fused(2).component(0), poly(&[1, 1, 1]));
    }

    #[test]
    fn dimensions_and_symmetry() {
        for m in 0..=6 {
            let c = ch_pi2_fused(m);
            assert_eq!(c.total_at_one().unwrap(), BigInt::from(3).pow(m as u32));
            assert!(c.is_symmetric());
            assert_eq!(ch_pi1_fused(m).total_at_one().unwrap(), BigInt::from(2).pow(m as u32));
        }
    }

    #[test]
    fn first_exact_sequence() {
        // ch pi_1^{*2} = ch pi_2 + q ch pi_0
        let rhs = ch_pi2_fused(1).add(&QZChar::trivial().shift(QExp::ONE));
        assert!(ch_pi1_fused(2).agreement(&rhs).is_ok());
        assert!(ch_mixed_closed(1, 0).agreement(&ch_pi1_fused(2)).is_ok());
    }

    #[test]
    fn small_sweeps() {
        assert!(verify_exact_sequence_chars(3).passed());
        assert!(verify_pmn(3).passed());
    }
}
