//! Sweeps beyond the acceptance criteria and cross-module consistency.

use num_bigint::BigInt;

use qlab_core::fusionchar::{
    abf_finitized, abf_target, ch_pi2_fused, graded_13_char, level1_char, verify_abf,
    verify_exact_sequence_chars, verify_i1_sector, verify_pi2pi3,
};
use qlab_core::pathweights::{verify_x_bruteforce, verify_xandf, ModelParams, TauTable};
use qlab_core::qcore::{poch_inv, supernomial2};
use qlab_core::supernomial::s_plain;
use qlab_core::vircharacters::{
    path_side_gen, rigged_path_gf, rocha_caridi, verify_gen, verify_iands, verify_nonnegativity,
    verify_partition_expansion,
};
use qlab_core::{QExp, QSeries, SuiteReport};

const FIVE_MODELS: [(i64, i64); 5] = [(3, 4), (4, 5), (5, 7), (4, 7), (5, 8)];

fn tau(p: i64, pp: i64) -> TauTable {
    TauTable::new(ModelParams::new(p, pp).unwrap()).unwrap()
}

fn assert_passed(r: &SuiteReport) {
    assert!(!r.cases.is_empty(), "{} ran no cases", r.suite);
    let failures: Vec<_> = r.failures().take(5).collect();
    assert!(failures.is_empty(), "{}: {failures:?}", r.summary());
}

#[test]
fn x_recurrence_matches_enumeration() {
    for (p, pp) in FIVE_MODELS {
        assert_passed(&verify_x_bruteforce(&tau(p, pp), 6));
    }
}

#[test]
fn xandf_longer_paths_ising_and_alternating_regime() {
    assert_passed(&verify_xandf(&tau(3, 4), 6));
    assert_passed(&verify_xandf(&tau(4, 7), 5));
}

#[test]
fn gen_ising_to_m8() {
    assert_passed(&verify_gen(&tau(3, 4), 8));
}

#[test]
fn iands_sweeps() {
    assert_passed(&verify_iands(&tau(3, 4), 8));
    assert_passed(&verify_iands(&tau(5, 7), 6));
}

#[test]
fn i_m_nonnegative_and_counts_paths() {
    for (p, pp) in FIVE_MODELS {
        assert_passed(&verify_nonnegativity(&ModelParams::new(p, pp).unwrap(), 8));
    }
}

#[test]
fn partition_expansion() {
    assert_passed(&verify_partition_expansion(5, QExp::int(41)));
}

#[test]
fn characters_are_kac_symmetric() {
    for (p, pp) in FIVE_MODELS {
        let params = ModelParams::new(p, pp).unwrap();
        for r in 1..p {
            for s in 1..pp {
                let a = rocha_caridi(&params, r, s, QExp::int(40));
                let b = rocha_caridi(&params, p - r, pp - s, QExp::int(40));
                assert_eq!(a, b, "({p},{pp}) r={r} s={s}");
                assert_eq!(a.coeff_at(0), BigInt::from(1));
                assert_eq!(params.delta(r, s), params.delta(p - r, pp - s));
            }
        }
    }
}

#[test]
fn ising_vacuum_leading_terms() {
    let chi = rocha_caridi(&ModelParams::new(3, 4).unwrap(), 1, 1, QExp::int(7));
    let want: Vec<BigInt> = [1, 0, 1, 1, 2, 2, 3].into_iter().map(BigInt::from).collect();
    assert_eq!(chi.dense(0, 7), want);
}

#[test]
fn rigged_paths_against_gen_decomposition() {
    // sum_m q^{Delta(r,a)} GEN_m / (q)_m below degree 12 equals the rigged-path series
    let t = tau(3, 4);
    let params = *t.params();
    for r in 1..params.p {
        for a in 1..params.pp {
            let b = params.b_of(r, a).unwrap();
            let delta = params.delta(r, a);
            let cutoff = QExp::int(12);
            let mut sum = QSeries::zero_below(cutoff);
            for m in 0..=12usize {
                let g = path_side_gen(&t, r, a, b, m).unwrap();
                sum = &sum + &(&g * &poch_inv(Some(m as u64), cutoff));
            }
            let rigged = rigged_path_gf(&t, r, a, 12).unwrap();
            assert!(
                rigged.series.agreement(&sum.shift(delta)).is_equal(),
                "r={r} a={a}"
            );
        }
    }
}

#[test]
fn pi2_fusion_matches_supernomials() {
    for m in 0..=6 {
        let c = ch_pi2_fused(m);
        for l in -m..=m {
            assert_eq!(c.component(2 * l).flip().unwrap(), s_plain(m, l));
            assert_eq!(supernomial2(0, m, QExp::int(l)).unwrap(), c.component(2 * l));
        }
    }
}

#[test]
fn exact_sequence_sweep() {
    assert_passed(&verify_exact_sequence_chars(5));
}

#[test]
fn level1_characters() {
    let c0 = level1_char(0, QExp::int(10)).unwrap();
    assert_eq!(c0.component(2).min_exponent(), Some(QExp::ONE));
    let c1 = level1_char(1, QExp::int(10)).unwrap();
    assert_eq!(c1.component(1).coeff_at(0), BigInt::from(1));
    assert_eq!(c1.component(-1).min_exponent(), Some(QExp::ZERO));
    assert_eq!(c1.component(3).min_exponent(), Some(QExp::int(2)));
    assert_passed(&verify_pi2pi3(QExp::int(31)));
}

#[test]
fn i1_sector() {
    assert_passed(&verify_i1_sector(1, 6, QExp::int(30)));
    assert_passed(&verify_i1_sector(2, 5, QExp::int(30)));
}

#[test]
fn graded_pieces_nonnegative_k4() {
    for r in 1..=5 {
        for s in 1..=6 {
            for m in 0..=6 {
                let g = graded_13_char(4, r, s, m, QExp::int(20)).unwrap();
                assert!(g.has_nonnegative_coeffs(), "r={r} s={s} m={m}: {g}");
            }
        }
    }
}

#[test]
fn abf_stabilises() {
    // once N >= d + 2 the coefficients through degree d no longer change
    for (j, l) in [(0, 0), (0, 2), (1, 1)] {
        let lead = QExp::new((l - j) * (l - j), 4);
        let cut = lead + QExp::int(9);
        let reference = abf_finitized(9, 1, j, l).unwrap().truncate(cut);
        for n in 10..=14 {
            let s = abf_finitized(n, 1, j, l).unwrap().truncate(cut);
            assert_eq!(s, reference, "j={j} l={l} N={n}");
        }
        assert!(reference.agreement(&abf_target(1, j, l, 8)).is_equal());
    }
    assert_passed(&verify_abf(2, 20, 12));
}

#[test]
fn reports_independent_of_thread_count() {
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| verify_gen(&tau(4, 7), 5).to_json())
    };
    assert_eq!(run(1), run(4));
}
