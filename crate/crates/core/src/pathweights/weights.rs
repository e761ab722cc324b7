use super::tau::TauTable;
use crate::error::{Error, Result};
use crate::qcore::QExp;

/// `(s, s')` may appear as consecutive path entries.
pub fn valid_pair(s: i64, s_next: i64, pp: i64) -> bool {
    (1..pp).contains(&s)
        && (1..pp).contains(&s_next)
        && matches!(s - s_next, -2 | 0 | 2)
        && !(s == s_next && (s == 1 || s == pp - 1))
}

pub fn valid_triple(a: i64, b: i64, c: i64, pp: i64) -> bool {
    valid_pair(a, b, pp) && valid_pair(b, c, pp)
}

/// All valid triples in lexicographic order.
pub fn valid_triples(pp: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for b in 1..pp {
        for a in [b - 2, b, b + 2] {
            for c in [b - 2, b, b + 2] {
                if valid_triple(a, b, c, pp) {
                    out.push((a, b, c));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// The weight `w(a, b, c)` of three consecutive path entries.
pub fn weight(a: i64, b: i64, c: i64, tau: &TauTable) -> Result<QExp> {
    let pm = tau.params();
    if !valid_triple(a, b, c, pm.pp) {
        return Err(Error::InvalidTriple { a, b, c, pp: pm.pp });
    }
    let two = QExp::int(2);
    let w = match (a - b, c - b) {
        (0, 0) => QExp::int(3 - tau.label(b).value()),
        (-2, 2) | (2, -2) => pm.inv_t() * 2,
        (-2, 0) | (0, -2) => two - pm.frac_over_t(b - 1),
        (2, 0) | (0, 2) => QExp::ONE + pm.frac_over_t(b + 1),
        (-2, -2) => QExp::int(tau.label(a).xy().0) - pm.frac_over_t(a + 1) * 2,
        (2, 2) => {
            pm.frac_over_t(a + 1) * 2 - pm.inv_t() * 4 + QExp::int(tau.label(a).xy().1)
        }
        _ => unreachable!("validated triple"),
    };
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathweights::params::ModelParams;

    fn ising() -> TauTable {
        TauTable::new(ModelParams::new(3, 4).unwrap()).unwrap()
    }

    #[test]
    fn ising_weights() {
        let t = ising();
        assert_eq!(weight(1, 3, 1, &t).unwrap(), QExp::ONE);
        assert_eq!(weight(3, 1, 3, &t).unwrap(), QExp::ONE);
        assert!(weight(1, 1, 3, &t).is_err());
    }

    #[test]
    fn straight_steps() {
        for (p, pp) in [(3, 5), (4, 7), (5, 7)] {
            let t = TauTable::new(ModelParams::new(p, pp).unwrap()).unwrap();
            for s in 3..pp - 2 {
                assert_eq!(weight(s - 2, s, s + 2, &t).unwrap(), QExp::new(2 * p, pp));
                assert_eq!(weight(s + 2, s, s - 2, &t).unwrap(), QExp::new(2 * p, pp));
            }
        }
    }

    #[test]
    fn edge_values() {
        // w(1,3,1) and its mirror both equal 4 - 4/t
        for m in ModelParams::path_models(20) {
            let t = TauTable::new(m).unwrap();
            let expect = QExp::int(4) - m.inv_t() * 4;
            assert_eq!(weight(1, 3, 1, &t).unwrap(), expect, "{m:?}");
            let pp = m.pp;
            assert_eq!(weight(pp - 1, pp - 3, pp - 1, &t).unwrap(), expect, "{m:?}");
        }
    }

    #[test]
    fn triple_listing() {
        // p' = 4: entries 1..3, pairs (1,3),(3,1),(2,2) only within parity classes
        let t = valid_triples(4);
        assert!(t.contains(&(1, 3, 1)));
        assert!(t.contains(&(2, 2, 2)));
        assert!(!t.contains(&(1, 1, 3)));
    }
}
