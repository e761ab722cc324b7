use crate::qcore::QExp;

/// Integers `x` with `a x^2 + b x + c < cutoff` (`a > 0`), as an inclusive
/// range; the caller still filters, the range only bounds the scan.
pub(crate) fn quadratic_window(a: i64, b: i64, c: QExp, cutoff: QExp) -> (i64, i64) {
    assert!(a > 0, "quadratic window needs a positive leading coefficient");
    let f = |x: i64| QExp::int(a * x * x + b * x) + c;
    let vertex = (-b).div_euclid(2 * a);
    let mut lo = vertex;
    while f(lo - 1) < cutoff || f(lo) < cutoff {
        lo -= 1;
    }
    let mut hi = vertex + 1;
    while f(hi + 1) < cutoff || f(hi) < cutoff {
        hi += 1;
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn covers_every_solution() {
        for (a, b, c) in [(1, 0, 0), (12, -7, 3), (12, 11, -2), (3, 40, 0)] {
            let cutoff = QExp::int(30);
            let (lo, hi) = quadratic_window(a, b, QExp::int(c), cutoff);
            for x in -200..200 {
                if QExp::int(a * x * x + b * x + c) < cutoff {
                    assert!(lo <= x && x <= hi, "a={a} b={b} c={c} x={x}");
                }
            }
        }
    }
}
