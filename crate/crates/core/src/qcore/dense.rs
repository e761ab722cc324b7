//! Dense integer-exponent kernels. Index `i` of a slice holds the
//! coefficient of `q^i`; a `limit` keeps only indices `< limit`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn clamp(len: usize, limit: Option<usize>) -> usize {
    limit.map_or(len, |l| len.min(l))
}

/// Gaussian binomial `[n, k]_q` for `0 <= k <= n`, computed as the running
/// quotient `prod (1 - q^{n-k+i}) / (1 - q^i)`; every intermediate is itself
/// a polynomial, so truncating at each step stays exact.
pub(crate) fn qbinomial(n: u64, k: u64, limit: Option<usize>) -> Vec<BigInt> {
    if k > n {
        return Vec::new();
    }
    let k = k.min(n - k);
    let degree = (k * (n - k)) as usize;
    let len = clamp(degree + 1, limit);
    if len == 0 {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); len];
    c[0] = BigInt::one();
    let rest = n - k;
    for i in 1..=k {
        let up = (rest + i) as usize;
        for e in (up..len).rev() {
            let lower = c[e - up].clone();
            c[e] -= lower;
        }
        let down = i as usize;
        for e in down..len {
            let lower = c[e - down].clone();
            c[e] += lower;
        }
    }
    c
}

/// `1/(q)_m` below `len`; `None` is the infinite product.
pub(crate) fn poch_inv(m: Option<u64>, len: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); len];
    if len == 0 {
        return c;
    }
    c[0] = BigInt::one();
    let top = match m {
        Some(m) => (m as usize).min(len.saturating_sub(1)),
        None => len.saturating_sub(1),
    };
    for part in 1..=top {
        for e in part..len {
            let lower = c[e - part].clone();
            c[e] += lower;
        }
    }
    c
}

pub(crate) fn mul(a: &[BigInt], b: &[BigInt], limit: Option<usize>) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let len = clamp(a.len() + b.len() - 1, limit);
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate() {
        if i >= len {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j >= len {
                break;
            }
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn binomial_four_two() {
        assert_eq!(ints(&qbinomial(4, 2, None)), vec![1, 1, 2, 1, 1]);
    }

    #[test]
    fn binomial_truncated_prefix() {
        let full = qbinomial(10, 4, None);
        let cut = qbinomial(10, 4, Some(7));
        assert_eq!(&full[..7], &cut[..]);
    }

    #[test]
    fn poch_inv_one_is_geometric() {
        assert_eq!(ints(&poch_inv(Some(1), 4)), vec![1, 1, 1, 1]);
    }

    #[test]
    fn mul_respects_limit() {
        let a: Vec<BigInt> = [1, 1].iter().map(|&x| BigInt::from(x)).collect();
        let b: Vec<BigInt> = [1, -1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(ints(&mul(&a, &b, None)), vec![1, 0, -1]);
        assert_eq!(ints(&mul(&a, &b, Some(2))), vec![1, 0]);
    }
}
