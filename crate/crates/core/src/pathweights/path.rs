use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use super::tau::TauTable;
use super::weights::{valid_pair, weight};
use crate::error::{Error, Result};
use crate::qcore::QExp;

/// A restricted path `(s_0, ..., s_m)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    steps: Vec<i64>,
}

impl Path {
    pub fn new(steps: Vec<i64>, pp: i64) -> Result<Self> {
        let bad = |reason: String| Error::InvalidPath {
            steps: steps.clone(),
            reason,
        };
        if steps.is_empty() {
            return Err(bad("a path has at least one entry".into()));
        }
        if let Some(s) = steps.iter().find(|s| !(1..pp).contains(*s)) {
            return Err(bad(format!("entry {s} outside [1, {}]", pp - 1)));
        }
        for w in steps.windows(2) {
            if !valid_pair(w[0], w[1], pp) {
                return Err(bad(format!("step ({}, {}) not allowed", w[0], w[1])));
            }
        }
        Ok(Path { steps })
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn start(&self) -> i64 {
        self.steps[0]
    }

    pub fn end(&self) -> i64 {
        *self.steps.last().expect("nonempty")
    }

    /// `E = sum_{i=1}^{m-1} i w(s_{i-1}, s_i, s_{i+1})`.
    pub fn energy(&self, tau: &TauTable) -> QExp {
        let mut e = QExp::ZERO;
        for (i, w) in self.steps.windows(3).enumerate() {
            let wi = weight(w[0], w[1], w[2], tau).expect("path steps are valid");
            e += wi * (i as i64 + 1);
        }
        e
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Entries reachable from `s` in one step.
pub fn neighbours(s: i64, pp: i64) -> impl Iterator<Item = i64> {
    [s - 2, s, s + 2]
        .into_iter()
        .filter(move |&n| valid_pair(s, n, pp))
}

/// All paths of length `m` from `a` to `b`, in lexicographic order.
pub fn enumerate_paths(a: i64, b: i64, m: usize, pp: i64) -> Vec<Path> {
    let mut out = Vec::new();
    if !(1..pp).contains(&a) || !(1..pp).contains(&b) || (a - b) % 2 != 0 {
        return out;
    }
    let mut stack = vec![a];
    fn go(stack: &mut Vec<i64>, b: i64, m: usize, pp: i64, out: &mut Vec<Path>) {
        let cur = *stack.last().expect("nonempty");
        let left = m + 1 - stack.len();
        if left == 0 {
            if cur == b {
                out.push(Path {
                    steps: stack.clone(),
                });
            }
            return;
        }
        if (cur - b).unsigned_abs() as usize > 2 * left {
            return;
        }
        for n in neighbours(cur, pp) {
            stack.push(n);
            go(stack, b, m, pp, out);
            stack.pop();
        }
    }
    go(&mut stack, b, m, pp, &mut out);
    out
}

/// `|P_{a,b,m}|` by powers of the adjacency matrix.
pub fn count_paths(a: i64, b: i64, m: usize, pp: i64) -> BigInt {
    if !(1..pp).contains(&a) || !(1..pp).contains(&b) {
        return BigInt::zero();
    }
    let n = (pp - 1) as usize;
    let mut v = vec![BigInt::zero(); n];
    v[(a - 1) as usize] = BigInt::from(1);
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); n];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for nb in neighbours(i as i64 + 1, pp) {
                next[(nb - 1) as usize] += c;
            }
        }
        v = next;
    }
    v[(b - 1) as usize].clone()
}

/// A path with rigging `(n_1, ..., n_m)` in the module `M_{r, s_0}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiggedPath {
    pub path: Path,
    pub rigging: Vec<QExp>,
    pub r: i64,
}

impl RiggedPath {
    pub fn new(path: Path, rigging: Vec<QExp>, r: i64) -> Result<Self> {
        if rigging.len() != path.len() {
            return Err(Error::Precondition(format!(
                "path of length {} needs {} rigging entries, got {}",
                path.len(),
                path.len(),
                rigging.len()
            )));
        }
        Ok(RiggedPath { path, rigging, r })
    }

    /// `n_i` lies in `Z + Delta_{r,s_{i-1}} - Delta_{r,s_i}` for every `i`.
    pub fn rigging_in_lattice(&self, params: &ModelParams) -> bool {
        let s = self.path.steps();
        self.rigging.iter().enumerate().all(|(i, n)| {
            n.congruent(params.delta(self.r, s[i]) - params.delta(self.r, s[i + 1]))
        })
    }

    /// `n_i - n_{i+1} >= w(s_{i-1}, s_i, s_{i+1})` for `1 <= i < m`.
    pub fn satisfies_adm(&self, tau: &TauTable) -> bool {
        let s = self.path.steps();
        (1..self.rigging.len()).all(|i| {
            let w = weight(s[i - 1], s[i], s[i + 1], tau).expect("path steps are valid");
            self.rigging[i - 1] - self.rigging[i] >= w
        })
    }

    /// `n_m >= Delta_{r,s_{m-1}} - Delta_{r,s_m} + delta_{s_{m-1}, s_m}`.
    pub fn satisfies_bdr(&self, params: &ModelParams) -> bool {
        let m = self.rigging.len();
        if m == 0 {
            return true;
        }
        let s = self.path.steps();
        self.rigging[m - 1] >= last_rigging_bound(params, self.r, s[m - 1], s[m])
    }

    pub fn is_admissible(&self, params: &ModelParams, tau: &TauTable) -> bool {
        self.rigging_in_lattice(params) && self.satisfies_adm(tau) && self.satisfies_bdr(params)
    }

    /// `Delta_{r,b} + sum n_i`.
    pub fn degree(&self, params: &ModelParams) -> QExp {
        let mut d = params.delta(self.r, self.path.end());
        for n in &self.rigging {
            d += *n;
        }
        d
    }
}

/// Lower bound on `n_m` for a path ending `(.., s_prev, s_last)`.
pub fn last_rigging_bound(params: &ModelParams, r: i64, s_prev: i64, s_last: i64) -> QExp {
    let delta = if s_prev == s_last { 1 } else { 0 };
    params.delta(r, s_prev) - params.delta(r, s_last) + QExp::int(delta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_validation() {
        assert!(Path::new(vec![1, 3, 1], 4).is_ok());
        assert!(Path::new(vec![1, 1], 4).is_err());
        assert!(Path::new(vec![3, 3], 4).is_err());
        assert!(Path::new(vec![2, 2], 4).is_ok());
        assert!(Path::new(vec![1, 2], 4).is_err());
        assert!(Path::new(vec![0], 4).is_err());
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_paths(2, 2, 0, 4).len(), 1);
        assert!(enumerate_paths(1, 3, 0, 4).is_empty());
        let p = enumerate_paths(1, 1, 2, 4);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].steps(), &[1, 3, 1]);
        assert!(enumerate_paths(1, 2, 3, 7).is_empty());
    }

    #[test]
    fn enumeration_is_sorted_and_counted() {
        for pp in [5, 7, 8] {
            for a in 1..pp {
                for b in 1..pp {
                    for m in 0..6 {
                        let ps = enumerate_paths(a, b, m, pp);
                        assert!(ps.windows(2).all(|w| w[0] < w[1]));
                        assert_eq!(BigInt::from(ps.len()), count_paths(a, b, m, pp));
                    }
                }
            }
        }
    }

    #[test]
    fn ising_energy() {
        let tau = TauTable::new(ModelParams::new(3, 4).unwrap()).unwrap();
        let p = Path::new(vec![1, 3, 1], 4).unwrap();
        assert_eq!(p.energy(&tau), QExp::ONE);
        assert_eq!(Path::new(vec![1, 3], 4).unwrap().energy(&tau), QExp::ZERO);
    }

    #[test]
    fn rigged_path_checks() {
        let params = ModelParams::new(3, 4).unwrap();
        let tau = TauTable::new(params).unwrap();
        let path = Path::new(vec![1, 3, 1], 4).unwrap();
        // n_2 >= Delta(1,3) - Delta(1,1) = 1/2, n_1 - n_2 >= w(1,3,1) = 1
        let ok = RiggedPath::new(path.clone(), vec![QExp::new(3, 2), QExp::new(1, 2)], 1).unwrap();
        assert!(ok.is_admissible(&params, &tau));
        assert_eq!(ok.degree(&params), QExp::int(2));
        let tight = RiggedPath::new(path.clone(), vec![QExp::new(1, 2), QExp::new(1, 2)], 1).unwrap();
        assert!(!tight.satisfies_adm(&tau));
        let off = RiggedPath::new(path, vec![QExp::int(2), QExp::int(1)], 1).unwrap();
        assert!(!off.rigging_in_lattice(&params));
    }
}
