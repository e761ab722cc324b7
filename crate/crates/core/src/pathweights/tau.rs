use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use super::weights::{valid_triples, weight};
use crate::error::{Error, Result};
use crate::report::{CaseResult, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TauLabel {
    #[serde(rename = "1A")]
    OneA,
    #[serde(rename = "1B")]
    OneB,
    #[serde(rename = "2")]
    Two,
}

impl TauLabel {
    pub fn value(self) -> i64 {
        match self {
            TauLabel::Two => 2,
            _ => 1,
        }
    }

    /// `(x(s), y(s))` entering the weights of `(s, s+2, s)` and `(s, s-2, s)`.
    pub fn xy(self) -> (i64, i64) {
        match self {
            TauLabel::OneA => (2, 3),
            TauLabel::OneB => (3, 2),
            TauLabel::Two => (2, 4),
        }
    }
}

impl fmt::Display for TauLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TauLabel::OneA => "1A",
            TauLabel::OneB => "1B",
            TauLabel::Two => "2",
        })
    }
}

/// How the `tau = 1` sites are split into `1A` and `1B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelRule {
    /// `1A` below `p'/2`, `1B` above.
    Halves,
    /// `1A, 1B, ...` from `s = 1`; each block after a `2` restarts at `1B`.
    Alternating,
}

impl LabelRule {
    /// Halves for `t < 3/2`, alternating for `t > 3/2`.
    pub fn for_params(params: &ModelParams) -> Self {
        if params.t() < Ratio::new(3, 2) {
            LabelRule::Halves
        } else {
            LabelRule::Alternating
        }
    }
}

/// Labels `tau(s)` for `s = 1 .. p'-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauTable {
    params: ModelParams,
    labels: Vec<TauLabel>,
}

impl TauTable {
    /// Builds the table with [`LabelRule::for_params`] and validates it.
    pub fn new(params: ModelParams) -> Result<Self> {
        params.require_path_regime()?;
        let table = TauTable::with_rule(params, LabelRule::for_params(&params));
        let violations = table.violations();
        if violations.is_empty() {
            Ok(table)
        } else {
            Err(Error::TauInvariant {
                p: params.p,
                pp: params.pp,
                violations,
            })
        }
    }

    /// Unvalidated table from an explicit rule.
    pub fn with_rule(params: ModelParams, rule: LabelRule) -> Self {
        let mut labels = Vec::with_capacity((params.pp - 1) as usize);
        let mut next_one = TauLabel::OneA;
        for s in 1..params.pp {
            if params.tau_value(s) == 2 {
                labels.push(TauLabel::Two);
                next_one = TauLabel::OneB;
                continue;
            }
            let label = match rule {
                LabelRule::Halves => {
                    if 2 * s < params.pp {
                        TauLabel::OneA
                    } else {
                        TauLabel::OneB
                    }
                }
                LabelRule::Alternating => next_one,
            };
            next_one = if label == TauLabel::OneA {
                TauLabel::OneB
            } else {
                TauLabel::OneA
            };
            labels.push(label);
        }
        TauTable { params, labels }
    }

    /// Unvalidated table from explicit labels (`labels[s-1]`).
    pub fn from_labels(params: ModelParams, labels: Vec<TauLabel>) -> Result<Self> {
        if labels.len() as i64 != params.pp - 1 {
            return Err(Error::Precondition(format!(
                "expected {} labels, got {}",
                params.pp - 1,
                labels.len()
            )));
        }
        Ok(TauTable { params, labels })
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn label(&self, s: i64) -> TauLabel {
        assert!(
            (1..self.params.pp).contains(&s),
            "tau label requested at s={s}"
        );
        self.labels[(s - 1) as usize]
    }

    pub fn labels(&self) -> &[TauLabel] {
        &self.labels
    }

    /// Every violated constraint, as a short description.
    pub fn violations(&self) -> Vec<String> {
        let pm = &self.params;
        let pp = pm.pp;
        let t = pm.t();
        let above_three_halves = t > Ratio::new(3, 2);
        let mut v = Vec::new();
        let mut fail = |name: &str, detail: String| v.push(format!("{name}: {detail}"));

        for s in 1..pp {
            if self.label(s).value() != pm.tau_value(s) {
                fail("numeric", format!("label({s})={} but tau={}", self.label(s), pm.tau_value(s)));
            }
        }
        if pm.tau_value(1) != 1 {
            fail("T1", "tau(1) != 1".into());
        }
        if pp > 3 {
            let want = if above_three_halves { 1 } else { 2 };
            if pm.tau_value(2) != want {
                fail("T2", format!("tau(2)={} expected {want}", pm.tau_value(2)));
            }
        }
        if pm.tau_value(pp - 1) != 2 {
            fail("T3", "tau(p'-1) != 2".into());
        }
        for s in 2..pp - 1 {
            if pm.tau_value(s) != pm.tau_value(pp - s) {
                fail("T4", format!("tau({s}) != tau({})", pp - s));
            }
        }
        if self.label(1) != TauLabel::OneA {
            fail("C1", format!("label(1)={}", self.label(1)));
        }
        if above_three_halves && self.label(2) != TauLabel::OneB {
            fail("C2", format!("label(2)={}", self.label(2)));
        }
        for s in 2..pp - 1 {
            let (a, b) = (self.label(s), self.label(pp - s));
            let ok = match a {
                TauLabel::OneA => b == TauLabel::OneB,
                TauLabel::OneB => b == TauLabel::OneA,
                TauLabel::Two => true,
            };
            if !ok {
                fail("R2", format!("label({s})={a} label({})={b}", pp - s));
            }
        }
        for s in 1..pp - 2 {
            if self.label(s) == TauLabel::OneB && self.label(s + 2) == TauLabel::OneA {
                fail("R3", format!("label({s})=1B and label({})=1A", s + 2));
            }
        }
        if above_three_halves {
            for s in 1..pp - 1 {
                if self.label(s) == TauLabel::Two && self.label(s + 1) == TauLabel::Two {
                    fail("L1", format!("tau({s}) = tau({}) = 2", s + 1));
                }
            }
        }
        let twos: Vec<i64> = (1..pp).filter(|&s| self.label(s) == TauLabel::Two).collect();
        for w in twos.windows(2) {
            let k = w[1] - w[0] - 1;
            if k % 2 != 0 {
                fail("L3", format!("{k} ones between 2's at s={} and s={}", w[0], w[1]));
            }
        }
        if pp % 2 == 0 && self.label(pp / 2) != TauLabel::Two {
            fail("midpoint", format!("label({})={}", pp / 2, self.label(pp / 2)));
        }
        for (a, b, c) in valid_triples(pp) {
            let w = weight(a, b, c, self).expect("triple is valid");
            let mirror = weight(pp - a, pp - b, pp - c, self).expect("mirror triple is valid");
            if w != mirror {
                fail("SYM", format!("w({a},{b},{c})={w} but mirror gives {mirror}"));
            }
            let reversed = weight(c, b, a, self).expect("reversed triple is valid");
            if w != reversed {
                fail("LR", format!("w({a},{b},{c})={w} but w({c},{b},{a})={reversed}"));
            }
        }
        v
    }
}

impl fmt::Display for TauTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Builds the labelling for every model with `p' <= pp_max` and `1 < t < 2`
/// and checks every constraint on it.
pub fn verify_tau(pp_max: i64) -> SuiteReport {
    SuiteReport::new(
        "tau",
        "tau(s) labels 1A/1B/2 satisfy T1-T4, C1, C2, R2, R3, SYM, L1, L3 and the even-p' midpoint rule",
    )
    .param("ppmax", pp_max)
    .run(ModelParams::path_models(pp_max), |pm| {
        let id = format!("p={}/pp={}", pm.p, pm.pp);
        let table = TauTable::with_rule(pm, LabelRule::for_params(&pm));
        let v = table.violations();
        vec![if v.is_empty() {
            CaseResult::pass(id, table.to_string())
        } else {
            CaseResult::fail(id, v.join("; "))
        }]
    })
}
