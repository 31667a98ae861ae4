use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::complex::MultiDeg;
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::verdict::Verdict;

/// Outcome of one check. Ordered from best to worst for summaries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Certified,
    ProbabilisticPass,
    HypothesisUnmet,
    Inconclusive,
    Refuted,
}

impl CheckVerdict {
    pub fn is_pass(self) -> bool {
        matches!(self, CheckVerdict::Certified | CheckVerdict::ProbabilisticPass)
    }

    /// Process exit code for a report whose worst verdict is `self`.
    pub fn exit_code(self) -> i32 {
        match self {
            CheckVerdict::Certified | CheckVerdict::ProbabilisticPass => 0,
            CheckVerdict::Refuted => 1,
            CheckVerdict::HypothesisUnmet | CheckVerdict::Inconclusive => 2,
        }
    }
}

impl fmt::Display for CheckVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckVerdict::Certified => "certified",
            CheckVerdict::ProbabilisticPass => "probabilistic-pass",
            CheckVerdict::HypothesisUnmet => "hypothesis-unmet",
            CheckVerdict::Inconclusive => "inconclusive",
            CheckVerdict::Refuted => "refuted",
        };
        f.write_str(s)
    }
}

/// One rank or identity check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub statement: String,
    pub degrees: Vec<MultiDeg>,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Both sides of an inequality.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub values: Vec<i64>,
    /// Truth of an inequality, kept apart from the verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
    pub verdict: CheckVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Kernel vector, violated inequality, or the reason for the verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Why a certified verdict is sound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    #[serde(skip)]
    pub timing: Duration,
}

impl CheckRecord {
    pub fn new(statement: &str, degrees: Vec<MultiDeg>, dims: Vec<usize>, verdict: CheckVerdict) -> Self {
        CheckRecord {
            statement: statement.to_string(),
            degrees,
            dims,
            rank: None,
            values: Vec::new(),
            holds: None,
            verdict,
            seed: None,
            witness: None,
            provenance: None,
            timing: Duration::ZERO,
        }
    }

    pub fn with_rank(mut self, rank: usize) -> Self {
        self.rank = Some(rank);
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> Self {
        self.provenance = Some(p.into());
        self
    }

    pub fn with_timing(mut self, t: Duration) -> Self {
        self.timing = t;
        self
    }

    /// Total order on everything that is serialized.
    fn order(&self, other: &Self) -> Ordering {
        (&self.statement, &self.degrees, self.seed, &self.dims, self.verdict, self.rank, &self.values, self.holds)
            .cmp(&(&other.statement, &other.degrees, other.seed, &other.dims, other.verdict, other.rank, &other.values, other.holds))
            .then_with(|| (&self.witness, &self.provenance).cmp(&(&other.witness, &other.provenance)))
    }
}

/// A recorded (not enforced) hypothesis of the statement being probed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verdict: CheckVerdict,
    pub counts: BTreeMap<CheckVerdict, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub statement: String,
    pub instance: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hypotheses: Vec<Hypothesis>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl CheckReport {
    pub fn new(statement: &str, instance: &str) -> Self {
        CheckReport {
            statement: statement.to_string(),
            instance: instance.to_string(),
            hypotheses: Vec::new(),
            checks: Vec::new(),
            summary: Summary { verdict: CheckVerdict::Certified, counts: BTreeMap::new(), message: None },
        }
    }

    pub fn hypothesis(&mut self, name: &str, verdict: Verdict) {
        self.hypotheses.push(Hypothesis { name: name.to_string(), verdict });
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.verdict.holds)
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(rs);
    }

    /// Appends another report's records and hypotheses.
    pub fn absorb(&mut self, other: CheckReport) {
        for h in other.hypotheses {
            if !self.hypotheses.contains(&h) {
                self.hypotheses.push(h);
            }
        }
        self.checks.extend(other.checks);
    }

    pub fn total_time(&self) -> Duration {
        self.checks.iter().map(|r| r.timing).sum()
    }

    pub fn verdict(&self) -> CheckVerdict {
        self.summary.verdict
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.verdict.exit_code()
    }

    /// Failures on inputs whose hypotheses were not met are not
    /// refutations of anything.
    pub fn demote_unmet(&mut self) {
        if self.hypotheses_hold() {
            return;
        }
        let unmet: Vec<String> = self.hypotheses.iter().filter(|h| !h.verdict.holds).map(|h| h.name.clone()).collect();
        for r in &mut self.checks {
            if r.verdict == CheckVerdict::Refuted {
                r.verdict = CheckVerdict::HypothesisUnmet;
                let w = r.witness.take().unwrap_or_default();
                r.witness = Some(format!("{w} (hypothesis not met: {})", unmet.join(", ")));
            }
        }
    }

    /// Records of the same statement and degrees that disagree across seeds
    /// become inconclusive.
    pub fn reconcile_seeds(&mut self) {
        let mut groups: BTreeMap<(String, Vec<MultiDeg>), Vec<usize>> = BTreeMap::new();
        for (i, r) in self.checks.iter().enumerate() {
            if r.seed.is_some() {
                groups.entry((r.statement.clone(), r.degrees.clone())).or_default().push(i);
            }
        }
        for idx in groups.values() {
            let first = self.checks[idx[0]].verdict;
            if idx.iter().all(|&i| self.checks[i].verdict.is_pass() == first.is_pass()) {
                continue;
            }
            let seeds: Vec<String> = idx
                .iter()
                .map(|&i| format!("{}:{}", self.checks[i].seed.unwrap_or_default(), self.checks[i].verdict))
                .collect();
            for &i in idx {
                let r = &mut self.checks[i];
                r.verdict = CheckVerdict::Inconclusive;
                r.witness = Some(format!("verdicts disagree across seeds ({})", seeds.join(", ")));
            }
        }
    }

    /// Sorts the records and fills in the summary.
    pub fn finish(mut self, message: Option<String>) -> Self {
        self.checks.sort_by(|a, b| a.order(b));
        self.reconcile_seeds();
        self.checks.sort_by(|a, b| a.order(b));
        let mut counts = BTreeMap::new();
        for r in &self.checks {
            *counts.entry(r.verdict).or_insert(0) += 1;
        }
        let verdict = if self.checks.is_empty() {
            CheckVerdict::Inconclusive
        } else {
            self.checks.iter().map(|r| r.verdict).max().expect("nonempty")
        };
        self.summary = Summary { verdict, counts, message };
        self
    }

    /// Stable JSON (timings are left out).
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// Dims/ranks table, one row per record.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} on {}\n", self.statement, self.instance);
        for h in &self.hypotheses {
            out.push_str(&format!("  hypothesis {}: {}\n", h.name, h.verdict));
        }
        out.push_str(&format!("  {:<24} {:<24} {:<12} {:<6} {:<20} {}\n", "check", "degrees", "dims", "rank", "verdict", "seed"));
        for r in &self.checks {
            let degs: Vec<String> = r.degrees.iter().map(|d| d.to_string()).collect();
            let dims: Vec<String> = r.dims.iter().map(|d| d.to_string()).collect();
            out.push_str(&format!(
                "  {:<24} {:<24} {:<12} {:<6} {:<20} {}\n",
                r.statement,
                degs.join(" → "),
                dims.join(" → "),
                r.rank.map_or("-".into(), |x| x.to_string()),
                r.verdict.to_string(),
                r.seed.map_or("-".into(), |s| s.to_string())
            ));
            if let (Some(h), [lhs, rhs]) = (r.holds, r.values.as_slice()) {
                out.push_str(&format!("      {lhs} {} {rhs}\n", if h { "≤" } else { ">" }));
            }
            if let Some(w) = &r.witness {
                out.push_str(&format!("      {w}\n"));
            }
        }
        let counts: Vec<String> = self.summary.counts.iter().map(|(v, n)| format!("{v}: {n}")).collect();
        out.push_str(&format!("summary: {} ({})\n", self.summary.verdict, counts.join(", ")));
        if let Some(m) = &self.summary.message {
            out.push_str(&format!("{m}\n"));
        }
        out
    }
}

/// Which Lefschetz elements to multiply by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElementChoice {
    /// `ℓ_j = Σ_{κ(v)=j} x_v`.
    Canonical,
    /// Independent uniform coefficients, seeded.
    Random { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzConfig {
    pub element: ElementChoice,
    pub field: FieldDescriptor,
    /// One substituted l.s.o.p. per seed.
    pub seeds: Vec<u64>,
    /// Random Lefschetz elements drawn where a statement quantifies over
    /// all elements.
    pub trials: usize,
    pub symbolic: bool,
}

impl Default for LefschetzConfig {
    fn default() -> Self {
        LefschetzConfig {
            element: ElementChoice::Canonical,
            field: FieldDescriptor::DEFAULT,
            seeds: vec![1, 2, 3],
            trials: 3,
            symbolic: false,
        }
    }
}

impl LefschetzConfig {
    pub fn new(field: FieldDescriptor, seeds: Vec<u64>) -> Self {
        LefschetzConfig { field, seeds, ..Default::default() }
    }

    /// `count` consecutive seeds starting at `base`.
    pub fn seeds_from(base: u64, count: usize) -> Vec<u64> {
        (0..count as u64).map(|i| base.wrapping_add(i)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Input("trials must be at least 1".into()));
        }
        if self.seeds.is_empty() && !self.is_symbolic() {
            return Err(Error::Input("at least one seed is needed".into()));
        }
        Ok(())
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbolic || self.field == FieldDescriptor::Symbolic
    }
}
