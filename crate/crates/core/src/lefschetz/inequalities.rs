use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::report::{CheckRecord, CheckReport, CheckVerdict};
use super::slp::{describe, gf2};
use crate::complex::{binomial, flag_h_of, flag_h_prime_double_prime, BalancedComplex, FlagVector, MultiDeg};
use crate::error::{Error, Result};
use crate::homology::{is_doubly_cm, is_homology_manifold, is_homology_sphere, reduced_betti};
use crate::verdict::Verdict;

/// The face-number inequalities that the verifier knows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    /// `h_b ≤ h_c` for `b ≤ c ≤ a−b`, homology spheres.
    FlagMonotone,
    /// `h_i / C(m+i−1, i) ≤ h_{i+1} / C(m+i, i+1)` for `i ≤ min (a_j−1)/2`.
    HRatio,
    /// `h''_c ≥ h''_b + C(a, b) β̃_{|b|}` for `b ⪇ c ⪇ a−b`, manifolds.
    ManifoldFlag,
    /// The coarse manifold version with `h''` and Betti corrections.
    ManifoldRatio,
    /// `h_b ≤ h_c` for `b ≤ c ≤ a−b`, doubly Cohen–Macaulay complexes.
    TwoCmFlag,
}

impl Inequality {
    pub const ALL: [Inequality; 5] =
        [Inequality::FlagMonotone, Inequality::HRatio, Inequality::ManifoldFlag, Inequality::ManifoldRatio, Inequality::TwoCmFlag];

    pub fn name(self) -> &'static str {
        match self {
            Inequality::FlagMonotone => "flag-h-monotone",
            Inequality::HRatio => "h-ratio",
            Inequality::ManifoldFlag => "manifold-flag-h",
            Inequality::ManifoldRatio => "manifold-h-ratio",
            Inequality::TwoCmFlag => "2cm-flag-h",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Inequality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Inequality::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown inequality `{s}` (expected one of {})", Inequality::ALL.map(|i| i.name()).join(", "))))
    }
}

fn int(x: &BigInt) -> i64 {
    x.to_i64().expect("face numbers fit in i64")
}

/// `b ≤ c ≤ a − b`, or the strict version `b ⪇ c ⪇ a − b`.
fn sandwiched(a: &MultiDeg, strict: bool) -> Vec<(MultiDeg, MultiDeg)> {
    let mut out = Vec::new();
    for b in a.box_iter() {
        let Some(top) = a.checked_sub(&b) else { continue };
        if !b.le(&top) {
            continue;
        }
        for c in top.box_iter().filter(|c| b.le(c)) {
            if strict && (c == b || c == top) {
                continue;
            }
            out.push((b.clone(), c));
        }
    }
    out
}

/// Largest `i` with `2i + 1 ≤ a_j` for all `j`.
fn ratio_range(a: &MultiDeg) -> Option<usize> {
    let m = *a.0.iter().min()?;
    (m >= 1).then(|| ((m - 1) / 2) as usize)
}

fn inequality_record(statement: &str, degrees: Vec<MultiDeg>, lhs: i64, rhs: i64, hyp: bool, text: &str) -> CheckRecord {
    let holds = lhs <= rhs;
    let verdict = match (holds, hyp) {
        (true, _) => CheckVerdict::Certified,
        (false, true) => CheckVerdict::Refuted,
        (false, false) => CheckVerdict::HypothesisUnmet,
    };
    let mut r = CheckRecord::new(statement, degrees, Vec::new(), verdict);
    r.values = vec![lhs, rhs];
    r.holds = Some(holds);
    if holds {
        r.with_provenance("exact integer arithmetic on computed flag vectors")
    } else {
        r.with_witness(format!("{text}: {lhs} > {rhs}"))
    }
}

fn monotone(statement: &str, h: &FlagVector, hyp: bool) -> Vec<CheckRecord> {
    sandwiched(&h.a, false)
        .into_iter()
        .map(|(b, c)| {
            let (x, y) = (h.get_i64(&b), h.get_i64(&c));
            let text = format!("h_{b} ≤ h_{c} fails");
            inequality_record(statement, vec![b, c], x, y, hyp, &text)
        })
        .collect()
}

fn h_ratio(h: &FlagVector, hyp: bool) -> Vec<CheckRecord> {
    let m = h.a.len() as u32;
    let coarse = h.coarse_i64();
    let Some(top) = ratio_range(&h.a) else { return Vec::new() };
    (0..=top)
        .map(|i| {
            let iu = i as u32;
            // h_i · C(m+i, i+1) ≤ h_{i+1} · C(m+i−1, i)
            let lhs = int(&(BigInt::from(coarse[i]) * binomial(m + iu, iu + 1)));
            let rhs = int(&(BigInt::from(coarse[i + 1]) * binomial(m + iu - 1, iu)));
            let deg = vec![MultiDeg(vec![iu]), MultiDeg(vec![iu + 1])];
            inequality_record("h-ratio", deg, lhs, rhs, hyp, &format!("h-ratio fails at i = {i}"))
        })
        .collect()
}

fn manifold_flag(hpp: &FlagVector, betti: &[i64], hyp: bool) -> Vec<CheckRecord> {
    let a = &hpp.a;
    let beta = |i: usize| betti.get(i + 1).copied().unwrap_or(0);
    sandwiched(a, true)
        .into_iter()
        .map(|(b, c)| {
            let lhs = int(&(hpp.get(&b) + a.binom(&b) * BigInt::from(beta(b.total() as usize))));
            let rhs = hpp.get_i64(&c);
            let text = format!("h''_{b} + C(a, b)·β̃_{} ≤ h''_{c} fails", b.total());
            inequality_record("manifold-flag-h", vec![b, c], lhs, rhs, hyp, &text)
        })
        .collect()
}

fn manifold_ratio(hpp: &FlagVector, betti: &[i64], hyp: bool) -> Vec<CheckRecord> {
    let a = &hpp.a;
    let m = a.len();
    let d = a.total();
    let coarse = hpp.coarse_i64();
    let beta = |i: usize| betti.get(i + 1).copied().unwrap_or(0);
    let Some(top) = ratio_range(a) else { return Vec::new() };
    (0..=top)
        .map(|i| {
            let iu = i as u32;
            let lhs = (BigInt::from(coarse[i]) + binomial(d, iu) * BigInt::from(beta(i))) * binomial(m as u32 + iu, iu + 1);
            let rhs = BigInt::from(coarse[i + 1]) * binomial(m as u32 + iu - 1, iu);
            let deg = vec![MultiDeg(vec![iu]), MultiDeg(vec![iu + 1])];
            // the averaging step needs every pair (b, b+e_j) with |b| = i strictly inside
            let boundary = a.box_iter().filter(|b| b.total() == iu).any(|b| (0..m).any(|j| b.scale(2).add(&MultiDeg::unit(m, j)) == *a));
            if boundary {
                let mut r = inequality_record("manifold-h-ratio-boundary", deg, int(&lhs), int(&rhs), hyp, &format!("fails at i = {i}"));
                let note = "boundary case: some b with |b| = i has 2b + e_j = a, outside the strict range b ⪇ c ⪇ a−b";
                if r.holds == Some(false) {
                    r.verdict = CheckVerdict::Inconclusive;
                    r.witness = Some(format!("{}; {note}", r.witness.unwrap_or_default()));
                } else {
                    r.provenance = Some(format!("{}; {note}", r.provenance.unwrap_or_default()));
                }
                r
            } else {
                inequality_record("manifold-h-ratio", deg, int(&lhs), int(&rhs), hyp, &format!("manifold h-ratio fails at i = {i}"))
            }
        })
        .collect()
}

/// Evaluates the selected inequalities on the flag vectors of `bc`. The
/// Betti numbers (`betti[k] = β̃_{k−1}`) default to those over GF(2).
pub fn verify_inequalities(bc: &BalancedComplex, which: &[Inequality], betti: Option<&[i64]>) -> Result<CheckReport> {
    if which.is_empty() {
        return Err(Error::Input("no inequality selected".into()));
    }
    let mut report = CheckReport::new("flag face-number inequalities", &describe(bc));
    let f2 = gf2();
    let h = flag_h_of(bc);
    let betti: Vec<i64> = match betti {
        Some(b) => b.to_vec(),
        None => reduced_betti(&bc.complex, &f2).values,
    };
    let mut sphere = None;
    let mut manifold = None;
    let mut twocm = None;
    let mut hpp = None;
    for &w in which {
        match w {
            Inequality::FlagMonotone | Inequality::HRatio => {
                let v = sphere.get_or_insert_with(|| is_homology_sphere(&bc.complex, &f2)).clone();
                report.hypothesis(&format!("{w}: homology sphere over GF(2)"), v.clone());
                if w == Inequality::FlagMonotone {
                    report.extend(monotone("flag-h-monotone", &h, v.holds));
                } else {
                    report.extend(h_ratio(&h, v.holds));
                }
            }
            Inequality::ManifoldFlag | Inequality::ManifoldRatio => {
                let v = manifold
                    .get_or_insert_with(|| {
                        let m = is_homology_manifold(&bc.complex, &f2);
                        let connected = betti.first().copied().unwrap_or(0) == 0 && betti.get(1).copied().unwrap_or(0) == 0;
                        match (m.holds, connected) {
                            (true, true) => Verdict::yes(),
                            (true, false) => Verdict::no("not connected"),
                            _ => m,
                        }
                    })
                    .clone();
                report.hypothesis(&format!("{w}: connected homology manifold over GF(2)"), v.clone());
                if hpp.is_none() {
                    hpp = Some(flag_h_prime_double_prime(&h, &betti)?.1);
                }
                let hpp = hpp.as_ref().expect("set above");
                if w == Inequality::ManifoldFlag {
                    report.extend(manifold_flag(hpp, &betti, v.holds));
                } else {
                    report.extend(manifold_ratio(hpp, &betti, v.holds));
                }
            }
            Inequality::TwoCmFlag => {
                let v = twocm.get_or_insert_with(|| is_doubly_cm(&bc.complex, &f2)).clone();
                report.hypothesis(&format!("{w}: doubly Cohen-Macaulay over GF(2)"), v.clone());
                report.extend(monotone("2cm-flag-h", &h, v.holds));
            }
        }
    }
    Ok(report.finish(None))
}
