use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::coloring::{binomial, BalancedComplex, Coloring, MultiDeg};
use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

/// `(f_{−1}, …, f_{d−1})`.
pub fn f_vector(c: &SimplicialComplex) -> Vec<i64> {
    (0..=c.d()).map(|k| c.num_faces(k) as i64).collect()
}

/// `h_i = Σ_j (−1)^{i−j} C(d−j, i−j) f_{j−1}` together with `Σ_i h_i`, which
/// equals `f_{d−1}`.
pub fn h_vector(c: &SimplicialComplex) -> (Vec<i64>, i64) {
    let f = f_vector(c);
    let h = h_from_f(&f);
    let s = h.iter().sum();
    (h, s)
}

pub fn h_from_f(f: &[i64]) -> Vec<i64> {
    let d = f.len() - 1;
    (0..=d)
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..=i {
                let t = binomial((d - j) as u32, (i - j) as u32) * BigInt::from(f[j]);
                if (i - j) % 2 == 0 {
                    acc += t;
                } else {
                    acc -= t;
                }
            }
            acc.to_i64().expect("h-vector entry fits in i64")
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagKind {
    FlagF,
    FlagH,
    FlagHPrime,
    FlagHDoublePrime,
}

/// Function on the box `[0, a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    pub kind: FlagKind,
    pub a: MultiDeg,
    pub values: BTreeMap<MultiDeg, BigInt>,
}

impl FlagVector {
    pub fn get(&self, b: &MultiDeg) -> &BigInt {
        &self.values[b]
    }

    pub fn get_i64(&self, b: &MultiDeg) -> i64 {
        self.values[b].to_i64().expect("flag entry fits in i64")
    }

    /// Sums over `|b| = i`, for `i = 0..=|a|`.
    pub fn coarse(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.a.total() as usize + 1];
        for (b, v) in &self.values {
            out[b.total() as usize] += v;
        }
        out
    }

    pub fn coarse_i64(&self) -> Vec<i64> {
        self.coarse().iter().map(|v| v.to_i64().expect("fits in i64")).collect()
    }

    fn transform(&self, kind: FlagKind, sign: bool) -> FlagVector {
        let mut values = BTreeMap::new();
        for b in self.a.box_iter() {
            let mut acc = BigInt::zero();
            for c in b.box_iter() {
                let t = self.a.checked_sub(&c).unwrap().binom(&b.checked_sub(&c).unwrap()) * &self.values[&c];
                if sign && (b.total() - c.total()) % 2 == 1 {
                    acc -= t;
                } else {
                    acc += t;
                }
            }
            values.insert(b, acc);
        }
        FlagVector { kind, a: self.a.clone(), values }
    }
}

/// Counts faces by color multidegree over `[0, a]`.
pub fn flag_f_vector(c: &SimplicialComplex, kappa: &Coloring, a: &MultiDeg) -> Result<FlagVector> {
    BalancedComplex::new(c.clone(), kappa.clone(), a.clone())?;
    let mut values: BTreeMap<MultiDeg, BigInt> = a.box_iter().map(|b| (b, BigInt::zero())).collect();
    for k in 0..=c.d() {
        for f in c.faces_of_size(k) {
            *values.get_mut(&kappa.multideg(f)).expect("balanced faces lie in the box") += 1;
        }
    }
    Ok(FlagVector { kind: FlagKind::FlagF, a: a.clone(), values })
}

pub fn flag_f_of(bc: &BalancedComplex) -> FlagVector {
    flag_f_vector(&bc.complex, &bc.coloring, &bc.a).expect("balanced by construction")
}

/// `h_b = Σ_{c ≤ b} (−1)^{|b|−|c|} C(a−c, b−c) f_c`.
pub fn flag_h_vector(ff: &FlagVector) -> FlagVector {
    ff.transform(FlagKind::FlagH, true)
}

/// Inverse transform: `f_b = Σ_{c ≤ b} C(a−c, b−c) h_c`.
pub fn flag_f_from_h(fh: &FlagVector) -> FlagVector {
    fh.transform(FlagKind::FlagF, false)
}

pub fn flag_h_of(bc: &BalancedComplex) -> FlagVector {
    flag_h_vector(&flag_f_of(bc))
}

/// Betti-corrected flag vectors. `betti[k]` is β̃_{k−1}, for k = 0..=d.
pub fn flag_h_prime_double_prime(fh: &FlagVector, betti: &[i64]) -> Result<(FlagVector, FlagVector)> {
    let a = &fh.a;
    let d = a.total() as usize;
    if betti.len() < d + 1 {
        return Err(Error::Input(format!("need {} Betti numbers (indices −1..{}), got {}", d + 1, d as i64 - 1, betti.len())));
    }
    let beta = |i: i64| -> BigInt { BigInt::from(betti[(i + 1) as usize]) };
    let mut hp = BTreeMap::new();
    let mut hpp = BTreeMap::new();
    for (b, h) in &fh.values {
        let s = b.total() as i64;
        let mut corr = BigInt::zero();
        for j in 1..s {
            if (s - j) % 2 == 0 {
                corr += beta(j - 1);
            } else {
                corr -= beta(j - 1);
            }
        }
        let binom = a.binom(b);
        let p = h - &binom * corr;
        let pp = if b == a { p.clone() } else { &p - &binom * beta(s - 1) };
        hp.insert(b.clone(), p);
        hpp.insert(b.clone(), pp);
    }
    Ok((
        FlagVector { kind: FlagKind::FlagHPrime, a: a.clone(), values: hp },
        FlagVector { kind: FlagKind::FlagHDoublePrime, a: a.clone(), values: hpp },
    ))
}
