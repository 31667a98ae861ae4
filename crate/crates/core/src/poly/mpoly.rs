use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::field::Field;

/// Hard ceiling on variables per symbolic context (exponent vectors are
/// fixed-size arrays).
pub const MAX_VARS: usize = 32;

/// Exponent vector; ordered lexicographically with variable 0 most
/// significant, which is a monomial order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub [u8; MAX_VARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; MAX_VARS]);

    pub fn var(i: usize) -> Mono {
        let mut m = Mono::ONE;
        m.0[i] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = self.0[i].checked_add(other.0[i]).expect("exponent overflow in Mono::mul");
        }
        Mono(out)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        let mut out = [0u8; MAX_VARS];
        for i in 0..MAX_VARS {
            out[i] = other.0[i] - self.0[i];
        }
        Mono(out)
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { format!("v{i}") } else { format!("v{i}^{e}") })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// Polynomial over GF(2): a sorted set of monomials (coefficient 1 each).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MPoly {
    terms: Vec<Mono>,
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|m| format!("{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sorts and cancels pairs (coefficients live in GF(2)).
fn canonicalize(mut v: Vec<Mono>) -> Vec<Mono> {
    v.sort_unstable();
    let mut out: Vec<Mono> = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut j = i + 1;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = j;
    }
    out
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        MPoly { terms: vec![Mono::ONE] }
    }

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} exceeds MAX_VARS");
        MPoly { terms: vec![Mono::var(i)] }
    }

    pub fn monomial(m: Mono) -> Self {
        MPoly { terms: vec![m] }
    }

    pub fn from_terms(terms: Vec<Mono>) -> Self {
        MPoly { terms: canonicalize(terms) }
    }

    pub fn terms(&self) -> &[Mono] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == Mono::ONE
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&Mono> {
        self.terms.last()
    }

    pub fn trailing(&self) -> Option<&Mono> {
        self.terms.first()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Highest variable index used, plus one.
    pub fn var_span(&self) -> usize {
        self.terms
            .iter()
            .map(|m| m.0.iter().rposition(|&e| e > 0).map_or(0, |i| i + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MPoly { terms: out }
    }

    pub fn mul_mono(&self, m: &Mono) -> MPoly {
        // a monomial order is preserved by multiplication
        MPoly { terms: self.terms.iter().map(|t| t.mul(m)).collect() }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if self.is_monomial() {
            return other.mul_mono(&self.terms[0]);
        }
        if other.is_monomial() {
            return self.mul_mono(&other.terms[0]);
        }
        let mut v = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                v.push(a.mul(b));
            }
        }
        MPoly { terms: canonicalize(v) }
    }

    pub fn square(&self) -> MPoly {
        // Frobenius: (Σ m)^2 = Σ m^2 in characteristic 2
        MPoly { terms: self.terms.iter().map(|t| t.mul(t)).collect() }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut v: Vec<Mono> = Vec::new();
        for t in &self.terms {
            if t.0[var] % 2 == 1 {
                let mut m = *t;
                m.0[var] -= 1;
                v.push(m);
            }
        }
        // lowering one exponent can reorder terms and merge them
        MPoly { terms: canonicalize(v) }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        let ld = *d.leading().unwrap();
        let td = *d.trailing().unwrap();
        if !ld.divides(self.leading().unwrap()) || !td.divides(self.trailing().unwrap()) {
            return None;
        }
        if d.is_monomial() {
            let mut out = Vec::with_capacity(self.len());
            for t in &self.terms {
                if !ld.divides(t) {
                    return None;
                }
                out.push(ld.quotient_of(t));
            }
            return Some(MPoly { terms: out });
        }
        if self.len() < d.len() {
            return None;
        }
        let mut rem: BTreeSet<Mono> = self.terms.iter().copied().collect();
        let mut quot = Vec::new();
        while let Some(&lt) = rem.iter().next_back() {
            if !ld.divides(&lt) {
                return None;
            }
            let q = ld.quotient_of(&lt);
            quot.push(q);
            for t in &d.terms {
                let m = t.mul(&q);
                if !rem.remove(&m) {
                    rem.insert(m);
                }
            }
        }
        Some(MPoly { terms: canonicalize(quot) })
    }

    /// Unique decomposition `f = Σ_e g_e(p²) p^e` over parity vectors `e`.
    /// Each `g_e` is returned in the squared variables `q = p²`.
    pub fn frobenius_split(&self) -> BTreeMap<u64, MPoly> {
        let mut parts: BTreeMap<u64, Vec<Mono>> = BTreeMap::new();
        for t in &self.terms {
            let mut parity = 0u64;
            let mut half = [0u8; MAX_VARS];
            for (i, &e) in t.0.iter().enumerate() {
                if e % 2 == 1 {
                    parity |= 1 << i;
                }
                half[i] = e / 2;
            }
            parts.entry(parity).or_default().push(Mono(half));
        }
        parts.into_iter().map(|(k, v)| (k, MPoly::from_terms(v))).collect()
    }

    /// Inverse of [`MPoly::frobenius_split`].
    pub fn frobenius_join(parts: &BTreeMap<u64, MPoly>) -> MPoly {
        let mut v = Vec::new();
        for (parity, g) in parts {
            let mut shift = Mono::ONE;
            for i in 0..MAX_VARS {
                if parity >> i & 1 == 1 {
                    shift.0[i] = 1;
                }
            }
            for t in g.terms() {
                v.push(t.mul(t).mul(&shift));
            }
        }
        MPoly::from_terms(v)
    }

    /// Evaluates at a point of a field of characteristic 2.
    pub fn eval<F: Field>(&self, f: &F, point: &[F::Elem]) -> F::Elem {
        debug_assert_eq!(f.characteristic(), 2);
        let mut acc = f.zero();
        for t in &self.terms {
            let mut prod = f.one();
            for (i, &e) in t.0.iter().enumerate() {
                if e > 0 {
                    prod = f.mul(&prod, &f.pow(&point[i], e as u64));
                }
            }
            acc = f.add(&acc, &prod);
        }
        acc
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Mono {
        let mut g = match self.terms.first() {
            Some(t) => *t,
            None => return Mono::ONE,
        };
        for t in &self.terms[1..] {
            for i in 0..MAX_VARS {
                g.0[i] = g.0[i].min(t.0[i]);
            }
        }
        g
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|m| {
                let factors: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        let n = names.get(i).cloned().unwrap_or_else(|| format!("v{i}"));
                        if e == 1 {
                            n
                        } else {
                            format!("{n}^{e}")
                        }
                    })
                    .collect();
                if factors.is_empty() {
                    "1".into()
                } else {
                    factors.join("*")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2k;
    use proptest::prelude::*;

    fn mono(exps: &[(usize, u8)]) -> Mono {
        let mut m = Mono::ONE;
        for &(i, e) in exps {
            m.0[i] = e;
        }
        m
    }

    fn poly(terms: &[&[(usize, u8)]]) -> MPoly {
        MPoly::from_terms(terms.iter().map(|t| mono(t)).collect())
    }

    fn arb_poly(vars: usize) -> impl Strategy<Value = MPoly> {
        prop::collection::vec(prop::collection::vec(0u8..4, vars), 0..8).prop_map(move |ts| {
            MPoly::from_terms(
                ts.into_iter()
                    .map(|e| {
                        let mut m = Mono::ONE;
                        m.0[..e.len()].copy_from_slice(&e);
                        m
                    })
                    .collect(),
            )
        })
    }

    #[test]
    fn derivative_examples() {
        let p1p2 = poly(&[&[(0, 1), (1, 1)]]);
        assert_eq!(p1p2.derivative(0), MPoly::var(1));
        assert!(poly(&[&[(0, 2)]]).derivative(0).is_zero());
        assert_eq!(poly(&[&[(0, 3), (1, 1)]]).derivative(0), poly(&[&[(0, 2), (1, 1)]]));
    }

    #[test]
    fn frobenius_examples() {
        let f = poly(&[&[(0, 2), (1, 1)], &[(1, 3)]]);
        let split = f.frobenius_split();
        assert_eq!(split.len(), 1);
        assert_eq!(split[&0b10], poly(&[&[(0, 1)], &[(1, 1)]]));
        let g = poly(&[&[(0, 1), (1, 1)]]).frobenius_split();
        assert_eq!(g[&0b11], MPoly::one());
        let h = poly(&[&[(0, 2)], &[(1, 2)]]).frobenius_split();
        assert_eq!(h[&0], poly(&[&[(0, 1)], &[(1, 1)]]));
    }

    #[test]
    fn symbolic_two_by_two_det() {
        let (a, b, c, d) = (MPoly::var(0), MPoly::var(1), MPoly::var(2), MPoly::var(3));
        let det = a.mul(&d).add(&b.mul(&c));
        assert_eq!(det.len(), 2);
        assert_eq!(det.exact_div(&a), None);
        let sq = det.mul(&det);
        assert_eq!(sq, det.square());
        assert_eq!(sq.exact_div(&det), Some(det.clone()));
    }

    proptest! {
        #[test]
        fn frobenius_reassembles(f in arb_poly(5)) {
            prop_assert_eq!(MPoly::frobenius_join(&f.frobenius_split()), f);
        }

        #[test]
        fn leibniz_and_square_rule(f in arb_poly(4), g in arb_poly(4), v in 0usize..4) {
            let lhs = f.mul(&g).derivative(v);
            let rhs = f.derivative(v).mul(&g).add(&f.mul(&g.derivative(v)));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(f.square().mul(&g).derivative(v), f.square().mul(&g.derivative(v)));
        }

        #[test]
        fn exact_division_recovers_factor(f in arb_poly(4), g in arb_poly(4)) {
            prop_assume!(!g.is_zero());
            let fg = f.mul(&g);
            prop_assert_eq!(fg.exact_div(&g), Some(f.clone()));
            if let Some(q) = f.exact_div(&g) {
                prop_assert_eq!(q.mul(&g), f);
            }
        }

        #[test]
        fn evaluation_is_a_ring_map(f in arb_poly(3), g in arb_poly(3), x: [u64; 3]) {
            let field = Gf2k::new(32).unwrap();
            let pt: Vec<u64> = x.iter().map(|v| v & 0xffff_ffff).collect();
            prop_assert_eq!(
                f.mul(&g).eval(&field, &pt),
                field.mul(&f.eval(&field, &pt), &g.eval(&field, &pt))
            );
            prop_assert_eq!(
                f.add(&g).eval(&field, &pt),
                field.add(&f.eval(&field, &pt), &g.eval(&field, &pt))
            );
        }
    }
}
