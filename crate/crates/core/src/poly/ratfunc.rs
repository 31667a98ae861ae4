use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex};

use rand::RngCore;

use super::{bareiss, det};
use super::mpoly::{MPoly, Mono, MAX_VARS};
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::linalg::Matrix;

/// Default cap on variables per symbolic context.
pub const DEFAULT_MAX_VARS: usize = 24;
/// Default cap on the number of terms of any intermediate polynomial.
pub const DEFAULT_MAX_TERMS: usize = 200_000;

/// Rational function over GF(2) with a factored denominator.
///
/// The denominator is kept as a product of "atoms" (polynomials that arose as
/// determinants or were inverted), each with a multiplicity. Cancellation is
/// attempted by trial division of the numerator by the atoms, which stands in
/// for a multivariate gcd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: Vec<(MPoly, u32)>,
}

fn merge_max(a: &[(MPoly, u32)], b: &[(MPoly, u32)]) -> Vec<(MPoly, u32)> {
    let mut out = a.to_vec();
    for (p, e) in b {
        match out.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => out[i].1 = out[i].1.max(*e),
            Err(i) => out.insert(i, (p.clone(), *e)),
        }
    }
    out
}

fn merge_sum(a: &[(MPoly, u32)], b: &[(MPoly, u32)]) -> Vec<(MPoly, u32)> {
    let mut out = a.to_vec();
    for (p, e) in b {
        match out.binary_search_by(|(q, _)| q.cmp(p)) {
            Ok(i) => out[i].1 += e,
            Err(i) => out.insert(i, (p.clone(), *e)),
        }
    }
    out
}

/// `∏ atom^(have_in_target − have)` for atoms in `target`.
fn cofactor(target: &[(MPoly, u32)], have: &[(MPoly, u32)]) -> MPoly {
    let mut acc = MPoly::one();
    for (p, e) in target {
        let h = have.iter().find(|(q, _)| q == p).map_or(0, |(_, f)| *f);
        for _ in h..*e {
            acc = acc.mul(p);
        }
    }
    acc
}

/// Splits a monomial atom into single-variable atoms so that they can cancel
/// independently.
fn push_atom(den: &mut Vec<(MPoly, u32)>, p: MPoly, e: u32) {
    if p.is_one() || e == 0 {
        return;
    }
    if p.is_monomial() {
        let m = p.terms()[0];
        for (i, &x) in m.0.iter().enumerate() {
            if x > 0 {
                let v = MPoly::var(i);
                match den.binary_search_by(|(q, _)| q.cmp(&v)) {
                    Ok(k) => den[k].1 += e * x as u32,
                    Err(k) => den.insert(k, (v, e * x as u32)),
                }
            }
        }
        return;
    }
    match den.binary_search_by(|(q, _)| q.cmp(&p)) {
        Ok(k) => den[k].1 += e,
        Err(k) => den.insert(k, (p, e)),
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: MPoly::zero(), den: Vec::new() }
    }

    pub fn one() -> Self {
        RatFunc { num: MPoly::one(), den: Vec::new() }
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc { num: p, den: Vec::new() }
    }

    /// `num / ∏ atoms^e`; cancellation is attempted immediately.
    pub fn from_parts(num: MPoly, atoms: Vec<(MPoly, u32)>) -> Self {
        assert!(atoms.iter().all(|(p, _)| !p.is_zero()), "zero denominator atom");
        let mut den = Vec::new();
        for (p, e) in atoms {
            push_atom(&mut den, p, e);
        }
        let mut r = RatFunc { num, den };
        r.cancel();
        r
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator_atoms(&self) -> &[(MPoly, u32)] {
        &self.den
    }

    pub fn denominator(&self) -> MPoly {
        cofactor(&self.den, &[])
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.num.len() + self.den.iter().map(|(p, _)| p.len()).sum::<usize>()
    }

    /// Divides out denominator atoms that divide the numerator.
    pub fn cancel(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut i = 0;
        while i < self.den.len() {
            let mut removed = false;
            while self.den[i].1 > 0 {
                match self.num.exact_div(&self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                    }
                    None => break,
                }
            }
            if self.den[i].1 == 0 {
                self.den.remove(i);
                removed = true;
            }
            if !removed {
                i += 1;
            }
        }
    }

    pub fn square(&self) -> RatFunc {
        RatFunc {
            num: self.num.square(),
            den: self.den.iter().map(|(p, e)| (p.clone(), 2 * e)).collect(),
        }
    }

    /// Numerators of `values` over their least common factored denominator.
    /// They differ from `values` by one common nonzero factor.
    pub fn common_numerators(values: &[RatFunc]) -> Vec<MPoly> {
        let den = values.iter().fold(Vec::new(), |acc, v| merge_max(&acc, &v.den));
        values.iter().map(|v| v.num.mul(&cofactor(&den, &v.den))).collect()
    }

    pub fn evaluate<F: Field>(&self, f: &F, point: &[F::Elem]) -> Result<F::Elem> {
        let n = self.num.eval(f, point);
        let d = self.denominator().eval(f, point);
        f.div(&n, &d)
    }
}

/// Variable names and budgets shared by every value of one symbolic run.
#[derive(Debug)]
pub struct SymbolicContext {
    names: Vec<String>,
    max_terms: usize,
    exceeded: AtomicBool,
    reason: Mutex<Option<String>>,
}

/// GF(2)(p_1, …, p_N) as a [`Field`].
///
/// Budget violations cannot be reported through infallible field operations,
/// so they trip a sticky flag (the offending result is replaced by zero) that
/// callers turn into [`Error::BudgetExceeded`] with [`RatFuncField::check`].
#[derive(Clone, Debug)]
pub struct RatFuncField {
    ctx: Arc<SymbolicContext>,
}

impl RatFuncField {
    pub fn new(names: Vec<String>) -> Result<Self> {
        Self::with_budget(names, DEFAULT_MAX_VARS, DEFAULT_MAX_TERMS)
    }

    pub fn with_budget(names: Vec<String>, max_vars: usize, max_terms: usize) -> Result<Self> {
        let limit = max_vars.min(MAX_VARS);
        if names.len() > limit {
            return Err(Error::BudgetExceeded(format!(
                "{} symbolic variables requested, limit is {limit}",
                names.len()
            )));
        }
        Ok(RatFuncField {
            ctx: Arc::new(SymbolicContext {
                names,
                max_terms,
                exceeded: AtomicBool::new(false),
                reason: Mutex::new(None),
            }),
        })
    }

    /// Same budgets with extra variables appended; values of `self` remain
    /// valid values of the result.
    pub fn extended(&self, extra: &[String]) -> Result<Self> {
        let mut names = self.ctx.names.clone();
        names.extend(extra.iter().cloned());
        if names.len() > MAX_VARS {
            return Err(Error::BudgetExceeded(format!("{} symbolic variables requested, limit is {MAX_VARS}", names.len())));
        }
        Ok(RatFuncField {
            ctx: Arc::new(SymbolicContext {
                names,
                max_terms: self.ctx.max_terms,
                exceeded: AtomicBool::new(false),
                reason: Mutex::new(None),
            }),
        })
    }

    pub fn names(&self) -> &[String] {
        &self.ctx.names
    }

    pub fn num_vars(&self) -> usize {
        self.ctx.names.len()
    }

    pub fn var(&self, i: usize) -> RatFunc {
        assert!(i < self.num_vars());
        RatFunc::from_poly(MPoly::var(i))
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.ctx.names.iter().position(|n| n == name)
    }

    pub fn max_terms(&self) -> usize {
        self.ctx.max_terms
    }

    fn trip(&self, what: String) {
        if !self.ctx.exceeded.swap(true, Ordering::SeqCst) {
            *self.ctx.reason.lock().expect("budget mutex") = Some(what);
        }
    }

    pub fn tripped(&self) -> bool {
        self.ctx.exceeded.load(Ordering::SeqCst)
    }

    /// Surfaces a tripped budget as an error.
    pub fn check(&self) -> Result<()> {
        if self.tripped() {
            let why = self.ctx.reason.lock().expect("budget mutex").clone().unwrap_or_default();
            return Err(Error::BudgetExceeded(why));
        }
        Ok(())
    }

    pub fn guard(&self, r: RatFunc) -> RatFunc {
        if r.num.len() > self.ctx.max_terms {
            self.trip(format!("intermediate numerator with {} terms (cap {})", r.num.len(), self.ctx.max_terms));
            return RatFunc::zero();
        }
        r
    }

    pub fn guard_poly(&self, p: MPoly) -> MPoly {
        if p.len() > self.ctx.max_terms {
            self.trip(format!("intermediate polynomial with {} terms (cap {})", p.len(), self.ctx.max_terms));
            return MPoly::zero();
        }
        p
    }

    /// Formal partial derivative in characteristic 2.
    ///
    /// With D = ∏ f_j^{e_j} and Π = ∏ f_j:
    /// ∂(N/D) = (∂N·Π + N·Σ_{e_j odd} ∂f_j·Π/f_j) / (D·Π).
    pub fn derivative(&self, a: &RatFunc, var: usize) -> RatFunc {
        if self.tripped() || a.is_zero() {
            return RatFunc::zero();
        }
        if a.den.is_empty() {
            return RatFunc::from_poly(self.guard_poly(a.num.derivative(var)));
        }
        let atoms: Vec<&MPoly> = a.den.iter().map(|(p, _)| p).collect();
        let pi = atoms.iter().fold(MPoly::one(), |acc, p| acc.mul(p));
        let mut num = a.num.derivative(var).mul(&pi);
        for (j, (f, e)) in a.den.iter().enumerate() {
            if e % 2 == 0 {
                continue;
            }
            let df = f.derivative(var);
            if df.is_zero() {
                continue;
            }
            let others = atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != j)
                .fold(MPoly::one(), |acc, (_, p)| acc.mul(p));
            num = num.add(&a.num.mul(&df).mul(&others));
        }
        let num = self.guard_poly(num);
        let den: Vec<(MPoly, u32)> = a.den.iter().map(|(p, e)| (p.clone(), e + 1)).collect();
        let mut r = RatFunc { num, den };
        r.cancel();
        self.guard(r)
    }

    pub fn format_named(&self, a: &RatFunc) -> String {
        let names = &self.ctx.names;
        let num = a.num.to_string_with(names);
        if a.den.is_empty() {
            return num;
        }
        let den: Vec<String> = a
            .den
            .iter()
            .map(|(p, e)| {
                let s = p.to_string_with(names);
                let s = if p.len() > 1 { format!("({s})") } else { s };
                if *e == 1 {
                    s
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        format!("({num}) / {}", den.join("*"))
    }
}

impl Field for RatFuncField {
    type Elem = RatFunc;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Symbolic
    }
    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::one()
    }
    fn from_i64(&self, v: i64) -> RatFunc {
        if v & 1 == 1 {
            RatFunc::one()
        } else {
            RatFunc::zero()
        }
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.num.is_zero()
    }
    fn equal(&self, a: &RatFunc, b: &RatFunc) -> bool {
        if a == b {
            return true;
        }
        let l = merge_max(&a.den, &b.den);
        a.num.mul(&cofactor(&l, &a.den)) == b.num.mul(&cofactor(&l, &b.den))
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if self.tripped() {
            return RatFunc::zero();
        }
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den == b.den {
            let mut r = RatFunc { num: a.num.add(&b.num), den: a.den.clone() };
            r.cancel();
            return self.guard(r);
        }
        let l = merge_max(&a.den, &b.den);
        let na = a.num.mul(&cofactor(&l, &a.den));
        let nb = b.num.mul(&cofactor(&l, &b.den));
        let mut r = RatFunc { num: self.guard_poly(na.add(&nb)), den: l };
        r.cancel();
        self.guard(r)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.clone()
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        if self.tripped() || a.is_zero() || b.is_zero() {
            return RatFunc::zero();
        }
        let num = self.guard_poly(a.num.mul(&b.num));
        let mut r = RatFunc { num, den: merge_sum(&a.den, &b.den) };
        r.cancel();
        self.guard(r)
    }
    fn inv(&self, a: &RatFunc) -> Result<RatFunc> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.guard_poly(a.denominator());
        let mut den = Vec::new();
        push_atom(&mut den, a.num.clone(), 1);
        let mut r = RatFunc { num, den };
        r.cancel();
        Ok(self.guard(r))
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn random(&self, rng: &mut dyn RngCore) -> RatFunc {
        self.from_i64((rng.next_u32() & 1) as i64)
    }
    fn format(&self, a: &RatFunc) -> String {
        self.format_named(a)
    }
    fn check_budget(&self) -> Result<()> {
        self.check()
    }
    fn parse(&self, s: &str) -> Result<RatFunc> {
        match s.trim() {
            "0" => Ok(RatFunc::zero()),
            "1" => Ok(RatFunc::one()),
            name => self
                .var_index(name)
                .map(|i| self.var(i))
                .ok_or_else(|| Error::Input(format!("`{name}` is not a symbolic variable of this run"))),
        }
    }
    fn matrix_det(&self, m: &Matrix<Self>) -> RatFunc {
        match self.det_and_inverse(m) {
            Some((d, _)) => d,
            None => RatFunc::zero(),
        }
    }
    fn det_and_inverse(&self, m: &Matrix<Self>) -> Option<(RatFunc, RatFunc)> {
        // factor through the block structure so that 1/det keeps its atoms apart
        let n = m.rows();
        let mut den: Vec<(MPoly, u32)> = Vec::new();
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let row = m.row(i);
            let l = row.iter().fold(Vec::new(), |acc: Vec<(MPoly, u32)>, x| merge_max(&acc, &x.den));
            rows.push(row.iter().map(|x| x.num.mul(&cofactor(&l, &x.den))).collect::<Vec<_>>());
            den = merge_sum(&den, &l);
        }
        let factors = det::factored_det(&rows)?;
        let num = factors.iter().fold(MPoly::one(), |acc, p| acc.mul(p));
        let d = self.guard(RatFunc::from_parts(num, den.clone()));
        let mut inv_atoms: Vec<(MPoly, u32)> = Vec::new();
        for p in factors {
            push_atom(&mut inv_atoms, p, 1);
        }
        let mut inv = RatFunc { num: cofactor(&den, &[]), den: inv_atoms };
        inv.cancel();
        Some((d, self.guard(inv)))
    }
    fn matrix_rank(&self, m: &Matrix<Self>) -> usize {
        // clear each row's denominators, then fraction-free elimination
        let rows: Vec<Vec<MPoly>> = (0..m.rows())
            .map(|i| {
                let row = m.row(i);
                let l = row.iter().fold(Vec::new(), |acc: Vec<(MPoly, u32)>, x| merge_max(&acc, &x.den));
                row.iter().map(|x| x.num.mul(&cofactor(&l, &x.den))).collect()
            })
            .collect();
        bareiss::row_rank(m.rows(), m.cols(), |j| rows.iter().map(|r| r[j].clone()).collect())
    }
}

impl RatFuncField {
    /// Polynomial in a single variable index, for building symbolic matrices.
    pub fn var_poly(&self, i: usize) -> MPoly {
        MPoly::var(i)
    }

    pub fn monomial(&self, m: Mono) -> RatFunc {
        RatFunc::from_poly(MPoly::monomial(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Gf2k;
    use crate::linalg::{self, Matrix};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn field(n: usize) -> RatFuncField {
        RatFuncField::new((0..n).map(|i| format!("p{i}")).collect()).unwrap()
    }

    #[test]
    fn cancellation_through_atoms() {
        let f = field(4);
        let (a, b) = (f.var(0), f.var(1));
        let s = f.add(&a, &b);
        let q = f.div(&f.mul(&s, &a), &s).unwrap();
        assert_eq!(q, a);
        // 1/a + 1/a = 0
        let ia = f.inv(&a).unwrap();
        assert!(f.is_zero(&f.add(&ia, &ia)));
        // (a+b)/(a(a+b)) == 1/a
        let lhs = f.div(&s, &f.mul(&a, &s)).unwrap();
        assert!(f.equal(&lhs, &ia));
    }

    #[test]
    fn budget_trips() {
        let f = RatFuncField::with_budget((0..6).map(|i| format!("p{i}")).collect(), 16, 10).unwrap();
        let sum = |r: std::ops::Range<usize>| r.fold(f.zero(), |acc, i| f.add(&acc, &f.var(i)));
        let small = f.mul(&sum(0..3), &sum(3..6));
        assert!(f.check().is_ok());
        let big = f.mul(&small, &f.add(&f.var(0), &f.var(4)));
        assert!(f.is_zero(&big));
        assert!(matches!(f.check(), Err(Error::BudgetExceeded(_))));
        assert!(RatFuncField::with_budget(vec!["x".into(); 17], 16, 100).is_err());
    }

    #[test]
    fn derivative_of_quotient() {
        // d/dp0 (p1 / (p0 + p1)) = p1 / (p0 + p1)^2
        let f = field(2);
        let (a, b) = (f.var(0), f.var(1));
        let s = f.add(&a, &b);
        let q = f.div(&b, &s).unwrap();
        let d = f.derivative(&q, 0);
        let expect = f.div(&b, &f.mul(&s, &s)).unwrap();
        assert!(f.equal(&d, &expect));
    }

    #[test]
    fn symbolic_rank_dominates_substituted_rank() {
        let f = field(6);
        let v = |i| f.var(i);
        let m = Matrix::<RatFuncField>::from_rows(vec![
            vec![v(0), v(1), f.add(&v(0), &v(1))],
            vec![v(2), v(3), f.add(&v(2), &v(3))],
            vec![v(4), v(5), f.add(&v(4), &v(5))],
        ])
        .unwrap();
        assert_eq!(linalg::rank(&f, &m), 2);
        let g = Gf2k::new(32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pt: Vec<u64> = (0..6).map(|_| g.random(&mut rng)).collect();
        let sub = Matrix::<Gf2k>::from_rows(
            m.to_rows().iter().map(|r| r.iter().map(|x| x.evaluate(&g, &pt).unwrap()).collect()).collect(),
        )
        .unwrap();
        assert_eq!(linalg::rank(&g, &sub), 2);
    }

    proptest! {
        #[test]
        fn field_laws_under_evaluation(seed: u64) {
            let f = field(3);
            let g = Gf2k::new(64).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rand_poly = |rng: &mut ChaCha8Rng| {
                let mut acc = f.zero();
                for _ in 0..3 {
                    let mut t = f.one();
                    for i in 0..3 {
                        if rand::RngCore::next_u32(rng) % 2 == 0 {
                            t = f.mul(&t, &f.var(i));
                        }
                    }
                    acc = f.add(&acc, &t);
                }
                acc
            };
            let a = rand_poly(&mut rng);
            let b = rand_poly(&mut rng);
            let c = rand_poly(&mut rng);
            prop_assume!(!f.is_zero(&b) && !f.is_zero(&c));
            let x = f.add(&f.div(&a, &b).unwrap(), &f.div(&b, &c).unwrap());
            let pt: Vec<u64> = (0..3).map(|_| g.random(&mut rng)).collect();
            let (ea, eb, ec) = (
                a.evaluate(&g, &pt).unwrap(),
                b.evaluate(&g, &pt).unwrap(),
                c.evaluate(&g, &pt).unwrap(),
            );
            prop_assume!(eb != 0 && ec != 0);
            let expect = g.add(&g.div(&ea, &eb).unwrap(), &g.div(&eb, &ec).unwrap());
            prop_assert_eq!(x.evaluate(&g, &pt).unwrap(), expect);
        }
    }
}
