use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::complex::{BalancedComplex, MultiDeg, SimplicialComplex};
use crate::field::Field;

/// A monomial in the vertex variables, stored as a sorted multiset of
/// vertex indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(Vec<usize>);

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{:?}", self.0)
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: usize) -> Self {
        Monomial(vec![v])
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = vs.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut v = Vec::new();
        for (i, &e) in exps.iter().enumerate() {
            v.extend(std::iter::repeat(i).take(e as usize));
        }
        Monomial(v)
    }

    /// Vertices with repetition, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn support(&self) -> Vec<usize> {
        let mut s = self.0.clone();
        s.dedup();
        s
    }

    pub fn exponent(&self, v: usize) -> u32 {
        let lo = self.0.partition_point(|&x| x < v);
        let hi = self.0.partition_point(|&x| x <= v);
        (hi - lo) as u32
    }

    /// `(vertex, exponent)` pairs over the support.
    pub fn powers(&self) -> Vec<(usize, u32)> {
        let mut out: Vec<(usize, u32)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((w, e)) if *w == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        let mut e = vec![0; n];
        for &v in &self.0 {
            e[v] += 1;
        }
        e
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            if j == other.0.len() || (i < self.0.len() && self.0[i] <= other.0[j]) {
                v.push(self.0[i]);
                i += 1;
            } else {
                v.push(other.0[j]);
                j += 1;
            }
        }
        Monomial(v)
    }

    pub fn square(&self) -> Monomial {
        self.mul(self)
    }

    /// `self / x_v`, if `x_v` divides `self`.
    pub fn without(&self, v: usize) -> Option<Monomial> {
        let i = self.0.iter().position(|&x| x == v)?;
        let mut w = self.0.clone();
        w.remove(i);
        Some(Monomial(w))
    }

    pub fn multideg(&self, bc: &BalancedComplex) -> MultiDeg {
        bc.coloring.multideg(&self.0)
    }

    /// Nonzero in k[Δ]: the support is a face.
    pub fn is_face_monomial(&self, c: &SimplicialComplex) -> bool {
        c.contains_face(&self.support())
    }

    /// `x_1^2 x_2^2 ↦ x_1 x_2`; `None` when some exponent is odd.
    pub fn sqrt(&self) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len() / 2);
        for (v, e) in self.powers() {
            if e % 2 == 1 {
                return None;
            }
            out.extend(std::iter::repeat(v).take(e as usize / 2));
        }
        Some(Monomial(out))
    }

    pub fn display(&self, c: &SimplicialComplex) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.powers()
            .into_iter()
            .map(|(v, e)| if e == 1 { format!("x{}", c.name(v)) } else { format!("x{}^{e}", c.name(v)) })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Degree-reverse-lexicographic order on vertex indices (vertex 0 is the
/// largest variable).
pub fn degrevlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    if a.degree() != b.degree() {
        return a.degree().cmp(&b.degree());
    }
    let (pa, pb) = (a.powers(), b.powers());
    let (mut i, mut j) = (pa.len(), pb.len());
    loop {
        match (i, j) {
            (0, 0) => return Ordering::Equal,
            (0, _) => return Ordering::Greater,
            (_, 0) => return Ordering::Less,
            _ => {}
        }
        let (va, ea) = pa[i - 1];
        let (vb, eb) = pb[j - 1];
        match va.cmp(&vb) {
            Ordering::Greater => return Ordering::Less,
            Ordering::Less => return Ordering::Greater,
            Ordering::Equal => {
                if ea != eb {
                    return eb.cmp(&ea);
                }
                i -= 1;
                j -= 1;
            }
        }
    }
}

/// Sorts largest first.
pub fn sort_degrevlex(ms: &mut [Monomial]) {
    ms.sort_by(|a, b| degrevlex_cmp(b, a).then_with(|| a.cmp(b)));
}

/// Multisets of size `k` drawn from `pool`.
pub(crate) fn multisets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    fn rec(pool: &[usize], start: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, i, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, 0, k, &mut Vec::new(), &mut out);
    out
}

/// All monomials of multidegree `b` (in the given vertex pools, one per
/// color) as products of per-color multisets.
pub(crate) fn monomials_in(pools: &[Vec<usize>], b: &MultiDeg) -> Vec<Monomial> {
    let mut acc = vec![Monomial::one()];
    for (j, pool) in pools.iter().enumerate() {
        let parts = multisets(pool, b.0[j] as usize);
        let mut next = Vec::with_capacity(acc.len() * parts.len());
        for m in &acc {
            for p in &parts {
                next.push(m.mul(&Monomial::from_vertices(p.iter().copied())));
            }
        }
        acc = next;
    }
    acc
}

/// The monomials spanning `k[Δ]_b`: multidegree `b` and support a face.
pub fn sr_graded_basis(bc: &BalancedComplex, b: &MultiDeg) -> Vec<Monomial> {
    let c = &bc.complex;
    let k = &bc.coloring;
    let mut out = Vec::new();
    let max = (b.total() as usize).min(c.d());
    for size in 0..=max {
        for face in c.faces_of_size(size) {
            let fd = k.multideg(face);
            if !(0..b.len()).all(|j| fd.0[j] <= b.0[j] && (fd.0[j] > 0 || b.0[j] == 0)) {
                continue;
            }
            let extra = b.checked_sub(&fd).expect("checked above");
            let pools: Vec<Vec<usize>> = (0..b.len()).map(|j| face.iter().copied().filter(|&v| k.color(v) == j).collect()).collect();
            let base = Monomial(face.clone());
            for m in monomials_in(&pools, &extra) {
                out.push(base.mul(&m));
            }
        }
    }
    sort_degrevlex(&mut out);
    out
}

/// Orders the factors of a multidegree-`a` monomial as `(v_1, …, v_d)` with
/// `κ(v_k)` the color owning row `k`; rows are filled in ascending order.
pub fn kappa_transversal_reorder(bc: &BalancedComplex, row_color: &[usize], m: &Monomial) -> Vec<usize> {
    assert_eq!(m.multideg(bc), bc.a, "transversal reorder needs multidegree a");
    let mut remaining = m.0.clone();
    row_color
        .iter()
        .map(|&j| {
            let i = remaining.iter().position(|&v| bc.coloring.color(v) == j).expect("multidegree a admits a transversal");
            remaining.remove(i)
        })
        .collect()
}

/// Sparse polynomial in the vertex variables.
#[derive(Clone, Debug)]
pub struct SparsePoly<F: Field> {
    pub terms: BTreeMap<Monomial, F::Elem>,
}

impl<F: Field> SparsePoly<F> {
    pub fn zero() -> Self {
        SparsePoly { terms: BTreeMap::new() }
    }

    pub fn constant(f: &F, c: F::Elem) -> Self {
        let mut p = Self::zero();
        p.add_term(f, Monomial::one(), c);
        p
    }

    pub fn monomial(f: &F, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(f, m, f.one());
        p
    }

    pub fn linear(f: &F, coeffs: &[(usize, F::Elem)]) -> Self {
        let mut p = Self::zero();
        for (v, c) in coeffs {
            p.add_term(f, Monomial::var(*v), c.clone());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, f: &F, m: Monomial, c: F::Elem) {
        if f.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x = f.add(x, &c);
                if f.is_zero(x) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, f: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(f, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, f: &F, c: &F::Elem) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            out.add_term(f, m.clone(), f.mul(x, c));
        }
        out
    }

    pub fn mul(&self, f: &F, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m, x) in &self.terms {
            for (n, y) in &other.terms {
                out.add_term(f, m.mul(n), f.mul(x, y));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        SparsePoly { terms: self.terms.iter().map(|(n, c)| (n.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, f: &F, e: u32) -> Self {
        let mut acc = Self::constant(f, f.one());
        for _ in 0..e {
            acc = acc.mul(f, self);
        }
        acc
    }

    /// Drops the terms whose support is not a face.
    pub fn restrict_to(&self, c: &SimplicialComplex) -> Self {
        SparsePoly { terms: self.terms.iter().filter(|(m, _)| m.is_face_monomial(c)).map(|(m, x)| (m.clone(), x.clone())).collect() }
    }

    pub fn display(&self, f: &F, c: &SimplicialComplex) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms.iter().map(|(m, x)| format!("{}*{}", f.format(x), m.display(c))).collect::<Vec<_>>().join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::construct;
    use proptest::prelude::*;

    #[test]
    fn graded_basis_counts() {
        let pent = BalancedComplex::monochromatic(construct::cycle(5));
        assert_eq!(sr_graded_basis(&pent, &MultiDeg(vec![2])).len(), 10);
        assert_eq!(sr_graded_basis(&pent, &MultiDeg(vec![0])), vec![Monomial::one()]);
        let oct = construct::cross_polytope(3);
        let top = sr_graded_basis(&oct, &MultiDeg(vec![1, 1, 1]));
        assert_eq!(top.len(), 8);
        assert!(top.iter().all(|m| m.support().len() == 3));
        assert_eq!(sr_graded_basis(&oct, &MultiDeg(vec![2, 0, 0])).len(), 2);
    }

    #[test]
    fn degrevlex_examples() {
        let m = |v: &[usize]| Monomial::from_vertices(v.iter().copied());
        // x0^2 > x0 x1 > x1^2 > x0 x2 > x1 x2 > x2^2
        let mut ms = vec![m(&[2, 2]), m(&[1, 2]), m(&[0, 2]), m(&[1, 1]), m(&[0, 1]), m(&[0, 0])];
        sort_degrevlex(&mut ms);
        assert_eq!(ms, vec![m(&[0, 0]), m(&[0, 1]), m(&[1, 1]), m(&[0, 2]), m(&[1, 2]), m(&[2, 2])]);
    }

    #[test]
    fn square_roots() {
        let m = |v: &[usize]| Monomial::from_vertices(v.iter().copied());
        assert_eq!(m(&[1, 1, 2, 2]).sqrt(), Some(m(&[1, 2])));
        assert_eq!(m(&[1, 1, 2]).sqrt(), None);
        assert_eq!(m(&[1, 1, 1, 1]).sqrt(), Some(m(&[1, 1])));
    }

    #[test]
    fn transversal_orders() {
        let oct = construct::cross_polytope(3);
        let f = &oct.complex.facets()[0];
        let seq = kappa_transversal_reorder(&oct, &[0, 1, 2], &Monomial::from_vertices(f.iter().copied()));
        assert_eq!(seq.iter().map(|&v| oct.coloring.color(v)).collect::<Vec<_>>(), vec![0, 1, 2]);
        let pent = BalancedComplex::monochromatic(construct::cycle(5));
        assert_eq!(kappa_transversal_reorder(&pent, &[0, 0], &Monomial::from_vertices([3, 3])), vec![3, 3]);
    }

    proptest! {
        #[test]
        fn degrevlex_is_total_and_multiplicative(a in proptest::collection::vec(0usize..5, 3), b in proptest::collection::vec(0usize..5, 3), c in proptest::collection::vec(0usize..5, 2)) {
            let (a, b, c) = (Monomial::from_vertices(a), Monomial::from_vertices(b), Monomial::from_vertices(c));
            prop_assert_eq!(degrevlex_cmp(&a, &b) == Ordering::Equal, a == b);
            prop_assert_eq!(degrevlex_cmp(&a, &b), degrevlex_cmp(&b, &a).reverse());
            prop_assert_eq!(degrevlex_cmp(&a.mul(&c), &b.mul(&c)), degrevlex_cmp(&a, &b));
        }
    }
}
