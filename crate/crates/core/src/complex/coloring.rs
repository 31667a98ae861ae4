use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::simplicial::SimplicialComplex;
use crate::error::{Error, Result};
use crate::verdict::Verdict;

/// Vector in N^m, compared componentwise.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiDeg(pub Vec<u32>);

impl fmt::Debug for MultiDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl From<Vec<u32>> for MultiDeg {
    fn from(v: Vec<u32>) -> Self {
        MultiDeg(v)
    }
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl MultiDeg {
    pub fn zero(m: usize) -> Self {
        MultiDeg(vec![0; m])
    }

    pub fn unit(m: usize, j: usize) -> Self {
        let mut v = vec![0; m];
        v[j] = 1;
        MultiDeg(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn le(&self, other: &MultiDeg) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self ⪇ other`: componentwise ≤ and different.
    pub fn lt(&self, other: &MultiDeg) -> bool {
        self.le(other) && self != other
    }

    pub fn add(&self, other: &MultiDeg) -> MultiDeg {
        MultiDeg(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &MultiDeg) -> Option<MultiDeg> {
        other.le(self).then(|| MultiDeg(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: u32) -> MultiDeg {
        MultiDeg(self.0.iter().map(|a| a * k).collect())
    }

    /// `2·self ≤ a`.
    pub fn half_le(&self, a: &MultiDeg) -> bool {
        self.scale(2).le(a)
    }

    /// `∏_j C(self_j, b_j)`.
    pub fn binom(&self, b: &MultiDeg) -> BigInt {
        self.0.iter().zip(&b.0).map(|(&n, &k)| binomial(n, k)).product()
    }

    /// All `b` with `0 ≤ b ≤ self`, in lexicographic order.
    pub fn box_iter(&self) -> impl Iterator<Item = MultiDeg> + '_ {
        let mut cur = Some(vec![0u32; self.0.len()]);
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut j = next.len();
            loop {
                if j == 0 {
                    cur = None;
                    break;
                }
                j -= 1;
                if next[j] < self.0[j] {
                    next[j] += 1;
                    for x in next[j + 1..].iter_mut() {
                        *x = 0;
                    }
                    cur = Some(next);
                    break;
                }
            }
            Some(MultiDeg(out))
        })
    }
}

/// Vertex coloring κ: V → {0, …, m−1} (serialized 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    m: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Input("a coloring needs at least one color".into()));
        }
        if let Some((v, c)) = colors.iter().enumerate().find(|(_, &c)| c >= m) {
            return Err(Error::Input(format!("vertex {v} has color {} but m = {m}", c + 1)));
        }
        Ok(Coloring { colors, m })
    }

    pub fn monochromatic(n: usize) -> Self {
        Coloring { colors: vec![0; n], m: 1 }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn num_vertices(&self) -> usize {
        self.colors.len()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn class(&self, j: usize) -> Vec<usize> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == j).collect()
    }

    pub fn multideg(&self, face: &[usize]) -> MultiDeg {
        let mut b = vec![0; self.m];
        for &v in face {
            b[self.colors[v]] += 1;
        }
        MultiDeg(b)
    }

    /// Transfers the coloring to a complex whose vertex names are a subset of
    /// `parent`'s.
    pub fn restrict(&self, parent: &SimplicialComplex, child: &SimplicialComplex) -> Result<Coloring> {
        let colors = child
            .vertex_names()
            .iter()
            .map(|n| {
                parent
                    .index_of(n)
                    .map(|v| self.colors[v])
                    .ok_or_else(|| Error::Input(format!("vertex {n:?} missing from the colored complex")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Coloring { colors, m: self.m })
    }

    /// Merges colors through `map` (old color → new color).
    pub fn regroup(&self, map: &[usize], m: usize) -> Result<Coloring> {
        Coloring::new(self.colors.iter().map(|&c| map[c]).collect(), m)
    }
}

/// `(Δ, κ)` is a-balanced: |a| = d and no face has more than a_j vertices of
/// color j.
pub fn check_balanced(c: &SimplicialComplex, kappa: &Coloring, a: &MultiDeg) -> Verdict {
    if kappa.num_vertices() != c.num_vertices() {
        return Verdict::no(format!("coloring covers {} vertices, complex has {}", kappa.num_vertices(), c.num_vertices()));
    }
    if a.len() != kappa.m() {
        return Verdict::no(format!("balance vector has length {}, coloring uses m = {}", a.len(), kappa.m()));
    }
    if a.total() as usize != c.d() {
        return Verdict::no(format!("|a| = {} but d = {}", a.total(), c.d()));
    }
    for f in c.facets() {
        let b = kappa.multideg(f);
        for j in 0..a.len() {
            if b.0[j] > a.0[j] {
                return Verdict::no(format!(
                    "facet {:?} has {} vertices of color {}, allowed {}",
                    c.face_names(f),
                    b.0[j],
                    j + 1,
                    a.0[j]
                ));
            }
        }
    }
    Verdict::yes()
}

/// An a-balanced complex: the ground object of every algebraic computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedComplex {
    pub complex: SimplicialComplex,
    pub coloring: Coloring,
    pub a: MultiDeg,
}

impl BalancedComplex {
    pub fn new(complex: SimplicialComplex, coloring: Coloring, a: MultiDeg) -> Result<Self> {
        if coloring.num_vertices() != complex.num_vertices() || a.len() != coloring.m() {
            return Err(Error::Input(check_balanced(&complex, &coloring, &a).witness.unwrap_or_default()));
        }
        for f in complex.facets() {
            let b = coloring.multideg(f);
            for j in 0..a.len() {
                if b.0[j] > a.0[j] {
                    return Err(Error::Unbalanced {
                        face: complex.face_names(f).into_iter().map(String::from).collect(),
                        color: j + 1,
                        count: b.0[j] as usize,
                        allowed: a.0[j],
                    });
                }
            }
        }
        if a.total() as usize != complex.d() {
            return Err(Error::Input(format!("|a| = {} but d = {}", a.total(), complex.d())));
        }
        Ok(BalancedComplex { complex, coloring, a })
    }

    pub fn monochromatic(complex: SimplicialComplex) -> Self {
        let n = complex.num_vertices();
        let d = complex.d() as u32;
        BalancedComplex { complex, coloring: Coloring::monochromatic(n), a: MultiDeg(vec![d]) }
    }

    /// Colors taken from a name → color (0-based) function; a is the
    /// per-color maximum over facets.
    pub fn with_colors(complex: SimplicialComplex, color: impl Fn(&str) -> usize) -> Result<Self> {
        let colors: Vec<usize> = complex.vertex_names().iter().map(|n| color(n)).collect();
        let m = colors.iter().max().map_or(1, |c| c + 1);
        let coloring = Coloring::new(colors, m)?;
        let mut a = vec![0u32; m];
        for f in complex.facets() {
            let b = coloring.multideg(f);
            for j in 0..m {
                a[j] = a[j].max(b.0[j]);
            }
        }
        Self::new(complex, coloring, MultiDeg(a))
    }

    pub fn m(&self) -> usize {
        self.coloring.m()
    }

    pub fn d(&self) -> usize {
        self.complex.d()
    }

    pub fn n(&self) -> usize {
        self.complex.num_vertices()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn octahedron() -> SimplicialComplex {
        let mut facets = Vec::new();
        for a in ["1", "2"] {
            for b in ["3", "4"] {
                for c in ["5", "6"] {
                    facets.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::new(&facets).unwrap()
    }

    #[test]
    fn box_is_lexicographic() {
        let a = MultiDeg(vec![1, 2]);
        let all: Vec<MultiDeg> = a.box_iter().collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], MultiDeg(vec![0, 0]));
        assert_eq!(all[2], MultiDeg(vec![0, 2]));
        assert_eq!(all[5], MultiDeg(vec![1, 2]));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(MultiDeg(vec![]).box_iter().count(), 1);
    }

    #[test]
    fn balance_checks() {
        let o = octahedron();
        let fine = Coloring::new(vec![0, 0, 1, 1, 2, 2], 3).unwrap();
        assert!(check_balanced(&o, &fine, &MultiDeg(vec![1, 1, 1])).holds);
        assert!(check_balanced(&o, &Coloring::monochromatic(6), &MultiDeg(vec![3])).holds);
        let t = SimplicialComplex::new(&[vec!["1", "2"], vec!["2", "3"], vec!["1", "3"]]).unwrap();
        let bad = Coloring::new(vec![0, 0, 1], 2).unwrap();
        let v = check_balanced(&t, &bad, &MultiDeg(vec![1, 1]));
        assert!(!v.holds && v.witness.unwrap().contains("color 1"));
        assert!(matches!(
            BalancedComplex::new(t, bad, MultiDeg(vec![1, 1])),
            Err(Error::Unbalanced { color: 1, count: 2, .. })
        ));
        assert!(Coloring::new(vec![0, 3], 3).is_err());
    }

    proptest! {
        #[test]
        fn binomial_pascal(n in 1u32..60, k in 1u32..60) {
            prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
        }

        #[test]
        fn box_size_is_product(a in proptest::collection::vec(0u32..4, 1..4)) {
            let a = MultiDeg(a);
            let expect: usize = a.0.iter().map(|&x| x as usize + 1).product();
            prop_assert_eq!(a.box_iter().count(), expect);
            prop_assert!(a.box_iter().all(|b| b.le(&a)));
        }
    }
}
