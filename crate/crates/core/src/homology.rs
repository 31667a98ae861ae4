//! Reduced simplicial homology over a field and the predicates built on it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::simplicial::{is_subset, Face, SimplicialComplex};
use crate::field::{Field, FieldDescriptor};
use crate::linalg::{self, Matrix};
use crate::verdict::Verdict;

/// Matrix of ∂_i from i-faces (columns) to (i−1)-faces (rows); ∂_0 is the
/// augmentation onto the empty face.
pub fn boundary_matrix<F: Field>(c: &SimplicialComplex, i: usize, f: &F) -> Matrix<F> {
    let cols = c.faces_of_size(i + 1);
    let rows = c.faces_of_size(i);
    let mut m = Matrix::zeros(f, rows.len(), cols.len());
    for (j, face) in cols.iter().enumerate() {
        for k in 0..face.len() {
            let mut sub: Face = face.clone();
            sub.remove(k);
            let r = rows.binary_search(&sub).expect("faces are closed under subsets");
            let s = if k % 2 == 0 { f.one() } else { f.neg(&f.one()) };
            m.set(r, j, s);
        }
    }
    m
}

/// `β̃_{−1}, …, β̃_{d−1}` over a named field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiVector {
    pub field: FieldDescriptor,
    pub values: Vec<i64>,
}

impl BettiVector {
    pub fn get(&self, i: isize) -> i64 {
        usize::try_from(i + 1).ok().and_then(|k| self.values.get(k)).copied().unwrap_or(0)
    }
}

fn betti_values<F: Field>(c: &SimplicialComplex, f: &F) -> Vec<i64> {
    let d = c.d();
    // rank[i] = rank ∂_i for i = 0..=d
    let ranks: Vec<usize> = (0..=d).map(|i| linalg::rank(f, &boundary_matrix(c, i, f))).collect();
    (0..=d)
        .map(|k| {
            // k indexes β̃_{k−1}: chains of size k
            let dim = c.num_faces(k) as i64;
            let out = if k == 0 { 0 } else { ranks[k - 1] as i64 };
            let inc = if k < d { ranks[k] as i64 } else { 0 };
            dim - out - inc
        })
        .collect()
}

pub fn reduced_betti<F: Field>(c: &SimplicialComplex, f: &F) -> BettiVector {
    BettiVector { field: f.descriptor(), values: betti_values(c, f) }
}

/// `Σ_{i ≥ −1} (−1)^i f_i`.
pub fn reduced_euler_characteristic(c: &SimplicialComplex) -> i64 {
    (0..=c.d()).map(|k| if k % 2 == 1 { c.num_faces(k) as i64 } else { -(c.num_faces(k) as i64) }).sum()
}

/// A top-dimensional cycle: coefficients on the size-d faces.
#[derive(Clone, Debug, PartialEq)]
pub struct Cycle<F: Field> {
    pub faces: Vec<Face>,
    pub coefficients: Vec<F::Elem>,
}

impl<F: Field> Cycle<F> {
    pub fn coefficient(&self, face: &[usize]) -> Option<&F::Elem> {
        self.faces.binary_search_by(|g| g.as_slice().cmp(face)).ok().map(|i| &self.coefficients[i])
    }

    pub fn is_zero(&self, f: &F) -> bool {
        self.coefficients.iter().all(|x| f.is_zero(x))
    }

    pub fn is_cycle(&self, c: &SimplicialComplex, f: &F) -> bool {
        let m = boundary_matrix(c, c.d() - 1, f);
        m.apply(f, &self.coefficients).iter().all(|x| f.is_zero(x))
    }
}

/// Basis of the kernel of the top boundary map, each vector normalized to
/// have first nonzero coefficient 1.
pub fn top_cycle_basis<F: Field>(c: &SimplicialComplex, f: &F) -> Vec<Cycle<F>> {
    let d = c.d();
    if d == 0 {
        return Vec::new();
    }
    let faces = c.faces_of_size(d).to_vec();
    let m = boundary_matrix(c, d - 1, f);
    linalg::kernel(f, &m).into_iter().map(|coefficients| Cycle { faces: faces.clone(), coefficients }).collect()
}

/// Ridges with their facet counts; facets adjacent through a ridge.
fn ridge_structure(c: &SimplicialComplex) -> (HashMap<Face, Vec<usize>>, Vec<Face>) {
    let facets = c.facets().to_vec();
    let mut ridges: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in facets.iter().enumerate() {
        for k in 0..f.len() {
            let mut r = f.clone();
            r.remove(k);
            ridges.entry(r).or_default().push(i);
        }
    }
    (ridges, facets)
}

pub fn is_pseudomanifold(c: &SimplicialComplex) -> Verdict {
    if !c.is_pure() {
        return Verdict::no("not pure");
    }
    let (ridges, facets) = ridge_structure(c);
    let mut sorted: Vec<(&Face, &Vec<usize>)> = ridges.iter().collect();
    sorted.sort();
    for (r, fs) in &sorted {
        if fs.len() != 2 {
            return Verdict::no(format!("ridge {:?} lies in {} facets", c.face_names(r), fs.len()));
        }
    }
    let mut adj = vec![Vec::new(); facets.len()];
    for (_, fs) in sorted {
        adj[fs[0]].push(fs[1]);
        adj[fs[1]].push(fs[0]);
    }
    let mut seen = vec![false; facets.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Verdict::no(format!("not strongly connected: facet {:?} unreachable", c.face_names(&facets[i]))),
        None => Verdict::yes(),
    }
}

pub fn is_orientable<F: Field>(c: &SimplicialComplex, f: &F) -> Verdict {
    let b = reduced_betti(c, f);
    let top = b.get(c.dim());
    Verdict::from_bool(top == 1, || format!("top Betti number over {} is {top}", f.descriptor()))
}

/// Link homology memoized by face; safe to share across threads.
pub struct LinkHomology<'a, F: Field> {
    complex: &'a SimplicialComplex,
    field: F,
    memo: Mutex<HashMap<Face, Arc<Vec<i64>>>>,
}

impl<'a, F: Field> LinkHomology<'a, F> {
    pub fn new(complex: &'a SimplicialComplex, field: F) -> Self {
        LinkHomology { complex, field, memo: Mutex::new(HashMap::new()) }
    }

    /// Reduced Betti numbers of lk τ, indexed from −1.
    pub fn link_betti(&self, tau: &[usize]) -> Arc<Vec<i64>> {
        if let Some(b) = self.memo.lock().expect("memo mutex").get(tau) {
            return b.clone();
        }
        let lk = self.complex.link(tau).expect("face of the complex");
        let b = Arc::new(betti_values(&lk, &self.field));
        self.memo.lock().expect("memo mutex").entry(tau.to_vec()).or_insert(b).clone()
    }

    fn all_faces(&self, include_empty: bool) -> Vec<Face> {
        let start = usize::from(!include_empty);
        (start..=self.complex.d()).flat_map(|k| self.complex.faces_of_size(k).iter().cloned()).collect()
    }

    fn first_failure(&self, include_empty: bool, ok: impl Fn(&Face, &[i64]) -> bool + Sync) -> Option<Face> {
        self.all_faces(include_empty).into_par_iter().find_map_first(|tau| {
            let b = self.link_betti(&tau);
            (!ok(&tau, &b)).then_some(tau)
        })
    }

    fn sphere_like(&self, include_empty: bool, what: &str) -> Verdict {
        let d = self.complex.d();
        let bad = self.first_failure(include_empty, |tau, b| {
            let top = d - tau.len(); // lk τ should be a homology (top−1)-sphere
            b.len() == top + 1 && b.iter().enumerate().all(|(k, &x)| x == i64::from(k == top))
        });
        match bad {
            None => Verdict::yes(),
            Some(tau) => Verdict::no(format!(
                "link of {:?} is not a homology sphere over {} ({what})",
                self.complex.face_names(&tau),
                self.field.descriptor()
            )),
        }
    }

    pub fn is_homology_sphere(&self) -> Verdict {
        self.sphere_like(true, "sphere test")
    }

    pub fn is_homology_manifold(&self) -> Verdict {
        self.sphere_like(false, "manifold test")
    }

    pub fn is_cohen_macaulay(&self) -> Verdict {
        if !self.complex.is_pure() {
            return Verdict::no("not pure");
        }
        let d = self.complex.d();
        let bad = self.first_failure(true, |tau, b| {
            let top = d - tau.len();
            b.iter().enumerate().all(|(k, &x)| k >= top || x == 0)
        });
        match bad {
            None => Verdict::yes(),
            Some(tau) => Verdict::no(format!(
                "link of {:?} has homology below its top dimension over {}",
                self.complex.face_names(&tau),
                self.field.descriptor()
            )),
        }
    }
}

pub fn is_homology_sphere<F: Field>(c: &SimplicialComplex, f: &F) -> Verdict {
    LinkHomology::new(c, f.clone()).is_homology_sphere()
}

pub fn is_homology_manifold<F: Field>(c: &SimplicialComplex, f: &F) -> Verdict {
    LinkHomology::new(c, f.clone()).is_homology_manifold()
}

pub fn is_cohen_macaulay<F: Field>(c: &SimplicialComplex, f: &F) -> Verdict {
    LinkHomology::new(c, f.clone()).is_cohen_macaulay()
}

/// Cohen–Macaulay, and every vertex deletion is Cohen–Macaulay of the same
/// dimension.
pub fn is_doubly_cm<F: Field>(c: &SimplicialComplex, f: &F) -> Verdict {
    let cm = is_cohen_macaulay(c, f);
    if !cm.holds {
        return cm;
    }
    let bad = (0..c.num_vertices()).into_par_iter().find_map_first(|v| {
        let del = c.delete_vertices(&[v]);
        if del.dim() != c.dim() {
            return Some(format!("deleting {:?} drops the dimension", c.name(v)));
        }
        let v_cm = is_cohen_macaulay(&del, f);
        (!v_cm.holds).then(|| format!("deleting {:?}: {}", c.name(v), v_cm.witness.unwrap_or_default()))
    });
    match bad {
        None => Verdict::yes(),
        Some(w) => Verdict::no(w),
    }
}

/// Facets containing `tau`.
pub fn facets_containing<'a>(c: &'a SimplicialComplex, tau: &'a [usize]) -> impl Iterator<Item = &'a Face> + 'a {
    c.facets().iter().filter(move |f| is_subset(tau, f))
}
