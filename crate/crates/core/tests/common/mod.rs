//! Test-only oracles and the sphere suite shared by the integration tests.
#![allow(dead_code)]

use itertools::Itertools;
use mlsp::artinian::{LsopSpec, Monomial};
use mlsp::complex::construct;
use mlsp::complex::SimplicialComplex;
use mlsp::{BalancedComplex, Coloring, Field, Matrix, MultiDeg};

/// Balanced spheres of several shapes, each with a label.
pub fn sphere_suite() -> Vec<(String, BalancedComplex)> {
    let mut out: Vec<(String, BalancedComplex)> = Vec::new();
    for a in [vec![1, 1], vec![2, 1], vec![2, 2], vec![3, 1], vec![1, 1, 1], vec![2, 1, 1], vec![3, 3], vec![4], vec![5]] {
        out.push((format!("join {a:?}"), construct::join_spheres(&a)));
    }
    out.push(("cross-polytope 3".into(), construct::cross_polytope(3)));
    out.push(("cross-polytope 4".into(), construct::cross_polytope(4)));
    out.push(("pentagon".into(), BalancedComplex::monochromatic(construct::cycle(5))));
    out.push(("hexagon 2-colored".into(), even_cycle(6)));
    out.push(("octahedron mono".into(), BalancedComplex::monochromatic(construct::cross_polytope_boundary(3))));
    for (d, n, seed) in [(3, 5, None), (3, 6, None), (3, 7, Some(4)), (4, 7, None)] {
        let s = construct::stacked_sphere(d, n, seed).unwrap();
        out.push((format!("stacked d={d} n={n}"), BalancedComplex::monochromatic(s)));
    }
    let oct = construct::cross_polytope_boundary(3);
    let sub = construct::stellar_subdivision(&oct, &oct.facets()[0].clone()).unwrap();
    out.push(("stellar octahedron".into(), BalancedComplex::monochromatic(sub)));
    let (_, coarse) = construct::partial_barycentric_subdivision(&construct::stacked_sphere(3, 5, None).unwrap(), 1).unwrap();
    out.push(("sd1 stacked 3,5".into(), coarse));
    let (_, coarse) = construct::partial_barycentric_subdivision(&construct::simplex_boundary(4), 1).unwrap();
    out.push(("sd1 simplex 4".into(), coarse));
    let (fine, coarse) = construct::partial_barycentric_subdivision(&construct::simplex_boundary(3), 2).unwrap();
    out.push(("sd2 simplex 3 fine".into(), fine));
    out.push(("sd2 simplex 3 coarse".into(), coarse));
    let pent = BalancedComplex::monochromatic(construct::cycle(5));
    let seg = construct::join_spheres(&[1]);
    out.push(("pentagon * S0".into(), construct::join_balanced(&pent, &seg, ("p", "s")).unwrap()));
    out
}

/// The 2-colored even cycle, a = (1, 1).
pub fn even_cycle(n: usize) -> BalancedComplex {
    let c = construct::cycle(n);
    BalancedComplex::with_colors(c, |name| name.parse::<usize>().unwrap() % 2).unwrap()
}

/// Face counts by color multidegree, straight from the face lists.
pub fn brute_flag_f(bc: &BalancedComplex) -> std::collections::BTreeMap<MultiDeg, i64> {
    let mut out: std::collections::BTreeMap<MultiDeg, i64> = bc.a.box_iter().map(|b| (b, 0)).collect();
    let mut seen = std::collections::BTreeSet::new();
    for f in bc.complex.facets() {
        for k in 0..=f.len() {
            for sub in f.iter().copied().combinations(k) {
                if seen.insert(sub.clone()) {
                    *out.get_mut(&bc.coloring.multideg(&sub)).unwrap() += 1;
                }
            }
        }
    }
    out
}

/// Monomials of multidegree `b` supported on a face, by brute force over
/// all multisets of vertices.
pub fn face_monomials(bc: &BalancedComplex, b: &MultiDeg) -> Vec<Monomial> {
    (0..bc.n())
        .combinations_with_replacement(b.total() as usize)
        .map(Monomial::from_vertices)
        .filter(|m| m.multideg(bc) == *b && m.is_face_monomial(&bc.complex))
        .collect()
}

fn laplace_det<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> F::Elem {
    if m.is_empty() {
        return f.one();
    }
    let mut acc = f.zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<F::Elem>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = f.mul(&m[0][j], &laplace_det(f, &minor));
        acc = if j % 2 == 0 { f.add(&acc, &t) } else { f.sub(&acc, &t) };
    }
    acc
}

/// `[σ]`: the determinant of the columns of `σ`, by cofactor expansion.
pub fn bracket<F: Field>(lsop: &LsopSpec<F>, sigma: &[usize]) -> F::Elem {
    let f = &lsop.field;
    let rows: Vec<Vec<F::Elem>> = (0..lsop.d()).map(|k| sigma.iter().map(|&v| lsop.entry(k, v).clone()).collect()).collect();
    laplace_det(f, &rows)
}

/// The functional on `k[Δ]_a` that kills `Θ · k[Δ]_{a−e_j}`, found as the
/// kernel of the relation matrix and scaled so that the first facet takes
/// `value0`. Returns the face monomials with their values.
pub fn kernel_functional<F: Field>(bc: &BalancedComplex, lsop: &LsopSpec<F>, value0: F::Elem) -> Vec<(Monomial, F::Elem)> {
    let f = &lsop.field;
    let top = face_monomials(bc, &bc.a);
    let mut rows = Vec::new();
    for (k, &j) in lsop.row_colors().iter().enumerate() {
        let lower = bc.a.checked_sub(&MultiDeg::unit(bc.m(), j)).unwrap();
        for m in face_monomials(bc, &lower) {
            let mut row = vec![f.zero(); top.len()];
            for v in bc.coloring.class(j) {
                let prod = m.mul(&Monomial::var(v));
                if let Some(i) = top.iter().position(|t| *t == prod) {
                    row[i] = f.add(&row[i], lsop.entry(k, v));
                }
            }
            rows.push(row);
        }
    }
    let r = Matrix::from_rows_with_cols(top.len(), rows).unwrap();
    let ker = mlsp::linalg::kernel(f, &r);
    assert_eq!(ker.len(), 1, "top degree should be one-dimensional");
    let sigma0 = Monomial::from_vertices(bc.complex.facets()[0].iter().copied());
    let i0 = top.iter().position(|t| *t == sigma0).unwrap();
    let scale = f.div(&value0, &ker[0][i0]).unwrap();
    top.into_iter().zip(&ker[0]).map(|(m, x)| (m, f.mul(&scale, x))).collect()
}

/// A complex from facet lists of vertex labels.
pub fn complex(facets: &[&[&str]]) -> SimplicialComplex {
    let v: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
    SimplicialComplex::new(&v).unwrap()
}

/// The complete graph on four vertices, a = (2).
pub fn k4() -> BalancedComplex {
    BalancedComplex::monochromatic(construct::simplex_boundary(3).skeleton(1))
}

pub fn coloring(colors: Vec<usize>, m: usize) -> Coloring {
    Coloring::new(colors, m).unwrap()
}
