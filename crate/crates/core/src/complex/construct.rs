use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::coloring::{BalancedComplex, Coloring, MultiDeg};
use super::simplicial::{is_subset, natural_cmp, Face, SimplicialComplex};
use crate::error::{Error, Result};

fn numbered(facets: Vec<Vec<usize>>) -> SimplicialComplex {
    let named: Vec<Vec<String>> = facets.iter().map(|f| f.iter().map(|v| (v + 1).to_string()).collect()).collect();
    SimplicialComplex::new(&named).expect("nonempty facets")
}

/// ∂Δ^k on vertices 1..=k+1, a (k−1)-sphere.
pub fn simplex_boundary(k: usize) -> SimplicialComplex {
    assert!(k >= 1, "∂Δ^0 is the void complex");
    numbered((0..=k).combinations(k).collect())
}

/// The n-cycle 1–2–…–n–1.
pub fn cycle(n: usize) -> SimplicialComplex {
    assert!(n >= 3);
    numbered((0..n).map(|i| vec![i, (i + 1) % n]).collect())
}

/// The path 1–2–…–n.
pub fn path(n: usize) -> SimplicialComplex {
    assert!(n >= 2);
    numbered((0..n - 1).map(|i| vec![i, i + 1]).collect())
}

/// Boundary of the d-dimensional cross-polytope; vertices 2j−1 and 2j are
/// antipodal.
pub fn cross_polytope_boundary(d: usize) -> SimplicialComplex {
    assert!(d >= 1);
    let facets = (0..1usize << d).map(|mask| (0..d).map(|j| 2 * j + (mask >> j & 1)).collect()).collect();
    numbered(facets)
}

/// Cross-polytope boundary colored by antipodal pairs, a = (1, …, 1).
pub fn cross_polytope(d: usize) -> BalancedComplex {
    BalancedComplex::with_colors(cross_polytope_boundary(d), |n| (n.parse::<usize>().unwrap() - 1) / 2)
        .expect("antipodal coloring is balanced")
}

/// Join ∂Δ^{a_1} * ⋯ * ∂Δ^{a_m}, factor j colored j.
pub fn join_spheres(a: &[u32]) -> BalancedComplex {
    assert!(!a.is_empty() && a.iter().all(|&x| x >= 1));
    let mut acc: Option<SimplicialComplex> = None;
    for (j, &aj) in a.iter().enumerate() {
        let s = simplex_boundary(aj as usize).rename(|n| format!("{}.{n}", j + 1)).unwrap();
        acc = Some(match acc {
            None => s,
            Some(c) => c.join(&s).unwrap(),
        });
    }
    let c = acc.unwrap();
    let bc = BalancedComplex::with_colors(c, |n| n.split('.').next().unwrap().parse::<usize>().unwrap() - 1).unwrap();
    debug_assert_eq!(bc.a, MultiDeg(a.to_vec()));
    bc
}

/// Joins two balanced complexes; colors of the second are shifted past the
/// first's.
pub fn join_balanced(x: &BalancedComplex, y: &BalancedComplex, tag: (&str, &str)) -> Result<BalancedComplex> {
    let cx = x.complex.rename(|n| format!("{}{n}", tag.0))?;
    let cy = y.complex.rename(|n| format!("{}{n}", tag.1))?;
    let c = cx.join(&cy)?;
    let mx = x.m();
    let colors = c
        .vertex_names()
        .iter()
        .map(|n| {
            if let Some(v) = n.strip_prefix(tag.0).and_then(|s| x.complex.index_of(s)) {
                return x.coloring.color(v);
            }
            let v = n.strip_prefix(tag.1).and_then(|s| y.complex.index_of(s)).expect("vertex of one factor");
            mx + y.coloring.color(v)
        })
        .collect();
    let coloring = Coloring::new(colors, mx + y.m())?;
    let mut a = x.a.0.clone();
    a.extend(&y.a.0);
    BalancedComplex::new(c, coloring, MultiDeg(a))
}

/// Six-vertex real projective plane.
pub fn rp2_six() -> SimplicialComplex {
    let facets = [
        [1, 2, 3],
        [1, 3, 4],
        [1, 4, 5],
        [1, 5, 6],
        [1, 2, 6],
        [2, 3, 5],
        [2, 4, 5],
        [2, 4, 6],
        [3, 4, 6],
        [3, 5, 6],
    ];
    numbered(facets.iter().map(|f| f.iter().map(|v| v - 1).collect()).collect())
}

/// Cone over `c` with apex `apex`.
pub fn cone(c: &SimplicialComplex, apex: &str) -> Result<SimplicialComplex> {
    let p = SimplicialComplex::new(&[vec![apex]])?;
    c.join(&p)
}

/// Name of the vertex introduced when subdividing at `sigma`.
pub fn subdivision_vertex_name(c: &SimplicialComplex, sigma: &[usize]) -> String {
    let mut names: Vec<&str> = c.face_names(sigma);
    names.sort_by(|a, b| natural_cmp(a, b));
    format!("b:{}", names.join("/"))
}

/// Stellar subdivision at a nonempty face σ.
pub fn stellar_subdivision(c: &SimplicialComplex, sigma: &[usize]) -> Result<SimplicialComplex> {
    stellar_named(c, sigma, &subdivision_vertex_name(c, sigma))
}

fn stellar_named(c: &SimplicialComplex, sigma: &[usize], new: &str) -> Result<SimplicialComplex> {
    if sigma.is_empty() {
        return Err(Error::Input("cannot subdivide the empty face".into()));
    }
    if !c.contains_face(sigma) {
        return Err(Error::Input(format!("{:?} is not a face", c.face_names(sigma))));
    }
    if c.index_of(new).is_some() {
        return Err(Error::Input(format!("vertex name {new:?} already in use")));
    }
    let mut facets: Vec<Vec<String>> = Vec::new();
    let name = |v: usize| c.name(v).to_string();
    for f in c.facets() {
        if is_subset(sigma, f) {
            for &v in sigma {
                let mut g: Vec<String> = f.iter().copied().filter(|&u| u != v).map(name).collect();
                g.push(new.to_string());
                facets.push(g);
            }
        } else {
            facets.push(f.iter().copied().map(name).collect());
        }
    }
    SimplicialComplex::new(&facets)
}

/// Stacked (d−1)-sphere on n vertices: ∂Δ^d followed by n−d−1 facet
/// subdivisions. Without a seed the lexicographically first facet is
/// subdivided each time; vertices are named 1..=n in order of creation.
pub fn stacked_sphere(d: usize, n: usize, seed: Option<u64>) -> Result<SimplicialComplex> {
    if d < 1 || n < d + 1 {
        return Err(Error::Input(format!("stacked sphere needs d ≥ 1 and n ≥ d+1, got d={d}, n={n}")));
    }
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut c = simplex_boundary(d);
    for next in d + 2..=n {
        let k = match rng.as_mut() {
            Some(r) => r.gen_range(0..c.facets().len()),
            None => 0,
        };
        let f = c.facets()[k].clone();
        c = stellar_named(&c, &f, &next.to_string())?;
    }
    Ok(c)
}

/// The l-th partial barycentric subdivision, with its fine coloring
/// (a = (d−l, 1, …, 1)) and coarse coloring (a = (d−l, l)).
pub fn partial_barycentric_subdivision(c: &SimplicialComplex, l: usize) -> Result<(BalancedComplex, BalancedComplex)> {
    let d = c.d();
    if !c.is_pure() {
        return Err(Error::Input("partial barycentric subdivision needs a pure complex".into()));
    }
    if l >= d {
        return Err(Error::Input(format!("need 0 ≤ l < d = {d}, got l = {l}")));
    }
    if l == 0 {
        let m = BalancedComplex::monochromatic(c.clone());
        return Ok((m.clone(), m));
    }
    let mut facets: Vec<Vec<String>> = Vec::new();
    for f in c.facets() {
        // chains F = τ_l ⊋ τ_{l−1} ⊋ ⋯ ⊋ τ_0, one vertex removed per step
        for removed in f.iter().copied().permutations(l) {
            let mut tau: Face = f.clone();
            let mut verts: Vec<String> = vec![subdivision_vertex_name(c, &tau)];
            for (step, &v) in removed.iter().enumerate() {
                tau.retain(|&u| u != v);
                if step + 1 < l {
                    verts.push(subdivision_vertex_name(c, &tau));
                }
            }
            verts.extend(tau.iter().map(|&v| c.name(v).to_string()));
            facets.push(verts);
        }
    }
    let sd = SimplicialComplex::new(&facets)?;
    let color_of = |n: &str| -> usize {
        match n.strip_prefix("b:").filter(|_| c.index_of(n).is_none()) {
            Some(rest) => rest.split('/').count() + l - d,
            None => 0,
        }
    };
    let colors: Vec<usize> = sd.vertex_names().iter().map(|n| color_of(n)).collect();
    let mut a = vec![1u32; l + 1];
    a[0] = (d - l) as u32;
    let fine = BalancedComplex::new(sd.clone(), Coloring::new(colors.clone(), l + 1)?, MultiDeg(a))?;
    let coarse_colors = colors.iter().map(|&x| usize::from(x > 0)).collect();
    let coarse = BalancedComplex::new(sd, Coloring::new(coarse_colors, 2)?, MultiDeg(vec![(d - l) as u32, l as u32]))?;
    Ok((fine, coarse))
}
