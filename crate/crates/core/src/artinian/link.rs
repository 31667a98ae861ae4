use super::lsop::LsopSpec;
use crate::complex::{BalancedComplex, Coloring, MultiDeg};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;

/// A complex derived from a vertex of a larger one, with its l.s.o.p.
#[derive(Clone, Debug)]
pub struct LocalSpec<F: Field> {
    pub complex: BalancedComplex,
    pub lsop: LsopSpec<F>,
    /// Local vertex index → vertex index in the parent.
    pub parent_vertex: Vec<usize>,
}

fn parent_indices(bc: &BalancedComplex, child: &crate::complex::SimplicialComplex) -> Vec<usize> {
    child.vertex_names().iter().map(|n| bc.complex.index_of(n).expect("subcomplex vertex")).collect()
}

/// `st_v`: columns restricted to the star, all rows kept.
pub fn star_restriction<F: Field>(bc: &BalancedComplex, lsop: &LsopSpec<F>, v: usize) -> Result<LocalSpec<F>> {
    let st = bc.complex.star(&[v])?;
    let map = parent_indices(bc, &st);
    let coloring = bc.coloring.restrict(&bc.complex, &st)?;
    let complex = BalancedComplex::new(st, coloring, bc.a.clone())?;
    let matrix = lsop.submatrix(&map);
    let lsop = LsopSpec::from_matrix(&complex, lsop.field.clone(), lsop.mode, lsop.partition.clone(), matrix)?;
    Ok(LocalSpec { complex, lsop, parent_vertex: map })
}

/// `lk_v`: columns restricted to the link and rows projected away from
/// `p(v)` by eliminating on the first row of `I_{κ(v)}` where `p(v)` is
/// nonzero. A color whose budget drops to zero disappears.
pub fn link_reduction<F: Field>(bc: &BalancedComplex, lsop: &LsopSpec<F>, v: usize) -> Result<LocalSpec<F>> {
    let f = &lsop.field;
    let j = bc.coloring.color(v);
    let r = *lsop.partition[j]
        .iter()
        .find(|&&k| !f.is_zero(lsop.entry(k, v)))
        .ok_or_else(|| Error::InvalidLsop(format!("p({}) = 0", bc.complex.name(v))))?;
    let lk = bc.complex.link(&[v])?;
    if lk.is_void_face() {
        return Err(Error::Hypothesis(format!("the link of {} is {{∅}}", bc.complex.name(v))));
    }
    let map = parent_indices(bc, &lk);
    let pivot_inv = f.inv(lsop.entry(r, v))?;
    let new_row = |k: usize| -> usize { if k < r { k } else { k - 1 } };
    let mut rows = Vec::with_capacity(lsop.d() - 1);
    for k in (0..lsop.d()).filter(|&k| k != r) {
        let c = if lsop.partition[j].contains(&k) { f.mul(lsop.entry(k, v), &pivot_inv) } else { f.zero() };
        rows.push(map.iter().map(|&w| f.sub(lsop.entry(k, w), &f.mul(&c, lsop.entry(r, w)))).collect::<Vec<_>>());
    }
    let matrix = Matrix::from_rows_with_cols(map.len(), rows)?;
    let drop = bc.a.0[j] == 1;
    let mut a = bc.a.0.clone();
    a[j] -= 1;
    let mut partition: Vec<Vec<usize>> =
        lsop.partition.iter().map(|block| block.iter().filter(|&&k| k != r).map(|&k| new_row(k)).collect()).collect();
    let colors: Vec<usize> = map.iter().map(|&w| bc.coloring.color(w)).collect();
    let (colors, m) = if drop {
        a.remove(j);
        partition.remove(j);
        (colors.into_iter().map(|c| if c > j { c - 1 } else { c }).collect(), bc.m() - 1)
    } else {
        (colors, bc.m())
    };
    let complex = BalancedComplex::new(lk, Coloring::new(colors, m)?, MultiDeg(a))?;
    let lsop = LsopSpec::from_matrix(&complex, f.clone(), lsop.mode, partition, matrix)?;
    Ok(LocalSpec { complex, lsop, parent_vertex: map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artinian::{substituted_configuration, validate_lsop, Artinian};
    use crate::complex::construct;
    use crate::field::Gf2k;

    #[test]
    fn octahedron_links() {
        let oct = construct::cross_polytope(3);
        let lsop = substituted_configuration(&oct, Gf2k::new(32).unwrap(), 6).unwrap();
        let art = Artinian::new(&oct, &lsop).unwrap();
        for v in 0..oct.n() {
            let lk = link_reduction(&oct, &lsop, v).unwrap();
            assert_eq!(lk.complex.a, MultiDeg(vec![1, 1]));
            assert_eq!(lk.complex.n(), 4);
            assert!(validate_lsop(&lk.complex, &lk.lsop).holds);
            let st = star_restriction(&oct, &lsop, v).unwrap();
            let (al, ast) = (Artinian::new(&lk.complex, &lk.lsop).unwrap(), Artinian::new(&st.complex, &st.lsop).unwrap());
            let hl = al.hilbert_function().unwrap();
            for (b, d) in ast.hilbert_function().unwrap() {
                let mut lb = b.0.clone();
                let j = oct.coloring.color(v);
                if lb[j] > 0 {
                    assert_eq!(d, 0);
                    continue;
                }
                lb.remove(j);
                assert_eq!(d, hl[&MultiDeg(lb)], "b = {b}");
            }
            assert_eq!(art.dim(&oct.a).unwrap(), 1);
        }
    }

    #[test]
    fn triangle_vertex_link() {
        let tri = BalancedComplex::monochromatic(construct::cycle(3));
        let lsop = substituted_configuration(&tri, Gf2k::new(32).unwrap(), 1).unwrap();
        let lk = link_reduction(&tri, &lsop, 0).unwrap();
        assert_eq!(lk.complex.a, MultiDeg(vec![1]));
        let art = Artinian::new(&lk.complex, &lk.lsop).unwrap();
        assert_eq!(art.coarse_hilbert().unwrap(), vec![1, 1]);
    }
}
