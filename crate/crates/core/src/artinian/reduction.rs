use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use super::lsop::{validate_lsop, LsopSpec};
use super::monomial::{monomials_in, sort_degrevlex, Monomial, SparsePoly};
use crate::complex::{BalancedComplex, MultiDeg, SimplicialComplex};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, Matrix};

/// One multidegree of the Artinian reduction.
///
/// Columns are the monomials of multidegree `b` in the variables that
/// survive elimination; rows of the echelon span the image of the
/// Stanley–Reisner ideal. The quotient basis is the set of non-pivot
/// columns, and every such monomial has face support.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    pub b: MultiDeg,
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    echelon: Echelon<F>,
    basis_cols: Vec<usize>,
    basis: Vec<Monomial>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn relation_rank(&self) -> usize {
        self.echelon.rank()
    }

    /// Coordinates in the quotient basis of a polynomial in the surviving
    /// variables.
    pub fn coordinates(&self, f: &F, p: &SparsePoly<F>) -> Result<Vec<F::Elem>> {
        let mut v = vec![f.zero(); self.columns.len()];
        for (m, c) in &p.terms {
            let i = *self.index.get(m).ok_or_else(|| Error::Degree(format!("{m:?} is not in degree {}", self.b)))?;
            v[i] = f.add(&v[i], c);
        }
        self.echelon.reduce(f, &mut v);
        Ok(self.basis_cols.iter().map(|&i| v[i].clone()).collect())
    }

    /// Polynomial with the given quotient-basis coordinates.
    pub fn element(&self, f: &F, coords: &[F::Elem]) -> SparsePoly<F> {
        let mut p = SparsePoly::zero();
        for (m, c) in self.basis.iter().zip(coords) {
            p.add_term(f, m.clone(), c.clone());
        }
        p
    }
}

/// `A = k[Δ]/(Θ)`, presented as `k[y]/φ(I_Δ)` after solving `Θ = 0` for
/// the variables of one facet `σ₀`.
pub struct Artinian<F: Field> {
    bc: BalancedComplex,
    lsop: LsopSpec<F>,
    sigma0: Vec<usize>,
    pools: Vec<Vec<usize>>,
    images: Vec<SparsePoly<F>>,
    nonfaces: Vec<(MultiDeg, SparsePoly<F>)>,
    pieces: Mutex<HashMap<MultiDeg, Arc<GradedPiece<F>>>>,
}

/// Minimal non-faces of `c`.
pub fn minimal_nonfaces(c: &SimplicialComplex) -> Vec<Vec<usize>> {
    let n = c.num_vertices();
    let mut out = Vec::new();
    for k in 1..=c.d() + 1 {
        for f in c.faces_of_size(k - 1) {
            let start = f.last().map_or(0, |&x| x + 1);
            for w in start..n {
                let mut t = f.clone();
                t.push(w);
                if c.contains_face(&t) {
                    continue;
                }
                let minimal = (0..t.len()).all(|i| {
                    let mut s = t.clone();
                    s.remove(i);
                    c.contains_face(&s)
                });
                if minimal {
                    out.push(t);
                }
            }
        }
    }
    out
}

impl<F: Field> Artinian<F> {
    pub fn new(bc: &BalancedComplex, lsop: &LsopSpec<F>) -> Result<Self> {
        let f = &lsop.field;
        let v = validate_lsop(bc, lsop);
        if !v.holds {
            return Err(Error::InvalidLsop(v.witness.unwrap_or_default()));
        }
        let sigma0 = bc
            .complex
            .facets()
            .iter()
            .find(|s| bc.coloring.multideg(s) == bc.a)
            .cloned()
            .ok_or_else(|| Error::Hypothesis(format!("no facet has multidegree {}", bc.a)))?;
        let n = bc.n();
        let mut in_sigma = vec![false; n];
        for &v in &sigma0 {
            in_sigma[v] = true;
        }
        let pools: Vec<Vec<usize>> = (0..bc.m()).map(|j| bc.coloring.class(j).into_iter().filter(|&v| !in_sigma[v]).collect()).collect();
        let mut images: Vec<SparsePoly<F>> = (0..n).map(|v| SparsePoly::monomial(f, Monomial::var(v))).collect();
        for (j, rows) in lsop.partition.iter().enumerate() {
            let elim: Vec<usize> = sigma0.iter().copied().filter(|&v| bc.coloring.color(v) == j).collect();
            let b = Matrix::from_rows_with_cols(elim.len(), rows.iter().map(|&k| elim.iter().map(|&v| lsop.entry(k, v).clone()).collect()).collect())?;
            let mut coeffs: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); elim.len()];
            for &w in &pools[j] {
                let rhs: Vec<F::Elem> = rows.iter().map(|&k| f.neg(lsop.entry(k, w))).collect();
                let z = linalg::solve(f, &b, &rhs)?.ok_or_else(|| Error::InvalidLsop("facet block is singular".into()))?;
                for (i, zi) in z.into_iter().enumerate() {
                    coeffs[i].push((w, zi));
                }
            }
            for (i, &v) in elim.iter().enumerate() {
                images[v] = SparsePoly::linear(f, &coeffs[i]);
            }
        }
        let mut nonfaces = Vec::new();
        for t in minimal_nonfaces(&bc.complex) {
            let deg = bc.coloring.multideg(&t);
            let mut img = SparsePoly::constant(f, f.one());
            for &v in &t {
                img = img.mul(f, &images[v]);
            }
            nonfaces.push((deg, img));
        }
        f.check_budget()?;
        Ok(Artinian { bc: bc.clone(), lsop: lsop.clone(), sigma0, pools, images, nonfaces, pieces: Mutex::new(HashMap::new()) })
    }

    pub fn complex(&self) -> &BalancedComplex {
        &self.bc
    }

    pub fn lsop(&self) -> &LsopSpec<F> {
        &self.lsop
    }

    pub fn field(&self) -> &F {
        &self.lsop.field
    }

    /// The facet whose variables were eliminated.
    pub fn eliminated_facet(&self) -> &[usize] {
        &self.sigma0
    }

    /// Image of `x_v` in the surviving variables.
    pub fn vertex_image(&self, v: usize) -> &SparsePoly<F> {
        &self.images[v]
    }

    pub fn monomial_image(&self, m: &Monomial) -> SparsePoly<F> {
        let f = self.field();
        let mut free = Vec::new();
        let mut acc = SparsePoly::constant(f, f.one());
        for &v in m.vertices() {
            if self.pools[self.bc.coloring.color(v)].binary_search(&v).is_ok() {
                free.push(v);
            } else {
                acc = acc.mul(f, &self.images[v]);
            }
        }
        acc.mul_monomial(&Monomial::from_vertices(free))
    }

    /// Image in `k[y]`; terms that vanish in `k[Δ]` are dropped first.
    pub fn image(&self, p: &SparsePoly<F>) -> SparsePoly<F> {
        let f = self.field();
        let mut out = SparsePoly::zero();
        for (m, c) in &p.terms {
            if !m.is_face_monomial(&self.bc.complex) {
                continue;
            }
            out = out.add(f, &self.monomial_image(m).scale(f, c));
        }
        out
    }

    /// `A_b`, cached.
    pub fn piece(&self, b: &MultiDeg) -> Result<Arc<GradedPiece<F>>> {
        if b.len() != self.bc.m() {
            return Err(Error::Degree(format!("multidegree {b} has the wrong length for m = {}", self.bc.m())));
        }
        if let Some(p) = self.pieces.lock().expect("piece cache").get(b) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.build_piece(b));
        self.field().check_budget()?;
        self.pieces.lock().expect("piece cache").insert(b.clone(), p.clone());
        Ok(p)
    }

    fn build_piece(&self, b: &MultiDeg) -> GradedPiece<F> {
        let f = self.field();
        let mut columns = monomials_in(&self.pools, b);
        sort_degrevlex(&mut columns);
        let index: HashMap<Monomial, usize> = columns.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut echelon = Echelon::new(columns.len());
        'outer: for (deg, img) in &self.nonfaces {
            if echelon.is_full() {
                break;
            }
            let Some(rest) = b.checked_sub(deg) else { continue };
            for m in monomials_in(&self.pools, &rest) {
                let row: Vec<(usize, F::Elem)> = img.terms.iter().map(|(t, c)| (index[&t.mul(&m)], c.clone())).collect();
                echelon.insert_sparse(f, &row);
                if echelon.is_full() || f.check_budget().is_err() {
                    break 'outer;
                }
            }
        }
        let basis_cols = echelon.free_columns();
        let basis = basis_cols.iter().map(|&i| columns[i].clone()).collect();
        GradedPiece { b: b.clone(), columns, index, echelon, basis_cols, basis }
    }

    pub fn dim(&self, b: &MultiDeg) -> Result<usize> {
        Ok(self.piece(b)?.dim())
    }

    /// Multidegree of a homogeneous polynomial.
    pub fn degree_of(&self, p: &SparsePoly<F>) -> Result<Option<MultiDeg>> {
        let mut deg = None;
        for m in p.terms.keys() {
            let d = m.multideg(&self.bc);
            match &deg {
                None => deg = Some(d),
                Some(e) if *e != d => return Err(Error::Degree(format!("polynomial mixes degrees {e} and {d}"))),
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Coordinates of `p` (a polynomial in the vertex variables of
    /// multidegree `b`) in the quotient basis of `A_b`.
    pub fn reduce(&self, b: &MultiDeg, p: &SparsePoly<F>) -> Result<Vec<F::Elem>> {
        if let Some(d) = self.degree_of(p)? {
            if d != *b {
                return Err(Error::Degree(format!("expected degree {b}, found {d}")));
            }
        }
        let piece = self.piece(b)?;
        piece.coordinates(self.field(), &self.image(p))
    }

    /// Matrix of `×f : A_{src} → A_{dst}` in the quotient bases (columns
    /// indexed by the source basis).
    pub fn mult_map(&self, src: &GradedPiece<F>, dst: &GradedPiece<F>, p: &SparsePoly<F>) -> Result<Matrix<F>> {
        let deg = self.degree_of(p)?.unwrap_or_else(|| dst.b.checked_sub(&src.b).unwrap_or_else(|| dst.b.clone()));
        if src.b.add(&deg) != dst.b {
            return Err(Error::Degree(format!("{} + {} ≠ {}", src.b, deg, dst.b)));
        }
        self.mult_map_image(src, dst, &self.image(p))
    }

    /// As [`Artinian::mult_map`] for a multiplier already in the surviving
    /// variables.
    pub fn mult_map_image(&self, src: &GradedPiece<F>, dst: &GradedPiece<F>, img: &SparsePoly<F>) -> Result<Matrix<F>> {
        let f = self.field();
        let mut m = Matrix::zeros(f, dst.dim(), src.dim());
        for (j, mono) in src.basis().iter().enumerate() {
            let col = dst.coordinates(f, &img.mul_monomial(mono))?;
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        f.check_budget()?;
        Ok(m)
    }

    /// `dim A_b` over the box `[0, a]`.
    pub fn hilbert_function(&self) -> Result<BTreeMap<MultiDeg, usize>> {
        let boxed: Vec<MultiDeg> = self.bc.a.box_iter().collect();
        let dims: Vec<Result<usize>> = boxed.par_iter().map(|b| self.dim(b)).collect();
        boxed.into_iter().zip(dims).map(|(b, d)| Ok((b, d?))).collect()
    }

    /// Coarse Hilbert function `(dim A_0, …, dim A_d)`.
    pub fn coarse_hilbert(&self) -> Result<Vec<usize>> {
        let mut out = vec![0; self.bc.d() + 1];
        for (b, d) in self.hilbert_function()? {
            out[b.total() as usize] += d;
        }
        Ok(out)
    }

    /// Socle elements of degree `b`: common kernel of every `×x_v`.
    pub fn socle(&self, b: &MultiDeg) -> Result<Vec<SparsePoly<F>>> {
        let f = self.field();
        let src = self.piece(b)?;
        let mut blocks = Vec::new();
        for v in 0..self.bc.n() {
            let dst = self.piece(&b.add(&MultiDeg::unit(self.bc.m(), self.bc.coloring.color(v))))?;
            blocks.push(self.mult_map_image(&src, &dst, &self.images[v])?);
        }
        let stacked = Matrix::stack(f, &blocks, src.dim());
        Ok(linalg::kernel(f, &stacked).into_iter().map(|k| src.element(f, &k)).collect())
    }

    /// Socle dimensions over the box.
    pub fn socle_dims(&self) -> Result<BTreeMap<MultiDeg, usize>> {
        let boxed: Vec<MultiDeg> = self.bc.a.box_iter().collect();
        let dims: Vec<Result<usize>> = boxed.par_iter().map(|b| self.socle(b).map(|s| s.len())).collect();
        boxed.into_iter().zip(dims).map(|(b, d)| Ok((b, d?))).collect()
    }

    /// `ℓ_j = Σ_{κ(v) = j} x_v`.
    pub fn canonical_elements(&self) -> Vec<SparsePoly<F>> {
        let f = self.field();
        (0..self.bc.m())
            .map(|j| SparsePoly::linear(f, &self.bc.coloring.class(j).into_iter().map(|v| (v, f.one())).collect::<Vec<_>>()))
            .collect()
    }

    /// `ℓ^e = ∏ ℓ_j^{e_j}`, returned in the surviving variables.
    pub fn power_image(&self, ell: &[SparsePoly<F>], e: &MultiDeg) -> SparsePoly<F> {
        let f = self.field();
        let mut acc = SparsePoly::constant(f, f.one());
        for (j, l) in ell.iter().enumerate() {
            if e.0[j] > 0 {
                acc = acc.mul(f, &self.image(l).pow(f, e.0[j]));
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artinian::lsop::{substituted_configuration, symbolic_configuration};
    use crate::complex::{construct, flag_h_of};
    use crate::field::{Gf2k, Gfp};

    fn gf() -> Gf2k {
        Gf2k::new(32).unwrap()
    }

    #[test]
    fn octahedron_dims_match_flag_h() {
        let oct = construct::cross_polytope(3);
        let art = Artinian::new(&oct, &substituted_configuration(&oct, gf(), 1).unwrap()).unwrap();
        let h = flag_h_of(&oct);
        for (b, d) in art.hilbert_function().unwrap() {
            assert_eq!(d as i64, h.get_i64(&b), "b = {b}");
        }
        assert_eq!(art.dim(&MultiDeg(vec![2, 0, 0])).unwrap(), 0);
        assert!(art.socle_dims().unwrap().iter().all(|(b, &d)| d == usize::from(*b == oct.a)));
    }

    #[test]
    fn pentagon_and_triangle() {
        let pent = BalancedComplex::monochromatic(construct::cycle(5));
        let art = Artinian::new(&pent, &substituted_configuration(&pent, Gfp::default_prime(), 4).unwrap()).unwrap();
        assert_eq!(art.coarse_hilbert().unwrap(), vec![1, 3, 1]);
        assert_eq!(art.dim(&MultiDeg(vec![3])).unwrap(), 0);
        let tri = BalancedComplex::monochromatic(construct::cycle(3));
        let art = Artinian::new(&tri, &substituted_configuration(&tri, gf(), 4).unwrap()).unwrap();
        assert_eq!(art.coarse_hilbert().unwrap().iter().sum::<usize>(), 3);
    }

    #[test]
    fn symbolic_matches_substituted() {
        let oct = construct::cross_polytope(3);
        let sym = Artinian::new(&oct, &symbolic_configuration(&oct).unwrap()).unwrap();
        let num = Artinian::new(&oct, &substituted_configuration(&oct, gf(), 9).unwrap()).unwrap();
        assert_eq!(sym.hilbert_function().unwrap(), num.hilbert_function().unwrap());
    }

    #[test]
    fn rp2_in_char_two() {
        let rp2 = BalancedComplex::monochromatic(construct::rp2_six());
        let art = Artinian::new(&rp2, &substituted_configuration(&rp2, gf(), 2).unwrap()).unwrap();
        assert_eq!(art.coarse_hilbert().unwrap(), vec![1, 3, 6, 1]);
        let soc: Vec<usize> = (0..=3).map(|i| art.socle(&MultiDeg(vec![i])).unwrap().len()).collect();
        assert_eq!(&soc[..3], &[0, 0, 3]);
    }

    #[test]
    fn mult_map_identity_and_reduction() {
        let oct = construct::cross_polytope(3);
        let art = Artinian::new(&oct, &substituted_configuration(&oct, gf(), 5).unwrap()).unwrap();
        let f = art.field().clone();
        let b = MultiDeg(vec![1, 0, 0]);
        let p = art.piece(&b).unwrap();
        let id = art.mult_map(&p, &p, &SparsePoly::constant(&f, f.one())).unwrap();
        assert!(id.equal(&f, &Matrix::identity(&f, p.dim())));
        let ell = art.canonical_elements();
        let top = art.piece(&oct.a).unwrap();
        let zero = art.piece(&MultiDeg(vec![0, 0, 0])).unwrap();
        let m = art.mult_map_image(&zero, &top, &art.power_image(&ell, &oct.a)).unwrap();
        assert!(!f.is_zero(m.get(0, 0)));
        assert!(matches!(art.mult_map(&zero, &p, &ell[1]), Err(Error::Degree(_))));
        // reducing a reduced element is idempotent
        let x = SparsePoly::monomial(&f, Monomial::var(0));
        let c = art.reduce(&b, &x).unwrap();
        assert_eq!(art.reduce(&b, &p.element(&f, &c)).unwrap(), c);
    }
}
