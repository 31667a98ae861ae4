use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::lsop::LsopSpec;
use super::monomial::{Monomial, SparsePoly};
use super::reduction::{Artinian, GradedPiece};
use crate::complex::{BalancedComplex, Face};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{is_pseudomanifold, top_cycle_basis, Cycle};
use crate::linalg::{self, Matrix};
use crate::poly::RatFuncField;

/// Redraws of a random auxiliary point before giving up.
pub const MAX_AUX_RETRIES: usize = 8;

/// How the auxiliary point `p'(v*)` is chosen.
#[derive(Clone, Debug)]
pub enum AuxPoint<F: Field> {
    /// Uniform draws from the field, seeded.
    Random(u64),
    /// The sparsest 0/1 vector with every replaced determinant nonzero.
    Sparse,
    Explicit(Vec<F::Elem>),
}

/// Facet weights for a pseudomanifold: the all-ones cycle in characteristic
/// 2, otherwise the top homology generator with `+1` on the first facet.
pub fn orientation<F: Field>(bc: &BalancedComplex, f: &F) -> Result<Vec<F::Elem>> {
    let pm = is_pseudomanifold(&bc.complex);
    if !pm.holds {
        return Err(Error::Hypothesis(format!("not a pseudomanifold: {}", pm.witness.unwrap_or_default())));
    }
    if f.characteristic() == 2 {
        return Ok(vec![f.one(); bc.complex.facets().len()]);
    }
    let basis = top_cycle_basis(&bc.complex, f);
    if basis.len() != 1 {
        return Err(Error::Hypothesis(format!("top homology has rank {}, expected 1 (not orientable)", basis.len())));
    }
    cycle_weights(bc, &basis[0], f)
}

/// Coefficients of a top cycle on the facets, in facet order.
pub fn cycle_weights<F: Field>(bc: &BalancedComplex, mu: &Cycle<F>, f: &F) -> Result<Vec<F::Elem>> {
    bc.complex
        .facets()
        .iter()
        .map(|s| {
            if s.len() != bc.d() {
                return Err(Error::Hypothesis("the complex is not pure".into()));
            }
            Ok(mu.coefficient(s).cloned().unwrap_or_else(|| f.zero()))
        })
        .collect()
}

/// Lee's formula
/// `Ψ(x_J) = Σ_{σ ⊇ supp J} w_σ/[σ] · ∏_{v∈σ} [σ+v*−v]^{m_v−1}`.
pub struct LeeEvaluator<F: Field> {
    bc: BalancedComplex,
    field: F,
    facets: Vec<Face>,
    weights: Vec<F::Elem>,
    aux: Vec<F::Elem>,
    facet_inv: Vec<F::Elem>,
    replaced: Vec<Vec<(F::Elem, F::Elem)>>,
}

fn replaced_dets<F: Field>(
    f: &F,
    lsop: &LsopSpec<F>,
    facets: &[Face],
    aux: &[F::Elem],
) -> Option<Vec<Vec<(F::Elem, F::Elem)>>> {
    let mut out = Vec::with_capacity(facets.len());
    for s in facets {
        let base = lsop.submatrix(s);
        let mut row = Vec::with_capacity(s.len());
        for i in 0..s.len() {
            let mut m = base.clone();
            for (k, x) in aux.iter().enumerate() {
                m.set(k, i, x.clone());
            }
            row.push(f.det_and_inverse(&m)?);
        }
        out.push(row);
    }
    Some(out)
}

impl<F: Field> LeeEvaluator<F> {
    /// Ψ with the orientation weights.
    pub fn new(bc: &BalancedComplex, lsop: &LsopSpec<F>, aux: AuxPoint<F>) -> Result<Self> {
        let w = orientation(bc, &lsop.field)?;
        Self::with_weights(bc, lsop, w, aux)
    }

    /// The same formula with arbitrary facet weights.
    pub fn with_weights(bc: &BalancedComplex, lsop: &LsopSpec<F>, weights: Vec<F::Elem>, aux: AuxPoint<F>) -> Result<Self> {
        let f = lsop.field.clone();
        let facets = bc.complex.facets().to_vec();
        if facets.iter().any(|s| s.len() != bc.d()) {
            return Err(Error::Hypothesis("the complex is not pure".into()));
        }
        let mut facet_inv = Vec::with_capacity(facets.len());
        for (s, w) in facets.iter().zip(&weights) {
            let (_, inv) = f.det_and_inverse(&lsop.submatrix(s)).ok_or_else(|| Error::InvalidLsop("a facet determinant vanishes".into()))?;
            facet_inv.push(f.mul(w, &inv));
        }
        let candidates: Vec<Vec<F::Elem>> = match aux {
            AuxPoint::Explicit(p) => vec![p],
            AuxPoint::Random(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..MAX_AUX_RETRIES).map(|_| (0..bc.d()).map(|_| f.random(&mut rng)).collect()).collect()
            }
            AuxPoint::Sparse => sparse_candidates(&f, lsop),
        };
        let n_candidates = candidates.len();
        for aux in candidates {
            if aux.len() != bc.d() {
                return Err(Error::Input(format!("auxiliary point has {} coordinates, expected {}", aux.len(), bc.d())));
            }
            if let Some(replaced) = replaced_dets(&f, lsop, &facets, &aux) {
                f.check_budget()?;
                return Ok(LeeEvaluator { bc: bc.clone(), field: f, facets, weights, aux, facet_inv, replaced });
            }
        }
        f.check_budget()?;
        Err(Error::FieldTooSmall(format!("every one of {n_candidates} auxiliary points hit a vanishing determinant")))
    }

    pub fn aux_point(&self) -> &[F::Elem] {
        &self.aux
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn weights(&self) -> &[F::Elem] {
        &self.weights
    }

    /// `Ψ(x_J)` for a monomial of multidegree `a`.
    pub fn eval(&self, m: &Monomial) -> Result<F::Elem> {
        let f = &self.field;
        if m.multideg(&self.bc) != self.bc.a {
            return Err(Error::Degree(format!("Ψ is defined on degree {}, got {}", self.bc.a, m.multideg(&self.bc))));
        }
        let support = m.support();
        let mut acc = f.zero();
        for (si, s) in self.facets.iter().enumerate() {
            if !support.iter().all(|v| s.binary_search(v).is_ok()) || f.is_zero(&self.weights[si]) {
                continue;
            }
            let mut term = self.facet_inv[si].clone();
            for (pos, &v) in s.iter().enumerate() {
                let e = m.exponent(v) as i64 - 1;
                let (r, rinv) = &self.replaced[si][pos];
                let base = if e >= 0 { r } else { rinv };
                term = f.mul(&term, &f.pow(base, e.unsigned_abs()));
            }
            acc = f.add(&acc, &term);
        }
        f.check_budget()?;
        Ok(acc)
    }

    pub fn eval_poly(&self, p: &SparsePoly<F>) -> Result<F::Elem> {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &p.terms {
            if !m.is_face_monomial(&self.bc.complex) {
                continue;
            }
            acc = f.add(&acc, &f.mul(c, &self.eval(m)?));
        }
        Ok(acc)
    }
}

/// 0/1 vectors with one nonzero entry per color block, then the all-ones
/// vector.
fn sparse_candidates<F: Field>(f: &F, lsop: &LsopSpec<F>) -> Vec<Vec<F::Elem>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for rows in &lsop.partition {
        out = out.into_iter().flat_map(|pre| rows.iter().map(move |&k| [pre.clone(), vec![k]].concat())).collect();
    }
    let mut cands: Vec<Vec<F::Elem>> = out
        .into_iter()
        .take(64)
        .map(|ks| {
            let mut p = vec![f.zero(); lsop.d()];
            for k in ks {
                p[k] = f.one();
            }
            p
        })
        .collect();
    cands.push(vec![f.one(); lsop.d()]);
    cands
}

/// Symbolic Ψ whose auxiliary point is a block of fresh variables
/// `q1, …, qd`; returns the enlarged field, in which all later arithmetic
/// should happen.
pub fn lee_with_fresh_aux(bc: &BalancedComplex, lsop: &LsopSpec<RatFuncField>) -> Result<(LsopSpec<RatFuncField>, LeeEvaluator<RatFuncField>)> {
    let extra: Vec<String> = (1..=bc.d()).map(|k| format!("q{k}")).collect();
    let field = lsop.field.extended(&extra)?;
    let base = lsop.field.num_vars();
    let mut spec = lsop.clone();
    spec.field = field.clone();
    let aux = (0..bc.d()).map(|k| field.var(base + k)).collect();
    let lee = LeeEvaluator::new(bc, &spec, AuxPoint::Explicit(aux))?;
    Ok((spec, lee))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// `Ψ(x_σ) = 1/[σ]` on positively oriented facets.
    Lee,
    /// `Ψ_μ(x_σ) = μ_σ/[σ]`; `unique` records whether the facet values
    /// determine the functional.
    Cycle { unique: bool },
}

/// A linear functional on `A_a`, stored through its values on the quotient
/// basis of the top piece.
#[derive(Clone, Debug)]
pub struct EvalFunctional<F: Field> {
    pub aux: Option<Vec<F::Elem>>,
    pub normalization: Normalization,
    top: Arc<GradedPiece<F>>,
    values: Vec<F::Elem>,
}

impl<F: Field> EvalFunctional<F> {
    pub fn basis(&self) -> &[Monomial] {
        self.top.basis()
    }

    pub fn values(&self) -> &[F::Elem] {
        &self.values
    }

    /// Value on a top-degree element given by quotient-basis coordinates.
    pub fn on_coordinates(&self, f: &F, coords: &[F::Elem]) -> F::Elem {
        coords.iter().zip(&self.values).fold(f.zero(), |acc, (c, v)| f.add(&acc, &f.mul(c, v)))
    }

    /// Reduces first, then pairs with the stored values.
    pub fn apply(&self, art: &Artinian<F>, p: &SparsePoly<F>) -> Result<F::Elem> {
        let c = art.reduce(&self.top.b, p)?;
        Ok(self.on_coordinates(art.field(), &c))
    }

    /// As [`EvalFunctional::apply`] for a polynomial already in the
    /// surviving variables.
    pub fn apply_image(&self, f: &F, img: &SparsePoly<F>) -> Result<F::Elem> {
        let c = self.top.coordinates(f, img)?;
        Ok(self.on_coordinates(f, &c))
    }
}

/// Ψ on the quotient basis of `A_a`, computed by Lee's formula.
pub fn lee_evaluation<F: Field>(art: &Artinian<F>, aux: AuxPoint<F>) -> Result<EvalFunctional<F>> {
    let lee = LeeEvaluator::new(art.complex(), art.lsop(), aux)?;
    lee_functional(art, &lee)
}

pub fn lee_functional<F: Field>(art: &Artinian<F>, lee: &LeeEvaluator<F>) -> Result<EvalFunctional<F>> {
    let top = art.piece(&art.complex().a)?;
    let values = top.basis().iter().map(|m| lee.eval(m)).collect::<Result<Vec<_>>>()?;
    Ok(EvalFunctional { aux: Some(lee.aux_point().to_vec()), normalization: Normalization::Lee, top, values })
}

/// `Ψ_μ`: solves for the functional on `A_a` with `Ψ_μ(x_σ) = μ_σ/[σ]` on
/// every facet and checks that the system is consistent.
pub fn cycle_functional<F: Field>(art: &Artinian<F>, mu: &Cycle<F>) -> Result<EvalFunctional<F>> {
    let f = art.field();
    let bc = art.complex();
    if mu.is_zero(f) {
        return Err(Error::Input("the zero cycle defines no functional".into()));
    }
    let weights = cycle_weights(bc, mu, f)?;
    let top = art.piece(&bc.a)?;
    let facets = bc.complex.facets();
    let mut rows = Vec::with_capacity(facets.len());
    let mut rhs = Vec::with_capacity(facets.len());
    for (s, w) in facets.iter().zip(&weights) {
        rows.push(art.reduce(&bc.a, &SparsePoly::monomial(f, Monomial::from_vertices(s.iter().copied())))?);
        let (_, inv) = f.det_and_inverse(&art.lsop().submatrix(s)).ok_or_else(|| Error::InvalidLsop("a facet determinant vanishes".into()))?;
        rhs.push(f.mul(w, &inv));
    }
    let m = Matrix::from_rows_with_cols(top.dim(), rows)?;
    let values = linalg::solve(f, &m, &rhs)?
        .ok_or_else(|| Error::Consistency("no functional on A_a takes the prescribed facet values".into()))?;
    let unique = f.matrix_rank(&m) == top.dim();
    f.check_budget()?;
    Ok(EvalFunctional { aux: None, normalization: Normalization::Cycle { unique }, top, values })
}
