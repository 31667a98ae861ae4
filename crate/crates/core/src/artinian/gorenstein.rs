use std::collections::BTreeMap;

use super::eval::EvalFunctional;
use super::monomial::{Monomial, SparsePoly};
use super::reduction::Artinian;
use crate::complex::MultiDeg;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};
use crate::verdict::Verdict;

/// `B(μ) = A / ker` of the pairing induced by a functional on `A_a`.
#[derive(Clone, Debug)]
pub struct Gorensteinification {
    pub dims: BTreeMap<MultiDeg, usize>,
    /// Monomials of `A_b` whose images form a basis of `B_b`.
    pub representatives: BTreeMap<MultiDeg, Vec<Monomial>>,
    /// `dim B_b = dim B_{a−b}` for every b.
    pub duality: Verdict,
}

/// `[Ψ(m_i n_k)]` for quotient bases `m` of `A_b` and `n` of `A_{a−b}`.
pub fn pairing_matrix<F: Field>(art: &Artinian<F>, psi: &EvalFunctional<F>, b: &MultiDeg) -> Result<Matrix<F>> {
    let f = art.field();
    let a = &art.complex().a;
    let c = a.checked_sub(b).ok_or_else(|| Error::Degree(format!("{b} is not below {a}")))?;
    let (left, right) = (art.piece(b)?, art.piece(&c)?);
    let mut m = Matrix::zeros(f, left.dim(), right.dim());
    for (i, x) in left.basis().iter().enumerate() {
        for (k, y) in right.basis().iter().enumerate() {
            m.set(i, k, psi.apply_image(f, &SparsePoly::monomial(f, x.mul(y)))?);
        }
    }
    f.check_budget()?;
    Ok(m)
}

pub fn gorensteinification<F: Field>(art: &Artinian<F>, psi: &EvalFunctional<F>) -> Result<Gorensteinification> {
    let f = art.field();
    let a = art.complex().a.clone();
    let mut dims = BTreeMap::new();
    let mut representatives = BTreeMap::new();
    for b in a.box_iter() {
        let m = pairing_matrix(art, psi, &b)?;
        let basis = art.piece(&b)?;
        let mut ech = Echelon::new(m.cols());
        let mut reps = Vec::new();
        for i in 0..m.rows() {
            if ech.insert(f, m.row(i).to_vec()) {
                reps.push(basis.basis()[i].clone());
            }
        }
        dims.insert(b.clone(), reps.len());
        representatives.insert(b, reps);
    }
    let mut duality = Verdict::yes();
    for (b, &d) in &dims {
        let e = dims[&a.checked_sub(b).expect("box")];
        if d != e {
            duality = Verdict::no(format!("dim B_{b} = {d} but dim B_{} = {e}", a.checked_sub(b).expect("box")));
            break;
        }
    }
    Ok(Gorensteinification { dims, representatives, duality })
}
