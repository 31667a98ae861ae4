use std::collections::HashMap;

use super::lsop::LsopSpec;
use super::monomial::{sr_graded_basis, Monomial};
use crate::complex::{BalancedComplex, MultiDeg};
use crate::error::Result;
use crate::field::Field;
use crate::linalg::{Echelon, Matrix};

/// `k[Δ]_b` with the relations `θ_k · k[Δ]_{b−e_j}` (`k ∈ I_j`) written in
/// the face-monomial basis.
#[derive(Clone, Debug)]
pub struct RelationPiece<F: Field> {
    pub b: MultiDeg,
    pub monomials: Vec<Monomial>,
    pub relations: Matrix<F>,
    pub rank: usize,
    /// Non-pivot monomials after elimination in the listed order.
    pub quotient_basis: Vec<Monomial>,
}

impl<F: Field> RelationPiece<F> {
    pub fn dim(&self) -> usize {
        self.monomials.len() - self.rank
    }
}

pub fn face_relations<F: Field>(bc: &BalancedComplex, lsop: &LsopSpec<F>, b: &MultiDeg) -> Result<RelationPiece<F>> {
    let f = &lsop.field;
    let monomials = sr_graded_basis(bc, b);
    let index: HashMap<&Monomial, usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for (j, block) in lsop.partition.iter().enumerate() {
        let Some(lower) = b.checked_sub(&MultiDeg::unit(bc.m(), j)) else { continue };
        let lower_basis = sr_graded_basis(bc, &lower);
        let class = bc.coloring.class(j);
        for &k in block {
            for m in &lower_basis {
                let mut row = vec![f.zero(); monomials.len()];
                for &v in &class {
                    if let Some(&i) = index.get(&m.mul(&Monomial::var(v))) {
                        row[i] = f.add(&row[i], lsop.entry(k, v));
                    }
                }
                rows.push(row);
            }
        }
    }
    let relations = Matrix::from_rows_with_cols(monomials.len(), rows)?;
    let mut ech = Echelon::new(monomials.len());
    for i in 0..relations.rows() {
        ech.insert(f, relations.row(i).to_vec());
    }
    let quotient_basis = ech.free_columns().into_iter().map(|i| monomials[i].clone()).collect();
    f.check_budget()?;
    Ok(RelationPiece { b: b.clone(), rank: ech.rank(), monomials, relations, quotient_basis })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::artinian::{substituted_configuration, Artinian};
    use crate::complex::construct;
    use crate::field::{Gf2k, Gfp};

    #[test]
    fn agrees_with_eliminated_presentation() {
        let cases = [
            construct::cross_polytope(3),
            BalancedComplex::monochromatic(construct::rp2_six()),
            BalancedComplex::monochromatic(construct::cycle(5)),
            BalancedComplex::monochromatic(construct::simplex_boundary(3)),
        ];
        for bc in &cases {
            let lsop = substituted_configuration(bc, Gfp::default_prime(), 12).unwrap();
            let art = Artinian::new(bc, &lsop).unwrap();
            let bigger = bc.a.add(&MultiDeg(vec![1; bc.m()]));
            for b in bigger.box_iter() {
                assert_eq!(face_relations(bc, &lsop, &b).unwrap().dim(), art.dim(&b).unwrap(), "b = {b}");
            }
        }
        let oct = construct::cross_polytope(3);
        let lsop = substituted_configuration(&oct, Gf2k::new(32).unwrap(), 1).unwrap();
        assert_eq!(face_relations(&oct, &lsop, &MultiDeg(vec![1, 1, 1])).unwrap().monomials.len(), 8);
    }
}
