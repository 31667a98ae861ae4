use std::collections::BTreeSet;
use std::time::Instant;

use super::report::{CheckRecord, CheckReport, CheckVerdict};
use super::slp::{describe, gf2};
use crate::artinian::{symbolic_configuration, Artinian, AuxPoint, LeeEvaluator, SparsePoly};
use crate::complex::{BalancedComplex, MultiDeg};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::is_homology_sphere;
use crate::poly::bareiss::ColumnBareiss;
use crate::poly::{MPoly, RatFunc, RatFuncField};

/// `ℓ^e` with the canonical `ℓ_j = Σ_{κ(v)=j} x_v`, expanded.
fn canonical_power(bc: &BalancedComplex, f: &RatFuncField, e: &MultiDeg) -> SparsePoly<RatFuncField> {
    let mut acc = SparsePoly::constant(f, f.one());
    for (j, &ej) in e.0.iter().enumerate() {
        if ej == 0 {
            continue;
        }
        let coeffs: Vec<_> = bc.coloring.class(j).into_iter().map(|v| (v, f.one())).collect();
        acc = acc.mul(f, &SparsePoly::linear(f, &coeffs).pow(f, ej));
    }
    acc
}

/// Tests whether `g ↦ g² ℓ^e` vanishes only at `g = 0` on `A_b`.
///
/// With `{m_i}` the quotient basis of `A_b` and `{n_c}` that of `A_{a−2b−e}`,
/// set `c_{ic} = Ψ(m_i² ℓ^e n_c)`. In characteristic 2,
/// `Ψ(g² ℓ^e n_c) = Σ λ_i² c_{ic}`, so by Poincaré duality the form is
/// anisotropic iff no nonzero `λ` makes every such sum vanish, i.e. iff the
/// rows of the Frobenius parts of `c_{ic}` are independent over `K`.
fn anisotropy_rank(bc: &BalancedComplex, b: &MultiDeg, e: &MultiDeg) -> Result<(usize, usize, usize)> {
    let lsop = symbolic_configuration(bc)?;
    let f = lsop.field.clone();
    let art = Artinian::new(bc, &lsop)?;
    let lee = LeeEvaluator::new(bc, &lsop, AuxPoint::Sparse)?;
    let src = art.piece(b)?;
    let rest = bc.a.checked_sub(&b.scale(2).add(e)).ok_or_else(|| Error::Degree(format!("2b + e exceeds a = {}", bc.a)))?;
    let comp = art.piece(&rest)?;
    let le = canonical_power(bc, &f, e);
    let rows = src.dim();
    let mut elim = ColumnBareiss::new(rows);
    let mut cols = 0;
    for n in comp.basis() {
        let base = le.mul_monomial(n);
        let values: Vec<RatFunc> = src
            .basis()
            .iter()
            .map(|m| lee.eval_poly(&base.mul_monomial(&m.square())))
            .collect::<Result<_>>()?;
        f.check_budget()?;
        let nums = RatFunc::common_numerators(&values);
        let parts: Vec<_> = nums.iter().map(|p| f.guard_poly(p.clone()).frobenius_split()).collect();
        f.check_budget()?;
        let parities: BTreeSet<u64> = parts.iter().flat_map(|p| p.keys().copied()).collect();
        for s in parities {
            if elim.is_full() {
                break;
            }
            cols += 1;
            elim.push(parts.iter().map(|p| p.get(&s).cloned().unwrap_or_else(MPoly::zero)).collect());
        }
        if elim.is_full() {
            break;
        }
    }
    Ok((rows, cols, elim.rank()))
}

/// Anisotropy over the symbolic field in characteristic 2.
///
/// With `colors = None` the form is `Q(g, h) = Ψ(g h ℓ^{a−2b})` on `A_b`;
/// with `colors = Some(S)` it is `Q'(g, h) = g h ℓ^{e_S}`, which needs
/// `2b + e_S ≤ a`.
pub fn check_anisotropy_symbolic(bc: &BalancedComplex, b: &MultiDeg, colors: Option<&[usize]>) -> Result<CheckReport> {
    let a = &bc.a;
    if b.len() != a.len() {
        return Err(Error::Degree(format!("degree {b} has {} entries, expected {}", b.len(), a.len())));
    }
    let (statement, e) = match colors {
        None => {
            let e = a.checked_sub(&b.scale(2)).ok_or_else(|| Error::Degree(format!("need 2b ≤ a, got b = {b}, a = {a}")))?;
            ("anisotropy", e)
        }
        Some(s) => {
            let mut e = MultiDeg(vec![0; a.len()]);
            for &j in s {
                if j >= a.len() {
                    return Err(Error::Input(format!("color {} out of range 1..={}", j + 1, a.len())));
                }
                e.0[j] = 1;
            }
            if !b.scale(2).add(&e).le(a) {
                return Err(Error::Degree(format!("need 2b + e_S ≤ a, got b = {b}, e_S = {e}, a = {a}")));
            }
            ("anisotropy-partial", e)
        }
    };
    let mut report = CheckReport::new("anisotropy of the Lefschetz form in characteristic 2", &describe(bc));
    report.hypothesis("homology sphere over GF(2)", is_homology_sphere(&bc.complex, &gf2()));
    let start = Instant::now();
    let (rows, cols, rank) = anisotropy_rank(bc, b, &e)?;
    let target = b.scale(2).add(&e);
    let rec = if rank == rows {
        CheckRecord::new(statement, vec![b.clone(), target], vec![rows, cols], CheckVerdict::Certified)
            .with_provenance("exact rank over the squares subfield")
    } else {
        CheckRecord::new(statement, vec![b.clone(), target], vec![rows, cols], CheckVerdict::Refuted).with_witness(format!(
            "the Frobenius parts have rank {rank} < dim A_{b} = {rows}, so some nonzero g has vanishing square form"
        ))
    };
    report.push(rec.with_rank(rank).with_timing(start.elapsed()));
    report.demote_unmet();
    Ok(report.finish(None))
}
