use std::time::Instant;

use super::report::{CheckRecord, CheckReport, CheckVerdict};
use super::slp::describe;
use crate::artinian::{monomials_in, symbolic_configuration, variable_name, Artinian, AuxPoint, LeeEvaluator, Monomial, SparsePoly};
use crate::complex::{BalancedComplex, MultiDeg};
use crate::error::Result;
use crate::field::Field;
use crate::homology::is_pseudomanifold;
use crate::poly::{RatFunc, RatFuncField};

/// Every κ-transversal sequence `(v_1, …, v_d)`: row `k` may only take
/// vertices whose color block contains `k`.
pub fn transversal_sequences(bc: &BalancedComplex, row_colors: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for &j in row_colors {
        let class = bc.coloring.class(j);
        out = out.into_iter().flat_map(|pre| class.iter().map(move |&v| [pre.clone(), vec![v]].concat())).collect();
    }
    out
}

struct Setup {
    field: RatFuncField,
    lee: LeeEvaluator<RatFuncField>,
    /// Variable index of `p_{k, v}` at `[k][v]`.
    vars: Vec<Vec<Option<usize>>>,
    row_colors: Vec<usize>,
}

impl Setup {
    fn new(bc: &BalancedComplex) -> Result<Self> {
        let lsop = symbolic_configuration(bc)?;
        let field = lsop.field.clone();
        let lee = LeeEvaluator::new(bc, &lsop, AuxPoint::Sparse)?;
        let vars = (0..bc.d())
            .map(|k| (0..bc.n()).map(|v| field.var_index(&variable_name(k, bc.complex.name(v)))).collect())
            .collect();
        Ok(Setup { field, lee, vars, row_colors: lsop.row_colors() })
    }

    fn differentiate(&self, value: RatFunc, seq: &[usize]) -> RatFunc {
        let mut acc = value;
        for (k, &v) in seq.iter().enumerate().rev() {
            let var = self.vars[k][v].expect("transversal sequences only use existing variables");
            acc = self.field.derivative(&acc, var);
        }
        acc
    }
}

fn seq_monomial(seq: &[usize]) -> Monomial {
    Monomial::from_vertices(seq.iter().copied())
}

fn sq(f: &RatFuncField, x: RatFunc) -> RatFunc {
    f.mul(&x, &x)
}

fn mismatch(f: &RatFuncField, what: String, lhs: &RatFunc, rhs: &RatFunc) -> String {
    format!("{what}: left side {} but right side {}", f.format_named(lhs), f.format_named(rhs))
}

/// `∂_I Ψ(x_J) = Ψ(√(x_I x_J))²` for every κ-transversal `I` and every
/// monomial `x_J` of degree `a`, checked as an identity of rational
/// functions. With `with_general`, also checks
/// `∂_I Ψ(g² x_J) = Ψ(g √(x_I x_J))²` for a `g ∈ A_b` with non-square
/// coefficients at each `0 ≠ b ≤ a/2`.
pub fn verify_differential_formula(bc: &BalancedComplex, with_general: bool) -> Result<CheckReport> {
    let mut report = CheckReport::new("differential formula in characteristic 2", &describe(bc));
    let pm = is_pseudomanifold(&bc.complex);
    report.hypothesis("pseudomanifold", pm.clone());
    if !pm.holds {
        report.push(
            CheckRecord::new("differential-formula", vec![bc.a.clone()], vec![], CheckVerdict::HypothesisUnmet)
                .with_witness("Ψ needs a pseudomanifold"),
        );
        return Ok(report.finish(None));
    }
    let s = Setup::new(bc)?;
    let f = &s.field;
    let pools: Vec<Vec<usize>> = (0..bc.m()).map(|j| bc.coloring.class(j)).collect();
    let seqs = transversal_sequences(bc, &s.row_colors);

    let start = Instant::now();
    let js = monomials_in(&pools, &bc.a);
    let mut checked = 0;
    let mut bad = Vec::new();
    for i_seq in &seqs {
        let x_i = seq_monomial(i_seq);
        for x_j in &js {
            let lhs = s.differentiate(s.lee.eval(x_j)?, i_seq);
            let rhs = match x_i.mul(x_j).sqrt() {
                Some(r) => sq(f, s.lee.eval(&r)?),
                None => f.zero(),
            };
            f.check_budget()?;
            checked += 1;
            if !f.equal(&lhs, &rhs) {
                let what = format!("I = {}, J = {}", x_i.display(&bc.complex), x_j.display(&bc.complex));
                bad.push(mismatch(f, what, &lhs, &rhs));
            }
        }
    }
    report.push(identity_record("differential-formula", vec![bc.a.clone()], checked, bad).with_timing(start.elapsed()));

    if with_general {
        let art = Artinian::new(bc, &symbolic_configuration(bc)?)?;
        let nv = f.num_vars();
        for b in bc.a.box_iter().filter(|b| !b.is_zero() && b.half_le(&bc.a)) {
            let start = Instant::now();
            let piece = art.piece(&b)?;
            if piece.dim() == 0 {
                continue;
            }
            // g = Σ (1 + p_i) m_i
            let mut g = SparsePoly::zero();
            for (i, m) in piece.basis().iter().enumerate() {
                g.add_term(f, m.clone(), f.add(&f.one(), &f.var(i % nv)));
            }
            let g2 = g.mul(f, &g);
            let rest = bc.a.checked_sub(&b.scale(2)).expect("2b ≤ a");
            let mut checked = 0;
            let mut bad = Vec::new();
            for i_seq in &seqs {
                let x_i = seq_monomial(i_seq);
                for x_j in monomials_in(&pools, &rest) {
                    let lhs = s.differentiate(s.lee.eval_poly(&g2.mul_monomial(&x_j))?, i_seq);
                    let rhs = match x_i.mul(&x_j).sqrt() {
                        Some(r) => sq(f, s.lee.eval_poly(&g.mul_monomial(&r))?),
                        None => f.zero(),
                    };
                    f.check_budget()?;
                    checked += 1;
                    if !f.equal(&lhs, &rhs) {
                        let what = format!("b = {b}, I = {}, J = {}", x_i.display(&bc.complex), x_j.display(&bc.complex));
                        bad.push(mismatch(f, what, &lhs, &rhs));
                    }
                }
            }
            report.push(identity_record("differential-formula-general", vec![b.clone(), rest], checked, bad).with_timing(start.elapsed()));
        }
    }
    Ok(report.finish(None))
}

fn identity_record(statement: &str, degrees: Vec<MultiDeg>, checked: usize, bad: Vec<String>) -> CheckRecord {
    let n = bad.len();
    let mut r = if bad.is_empty() {
        CheckRecord::new(statement, degrees, vec![checked], CheckVerdict::Certified)
            .with_provenance(format!("{checked} identities of rational functions checked exactly"))
    } else {
        let first = bad.into_iter().next().unwrap_or_default();
        CheckRecord::new(statement, degrees, vec![checked], CheckVerdict::Refuted)
            .with_witness(format!("{n} of {checked} identities fail; first: {first}"))
    };
    r.values = vec![checked as i64, n as i64];
    r
}
