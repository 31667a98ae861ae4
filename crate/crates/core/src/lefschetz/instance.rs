use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::report::{CheckRecord, CheckVerdict, ElementChoice, LefschetzConfig};
use crate::artinian::{substituted_configuration, symbolic_configuration, Artinian, GradedPiece, LsopSpec, SparsePoly};
use crate::complex::{BalancedComplex, MultiDeg};
use crate::error::Result;
use crate::field::{Field, FieldDescriptor, Gf2k, Gfp, Rationals};
use crate::linalg::{self, Matrix};

pub(crate) const EXACT: &str = "exact symbolic rank";
pub(crate) const SCHWARTZ_ZIPPEL: &str = "full rank at a random substitution certifies generic full rank";
pub(crate) const ONE_SIDED: &str = "deficiency observed at one substitution; generic deficiency is only probable";

/// What a multiplication map is expected to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Want {
    Injective,
    Surjective,
    Bijective,
}

/// One Artinian reduction together with its Lefschetz elements.
pub(crate) struct Instance<F: Field> {
    pub bc: BalancedComplex,
    pub art: Artinian<F>,
    pub ell: Vec<SparsePoly<F>>,
    pub seed: Option<u64>,
    pub exact: bool,
}

/// Random elements `ℓ_j = Σ_{κ(v)=j} c_v x_v`.
pub(crate) fn random_elements<F: Field>(bc: &BalancedComplex, f: &F, rng: &mut ChaCha8Rng) -> Vec<SparsePoly<F>> {
    (0..bc.m())
        .map(|j| {
            let coeffs: Vec<(usize, F::Elem)> = bc.coloring.class(j).into_iter().map(|v| (v, f.random(rng))).collect();
            SparsePoly::linear(f, &coeffs)
        })
        .collect()
}

impl<F: Field> Instance<F> {
    pub fn new(bc: &BalancedComplex, lsop: &LsopSpec<F>, choice: ElementChoice, seed: Option<u64>, exact: bool) -> Result<Self> {
        let art = Artinian::new(bc, lsop)?;
        let ell = match choice {
            ElementChoice::Canonical => art.canonical_elements(),
            ElementChoice::Random { seed: s } => {
                let mut rng = ChaCha8Rng::seed_from_u64(s ^ seed.unwrap_or(0).rotate_left(29));
                random_elements(bc, &lsop.field, &mut rng)
            }
        };
        Ok(Instance { bc: bc.clone(), art, ell, seed, exact })
    }

    pub fn field(&self) -> &F {
        self.art.field()
    }

    /// `×ℓ^e : A_b → A_{b+e}` with its source and target pieces.
    pub fn power_map(&self, b: &MultiDeg, e: &MultiDeg) -> Result<(Arc<GradedPiece<F>>, Arc<GradedPiece<F>>, Matrix<F>)> {
        let src = self.art.piece(b)?;
        let dst = self.art.piece(&b.add(e))?;
        let img = self.art.power_image(&self.ell, e);
        let m = self.art.mult_map_image(&src, &dst, &img)?;
        Ok((src, dst, m))
    }

    /// `×(Σ_j ℓ_j) : A_i → A_{i+1}` in the coarse grading, block by block.
    pub fn coarse_map(&self, i: usize, ell: &[SparsePoly<F>]) -> Result<(usize, usize, Matrix<F>)> {
        let f = self.field();
        let a = &self.bc.a;
        let src: Vec<MultiDeg> = a.box_iter().filter(|b| b.total() as usize == i).collect();
        let dst: Vec<MultiDeg> = a.box_iter().filter(|b| b.total() as usize == i + 1).collect();
        let src_pieces = src.iter().map(|b| self.art.piece(b)).collect::<Result<Vec<_>>>()?;
        let dst_pieces = dst.iter().map(|b| self.art.piece(b)).collect::<Result<Vec<_>>>()?;
        let rows: usize = dst_pieces.iter().map(|p| p.dim()).sum();
        let cols: usize = src_pieces.iter().map(|p| p.dim()).sum();
        let images: Vec<SparsePoly<F>> = ell.iter().map(|l| self.art.image(l)).collect();
        let mut m = Matrix::zeros(f, rows, cols);
        let mut col0 = 0;
        for (b, sp) in src.iter().zip(&src_pieces) {
            let mut row0 = 0;
            for (c, dp) in dst.iter().zip(&dst_pieces) {
                if let Some(j) = (0..a.len()).find(|&j| b.add(&MultiDeg::unit(a.len(), j)) == *c) {
                    let block = self.art.mult_map_image(sp, dp, &images[j])?;
                    for r in 0..block.rows() {
                        for s in 0..block.cols() {
                            m.set(row0 + r, col0 + s, block.get(r, s).clone());
                        }
                    }
                }
                row0 += dp.dim();
            }
            col0 += sp.dim();
        }
        Ok((cols, rows, m))
    }

    /// Verdict for a map that should be injective, surjective or both.
    pub fn judge(&self, statement: &str, degrees: Vec<MultiDeg>, src: &GradedPiece<F>, m: &Matrix<F>, want: Want) -> CheckRecord {
        let (ds, dt) = (m.cols(), m.rows());
        let r = self.field().matrix_rank(m);
        let mut problems = Vec::new();
        if matches!(want, Want::Bijective) && ds != dt {
            problems.push(format!("dimensions differ ({ds} vs {dt})"));
        }
        if matches!(want, Want::Injective | Want::Bijective) && r < ds {
            let k = linalg::kernel(self.field(), m);
            let w = k.first().map(|v| src.element(self.field(), v).display(self.field(), &self.bc.complex)).unwrap_or_default();
            problems.push(format!("rank {r} < dim source {ds}; kernel vector {w}"));
        }
        if matches!(want, Want::Surjective | Want::Bijective) && r < dt {
            problems.push(format!("rank {r} < dim target {dt}"));
        }
        self.record(statement, degrees, vec![ds, dt], r, problems)
    }

    /// Same as [`Instance::judge`] for matrices without a single source
    /// piece.
    pub fn judge_plain(&self, statement: &str, degrees: Vec<MultiDeg>, m: &Matrix<F>, want: Want) -> CheckRecord {
        let (ds, dt) = (m.cols(), m.rows());
        let r = self.field().matrix_rank(m);
        let mut problems = Vec::new();
        if matches!(want, Want::Bijective) && ds != dt {
            problems.push(format!("dimensions differ ({ds} vs {dt})"));
        }
        if matches!(want, Want::Injective | Want::Bijective) && r < ds {
            problems.push(format!("rank {r} < dim source {ds}"));
        }
        if matches!(want, Want::Surjective | Want::Bijective) && r < dt {
            problems.push(format!("rank {r} < dim target {dt}"));
        }
        self.record(statement, degrees, vec![ds, dt], r, problems)
    }

    fn record(&self, statement: &str, degrees: Vec<MultiDeg>, dims: Vec<usize>, r: usize, problems: Vec<String>) -> CheckRecord {
        let rec = if problems.is_empty() {
            CheckRecord::new(statement, degrees, dims, CheckVerdict::Certified).with_provenance(if self.exact { EXACT } else { SCHWARTZ_ZIPPEL })
        } else {
            let mut w = problems.join("; ");
            if !self.exact {
                w = format!("{w} ({ONE_SIDED})");
            }
            CheckRecord::new(statement, degrees, dims, CheckVerdict::Refuted).with_witness(w)
        };
        rec.with_rank(r).with_seed(self.seed)
    }
}

/// Work done once per Artinian reduction.
pub(crate) trait PerInstance: Sync {
    fn run<F: Field>(&self, inst: &Instance<F>) -> Result<Vec<CheckRecord>>;
}

/// Runs `check` on the symbolic reduction, or on one substituted reduction
/// per seed.
pub(crate) fn for_each_instance<T: PerInstance>(bc: &BalancedComplex, cfg: &LefschetzConfig, check: &T) -> Result<Vec<CheckRecord>> {
    cfg.validate()?;
    if cfg.is_symbolic() {
        let lsop = symbolic_configuration(bc)?;
        let start = Instant::now();
        let inst = Instance::new(bc, &lsop, ElementChoice::Canonical, None, true)?;
        let out = check.run(&inst)?;
        return Ok(spread_time(out, start));
    }
    match cfg.field {
        FieldDescriptor::Gf2k { k } => over(bc, Gf2k::new(k)?, cfg, check),
        FieldDescriptor::Gfp { p } => over(bc, Gfp::new(p)?, cfg, check),
        FieldDescriptor::Rational => over(bc, Rationals, cfg, check),
        FieldDescriptor::Symbolic => unreachable!("handled above"),
    }
}

fn over<F: Field, T: PerInstance>(bc: &BalancedComplex, field: F, cfg: &LefschetzConfig, check: &T) -> Result<Vec<CheckRecord>> {
    let per: Vec<Result<Vec<CheckRecord>>> = cfg
        .seeds
        .par_iter()
        .map(|&s| {
            let start = Instant::now();
            let lsop = substituted_configuration(bc, field.clone(), s)?;
            let inst = Instance::new(bc, &lsop, cfg.element, Some(s), false)?;
            Ok(spread_time(check.run(&inst)?, start))
        })
        .collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

/// Splits the wall time of a batch evenly over its records.
fn spread_time(mut records: Vec<CheckRecord>, start: Instant) -> Vec<CheckRecord> {
    let n = records.len().max(1) as u32;
    let each = start.elapsed() / n;
    for r in &mut records {
        r.timing = each;
    }
    records
}
