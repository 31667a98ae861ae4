use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ends::check_graded_ends;
use super::instance::{for_each_instance, random_elements, Instance, PerInstance, EXACT, ONE_SIDED, SCHWARTZ_ZIPPEL};
use super::report::{CheckRecord, CheckReport, CheckVerdict, ElementChoice, LefschetzConfig};
use super::slp::{describe, gf2};
use crate::complex::construct::{partial_barycentric_subdivision, stacked_sphere};
use crate::complex::{h_vector, BalancedComplex, MultiDeg};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::is_homology_sphere;
use crate::verdict::Verdict;

struct Middle {
    i: usize,
    trials: usize,
    base: u64,
}

impl Middle {
    /// The claim is degeneracy, so the certificate sides are swapped: full
    /// rank refutes it and a deficiency only supports it.
    fn degenerate<F: Field>(&self, inst: &Instance<F>, statement: &str, rank: usize, dims: [usize; 2]) -> CheckRecord {
        let deg = vec![MultiDeg(vec![self.i as u32]), MultiDeg(vec![self.i as u32 + 1])];
        let rec = if rank < dims[1] {
            let (v, p) = if inst.exact {
                (CheckVerdict::Certified, EXACT.to_string())
            } else {
                (CheckVerdict::ProbabilisticPass, format!("rank {rank} < {} at this substitution; {ONE_SIDED}", dims[1]))
            };
            CheckRecord::new(statement, deg, dims.to_vec(), v).with_provenance(p)
        } else {
            let p = if inst.exact { EXACT } else { SCHWARTZ_ZIPPEL };
            CheckRecord::new(statement, deg, dims.to_vec(), CheckVerdict::Refuted)
                .with_witness(format!("×ℓ has full rank {rank} ({p})"))
        };
        rec.with_rank(rank).with_seed(inst.seed)
    }
}

impl PerInstance for Middle {
    fn run<F: Field>(&self, inst: &Instance<F>) -> Result<Vec<CheckRecord>> {
        let f = inst.field();
        let i = self.i;
        let coarse = inst.art.coarse_hilbert()?;
        let dims = [coarse[i], coarse[i + 1]];
        let deg = vec![MultiDeg(vec![i as u32]), MultiDeg(vec![i as u32 + 1])];
        let mut out = Vec::new();
        let eq = if dims[0] == dims[1] {
            CheckRecord::new("dims-equal", deg.clone(), dims.to_vec(), CheckVerdict::Certified).with_provenance("Hilbert function computed exactly")
        } else {
            CheckRecord::new("dims-equal", deg.clone(), dims.to_vec(), CheckVerdict::Refuted)
                .with_witness(format!("dim A_{i} = {} but dim A_{} = {}", dims[0], i + 1, dims[1]))
        };
        out.push(eq.with_seed(inst.seed));

        let start = Instant::now();
        let (_, _, m) = inst.coarse_map(i, &inst.ell)?;
        let r = f.matrix_rank(&m);
        out.push(self.degenerate(inst, "degenerate-canonical", r, dims).with_timing(start.elapsed()));

        let start = Instant::now();
        let mut ranks = Vec::with_capacity(self.trials);
        for t in 0..self.trials as u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.base ^ inst.seed.unwrap_or(0).rotate_left(29) ^ t.rotate_left(47));
            let ell = random_elements(&inst.bc, f, &mut rng);
            let (_, _, m) = inst.coarse_map(i, &ell)?;
            ranks.push(f.matrix_rank(&m));
        }
        let max = ranks.iter().copied().max().unwrap_or(0);
        let mut rec = self.degenerate(inst, "degenerate-random", max, dims);
        rec.values = ranks.iter().map(|&x| x as i64).collect();
        out.push(rec.with_timing(start.elapsed()));
        Ok(out)
    }
}

/// Builds the `i`-th partial barycentric subdivision of a stacked
/// `(d−1)`-sphere on `n` vertices with its two-coloring, `a = (d−i, i)`, and
/// checks that `×ℓ : A_i → A_{i+1}` is degenerate although both sides have
/// equal dimension, while the ends stay full rank.
pub fn reproduce_counterexample(i: usize, d: usize, n: usize, cfg: &LefschetzConfig) -> Result<CheckReport> {
    if i == 0 || 2 * i >= d {
        return Err(Error::Input(format!("need 0 < i < d/2, got i = {i}, d = {d}")));
    }
    if n < d + 1 {
        return Err(Error::Input(format!("need n ≥ d + 1, got n = {n}, d = {d}")));
    }
    cfg.validate()?;
    let base = stacked_sphere(d, n, None)?;
    let (_, bc) = partial_barycentric_subdivision(&base, i)?;
    let mut report = CheckReport::new(
        "degenerate middle map of a partial barycentric subdivision",
        &format!("sd^{i} of a stacked {}-sphere on {n} vertices: {}", d - 1, describe(&bc)),
    );
    let (hb, _) = h_vector(&base);
    report.hypothesis("subdivision is a homology sphere over GF(2)", is_homology_sphere(&bc.complex, &gf2()));
    let stacked = hb[i] == hb[i + 1];
    report.hypothesis(&format!("base sphere has h_{i} = h_{}", i + 1), Verdict::from_bool(stacked, || format!("h = {hb:?}")));
    let mut rec = CheckRecord::new(
        "base-i-stacked",
        vec![MultiDeg(vec![i as u32]), MultiDeg(vec![i as u32 + 1])],
        vec![],
        if stacked { CheckVerdict::Certified } else { CheckVerdict::HypothesisUnmet },
    );
    rec.values = vec![hb[i], hb[i + 1]];
    rec.holds = Some(stacked);
    report.push(rec.with_provenance(format!("h(base) = {hb:?}")));

    // the positivity of the triangle table used to produce the extra kernel
    let skel = base.skeleton((d - i - 1) as isize);
    let (hs, _) = h_vector(&skel);
    let gap = hs[i + 1] - hs[i];
    let mut rec = CheckRecord::new(
        "triangle-table-positivity",
        vec![MultiDeg(vec![i as u32]), MultiDeg(vec![i as u32 + 1])],
        vec![],
        if gap > 0 { CheckVerdict::Certified } else { CheckVerdict::Refuted },
    );
    rec.values = vec![hs[i], hs[i + 1]];
    rec.holds = Some(gap > 0);
    let rec = if gap > 0 {
        rec.with_provenance(format!("h of the {}-skeleton = {hs:?}", d - i - 1))
    } else {
        rec.with_witness(format!("h_{} − h_{i} = {gap} for the {}-skeleton, h = {hs:?}", i + 1, d - i - 1))
    };
    report.push(rec);

    let base_seed = match cfg.element {
        ElementChoice::Random { seed } => seed,
        ElementChoice::Canonical => 0,
    };
    let canonical = LefschetzConfig { element: ElementChoice::Canonical, ..cfg.clone() };
    report.extend(for_each_instance(&bc, &canonical, &Middle { i, trials: cfg.trials, base: base_seed })?);
    report.absorb(check_graded_ends(&bc, &canonical)?);
    report.demote_unmet();
    let mut report = report.finish(None);
    let middle_ok = report
        .checks
        .iter()
        .filter(|r| r.statement.starts_with("degenerate-") || r.statement == "dims-equal")
        .all(|r| r.verdict.is_pass());
    let message = middle_ok.then(|| {
        let max = report.checks.iter().filter(|r| r.statement.starts_with("degenerate-")).filter_map(|r| r.rank).max().unwrap_or(0);
        let dim = report.checks.iter().find(|r| r.statement == "dims-equal").map_or(0, |r| r.dims[0]);
        format!("degenerate middle confirmed: dim A_{i} = dim A_{} = {dim}, every tested ℓ has rank ≤ {max}", i + 1)
    });
    report.summary.message = message;
    Ok(report)
}

/// The two-colored complex examined by [`reproduce_counterexample`].
pub fn counterexample_complex(i: usize, d: usize, n: usize) -> Result<BalancedComplex> {
    let base = stacked_sphere(d, n, None)?;
    Ok(partial_barycentric_subdivision(&base, i)?.1)
}
