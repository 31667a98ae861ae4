use std::time::Instant;

use super::instance::{for_each_instance, Instance, PerInstance, Want};
use super::report::{CheckRecord, CheckReport, CheckVerdict, LefschetzConfig};
use super::slp::{describe, gf2};
use crate::complex::{BalancedComplex, MultiDeg};
use crate::error::Result;
use crate::field::Field;
use crate::homology::is_homology_sphere;

/// Largest `i` with `i ≤ min{(d−1)/2, a_1/2, …, a_m/2}`.
pub fn ends_range(a: &MultiDeg) -> Option<usize> {
    let d = a.total() as usize;
    let t2 = a.0.iter().map(|&x| x as usize).min()?.min(d.checked_sub(1)?);
    Some(t2 / 2)
}

pub(crate) struct Ends {
    pub gorenstein: bool,
}

impl PerInstance for Ends {
    fn run<F: Field>(&self, inst: &Instance<F>) -> Result<Vec<CheckRecord>> {
        let d = inst.bc.d();
        let Some(t) = ends_range(&inst.bc.a) else { return Ok(Vec::new()) };
        // the part of ℓ = Σ ℓ_j in color j is ℓ_j
        let parts = &inst.ell;
        let deg = |i: usize| MultiDeg(vec![i as u32]);
        let mut out = Vec::new();
        for k in 0..=t {
            let start = Instant::now();
            let (_, _, inj) = inst.coarse_map(k, parts)?;
            let ri = inst.judge_plain("ends-injective", vec![deg(k), deg(k + 1)], &inj, Want::Injective).with_timing(start.elapsed());
            let i = d - 1 - k;
            let start = Instant::now();
            let (_, _, sur) = inst.coarse_map(i, parts)?;
            let rs = inst.judge_plain("ends-surjective", vec![deg(i), deg(i + 1)], &sur, Want::Surjective).with_timing(start.elapsed());
            if self.gorenstein {
                let (a, b) = (ri.verdict == CheckVerdict::Certified, rs.verdict == CheckVerdict::Certified);
                let dims = vec![ri.dims[0], rs.dims[1]];
                let rec = if a == b {
                    CheckRecord::new("duality-consistency", vec![deg(k), deg(i + 1)], dims, CheckVerdict::Certified)
                        .with_provenance("injectivity at the bottom matches surjectivity at the top")
                } else {
                    CheckRecord::new("duality-consistency", vec![deg(k), deg(i + 1)], dims, CheckVerdict::Refuted)
                        .with_witness(format!("injective at {k}: {a}, surjective at {i}: {b}"))
                };
                out.push(rec.with_seed(inst.seed));
            }
            out.push(ri);
            out.push(rs);
        }
        Ok(out)
    }
}

/// `×ℓ : A_i → A_{i+1}` (coarse grading, `ℓ = Σ_j ℓ_j`) is injective for
/// `i ≤ t` and surjective for `i ≥ d−1−t`, `t = min{(d−1)/2, a_j/2}`.
pub fn check_graded_ends(bc: &BalancedComplex, cfg: &LefschetzConfig) -> Result<CheckReport> {
    let mut report = CheckReport::new("full rank at the ends", &describe(bc));
    let sphere = is_homology_sphere(&bc.complex, &gf2());
    let gorenstein = sphere.holds;
    report.hypothesis("homology sphere over GF(2)", sphere);
    report.extend(for_each_instance(bc, cfg, &Ends { gorenstein })?);
    report.demote_unmet();
    Ok(report.finish(None))
}
