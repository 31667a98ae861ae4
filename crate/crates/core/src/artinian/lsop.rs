use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::complex::BalancedComplex;
use crate::error::{Error, Result};
use crate::field::{Field, FieldDescriptor};
use crate::linalg::Matrix;
use crate::poly::RatFuncField;
use crate::verdict::Verdict;

/// Redraws allowed before a substituted configuration gives up.
pub const MAX_LSOP_RETRIES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum LsopMode {
    Symbolic,
    Substituted { field: FieldDescriptor, seed: u64 },
}

/// A block-sparse linear system of parameters `Θ = P x`.
#[derive(Clone, Debug)]
pub struct LsopSpec<F: Field> {
    pub field: F,
    pub mode: LsopMode,
    /// Row indices `I_j` owned by color `j`.
    pub partition: Vec<Vec<usize>>,
    /// `d × n`.
    pub matrix: Matrix<F>,
}

/// Serialized form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LsopFile {
    pub mode: String,
    pub field: FieldDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub partition: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Vec<String>>>,
}

/// Consecutive row blocks of sizes `a_1, …, a_m`.
pub fn default_partition(bc: &BalancedComplex) -> Vec<Vec<usize>> {
    let mut start = 0;
    bc.a.0
        .iter()
        .map(|&aj| {
            let block: Vec<usize> = (start..start + aj as usize).collect();
            start += aj as usize;
            block
        })
        .collect()
}

impl<F: Field> LsopSpec<F> {
    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    /// Color owning each row.
    pub fn row_colors(&self) -> Vec<usize> {
        let mut out = vec![0; self.d()];
        for (j, rows) in self.partition.iter().enumerate() {
            for &k in rows {
                out[k] = j;
            }
        }
        out
    }

    pub fn entry(&self, k: usize, v: usize) -> &F::Elem {
        self.matrix.get(k, v)
    }

    /// `p(v)`.
    pub fn column(&self, v: usize) -> Vec<F::Elem> {
        self.matrix.column(v)
    }

    /// `P[:, cols]` in the given order.
    pub fn submatrix(&self, cols: &[usize]) -> Matrix<F> {
        self.matrix.select_columns(cols)
    }

    /// Builds a spec from explicit entries, checking block sparsity.
    pub fn from_matrix(bc: &BalancedComplex, field: F, mode: LsopMode, partition: Vec<Vec<usize>>, matrix: Matrix<F>) -> Result<Self> {
        let spec = LsopSpec { field, mode, partition, matrix };
        spec.check_shape(bc)?;
        Ok(spec)
    }

    fn check_shape(&self, bc: &BalancedComplex) -> Result<()> {
        let f = &self.field;
        if self.d() != bc.d() || self.n() != bc.n() {
            return Err(Error::InvalidLsop(format!("matrix is {}×{}, expected {}×{}", self.d(), self.n(), bc.d(), bc.n())));
        }
        if self.partition.len() != bc.m() {
            return Err(Error::InvalidLsop(format!("partition has {} blocks for {} colors", self.partition.len(), bc.m())));
        }
        let mut seen = vec![false; self.d()];
        for (j, rows) in self.partition.iter().enumerate() {
            if rows.len() != bc.a.0[j] as usize {
                return Err(Error::InvalidLsop(format!("block {} has {} rows, a_{} = {}", j + 1, rows.len(), j + 1, bc.a.0[j])));
            }
            for &k in rows {
                if k >= self.d() || seen[k] {
                    return Err(Error::InvalidLsop(format!("row {k} is out of range or repeated in the partition")));
                }
                seen[k] = true;
            }
        }
        let rc = self.row_colors();
        for k in 0..self.d() {
            for v in 0..self.n() {
                if rc[k] != bc.coloring.color(v) && !f.is_zero(self.entry(k, v)) {
                    return Err(Error::InvalidLsop(format!(
                        "entry ({}, {}) is nonzero outside its color block",
                        k + 1,
                        bc.complex.name(v)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_file(&self, with_entries: bool) -> LsopFile {
        let (mode, seed) = match self.mode {
            LsopMode::Symbolic => ("symbolic".to_string(), None),
            LsopMode::Substituted { seed, .. } => ("substituted".to_string(), Some(seed)),
        };
        LsopFile {
            mode,
            field: self.field.descriptor(),
            seed,
            partition: self.partition.clone(),
            entries: with_entries.then(|| self.matrix.to_rows().iter().map(|r| r.iter().map(|x| self.field.format(x)).collect()).collect()),
        }
    }
}

/// Name of the symbolic variable `p_{k,v}` (rows 1-based).
pub fn variable_name(k: usize, vertex: &str) -> String {
    format!("p{},{}", k + 1, vertex)
}

/// The symbolic configuration: one fresh variable per entry allowed by the
/// block pattern, ordered by vertex and then by row.
pub fn symbolic_configuration(bc: &BalancedComplex) -> Result<LsopSpec<RatFuncField>> {
    symbolic_configuration_with(bc, crate::poly::DEFAULT_MAX_VARS, crate::poly::DEFAULT_MAX_TERMS)
}

pub fn symbolic_configuration_with(bc: &BalancedComplex, max_vars: usize, max_terms: usize) -> Result<LsopSpec<RatFuncField>> {
    let partition = default_partition(bc);
    let mut names = Vec::new();
    let mut slots = Vec::new();
    for v in 0..bc.n() {
        for &k in &partition[bc.coloring.color(v)] {
            names.push(variable_name(k, bc.complex.name(v)));
            slots.push((k, v));
        }
    }
    let field = RatFuncField::with_budget(names, max_vars, max_terms)?;
    let mut matrix = Matrix::zeros(&field, bc.d(), bc.n());
    for (i, &(k, v)) in slots.iter().enumerate() {
        matrix.set(k, v, field.var(i));
    }
    Ok(LsopSpec { field, mode: LsopMode::Symbolic, partition, matrix })
}

/// Draws every admissible entry uniformly from `field`, redrawing until the
/// configuration is valid.
pub fn substituted_configuration<F: Field>(bc: &BalancedComplex, field: F, seed: u64) -> Result<LsopSpec<F>> {
    let partition = default_partition(bc);
    let mode = LsopMode::Substituted { field: field.descriptor(), seed };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_LSOP_RETRIES {
        let mut matrix = Matrix::zeros(&field, bc.d(), bc.n());
        for v in 0..bc.n() {
            for &k in &partition[bc.coloring.color(v)] {
                matrix.set(k, v, field.random(&mut rng));
            }
        }
        let spec = LsopSpec { field: field.clone(), mode, partition: partition.clone(), matrix };
        if validate_lsop(bc, &spec).holds {
            return Ok(spec);
        }
    }
    Err(Error::FieldTooSmall(format!(
        "no valid configuration over {} after {MAX_LSOP_RETRIES} draws",
        field.descriptor()
    )))
}

/// Rebuilds a spec from its serialized form. Without explicit entries the
/// seed regenerates them.
pub fn lsop_from_file<F: Field>(bc: &BalancedComplex, field: F, file: &LsopFile) -> Result<LsopSpec<F>> {
    if file.field != field.descriptor() {
        return Err(Error::Input(format!("l.s.o.p. file is over {}, expected {}", file.field, field.descriptor())));
    }
    match &file.entries {
        None => {
            let seed = file.seed.ok_or_else(|| Error::Input("l.s.o.p. file needs a seed or explicit entries".into()))?;
            if file.partition != default_partition(bc) {
                return Err(Error::Input("a seeded l.s.o.p. must use the default partition".into()));
            }
            substituted_configuration(bc, field, seed)
        }
        Some(rows) => {
            let parsed = rows
                .iter()
                .map(|r| r.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let matrix = Matrix::from_rows_with_cols(bc.n(), parsed)?;
            let mode = LsopMode::Substituted { field: field.descriptor(), seed: file.seed.unwrap_or(0) };
            let spec = LsopSpec::from_matrix(bc, field, mode, file.partition.clone(), matrix)?;
            let v = validate_lsop(bc, &spec);
            if !v.holds {
                return Err(Error::InvalidLsop(v.witness.unwrap_or_default()));
            }
            Ok(spec)
        }
    }
}

/// Kind–Kleinschmidt: every facet's columns are linearly independent.
pub fn validate_lsop<F: Field>(bc: &BalancedComplex, spec: &LsopSpec<F>) -> Verdict {
    for facet in bc.complex.facets() {
        let r = spec.field.matrix_rank(&spec.submatrix(facet));
        if r < facet.len() {
            return Verdict::no(format!(
                "columns of facet {{{}}} have rank {r} < {}",
                bc.complex.face_names(facet).join(","),
                facet.len()
            ));
        }
    }
    Verdict::yes()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::construct;
    use crate::field::{Gf2k, Gfp};

    #[test]
    fn symbolic_variable_counts() {
        let oct = construct::cross_polytope(3);
        assert_eq!(symbolic_configuration(&oct).unwrap().field.num_vars(), 6);
        let pent = BalancedComplex::monochromatic(construct::cycle(5));
        let s = symbolic_configuration(&pent).unwrap();
        assert_eq!(s.field.num_vars(), 10);
        assert!(validate_lsop(&pent, &s).holds);
        let mono = BalancedComplex::monochromatic(oct.complex.clone());
        let s = symbolic_configuration(&mono).unwrap();
        assert_eq!(s.field.num_vars(), 18);
        assert!((0..3).all(|k| (0..6).all(|v| !s.field.is_zero(s.entry(k, v)))));
    }

    #[test]
    fn validity() {
        let oct = construct::cross_polytope(3);
        let f = Gf2k::new(32).unwrap();
        let good = substituted_configuration(&oct, f.clone(), 7).unwrap();
        assert!(validate_lsop(&oct, &good).holds);
        let mono = BalancedComplex::monochromatic(oct.complex.clone());
        let mut m = Matrix::zeros(&f, 3, 6);
        for v in 0..6 {
            for k in 0..3 {
                m.set(k, v, 5);
            }
        }
        let flat = LsopSpec::from_matrix(&mono, f.clone(), LsopMode::Substituted { field: f.descriptor(), seed: 0 }, vec![vec![0, 1, 2]], m).unwrap();
        assert!(!validate_lsop(&mono, &flat).holds);
    }

    #[test]
    fn tiny_field_runs_out() {
        let k4 = BalancedComplex::monochromatic(construct::simplex_boundary(3).skeleton(1));
        let r = substituted_configuration(&k4, Gfp::new(2).unwrap(), 1);
        assert!(matches!(r, Err(Error::FieldTooSmall(_))));
    }

    #[test]
    fn file_round_trip() {
        let oct = construct::cross_polytope(3);
        let f = Gfp::default_prime();
        let spec = substituted_configuration(&oct, f.clone(), 3).unwrap();
        for with in [false, true] {
            let file = spec.to_file(with);
            let text = serde_json::to_string(&file).unwrap();
            let back = lsop_from_file(&oct, f.clone(), &serde_json::from_str(&text).unwrap()).unwrap();
            assert!(back.matrix.equal(&f, &spec.matrix));
        }
    }
}
