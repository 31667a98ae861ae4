use super::mpoly::MPoly;

/// Fraction-free determinant over GF(2)[p].
pub fn det(mut a: Vec<Vec<MPoly>>) -> MPoly {
    let n = a.len();
    if n == 0 {
        return MPoly::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let mut prev = MPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return MPoly::zero();
        };
        a.swap(k, p);
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[k][k].mul(&a[i][j]).add(&a[i][k].mul(&a[k][j]));
                a[i][j] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MPoly::zero();
        }
        prev = a[k][k].clone();
    }
    prev
}

/// Incremental fraction-free elimination over columns.
///
/// Columns are fed one at a time; each is brought up to date by replaying
/// the stored elimination steps, so columns that are never requested are
/// never built. Every stored entry is a minor of the input, which is why the
/// divisions are exact.
#[derive(Debug, Clone)]
pub struct ColumnBareiss {
    rows: usize,
    pivot_rows: Vec<usize>,
    used: Vec<bool>,
    pivots: Vec<MPoly>,
    steps: Vec<Vec<MPoly>>,
}

impl ColumnBareiss {
    pub fn new(rows: usize) -> Self {
        ColumnBareiss { rows, pivot_rows: Vec::new(), used: vec![false; rows], pivots: Vec::new(), steps: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.rows
    }

    /// Adds a column; returns true when it raised the rank.
    pub fn push(&mut self, mut col: Vec<MPoly>) -> bool {
        assert_eq!(col.len(), self.rows);
        let mut prev = MPoly::one();
        for (k, step) in self.steps.iter().enumerate() {
            let pr = self.pivot_rows[k];
            let pk = &self.pivots[k];
            let xr = col[pr].clone();
            for i in 0..self.rows {
                if self.pivot_rows[..=k].contains(&i) {
                    continue;
                }
                let t = pk.mul(&col[i]).add(&step[i].mul(&xr));
                col[i] = t.exact_div(&prev).expect("Bareiss division is exact");
            }
            prev = pk.clone();
        }
        let Some(r) = (0..self.rows).find(|&i| !self.used[i] && !col[i].is_zero()) else {
            return false;
        };
        self.used[r] = true;
        self.pivot_rows.push(r);
        self.pivots.push(col[r].clone());
        self.steps.push(col);
        true
    }
}

/// Rank of a `rows × cols` matrix whose columns are produced on demand.
pub fn row_rank(rows: usize, cols: usize, mut column: impl FnMut(usize) -> Vec<MPoly>) -> usize {
    let mut e = ColumnBareiss::new(rows);
    for j in 0..cols {
        if e.is_full() {
            break;
        }
        e.push(column(j));
    }
    e.rank()
}
