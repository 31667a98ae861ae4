use super::bareiss;
use super::mpoly::MPoly;

fn augment(adj: &[Vec<usize>], r: usize, seen: &mut [bool], match_col: &mut [Option<usize>]) -> bool {
    for &c in &adj[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if match_col[c].is_none() || augment(adj, match_col[c].unwrap(), seen, match_col) {
            match_col[c] = Some(r);
            return true;
        }
    }
    false
}

fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct St<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }
    fn visit(s: &mut St, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on[v] = true;
        for &w in s.adj[v].iter() {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().unwrap();
                s.on[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }
    let n = adj.len();
    let mut s = St { adj, index: vec![None; n], low: vec![0; n], on: vec![false; n], stack: Vec::new(), next: 0, out: Vec::new() };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

/// Determinant as a product of factors, using the block-triangular form of
/// the sparsity pattern. Monomial factors are split into variables and unit
/// factors dropped. Returns `None` when the determinant is zero.
pub fn factored_det(a: &[Vec<MPoly>]) -> Option<Vec<MPoly>> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    let adj: Vec<Vec<usize>> = a.iter().map(|r| (0..n).filter(|&j| !r[j].is_zero()).collect()).collect();
    let mut match_col = vec![None; n];
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(&adj, r, &mut seen, &mut match_col) {
            return None;
        }
    }
    let mut col_of_row = vec![0; n];
    for (c, r) in match_col.iter().enumerate() {
        col_of_row[r.unwrap()] = c;
    }
    // row i → row i' whenever row i meets the column matched to i'
    let row_of_col: Vec<usize> = match_col.iter().map(|r| r.unwrap()).collect();
    let graph: Vec<Vec<usize>> = adj.iter().map(|cols| cols.iter().map(|&c| row_of_col[c]).collect()).collect();
    let mut factors = Vec::new();
    for block in tarjan(&graph) {
        let sub: Vec<Vec<MPoly>> =
            block.iter().map(|&i| block.iter().map(|&k| a[i][col_of_row[k]].clone()).collect()).collect();
        let d = if sub.len() == 1 { sub[0][0].clone() } else { bareiss::det(sub) };
        if d.is_zero() {
            return None;
        }
        if d.is_one() {
            continue;
        }
        if d.is_monomial() {
            let m = d.terms()[0];
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    factors.push(MPoly::var(i));
                }
            }
        } else {
            factors.push(d);
        }
    }
    factors.sort();
    Some(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: usize) -> MPoly {
        MPoly::var(i)
    }

    #[test]
    fn block_structure_is_found() {
        let z = MPoly::zero;
        // [[a,b,0],[c,d,0],[e,f,g]] = (ad+bc)·g
        let m = vec![vec![v(0), v(1), z()], vec![v(2), v(3), z()], vec![v(4), v(5), v(6)]];
        let f = factored_det(&m).unwrap();
        assert_eq!(f.len(), 2);
        let prod = f.iter().fold(MPoly::one(), |acc, p| acc.mul(p));
        assert_eq!(prod, bareiss::det(m));
    }

    #[test]
    fn permutation_and_singular() {
        let z = MPoly::zero;
        let m = vec![vec![z(), v(0), z()], vec![z(), z(), v(1)], vec![v(2), z(), z()]];
        let mut expect = vec![v(0), v(1), v(2)];
        expect.sort();
        assert_eq!(factored_det(&m).unwrap(), expect);
        let s = vec![vec![v(0), z()], vec![v(1), z()]];
        assert!(factored_det(&s).is_none());
        let cancel = vec![vec![v(0), v(0)], vec![v(1), v(1)]];
        assert!(factored_det(&cancel).is_none());
    }
}
