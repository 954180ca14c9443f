//! Enumeration of factorizations `A = R·S` over ℤ₊ with bounded entries.

use std::ops::ControlFlow;

use super::small::{dims, Small};

/// Settings for one enumeration.
#[derive(Clone, Copy, Debug)]
pub struct FactorLimits {
    pub inner: usize,
    pub max_entry: u64,
    /// Only factorizations with no zero column in `R` and no zero row in `S`. This lets
    /// row sums of `R` be bounded by row sums of `A`.
    pub essential: bool,
}

/// Calls `visit(R, S)` for every `A = R·S` with `R` of width `limits.inner`.
///
/// Columns of `R` are generated in nondecreasing lexicographic order, so each factorization is
/// seen once up to a simultaneous permutation of `R`'s columns and `S`'s rows.
pub fn for_each_factorization(
    a: &Small,
    limits: FactorLimits,
    visit: &mut dyn FnMut(&Small, &Small) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let (rows, _) = dims(a);
    let r = limits.inner;
    if r == 0 {
        return ControlFlow::Continue(());
    }
    let row_cap: Vec<u64> = a
        .iter()
        .map(|row| if limits.essential { row.iter().sum::<u64>() } else { u64::MAX })
        .collect();
    let mut rmat = vec![vec![0u64; r]; rows];
    let mut row_sum = vec![0u64; rows];
    fill_r(a, limits, &row_cap, &mut rmat, &mut row_sum, 0, visit)
}

// Fills R column-major; `pos` = column * rows + row.
fn fill_r(
    a: &Small,
    limits: FactorLimits,
    row_cap: &[u64],
    rmat: &mut Small,
    row_sum: &mut [u64],
    pos: usize,
    visit: &mut dyn FnMut(&Small, &Small) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let rows = rmat.len();
    let r = limits.inner;
    if pos == rows * r {
        return solve_s(a, rmat, limits, visit);
    }
    let (col, row) = (pos / rows.max(1), pos % rows.max(1));
    if rows == 0 {
        return solve_s(a, rmat, limits, visit);
    }
    for v in 0..=limits.max_entry {
        if row_sum[row] + v > row_cap[row] {
            break;
        }
        rmat[row][col] = v;
        if row + 1 == rows {
            // column complete: lexicographic order and nonzero checks
            if col > 0 && (0..rows).map(|i| rmat[i][col]).lt((0..rows).map(|i| rmat[i][col - 1])) {
                continue;
            }
            if limits.essential && (0..rows).all(|i| rmat[i][col] == 0) {
                continue;
            }
        } else if col > 0 {
            // prefix of this column must not already be below the previous column
            let cur = (0..=row).map(|i| rmat[i][col]);
            let prev = (0..=row).map(|i| rmat[i][col - 1]);
            if cur.lt(prev) {
                continue;
            }
        }
        row_sum[row] += v;
        let flow = fill_r(a, limits, row_cap, rmat, row_sum, pos + 1, visit);
        row_sum[row] -= v;
        flow?;
    }
    rmat[row][col] = 0;
    ControlFlow::Continue(())
}

fn solve_s(
    a: &Small,
    rmat: &Small,
    limits: FactorLimits,
    visit: &mut dyn FnMut(&Small, &Small) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let (rows, cols) = dims(a);
    let r = limits.inner;
    let mut per_column: Vec<Vec<Vec<u64>>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let target: Vec<u64> = (0..rows).map(|i| a[i][j]).collect();
        let mut sols = Vec::new();
        let mut s = vec![0u64; r];
        let mut residual = target.clone();
        column_solutions(rmat, &mut residual, &mut s, 0, limits.max_entry, &mut sols);
        if sols.is_empty() {
            return ControlFlow::Continue(());
        }
        per_column.push(sols);
    }
    let mut smat = vec![vec![0u64; cols]; r];
    combine(&per_column, 0, &mut smat, rmat, limits, visit)
}

fn column_solutions(rmat: &Small, residual: &mut [u64], s: &mut [u64], k: usize, max_entry: u64, out: &mut Vec<Vec<u64>>) {
    let r = s.len();
    if k == r {
        if residual.iter().all(|&x| x == 0) {
            out.push(s.to_vec());
        }
        return;
    }
    let mut cap = max_entry;
    for (i, row) in rmat.iter().enumerate() {
        if row[k] > 0 {
            cap = cap.min(residual[i] / row[k]);
        }
    }
    for v in 0..=cap {
        for (i, row) in rmat.iter().enumerate() {
            residual[i] -= row[k] * v;
        }
        s[k] = v;
        column_solutions(rmat, residual, s, k + 1, max_entry, out);
        for (i, row) in rmat.iter().enumerate() {
            residual[i] += row[k] * v;
        }
    }
    s[k] = 0;
}

fn combine(
    per_column: &[Vec<Vec<u64>>],
    j: usize,
    smat: &mut Small,
    rmat: &Small,
    limits: FactorLimits,
    visit: &mut dyn FnMut(&Small, &Small) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if j == per_column.len() {
        if limits.essential && smat.iter().any(|row| row.iter().all(|&x| x == 0)) {
            return ControlFlow::Continue(());
        }
        return visit(rmat, smat);
    }
    for sol in &per_column[j] {
        for (k, &v) in sol.iter().enumerate() {
            smat[k][j] = v;
        }
        combine(per_column, j + 1, smat, rmat, limits, visit)?;
    }
    ControlFlow::Continue(())
}

/// Collects every factorization (convenient for tests and small inputs).
pub fn factorizations(a: &Small, limits: FactorLimits) -> Vec<(Small, Small)> {
    let mut out = Vec::new();
    let _ = for_each_factorization(a, limits, &mut |r, s| {
        out.push((r.clone(), s.clone()));
        ControlFlow::Continue(())
    });
    out
}
