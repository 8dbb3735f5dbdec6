//! Dense tableau simplex for `max c.x` subject to `A x <= b`, `x >= 0`,
//! `b >= 0`. Bland's rule; small instances only.

use alloc::vec::Vec;

const PIVOT_TOL: f64 = 1e-11;

#[derive(Debug, Clone, PartialEq)]
pub struct LpResult {
    pub value: f64,
    pub x: Vec<f64>,
}

/// Returns `None` when the objective is unbounded.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Option<LpResult> {
    let (m, n) = (a.len(), c.len());
    let width = n + m + 1;
    // row i: [A_i | e_i | b_i]; last row: [-c | 0 | 0]
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
    for i in 0..m {
        assert!(b[i] >= 0.0, "origin must be feasible");
        let mut row = alloc::vec![0.0; width];
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[width - 1] = b[i];
        t.push(row);
    }
    let mut obj = alloc::vec![0.0; width];
    for j in 0..n {
        obj[j] = -c[j];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(col) = (0..width - 1).find(|&j| t[m][j] < -PIVOT_TOL) else { break };
        let mut row = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if t[i][col] > PIVOT_TOL {
                let r = t[i][width - 1] / t[i][col];
                let better = match row {
                    None => true,
                    Some(k) => r < best - PIVOT_TOL || (r <= best + PIVOT_TOL && basis[i] < basis[k]),
                };
                if better {
                    best = r;
                    row = Some(i);
                }
            }
        }
        let r = row?;
        let p = t[r][col];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r {
                let f = row[col];
                if f != 0.0 {
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
        basis[r] = col;
    }
    let mut x = alloc::vec![0.0; n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].max(0.0);
        }
    }
    Some(LpResult { value: t[m][width - 1], x })
}
