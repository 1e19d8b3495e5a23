//! Feasibility of small systems `A λ = b, λ ≥ 0` by phase-one simplex.
//!
//! Dense tableau with Bland's rule; the systems here have a handful of rows
//! and at most a few dozen columns.

const PIVOT_TOL: f64 = 1e-10;
const FEASIBLE_TOL: f64 = 1e-9;

/// Whether some `λ ≥ 0` satisfies `rows[i] · λ = rhs[i]` for every row.
pub fn feasible(rows: &[Vec<f64>], rhs: &[f64]) -> bool {
    let m = rows.len();
    if m == 0 {
        return true;
    }
    let n = rows[0].len();
    let width = n + m + 1;
    // one artificial per row; last column is the right-hand side
    let mut t = vec![vec![0.0; width]; m];
    for i in 0..m {
        let sign = if rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[i][j] = sign * rows[i][j];
        }
        t[i][n + i] = 1.0;
        t[i][width - 1] = sign * rhs[i];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // objective: minimize the sum of artificials, reduced costs over columns
    let mut cost = vec![0.0; width];
    for row in &t {
        for j in 0..n {
            cost[j] -= row[j];
        }
        cost[width - 1] -= row[width - 1];
    }
    for _ in 0..10_000 {
        let Some(enter) = (0..n + m).find(|&j| cost[j] < -PIVOT_TOL) else {
            break;
        };
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..m {
            let a = t[i][enter];
            if a > PIVOT_TOL {
                let ratio = t[i][width - 1] / a;
                let better = match leave {
                    None => true,
                    Some((l, r)) => ratio < r - 1e-15 || (ratio <= r + 1e-15 && basis[i] < basis[l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded phase-one direction cannot occur (objective ≥ 0)
            break;
        };
        let p = t[r][enter];
        for v in t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i != r {
                let f = row[enter];
                if f != 0.0 {
                    for (v, pv) in row.iter_mut().zip(&pivot_row) {
                        *v -= f * pv;
                    }
                }
            }
        }
        let f = cost[enter];
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= f * pv;
        }
        basis[r] = enter;
    }
    -cost[width - 1] <= FEASIBLE_TOL
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_systems() {
        // λ1 + λ2 = 1, λ1 − λ2 = 0.5
        assert!(feasible(&[vec![1.0, 1.0], vec![1.0, -1.0]], &[1.0, 0.5]));
        // λ1 + λ2 = 1, λ1 + λ2 = 2
        assert!(!feasible(&[vec![1.0, 1.0], vec![1.0, 1.0]], &[1.0, 2.0]));
        // λ1 = −1 has no non-negative solution
        assert!(!feasible(&[vec![1.0]], &[-1.0]));
        assert!(feasible(&[vec![-1.0]], &[-1.0]));
    }

    #[test]
    fn point_in_hull() {
        // is (0.25, 0.25) a convex combination of (0,0), (1,0), (0,1)?
        let rows = vec![vec![1.0, 1.0, 1.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        assert!(feasible(&rows, &[1.0, 0.25, 0.25]));
        assert!(!feasible(&rows, &[1.0, 0.75, 0.75]));
    }
}
