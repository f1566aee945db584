//! Dense Gaussian elimination over a prime field (`ℚ` or `F_p`).

use super::{FieldDescriptor, Scalar};

/// Row-reduces `rows` in place and returns the pivot columns.
fn row_reduce(rows: &mut [Vec<Scalar>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in 0..rows[i].len() {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] = rows[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let Some(cols) = rows.first().map(Vec::len) else {
        return 0;
    };
    let mut m = rows.to_vec();
    row_reduce(&mut m, cols).len()
}

/// Solves `A x = b`. Returns `None` when inconsistent; otherwise some
/// solution (free variables set to zero) and the nullity.
pub fn solve(base: &FieldDescriptor, a: &[Vec<Scalar>], b: &[Scalar]) -> Option<(Vec<Scalar>, usize)> {
    let cols = a.first().map(Vec::len).unwrap_or(0);
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug, cols + 1);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![base.zero(); cols];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][cols].clone();
    }
    Some((x, cols - pivots.len()))
}

/// A basis of the null space `{x : A x = 0}`.
pub fn kernel(base: &FieldDescriptor, a: &[Vec<Scalar>], cols: usize) -> Vec<Vec<Scalar>> {
    let mut m = a.to_vec();
    let pivots = row_reduce(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![base.zero(); cols];
            v[f] = base.one();
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = -m[row][f].clone();
            }
            v
        })
        .collect()
}
