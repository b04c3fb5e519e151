//! Small exact linear algebra over `Q` and `ℤ`.

#![allow(clippy::needless_range_loop)]

use num_integer::Integer;
use num_traits::{One, Zero};

use super::weight::Q;

pub type QMatrix = Vec<Vec<Q>>;

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &QMatrix) -> Option<QMatrix> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn determinant(m: &QMatrix) -> Q {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Q::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if !f.is_zero() {
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    det
}

pub fn mat_mul(a: &QMatrix, b: &QMatrix) -> QMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row-style Hermite normal form of the integer row span of `rows`.
///
/// Returns `rank` rows, upper triangular (row `i` has its pivot in a column
/// strictly right of row `i-1`'s pivot), positive pivots, and entries above
/// each pivot reduced into `[0, pivot)`.
pub fn hermite_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut a: Vec<Vec<i64>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let mut out_row = 0;
    for col in 0..ncols {
        if out_row >= a.len() {
            break;
        }
        // Euclid on column `col` among rows out_row.. until a single nonzero remains.
        loop {
            let nonzero: Vec<usize> = (out_row..a.len()).filter(|&r| a[r][col] != 0).collect();
            if nonzero.is_empty() {
                break;
            }
            let &min_r = nonzero
                .iter()
                .min_by_key(|&&r| a[r][col].abs())
                .expect("nonempty");
            a.swap(out_row, min_r);
            let p = a[out_row][col];
            let mut done = true;
            for r in out_row + 1..a.len() {
                if a[r][col] != 0 {
                    let f = Integer::div_floor(&a[r][col], &p);
                    for c in 0..ncols {
                        let v = a[out_row][c];
                        a[r][c] -= f * v;
                    }
                    if a[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[out_row][col] == 0 {
            continue;
        }
        if a[out_row][col] < 0 {
            for x in a[out_row].iter_mut() {
                *x = -*x;
            }
        }
        let p = a[out_row][col];
        for r in 0..out_row {
            let f = Integer::div_floor(&a[r][col], &p);
            if f != 0 {
                for c in 0..ncols {
                    let v = a[out_row][c];
                    a[r][c] -= f * v;
                }
            }
        }
        out_row += 1;
        a.retain(|r| r.iter().any(|&x| x != 0));
    }
    a.truncate(out_row);
    a
}
