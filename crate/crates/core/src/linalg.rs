//! Small dense exact linear algebra over a generic ordered field.
//!
//! Everything here is plain Gaussian elimination with exact pivot tests,
//! intended for the rational path (dimensions are single digits, vertex
//! counts a few hundred at most).

use crate::scalar::Coeff;

pub fn dot<S: Coeff>(a: &[S], b: &[S]) -> S {
    assert_eq!(a.len(), b.len());
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn scale<S: Coeff>(a: &[S], c: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * c.clone()).collect()
}

pub fn add<S: Coeff>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub<S: Coeff>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn neg<S: Coeff>(a: &[S]) -> Vec<S> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn is_zero<S: Coeff>(a: &[S]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Applies a column-major basis matrix to a coefficient vector: sum c_j B_j.
pub fn combine<S: Coeff>(columns: &[Vec<S>], coeffs: &[S]) -> Vec<S> {
    assert_eq!(columns.len(), coeffs.len());
    let dim = columns.first().map_or(0, Vec::len);
    let mut out = vec![S::zero(); dim];
    for (col, c) in columns.iter().zip(coeffs) {
        for (o, x) in out.iter_mut().zip(col) {
            *o = o.clone() + c.clone() * x.clone();
        }
    }
    out
}

/// B^T x for a column-major basis matrix.
pub fn project<S: Coeff>(columns: &[Vec<S>], x: &[S]) -> Vec<S> {
    columns.iter().map(|col| dot(col, x)).collect()
}

/// Rank of the row set via Gaussian elimination.
pub fn rank<S: Coeff>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][col].clone();
        for i in 0..m.len() {
            if i != r && !m[i][col].is_zero() {
                let f = m[i][col].clone() / pivot.clone();
                for j in col..ncols {
                    m[i][j] = m[i][j].clone() - f.clone() * m[r][j].clone();
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Solves A x = b for any solution; returns None when inconsistent.
/// A is given as rows.
pub fn solve<S: Coeff>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let m = a.len();
    assert_eq!(m, b.len());
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivot_col: Vec<Option<usize>> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..m).find(|&i| !aug[i][col].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let pivot = aug[r][col].clone();
        for j in col..=n {
            aug[r][j] = aug[r][j].clone() / pivot.clone();
        }
        for i in 0..m {
            if i != r && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in col..=n {
                    aug[i][j] = aug[i][j].clone() - f.clone() * aug[r][j].clone();
                }
            }
        }
        pivot_col.push(Some(col));
        r += 1;
        if r == m {
            break;
        }
    }
    // Inconsistent iff a zero row has nonzero rhs.
    for i in r..m {
        if aug[i][..n].iter().all(|x| x.is_zero()) && !aug[i][n].is_zero() {
            return None;
        }
    }
    let mut x = vec![S::zero(); n];
    for (row, col) in pivot_col.iter().enumerate() {
        if let Some(c) = col {
            x[*c] = aug[row][n].clone();
        }
    }
    Some(x)
}

/// Solves a square system with a unique solution; None if singular.
pub fn solve_unique<S: Coeff>(a: &[Vec<S>], b: &[S]) -> Option<Vec<S>> {
    let n = a.len();
    if n == 0 || a[0].len() != n {
        return None;
    }
    if rank(a) < n {
        return None;
    }
    solve(a, b)
}

/// Inverse of a square matrix (rows); None if singular.
pub fn invert<S: Coeff>(a: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = a.len();
    let mut aug: Vec<Vec<S>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { S::one() } else { S::zero() });
            }
            r
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !aug[i][col].is_zero()) else {
            return None;
        };
        aug.swap(col, p);
        let pivot = aug[col][col].clone();
        for j in 0..2 * n {
            aug[col][j] = aug[col][j].clone() / pivot.clone();
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in 0..2 * n {
                    aug[i][j] = aug[i][j].clone() - f.clone() * aug[col][j].clone();
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Affine dimension of a point set (rank of differences from the first point).
pub fn affine_dim<S: Coeff>(points: &[Vec<S>]) -> Option<usize> {
    let first = points.first()?;
    let diffs: Vec<Vec<S>> = points[1..].iter().map(|p| sub(p, first)).collect();
    Some(rank(&diffs))
}

/// Membership of x in the column span of `columns`; returns the coefficient
/// vector when x = B c has an exact solution.
pub fn in_span<S: Coeff>(columns: &[Vec<S>], x: &[S]) -> Option<Vec<S>> {
    let dim = columns.first().map_or(0, Vec::len);
    assert_eq!(dim, x.len());
    // Rows of the system are the ambient coordinates.
    let rows: Vec<Vec<S>> = (0..dim)
        .map(|i| columns.iter().map(|col| col[i].clone()).collect())
        .collect();
    let c = solve(&rows, x)?;
    // `solve` returns a least-structured solution; verify exactly.
    if combine(columns, &c) == x {
        Some(c)
    } else {
        None
    }
}
