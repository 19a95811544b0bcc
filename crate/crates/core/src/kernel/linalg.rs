//! Dense exact linear algebra over `Q`. Matrices are row vectors.

use num_traits::{One, Zero};

use super::rational::{dot, Q};

/// Reduced row echelon form in place; returns pivot columns in order.
pub fn rref(m: &mut [Vec<Q>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Q::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Rank of rows selected by index.
pub fn rank_of<'a, I: IntoIterator<Item = &'a Vec<Q>>>(rows: I) -> usize {
    let v: Vec<Vec<Q>> = rows.into_iter().cloned().collect();
    rank(&v)
}

/// Determinant of a square matrix (1 for the empty matrix).
pub fn det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut acc = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            acc = -acc;
        }
        acc *= &m[c][c];
        let pivot_row = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
    }
    acc
}

/// Basis of `{x : rows·x = 0}` with deterministic pivot order.
pub fn nullspace(rows: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); n];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Unique solution of `A x = b` for square nonsingular `A`, else `None`.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

/// Coordinates of `x` in the basis `basis` (rows), if `x` lies in their span.
pub fn coordinates(basis: &[Vec<Q>], x: &[Q]) -> Option<Vec<Q>> {
    let k = basis.len();
    let n = x.len();
    // Solve basis^T c = x via rref of the augmented n x (k+1) system.
    let mut m: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            let mut r: Vec<Q> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(x[i].clone());
            r
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![Q::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = m[r][k].clone();
    }
    Some(c)
}

pub fn mat_vec(rows: &[Vec<Q>], x: &[Q]) -> Vec<Q> {
    rows.iter().map(|r| dot(r, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{q, qvec};

    #[test]
    fn det_and_rank() {
        let m = vec![qvec(&[2, 0, 1]), qvec(&[1, 3, 2]), qvec(&[1, 1, 1])];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det(&m), q(0));
        assert_eq!(rank(&m), 2);
        assert_eq!(det(&[qvec(&[0, 1]), qvec(&[1, 0])]), q(-1));
        assert_eq!(det(&[]), q(1));
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let rows = vec![qvec(&[1, 2, 3])];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert_eq!(dot(&rows[0], v), q(0));
        }
    }

    #[test]
    fn solve_square() {
        let a = vec![qvec(&[1, 1]), qvec(&[1, -1])];
        assert_eq!(solve(&a, &qvec(&[2, 0])).unwrap(), qvec(&[1, 1]));
        assert!(solve(&[qvec(&[1, 1]), qvec(&[2, 2])], &qvec(&[1, 1])).is_none());
    }

    #[test]
    fn coordinates_in_span() {
        let b = vec![qvec(&[1, 0, 1]), qvec(&[0, 1, 1])];
        assert_eq!(coordinates(&b, &qvec(&[2, 3, 5])).unwrap(), qvec(&[2, 3]));
        assert!(coordinates(&b, &qvec(&[0, 0, 1])).is_none());
    }
}
