//! Small exact integer linear algebra: echelon forms by unimodular row
//! operations, unimodular inverses and products.

use crate::freegroup::HVector;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// Matrix product; panics on overflow instead of wrapping.
pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    let s: i128 = (0..inner).map(|k| row[k] as i128 * b[k][j] as i128).sum();
                    i64::try_from(s).expect("integer matrix entry overflow")
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| {
            let s: i128 = row.iter().zip(v).map(|(&x, &y)| x as i128 * y as i128).sum();
            i64::try_from(s).expect("integer vector entry overflow")
        })
        .collect()
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: &[HVector]) -> IntMatrix {
    let n = cols.first().map_or(0, |c| c.rank());
    (0..n).map(|i| cols.iter().map(|c| c.coords()[i]).collect()).collect()
}

pub fn columns(m: &IntMatrix) -> Vec<HVector> {
    transpose(m).into_iter().map(HVector::new).collect()
}

/// Row echelon form reached by unimodular row operations, together with
/// the transformation `u` such that `u * m = echelon`.
pub fn echelon_with_transform(m: &IntMatrix) -> (Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut u: Vec<Vec<i128>> = (0..rows).map(|i| (0..rows).map(|j| i128::from(i == j)).collect()).collect();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // smallest nonzero entry in column c at or below row r
        while let Some(p) = (r..rows).filter(|&i| a[i][c] != 0).min_by_key(|&i| a[i][c].abs()) {
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            let (ar, ur) = (a[r].clone(), u[r].clone());
            for i in r + 1..rows {
                if a[i][c] != 0 {
                    let q = a[i][c].div_euclid(ar[c]);
                    for (x, y) in a[i].iter_mut().zip(&ar) {
                        *x -= q * y;
                    }
                    for (x, y) in u[i].iter_mut().zip(&ur) {
                        *x -= q * y;
                    }
                    if a[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] != 0 {
            r += 1;
        }
    }
    (a, u)
}

/// Whether the vectors generate `Z^rank`.
pub fn spans_full_lattice(vectors: &[HVector], rank: usize) -> bool {
    if rank == 0 {
        return true;
    }
    let m: IntMatrix = vectors.iter().map(|v| v.coords().to_vec()).collect();
    if m.iter().any(|r| r.len() != rank) {
        return false;
    }
    let (e, _) = echelon_with_transform(&m);
    if e.len() < rank {
        return false;
    }
    (0..rank).all(|i| e[i][i].abs() == 1)
}

/// Inverse of a unimodular matrix, or `None` when it is not unimodular.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return None;
    }
    let (mut e, mut u) = echelon_with_transform(m);
    for i in 0..n {
        match e[i][i] {
            1 => {}
            -1 => {
                for j in 0..n {
                    e[i][j] = -e[i][j];
                    u[i][j] = -u[i][j];
                }
            }
            _ => return None,
        }
    }
    // back substitution to the identity
    for i in (0..n).rev() {
        for k in 0..i {
            let q = e[k][i];
            if q != 0 {
                for j in 0..n {
                    e[k][j] -= q * e[i][j];
                    u[k][j] -= q * u[i][j];
                }
            }
        }
    }
    u.into_iter().map(|r| r.into_iter().map(|x| i64::try_from(x).ok()).collect::<Option<Vec<i64>>>()).collect()
}

/// Coordinates of `v` in the basis given by the columns of `basis`.
pub fn solve_unimodular(basis: &IntMatrix, v: &[i64]) -> Option<Vec<i64>> {
    unimodular_inverse(basis).map(|inv| mul_vec(&inv, v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spanning_detection() {
        let e = |c: Vec<i64>| HVector::new(c);
        assert!(spans_full_lattice(&[e(vec![1, 1]), e(vec![0, 1])], 2));
        assert!(!spans_full_lattice(&[e(vec![2, 0]), e(vec![0, 1])], 2));
        assert!(spans_full_lattice(&[e(vec![2, 0]), e(vec![3, 0]), e(vec![0, 1])], 2));
        assert!(!spans_full_lattice(&[e(vec![1, 0])], 2));
    }

    #[test]
    fn inverse_of_shear() {
        let m = vec![vec![1, 3, 0], vec![0, 1, 0], vec![2, 7, 1]];
        let inv = unimodular_inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity(3));
        assert!(unimodular_inverse(&vec![vec![2, 0], vec![0, 1]]).is_none());
    }
}
