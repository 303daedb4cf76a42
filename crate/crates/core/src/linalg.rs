//! Dense exact Gaussian elimination.
//!
//! Matrices are plain row vectors; every routine here is exact and
//! deterministic (pivots are chosen as the first nonzero entry).

use crate::scalar::Scalar;

/// Result of reducing a list of rows to reduced row echelon form while
/// tracking how every surviving row is built from the input rows.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    /// Nonzero rows of the reduced echelon form.
    pub rows: Vec<Vec<T>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    /// `combos[r][k]` is the coefficient of input row `k` in `rows[r]`.
    pub combos: Vec<Vec<T>>,
}

/// Reduced row echelon form of `rows` (each of length `ncols`).
pub fn echelon<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Echelon<T> {
    let m = rows.len();
    let mut a: Vec<Vec<T>> = rows.to_vec();
    let mut c: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let mut r = vec![T::zero(); m];
            r[i] = T::one();
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        c.swap(rank, p);
        let inv = T::one() / a[rank][col].clone();
        for x in a[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for x in c[rank].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m {
            if r == rank || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..ncols {
                let d = f.clone() * a[rank][k].clone();
                if !d.is_zero() {
                    a[r][k] = a[r][k].clone() - d;
                }
            }
            for k in 0..m {
                let d = f.clone() * c[rank][k].clone();
                if !d.is_zero() {
                    c[r][k] = c[r][k].clone() - d;
                }
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == m {
            break;
        }
    }
    a.truncate(rank);
    c.truncate(rank);
    Echelon {
        rows: a,
        pivots,
        combos: c,
    }
}

pub fn rank<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> usize {
    echelon(rows, ncols).pivots.len()
}

/// Basis of `{ t : rows · t = 0 }` in `Q^ncols`.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let e = echelon(rows, ncols);
    let mut basis = Vec::new();
    let mut is_pivot = vec![None; ncols];
    for (r, &p) in e.pivots.iter().enumerate() {
        is_pivot[p] = Some(r);
    }
    for free in 0..ncols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![T::zero(); ncols];
        v[free] = T::one();
        for (r, &p) in e.pivots.iter().enumerate() {
            v[p] = -e.rows[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `rows · t = rhs`, or `None` when inconsistent.
pub fn solve<T: Scalar>(rows: &[Vec<T>], rhs: &[T], ncols: usize) -> Option<Vec<T>> {
    let augmented: Vec<Vec<T>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let e = echelon(&augmented, ncols + 1);
    if e.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut t = vec![T::zero(); ncols];
    for (r, &p) in e.pivots.iter().enumerate() {
        t[p] = e.rows[r][ncols].clone();
    }
    Some(t)
}

/// Inverse of a square matrix, `None` when singular.
pub fn invert<T: Scalar>(rows: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = rows.len();
    let e = echelon(rows, n);
    if e.pivots.len() < n {
        return None;
    }
    // rows of the echelon form are the identity, so combos is the inverse
    Some(e.combos)
}

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `Σ_k t[k] · columns[k]` where `columns[k]` is a row of `matrix`.
pub fn combine_rows<T: Scalar>(coeffs: &[T], matrix: &[Vec<T>], len: usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (c, row) in coeffs.iter().zip(matrix) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(row) {
            *o = o.clone() + c.clone() * x.clone();
        }
    }
    out
}

/// Scale a row so its first nonzero entry has absolute value one, keeping
/// its sign pattern. Zero rows are returned unchanged.
pub fn normalize_positive<T: Scalar>(row: &[T]) -> Vec<T> {
    match row.iter().find(|x| !x.is_zero()) {
        None => row.to_vec(),
        Some(lead) => {
            let s = lead.abs();
            row.iter().map(|x| x.clone() / s.clone()).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn echelon_by_hand() {
        // (1,1,0),(0,1,1) -> (1,0,-1),(0,1,1)
        let e = echelon(&m(&[&[1, 1, 0], &[0, 1, 1]]), 3);
        assert_eq!(e.rows, m(&[&[1, 0, -1], &[0, 1, 1]]));
        assert_eq!(e.pivots, vec![0, 1]);
        assert_eq!(e.combos, m(&[&[1, -1], &[0, 1]]));
    }

    #[test]
    fn dependent_rows_vanish() {
        let e = echelon(&m(&[&[1, 1, 0], &[2, 2, 0]]), 3);
        assert_eq!(e.rows, m(&[&[1, 1, 0]]));
    }

    #[test]
    fn nullspace_and_solve() {
        let a = m(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = nullspace(&a, 3);
        assert_eq!(k, m(&[&[1, -1, 1]]));
        let t = solve(&a, &m(&[&[1, 1]])[0], 3).unwrap();
        assert_eq!(combine_rows(&t, &m(&[&[1, 0], &[1, 1], &[0, 1]]), 2), m(&[&[1, 1]])[0]);
        assert!(solve(&m(&[&[1, 1], &[1, 1]]), &m(&[&[0, 1]])[0], 2).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = invert(&a).unwrap();
        assert_eq!(inv, m(&[&[1, -1], &[-1, 2]]));
        assert!(invert(&m(&[&[1, 2], &[2, 4]])).is_none());
    }
}
