//! Exact dense linear algebra over `Q`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coeffring::Rational;

/// A dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = Rational::one() / &m[row][col];
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let f = other[col].clone();
            for (x, p) in other.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    m.truncate(row);
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// A basis of `{ v : m v = 0 }` for a matrix with `ncols` columns, one vector
/// per free column, in reduced form.
pub fn nullspace(m: &Matrix, ncols: usize) -> Vec<Vec<Rational>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -a[r][free].clone();
        }
        out.push(v);
    }
    out
}

/// Whether two families of row vectors span the same subspace.
pub fn same_span(a: &Matrix, b: &Matrix) -> bool {
    let ra = rank(a);
    let rb = rank(b);
    let mut both = a.clone();
    both.extend(b.iter().cloned());
    ra == rb && rank(&both) == ra
}

/// Inverse of a square matrix, if it is invertible.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "square matrix");
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return if n == 0 { Some(vec![]) } else { None };
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Assembles sparse column vectors into a dense matrix, assigning row
/// indices to keys in order of first appearance.
pub fn from_sparse_columns<K: Ord + Clone>(cols: &[BTreeMap<K, Rational>]) -> Matrix {
    let mut index = BTreeMap::new();
    for c in cols {
        for k in c.keys() {
            let next = index.len();
            index.entry(k.clone()).or_insert(next);
        }
    }
    let mut m = vec![vec![Rational::zero(); cols.len()]; index.len()];
    for (j, c) in cols.iter().enumerate() {
        for (k, q) in c {
            m[index[k]][j] = q.clone();
        }
    }
    m
}

/// Assembles sparse vectors as rows over a shared key order.
pub fn from_sparse_rows<K: Ord + Clone>(rows: &[BTreeMap<K, Rational>]) -> Matrix {
    let m = from_sparse_columns(rows);
    transpose(&m, rows.len())
}

pub fn transpose(m: &Matrix, ncols: usize) -> Matrix {
    (0..ncols)
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&m), 2);
        let k = nullspace(&m, 3);
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&k[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn empty_matrix_kernel_is_everything() {
        assert_eq!(nullspace(&vec![], 2).len(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let m = mat(&[&[2, 1], &[1, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, mat(&[&[1, -1], &[-1, 2]]));
        assert!(inverse(&mat(&[&[1, 2], &[2, 4]])).is_none());
    }

    #[test]
    fn spans() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        let b = mat(&[&[1, 1], &[1, -1]]);
        assert!(same_span(&a, &b));
        assert!(!same_span(&a, &mat(&[&[1, 1]])));
    }

    #[test]
    fn sparse_assembly() {
        let c1: BTreeMap<&str, Rational> = [("a", q(1)), ("b", q(2))].into();
        let c2: BTreeMap<&str, Rational> = [("b", q(3))].into();
        assert_eq!(
            from_sparse_columns(&[c1.clone(), c2.clone()]),
            mat(&[&[1, 0], &[2, 3]])
        );
        assert_eq!(from_sparse_rows(&[c1, c2]), mat(&[&[1, 2], &[0, 3]]));
    }
}
