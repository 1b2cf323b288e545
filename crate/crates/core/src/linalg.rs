//! Dense vectors and matrices over a [`Field`].

use alloc::vec;
use alloc::vec::Vec;

use crate::scalars::{Field, Scalar};

pub type Vector = Vec<Scalar>;
/// Row-major: `m[i][j]` is row `i`, column `j`; acts on column vectors.
pub type Matrix = Vec<Vec<Scalar>>;

pub fn zeros(n: usize) -> Vector {
    vec![Scalar::ZERO; n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Scalar::ONE;
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn sub(f: &Field, a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn scale(f: &Field, c: Scalar, a: &[Scalar]) -> Vector {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

/// a += c·b
pub fn axpy(f: &Field, a: &mut [Scalar], c: Scalar, b: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (x, &y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x = f.add(*x, f.mul(c, y));
        }
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit(n, i)).collect()
}

pub fn mat_vec(f: &Field, m: &Matrix, v: &[Scalar]) -> Vector {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Scalar::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
        .collect()
}

pub fn mat_mul(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = zeros(n);
            for (k, &c) in row.iter().enumerate() {
                axpy(f, &mut out, c, &b[k]);
            }
            out
        })
        .collect()
}

pub fn mat_sub(f: &Field, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| sub(f, x, y)).collect()
}

pub fn mat_pow(f: &Field, a: &Matrix, e: u32) -> Matrix {
    let mut acc = identity(a.len());
    for _ in 0..e {
        acc = mat_mul(f, &acc, a);
    }
    acc
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: &[Vector], rows: usize) -> Matrix {
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

pub fn column(m: &Matrix, j: usize) -> Vector {
    m.iter().map(|row| row[j]).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: &Field, m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(k) = (r..rows).find(|&k| !m[k][c].is_zero()) else {
            continue;
        };
        m.swap(r, k);
        let inv = f.inv(m[r][c]).expect("nonzero pivot");
        m[r] = scale(f, inv, &m[r]);
        let pivot_row = m[r].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let c0 = f.neg(row[c]);
                axpy(f, row, c0, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: &Field, vectors: &[Vector]) -> usize {
    let mut m = vectors.to_vec();
    rref(f, &mut m).len()
}

/// Basis of { v : m v = 0 }.
pub fn nullspace(f: &Field, m: &Matrix, cols: usize) -> Vec<Vector> {
    let mut a = m.clone();
    let pivots = rref(f, &mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = zeros(cols);
            v[fc] = Scalar::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(a[r][fc]);
            }
            v
        })
        .collect()
}

pub fn in_span(f: &Field, vectors: &[Vector], v: &[Scalar]) -> bool {
    let r = rank(f, vectors);
    let mut ext = vectors.to_vec();
    ext.push(v.to_vec());
    rank(f, &ext) == r
}

/// Basis (echelon rows) of the span of the given vectors.
pub fn span_basis(f: &Field, vectors: &[Vector]) -> Vec<Vector> {
    let mut m = vectors.to_vec();
    let k = rref(f, &mut m).len();
    m.truncate(k);
    m
}

pub fn inverse(f: &Field, m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend(unit(n, i));
            r
        })
        .collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_and_inverse() {
        let f = Field::prime(5);
        let s = |v: &[i64]| v.iter().map(|&x| f.from_int(x)).collect::<Vector>();
        let m = vec![s(&[1, 2, 3]), s(&[2, 4, 6])];
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero(&mat_vec(&f, &m, v)));
        }
        let a = vec![s(&[1, 2]), s(&[3, 4])];
        let ai = inverse(&f, &a).unwrap();
        assert_eq!(mat_mul(&f, &a, &ai), identity(2));
        assert!(inverse(&f, &m[..1].iter().cloned().chain([s(&[2, 4, 6])]).map(|r| r[..2].to_vec()).collect()).is_none());
        assert!(in_span(&f, &m, &s(&[3, 6, 9])));
        assert!(!in_span(&f, &m, &s(&[0, 0, 1])));
    }
}
