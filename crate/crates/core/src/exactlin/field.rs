//! Gaussian elimination over a single field (ℚ or ℤ/p).

use super::matrix::Matrix;
use super::ring::Ring;

fn assert_field(r: &Ring) {
    assert!(r.is_field(), "field elimination called over {r}");
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let ring = m.ring().clone();
    assert_field(&ring);
    let mut a = m.clone();
    let (rows, cols) = a.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !ring.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let t = a.get(p, j).clone();
                a.set(p, j, a.get(r, j).clone());
                a.set(r, j, t);
            }
        }
        let inv = ring.inv(a.get(r, c)).expect("nonzero field element is a unit");
        for j in c..cols {
            let v = ring.mul(&inv, a.get(r, j));
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i == r || ring.is_zero(a.get(i, c)) {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..cols {
                let v = ring.sub(a.get(i, j), &ring.mul(&f, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Columns form a basis of the right kernel `{x : m·x = 0}`.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let ring = m.ring().clone();
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(&ring, n, free.len());
    for (j, &f) in free.iter().enumerate() {
        k.set(f, j, ring.one());
        for (i, &p) in pivots.iter().enumerate() {
            k.set(p, j, ring.neg(r.get(i, f)));
        }
    }
    k
}

/// Some `x` with `a·x = b`, if one exists.
pub fn solve(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let ring = a.ring().clone();
    assert_eq!(a.rows(), b.rows());
    let aug = Matrix::hstack(&ring, a.rows(), &[a, b]);
    let (r, pivots) = rref(&aug);
    let n = a.cols();
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = Matrix::zeros(&ring, n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, r.get(i, n + j).clone());
        }
    }
    Some(x)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let id = Matrix::identity(m.ring(), m.rows());
    if rank(m) != m.rows() {
        return None;
    }
    solve(m, &id)
}

/// Basis of the column space in reduced column echelon form, together with
/// the pivot rows (where the basis restricts to the identity).
pub fn column_echelon_basis(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (r, pivots) = rref(&m.transpose());
    let k = pivots.len();
    (r.submatrix(0, k, 0, r.cols()).transpose(), pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_solve() {
        let q = Ring::Rationals;
        let a = Matrix::from_i64(&q, 2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        let b = Matrix::from_i64(&q, 2, 1, &[1, 2]);
        let x = solve(&a, &b).unwrap();
        assert_eq!(&a * &x, b);
        assert!(solve(&a, &Matrix::from_i64(&q, 2, 1, &[1, 0])).is_none());
    }

    #[test]
    fn inverse_mod_p() {
        let f = Ring::IntegersMod(5);
        let m = Matrix::from_i64(&f, 2, 2, &[1, 2, 3, 4]);
        let inv = inverse(&m).unwrap();
        assert!((&m * &inv).is_identity());
        assert!(inverse(&Matrix::from_i64(&f, 2, 2, &[1, 2, 2, 4])).is_none());
    }
}
