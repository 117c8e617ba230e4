//! Smith and Hermite normal forms over ℤ, and their ℤ/n reductions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

type IntMat = Vec<Vec<BigInt>>;

/// `u · a · v = s` with `s` diagonal, each diagonal entry dividing the next,
/// and `u`, `v` invertible over the ring.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: Matrix,
    pub u: Matrix,
    pub v: Matrix,
}

impl Smith {
    /// Diagonal entries of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<Elem> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s.get(i, i).clone()).collect()
    }
}

fn to_int(m: &Matrix) -> IntMat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).as_integer().expect("integer matrix").clone()).collect())
        .collect()
}

fn from_int(rows: usize, cols: usize, a: &IntMat) -> Matrix {
    Matrix::from_fn(&Ring::Integers, rows, cols, |i, j| Elem::Integer(a[i][j].clone()))
}

fn identity_int(n: usize) -> IntMat {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn row_axpy(a: &mut IntMat, target: usize, src: usize, q: &BigInt) {
    // row_target -= q * row_src
    let src_row = a[src].clone();
    for (t, s) in a[target].iter_mut().zip(src_row.iter()) {
        *t -= q * s;
    }
}

fn col_axpy(a: &mut IntMat, target: usize, src: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let s = row[src].clone();
        row[target] -= q * s;
    }
}

fn swap_cols(a: &mut IntMat, i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Integer Smith normal form: returns `(s, u, v)` with `u·a·v = s`.
fn smith_int(a0: &IntMat, rows: usize, cols: usize) -> (IntMat, IntMat, IntMat) {
    let mut a = a0.clone();
    let mut u = identity_int(rows);
    let mut v = identity_int(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[i][j].is_zero() && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { return (a, u, v) };
            a.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut v, t, bj);

            // one reduction pass against a fixed pivot; remainders trigger reselection
            let pivot = a[t][t].clone();
            let mut clear = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&pivot);
                    row_axpy(&mut a, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    clear &= a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&pivot);
                    col_axpy(&mut a, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    clear &= a[t][j].is_zero();
                }
            }
            if !clear {
                continue;
            }
            // divisibility of the trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut a, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    (a, u, v)
}

/// Smith normal form over ℤ or ℤ/n.
///
/// Over ℤ/n the integer form of a lift is reduced mod n: the transforms stay
/// invertible and the divisibility chain survives reduction.
pub fn snf(a: &Matrix) -> Result<Smith> {
    let ring = a.ring().clone();
    match ring {
        Ring::Integers | Ring::IntegersMod(_) => {}
        _ => return Err(Error::UnsupportedRing { op: "snf", ring }),
    }
    let lifted = a.lift_to_integers().expect("integer or residue matrix");
    let (s, u, v) = smith_int(&to_int(&lifted), a.rows(), a.cols());
    let (s, u, v) = (from_int(a.rows(), a.cols(), &s), from_int(a.rows(), a.rows(), &u), from_int(a.cols(), a.cols(), &v));
    if ring == Ring::Integers {
        Ok(Smith { s, u, v })
    } else {
        Ok(Smith { s: s.reduce_integers(&ring), u: u.reduce_integers(&ring), v: v.reduce_integers(&ring) })
    }
}

/// Solves `a·x = b` over ℤ via the Smith form. `None` if no integer solution exists.
pub fn solve_integers(a: &Matrix, b: &Matrix) -> Option<Matrix> {
    let Smith { s, u, v } = snf(a).expect("integer matrix");
    let ub = &u * b;
    let r = a.rows();
    let n = a.cols();
    let mut y = Matrix::zeros(&Ring::Integers, n, b.cols());
    for i in 0..r {
        let d = if i < n { s.get(i, i).as_integer().unwrap().clone() } else { BigInt::zero() };
        for j in 0..b.cols() {
            let c = ub.get(i, j).as_integer().unwrap();
            if d.is_zero() {
                if !c.is_zero() {
                    return None;
                }
            } else {
                let (q, rem) = c.div_rem(&d);
                if !rem.is_zero() {
                    return None;
                }
                y.set(i, j, Elem::Integer(q));
            }
        }
    }
    Some(&v * &y)
}

/// Row-style Hermite normal form `h = t·a` over ℤ: echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Returns `(h, t)`.
pub fn hermite_rows(a: &Matrix) -> (Matrix, Matrix) {
    let (rows, cols) = a.shape();
    let mut h = to_int(a);
    let mut t = identity_int(rows);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // euclid down the column until a single nonzero entry remains at row r
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| !h[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| h[i][c].abs()).unwrap();
            h.swap(r, p);
            t.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut t, i, r, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            for x in h[r].iter_mut() {
                *x = -x.clone();
            }
            for x in t[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut t, i, r, &q);
            }
        }
        r += 1;
    }
    (from_int(rows, cols, &h), from_int(rows, rows, &t))
}

/// Determinant of a square integer matrix (Bareiss fraction-free elimination).
pub fn det_integer(m: &Matrix) -> BigInt {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = to_int(m);
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(rows: usize, cols: usize, v: &[i64]) -> Matrix {
        Matrix::from_i64(&Ring::Integers, rows, cols, v)
    }

    #[test]
    fn two_by_two_example() {
        let a = z(2, 2, &[2, 4, 6, 8]);
        let sm = snf(&a).unwrap();
        assert_eq!(sm.s, z(2, 2, &[2, 0, 0, 4]));
        assert_eq!(&(&sm.u * &a) * &sm.v, sm.s);
        assert_eq!(det_integer(&sm.u).abs(), BigInt::one());
        assert_eq!(det_integer(&sm.v).abs(), BigInt::one());
    }

    #[test]
    fn identity_and_zero() {
        let id = Matrix::identity(&Ring::Integers, 3);
        let sm = snf(&id).unwrap();
        assert_eq!(sm.s, id);
        assert!(sm.u.is_identity() && sm.v.is_identity());
        let zero = z(2, 2, &[0, 0, 0, 0]);
        let sm = snf(&zero).unwrap();
        assert!(sm.s.is_zero() && sm.u.is_identity() && sm.v.is_identity());
    }

    #[test]
    fn rejects_fields() {
        assert!(matches!(
            snf(&Matrix::identity(&Ring::Rationals, 2)),
            Err(Error::UnsupportedRing { .. })
        ));
    }

    #[test]
    fn integer_solve() {
        assert!(solve_integers(&z(1, 1, &[2]), &z(1, 1, &[1])).is_none());
        let x = solve_integers(&z(1, 1, &[2]), &z(1, 1, &[6])).unwrap();
        assert_eq!(x, z(1, 1, &[3]));
    }

    #[test]
    fn hermite_is_echelon() {
        let a = z(3, 2, &[2, 3, 4, 5, 6, 7]);
        let (h, t) = hermite_rows(&a);
        assert_eq!(&t * &a, h);
        assert_eq!(h, z(3, 2, &[2, 0, 0, 1, 0, 0]));
        assert_eq!(det_integer(&t).abs(), BigInt::one());
    }

    #[test]
    fn transforms_stay_small() {
        // used to blow up when the pivot changed in the middle of a pass
        #[rustfmt::skip]
        let a = z(8, 6, &[
            -4, -5, 0, -1, 9, -4,   3, -4, -5, 6, -3, -8,   7, 2, 8, -4, -4, -5,   -8, -9, -7, 6, 7, 5,
            -6, 9, -2, -7, 7, 6,    -3, 4, 1, 3, 9, -7,     -6, 6, -8, 1, -4, 2,    -5, 6, -4, -8, -1, 0,
        ]);
        let sm = snf(&a).unwrap();
        assert_eq!(&(&sm.u * &a) * &sm.v, sm.s);
        let bits = |m: &Matrix| (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).map(|(i, j)| m.get(i, j).as_integer().unwrap().bits()).max();
        assert!(bits(&sm.u).unwrap() < 256 && bits(&sm.v).unwrap() < 256);
    }
}
