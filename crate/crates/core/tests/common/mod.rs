//! Independent oracles: plain Gaussian elimination and Bareiss determinants
//! on nested vectors, sharing no code with the library's linear algebra.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use wkar_core::complexes::Complex;
use wkar_core::exactlin::{Elem, Matrix};

pub fn rational(e: &Elem) -> BigRational {
    match e {
        Elem::Rational(q) => q.clone(),
        Elem::Integer(z) => BigRational::from_integer(z.clone()),
        Elem::Residue(r) => BigRational::from_integer(BigInt::from(*r)),
        Elem::Tuple(_) => panic!("no rational value for a tuple"),
    }
}

pub fn rows_q(m: &Matrix) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| rational(m.get(i, j))).collect()).collect()
}

pub fn rows_z(m: &Matrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m.get(i, j).as_integer().unwrap().clone()).collect()).collect()
}

pub fn rank_q(mut a: Vec<Vec<BigRational>>) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &pivot;
                for k in c..cols {
                    let sub = &f * &a[rank][k];
                    a[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank_mod(a: &[Vec<BigInt>], p: u64) -> usize {
    let p = p as i128;
    let modp = |z: &BigInt| -> i128 {
        let r = (z % BigInt::from(p)).to_string().parse::<i128>().unwrap();
        (r + p) % p
    };
    let mut a: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(modp).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let inv = |x: i128| -> i128 {
        let (mut b, mut e, mut acc) = (x, p - 2, 1i128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(q) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, q);
        let iv = inv(a[rank][c]);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * iv % p;
                for k in c..cols {
                    a[r][k] = ((a[r][k] - f * a[rank][k]) % p + p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `dim H^i` over ℚ for a complex of free terms: `n_i − rank d^i − rank d^{i−1}`.
pub fn homology_dims_q(m: &Complex) -> Vec<(i64, usize)> {
    let rank = |i: i64| if m.size(i) == 0 || m.size(i + 1) == 0 { 0 } else { rank_q(rows_q(&m.diff(i))) };
    m.degrees().map(|i| (i, m.size(i) - rank(i) - rank(i - 1))).collect()
}

pub fn is_acyclic_q(m: &Complex) -> bool {
    homology_dims_q(m).iter().all(|&(_, d)| d == 0)
}

/// Fraction-free determinant.
pub fn det_bareiss(a: &[Vec<BigInt>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(s) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else { return BigInt::zero() };
            m.swap(k, s);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

pub fn is_unimodular(a: &[Vec<BigInt>]) -> bool {
    det_bareiss(a).abs().is_one()
}
