use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::ring::{Elem, Ring};
use crate::error::{Error, Result};

/// A dense matrix with entries in a [`Ring`], stored row-major.
///
/// Zero-row and zero-column matrices are legal; they are the zero
/// morphisms to and from the zero object.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        let z = ring.zero();
        Matrix { ring: ring.clone(), rows, cols, data: vec![z; rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_elems(ring: &Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { ring: ring.clone(), rows, cols, data })
    }

    /// Convenience constructor from small integers (mapped through ℤ → R).
    pub fn from_i64(ring: &Ring, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "wrong number of entries");
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: values.iter().map(|&v| ring.from_i64(v)).collect(),
        }
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    pub fn diagonal(ring: &Ring, diag: &[Elem]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Matrix::identity(&self.ring, self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| self.ring.mul(c, e)).collect(),
        }
    }

    /// Multiplies by ±1.
    pub fn signed(&self, positive: bool) -> Matrix {
        if positive {
            self.clone()
        } else {
            -self
        }
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.clone(), other.ring.clone()));
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = r.add(&out.data[idx], &r.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.clone(), other.ring.clone()));
        }
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| self.ring.add(a, b)).collect(),
        })
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(&self.ring, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn hstack(ring: &Ring, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut c = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack row mismatch");
            out.set_block(0, c, p);
            c += p.cols;
        }
        out
    }

    pub fn vstack(ring: &Ring, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack column mismatch");
            out.set_block(r, 0, p);
            r += p.rows;
        }
        out
    }

    pub fn block_diag(ring: &Ring, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r, mut c) = (0, 0);
        for p in parts {
            out.set_block(r, c, p);
            r += p.rows;
            c += p.cols;
        }
        out
    }

    /// Applies an entrywise map into another ring (used for ring homomorphisms).
    pub fn map_entries(&self, target: &Ring, f: impl Fn(&Elem) -> Elem) -> Matrix {
        Matrix {
            ring: target.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Component over factor `i` of a product ring.
    pub fn project_factor(&self, i: usize) -> Matrix {
        let target = self.ring.factor(i);
        self.map_entries(&target, |e| self.ring.project(e, i))
    }

    /// Reassembles a matrix over a product ring from same-shaped factor matrices.
    pub fn from_factors(ring: &Ring, parts: &[Matrix]) -> Matrix {
        assert_eq!(parts.len(), ring.factor_count());
        let (rows, cols) = parts[0].shape();
        assert!(parts.iter().all(|p| p.shape() == (rows, cols)), "factor shapes differ");
        Matrix::from_fn(ring, rows, cols, |i, j| {
            let comps: Vec<Elem> = parts.iter().map(|p| p.get(i, j).clone()).collect();
            ring.combine(&comps)
        })
    }

    /// Stacks all entries row by row into one column.
    pub fn vectorize(&self) -> Matrix {
        Matrix { ring: self.ring.clone(), rows: self.rows * self.cols, cols: 1, data: self.data.clone() }
    }

    pub fn reshape(&self, rows: usize, cols: usize) -> Matrix {
        assert_eq!(rows * cols, self.data.len());
        Matrix { ring: self.ring.clone(), rows, cols, data: self.data.clone() }
    }

    /// Lifts an integer or residue matrix to ℤ.
    pub fn lift_to_integers(&self) -> Option<Matrix> {
        let data = self
            .data
            .iter()
            .map(|e| self.ring.lift_integer(e).map(Elem::Integer))
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix { ring: Ring::Integers, rows: self.rows, cols: self.cols, data })
    }

    /// Changes the coefficient ring along ℤ → R (entries must be integers).
    pub fn reduce_integers(&self, target: &Ring) -> Matrix {
        self.map_entries(target, |e| target.from_bigint(e.as_integer().expect("integer matrix")))
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self + &(-rhs)
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| self.ring.neg(e)).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}; {}x{}", self.ring, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "\n  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_matrices_act_as_zero() {
        let q = Ring::Rationals;
        let a = Matrix::zeros(&q, 3, 0);
        let b = Matrix::zeros(&q, 0, 2);
        assert_eq!(&a * &b, Matrix::zeros(&q, 3, 2));
        assert_eq!((&b * &Matrix::zeros(&q, 2, 4)).shape(), (0, 4));
    }

    #[test]
    fn blocks_and_factors() {
        let r = Ring::prime_field_product(vec![2, 3]).unwrap();
        let m = Matrix::diagonal(&r, &[Elem::Tuple(vec![1, 0]), Elem::Tuple(vec![0, 1])]);
        let f0 = m.project_factor(0);
        let f1 = m.project_factor(1);
        assert_eq!(f0, Matrix::from_i64(&Ring::IntegersMod(2), 2, 2, &[1, 0, 0, 0]));
        assert_eq!(Matrix::from_factors(&r, &[f0, f1]), m);
        let bd = Matrix::block_diag(&r, &[&m, &Matrix::identity(&r, 1)]);
        assert_eq!(bd.shape(), (3, 3));
        assert_eq!(bd.submatrix(0, 2, 0, 2), m);
    }

    #[test]
    fn checked_ops_report_errors() {
        let q = Ring::Rationals;
        assert!(Matrix::zeros(&q, 2, 3).checked_mul(&Matrix::zeros(&q, 2, 3)).is_err());
        assert!(Matrix::zeros(&q, 2, 2).checked_add(&Matrix::zeros(&Ring::Integers, 2, 2)).is_err());
    }
}
