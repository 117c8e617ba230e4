//! Matrix equations `Σ A_k·X_k·B_k = C` flattened into one linear system.

use crate::exactlin::{Elem, Matrix, Ring};

pub(crate) struct Term {
    pub unknown: usize,
    pub left: Matrix,
    pub right: Matrix,
}

struct Equation {
    rows: usize,
    cols: usize,
    terms: Vec<Term>,
    rhs: Option<Matrix>,
}

/// Unknown `k` is a matrix of shape `shapes[k]`, stored row-major in the
/// solution vector starting at `offsets[k]`.
pub(crate) struct LinearSystem {
    ring: Ring,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    equations: Vec<Equation>,
}

impl LinearSystem {
    pub fn new(ring: &Ring) -> Self {
        LinearSystem { ring: ring.clone(), shapes: vec![], offsets: vec![], equations: vec![] }
    }

    pub fn unknown(&mut self, rows: usize, cols: usize) -> usize {
        self.offsets.push(self.unknown_count());
        self.shapes.push((rows, cols));
        self.shapes.len() - 1
    }

    pub fn unknown_count(&self) -> usize {
        self.shapes.iter().zip(&self.offsets).last().map_or(0, |((r, c), o)| o + r * c)
    }

    /// Adds `Σ left·X·right = rhs` (`rhs = 0` when absent).
    pub fn equation(&mut self, rows: usize, cols: usize, terms: Vec<Term>, rhs: Option<Matrix>) {
        for t in &terms {
            let (r, c) = self.shapes[t.unknown];
            assert_eq!(t.left.shape(), (rows, r));
            assert_eq!(t.right.shape(), (c, cols));
        }
        if let Some(b) = &rhs {
            assert_eq!(b.shape(), (rows, cols));
        }
        self.equations.push(Equation { rows, cols, terms, rhs });
    }

    fn equation_count(&self) -> usize {
        self.equations.iter().map(|e| e.rows * e.cols).sum()
    }

    /// The coefficient matrix: `A·X·B` contributes `A[i][r]·B[c][j]` at
    /// row `(i, j)` and column `(r, c)`.
    pub fn coefficients(&self) -> Matrix {
        let ring = &self.ring;
        let mut m = Matrix::zeros(ring, self.equation_count(), self.unknown_count());
        let mut row0 = 0;
        for eq in &self.equations {
            for t in &eq.terms {
                let (r_n, c_n) = self.shapes[t.unknown];
                let off = self.offsets[t.unknown];
                for i in 0..eq.rows {
                    for r in 0..r_n {
                        let a = t.left.get(i, r);
                        if ring.is_zero(a) {
                            continue;
                        }
                        for c in 0..c_n {
                            for j in 0..eq.cols {
                                let b = t.right.get(c, j);
                                if ring.is_zero(b) {
                                    continue;
                                }
                                let (row, col) = (row0 + i * eq.cols + j, off + r * c_n + c);
                                let v = ring.add(m.get(row, col), &ring.mul(a, b));
                                m.set(row, col, v);
                            }
                        }
                    }
                }
            }
            row0 += eq.rows * eq.cols;
        }
        m
    }

    /// Right-hand side as a column vector.
    pub fn rhs(&self) -> Matrix {
        let mut entries: Vec<Elem> = Vec::with_capacity(self.equation_count());
        for eq in &self.equations {
            match &eq.rhs {
                Some(b) => entries.extend(b.entries().iter().cloned()),
                None => entries.extend(std::iter::repeat(self.ring.zero()).take(eq.rows * eq.cols)),
            }
        }
        Matrix::from_elems(&self.ring, entries.len(), 1, entries).expect("sizes agree")
    }

    /// Splits a solution column into the unknown matrices.
    pub fn unpack(&self, x: &Matrix, col: usize) -> Vec<Matrix> {
        self.shapes
            .iter()
            .zip(&self.offsets)
            .map(|(&(r, c), &o)| Matrix::from_fn(&self.ring, r, c, |i, j| x.get(o + i * c + j, col).clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::solve;

    #[test]
    fn sylvester_equation() {
        // A·X + X·B = C with a unique solution
        let q = Ring::Rationals;
        let a = Matrix::from_i64(&q, 2, 2, &[1, 1, 0, 1]);
        let b = Matrix::from_i64(&q, 2, 2, &[2, 0, 1, 3]);
        let x0 = Matrix::from_i64(&q, 2, 2, &[1, -1, 2, 0]);
        let c = &(&a * &x0) + &(&x0 * &b);
        let mut sys = LinearSystem::new(&q);
        let x = sys.unknown(2, 2);
        sys.equation(
            2,
            2,
            vec![
                Term { unknown: x, left: a.clone(), right: Matrix::identity(&q, 2) },
                Term { unknown: x, left: Matrix::identity(&q, 2), right: b.clone() },
            ],
            Some(c),
        );
        let sol = solve(&sys.coefficients(), &sys.rhs()).unwrap().unwrap();
        assert_eq!(sys.unpack(&sol, 0), vec![x0]);
    }
}
