//! Dense exact linear algebra over cyclotomic fields.
//!
//! Small matrices only (the largest in this crate are (2n+1)×(2n+1) action
//! matrices and character tables), so plain Gaussian elimination with exact
//! division is the right tool.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloElem;

/// A row-major matrix of cyclotomic field elements.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CycloElem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![CycloElem::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CycloElem::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycloElem>>) -> Matrix {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged matrix rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &CycloElem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: CycloElem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn pow(&self, exp: u64) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        let mut cur = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&cur);
            }
            e >>= 1;
            if e > 0 {
                cur = cur.mul(&cur);
            }
        }
        acc
    }

    pub fn trace(&self) -> CycloElem {
        assert_eq!(self.rows, self.cols);
        let mut t = CycloElem::zero();
        for i in 0..self.rows {
            t = t.add(self.get(i, i));
        }
        t
    }

    pub fn is_identity(&self) -> bool {
        self == &Matrix::identity(self.rows)
    }

    /// The submatrix picking `indices` for both rows and columns.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(indices.len(), indices.len());
        for (i, &r) in indices.iter().enumerate() {
            for (j, &c) in indices.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn scale(&self, s: &CycloElem) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.mul(s)).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Solve A·x = b for square A by Gaussian elimination. `None` when singular.
pub fn solve_square(a: &Matrix, b: &[CycloElem]) -> Option<Vec<CycloElem>> {
    assert_eq!(a.n_rows(), a.n_cols());
    assert_eq!(a.n_rows(), b.len());
    let n = a.n_rows();
    let mut aug: Vec<Vec<CycloElem>> = (0..n)
        .map(|i| {
            let mut row: Vec<CycloElem> = (0..n).map(|j| a.get(i, j).clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inverse()?;
        for j in col..=n {
            aug[col][j] = aug[col][j].mul(&inv);
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for j in col..=n {
                let upd = aug[r][j].sub(&factor.mul(&aug[col][j]));
                aug[r][j] = upd;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n].clone()).collect())
}

/// Matrix inverse by elimination against the identity. `None` when singular.
pub fn invert(a: &Matrix) -> Option<Matrix> {
    assert_eq!(a.n_rows(), a.n_cols());
    let n = a.n_rows();
    let mut aug: Vec<Vec<CycloElem>> = (0..n)
        .map(|i| {
            let mut row: Vec<CycloElem> = (0..n).map(|j| a.get(i, j).clone()).collect();
            for j in 0..n {
                row.push(if i == j {
                    CycloElem::one()
                } else {
                    CycloElem::zero()
                });
            }
            row
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].inverse()?;
        for j in col..2 * n {
            aug[col][j] = aug[col][j].mul(&inv);
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for j in col..2 * n {
                let upd = aug[r][j].sub(&factor.mul(&aug[col][j]));
                aug[r][j] = upd;
            }
        }
    }
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, aug[i][n + j].clone());
        }
    }
    Some(out)
}

/// A basis of the nullspace of `a` (not necessarily square).
pub fn nullspace(a: &Matrix) -> Vec<Vec<CycloElem>> {
    let rows = a.n_rows();
    let cols = a.n_cols();
    let mut m: Vec<Vec<CycloElem>> = (0..rows)
        .map(|i| (0..cols).map(|j| a.get(i, j).clone()).collect())
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(rank, p);
        let inv = m[rank][col].inverse().unwrap();
        for j in col..cols {
            m[rank][j] = m[rank][j].mul(&inv);
        }
        for r in 0..rows {
            if r == rank || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for j in col..cols {
                let upd = m[r][j].sub(&factor.mul(&m[rank][j]));
                m[r][j] = upd;
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![CycloElem::zero(); cols];
        v[free] = CycloElem::one();
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m[r][free].neg();
        }
        basis.push(v);
    }
    basis
}
