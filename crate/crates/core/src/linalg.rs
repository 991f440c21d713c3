//! Small dense exact matrices over the ambient field (and Laurent entries for
//! braid checks). Desk scale only; nothing here is tuned.

use crate::scalar::{FieldElement, FieldSpec, LaurentPoly};
use num::rational::BigRational;
use std::sync::Arc;

/// Dense matrix over `Q(theta)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(spec: &Arc<FieldSpec>, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::zero(spec); rows * cols],
        }
    }

    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zero(spec, n, n);
        for i in 0..n {
            m[(i, i)] = FieldElement::one(spec);
        }
        m
    }

    pub fn from_rows(spec: &Arc<FieldSpec>, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zero(spec, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows);
        let spec = self.data[0].spec();
        let mut out = Matrix::zero(spec, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let p = a * b;
                    out[(i, j)] += &p;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = FieldElement;
    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        &mut self.data[i * self.cols + j]
    }
}

/// Dense matrix with Laurent-polynomial entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentMatrix {
    pub n: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(spec: &Arc<FieldSpec>, n: usize) -> Self {
        LaurentMatrix {
            n,
            data: vec![LaurentPoly::zero(spec); n * n],
        }
    }

    pub fn identity(spec: &Arc<FieldSpec>, n: usize) -> Self {
        let mut m = Self::zero(spec, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one(spec);
        }
        m
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.n, rhs.n);
        let spec = self.data[0].spec();
        let mut out = LaurentMatrix::zero(spec, self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let p = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &p;
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }
}

impl std::ops::Index<(usize, usize)> for LaurentMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LaurentMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        &mut self.data[i * self.n + j]
    }
}

/// Row span with exact Gaussian elimination; used for corner dimensions,
/// span membership and nullspaces in the certificate machinery.
pub struct RowSpan {
    spec: Arc<FieldSpec>,
    dim: usize,
    /// echelon rows: each has a unique pivot column with entry 1
    rows: Vec<Vec<FieldElement>>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(spec: &Arc<FieldSpec>, dim: usize) -> Self {
        RowSpan {
            spec: Arc::clone(spec),
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the span; returns the remainder.
    pub fn reduce(&self, mut v: Vec<FieldElement>) -> Vec<FieldElement> {
        for (row, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for j in 0..self.dim {
                let t = &c * &row[j];
                v[j] -= &t;
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<FieldElement>) -> bool {
        self.reduce(v).iter().all(|c| c.is_zero())
    }

    /// Insert a vector; returns true when it increased the rank.
    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for c in v.iter_mut() {
            let t = &*c * &inv;
            *c = t;
        }
        // keep fully reduced (RREF) for deterministic membership tests
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for j in 0..self.dim {
                let t = &c * &v[j];
                row[j] -= &t;
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }
}

/// Nullspace basis of a matrix given as rows, each of length `dim`.
pub fn nullspace(spec: &Arc<FieldSpec>, rows: &[Vec<FieldElement>], dim: usize) -> Vec<Vec<FieldElement>> {
    let mut span = RowSpan::new(spec, dim);
    for r in rows {
        span.insert(r.clone());
    }
    let pivset: std::collections::HashSet<usize> = span.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivset.contains(&free) {
            continue;
        }
        let mut v = vec![FieldElement::zero(spec); dim];
        v[free] = FieldElement::one(spec);
        for (row, &p) in span.rows.iter().zip(span.pivots.iter()) {
            if !row[free].is_zero() {
                v[p] = -&row[free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve `sum_i x_i rows[i] = target` exactly; any one solution.
pub fn solve_combination(
    spec: &Arc<FieldSpec>,
    rows: &[Vec<FieldElement>],
    target: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    let dim = target.len();
    let k = rows.len();
    // augmented columns: one per row, plus target
    let mut mat: Vec<Vec<FieldElement>> = (0..dim)
        .map(|d| {
            let mut r: Vec<FieldElement> = rows.iter().map(|p| p[d].clone()).collect();
            r.push(target[d].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut prow = 0;
    for col in 0..k {
        let Some(sel) = (prow..dim).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(prow, sel);
        let inv = mat[prow][col].inv().unwrap();
        for c in col..=k {
            let t = &mat[prow][c] * &inv;
            mat[prow][c] = t;
        }
        for r in 0..dim {
            if r != prow && !mat[r][col].is_zero() {
                let f = mat[r][col].clone();
                for c in col..=k {
                    let t = &mat[prow][c] * &f;
                    mat[r][c] -= &t;
                }
            }
        }
        pivot_cols.push(col);
        prow += 1;
        if prow == dim {
            break;
        }
    }
    for r in prow..dim {
        if !mat[r][k].is_zero() {
            return None;
        }
    }
    let mut sol = vec![FieldElement::zero(spec); k];
    for (i, &col) in pivot_cols.iter().enumerate() {
        sol[col] = mat[i][k].clone();
    }
    Some(sol)
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}
