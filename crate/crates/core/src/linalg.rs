//! Dense exact linear algebra over a coefficient field.

use crate::polynomial::{Coeff, FieldSpec};

/// Row-major dense matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Coeff>>, cols: usize) -> Matrix {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix");
            data.extend(r);
        }
        Matrix { field, rows: n, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Coeff) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Stack the rows of `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, r * self.cols + k);
                }
            }
            let inv = f.inv(self.get(r, c)).unwrap();
            for k in c..self.cols {
                let v = f.mul(self.get(r, k), &inv);
                self.set(r, k, v);
            }
            let pivot_row: Vec<Coeff> = self.row(r).to_vec();
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let factor = self.get(i, c).clone();
                for k in c..self.cols {
                    if pivot_row[k].is_zero() {
                        continue;
                    }
                    let v = f.sub(self.get(i, k), &f.mul(&factor, &pivot_row[k]));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel `{ v : A v = 0 }`.
    pub fn kernel(&self) -> Vec<Vec<Coeff>> {
        let f = self.field;
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(i, fc));
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[Coeff]) -> Option<Vec<Coeff>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let mut aug = Matrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Coeff]) -> Vec<Coeff> {
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }
}
