//! Dense matrices over `F_q` with deterministic row reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{Elem, Field};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Elem::ZERO; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<Elem>]) -> Matrix {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Matrix { rows: rows.len(), cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Elem::ZERO, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Brings the matrix to reduced row echelon form in place and returns the
    /// pivot columns. Pivots are taken column by column from the left, using
    /// the topmost eligible row.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..self.cols {
            if top == self.rows {
                break;
            }
            let Some(pr) = (top..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(top, pr);
            let inv = field.inv(self.get(top, col)).expect("pivot is nonzero");
            for j in col..self.cols {
                let v = field.mul(self.get(top, j), inv);
                self.set(top, j, v);
            }
            for i in 0..self.rows {
                if i == top {
                    continue;
                }
                let factor = self.get(i, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(top, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            top += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        // forward elimination only; cheaper than a full rref
        let mut m = self.clone();
        let mut top = 0;
        for col in 0..m.cols {
            if top == m.rows {
                break;
            }
            let Some(pr) = (top..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(top, pr);
            let inv = field.inv(m.get(top, col)).expect("pivot is nonzero");
            for i in top + 1..m.rows {
                let factor = field.mul(m.get(i, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = field.sub(m.get(i, j), field.mul(factor, m.get(top, j)));
                    m.set(i, j, v);
                }
            }
            top += 1;
        }
        top
    }

    /// Basis of the right kernel read off the reduced echelon form: one
    /// vector per free column (ascending), with a one in that column.
    pub fn kernel_basis(&self, field: &Field) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[f] = Elem::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(m.get(row, f));
                }
                v
            })
            .collect()
    }
}

/// Rank of a family of vectors of equal length.
pub fn span_rank(field: &Field, vectors: &[Vec<Elem>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors).rank(field)
}

/// Whether two families span the same subspace.
pub fn span_equal(field: &Field, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    let ra = span_rank(field, a);
    let rb = span_rank(field, b);
    if ra != rb {
        return false;
    }
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    span_rank(field, &both) == ra
}

/// Whether `v` lies in the span of `family`.
pub fn in_span(field: &Field, family: &[Vec<Elem>], v: &[Elem]) -> bool {
    let mut both = family.to_vec();
    both.push(v.to_vec());
    span_rank(field, &both) == span_rank(field, family)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(field: &Field, rows: &[&[u32]]) -> Matrix {
        Matrix::from_rows(&rows.iter().map(|r| r.iter().map(|&c| field.elem(c).unwrap()).collect()).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_kernel() {
        let f3 = Field::prime(3).unwrap();
        let m = mat(&f3, &[&[1, 2, 0], &[2, 1, 0], &[0, 0, 1]]);
        assert_eq!(m.rank(&f3), 2);
        let k = m.kernel_basis(&f3);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&f3, &k[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_basis_is_deterministic_rref_form() {
        let f2 = Field::prime(2).unwrap();
        let m = mat(&f2, &[&[1, 0, 1]]);
        let k = m.kernel_basis(&f2);
        let codes: Vec<Vec<u32>> = k.iter().map(|v| v.iter().map(|e| e.code()).collect()).collect();
        assert_eq!(codes, [vec![0, 1, 0], vec![1, 0, 1]]);
    }

    #[test]
    fn span_comparisons() {
        let f2 = Field::prime(2).unwrap();
        let e = |c: &[u32]| c.iter().map(|&x| f2.elem(x).unwrap()).collect::<Vec<_>>();
        let a = [e(&[1, 1, 0]), e(&[0, 1, 1])];
        let b = [e(&[1, 0, 1]), e(&[1, 1, 0])];
        assert!(span_equal(&f2, &a, &b));
        assert!(!span_equal(&f2, &a, &[e(&[1, 0, 0])]));
        assert!(in_span(&f2, &a, &e(&[1, 0, 1])));
        assert!(!in_span(&f2, &a, &e(&[1, 0, 0])));
    }
}
