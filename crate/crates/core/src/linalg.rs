//! Dense Gaussian elimination over F_{q^m}.
//!
//! A matrix whose entries all lie in F_q stays in F_q under elimination, so
//! the same routines compute ranks and null spaces over the subfield.
//! Pivoting always takes the first row with a nonzero entry in the current
//! column, which makes the reduced echelon form canonical.

use crate::ff::{Fe, FieldTower};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fe>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Fe::ZERO; rows * cols],
        }
    }

    /// Builds a matrix from rows of equal length `cols`.
    pub fn from_rows(rows: Vec<Vec<Fe>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        Matrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Fe]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn entries(&self) -> &[Fe] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let rows = self
            .row_iter()
            .map(|r| cols.iter().map(|&c| r[c]).collect())
            .collect();
        Matrix::from_rows(rows, cols.len())
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: &FieldTower) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, piv);
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &FieldTower) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis (as rows) of `{ v : A v = 0 }`.
    pub fn nullspace(&self, f: &FieldTower) -> Matrix {
        let mut a = self.clone();
        let pivots = a.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Fe::ZERO; self.cols];
                v[fc] = Fe::ONE;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(a.get(i, fc));
                }
                v
            })
            .collect();
        Matrix::from_rows(rows, self.cols)
    }

    /// Some solution of `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Fe], f: &FieldTower) -> Option<Vec<Fe>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let pivots = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Fe::ZERO; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Some(x)
    }

    /// `A v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Fe], f: &FieldTower) -> Vec<Fe> {
        assert_eq!(v.len(), self.cols);
        self.row_iter().map(|r| dot(r, v, f)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub fn dot(a: &[Fe], b: &[Fe], f: &FieldTower) -> Fe {
    a.iter()
        .zip(b)
        .fold(Fe::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// A subspace of `F^n` stored as the nonzero rows of its reduced row
/// echelon form, so equal subspaces have equal representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceFq {
    basis: Matrix,
}

impl SubspaceFq {
    pub fn zero(ambient: usize) -> Self {
        SubspaceFq {
            basis: Matrix::zeros(0, ambient),
        }
    }

    /// Row space of `gens`.
    pub fn span(gens: &Matrix, f: &FieldTower) -> Self {
        let mut m = gens.clone();
        let rank = m.rref(f).len();
        let rows = (0..rank).map(|i| m.row(i).to_vec()).collect();
        SubspaceFq {
            basis: Matrix::from_rows(rows, gens.cols()),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn contains(&self, v: &[Fe], f: &FieldTower) -> bool {
        let mut rows: Vec<Vec<Fe>> = self.basis.row_iter().map(<[Fe]>::to_vec).collect();
        rows.push(v.to_vec());
        Matrix::from_rows(rows, self.ambient_dim()).rank(f) == self.dim()
    }

    pub fn is_subspace_of(&self, other: &SubspaceFq, f: &FieldTower) -> bool {
        self.ambient_dim() == other.ambient_dim()
            && self.basis.row_iter().all(|r| other.contains(r, f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::build_tower;

    fn bits(rows: &[&str]) -> Matrix {
        let cols = rows[0].len();
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.chars().map(|c| Fe((c == '1') as u32)).collect())
                .collect(),
            cols,
        )
    }

    #[test]
    fn hand_rank_of_trace_rows() {
        let f = build_tower(2, 1, 2).unwrap();
        let t = bits(&["0000", "1111", "0011", "0110", "0011", "0101"]);
        assert_eq!(t.rank(&f), 3);
        let ns = t.nullspace(&f);
        assert_eq!(ns.rows(), 1);
        assert!(t.mul_vec(ns.row(0), &f).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn nullspace_and_solve() {
        let f = build_tower(3, 1, 2).unwrap();
        let a = Matrix::from_rows(
            vec![vec![Fe(1), Fe(2), Fe(3)], vec![Fe(2), Fe(4), Fe(6)]],
            3,
        );
        let ns = a.nullspace(&f);
        for v in ns.row_iter() {
            assert!(a.mul_vec(v, &f).iter().all(|x| x.is_zero()));
        }
        assert_eq!(ns.rows() + a.rank(&f), 3);
        let x = vec![Fe(5), Fe(1), Fe(8)];
        let b = a.mul_vec(&x, &f);
        let sol = a.solve(&b, &f).unwrap();
        assert_eq!(a.mul_vec(&sol, &f), b);
        let id = Matrix::from_rows(vec![vec![Fe(1), Fe(0)], vec![Fe(1), Fe(0)]], 2);
        assert!(id.solve(&[Fe(1), Fe(2)], &f).is_none());
    }

    #[test]
    fn canonical_form_is_independent_of_generators() {
        let f = build_tower(2, 1, 3).unwrap();
        let a = bits(&["110", "011"]);
        let b = bits(&["101", "110", "011"]);
        assert_eq!(SubspaceFq::span(&a, &f), SubspaceFq::span(&b, &f));
        let c = bits(&["100"]);
        assert!(!SubspaceFq::span(&c, &f).is_subspace_of(&SubspaceFq::span(&a, &f), &f));
        assert!(SubspaceFq::span(&bits(&["101"]), &f).is_subspace_of(&SubspaceFq::span(&a, &f), &f));
    }
}
