//! Dense matrices over a [`Coeff`] field.

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::coeff::Coeff;

#[derive(Clone, PartialEq)]
pub struct Matrix<C: Coeff> {
    ctx: C::Ctx,
    rows: usize,
    cols: usize,
    data: Vec<C>,
}

impl<C: Coeff> Matrix<C> {
    pub fn zeros(ctx: &C::Ctx, rows: usize, cols: usize) -> Self {
        Matrix { ctx: ctx.clone(), rows, cols, data: vec![C::zero(ctx); rows * cols] }
    }

    pub fn identity(ctx: &C::Ctx, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.set(i, i, C::one(ctx));
        }
        m
    }

    pub fn from_rows(ctx: &C::Ctx, rows: Vec<Vec<C>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix { ctx: ctx.clone(), rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(ctx: &C::Ctx, d: &[C]) -> Self {
        let mut m = Self::zeros(ctx, d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn ctx(&self) -> &C::Ctx {
        &self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &C {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: C) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[C] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<C>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.ctx, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(&self.ctx, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j).plus(&a.times(rhs.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C]) -> Vec<C> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(C::zero(&self.ctx), |acc, (a, b)| acc.plus(&a.times(b))))
            .collect()
    }

    pub fn scale(&self, c: &C) -> Self {
        Matrix { ctx: self.ctx.clone(), rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.times(c)).collect() }
    }

    /// Row echelon form in place; returns the pivot columns and the sign of
    /// the row permutation.
    fn echelon(&mut self) -> (Vec<usize>, bool) {
        let mut pivots = Vec::new();
        let mut odd = false;
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else { continue };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
                odd = !odd;
            }
            let inv = self.get(r, c).inverse().expect("pivot is nonzero");
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = self.get(i, j).minus(&f.times(self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, odd)
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().0.len()
    }

    pub fn det(&self) -> C {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let (pivots, odd) = m.echelon();
        if pivots.len() < self.rows {
            return C::zero(&self.ctx);
        }
        let mut d = C::one(&self.ctx);
        for i in 0..self.rows {
            d = d.times(m.get(i, i));
        }
        if odd {
            d.negated()
        } else {
            d
        }
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(&self.ctx, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, C::one(&self.ctx));
        }
        let (pivots, _) = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = Self::zeros(&self.ctx, n, n);
        for i in 0..n {
            let inv = aug.get(i, i).inverse()?;
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j).times(&inv));
            }
        }
        Some(out)
    }

    /// A solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[C]) -> Option<Vec<C>> {
        assert_eq!(b.len(), self.rows, "dimension mismatch");
        let mut aug = Self::zeros(&self.ctx, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (pivots, _) = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![C::zero(&self.ctx); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols).times(&aug.get(r, c).inverse()?);
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<C>> {
        let mut m = self.clone();
        let (pivots, _) = m.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![C::zero(&self.ctx); self.cols];
                v[f] = C::one(&self.ctx);
                for (r, &c) in pivots.iter().enumerate() {
                    let inv = m.get(r, c).inverse().expect("pivot is nonzero");
                    v[c] = m.get(r, f).times(&inv).negated();
                }
                v
            })
            .collect()
    }
}

impl<C: Coeff> Serialize for Matrix<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

impl<C: Coeff> fmt::Debug for Matrix<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
