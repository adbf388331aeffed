//! Dense matrices over `k[s, s^-1]`.
//!
//! As arrows of the matrix prop, an `n x m` matrix is a morphism `m -> n`;
//! composition is matrix product, the monoidal product is the block diagonal,
//! and symmetries are permutation matrices. Empty shapes (`0 x n`, `n x 0`,
//! `0 x 0`) are first-class: generators of arity or coarity zero live there.

use std::fmt;

use crate::ring::field::Field;
use crate::ring::poly::LaurentPoly;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PolyMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly<F>>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows*cols");
        PolyMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = LaurentPoly::one();
        }
        m
    }

    /// Permutation matrix sending input `j` to output `perm[j]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = Self::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            assert!(i < n, "permutation image out of range");
            *m.at_mut(i, j) = LaurentPoly::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly<F>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        PolyMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly<F>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly<F> {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly<F> {
        assert!(i < self.rows && j < self.cols, "index out of range");
        &mut self.entries[i * self.cols + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn neg(&self) -> Self {
        self.map(|p| p.neg())
    }

    pub fn map(&self, f: impl Fn(&LaurentPoly<F>) -> LaurentPoly<F>) -> Self {
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Matrix product `self * rhs`. Panics on inner-dimension mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.at(i, j).add(&a.mul(b));
                    *out.at_mut(i, j) = cur;
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, p: &LaurentPoly<F>) -> Self {
        self.map(|e| e.mul(p))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Block diagonal `[self 0; 0 rhs]`, the monoidal product of arrows.
    pub fn direct_sum(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(i, j) = self.at(i, j).clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                *out.at_mut(self.rows + i, self.cols + j) = rhs.at(i, j).clone();
            }
        }
        out
    }

    /// `[self | rhs]`. Panics unless row counts agree.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack with differing row counts");
        Self::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                rhs.at(i, j - self.cols).clone()
            }
        })
    }

    /// `[self; rhs]`. Panics unless column counts agree.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack with differing column counts");
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        PolyMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn take_rows(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.rows, "row range out of bounds");
        Self::from_fn(range.len(), self.cols, |i, j| self.at(range.start + i, j).clone())
    }

    pub fn take_cols(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.cols, "column range out of bounds");
        Self::from_fn(self.rows, range.len(), |i, j| self.at(i, range.start + j).clone())
    }

    /// Parse every entry of a nested string array.
    pub fn parse_rows(rows: &[Vec<&str>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| LaurentPoly::parse(s).expect("valid polynomial literal"))
                        .collect()
                })
                .collect(),
        )
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows == 0 || self.cols == 0 {
            return write!(f, "[{}x{}]", self.rows, self.cols);
        }
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
            write!(f, "]")?;
            if i + 1 < self.rows {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}
