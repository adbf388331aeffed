//! Dense matrices over the coefficient field `k` and the handful of
//! subspace operations the operational semantics needs: reduced row echelon
//! form, kernels, affine solving, and projections of solution spaces.
//!
//! Subspaces are represented by basis rows in reduced echelon form, so two
//! equal subspaces have identical representations.

use crate::ring::field::Field;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMat<F: Field> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> FieldMat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMat {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        for row in &rows {
            assert_eq!(row.len(), c, "ragged rows");
        }
        FieldMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Zero-row matrix with a fixed column count (an empty constraint set or
    /// an empty basis over `cols` coordinates).
    pub fn empty(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<F>) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        FieldMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn take_cols(&self, range: std::ops::Range<usize>) -> Self {
        assert!(range.end <= self.cols);
        let mut out = Self::zeros(self.rows, range.len());
        for i in 0..self.rows {
            for (jj, j) in range.clone().enumerate() {
                out.set(i, jj, self.at(i, j).clone());
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(pivot_row) = (pr..self.rows).find(|&r| !self.at(r, pc).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, pivot_row);
            let inv = self.at(pr, pc).inv().expect("nonzero pivot");
            for c in pc..self.cols {
                let v = self.at(pr, c).mul(&inv);
                self.set(pr, c, v);
            }
            for r in 0..self.rows {
                if r == pr || self.at(r, pc).is_zero() {
                    continue;
                }
                let factor = self.at(r, pc).clone();
                for c in pc..self.cols {
                    let v = self.at(r, c).sub(&factor.mul(self.at(pr, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    /// Drop all-zero rows (used after `rref` to compact a basis).
    pub fn drop_zero_rows(&mut self) {
        let cols = self.cols;
        let mut keep = Vec::new();
        for i in 0..self.rows {
            if self.row(i).iter().any(|v| !v.is_zero()) {
                keep.extend_from_slice(&self.data[i * cols..(i + 1) * cols]);
            }
        }
        self.rows = keep.len() / cols.max(1);
        if cols == 0 {
            self.rows = 0;
        }
        self.data = keep;
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis rows of `{x | self * x = 0}` in reduced echelon form.
    pub fn kernel_basis_rows(&self) -> FieldMat<F> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, F::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(k, p, m.at(i, f).neg());
            }
        }
        let mut reduced = out;
        reduced.rref();
        reduced.drop_zero_rows();
        reduced
    }

    /// Particular solution of `self * x = rhs` with free variables set to
    /// zero; `None` when inconsistent.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows, "rhs length mismatch");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, b) in rhs.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b.clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // a row [0 ... 0 | 1]
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = aug.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Basis (rows) of the projection of `{x | self * x = 0}` onto the
    /// coordinate set `keep`, in order.
    pub fn project_kernel(&self, keep: &[usize]) -> FieldMat<F> {
        let kernel = self.kernel_basis_rows();
        let mut proj = Self::zeros(kernel.rows(), keep.len());
        for i in 0..kernel.rows() {
            for (jj, &j) in keep.iter().enumerate() {
                proj.set(i, jj, kernel.at(i, j).clone());
            }
        }
        proj.rref();
        proj.drop_zero_rows();
        proj
    }

    /// Existentially eliminate the given columns from a homogeneous
    /// constraint system: the kernel of the result (over the remaining
    /// columns, in order) is the projection of the kernel of `self`.
    ///
    /// Elimination columns are pivoted first; rows left with no support on
    /// them are exactly the constraints the projection inherits.
    pub fn eliminate_columns(&self, elim: &[usize]) -> FieldMat<F> {
        let elim_set: std::collections::HashSet<usize> = elim.iter().copied().collect();
        let keep: Vec<usize> = (0..self.cols).filter(|c| !elim_set.contains(c)).collect();
        let mut work = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for (jj, &j) in elim.iter().chain(keep.iter()).enumerate() {
                work.set(i, jj, self.at(i, j).clone());
            }
        }
        work.rref();
        let ne = elim.len();
        let mut out = Self::zeros(0, keep.len());
        for i in 0..work.rows {
            if (0..ne).all(|j| work.at(i, j).is_zero()) {
                let row: Vec<F> = (ne..self.cols).map(|j| work.at(i, j).clone()).collect();
                if row.iter().any(|v| !v.is_zero()) {
                    out.push_row(row);
                }
            }
        }
        out
    }

    /// Whether the row space of `self` is contained in the row space of
    /// `other` (both are bases of subspaces of the same ambient space).
    pub fn rowspace_contained_in(&self, other: &Self) -> bool {
        assert_eq!(self.cols, other.cols, "ambient dimension mismatch");
        let mut reducer = other.clone();
        let pivots = reducer.rref();
        for i in 0..self.rows {
            let mut row: Vec<F> = self.row(i).to_vec();
            for (k, &p) in pivots.iter().enumerate() {
                if row[p].is_zero() {
                    continue;
                }
                let factor = row[p].clone();
                for (c, cell) in row.iter_mut().enumerate() {
                    *cell = cell.sub(&factor.mul(reducer.at(k, c)));
                }
            }
            if row.iter().any(|v| !v.is_zero()) {
                return false;
            }
        }
        true
    }

    pub fn rowspace_eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.rowspace_contained_in(other)
    }

    /// Evaluate one constraint row against a concrete vector.
    pub fn row_dot(&self, i: usize, x: &[F]) -> F {
        assert_eq!(x.len(), self.cols);
        let mut acc = F::zero();
        for (j, v) in x.iter().enumerate() {
            let c = self.at(i, j);
            if !c.is_zero() && !v.is_zero() {
                acc = acc.add(&c.mul(v));
            }
        }
        acc
    }

    /// Whether `x` satisfies every constraint row.
    pub fn annihilates(&self, x: &[F]) -> bool {
        (0..self.rows).all(|i| self.row_dot(i, x).is_zero())
    }
}
