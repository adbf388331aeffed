//! Smith normal form over `k[s, s^-1]` with certified transforms, and the
//! constructions built on it: kernels, free cokernels, one-sided solving, and
//! the epi / split-mono factorization.
//!
//! The decomposition `M = V * D * U` carries `V^-1` and `U^-1` along instead
//! of recomputing them: the pushout and pullback formulas downstream consume
//! the inverses directly.

use crate::linalg::matrix::PolyMatrix;
use crate::ring::field::Field;
use crate::ring::poly::LaurentPoly;

/// Certified decomposition `M = V * D * U` with `D` rectangular diagonal,
/// diagonal entries canonical associates forming a divisibility chain
/// `d1 | d2 | ...`, and `V`, `U` unimodular with stored inverses.
#[derive(Clone, Debug)]
pub struct SmithDecomposition<F: Field> {
    pub v: PolyMatrix<F>,
    pub d: PolyMatrix<F>,
    pub u: PolyMatrix<F>,
    pub v_inv: PolyMatrix<F>,
    pub u_inv: PolyMatrix<F>,
    rank: usize,
}

impl<F: Field> SmithDecomposition<F> {
    /// Number of nonzero diagonal entries of `D`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn diagonal(&self) -> Vec<LaurentPoly<F>> {
        (0..self.rank).map(|i| self.d.at(i, i).clone()).collect()
    }

    pub fn reconstruct(&self) -> PolyMatrix<F> {
        self.v.mul(&self.d).mul(&self.u)
    }
}

/// Working state: `d` plus the four transform matrices, kept consistent with
/// `original = v * d * u`, `v * v_inv = I`, `u * u_inv = I` under every
/// elementary operation.
struct Worker<F: Field> {
    d: PolyMatrix<F>,
    v: PolyMatrix<F>,
    v_inv: PolyMatrix<F>,
    u: PolyMatrix<F>,
    u_inv: PolyMatrix<F>,
}

impl<F: Field> Worker<F> {
    fn new(m: &PolyMatrix<F>) -> Self {
        Worker {
            d: m.clone(),
            v: PolyMatrix::identity(m.rows()),
            v_inv: PolyMatrix::identity(m.rows()),
            u: PolyMatrix::identity(m.cols()),
            u_inv: PolyMatrix::identity(m.cols()),
        }
    }

    /// Rows `(i, j)` of `d` become `(a*ri + b*rj, c*ri + e*rj)`; the 2x2 block
    /// must have unit determinant.
    fn row_gl2(
        &mut self,
        i: usize,
        j: usize,
        a: &LaurentPoly<F>,
        b: &LaurentPoly<F>,
        c: &LaurentPoly<F>,
        e: &LaurentPoly<F>,
    ) {
        let det = a.mul(e).sub(&b.mul(c));
        assert!(det.is_unit(), "row operation must be invertible");
        let det_inv = det.unit_inv();
        // inverse block [[e, -b], [-c, a]] / det
        let (ia, ib, ic, ie) = (
            e.mul(&det_inv),
            b.neg().mul(&det_inv),
            c.neg().mul(&det_inv),
            a.mul(&det_inv),
        );
        for col in 0..self.d.cols() {
            let x = self.d.at(i, col).clone();
            let y = self.d.at(j, col).clone();
            *self.d.at_mut(i, col) = a.mul(&x).add(&b.mul(&y));
            *self.d.at_mut(j, col) = c.mul(&x).add(&e.mul(&y));
        }
        // d <- E d  =>  v <- v E^-1 (columns), v_inv <- E v_inv (rows)
        for row in 0..self.v.rows() {
            let x = self.v.at(row, i).clone();
            let y = self.v.at(row, j).clone();
            *self.v.at_mut(row, i) = x.mul(&ia).add(&y.mul(&ic));
            *self.v.at_mut(row, j) = x.mul(&ib).add(&y.mul(&ie));
        }
        for col in 0..self.v_inv.cols() {
            let x = self.v_inv.at(i, col).clone();
            let y = self.v_inv.at(j, col).clone();
            *self.v_inv.at_mut(i, col) = a.mul(&x).add(&b.mul(&y));
            *self.v_inv.at_mut(j, col) = c.mul(&x).add(&e.mul(&y));
        }
    }

    /// Columns `(i, j)` of `d` become `(a*ci + b*cj, c*ci + e*cj)`.
    ///
    /// The elementary matrix acting on the right has block
    /// `[[a, c], [b, e]]` at rows/cols `(i, j)`, so the compensation on `u`
    /// uses the inverse of that block.
    fn col_gl2(
        &mut self,
        i: usize,
        j: usize,
        a: &LaurentPoly<F>,
        b: &LaurentPoly<F>,
        c: &LaurentPoly<F>,
        e: &LaurentPoly<F>,
    ) {
        let det = a.mul(e).sub(&b.mul(c));
        assert!(det.is_unit(), "column operation must be invertible");
        let det_inv = det.unit_inv();
        for row in 0..self.d.rows() {
            let x = self.d.at(row, i).clone();
            let y = self.d.at(row, j).clone();
            *self.d.at_mut(row, i) = x.mul(a).add(&y.mul(b));
            *self.d.at_mut(row, j) = x.mul(c).add(&y.mul(e));
        }
        // d <- d E with E block [[a, c], [b, e]]:
        // u <- E^-1 u (rows), u_inv <- u_inv E (columns)
        let (ia, ib, ic, ie) = (
            e.mul(&det_inv),
            c.neg().mul(&det_inv),
            b.neg().mul(&det_inv),
            a.mul(&det_inv),
        );
        for col in 0..self.u.cols() {
            let x = self.u.at(i, col).clone();
            let y = self.u.at(j, col).clone();
            *self.u.at_mut(i, col) = ia.mul(&x).add(&ib.mul(&y));
            *self.u.at_mut(j, col) = ic.mul(&x).add(&ie.mul(&y));
        }
        for row in 0..self.u_inv.rows() {
            let x = self.u_inv.at(row, i).clone();
            let y = self.u_inv.at(row, j).clone();
            *self.u_inv.at_mut(row, i) = x.mul(a).add(&y.mul(b));
            *self.u_inv.at_mut(row, j) = x.mul(c).add(&y.mul(e));
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        self.row_gl2(i, j, &zero, &one, &one, &zero);
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        self.col_gl2(i, j, &zero, &one, &one, &zero);
    }

    /// Scale row `i` by a unit.
    fn row_scale(&mut self, i: usize, unit: &LaurentPoly<F>) {
        assert!(unit.is_unit());
        let unit_inv = unit.unit_inv();
        for col in 0..self.d.cols() {
            let x = self.d.at(i, col).mul(unit);
            *self.d.at_mut(i, col) = x;
        }
        for row in 0..self.v.rows() {
            let x = self.v.at(row, i).mul(&unit_inv);
            *self.v.at_mut(row, i) = x;
        }
        for col in 0..self.v_inv.cols() {
            let x = self.v_inv.at(i, col).mul(unit);
            *self.v_inv.at_mut(i, col) = x;
        }
    }

    /// Scale column `i` by a unit.
    fn col_scale(&mut self, i: usize, unit: &LaurentPoly<F>) {
        assert!(unit.is_unit());
        let unit_inv = unit.unit_inv();
        for row in 0..self.d.rows() {
            let x = self.d.at(row, i).mul(unit);
            *self.d.at_mut(row, i) = x;
        }
        for col in 0..self.u.cols() {
            let x = self.u.at(i, col).mul(&unit_inv);
            *self.u.at_mut(i, col) = x;
        }
        for row in 0..self.u_inv.rows() {
            let x = self.u_inv.at(row, i).mul(unit);
            *self.u_inv.at_mut(row, i) = x;
        }
    }

    /// row_i <- row_i + c * row_j
    fn row_axpy(&mut self, i: usize, j: usize, c: &LaurentPoly<F>) {
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        self.row_gl2(i, j, &one, c, &zero, &one);
    }

    /// col_i <- col_i + c * col_j
    fn col_axpy(&mut self, i: usize, j: usize, c: &LaurentPoly<F>) {
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        self.col_gl2(i, j, &one, c, &zero, &one);
    }

    /// Rescale a row by a constant so its coefficients have canonical
    /// magnitude; a no-op over finite fields.
    fn normalize_row_content(&mut self, i: usize) {
        let scale = {
            let coeffs = (0..self.d.cols()).flat_map(|c| self.d.at(i, c).terms().map(|(_, v)| v));
            F::content_scale(coeffs)
        };
        if !scale.is_one() {
            self.row_scale(i, &LaurentPoly::constant(scale));
        }
    }

    fn normalize_col_content(&mut self, j: usize) {
        let scale = {
            let coeffs = (0..self.d.rows()).flat_map(|r| self.d.at(r, j).terms().map(|(_, v)| v));
            F::content_scale(coeffs)
        };
        if !scale.is_one() {
            self.col_scale(j, &LaurentPoly::constant(scale));
        }
    }
}

/// Clear row `k` and column `k` outside the pivot by iterated
/// remainder-and-swap steps. Multipliers are division quotients rather than
/// Bezout cofactors, which keeps coefficient growth tame; each swap strictly
/// shrinks the pivot span, so the process terminates with the pivot equal to
/// a gcd of the cleared entries.
fn clear_pivot<F: Field>(w: &mut Worker<F>, k: usize) {
    loop {
        // monic pivots keep the rational arithmetic small
        let (unit, _) = w.d.at(k, k).clone().canonical_associate();
        if !unit.is_one() {
            w.row_scale(k, &unit.unit_inv());
        }
        // column k below the pivot
        for r in k + 1..w.d.rows() {
            while !w.d.at(r, k).is_zero() {
                let a = w.d.at(k, k).clone();
                let b = w.d.at(r, k).clone();
                let (q, rem) = b.divrem(&a);
                w.row_axpy(r, k, &q.neg());
                debug_assert_eq!(w.d.at(r, k), &rem);
                w.normalize_row_content(r);
                if rem.is_zero() {
                    break;
                }
                w.row_swap(k, r);
            }
        }
        // row k right of the pivot
        for c in k + 1..w.d.cols() {
            while !w.d.at(k, c).is_zero() {
                let a = w.d.at(k, k).clone();
                let b = w.d.at(k, c).clone();
                let (q, rem) = b.divrem(&a);
                w.col_axpy(c, k, &q.neg());
                debug_assert_eq!(w.d.at(k, c), &rem);
                w.normalize_col_content(c);
                if rem.is_zero() {
                    break;
                }
                w.col_swap(k, c);
            }
        }
        let col_clear = (k + 1..w.d.rows()).all(|r| w.d.at(r, k).is_zero());
        if col_clear {
            break;
        }
    }
}

/// Pivot choice: minimal span, ties broken by lowest `(row, col)`.
fn find_pivot<F: Field>(d: &PolyMatrix<F>, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(u64, usize, usize)> = None;
    for i in k..d.rows() {
        for j in k..d.cols() {
            let p = d.at(i, j);
            if p.is_zero() {
                continue;
            }
            let key = (p.span().unwrap(), i, j);
            if best.is_none_or(|b| key < b) {
                best = Some(key);
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

/// Smith normal form with certified transforms. Works for every shape,
/// including empty ones.
pub fn smith_normal_form<F: Field>(m: &PolyMatrix<F>) -> SmithDecomposition<F> {
    let mut w = Worker::new(m);
    let limit = m.rows().min(m.cols());
    let mut rank = 0usize;

    for k in 0..limit {
        let Some((pi, pj)) = find_pivot(&w.d, k) else {
            break;
        };
        w.row_swap(k, pi);
        w.col_swap(k, pj);
        clear_pivot(&mut w, k);
        rank += 1;
    }

    // divisibility chain on adjacent diagonal entries
    loop {
        let mut changed = false;
        for i in 0..rank.saturating_sub(1) {
            let a = w.d.at(i, i).clone();
            let b = w.d.at(i + 1, i + 1).clone();
            if b.divisible_by(&a) {
                continue;
            }
            changed = true;
            // [[a,0],[0,b]] -> [[a,b],[0,b]], then re-clear: the new pivot is
            // gcd(a, b) and the opposite corner its complement
            w.row_axpy(i, i + 1, &LaurentPoly::one());
            clear_pivot(&mut w, i);
        }
        if !changed {
            break;
        }
    }

    // canonical-associate diagonal
    for i in 0..rank {
        let p = w.d.at(i, i).clone();
        let (unit, _) = p.canonical_associate();
        if !unit.is_one() {
            w.row_scale(i, &unit.unit_inv());
        }
    }

    debug_assert_eq!(w.v.mul(&w.d).mul(&w.u), *m);
    SmithDecomposition {
        v: w.v,
        d: w.d,
        u: w.u,
        v_inv: w.v_inv,
        u_inv: w.u_inv,
        rank,
    }
}

pub fn rank<F: Field>(m: &PolyMatrix<F>) -> usize {
    smith_normal_form(m).rank()
}

/// Basis of `{x | M x = 0}` as matrix columns: every solution factors
/// uniquely through the result.
pub fn kernel_basis<F: Field>(m: &PolyMatrix<F>) -> PolyMatrix<F> {
    let s = smith_normal_form(m);
    s.u_inv.take_cols(s.rank()..m.cols())
}

/// The universal map `Q` into a free module with `Q M = 0`: any `N` with
/// `N M = 0` factors uniquely as `N = X Q`. Rows of `V^-1` at indices past
/// the rank.
pub fn cokernel_free<F: Field>(m: &PolyMatrix<F>) -> PolyMatrix<F> {
    let s = smith_normal_form(m);
    s.v_inv.take_rows(s.rank()..m.rows())
}

/// Solve `X M = N` exactly over the ring, or `None` when no solution exists.
/// `M` and `N` must share their column count.
pub fn solve_left<F: Field>(m: &PolyMatrix<F>, n: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    assert_eq!(m.cols(), n.cols(), "solve_left needs equal column counts");
    let s = smith_normal_form(m);
    let r = s.rank();
    // X V D U = N  =>  Y D = N U^-1 with Y = X V
    let n_prime = n.mul(&s.u_inv);
    let mut y = PolyMatrix::zeros(n.rows(), m.rows());
    for j in 0..m.cols() {
        if j < r {
            let d_j = s.d.at(j, j);
            for i in 0..n.rows() {
                let (q, rem) = n_prime.at(i, j).divrem(d_j);
                if !rem.is_zero() {
                    return None;
                }
                *y.at_mut(i, j) = q;
            }
        } else {
            for i in 0..n.rows() {
                if !n_prime.at(i, j).is_zero() {
                    return None;
                }
            }
        }
    }
    Some(y.mul(&s.v_inv))
}

/// Solve `M X = N` exactly, or `None`. `M` and `N` must share row counts.
pub fn solve_right<F: Field>(m: &PolyMatrix<F>, n: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    assert_eq!(m.rows(), n.rows(), "solve_right needs equal row counts");
    solve_left(&m.transpose(), &n.transpose()).map(|x| x.transpose())
}

/// Factor `M = S * E` with `E` epi (full row rank) and `S` split mono.
/// `E` has `rank(M)` rows.
pub fn epi_splitmono_factor<F: Field>(m: &PolyMatrix<F>) -> (PolyMatrix<F>, PolyMatrix<F>) {
    let s = smith_normal_form(m);
    let r = s.rank();
    let epi = s.d.mul(&s.u).take_rows(0..r);
    let mono = s.v.take_cols(0..r);
    (epi, mono)
}

/// Left inverse of a split mono, or `None` when `m` is not split mono.
pub fn split_mono_left_inverse<F: Field>(m: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    let s = smith_normal_form(m);
    if !is_split_mono_decomp(&s, m.cols()) {
        return None;
    }
    // M = V D U with D = [D_r; 0], all units: L = U^-1 D_r^-1-padded V^-1
    let r = s.rank();
    let mut dpad = PolyMatrix::zeros(m.cols(), m.rows());
    for i in 0..r {
        *dpad.at_mut(i, i) = s.d.at(i, i).unit_inv();
    }
    Some(s.u_inv.mul(&dpad).mul(&s.v_inv))
}

fn is_split_mono_decomp<F: Field>(s: &SmithDecomposition<F>, cols: usize) -> bool {
    s.rank() == cols && (0..s.rank()).all(|i| s.d.at(i, i).is_unit())
}

/// Epi in the matrix prop: full row rank (torsion cokernel).
pub fn is_epi<F: Field>(m: &PolyMatrix<F>) -> bool {
    rank(m) == m.rows()
}

/// Split mono: full column rank with all invariant factors units, i.e. a
/// ring-valued left inverse exists.
pub fn is_split_mono<F: Field>(m: &PolyMatrix<F>) -> bool {
    let s = smith_normal_form(m);
    is_split_mono_decomp(&s, m.cols())
}

/// Invertible over the ring: square, epi, and split mono.
pub fn is_invertible<F: Field>(m: &PolyMatrix<F>) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let s = smith_normal_form(m);
    s.rank() == m.rows() && is_split_mono_decomp(&s, m.cols())
}

/// Ring inverse of a square unimodular matrix.
pub fn inverse<F: Field>(m: &PolyMatrix<F>) -> Option<PolyMatrix<F>> {
    if !is_invertible(m) {
        return None;
    }
    solve_left(m, &PolyMatrix::identity(m.rows()))
}
