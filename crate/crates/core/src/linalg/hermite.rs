//! Hermite normal form: the strict canonical representative of a row module.
//!
//! Convention: row-style echelon, pivots are canonical associates, entries
//! above each pivot reduced to the canonical remainder (so strictly smaller
//! span than the pivot, and an ordinary polynomial), zero rows removed. Two
//! matrices have equal Hermite form iff their row modules are equal, which is
//! exactly the behavioral-equality test downstream.

use crate::linalg::matrix::PolyMatrix;
use crate::ring::field::Field;
use crate::ring::poly::LaurentPoly;

/// `t * input = [h; 0]` with `t` unimodular; `h` is the canonical form with
/// zero rows dropped, so `t` carries the padding implicitly.
#[derive(Clone, Debug)]
pub struct HermiteForm<F: Field> {
    pub h: PolyMatrix<F>,
    pub t: PolyMatrix<F>,
    pub t_inv: PolyMatrix<F>,
    pub pivot_cols: Vec<usize>,
}

impl<F: Field> HermiteForm<F> {
    /// `h` padded back to the input's row count.
    pub fn h_padded(&self, input_rows: usize) -> PolyMatrix<F> {
        let pad = PolyMatrix::zeros(input_rows - self.h.rows(), self.h.cols());
        self.h.vstack(&pad)
    }
}

struct RowWorker<F: Field> {
    m: PolyMatrix<F>,
    t: PolyMatrix<F>,
    t_inv: PolyMatrix<F>,
}

impl<F: Field> RowWorker<F> {
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
        let (ia, ib, ic, ie) = (
            e.mul(&det_inv),
            b.neg().mul(&det_inv),
            c.neg().mul(&det_inv),
            a.mul(&det_inv),
        );
        for col in 0..self.m.cols() {
            let x = self.m.at(i, col).clone();
            let y = self.m.at(j, col).clone();
            *self.m.at_mut(i, col) = a.mul(&x).add(&b.mul(&y));
            *self.m.at_mut(j, col) = c.mul(&x).add(&e.mul(&y));
        }
        for col in 0..self.t.cols() {
            let x = self.t.at(i, col).clone();
            let y = self.t.at(j, col).clone();
            *self.t.at_mut(i, col) = a.mul(&x).add(&b.mul(&y));
            *self.t.at_mut(j, col) = c.mul(&x).add(&e.mul(&y));
        }
        // t_inv <- t_inv E^-1 (columns)
        for row in 0..self.t_inv.rows() {
            let x = self.t_inv.at(row, i).clone();
            let y = self.t_inv.at(row, j).clone();
            *self.t_inv.at_mut(row, i) = x.mul(&ia).add(&y.mul(&ic));
            *self.t_inv.at_mut(row, j) = x.mul(&ib).add(&y.mul(&ie));
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

    fn row_axpy(&mut self, i: usize, j: usize, c: &LaurentPoly<F>) {
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        self.row_gl2(i, j, &one, c, &zero, &one);
    }

    fn row_scale(&mut self, i: usize, unit: &LaurentPoly<F>) {
        assert!(unit.is_unit());
        let unit_inv = unit.unit_inv();
        for col in 0..self.m.cols() {
            let x = self.m.at(i, col).mul(unit);
            *self.m.at_mut(i, col) = x;
        }
        for col in 0..self.t.cols() {
            let x = self.t.at(i, col).mul(unit);
            *self.t.at_mut(i, col) = x;
        }
        for row in 0..self.t_inv.rows() {
            let x = self.t_inv.at(row, i).mul(&unit_inv);
            *self.t_inv.at_mut(row, i) = x;
        }
    }

    fn normalize_row_content(&mut self, i: usize) {
        let scale = {
            let coeffs = (0..self.m.cols()).flat_map(|c| self.m.at(i, c).terms().map(|(_, v)| v));
            F::content_scale(coeffs)
        };
        if !scale.is_one() {
            self.row_scale(i, &LaurentPoly::constant(scale));
        }
    }
}

pub fn hermite_normal_form<F: Field>(m: &PolyMatrix<F>) -> HermiteForm<F> {
    let rows = m.rows();
    let mut w = RowWorker {
        m: m.clone(),
        t: PolyMatrix::identity(rows),
        t_inv: PolyMatrix::identity(rows),
    };
    let mut pr = 0;
    let mut pivot_cols = Vec::new();

    for pc in 0..m.cols() {
        // pick the candidate with minimal span (lowest row on ties)
        let mut cand: Option<(u64, usize)> = None;
        for r in pr..rows {
            let p = w.m.at(r, pc);
            if p.is_zero() {
                continue;
            }
            let key = (p.span().unwrap(), r);
            if cand.is_none_or(|b| key < b) {
                cand = Some(key);
            }
        }
        let Some((_, prow)) = cand else {
            continue;
        };
        w.row_swap(pr, prow);

        // remainder-and-swap elimination: quotient multipliers stay small and
        // each swap strictly shrinks the pivot span
        for r in pr + 1..rows {
            while !w.m.at(r, pc).is_zero() {
                let (unit, _) = w.m.at(pr, pc).clone().canonical_associate();
                if !unit.is_one() {
                    w.row_scale(pr, &unit.unit_inv());
                }
                let a = w.m.at(pr, pc).clone();
                let b = w.m.at(r, pc).clone();
                let (q, rem) = b.divrem(&a);
                w.row_axpy(r, pr, &q.neg());
                w.normalize_row_content(r);
                if rem.is_zero() {
                    break;
                }
                w.row_swap(pr, r);
            }
        }

        let (unit, _) = w.m.at(pr, pc).clone().canonical_associate();
        if !unit.is_one() {
            w.row_scale(pr, &unit.unit_inv());
        }

        // canonical remainders above the pivot; touches only columns >= pc
        let pivot = w.m.at(pr, pc).clone();
        for r in 0..pr {
            let e = w.m.at(r, pc).clone();
            if e.is_zero() {
                continue;
            }
            let (q, _) = e.divrem(&pivot);
            if !q.is_zero() {
                w.row_axpy(r, pr, &q.neg());
            }
        }

        pivot_cols.push(pc);
        pr += 1;
        if pr == rows {
            break;
        }
    }

    HermiteForm {
        h: w.m.take_rows(0..pr),
        t: w.t,
        t_inv: w.t_inv,
        pivot_cols,
    }
}

/// Whether two matrices generate the same row module.
pub fn row_module_eq<F: Field>(a: &PolyMatrix<F>, b: &PolyMatrix<F>) -> bool {
    a.cols() == b.cols() && hermite_normal_form(a).h == hermite_normal_form(b).h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::Rat;

    type M = PolyMatrix<Rat>;

    fn check(m: &M) -> HermiteForm<Rat> {
        let hf = hermite_normal_form(m);
        assert_eq!(hf.t.mul(m), hf.h_padded(m.rows()), "T M != [H; 0]");
        assert_eq!(hf.t.mul(&hf.t_inv), M::identity(m.rows()));
        assert_eq!(hf.t_inv.mul(&hf.t), M::identity(m.rows()));
        for (i, &pc) in hf.pivot_cols.iter().enumerate() {
            assert!(hf.h.at(i, pc).is_canonical_associate());
            for r in 0..i {
                let e = hf.h.at(r, pc);
                if !e.is_zero() {
                    assert!(e.span().unwrap() < hf.h.at(i, pc).span().unwrap());
                }
            }
        }
        hf
    }

    #[test]
    fn identity_is_fixed() {
        let hf = check(&M::identity(2));
        assert_eq!(hf.h, M::identity(2));
    }

    #[test]
    fn single_row_pivot_normalized() {
        let hf = check(&M::parse_rows(&[vec!["1 + s", "-1 - s"]]));
        assert_eq!(hf.h, M::parse_rows(&[vec!["1 + s", "-1 - s"]]));
        // a unit multiple has the same form
        let hf2 = check(&M::parse_rows(&[vec!["-s^3 - s^4", "s^3 + s^4"]]));
        assert_eq!(hf2.h, hf.h);
    }

    #[test]
    fn zero_rows_removed() {
        let m = M::parse_rows(&[vec!["1", "s"], vec!["2", "2*s"]]);
        let hf = check(&m);
        assert_eq!(hf.h, M::parse_rows(&[vec!["1", "s"]]));
    }

    #[test]
    fn left_equivalence_invariance() {
        let m = M::parse_rows(&[vec!["s", "1 + s"], vec!["0", "1 + 2*s + s^2"]]);
        let u = M::parse_rows(&[vec!["1", "s^-1"], vec!["0", "-s"]]);
        assert!(crate::linalg::smith::is_invertible(&u));
        let hf1 = check(&m);
        let hf2 = check(&u.mul(&m));
        assert_eq!(hf1.h, hf2.h);
        assert!(row_module_eq(&m, &u.mul(&m)));
        assert!(!row_module_eq(&m, &M::identity(2)));
    }

    #[test]
    fn empty_inputs() {
        let hf = check(&M::zeros(0, 2));
        assert_eq!(hf.h, M::zeros(0, 2));
        let hf = check(&M::zeros(2, 0));
        assert_eq!(hf.h, M::zeros(0, 0));
        let hf = check(&M::zeros(1, 1));
        assert_eq!(hf.h, M::zeros(0, 1));
    }
}
