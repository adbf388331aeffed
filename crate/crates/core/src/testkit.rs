//! Deterministic generators and brute-force oracles for randomized tests.
//!
//! Everything here is driven by a self-contained splitmix64 generator so test
//! runs and golden expectations are reproducible forever, independent of any
//! external RNG crate. The exhaustive window oracle enumerates executions of
//! the per-tick relation directly over a finite field and never touches the
//! linear-algebra code paths it is used to check.

use std::collections::{BTreeSet, HashMap};

use crate::diagram::{typecheck, Generator, ScalarLit, Term, TypedTerm};
use crate::linalg::PolyMatrix;
use crate::opsem::fmat::FieldMat;
use crate::opsem::StepRelation;
use crate::ring::field::{EnumerableField, Field};
use crate::ring::poly::LaurentPoly;

/// splitmix64: tiny, seedable, stable.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, bound)`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        assert!(bound > 0);
        (self.next_u64() % bound as u64) as usize
    }

    pub fn range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as usize) as i64
    }

    pub fn chance(&mut self, num: u32, den: u32) -> bool {
        (self.next_u64() % den as u64) < num as u64
    }
}

/// Random polynomial with exponents in `[min_exp, max_exp]` and small integer
/// coefficients; may be zero.
pub fn random_poly<F: Field>(rng: &mut Rng, min_exp: i64, max_exp: i64) -> LaurentPoly<F> {
    let mut p = LaurentPoly::zero();
    for e in min_exp..=max_exp {
        if rng.chance(1, 2) {
            let c = rng.range_i64(-3, 3);
            p = p.add(&LaurentPoly::monomial(e, F::from_int(c)));
        }
    }
    p
}

pub fn random_nonzero_poly<F: Field>(rng: &mut Rng, min_exp: i64, max_exp: i64) -> LaurentPoly<F> {
    loop {
        let p = random_poly(rng, min_exp, max_exp);
        if !p.is_zero() {
            return p;
        }
    }
}

pub fn random_matrix<F: Field>(
    rng: &mut Rng,
    rows: usize,
    cols: usize,
    min_exp: i64,
    max_exp: i64,
) -> PolyMatrix<F> {
    PolyMatrix::from_fn(rows, cols, |_, _| random_poly(rng, min_exp, max_exp))
}

/// Random unimodular matrix with its inverse: a short product of elementary
/// row operations applied to the identity, with the inverse operations
/// accumulated on the other side.
pub fn random_unimodular_with_inverse<F: Field>(
    rng: &mut Rng,
    n: usize,
) -> (PolyMatrix<F>, PolyMatrix<F>) {
    let mut m = PolyMatrix::<F>::identity(n);
    let mut m_inv = PolyMatrix::<F>::identity(n);
    if n == 0 {
        return (m, m_inv);
    }
    for _ in 0..(2 * n + 2) {
        match rng.below(3) {
            0 => {
                let i = rng.below(n);
                let j = rng.below(n);
                if i != j {
                    for c in 0..n {
                        let a = m.at(i, c).clone();
                        let b = m.at(j, c).clone();
                        *m.at_mut(i, c) = b;
                        *m.at_mut(j, c) = a;
                        let a = m_inv.at(c, i).clone();
                        let b = m_inv.at(c, j).clone();
                        *m_inv.at_mut(c, i) = b;
                        *m_inv.at_mut(c, j) = a;
                    }
                }
            }
            1 => {
                // scale a row by a unit a*s^k, a column of the inverse by its
                // reciprocal
                let i = rng.below(n);
                let unit = LaurentPoly::monomial(
                    rng.range_i64(-1, 1),
                    F::from_int(if rng.chance(1, 2) { 1 } else { -1 }),
                );
                let unit_inv = unit.unit_inv();
                for c in 0..n {
                    let v = m.at(i, c).mul(&unit);
                    *m.at_mut(i, c) = v;
                    let v = m_inv.at(c, i).mul(&unit_inv);
                    *m_inv.at_mut(c, i) = v;
                }
            }
            _ => {
                // row_i += p * row_j, compensated by col_j -= p * col_i
                let i = rng.below(n);
                let j = rng.below(n);
                if i != j {
                    let p = random_poly::<F>(rng, -1, 1);
                    for c in 0..n {
                        let v = m.at(i, c).add(&p.mul(m.at(j, c)));
                        *m.at_mut(i, c) = v;
                        let v = m_inv.at(c, j).sub(&p.mul(m_inv.at(c, i)));
                        *m_inv.at_mut(c, j) = v;
                    }
                }
            }
        }
    }
    (m, m_inv)
}

pub fn random_unimodular<F: Field>(rng: &mut Rng, n: usize) -> PolyMatrix<F> {
    random_unimodular_with_inverse(rng, n).0
}

fn random_atom(rng: &mut Rng, arity: usize) -> Term {
    let scalar = |rng: &mut Rng| ScalarLit::int(rng.range_i64(-2, 3));
    match arity {
        0 => match rng.below(3) {
            0 => Term::Gen(Generator::Zero),
            1 => Term::Gen(Generator::CoDiscard),
            _ => Term::Id(0),
        },
        // delays weighted up so a healthy share of terms carry state
        1 => match rng.below(13) {
            0 => Term::Gen(Generator::Copy),
            1 => Term::Gen(Generator::Discard),
            2 | 3 | 4 => Term::Gen(Generator::Delay),
            5 | 6 | 7 => Term::Gen(Generator::CoDelay),
            8 => Term::Gen(Generator::Scalar(scalar(rng))),
            9 => Term::Gen(Generator::CoScalar(scalar(rng))),
            10 => Term::Gen(Generator::CoAdd),
            11 => Term::Gen(Generator::CoZero),
            _ => Term::Id(1),
        },
        2 => match rng.below(4) {
            0 => Term::Gen(Generator::Add),
            1 => Term::Gen(Generator::CoCopy),
            2 => Term::Twist,
            _ => Term::Id(2),
        },
        n => Term::Id(n),
    }
}

fn random_term_with_arity(rng: &mut Rng, arity: usize, depth: usize) -> Term {
    if depth == 0 {
        return random_atom(rng, arity);
    }
    match rng.below(4) {
        0 => random_atom(rng, arity),
        1 => {
            // sequential composite
            let left = random_term_with_arity(rng, arity, depth - 1);
            let mid = typecheck(&left).expect("generated term is well-typed").coarity;
            let right = random_term_with_arity(rng, mid, depth - 1);
            Term::seq(left, right)
        }
        _ => {
            // tensor composite
            let top_arity = rng.below(arity + 1);
            let top = random_term_with_arity(rng, top_arity, depth - 1);
            let bottom = random_term_with_arity(rng, arity - top_arity, depth - 1);
            Term::tensor(top, bottom)
        }
    }
}

/// Random well-typed term with bounded boundaries and register count.
/// Scalar parameters are small integers, valid in every supported field.
pub fn random_term(
    rng: &mut Rng,
    max_boundary: usize,
    max_registers: usize,
    depth: usize,
) -> TypedTerm {
    loop {
        let arity = rng.below(max_boundary + 1);
        let t = random_term_with_arity(rng, arity, depth);
        let typed = typecheck(&t).expect("generated term is well-typed");
        if typed.coarity <= max_boundary && typed.registers.len() <= max_registers {
            return typed;
        }
    }
}

/// Like `random_term` but guaranteed to hold state (at least one register),
/// for tests that specifically exercise the dynamics.
pub fn random_stateful_term(
    rng: &mut Rng,
    max_boundary: usize,
    max_registers: usize,
    depth: usize,
) -> TypedTerm {
    loop {
        let t = random_term(rng, max_boundary, max_registers, depth);
        if !t.registers.is_empty() {
            return t;
        }
    }
}

/// All vectors of the row space of `basis`, encoded by element index, sorted.
/// Guarded to small spaces.
pub fn enumerate_rowspace<F: EnumerableField>(basis: &FieldMat<F>) -> BTreeSet<Vec<usize>> {
    let elems = F::elements();
    let index: HashMap<F, usize> = elems.iter().cloned().zip(0..).collect();
    let dim = basis.rows();
    assert!(
        elems.len().pow(dim as u32) <= 1 << 22,
        "row space too large to enumerate"
    );
    let mut out = BTreeSet::new();
    let mut coeffs = vec![0usize; dim];
    loop {
        let mut vec = vec![F::zero(); basis.cols()];
        for (i, &ci) in coeffs.iter().enumerate() {
            let c = &elems[ci];
            if c.is_zero() {
                continue;
            }
            for (j, cell) in vec.iter_mut().enumerate() {
                *cell = cell.add(&c.mul(basis.at(i, j)));
            }
        }
        out.insert(vec.iter().map(|x| index[x]).collect());
        // odometer
        let mut i = 0;
        loop {
            if i == dim {
                return out;
            }
            coeffs[i] += 1;
            if coeffs[i] < elems.len() {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Exhaustive window oracle: enumerate every register initialization and
/// every per-tick choice over the finite field, keeping exactly the boundary
/// windows whose edge states extend to infinite runs in both time directions
/// (greatest-fixpoint sets over the finite state space). This is the set of
/// restrictions of biinfinite traces, computed without any linear algebra.
pub fn exhaustive_window_set<F: EnumerableField>(
    rel: &StepRelation<F>,
    len: usize,
) -> BTreeSet<Vec<usize>> {
    let elems = F::elements();
    let index: HashMap<F, usize> = elems.iter().cloned().zip(0..).collect();

    let all_vectors = |k: usize| -> Vec<Vec<F>> {
        let mut out = vec![vec![]];
        for _ in 0..k {
            let mut next = Vec::with_capacity(out.len() * elems.len());
            for v in &out {
                for e in &elems {
                    let mut w = v.clone();
                    w.push(e.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        out
    };

    let states = all_vectors(rel.d);
    let boundaries = all_vectors(rel.m + rel.n);

    // ticks[(r_idx)] = list of (boundary_idx, r_next_idx)
    let state_index: HashMap<Vec<usize>, usize> = states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.iter().map(|x| index[x]).collect(), i))
        .collect();
    let key = |v: &[F]| -> Vec<usize> { v.iter().map(|x| index[x]).collect() };
    let mut ticks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); states.len()];
    for (ri, r) in states.iter().enumerate() {
        for (bi, b) in boundaries.iter().enumerate() {
            for rn in &states {
                if rel.tick_valid(&b[0..rel.m], &b[rel.m..], r, rn) {
                    ticks[ri].push((bi, state_index[&key(rn)]));
                }
            }
        }
    }

    // greatest fixpoints: states extendable forward / backward forever
    let mut fwd_ok: Vec<bool> = (0..states.len()).map(|ri| !ticks[ri].is_empty()).collect();
    loop {
        let next: Vec<bool> = (0..states.len())
            .map(|ri| ticks[ri].iter().any(|&(_, rn)| fwd_ok[rn]))
            .collect();
        if next == fwd_ok {
            break;
        }
        fwd_ok = next;
    }
    let mut back_ok: Vec<bool> = vec![false; states.len()];
    for tick_list in &ticks {
        for &(_, rn) in tick_list {
            back_ok[rn] = true;
        }
    }
    loop {
        let mut next = vec![false; states.len()];
        for (ri, tick_list) in ticks.iter().enumerate() {
            if back_ok[ri] {
                for &(_, rn) in tick_list {
                    next[rn] = true;
                }
            }
        }
        if next == back_ok {
            break;
        }
        back_ok = next;
    }

    // windows: prefixes of boundary indices paired with the reached state
    let mut frontier: BTreeSet<(Vec<usize>, usize)> = (0..states.len())
        .filter(|&ri| back_ok[ri])
        .map(|ri| (Vec::new(), ri))
        .collect();
    for _ in 0..len {
        let mut next = BTreeSet::new();
        for (prefix, ri) in &frontier {
            for &(bi, rn) in &ticks[*ri] {
                let mut p = prefix.clone();
                let b = &boundaries[bi];
                p.extend(b.iter().map(|x| index[x]));
                next.insert((p, rn));
            }
        }
        frontier = next;
    }
    frontier
        .into_iter()
        .filter(|(_, ri)| fwd_ok[*ri])
        .map(|(p, _)| p)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_typed;
    use crate::opsem::{opsem_window_set, step_relation};
    use crate::ring::field::Zp;

    type F2 = Zp<2>;

    #[test]
    fn rng_is_deterministic() {
        let mut a = Rng::new(42);
        let mut b = Rng::new(42);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn random_terms_typecheck_within_bounds() {
        let mut rng = Rng::new(7);
        for _ in 0..50 {
            let t = random_term(&mut rng, 3, 3, 3);
            assert!(t.arity <= 3 && t.coarity <= 3);
            assert!(t.registers.len() <= 3);
        }
    }

    #[test]
    fn random_unimodular_is_invertible() {
        let mut rng = Rng::new(11);
        for n in [1usize, 2, 3] {
            for _ in 0..5 {
                let u = random_unimodular::<crate::ring::field::Rat>(&mut rng, n);
                assert!(crate::linalg::is_invertible(&u));
            }
        }
    }

    #[test]
    fn exhaustive_oracle_matches_subspace_on_wire() {
        let rel = step_relation::<F2>(&parse_typed("id@1").unwrap()).unwrap();
        let len = 3;
        let oracle = exhaustive_window_set(&rel, len);
        let basis = opsem_window_set(&rel, len);
        let points = enumerate_rowspace(&basis);
        assert_eq!(oracle, points);
        assert_eq!(oracle.len(), 1 << len);
    }

    #[test]
    fn exhaustive_oracle_catches_edge_constraints() {
        // delay ; co_zero admits only the all-zero window
        let rel = step_relation::<F2>(&parse_typed("delay ; co_zero").unwrap()).unwrap();
        let oracle = exhaustive_window_set(&rel, 3);
        assert_eq!(oracle.len(), 1);
        let basis = opsem_window_set(&rel, 3);
        assert_eq!(enumerate_rowspace(&basis), oracle);
    }
}
