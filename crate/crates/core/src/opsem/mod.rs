//! Operational semantics: per-tick transition relations, finite-window
//! simulation with arbitrary register initializations, and the windowed
//! comparison against the denotational kernel representation.
//!
//! A term compiles to one linear relation over the coefficient field among
//! `(inputs, outputs, registers, next registers)`; running it forward or
//! backward in time uses the same constraints (the mirrored delay rule is the
//! same relation read with old and new state swapped). Window-set
//! computations quantify the registers at the window edges existentially and
//! widen the window by a stabilizing margin, so the boundary signals seen on
//! the window are exactly the restrictions of biinfinite trajectories.

pub mod fmat;

use std::fmt;

use crate::diagram::{Generator, Term, TypedTerm};
use crate::linalg::PolyMatrix;
use crate::ring::field::{Field, FieldError};
use fmat::FieldMat;

/// Per-tick linear relation of a term: the valid tuples are the kernel of
/// `constraint`, whose columns are ordered `(u | v | r | r')` with `m`
/// inputs, `n` outputs, and `d` registers.
#[derive(Clone, Debug)]
pub struct StepRelation<F: Field> {
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub constraint: FieldMat<F>,
}

impl<F: Field> StepRelation<F> {
    pub fn vars(&self) -> usize {
        self.m + self.n + 2 * self.d
    }

    /// Whether a concrete `(u, v, r, r')` tuple is a valid tick.
    pub fn tick_valid(&self, u: &[F], v: &[F], r: &[F], r_next: &[F]) -> bool {
        assert_eq!(u.len(), self.m);
        assert_eq!(v.len(), self.n);
        assert_eq!(r.len(), self.d);
        assert_eq!(r_next.len(), self.d);
        let mut x = Vec::with_capacity(self.vars());
        x.extend_from_slice(u);
        x.extend_from_slice(v);
        x.extend_from_slice(r);
        x.extend_from_slice(r_next);
        self.constraint.annihilates(&x)
    }
}

fn compact<F: Field>(mut m: FieldMat<F>) -> FieldMat<F> {
    m.rref();
    m.drop_zero_rows();
    m
}

fn gen_relation<F: Field>(g: &Generator) -> Result<StepRelation<F>, FieldError> {
    let one = F::one();
    let neg = one.neg();
    // columns: u(m) | v(n) | r(d) | r'(d)
    let rel = |m: usize, n: usize, d: usize, rows: Vec<Vec<F>>| StepRelation {
        m,
        n,
        d,
        constraint: if rows.is_empty() {
            FieldMat::empty(m + n + 2 * d)
        } else {
            FieldMat::from_rows(rows)
        },
    };
    let z = F::zero;
    Ok(match g {
        // v = u1 + u2
        Generator::Add => rel(2, 1, 0, vec![vec![one.clone(), one.clone(), neg.clone()]]),
        // v = 0
        Generator::Zero => rel(0, 1, 0, vec![vec![one.clone()]]),
        // v1 = u, v2 = u
        Generator::Copy => rel(
            1,
            2,
            0,
            vec![
                vec![one.clone(), neg.clone(), z()],
                vec![one.clone(), z(), neg.clone()],
            ],
        ),
        Generator::Discard => rel(1, 0, 0, vec![]),
        // v = r, r' = u
        Generator::Delay => rel(
            1,
            1,
            1,
            vec![
                vec![z(), one.clone(), neg.clone(), z()],
                vec![one.clone(), z(), z(), neg.clone()],
            ],
        ),
        // v = a u
        Generator::Scalar(a) => {
            let a = F::from_ratio(a.num(), a.den())?;
            rel(1, 1, 0, vec![vec![a.neg(), one.clone()]])
        }
        // u = v1 + v2
        Generator::CoAdd => rel(
            1,
            2,
            0,
            vec![vec![one.clone(), neg.clone(), neg.clone()]],
        ),
        // u = 0
        Generator::CoZero => rel(1, 0, 0, vec![vec![one.clone()]]),
        // u1 = v, u2 = v
        Generator::CoCopy => rel(
            2,
            1,
            0,
            vec![
                vec![one.clone(), z(), neg.clone()],
                vec![z(), one.clone(), neg.clone()],
            ],
        ),
        Generator::CoDiscard => rel(0, 1, 0, vec![]),
        // u = r, r' = v
        Generator::CoDelay => rel(
            1,
            1,
            1,
            vec![
                vec![one.clone(), z(), neg.clone(), z()],
                vec![z(), one.clone(), z(), neg.clone()],
            ],
        ),
        // u = a v
        Generator::CoScalar(a) => {
            let a = F::from_ratio(a.num(), a.den())?;
            rel(1, 1, 0, vec![vec![one.clone(), a.neg()]])
        }
    })
}

fn id_relation<F: Field>(n: usize) -> StepRelation<F> {
    let mut c = FieldMat::empty(2 * n);
    for i in 0..n {
        let mut row = vec![F::zero(); 2 * n];
        row[i] = F::one();
        row[n + i] = F::one().neg();
        c.push_row(row);
    }
    StepRelation {
        m: n,
        n,
        d: 0,
        constraint: c,
    }
}

fn twist_relation<F: Field>() -> StepRelation<F> {
    let one = F::one();
    let neg = one.neg();
    let z = F::zero();
    StepRelation {
        m: 2,
        n: 2,
        d: 0,
        constraint: FieldMat::from_rows(vec![
            vec![one.clone(), z.clone(), z.clone(), neg.clone()],
            vec![z.clone(), one.clone(), neg.clone(), z.clone()],
        ]),
    }
}

/// Tensor: boundaries and registers concatenate (first component on top).
fn rel_tensor<F: Field>(a: &StepRelation<F>, b: &StepRelation<F>) -> StepRelation<F> {
    let (m, n, d) = (a.m + b.m, a.n + b.n, a.d + b.d);
    let width = m + n + 2 * d;
    let mut c = FieldMat::empty(width);
    // index maps from each component into the combined (u | v | r | r') layout
    let map_a = |j: usize| -> usize {
        if j < a.m {
            j
        } else if j < a.m + a.n {
            m + (j - a.m)
        } else if j < a.m + a.n + a.d {
            m + n + (j - a.m - a.n)
        } else {
            m + n + d + (j - a.m - a.n - a.d)
        }
    };
    let map_b = |j: usize| -> usize {
        if j < b.m {
            a.m + j
        } else if j < b.m + b.n {
            m + a.n + (j - b.m)
        } else if j < b.m + b.n + b.d {
            m + n + a.d + (j - b.m - b.n)
        } else {
            m + n + d + a.d + (j - b.m - b.n - b.d)
        }
    };
    for i in 0..a.constraint.rows() {
        let mut row = vec![F::zero(); width];
        for j in 0..a.constraint.cols() {
            row[map_a(j)] = a.constraint.at(i, j).clone();
        }
        c.push_row(row);
    }
    for i in 0..b.constraint.rows() {
        let mut row = vec![F::zero(); width];
        for j in 0..b.constraint.cols() {
            row[map_b(j)] = b.constraint.at(i, j).clone();
        }
        c.push_row(row);
    }
    StepRelation {
        m,
        n,
        d,
        constraint: compact(c),
    }
}

/// Sequential composition: the shared boundary is existentially eliminated.
fn rel_seq<F: Field>(a: &StepRelation<F>, b: &StepRelation<F>) -> StepRelation<F> {
    assert_eq!(a.n, b.m, "step relation boundary mismatch");
    let k = a.n;
    let (m, n, d) = (a.m, b.n, a.d + b.d);
    // working layout: u(m) | v(n) | r(d) | r'(d) | w(k)
    let width = m + n + 2 * d + k;
    let w_base = m + n + 2 * d;
    let mut c = FieldMat::empty(width);
    let map_a = |j: usize| -> usize {
        if j < a.m {
            j
        } else if j < a.m + a.n {
            w_base + (j - a.m)
        } else if j < a.m + a.n + a.d {
            m + n + (j - a.m - a.n)
        } else {
            m + n + d + (j - a.m - a.n - a.d)
        }
    };
    let map_b = |j: usize| -> usize {
        if j < b.m {
            w_base + j
        } else if j < b.m + b.n {
            m + (j - b.m)
        } else if j < b.m + b.n + b.d {
            m + n + a.d + (j - b.m - b.n)
        } else {
            m + n + d + a.d + (j - b.m - b.n - b.d)
        }
    };
    for i in 0..a.constraint.rows() {
        let mut row = vec![F::zero(); width];
        for j in 0..a.constraint.cols() {
            row[map_a(j)] = a.constraint.at(i, j).clone();
        }
        c.push_row(row);
    }
    for i in 0..b.constraint.rows() {
        let mut row = vec![F::zero(); width];
        for j in 0..b.constraint.cols() {
            row[map_b(j)] = b.constraint.at(i, j).clone();
        }
        c.push_row(row);
    }
    let elim: Vec<usize> = (w_base..width).collect();
    StepRelation {
        m,
        n,
        d,
        constraint: c.eliminate_columns(&elim),
    }
}

/// Compile a typed term to its per-tick relation. Register columns follow the
/// term's traversal order, matching `TypedTerm::registers`.
pub fn step_relation<F: Field>(t: &TypedTerm) -> Result<StepRelation<F>, FieldError> {
    fn go<F: Field>(t: &Term) -> Result<StepRelation<F>, FieldError> {
        Ok(match t {
            Term::Gen(g) => gen_relation(g)?,
            Term::Id(n) => id_relation(*n),
            Term::Twist => twist_relation(),
            Term::Seq(a, b) => rel_seq(&go(a)?, &go(b)?),
            Term::Tensor(a, b) => rel_tensor(&go(a)?, &go(b)?),
        })
    }
    let rel = go::<F>(&t.term)?;
    debug_assert_eq!((rel.m, rel.n), (t.arity, t.coarity));
    debug_assert_eq!(rel.d, t.registers.len());
    Ok(rel)
}

/// A finite window of an execution: boundary signals on `[t0, t1]` and
/// registers on `[t0, t1 + 1]` when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceWindow<F: Field> {
    pub t0: i64,
    pub t1: i64,
    pub u: Vec<Vec<F>>,
    pub v: Vec<Vec<F>>,
    /// `None` means the registers are left existential (boundary-only data).
    pub registers: Option<Vec<Vec<F>>>,
}

impl<F: Field> TraceWindow<F> {
    pub fn len(&self) -> usize {
        (self.t1 - self.t0 + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.t1 < self.t0
    }
}

/// Partial valuation of the boundary at one tick; unspecified coordinates are
/// solved for (and default to zero when under-determined).
#[derive(Clone, Debug, Default)]
pub struct TickValues<F: Field> {
    pub u: Vec<Option<F>>,
    pub v: Vec<Option<F>>,
}

impl<F: Field> TickValues<F> {
    pub fn free(m: usize, n: usize) -> Self {
        TickValues {
            u: vec![None; m],
            v: vec![None; n],
        }
    }

    pub fn with_inputs(u: Vec<F>, n: usize) -> Self {
        TickValues {
            u: u.into_iter().map(Some).collect(),
            v: vec![None; n],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimulateError {
    /// The per-tick system has no solution under the given valuations.
    Inconsistent { tick: i64 },
    BadShape(String),
}

impl fmt::Display for SimulateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimulateError::Inconsistent { tick } => {
                write!(f, "no consistent valuation at tick {tick}")
            }
            SimulateError::BadShape(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for SimulateError {}

/// Run the relation for `ticks.len()` steps. Forward windows cover
/// `[0, L-1]` starting from registers `init`; backward windows cover
/// `[-L, -1]` ending at registers `init` (the splice-point assignment).
///
/// Per tick the known values (current registers plus any explicit boundary
/// valuations) are substituted and the remaining coordinates solved exactly;
/// under-determined coordinates default to zero.
pub fn simulate<F: Field>(
    rel: &StepRelation<F>,
    init: &[F],
    ticks: &[TickValues<F>],
    backward: bool,
) -> Result<TraceWindow<F>, SimulateError> {
    if init.len() != rel.d {
        return Err(SimulateError::BadShape(format!(
            "expected {} register values, got {}",
            rel.d,
            init.len()
        )));
    }
    if ticks.is_empty() {
        return Err(SimulateError::BadShape("need at least one tick".into()));
    }
    for tv in ticks {
        if tv.u.len() != rel.m || tv.v.len() != rel.n {
            return Err(SimulateError::BadShape(format!(
                "tick valuation has {} inputs and {} outputs, expected {} and {}",
                tv.u.len(),
                tv.v.len(),
                rel.m,
                rel.n
            )));
        }
    }
    let l = ticks.len() as i64;
    let t0 = if backward { -l } else { 0 };

    // known[j] = Some(value) fixes a column of the (u | v | r | r') tick system
    let solve_tick = |known: &[Option<F>], tick: i64| -> Result<Vec<F>, SimulateError> {
        let unknown: Vec<usize> = (0..rel.vars()).filter(|&j| known[j].is_none()).collect();
        let mut a = FieldMat::zeros(rel.constraint.rows(), unknown.len());
        let mut rhs = Vec::with_capacity(rel.constraint.rows());
        for i in 0..rel.constraint.rows() {
            let mut b = F::zero();
            for (jj, &j) in unknown.iter().enumerate() {
                a.set(i, jj, rel.constraint.at(i, j).clone());
            }
            for (j, k) in known.iter().enumerate() {
                if let Some(val) = k {
                    b = b.sub(&rel.constraint.at(i, j).mul(val));
                }
            }
            rhs.push(b);
        }
        let x = a
            .solve(&rhs)
            .ok_or(SimulateError::Inconsistent { tick })?;
        let mut full: Vec<F> = known
            .iter()
            .map(|k| k.clone().unwrap_or_else(F::zero))
            .collect();
        for (jj, &j) in unknown.iter().enumerate() {
            full[j] = x[jj].clone();
        }
        Ok(full)
    };

    let steps = ticks.len();
    let mut u_out = vec![Vec::new(); steps];
    let mut v_out = vec![Vec::new(); steps];
    let mut regs = vec![Vec::new(); steps + 1];

    if backward {
        regs[steps] = init.to_vec();
    } else {
        regs[0] = init.to_vec();
    }

    let order: Vec<usize> = if backward {
        (0..steps).rev().collect()
    } else {
        (0..steps).collect()
    };
    for i in order {
        let mut known: Vec<Option<F>> = vec![None; rel.vars()];
        for (j, val) in ticks[i].u.iter().enumerate() {
            known[j] = val.clone();
        }
        for (j, val) in ticks[i].v.iter().enumerate() {
            known[rel.m + j] = val.clone();
        }
        if backward {
            for j in 0..rel.d {
                known[rel.m + rel.n + rel.d + j] = Some(regs[i + 1][j].clone());
            }
        } else {
            for j in 0..rel.d {
                known[rel.m + rel.n + j] = Some(regs[i][j].clone());
            }
        }
        let full = solve_tick(&known, t0 + i as i64)?;
        u_out[i] = full[0..rel.m].to_vec();
        v_out[i] = full[rel.m..rel.m + rel.n].to_vec();
        if backward {
            regs[i] = full[rel.m + rel.n..rel.m + rel.n + rel.d].to_vec();
        } else {
            regs[i + 1] = full[rel.m + rel.n + rel.d..].to_vec();
        }
    }

    Ok(TraceWindow {
        t0,
        t1: t0 + steps as i64 - 1,
        u: u_out,
        v: v_out,
        registers: Some(regs),
    })
}

/// Check a window against the relation. With registers present every tick is
/// verified directly; without them a consistent register run is solved for
/// (registers at the window edges are free, the windowed analogue of picking
/// the splice-point assignment).
pub fn check_window_trace<F: Field>(rel: &StepRelation<F>, w: &TraceWindow<F>) -> bool {
    if w.is_empty() {
        return true;
    }
    let steps = w.len();
    if w.u.len() != steps
        || w.v.len() != steps
        || w.u.iter().any(|row| row.len() != rel.m)
        || w.v.iter().any(|row| row.len() != rel.n)
    {
        return false;
    }
    match &w.registers {
        Some(regs) => {
            if regs.len() != steps + 1 || regs.iter().any(|r| r.len() != rel.d) {
                return false;
            }
            (0..steps).all(|i| rel.tick_valid(&w.u[i], &w.v[i], &regs[i], &regs[i + 1]))
        }
        None => {
            // linear system over the flattened register run
            let vars = (steps + 1) * rel.d;
            let mut a = FieldMat::zeros(steps * rel.constraint.rows(), vars);
            let mut rhs = Vec::with_capacity(steps * rel.constraint.rows());
            for i in 0..steps {
                for c in 0..rel.constraint.rows() {
                    let row_idx = i * rel.constraint.rows() + c;
                    let mut b = F::zero();
                    for j in 0..rel.m {
                        b = b.sub(&rel.constraint.at(c, j).mul(&w.u[i][j]));
                    }
                    for j in 0..rel.n {
                        b = b.sub(&rel.constraint.at(c, rel.m + j).mul(&w.v[i][j]));
                    }
                    for j in 0..rel.d {
                        a.set(
                            row_idx,
                            i * rel.d + j,
                            rel.constraint.at(c, rel.m + rel.n + j).clone(),
                        );
                        a.set(
                            row_idx,
                            (i + 1) * rel.d + j,
                            rel.constraint.at(c, rel.m + rel.n + rel.d + j).clone(),
                        );
                    }
                    rhs.push(b);
                }
            }
            a.solve(&rhs).is_some()
        }
    }
}

/// Unrolled window subspace at a fixed margin: boundary coordinates of the
/// central `len` ticks, every register and every margin-tick boundary
/// existentially eliminated.
fn window_set_with_margin<F: Field>(
    rel: &StepRelation<F>,
    len: usize,
    margin: usize,
) -> FieldMat<F> {
    let c = rel.m + rel.n;
    let ticks = len + 2 * margin;
    let b_vars = ticks * c;
    let r_base = b_vars;
    let vars = b_vars + (ticks + 1) * rel.d;
    let mut cons = FieldMat::zeros(ticks * rel.constraint.rows(), vars);
    for t in 0..ticks {
        for row in 0..rel.constraint.rows() {
            let out_row = t * rel.constraint.rows() + row;
            for j in 0..c {
                cons.set(out_row, t * c + j, rel.constraint.at(row, j).clone());
            }
            for j in 0..rel.d {
                cons.set(
                    out_row,
                    r_base + t * rel.d + j,
                    rel.constraint.at(row, c + j).clone(),
                );
                cons.set(
                    out_row,
                    r_base + (t + 1) * rel.d + j,
                    rel.constraint.at(row, c + rel.d + j).clone(),
                );
            }
        }
    }
    let keep: Vec<usize> = (0..len * c).map(|i| margin * c + i).collect();
    cons.project_kernel(&keep)
}

/// Exact basis (rows) of the boundary-signal windows of length `len`:
/// the restriction to `len` consecutive ticks of the biinfinite traces.
///
/// Computed by widening the window until the projected dimension stabilizes;
/// the stabilization floor `d + 1` is safe because the sets of forward- and
/// backward-extendable register states form subspace chains of length at most
/// `d`.
pub fn opsem_window_set<F: Field>(rel: &StepRelation<F>, len: usize) -> FieldMat<F> {
    assert!(len >= 1, "window length must be positive");
    let mut margin = rel.d + 1;
    let mut basis = window_set_with_margin(rel, len, margin);
    loop {
        let next = window_set_with_margin(rel, len, margin + 1);
        if next.rows() == basis.rows() {
            return next;
        }
        margin += 1;
        basis = next;
        assert!(
            margin <= rel.d + 16,
            "window projection failed to stabilize"
        );
    }
}

/// Windowed restriction of the behavior `ker theta(R)` for a kernel
/// representation `R`: basis rows over the `R.cols() * len` coordinates
/// (channel-major within each tick, ticks in time order).
pub fn window_behavior<F: Field>(kernel_rep: &PolyMatrix<F>, len: usize) -> FieldMat<F> {
    assert!(len >= 1, "window length must be positive");
    let spans: u64 = (0..kernel_rep.rows())
        .map(|i| {
            (0..kernel_rep.cols())
                .filter_map(|j| {
                    let p = kernel_rep.at(i, j);
                    if p.is_zero() {
                        None
                    } else {
                        Some((p.max_exp().unwrap(), p.min_exp().unwrap()))
                    }
                })
                .fold(None::<(i64, i64)>, |acc, (hi, lo)| match acc {
                    None => Some((hi, lo)),
                    Some((h, l)) => Some((h.max(hi), l.min(lo))),
                })
                .map_or(0, |(hi, lo)| (hi - lo) as u64)
        })
        .sum();
    let mut margin = spans as usize + 1;
    let mut basis = window_behavior_with_margin(kernel_rep, len, margin);
    loop {
        let next = window_behavior_with_margin(kernel_rep, len, margin + 1);
        if next.rows() == basis.rows() {
            return next;
        }
        margin += 1;
        basis = next;
        assert!(
            margin <= spans as usize + 32,
            "window restriction failed to stabilize"
        );
    }
}

fn window_behavior_with_margin<F: Field>(
    kernel_rep: &PolyMatrix<F>,
    len: usize,
    margin: usize,
) -> FieldMat<F> {
    let c = kernel_rep.cols();
    let ticks = len + 2 * margin;
    let vars = ticks * c;
    let mut cons = FieldMat::empty(vars);
    // row i of R applied at time t: sum_j sum_e coeff * w_j(t - e) = 0,
    // instantiated wherever every needed sample lies inside the window
    for i in 0..kernel_rep.rows() {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for j in 0..c {
            let p = kernel_rep.at(i, j);
            if let (Some(mn), Some(mx)) = (p.min_exp(), p.max_exp()) {
                lo = lo.min(mn);
                hi = hi.max(mx);
            }
        }
        if lo > hi {
            continue; // zero row
        }
        // window times run 0..ticks; need t - e in [0, ticks) for e in [lo, hi]
        let t_min = hi;
        let t_max = ticks as i64 - 1 + lo;
        let mut t = t_min;
        while t <= t_max {
            let mut row = vec![F::zero(); vars];
            for j in 0..c {
                let p = kernel_rep.at(i, j);
                for (e, coeff) in p.terms() {
                    let sample = t - e;
                    debug_assert!(sample >= 0 && sample < ticks as i64);
                    let idx = sample as usize * c + j;
                    row[idx] = row[idx].add(coeff);
                }
            }
            cons.push_row(row);
            t += 1;
        }
    }
    let keep: Vec<usize> = (0..len * c).map(|i| margin * c + i).collect();
    cons.project_kernel(&keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_typed;
    use crate::ring::field::Rat;
    use crate::semantics::{corelation_of_source, kernel_representation};

    const T_EX: &str = "copy ; (delay|id) ; add ; co_add ; (co_delay|id) ; co_copy";

    fn rel(src: &str) -> StepRelation<Rat> {
        step_relation(&parse_typed(src).unwrap()).unwrap()
    }

    fn q(n: i64) -> Rat {
        Rat::from_int(n)
    }

    #[test]
    fn delay_relation_shape() {
        let r = rel("delay");
        assert_eq!((r.m, r.n, r.d), (1, 1, 1));
        // v = r and r' = u
        assert!(r.tick_valid(&[q(7)], &[q(3)], &[q(3)], &[q(7)]));
        assert!(!r.tick_valid(&[q(7)], &[q(3)], &[q(4)], &[q(7)]));
        assert!(!r.tick_valid(&[q(7)], &[q(3)], &[q(3)], &[q(8)]));
    }

    #[test]
    fn id_relation_shape() {
        let r = rel("id@1");
        assert_eq!((r.m, r.n, r.d), (1, 1, 0));
        assert_eq!(r.constraint.rows(), 1);
        assert!(r.tick_valid(&[q(5)], &[q(5)], &[], &[]));
        assert!(!r.tick_valid(&[q(5)], &[q(4)], &[], &[]));
    }

    #[test]
    fn example_circuit_relation() {
        let r = rel(T_EX);
        assert_eq!((r.m, r.n, r.d), (1, 1, 2));
        // with registers (a, b): v = u + a - b, a' = u, b' = v
        let valid =
            |u: i64, v: i64, a: i64, b: i64, a2: i64, b2: i64| {
                r.tick_valid(&[q(u)], &[q(v)], &[q(a), q(b)], &[q(a2), q(b2)])
            };
        assert!(valid(-1, -2, 1, 2, -1, -2));
        assert!(valid(0, 0, 0, 0, 0, 0));
        assert!(valid(3, 4, 2, 1, 3, 4));
        assert!(!valid(3, 5, 2, 1, 3, 5));
    }

    #[test]
    fn paper_trace_reproduced() {
        let r = rel(T_EX);
        let ticks: Vec<TickValues<Rat>> = (0..8)
            .map(|i| TickValues::with_inputs(vec![q(if i % 2 == 0 { -1 } else { 1 })], 1))
            .collect();
        let w = simulate(&r, &[q(1), q(2)], &ticks, false).unwrap();
        let vs: Vec<i64> = (0..8).map(|i| if i % 2 == 0 { -2 } else { 2 }).collect();
        for (i, expect) in vs.iter().enumerate() {
            assert_eq!(w.v[i][0], q(*expect), "tick {i}");
        }
        assert!(check_window_trace(&r, &w));
    }

    #[test]
    fn zero_initialization_is_a_wire() {
        let r = rel(T_EX);
        let inputs = [3, 1, 4, 1, 5, 9, 2, 6];
        let ticks: Vec<TickValues<Rat>> = inputs
            .iter()
            .map(|&x| TickValues::with_inputs(vec![q(x)], 1))
            .collect();
        let w = simulate(&r, &[q(0), q(0)], &ticks, false).unwrap();
        for (i, &x) in inputs.iter().enumerate() {
            assert_eq!(w.v[i][0], q(x));
        }
    }

    #[test]
    fn delay_outputs_lag_inputs() {
        let r = rel("delay");
        let inputs = [10, 20, 30];
        let ticks: Vec<TickValues<Rat>> = inputs
            .iter()
            .map(|&x| TickValues::with_inputs(vec![q(x)], 1))
            .collect();
        let w = simulate(&r, &[q(7)], &ticks, false).unwrap();
        assert_eq!(w.v[0][0], q(7));
        assert_eq!(w.v[1][0], q(10));
        assert_eq!(w.v[2][0], q(20));
    }

    #[test]
    fn backward_simulation_ends_at_init() {
        let r = rel("delay");
        let ticks = vec![TickValues::free(1, 1); 3];
        let w = simulate(&r, &[q(5)], &ticks, true).unwrap();
        assert_eq!((w.t0, w.t1), (-3, -1));
        let regs = w.registers.as_ref().unwrap();
        assert_eq!(regs[3], vec![q(5)]);
        // delay backward: the last input must equal the splice register
        assert_eq!(w.u[2][0], q(5));
        assert!(check_window_trace(&r, &w));
    }

    #[test]
    fn inconsistent_inputs_detected() {
        // co_zero forces u = 0
        let r = rel("co_zero");
        let ticks = vec![TickValues {
            u: vec![Some(q(1))],
            v: vec![],
        }];
        assert!(matches!(
            simulate(&r, &[], &ticks, false),
            Err(SimulateError::Inconsistent { .. })
        ));
    }

    #[test]
    fn boundary_only_window_solved() {
        // Ex-circuit window with w1(t) = (-1)^t, w2 = 0 admits registers
        let r = rel(T_EX);
        let len = 6;
        let w = TraceWindow {
            t0: 0,
            t1: len - 1,
            u: (0..len).map(|t| vec![q(if t % 2 == 0 { 1 } else { -1 })]).collect(),
            v: (0..len).map(|_| vec![q(0)]).collect(),
            registers: None,
        };
        assert!(check_window_trace(&r, &w));
        // but an arbitrary boundary violating the difference equation fails
        let bad = TraceWindow {
            t0: 0,
            t1: len - 1,
            u: (0..len).map(|_| vec![q(1)]).collect(),
            v: (0..len).map(|t| vec![q(t)]).collect(),
            registers: None,
        };
        assert!(!check_window_trace(&r, &bad));
    }

    #[test]
    fn window_set_dimensions() {
        for l in [4usize, 8] {
            assert_eq!(opsem_window_set(&rel("id@1"), l).rows(), l);
            assert_eq!(opsem_window_set(&rel(T_EX), l).rows(), l + 1);
            assert_eq!(opsem_window_set(&rel("zero"), l).rows(), 0);
        }
    }

    #[test]
    fn window_behavior_dimensions() {
        let wire = PolyMatrix::<Rat>::parse_rows(&[vec!["1", "-1"]]);
        let ex = PolyMatrix::<Rat>::parse_rows(&[vec!["1 + s", "-1 - s"]]);
        for l in [4usize, 8] {
            assert_eq!(window_behavior(&wire, l).rows(), l);
            assert_eq!(window_behavior(&ex, l).rows(), l + 1);
            assert_eq!(window_behavior(&PolyMatrix::<Rat>::zeros(0, 3), l).rows(), 3 * l);
        }
    }

    #[test]
    fn windowed_trace_lemma_on_examples() {
        for src in [T_EX, "id@1", "delay", "zero", "co_delay ; delay", "copy ; co_copy"] {
            let r = rel(src);
            let x = corelation_of_source::<Rat>(src).unwrap();
            for l in [4usize, 6] {
                let ops = opsem_window_set(&r, l);
                let den = window_behavior(kernel_representation(&x), l);
                assert!(ops.rowspace_eq(&den), "{src} at length {l}");
            }
        }
    }

    #[test]
    fn edge_states_constrain_windows() {
        // delay ; co_zero forces u = 0 on every window once margins apply
        let r = rel("delay ; co_zero");
        for l in [1usize, 3] {
            assert_eq!(opsem_window_set(&r, l).rows(), 0, "length {l}");
        }
        let x = corelation_of_source::<Rat>("delay ; co_zero").unwrap();
        assert_eq!(window_behavior(kernel_representation(&x), 3).rows(), 0);
    }

    #[test]
    fn simulate_linearity() {
        let r = rel(T_EX);
        let t1: Vec<TickValues<Rat>> = (0..5)
            .map(|i| TickValues::with_inputs(vec![q(i)], 1))
            .collect();
        let t2: Vec<TickValues<Rat>> = (0..5)
            .map(|i| TickValues::with_inputs(vec![q(2 * i - 3)], 1))
            .collect();
        let w1 = simulate(&r, &[q(1), q(0)], &t1, false).unwrap();
        let w2 = simulate(&r, &[q(2), q(5)], &t2, false).unwrap();
        let sum = TraceWindow {
            t0: 0,
            t1: 4,
            u: (0..5)
                .map(|i| vec![w1.u[i][0].add(&w2.u[i][0])])
                .collect(),
            v: (0..5)
                .map(|i| vec![w1.v[i][0].add(&w2.v[i][0])])
                .collect(),
            registers: Some(
                (0..6)
                    .map(|i| {
                        let a = &w1.registers.as_ref().unwrap()[i];
                        let b = &w2.registers.as_ref().unwrap()[i];
                        (0..2).map(|j| a[j].add(&b[j])).collect()
                    })
                    .collect(),
            ),
        };
        assert!(check_window_trace(&r, &sum));
    }

    #[test]
    fn time_invariance_of_windows() {
        let r = rel(T_EX);
        let ticks: Vec<TickValues<Rat>> = (0..6)
            .map(|i| TickValues::with_inputs(vec![q(i * i - 2)], 1))
            .collect();
        let w = simulate(&r, &[q(3), q(-1)], &ticks, false).unwrap();
        let regs = w.registers.as_ref().unwrap();
        let shifted = TraceWindow {
            t0: 0,
            t1: 4,
            u: w.u[1..].to_vec(),
            v: w.v[1..].to_vec(),
            registers: Some(regs[1..].to_vec()),
        };
        assert!(check_window_trace(&r, &shifted));
    }

    #[test]
    fn autonomous_dimension_of_example_is_one() {
        // free input dimension is L; the extra dimension is the invariant
        let l = 6;
        let dim = opsem_window_set(&rel(T_EX), l).rows();
        assert_eq!(dim - l, 1);
    }
}
