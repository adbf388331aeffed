//! Laurent polynomials `k[s, s^-1]` over an exact field `k`.
//!
//! The ring is Euclidean under the exponent span `delta(p) = maxdeg - mindeg`,
//! its units are exactly the monomials `a * s^k` with `a != 0`, and every
//! nonzero element has a canonical associate: the ordinary polynomial with
//! nonzero constant term and monic leading coefficient. Division uses a
//! canonical remainder (the unique ordinary-polynomial coset representative of
//! degree `< delta(b)`), which is what makes the Hermite form downstream a
//! strict canonical form.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Field, FieldError};

/// Element of `k[s, s^-1]`: finite exponent -> coefficient map.
///
/// Invariant: no stored zero coefficients; the zero polynomial is the empty
/// map.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<F: Field> {
    coeffs: BTreeMap<i64, F>,
}

/// Error from parsing the textual polynomial syntax.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyParseError {
    pub at: usize,
    pub msg: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "polynomial syntax error at byte {}: {}", self.at, self.msg)
    }
}

impl std::error::Error for PolyParseError {}

impl<F: Field> LaurentPoly<F> {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(0, c)
    }

    /// The indeterminate `s`.
    pub fn var() -> Self {
        Self::monomial(1, F::one())
    }

    pub fn monomial(exp: i64, coeff: F) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, F)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p = p.add(&Self::monomial(e, c));
        }
        p
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(F::from_int(n))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// Smallest exponent with nonzero coefficient; `None` for zero.
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Largest exponent with nonzero coefficient; `None` for zero.
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Euclidean length `delta(p) = maxdeg - mindeg`; `None` for zero.
    pub fn span(&self) -> Option<u64> {
        Some((self.max_exp()? - self.min_exp()?) as u64)
    }

    pub fn coeff(&self, exp: i64) -> F {
        self.coeffs.get(&exp).cloned().unwrap_or_else(F::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &F)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &rhs.coeffs {
            let cur = coeffs.remove(e).unwrap_or_else(F::zero);
            let sum = cur.add(c);
            if !sum.is_zero() {
                coeffs.insert(*e, sum);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c.neg())).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut coeffs: BTreeMap<i64, F> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let e = ea + eb;
                let prod = ca.mul(cb);
                let cur = coeffs.remove(&e).unwrap_or_else(F::zero);
                let sum = cur.add(&prod);
                if !sum.is_zero() {
                    coeffs.insert(e, sum);
                }
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn scalar_mul(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, a)| (*e, a.mul(c))).collect(),
        }
    }

    /// Multiply by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Leading term `(max exponent, coefficient)`. Panics on zero.
    fn lead(&self) -> (i64, F) {
        let (e, c) = self.coeffs.iter().next_back().expect("lead of zero polynomial");
        (*e, c.clone())
    }

    /// Whether this is a unit `a * s^k`, `a != 0`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Inverse of a unit. Panics when `self` is not a unit.
    pub fn unit_inv(&self) -> Self {
        assert!(self.is_unit(), "unit_inv of non-unit {self}");
        let (e, c) = self.lead();
        Self::monomial(-e, c.inv().expect("nonzero field coefficient"))
    }

    /// Canonical-remainder division: `self = q*b + r` with `r` the unique
    /// ordinary-polynomial representative of degree `< delta(b)` in the coset
    /// `self + (b)`. In particular `r = 0` or `delta(r) < delta(b)`.
    ///
    /// Panics when `b` is zero.
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let bmin = b.min_exp().unwrap();
        let bhat = b.shift(-bmin);
        let n = bhat.max_exp().unwrap(); // = delta(b) >= 0
        if n == 0 {
            // b is a unit, remainder 0
            let q = self.mul(&b.unit_inv());
            return (q, Self::zero());
        }
        let r = self.canonical_rem_mod(&bhat);
        let q = self
            .sub(&r)
            .exact_div(b)
            .expect("difference divisible by divisor");
        (q, r)
    }

    /// Remainder part of `divrem`.
    pub fn rem(&self, b: &Self) -> Self {
        self.divrem(b).1
    }

    /// Whether `b` divides `self` exactly.
    pub fn divisible_by(&self, b: &Self) -> bool {
        self.divrem(b).1.is_zero()
    }

    /// Reduce to the unique ordinary polynomial of degree `< deg bhat`
    /// congruent to `self` mod `bhat`, where `bhat` is ordinary with nonzero
    /// constant term and degree >= 1. Uniqueness holds because `s` is
    /// invertible mod `bhat`, so `k[s,s^-1]/(bhat) = k[s]/(bhat)`.
    fn canonical_rem_mod(&self, bhat: &Self) -> Self {
        let n = bhat.max_exp().unwrap();
        debug_assert!(n >= 1 && !bhat.coeff(0).is_zero() && bhat.min_exp() == Some(0));
        if self.is_zero() {
            return Self::zero();
        }
        let amin = self.min_exp().unwrap();
        let mut r = self.shift(-amin).reduce_ordinary(bhat);
        if amin > 0 {
            for _ in 0..amin {
                r = r.shift(1).reduce_ordinary(bhat);
            }
        } else if amin < 0 {
            // s^-1 = -(1/b0) * (bhat - b0)/s  (mod bhat), an ordinary poly of degree < n
            let b0_inv = bhat.coeff(0).inv().expect("nonzero constant term");
            let s_inv = bhat
                .sub(&Self::constant(bhat.coeff(0)))
                .shift(-1)
                .scalar_mul(&b0_inv)
                .neg();
            for _ in 0..(-amin) {
                let c0 = r.coeff(0);
                r = r
                    .sub(&Self::constant(c0.clone()))
                    .shift(-1)
                    .add(&s_inv.scalar_mul(&c0));
            }
        }
        debug_assert!(r.is_zero() || (r.min_exp().unwrap() >= 0 && r.max_exp().unwrap() < n));
        r
    }

    /// Ordinary-polynomial reduction: subtract multiples of `bhat` until the
    /// degree drops below `deg bhat`. Both polynomials must be ordinary.
    fn reduce_ordinary(&self, bhat: &Self) -> Self {
        let n = bhat.max_exp().unwrap();
        let blc_inv = bhat.coeff(n).inv().expect("nonzero leading coefficient");
        let mut r = self.clone();
        while let Some(top) = r.max_exp() {
            if top < n {
                break;
            }
            let factor = r.coeff(top).mul(&blc_inv);
            r = r.sub(&bhat.shift(top - n).scalar_mul(&factor));
        }
        r
    }

    /// Exact quotient `self / b`, or `None` when `b` does not divide `self`.
    ///
    /// Panics when `b` is zero.
    pub fn exact_div(&self, b: &Self) -> Option<Self> {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (b_top, b_lc) = b.lead();
        let b_lc_inv = b_lc.inv().expect("nonzero field coefficient");
        let mut rem = self.clone();
        let mut q = Self::zero();
        let max_iters = self.num_terms() + self.span().unwrap() as usize + 2;
        for _ in 0..max_iters {
            if rem.is_zero() {
                return Some(q);
            }
            let (r_top, r_lc) = rem.lead();
            let t = Self::monomial(r_top - b_top, r_lc.mul(&b_lc_inv));
            q = q.add(&t);
            rem = rem.sub(&b.mul(&t));
        }
        None
    }

    /// Extended gcd: `(g, x, y)` with `x*self + y*b = g` and `g` the canonical
    /// associate of a greatest common divisor.
    ///
    /// Panics when both inputs are zero.
    pub fn gcd_ext(&self, b: &Self) -> (Self, Self, Self) {
        assert!(
            !(self.is_zero() && b.is_zero()),
            "gcd of two zero polynomials"
        );
        let (mut old_r, mut r) = (self.clone(), b.clone());
        let (mut old_x, mut x) = (Self::one(), Self::zero());
        let (mut old_y, mut y) = (Self::zero(), Self::one());
        while !r.is_zero() {
            let (q, rem) = old_r.divrem(&r);
            let mut nx = old_x.sub(&q.mul(&x));
            let mut ny = old_y.sub(&q.mul(&y));
            // normalize each remainder to its canonical associate; keeping the
            // sequence monic tames rational coefficient growth
            let rem = if rem.is_zero() {
                rem
            } else {
                let (unit, canon) = rem.canonical_associate();
                let w = unit.unit_inv();
                nx = nx.mul(&w);
                ny = ny.mul(&w);
                canon
            };
            (old_r, r) = (r, rem);
            (old_x, x) = (x, nx);
            (old_y, y) = (y, ny);
        }
        let (unit, g) = old_r.canonical_associate();
        let u_inv = unit.unit_inv();
        (g, old_x.mul(&u_inv), old_y.mul(&u_inv))
    }

    /// Canonical associate of a gcd of `self` and `b`.
    pub fn gcd(&self, b: &Self) -> Self {
        self.gcd_ext(b).0
    }

    /// Factor `self = unit * q` with `q` the canonical associate: an ordinary
    /// polynomial with nonzero constant term and monic leading coefficient.
    ///
    /// Panics on zero.
    pub fn canonical_associate(&self) -> (Self, Self) {
        assert!(!self.is_zero(), "canonical associate of zero");
        let m = self.min_exp().unwrap();
        let hat = self.shift(-m);
        let lc = hat.coeff(hat.max_exp().unwrap());
        let q = hat.scalar_mul(&lc.inv().expect("nonzero leading coefficient"));
        (Self::monomial(m, lc), q)
    }

    /// Whether `self` already is a canonical associate.
    pub fn is_canonical_associate(&self) -> bool {
        !self.is_zero() && self.canonical_associate().1 == *self
    }

    /// JSON pair form: `[exponent, coefficient-string]` with strictly
    /// increasing exponents.
    pub fn to_exp_pairs(&self) -> Vec<(i64, String)> {
        self.coeffs.iter().map(|(e, c)| (*e, c.to_string())).collect()
    }

    pub fn from_exp_pairs(pairs: &[(i64, String)]) -> Result<Self, FieldError> {
        let mut coeffs = BTreeMap::new();
        let mut last: Option<i64> = None;
        for (e, s) in pairs {
            if let Some(prev) = last {
                if *e <= prev {
                    return Err(FieldError::Parse(format!(
                        "exponents must be strictly increasing, got {prev} then {e}"
                    )));
                }
            }
            last = Some(*e);
            let c = F::parse(s)?;
            if !c.is_zero() {
                coeffs.insert(*e, c);
            }
        }
        Ok(LaurentPoly { coeffs })
    }

    /// Parse the textual syntax, e.g. `3/2*s^-1 + s^2 - 1`.
    pub fn parse(text: &str) -> Result<Self, PolyParseError> {
        parse_poly(text)
    }
}

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let (negative, mag) = c.sign_split();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_is_one = mag.is_one();
            match (*e, coeff_is_one) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "s")?,
                (1, false) => write!(f, "{mag}*s")?,
                (_, true) => write!(f, "s^{e}")?,
                (_, false) => write!(f, "{mag}*s^{e}")?,
            }
        }
        Ok(())
    }
}

// --- textual syntax -------------------------------------------------------
//
//   poly  := ['-'] term (('+'|'-') term)*
//   term  := coeff ['*'] [spow] | spow
//   coeff := INT ['/' INT]
//   spow  := 's' ['^' ['-'] INT]

struct PolyParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyParseError> {
        Err(PolyParseError {
            at: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, PolyParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn signed_int(&mut self) -> Result<i64, PolyParseError> {
        let neg = self.eat(b'-');
        let d = self.digits()?;
        let v: i64 = d
            .parse()
            .map_err(|_| PolyParseError {
                at: self.pos,
                msg: format!("integer `{d}` out of range"),
            })?;
        Ok(if neg { -v } else { v })
    }
}

fn parse_poly<F: Field>(text: &str) -> Result<LaurentPoly<F>, PolyParseError> {
    let mut p = PolyParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let mut acc = LaurentPoly::<F>::zero();
    p.skip_ws();
    let mut negate = p.eat(b'-');
    loop {
        p.skip_ws();
        // coefficient (optional when the term starts with `s`)
        let coeff = if p.peek().is_some_and(|b| b.is_ascii_digit()) {
            let num = p.digits()?.to_string();
            let text = if p.eat(b'/') {
                let den = p.digits()?;
                format!("{num}/{den}")
            } else {
                num
            };
            Some(F::parse(&text).map_err(|e| PolyParseError {
                at: p.pos,
                msg: e.to_string(),
            })?)
        } else {
            None
        };
        p.skip_ws();
        if coeff.is_some() {
            p.eat(b'*');
            p.skip_ws();
        }
        // s-power (optional when a coefficient was present)
        let exp = if p.eat(b's') {
            if p.eat(b'^') {
                Some(p.signed_int()?)
            } else {
                Some(1)
            }
        } else {
            None
        };
        let (c, e) = match (coeff, exp) {
            (Some(c), Some(e)) => (c, e),
            (Some(c), None) => (c, 0),
            (None, Some(e)) => (F::one(), e),
            (None, None) => return p.err("expected a coefficient or `s`"),
        };
        let c = if negate { c.neg() } else { c };
        acc = acc.add(&LaurentPoly::monomial(e, c));
        p.skip_ws();
        if p.eat(b'+') {
            negate = false;
        } else if p.eat(b'-') {
            negate = true;
        } else {
            break;
        }
    }
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::field::{Rat, Zp};

    type P = LaurentPoly<Rat>;

    fn s() -> P {
        P::var()
    }

    fn c(n: i64) -> P {
        P::from_int(n)
    }

    #[test]
    fn product_of_conjugates() {
        // (s+1)(s-1) = s^2 - 1
        let a = s().add(&c(1));
        let b = s().sub(&c(1));
        assert_eq!(a.mul(&b), s().mul(&s()).sub(&c(1)));
    }

    #[test]
    fn additive_identity() {
        let p = P::parse("3/2*s^-1 + s^2 - 1").unwrap();
        assert_eq!(p.add(&P::zero()), p);
    }

    #[test]
    fn shift_by_cube() {
        // (3s^-3 - 22/7 s^-1 + s^2) * s^3 = 3 - 22/7 s^2 + s^5
        let p = P::from_terms([
            (-3, Rat::from_int(3)),
            (-1, Rat::new(-22, 7)),
            (2, Rat::from_int(1)),
        ]);
        let expected = P::from_terms([
            (0, Rat::from_int(3)),
            (2, Rat::new(-22, 7)),
            (5, Rat::from_int(1)),
        ]);
        assert_eq!(p.mul(&P::monomial(3, Rat::from_int(1))), expected);
    }

    #[test]
    fn divrem_exact() {
        // (s^2 - 1) / (s + 1) = s - 1 rem 0
        let a = s().mul(&s()).sub(&c(1));
        let b = s().add(&c(1));
        let (q, r) = a.divrem(&b);
        assert_eq!(q, s().sub(&c(1)));
        assert!(r.is_zero());
    }

    #[test]
    fn divrem_unit_divisor() {
        // s is a unit, so the remainder is forced to zero
        let a = s().add(&c(1));
        let (q, r) = a.divrem(&s());
        assert!(r.is_zero());
        assert_eq!(q.mul(&s()), a);
        assert_eq!(q, P::parse("1 + s^-1").unwrap());
    }

    #[test]
    fn divrem_with_remainder() {
        // s^2 + 1 = q(s+1) + r with delta(r) = 0
        let a = s().mul(&s()).add(&c(1));
        let b = s().add(&c(1));
        let (q, r) = a.divrem(&b);
        assert_eq!(a, q.mul(&b).add(&r));
        assert_eq!(r.span(), Some(0));
        assert_eq!(r, c(2));
    }

    #[test]
    fn divrem_laurent_input() {
        let a = P::parse("s^-2 + 3 - s^3").unwrap();
        let b = P::parse("s^2 + s").unwrap();
        let (q, r) = a.divrem(&b);
        assert_eq!(a, q.mul(&b).add(&r));
        assert!(r.is_zero() || r.span().unwrap() < b.span().unwrap());
        // canonical remainder is an ordinary polynomial
        assert!(r.is_zero() || r.min_exp().unwrap() >= 0);
    }

    #[test]
    fn canonical_remainder_depends_only_on_coset() {
        let b = s().add(&c(1));
        let a = P::parse("s^2 + 3").unwrap();
        let shifted = a.add(&b.mul(&P::parse("s^-4 + 7*s^2").unwrap()));
        assert_eq!(a.rem(&b), shifted.rem(&b));
    }

    #[test]
    fn gcd_of_equal_factors() {
        let b = s().add(&c(1));
        let (g, x, y) = b.gcd_ext(&b);
        assert_eq!(g, b);
        assert_eq!(x.mul(&b).add(&y.mul(&b)), g);
    }

    #[test]
    fn gcd_with_zero() {
        let p = P::parse("2*s^-1 + 2").unwrap();
        let g = p.gcd(&P::zero());
        assert_eq!(g, s().add(&c(1))); // canonical associate of p
    }

    #[test]
    fn gcd_coprime() {
        let (g, x, y) = s().gcd_ext(&s().add(&c(1)));
        assert!(g.is_one());
        assert_eq!(x.mul(&s()).add(&y.mul(&s().add(&c(1)))), g);
    }

    #[test]
    fn canonical_associate_examples() {
        // 2s^-1 + 2 = (2s^-1)(s + 1)
        let p = P::parse("2*s^-1 + 2").unwrap();
        let (u, q) = p.canonical_associate();
        assert_eq!(u, P::monomial(-1, Rat::from_int(2)));
        assert_eq!(q, s().add(&c(1)));
        assert_eq!(u.mul(&q), p);

        // s^3 = (s^3)(1)
        let (u, q) = P::monomial(3, Rat::from_int(1)).canonical_associate();
        assert_eq!(u, P::monomial(3, Rat::from_int(1)));
        assert!(q.is_one());

        // -3s^2 - 3s^5 = (-3s^2)(s^3 + 1)
        let p = P::from_terms([(2, Rat::from_int(-3)), (5, Rat::from_int(-3))]);
        let (u, q) = p.canonical_associate();
        assert_eq!(u.mul(&q), p);
        assert_eq!(q, P::parse("1 + s^3").unwrap());
    }

    #[test]
    fn canonical_associate_idempotent() {
        let p = P::parse("4*s^-2 - 2 + 6*s").unwrap();
        let (_, q) = p.canonical_associate();
        let (u2, q2) = q.canonical_associate();
        assert!(u2.is_one());
        assert_eq!(q2, q);
    }

    #[test]
    fn display_round_trip() {
        for text in ["0", "1", "-s", "3/2*s^-1 - 1 + s^2", "s^-3", "2 + s"] {
            let p = P::parse(text).unwrap();
            assert_eq!(P::parse(&p.to_string()).unwrap(), p);
        }
        let p = P::parse("3/2*s^-1 + s^2 - 1").unwrap();
        assert_eq!(p.to_string(), "3/2*s^-1 - 1 + s^2");
    }

    #[test]
    fn exp_pairs_round_trip() {
        let p = P::parse("3/2*s^-1 + s^2 - 1").unwrap();
        let pairs = p.to_exp_pairs();
        assert_eq!(
            pairs,
            vec![
                (-1, "3/2".to_string()),
                (0, "-1".to_string()),
                (2, "1".to_string())
            ]
        );
        assert_eq!(P::from_exp_pairs(&pairs).unwrap(), p);
        assert!(P::from_exp_pairs(&[(3, "1".into()), (1, "2".into())]).is_err());
    }

    #[test]
    fn mod2_collapse() {
        type P2 = LaurentPoly<Zp<2>>;
        let p = P2::parse("s + s").unwrap();
        assert!(p.is_zero());
        let q = P2::parse("1 + s").unwrap();
        assert_eq!(q.mul(&q), P2::parse("1 + s^2").unwrap());
    }

    #[test]
    #[should_panic(expected = "division by zero polynomial")]
    fn divrem_by_zero_panics() {
        let _ = c(1).divrem(&P::zero());
    }
}
