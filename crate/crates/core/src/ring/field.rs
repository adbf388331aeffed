//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate happens over one of these fields; there is
//! no floating point anywhere. `Rat` backs the default rational setting,
//! `Zp<P>` backs modular settings (`Zp<2>` in particular enables exhaustive
//! test oracles).

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};

/// Errors raised by field-element construction and parsing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    Parse(String),
    NotInvertible(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::Parse(msg) => write!(f, "cannot parse field element: {msg}"),
            FieldError::NotInvertible(msg) => write!(f, "element is not invertible: {msg}"),
        }
    }
}

impl std::error::Error for FieldError {}

/// An exact field of coefficients.
///
/// All operations are pure and total except `inv`, which is `None` on zero.
/// Values are immutable and freely shareable across threads.
pub trait Field:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn from_int(n: i64) -> Self;

    /// Image of the rational `num/den` in this field.
    ///
    /// Fails when `den` maps to zero (e.g. `1/2` over `Zp<2>`).
    fn from_ratio(num: i64, den: i64) -> Result<Self, FieldError>;

    /// Parse `"n"` or `"n/d"` with optional sign.
    fn parse(text: &str) -> Result<Self, FieldError>;

    /// `(is_negative, magnitude)` split used when printing polynomials.
    /// Fields without a meaningful sign return `(false, self)`.
    fn sign_split(&self) -> (bool, Self);

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// A positive constant `c` such that scaling the given coefficients by
    /// `c` gives them canonical magnitude (integers with content one over the
    /// rationals). Returns `one` where coefficient size is not a concern.
    /// Used to keep intermediate results small during elimination.
    fn content_scale<'a, I>(coeffs: I) -> Self
    where
        Self: 'a,
        I: Iterator<Item = &'a Self>,
    {
        let _ = coeffs;
        Self::one()
    }
}

/// A field whose elements can be listed, enabling exhaustive oracles.
pub trait EnumerableField: Field {
    fn elements() -> Vec<Self>;
}

/// Arbitrary-precision rational number, always in lowest terms with positive
/// denominator (maintained by `num`'s `Ratio`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rat(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl Hash for Rat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.numer().hash(state);
        self.0.denom().hash(state);
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Field for Rat {
    fn zero() -> Self {
        Rat(BigRational::zero())
    }

    fn one() -> Self {
        Rat(BigRational::one())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rat(-self.0.clone())
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    fn from_int(n: i64) -> Self {
        Rat(BigRational::from(BigInt::from(n)))
    }

    fn from_ratio(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::NotInvertible("zero denominator".into()));
        }
        Ok(Rat::new(num, den))
    }

    fn parse(text: &str) -> Result<Self, FieldError> {
        let text = text.trim();
        let (num_s, den_s) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num = BigInt::from_str(num_s)
            .map_err(|_| FieldError::Parse(format!("bad integer `{num_s}`")))?;
        let den = match den_s {
            Some(d) => {
                BigInt::from_str(d).map_err(|_| FieldError::Parse(format!("bad integer `{d}`")))?
            }
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(FieldError::Parse("zero denominator".into()));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    fn sign_split(&self) -> (bool, Self) {
        if self.0.is_negative() {
            (true, Rat(-self.0.clone()))
        } else {
            (false, self.clone())
        }
    }

    fn content_scale<'a, I>(coeffs: I) -> Self
    where
        I: Iterator<Item = &'a Self>,
    {
        use num::Integer;
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in coeffs {
            if c.0.is_zero() {
                continue;
            }
            den_lcm = den_lcm.lcm(c.0.denom());
            num_gcd = num_gcd.gcd(c.0.numer());
        }
        if num_gcd.is_zero() {
            return Rat::one();
        }
        Rat(BigRational::new(den_lcm, num_gcd))
    }
}

/// The prime field with `P` elements, residues stored in `[0, P)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Zp<const P: u64> {
    value: u64,
}

impl<const P: u64> Zp<P> {
    pub fn new(n: i64) -> Self {
        let p = P as i128;
        let v = ((n as i128 % p) + p) % p;
        Zp { value: v as u64 }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus() -> u64 {
        P
    }
}

impl<const P: u64> fmt::Display for Zp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<const P: u64> Field for Zp<P> {
    fn zero() -> Self {
        Zp { value: 0 }
    }

    fn one() -> Self {
        Zp { value: 1 % P }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn add(&self, rhs: &Self) -> Self {
        Zp {
            value: (self.value + rhs.value) % P,
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Zp {
            value: (self.value + P - rhs.value) % P,
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        Zp {
            value: ((self.value as u128 * rhs.value as u128) % P as u128) as u64,
        }
    }

    fn neg(&self) -> Self {
        Zp {
            value: (P - self.value) % P,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // extended Euclid on (value, P)
        let (mut old_r, mut r) = (self.value as i128, P as i128);
        let (mut old_s, mut s) = (1i128, 0i128);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None; // non-prime modulus and non-coprime value
        }
        let p = P as i128;
        let v = ((old_s % p) + p) % p;
        Some(Zp { value: v as u64 })
    }

    fn from_int(n: i64) -> Self {
        Zp::new(n)
    }

    fn from_ratio(num: i64, den: i64) -> Result<Self, FieldError> {
        if den == 0 {
            return Err(FieldError::NotInvertible("zero denominator".into()));
        }
        let d = Zp::<P>::new(den);
        let d_inv = d.inv().ok_or_else(|| {
            FieldError::NotInvertible(format!("denominator {den} is zero mod {P}"))
        })?;
        Ok(Zp::<P>::new(num).mul(&d_inv))
    }

    fn parse(text: &str) -> Result<Self, FieldError> {
        let text = text.trim();
        let (num_s, den_s) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let num = i128::from_str(num_s)
            .map_err(|_| FieldError::Parse(format!("bad integer `{num_s}`")))?;
        let p = P as i128;
        let num_red = (((num % p) + p) % p) as i64;
        let n = Zp::<P>::new(num_red);
        match den_s {
            None => Ok(n),
            Some(d) => {
                let den = i128::from_str(d)
                    .map_err(|_| FieldError::Parse(format!("bad integer `{d}`")))?;
                let den_red = (((den % p) + p) % p) as i64;
                let d = Zp::<P>::new(den_red);
                let d_inv = d.inv().ok_or_else(|| {
                    FieldError::NotInvertible(format!("denominator {den} is zero mod {P}"))
                })?;
                Ok(n.mul(&d_inv))
            }
        }
    }

    fn sign_split(&self) -> (bool, Self) {
        (false, *self)
    }
}

impl<const P: u64> EnumerableField for Zp<P> {
    fn elements() -> Vec<Self> {
        (0..P).map(|v| Zp { value: v }).collect()
    }
}
