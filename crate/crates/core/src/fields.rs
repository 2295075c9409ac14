//! Exact scalars over a prime field GF(p) or the rationals.
//!
//! A [`Scalar`] always carries enough information to recover its field, and is
//! kept in canonical form: residues in `[0, p)` for GF(p), reduced fractions
//! with a positive denominator for Q.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Prime(u64),
    Rational,
}

/// A prime field GF(p) or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self {
            kind: FieldKind::Prime(p),
        })
    }

    pub const fn rational() -> Self {
        Self {
            kind: FieldKind::Rational,
        }
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    /// Field order `q`; `None` stands for the infinite field Q.
    pub fn order(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Prime(p) => Some(p),
            FieldKind::Rational => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, FieldKind::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self.kind {
            FieldKind::Prime(p) => Scalar::modular(0, p),
            FieldKind::Rational => Scalar(Repr::Rat(BigRational::zero())),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, x: i64) -> Scalar {
        match self.kind {
            FieldKind::Prime(p) => Scalar::modular((x as i128).rem_euclid(p as i128) as u64, p),
            FieldKind::Rational => Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(x)))),
        }
    }

    /// `num / den` as an element of this field.
    pub fn fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let d = self.from_i64(den).inv()?;
        Ok(&self.from_i64(num) * &d)
    }

    pub fn from_rational(&self, value: BigRational) -> Result<Scalar> {
        match self.kind {
            FieldKind::Rational => Ok(Scalar(Repr::Rat(value))),
            FieldKind::Prime(p) => {
                let n = bigint_mod(value.numer(), p);
                let d = bigint_mod(value.denom(), p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::modular(mul_mod(n, inv_mod(d, p), p), p))
            }
        }
    }

    /// All elements `0, 1, …, p−1` of a prime field, in order.
    pub fn enumerate_elements(&self) -> Result<Vec<Scalar>> {
        match self.kind {
            FieldKind::Prime(p) => Ok((0..p).map(|v| Scalar::modular(v, p)).collect()),
            FieldKind::Rational => Err(Error::NotEnumerable(*self)),
        }
    }

    /// Uniform element of GF(p), or a uniform integer in `[0, bound]` for Q.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: u64) -> Scalar {
        match self.kind {
            FieldKind::Prime(p) => Scalar::modular(rng.gen_range(0..p), p),
            FieldKind::Rational => {
                let v = rng.gen_range(0..=bound.max(1));
                Scalar(Repr::Rat(BigRational::from_integer(BigInt::from(v))))
            }
        }
    }

    /// Parses a scalar token: a decimal residue (any integer, reduced) for
    /// GF(p), `num` or `num/den` for Q.
    pub fn parse_scalar(&self, token: &str) -> Result<Scalar> {
        let bad = || Error::Parse(format!("invalid scalar {token:?} for field {self}"));
        let (num, den) = match token.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (
                BigInt::from_str(token.trim()).map_err(|_| bad())?,
                BigInt::one(),
            ),
        };
        if den.is_zero() {
            return Err(bad());
        }
        self.from_rational(BigRational::new(num, den))
            .map_err(|_| bad())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `GF(p)` and `GFp`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(Self::rational());
        }
        let digits = s
            .strip_prefix("GF")
            .map(|rest| {
                rest.strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(rest)
            })
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        Self::prime(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Mod { value: u64, modulus: u64 },
    Rat(BigRational),
}

/// An exact field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Scalar {
    fn modular(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Scalar(Repr::Mod { value, modulus })
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Mod { modulus, .. } => FieldSpec {
                kind: FieldKind::Prime(*modulus),
            },
            Repr::Rat(_) => FieldSpec::rational(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, .. } => *value == 0,
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Mod { value, .. } => *value == 1,
            Repr::Rat(r) => r.is_one(),
        }
    }

    /// The residue in `[0, p)` for GF(p) scalars.
    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Mod { value, .. } => Some(*value),
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rat(r) => Some(r),
            Repr::Mod { .. } => None,
        }
    }

    /// Sign of a rational scalar (−1, 0, 1); `None` over GF(p).
    pub fn signum(&self) -> Option<i8> {
        self.as_rational().map(|r| {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    pub fn arith(&self, other: &Scalar, op: ArithOp) -> Result<Scalar> {
        match (&self.0, &other.0) {
            (
                Repr::Mod {
                    value: a,
                    modulus: p,
                },
                Repr::Mod {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let v = match op {
                    ArithOp::Add => add_mod(*a, *b, *p),
                    ArithOp::Sub => add_mod(*a, *p - *b, *p) % *p,
                    ArithOp::Mul => mul_mod(*a, *b, *p),
                };
                Ok(Scalar::modular(v, *p))
            }
            (Repr::Rat(a), Repr::Rat(b)) => Ok(Scalar(Repr::Rat(match op {
                ArithOp::Add => a + b,
                ArithOp::Sub => a - b,
                ArithOp::Mul => a * b,
            }))),
            _ => Err(Error::FieldMismatch(self.field(), other.field())),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Mod { value, modulus } => Scalar::modular(inv_mod(*value, *modulus), *modulus),
            Repr::Rat(r) => Scalar(Repr::Rat(r.recip())),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        self.arith(&other.inv()?, ArithOp::Mul)
    }

    /// Re-normalizes the representative; a no-op on values built through
    /// this API.
    pub fn canonical(&self) -> Scalar {
        match &self.0 {
            Repr::Mod { value, modulus } => Scalar::modular(value % modulus, *modulus),
            Repr::Rat(r) => Scalar(Repr::Rat(BigRational::new(
                r.numer().clone(),
                r.denom().clone(),
            ))),
        }
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $op:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;

            /// Panics on mixed fields; use [`Scalar::arith`] for a checked variant.
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.arith(rhs, $op).expect("scalar field mismatch")
            }
        }

        impl $trait<Scalar> for Scalar {
            type Output = Scalar;

            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_op!(Add, add, ArithOp::Add);
forward_op!(Sub, sub, ArithOp::Sub);
forward_op!(Mul, mul, ArithOp::Mul);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Mod { value, modulus } => Scalar::modular((modulus - value) % modulus, *modulus),
            Repr::Rat(r) => Scalar(Repr::Rat(-r)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Mod { value, .. } => write!(f, "{value}"),
            Repr::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Repr::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

// Fermat; `p` is prime and `a` is nonzero mod `p`.
fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    u64::try_from(m).expect("residue fits in u64")
}

/// Deterministic Miller–Rabin; exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
