use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// The coefficient field. Only the rationals and prime fields are supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Prime field of characteristic `p`. The modulus is kept below 2^32 so
    /// products fit in a `u64`.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::Input(format!("{p} is not a prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::Input(format!("prime {p} exceeds the supported range")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn size(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Mod(v.rem_euclid(*p as i64) as u64, *p),
        }
    }

    /// Parses an integer or `a/b` literal.
    pub fn parse(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Input(format!("bad field literal `{text}`"));
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(text).map_err(|_| bad())?, BigInt::one()),
        };
        if den.is_zero() {
            return Err(bad());
        }
        match self {
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(num, den))),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = num.mod_floor(&pb).to_u64().unwrap();
                let d = den.mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::Input(format!(
                        "literal `{text}` has denominator divisible by {p}"
                    )));
                }
                Ok(Scalar::Mod(n, *p).mul(&Scalar::Mod(d, *p).inv()))
            }
        }
    }

    /// A random element. Rationals draw small integers in [-4, 4].
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            Field::Rationals => self.from_i64(rng.gen_range(-4..=4)),
            Field::Prime(p) => Scalar::Mod(rng.gen_range(0..*p), *p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Field::Rationals => "q".to_string(),
            Field::Prime(p) => format!("fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim().to_ascii_lowercase();
        if s == "q" || s == "rationals" {
            return Ok(Field::Rationals);
        }
        if let Some(rest) = s.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::Input(format!("bad field `{s}`")))?;
            return Field::prime(p);
        }
        Err(Error::Input(format!("unknown field `{s}` (use q or fp:<p>)")))
    }
}

/// An exact field element. Elements of different fields never mix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64, u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, _) => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod(v, p) => Scalar::Mod(pow_mod(*v, *p - 2, *p), *p),
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    fn binop(&self, other: &Scalar, op: Op) -> Scalar {
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(match op {
                Op::Add => a + b,
                Op::Sub => a - b,
                Op::Mul => a * b,
            }),
            (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                debug_assert_eq!(p, q);
                let v = match op {
                    Op::Add => (a + b) % p,
                    Op::Sub => (a + p - b) % p,
                    Op::Mul => ((*a as u128 * *b as u128) % *p as u128) as u64,
                };
                Scalar::Mod(v, *p)
            }
            _ => panic!("mixed-field arithmetic"),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.binop(other, Op::Add)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.binop(other, Op::Sub)
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.binop(other, Op::Mul)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod(v, p) => Scalar::Mod((p - v) % p, *p),
        }
    }

    /// Adds `a * b` in place.
    pub fn add_mul(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = self.add(&a.mul(b));
    }

    /// Literal form used in documents: integers or `a/b`.
    pub fn to_literal(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, Copy)]
enum Op {
    Add,
    Sub,
    Mul,
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{v}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// Sign helper: `(-1)^n` as a field element.
pub fn sign(field: &Field, n: i64) -> Scalar {
    if n.rem_euclid(2) == 0 {
        field.one()
    } else {
        field.one().neg()
    }
}

impl Scalar {
    /// Absolute numerator size, used only for diagnostics.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rat(r) => r.numer().abs().bits().max(r.denom().bits()),
            Scalar::Mod(_, p) => 64 - p.leading_zeros() as u64,
        }
    }
}
