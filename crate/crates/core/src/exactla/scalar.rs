use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Largest prime modulus accepted for prime fields.
pub const MAX_PRIME: u8 = 251;

/// The base field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum FieldSpec {
    Prime(u8),
    Rationals,
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::Prime(2);

    pub fn prime(p: u8) -> Result<Self, Error> {
        if !(2..=MAX_PRIME).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidParameter(format!(
                "{p} is not a prime in 2..={MAX_PRIME}"
            )));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Prime(p) => *p as u32,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod(Fp { value: 0, modulus: *p }),
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Mod(Fp {
                value: v.rem_euclid(*p as i64) as u8,
                modulus: *p,
            }),
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar, Error> {
        if den == 0 {
            return Err(Error::Parse("zero denominator".into()));
        }
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rat(BigRational::new(num.into(), den.into()))),
            FieldSpec::Prime(_) => {
                let d = self.from_i64(den);
                if d.is_zero() {
                    return Err(Error::Parse(format!("denominator {den} vanishes in {self}")));
                }
                Ok(&self.from_i64(num) * &d.inv().expect("nonzero"))
            }
        }
    }

    /// Checks that `s` is an element of this field.
    pub fn owns(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Prime(p), Scalar::Mod(x)) => x.modulus == *p && x.value < *p,
            (FieldSpec::Rationals, Scalar::Rat(_)) => true,
            _ => false,
        }
    }

    pub fn zeros(&self, len: usize) -> Vec<Scalar> {
        vec![self.zero(); len]
    }

    pub fn unit_vector(&self, len: usize, at: usize) -> Vec<Scalar> {
        let mut v = self.zeros(len);
        v[at] = self.one();
        v
    }

    /// JSON form of a scalar: an integer for prime fields, `"a/b"` for rationals.
    pub fn scalar_to_json(&self, s: &Scalar) -> serde_json::Value {
        match s {
            Scalar::Mod(x) => serde_json::Value::from(x.value),
            Scalar::Rat(q) => serde_json::Value::from(format!("{}/{}", q.numer(), q.denom())),
        }
    }

    pub fn scalar_from_json(&self, v: &serde_json::Value) -> Result<Scalar, Error> {
        match v {
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::Parse(format!("non-integer scalar {n}")))?;
                Ok(self.from_i64(i))
            }
            serde_json::Value::String(s) => self.parse_scalar(s),
            other => Err(Error::Parse(format!("bad scalar {other}"))),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad scalar {s:?}"));
        match self {
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Rat(BigRational::new(n, d)))
            }
            FieldSpec::Prime(_) => match s.split_once('/') {
                Some((n, d)) => self.from_ratio(
                    n.trim().parse().map_err(|_| bad())?,
                    d.trim().parse().map_err(|_| bad())?,
                ),
                None => Ok(self.from_i64(s.parse().map_err(|_| bad())?)),
            },
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(2) => write!(f, "gf2"),
            FieldSpec::Prime(p) => write!(f, "gfp:{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "gf2" => Ok(FieldSpec::GF2),
            "Q" => Ok(FieldSpec::Rationals),
            _ => {
                let p = s
                    .strip_prefix("gfp:")
                    .and_then(|p| p.parse::<u8>().ok())
                    .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Error> {
        s.parse()
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Element of GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u8,
    pub modulus: u8,
}

impl Fp {
    pub(crate) fn inv(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let p = self.modulus as u32;
        let mut base = self.value as u32;
        let mut e = p - 2;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Some(Fp { value: acc as u8, modulus: self.modulus })
    }
}

/// A field element. Mixing elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(Fp),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(x) => x.value == 0,
            Scalar::Rat(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(x) => x.value == 1,
            Scalar::Rat(q) => q.is_one(),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Mod(x) => x.inv().map(Scalar::Mod),
            Scalar::Rat(q) => (!q.is_zero()).then(|| Scalar::Rat(q.recip())),
        }
    }

    /// Representative in `0..p` or the rational itself, for display.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod(x) => Some(x.value as i64),
            Scalar::Rat(q) => q.is_integer().then(|| q.to_integer().to_i64()).flatten(),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(q) => Some(q),
            Scalar::Mod(_) => None,
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Scalar::Mod(x) => s.serialize_u8(x.value),
            Scalar::Rat(q) => s.serialize_str(&format!("{}/{}", q.numer(), q.denom())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(x) => write!(f, "{}", x.value),
            Scalar::Rat(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rat(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

fn mismatch() -> ! {
    panic!("arithmetic between scalars of different fields")
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => {
                let p = a.modulus as u16;
                Scalar::Mod(Fp {
                    value: ((a.value as u16 + b.value as u16) % p) as u8,
                    modulus: a.modulus,
                })
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => mismatch(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod(a), Scalar::Mod(b)) if a.modulus == b.modulus => {
                let p = a.modulus as u16;
                Scalar::Mod(Fp {
                    value: ((a.value as u16 * b.value as u16) % p) as u8,
                    modulus: a.modulus,
                })
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => mismatch(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod(a) => Scalar::Mod(Fp {
                value: ((a.modulus - a.value) % a.modulus),
                modulus: a.modulus,
            }),
            Scalar::Rat(q) => Scalar::Rat(-q),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

/// `acc += coeff * v`, elementwise.
pub fn axpy(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    if coeff.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(coeff * x);
        }
    }
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Sign of a rational scalar; prime-field elements report 0 or 1.
pub fn signum(s: &Scalar) -> i32 {
    match s {
        Scalar::Mod(x) => (x.value != 0) as i32,
        Scalar::Rat(q) => {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        }
    }
}
