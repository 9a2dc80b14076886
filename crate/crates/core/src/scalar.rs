//! Coefficient rings for exact rank computations.
//!
//! Rank is computed by fraction-free column elimination, which only needs
//! ring operations and an exact zero test, so any integral domain whose
//! fraction field is the intended field works: `BigInt` for the rationals,
//! `BigRational` directly, or the prime fields [`Fp`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub trait Coefficient: Num + Clone + fmt::Debug + Send + Sync + 'static {
    fn from_i64(v: i64) -> Self;

    /// Rescales a column by a unit of the ring to keep entries small.
    /// Must not change which entries are zero.
    fn normalize(_column: &mut [Self]) {}
}

impl Coefficient for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }

    fn normalize(column: &mut [Self]) {
        let mut content = BigInt::zero();
        for c in column.iter() {
            content = content.gcd(c);
            if content.is_one() {
                return;
            }
        }
        if content > BigInt::one() {
            for c in column.iter_mut() {
                *c = &*c / &content;
            }
        }
    }
}

impl Coefficient for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {P})", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse().expect("division by zero in prime field")
    }
}

impl<const P: u64> Rem for Fp<P> {
    type Output = Self;
    /// Every nonzero element is a unit, so remainders vanish.
    fn rem(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "remainder by zero in prime field");
        Fp(0)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(0) - self
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Num for Fp<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> std::result::Result<Self, Self::FromStrRadixErr> {
        u64::from_str_radix(s, radix).map(Fp::new)
    }
}

impl<const P: u64> Coefficient for Fp<P> {
    fn from_i64(v: i64) -> Self {
        let r = (v as i128).rem_euclid(P as i128);
        Fp(r as u64)
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The coefficient field `k` of the polynomial ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub enum FieldChoice {
    #[default]
    Rationals,
    PrimeField(u64),
}

impl FieldChoice {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(Error::UnsupportedPrime(p));
        }
        Ok(FieldChoice::PrimeField(p))
    }

    /// Short tag used in serialized tables: `Q` or `GF(p)`.
    pub fn tag(&self) -> String {
        match self {
            FieldChoice::Rationals => "Q".to_string(),
            FieldChoice::PrimeField(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for FieldChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl std::str::FromStr for FieldChoice {
    type Err = Error;

    /// Accepts `Q`, `QQ`, `rationals`, a prime `p`, `GF(p)`, `Fp` or `Z/p`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let lower = s.to_ascii_lowercase();
        if matches!(lower.as_str(), "q" | "qq" | "rationals" | "rational") {
            return Ok(FieldChoice::Rationals);
        }
        let digits = lower
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| lower.strip_prefix("z/"))
            .or_else(|| lower.strip_prefix("gf"))
            .or_else(|| lower.strip_prefix('f'))
            .unwrap_or(&lower);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Invalid(format!("unknown field `{s}`")))?;
        FieldChoice::prime(p)
    }
}

/// Characteristics with a compiled [`Fp`] instance.
pub const SUPPORTED_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 32003, 65521, 65537, 1000003,
    2147483647,
];

/// Calls `$body` with the type alias `$F` bound to the coefficient ring of `$field`.
#[macro_export]
#[doc(hidden)]
macro_rules! with_coefficient {
    ($field:expr, $F:ident => $body:expr) => {{
        match $field {
            $crate::FieldChoice::Rationals => {
                type $F = $crate::Integer;
                Ok($body)
            }
            $crate::FieldChoice::PrimeField(p) => $crate::with_coefficient!(@primes p, $F => $body;
                2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79,
                83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
                173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257,
                32003, 65521, 65537, 1000003, 2147483647),
        }
    }};
    (@primes $p:ident, $F:ident => $body:expr; $($q:literal),*) => {
        match $p {
            $( $q => { type $F = $crate::scalar::Fp<$q>; Ok($body) } )*
            other => Err($crate::Error::UnsupportedPrime(other)),
        }
    };
}
