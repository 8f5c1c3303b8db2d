//! Exact coefficient fields: arbitrary-precision rationals and prime residues.
//!
//! Rationals keep an `i64` fast path and fall back to big integers only when a
//! numerator or denominator outgrows it. Coefficients in this calculus are
//! almost always `0` or `±1`, so the fast path is hit nearly everywhere.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Smallest modulus accepted in prime-field mode.
pub const MIN_PRIME: u64 = 1_000_000;

/// Default modulus offered for the prime-field mode (2³¹ − 1).
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

/// A field with exact arithmetic.
///
/// `Params` carries whatever is needed to create constants (nothing for the
/// rationals, the modulus for prime fields).
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    type Params: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static;

    fn from_i64(n: i64, params: &Self::Params) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;

    fn zero(params: &Self::Params) -> Self {
        Self::from_i64(0, params)
    }

    fn one(params: &Self::Params) -> Self {
        Self::from_i64(1, params)
    }

    fn is_one(&self) -> bool;
}

/// Exact rational number.
#[derive(Clone)]
pub enum Rational {
    /// `num / den` in lowest terms with `den > 0`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

impl Rational {
    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if den == 1 {
            if let Ok(n) = i64::try_from(num) {
                return Rational::Small(n, 1);
            }
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (num / g, den / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational::Small(n, d),
            _ => Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Rational::Small(n, d),
            _ => Rational::Big(Box::new(r)),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Rational::Small(a, b), Rational::Small(c, d)) => a == c && b == d,
            // both sides are normalized, so a Small never equals a Big
            (Rational::Big(a), Rational::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Field for Rational {
    type Params = ();

    fn from_i64(n: i64, _: &()) -> Self {
        Rational::Small(n, 1)
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rational::Small(1, 1))
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    return Self::from_i128(a + c, b);
                }
                match (a * d).checked_add(c * b) {
                    Some(num) => Self::from_i128(num, b * d),
                    None => Self::from_big(self.to_big() + rhs.to_big()),
                }
            }
            _ => Self::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Self::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Rational::Small(n, d) if *n != i64::MIN => Rational::Small(-n, *d),
            _ => Self::from_big(-self.to_big()),
        }
    }

    fn inv(&self) -> Self {
        match self {
            Rational::Small(0, _) => panic!("inverse of zero"),
            Rational::Small(n, d) => Self::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => {
                assert!(!b.is_zero(), "inverse of zero");
                Self::from_big(b.recip())
            }
        }
    }
}

/// Residue modulo a prime `p` (carried by the element).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(self, mut exp: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { value: 1 % self.modulus, modulus: self.modulus };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Field for Fp {
    type Params = u64;

    fn from_i64(n: i64, p: &u64) -> Self {
        let v = (n as i128).rem_euclid(*p as i128) as u64;
        Fp { value: v, modulus: *p }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 + rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = (self.value as u128 * rhs.value as u128) % self.modulus as u128;
        Fp { value: s as u64, modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        if self.value == 0 {
            *self
        } else {
            Fp { value: self.modulus - self.value, modulus: self.modulus }
        }
    }

    fn inv(&self) -> Self {
        assert!(self.value != 0, "inverse of zero");
        self.pow(self.modulus - 2)
    }
}

/// Deterministic Miller–Rabin, valid for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Which exact field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldMode {
    Rational,
    Prime(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldModeError {
    #[error("unknown field '{0}' (expected 'rational' or 'prime:<p>')")]
    Unknown(String),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small (need p >= {MIN_PRIME})")]
    TooSmall(u64),
    #[error("modulus {0} is too large (need p < 2^62)")]
    TooLarge(u64),
}

impl FieldMode {
    pub fn prime(p: u64) -> Result<Self, FieldModeError> {
        if p < MIN_PRIME {
            return Err(FieldModeError::TooSmall(p));
        }
        if p >= 1 << 62 {
            return Err(FieldModeError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldModeError::NotPrime(p));
        }
        Ok(FieldMode::Prime(p))
    }

    /// Validates an already-constructed mode (e.g. one deserialized from a config).
    pub fn validate(self) -> Result<Self, FieldModeError> {
        match self {
            FieldMode::Rational => Ok(self),
            FieldMode::Prime(p) => Self::prime(p),
        }
    }
}

impl fmt::Display for FieldMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldMode::Rational => write!(f, "rational"),
            FieldMode::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for FieldMode {
    type Err = FieldModeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "rational" {
            return Ok(FieldMode::Rational);
        }
        let Some(rest) = s.strip_prefix("prime:") else {
            return Err(FieldModeError::Unknown(s.to_string()));
        };
        let p: u64 = rest.parse().map_err(|_| FieldModeError::Unknown(s.to_string()))?;
        FieldMode::prime(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_fast_path_and_overflow() {
        let big = Rational::new(i64::MAX, 1);
        let sum = Field::add(&big, &big);
        assert!(matches!(sum, Rational::Big(_)));
        let back = Field::sub(&sum, &big);
        assert_eq!(back, big);
        assert!(matches!(back, Rational::Small(..)));
        let third = Rational::new(1, 3);
        assert_eq!(Field::mul(&third, &Rational::new(3, 1)), Rational::new(1, 1));
        assert_eq!(third.inv(), Rational::new(3, 1));
        assert_eq!(Rational::new(2, -4), Rational::new(-1, 2));
    }

    #[test]
    fn prime_field_inverse() {
        let p = DEFAULT_PRIME;
        for n in [1i64, 2, 3, 12345, -7] {
            let x = Fp::from_i64(n, &p);
            assert!(x.mul(&x.inv()).is_one());
        }
        assert_eq!(Fp::from_i64(-1, &p).value(), p - 1);
    }

    #[test]
    fn primality() {
        assert!(is_prime(DEFAULT_PRIME));
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(!is_prime(561));
        assert!(is_prime(2));
    }

    #[test]
    fn field_mode_parsing() {
        assert_eq!("rational".parse::<FieldMode>(), Ok(FieldMode::Rational));
        assert_eq!("prime:2147483647".parse::<FieldMode>(), Ok(FieldMode::Prime(DEFAULT_PRIME)));
        assert_eq!("prime:7".parse::<FieldMode>(), Err(FieldModeError::TooSmall(7)));
        assert_eq!("prime:1000001".parse::<FieldMode>(), Err(FieldModeError::NotPrime(1_000_001)));
        assert!(matches!("float".parse::<FieldMode>(), Err(FieldModeError::Unknown(_))));
    }
}
