//! Exact scalar arithmetic over the supported coefficient fields.
//!
//! Two kinds of field are supported: the rationals ℚ (arbitrary-precision,
//! always in lowest terms with positive denominator) and prime fields 𝔽p for
//! a prime p < 2³¹ (residues normalized to `0..p`). Every [`Scalar`]
//! carries its field, so mixing coefficients from different fields is a
//! detectable error rather than silent nonsense. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};

/// Identifies the coefficient field of a scalar, matrix, or algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// The rational numbers ℚ.
    Rationals,
    /// The prime field 𝔽p. The modulus is guaranteed prime and < 2³¹.
    Prime(u32),
}

impl FieldSpec {
    /// Constructs the prime-field spec, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    /// Characteristic of the field: 0 for ℚ, p for 𝔽p.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// Deterministic trial division; moduli are < 2³¹ so this is instant.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element tagged with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Rational value; `BigRational` keeps lowest terms and positive denominator.
    Rat(BigRational),
    /// Residue `value` in `0..p` of the prime field 𝔽p.
    Mod { value: u64, p: u32 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Mod { value: 0, p },
        }
    }

    pub fn one(field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Mod { value: 1, p },
        }
    }

    /// Embeds a machine integer into the field (reducing mod p for 𝔽p).
    pub fn from_int(field: FieldSpec, n: i64) -> Scalar {
        match field {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldSpec::Prime(p) => {
                let m = (n.rem_euclid(p as i64)) as u64;
                Scalar::Mod { value: m, p }
            }
        }
    }

    /// Exact rational `num/den`; only meaningful over ℚ.
    pub fn from_ratio(num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Builds a rational scalar from big integers, reducing to lowest terms.
    pub fn from_big_ratio(num: BigInt, den: BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Malformed("zero denominator in coefficient".into()));
        }
        Ok(Scalar::Rat(BigRational::new(num, den)))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: if *value == 0 { 0 } else { *p as u64 - value },
                p: *p,
            },
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                assert_eq!(p, q, "field mismatch in scalar arithmetic");
                Scalar::Mod {
                    value: (a + b) % (*p as u64),
                    p: *p,
                }
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, p: q }) => {
                assert_eq!(p, q, "field mismatch in scalar arithmetic");
                Scalar::Mod {
                    value: (a * b) % (*p as u64),
                    p: *p,
                }
            }
            _ => panic!("field mismatch in scalar arithmetic"),
        }
    }

    /// Multiplicative inverse; dividing by zero is an error, not a panic.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: mod_pow(*value, *p as u64 - 2, *p as u64),
                p: *p,
            },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&rhs.inv()?))
    }

    /// `self + c * other`, the inner step of every row operation.
    pub fn add_scaled(&self, c: &Scalar, other: &Scalar) -> Scalar {
        self.add(&c.mul(other))
    }
}

/// Fast modular exponentiation; `p < 2³¹` keeps every product inside u64.
fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
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
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// True when the rational scalar is a non-negative integer — used by the file
/// format to decide whether a denominator needs printing.
pub fn rational_parts(s: &Scalar) -> Option<(BigInt, BigInt)> {
    match s {
        Scalar::Rat(r) => Some((r.numer().clone(), r.denom().clone())),
        Scalar::Mod { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation_accepts_primes_and_rejects_composites() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(5).is_ok());
        assert!(FieldSpec::prime(101).is_ok());
        assert!(matches!(FieldSpec::prime(1), Err(Error::InvalidPrime(1))));
        assert!(matches!(FieldSpec::prime(4), Err(Error::InvalidPrime(4))));
        assert!(matches!(FieldSpec::prime(91), Err(Error::InvalidPrime(91))));
        assert!(FieldSpec::prime(1 << 31).is_err());
    }

    #[test]
    fn rational_arithmetic_stays_in_lowest_terms() {
        let a = Scalar::from_ratio(2, 4);
        let b = Scalar::from_ratio(1, 2);
        assert_eq!(a, b);
        let c = a.add(&b);
        assert_eq!(c, Scalar::one(FieldSpec::Rationals));
        let d = Scalar::from_ratio(-3, -6);
        assert_eq!(d, b, "negative denominators normalize away");
    }

    #[test]
    fn prime_field_arithmetic_wraps_correctly() {
        let f = FieldSpec::Prime(5);
        let four = Scalar::from_int(f, 4);
        let three = Scalar::from_int(f, 3);
        assert_eq!(four.add(&three), Scalar::from_int(f, 2));
        assert_eq!(four.mul(&three), Scalar::from_int(f, 2));
        assert_eq!(four.neg(), Scalar::from_int(f, 1));
        assert_eq!(Scalar::from_int(f, -1), Scalar::from_int(f, 4));
    }

    #[test]
    fn inverses_multiply_to_one_in_both_fields() {
        let q = Scalar::from_ratio(7, 3);
        assert!(q.mul(&q.inv().unwrap()).is_one());
        for p in [2u32, 3, 5, 7] {
            let f = FieldSpec::Prime(p);
            for v in 1..p as i64 {
                let s = Scalar::from_int(f, v);
                assert!(s.mul(&s.inv().unwrap()).is_one(), "inverse of {v} mod {p}");
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(
            Scalar::zero(FieldSpec::Rationals).inv(),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            Scalar::zero(FieldSpec::Prime(3)).inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn display_shows_fractions_and_residues() {
        assert_eq!(Scalar::from_ratio(-1, 2).to_string(), "-1/2");
        assert_eq!(Scalar::from_int(FieldSpec::Rationals, 3).to_string(), "3");
        assert_eq!(Scalar::from_int(FieldSpec::Prime(7), 12).to_string(), "5");
    }
}
