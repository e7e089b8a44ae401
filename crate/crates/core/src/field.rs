//! Exact coefficient fields: prime fields and the rationals.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{AlgebraError, Result};

/// Which field a computation runs over. Used for reports and context checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime(u32),
    Rationals,
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Prime(p) => write!(f, "Fp {p}"),
            FieldDescriptor::Rationals => write!(f, "QQ"),
        }
    }
}

/// A field given as a value (the descriptor), with elements of type [`Field::Elem`].
///
/// Elements do not know their field; every operation goes through the
/// descriptor, which keeps elements small (a `u32` for prime fields).
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// The element `num/den`. Fails when `den` vanishes in the field.
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// Whether text input may use `a/b` literals.
    fn accepts_fraction_literals(&self) -> bool;
    /// Uniformly random nonzero element (bounded height for the rationals).
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// Signed decimal rendering: `(-1, "3")` style pieces are assembled by the printer.
    fn to_signed_string(&self, a: &Self::Elem) -> (bool, String);
    /// The element as an exact rational, if it has an integer/rational reading.
    fn to_rational(&self, a: &Self::Elem) -> BigRational;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }
}

/// The prime field with `p` elements; representatives are kept in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_PRIME: u32 = 32003;

    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(AlgebraError::Domain(format!("{p} is not prime")));
        }
        if p >= 1 << 31 {
            return Err(AlgebraError::Domain(format!("prime {p} is too large (must be < 2^31)")));
        }
        Ok(PrimeField { p })
    }

    pub fn default_field() -> Self {
        PrimeField { p: Self::DEFAULT_PRIME }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce_i64(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if *a >= *b {
            *a - *b
        } else {
            *a + self.p - *b
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p as u64 - 2)
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce_i64(n)
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32().expect("reduced residue fits");
        let d = den.mod_floor(&p).to_u32().expect("reduced residue fits");
        if d == 0 {
            return Err(AlgebraError::Domain(format!("denominator vanishes modulo {}", self.p)));
        }
        Ok(self.div(&n, &d))
    }
    fn accepts_fraction_literals(&self) -> bool {
        false
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(1..self.p)
    }
    fn to_signed_string(&self, a: &u32) -> (bool, String) {
        if *a > self.p / 2 {
            (true, (self.p - *a).to_string())
        } else {
            (false, a.to_string())
        }
    }
    fn to_rational(&self, a: &u32) -> BigRational {
        let (neg, _) = self.to_signed_string(a);
        let v = if neg { -((self.p - *a) as i64) } else { *a as i64 };
        BigRational::from_integer(BigInt::from(v))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero in QQ");
        a.recip()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(AlgebraError::Domain("zero denominator".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn accepts_fraction_literals(&self) -> bool {
        true
    }
    fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let mut v = 0i64;
        while v == 0 {
            v = rng.gen_range(-97..=97);
        }
        self.from_i64(v)
    }
    fn to_signed_string(&self, a: &BigRational) -> (bool, String) {
        let abs = a.abs();
        let s = if abs.denom().is_one() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        (a.is_negative(), s)
    }
    fn to_rational(&self, a: &BigRational) -> BigRational {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn prime_field_rejects_composites() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(matches!(PrimeField::new(32004), Err(AlgebraError::Domain(_))));
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn prime_field_arithmetic_stays_reduced() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.neg(&0), 0);
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
    }

    #[test]
    fn fraction_literals() {
        let f = PrimeField::new(7).unwrap();
        let half = f.from_fraction(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_fraction(&BigInt::from(1), &BigInt::from(14)).is_err());
        let q = Rationals;
        let r = q.from_fraction(&BigInt::from(-2), &BigInt::from(4)).unwrap();
        assert_eq!(q.to_signed_string(&r), (true, "1/2".to_string()));
    }

    #[test]
    fn random_elements_are_nonzero() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f = PrimeField::new(5).unwrap();
        for _ in 0..100 {
            assert_ne!(f.random_nonzero(&mut rng), 0);
            assert!(!Rationals.is_zero(&Rationals.random_nonzero(&mut rng)));
        }
    }
}
