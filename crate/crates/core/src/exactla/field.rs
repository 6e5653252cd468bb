//! Prime fields `F_p` with `p < 2^31` and their elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// The prime field `F_p`. Only the modulus is stored, so fields are `Copy`
/// and compare by modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

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

/// Distinct prime factors of `n`, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Above this order the roots are dense enough that scanning upward is cheaper
// than enumerating powers of a generator.
const ENUMERATION_LIMIT: u64 = 1 << 16;

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    /// The element congruent to `v`.
    pub fn elem(self, v: i64) -> Scalar {
        Scalar {
            value: v.rem_euclid(self.p as i64) as u32,
            field: self,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar {
            value: 0,
            field: self,
        }
    }

    pub fn one(self) -> Scalar {
        self.elem(1)
    }

    #[inline]
    pub(crate) fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub(crate) fn sub(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + self.p as u64 - b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub(crate) fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub(crate) fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub(crate) fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.p;
        let mut b = base % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub(crate) fn inv(self, a: u32) -> Option<u32> {
        if a % self.p == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }

    /// Multiplicative order of a nonzero `a`, or `None` for zero.
    pub(crate) fn order_of(self, a: u32) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        let mut order = self.p as u64 - 1;
        for r in prime_factors(order) {
            while order % r == 0 && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        Some(order)
    }

    fn generator(self) -> u32 {
        let group = self.p as u64 - 1;
        let factors = prime_factors(group);
        (1..self.p)
            .find(|&g| factors.iter().all(|&r| self.pow(g, group / r) != 1))
            .expect("the multiplicative group of a prime field is cyclic")
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// An element of a [`PrimeField`], stored as its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: PrimeField,
}

impl Scalar {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, exp: u64) -> Scalar {
        Scalar {
            value: self.field.pow(self.value, exp),
            field: self.field,
        }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(self, exp: i64) -> Option<Scalar> {
        if exp >= 0 {
            Some(self.pow(exp as u64))
        } else {
            self.inv().map(|s| s.pow(exp.unsigned_abs()))
        }
    }

    pub fn inv(self) -> Option<Scalar> {
        self.field.inv(self.value).map(|value| Scalar {
            value,
            field: self.field,
        })
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(self) -> Option<u64> {
        self.field.order_of(self.value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        Scalar {
            value: self.field.add(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        Scalar {
            value: self.field.sub(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        debug_assert_eq!(self.field, rhs.field);
        Scalar {
            value: self.field.mul(self.value, rhs.value),
            field: self.field,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

/// The smallest element of exact multiplicative order `order`.
///
/// Such an element exists iff `order` divides `p - 1`.
pub fn primitive_root_of_unity(field: PrimeField, order: usize) -> Result<Scalar> {
    let group = field.p as u64 - 1;
    let n = order as u64;
    if n == 0 || group % n != 0 {
        return Err(Error::NoRootOfUnity {
            modulus: field.p,
            order,
        });
    }
    let value = if n <= ENUMERATION_LIMIT {
        // The order-n elements are g^(k (p-1)/n) with gcd(k, n) = 1.
        let base = field.pow(field.generator(), group / n);
        let mut best = u32::MAX;
        let mut power = 1 % field.p;
        for k in 0..n {
            if gcd(k, n) == 1 {
                best = best.min(power);
            }
            power = field.mul(power, base);
        }
        best
    } else {
        (1..field.p)
            .find(|&q| field.order_of(q) == Some(n))
            .expect("an element of every order dividing p - 1 exists")
    };
    Ok(Scalar { value, field })
}
