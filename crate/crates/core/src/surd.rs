//! Exact arithmetic in `ℚ(√c)` for the cutoff formulas, whose half-integer
//! exponents leave at most one square root per expression.

use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// `a + b·√c` with rational `a`, `b` and a fixed non-negative radicand `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Surd {
    a: BigRational,
    b: BigRational,
    c: BigUint,
}

fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

impl Surd {
    pub fn rational(a: BigRational, c: &BigUint) -> Self {
        Self { a, b: BigRational::zero(), c: c.clone() }
    }

    pub fn integer(a: impl Into<BigInt>, c: &BigUint) -> Self {
        Self::rational(int(a), c)
    }

    /// `b·√c`
    pub fn root(b: BigRational, c: &BigUint) -> Self {
        Self { a: BigRational::zero(), b, c: c.clone() }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Surd::integer(1, &self.c);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Exact test of `n ≥ self`.
    fn at_most(&self, n: &BigInt) -> bool {
        let r = int(n.clone()) - &self.a;
        let b2c = &self.b * &self.b * int(BigInt::from_biguint(Sign::Plus, self.c.clone()));
        if !self.b.is_negative() {
            !r.is_negative() && &r * &r >= b2c
        } else {
            !r.is_negative() || &r * &r <= b2c
        }
    }

    /// Smallest integer not below the exact value.
    pub fn ceil(&self) -> BigInt {
        let abs_b = self.b.abs();
        let n2c = abs_b.numer() * abs_b.numer() * BigInt::from_biguint(Sign::Plus, self.c.clone());
        let d2 = abs_b.denom() * abs_b.denom();
        // floor(|b|·√c) = isqrt(floor(|b|²c))
        let floor_root = (n2c / d2).sqrt();
        let low = if self.b.is_negative() {
            &self.a - int(floor_root + 1)
        } else {
            &self.a + int(floor_root)
        };
        let candidate = low.ceil().to_integer();
        if self.at_most(&candidate) {
            candidate
        } else {
            candidate + 1
        }
    }
}

impl<'a> Add for &'a Surd {
    type Output = Surd;

    fn add(self, rhs: &'a Surd) -> Surd {
        debug_assert_eq!(self.c, rhs.c);
        Surd { a: &self.a + &rhs.a, b: &self.b + &rhs.b, c: self.c.clone() }
    }
}

impl<'a> Mul for &'a Surd {
    type Output = Surd;

    fn mul(self, rhs: &'a Surd) -> Surd {
        debug_assert_eq!(self.c, rhs.c);
        let c = int(BigInt::from_biguint(Sign::Plus, self.c.clone()));
        Surd {
            a: &self.a * &rhs.a + &self.b * &rhs.b * c,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            c: self.c.clone(),
        }
    }
}
