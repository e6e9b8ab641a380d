//! Cutoff values on the local-dimension that guarantee (or rule out) the
//! preservation of code distance for an LDI form.
//!
//! Every value that is compared against a candidate prime is an exact
//! integer. Where a half-integer exponent makes a term irrational the term is
//! evaluated exactly in `ℚ(√c)` and its ceiling taken.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::primes::next_prime_above;
use crate::surd::Surd;
use crate::{Error, Result};

/// How to read the degenerate-code cutoff, whose printed form has an
/// unbalanced parenthesis and an ambiguous cofactor exponent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reading {
    /// Cofactor exponent `d − 3/2`; the prefactor `(q−1)·2(d−1)` sits inside
    /// the outer power.
    #[default]
    Decided,
    /// Cofactor exponent `(d − 3)/2`; the prefactor multiplies the power.
    Strict,
}

impl fmt::Display for Reading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reading::Decided => "decided",
            Reading::Strict => "strict",
        })
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn to_natural(v: BigInt) -> BigUint {
    v.to_biguint().unwrap_or_default()
}

fn exp32(e: u64) -> u32 {
    u32::try_from(e).expect("exponent fits in u32")
}

/// `B^{2(d−1)} · (2(d−1))^{d−1}`
pub fn p_star_original(b: u64, d: u64) -> BigUint {
    let e = d.saturating_sub(1);
    Pow::pow(big(b), exp32(2 * e)) * Pow::pow(big(2 * e), exp32(e))
}

/// `⌈(B(q−1)(d−1)(1 + (d−1)²(q−1)^{d−1}(d−2)^{(d−2)/2}))^{d−1}⌉`
pub fn p_star_alternative(b: u64, d: u64, q: u64) -> BigUint {
    let e = d.saturating_sub(1);
    if e == 0 {
        return BigUint::one();
    }
    let c = big(d - 2);
    let half = half_power(d - 2, &c, (d - 2) as i64);
    let inner_coeff = BigInt::from(e * e) * Pow::pow(BigInt::from(q - 1), exp32(e));
    let one = Surd::integer(1, &c);
    let inner = &one + &(&Surd::integer(inner_coeff, &c) * &half);
    let prefactor = Surd::integer(BigInt::from(b) * BigInt::from(q - 1) * BigInt::from(e), &c);
    to_natural((&prefactor * &inner).pow(exp32(e)).ceil())
}

/// `base^{j/2}` as an element of `ℚ(√c)`, where `√base = root_coeff·√c` is
/// supplied by the caller through `base = root_coeff²·c`.
fn half_power_scaled(base: &BigUint, root_coeff: &BigUint, c: &BigUint, j: i64) -> Surd {
    let base_q = BigRational::from_integer(BigInt::from(base.clone()));
    if j.rem_euclid(2) == 0 {
        let k = j / 2;
        let v = if k >= 0 {
            Pow::pow(base_q, k as u32)
        } else {
            Pow::pow(base_q, (-k) as u32).recip()
        };
        return Surd::rational(v, c);
    }
    // j odd: base^{(j−1)/2} · root_coeff · √c
    let k = (j - 1) / 2;
    let scale = if k >= 0 {
        Pow::pow(base_q, k as u32)
    } else {
        Pow::pow(base_q, (-k) as u32).recip()
    };
    Surd::root(scale * BigRational::from_integer(BigInt::from(root_coeff.clone())), c)
}

/// `v^{j/2}` for a plain integer radicand `v = c`.
fn half_power(v: u64, c: &BigUint, j: i64) -> Surd {
    if v == 0 {
        // 0^0 = 1 (empty Hadamard product); other powers of zero vanish.
        return Surd::integer(i64::from(j == 0), c);
    }
    half_power_scaled(&big(v), &BigUint::one(), c, j)
}

/// Both candidate terms for the degenerate cutoff.
pub fn p_d_star_terms(b: u64, d: u64, q: u64, reading: Reading) -> (BigUint, BigUint) {
    let e = d.saturating_sub(1);
    if e == 0 {
        return (BigUint::one(), BigUint::one());
    }
    let term_a = Pow::pow(big(b), exp32(4 * e)) * Pow::pow(big(4 * e), exp32(2 * e));

    // C̃ = ((q−1)²(2d−3))^{j/2}, with √((q−1)²(2d−3)) = (q−1)√(2d−3).
    let c = big(2 * d - 3);
    let base = big((q - 1) * (q - 1)) * &c;
    let j = match reading {
        Reading::Decided => 2 * d as i64 - 3,
        Reading::Strict => d as i64 - 3,
    };
    let cofactor = half_power_scaled(&base, &big(q - 1), &c, j);
    let size = 2 * e;
    let one = Surd::integer(1, &c);
    let scaled = &Surd::integer(BigInt::from(q - 1) * BigInt::from(size * size), &c) * &cofactor;
    let factor = &one + &scaled;
    let b_factor = &Surd::integer(b, &c) * &factor;
    let prefactor = Surd::integer(BigInt::from(q - 1) * BigInt::from(size), &c);
    let term_b = match reading {
        Reading::Decided => (&prefactor * &b_factor).pow(exp32(size)),
        Reading::Strict => &prefactor * &b_factor.pow(exp32(size)),
    };
    (term_a, to_natural(term_b.ceil()))
}

/// `min{B^{4(d−1)}(4(d−1))^{2(d−1)}, term (b)}`
pub fn p_d_star(b: u64, d: u64, q: u64, reading: Reading) -> BigUint {
    let (a, t) = p_d_star_terms(b, d, q, reading);
    a.min(t)
}

/// A non-negative decimal rounded toward zero at a fixed number of places.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerDecimal {
    pub value: String,
    pub places: u32,
    pub rounding: String,
}

impl LowerDecimal {
    fn from_scaled(scaled: &BigUint, places: u32) -> Self {
        let digits = scaled.to_string();
        let width = places as usize + 1;
        let padded = format!("{digits:0>width$}");
        let (int_part, frac) = padded.split_at(padded.len() - places as usize);
        Self { value: format!("{int_part}.{frac}"), places, rounding: "down".into() }
    }

    pub fn to_f64(&self) -> f64 {
        self.value.parse().expect("decimal text")
    }
}

impl fmt::Display for LowerDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.value)
    }
}

pub const P_DOUBLE_STAR_PLACES: u32 = 20;

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| acc * big(n - i) / big(i + 1))
}

/// `√(1 + C(n,t)^{1/((n−k)−t)})` with `t = ⌊(d−1)/2⌋`, rounded down.
pub fn p_double_star(n: u64, k: u64, d: u64) -> Result<LowerDecimal> {
    let t = d.saturating_sub(1) / 2;
    let checks = n.checked_sub(k).filter(|&r| r > t).ok_or_else(|| {
        Error::NotApplicable(format!("n − k must exceed t = {t} (n = {n}, k = {k})"))
    })?;
    let e = exp32(checks - t);
    let scale = Pow::pow(big(10), P_DOUBLE_STAR_PLACES);
    let x_scaled = (binomial(n, t) * Pow::pow(scale.clone(), e)).nth_root(e);
    let y_scaled = ((&scale + x_scaled) * &scale).sqrt();
    Ok(LowerDecimal::from_scaled(&y_scaled, P_DOUBLE_STAR_PLACES))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HammingCheck {
    #[serde(serialize_with = "decimal", deserialize_with = "from_decimal")]
    pub lhs: BigUint,
    #[serde(serialize_with = "decimal", deserialize_with = "from_decimal")]
    pub rhs: BigUint,
    pub holds: bool,
}

/// `q^k · Σ_{j≤t} C(n,j)(q²−1)^j ≤ q^n` in exact integers.
pub fn hamming_check(n: u64, k: u64, d: u64, q: u64) -> HammingCheck {
    let t = d.saturating_sub(1) / 2;
    let sum: BigUint = (0..=t.min(n))
        .map(|j| binomial(n, j) * Pow::pow(big(q * q - 1), exp32(j)))
        .sum();
    let lhs = Pow::pow(big(q), exp32(k)) * sum;
    let rhs = Pow::pow(big(q), exp32(n));
    let holds = lhs <= rhs;
    HammingCheck { lhs, rhs, holds }
}

pub fn hamming_bound_holds(n: u64, k: u64, d: u64, q: u64) -> bool {
    hamming_check(n, k, d, q).holds
}

fn decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn from_decimal<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigUint, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

fn opt_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => decimal(v, s),
        None => s.serialize_none(),
    }
}

fn opt_from_decimal<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Option<BigUint>, D::Error> {
    Option::<String>::deserialize(d)?
        .map(|s| s.parse().map_err(serde::de::Error::custom))
        .transpose()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub b: u64,
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub reading: Reading,
    pub degenerate: bool,
    #[serde(serialize_with = "decimal", deserialize_with = "from_decimal")]
    pub p_star_original: BigUint,
    #[serde(serialize_with = "decimal", deserialize_with = "from_decimal")]
    pub p_star_alternative: BigUint,
    #[serde(serialize_with = "decimal", deserialize_with = "from_decimal")]
    pub p_star_effective: BigUint,
    /// Only for degenerate codes.
    #[serde(serialize_with = "opt_decimal", deserialize_with = "opt_from_decimal")]
    pub p_d_star: Option<BigUint>,
    #[serde(serialize_with = "opt_decimal", deserialize_with = "opt_from_decimal")]
    pub p_d_star_term_a: Option<BigUint>,
    #[serde(serialize_with = "opt_decimal", deserialize_with = "opt_from_decimal")]
    pub p_d_star_term_b: Option<BigUint>,
    pub hamming: HammingCheck,
    pub hamming_applicable: bool,
    pub p_double_star: Option<LowerDecimal>,
    #[serde(serialize_with = "decimal", deserialize_with = "from_decimal")]
    pub first_safe_prime: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsInput {
    pub b: u64,
    pub q: u64,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub degenerate: bool,
}

/// Evaluates every cutoff for one code.
///
/// The lower cutoff `p**` rests on the generalized quantum Hamming bound, so
/// it is only reported for non-degenerate codes that satisfy that bound.
pub fn bounds_report(input: BoundsInput, reading: Reading) -> BoundsReport {
    let BoundsInput { b, q, n, k, d, degenerate } = input;
    let original = p_star_original(b, d);
    let alternative = p_star_alternative(b, d, q);
    let effective = original.clone().min(alternative.clone());
    let (term_a, term_b) = p_d_star_terms(b, d, q, reading);
    let p_d = degenerate.then(|| term_a.clone().min(term_b.clone()));
    let hamming = hamming_check(n, k, d, q);
    let double_star = p_double_star(n, k, d).ok();
    let hamming_applicable = !degenerate && hamming.holds && double_star.is_some();
    let threshold = match &p_d {
        Some(v) => v.clone().max(effective.clone()),
        None => effective.clone(),
    };
    BoundsReport {
        b,
        q,
        n,
        k,
        d,
        reading,
        degenerate,
        p_star_original: original,
        p_star_alternative: alternative,
        p_star_effective: effective,
        p_d_star_term_a: degenerate.then_some(term_a),
        p_d_star_term_b: degenerate.then_some(term_b),
        p_d_star: p_d,
        hamming,
        hamming_applicable,
        p_double_star: if hamming_applicable { double_star } else { None },
        first_safe_prime: next_prime_above(&threshold),
    }
}

impl BoundsReport {
    pub fn p_double_star_f64(&self) -> Option<f64> {
        self.p_double_star.as_ref().map(LowerDecimal::to_f64)
    }

    pub fn first_safe_prime_u64(&self) -> Option<u64> {
        self.first_safe_prime.to_u64()
    }
}
