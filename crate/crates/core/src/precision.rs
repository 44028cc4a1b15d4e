//! High-precision reals as dyadic rationals, and fixed-point rendering.
//!
//! Reals that enter the output (`ln X`, ratios against it) are carried as
//! exact dyadic rationals rounded to a configurable number of bits, so every
//! comparison downstream is an exact rational comparison.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub const PRECISION_ENV: &str = "ORBITKIT_PRECISION_BITS";
pub const DEFAULT_PRECISION_BITS: u32 = 64;
pub const MIN_PRECISION_BITS: u32 = 60;
pub const MAX_PRECISION_BITS: u32 = 1 << 16;

const GUARD_BITS: u32 = 32;

/// Working precision in bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision(u32);

impl Precision {
    pub fn new(bits: u32) -> Result<Self> {
        if !(MIN_PRECISION_BITS..=MAX_PRECISION_BITS).contains(&bits) {
            return Err(Error::InvalidParameter(format!(
                "precision must be between {MIN_PRECISION_BITS} and {MAX_PRECISION_BITS} bits, got {bits}"
            )));
        }
        Ok(Precision(bits))
    }

    /// Reads `ORBITKIT_PRECISION_BITS`, falling back to 64 bits when unset.
    pub fn from_env() -> Result<Self> {
        match std::env::var(PRECISION_ENV) {
            Ok(s) => {
                let bits = s.trim().parse::<u32>().map_err(|_| {
                    Error::InvalidParameter(format!("{PRECISION_ENV}={s:?} is not an integer"))
                })?;
                Precision::new(bits)
            }
            Err(_) => Ok(Precision::default()),
        }
    }

    pub fn bits(&self) -> u32 {
        self.0
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(DEFAULT_PRECISION_BITS)
    }
}

/// `2^w · atanh(num/den)`, truncated, for `0 ≤ num/den ≤ 1/3`.
fn atanh_fixed(num: &BigUint, den: &BigUint, w: u32) -> BigUint {
    let num2 = num * num;
    let den2 = den * den;
    let mut power = (BigUint::one() << w) * num / den;
    let mut sum = BigUint::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = power * &num2 / &den2;
        k += 2;
    }
    sum
}

/// `ln x` for an integer `x ≥ 1`, as a dyadic rational within `2^-bits` of
/// the true value.
pub fn ln_u64(x: u64, precision: Precision) -> Result<Rational> {
    if x == 0 {
        return Err(Error::ZeroArgument { op: "ln" });
    }
    let bits = precision.bits();
    let w = bits + GUARD_BITS;
    let k = 63 - x.leading_zeros();
    let pow = 1u64 << k;
    // ln x = k ln 2 + 2 atanh((x - 2^k)/(x + 2^k)); both arguments are ≤ 1/3
    let ln2 = atanh_fixed(&BigUint::one(), &BigUint::from(3u32), w) * 2u32;
    let rest = atanh_fixed(
        &BigUint::from(x - pow),
        &(BigUint::from(x) + BigUint::from(pow)),
        w,
    ) * 2u32;
    let total = ln2 * k + rest;
    let rounded = round_shift(&BigInt::from(total), GUARD_BITS);
    Ok(Rational::new(rounded, BigInt::one() << bits))
}

/// `round(x / 2^shift)`, ties away from zero.
fn round_shift(x: &BigInt, shift: u32) -> BigInt {
    if shift == 0 {
        return x.clone();
    }
    let half = BigInt::one() << (shift - 1);
    if x.is_negative() {
        -((-x + half) >> shift)
    } else {
        (x + half) >> shift
    }
}

/// Rounds `q` to a dyadic rational carrying at least `precision` significant bits.
pub fn round_significant(q: &Rational, precision: Precision) -> Rational {
    if q.is_zero() {
        return Rational::zero();
    }
    let num_bits = q.numer().bits() as i64;
    let den_bits = q.denom().bits() as i64;
    // |q| ≥ 2^(num_bits - den_bits - 1)
    let exponent = num_bits - den_bits - 1;
    let scale = precision.bits() as i64 - exponent;
    let scaled = if scale >= 0 {
        q * Rational::from_integer(BigInt::one() << scale as u64)
    } else {
        q / Rational::from_integer(BigInt::one() << (-scale) as u64)
    };
    let rounded = round_rational(&scaled);
    if scale >= 0 {
        Rational::new(rounded, BigInt::one() << scale as u64)
    } else {
        Rational::from_integer(rounded << (-scale) as u64)
    }
}

/// Nearest integer, ties away from zero.
pub fn round_rational(q: &Rational) -> BigInt {
    let two = BigInt::from(2);
    let (n, d) = (q.numer(), q.denom());
    let magnitude = (n.abs() * &two + d).div_floor(&(d * &two));
    if n.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Fixed-point decimal rendering with exactly `digits` places.
pub fn fmt_fixed(q: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = round_rational(&(q * Rational::from_integer(scale.clone())));
    let negative = scaled.is_negative();
    let magnitude = scaled.abs();
    let (int_part, frac_part) = magnitude.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part, width = digits)
    }
}

/// `num/den` rendering used in tables; integers keep the `/1`.
pub fn fmt_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// `x / 2^n` as a float without materializing `2^n`.
pub fn scaled_to_f64(x: &BigUint, n: u64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    let (mantissa, shift) = if bits > 64 {
        ((x >> (bits - 64)).to_u64().unwrap_or(u64::MAX), bits - 64)
    } else {
        (x.to_u64().unwrap_or(u64::MAX), 0)
    };
    let exponent = shift as i64 - n as i64;
    if exponent < -1200 {
        return 0.0;
    }
    let mut value = mantissa as f64;
    let mut e = exponent;
    // split the scaling to stay clear of intermediate underflow
    while e < -1000 {
        value *= 2f64.powi(-1000);
        e += 1000;
    }
    value * 2f64.powi(e as i32)
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
