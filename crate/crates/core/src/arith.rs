//! Number-theoretic primitives: divisors, the Möbius function and p-adic
//! absolute values of nonzero integers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};

/// Exact rational over arbitrary-precision integers, always in lowest terms
/// with a positive denominator.
pub type Rational = BigRational;

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "divisors" });
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Möbius function μ(n).
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "mobius" });
    }
    let mut m = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Möbius values μ(1..=n) from a linear sieve; index 0 is unused.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    let mut least_factor = vec![0usize; n + 1];
    let mut primes = Vec::new();
    mu[1] = 1;
    for i in 2..=n {
        if least_factor[i] == 0 {
            least_factor[i] = i;
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            if p > least_factor[i] || i * p > n {
                break;
            }
            least_factor[i * p] = p;
            mu[i * p] = if p == least_factor[i] { 0 } else { -mu[i] };
        }
    }
    mu
}

pub fn is_prime(p: u64) -> bool {
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

/// Exponent of the prime `p` in `n`, by repeated exact division.
pub fn ord_p(n: &BigUint, p: u64) -> Result<u32> {
    if n.is_zero() {
        return Err(Error::ZeroArgument { op: "ord_p" });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let p = BigUint::from(p);
    let mut m = n.clone();
    let mut a = 0u32;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Ok(a);
        }
        m = q;
        a += 1;
    }
}

/// Word-sized `ord_p`.
pub fn ord_p_u64(mut n: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "ord_p" });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut a = 0;
    while n % p == 0 {
        n /= p;
        a += 1;
    }
    Ok(a)
}

/// The p-adic absolute value `p^(-valuation)` of a nonzero integer, kept as
/// its exponent so products and comparisons stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PAdicAbs {
    prime: u64,
    valuation: u32,
}

impl PAdicAbs {
    pub fn new(prime: u64, valuation: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(PAdicAbs { prime, valuation })
    }

    /// `|1|_p`.
    pub fn unit(prime: u64) -> Result<Self> {
        Self::new(prime, 0)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> u32 {
        self.valuation
    }

    /// `p^valuation`, the reciprocal of the absolute value.
    pub fn inverse_value(&self) -> BigUint {
        BigUint::from(self.prime).pow(self.valuation)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(BigInt::one(), BigInt::from(self.inverse_value()))
    }

    /// Product of two absolute values for the same prime.
    pub fn mul(&self, other: &PAdicAbs) -> Result<PAdicAbs> {
        if self.prime != other.prime {
            return Err(Error::InvalidParameter(format!(
                "cannot multiply |.|_{} by |.|_{}",
                self.prime, other.prime
            )));
        }
        Ok(PAdicAbs {
            prime: self.prime,
            valuation: self.valuation + other.valuation,
        })
    }
}

impl fmt::Display for PAdicAbs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^(-{})", self.prime, self.valuation)
    }
}

/// `|n|_p` for a nonzero integer.
pub fn padic_abs(n: &BigUint, p: u64) -> Result<PAdicAbs> {
    if n.is_zero() {
        return Err(Error::ZeroArgument { op: "padic_abs" });
    }
    let valuation = ord_p(n, p)?;
    PAdicAbs::new(p, valuation)
}

/// `2^n - 1` as a big integer.
pub fn mersenne(n: u64) -> BigUint {
    (BigUint::one() << n) - BigUint::one()
}
