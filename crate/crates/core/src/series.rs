//! Truncated formal power series with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// `Σ_{n=0}^{N} c_n z^n`; every operation truncates at the same degree `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(degree: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        let mut s = Self::zero(degree);
        s.coeffs[0] = Rational::one();
        s
    }

    /// Pads with zeros (or truncates) to exactly `degree + 1` coefficients.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, degree: usize) -> Self {
        coeffs.resize(degree + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn from_integers<I, T>(coeffs: I, degree: usize) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Self::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| Rational::from_integer(c.into()))
                .collect(),
            degree,
        )
    }

    /// `log(1 - c·z^m) = -Σ_{k≥1} c^k z^{mk} / k`.
    pub fn log_one_minus(c: &Rational, m: usize, degree: usize) -> Self {
        assert!(m >= 1, "monomial degree must be positive");
        let mut s = Self::zero(degree);
        let mut power = c.clone();
        let mut k = 1usize;
        while m * k <= degree {
            s.coeffs[m * k] = -&power / Rational::from_integer(k.into());
            power = &power * c;
            k += 1;
        }
        s
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n]
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), degree)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn check_degree(&self, other: &Self) {
        assert_eq!(
            self.degree(),
            other.degree(),
            "series truncated at different degrees"
        );
    }

    /// `exp(s)` for `s(0) = 0`, via `n·b_n = Σ_{k=1}^{n} k·a_k·b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let n_max = self.degree();
        let weighted: Vec<Rational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * Rational::from_integer(k.into()))
            .collect();
        let mut out = vec![Rational::zero(); n_max + 1];
        out[0] = Rational::one();
        for n in 1..=n_max {
            let mut acc = Rational::zero();
            for k in 1..=n {
                if !weighted[k].is_zero() {
                    acc += &weighted[k] * &out[n - k];
                }
            }
            out[n] = acc / Rational::from_integer(n.into());
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// `log(s)` for `s(0) = 1`, via `n·g_n = n·s_n - Σ_{k=1}^{n-1} k·g_k·s_{n-k}`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidParameter(
                "log needs a series with constant term 1".into(),
            ));
        }
        let n_max = self.degree();
        let mut weighted = vec![Rational::zero(); n_max + 1];
        for n in 1..=n_max {
            let mut acc = &self.coeffs[n] * Rational::from_integer(n.into());
            for k in 1..n {
                if !weighted[k].is_zero() {
                    acc -= &weighted[k] * &self.coeffs[n - k];
                }
            }
            weighted[n] = acc;
        }
        let coeffs = weighted
            .into_iter()
            .enumerate()
            .map(|(n, w)| {
                if n == 0 {
                    Rational::zero()
                } else {
                    w / Rational::from_integer(n.into())
                }
            })
            .collect();
        Ok(PowerSeries { coeffs })
    }

    /// `s(c·z^m)`, truncated.
    pub fn substitute_monomial(&self, c: &Rational, m: usize) -> Self {
        assert!(m >= 1, "monomial degree must be positive");
        let degree = self.degree();
        let mut out = Self::zero(degree);
        let mut power = Rational::one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if m * k > degree {
                break;
            }
            out.coeffs[m * k] = a * &power;
            power = &power * c;
        }
        out
    }

    /// Evaluates the truncated series at a rational point.
    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    /// Coefficients as integers, if every coefficient is one.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        self.check_degree(rhs);
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;
    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        self.check_degree(rhs);
        PowerSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &PowerSeries {
    type Output = PowerSeries;
    fn neg(self) -> PowerSeries {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        self.check_degree(rhs);
        let n_max = self.degree();
        let mut out = vec![Rational::zero(); n_max + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n_max - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        PowerSeries { coeffs: out }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{n}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.degree() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_product() {
        // (1 - z)^{-1} = exp(-log(1 - z))
        let s = -&PowerSeries::log_one_minus(&r(1, 1), 1, 6);
        let e = s.exp().unwrap();
        assert_eq!(e, PowerSeries::from_integers([1; 7], 6));
        let sq = &e * &e;
        assert_eq!(sq, PowerSeries::from_integers(1..=7, 6));
    }

    #[test]
    fn log_of_rational_function() {
        // log((1 - z)/(1 - 2z)) has coefficients (2^n - 1)/n
        let num = PowerSeries::from_integers([1, -1], 8);
        let den_inv = PowerSeries::from_integers((0..=8).map(|n| 1i64 << n), 8);
        let l = (&num * &den_inv).log().unwrap();
        for n in 1..=8usize {
            assert_eq!(l.coeff(n), &r((1 << n) - 1, n as i64));
        }
        let direct = &PowerSeries::log_one_minus(&r(1, 1), 1, 8)
            - &PowerSeries::log_one_minus(&r(2, 1), 1, 8);
        assert_eq!(l, direct);
    }

    #[test]
    fn exp_log_reject_bad_constant_terms() {
        assert!(PowerSeries::one(3).exp().is_err());
        assert!(PowerSeries::zero(3).log().is_err());
        assert_eq!(PowerSeries::zero(0).exp().unwrap(), PowerSeries::one(0));
    }

    #[test]
    fn substitution_and_eval() {
        let s = PowerSeries::from_integers([0, 1, 1], 6);
        let t = s.substitute_monomial(&r(2, 1), 3);
        assert_eq!(t, PowerSeries::from_integers([0, 0, 0, 2, 0, 0, 4], 6));
        assert_eq!(s.eval(&r(1, 2)), r(3, 4));
    }

    #[test]
    fn display() {
        let s = PowerSeries::from_coeffs(vec![r(1, 1), r(0, 1), r(-3, 2)], 2);
        assert_eq!(s.to_string(), "1 + (-3/2)z^2 + O(z^3)");
        assert_eq!(PowerSeries::zero(1).to_string(), "0 + O(z^2)");
    }

    fn small_series(degree: usize) -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec((-20i64..=20, 1i64..=12), degree).prop_map(move |terms| {
            let mut coeffs = vec![Rational::zero()];
            coeffs.extend(terms.into_iter().map(|(n, d)| r(n, d)));
            PowerSeries::from_coeffs(coeffs, degree)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn log_inverts_exp(s in small_series(10)) {
            prop_assert_eq!(s.exp().unwrap().log().unwrap(), s);
        }

        #[test]
        fn exp_is_additive(a in small_series(8), b in small_series(8)) {
            let lhs = (&a + &b).exp().unwrap();
            let rhs = &a.exp().unwrap() * &b.exp().unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
