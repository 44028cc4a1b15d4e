//! The dynamical zeta function `ζ(z) = exp Σ F_n z^n / n`.
//!
//! Two exact routes produce its coefficients: the exponential recurrence on
//! the `F_n` ([`zeta_series`]) and the Euler product `Π (1 - z^n)^(-O_n)`
//! ([`orbit_product_series`]). For the 3-adic extension `f`, the logarithm
//! splits as
//!
//! ```text
//! ξ(z) = log((1-z)/(1-2z)) - ½·log((1-z²)/(1-4z²)) + ⅙·ξ₁(z)
//! ξ₁(z) = Σ_n (z^{2n}/n)(4^n - 1)|n|_3
//!       = log((1-z²)/(1-4z²)) + 2 Σ_{j≥1} 9^{-j} log((1-(2z)^{2·3^j})/(1-z^{2·3^j}))
//! ```
//!
//! and taking real parts gives a product formula for `|ζ(z)|` whose factors
//! vanish at `z = ½·e^{2πi·a/3^r}`, forcing the natural boundary `|z| = ½`.

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::arith::{self, Rational};
use crate::counting::OrbitTable;
use crate::error::{Error, Result};
use crate::precision;
use crate::series::PowerSeries;

/// Largest product truncation accepted; `2·3^J` must fit comfortably in `u64`.
pub const MAX_PRODUCT_TERMS: u32 = 30;

fn require_degree(table: &OrbitTable, what: &'static str, degree: usize) -> Result<()> {
    if degree > 0 {
        table.require(what, degree as u64)?;
    }
    Ok(())
}

/// `ξ(z) = Σ_{n≤N} F_n z^n / n`.
pub fn xi_series(table: &OrbitTable, degree: usize) -> Result<PowerSeries> {
    require_degree(table, "xi_series", degree)?;
    let mut coeffs = vec![Rational::zero()];
    coeffs.extend(
        table.fixed_slice()[..degree]
            .iter()
            .enumerate()
            .map(|(i, f)| Rational::new(BigInt::from(f.clone()), BigInt::from(i + 1))),
    );
    Ok(PowerSeries::from_coeffs(coeffs, degree))
}

/// Integer coefficients of `ζ` from `n·c_n = Σ_{k=1}^{n} F_k·c_{n-k}`.
pub fn zeta_coefficients(table: &OrbitTable, degree: usize) -> Result<Vec<BigUint>> {
    require_degree(table, "zeta_series", degree)?;
    let fixed = table.fixed_slice();
    let mut c: Vec<BigUint> = Vec::with_capacity(degree + 1);
    c.push(BigUint::one());
    for n in 1..=degree {
        let mut acc = BigUint::zero();
        for k in 1..=n {
            let f = &fixed[k - 1];
            if !f.is_zero() {
                acc += f * &c[n - k];
            }
        }
        let (q, r) = acc.div_rem(&BigUint::from(n));
        if !r.is_zero() {
            return Err(Error::BadZetaCoefficient { degree: n });
        }
        c.push(q);
    }
    Ok(c)
}

/// `ζ(z)` truncated at degree `N`.
pub fn zeta_series(table: &OrbitTable, degree: usize) -> Result<PowerSeries> {
    let c = zeta_coefficients(table, degree)?;
    Ok(PowerSeries::from_integers(c.into_iter().map(BigInt::from), degree))
}

/// Integer coefficients of `Π_{n≤N} (1 - z^n)^(-O_n)`.
pub fn orbit_product_coefficients(table: &OrbitTable, degree: usize) -> Result<Vec<BigUint>> {
    require_degree(table, "orbit_product_series", degree)?;
    let mut c = vec![BigUint::zero(); degree + 1];
    c[0] = BigUint::one();
    for n in 1..=degree {
        let orbits = table.orbits(n as u64)?;
        if orbits.is_zero() {
            continue;
        }
        // (1 - z^n)^(-O) = Σ_k binom(O + k - 1, k) z^{nk}
        let kmax = degree / n;
        let mut binom = Vec::with_capacity(kmax + 1);
        binom.push(BigUint::one());
        for k in 1..=kmax {
            let next = &binom[k - 1] * (orbits + BigUint::from(k - 1)) / BigUint::from(k);
            binom.push(next);
        }
        for i in (n..=degree).rev() {
            let mut acc = c[i].clone();
            for (k, b) in binom.iter().enumerate().skip(1) {
                if n * k > i {
                    break;
                }
                acc += b * &c[i - n * k];
            }
            c[i] = acc;
        }
    }
    Ok(c)
}

pub fn orbit_product_series(table: &OrbitTable, degree: usize) -> Result<PowerSeries> {
    let c = orbit_product_coefficients(table, degree)?;
    Ok(PowerSeries::from_integers(c.into_iter().map(BigInt::from), degree))
}

fn require_xi1_degree(degree: usize) -> Result<()> {
    if degree < 2 {
        return Err(Error::InvalidParameter(format!(
            "xi1 needs degree at least 2, got {degree}"
        )));
    }
    Ok(())
}

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `ξ₁(z) = Σ_{2n≤N} (z^{2n}/n)(4^n - 1)|n|_3`, with `|n|_3` by repeated division.
pub fn xi1_direct(degree: usize) -> Result<PowerSeries> {
    require_xi1_degree(degree)?;
    let mut coeffs = vec![Rational::zero(); degree + 1];
    for n in 1..=degree / 2 {
        let four_n = (BigUint::one() << (2 * n)) - 1u32;
        let abs = arith::padic_abs(&BigUint::from(n), 3)?;
        coeffs[2 * n] = Rational::new(
            BigInt::from(four_n),
            BigInt::from(n) * BigInt::from(abs.inverse_value()),
        );
    }
    Ok(PowerSeries::from_coeffs(coeffs, degree))
}

/// `log((1 - z^m)/(1 - c·z^m))`.
fn log_ratio(c: &Rational, m: usize, degree: usize) -> PowerSeries {
    &PowerSeries::log_one_minus(&Rational::one(), m, degree)
        - &PowerSeries::log_one_minus(c, m, degree)
}

/// `ξ₁` from its logarithmic closed form; only `j` with `2·3^j ≤ N` contribute.
pub fn xi1_closed_form(degree: usize) -> Result<PowerSeries> {
    require_xi1_degree(degree)?;
    let mut total = log_ratio(&int(4), 2, degree);
    let mut three_j = 3usize;
    let mut nine_j = BigInt::from(9);
    while 2 * three_j <= degree {
        let m = 2 * three_j;
        let c = int(BigInt::from(4).pow(three_j as u32));
        // log((1 - (2z)^m)/(1 - z^m)) = -log((1 - z^m)/(1 - 4^{3^j} z^m))
        let term = log_ratio(&c, m, degree).scale(&Rational::new(BigInt::from(-2), nine_j.clone()));
        total = &total + &term;
        three_j *= 3;
        nine_j *= 9;
    }
    Ok(total)
}

/// `η₀^{(a)}(z) = log((1-z²)/(1-az²)) - ⅓·log((1-z⁶)/(1-a³z⁶))`, the part of
/// `Σ (z^{2n}/n)(a^n - 1)` over `n` prime to 3.
#[cfg(test)]
fn eta_zero(a: &BigInt, degree: usize) -> PowerSeries {
    let a = int(a.clone());
    let a3 = &a * &a * &a;
    &log_ratio(&a, 2, degree) - &log_ratio(&a3, 6, degree).scale(&Rational::new(1.into(), 3.into()))
}

/// `η_j^{(4)}(z) = 3^{-j}·η₀^{(4^{3^j})}(z^{3^j})`, the part of `ξ₁`'s sum
/// over `n` with `3^j ‖ n` (before the `|n|_3 = 3^{-j}` weight).
#[cfg(test)]
fn eta(j: u32, degree: usize) -> PowerSeries {
    let three_j = 3usize.pow(j);
    let a = BigInt::from(4).pow(three_j as u32);
    eta_zero(&a, degree)
        .substitute_monomial(&Rational::one(), three_j)
        .scale(&Rational::new(1.into(), BigInt::from(three_j)))
}

/// `ξ₁ = Σ_j 3^{-j}·η_j^{(4)}`, summed before the telescoping that yields
/// [`xi1_closed_form`].
#[cfg(test)]
fn xi1_from_eta(degree: usize) -> PowerSeries {
    let mut total = PowerSeries::zero(degree);
    let mut j = 0u32;
    while 2 * 3usize.pow(j) <= degree {
        let weight = Rational::new(1.into(), BigInt::from(3u32).pow(j));
        total = &total + &eta(j, degree).scale(&weight);
        j += 1;
    }
    total
}

/// Right-hand side of `ξ = log((1-z)/(1-2z)) - ½·log((1-z²)/(1-4z²)) + ⅙·ξ₁`.
pub fn xi_decomposition(degree: usize) -> Result<PowerSeries> {
    require_xi1_degree(degree)?;
    let odd_part = log_ratio(&int(2), 1, degree);
    let correction = log_ratio(&int(4), 2, degree).scale(&Rational::new((-1).into(), 2.into()));
    let xi1 = xi1_closed_form(degree)?.scale(&Rational::new(1.into(), 6.into()));
    Ok(&(&odd_part + &correction) + &xi1)
}

/// An angle as an exact fraction of a full turn, reduced to `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Angle {
    turns: Rational,
}

impl Angle {
    pub fn turns(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::InvalidParameter("angle denominator is zero".into()));
        }
        Ok(Self::from_rational(Rational::new(num.into(), den)))
    }

    /// `2π·num/3^r`.
    pub fn three_adic(num: impl Into<BigInt>, r: u32) -> Self {
        Self::from_rational(Rational::new(num.into(), BigInt::from(3u32).pow(r)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let reduced = &q - q.floor();
        Angle { turns: reduced }
    }

    pub fn as_turns(&self) -> &Rational {
        &self.turns
    }

    pub fn numer(&self) -> &BigInt {
        self.turns.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.turns.denom()
    }

    /// `m·θ` reduced mod one turn.
    fn times(&self, m: u64) -> Rational {
        let q = &self.turns * int(m);
        &q - q.floor()
    }
}

/// `z = radius · e^{2πi·angle}` with an exact angle, so `(cz)^m` has an
/// exactly reduced phase and vanishing factors are detected exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarPoint {
    pub radius: f64,
    pub angle: Angle,
}

impl PolarPoint {
    pub fn new(radius: f64, angle: Angle) -> Result<Self> {
        if !(radius.is_finite() && radius >= 0.0) {
            return Err(Error::InvalidParameter(format!("radius {radius} must be finite and non-negative")));
        }
        Ok(PolarPoint { radius, angle })
    }

    /// Exact polar form of a floating-point complex number.
    pub fn from_complex(z: Complex64) -> Result<Self> {
        let (r, theta) = z.to_polar();
        let turns = Rational::from_float(theta / (2.0 * PI))
            .ok_or_else(|| Error::InvalidParameter(format!("non-finite point {z}")))?;
        Self::new(r, Angle::from_rational(turns))
    }

    pub fn to_complex(&self) -> Complex64 {
        let t = precision::to_f64(self.angle.as_turns());
        Complex64::from_polar(self.radius, 2.0 * PI * t)
    }

    /// `|1 - (c·z)^m|`, exactly zero when `(c·z)^m = 1`.
    fn one_minus_power(&self, c: f64, m: u64) -> f64 {
        let rho = (c * self.radius).powf(m as f64);
        let phase = self.angle.times(m);
        if phase.is_zero() && rho == 1.0 {
            return 0.0;
        }
        // |1 - ρe^{iφ}|² = (1 - ρ)² + 4ρ·sin²(φ/2), folded so φ/2 ∈ [0, π/2]
        let folded = phase.clone().min(Rational::one() - phase);
        let s = (PI * precision::to_f64(&folded)).sin();
        ((1.0 - rho).powi(2) + 4.0 * rho * s * s).sqrt()
    }
}

const RADIUS_SLACK: f64 = 1e-12;

fn check_in_closed_disc(p: &PolarPoint) -> Result<PolarPoint> {
    if p.radius > 0.5 + RADIUS_SLACK {
        return Err(Error::InvalidParameter(format!(
            "|z| = {} lies outside the disc |z| ≤ 1/2",
            p.radius
        )));
    }
    let mut p = p.clone();
    p.radius = p.radius.min(0.5);
    Ok(p)
}

/// `|ζ(z)|` from the product formula truncated after `J` factors of the
/// infinite product.
pub fn modulus_product_at(point: &PolarPoint, terms: u32) -> Result<f64> {
    if terms > MAX_PRODUCT_TERMS {
        return Err(Error::InvalidParameter(format!(
            "at most {MAX_PRODUCT_TERMS} product factors are supported, got {terms}"
        )));
    }
    let p = check_in_closed_disc(point)?;
    let pole = p.one_minus_power(2.0, 1);
    if pole == 0.0 {
        return Err(Error::Pole);
    }
    // |(1-z)/(1-2z)| · |(1-4z²)/(1-z²)|^{1/2 - 1/6}
    let mut value = p.one_minus_power(1.0, 1) / pole;
    value *= (p.one_minus_power(2.0, 2) / p.one_minus_power(1.0, 2)).powf(1.0 / 3.0);
    let mut three_j = 1u64;
    let mut nine_j = 1.0f64;
    for _ in 1..=terms {
        three_j *= 3;
        nine_j *= 9.0;
        let m = 2 * three_j;
        let numer = p.one_minus_power(2.0, m);
        if numer == 0.0 {
            return Ok(0.0);
        }
        let ratio = numer / p.one_minus_power(1.0, m);
        value *= ratio.powf(1.0 / (3.0 * nine_j));
    }
    Ok(value)
}

/// [`modulus_product_at`] for a floating-point complex `z`.
pub fn modulus_product(z: Complex64, terms: u32) -> Result<f64> {
    if z == Complex64::new(0.5, 0.0) {
        return Err(Error::Pole);
    }
    modulus_product_at(&PolarPoint::from_complex(z)?, terms)
}

/// `F_n / 2^n` as floats, for evaluating partial sums near `|z| = 1/2`.
pub fn scaled_fixed_counts(table: &OrbitTable, degree: usize) -> Result<Vec<f64>> {
    require_degree(table, "series_modulus", degree)?;
    Ok(table.fixed_slice()[..degree]
        .iter()
        .enumerate()
        .map(|(i, f)| precision::scaled_to_f64(f, i as u64 + 1))
        .collect())
}

/// `|exp(Σ_{n≤N} F_n z^n/n)|` from precomputed `F_n/2^n`.
pub fn series_modulus_scaled(scaled: &[f64], point: &PolarPoint) -> f64 {
    let two_r = 2.0 * point.radius;
    let mut power = 1.0;
    let mut real = 0.0;
    for (i, s) in scaled.iter().enumerate() {
        let n = i as u64 + 1;
        power *= two_r;
        if power == 0.0 {
            break;
        }
        let phase = precision::to_f64(&point.angle.times(n));
        real += s * power * (2.0 * PI * phase).cos() / n as f64;
    }
    real.exp()
}

/// `|exp(ξ_N(z))|`, the modulus of the exponentiated partial sum of degree `N`.
pub fn series_modulus(table: &OrbitTable, point: &PolarPoint, degree: usize) -> Result<f64> {
    let scaled = scaled_fixed_counts(table, degree)?;
    Ok(series_modulus_scaled(&scaled, point))
}

/// One sample of a radial scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub radius: f64,
    pub angle_num: BigInt,
    pub angle_den: BigInt,
    pub product_modulus: f64,
    pub series_modulus: f64,
    pub terms: u32,
    pub degree: usize,
}

/// Samples `|ζ|` along the ray at `angle` by both the product formula
/// (`terms` factors) and the exponentiated partial series (degree `N`).
pub fn radial_scan(
    table: &OrbitTable,
    angle: &Angle,
    radii: &[f64],
    terms: u32,
    degree: usize,
) -> Result<Vec<ScanRow>> {
    let scaled = scaled_fixed_counts(table, degree)?;
    radii
        .iter()
        .map(|&radius| {
            if !(radius > 0.0 && radius < 0.5) {
                return Err(Error::InvalidParameter(format!(
                    "scan radius {radius} must lie in (0, 1/2)"
                )));
            }
            let point = PolarPoint::new(radius, angle.clone())?;
            Ok(ScanRow {
                radius,
                angle_num: angle.numer().clone(),
                angle_den: angle.denom().clone(),
                product_modulus: modulus_product_at(&point, terms)?,
                series_modulus: series_modulus_scaled(&scaled, &point),
                terms,
                degree,
            })
        })
        .collect()
}

/// `log2(x)` for a positive big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map_or(f64::NAN, |v| (v as f64).log2());
    }
    let top = (x >> (bits - 64)).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + (bits - 64) as f64
}

/// True when every coefficient is a non-negative integer.
pub fn has_nonnegative_integer_coeffs(s: &PowerSeries) -> bool {
    s.coeffs().iter().all(|c| c.is_integer() && !c.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{build_table, MapSpec};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.to_integers()
            .unwrap()
            .into_iter()
            .map(|c| c.to_i64().unwrap())
            .collect()
    }

    #[test]
    fn xi_examples() {
        let f = build_table(MapSpec::three_adic(), 10).unwrap();
        let g = build_table(MapSpec::circle_doubling(), 10).unwrap();
        assert_eq!(xi_series(&f, 3).unwrap().coeffs(), &[r(0, 1), r(1, 1), r(1, 2), r(7, 3)]);
        assert_eq!(xi_series(&g, 2).unwrap().coeffs(), &[r(0, 1), r(1, 1), r(3, 2)]);
        assert_eq!(xi_series(&f, 1).unwrap().coeffs(), &[r(0, 1), r(1, 1)]);
        assert!(xi_series(&f, 11).is_err());
    }

    #[test]
    fn zeta_examples() {
        let f = build_table(MapSpec::three_adic(), 10).unwrap();
        let g = build_table(MapSpec::circle_doubling(), 10).unwrap();
        assert_eq!(ints(&zeta_series(&f, 5).unwrap()), vec![1, 1, 1, 3, 4, 10]);
        assert_eq!(ints(&zeta_series(&g, 5).unwrap()), vec![1, 1, 2, 4, 8, 16]);
        assert_eq!(ints(&zeta_series(&f, 0).unwrap()), vec![1]);
        // the recurrence is the series exponential of ξ
        assert_eq!(xi_series(&f, 10).unwrap().exp().unwrap(), zeta_series(&f, 10).unwrap());
    }

    #[test]
    fn product_examples() {
        let f = build_table(MapSpec::three_adic(), 10).unwrap();
        let g = build_table(MapSpec::circle_doubling(), 10).unwrap();
        assert_eq!(ints(&orbit_product_series(&f, 5).unwrap()), vec![1, 1, 1, 3, 4, 10]);
        assert_eq!(ints(&orbit_product_series(&g, 2).unwrap()), vec![1, 1, 2]);
        let empty = build_table(MapSpec::custom(Vec::<u32>::new()), 8).unwrap();
        assert_eq!(ints(&orbit_product_series(&empty, 8).unwrap()), vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn product_matches_recurrence_for_custom_orbits() {
        let t = build_table(MapSpec::custom([1u32, 3, 0, 2]), 30).unwrap();
        assert_eq!(zeta_series(&t, 30).unwrap(), orbit_product_series(&t, 30).unwrap());
    }

    #[test]
    fn xi1_examples() {
        let direct = xi1_direct(8).unwrap();
        assert_eq!(direct.coeff(2), &r(3, 1));
        assert_eq!(direct.coeff(4), &r(15, 2));
        assert_eq!(direct.coeff(6), &r(7, 1));
        assert!(direct.coeff(3).is_zero());
        let closed = xi1_closed_form(8).unwrap();
        assert_eq!(closed.coeff(2), &r(3, 1));
        assert_eq!(closed.coeff(6), &r(7, 1));
        assert!(closed.coeff(3).is_zero());
        assert!(xi1_direct(1).is_err());
        assert!(xi1_closed_form(1).is_err());
    }

    #[test]
    fn eta_chain_matches_closed_form() {
        for degree in [2usize, 6, 17, 54, 120] {
            assert_eq!(xi1_from_eta(degree), xi1_closed_form(degree).unwrap(), "degree {degree}");
        }
    }

    #[test]
    fn eta_zero_keeps_indices_prime_to_three() {
        let s = eta_zero(&BigInt::from(4), 20);
        for n in 1..=10usize {
            let expected = if n % 3 == 0 {
                Rational::zero()
            } else {
                Rational::new(BigInt::from((1i64 << (2 * n)) - 1), BigInt::from(n))
            };
            assert_eq!(s.coeff(2 * n), &expected, "n = {n}");
        }
    }

    #[test]
    fn decomposition_small() {
        let f = build_table(MapSpec::three_adic(), 60).unwrap();
        assert_eq!(xi_decomposition(60).unwrap(), xi_series(&f, 60).unwrap());
    }

    #[test]
    fn modulus_examples() {
        assert!((modulus_product(Complex64::new(0.0, 0.0), 10).unwrap() - 1.0).abs() < 1e-15);
        let boundary = PolarPoint::new(0.5, Angle::three_adic(1, 1)).unwrap();
        for terms in 1..=10 {
            assert_eq!(modulus_product_at(&boundary, terms).unwrap(), 0.0);
        }
        // J = 0 keeps only the leading factors, which do not vanish there
        assert!(modulus_product_at(&boundary, 0).unwrap() > 0.0);
        assert_eq!(modulus_product(Complex64::new(0.5, 0.0), 4), Err(Error::Pole));
        assert!(modulus_product(Complex64::new(0.6, 0.0), 4).is_err());
        assert!(modulus_product(Complex64::new(0.1, 0.0), 31).is_err());
    }

    #[test]
    fn angle_reduction() {
        let a = Angle::turns(7, 3).unwrap();
        assert_eq!(a.as_turns(), &r(1, 3));
        let b = Angle::turns(-1, 9).unwrap();
        assert_eq!(b.as_turns(), &r(8, 9));
        assert_eq!(Angle::three_adic(4, 1).as_turns(), &r(1, 3));
        assert!(Angle::turns(1, 0).is_err());
    }

    #[test]
    fn deep_interior_agreement() {
        let f = build_table(MapSpec::three_adic(), 80).unwrap();
        for (num, den) in [(0, 1), (1, 3), (1, 4), (2, 9), (5, 7)] {
            let point = PolarPoint::new(0.1, Angle::turns(num, den).unwrap()).unwrap();
            let prod = modulus_product_at(&point, 10).unwrap();
            let series = series_modulus(&f, &point, 80).unwrap();
            assert!((prod - series).abs() < 1e-9, "angle {num}/{den}: {prod} vs {series}");
        }
    }

    #[test]
    fn scan_rejects_bad_radii() {
        let f = build_table(MapSpec::three_adic(), 20).unwrap();
        let angle = Angle::three_adic(1, 1);
        assert!(radial_scan(&f, &angle, &[0.5], 4, 20).is_err());
        assert!(radial_scan(&f, &angle, &[0.0], 4, 20).is_err());
        assert!(radial_scan(&f, &angle, &[0.3], 4, 21).is_err());
        let rows = radial_scan(&f, &angle, &[0.2, 0.3], 4, 20).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].angle_num, BigInt::from(1));
        assert_eq!(rows[0].angle_den, BigInt::from(3));
    }

    #[test]
    fn log2_of_big_integers() {
        assert_eq!(log2_big(&BigUint::from(1024u32)), 10.0);
        let x = BigUint::one() << 1000u32;
        assert!((log2_big(&x) - 1000.0).abs() < 1e-12);
    }
}
