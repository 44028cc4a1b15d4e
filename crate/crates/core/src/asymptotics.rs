//! Prime-orbit counting `π(X) = Σ_{n≤X} O_n`, the normalized ratio
//! `X·π(X)/2^(X+1)`, the gap `π_g - π_f` and Merten sums `Σ_{n≤X} O_n/2^n`.
//!
//! Sums are exact rationals. Only `ln X` is approximated, as a dyadic
//! rational at the configured [`Precision`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::counting::OrbitTable;
use crate::error::{Error, Result};
use crate::precision::{self, Precision};

/// `π(X)`.
pub fn pi_sum(table: &OrbitTable, x: u64) -> Result<BigUint> {
    table.require("pi_sum", x)?;
    Ok(table.orbit_slice()[..x as usize].iter().sum())
}

/// `X·π(X)/2^(X+1)` for a given `π(X)`.
pub fn normalized_ratio(x: u64, pi: &BigUint) -> Rational {
    Rational::new(
        BigInt::from(pi * x),
        BigInt::one() << (x + 1),
    )
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioPoint {
    pub x: u64,
    pub pi: BigUint,
    pub ratio: Rational,
    pub running_min: Rational,
    pub running_max: Rational,
}

/// One point per `X` in `burn_in..=x_max`; running extrema cover that
/// window only.
pub fn ratio_series(table: &OrbitTable, x_max: u64, burn_in: u64) -> Result<Vec<RatioPoint>> {
    if burn_in == 0 {
        return Err(Error::ZeroArgument { op: "ratio_series" });
    }
    if burn_in >= x_max {
        return Err(Error::InvalidParameter(format!(
            "burn-in {burn_in} must be smaller than the window end {x_max}"
        )));
    }
    table.require("ratio_series", x_max)?;
    let mut pi = pi_sum(table, burn_in - 1).unwrap_or_default();
    let mut points: Vec<RatioPoint> = Vec::with_capacity((x_max - burn_in + 1) as usize);
    for x in burn_in..=x_max {
        pi += table.orbits(x)?;
        let ratio = normalized_ratio(x, &pi);
        let (running_min, running_max) = match points.last() {
            Some(prev) => (
                prev.running_min.clone().min(ratio.clone()),
                prev.running_max.clone().max(ratio.clone()),
            ),
            None => (ratio.clone(), ratio.clone()),
        };
        points.push(RatioPoint {
            x,
            pi: pi.clone(),
            ratio,
            running_min,
            running_max,
        });
    }
    Ok(points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaGap {
    /// `π_g(X) - π_f(X)`.
    pub gap: BigUint,
    /// `Σ_{n ≤ X, n even} O_n(g)`.
    pub even_bound: BigUint,
}

pub fn delta_gap(table_f: &OrbitTable, table_g: &OrbitTable, x: u64) -> Result<DeltaGap> {
    let pi_f = pi_sum(table_f, x)?;
    let pi_g = pi_sum(table_g, x)?;
    if pi_g < pi_f {
        return Err(Error::NegativeCount {
            what: "delta_gap",
            n: x,
            value: format!("-{}", &pi_f - &pi_g),
        });
    }
    let even_bound = table_g.orbit_slice()[..x as usize]
        .iter()
        .skip(1)
        .step_by(2)
        .sum();
    Ok(DeltaGap {
        gap: pi_g - pi_f,
        even_bound,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct MertenPoint {
    pub x: u64,
    /// `Σ_{n≤X} O_n / 2^n`, exact.
    pub sum: Rational,
    /// `ln X`, rounded to the working precision.
    pub log_x: Rational,
    pub precision: Precision,
}

impl MertenPoint {
    /// `sum / ln X` at the working precision; undefined at `X = 1`.
    pub fn normalized(&self) -> Option<Rational> {
        if self.log_x.is_zero() {
            return None;
        }
        Some(precision::round_significant(
            &(&self.sum / &self.log_x),
            self.precision,
        ))
    }
}

pub fn merten_series(
    table: &OrbitTable,
    x_max: u64,
    precision: Precision,
) -> Result<Vec<MertenPoint>> {
    if x_max == 0 {
        return Err(Error::ZeroArgument { op: "merten_series" });
    }
    table.require("merten_series", x_max)?;
    // sum_X = acc_X / 2^X
    let mut acc = BigInt::zero();
    let mut points = Vec::with_capacity(x_max as usize);
    for x in 1..=x_max {
        acc = (acc << 1u32) + BigInt::from(table.orbits(x)?.clone());
        points.push(MertenPoint {
            x,
            sum: Rational::new(acc.clone(), BigInt::one() << x),
            log_x: precision::ln_u64(x, precision)?,
            precision,
        });
    }
    Ok(points)
}

/// Smallest and largest `sum - coefficient·ln X` over the given points.
pub fn merten_offsets(points: &[MertenPoint], coefficient: &Rational) -> Option<(Rational, Rational)> {
    let offsets = points.iter().map(|p| &p.sum - coefficient * &p.log_x);
    offsets.fold(None, |acc, v| match acc {
        None => Some((v.clone(), v)),
        Some((lo, hi)) => Some((lo.min(v.clone()), hi.max(v))),
    })
}

/// A group of nearby values in the oscillation report.
#[derive(Debug, Clone, PartialEq)]
pub struct Cluster {
    pub low: f64,
    pub high: f64,
    pub count: usize,
}

impl Cluster {
    pub fn center(&self) -> f64 {
        0.5 * (self.low + self.high)
    }
}

/// Single-linkage clustering of the values: sorted neighbours closer than
/// `gap` share a cluster.
pub fn clusters(values: &[f64], gap: f64) -> Vec<Cluster> {
    let mut sorted: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    sorted.sort_by(f64::total_cmp);
    let mut out: Vec<Cluster> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some(c) if v - c.high < gap => {
                c.high = v;
                c.count += 1;
            }
            _ => out.push(Cluster {
                low: v,
                high: v,
                count: 1,
            }),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{build_table, MapSpec};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn tables(n: u64) -> (OrbitTable, OrbitTable) {
        (
            build_table(MapSpec::three_adic(), n).unwrap(),
            build_table(MapSpec::circle_doubling(), n).unwrap(),
        )
    }

    #[test]
    fn pi_examples() {
        let (f, g) = tables(6);
        assert_eq!(pi_sum(&f, 3).unwrap(), BigUint::from(3u32));
        assert_eq!(pi_sum(&g, 3).unwrap(), BigUint::from(4u32));
        assert_eq!(pi_sum(&f, 1).unwrap(), BigUint::from(1u32));
        assert!(pi_sum(&f, 7).is_err());
    }

    #[test]
    fn ratio_examples() {
        let (f, _) = tables(6);
        let pts = ratio_series(&f, 6, 1).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0].ratio, r(1, 4));
        let last = pts.last().unwrap();
        assert_eq!(last.pi, BigUint::from(10u32));
        assert_eq!(last.ratio, r(60, 128));
        for p in &pts {
            assert!(p.running_min <= p.ratio && p.ratio <= p.running_max);
        }
        assert!(ratio_series(&f, 6, 6).is_err());
        assert!(ratio_series(&f, 7, 1).is_err());
        assert!(ratio_series(&f, 6, 0).is_err());
    }

    #[test]
    fn running_extrema_respect_burn_in() {
        let (f, _) = tables(40);
        let pts = ratio_series(&f, 40, 20).unwrap();
        assert_eq!(pts[0].x, 20);
        assert_eq!(pts[0].running_min, pts[0].ratio);
        let min = pts.iter().map(|p| p.ratio.clone()).min().unwrap();
        assert_eq!(pts.last().unwrap().running_min, min);
    }

    #[test]
    fn delta_examples() {
        let (f, g) = tables(6);
        let d = delta_gap(&f, &g, 6).unwrap();
        assert_eq!((d.gap, d.even_bound), (BigUint::from(12u32), BigUint::from(13u32)));
        let d = delta_gap(&f, &g, 1).unwrap();
        assert_eq!((d.gap, d.even_bound), (BigUint::zero(), BigUint::zero()));
        let d = delta_gap(&f, &g, 3).unwrap();
        assert_eq!((d.gap, d.even_bound), (BigUint::one(), BigUint::one()));
        // swapped roles make the gap negative
        assert!(matches!(
            delta_gap(&g, &f, 6),
            Err(Error::NegativeCount { .. })
        ));
    }

    #[test]
    fn merten_examples() {
        let (f, g) = tables(3);
        let p = Precision::default();
        let mf = merten_series(&f, 3, p).unwrap();
        let mg = merten_series(&g, 3, p).unwrap();
        assert_eq!(mf[0].sum, r(1, 2));
        assert_eq!(mf[2].sum, r(3, 4));
        assert_eq!(mg[2].sum, r(1, 1));
        assert!(mf[0].normalized().is_none());
        let norm = precision::to_f64(&mg[2].normalized().unwrap());
        assert!((norm - 1.0 / 3f64.ln()).abs() < 1e-15);
        for pt in &mf {
            assert!(pt.sum.denom().bits() as u64 <= pt.x + 1);
        }
    }

    #[test]
    fn cluster_grouping() {
        let c = clusters(&[0.5, 0.1, 0.102, 0.9, 0.501, f64::NAN], 0.01);
        assert_eq!(c.len(), 3);
        assert_eq!(c[0].count, 2);
        assert_eq!(c[1].low, 0.5);
        assert_eq!(c[1].high, 0.501);
        assert_eq!(c[2].count, 1);
        assert!(clusters(&[], 0.1).is_empty());
    }
}
