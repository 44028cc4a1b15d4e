//! The invariant suite behind `orbitkit verify`.
//!
//! Windowed checks scale with `--max`; a window that is empty at small
//! `--max` passes vacuously. Checks tied to specific parameters (boundary
//! zeros, the counterexample orbit data, the interior cross-check) always
//! run at those parameters.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::arith::{self, Rational};
use crate::asymptotics::{self, clusters};
use crate::counting::{self, build_table, MapSpec, OrbitTable};
use crate::error::Result;
use crate::precision::{self, Precision};
use crate::series::PowerSeries;
use crate::tolerances as tol;
use crate::zeta::{self, Angle, PolarPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Reported values without a pass/fail criterion.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub params: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub max: u64,
    pub precision: Precision,
    /// Negative control: compares the orbit counts of `g` against `f` the
    /// wrong way round so the domination check must fail.
    pub inject_fault: bool,
}

impl VerifyConfig {
    pub fn new(max: u64) -> Self {
        VerifyConfig {
            max,
            precision: Precision::default(),
            inject_fault: false,
        }
    }
}

struct Report {
    outcomes: Vec<CheckOutcome>,
}

impl Report {
    fn check(&mut self, name: &'static str, params: String, failure: Option<String>) {
        let (status, detail) = match failure {
            None => (Status::Pass, String::new()),
            Some(d) => (Status::Fail, d),
        };
        self.outcomes.push(CheckOutcome {
            name,
            params,
            status,
            detail,
        });
    }

    fn info(&mut self, name: &'static str, params: String, detail: String) {
        self.outcomes.push(CheckOutcome {
            name,
            params,
            status: Status::Info,
            detail,
        });
    }
}

/// First index in `range` where `ok` fails.
fn first_failure<I, F>(range: I, mut ok: F) -> Result<Option<String>>
where
    I: IntoIterator<Item = u64>,
    F: FnMut(u64) -> Result<bool>,
{
    for n in range {
        if !ok(n)? {
            return Ok(Some(format!("fails at {n}")));
        }
    }
    Ok(None)
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|o| o.status != Status::Fail)
}

pub fn run(config: &VerifyConfig) -> Result<Vec<CheckOutcome>> {
    let m = config.max.max(1);
    let lemma_n = m.min(200);
    let square_n = m.min(500);
    let zeta_n = m.min(400) as usize;
    let xi1_n = m.min(500) as usize;
    let need = m.max(3 * lemma_n).max(2 * square_n);

    let f = build_table(MapSpec::three_adic(), need.max(4000))?;
    let g = build_table(MapSpec::circle_doubling(), need.max(200))?;
    let mut report = Report {
        outcomes: Vec::new(),
    };

    arithmetic_checks(&mut report, m)?;
    counting_checks(&mut report, config, &f, &g, m, lemma_n, square_n)?;
    asymptotic_checks(&mut report, config, &f, &g, m)?;
    zeta_checks(&mut report, &f, &g, m, zeta_n, xi1_n)?;
    Ok(report.outcomes)
}

fn arithmetic_checks(report: &mut Report, m: u64) -> Result<()> {
    let mu = arith::mobius_table(m as usize);
    let failure = first_failure(1..=m, |n| {
        let s: i64 = arith::divisors(n)?
            .iter()
            .map(|&d| mu[d as usize] as i64)
            .sum();
        Ok(s == i64::from(n == 1))
    })?;
    report.check("mobius-divisor-sum", format!("n<={m}"), failure);

    let failure = first_failure(1..=m, |n| {
        let ds = arith::divisors(n)?;
        Ok(ds.iter().all(|&d| ds.binary_search(&(n / d)).is_ok()))
    })?;
    report.check("divisor-pairing", format!("n<={m}"), failure);

    let failure = first_failure(1..=m, |n| {
        let direct = arith::ord_p(&arith::mersenne(n), 3)?;
        Ok(counting::padic_factor(n)?.valuation() == direct)
    })?;
    report.check("padic-closed-form-vs-division", format!("n<={m}"), failure);

    let failure = first_failure((2..=m).step_by(2), |n| {
        let d = BigUint::from(3u32).pow(1 + arith::ord_p_u64(n, 3)?);
        Ok((arith::mersenne(n) % d).is_zero())
    })?;
    report.check("even-period-divisibility", format!("even n<={m}"), failure);
    Ok(())
}

fn counting_checks(
    report: &mut Report,
    config: &VerifyConfig,
    f: &OrbitTable,
    g: &OrbitTable,
    m: u64,
    lemma_n: u64,
    square_n: u64,
) -> Result<()> {
    for (label, t) in [("f", f), ("g", g)] {
        let failure = first_failure(1..=m, |n| {
            let s: BigUint = arith::divisors(n)?
                .iter()
                .map(|&d| t.least(d).cloned())
                .sum::<Result<BigUint>>()?;
            Ok(&s == t.fixed(n)?)
        })?;
        report.check("sumdiv-round-trip", format!("map={label} n<={m}"), failure);

        let failure = first_failure(1..=m, |n| Ok(&(t.orbits(n)? * n) == t.least(n)?))?;
        report.check("orbit-exact-division", format!("map={label} n<={m}"), failure);
    }

    let (low, high) = if config.inject_fault { (g, f) } else { (f, g) };
    let failure = first_failure(1..=m, |n| Ok(low.orbits(n)? <= high.orbits(n)?))?;
    report.check(
        "orbit-domination",
        format!("O_n(f)<=O_n(g) n<={m}{}", if config.inject_fault { " [fault injected]" } else { "" }),
        failure,
    );

    let failure = first_failure(1..=m, |n| {
        let lhs = counting::proper_divisor_mersenne_sum(n)? * 3u32;
        Ok(lhs <= arith::mersenne(n) * 2u32)
    })?;
    report.check("proper-divisor-sum-bound", format!("n<={m}"), failure);

    for (label, base, spec) in [
        ("f", f, MapSpec::three_adic()),
        ("g", g, MapSpec::circle_doubling()),
    ] {
        for k in [2u64, 3] {
            let direct = build_table(MapSpec::iterate(spec.clone(), k)?, lemma_n)?;
            let failure = first_failure(1..=lemma_n, |n| {
                Ok(&counting::orbit_count_iterate(base, k, n)? == direct.orbits(n)?)
            })?;
            report.check("iterate-lemma", format!("map={label} k={k} n<={lemma_n}"), failure);
        }
        let square = build_table(MapSpec::iterate(spec, 2)?, square_n)?;
        let failure = first_failure(1..=square_n, |n| {
            Ok(&counting::iterate_square_identity(base, n)? == square.orbits(n)?)
        })?;
        report.check("square-iterate-identity", format!("map={label} n<={square_n}"), failure);
    }

    let failure = if f.orbits(2)?.is_zero() && f.orbits(6)?.is_zero() {
        None
    } else {
        Some(format!("O_2={} O_6={}", f.orbits(2)?, f.orbits(6)?))
    };
    report.check("killed-orbits", "O_2(f)=O_6(f)=0".into(), failure);

    let cf = build_table(MapSpec::custom([1u32, 3]), 100)?;
    let cg = build_table(MapSpec::custom([6u32, 1]), 100)?;
    let mut failure = first_failure(1..=100, |n| {
        let sign: i64 = if n % 2 == 0 { 1 } else { -1 };
        let ff = BigUint::from((4 + 3 * sign) as u64);
        let fg = BigUint::from((7 + sign) as u64);
        Ok(cf.fixed(n)? == &ff && cg.fixed(n)? == &fg && ff < fg)
    })?;
    if failure.is_none() && cf.orbits(2)? <= cg.orbits(2)? {
        failure = Some("O_2(f) <= O_2(g)".into());
    }
    report.check("fixed-vs-orbit-domination-example", "custom O(f)=(1,3) O(g)=(6,1) n<=100".into(), failure);
    Ok(())
}

fn asymptotic_checks(
    report: &mut Report,
    config: &VerifyConfig,
    f: &OrbitTable,
    g: &OrbitTable,
    m: u64,
) -> Result<()> {
    let failure = first_failure(1..=m, |x| {
        Ok(asymptotics::pi_sum(f, x)? <= asymptotics::pi_sum(g, x)?)
    })?;
    report.check("pi-domination", format!("X<={m}"), failure);

    let burn_in = tol::DEFAULT_BURN_IN;
    let slack = tol::rational(tol::RATIO_BAND_SLACK);
    let lower = Rational::new(1.into(), 3.into()) - &slack;
    let upper = Rational::one() + &slack;
    let baseline = tol::rational(tol::PNT_BASELINE_TOL);
    let (band, pnt, cluster_info) = if m > burn_in {
        let pf = asymptotics::ratio_series(f, m, burn_in)?;
        let pg = asymptotics::ratio_series(g, m, burn_in)?;
        let band = pf
            .iter()
            .find(|p| p.ratio < lower || p.ratio > upper)
            .map(|p| format!("ratio {} at X={}", precision::fmt_fixed(&p.ratio, 6), p.x));
        let pnt = pg
            .iter()
            .find(|p| (&p.ratio - Rational::one()).abs() >= baseline)
            .map(|p| format!("ratio {} at X={}", precision::fmt_fixed(&p.ratio, 6), p.x));
        let tail_start = burn_in.max(m / 2);
        let tail: Vec<f64> = pf
            .iter()
            .filter(|p| p.x >= tail_start)
            .map(|p| precision::to_f64(&p.ratio))
            .collect();
        let groups = clusters(&tail, tol::CLUSTER_GAP);
        let summary = groups
            .iter()
            .map(|c| format!("{:.4}[{}]", c.center(), c.count))
            .collect::<Vec<_>>()
            .join(" ");
        (
            band,
            pnt,
            Some((tail_start, format!("{} clusters: {summary}", groups.len()))),
        )
    } else {
        (None, None, None)
    };
    report.check(
        "ratio-band",
        format!(
            "{} <= X*pi_f(X)/2^(X+1) <= {} for {burn_in}<=X<={m}",
            precision::fmt_fixed(&lower, 4),
            precision::fmt_fixed(&upper, 4)
        ),
        band,
    );
    report.check(
        "pnt-baseline",
        format!(
            "|X*pi_g(X)/2^(X+1)-1| < {} for {burn_in}<=X<={m}",
            precision::fmt_fixed(&baseline, 4)
        ),
        pnt,
    );
    if let Some((tail_start, detail)) = cluster_info {
        report.info(
            "ratio-clusters",
            format!("{tail_start}<=X<={m} gap={}", tol::CLUSTER_GAP),
            detail,
        );
    }

    let ((wl_n, wl_d), (wh_n, wh_d)) = tol::DELTA_WINDOW;
    let window_low = Rational::new(wl_n.into(), wl_d.into());
    let window_high = Rational::new(wh_n.into(), wh_d.into());
    let failure = first_failure(1..=m, |x| {
        let d = asymptotics::delta_gap(f, g, x)?;
        if d.gap > d.even_bound {
            return Ok(false);
        }
        if x % 2 == 0 && x >= burn_in {
            let half = x / 2;
            let scaled = Rational::new(
                BigInt::from(d.even_bound * half),
                BigInt::one() << (2 * half),
            );
            return Ok(scaled >= window_low && scaled <= window_high);
        }
        Ok(true)
    })?;
    report.check(
        "delta-gap-bound",
        format!("gap<=even_bound X<={m}; even_bound*(X/2)/4^(X/2) in [0.3,1.5] for even X>={burn_in}"),
        failure,
    );

    let merten_min = tol::MERTEN_MIN_X;
    let slack = Rational::from_integer(tol::MERTEN_SLACK.into());
    let half = Rational::new(1.into(), 2.into());
    let mf = asymptotics::merten_series(f, m, config.precision)?;
    let mg = asymptotics::merten_series(g, m, config.precision)?;
    let window = |pts: &[asymptotics::MertenPoint]| -> Vec<asymptotics::MertenPoint> {
        pts.iter().filter(|p| p.x >= merten_min).cloned().collect()
    };
    let (wf, wg) = (window(&mf), window(&mg));
    let failure = wf
        .iter()
        .find(|p| p.sum < &half * &p.log_x - &slack || p.sum > &p.log_x + &slack)
        .map(|p| format!("fails at X={}", p.x));
    report.check(
        "merten-sandwich",
        format!("0.5 ln X - {s} <= sum_f <= ln X + {s} for {merten_min}<=X<={m}", s = tol::MERTEN_SLACK),
        failure,
    );
    let failure = wg
        .iter()
        .find(|p| (&p.sum - &p.log_x).abs() > slack)
        .map(|p| format!("fails at X={}", p.x));
    report.check(
        "merten-g-baseline",
        format!("|sum_g - ln X| <= {} for {merten_min}<=X<={m}", tol::MERTEN_SLACK),
        failure,
    );
    let fmt_range = |r: Option<(Rational, Rational)>| match r {
        Some((lo, hi)) => format!(
            "[{}, {}]",
            precision::fmt_fixed(&lo, 6),
            precision::fmt_fixed(&hi, 6)
        ),
        None => "empty window".into(),
    };
    report.info(
        "merten-offsets",
        format!("{merten_min}<=X<={m} precision_bits={}", config.precision.bits()),
        format!(
            "sum_g-lnX {} ; sum_f-lnX {} ; sum_f-0.5lnX {}",
            fmt_range(asymptotics::merten_offsets(&wg, &Rational::one())),
            fmt_range(asymptotics::merten_offsets(&wf, &Rational::one())),
            fmt_range(asymptotics::merten_offsets(&wf, &half)),
        ),
    );
    Ok(())
}

fn zeta_checks(
    report: &mut Report,
    f: &OrbitTable,
    g: &OrbitTable,
    m: u64,
    zeta_n: usize,
    xi1_n: usize,
) -> Result<()> {
    let recurrence = zeta::zeta_series(f, zeta_n)?;
    let product = zeta::orbit_product_series(f, zeta_n)?;
    let failure = if recurrence != product {
        Some("series differ".into())
    } else if !zeta::has_nonnegative_integer_coeffs(&recurrence) {
        Some("coefficient not a non-negative integer".into())
    } else {
        None
    };
    report.check("zeta-euler-product", format!("map=f N={zeta_n}"), failure);

    let cg = zeta::zeta_coefficients(g, zeta_n)?;
    let failure = first_failure(1..=zeta_n as u64, |n| {
        Ok(cg[n as usize] == BigUint::one() << (n - 1))
    })?;
    report.check("zeta-g-closed-form", format!("c_n=2^(n-1) N={zeta_n}"), failure);

    let failure = if xi1_n >= 2 && zeta::xi1_direct(xi1_n)? != zeta::xi1_closed_form(xi1_n)? {
        Some("series differ".into())
    } else {
        None
    };
    report.check("xi1-identity", format!("N={xi1_n}"), failure);

    let failure = if zeta_n >= 2 && zeta::xi_decomposition(zeta_n)? != zeta::xi_series(f, zeta_n)? {
        Some("series differ".into())
    } else {
        None
    };
    report.check("xi-decomposition", format!("N={zeta_n}"), failure);

    let growth_hi = m.min(400);
    let cf = zeta::zeta_coefficients(f, growth_hi as usize)?;
    let failure = first_failure(200..=growth_hi, |n| {
        Ok(((zeta::log2_big(&cf[n as usize]) / n as f64) - 1.0).abs() <= tol::COEFF_GROWTH_TOL)
    })?;
    report.check(
        "coefficient-growth",
        format!("|log2(c_n)/n-1|<={} 200<=n<={growth_hi}", tol::COEFF_GROWTH_TOL),
        failure,
    );

    let (mut high, mut low) = (false, false);
    for n in 1..200u64 {
        let ratio = precision::to_f64(&Rational::new(
            BigInt::from(f.fixed(n + 1)?.clone()),
            BigInt::from(f.fixed(n)?.clone()),
        ));
        high |= ratio > tol::F_RATIO_HIGH;
        low |= ratio < tol::F_RATIO_LOW;
    }
    report.check(
        "fixed-ratio-nonconvergence",
        format!("F_(n+1)/F_n above {} and below {} for n<200", tol::F_RATIO_HIGH, tol::F_RATIO_LOW),
        (!(high && low)).then(|| format!("above={high} below={low}")),
    );

    let mut failure = None;
    for (j, r) in [(1, 1u32), (1, 2), (2, 2)] {
        let p = PolarPoint::new(0.5, Angle::three_adic(j, r))?;
        let v = zeta::modulus_product_at(&p, 10)?;
        if v != 0.0 {
            failure = Some(format!("|zeta| = {v} at j={j} r={r}"));
        }
    }
    report.check("boundary-zeros", "z=e^(2 pi i j/3^r)/2 (j,r) in {(1,1),(1,2),(2,2)} J=10".into(), failure);

    let radii = [0.49, 0.495, 0.499, 0.4995, 0.4999];
    let rows = zeta::radial_scan(f, &Angle::three_adic(1, 1), &radii, 10, 200)?;
    let decreasing = rows
        .windows(2)
        .all(|w| w[1].product_modulus < w[0].product_modulus);
    report.check(
        "ray-decrease",
        "angle=1/3 radii 0.49..0.4999 J=10".into(),
        (!decreasing).then(|| {
            rows.iter()
                .map(|r| format!("{:.6}", r.product_modulus))
                .collect::<Vec<_>>()
                .join(" ")
        }),
    );

    let point = PolarPoint::from_complex(num_complex::Complex64::new(0.4, 0.0))?;
    let prod = zeta::modulus_product_at(&point, 8)?;
    let series = zeta::series_modulus(f, &point, 4000)?;
    let diff = (prod - series).abs();
    report.check(
        "interior-agreement",
        format!("z=0.4 J=8 N=4000 tol={}", tol::INTERIOR_AGREEMENT),
        (diff > tol::INTERIOR_AGREEMENT).then(|| format!("difference {diff:e}")),
    );

    let s = PowerSeries::from_coeffs(
        (0..=12i64)
            .map(|k| Rational::new(((k * 7) % 11 - 5).into(), (k % 5 + 1).into()))
            .enumerate()
            .map(|(i, c)| if i == 0 { Rational::zero() } else { c })
            .collect(),
        12,
    );
    let failure = (s.exp()?.log()? != s).then(|| "log(exp(s)) != s".to_string());
    report.check("exp-log-round-trip", "degree 12".into(), failure);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_window_passes() {
        let outcomes = run(&VerifyConfig::new(120)).unwrap();
        for o in &outcomes {
            assert_ne!(o.status, Status::Fail, "{} {} {}", o.name, o.params, o.detail);
        }
        assert!(all_passed(&outcomes));
    }

    #[test]
    fn degenerate_window_passes() {
        let outcomes = run(&VerifyConfig::new(1)).unwrap();
        assert!(all_passed(&outcomes));
    }

    #[test]
    fn injected_fault_is_caught() {
        let mut config = VerifyConfig::new(10);
        config.inject_fault = true;
        let outcomes = run(&config).unwrap();
        assert!(!all_passed(&outcomes));
        let failed: Vec<_> = outcomes.iter().filter(|o| o.status == Status::Fail).collect();
        assert_eq!(failed.len(), 1);
        assert_eq!(failed[0].name, "orbit-domination");
    }
}
