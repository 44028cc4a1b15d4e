//! Periodic points and closed orbits.
//!
//! For a map `T` write `F_n` for the number of points with `T^n x = x`,
//! `L_n` for the points of least period `n` and `O_n = L_n / n` for the
//! closed orbits of length `n`. The three sequences determine each other via
//! `F_n = Σ_{d|n} L_d` and its Möbius inversion.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::arith::{self, PAdicAbs};
use crate::error::{Error, Result};

/// The dynamical system a computation refers to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapSpec {
    /// `g: x ↦ 2x mod 1` on the circle.
    CircleDoubling,
    /// The dual `f` of `x ↦ 2x` on `Z[1/3]`, an extension of `g` by a
    /// 3-adic isometric cocycle.
    ThreeAdicExtension,
    /// `base^k`.
    Iterate { base: Box<MapSpec>, k: u64 },
    /// A map with prescribed orbit counts `O_1, O_2, ...`, zero past the end.
    Custom { orbit_counts: Vec<BigUint> },
}

/// Topological entropy `h = log(growth)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entropy {
    growth: BigUint,
}

impl Entropy {
    /// `e^h`; the zeta function has radius of convergence `1 / e^h`.
    pub fn growth(&self) -> &BigUint {
        &self.growth
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.growth.to_f64().map_or(f64::INFINITY, f64::ln)
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.growth.is_one() {
            write!(f, "0")
        } else {
            write!(f, "log {}", self.growth)
        }
    }
}

impl MapSpec {
    pub fn circle_doubling() -> Self {
        MapSpec::CircleDoubling
    }

    pub fn three_adic() -> Self {
        MapSpec::ThreeAdicExtension
    }

    pub fn iterate(base: MapSpec, k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroArgument { op: "iterate" });
        }
        Ok(MapSpec::Iterate {
            base: Box::new(base),
            k,
        })
    }

    pub fn custom<I, T>(orbit_counts: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        MapSpec::Custom {
            orbit_counts: orbit_counts.into_iter().map(Into::into).collect(),
        }
    }

    pub fn entropy(&self) -> Entropy {
        let growth = match self {
            MapSpec::CircleDoubling | MapSpec::ThreeAdicExtension => BigUint::from(2u32),
            MapSpec::Iterate { base, k } => base.entropy().growth.pow(*k as u32),
            // finitely many orbits: F_n is bounded
            MapSpec::Custom { .. } => BigUint::one(),
        };
        Entropy { growth }
    }

    /// Short label used in CLI output.
    pub fn label(&self) -> String {
        match self {
            MapSpec::CircleDoubling => "g".into(),
            MapSpec::ThreeAdicExtension => "f".into(),
            MapSpec::Iterate { base, k } => format!("{}^{}", base.label(), k),
            MapSpec::Custom { orbit_counts } => format!("custom[{}]", orbit_counts.len()),
        }
    }
}

/// `|2^n - 1|_3` in closed form: `1` for odd `n`, `(1/3)|n|_3` for even `n`.
pub fn padic_factor(n: u64) -> Result<PAdicAbs> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "padic_factor" });
    }
    let valuation = if n % 2 == 1 {
        0
    } else {
        1 + arith::ord_p_u64(n, 3)?
    };
    PAdicAbs::new(3, valuation)
}

/// `F_n(spec)`.
pub fn fix_count(spec: &MapSpec, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "fix_count" });
    }
    match spec {
        MapSpec::CircleDoubling => Ok(arith::mersenne(n)),
        MapSpec::ThreeAdicExtension => {
            let m = arith::mersenne(n);
            let divisor = padic_factor(n)?.inverse_value();
            let (q, r) = m.div_rem(&divisor);
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    what: "fix_count",
                    numerator: m.to_string(),
                    divisor: divisor.to_string(),
                });
            }
            Ok(q)
        }
        MapSpec::Iterate { base, k } => {
            let nk = n.checked_mul(*k).ok_or_else(|| {
                Error::InvalidParameter(format!("period {n}·{k} overflows"))
            })?;
            fix_count(base, nk)
        }
        MapSpec::Custom { orbit_counts } => {
            let mut total = BigUint::zero();
            for d in arith::divisors(n)? {
                if let Some(o) = orbit_counts.get(d as usize - 1) {
                    total += o * d;
                }
            }
            Ok(total)
        }
    }
}

/// Sum of `2^d - 1` over the proper divisors `d` of `n`.
pub fn proper_divisor_mersenne_sum(n: u64) -> Result<BigUint> {
    Ok(arith::divisors(n)?
        .into_iter()
        .filter(|&d| d < n)
        .map(arith::mersenne)
        .sum())
}

/// Cached `F_n`, `L_n`, `O_n` for `1 ≤ n ≤ n_max`.
#[derive(Debug, Clone)]
pub struct OrbitTable {
    spec: MapSpec,
    fixed: Vec<BigUint>,
    least: Vec<BigUint>,
    orbits: Vec<BigUint>,
}

impl OrbitTable {
    pub fn build(spec: MapSpec, n_max: u64) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::ZeroArgument { op: "build_table" });
        }
        let mut table = OrbitTable {
            spec,
            fixed: Vec::new(),
            least: Vec::new(),
            orbits: Vec::new(),
        };
        table.extend_to(n_max)?;
        Ok(table)
    }

    /// Grows the table in place; entries already present are kept.
    pub fn extend_to(&mut self, n_max: u64) -> Result<()> {
        let start = self.n_max() + 1;
        if n_max < start {
            return Ok(());
        }
        let mu = arith::mobius_table(n_max as usize);
        for n in start..=n_max {
            self.fixed.push(fix_count(&self.spec, n)?);
            let mut l = BigInt::zero();
            for d in arith::divisors(n)? {
                let f = BigInt::from_biguint(Sign::Plus, self.fixed[d as usize - 1].clone());
                match mu[(n / d) as usize] {
                    1 => l += f,
                    -1 => l -= f,
                    _ => {}
                }
            }
            if l.is_negative() {
                return Err(Error::NegativeCount {
                    what: "L_n",
                    n,
                    value: l.to_string(),
                });
            }
            let l = l.into_parts().1;
            let (o, r) = l.div_rem(&BigUint::from(n));
            if !r.is_zero() {
                return Err(Error::InexactDivision {
                    what: "O_n = L_n / n",
                    numerator: l.to_string(),
                    divisor: n.to_string(),
                });
            }
            self.least.push(l);
            self.orbits.push(o);
        }
        Ok(())
    }

    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    pub fn n_max(&self) -> u64 {
        self.fixed.len() as u64
    }

    fn index(&self, what: &'static str, n: u64) -> Result<usize> {
        if n == 0 || n > self.n_max() {
            return Err(Error::OutOfRange {
                what,
                index: n,
                limit: self.n_max(),
            });
        }
        Ok(n as usize - 1)
    }

    /// `F_n`.
    pub fn fixed(&self, n: u64) -> Result<&BigUint> {
        self.index("F_n", n).map(|i| &self.fixed[i])
    }

    /// `L_n`.
    pub fn least(&self, n: u64) -> Result<&BigUint> {
        self.index("L_n", n).map(|i| &self.least[i])
    }

    /// `O_n`.
    pub fn orbits(&self, n: u64) -> Result<&BigUint> {
        self.index("O_n", n).map(|i| &self.orbits[i])
    }

    pub fn fixed_slice(&self) -> &[BigUint] {
        &self.fixed
    }

    pub fn least_slice(&self) -> &[BigUint] {
        &self.least
    }

    pub fn orbit_slice(&self) -> &[BigUint] {
        &self.orbits
    }

    /// Checks that `n_max` is covered, for callers taking a window.
    pub fn require(&self, what: &'static str, n: u64) -> Result<()> {
        self.index(what, n).map(|_| ())
    }
}

pub fn build_table(spec: MapSpec, n_max: u64) -> Result<OrbitTable> {
    OrbitTable::build(spec, n_max)
}

/// `O_n(T^k) = (1/n) Σ_{d|n} μ(n/d) Σ_{d'|dk} d'·O_{d'}(T)`, evaluated from
/// the orbit counts of `T` alone.
pub fn orbit_count_iterate(base: &OrbitTable, k: u64, n: u64) -> Result<BigUint> {
    if k == 0 || n == 0 {
        return Err(Error::ZeroArgument {
            op: "orbit_count_iterate",
        });
    }
    let nk = n
        .checked_mul(k)
        .ok_or_else(|| Error::InvalidParameter(format!("period {n}·{k} overflows")))?;
    base.require("orbit_count_iterate", nk)?;
    let mut l = BigInt::zero();
    for d in arith::divisors(n)? {
        let mu = arith::mobius(n / d)?;
        if mu == 0 {
            continue;
        }
        let mut inner = BigUint::zero();
        for e in arith::divisors(d * k)? {
            inner += base.orbits(e)? * e;
        }
        let inner = BigInt::from(inner);
        if mu > 0 {
            l += inner;
        } else {
            l -= inner;
        }
    }
    let n_big = BigInt::from(n);
    let (o, r) = l.div_rem(&n_big);
    if !r.is_zero() || o.is_negative() {
        return Err(Error::InexactDivision {
            what: "orbit_count_iterate",
            numerator: l.to_string(),
            divisor: n.to_string(),
        });
    }
    Ok(o.into_parts().1)
}

/// `O_n(T^2)`: `2·O_{2n}(T) + O_n(T)` for odd `n`, `2·O_{2n}(T)` for even `n`.
pub fn iterate_square_identity(base: &OrbitTable, n: u64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroArgument {
            op: "iterate_square_identity",
        });
    }
    base.require("iterate_square_identity", 2 * n)?;
    let mut value = base.orbits(2 * n)? * 2u32;
    if n % 2 == 1 {
        value += base.orbits(n)?;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// Möbius inversion straight from the definition, on small machine integers.
    fn orbit_oracle(fixed: &[i64]) -> Vec<i64> {
        (1..=fixed.len() as u64)
            .map(|n| {
                let l: i64 = (1..=n)
                    .filter(|d| n % d == 0)
                    .map(|d| arith::mobius(n / d).unwrap() as i64 * fixed[d as usize - 1])
                    .sum();
                assert_eq!(l % n as i64, 0);
                l / n as i64
            })
            .collect()
    }

    #[test]
    fn fix_count_examples() {
        let f = MapSpec::three_adic();
        let g = MapSpec::circle_doubling();
        assert_eq!(fix_count(&f, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(fix_count(&g, 3).unwrap(), BigUint::from(7u32));
        assert_eq!(fix_count(&f, 6).unwrap(), BigUint::from(7u32));
        let g2 = MapSpec::iterate(g, 2).unwrap();
        for n in 1..=40u64 {
            let expected = (BigUint::one() << (2 * n)) - 1u32;
            assert_eq!(fix_count(&g2, n).unwrap(), expected);
        }
        assert!(fix_count(&f, 0).is_err());
    }

    #[test]
    fn padic_factor_examples() {
        assert_eq!(padic_factor(1).unwrap().valuation(), 0);
        assert_eq!(padic_factor(2).unwrap().valuation(), 1);
        assert_eq!(padic_factor(12).unwrap().valuation(), 2);
        assert_eq!(padic_factor(18).unwrap().valuation(), 3);
        assert!(padic_factor(0).is_err());
    }

    #[test]
    fn table_for_f_matches_oracle() {
        let t = build_table(MapSpec::three_adic(), 6).unwrap();
        assert_eq!(t.fixed_slice(), big(&[1, 1, 7, 5, 31, 7]).as_slice());
        let oracle = orbit_oracle(&[1, 1, 7, 5, 31, 7]);
        assert_eq!(oracle, vec![1, 0, 2, 1, 6, 0]);
        assert_eq!(t.orbit_slice(), big(&[1, 0, 2, 1, 6, 0]).as_slice());
        assert_eq!(t.least_slice(), big(&[1, 0, 6, 4, 30, 0]).as_slice());
    }

    #[test]
    fn table_for_g_matches_oracle() {
        let t = build_table(MapSpec::circle_doubling(), 6).unwrap();
        let fixed: Vec<i64> = (1..=6).map(|n| (1i64 << n) - 1).collect();
        assert_eq!(orbit_oracle(&fixed), vec![1, 1, 2, 3, 6, 9]);
        assert_eq!(t.orbit_slice(), big(&[1, 1, 2, 3, 6, 9]).as_slice());
    }

    #[test]
    fn custom_counts_from_example() {
        let t = build_table(MapSpec::custom([1u32, 3]), 2).unwrap();
        assert_eq!(t.fixed_slice(), big(&[1, 7]).as_slice());
        assert_eq!(t.orbit_slice(), big(&[1, 3]).as_slice());
    }

    #[test]
    fn table_rejects_zero_and_out_of_range() {
        assert!(build_table(MapSpec::three_adic(), 0).is_err());
        let t = build_table(MapSpec::three_adic(), 4).unwrap();
        assert!(matches!(t.orbits(5), Err(Error::OutOfRange { .. })));
        assert!(t.orbits(0).is_err());
    }

    #[test]
    fn extend_keeps_prefix() {
        let mut t = build_table(MapSpec::three_adic(), 10).unwrap();
        let prefix = t.orbit_slice().to_vec();
        t.extend_to(30).unwrap();
        assert_eq!(&t.orbit_slice()[..10], prefix.as_slice());
        let fresh = build_table(MapSpec::three_adic(), 30).unwrap();
        assert_eq!(t.orbit_slice(), fresh.orbit_slice());
    }

    #[test]
    fn iterate_examples() {
        let g = build_table(MapSpec::circle_doubling(), 20).unwrap();
        assert_eq!(orbit_count_iterate(&g, 2, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(orbit_count_iterate(&g, 2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(orbit_count_iterate(&g, 1, 5).unwrap(), BigUint::from(6u32));
        assert!(matches!(
            orbit_count_iterate(&g, 3, 7),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn square_identity_examples() {
        let g = build_table(MapSpec::circle_doubling(), 20).unwrap();
        let f = build_table(MapSpec::three_adic(), 20).unwrap();
        assert_eq!(iterate_square_identity(&g, 1).unwrap(), BigUint::from(3u32));
        assert_eq!(iterate_square_identity(&g, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(iterate_square_identity(&f, 3).unwrap(), BigUint::from(2u32));
        assert!(iterate_square_identity(&f, 11).is_err());
    }

    #[test]
    fn killed_orbits() {
        let f = build_table(MapSpec::three_adic(), 6).unwrap();
        assert!(f.orbits(2).unwrap().is_zero());
        assert!(f.orbits(6).unwrap().is_zero());
    }

    #[test]
    fn entropy_constants() {
        assert_eq!(MapSpec::three_adic().entropy().to_string(), "log 2");
        assert_eq!(MapSpec::circle_doubling().entropy().to_string(), "log 2");
        let g2 = MapSpec::iterate(MapSpec::circle_doubling(), 2).unwrap();
        assert_eq!(g2.entropy().to_string(), "log 4");
        assert_eq!(MapSpec::custom([1u32]).entropy().to_string(), "0");
        assert!(MapSpec::iterate(MapSpec::circle_doubling(), 0).is_err());
    }
}
