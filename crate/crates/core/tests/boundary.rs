use orbitkit::counting::{build_table, MapSpec};
use orbitkit::tolerances::DEEP_INTERIOR_AGREEMENT;
use orbitkit::zeta::{self, Angle, PolarPoint};

const RADII: [f64; 4] = [0.49, 0.499, 0.4999, 0.49999];

fn product_moduli(num: i64, den: i64) -> Vec<f64> {
    let angle = Angle::turns(num, den).unwrap();
    RADII
        .iter()
        .map(|&r| zeta::modulus_product_at(&PolarPoint::new(r, angle.clone()).unwrap(), 12).unwrap())
        .collect()
}

#[test]
fn negative_real_axis_is_also_a_zero() {
    // every factor vanishes at z = -1/2, so this ray tends to 0 as well
    let v = product_moduli(1, 2);
    assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
    assert!(v[3] < 0.05, "{v:?}");
    let at = PolarPoint::new(0.5, Angle::turns(1, 2).unwrap()).unwrap();
    assert_eq!(zeta::modulus_product_at(&at, 12).unwrap(), 0.0);
}

#[test]
fn generic_ray_stays_bounded_away_from_zero() {
    let v = product_moduli(1, 4);
    let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(lo > 0.5, "{v:?}");
    let spread = v.iter().cloned().fold(0.0, f64::max) - lo;
    assert!(spread < 0.05, "{v:?}");
}

#[test]
fn pole_and_outer_radius_are_rejected() {
    let pole = PolarPoint::new(0.5, Angle::turns(0, 1).unwrap()).unwrap();
    assert!(zeta::modulus_product_at(&pole, 5).is_err());
    let outside = PolarPoint::new(0.6, Angle::turns(1, 4).unwrap()).unwrap();
    assert!(zeta::modulus_product_at(&outside, 5).is_err());
}

#[test]
fn product_and_series_agree_in_deep_interior() {
    let table = build_table(MapSpec::three_adic(), 400).unwrap();
    for (r, num, den) in [(0.25, 0, 1), (0.3, 1, 3), (0.2, 3, 7), (0.35, 1, 2)] {
        let p = PolarPoint::new(r, Angle::turns(num, den).unwrap()).unwrap();
        let prod = zeta::modulus_product_at(&p, 8).unwrap();
        let series = zeta::series_modulus(&table, &p, 400).unwrap();
        assert!((prod - series).abs() < DEEP_INTERIOR_AGREEMENT, "r={r} angle={num}/{den}: {prod} vs {series}");
    }
}
