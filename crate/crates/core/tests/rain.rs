use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use slanted_rain_core::rain::DEFAULT_POINT_LIMIT;
use slanted_rain_core::{egyptian_step, f_len, f_len_nd, rat, DiagonalAffineMap, Point, Rain2D, RainNd, Rational};

fn p2(x: Rational, y: Rational) -> Point {
    Point::new(vec![x, y]).unwrap()
}

fn pos_rat() -> impl Strategy<Value = Rational> {
    (1i64..20, 1i64..20).prop_map(|(n, d)| rat(n, d).unwrap())
}

fn any_rat() -> impl Strategy<Value = Rational> {
    (-20i64..20, 1i64..20).prop_map(|(n, d)| rat(n, d).unwrap())
}

fn point_set(points: Vec<Point>) -> BTreeSet<Point> {
    points.into_iter().collect()
}

/// Apexes of unit triangles over two base points, computed from scratch.
fn planar_apexes(r: &Rain2D) -> BTreeSet<Point> {
    let (x0, y0) = (r.origin().coord(0).clone(), r.origin().coord(1).clone());
    let b = r.step().clone();
    let mut out = BTreeSet::new();
    for i in 0..r.length() {
        for j in i + 1..r.length() {
            let leg = &b * &Rational::from(j - i);
            let x = &x0 + &(&b * &Rational::from(i));
            out.insert(p2(x, &y0 + &leg.recip().unwrap()));
        }
    }
    out
}

/// Apexes of unit simplices standing on the base grid, from scratch: corner
/// `kappa`, extents `j_i >= 1` with `kappa_i + j_i < len`.
fn spatial_apexes(r: &RainNd) -> BTreeSet<Point> {
    let d = r.base_dim();
    let len = r.length();
    let mut out = BTreeSet::new();
    let total = len.pow(d as u32);
    for idx in 0..total {
        let kappa: Vec<usize> = (0..d).map(|i| idx / len.pow((d - 1 - i) as u32) % len).collect();
        let ranges: Vec<usize> = kappa.iter().map(|&k| len - 1 - k).collect();
        if ranges.contains(&0) {
            continue;
        }
        let combos: usize = ranges.iter().product();
        for c in 0..combos {
            let mut rest = c;
            let mut edges = Rational::one();
            for (i, &m) in ranges.iter().enumerate() {
                let j = rest % m + 1;
                rest /= m;
                edges = &edges * &(&r.steps()[i] * &Rational::from(j));
            }
            let base = r.base_point(&kappa);
            out.insert(base.shifted(0, &edges.recip().unwrap()));
        }
    }
    out
}

/// A valid `(start, stride, length)` sub-progression of `0..len` picked by
/// the free parameters.
fn sub_progression(len: usize, a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let stride = 1 + b % (len - 1);
    let sub_len = 2 + c % ((len - 1) / stride);
    let start = a % (len - (sub_len - 1) * stride);
    (start, stride, sub_len)
}

#[test]
fn planar_point_counts() {
    for len in 2..=50usize {
        let r = Rain2D::unit(Point::origin(2).unwrap(), len).unwrap();
        let pts = r.enumerate_points(DEFAULT_POINT_LIMIT).unwrap();
        assert_eq!(pts.len(), len + len * (len - 1) / 2, "length {len}");
        assert_eq!(point_set(pts).len(), len + len * (len - 1) / 2);
    }
}

#[test]
fn planar_apex_characterisation() {
    for len in 2..=8 {
        for step in [rat(1, 1), rat(3, 2), rat(1, 5)] {
            let r = Rain2D::new(p2(rat(-1, 3).unwrap(), rat(2, 7).unwrap()), step.unwrap(), len).unwrap();
            let layers: BTreeSet<Point> = r.layer_points().collect();
            assert_eq!(layers, planar_apexes(&r), "length {len}");
        }
    }
}

#[test]
fn spatial_apex_characterisation() {
    for (n, len) in [(3, 2), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3)] {
        let r = RainNd::unit(Point::origin(n).unwrap(), len).unwrap();
        let apexes: BTreeSet<Point> = r.apex_points().into_iter().collect();
        let expected = spatial_apexes(&r);
        assert_eq!(apexes, expected, "n {n} length {len}");
        for p in &apexes {
            assert!(r.contains(p));
            assert_eq!(r.apex_simplex(p).unwrap().edge_product(), Rational::one());
        }
    }
}

#[test]
fn spatial_membership_matches_enumeration() {
    for (n, len) in [(3, 2), (3, 3), (3, 4), (4, 3)] {
        let steps = (1..n).map(|i| rat(i as i64, 2).unwrap()).collect();
        let origin = Point::new((0..n).map(|i| rat(i as i64, 3).unwrap()).collect()).unwrap();
        let r = RainNd::new(origin, steps, len).unwrap();
        let pts = point_set(r.enumerate_points(DEFAULT_POINT_LIMIT).unwrap());
        let expected_count = len.pow(n as u32 - 1) + (len * (len - 1) / 2).pow(n as u32 - 1);
        assert_eq!(pts.len() as u128, r.point_count());
        assert_eq!(pts.len(), expected_count);
        for p in &pts {
            assert!(r.contains(p), "{p}");
        }
        // Nearby non-members: nudged points that fall outside the set.
        for p in pts.iter().take(40) {
            for axis in 0..n {
                let q = p.shifted(axis, &rat(1, 97).unwrap());
                assert_eq!(r.contains(&q), pts.contains(&q), "{q}");
            }
        }
    }
}

#[test]
fn planar_subrain_containment() {
    for l in 2..=5u64 {
        let big_len = f_len(l).to_usize().unwrap();
        let big = Rain2D::unit(Point::origin(2).unwrap(), big_len).unwrap();
        let sub = big.subrain(l as usize).unwrap();
        assert_eq!(sub.length(), l as usize);
        let sub_pts = sub.enumerate_points(DEFAULT_POINT_LIMIT).unwrap();
        assert!(sub_pts.iter().all(|p| big.contains(p)));
        // Sub-rain sits in the layers, never on the base.
        assert!(sub_pts.iter().all(|p| p.coord(1).is_positive()));
        if l <= 4 {
            let all = point_set(big.enumerate_points(DEFAULT_POINT_LIMIT).unwrap());
            assert!(sub_pts.iter().all(|p| all.contains(p)));
        }
    }
}

#[test]
fn figure_configuration() {
    let big = Rain2D::unit(Point::origin(2).unwrap(), 19).unwrap();
    let sub = big.subrain(3).unwrap();
    assert_eq!(sub.step(), &Rational::integer(6));
    assert_eq!(sub.origin(), &p2(Rational::zero(), rat(1, 6).unwrap()));
    let pts = point_set(sub.enumerate_points(100).unwrap());
    let expected: BTreeSet<Point> = [(0, (1, 6)), (6, (1, 6)), (12, (1, 6)), (0, (1, 3)), (6, (1, 3)), (0, (1, 4))]
        .into_iter()
        .map(|(x, (n, d))| p2(Rational::integer(x), rat(n, d).unwrap()))
        .collect();
    assert_eq!(pts, expected);
}

#[test]
fn spatial_subrain_containment() {
    for (n, l) in [(3u32, 2u64), (3, 3), (4, 2)] {
        let big_len = f_len_nd(n, l).to_usize().unwrap();
        let big = RainNd::unit(Point::origin(n as usize).unwrap(), big_len).unwrap();
        let sub = big.subrain(l as usize).unwrap();
        assert_eq!(sub.length(), l as usize);
        assert_eq!(sub.step_product(), big.step_product() * subrain_scale(n, l));
        for p in sub.enumerate_points(DEFAULT_POINT_LIMIT).unwrap() {
            assert!(big.contains(&p), "n {n} l {l}: {p}");
        }
    }
    assert_eq!(f_len_nd(3, 2), BigUint::from(5u32));
    assert_eq!(f_len_nd(3, 3), BigUint::from(361u32));
    assert_eq!(f_len_nd(4, 2), BigUint::from(5u32));
}

/// `s^(n-1)` with `s = ((l-1)^(n-1) + 1)!`, from scratch.
fn subrain_scale(n: u32, l: u64) -> Rational {
    let arg = (l - 1).pow(n - 1) + 1;
    let s: BigUint = (1..=arg).map(BigUint::from).product();
    Rational::from(s.pow(n - 1))
}

#[test]
fn too_short_rains_have_no_subrain() {
    let r = Rain2D::unit(Point::origin(2).unwrap(), 18).unwrap();
    assert!(r.subrain(3).is_err());
    let r = RainNd::unit(Point::origin(3).unwrap(), 4).unwrap();
    assert!(r.subrain(2).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn property_zero_planar(len in 2usize..=12, a in 0usize..100, b in 0usize..100, c in 0usize..100,
                            ox in any_rat(), oy in any_rat(), step in pos_rat()) {
        let (start, stride, sub_len) = sub_progression(len, a, b, c);
        let big = Rain2D::new(p2(ox, oy), step, len).unwrap();
        let sub = big.on_subprogression(start, stride, sub_len).unwrap();
        let all = point_set(big.enumerate_points(DEFAULT_POINT_LIMIT).unwrap());
        for p in sub.enumerate_points(DEFAULT_POINT_LIMIT).unwrap() {
            prop_assert!(big.contains(&p));
            prop_assert!(all.contains(&p));
        }
    }

    #[test]
    fn property_zero_spatial(len in 2usize..=6, a in 0usize..100, b in 0usize..100, c in 0usize..100, d in 0usize..100) {
        let (c0, stride, sub_len) = sub_progression(len, a, b, c);
        let c1 = d % (len - (sub_len - 1) * stride);
        let big = RainNd::new(Point::origin(3).unwrap(), vec![rat(1, 2).unwrap(), rat(3, 1).unwrap()], len).unwrap();
        let sub = big.on_subgrid(&[c0, c1], stride, sub_len).unwrap();
        let all = point_set(big.enumerate_points(DEFAULT_POINT_LIMIT).unwrap());
        for p in sub.enumerate_points(DEFAULT_POINT_LIMIT).unwrap() {
            prop_assert!(all.contains(&p), "{}", p);
        }
        for p in sub.apex_points() {
            prop_assert!(big.apex_points().contains(&p));
        }
    }

    #[test]
    fn planar_covariance(len in 2usize..10, k in pos_rat(), tx in any_rat(), ty in any_rat(), step in pos_rat()) {
        let center = Point::origin(2).unwrap();
        let m = DiagonalAffineMap::hyperbolic_rotation(&center, &k).unwrap()
            .compose(&DiagonalAffineMap::translation(&p2(tx, ty))).unwrap();
        let r = Rain2D::new(p2(rat(1, 2).unwrap(), Rational::zero()), step.clone(), len).unwrap();
        let image = Rain2D::new(m.apply(r.origin()).unwrap(), &step * &k, len).unwrap();
        let mapped: BTreeSet<Point> = r.enumerate_points(DEFAULT_POINT_LIMIT).unwrap().iter().map(|p| m.apply(p).unwrap()).collect();
        prop_assert_eq!(mapped, point_set(image.enumerate_points(DEFAULT_POINT_LIMIT).unwrap()));
    }

    #[test]
    fn spatial_covariance(len in 2usize..5, a in pos_rat(), b in pos_rat(), t in any_rat()) {
        let c = &a * &b;
        let m = DiagonalAffineMap::new(vec![c.recip().unwrap(), a, b], vec![t.clone(), t.clone(), -t]).unwrap();
        let r = RainNd::unit(Point::origin(3).unwrap(), len).unwrap();
        let image = r.mapped(&m).unwrap();
        let mapped: BTreeSet<Point> = r.enumerate_points(DEFAULT_POINT_LIMIT).unwrap().iter().map(|p| m.apply(p).unwrap()).collect();
        prop_assert_eq!(mapped, point_set(image.enumerate_points(DEFAULT_POINT_LIMIT).unwrap()));
    }

    #[test]
    fn egyptian_lemma(m in 1u64..=500, q in 1u64..=500) {
        let scan = (1..=m).find(|&n| n * (m + q) == m * q);
        let got = egyptian_step(m, q);
        prop_assert_eq!(got, scan);
        prop_assert_eq!(got.is_some(), (m * q) % (m + q) == 0);
        if let Some(n) = got {
            prop_assert_eq!(rat(1, m as i64).unwrap() + rat(1, q as i64).unwrap(), rat(1, n as i64).unwrap());
        }
    }
}
