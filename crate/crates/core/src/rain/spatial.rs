use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{f_len_nd, factorial, sub_rain_factorial_arg};
use crate::affine::DiagonalAffineMap;
use crate::error::Error;
use crate::rational::{join_display, Point, Rational};
use crate::simplex::StandardSimplex;

/// n-dimensional slanted rain.
///
/// The base is the grid `origin + {0} x {0, s_1, ..., (l-1)s_1} x ... ` in the
/// hyperplane `x_0 = origin_0`. A layer point sits at
/// `origin + (1/(w * s_1 ... s_{n-1}), kappa_1 s_1, ..., kappa_{n-1} s_{n-1})`
/// for `w >= 1` and `prod (l - 1 - kappa_i) >= w`.
///
/// Only the layer points whose `w` factors as `j_1 ... j_{n-1}` with
/// `1 <= j_i <= l - 1 - kappa_i` are apexes of unit simplices standing on the
/// base; see [`RainNd::apex_simplex`]. For `n = 2` every layer point is one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RainNd {
    origin: Point,
    steps: Vec<Rational>,
    length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NdLocation {
    Base { kappa: Vec<usize> },
    Layer { w: BigUint, kappa: Vec<usize> },
}

/// All index vectors of `{0..side}^dim` in lexicographic order.
pub(crate) fn lex_indices(dim: usize, side: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = side.checked_pow(dim as u32).unwrap_or(usize::MAX);
    let mut cur = alloc::vec![0usize; dim];
    let mut emitted = 0usize;
    core::iter::from_fn(move || {
        if emitted == total || side == 0 {
            return None;
        }
        let out = cur.clone();
        emitted += 1;
        for i in (0..dim).rev() {
            cur[i] += 1;
            if cur[i] < side {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    })
}

impl RainNd {
    pub fn new(origin: Point, steps: Vec<Rational>, length: usize) -> Result<Self, Error> {
        if origin.dim() < 2 {
            return Err(Error::DimensionMismatch { expected: 2, got: origin.dim() });
        }
        if steps.len() + 1 != origin.dim() {
            return Err(Error::DimensionMismatch { expected: origin.dim() - 1, got: steps.len() });
        }
        if let Some(s) = steps.iter().find(|s| !s.is_positive()) {
            return Err(Error::NotPositive { what: "rain step", value: s.clone() });
        }
        if length < 2 {
            return Err(Error::RainLength(length));
        }
        Ok(RainNd { origin, steps, length })
    }

    /// Unit steps, base grid starting at `origin`.
    pub fn unit(origin: Point, length: usize) -> Result<Self, Error> {
        let n = origin.dim();
        RainNd::new(origin, alloc::vec![Rational::one(); n.saturating_sub(1)], length)
    }

    pub fn dim(&self) -> usize {
        self.origin.dim()
    }

    pub fn base_dim(&self) -> usize {
        self.dim() - 1
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn steps(&self) -> &[Rational] {
        &self.steps
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn step_product(&self) -> Rational {
        Rational::product(self.steps.iter())
    }

    /// `l^(n-1) + (l(l-1)/2)^(n-1)`, counting every layer point.
    pub fn point_count(&self) -> u128 {
        let l = self.length as u128;
        let d = self.base_dim() as u32;
        l.saturating_pow(d).saturating_add((l * (l - 1) / 2).saturating_pow(d))
    }

    pub fn base_point(&self, kappa: &[usize]) -> Point {
        let mut p = self.origin.clone();
        for (i, (&k, s)) in kappa.iter().zip(&self.steps).enumerate() {
            p = p.shifted(i + 1, &(s * &Rational::from(k)));
        }
        p
    }

    pub fn layer_height(&self, w: &BigUint) -> Rational {
        (&self.step_product() * &Rational::from(w.clone())).recip().expect("w >= 1")
    }

    pub fn layer_point(&self, w: &BigUint, kappa: &[usize]) -> Point {
        self.base_point(kappa).shifted(0, &self.layer_height(w))
    }

    /// `prod (l - 1 - kappa_i)`: the largest `w` allowed above `kappa`.
    pub fn layer_capacity(&self, kappa: &[usize]) -> BigUint {
        kappa.iter().map(|&k| BigUint::from(self.length - 1 - k)).product()
    }

    pub fn locate(&self, p: &Point) -> Option<NdLocation> {
        if p.dim() != self.dim() {
            return None;
        }
        let mut kappa = Vec::with_capacity(self.base_dim());
        for (i, s) in self.steps.iter().enumerate() {
            let idx = (&(p.coord(i + 1) - self.origin.coord(i + 1)) / s).to_usize()?;
            if idx >= self.length {
                return None;
            }
            kappa.push(idx);
        }
        let dx = p.coord(0) - self.origin.coord(0);
        if dx.is_zero() {
            return Some(NdLocation::Base { kappa });
        }
        if !dx.is_positive() {
            return None;
        }
        let w = (&dx * &self.step_product()).recip()?.to_positive_integer()?;
        (w <= self.layer_capacity(&kappa)).then_some(NdLocation::Layer { w, kappa })
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p).is_some()
    }

    pub fn base_points(&self) -> impl Iterator<Item = Point> + '_ {
        lex_indices(self.base_dim(), self.length).map(move |k| self.base_point(&k))
    }

    /// Every point: base in lexicographic order, then layers by `w`, then
    /// lexicographically in `kappa`.
    pub fn enumerate_points(&self, limit: u128) -> Result<Vec<Point>, Error> {
        let count = self.point_count();
        if count > limit {
            return Err(Error::LimitExceeded { count, limit });
        }
        let mut layers = Vec::new();
        for kappa in lex_indices(self.base_dim(), self.length) {
            let cap = self.layer_capacity(&kappa).to_u128().unwrap_or(u128::MAX);
            for w in 1..=cap {
                layers.push((w, kappa.clone()));
            }
        }
        layers.sort();
        let mut out: Vec<Point> = self.base_points().collect();
        out.extend(layers.into_iter().map(|(w, k)| self.layer_point(&BigUint::from(w), &k)));
        Ok(out)
    }

    /// Lexicographically first `j` with `prod j = w` and `1 <= j_i <= l-1-kappa_i`.
    fn factor_within(&self, w: &BigUint, kappa: &[usize]) -> Option<Vec<usize>> {
        fn go(rest: &BigUint, caps: &[usize], acc: &mut Vec<usize>) -> bool {
            match caps.split_first() {
                None => rest.is_one(),
                Some((&cap, tail)) => {
                    for j in 1..=cap {
                        let jb = BigUint::from(j);
                        if (rest % &jb) == BigUint::ZERO {
                            acc.push(j);
                            if go(&(rest / &jb), tail, acc) {
                                return true;
                            }
                            acc.pop();
                        }
                    }
                    false
                }
            }
        }
        let caps: Vec<usize> = kappa.iter().map(|&k| self.length - 1 - k).collect();
        let mut acc = Vec::new();
        go(w, &caps, &mut acc).then_some(acc)
    }

    /// The unit simplex with apex `p` whose base face lies in the rain's base.
    pub fn apex_simplex(&self, p: &Point) -> Result<StandardSimplex, Error> {
        let Some(NdLocation::Layer { w, kappa }) = self.locate(p) else {
            return Err(Error::NotALayerPoint(p.clone()));
        };
        let j = self.factor_within(&w, &kappa).ok_or_else(|| Error::NotAnApex(p.clone()))?;
        let mut edges = alloc::vec![self.layer_height(&w)];
        edges.extend(j.iter().zip(&self.steps).map(|(&j, s)| s * &Rational::from(j)));
        StandardSimplex::new(self.base_point(&kappa), edges)
    }

    pub fn is_apex(&self, p: &Point) -> bool {
        self.apex_simplex(p).is_ok()
    }

    /// Apex points (layer points carrying a unit simplex on the base) in
    /// canonical enumeration order.
    pub fn apex_points(&self) -> Vec<Point> {
        let mut keys = BTreeSet::new();
        for kappa in lex_indices(self.base_dim(), self.length) {
            let caps: Vec<u128> = kappa.iter().map(|&k| (self.length - 1 - k) as u128).collect();
            if caps.contains(&0) {
                continue;
            }
            let mut products = BTreeSet::from([1u128]);
            for cap in caps {
                products = products
                    .iter()
                    .flat_map(|&p| (1..=cap).map(move |j| p * j))
                    .collect();
            }
            for w in products {
                keys.insert((w, kappa.clone()));
            }
        }
        keys.into_iter().map(|(w, k)| self.layer_point(&BigUint::from(w), &k)).collect()
    }

    /// Rain on the base sub-grid `corner + stride * {0..len}^(n-1)`.
    pub fn on_subgrid(&self, corner: &[usize], stride: usize, len: usize) -> Result<RainNd, Error> {
        let fits = corner.len() == self.base_dim()
            && stride > 0
            && len >= 2
            && corner.iter().all(|&c| c + (len - 1) * stride < self.length);
        if !fits {
            return Err(Error::Invalid(alloc::format!(
                "sub-grid at {corner:?} stride {stride} length {len} does not fit a base of side {}",
                self.length
            )));
        }
        let r = Rational::from(stride);
        RainNd::new(
            self.base_point(corner),
            self.steps.iter().map(|s| s * &r).collect(),
            len,
        )
    }

    /// Volume-preserving map about the origin taking all steps to 1.
    pub fn normalizer(&self) -> DiagonalAffineMap {
        let mut factors = alloc::vec![self.step_product()];
        factors.extend(self.steps.iter().map(|s| s.recip().expect("positive step")));
        DiagonalAffineMap::about(&self.origin, factors).expect("positive factors")
    }

    /// Image of the rain under a volume-preserving diagonal map.
    pub fn mapped(&self, m: &DiagonalAffineMap) -> Result<RainNd, Error> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: m.dim() });
        }
        if !m.is_volume_preserving() {
            return Err(Error::NotVolumePreserving(m.scale_product()));
        }
        let steps = self.steps.iter().zip(&m.scale()[1..]).map(|(s, k)| s * k).collect();
        RainNd::new(m.apply(&self.origin)?, steps, self.length)
    }

    /// A rain of length `target` contained in the layers of `self`.
    ///
    /// Normalises to unit steps, takes the rain with steps `s = ((target-1)^(n-1)+1)!`
    /// whose base sits at height `1/s^(n-1)`, and maps back. Requires
    /// `length >= F_n(target)`.
    pub fn subrain(&self, target: usize) -> Result<RainNd, Error> {
        if target < 2 {
            return Err(Error::RainLength(target));
        }
        let n = self.dim() as u32;
        let need = f_len_nd(n, target as u64);
        if BigUint::from(self.length) < need {
            return Err(Error::RainTooShort { have: self.length, need });
        }
        let norm = self.normalizer();
        let unit = self.mapped(&norm)?;
        let s = Rational::from(factorial(sub_rain_factorial_arg(n, target as u64)));
        let mut lift = Rational::one();
        for _ in 1..n {
            lift = &lift * &s;
        }
        let lift = lift.recip().expect("s >= 1");
        let small = RainNd::new(
            unit.origin.shifted(0, &lift),
            alloc::vec![s; self.base_dim()],
            target,
        )?;
        small.mapped(&norm.inverse())
    }

    /// Origin, the first base neighbour along each base axis, and the `w = 1`
    /// apex above the origin.
    pub fn first_simplex(&self) -> StandardSimplex {
        let apex = self.layer_point(&BigUint::one(), &alloc::vec![0; self.base_dim()]);
        self.apex_simplex(&apex).expect("kappa = 0 always carries w = 1")
    }
}

impl fmt::Display for RainNd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rain(origin {}, steps ({}), length {})",
            self.origin,
            join_display(&self.steps, ","),
            self.length
        )
    }
}

impl fmt::Debug for RainNd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rain::Rain2D;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn unit3(len: usize) -> RainNd {
        RainNd::unit(pt("(0,0,0)"), len).unwrap()
    }

    #[test]
    fn lex_order() {
        let v: Vec<_> = lex_indices(2, 2).collect();
        assert_eq!(v, [[0, 0], [0, 1], [1, 0], [1, 1]]);
        assert_eq!(lex_indices(0, 3).count(), 1);
    }

    #[test]
    fn membership_small() {
        let r = unit3(2);
        assert!(r.contains(&pt("(1,0,0)")));
        assert!(!r.contains(&pt("(1,1,0)")));
        assert!(r.contains(&pt("(0,1,1)")));
        assert!(!r.contains(&pt("(0,2,0)")));
        assert!(!r.contains(&pt("(1/2,0,0)")));
        assert_eq!(r.enumerate_points(100).unwrap().len(), 5);
        assert_eq!(r.point_count(), 5);
    }

    #[test]
    fn layer_points_beyond_apexes() {
        // w = 3 above kappa = (0,0) passes the product bound 2*2 but 3 does not
        // split into two factors <= 2.
        let r = unit3(3);
        let p = pt("(1/3,0,0)");
        assert!(r.contains(&p));
        assert!(matches!(r.apex_simplex(&p), Err(Error::NotAnApex(_))));
        let q = pt("(1/4,0,0)");
        let s = r.apex_simplex(&q).unwrap();
        assert_eq!(s.edges(), &[pt("(1/4,2,2)").coords()[0].clone(), 2.into(), 2.into()]);
        assert_eq!(r.apex_points().len(), 8);
    }

    #[test]
    fn subrain_example() {
        let big = unit3(5);
        let sub = big.subrain(2).unwrap();
        assert_eq!(sub.origin(), &pt("(1/4,0,0)"));
        assert_eq!(sub.steps(), &[Rational::from(2), Rational::from(2)]);
        assert_eq!(sub.length(), 2);
        for p in sub.enumerate_points(100).unwrap() {
            assert!(big.contains(&p), "{p}");
            assert!(big.is_apex(&p), "{p}");
        }
        assert!(big.contains(&pt("(1/2,0,0)")));
    }

    #[test]
    fn subrain_too_short() {
        assert!(matches!(unit3(4).subrain(2), Err(Error::RainTooShort { have: 4, .. })));
    }

    #[test]
    fn two_d_agrees_with_planar() {
        for (len, target) in [(5, 2), (19, 3), (30, 3)] {
            let planar = Rain2D::new(pt("(1/3,2)"), Rational::from(3), len).unwrap();
            let nd = planar.to_nd();
            assert_eq!(planar.subrain(target).unwrap().to_nd(), nd.subrain(target).unwrap());
        }
    }

    #[test]
    fn mapped_requires_volume_preserving() {
        let m = DiagonalAffineMap::scaling(alloc::vec![2.into(), 1.into(), 1.into()]).unwrap();
        assert!(matches!(unit3(3).mapped(&m), Err(Error::NotVolumePreserving(_))));
    }
}
