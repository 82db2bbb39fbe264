use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use super::{f_len, factorial, RainNd};
use crate::error::Error;
use crate::rational::{Point, Rational};
use crate::simplex::StandardSimplex;

/// Planar slanted rain: base along the x-axis, layers above it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rain2D {
    origin: Point,
    step: Rational,
    length: usize,
}

/// Where a point sits inside a [`Rain2D`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Base { kappa: usize },
    /// Layer `k` (height `1/(kb)`), position `kappa <= length - 1 - k`.
    Layer { k: usize, kappa: usize },
}

impl Rain2D {
    pub fn new(origin: Point, step: Rational, length: usize) -> Result<Self, Error> {
        origin.check_dim(2)?;
        if !step.is_positive() {
            return Err(Error::NotPositive { what: "rain step", value: step });
        }
        if length < 2 {
            return Err(Error::RainLength(length));
        }
        Ok(Rain2D { origin, step, length })
    }

    /// Rain on the integer row starting at `origin` with step 1.
    pub fn unit(origin: Point, length: usize) -> Result<Self, Error> {
        Rain2D::new(origin, Rational::one(), length)
    }

    pub fn origin(&self) -> &Point {
        &self.origin
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `l + l(l-1)/2`.
    pub fn point_count(&self) -> u128 {
        let l = self.length as u128;
        l + l * (l - 1) / 2
    }

    pub fn base_point(&self, kappa: usize) -> Point {
        self.origin.shifted(0, &(&self.step * &Rational::from(kappa)))
    }

    pub fn layer_height(&self, k: usize) -> Rational {
        (&self.step * &Rational::from(k)).recip().expect("k >= 1 and step > 0")
    }

    pub fn layer_point(&self, k: usize, kappa: usize) -> Point {
        self.base_point(kappa).shifted(1, &self.layer_height(k))
    }

    /// Closed-form membership; no enumeration.
    pub fn locate(&self, p: &Point) -> Option<Location> {
        if p.dim() != 2 {
            return None;
        }
        let dx = &(p.coord(0) - self.origin.coord(0)) / &self.step;
        let kappa = dx.to_usize().filter(|&k| k < self.length)?;
        let dy = p.coord(1) - self.origin.coord(1);
        if dy.is_zero() {
            return Some(Location::Base { kappa });
        }
        if !dy.is_positive() {
            return None;
        }
        let k = (&dy * &self.step).recip()?.to_usize()?;
        (k >= 1 && k < self.length && kappa < self.length - k).then_some(Location::Layer { k, kappa })
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p).is_some()
    }

    pub fn base_points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.length).map(move |kappa| self.base_point(kappa))
    }

    /// Layer points in canonical order: `k = 1, 2, ...`, each left to right.
    pub fn layer_points(&self) -> impl Iterator<Item = Point> + '_ {
        (1..self.length)
            .flat_map(move |k| (0..self.length - k).map(move |kappa| self.layer_point(k, kappa)))
    }

    /// All points: the base left to right, then the layers.
    pub fn enumerate_points(&self, limit: u128) -> Result<Vec<Point>, Error> {
        let count = self.point_count();
        if count > limit {
            return Err(Error::LimitExceeded { count, limit });
        }
        Ok(self.base_points().chain(self.layer_points()).collect())
    }

    /// The unit triangle with apex `p` and both lower vertices on the base.
    pub fn apex_triangle(&self, p: &Point) -> Result<StandardSimplex, Error> {
        match self.locate(p) {
            Some(Location::Layer { k, kappa }) => {
                let leg = &self.step * &Rational::from(k);
                let height = leg.recip().expect("positive leg");
                StandardSimplex::new(self.base_point(kappa), alloc::vec![leg, height])
            }
            _ => Err(Error::NotALayerPoint(p.clone())),
        }
    }

    /// The rain built on the base sub-progression `start, start+stride, ...`
    /// of `len` terms. It lies inside `self`.
    pub fn on_subprogression(&self, start: usize, stride: usize, len: usize) -> Result<Rain2D, Error> {
        if stride == 0 || len < 2 || start + (len - 1) * stride >= self.length {
            return Err(Error::Invalid(alloc::format!(
                "progression start {start} stride {stride} length {len} does not fit a base of {}",
                self.length
            )));
        }
        Rain2D::new(self.base_point(start), &self.step * &Rational::from(stride), len)
    }

    /// A rain of length `target` contained in the layers of `self`.
    ///
    /// Step `target! * b`, base at height `1 / (target! * b)`, aligned with the
    /// start of `self`. Requires `length >= target! * target + 1`.
    pub fn subrain(&self, target: usize) -> Result<Rain2D, Error> {
        if target < 2 {
            return Err(Error::RainLength(target));
        }
        let need = f_len(target as u64);
        if BigUint::from(self.length) < need {
            return Err(Error::RainTooShort { have: self.length, need });
        }
        let step = &self.step * &Rational::from(factorial(target as u64));
        let lift = step.recip().expect("positive step");
        Rain2D::new(self.origin.shifted(1, &lift), step, target)
    }

    /// The smallest triangle of the rain: first two base points and the apex
    /// above the first.
    pub fn first_triangle(&self) -> StandardSimplex {
        self.apex_triangle(&self.layer_point(1, 0)).expect("length >= 2 has a k = 1 layer")
    }

    /// The same point set in the n-dimensional convention (height on axis 0).
    pub fn to_nd(&self) -> RainNd {
        RainNd::new(self.origin.swapped(0, 1), alloc::vec![self.step.clone()], self.length)
            .expect("valid planar rain is a valid 2-d rain")
    }
}

impl fmt::Display for Rain2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rain(origin {}, step {}, length {})", self.origin, self.step, self.length)
    }
}

impl fmt::Debug for Rain2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
