//! Positive diagonal-affine maps `x_i -> scale_i * x_i + shift_i`.
//!
//! Hyperbolic rotations, homotheties and translations all live here in one
//! normal form. The maps with scale product 1 form the volume-preserving
//! group whose orbits on standard simplices are exactly the edge-product
//! classes.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::rational::{join_display, Point, Rational};
use crate::simplex::StandardSimplex;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiagonalAffineMap {
    scale: Vec<Rational>,
    shift: Vec<Rational>,
}

impl DiagonalAffineMap {
    pub fn new(scale: Vec<Rational>, shift: Vec<Rational>) -> Result<Self, Error> {
        if scale.len() != shift.len() {
            return Err(Error::DimensionMismatch { expected: scale.len(), got: shift.len() });
        }
        if scale.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some(k) = scale.iter().find(|k| !k.is_positive()) {
            return Err(Error::NotPositive { what: "scale factor", value: k.clone() });
        }
        Ok(DiagonalAffineMap { scale, shift })
    }

    pub fn identity(dim: usize) -> Self {
        DiagonalAffineMap {
            scale: alloc::vec![Rational::one(); dim],
            shift: alloc::vec![Rational::zero(); dim],
        }
    }

    pub fn translation(v: &Point) -> Self {
        DiagonalAffineMap {
            scale: alloc::vec![Rational::one(); v.dim()],
            shift: v.coords().to_vec(),
        }
    }

    /// Pure scaling about the origin.
    pub fn scaling(scale: Vec<Rational>) -> Result<Self, Error> {
        let n = scale.len();
        DiagonalAffineMap::new(scale, alloc::vec![Rational::zero(); n])
    }

    /// `x_i -> c_i + k_i (x_i - c_i)`.
    pub fn about(center: &Point, factors: Vec<Rational>) -> Result<Self, Error> {
        if factors.len() != center.dim() {
            return Err(Error::DimensionMismatch { expected: center.dim(), got: factors.len() });
        }
        let shift = center
            .coords()
            .iter()
            .zip(&factors)
            .map(|(c, k)| c - &(c * k))
            .collect();
        DiagonalAffineMap::new(factors, shift)
    }

    /// Planar hyperbolic rotation `(x, y) -> (x0 + k(x - x0), y0 + (y - y0)/k)`.
    pub fn hyperbolic_rotation(center: &Point, k: &Rational) -> Result<Self, Error> {
        center.check_dim(2)?;
        let inv = k
            .recip()
            .ok_or_else(|| Error::NotPositive { what: "rotation factor", value: k.clone() })?;
        DiagonalAffineMap::about(center, alloc::vec![k.clone(), inv])
    }

    pub fn dim(&self) -> usize {
        self.scale.len()
    }

    pub fn scale(&self) -> &[Rational] {
        &self.scale
    }

    pub fn shift(&self) -> &[Rational] {
        &self.shift
    }

    pub fn scale_product(&self) -> Rational {
        Rational::product(self.scale.iter())
    }

    /// Whether the map belongs to the volume-preserving group.
    pub fn is_volume_preserving(&self) -> bool {
        self.scale_product() == Rational::one()
    }

    pub fn apply(&self, p: &Point) -> Result<Point, Error> {
        p.check_dim(self.dim())?;
        let coords = p
            .coords()
            .iter()
            .zip(self.scale.iter().zip(&self.shift))
            .map(|(x, (k, t))| &(k * x) + t)
            .collect();
        Point::new(coords)
    }

    /// `self ∘ inner`: apply `inner` first, then `self`.
    pub fn compose(&self, inner: &DiagonalAffineMap) -> Result<Self, Error> {
        if self.dim() != inner.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: inner.dim() });
        }
        let scale = self.scale.iter().zip(&inner.scale).map(|(a, b)| a * b).collect();
        let shift = self
            .scale
            .iter()
            .zip(&inner.shift)
            .zip(&self.shift)
            .map(|((k, t_in), t)| &(k * t_in) + t)
            .collect();
        Ok(DiagonalAffineMap { scale, shift })
    }

    pub fn inverse(&self) -> Self {
        let scale: Vec<Rational> = self
            .scale
            .iter()
            .map(|k| k.recip().expect("scale factors are positive"))
            .collect();
        let shift = self.shift.iter().zip(&scale).map(|(t, inv)| -(t * inv)).collect();
        DiagonalAffineMap { scale, shift }
    }

    /// Image of a standard simplex; still standard since the scales are positive.
    pub fn apply_simplex(&self, s: &StandardSimplex) -> Result<StandardSimplex, Error> {
        let origin = self.apply(s.origin())?;
        let edges = s.edges().iter().zip(&self.scale).map(|(e, k)| e * k).collect();
        StandardSimplex::new(origin, edges)
    }
}

impl fmt::Display for DiagonalAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "map(scale ({}), shift ({}))",
            join_display(&self.scale, ","),
            join_display(&self.shift, ",")
        )
    }
}

impl fmt::Debug for DiagonalAffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The volume-preserving map carrying `a` onto `b` vertex by vertex.
///
/// Exists iff the two simplices have equal edge products; the diagonal
/// factors are forced to `edge_b / edge_a`.
pub fn orbit_witness(a: &StandardSimplex, b: &StandardSimplex) -> Result<DiagonalAffineMap, Error> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    let (pa, pb) = (a.edge_product(), b.edge_product());
    if pa != pb {
        return Err(Error::NoWitness { left: Box::new(pa), right: Box::new(pb) });
    }
    let scale: Vec<Rational> = a.edges().iter().zip(b.edges()).map(|(ea, eb)| eb / ea).collect();
    let shift = a
        .origin()
        .coords()
        .iter()
        .zip(b.origin().coords())
        .zip(&scale)
        .map(|((oa, ob), k)| ob - &(k * oa))
        .collect();
    DiagonalAffineMap::new(scale, shift)
}
