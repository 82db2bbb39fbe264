use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::coloring::{Coloring, ColoringSpec};
use crate::error::Error;
use crate::rain::{Rain2D, RainNd};
use crate::rational::{Point, Rational};
use crate::simplex::StandardSimplex;
use crate::vdw::{mono_aps, mono_cubes, ApWitness, ColoredCube, GridWitness};

/// A monochromatic progression (planar) or grid homothet (n-dimensional)
/// found in a rain's base.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    Ap(ApWitness),
    Grid(GridWitness),
}

impl Witness {
    pub fn color(&self) -> u32 {
        match self {
            Witness::Ap(w) => w.color,
            Witness::Grid(w) => w.color,
        }
    }

    pub fn length(&self) -> usize {
        match self {
            Witness::Ap(w) => w.length,
            Witness::Grid(w) => w.side,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Ap(w) => w.fmt(f),
            Witness::Grid(w) => w.fmt(f),
        }
    }
}

/// Either kind of rain, as recorded in traces and searched by the finder.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RainRecord {
    Planar(Rain2D),
    Spatial(RainNd),
}

impl RainRecord {
    pub fn dim(&self) -> usize {
        match self {
            RainRecord::Planar(_) => 2,
            RainRecord::Spatial(r) => r.dim(),
        }
    }

    pub fn length(&self) -> usize {
        match self {
            RainRecord::Planar(r) => r.length(),
            RainRecord::Spatial(r) => r.length(),
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            RainRecord::Planar(r) => r.contains(p),
            RainRecord::Spatial(r) => r.contains(p),
        }
    }

    pub fn enumerate_points(&self, limit: u128) -> Result<Vec<Point>, Error> {
        match self {
            RainRecord::Planar(r) => r.enumerate_points(limit),
            RainRecord::Spatial(r) => r.enumerate_points(limit),
        }
    }

    pub(crate) fn base_cube<E>(&self, mut color: impl FnMut(&Point) -> Result<u32, E>) -> Result<ColoredCube, E> {
        match self {
            RainRecord::Planar(r) => ColoredCube::from_fn(1, r.length(), |i| color(&r.base_point(i[0]))),
            RainRecord::Spatial(r) => ColoredCube::from_fn(r.base_dim(), r.length(), |i| color(&r.base_point(i))),
        }
    }

    pub(crate) fn witnesses<'a>(&self, base: &'a ColoredCube, n: usize) -> Box<dyn Iterator<Item = Witness> + 'a> {
        match self {
            RainRecord::Planar(_) => Box::new(mono_aps(base.colors(), n).map(Witness::Ap)),
            RainRecord::Spatial(_) => Box::new(mono_cubes(base, n).map(Witness::Grid)),
        }
    }

    /// The rain standing on the witness; contained in `self`.
    pub fn on_witness(&self, w: &Witness) -> Result<RainRecord, Error> {
        match (self, w) {
            (RainRecord::Planar(r), Witness::Ap(w)) => {
                r.on_subprogression(w.start, w.step, w.length).map(RainRecord::Planar)
            }
            (RainRecord::Spatial(r), Witness::Grid(w)) => {
                r.on_subgrid(&w.origin, w.scale, w.side).map(RainRecord::Spatial)
            }
            _ => Err(Error::Invalid("witness kind does not match rain kind".into())),
        }
    }

    /// Points that carry a unit simplex on the base, in canonical order.
    pub fn apex_points(&self) -> Vec<Point> {
        match self {
            RainRecord::Planar(r) => r.layer_points().collect(),
            RainRecord::Spatial(r) => r.apex_points(),
        }
    }

    pub fn apex_simplex(&self, p: &Point) -> Result<StandardSimplex, Error> {
        match self {
            RainRecord::Planar(r) => r.apex_triangle(p),
            RainRecord::Spatial(r) => r.apex_simplex(p),
        }
    }

    pub fn subrain(&self, target: usize) -> Result<RainRecord, Error> {
        match self {
            RainRecord::Planar(r) => r.subrain(target).map(RainRecord::Planar),
            RainRecord::Spatial(r) => r.subrain(target).map(RainRecord::Spatial),
        }
    }

    pub fn first_simplex(&self) -> StandardSimplex {
        match self {
            RainRecord::Planar(r) => r.first_triangle(),
            RainRecord::Spatial(r) => r.first_simplex(),
        }
    }
}

impl fmt::Display for RainRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RainRecord::Planar(r) => r.fmt(f),
            RainRecord::Spatial(r) => r.fmt(f),
        }
    }
}

/// One step of the search path that produced a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TraceStep {
    /// Monochromatic progression or grid found in the current base.
    WitnessFound(Witness),
    RainBuilt(RainRecord),
    /// A layer point with the base colour.
    LayerHit(Point),
    /// Every apex avoided the base colour; continue in a sub-rain coloured
    /// only with `remaining`.
    Recursed { remaining: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub simplex: StandardSimplex,
    pub color: u32,
    pub spec: ColoringSpec,
    /// Declared edge product.
    pub target: Rational,
    pub trace: Vec<TraceStep>,
}

impl Certificate {
    /// Last rain built on the search path, where the simplex was found.
    pub fn final_rain(&self) -> Option<&RainRecord> {
        self.trace.iter().rev().find_map(|s| match s {
            TraceStep::RainBuilt(r) => Some(r),
            _ => None,
        })
    }
}

/// Why a certificate failed verification; names the first failing check.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Rejection {
    #[error("edge {axis} is not positive")]
    NonPositiveEdge { axis: usize },
    #[error("simplex has {edges} edges for dimension {dim}")]
    Shape { dim: usize, edges: usize },
    #[error("edge product {actual} differs from declared {declared}")]
    ProductMismatch { actual: Box<Rational>, declared: Box<Rational> },
    #[error("declared color {color} out of range for {colors} colors")]
    ColorOutOfRange { color: u32, colors: u32 },
    #[error("vertex {vertex} {point} has color {found}, expected {expected}")]
    ColorMismatch { vertex: usize, point: Point, expected: u32, found: u32 },
    #[error("coloring failed at vertex {vertex}: {error}")]
    Oracle { vertex: usize, error: Error },
}

/// Re-checks a certificate from scratch: standard shape with positive edges,
/// edge product equal to the declared target, every vertex in the declared
/// colour under the certificate's spec.
pub fn verify_certificate(c: &Certificate) -> Result<(), Rejection> {
    let s = &c.simplex;
    if s.edges().len() != s.dim() {
        return Err(Rejection::Shape { dim: s.dim(), edges: s.edges().len() });
    }
    if let Some(axis) = s.edges().iter().position(|e| !e.is_positive()) {
        return Err(Rejection::NonPositiveEdge { axis });
    }
    let actual = s.edge_product();
    if actual != c.target {
        return Err(Rejection::ProductMismatch { actual: Box::new(actual), declared: Box::new(c.target.clone()) });
    }
    let colors = c.spec.num_colors();
    if c.color >= colors {
        return Err(Rejection::ColorOutOfRange { color: c.color, colors });
    }
    for (vertex, point) in s.vertices().into_iter().enumerate() {
        let found = c.spec.color_at(&point).map_err(|error| Rejection::Oracle { vertex, error })?;
        if found != c.color {
            return Err(Rejection::ColorMismatch { vertex, point, expected: c.color, found });
        }
    }
    Ok(())
}
