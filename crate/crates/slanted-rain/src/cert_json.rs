//! Certificate files.
//!
//! A certificate is a JSON object with a schema tag and version, the colouring
//! spec as its one-line string, the colour, the declared edge product and the
//! simplex vertices. Rationals are `[numerator, denominator]` pairs of JSON
//! integers of any size. The trace is kept for inspection; verification reads
//! only the vertices, colour, product and spec.
//!
//! ```json
//! {
//!   "schema": "slanted-rain-certificate",
//!   "version": 1,
//!   "spec": "hash:2:0x1",
//!   "color": 1,
//!   "target": [1, 1],
//!   "vertices": [[[0, 1], [0, 1]], [[1, 1], [0, 1]], [[0, 1], [1, 1]]],
//!   "trace": [{"step": "rain_built", "rain": {"kind": "planar", ...}}, ...]
//! }
//! ```

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;
use slanted_rain_core::coloring::{parse_spec_with, SourceLoader};
use slanted_rain_core::finder::{RainRecord, TraceStep, Witness};
use slanted_rain_core::vdw::{ApWitness, GridWitness};
use slanted_rain_core::{Certificate, Point, Rain2D, RainNd, Rational, StandardSimplex};

pub const SCHEMA: &str = "slanted-rain-certificate";
pub const VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CertFileError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported certificate schema {schema:?} version {version}")]
    Schema { schema: String, version: u32 },
    #[error("bad rational {0:?}")]
    Rational(String),
    #[error("bad coloring spec: {0}")]
    Spec(String),
    #[error("bad trace: {0}")]
    Trace(String),
}

/// Vertices that do not form a standard simplex with positive edges.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("expected {expected} vertices, found {found}")]
    VertexCount { expected: usize, found: usize },
    #[error("vertex {vertex} has {found} coordinates, expected {expected}")]
    Dimension { vertex: usize, expected: usize, found: usize },
    #[error("vertex {vertex} is not the origin moved along axis {axis} only")]
    NotAxisAligned { vertex: usize, axis: usize },
    #[error("edge along axis {axis} is not positive")]
    NonPositiveEdge { axis: usize },
}

type JsonRational = [Number; 2];
type JsonPoint = Vec<JsonRational>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CertificateFile {
    pub schema: String,
    pub version: u32,
    pub spec: String,
    pub color: u32,
    pub target: JsonRational,
    pub vertices: Vec<JsonPoint>,
    #[serde(default)]
    pub trace: Vec<JsonStep>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum JsonStep {
    WitnessFound { witness: JsonWitness },
    RainBuilt { rain: JsonRain },
    LayerHit { point: JsonPoint },
    Recursed { remaining: Vec<u32> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonWitness {
    Ap { start: usize, step: usize, length: usize, color: u32 },
    Grid { origin: Vec<usize>, scale: usize, side: usize, color: u32 },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum JsonRain {
    Planar { origin: JsonPoint, step: JsonRational, length: usize },
    Spatial { origin: JsonPoint, steps: Vec<JsonRational>, length: usize },
}

fn number(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("integers are valid JSON numbers")
}

pub fn rational_to_json(r: &Rational) -> JsonRational {
    [number(r.numer()), number(r.denom())]
}

pub fn rational_from_json(r: &JsonRational) -> Result<Rational, CertFileError> {
    let bad = || CertFileError::Rational(format!("[{}, {}]", r[0], r[1]));
    let n = BigInt::from_str(&r[0].to_string()).map_err(|_| bad())?;
    let d = BigInt::from_str(&r[1].to_string()).map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rational::from(n) / Rational::from(d))
}

pub fn point_to_json(p: &Point) -> JsonPoint {
    p.coords().iter().map(rational_to_json).collect()
}

pub fn point_from_json(p: &JsonPoint) -> Result<Point, CertFileError> {
    let coords = p.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>()?;
    Point::new(coords).map_err(|e| CertFileError::Rational(e.to_string()))
}

fn rain_to_json(r: &RainRecord) -> JsonRain {
    match r {
        RainRecord::Planar(r) => JsonRain::Planar {
            origin: point_to_json(r.origin()),
            step: rational_to_json(r.step()),
            length: r.length(),
        },
        RainRecord::Spatial(r) => JsonRain::Spatial {
            origin: point_to_json(r.origin()),
            steps: r.steps().iter().map(rational_to_json).collect(),
            length: r.length(),
        },
    }
}

fn rain_from_json(r: &JsonRain) -> Result<RainRecord, CertFileError> {
    let trace_err = |e: slanted_rain_core::Error| CertFileError::Trace(e.to_string());
    match r {
        JsonRain::Planar { origin, step, length } => {
            Rain2D::new(point_from_json(origin)?, rational_from_json(step)?, *length)
                .map(RainRecord::Planar)
                .map_err(trace_err)
        }
        JsonRain::Spatial { origin, steps, length } => {
            let steps = steps.iter().map(rational_from_json).collect::<Result<Vec<_>, _>>()?;
            RainNd::new(point_from_json(origin)?, steps, *length).map(RainRecord::Spatial).map_err(trace_err)
        }
    }
}

fn step_to_json(s: &TraceStep) -> JsonStep {
    match s {
        TraceStep::WitnessFound(Witness::Ap(w)) => JsonStep::WitnessFound {
            witness: JsonWitness::Ap { start: w.start, step: w.step, length: w.length, color: w.color },
        },
        TraceStep::WitnessFound(Witness::Grid(w)) => JsonStep::WitnessFound {
            witness: JsonWitness::Grid { origin: w.origin.clone(), scale: w.scale, side: w.side, color: w.color },
        },
        TraceStep::RainBuilt(r) => JsonStep::RainBuilt { rain: rain_to_json(r) },
        TraceStep::LayerHit(p) => JsonStep::LayerHit { point: point_to_json(p) },
        TraceStep::Recursed { remaining } => JsonStep::Recursed { remaining: remaining.clone() },
    }
}

fn step_from_json(s: &JsonStep) -> Result<TraceStep, CertFileError> {
    Ok(match s {
        JsonStep::WitnessFound { witness: JsonWitness::Ap { start, step, length, color } } => {
            TraceStep::WitnessFound(Witness::Ap(ApWitness { start: *start, step: *step, length: *length, color: *color }))
        }
        JsonStep::WitnessFound { witness: JsonWitness::Grid { origin, scale, side, color } } => {
            TraceStep::WitnessFound(Witness::Grid(GridWitness {
                origin: origin.clone(),
                scale: *scale,
                side: *side,
                color: *color,
            }))
        }
        JsonStep::RainBuilt { rain } => TraceStep::RainBuilt(rain_from_json(rain)?),
        JsonStep::LayerHit { point } => TraceStep::LayerHit(point_from_json(point)?),
        JsonStep::Recursed { remaining } => TraceStep::Recursed { remaining: remaining.clone() },
    })
}

impl CertificateFile {
    pub fn from_certificate(c: &Certificate) -> Self {
        CertificateFile {
            schema: SCHEMA.to_string(),
            version: VERSION,
            spec: c.spec.to_string(),
            color: c.color,
            target: rational_to_json(&c.target),
            vertices: c.simplex.vertices().iter().map(point_to_json).collect(),
            trace: c.trace.iter().map(step_to_json).collect(),
        }
    }

    pub fn check_schema(&self) -> Result<(), CertFileError> {
        if self.schema != SCHEMA || self.version != VERSION {
            return Err(CertFileError::Schema { schema: self.schema.clone(), version: self.version });
        }
        Ok(())
    }

    pub fn points(&self) -> Result<Vec<Point>, CertFileError> {
        self.vertices.iter().map(point_from_json).collect()
    }

    /// Everything except the simplex, which needs a shape check first.
    pub fn parts(
        &self,
        loader: &dyn SourceLoader,
    ) -> Result<(slanted_rain_core::ColoringSpec, Rational, Vec<TraceStep>), CertFileError> {
        self.check_schema()?;
        let spec = parse_spec_with(&self.spec, loader).map_err(|e| CertFileError::Spec(e.to_string()))?;
        let target = rational_from_json(&self.target)?;
        let trace = self.trace.iter().map(step_from_json).collect::<Result<Vec<_>, _>>()?;
        Ok((spec, target, trace))
    }
}

/// The standard simplex with these vertices, listed origin first and then
/// one vertex per axis.
pub fn simplex_from_vertices(vertices: &[Point]) -> Result<StandardSimplex, ShapeError> {
    let Some(origin) = vertices.first() else {
        return Err(ShapeError::VertexCount { expected: 2, found: 0 });
    };
    let n = origin.dim();
    if vertices.len() != n + 1 {
        return Err(ShapeError::VertexCount { expected: n + 1, found: vertices.len() });
    }
    let mut edges = Vec::with_capacity(n);
    for (axis, v) in vertices[1..].iter().enumerate() {
        let vertex = axis + 1;
        if v.dim() != n {
            return Err(ShapeError::Dimension { vertex, expected: n, found: v.dim() });
        }
        if (0..n).any(|i| i != axis && v.coord(i) != origin.coord(i)) {
            return Err(ShapeError::NotAxisAligned { vertex, axis });
        }
        let e = v.coord(axis) - origin.coord(axis);
        if !e.is_positive() {
            return Err(ShapeError::NonPositiveEdge { axis });
        }
        edges.push(e);
    }
    Ok(StandardSimplex::new(origin.clone(), edges).expect("shape checked"))
}

/// Certificate text as written by `find`: one object, or an array for `--count`.
pub fn to_json(certs: &[Certificate]) -> String {
    let files: Vec<CertificateFile> = certs.iter().map(CertificateFile::from_certificate).collect();
    let text = if files.len() == 1 {
        serde_json::to_string_pretty(&files[0])
    } else {
        serde_json::to_string_pretty(&files)
    };
    text.expect("certificate serialises") + "\n"
}

/// Reads one certificate object or an array of them.
pub fn parse_files(text: &str) -> Result<Vec<CertificateFile>, CertFileError> {
    // Through `Value`: untagged enums buffer numbers in a way that loses
    // arbitrary-precision integers.
    match serde_json::from_str(text)? {
        serde_json::Value::Array(items) => {
            items.into_iter().map(|v| serde_json::from_value(v).map_err(CertFileError::from)).collect()
        }
        v => Ok(vec![serde_json::from_value(v)?]),
    }
}
