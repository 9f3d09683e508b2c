//! Scenario files for the batch tool.
//!
//! A scenario is a JSON object:
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "primitives": [
//!     { "kind": "circle", "center": [0, 0], "radius": 1, "orientation": "outward" },
//!     { "kind": "ellipse", "center": [0, 0], "semi_axes": [2, 1] },
//!     { "kind": "sampled", "points": [[0, 0], [1, 0], [2, 0]],
//!       "normals": [[0, 1], [0, 1], [0, 1]], "closed": false }
//!   ],
//!   "steps": [0.5, 0.5],
//!   "sample_count": 64,
//!   "checks": ["envelope", "semigroup"]
//! }
//! ```
//!
//! `orientation` defaults to `outward`; for sampled primitives `outward`
//! keeps the given normals and `inward` flips them. In dimension 3 only
//! circles (sampled as spheres) are accepted. `checks` defaults to none.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::contact::ContactElement;
use crate::fronts::{Front, FrontSource, Orientation, Primitive, Topology};
use crate::scalars::{Length, Point};
use crate::spheres::Sphere;
use crate::GeometryError;

pub const MIN_SAMPLE_COUNT: usize = 8;

#[derive(Debug, Error)]
pub enum SceneError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid scenario at {field}: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl fmt::Display) -> SceneError {
    SceneError::Validation {
        field: field.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Envelope,
    Semigroup,
    Reciprocity,
    Axioms,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Envelope => "envelope",
            Check::Semigroup => "semigroup",
            Check::Reciprocity => "reciprocity",
            Check::Axioms => "axioms",
        }
    }
}

impl std::str::FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        serde_json::from_value(serde_json::Value::String(s.to_owned()))
            .map_err(|_| format!("unknown check `{s}` (expected envelope, semigroup, reciprocity or axioms)"))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    dimension: usize,
    primitives: Vec<RawPrimitive>,
    steps: Vec<f64>,
    sample_count: usize,
    #[serde(default)]
    checks: Vec<Check>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawPrimitive {
    Circle {
        center: Vec<f64>,
        radius: f64,
        #[serde(default = "outward")]
        orientation: Orientation,
    },
    Ellipse {
        center: Vec<f64>,
        semi_axes: Vec<f64>,
        #[serde(default = "outward")]
        orientation: Orientation,
    },
    Sampled {
        points: Vec<Vec<f64>>,
        normals: Vec<Vec<f64>>,
        #[serde(default)]
        closed: bool,
        #[serde(default = "outward")]
        orientation: Orientation,
    },
}

fn outward() -> Orientation {
    Orientation::Outward
}

/// A validated primitive with its orientation.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// A circle in dimension 2, a sphere in dimension 3.
    Circle { center: Vec<f64>, radius: Length },
    Ellipse { center: [f64; 2], semi_axes: [Length; 2] },
    Sampled { points: Vec<[f64; 2]>, normals: Vec<[f64; 2]>, closed: bool },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveSpec {
    pub shape: Shape,
    pub orientation: Orientation,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub dimension: usize,
    pub primitives: Vec<PrimitiveSpec>,
    pub steps: Vec<Length>,
    pub sample_count: usize,
    pub checks: Vec<Check>,
}

/// Reads and validates a scenario file.
pub fn load_scene(path: impl AsRef<Path>) -> Result<Scenario, SceneError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| SceneError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_scene(&text)
}

pub fn parse_scene(text: &str) -> Result<Scenario, SceneError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| SceneError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    raw.validate()
}

fn positive(field: String, v: f64) -> Result<Length, SceneError> {
    Length::new(v).map_err(|_| invalid(field, format!("must be positive, got {v}")))
}

fn coords<const N: usize>(field: String, v: &[f64]) -> Result<[f64; N], SceneError> {
    let arr: [f64; N] = v
        .try_into()
        .map_err(|_| invalid(&field, format!("expected {N} coordinates, got {}", v.len())))?;
    if arr.iter().all(|x| x.is_finite()) {
        Ok(arr)
    } else {
        Err(invalid(field, "coordinates must be finite"))
    }
}

impl RawScenario {
    fn validate(self) -> Result<Scenario, SceneError> {
        let dim = self.dimension;
        if dim != 2 && dim != 3 {
            return Err(invalid("dimension", format!("must be 2 or 3, got {dim}")));
        }
        if self.sample_count < MIN_SAMPLE_COUNT {
            return Err(invalid(
                "sample_count",
                format!("must be at least {MIN_SAMPLE_COUNT}, got {}", self.sample_count),
            ));
        }
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, &s)| positive(format!("steps[{i}]"), s))
            .collect::<Result<Vec<_>, _>>()?;

        let mut primitives = Vec::with_capacity(self.primitives.len());
        for (i, p) in self.primitives.into_iter().enumerate() {
            let at = |f: &str| format!("primitives[{i}].{f}");
            let spec = match p {
                RawPrimitive::Circle { center, radius, orientation } => {
                    if center.len() != dim {
                        return Err(invalid(at("center"), format!("expected {dim} coordinates, got {}", center.len())));
                    }
                    if dim == 2 {
                        coords::<2>(at("center"), &center)?;
                    } else {
                        coords::<3>(at("center"), &center)?;
                    }
                    PrimitiveSpec {
                        shape: Shape::Circle { center, radius: positive(at("radius"), radius)? },
                        orientation,
                    }
                }
                RawPrimitive::Ellipse { center, semi_axes, orientation } => {
                    if dim != 2 {
                        return Err(invalid(at("kind"), "ellipses require dimension 2"));
                    }
                    let [a, b] = coords::<2>(at("semi_axes"), &semi_axes)?;
                    PrimitiveSpec {
                        shape: Shape::Ellipse {
                            center: coords(at("center"), &center)?,
                            semi_axes: [
                                positive(format!("{}[0]", at("semi_axes")), a)?,
                                positive(format!("{}[1]", at("semi_axes")), b)?,
                            ],
                        },
                        orientation,
                    }
                }
                RawPrimitive::Sampled { points, normals, closed, orientation } => {
                    if dim != 2 {
                        return Err(invalid(at("kind"), "sampled primitives require dimension 2"));
                    }
                    if points.len() != normals.len() {
                        return Err(invalid(
                            at("normals"),
                            format!("{} normals for {} points", normals.len(), points.len()),
                        ));
                    }
                    let points = points
                        .iter()
                        .enumerate()
                        .map(|(k, p)| coords(format!("{}[{k}]", at("points")), p))
                        .collect::<Result<Vec<_>, _>>()?;
                    let normals = normals
                        .iter()
                        .enumerate()
                        .map(|(k, n)| coords(format!("{}[{k}]", at("normals")), n))
                        .collect::<Result<Vec<_>, _>>()?;
                    let spec = PrimitiveSpec {
                        shape: Shape::Sampled { points, normals, closed },
                        orientation,
                    };
                    spec.front2(self.sample_count).map_err(|e| invalid(at("points"), e))?;
                    spec
                }
            };
            primitives.push(spec);
        }
        Ok(Scenario {
            dimension: dim,
            primitives,
            steps,
            sample_count: self.sample_count,
            checks: self.checks,
        })
    }
}

impl PrimitiveSpec {
    /// The planar front of this primitive.
    pub fn front2(&self, count: usize) -> Result<Front<2>, GeometryError> {
        match &self.shape {
            Shape::Circle { center, radius } => {
                let center = Point(center[..].try_into().map_err(|_| dimension_error())?);
                Front::sample(&Primitive::Circle { center, radius: *radius }, count, self.orientation)
            }
            Shape::Ellipse { center, semi_axes } => Front::sample(
                &Primitive::Ellipse { center: Point(*center), semi_axes: *semi_axes },
                count,
                self.orientation,
            ),
            Shape::Sampled { points, normals, closed } => {
                let sign = match self.orientation {
                    Orientation::Outward => 1.0,
                    Orientation::Inward => -1.0,
                };
                let samples = points
                    .iter()
                    .zip(normals)
                    .map(|(p, n)| ContactElement::new(Point(*p), n.map(|x| sign * x)))
                    .collect::<Result<Vec<_>, _>>()?;
                Front::from_samples(samples, Topology::Curve { closed: *closed }, FrontSource::Sampled)
            }
        }
    }

    /// The spherical front of this primitive (circles only).
    pub fn front3(&self, count: usize) -> Result<Front<3>, GeometryError> {
        match &self.shape {
            Shape::Circle { center, radius } => {
                let center = Point(center[..].try_into().map_err(|_| dimension_error())?);
                Front::sample_sphere(&Sphere::new(center, *radius), count, self.orientation)
            }
            _ => Err(dimension_error()),
        }
    }
}

fn dimension_error() -> GeometryError {
    GeometryError::BadPrimitive("primitive does not match the scenario dimension".into())
}
