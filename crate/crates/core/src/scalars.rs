//! Positive lengths and the partial distance between distinct points.
//!
//! Lengths form a commutative cancellative semigroup: they can always be
//! added, but `t - r` exists only when `t` is strictly greater than `r`.
//! There is no zero length, so the distance of a point to itself is not
//! defined; [`dist`] refuses points that are closer than
//! [`tolerance::DISTINCT`].

use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::linalg;
use crate::tolerance;

/// A strictly positive length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Length(f64);

impl Length {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 {
            Ok(Length(value))
        } else {
            Err(GeometryError::NonPositiveLength(value))
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// The unique `s` with `r + s = self`.
    ///
    /// Fails with [`GeometryError::NotGreater`] unless `self` exceeds `r` by
    /// more than the length tolerance.
    pub fn checked_sub(self, r: Length) -> Result<Length> {
        if r.less_than(self) {
            Ok(Length(self.0 - r.0))
        } else {
            Err(GeometryError::NotGreater {
                minuend: self.0,
                subtrahend: r.0,
            })
        }
    }

    /// Strict order: `self < t` iff `t = self + s` for some positive `s`.
    /// Lengths within the relative tolerance of each other are equal.
    pub fn less_than(self, t: Length) -> bool {
        t.0 > self.0 && !self.approx_eq(t)
    }

    pub fn approx_eq(self, other: Length) -> bool {
        tolerance::lengths_match(self.0, other.0)
    }
}

impl Add for Length {
    type Output = Length;

    fn add(self, rhs: Length) -> Length {
        Length(self.0 + rhs.0)
    }
}

impl TryFrom<f64> for Length {
    type Error = GeometryError;

    fn try_from(value: f64) -> Result<Self> {
        Length::new(value)
    }
}

impl From<Length> for f64 {
    fn from(l: Length) -> f64 {
        l.0
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A point of `N`-dimensional Euclidean space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point<const N: usize>(pub [f64; N]);

impl<const N: usize> Point<N> {
    pub const fn new(coords: [f64; N]) -> Self {
        Point(coords)
    }

    pub fn origin() -> Self {
        Point([0.0; N])
    }

    #[inline]
    pub fn coords(&self) -> &[f64; N] {
        &self.0
    }

    /// Vector from `self` to `other`.
    #[inline]
    pub fn to(&self, other: &Point<N>) -> [f64; N] {
        linalg::sub(&other.0, &self.0)
    }

    /// `self + k * v`
    #[inline]
    pub fn offset(&self, k: f64, v: &[f64; N]) -> Point<N> {
        Point(linalg::axpy(&self.0, k, v))
    }

    /// Squared Euclidean distance; total, unlike [`Point::dist`].
    #[inline]
    pub fn dist_sq(&self, other: &Point<N>) -> f64 {
        linalg::norm_sq(&self.to(other))
    }

    /// Euclidean separation, defined for every pair.
    #[inline]
    pub fn separation(&self, other: &Point<N>) -> f64 {
        self.dist_sq(other).sqrt()
    }

    pub fn is_distinct_from(&self, other: &Point<N>) -> bool {
        self.separation(other) > tolerance::DISTINCT
    }

    /// The pre-metric: defined only on distinct points.
    pub fn dist(&self, other: &Point<N>) -> Result<Length> {
        let separation = self.separation(other);
        if separation > tolerance::DISTINCT {
            Ok(Length(separation))
        } else {
            Err(GeometryError::NotDistinct { separation })
        }
    }
}

/// Distance between distinct points. See [`Point::dist`].
pub fn dist<const N: usize>(a: &Point<N>, b: &Point<N>) -> Result<Length> {
    a.dist(b)
}
