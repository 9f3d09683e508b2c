//! First-order neighbour algebra.
//!
//! A neighbour of `b` is `b + δ` where every product of two components of
//! `δ` vanishes. Under that rule a polynomial function restricted to the
//! monad of `b` is exactly affine in `δ`, so it is represented by its value
//! and gradient ([`JetScalar`]). The intersection of a monad with a smooth
//! hypersurface is the hyperplane of displacements orthogonal to the surface
//! normal ([`TangentConstraint`]).
//!
//! Nothing in this module approximates: the quadratic term of a jet is not
//! truncated, it does not exist in the representation.

use std::ops::Sub;

use crate::error::{GeometryError, Result};
use crate::linalg;
use crate::scalars::Point;
use crate::spheres::Sphere;
use crate::tolerance;

/// A formal infinitesimal displacement. Products of two components are zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Displacement<const N: usize>(pub [f64; N]);

/// A neighbour `base + disp` of `base`.
///
/// There is no separation check between a monad point and its base: the two
/// are never distinct.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonadPoint<const N: usize> {
    pub base: Point<N>,
    pub disp: Displacement<N>,
}

impl<const N: usize> MonadPoint<N> {
    pub fn new(base: Point<N>, disp: Displacement<N>) -> Self {
        MonadPoint { base, disp }
    }

    /// Whether this neighbour lies in the monad slice described by `c`.
    pub fn satisfies(&self, c: &TangentConstraint<N>) -> bool {
        self.base.separation(&c.base) <= tolerance::DISTINCT && c.contains(&self.disp)
    }
}

/// A scalar function restricted to a monad: `δ ↦ value + gradient·δ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetScalar<const N: usize> {
    pub value: f64,
    pub gradient: [f64; N],
}

impl<const N: usize> JetScalar<N> {
    pub fn new(value: f64, gradient: [f64; N]) -> Self {
        JetScalar { value, gradient }
    }

    pub fn constant(value: f64) -> Self {
        JetScalar {
            value,
            gradient: [0.0; N],
        }
    }

    /// Exact evaluation at a neighbour displacement.
    pub fn eval(&self, delta: &Displacement<N>) -> f64 {
        self.value + linalg::dot(&self.gradient, &delta.0)
    }
}

impl<const N: usize> Sub for JetScalar<N> {
    type Output = JetScalar<N>;

    fn sub(self, rhs: Self) -> Self {
        JetScalar {
            value: self.value - rhs.value,
            gradient: linalg::sub(&self.gradient, &rhs.gradient),
        }
    }
}

/// The set `{base + δ : normal·δ = 0}` of neighbours of `base`.
///
/// `normal` is meaningful only up to a nonzero factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentConstraint<const N: usize> {
    pub base: Point<N>,
    pub normal: [f64; N],
}

impl<const N: usize> TangentConstraint<N> {
    pub fn new(base: Point<N>, normal: [f64; N]) -> Result<Self> {
        if linalg::normalize(&normal).is_none() {
            return Err(GeometryError::DegenerateNormal);
        }
        Ok(TangentConstraint { base, normal })
    }

    /// Whether `δ` satisfies the constraint (relative to `|normal|·|δ|`).
    pub fn contains(&self, delta: &Displacement<N>) -> bool {
        let scale = linalg::norm(&self.normal) * linalg::norm(&delta.0).max(1.0);
        linalg::dot(&self.normal, &delta.0).abs() <= tolerance::PARALLEL * scale
    }

    /// Orthonormal basis of the admissible displacements.
    pub fn kernel_basis(&self) -> Vec<[f64; N]> {
        linalg::hyperplane_basis(&self.normal)
    }

    /// Kernel inclusion `ker(self) ⊆ ker(other)`, tested on a basis of
    /// `ker(self)` without comparing the normals directly.
    pub fn kernel_within(&self, other: &TangentConstraint<N>) -> Result<bool> {
        self.check_base(other)?;
        let unit = linalg::normalize(&other.normal).ok_or(GeometryError::DegenerateNormal)?;
        let leak: f64 = self
            .kernel_basis()
            .iter()
            .map(|v| linalg::dot(v, &unit).powi(2))
            .sum::<f64>()
            .sqrt();
        Ok(leak <= tolerance::PARALLEL)
    }

    fn check_base(&self, other: &TangentConstraint<N>) -> Result<()> {
        if self.base.separation(&other.base) <= tolerance::DISTINCT {
            Ok(())
        } else {
            Err(GeometryError::BaseMismatch)
        }
    }
}

/// First-order expansion of `δ ↦ |(b + δ) - x|²` at `δ = 0`.
///
/// Exact: the `δ·δ` term vanishes for neighbours.
pub fn jet_dist_sq<const N: usize>(b: &Point<N>, x: &Point<N>) -> Result<JetScalar<N>> {
    b.dist(x)?;
    let from_x = x.to(b);
    Ok(JetScalar {
        value: linalg::norm_sq(&from_x),
        gradient: linalg::scale(&from_x, 2.0),
    })
}

/// The monad slice `𝔐(b) ∩ S` for a point `b` on the sphere `S`.
pub fn sphere_monad_slice<const N: usize>(
    sphere: &Sphere<N>,
    b: &Point<N>,
) -> Result<TangentConstraint<N>> {
    sphere.center.dist(b)?;
    sphere.require_on(b)?;
    TangentConstraint::new(*b, sphere.center.to(b))
}

/// Whether two jets agree on every neighbour admitted by `c`: equal values
/// and a gradient difference parallel to the constraint normal.
pub fn jet_equal_under<const N: usize>(
    c: &TangentConstraint<N>,
    j1: &JetScalar<N>,
    j2: &JetScalar<N>,
) -> bool {
    let diff = *j1 - *j2;
    tolerance::lengths_match(j1.value, j2.value)
        && linalg::rejection(&diff.gradient, &c.normal) <= tolerance::PARALLEL
}

/// Whether two constraints at the same base describe the same set of
/// neighbours, i.e. have parallel normals.
pub fn constraints_equal<const N: usize>(
    c1: &TangentConstraint<N>,
    c2: &TangentConstraint<N>,
) -> Result<bool> {
    c1.check_base(c2)?;
    let n1 = linalg::normalize(&c1.normal).ok_or(GeometryError::DegenerateNormal)?;
    let n2 = linalg::normalize(&c2.normal).ok_or(GeometryError::DegenerateNormal)?;
    Ok(linalg::rejection(&n2, &n1) <= tolerance::PARALLEL)
}
