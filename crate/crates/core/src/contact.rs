//! Oriented contact elements and the propagation point `P ⊢ s`.
//!
//! A contact element at `b` is the monad slice of some sphere through `b`;
//! two spheres give the same element exactly when they touch at `b`. Here it
//! is stored canonically as the base point and a unit normal. The normal's
//! sign is the orientation: the positive side is the `+normal` half-space,
//! and the spheres whose centres lie on the `-normal` ray touch the element
//! from the inside.

use crate::error::{GeometryError, Result};
use crate::jets::{jet_dist_sq, jet_equal_under, JetScalar, TangentConstraint};
use crate::linalg;
use crate::scalars::{Length, Point};
use crate::spheres::{touch_classify, Sphere, TouchResult};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactElement<const N: usize> {
    pub base: Point<N>,
    normal: [f64; N],
}

impl<const N: usize> ContactElement<N> {
    /// Normalizes `normal`; its direction marks the positive side.
    pub fn new(base: Point<N>, normal: [f64; N]) -> Result<Self> {
        let normal = linalg::normalize(&normal).ok_or(GeometryError::DegenerateNormal)?;
        Ok(ContactElement { base, normal })
    }

    /// The element of `sphere` at `b`. With `positive_outward` the sphere
    /// itself touches the element from the inside.
    pub fn from_sphere(sphere: &Sphere<N>, b: &Point<N>, positive_outward: bool) -> Result<Self> {
        let slice = crate::jets::sphere_monad_slice(sphere, b)?;
        let sign = if positive_outward { 1.0 } else { -1.0 };
        ContactElement::new(*b, linalg::scale(&slice.normal, sign))
    }

    #[inline]
    pub fn normal(&self) -> &[f64; N] {
        &self.normal
    }

    /// Same base, opposite orientation.
    pub fn reversed(&self) -> Self {
        ContactElement {
            base: self.base,
            normal: self.normal.map(|x| -x),
        }
    }

    /// Moves the base, keeping the normal.
    pub fn transported(&self, base: Point<N>) -> Self {
        ContactElement { base, ..*self }
    }

    pub fn constraint(&self) -> TangentConstraint<N> {
        TangentConstraint {
            base: self.base,
            normal: self.normal,
        }
    }

    /// Normalized rejection of `other`'s normal from this one; zero when the
    /// two elements have the same slice.
    pub fn normal_residual(&self, other: &ContactElement<N>) -> f64 {
        linalg::rejection(&other.normal, &self.normal)
    }

    /// Same base, same slice, same orientation.
    pub fn same_as(&self, other: &ContactElement<N>) -> bool {
        self.base.separation(&other.base) <= tolerance::DISTINCT
            && self.normal_residual(other) <= tolerance::PARALLEL
            && linalg::dot(&self.normal, &other.normal) > 0.0
    }

    /// The sphere of radius `r` touching this element from the inside.
    pub fn inner_sphere(&self, r: Length) -> Sphere<N> {
        Sphere::new(self.base.offset(-r.get(), &self.normal), r)
    }

    /// `x ⊥ P`: the distance from `x` is constant to first order on the
    /// element, i.e. the jet of `|b' - x|²` agrees with a constant on the
    /// slice.
    pub fn is_orthogonal(&self, x: &Point<N>) -> Result<bool> {
        let jet = jet_dist_sq(&self.base, x)?;
        Ok(jet_equal_under(
            &self.constraint(),
            &jet,
            &JetScalar::constant(jet.value),
        ))
    }

    /// Side of `x` relative to the element. Points in the tangent hyperplane
    /// have no side and are reported as not distinct from the element.
    pub fn side_of(&self, x: &Point<N>) -> Result<Side> {
        self.base.dist(x)?;
        let height = linalg::dot(&self.base.to(x), &self.normal);
        if height > tolerance::DISTINCT {
            Ok(Side::Positive)
        } else if height < -tolerance::DISTINCT {
            Ok(Side::Negative)
        } else {
            Err(GeometryError::NotDistinct {
                separation: height.abs(),
            })
        }
    }

    /// `P ⊢ s`: the point orthogonal to the element, at distance `s`, on the
    /// positive side.
    pub fn propagate(&self, s: Length) -> Point<N> {
        self.base.offset(s.get(), &self.normal)
    }

    /// `P ⊢ s` constructed through the inner sphere of radius `r`: the point
    /// where `S(a, r + s)` touches `S(base, s)`, `a` the inner sphere's centre.
    pub fn propagate_via_sphere(&self, s: Length, r: Length) -> Result<Point<N>> {
        let inner = self.inner_sphere(r);
        let outer = Sphere::new(inner.center, r + s);
        match touch_classify(&outer, &Sphere::new(self.base, s))? {
            TouchResult::Internal(c) => Ok(c),
            _ => Err(GeometryError::NotTouching),
        }
    }

    /// Whether `c` lies to first order on every sphere `S(b', s)` with `b'`
    /// in the element. Orientation-blind: the mirror point `base - s·normal`
    /// also qualifies.
    pub fn characteristic_check(&self, c: &Point<N>, s: Length) -> Result<bool> {
        let r = self.base.dist(c)?;
        Ok(r.approx_eq(s) && self.is_orthogonal(c)?)
    }

    /// [`ContactElement::characteristic_check`] restricted to the positive
    /// side, which singles out `P ⊢ s`.
    pub fn characteristic_check_oriented(&self, c: &Point<N>, s: Length) -> Result<bool> {
        Ok(self.characteristic_check(c, s)? && self.side_of(c)? == Side::Positive)
    }
}

/// See [`ContactElement::from_sphere`].
pub fn contact_from_sphere<const N: usize>(
    sphere: &Sphere<N>,
    b: &Point<N>,
    positive_outward: bool,
) -> Result<ContactElement<N>> {
    ContactElement::from_sphere(sphere, b, positive_outward)
}

/// See [`ContactElement::propagate`].
pub fn propagate_contact<const N: usize>(p: &ContactElement<N>, s: Length) -> Point<N> {
    p.propagate(s)
}
