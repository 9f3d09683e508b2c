//! Spheres and the touching relation between them.
//!
//! Two non-concentric spheres touch iff the distance between their centres
//! is the sum of the radii (external touching) or their difference (internal
//! touching), and then they touch in exactly one point. [`touch_classify`]
//! decides this by the distance criterion and constructs the point;
//! [`monadic_touch_check`] decides it independently, by comparing the two
//! monad slices at a candidate point.

use crate::error::{GeometryError, Result};
use crate::jets::{constraints_equal, sphere_monad_slice};
use crate::linalg;
use crate::scalars::{Length, Point};
use crate::tolerance;

/// The set of points at distance `radius` from `center`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sphere<const N: usize> {
    pub center: Point<N>,
    pub radius: Length,
}

impl<const N: usize> Sphere<N> {
    pub fn new(center: Point<N>, radius: Length) -> Self {
        Sphere { center, radius }
    }

    /// Signed offset of `p` from the sphere, `|p - center| - radius`.
    pub fn offset_of(&self, p: &Point<N>) -> f64 {
        self.center.separation(p) - self.radius.get()
    }

    pub fn contains(&self, p: &Point<N>) -> bool {
        self.offset_of(p).abs() <= tolerance::ON_SPHERE
    }

    pub(crate) fn require_on(&self, p: &Point<N>) -> Result<()> {
        let offset = self.offset_of(p);
        if offset.abs() <= tolerance::ON_SPHERE {
            Ok(())
        } else {
            Err(GeometryError::NotOnSphere { offset })
        }
    }

    /// Outward unit normal at `p`.
    pub fn outward_normal(&self, p: &Point<N>) -> Result<[f64; N]> {
        let r = self.center.dist(p)?;
        Ok(linalg::scale(&self.center.to(p), 1.0 / r.get()))
    }

    /// The point of the sphere in direction `dir` from the centre.
    pub fn point_towards(&self, dir: &[f64; N]) -> Result<Point<N>> {
        let unit = linalg::normalize(dir).ok_or(GeometryError::DegenerateNormal)?;
        Ok(self.center.offset(self.radius.get(), &unit))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TouchKind {
    None,
    Internal,
    External,
}

/// Outcome of [`touch_classify`]. The point is present iff the spheres touch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TouchResult<const N: usize> {
    NoTouch,
    Internal(Point<N>),
    External(Point<N>),
}

impl<const N: usize> TouchResult<N> {
    pub fn kind(&self) -> TouchKind {
        match self {
            TouchResult::NoTouch => TouchKind::None,
            TouchResult::Internal(_) => TouchKind::Internal,
            TouchResult::External(_) => TouchKind::External,
        }
    }

    pub fn point(&self) -> Option<Point<N>> {
        match *self {
            TouchResult::NoTouch => None,
            TouchResult::Internal(p) | TouchResult::External(p) => Some(p),
        }
    }
}

fn center_distance<const N: usize>(s1: &Sphere<N>, s2: &Sphere<N>) -> Result<Length> {
    s1.center.dist(&s2.center).map_err(|_| GeometryError::Concentric)
}

/// Classifies a pair of non-concentric spheres by the distance criterion and
/// constructs the touching point on the line of centres.
pub fn touch_classify<const N: usize>(s1: &Sphere<N>, s2: &Sphere<N>) -> Result<TouchResult<N>> {
    let d = center_distance(s1, s2)?.get();
    let (r1, r2) = (s1.radius.get(), s2.radius.get());
    let tol = tolerance::TOUCH * r1.max(r2);
    let axis = linalg::scale(&s1.center.to(&s2.center), 1.0 / d);

    if (d - (r1 + r2)).abs() <= tol {
        return Ok(TouchResult::External(s1.center.offset(r1, &axis)));
    }
    // equal radii have no difference in the length semigroup
    if !tolerance::lengths_match(r1, r2) && (d - (r1 - r2).abs()).abs() <= tol {
        let point = if r1 > r2 {
            s1.center.offset(r1, &axis)
        } else {
            s2.center.offset(-r2, &axis)
        };
        return Ok(TouchResult::Internal(point));
    }
    Ok(TouchResult::NoTouch)
}

/// The touching test by definition: both spheres pass through `c` and their
/// monad slices at `c` coincide.
pub fn monadic_touch_check<const N: usize>(
    s1: &Sphere<N>,
    s2: &Sphere<N>,
    c: &Point<N>,
) -> Result<bool> {
    center_distance(s1, s2)?;
    let slice1 = sphere_monad_slice(s1, c)?;
    let slice2 = sphere_monad_slice(s2, c)?;
    constraints_equal(&slice1, &slice2)
}

/// Distance between the two analytic intersection solutions of a pair of
/// spheres, measured across the line of centres. Zero exactly at tangency;
/// `NaN`-free for every non-concentric pair (negative discriminants clamp to
/// zero separation only when the spheres are tangent within rounding).
pub fn tangency_gap<const N: usize>(s1: &Sphere<N>, s2: &Sphere<N>) -> Result<f64> {
    let d = center_distance(s1, s2)?.get();
    let (r1, r2) = (s1.radius.get(), s2.radius.get());
    // Heron-style product keeps the vanishing factor isolated.
    let disc = -(d - r1 - r2) * (d - r1 + r2) * (d + r1 - r2) * (d + r1 + r2) / (4.0 * d * d);
    Ok(2.0 * disc.abs().sqrt())
}

/// The unique touching point of two touching spheres, certified by the
/// analytic intersection having a single solution.
pub fn unique_touch_point<const N: usize>(s1: &Sphere<N>, s2: &Sphere<N>) -> Result<Point<N>> {
    let point = touch_classify(s1, s2)?
        .point()
        .ok_or(GeometryError::NotTouching)?;
    let gap = tangency_gap(s1, s2)?;
    if gap <= tolerance::UNIQUE_GAP {
        Ok(point)
    } else {
        Err(GeometryError::NotUnique { gap })
    }
}

/// `a ▷ₛ b`: the point `s` units beyond `b` on the ray from `a` through `b`.
/// It is where `S(a, dist(a,b) + s)` and `S(b, s)` touch.
pub fn extrapolate<const N: usize>(a: &Point<N>, s: Length, b: &Point<N>) -> Result<Point<N>> {
    let r = a.dist(b)?.get();
    Ok(b.offset(s.get() / r, &a.to(b)))
}

/// Radial projection from `sphere` onto the concentric sphere of radius
/// `radius + s`: the point where `S(b, s)` touches the outer sphere.
pub fn radial_project<const N: usize>(
    sphere: &Sphere<N>,
    s: Length,
    b: &Point<N>,
) -> Result<Point<N>> {
    sphere.require_on(b)?;
    extrapolate(&sphere.center, s, b)
}

/// Inverse of [`radial_project`]: for `c` on the sphere of radius
/// `radius + s`, the point where `S(c, s)` touches `sphere`.
pub fn radial_retract<const N: usize>(
    sphere: &Sphere<N>,
    s: Length,
    c: &Point<N>,
) -> Result<Point<N>> {
    let outer = Sphere::new(sphere.center, sphere.radius + s);
    outer.require_on(c)?;
    sphere.point_towards(&sphere.center.to(c))
}
