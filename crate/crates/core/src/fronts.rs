//! Sampled oriented hypersurfaces and the wavefront operator `B ⊢ s`.
//!
//! A [`Front`] is a finite sample of an oriented hypersurface: each sample is
//! the contact element of the surface at that point. Propagating a front by
//! `s` replaces every contact element `P` with `P ⊢ s`, carrying the normal
//! along unchanged. The result is again a front, it is the envelope of the
//! wavelets `S(b, s)`, and propagating by `s` then `t` equals propagating by
//! `s + t`, as long as `s` stays below the first focal distance of the
//! positive side ([`Front::caustic_limit`]).
//!
//! Curves (`N = 2`) are sampled in parameter order, open or closed. Surfaces
//! (`N = 3`) are supported as latitude/longitude grids on spheres.

use std::f64::consts::{PI, TAU};

use crate::contact::ContactElement;
use crate::error::{GeometryError, Result};
use crate::linalg;
use crate::scalars::{Length, Point};
use crate::spheres::Sphere;
use crate::tolerance;

/// Which side of a closed primitive is the positive one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Outward,
    Inward,
}

impl Orientation {
    fn sign(self) -> f64 {
        match self {
            Orientation::Outward => 1.0,
            Orientation::Inward => -1.0,
        }
    }
}

/// Analytic planar curves that can be sampled into a front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    Circle { center: Point<2>, radius: Length },
    /// Axis-aligned ellipse with semi-axes along x and y.
    Ellipse { center: Point<2>, semi_axes: [Length; 2] },
}

/// How the samples of a front are connected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// A curve sampled in order; `closed` links the last sample to the first.
    Curve { closed: bool },
    /// Row-major grid whose columns wrap around; rows do not.
    Grid { rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FrontSource {
    Circle { radius: f64 },
    Ellipse { semi_axes: [f64; 2] },
    Sphere { radius: f64 },
    Sampled,
    Offset { from: Box<FrontSource>, distance: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Front<const N: usize> {
    samples: Vec<ContactElement<N>>,
    topology: Topology,
    source: FrontSource,
}

/// Smallest propagation distance at which the positive side focuses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CausticLimit {
    Finite(Length),
    /// No sample curves towards the positive side.
    NoLimit,
}

impl CausticLimit {
    /// Whether propagating by `s` stays strictly below the limit.
    pub fn admits(&self, s: Length) -> bool {
        match self {
            CausticLimit::Finite(limit) => s.less_than(*limit),
            CausticLimit::NoLimit => true,
        }
    }

    pub fn value(&self) -> Option<f64> {
        match self {
            CausticLimit::Finite(l) => Some(l.get()),
            CausticLimit::NoLimit => None,
        }
    }
}

/// Outcome of propagating a front, with the injectivity diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationReport<const N: usize> {
    pub front_in: Front<N>,
    pub front_out: Front<N>,
    pub distance: Length,
    /// False when the sample map `b ↦ B(b) ⊢ s` folds, crowds or passes the
    /// caustic limit.
    pub injective: bool,
    /// Smallest distance between non-adjacent output samples, divided by the
    /// local input spacing.
    pub min_clearance: f64,
    /// Whether some pair of adjacent samples reversed order.
    pub folded: bool,
    pub caustic_bound: CausticLimit,
}

/// Per-sample result of checking that a propagated front envelopes its
/// wavelets.
#[derive(Debug, Clone, PartialEq)]
pub struct EnvelopeReport {
    /// `S(b_i, s)` touches the front at `c_i`.
    pub wavelet_touches: Vec<bool>,
    /// `c_i` is touched by some wavelet, found by search over all of them.
    pub point_touched: Vec<bool>,
    /// Normal rejection between the front's element at `c_i` and the
    /// wavelet's.
    pub residuals: Vec<f64>,
}

impl EnvelopeReport {
    pub fn all_true(&self) -> bool {
        self.wavelet_touches.iter().chain(&self.point_touched).all(|&t| t)
    }

    pub fn failures(&self) -> Vec<usize> {
        (0..self.wavelet_touches.len())
            .filter(|&i| !(self.wavelet_touches[i] && self.point_touched[i]))
            .collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

impl<const N: usize> Front<N> {
    /// Builds a front from contact elements, checking the continuity
    /// invariants: adjacent samples are distinct and their normals never point
    /// in opposing directions.
    pub fn from_samples(
        samples: Vec<ContactElement<N>>,
        topology: Topology,
        source: FrontSource,
    ) -> Result<Self> {
        match topology {
            Topology::Curve { .. } if N != 2 => {
                return Err(GeometryError::BadPrimitive("curve fronts are planar".into()))
            }
            Topology::Grid { .. } if N != 3 => {
                return Err(GeometryError::BadPrimitive("grid fronts are surfaces in 3D".into()))
            }
            Topology::Curve { .. } if samples.len() < 3 => {
                return Err(GeometryError::TooFewSamples { min: 3, got: samples.len() })
            }
            Topology::Grid { rows, cols } if rows < 2 || cols < 3 || rows * cols != samples.len() => {
                return Err(GeometryError::BadPrimitive(format!(
                    "grid {rows}x{cols} does not fit {} samples",
                    samples.len()
                )))
            }
            _ => {}
        }
        let front = Front { samples, topology, source };
        front.check_continuity()?;
        Ok(front)
    }

    fn check_continuity(&self) -> Result<()> {
        for i in 0..self.len() {
            for j in self.neighbours(i).into_iter().filter(|&j| j > i) {
                let (a, b) = (&self.samples[i], &self.samples[j]);
                if !a.base.is_distinct_from(&b.base) {
                    return Err(GeometryError::Discontinuous {
                        index: i,
                        reason: "adjacent samples coincide",
                    });
                }
                // right angles are allowed: a 4-sample circle is a valid front
                if linalg::dot(a.normal(), b.normal()) <= -tolerance::PARALLEL {
                    return Err(GeometryError::Discontinuous {
                        index: i,
                        reason: "adjacent normals do not agree in direction",
                    });
                }
            }
        }
        Ok(())
    }

    pub fn samples(&self) -> &[ContactElement<N>] {
        &self.samples
    }

    pub fn points(&self) -> impl Iterator<Item = Point<N>> + '_ {
        self.samples.iter().map(|s| s.base)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn source(&self) -> &FrontSource {
        &self.source
    }

    pub fn is_closed(&self) -> bool {
        match self.topology {
            Topology::Curve { closed } => closed,
            Topology::Grid { .. } => true,
        }
    }

    /// Indices of the samples adjacent to sample `i`.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        let n = self.len();
        let mut out = Vec::with_capacity(4);
        match self.topology {
            Topology::Curve { closed } => {
                if i > 0 {
                    out.push(i - 1);
                } else if closed && n > 1 {
                    out.push(n - 1);
                }
                if i + 1 < n {
                    out.push(i + 1);
                } else if closed && n > 1 {
                    out.push(0);
                }
            }
            Topology::Grid { rows, cols } => {
                let (r, c) = (i / cols, i % cols);
                out.push(r * cols + (c + cols - 1) % cols);
                out.push(r * cols + (c + 1) % cols);
                if r > 0 {
                    out.push(i - cols);
                }
                if r + 1 < rows {
                    out.push(i + cols);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out.retain(|&j| j != i);
        out
    }

    /// Mean distance between adjacent samples.
    pub fn mean_spacing(&self) -> f64 {
        let (sum, count) = (0..self.len())
            .flat_map(|i| self.neighbours(i).into_iter().filter(move |&j| j > i).map(move |j| (i, j)))
            .fold((0.0, 0usize), |(s, c), (i, j)| {
                (s + self.samples[i].base.separation(&self.samples[j].base), c + 1)
            });
        if count == 0 {
            0.0
        } else {
            sum / count as f64
        }
    }

    fn local_spacing(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| {
                self.neighbours(i)
                    .into_iter()
                    .map(|j| self.samples[i].base.separation(&self.samples[j].base))
                    .fold(f64::INFINITY, f64::min)
            })
            .collect()
    }

    /// Estimated distance to the first focal point on the positive side.
    ///
    /// Curves use the circle through each sample and its two neighbours;
    /// grids use, for each neighbour, the sphere tangent to the sample's
    /// element that passes through the neighbour. Only circles whose centre
    /// lies on the positive side count.
    pub fn caustic_limit(&self) -> Result<CausticLimit> {
        if self.len() < 3 {
            return Err(GeometryError::TooFewSamples { min: 3, got: self.len() });
        }
        let mut best = f64::INFINITY;
        for i in 0..self.len() {
            let p = &self.samples[i];
            let nbrs = self.neighbours(i);
            match self.topology {
                Topology::Curve { .. } => {
                    if let [prev, next] = nbrs[..] {
                        if let Some(center) =
                            circumcenter(&p.base, &self.samples[prev].base, &self.samples[next].base)
                        {
                            let to_center = p.base.to(&center);
                            if linalg::dot(&to_center, p.normal()) > 0.0 {
                                best = best.min(linalg::norm(&to_center));
                            }
                        }
                    }
                }
                Topology::Grid { .. } => {
                    for j in nbrs {
                        let d = p.base.to(&self.samples[j].base);
                        let h = linalg::dot(&d, p.normal());
                        if h > 0.0 {
                            best = best.min(linalg::norm_sq(&d) / (2.0 * h));
                        }
                    }
                }
            }
        }
        Ok(match Length::new(best) {
            Ok(limit) => CausticLimit::Finite(limit),
            Err(_) => CausticLimit::NoLimit,
        })
    }

    /// `B ⊢ s` without the injectivity guard. The output front may be
    /// degenerate when the report is not injective.
    pub fn offset(&self, s: Length) -> PropagationReport<N> {
        let out: Vec<ContactElement<N>> = self
            .samples
            .iter()
            .map(|p| p.transported(p.propagate(s)))
            .collect();
        let front_out = Front {
            samples: out,
            topology: self.topology,
            source: FrontSource::Offset {
                from: Box::new(self.source.clone()),
                distance: s.get(),
            },
        };

        let folded = (0..self.len()).any(|i| {
            self.neighbours(i).into_iter().any(|j| {
                let before = self.samples[i].base.to(&self.samples[j].base);
                let after = front_out.samples[i].base.to(&front_out.samples[j].base);
                linalg::dot(&before, &after) <= 0.0
            })
        });
        let min_clearance = self.clearance(&front_out);
        let caustic_bound = self.caustic_limit().unwrap_or(CausticLimit::NoLimit);
        let injective =
            !folded && min_clearance >= tolerance::CLEARANCE_FLOOR && caustic_bound.admits(s);

        PropagationReport {
            front_in: self.clone(),
            front_out,
            distance: s,
            injective,
            min_clearance,
            folded,
            caustic_bound,
        }
    }

    // Smallest |c_i - c_j| / min(h_i, h_j) over non-adjacent pairs, h the
    // local input spacing. Sweeps along x so that far pairs are skipped.
    fn clearance(&self, out: &Front<N>) -> f64 {
        let spacing = self.local_spacing();
        let h_max = spacing.iter().copied().fold(0.0, f64::max);
        let mut order: Vec<usize> = (0..out.len()).collect();
        let x = |i: usize| out.samples[i].base.0[0];
        order.sort_by(|&a, &b| x(a).total_cmp(&x(b)));

        let mut best = f64::INFINITY;
        for (k, &i) in order.iter().enumerate() {
            let adjacent = self.neighbours(i);
            for &j in &order[k + 1..] {
                if x(j) - x(i) >= best * h_max {
                    break;
                }
                if adjacent.contains(&j) {
                    continue;
                }
                let gap = out.samples[i].base.separation(&out.samples[j].base);
                let ratio = gap / spacing[i].min(spacing[j]);
                if ratio < best {
                    best = ratio;
                }
            }
        }
        best
    }

    /// `B ⊢ s`, refusing distances at which the sample map is not injective.
    pub fn propagate(&self, s: Length) -> Result<PropagationReport<N>> {
        let report = self.offset(s);
        if report.injective {
            Ok(report)
        } else {
            Err(GeometryError::CausticExceeded {
                distance: s.get(),
                bound: report.caustic_bound.value(),
                clearance: report.min_clearance,
            })
        }
    }
}

impl Front<2> {
    /// Uniform parameter sampling of a planar primitive with analytic normals.
    pub fn sample(primitive: &Primitive, count: usize, orientation: Orientation) -> Result<Self> {
        const MIN: usize = 4;
        if count < MIN {
            return Err(GeometryError::TooFewSamples { min: MIN, got: count });
        }
        let sign = orientation.sign();
        let (center, [a, b], source) = match *primitive {
            Primitive::Circle { center, radius } => (
                center,
                [radius.get(); 2],
                FrontSource::Circle { radius: radius.get() },
            ),
            Primitive::Ellipse { center, semi_axes } => {
                let axes = semi_axes.map(Length::get);
                (center, axes, FrontSource::Ellipse { semi_axes: axes })
            }
        };
        let samples = (0..count)
            .map(|k| {
                let t = TAU * k as f64 / count as f64;
                let (sin, cos) = t.sin_cos();
                let base = Point::new([center.0[0] + a * cos, center.0[1] + b * sin]);
                // gradient of (x/a)² + (y/b)²
                ContactElement::new(base, [sign * cos / a, sign * sin / b])
            })
            .collect::<Result<Vec<_>>>()?;
        Front::from_samples(samples, Topology::Curve { closed: true }, source)
    }
}

impl Front<3> {
    /// Latitude/longitude grid on a sphere: `count` samples per latitude and
    /// `count / 2` latitudes placed at cell midpoints, avoiding the poles.
    pub fn sample_sphere(sphere: &Sphere<3>, count: usize, orientation: Orientation) -> Result<Self> {
        const MIN: usize = 8;
        if count < MIN {
            return Err(GeometryError::TooFewSamples { min: MIN, got: count });
        }
        let (rows, cols) = (count / 2, count);
        let r = sphere.radius.get();
        let sign = orientation.sign();
        let mut samples = Vec::with_capacity(rows * cols);
        for row in 0..rows {
            let theta = PI * (row as f64 + 0.5) / rows as f64;
            for col in 0..cols {
                let phi = TAU * col as f64 / cols as f64;
                let dir = [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()];
                let base = sphere.center.offset(r, &dir);
                samples.push(ContactElement::new(base, linalg::scale(&dir, sign))?);
            }
        }
        Front::from_samples(
            samples,
            Topology::Grid { rows, cols },
            FrontSource::Sphere { radius: r },
        )
    }
}

// Circumcentre of three points in any dimension; None when collinear.
fn circumcenter<const N: usize>(p: &Point<N>, q: &Point<N>, r: &Point<N>) -> Option<Point<N>> {
    let u = p.to(q);
    let v = p.to(r);
    let (uu, uv, vv) = (linalg::dot(&u, &u), linalg::dot(&u, &v), linalg::dot(&v, &v));
    let det = uu * vv - uv * uv;
    if det.abs() <= 1e-14 * uu * vv {
        return None;
    }
    // 2(o-p)·u = |u|², 2(o-p)·v = |v|²
    let alpha = 0.5 * vv * (uu - uv) / det;
    let beta = 0.5 * uu * (vv - uv) / det;
    Some(Point(linalg::add(&p.offset(alpha, &u).0, &linalg::scale(&v, beta))))
}

impl<const N: usize> PropagationReport<N> {
    /// The input sample whose propagation is `c`.
    pub fn foot(&self, c: &Point<N>) -> Result<Point<N>> {
        self.front_out
            .points()
            .enumerate()
            .map(|(i, p)| (i, p.separation(c)))
            .filter(|&(_, d)| d <= tolerance::DISTINCT)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(i, _)| self.front_in.samples[i].base)
            .ok_or(GeometryError::NotOnFront)
    }

    /// Largest `|dist(b_i, c_j) - s|` over adjacent sample pairs `i, j`:
    /// how far a propagated neighbour sits off the wavelet `S(b_i, s)`.
    /// Decays quadratically with the sample spacing.
    pub fn wavelet_defect(&self) -> f64 {
        let s = self.distance.get();
        let input = &self.front_in;
        (0..input.len())
            .flat_map(|i| input.neighbours(i).into_iter().map(move |j| (i, j)))
            .map(|(i, j)| {
                let b = input.samples[i].base;
                let c = self.front_out.samples[j].base;
                (b.separation(&c) - s).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// See [`Front::propagate`].
pub fn front_propagate<const N: usize>(front: &Front<N>, s: Length) -> Result<PropagationReport<N>> {
    front.propagate(s)
}

/// See [`Front::caustic_limit`].
pub fn caustic_limit<const N: usize>(front: &Front<N>) -> Result<CausticLimit> {
    front.caustic_limit()
}

/// See [`PropagationReport::foot`].
pub fn foot<const N: usize>(c: &Point<N>, report: &PropagationReport<N>) -> Result<Point<N>> {
    report.foot(c)
}

/// Checks, sample by sample, that `propagated` is the envelope of the
/// wavelets `S(b, s)` of `front`: each wavelet passes through its matched
/// sample with the same contact element, and each sample of `propagated`
/// lies on some wavelet with the same contact element.
pub fn envelope_verify<const N: usize>(
    front: &Front<N>,
    s: Length,
    propagated: &Front<N>,
) -> Result<EnvelopeReport> {
    if front.len() != propagated.len() || front.topology != propagated.topology {
        return Err(GeometryError::FrontMismatch(format!(
            "{} samples vs {}",
            front.len(),
            propagated.len()
        )));
    }
    let wavelet_element = |b: &Point<N>, c: &ContactElement<N>| -> Option<ContactElement<N>> {
        let wavelet = Sphere::new(*b, s);
        if !wavelet.contains(&c.base) {
            return None;
        }
        ContactElement::from_sphere(&wavelet, &c.base, true).ok()
    };

    let n = front.len();
    let mut wavelet_touches = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n);
    for (b, c) in front.samples.iter().zip(&propagated.samples) {
        match wavelet_element(&b.base, c) {
            Some(w) => {
                wavelet_touches.push(w.same_as(c));
                residuals.push(w.normal_residual(c));
            }
            None => {
                wavelet_touches.push(false);
                residuals.push(f64::INFINITY);
            }
        }
    }
    let point_touched = propagated
        .samples
        .iter()
        .map(|c| {
            front
                .samples
                .iter()
                .filter_map(|b| wavelet_element(&b.base, c))
                .any(|w| w.same_as(c))
        })
        .collect();

    Ok(EnvelopeReport {
        wavelet_touches,
        point_touched,
        residuals,
    })
}

/// Largest distance between matched samples of `(B ⊢ s) ⊢ t` and
/// `B ⊢ (s + t)`.
pub fn semigroup_check<const N: usize>(front: &Front<N>, s: Length, t: Length) -> Result<f64> {
    let direct = front.propagate(s + t)?;
    let first = front.propagate(s)?;
    let second = first.front_out.propagate(t)?;
    Ok(second
        .front_out
        .points()
        .zip(direct.front_out.points())
        .map(|(a, b)| a.separation(&b))
        .fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn len(v: f64) -> Length {
        Length::new(v).unwrap()
    }

    fn circle(r: f64) -> Primitive {
        Primitive::Circle {
            center: Point::origin(),
            radius: len(r),
        }
    }

    fn ellipse(a: f64, b: f64) -> Primitive {
        Primitive::Ellipse {
            center: Point::origin(),
            semi_axes: [len(a), len(b)],
        }
    }

    #[test]
    fn four_sample_circle() {
        let f = Front::sample(&circle(1.0), 4, Orientation::Outward).unwrap();
        let expected = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (s, e) in f.samples().iter().zip(expected) {
            assert!(s.base.separation(&Point::new(e)) < 1e-15);
            assert!(linalg::rejection(s.normal(), &e) < 1e-15);
            assert!(linalg::dot(s.normal(), &e) > 0.0);
        }
        assert!(Front::sample(&circle(1.0), 3, Orientation::Outward).is_err());
    }

    #[test]
    fn ellipse_normals_follow_the_implicit_gradient() {
        let f = Front::sample(&ellipse(2.0, 1.0), 100, Orientation::Outward).unwrap();
        for s in f.samples() {
            let [x, y] = s.base.0;
            assert!(linalg::rejection(s.normal(), &[x / 4.0, y]) < 1e-12);
            assert!((linalg::norm(s.normal()) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normals_are_perpendicular_to_discrete_tangents() {
        for prim in [circle(1.5), ellipse(2.0, 1.0), ellipse(0.5, 3.0)] {
            let f = Front::sample(&prim, 1000, Orientation::Inward).unwrap();
            for i in 0..f.len() {
                let [prev, next] = f.neighbours(i)[..] else { unreachable!() };
                let (prev, next) = if prev + 1 == i || (i == 0 && next == 1) { (prev, next) } else { (next, prev) };
                let tangent = f.samples()[prev].base.to(&f.samples()[next].base);
                let t = linalg::normalize(&tangent).unwrap();
                assert!(linalg::dot(&t, f.samples()[i].normal()).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn bad_inputs() {
        let zero_normal = ContactElement::new(Point::new([0.0, 0.0]), [0.0, 0.0]);
        assert!(zero_normal.is_err());
        let pts = [[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]];
        let flipped: Vec<_> = pts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let sign = if i == 1 { -1.0 } else { 1.0 };
                ContactElement::new(Point::new(*p), [0.0, sign]).unwrap()
            })
            .collect();
        assert!(matches!(
            Front::from_samples(flipped, Topology::Curve { closed: false }, FrontSource::Sampled),
            Err(GeometryError::Discontinuous { .. })
        ));
        let repeated: Vec<_> = [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]
            .iter()
            .map(|p| ContactElement::new(Point::new(*p), [0.0, 1.0]).unwrap())
            .collect();
        assert!(Front::from_samples(repeated, Topology::Curve { closed: false }, FrontSource::Sampled).is_err());
    }

    #[test]
    fn open_curve_neighbours() {
        let samples: Vec<_> = (0..5)
            .map(|i| ContactElement::new(Point::new([i as f64, 0.0]), [0.0, 1.0]).unwrap())
            .collect();
        let f = Front::from_samples(samples, Topology::Curve { closed: false }, FrontSource::Sampled).unwrap();
        assert_eq!(f.neighbours(0), vec![1]);
        assert_eq!(f.neighbours(2), vec![1, 3]);
        assert_eq!(f.neighbours(4), vec![3]);
        assert_eq!(f.caustic_limit().unwrap(), CausticLimit::NoLimit);
        let r = f.propagate(len(1.0)).unwrap();
        assert!(r.front_out.points().all(|p| (p.0[1] - 1.0).abs() < 1e-15));
    }

    #[test]
    fn circle_propagation_both_orientations() {
        let f = Front::sample(&circle(1.0), 64, Orientation::Outward).unwrap();
        let r = f.propagate(len(0.5)).unwrap();
        assert!(r.injective);
        for p in r.front_out.points() {
            assert!((p.separation(&Point::origin()) - 1.5).abs() < 1e-9);
        }
        let f = Front::sample(&circle(2.0), 64, Orientation::Inward).unwrap();
        let r = f.propagate(len(1.0)).unwrap();
        for p in r.front_out.points() {
            assert!((p.separation(&Point::origin()) - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn focusing_at_the_centre_is_refused() {
        let f = Front::sample(&circle(1.0), 64, Orientation::Inward).unwrap();
        let report = f.offset(len(1.0));
        assert!(!report.injective);
        assert!(matches!(f.propagate(len(1.0)), Err(GeometryError::CausticExceeded { .. })));
        // past the centre the circle is traced again, reversed
        let report = f.offset(len(3.0));
        assert!(report.folded && !report.injective);
    }

    #[test]
    fn caustic_limits() {
        let inward = Front::sample(&circle(1.0), 64, Orientation::Inward).unwrap();
        let CausticLimit::Finite(l) = inward.caustic_limit().unwrap() else { panic!() };
        assert!((l.get() - 1.0).abs() < 1e-9);
        let outward = Front::sample(&circle(1.0), 64, Orientation::Outward).unwrap();
        assert_eq!(outward.caustic_limit().unwrap(), CausticLimit::NoLimit);
        let e = Front::sample(&ellipse(2.0, 1.0), 2000, Orientation::Inward).unwrap();
        let l = e.caustic_limit().unwrap().value().unwrap();
        assert!((l - 0.5).abs() < 0.01, "{l}");
    }

    #[test]
    fn circumcenter_of_right_triangle() {
        let o = circumcenter(&Point::new([0.0, 0.0]), &Point::new([2.0, 0.0]), &Point::new([0.0, 2.0])).unwrap();
        assert!(o.separation(&Point::new([1.0, 1.0])) < 1e-15);
        assert!(circumcenter(&Point::new([0.0, 0.0]), &Point::new([1.0, 0.0]), &Point::new([2.0, 0.0])).is_none());
    }

    #[test]
    fn foot_inverts_propagation() {
        let f = Front::sample(&circle(1.0), 32, Orientation::Outward).unwrap();
        let r = f.propagate(len(0.5)).unwrap();
        let b = r.foot(&Point::new([1.5, 0.0])).unwrap();
        assert!(b.separation(&Point::new([1.0, 0.0])) < 1e-15);
        for (b, c) in f.points().zip(r.front_out.points()) {
            assert_eq!(foot(&c, &r).unwrap(), b);
        }
        assert_eq!(r.foot(&Point::new([1.2, 0.0])), Err(GeometryError::NotOnFront));
    }

    #[test]
    fn envelope_fault_injection() {
        let f = Front::sample(&ellipse(2.0, 1.0), 200, Orientation::Outward).unwrap();
        let s = len(0.1);
        let c = f.propagate(s).unwrap().front_out;
        assert!(envelope_verify(&f, s, &c).unwrap().all_true());

        let mut samples = c.samples().to_vec();
        let n = *samples[17].normal();
        let (sin, cos) = 0.1f64.sin_cos();
        samples[17] = ContactElement::new(samples[17].base, [cos * n[0] - sin * n[1], sin * n[0] + cos * n[1]]).unwrap();
        let corrupted = Front::from_samples(samples, c.topology(), FrontSource::Sampled).unwrap();
        let report = envelope_verify(&f, s, &corrupted).unwrap();
        assert_eq!(report.failures(), vec![17]);
        assert_eq!(report.wavelet_touches.iter().filter(|t| !**t).count(), 1);

        let other = Front::sample(&ellipse(2.0, 1.0), 100, Orientation::Outward).unwrap();
        assert!(matches!(envelope_verify(&f, s, &other), Err(GeometryError::FrontMismatch(_))));
    }

    #[test]
    fn semigroup_on_circle_is_exact() {
        let f = Front::sample(&circle(1.0), 128, Orientation::Outward).unwrap();
        assert!(semigroup_check(&f, len(0.3), len(0.4)).unwrap() < 1e-12);
        let inward = Front::sample(&circle(1.0), 128, Orientation::Inward).unwrap();
        assert!(matches!(
            semigroup_check(&inward, len(0.6), len(0.6)),
            Err(GeometryError::CausticExceeded { .. })
        ));
    }

    #[test]
    fn sphere_grid_propagates_in_both_directions() {
        let sphere = Sphere::new(Point::new([1.0, -2.0, 0.5]), len(2.0));
        let out = Front::sample_sphere(&sphere, 24, Orientation::Outward).unwrap();
        assert_eq!(out.len(), 24 * 12);
        assert_eq!(out.caustic_limit().unwrap(), CausticLimit::NoLimit);
        let r = out.propagate(len(0.7)).unwrap();
        assert!(r.front_out.points().all(|p| (p.separation(&sphere.center) - 2.7).abs() < 1e-9));
        assert!(envelope_verify(&out, len(0.7), &r.front_out).unwrap().all_true());

        let inward = Front::sample_sphere(&sphere, 24, Orientation::Inward).unwrap();
        let l = inward.caustic_limit().unwrap().value().unwrap();
        assert!((l - 2.0).abs() < 1e-9);
        let r = inward.propagate(len(1.5)).unwrap();
        assert!(r.front_out.points().all(|p| (p.separation(&sphere.center) - 0.5).abs() < 1e-9));
        assert!(inward.propagate(len(2.0)).is_err());
        assert!(semigroup_check(&out, len(0.2), len(0.3)).unwrap() < 1e-9);
    }

    #[test]
    fn wrong_topology_for_dimension() {
        let s: Vec<ContactElement<3>> = (0..4)
            .map(|i| ContactElement::new(Point::new([i as f64, 0.0, 0.0]), [0.0, 0.0, 1.0]).unwrap())
            .collect();
        assert!(matches!(
            Front::from_samples(s, Topology::Curve { closed: false }, FrontSource::Sampled),
            Err(GeometryError::BadPrimitive(_))
        ));
    }

    #[test]
    fn wavelet_defect_is_second_order() {
        let defect = |count| {
            let f = Front::sample(&ellipse(2.0, 1.0), count, Orientation::Outward).unwrap();
            f.propagate(len(0.1)).unwrap().wavelet_defect()
        };
        let (coarse, fine) = (defect(500), defect(1000));
        let ratio = coarse / fine;
        println!("defect {coarse:e} -> {fine:e}, ratio {ratio}");
        assert!((ratio - 4.0).abs() < 0.8, "{ratio}");
    }
}
