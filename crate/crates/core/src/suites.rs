//! Seeded randomized checks of the touching axioms, the reciprocity of the
//! radial maps and the sphere independence of `P ⊢ s`.
//!
//! Every suite draws its configurations from a caller-supplied RNG, so a run
//! is reproducible from its seed. Sphere centres are drawn from the box
//! `[-10, 10]^N` and radii from `[0.1, 10]`.

use rand::Rng;

use crate::contact::ContactElement;
use crate::jets::{constraints_equal, sphere_monad_slice};
use crate::linalg;
use crate::scalars::{Length, Point};
use crate::spheres::{
    monadic_touch_check, radial_project, radial_retract, tangency_gap, touch_classify,
    unique_touch_point, Sphere, TouchKind,
};
use crate::tolerance;

pub const HALF_WIDTH: f64 = 10.0;
pub const RADIUS_RANGE: (f64, f64) = (0.1, 10.0);

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub name: String,
    pub trials: usize,
    pub counterexamples: usize,
    pub max_deviation: f64,
    pub threshold: f64,
}

impl SuiteOutcome {
    fn new(name: impl Into<String>, threshold: f64) -> Self {
        SuiteOutcome {
            name: name.into(),
            trials: 0,
            counterexamples: 0,
            max_deviation: 0.0,
            threshold,
        }
    }

    fn record(&mut self, ok: bool, deviation: f64) {
        self.trials += 1;
        let within = deviation <= self.threshold;
        if !(ok && within) {
            self.counterexamples += 1;
        }
        if deviation.is_nan() || deviation > self.max_deviation {
            self.max_deviation = deviation;
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }
}

fn len(v: f64) -> Length {
    Length::new(v).expect("generators produce positive lengths")
}

pub fn random_point<const N: usize, R: Rng>(rng: &mut R) -> Point<N> {
    Point(std::array::from_fn(|_| rng.gen_range(-HALF_WIDTH..HALF_WIDTH)))
}

/// Uniform direction by rejection from the unit ball.
pub fn random_unit<const N: usize, R: Rng>(rng: &mut R) -> [f64; N] {
    loop {
        let v: [f64; N] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n = linalg::norm(&v);
        if n > 1e-3 && n <= 1.0 {
            return linalg::scale(&v, 1.0 / n);
        }
    }
}

pub fn random_radius<R: Rng>(rng: &mut R) -> Length {
    len(rng.gen_range(RADIUS_RANGE.0..RADIUS_RANGE.1))
}

/// A touching pair of the given kind with generic floating-point data.
pub fn touching_pair<const N: usize, R: Rng>(rng: &mut R, kind: TouchKind) -> (Sphere<N>, Sphere<N>) {
    let a = random_point::<N, _>(rng);
    let u = random_unit::<N, _>(rng);
    loop {
        let (r1, r2) = (random_radius(rng), random_radius(rng));
        let d = match kind {
            TouchKind::External => r1.get() + r2.get(),
            _ => (r1.get() - r2.get()).abs(),
        };
        if d > 1e-3 {
            return (Sphere::new(a, r1), Sphere::new(a.offset(d, &u), r2));
        }
    }
}

const GRID: f64 = 1024.0;

fn dyadic<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    let (lo, hi) = ((lo * GRID).ceil() as i64, (hi * GRID).floor() as i64);
    rng.gen_range(lo..=hi) as f64 / GRID
}

/// Integer vector with integer length, in a random rational direction.
fn rational_direction<const N: usize, R: Rng>(rng: &mut R) -> ([i64; N], i64) {
    let mut v = [0i64; N];
    let norm = match N {
        2 => {
            // Euclid's parametrization of Pythagorean triples
            let m: i64 = rng.gen_range(2..=9);
            let n: i64 = rng.gen_range(1..m);
            v[0] = m * m - n * n;
            v[1] = 2 * m * n;
            m * m + n * n
        }
        3 => loop {
            // Euler-Lebesgue parametrization of Pythagorean quadruples
            let [m, n, p, q]: [i64; 4] = std::array::from_fn(|_| rng.gen_range(0..=4));
            let norm = m * m + n * n + p * p + q * q;
            if norm == 0 {
                continue;
            }
            v[0] = m * m + n * n - p * p - q * q;
            v[1] = 2 * (m * q + n * p);
            v[2] = 2 * (n * q - m * p);
            break norm;
        },
        _ => {
            v[0] = 1;
            1
        }
    };
    for i in (1..N).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    for x in &mut v {
        if rng.gen_bool(0.5) {
            *x = -*x;
        }
    }
    (v, norm)
}

/// A touching pair whose data are exactly representable and exactly
/// tangent: dyadic centres and radii, with the centre offset along a
/// rational unit direction. Floating-point evaluation of the distance
/// criterion is then exact.
pub fn exact_touching_pair<const N: usize, R: Rng>(
    rng: &mut R,
    kind: TouchKind,
) -> (Sphere<N>, Sphere<N>) {
    let (lo, hi) = RADIUS_RANGE;
    let a: Point<N> = Point(std::array::from_fn(|_| dyadic(rng, -HALF_WIDTH, HALF_WIDTH)));
    let (dir, norm) = rational_direction::<N, _>(rng);
    let (d_lo, d_hi) = match kind {
        TouchKind::External => (2.0 * lo, 2.0 * hi),
        _ => (1.0 / GRID, hi - lo),
    };
    let steps = rng.gen_range(((d_lo * GRID) / norm as f64).ceil() as i64..=((d_hi * GRID) / norm as f64).floor() as i64);
    let d = (steps * norm) as f64 / GRID;
    let b = Point(std::array::from_fn(|i| a.0[i] + (steps * dir[i]) as f64 / GRID));
    let (r1, r2) = match kind {
        TouchKind::External => {
            let r1 = dyadic(rng, lo.max(d - hi), hi.min(d - lo));
            (r1, d - r1)
        }
        _ => {
            let small = dyadic(rng, lo, hi - d);
            if rng.gen_bool(0.5) {
                (small + d, small)
            } else {
                (small, small + d)
            }
        }
    };
    (Sphere::new(a, len(r1)), Sphere::new(b, len(r2)))
}

/// A transversally intersecting pair and two of its intersection points.
pub fn crossing_pair<const N: usize, R: Rng>(rng: &mut R) -> (Sphere<N>, Sphere<N>, [Point<N>; 2]) {
    loop {
        let a = random_point::<N, _>(rng);
        let u = random_unit::<N, _>(rng);
        let (r1, r2) = (random_radius(rng).get(), random_radius(rng).get());
        let (lo, hi) = ((r1 - r2).abs(), r1 + r2);
        let d = rng.gen_range(lo..hi);
        if d < 1e-3 || d - lo < 1e-9 * hi || hi - d < 1e-9 * hi {
            continue;
        }
        let x = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
        let h = (r1 * r1 - x * x).max(0.0).sqrt();
        let across = perpendicular(&u, rng);
        let mid = a.offset(x, &u);
        let points = [mid.offset(h, &across), mid.offset(-h, &across)];
        return (Sphere::new(a, len(r1)), Sphere::new(a.offset(d, &u), len(r2)), points);
    }
}

/// A pair with no common point: separated, or one inside the other.
pub fn apart_pair<const N: usize, R: Rng>(rng: &mut R) -> (Sphere<N>, Sphere<N>) {
    loop {
        let a = random_point::<N, _>(rng);
        let u = random_unit::<N, _>(rng);
        let (r1, r2) = (random_radius(rng).get(), random_radius(rng).get());
        let d = if rng.gen_bool(0.5) {
            r1 + r2 + rng.gen_range(0.01..10.0)
        } else {
            (r1 - r2).abs() * rng.gen_range(0.0..0.99)
        };
        if d > 1e-3 {
            return (Sphere::new(a, len(r1)), Sphere::new(a.offset(d, &u), len(r2)));
        }
    }
}

fn perpendicular<const N: usize, R: Rng>(u: &[f64; N], rng: &mut R) -> [f64; N] {
    loop {
        let v = random_unit::<N, _>(rng);
        let w = linalg::axpy(&v, -linalg::dot(&v, u), u);
        if let Some(w) = linalg::normalize(&w).filter(|_| linalg::norm(&w) > 1e-3) {
            return w;
        }
    }
}

/// Distance criterion against the monadic definition of touching.
///
/// Cycles through external, internal, crossing and apart configurations.
/// Touching pairs must classify correctly and pass the monadic test at the
/// constructed point; crossing pairs must classify as not touching and fail
/// the monadic test at both intersection points; apart pairs must classify
/// as not touching.
pub fn axiom2_equivalence<const N: usize, R: Rng>(rng: &mut R, trials: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(format!("axiom2-equivalence-{N}d"), tolerance::PARALLEL);
    for k in 0..trials {
        match k % 4 {
            0 | 1 => {
                let kind = if k % 4 == 0 { TouchKind::External } else { TouchKind::Internal };
                let (s1, s2) = touching_pair::<N, _>(rng, kind);
                let ok = touch_classify(&s1, &s2).ok().and_then(|t| {
                    let c = t.point()?;
                    let monadic = monadic_touch_check(&s1, &s2, &c).ok()?;
                    let residual = slice_residual(&s1, &s2, &c)?;
                    Some((t.kind() == kind && monadic, residual))
                });
                let (ok, dev) = ok.unwrap_or((false, f64::INFINITY));
                out.record(ok, dev);
            }
            2 => {
                let (s1, s2, points) = crossing_pair::<N, _>(rng);
                let classified_apart = touch_classify(&s1, &s2).map(|t| t.kind() == TouchKind::None);
                let monadic_fails = points
                    .iter()
                    .all(|c| monadic_touch_check(&s1, &s2, c) == Ok(false));
                out.record(classified_apart == Ok(true) && monadic_fails, 0.0);
            }
            _ => {
                let (s1, s2) = apart_pair::<N, _>(rng);
                let classified_apart = touch_classify(&s1, &s2).map(|t| t.kind() == TouchKind::None);
                out.record(classified_apart == Ok(true), 0.0);
            }
        }
    }
    out
}

fn slice_residual<const N: usize>(s1: &Sphere<N>, s2: &Sphere<N>, c: &Point<N>) -> Option<f64> {
    let n1 = sphere_monad_slice(s1, c).ok()?.normal;
    let n2 = sphere_monad_slice(s2, c).ok()?.normal;
    Some(linalg::rejection(&linalg::normalize(&n2)?, &n1))
}

/// Exactly tangent pairs have a single analytic intersection solution.
pub fn axiom1_uniqueness<const N: usize, R: Rng>(rng: &mut R, trials: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(format!("axiom1-uniqueness-{N}d"), tolerance::UNIQUE_GAP);
    for k in 0..trials {
        let kind = if k % 2 == 0 { TouchKind::External } else { TouchKind::Internal };
        let (s1, s2) = exact_touching_pair::<N, _>(rng, kind);
        let gap = tangency_gap(&s1, &s2).unwrap_or(f64::INFINITY);
        let ok = unique_touch_point(&s1, &s2)
            .is_ok_and(|c| s1.contains(&c) && s2.contains(&c));
        out.record(ok, gap);
    }
    out
}

/// For two spheres through a common point, kernel inclusion of the monad
/// slices, parallel normals, and kernel equality all agree.
pub fn axiom3_subtouching<const N: usize, R: Rng>(rng: &mut R, trials: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(format!("axiom3-subtouching-{N}d"), 0.0);
    for k in 0..trials {
        let b = random_point::<N, _>(rng);
        let a1 = b.offset(random_radius(rng).get(), &random_unit::<N, _>(rng));
        let a2 = if k % 2 == 0 {
            // centre on the normal line through b: the spheres touch at b
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let axis = linalg::normalize(&b.to(&a1)).expect("distinct");
            b.offset(sign * random_radius(rng).get(), &axis)
        } else {
            b.offset(random_radius(rng).get(), &random_unit::<N, _>(rng))
        };
        let s1 = Sphere::new(a1, a1.dist(&b).expect("distinct"));
        let s2 = Sphere::new(a2, a2.dist(&b).expect("distinct"));
        let agree = (|| {
            let c1 = sphere_monad_slice(&s1, &b).ok()?;
            let c2 = sphere_monad_slice(&s2, &b).ok()?;
            let included = c1.kernel_within(&c2).ok()?;
            let parallel = constraints_equal(&c1, &c2).ok()?;
            let equal = included && c2.kernel_within(&c1).ok()?;
            let expected = k % 2 == 0 || parallel;
            Some(included == parallel && parallel == equal && expected == parallel)
        })();
        out.record(agree == Some(true), 0.0);
    }
    out
}

/// Radial projection and retraction between concentric spheres are mutually
/// inverse, in both composition orders.
pub fn reciprocity<const N: usize, R: Rng>(rng: &mut R, trials: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(format!("reciprocity-{N}d"), 1e-9);
    for _ in 0..trials {
        let sphere = Sphere::new(random_point::<N, _>(rng), random_radius(rng));
        let s = random_radius(rng);
        let b = sphere.point_towards(&random_unit::<N, _>(rng)).expect("unit");
        let there_and_back = radial_project(&sphere, s, &b)
            .and_then(|c| radial_retract(&sphere, s, &c))
            .map(|back| back.separation(&b));
        let outer = Sphere::new(sphere.center, sphere.radius + s);
        let c = outer.point_towards(&random_unit::<N, _>(rng)).expect("unit");
        let back_and_there = radial_retract(&sphere, s, &c)
            .and_then(|b| radial_project(&sphere, s, &b))
            .map(|again| again.separation(&c));
        match (there_and_back, back_and_there) {
            (Ok(d1), Ok(d2)) => out.record(true, d1.max(d2)),
            _ => out.record(false, f64::INFINITY),
        }
    }
    out
}

/// Number of inner presentation spheres tried per contact element.
pub const PRESENTATIONS: usize = 5;

/// `P ⊢ s` agrees across several internally touching presentation spheres,
/// satisfies the characteristic-point condition, and an off-axis control
/// point at the same distance fails it.
pub fn sphere_independence<const N: usize, R: Rng>(rng: &mut R, trials: usize) -> SuiteOutcome {
    let mut out = SuiteOutcome::new(format!("sphere-independence-{N}d"), 1e-9);
    for _ in 0..trials {
        let normal = random_unit::<N, _>(rng);
        let p = ContactElement::new(random_point::<N, _>(rng), normal).expect("unit normal");
        let s = random_radius(rng);
        let c = p.propagate(s);
        let mut spread: f64 = 0.0;
        let mut ok = true;
        for _ in 0..PRESENTATIONS {
            match p.propagate_via_sphere(s, random_radius(rng)) {
                Ok(via) => spread = spread.max(via.separation(&c)),
                Err(_) => ok = false,
            }
        }
        let tangent = perpendicular(&normal, rng);
        let control = p.base.offset(s.get(), &tangent);
        ok &= p.characteristic_check_oriented(&c, s) == Ok(true);
        ok &= p.characteristic_check(&control, s) == Ok(false);
        out.record(ok, spread);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_pairs_are_exactly_tangent() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 0..2000 {
            let kind = if k % 2 == 0 { TouchKind::External } else { TouchKind::Internal };
            let (s1, s2) = exact_touching_pair::<3, _>(&mut rng, kind);
            assert_eq!(tangency_gap(&s1, &s2).unwrap(), 0.0);
            assert_eq!(touch_classify(&s1, &s2).unwrap().kind(), kind);
            for r in [s1.radius.get(), s2.radius.get()] {
                assert!((RADIUS_RANGE.0..=RADIUS_RANGE.1).contains(&r), "{r}");
            }
            let (s1, s2) = exact_touching_pair::<2, _>(&mut rng, kind);
            assert_eq!(tangency_gap(&s1, &s2).unwrap(), 0.0);
        }
    }

    #[test]
    fn crossing_points_lie_on_both_spheres() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..500 {
            let (s1, s2, pts) = crossing_pair::<3, _>(&mut rng);
            for p in pts {
                assert!(s1.contains(&p) && s2.contains(&p));
            }
        }
    }

    #[test]
    fn small_runs_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        assert!(axiom2_equivalence::<2, _>(&mut rng, 400).passed());
        assert!(axiom1_uniqueness::<3, _>(&mut rng, 400).passed());
        assert!(axiom3_subtouching::<3, _>(&mut rng, 400).passed());
        assert!(reciprocity::<2, _>(&mut rng, 400).passed());
        assert!(sphere_independence::<3, _>(&mut rng, 400).passed());
    }
}
