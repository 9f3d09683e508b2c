//! Wavefront propagation in Euclidean space, built from first-order neighbour
//! points.
//!
//! Touching, contact elements and envelopes are usually phrased with
//! derivatives. This crate phrases them with *monads*: the first-order
//! neighbourhood of a point, where every displacement squares to zero. A
//! monad is stored intensionally as a base point plus a linear constraint, so
//! statements of the form "for all neighbours `b'` of `b`" become small
//! linear-algebra checks that can be decided exactly.
//!
//! The layers, bottom up:
//!
//! - [`scalars`]: positive lengths and the partial distance on distinct points.
//! - [`jets`]: displacements, monad slices, and scalar functions restricted to
//!   a monad.
//! - [`spheres`]: spheres, the touching relation and the radial maps between
//!   concentric spheres.
//! - [`contact`]: oriented contact elements, orthogonality and the
//!   propagation point `P ⊢ s`.
//! - [`fronts`]: sampled oriented hypersurfaces, the wavefront operator
//!   `B ⊢ s`, envelope and semigroup checks, caustic estimation.
//! - [`scene`], [`output`], [`pipeline`], [`suites`]: the batch tool behind
//!   the `huygens` binary.
//!
//! ```
//! use huygens::{Front, Length, Orientation, Point, Primitive};
//!
//! let circle = Primitive::Circle {
//!     center: Point::new([0.0, 0.0]),
//!     radius: Length::new(1.0)?,
//! };
//! let front = Front::sample(&circle, 64, Orientation::Outward)?;
//! let report = front.propagate(Length::new(0.5)?)?;
//! for sample in report.front_out.samples() {
//!     let r = sample.base.dist(&Point::new([0.0, 0.0]))?;
//!     assert!((r.get() - 1.5).abs() < 1e-9);
//! }
//! # Ok::<(), huygens::GeometryError>(())
//! ```

pub mod contact;
mod error;
pub mod fronts;
pub mod jets;
mod linalg;
pub mod output;
pub mod pipeline;
pub mod scalars;
pub mod scene;
pub mod spheres;
pub mod suites;
pub mod tolerance;

pub use contact::{ContactElement, Side};
pub use error::{GeometryError, Result};

pub use fronts::{
    CausticLimit, EnvelopeReport, Front, FrontSource, Orientation, Primitive, PropagationReport,
    Topology,
};
pub use jets::{Displacement, JetScalar, MonadPoint, TangentConstraint};
pub use scalars::{dist, Length, Point};
pub use spheres::{Sphere, TouchKind, TouchResult};

// The guide under `book/` and the README are compiled as doctests so its snippets stay in
// sync with the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/lengths.md")]
    mod lengths {}
    #[doc = include_str!("../../../book/src/neighbours.md")]
    mod neighbours {}
    #[doc = include_str!("../../../book/src/touching.md")]
    mod touching {}
    #[doc = include_str!("../../../book/src/contact.md")]
    mod contact {}
    #[doc = include_str!("../../../book/src/fronts.md")]
    mod fronts {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
