//! Convex-geometry numerics around Minkowski billiards and plank coverings.
//!
//! The crate is organized bottom-up:
//!
//! * [`body`], [`gauge`], [`homothet`]: convex bodies, gauges (possibly
//!   non-symmetric norms) and the minimal covering homothet.
//! * [`billiards`]: shortest closed billiard trajectories for an arbitrary
//!   gauge and a reflection-law certificate.
//! * [`planks`]: plank widths, exact covering verification by cell
//!   enumeration and the related probes.
//! * [`oscillation`]: polynomial fields, steepest-ascent flows and the
//!   oscillation bounds, plus the graph covering lemma.
//! * [`fractional`]: closed-form constants for fractional coverings.
//! * [`ballcut`]: actions of closed characteristics on caps of the round ball.

pub mod ballcut;
pub mod billiards;
pub mod body;
pub mod error;
pub mod fractional;
pub mod gauge;
pub mod homothet;
pub mod hull;
pub mod lp;
pub mod optim;
pub mod oscillation;
pub mod planks;
pub mod special;

/// Column vector in R^d.
pub type Vector = nalgebra::DVector<f64>;

pub use body::{Ball, BodySpec, ConvexBody, Polytope};
pub use error::{Error, Result};
pub use gauge::Gauge;
pub use homothet::{min_homothet_cover, HomothetFit};

/// Shorthand for building a [`Vector`] from a slice.
pub fn vector(xs: &[f64]) -> Vector {
    Vector::from_vec(xs.to_vec())
}
