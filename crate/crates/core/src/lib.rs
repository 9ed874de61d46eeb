//! Metric geometry of central quadrics and confocal systems in `R^n`.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`] is a small dense kernel: bracketed roots, Jacobi
//!   eigendecomposition, one-dimensional null spaces, elementary symmetric
//!   polynomials and a grid plus golden-section minimizer.
//! * [`quadrics`] holds central quadrics in canonical position, conjugate
//!   semi-diameters, the Apollonius invariants and poles of hyperplanes.
//! * [`confocal`] builds the confocal family of an ellipsoid: elliptic
//!   coordinates, the signed axes table, the orthogonal frame of normals at
//!   a point, support distances, the dual system, pole lines, tangency loci
//!   and the Apollonian curve.
//! * [`cones`] covers second-order cones: tangent cones, focal cones, common
//!   edges of confocal cones and intercept lengths.
//! * [`staude`] contains the three-dimensional applications: focal conic
//!   parametrizations, broken-line minimization, focal radii, the string
//!   length of the wire model and the Rytz/Chasles axis constructions.
//!
//! Indices are zero-based throughout. Squared semi-axes are always passed as
//! squares, with the sign of the canonical-form term folded in.

pub mod cones;
pub mod confocal;
mod error;
pub mod numerics;
pub mod quadrics;
pub mod staude;

pub use error::{Error, Result};
