//! Numerical laboratory for O(2)×O(2)-equivariant minimal hypersurfaces of the
//! round four-sphere and of flat four-space.
//!
//! Equivariant hypersurfaces are generated by curves in a two-dimensional orbit
//! space (a flat quadrant or a spherical lune).  This crate integrates the
//! reduced minimality ODE for such generating curves, locates the embedded
//! profile branches by shooting, reconstructs extrinsic geometry and volume-type
//! invariants, counts Morse indices mode by mode through Sturm–Liouville
//! inertia, computes indicial roots and Fredholm weight bookkeeping for the
//! associated cone operators, and runs a Picard iteration that flattens the
//! conformal mean curvature of glued profiles.
//!
//! The crate is `no_std`-compatible (`alloc` required); disable the default
//! `std` feature for embedded use.  All routines are deterministic pure
//! functions of their inputs.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod cone;
pub mod desing;
pub mod geometry;
pub mod jet;
pub mod orbit;
pub mod profile;
pub mod shoot;
pub mod spectrum;
pub mod tridiag;

pub use cone::{ConeOperatorParams, IndicialReport};
pub use geometry::{GeometricSample, QuantityReport};
pub use orbit::{CurveState, OrbitKind, OrbitPoint};
pub use profile::{ProfileCurve, StopReason};
pub use shoot::HsiangProfile;
pub use spectrum::{ModeProblem, SpectralReport};
