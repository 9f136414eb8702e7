//! Moving-boundary simulation engine for Hele-Shaw type problems.
//!
//! A closed polygonal interface is evolved under either a time-dependent-gap
//! pressure model or a magnetic-fluid model. Each time step solves a
//! Dirichlet--Laplace problem by the method of fundamental solutions with a
//! flux constraint that preserves the fluid volume `A(t) h(t)`, converts the
//! potential gradient into normal velocities, and adds tangential velocities
//! from the asymptotic uniform distribution method so that vertex spacing
//! stays uniform. The magnetic model additionally estimates a magnetostatic
//! potential on the boundary by Monte Carlo integration over the domain.
//!
//! The `helecell` binary drives batch runs from a JSON config and writes
//! CSV snapshots, CSV diagnostics, and optional SVG renderings.

pub mod config;
pub mod error;
pub mod evolution;
pub mod geometry;
pub mod linalg;
pub mod magnetostatics;
pub mod mfs;
pub mod model;
pub mod output;
pub mod udm;

pub use error::{Error, Result};
