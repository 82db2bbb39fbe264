//! Exact machinery for monochromatic standard simplices in finitely coloured
//! rational space.
//!
//! The crate is `no_std` (with `alloc`). Enable the `std` feature to get a
//! wall-clock [`budget::StdClock`] and `std::error::Error` impls.
//!
//! Layout:
//!
//! - [`rational`], [`simplex`], [`affine`]: exact rationals, points, standard
//!   simplices and the positive diagonal-affine group acting on them.
//! - [`rain`]: planar and n-dimensional slanted rains, membership, sub-rain
//!   extraction and the divisibility lemma behind it.
//! - [`vdw`]: monochromatic progression / grid search, exact small van der
//!   Waerden numbers and the symbolic `SR` recursion.
//! - [`coloring`]: pure colouring oracles.
//! - [`finder`]: certificate-producing search, verification and a brute-force
//!   oracle.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod affine;
pub mod budget;
pub mod coloring;
pub mod error;
pub mod finder;
pub mod rain;
pub mod rational;
pub mod simplex;
pub mod vdw;

pub use affine::{orbit_witness, DiagonalAffineMap};
pub use budget::{Clock, NoClock, SearchBudget};
pub use coloring::{Coloring, ColoringSpec};
pub use error::Error;
pub use finder::{
    brute_force_unit_simplices, find_scaled, find_unit_simplex, find_unit_triangle,
    verify_certificate, Certificate, SearchError, TraceStep,
};
pub use rain::{egyptian_step, f_len, f_len_nd, Rain2D, RainNd};
pub use rational::{rat, Point, Rational};
pub use simplex::StandardSimplex;
pub use vdw::{find_mono_ap, find_mono_cube, vdw_number, ApWitness, GridWitness, SrExpr};

#[cfg(feature = "std")]
pub use budget::StdClock;
