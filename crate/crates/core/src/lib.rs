//! Clique extensions of triangular graphs and the machinery to recognise them.
//!
//! The crate builds the `s`-clique extension of `T(n)` and related families,
//! computes spectra (numerically for discovery, exactly for certification),
//! checks the regularity identities such graphs must satisfy, recovers the
//! system of lines through every vertex and finally runs the staged
//! reconstruction in [`reconstruct::reconstruct`].
//!
//! The crate is `no_std` (with `alloc`) when the default `std` feature is
//! disabled. The `parallel` feature spreads per-vertex work over a rayon pool.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_debug_implementations)]

extern crate alloc;

mod bits;
mod par;

pub mod families;
pub mod graph;
pub mod lines;
pub mod params;
pub mod reconstruct;
pub mod regularity;
pub mod report;
pub mod spectral;
pub mod structure;

pub use graph::{Graph, GraphError, MAX_ORDER};
pub use params::ExtensionParams;
pub use report::{Location, Violation};
pub use spectral::{Eigenvalue, Spectrum};
