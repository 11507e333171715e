//! Real moment-angle surfaces, free commuting involutions on them, regular
//! `Z_2^n` covers, and the extremal function `f(g)`.
//!
//! - [`scomplex`]: simplicial complexes on `[m]`, including polygon boundaries.
//! - [`rzk`]: the cubical complex `RZ_K`, its Euler characteristic,
//!   closed-surface checks, orientability and genus.
//! - [`action`]: the coordinate `Z_2^m` action, freeness and the free-rank search.
//! - [`cover`]: one-vertex surface words and explicit `Z_2^n` covers.
//! - [`fgenus`]: bounds and exact values of `f(g)`, the envelope `H(g)`, figure data.

pub mod action;
pub mod cli;
pub mod cover;
pub mod error;
pub mod fgenus;
pub mod gf2;
pub mod lambert;
pub mod rzk;
pub mod scomplex;
pub mod surface;

pub use action::{SignElement, Subgroup};
pub use cover::{CoverComplex, SurfacePresentation};
pub use error::{Error, Result};
pub use gf2::Gf2Matrix;
pub use rzk::{Cell, CubicalSurface};
pub use scomplex::SimplicialComplex;
