//! Exact computation and verification of the relations between Poincaré
//! series of weighted homogeneous surface singularities and characteristic
//! polynomials of Coxeter elements (monodromy), including folding to
//! boundary singularities and the (generalized) McKay correspondence.

pub mod catalog;
pub mod cli;
pub mod error;
pub mod frame;
pub mod lattice;
pub mod mckay;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
pub use frame::{frame_to_ratfunc, ratfunc_to_frame, saito_dual, FrameShape};
pub use poly::{charpoly, ratfunc_equal, series_expand, IntPoly, RatFunc, SeriesPrefix};
