//! Exact computations on the Kirwan desingularization of the moduli space
//! of rank-2 sheaves with `c1 = 0`, `c2 = 2` on the projective plane.
//!
//! Everything is exact: scalars are rationals with at most one adjoined
//! square root ([`scalar::Scalar`]), and one-parameter families are
//! polynomial in `t`.

pub mod conic_geometry;
pub mod degeneration;
pub mod error;
pub mod exact_linear;
pub mod group_action;
pub mod kirwan_strata;
pub mod linalg;
pub mod pencil;
pub mod poly;
pub mod ring;
pub mod scalar;
pub mod trees;

pub use error::{Error, Result};
pub use scalar::Scalar;
