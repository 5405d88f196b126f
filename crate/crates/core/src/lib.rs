//! Construction, classification and isometric flexion of axial cone-nets.
//!
//! An axial cone-net is a quad mesh whose strips lie on cones with collinear
//! tips. This crate builds the continuous-flexible members of that family
//! (axial C-hedra and P-nets) from a few intrinsic parameters, drives their
//! one-parameter motion, and certifies the result with independent checks.
//!
//! The layers, bottom to top:
//!
//! * [`kinematics`]: profile points, rotations about the axis and the axial
//!   projective maps that carry one row of a net onto the next.
//! * [`linkage`]: the planar linkage in a meridian plane, the tip formula,
//!   compatibility residuals and case classification.
//! * [`net`]: patches, multi-strip P-nets, semi-discrete sampling, flexion
//!   and the edge-parallel transfer.
//! * [`validation`]: planarity, isometry and collinearity certificates plus a
//!   from-scratch rigidity oracle for 3x3 blocks.
//! * [`io`]: JSON spec documents, geometry export (JSON and OBJ).
//!
//! ```
//! use chedra_core::linkage::{tip_b, BranchSign, Sublinkage};
//!
//! let s = 2f64.sqrt();
//! let l0 = Sublinkage::new(s, s, 2.0, s, 0.0).unwrap();
//! let b = tip_b(2.0, &l0, BranchSign::Plus).unwrap();
//! assert!((b - 2.0 * s).abs() < 1e-12);
//! ```

pub mod error;
pub mod exec;
pub mod io;
pub mod kinematics;
pub mod linkage;
pub mod net;
pub mod tol;
pub mod validation;

pub use error::{Error, Result};
pub use kinematics::Point3;
