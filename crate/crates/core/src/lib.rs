//! Approximate and exact maximum empty boxes and hypercubes among points in
//! the unit hypercube.
//!
//! * [`approx`]: the (1-eps)-approximation for boxes and hypercubes.
//! * [`oracle`]: brute-force exact optima and maximal-box enumeration.
//! * [`maximal`]: fast enumeration of maximal empty boxes.
//! * [`gridcount`]: grid bucketing and prefix counts.
//! * [`pointgen`]: low-discrepancy sets and other test configurations.
//! * [`bounds`]: closed-form volume and work bounds.
//! * [`cli`] and [`verify`]: the command-line front end and its checks.

pub mod approx;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod gridcount;
pub mod maximal;
pub mod oracle;
pub mod pointgen;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{normalize_to_unit, AffineTransform, OpenBox, PointSet};
