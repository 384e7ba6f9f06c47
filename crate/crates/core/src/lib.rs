//! Exact computations for finite-dimensional Lie superalgebras over prime
//! fields of odd characteristic: odd nullcones, rank varieties, cohomology
//! and Ext groups in bounded degree, Clifford-filtration associated graded
//! data, and probes for support-theoretic statements.

pub mod error;
pub mod io;
pub mod superlinalg;
pub mod liesuper;
pub mod supermodule;
pub mod budget;
pub mod cohomology;
pub mod varieties;

pub use error::{Error, Result};
