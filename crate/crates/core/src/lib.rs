//! Barut-Girardello-type SU(1,1) coherent states of the time-dependent Landau
//! problem, their photon-added generalizations, and the machinery to check
//! their mathematical and statistical properties.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod measure;
pub mod quad;
pub mod specfun;
pub mod states;
pub mod statistics;
pub mod wigner;

pub use error::{Error, Result};
