//! Spin operators, Foldy-Wouthuysen transform, Wigner transport and spin
//! entropy of a free massive Dirac particle.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod clifford;
pub mod density;
pub mod error;
pub mod kinematics;
pub mod spin_operators;
pub mod spinor;
pub mod transport;
pub mod verify;

pub use error::{Error, Result};
