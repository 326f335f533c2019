//! Pseudospectral solver for the corotational Maxwell-α and Euler-α equations
//! on the periodic box, together with a harness that checks the
//! dissipative-solution inequality, energy estimates and the abstract
//! dissipative-ODE framework numerically.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alpha;
pub mod check;
pub mod error;
pub mod fields;
pub mod io;
mod kernels;
pub mod ode;
pub mod solver;
pub mod spectral;

pub use error::{Error, Result};
pub use fields::{PhysicalParams, StressField, VelocityField, VorticityField};
pub use solver::{run, SimConfig, SolverState, Trajectory};
pub use spectral::{Grid, ScalarField, SobolevIndex};
