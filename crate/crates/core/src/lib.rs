//! Steady-state solvers for hyperbolic conservation laws on uniform
//! structured grids.
//!
//! The spatial discretization is a fifth-order multi-resolution WENO
//! finite-difference scheme with Lax-Friedrichs flux splitting and local
//! characteristic decomposition. Three fixed-point iterative drivers march
//! the discrete system to steady state:
//!
//! * forward-Euler Jacobi (plain explicit pseudo-time stepping),
//! * TVD-RK3 Jacobi (three-stage strong-stability-preserving stepping),
//! * forward-Euler fast sweeping (Gauss-Seidel updates over four
//!   alternating traversal directions).
//!
//! [`cases`] holds a registry of thirteen benchmark problems (Burgers,
//! shallow water, Euler systems, steady shocks, shock reflection and
//! supersonic flow past flat plates) together with reference accuracy and
//! iteration-count data for regression testing.

pub mod boundary;
pub mod cases;
pub mod flux;
pub mod grid;
pub mod models;
pub mod solver;
pub mod weno;

mod error;

pub use error::SolverError;

use num_traits::{Float, FromPrimitive};
use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Scalar type of every numerical kernel in this crate.
///
/// Any IEEE float works; reaching the benchmark residue thresholds of
/// `1e-12`..`1e-13` requires `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Sum
        + fmt::Debug
        + fmt::Display
        + Send
        + Sync
        + 'static
{
}

/// Shorthand for converting literal constants to the active scalar type.
#[inline]
pub(crate) fn num<T: Scalar>(x: f64) -> T {
    T::from_f64(x).expect("constant not representable in scalar type")
}

// Double-precision aliases for the main public types; the CLI and the
// benchmark registry work at this precision.
pub type Grid64 = grid::Grid<f64>;
pub type State64 = grid::State<f64>;
pub type Model64 = models::Model<f64>;
pub type Simulation64 = solver::Simulation<f64>;
pub type SchemeConfig64 = solver::SchemeConfig<f64>;
pub type CaseSpec64 = cases::CaseSpec<f64>;
