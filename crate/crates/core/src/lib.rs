//! # mpsolve
//!
//! Numerics for anisotropic Orlicz–Sobolev spaces on an interval and a
//! mountain-pass solver for the Dirichlet problem
//!
//! ```text
//! d/dt L_v(t, u, u') = L_x(t, u, u')   on I = [a, b],   u(a) = u(b) = 0,
//! L(t, x, v) = F(t, x, v) + V(t, x) + <f(t), x>
//! ```
//!
//! The crate is organized bottom-up:
//!
//! * [`gfun`] -- G-functions, their conjugates, Simonenko indices, Δ₂/∇₂
//!   probes and the `W^1 L_G -> L^inf` embedding constant.
//! * [`orlicz`] -- grid functions, modulars, Luxemburg norms and randomized
//!   checks of the classical Orlicz inequalities.
//! * [`problem`] -- the Lagrangian triple, sampled hypothesis checks and the
//!   existence gates.
//! * [`action`] -- the discrete action functional, its exact gradient and
//!   Euler–Lagrange residuals.
//! * [`mpsolver`] -- valley point, rim estimate, path deformation and
//!   critical-point refinement.
//! * [`cli`] -- problem files, text reports and the `mpsolve` command
//!   dispatcher.
//!
//! See `examples/` for one runnable program per capability.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod action;
pub mod cli;
pub mod error;
pub mod gfun;
pub mod mpsolver;
pub mod orlicz;
pub mod problem;

mod parallel;

pub use error::{GfunError, OrliczError, ProblemError, SolveError};

/// Seed used by every randomized routine unless the caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED;
