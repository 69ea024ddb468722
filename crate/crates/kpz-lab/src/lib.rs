//! A desk-scale stochastic-numerics laboratory for KPZ-type interface growth.
//!
//! The crate is organized around the objects that make the regularized KPZ
//! equation and its Cole–Hopf transform exactly solvable at finite resolution:
//!
//! * [`kernels`] — compactly supported mollifier profiles, their ε-scalings,
//!   self-convolutions, and periodic convolution on a torus grid.
//! * [`fields`] — exact samplers (with closed-form covariance oracles) for the
//!   Gaussian laws that appear as invariant measures: two-sided and pinned
//!   Brownian motion, smeared tilt fields, the lattice Gibbs measure, and
//!   geometric Brownian motion.
//! * [`lattice`] — the discrete-torus height SDE, its Gibbs energy with exact
//!   gradient, and the algebraic identities that make the tilt measure
//!   invariant.
//! * [`spde`] — explicit finite-difference solvers on the torus for the
//!   regularized KPZ equation, the stochastic Burgers equation, and several
//!   stochastic heat equations, plus height wrapping and the nonlinear
//!   residual used by the Boltzmann–Gibbs estimator.
//! * [`chaos`] — Wiener–Itô chaos kernels, the diagram formula, closed-form
//!   second-moment constants, and the static expectations behind the 1/12 and
//!   1/24 constants.
//! * [`stats`] / [`harness`] — seeded-ensemble orchestration, moment
//!   estimators with standard errors, and the full verification suites.

pub mod chaos;
pub mod error;
pub mod fields;
pub mod grid;
pub mod harness;
pub mod kernels;
pub mod lattice;
pub mod report;
pub mod rng;
pub mod spde;
pub mod stats;

pub use error::Error;
