//! Deterministic network-calculus engine for TSN output queues.
//!
//! The crate computes guaranteed worst-case delay, backlog, and output
//! bounds for the TSN scheduler mechanisms CBS, CBS+CDT, TAS, TAS-CBS,
//! and ATS-CBS. All arithmetic is exact: curves are piecewise-linear,
//! ultimately pseudo-periodic functions over arbitrary-precision
//! rationals, so closed-form bounds are reproduced bit for bit.
//!
//! Layering, bottom up:
//!
//! * [`rational`] — exact rational parsing and decimal rendering,
//! * [`curve`] — the curve representation and min-plus operations,
//! * [`arrival`] — arrival curves from 802.1Qat flow parameters,
//! * [`service`] — service curves for the supported schedulers,
//! * [`bounds`] — per-queue and whole-network worst-case analysis,
//! * [`model`] — the network-model file schema and validation,
//! * [`oracle`] — brute-force grid oracle for the min-plus operations,
//! * [`sim`] — discrete-event scheduler simulator and bound checker.

pub mod arrival;
pub mod bounds;
pub mod curve;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod service;
pub mod sim;

pub use curve::{Curve, CurveElement, CurveError, Value};
pub use rational::Rational;
