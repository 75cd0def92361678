//! Coherence checking for prevision assessments on conjunctions of
//! conditional events.
//!
//! The crate is `no_std` (it needs `alloc`) and is organised bottom-up:
//!
//! * [`logic`]: atoms, Boolean event expressions, conditional events and the
//!   enumeration of constituents by truth-table sweep.
//! * [`crq`]: the conjunction of conditional events as a conditional random
//!   quantity, with its value on every constituent.
//! * [`tnorm`]: the Frank t-norm family, its n-ary fold and recovery of the
//!   parameter from an assessed triple.
//! * [`coherence`]: the exact linear-programming engine (feasibility of the
//!   convex-hull system, zero-mass index sets, recursion) and coherent
//!   extension intervals.
//! * [`regions`]: closed-form coherence regions and bounds, usable as answers
//!   and as an oracle for the engine.
#![no_std]

extern crate alloc;

pub mod coherence;
pub mod crq;
mod error;
mod hp;
pub mod logic;
pub mod problem;
pub mod rational;
pub mod regions;
mod simplex;
pub mod tnorm;

pub use error::{Error, Result};
pub use problem::AssessmentProblem;
pub use rational::Rational;
