//! Bit-exact model of a unified Kyber/Dilithium NTT polynomial multiplier.
//!
//! The crate is layered bottom-up:
//!
//! * [`arith`]: Montgomery multiplication, modular add/sub/halve and the
//!   shared dual-lane adder.
//! * [`reference`]: quadratic-time oracles.
//! * [`bfu`]: butterflies, basecase PWM and the unified butterfly unit.
//! * [`memory`]: address schedules, bank packing, ROM images, hazard checks
//!   and block-RAM estimates.
//! * [`sim`]: the cycle-level core simulator.

pub mod arith;
pub mod bfu;
pub mod error;
pub mod memory;
pub mod poly;
pub mod reference;
pub mod sim;

pub use arith::{ModulusParams, Scheme, N};
pub use error::{Error, Result};
pub use poly::{Domain, Polynomial};
pub use sim::{latency_model, CoreConfig, Design, Op, SimReport, Simulator};
