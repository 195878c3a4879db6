//! Cycle-level model of the unified core.

pub mod config;
pub mod core;
pub mod latency;
pub mod report;

pub use config::{CoreConfig, Design};
pub use core::Simulator;
pub use latency::latency_model;
pub use report::{Op, SimReport};
