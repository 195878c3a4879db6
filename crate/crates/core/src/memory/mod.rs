//! Two-bank coefficient memory: address schedules, packing, ROM images,
//! hazard checking and block-RAM estimates.

pub mod bram;
pub mod conflict;
pub mod layout;
pub mod rom;
pub mod schedule;

pub use bram::{estimate_bram_usage, ram_cost, BramEstimate, Primitive};
pub use conflict::{
    check_conflict_free, check_trace, Bank, ConflictReport, CycleAccess, Hazard, HazardKind,
};
pub use layout::{pack_coefficients, unpack_coefficients, MemoryGeometry};
pub use rom::{build_twiddle_rom, AddressRom, TwiddleRom};
pub use schedule::{
    generate_addresses, generate_addresses_with, AddressSchedule, Direction, ScheduleEntry,
    ScheduleOptions, ScheduleStage,
};
