use std::collections::HashMap;
use std::fmt;

use crate::memory::schedule::AddressSchedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Bank {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HazardKind {
    /// A read found a write to the same row still in flight.
    StaleRead,
    /// More than one read of a bank in one cycle.
    ReadPort,
    /// More than one write landing in a bank in one cycle.
    WritePort,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hazard {
    pub kind: HazardKind,
    pub cycle: usize,
    pub bank: Bank,
    pub addr: usize,
    /// Cycle that issued the conflicting write, for stale reads.
    pub issued_at: Option<usize>,
}

impl fmt::Display for Hazard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at cycle {} on {:?}[{}]",
            self.kind, self.cycle, self.bank, self.addr
        )?;
        if let Some(c) = self.issued_at {
            write!(f, " (write issued at cycle {c})")?;
        }
        Ok(())
    }
}

/// Memory traffic issued in one cycle. Writes land `pipeline_depth`
/// cycles later.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CycleAccess {
    pub reads: Vec<(Bank, usize)>,
    pub writes: Vec<(Bank, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictReport {
    pub hazards: Vec<Hazard>,
    pub pipeline_depth: usize,
    pub d: usize,
    /// `pipeline_depth <= d / 2`.
    pub depth_bound_ok: bool,
}

impl ConflictReport {
    pub fn is_clean(&self) -> bool {
        self.hazards.is_empty()
    }
}

/// Replays a cycle trace against a memory with one read and one write port
/// per bank.
pub fn check_trace(trace: &[CycleAccess], pipeline_depth: usize) -> Vec<Hazard> {
    let mut pending: HashMap<(Bank, usize), usize> = HashMap::new();
    let mut landing: HashMap<(usize, Bank), usize> = HashMap::new();
    let mut hazards = Vec::new();
    for (cycle, acc) in trace.iter().enumerate() {
        let mut reads_per_bank = [0usize; 2];
        for &(bank, addr) in &acc.reads {
            reads_per_bank[bank as usize] += 1;
            if reads_per_bank[bank as usize] == 2 {
                hazards.push(Hazard {
                    kind: HazardKind::ReadPort,
                    cycle,
                    bank,
                    addr,
                    issued_at: None,
                });
            }
            if let Some(&issued) = pending.get(&(bank, addr)) {
                if cycle - issued < pipeline_depth {
                    hazards.push(Hazard {
                        kind: HazardKind::StaleRead,
                        cycle,
                        bank,
                        addr,
                        issued_at: Some(issued),
                    });
                }
            }
        }
        for &(bank, addr) in &acc.writes {
            pending.insert((bank, addr), cycle);
            let n = landing.entry((cycle + pipeline_depth, bank)).or_insert(0);
            *n += 1;
            if *n == 2 {
                hazards.push(Hazard {
                    kind: HazardKind::WritePort,
                    cycle: cycle + pipeline_depth,
                    bank,
                    addr,
                    issued_at: Some(cycle),
                });
            }
        }
    }
    hazards
}

/// Trace of a word-level schedule: each cycle reads `A[addr_a]` and
/// `B[addr_b]` and writes the results back to the same rows.
pub fn schedule_trace(s: &AddressSchedule) -> Vec<CycleAccess> {
    s.entries()
        .map(|e| {
            let rw = vec![(Bank::A, e.addr_a), (Bank::B, e.addr_b)];
            CycleAccess {
                reads: rw.clone(),
                writes: rw,
            }
        })
        .collect()
}

pub fn check_conflict_free(s: &AddressSchedule, pipeline_depth: usize, d: usize) -> ConflictReport {
    ConflictReport {
        hazards: check_trace(&schedule_trace(s), pipeline_depth),
        pipeline_depth,
        d,
        depth_bound_ok: pipeline_depth <= d / 2,
    }
}
