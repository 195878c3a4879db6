use std::fmt;
use std::fmt::Write as _;

use crate::arith::Scheme;
use crate::bfu::MulCounter;
use crate::memory::conflict::Hazard;
use crate::sim::config::Design;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Ntt,
    Intt,
    Pwm,
    PolyMul,
}

impl Op {
    pub fn name(self) -> &'static str {
        match self {
            Op::Ntt => "ntt",
            Op::Intt => "intt",
            Op::Pwm => "pwm",
            Op::PolyMul => "polymul",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub op: Op,
    pub scheme: Scheme,
    pub design: Design,
    pub pipeline_depth: usize,
    /// Issue cycles of the operation.
    pub busy_cycles: usize,
    /// Pipeline fill and drain on top of `busy_cycles`.
    pub fill_drain_cycles: usize,
    /// Cycles spent transforming the second operand of a multiplication.
    pub operand_prep_cycles: usize,
    pub hazards: Vec<Hazard>,
    pub bfu_utilization: f64,
    pub bram_estimate: f64,
    pub multiplications: MulCounter,
}

impl SimReport {
    pub fn total_cycles(&self) -> usize {
        self.busy_cycles + self.fill_drain_cycles
    }

    /// Flat `key=value` lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        let m = &self.multiplications;
        let _ = writeln!(s, "op={}", self.op);
        let _ = writeln!(s, "scheme={}", self.scheme);
        let _ = writeln!(s, "design={}", self.design);
        let _ = writeln!(s, "pipeline_depth={}", self.pipeline_depth);
        let _ = writeln!(s, "busy_cycles={}", self.busy_cycles);
        let _ = writeln!(s, "fill_drain_cycles={}", self.fill_drain_cycles);
        let _ = writeln!(s, "operand_prep_cycles={}", self.operand_prep_cycles);
        let _ = writeln!(s, "hazards={}", self.hazards.len());
        let _ = writeln!(s, "bfu_utilization={:.4}", self.bfu_utilization);
        let _ = writeln!(s, "bram_estimate={}", self.bram_estimate);
        let _ = writeln!(s, "kyber_multiplications={}", m.kyber);
        let _ = writeln!(s, "dilithium_multiplications={}", m.dilithium);
        let _ = writeln!(s, "partial_products={}", m.partial_products);
        s
    }
}
