//! Block-RAM footprint estimate.
//!
//! Costs are in 36Kb block equivalents; an 18Kb primitive counts as half a
//! block. Coefficient banks are mapped onto simple dual-port 18Kb
//! primitives using the usual width/depth aspect ratios.

use crate::memory::layout::MemoryGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitive {
    B18,
    B36,
}

impl Primitive {
    pub fn units(self) -> f64 {
        match self {
            Primitive::B18 => 0.5,
            Primitive::B36 => 1.0,
        }
    }
}

/// Maximum data width of an 18Kb simple dual-port primitive at `depth`.
fn max_width_18k(depth: usize) -> usize {
    match depth {
        0..=512 => 36,
        513..=1024 => 18,
        1025..=2048 => 9,
        2049..=4096 => 4,
        4097..=8192 => 2,
        _ => 1,
    }
}

/// Blocks needed for one `width × depth` RAM.
pub fn ram_cost(width_bits: usize, depth: usize) -> f64 {
    let cascade = depth.div_ceil(16384).max(1);
    let per_row = width_bits.div_ceil(max_width_18k(depth.min(16384)));
    (per_row * cascade) as f64 * Primitive::B18.units()
}

#[derive(Debug, Clone, PartialEq)]
pub struct BramEstimate {
    pub coefficient: f64,
    pub twiddle: f64,
    pub address: f64,
}

impl BramEstimate {
    pub fn total(&self) -> f64 {
        self.coefficient + self.twiddle + self.address
    }
}

/// Two coefficient banks of `geom`'s width and doubled depth, plus the
/// given ROM primitives.
pub fn estimate_bram_usage(
    geom: &MemoryGeometry,
    twiddle: &[Primitive],
    address: &[Primitive],
) -> BramEstimate {
    let bank = ram_cost(geom.word_width() as usize, geom.bank_depth());
    BramEstimate {
        coefficient: 2.0 * bank,
        twiddle: twiddle.iter().map(|p| p.units()).sum(),
        address: address.iter().map(|p| p.units()).sum(),
    }
}
