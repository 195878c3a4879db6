use crate::error::{Error, Result};

/// Transform direction; `ch` in the address generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Ntt,
    Intt,
}

impl Direction {
    pub fn ch(self) -> u8 {
        match self {
            Direction::Ntt => 0,
            Direction::Intt => 1,
        }
    }
}

/// One cycle of a word-level stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleEntry {
    pub addr_a: usize,
    pub addr_b: usize,
    pub swap: bool,
    pub twiddle_index: usize,
    /// Parity of the span block containing `addr_a`. Together with `swap`
    /// it fixes the lane routing on read and write.
    pub block_odd: bool,
}

impl ScheduleEntry {
    /// Whether bank B supplies the lower-index butterfly input.
    pub fn b_is_lower_on_read(&self, dir: Direction) -> bool {
        match dir {
            Direction::Ntt => self.block_odd,
            Direction::Intt => self.swap,
        }
    }

    /// Whether the first butterfly output is written to bank B.
    pub fn out1_to_b(&self, dir: Direction) -> bool {
        match dir {
            Direction::Ntt => self.swap,
            Direction::Intt => self.block_odd,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleStage {
    /// Distance, in words, between the two butterfly operands.
    pub span: usize,
    pub entries: Vec<ScheduleEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressSchedule {
    pub direction: Direction,
    pub d: usize,
    pub stages: Vec<ScheduleStage>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleOptions {
    /// Emit the second half of the first forward stage in reverse order.
    pub reverse_first_stage_tail: bool,
}

impl Default for ScheduleOptions {
    fn default() -> Self {
        ScheduleOptions {
            reverse_first_stage_tail: true,
        }
    }
}

fn check_depth(d: usize) -> Result<()> {
    if d < 2 || !d.is_power_of_two() {
        return Err(Error::InvalidDepth(d));
    }
    Ok(())
}

fn spans(direction: Direction, d: usize) -> Vec<usize> {
    let stages = (2 * d).trailing_zeros();
    let mut v: Vec<usize> = (0..stages).map(|i| d >> i).collect();
    if direction == Direction::Intt {
        v.reverse();
    }
    v
}

fn entry(addr_a: usize, addr_b: usize, swap: bool, span: usize, d: usize) -> ScheduleEntry {
    ScheduleEntry {
        addr_a,
        addr_b,
        swap,
        twiddle_index: d / span + addr_a / span,
        block_odd: (addr_a / span) % 2 == 1,
    }
}

pub fn generate_addresses(direction: Direction, d: usize) -> Result<AddressSchedule> {
    generate_addresses_with(direction, d, ScheduleOptions::default())
}

/// Address generator with the alternating `k1`/`k2` walk.
///
/// Each span block `[j, j+span)` is visited from both ends: even steps
/// read `(A[k1], B[k2])`, odd steps read `(A[k2], B[k1])` with the swap
/// flag set and then move both pointers inward.
pub fn generate_addresses_with(
    direction: Direction,
    d: usize,
    opts: ScheduleOptions,
) -> Result<AddressSchedule> {
    check_depth(d)?;
    let mut stages = Vec::new();
    for (si, span) in spans(direction, d).into_iter().enumerate() {
        let mut entries = Vec::with_capacity(d);
        for j in (0..d).step_by(span) {
            let (mut k1, mut k2) = (j, j + span - 1);
            for k in 0..span {
                if k % 2 == 0 {
                    entries.push(entry(k1, k2, false, span, d));
                } else {
                    entries.push(entry(k2, k1, true, span, d));
                    k1 += 1;
                    k2 -= 1;
                }
            }
        }
        if direction == Direction::Ntt && si == 0 && opts.reverse_first_stage_tail {
            entries[d / 2..].reverse();
        }
        stages.push(ScheduleStage { span, entries });
    }
    Ok(AddressSchedule {
        direction,
        d,
        stages,
    })
}

impl AddressSchedule {
    /// Cycles in one direction's word-level schedule.
    pub fn cycles(d: usize) -> Result<usize> {
        check_depth(d)?;
        Ok(d * (2 * d).trailing_zeros() as usize)
    }

    pub fn entries(&self) -> impl Iterator<Item = &ScheduleEntry> {
        self.stages.iter().flat_map(|s| s.entries.iter())
    }

    /// Rebuilds a schedule from raw `(addr_a, addr_b, swap)` words.
    pub fn from_triples(
        direction: Direction,
        d: usize,
        triples: &[(usize, usize, bool)],
    ) -> Result<Self> {
        let total = Self::cycles(d)?;
        if triples.len() != total {
            return Err(Error::Length {
                expected: total,
                found: triples.len(),
            });
        }
        let mut stages = Vec::new();
        for (span, chunk) in spans(direction, d).into_iter().zip(triples.chunks(d)) {
            let mut entries = Vec::with_capacity(d);
            for &(a, b, swap) in chunk {
                if a >= d || b >= d {
                    return Err(Error::Geometry(format!(
                        "address ({a}, {b}) outside depth {d}"
                    )));
                }
                entries.push(entry(a, b, swap, span, d));
            }
            stages.push(ScheduleStage { span, entries });
        }
        Ok(AddressSchedule {
            direction,
            d,
            stages,
        })
    }
}
