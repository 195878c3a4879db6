use std::collections::VecDeque;

use crate::arith::Scheme;
use crate::bfu::control::{control_for, BfuMode, Control};
use crate::bfu::unified::{unified_bfu_step, BfuIo, MulCounter};
use crate::error::{Error, Result};
use crate::memory::conflict::{check_trace, Bank, CycleAccess, Hazard};
use crate::memory::layout::{pack_coefficients, unpack_coefficients, MemoryGeometry};
use crate::memory::rom::{build_twiddle_rom, TwiddleRom};
use crate::memory::schedule::{generate_addresses, AddressSchedule, Direction};
use crate::poly::{Domain, Polynomial};
use crate::sim::config::CoreConfig;
use crate::sim::report::{Op, SimReport};

/// Two banks with one read and one write port each. Writes become
/// visible `depth` cycles after issue.
struct Machine {
    a: Vec<u128>,
    b: Vec<u128>,
    depth: usize,
    cycle: usize,
    inflight: VecDeque<(usize, Bank, usize, u128)>,
    trace: Vec<CycleAccess>,
}

impl Machine {
    fn new(rows: usize, depth: usize) -> Self {
        Machine {
            a: vec![0; rows],
            b: vec![0; rows],
            depth,
            cycle: 0,
            inflight: VecDeque::new(),
            trace: vec![CycleAccess::default()],
        }
    }

    fn bank(&mut self, bank: Bank) -> &mut Vec<u128> {
        match bank {
            Bank::A => &mut self.a,
            Bank::B => &mut self.b,
        }
    }

    fn land(&mut self) {
        while let Some(&(at, bank, addr, val)) = self.inflight.front() {
            if at > self.cycle {
                break;
            }
            self.inflight.pop_front();
            self.bank(bank)[addr] = val;
        }
    }

    fn read(&mut self, bank: Bank, addr: usize) -> u128 {
        self.trace[self.cycle].reads.push((bank, addr));
        self.bank(bank)[addr]
    }

    fn write(&mut self, bank: Bank, addr: usize, val: u128) {
        self.trace[self.cycle].writes.push((bank, addr));
        self.inflight
            .push_back((self.cycle + self.depth, bank, addr, val));
    }

    fn next_cycle(&mut self) {
        self.cycle += 1;
        self.trace.push(CycleAccess::default());
        self.land();
    }

    /// Lets every in-flight write land; returns the cycles spent.
    fn drain(&mut self) -> usize {
        let busy = self.cycle;
        while !self.inflight.is_empty() {
            self.cycle += 1;
            self.land();
        }
        self.trace.truncate(busy);
        self.cycle = busy;
        self.depth
    }
}

/// Executes operations on one configured core.
#[derive(Debug, Clone)]
pub struct Simulator {
    cfg: CoreConfig,
    roms: Vec<TwiddleRom>,
}

struct OpRun {
    out: Polynomial,
    busy: usize,
    fill_drain: usize,
    hazards: Vec<Hazard>,
    counter: MulCounter,
}

impl Simulator {
    pub fn new(cfg: CoreConfig) -> Result<Self> {
        cfg.validate_structure()?;
        let roms = cfg
            .schemes()
            .into_iter()
            .map(|s| build_twiddle_rom(s, s.params()))
            .collect();
        Ok(Simulator { cfg, roms })
    }

    pub fn config(&self) -> &CoreConfig {
        &self.cfg
    }

    /// Replaces the twiddle ROM contents for one scheme.
    pub fn with_twiddle_rom(mut self, rom: TwiddleRom) -> Result<Self> {
        let scheme = rom.scheme();
        let slot = self
            .roms
            .iter_mut()
            .find(|r| r.scheme() == scheme)
            .ok_or_else(|| {
                Error::Config(format!(
                    "design {} has no {scheme} datapath",
                    self.cfg.design
                ))
            })?;
        *slot = rom;
        Ok(self)
    }

    pub fn rom(&self, scheme: Scheme) -> Result<&TwiddleRom> {
        self.roms
            .iter()
            .find(|r| r.scheme() == scheme)
            .ok_or_else(|| {
                Error::Config(format!(
                    "design {} has no {scheme} datapath",
                    self.cfg.design
                ))
            })
    }

    /// Runs one operation. NTT takes a normal-domain polynomial and returns
    /// the bit-reversed transform; INTT is the converse; PWM multiplies two
    /// bit-reversed transforms.
    pub fn run_op(
        &self,
        scheme: Scheme,
        op: Op,
        inputs: &[&Polynomial],
    ) -> Result<(Polynomial, SimReport)> {
        if op == Op::PolyMul {
            return match inputs {
                [a, b] => self.run_polymul(scheme, a, b),
                _ => Err(Error::Config(format!(
                    "polymul takes 2 inputs, got {}",
                    inputs.len()
                ))),
            };
        }
        let geom = self.cfg.geometry(scheme)?;
        let want = if op == Op::Pwm { 2 } else { 1 };
        if inputs.len() != want {
            return Err(Error::Config(format!(
                "{op} takes {want} input(s), got {}",
                inputs.len()
            )));
        }
        let run = self.exec(scheme, op, &geom, inputs)?;
        let report = self.report(scheme, op, &run, 0);
        Ok((run.out, report))
    }

    /// Full product: the second operand is transformed first (reported as
    /// `operand_prep_cycles`), then NTT, PWM and INTT run back to back.
    pub fn run_polymul(
        &self,
        scheme: Scheme,
        a: &Polynomial,
        b: &Polynomial,
    ) -> Result<(Polynomial, SimReport)> {
        a.expect(scheme, Domain::Normal)?;
        b.expect(scheme, Domain::Normal)?;
        let geom = self.cfg.geometry(scheme)?;
        let prep = self.exec(scheme, Op::Ntt, &geom, &[b])?;
        let na = self.exec(scheme, Op::Ntt, &geom, &[a])?;
        let pw = self.exec(scheme, Op::Pwm, &geom, &[&na.out, &prep.out])?;
        let inv = self.exec(scheme, Op::Intt, &geom, &[&pw.out])?;
        let mut counter = MulCounter::default();
        for r in [&na, &pw, &inv] {
            counter.kyber += r.counter.kyber;
            counter.dilithium += r.counter.dilithium;
            counter.partial_products += r.counter.partial_products;
            counter.steps += r.counter.steps;
        }
        let total = OpRun {
            busy: na.busy + pw.busy + inv.busy,
            fill_drain: na.fill_drain + pw.fill_drain + inv.fill_drain,
            hazards: Vec::new(),
            counter,
            out: inv.out,
        };
        let report = self.report(scheme, Op::PolyMul, &total, prep.busy);
        Ok((total.out, report))
    }

    fn report(&self, scheme: Scheme, op: Op, run: &OpRun, prep: usize) -> SimReport {
        let units = self.cfg.units().max(1);
        SimReport {
            op,
            scheme,
            design: self.cfg.design,
            pipeline_depth: self.cfg.pipeline_depth,
            busy_cycles: run.busy,
            fill_drain_cycles: run.fill_drain,
            operand_prep_cycles: prep,
            hazards: run.hazards.clone(),
            bfu_utilization: run.counter.steps as f64 / (run.busy * units) as f64,
            bram_estimate: self.cfg.bram_estimate().map(|e| e.total()).unwrap_or(0.0),
            multiplications: run.counter,
        }
    }

    fn exec(
        &self,
        scheme: Scheme,
        op: Op,
        geom: &MemoryGeometry,
        inputs: &[&Polynomial],
    ) -> Result<OpRun> {
        let rom = self.rom(scheme)?;
        let p = scheme.params();
        let d = geom.d;
        let mut m = Machine::new(geom.bank_depth(), self.cfg.pipeline_depth);
        let mut counter = MulCounter::default();
        let out_domain = match op {
            Op::Ntt => {
                inputs[0].expect(scheme, Domain::Normal)?;
                Domain::NttBitReversed
            }
            Op::Intt | Op::Pwm => {
                for x in inputs {
                    x.expect(scheme, Domain::NttBitReversed)?;
                }
                if op == Op::Intt {
                    Domain::Normal
                } else {
                    Domain::NttBitReversed
                }
            }
            Op::PolyMul => unreachable!(),
        };
        let (ra, rb) = pack_coefficients(inputs[0], geom)?;
        m.a[..d].copy_from_slice(&ra);
        m.b[..d].copy_from_slice(&rb);
        if op == Op::Pwm {
            // The second operand is staged in Montgomery form.
            let mont = Polynomial::from_fn(scheme, Domain::NttBitReversed, |i| {
                p.to_mont(inputs[1].coeffs()[i])
            });
            let (ra, rb) = pack_coefficients(&mont, geom)?;
            m.a[d..].copy_from_slice(&ra);
            m.b[d..].copy_from_slice(&rb);
        }

        let mut core = Core {
            geom,
            rom,
            scheme,
            counter: &mut counter,
        };
        match op {
            Op::Ntt => {
                let sched = generate_addresses(Direction::Ntt, d)?;
                core.word_stages(&mut m, &sched)?;
                core.lane_stages(&mut m, Direction::Ntt)?;
            }
            Op::Intt => {
                core.lane_stages(&mut m, Direction::Intt)?;
                let sched = generate_addresses(Direction::Intt, d)?;
                core.word_stages(&mut m, &sched)?;
            }
            Op::Pwm => core.pwm(&mut m)?,
            Op::PolyMul => unreachable!(),
        }
        let busy = m.cycle;
        let fill_drain = m.drain();
        let hazards = check_trace(&m.trace, self.cfg.pipeline_depth);
        if let Some(first) = hazards.first() {
            return Err(Error::Hazard {
                op: format!("{scheme} {op}"),
                count: hazards.len(),
                first: first.to_string(),
            });
        }
        let out = unpack_coefficients(&m.a[..d], &m.b[..d], geom, out_domain)?;
        Ok(OpRun {
            out,
            busy,
            fill_drain,
            hazards,
            counter,
        })
    }
}

struct Core<'a> {
    geom: &'a MemoryGeometry,
    rom: &'a TwiddleRom,
    scheme: Scheme,
    counter: &'a mut MulCounter,
}

impl Core<'_> {
    fn mode(dir: Direction) -> BfuMode {
        match dir {
            Direction::Ntt => BfuMode::Ntt,
            Direction::Intt => BfuMode::Intt,
        }
    }

    fn twiddle(&self, dir: Direction, k: usize) -> u32 {
        match dir {
            Direction::Ntt => self.rom.forward(k),
            Direction::Intt => self.rom.inverse(k),
        }
    }

    /// Runs `n` butterflies `(x[i], y[i], w[i])` on the unified units,
    /// two Kyber lanes or one Dilithium lane per step.
    fn butterflies(
        &mut self,
        mode: BfuMode,
        ctrl: &Control,
        ops: &[(u32, u32, u32)],
    ) -> Result<Vec<(u32, u32)>> {
        let mut out = Vec::with_capacity(ops.len());
        let io = |&(in1, in2, in3): &(u32, u32, u32)| BfuIo {
            in1,
            in2,
            in3,
            in4: 0,
        };
        match self.scheme {
            Scheme::Kyber => {
                for pair in ops.chunks(2) {
                    let lanes = [io(&pair[0]), pair.get(1).map(io).unwrap_or_default()];
                    let r = unified_bfu_step(&lanes, mode, self.scheme, ctrl, None, self.counter)?;
                    out.push(r.lanes[0]);
                    if pair.len() == 2 {
                        out.push(r.lanes[1]);
                    }
                }
            }
            Scheme::Dilithium => {
                for op in ops {
                    let r = unified_bfu_step(
                        &[io(op), BfuIo::default()],
                        mode,
                        self.scheme,
                        ctrl,
                        None,
                        self.counter,
                    )?;
                    out.push(r.lanes[0]);
                }
            }
        }
        Ok(out)
    }

    fn word_stages(&mut self, m: &mut Machine, sched: &AddressSchedule) -> Result<()> {
        let dir = sched.direction;
        let mode = Self::mode(dir);
        let ctrl = control_for(self.scheme, mode)?;
        let t = self.geom.t;
        let (mut lo, mut hi) = (vec![0u32; t], vec![0u32; t]);
        for e in sched.entries() {
            let x = m.read(Bank::A, e.addr_a);
            let y = m.read(Bank::B, e.addr_b);
            let (u, v) = if e.b_is_lower_on_read(dir) {
                (y, x)
            } else {
                (x, y)
            };
            self.geom.unpack_word(u, &mut lo);
            self.geom.unpack_word(v, &mut hi);
            let w = self.twiddle(dir, e.twiddle_index);
            let ops: Vec<_> = (0..t).map(|i| (lo[i], hi[i], w)).collect();
            let res = self.butterflies(mode, &ctrl, &ops)?;
            let o1: Vec<u32> = res.iter().map(|r| r.0).collect();
            let o2: Vec<u32> = res.iter().map(|r| r.1).collect();
            let (o1, o2) = (self.geom.pack_word(&o1), self.geom.pack_word(&o2));
            if e.out1_to_b(dir) {
                m.write(Bank::A, e.addr_a, o2);
                m.write(Bank::B, e.addr_b, o1);
            } else {
                m.write(Bank::A, e.addr_a, o1);
                m.write(Bank::B, e.addr_b, o2);
            }
            m.next_cycle();
        }
        Ok(())
    }

    /// Butterfly layers whose partners share a word. Row `r` holds words
    /// `2r` (bank A) and `2r+1` (bank B) in transformed order.
    fn lane_stages(&mut self, m: &mut Machine, dir: Direction) -> Result<()> {
        let t = self.geom.t;
        let min = crate::bfu::transform::min_len(self.scheme);
        let mut lens: Vec<usize> =
            std::iter::successors(Some(t / 2), |&l| (l / 2 >= min).then_some(l / 2))
                .take_while(|&l| l >= min)
                .collect();
        if dir == Direction::Intt {
            lens.reverse();
        }
        let mode = Self::mode(dir);
        let ctrl = control_for(self.scheme, mode)?;
        let mut buf = vec![0u32; t];
        for len in lens {
            for r in 0..self.geom.d {
                let words = [
                    (Bank::A, m.read(Bank::A, r), 2 * r),
                    (Bank::B, m.read(Bank::B, r), 2 * r + 1),
                ];
                let mut ops = Vec::with_capacity(t);
                let mut slots = Vec::with_capacity(t);
                for (wi, &(_, word, w)) in words.iter().enumerate() {
                    self.geom.unpack_word(word, &mut buf);
                    for i in (0..t).filter(|i| (i / len) % 2 == 0) {
                        let k = crate::bfu::transform::twiddle_index(len, w * t + i);
                        ops.push((buf[i], buf[i + len], self.twiddle(dir, k)));
                        slots.push((wi, i));
                    }
                }
                let res = self.butterflies(mode, &ctrl, &ops)?;
                for (wi, &(bank, word, _)) in words.iter().enumerate() {
                    self.geom.unpack_word(word, &mut buf);
                    for (&(sw, i), &(o1, o2)) in slots.iter().zip(&res) {
                        if sw == wi {
                            buf[i] = o1;
                            buf[i + len] = o2;
                        }
                    }
                    m.write(bank, r, self.geom.pack_word(&buf));
                }
                m.next_cycle();
            }
        }
        Ok(())
    }

    /// Pointwise product of region 0 (first operand) and region 1 (second
    /// operand, Montgomery form), result written back to region 0.
    fn pwm(&mut self, m: &mut Machine) -> Result<()> {
        let t = self.geom.t;
        let d = self.geom.d;
        let (mut xa, mut xb) = (vec![0u32; t], vec![0u32; t]);
        for r in 0..d {
            let a_words = [m.read(Bank::A, r), m.read(Bank::B, r)];
            m.next_cycle();
            let b_words = [m.read(Bank::A, d + r), m.read(Bank::B, d + r)];
            let mut x = Vec::with_capacity(2 * t);
            let mut y = Vec::with_capacity(2 * t);
            for (&aw, &bw) in a_words.iter().zip(&b_words) {
                self.geom.unpack_word(aw, &mut xa);
                self.geom.unpack_word(bw, &mut xb);
                x.extend_from_slice(&xa);
                y.extend_from_slice(&xb);
            }
            let first = 2 * r * t;
            let z = match self.scheme {
                Scheme::Kyber => {
                    m.next_cycle();
                    m.next_cycle();
                    self.kyber_pwm_row(&x, &y, first / 2)?
                }
                Scheme::Dilithium => self.dilithium_pwm_row(&x, &y)?,
            };
            m.write(Bank::A, r, self.geom.pack_word(&z[..t]));
            m.write(Bank::B, r, self.geom.pack_word(&z[t..]));
            m.next_cycle();
        }
        Ok(())
    }

    fn kyber_pwm_row(&mut self, x: &[u32], y: &[u32], first_pair: usize) -> Result<Vec<u32>> {
        let c0 = control_for(Scheme::Kyber, BfuMode::Pwm0)?;
        let c1 = control_for(Scheme::Kyber, BfuMode::Pwm1)?;
        let mut z = vec![0u32; x.len()];
        for j in 0..x.len() / 2 {
            let psi = BfuIo {
                in3: self.rom.psi(first_pair + j),
                ..BfuIo::default()
            };
            let lane0 = BfuIo {
                in1: x[2 * j],
                in2: x[2 * j + 1],
                in3: y[2 * j],
                in4: y[2 * j + 1],
            };
            let s0 = unified_bfu_step(
                &[lane0, psi],
                BfuMode::Pwm0,
                Scheme::Kyber,
                &c0,
                None,
                self.counter,
            )?;
            let s1 = unified_bfu_step(
                &[BfuIo::default(), psi],
                BfuMode::Pwm1,
                Scheme::Kyber,
                &c1,
                s0.carry.as_ref(),
                self.counter,
            )?;
            (z[2 * j], z[2 * j + 1]) = s1.lanes[0];
        }
        Ok(z)
    }

    fn dilithium_pwm_row(&mut self, x: &[u32], y: &[u32]) -> Result<Vec<u32>> {
        let ctrl = control_for(Scheme::Dilithium, BfuMode::Pwm)?;
        x.iter()
            .zip(y)
            .map(|(&a, &b)| {
                let lane = BfuIo {
                    in1: a,
                    in3: b,
                    ..BfuIo::default()
                };
                Ok(unified_bfu_step(
                    &[lane, BfuIo::default()],
                    BfuMode::Pwm,
                    Scheme::Dilithium,
                    &ctrl,
                    None,
                    self.counter,
                )?
                .lanes[0]
                    .0)
            })
            .collect()
    }
}
