use crate::arith::{
    mod_add_half, mont_mul, mont_reduce, pack_kyber_pair, shared_add_sub, unpack_kyber_pair,
    AddSub, LaneMode, ModulusParams, Scheme,
};
use crate::bfu::butterfly::PwmCarry;
use crate::bfu::control::{validate, BfuMode, Control};
use crate::error::{Error, Result};

/// Operands of one lane. `in1`/`in2` are the coefficient pair, `in3` the
/// twiddle (or `b0` during PWM), `in4` is only used by PWM.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BfuIo {
    pub in1: u32,
    pub in2: u32,
    pub in3: u32,
    pub in4: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnifiedOut {
    /// `(out1, out2)` per lane.
    pub lanes: [(u32, u32); 2],
    /// Set after a Kyber `Pwm0` step.
    pub carry: Option<PwmCarry>,
}

/// Multiplier activity, owned by the caller.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MulCounter {
    pub kyber: u64,
    pub dilithium: u64,
    /// 23×12 partial products issued for Dilithium.
    pub partial_products: u64,
    pub steps: u64,
}

/// 23×23-bit product built from two 23×12 partial products.
#[inline]
pub fn fused_mul_23x12(a: u32, b: u32) -> u64 {
    debug_assert!(a < 1 << 23 && b < 1 << 23);
    let lo = a as u64 * (b & 0xFFF) as u64;
    let hi = a as u64 * (b >> 12) as u64;
    lo + (hi << 12)
}

fn kyber_mul(a: u32, b: u32, c: &mut MulCounter) -> u32 {
    c.kyber += 1;
    mont_mul(a, b, &ModulusParams::KYBER)
}

fn dilithium_mul(a: u32, b: u32, c: &mut MulCounter) -> u32 {
    c.dilithium += 1;
    c.partial_products += 2;
    let p = &ModulusParams::DILITHIUM;
    debug_assert!(a < p.q && b < p.q);
    mont_reduce(fused_mul_23x12(a, b), p)
}

fn pair_op(x: (u32, u32), y: (u32, u32), op: AddSub) -> Result<(u32, u32)> {
    let r = shared_add_sub(
        pack_kyber_pair(x.0, x.1),
        pack_kyber_pair(y.0, y.1),
        LaneMode::KyberPair,
        op,
    )?;
    Ok(unpack_kyber_pair(r))
}

fn single_op(x: u32, y: u32, op: AddSub) -> Result<u32> {
    Ok(shared_add_sub(x, y, LaneMode::DilithiumSingle, op)?)
}

/// One cycle of the unified butterfly unit.
///
/// Kyber runs the two lanes as independent butterflies sharing one carry
/// chain split at the guard bit; in PWM modes both lanes cooperate on one
/// coefficient pair (`lane0 = (a0, a1, b0, b1)`, `lane1.in3 = ψ`). Dilithium
/// fuses the lanes: lane 0 carries the operands and lane 1 must be idle.
pub fn unified_bfu_step(
    lanes: &[BfuIo; 2],
    mode: BfuMode,
    scheme: Scheme,
    ctrl: &Control,
    carry: Option<&PwmCarry>,
    counter: &mut MulCounter,
) -> Result<UnifiedOut> {
    validate(scheme, mode, ctrl)?;
    let p = scheme.params();
    for l in lanes {
        p.ensure(&[l.in1, l.in2, l.in3, l.in4])?;
    }
    counter.steps += 1;
    let [l0, l1] = *lanes;
    let mut out = UnifiedOut {
        lanes: [(0, 0); 2],
        carry: None,
    };
    match scheme {
        Scheme::Kyber => match mode {
            BfuMode::Ntt => {
                let t0 = kyber_mul(l0.in2, l0.in3, counter);
                let t1 = kyber_mul(l1.in2, l1.in3, counter);
                let s = pair_op((l0.in1, l1.in1), (t0, t1), AddSub::Add)?;
                let d = pair_op((l0.in1, l1.in1), (t0, t1), AddSub::Sub)?;
                out.lanes = [(s.0, d.0), (s.1, d.1)];
            }
            BfuMode::Intt => {
                let d = pair_op((l0.in1, l1.in1), (l0.in2, l1.in2), AddSub::Sub)?;
                let h0 = mod_add_half(l0.in1, l0.in2, p.q);
                let h1 = mod_add_half(l1.in1, l1.in2, p.q);
                out.lanes = [
                    (h0, kyber_mul(d.0, l0.in3, counter)),
                    (h1, kyber_mul(d.1, l1.in3, counter)),
                ];
            }
            BfuMode::Pwm0 => {
                if carry.is_some() {
                    return Err(Error::PwmProtocol("PWM0 does not take a carry"));
                }
                let m0 = kyber_mul(l0.in1, l0.in3, counter);
                let m1 = kyber_mul(l0.in2, l0.in4, counter);
                let (sum_a, sum_b_mont) = pair_op((l0.in1, l0.in3), (l0.in2, l0.in4), AddSub::Add)?;
                out.lanes = [(m0, m1), (sum_a, sum_b_mont)];
                out.carry = Some(PwmCarry {
                    m0,
                    m1,
                    sum_a,
                    sum_b_mont,
                });
            }
            BfuMode::Pwm1 => {
                let c = carry.ok_or(Error::PwmProtocol("PWM1 without a preceding PWM0 carry"))?;
                p.ensure(&[c.m0, c.m1, c.sum_a, c.sum_b_mont])?;
                let m2 = kyber_mul(c.sum_a, c.sum_b_mont, counter);
                let m3 = kyber_mul(c.m1, l1.in3, counter);
                // lo lane: m0 + m3; hi lane: m2 - m0 - m1.
                let (r0, _) = pair_op((c.m0, 0), (m3, 0), AddSub::Add)?;
                let (t, _) = pair_op((m2, 0), (c.m0, 0), AddSub::Sub)?;
                let (r1, _) = pair_op((t, 0), (c.m1, 0), AddSub::Sub)?;
                out.lanes = [(r0, r1), (0, 0)];
            }
            BfuMode::Pwm => unreachable!("rejected by control validation"),
        },
        Scheme::Dilithium => {
            if l1 != BfuIo::default() {
                return Err(Error::InvalidMode {
                    scheme,
                    mode: "lane 1 must be idle when lanes are fused",
                });
            }
            if carry.is_some() {
                return Err(Error::PwmProtocol("Dilithium steps take no carry"));
            }
            out.lanes[0] = match mode {
                BfuMode::Ntt => {
                    let t = dilithium_mul(l0.in2, l0.in3, counter);
                    (
                        single_op(l0.in1, t, AddSub::Add)?,
                        single_op(l0.in1, t, AddSub::Sub)?,
                    )
                }
                BfuMode::Intt => {
                    let d = single_op(l0.in1, l0.in2, AddSub::Sub)?;
                    (
                        mod_add_half(l0.in1, l0.in2, p.q),
                        dilithium_mul(d, l0.in3, counter),
                    )
                }
                BfuMode::Pwm => (dilithium_mul(l0.in1, l0.in3, counter), 0),
                BfuMode::Pwm0 | BfuMode::Pwm1 => unreachable!("rejected by control validation"),
            };
        }
    }
    Ok(out)
}
