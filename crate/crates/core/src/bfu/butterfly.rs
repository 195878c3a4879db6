use crate::arith::{mod_add, mod_add_half, mod_sub, mont_mul, ModulusParams};
use crate::error::{Error, Result};

/// Cooley-Tukey butterfly `(a + w·b, a - w·b)` with `w_mont = w·R`.
#[inline]
pub fn ct_butterfly(a: u32, b: u32, w_mont: u32, p: &ModulusParams) -> (u32, u32) {
    let t = mont_mul(b, w_mont, p);
    (mod_add(a, t, p.q), mod_sub(a, t, p.q))
}

/// Gentleman-Sande butterfly with the halving folded in:
/// `((a + b)/2, w·(a - b)/2)` where `w_half_mont = w·2^-1·R`.
#[inline]
pub fn gs_butterfly_halving(a: u32, b: u32, w_half_mont: u32, p: &ModulusParams) -> (u32, u32) {
    (
        mod_add_half(a, b, p.q),
        mont_mul(mod_sub(a, b, p.q), w_half_mont, p),
    )
}

/// Coefficient-wise product; `b_mont` carries the Montgomery factor.
#[inline]
pub fn dilithium_pwm(a: u32, b_mont: u32, p: &ModulusParams) -> u32 {
    mont_mul(a, b_mont, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwmStage {
    Pwm0,
    Pwm1,
}

/// Values handed from the first basecase stage to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PwmCarry {
    /// `a0·b0`
    pub m0: u32,
    /// `a1·b1`
    pub m1: u32,
    /// `a0 + a1`
    pub sum_a: u32,
    /// `(b0 + b1)·R`
    pub sum_b_mont: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PwmStep {
    Partial(PwmCarry),
    Done(u32, u32),
}

/// Karatsuba first half: the two diagonal products and the operand sums.
pub fn kyber_pwm0(a: (u32, u32), b_mont: (u32, u32)) -> PwmCarry {
    let p = &ModulusParams::KYBER;
    PwmCarry {
        m0: mont_mul(a.0, b_mont.0, p),
        m1: mont_mul(a.1, b_mont.1, p),
        sum_a: mod_add(a.0, a.1, p.q),
        sum_b_mont: mod_add(b_mont.0, b_mont.1, p.q),
    }
}

/// Karatsuba second half: `(m0 + ψ·m1, (a0+a1)(b0+b1) - m0 - m1)`.
pub fn kyber_pwm1(c: &PwmCarry, psi_mont: u32) -> (u32, u32) {
    let p = &ModulusParams::KYBER;
    let m2 = mont_mul(c.sum_a, c.sum_b_mont, p);
    let m3 = mont_mul(c.m1, psi_mont, p);
    (
        mod_add(c.m0, m3, p.q),
        mod_sub(mod_sub(m2, c.m0, p.q), c.m1, p.q),
    )
}

/// One stage of the basecase product `(a0 + a1X)(b0 + b1X) mod (X^2 - ψ)`.
///
/// `b` and `psi` are Montgomery-scaled. `Pwm1` must be given the carry
/// returned by `Pwm0`.
pub fn kyber_pwm_pair(
    a: (u32, u32),
    b_mont: (u32, u32),
    psi_mont: u32,
    stage: PwmStage,
    carry: Option<&PwmCarry>,
) -> Result<PwmStep> {
    ModulusParams::KYBER.ensure(&[a.0, a.1, b_mont.0, b_mont.1, psi_mont])?;
    match (stage, carry) {
        (PwmStage::Pwm0, None) => Ok(PwmStep::Partial(kyber_pwm0(a, b_mont))),
        (PwmStage::Pwm0, Some(_)) => Err(Error::PwmProtocol("PWM0 does not take a carry")),
        (PwmStage::Pwm1, Some(c)) => {
            let (r0, r1) = kyber_pwm1(c, psi_mont);
            Ok(PwmStep::Done(r0, r1))
        }
        (PwmStage::Pwm1, None) => Err(Error::PwmProtocol("PWM1 without a preceding PWM0 carry")),
    }
}
