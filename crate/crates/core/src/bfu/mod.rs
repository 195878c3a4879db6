//! Butterfly datapath: standalone butterflies and PWM, the mode-driven
//! unified unit, and fast transforms built from them.

pub mod butterfly;
pub mod control;
pub mod transform;
pub mod unified;

pub use butterfly::{
    ct_butterfly, dilithium_pwm, gs_butterfly_halving, kyber_pwm0, kyber_pwm1, kyber_pwm_pair,
    PwmCarry, PwmStage, PwmStep,
};
pub use control::{control_for, BfuMode, Control, ControlWord};
pub use transform::{ntt_forward, ntt_inverse, pwm_bit_reversed};
pub use unified::{fused_mul_23x12, unified_bfu_step, BfuIo, MulCounter, UnifiedOut};
