use crate::arith::{Scheme, N};
use crate::error::Result;
use crate::sim::config::CoreConfig;
use crate::sim::report::Op;

/// Closed-form busy cycles.
///
/// Transforms issue `stages · n/2 / t` cycles. PWM spends four cycles per
/// memory row for Kyber (two reads, two basecase stages) and two for
/// Dilithium.
pub fn latency_model(cfg: &CoreConfig, scheme: Scheme, op: Op) -> Result<usize> {
    let t = cfg.bfus(scheme)?;
    let rows = N / (2 * t);
    let transform = scheme.stages() as usize * rows;
    let pwm = match scheme {
        Scheme::Kyber => 4 * rows,
        Scheme::Dilithium => 2 * rows,
    };
    Ok(match op {
        Op::Ntt | Op::Intt => transform,
        Op::Pwm => pwm,
        Op::PolyMul => 2 * transform + pwm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::config::Design;

    #[test]
    fn doubling_bfus_halves_transform() {
        let a = latency_model(&CoreConfig::for_design(Design::D1), Scheme::Kyber, Op::Ntt).unwrap();
        let b = latency_model(&CoreConfig::for_design(Design::D2), Scheme::Kyber, Op::Ntt).unwrap();
        assert_eq!(a, 2 * b);
        assert!(latency_model(
            &CoreConfig::for_design(Design::StandaloneKyber),
            Scheme::Dilithium,
            Op::Ntt
        )
        .is_err());
    }
}
