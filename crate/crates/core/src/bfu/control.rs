use std::fmt;

use crate::arith::Scheme;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BfuMode {
    Ntt,
    Intt,
    /// First Kyber basecase stage.
    Pwm0,
    /// Second Kyber basecase stage.
    Pwm1,
    /// Dilithium coefficient-wise product.
    Pwm,
}

impl BfuMode {
    pub fn name(self) -> &'static str {
        match self {
            BfuMode::Ntt => "NTT",
            BfuMode::Intt => "INTT",
            BfuMode::Pwm0 => "PWM0",
            BfuMode::Pwm1 => "PWM1",
            BfuMode::Pwm => "PWM",
        }
    }

    pub fn valid_for(self, scheme: Scheme) -> bool {
        !matches!(
            (scheme, self),
            (Scheme::Kyber, BfuMode::Pwm) | (Scheme::Dilithium, BfuMode::Pwm0 | BfuMode::Pwm1)
        )
    }
}

impl fmt::Display for BfuMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Mux-select bits, most significant first when printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ControlWord {
    pub bits: u16,
    pub width: u8,
}

impl ControlWord {
    pub const fn new(bits: u16, width: u8) -> Self {
        ControlWord { bits, width }
    }
}

impl fmt::Display for ControlWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0w$b}", self.bits, w = self.width as usize)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Control {
    Kyber {
        bfu1: ControlWord,
        bfu2: ControlWord,
    },
    Dilithium(ControlWord),
}

const fn k1(bits: u16) -> ControlWord {
    ControlWord::new(bits, 12)
}

const fn w6(bits: u16) -> ControlWord {
    ControlWord::new(bits, 6)
}

/// Control words per scheme and mode.
pub fn control_for(scheme: Scheme, mode: BfuMode) -> Result<Control> {
    Ok(match (scheme, mode) {
        (Scheme::Kyber, BfuMode::Ntt) => Control::Kyber {
            bfu1: k1(0b0000_0000_1001),
            bfu2: w6(0b000101),
        },
        (Scheme::Kyber, BfuMode::Intt) => Control::Kyber {
            bfu1: k1(0b0010_1111_0100),
            bfu2: w6(0b111010),
        },
        (Scheme::Kyber, BfuMode::Pwm0) => Control::Kyber {
            bfu1: k1(0b1101_0000_1010),
            bfu2: w6(0b001100),
        },
        (Scheme::Kyber, BfuMode::Pwm1) => Control::Kyber {
            bfu1: k1(0b0000_1001_1000),
            bfu2: w6(0b011100),
        },
        (Scheme::Dilithium, BfuMode::Ntt) => Control::Dilithium(w6(0b000101)),
        (Scheme::Dilithium, BfuMode::Intt) => Control::Dilithium(w6(0b111010)),
        (Scheme::Dilithium, BfuMode::Pwm) => Control::Dilithium(w6(0b001100)),
        (scheme, mode) => {
            return Err(Error::InvalidMode {
                scheme,
                mode: mode.name(),
            })
        }
    })
}

/// Checks that `ctrl` is exactly the table row for `(scheme, mode)`.
pub fn validate(scheme: Scheme, mode: BfuMode, ctrl: &Control) -> Result<()> {
    let want = control_for(scheme, mode)?;
    let mismatch = |expected: ControlWord, found: ControlWord| Error::ControlMismatch {
        scheme,
        mode: mode.name(),
        expected: expected.bits,
        found: found.bits,
    };
    match (want, *ctrl) {
        (Control::Kyber { bfu1: e1, bfu2: e2 }, Control::Kyber { bfu1: f1, bfu2: f2 }) => {
            if e1 != f1 {
                return Err(mismatch(e1, f1));
            }
            if e2 != f2 {
                return Err(mismatch(e2, f2));
            }
            Ok(())
        }
        (Control::Dilithium(e), Control::Dilithium(f)) if e == f => Ok(()),
        (Control::Dilithium(e), Control::Dilithium(f)) => Err(mismatch(e, f)),
        _ => Err(Error::InvalidMode {
            scheme,
            mode: "control word of the other scheme",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kyber_rows_print_as_listed() {
        let rows: Vec<String> = [BfuMode::Ntt, BfuMode::Intt, BfuMode::Pwm0, BfuMode::Pwm1]
            .iter()
            .map(|&m| match control_for(Scheme::Kyber, m).unwrap() {
                Control::Kyber { bfu1, bfu2 } => format!("{bfu1} {bfu2}"),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(
            rows,
            [
                "000000001001 000101",
                "001011110100 111010",
                "110100001010 001100",
                "000010011000 011100"
            ]
        );
    }

    #[test]
    fn invalid_modes() {
        assert!(control_for(Scheme::Kyber, BfuMode::Pwm).is_err());
        assert!(control_for(Scheme::Dilithium, BfuMode::Pwm1).is_err());
        assert!(!BfuMode::Pwm0.valid_for(Scheme::Dilithium));
    }

    #[test]
    fn validation_catches_wrong_rows() {
        let ntt = control_for(Scheme::Kyber, BfuMode::Ntt).unwrap();
        assert!(validate(Scheme::Kyber, BfuMode::Ntt, &ntt).is_ok());
        assert!(validate(Scheme::Kyber, BfuMode::Intt, &ntt).is_err());
        assert!(validate(Scheme::Dilithium, BfuMode::Ntt, &ntt).is_err());
        let bad = Control::Kyber {
            bfu1: ControlWord::new(0b101, 12),
            bfu2: ControlWord::new(0b000101, 6),
        };
        assert!(matches!(
            validate(Scheme::Kyber, BfuMode::Ntt, &bad),
            Err(Error::ControlMismatch { .. })
        ));
    }
}
