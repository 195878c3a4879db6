//! Modular arithmetic primitives shared by the Kyber and Dilithium datapaths.
//!
//! Coefficients are plain `u32` values kept in the canonical range `[0, q)`.
//! The hot functions only `debug_assert!` their preconditions; use
//! [`ModulusParams::ensure`] where inputs come from outside the crate.

use std::fmt;

use thiserror::Error;

/// Ring degree shared by both schemes.
pub const N: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Kyber,
    Dilithium,
}

impl Scheme {
    pub const ALL: [Scheme; 2] = [Scheme::Kyber, Scheme::Dilithium];

    pub fn params(self) -> &'static ModulusParams {
        match self {
            Scheme::Kyber => &ModulusParams::KYBER,
            Scheme::Dilithium => &ModulusParams::DILITHIUM,
        }
    }

    /// Number of butterfly layers of the forward transform (7 for Kyber's
    /// incomplete NTT, 8 for Dilithium).
    pub fn stages(self) -> u32 {
        match self {
            Scheme::Kyber => 7,
            Scheme::Dilithium => 8,
        }
    }

    /// Bits per coefficient slot in a memory word.
    pub fn slot_bits(self) -> u32 {
        match self {
            Scheme::Kyber => 12,
            Scheme::Dilithium => 24,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Kyber => "kyber",
            Scheme::Dilithium => "dilithium",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "kyber" => Ok(Scheme::Kyber),
            "dilithium" => Ok(Scheme::Dilithium),
            _ => Err(ArithError::UnknownScheme(s.to_string())),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("coefficient {value} out of range for modulus {q}")]
    OutOfRange { value: u32, q: u32 },
    #[error("malformed packed word {word:#x}: {reason}")]
    MalformedPacking { word: u32, reason: &'static str },
    #[error("unknown scheme '{0}'")]
    UnknownScheme(String),
}

/// Per-scheme modulus constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulusParams {
    pub scheme: Scheme,
    pub q: u32,
    /// `q * q_prime == -1 (mod R)`.
    pub q_prime: u32,
    /// log2 of the Montgomery radix.
    pub r_bits: u32,
    pub coeff_bits: u32,
    pub n: usize,
    /// Primitive root driving the transform: a 256th root of unity for
    /// Kyber, a 512th root for Dilithium.
    pub root: u32,
}

impl ModulusParams {
    pub const KYBER: ModulusParams = ModulusParams {
        scheme: Scheme::Kyber,
        q: 3329,
        q_prime: 3327,
        r_bits: 12,
        coeff_bits: 12,
        n: N,
        root: 17,
    };

    pub const DILITHIUM: ModulusParams = ModulusParams {
        scheme: Scheme::Dilithium,
        q: 8_380_417,
        q_prime: 8_380_415,
        r_bits: 23,
        coeff_bits: 23,
        n: N,
        root: 1753,
    };

    #[inline]
    pub fn r(&self) -> u64 {
        1u64 << self.r_bits
    }

    #[inline]
    pub fn r_mask(&self) -> u64 {
        self.r() - 1
    }

    /// `R mod q`, the Montgomery image of 1.
    pub fn mont_one(&self) -> u32 {
        (self.r() % self.q as u64) as u32
    }

    /// `R^2 mod q`; `mont_mul(x, r2)` moves `x` into Montgomery form.
    pub fn r2(&self) -> u32 {
        let r = self.r() % self.q as u64;
        (r * r % self.q as u64) as u32
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let q = self.q as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % q;
            }
            b = b * b % q;
            exp >>= 1;
        }
        acc as u32
    }

    /// Inverse modulo the (prime) modulus. `inv(0)` is 0.
    pub fn inv(&self, a: u32) -> u32 {
        self.pow(a, (self.q - 2) as u64)
    }

    /// Plain `a * b mod q` with wide arithmetic, no Montgomery factor.
    #[inline]
    pub fn mul_plain(&self, a: u32, b: u32) -> u32 {
        (a as u64 * b as u64 % self.q as u64) as u32
    }

    /// Montgomery form `x * R mod q`.
    pub fn to_mont(&self, x: u32) -> u32 {
        mont_mul(x, self.r2(), self)
    }

    pub fn from_mont(&self, x: u32) -> u32 {
        mont_mul(x, 1, self)
    }

    pub fn ensure(&self, values: &[u32]) -> Result<(), ArithError> {
        match values.iter().find(|&&v| v >= self.q) {
            Some(&value) => Err(ArithError::OutOfRange { value, q: self.q }),
            None => Ok(()),
        }
    }
}

/// Montgomery product `a * b * R^-1 mod q`.
///
/// `t = a*b; m = (t*q') mod R; u = (t + m*q) / R`, followed by one
/// conditional subtraction. With `a, b < q < R` the quotient `u` is below
/// `2q`, so the result lands in `[0, q)`.
#[inline]
pub fn mont_mul(a: u32, b: u32, p: &ModulusParams) -> u32 {
    debug_assert!(a < p.q && b < p.q, "mont_mul operands out of range");
    mont_reduce(a as u64 * b as u64, p)
}

/// Montgomery reduction of a double-width product `t < q * R`.
#[inline]
pub fn mont_reduce(t: u64, p: &ModulusParams) -> u32 {
    debug_assert!(t < p.q as u64 * p.r());
    let m = (t & p.r_mask()).wrapping_mul(p.q_prime as u64) & p.r_mask();
    let u = (t + m * p.q as u64) >> p.r_bits;
    let u = u as u32;
    if u >= p.q {
        u - p.q
    } else {
        u
    }
}

#[inline]
pub fn mod_add(a: u32, b: u32, q: u32) -> u32 {
    debug_assert!(a < q && b < q);
    let s = a + b;
    if s >= q {
        s - q
    } else {
        s
    }
}

/// `(a - b) mod q`; the sign bit of the raw difference selects the `+q`
/// correction.
#[inline]
pub fn mod_sub(a: u32, b: u32, q: u32) -> u32 {
    debug_assert!(a < q && b < q);
    let d = a.wrapping_sub(b);
    if d >> 31 == 1 {
        d.wrapping_add(q)
    } else {
        d
    }
}

/// `(a + b) / 2 mod q` for odd `q`, using the four-way select on
/// magnitude and parity of the raw sum followed by one right shift.
#[inline]
pub fn mod_add_half(a: u32, b: u32, q: u32) -> u32 {
    debug_assert!(a < q && b < q && q & 1 == 1);
    let s = a + b;
    let odd = s & 1 == 1;
    // s == q is odd and lands in the first arm, giving 0.
    let pre = match (s >= q, odd) {
        (true, true) => s - q,
        (true, false) => s,
        (false, true) => s + q,
        (false, false) => s,
    };
    pre >> 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaneMode {
    /// Two independent 12-bit Kyber coefficients per 24-bit word.
    KyberPair,
    /// One 23-bit Dilithium coefficient spread over both lanes.
    DilithiumSingle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddSub {
    Add,
    Sub,
}

const LANE_BITS: u32 = 12;
const LANE_MASK: u32 = (1 << LANE_BITS) - 1;

/// Guard-bit selects for the shared adder: `(sel1, sel2)` are the bits
/// inserted at position 12 of the first and second operand respectively.
pub fn guard_selects(mode: LaneMode, op: AddSub) -> (u32, u32) {
    match (mode, op) {
        (LaneMode::KyberPair, AddSub::Sub) | (LaneMode::DilithiumSingle, AddSub::Add) => (1, 0),
        (LaneMode::KyberPair, AddSub::Add) | (LaneMode::DilithiumSingle, AddSub::Sub) => (0, 0),
    }
}

#[inline]
fn insert_guard(word: u32, guard: u32) -> u32 {
    (word & LANE_MASK) | (guard << LANE_BITS) | ((word >> LANE_BITS) << (LANE_BITS + 1))
}

/// One pass through the shared 25-bit carry chain.
///
/// Returns the 26-bit raw result: low lane in bits 0..12, the guard
/// position in bit 12, the high lane in bits 13..25 and the carry out in
/// bit 25.
pub fn shared_carry_chain(x: u32, y: u32, mode: LaneMode, op: AddSub) -> u32 {
    const CHAIN_MASK: u32 = (1 << 25) - 1;
    let (sel1, sel2) = guard_selects(mode, op);
    let xe = insert_guard(x, sel1);
    let ye = insert_guard(y, sel2);
    match op {
        AddSub::Add => xe + ye,
        AddSub::Sub => xe + (!ye & CHAIN_MASK) + 1,
    }
}

/// Shared adder/subtractor working either as two Kyber lanes or one
/// Dilithium coefficient.
///
/// Kyber words pack the low lane in bits 0..12 and the high lane in bits
/// 12..24. A Dilithium word holds one coefficient in bits 0..23.
pub fn shared_add_sub(x: u32, y: u32, mode: LaneMode, op: AddSub) -> Result<u32, ArithError> {
    validate_packed(x, mode)?;
    validate_packed(y, mode)?;
    let raw = shared_carry_chain(x, y, mode, op);
    let lo = raw & LANE_MASK;
    let guard = (raw >> LANE_BITS) & 1;
    let hi = (raw >> (LANE_BITS + 1)) & LANE_MASK;
    let carry_out = raw >> 25;

    Ok(match mode {
        LaneMode::KyberPair => {
            let q = ModulusParams::KYBER.q;
            let lo = correct_lane(lo, guard, q, LANE_BITS, op);
            let hi = correct_lane(hi, carry_out, q, LANE_BITS, op);
            lo | (hi << LANE_BITS)
        }
        LaneMode::DilithiumSingle => {
            let q = ModulusParams::DILITHIUM.q;
            let value = lo | (hi << LANE_BITS);
            correct_lane(value, carry_out, q, 2 * LANE_BITS, op)
        }
    })
}

/// Modular correction of one lane given its raw `width`-bit result and the
/// carry leaving the lane.
#[inline]
fn correct_lane(raw: u32, carry: u32, q: u32, width: u32, op: AddSub) -> u32 {
    let mask = (1u32 << width) - 1;
    match op {
        AddSub::Add => {
            let s = raw | (carry << width);
            if s >= q {
                s - q
            } else {
                s
            }
        }
        // carry == 1 means no borrow.
        AddSub::Sub => {
            if carry == 1 {
                raw
            } else {
                raw.wrapping_add(q) & mask
            }
        }
    }
}

fn validate_packed(word: u32, mode: LaneMode) -> Result<(), ArithError> {
    if word >> (2 * LANE_BITS) != 0 {
        return Err(ArithError::MalformedPacking {
            word,
            reason: "bits above position 24 are set",
        });
    }
    match mode {
        LaneMode::KyberPair => {
            let q = ModulusParams::KYBER.q;
            if word & LANE_MASK >= q || word >> LANE_BITS >= q {
                return Err(ArithError::MalformedPacking {
                    word,
                    reason: "Kyber lane not below q",
                });
            }
        }
        LaneMode::DilithiumSingle => {
            if word >= ModulusParams::DILITHIUM.q {
                return Err(ArithError::MalformedPacking {
                    word,
                    reason: "Dilithium coefficient not below q",
                });
            }
        }
    }
    Ok(())
}

pub fn pack_kyber_pair(lo: u32, hi: u32) -> u32 {
    (lo & LANE_MASK) | ((hi & LANE_MASK) << LANE_BITS)
}

pub fn unpack_kyber_pair(word: u32) -> (u32, u32) {
    (word & LANE_MASK, (word >> LANE_BITS) & LANE_MASK)
}
