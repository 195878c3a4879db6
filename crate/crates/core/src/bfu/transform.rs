//! In-place fast transforms: Cooley-Tukey forward (standard order in,
//! bit-reversed out) and Gentleman-Sande inverse with per-layer halving.

use crate::arith::{Scheme, N};
use crate::bfu::butterfly::{
    ct_butterfly, dilithium_pwm, gs_butterfly_halving, kyber_pwm0, kyber_pwm1,
};
use crate::error::{Error, Result};
use crate::memory::rom::TwiddleRom;
use crate::poly::{Domain, Polynomial};

/// Smallest butterfly distance: Kyber stops at 2 to keep coefficient pairs.
pub fn min_len(scheme: Scheme) -> usize {
    match scheme {
        Scheme::Kyber => 2,
        Scheme::Dilithium => 1,
    }
}

/// Twiddle index for the butterfly block starting at `start` with distance
/// `len`.
#[inline]
pub fn twiddle_index(len: usize, start: usize) -> usize {
    N / (2 * len) + start / (2 * len)
}

fn check_rom(a: &Polynomial, rom: &TwiddleRom) -> Result<()> {
    if a.scheme() != rom.scheme() {
        return Err(Error::SchemeMismatch {
            expected: rom.scheme(),
            found: a.scheme(),
        });
    }
    Ok(())
}

pub fn ntt_forward(a: &Polynomial, rom: &TwiddleRom) -> Result<Polynomial> {
    check_rom(a, rom)?;
    a.expect(a.scheme(), Domain::Normal)?;
    let p = a.scheme().params();
    let mut c = *a.coeffs();
    let mut len = N / 2;
    while len >= min_len(a.scheme()) {
        for start in (0..N).step_by(2 * len) {
            let w = rom.forward(twiddle_index(len, start));
            for j in start..start + len {
                (c[j], c[j + len]) = ct_butterfly(c[j], c[j + len], w, p);
            }
        }
        len /= 2;
    }
    Ok(Polynomial::from_array(
        a.scheme(),
        Domain::NttBitReversed,
        c,
    ))
}

/// Inverse transform; the `1/m` factor comes entirely from the halving
/// butterflies.
pub fn ntt_inverse(a: &Polynomial, rom: &TwiddleRom) -> Result<Polynomial> {
    check_rom(a, rom)?;
    a.expect(a.scheme(), Domain::NttBitReversed)?;
    let p = a.scheme().params();
    let mut c = *a.coeffs();
    let mut len = min_len(a.scheme());
    while len <= N / 2 {
        for start in (0..N).step_by(2 * len) {
            let w = rom.inverse(twiddle_index(len, start));
            for j in start..start + len {
                (c[j], c[j + len]) = gs_butterfly_halving(c[j], c[j + len], w, p);
            }
        }
        len *= 2;
    }
    Ok(Polynomial::from_array(a.scheme(), Domain::Normal, c))
}

/// Pointwise product of two bit-reversed transforms, both in the normal
/// domain. The second operand is moved into Montgomery form first.
pub fn pwm_bit_reversed(a: &Polynomial, b: &Polynomial, rom: &TwiddleRom) -> Result<Polynomial> {
    check_rom(a, rom)?;
    a.expect(rom.scheme(), Domain::NttBitReversed)?;
    b.expect(rom.scheme(), Domain::NttBitReversed)?;
    let p = a.scheme().params();
    let (x, y) = (a.coeffs(), b.coeffs());
    let mut c = [0u32; N];
    match a.scheme() {
        Scheme::Dilithium => {
            for i in 0..N {
                c[i] = dilithium_pwm(x[i], p.to_mont(y[i]), p);
            }
        }
        Scheme::Kyber => {
            for i in 0..N / 2 {
                let carry = kyber_pwm0(
                    (x[2 * i], x[2 * i + 1]),
                    (p.to_mont(y[2 * i]), p.to_mont(y[2 * i + 1])),
                );
                (c[2 * i], c[2 * i + 1]) = kyber_pwm1(&carry, rom.psi(i));
            }
        }
    }
    Ok(Polynomial::from_array(
        a.scheme(),
        Domain::NttBitReversed,
        c,
    ))
}
