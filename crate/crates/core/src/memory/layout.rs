use crate::arith::{Scheme, N};
use crate::error::{Error, Result};
use crate::poly::{Domain, Polynomial};

/// Coefficient memory shape for one scheme: `t` coefficients per word and
/// `d = n / 2t` words per bank and polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryGeometry {
    pub scheme: Scheme,
    pub t: usize,
    pub d: usize,
}

impl MemoryGeometry {
    pub fn new(scheme: Scheme, t: usize) -> Result<Self> {
        let min_t = match scheme {
            Scheme::Kyber => 2,
            Scheme::Dilithium => 1,
        };
        // Words are modelled as u128.
        if !t.is_power_of_two()
            || t < min_t
            || N / (2 * t) < 2
            || t as u32 * scheme.slot_bits() > 128
        {
            return Err(Error::Geometry(format!(
                "{t} coefficients per word is not supported for {scheme}"
            )));
        }
        Ok(MemoryGeometry {
            scheme,
            t,
            d: N / (2 * t),
        })
    }

    pub fn slot_bits(&self) -> u32 {
        self.scheme.slot_bits()
    }

    pub fn word_width(&self) -> u32 {
        self.t as u32 * self.slot_bits()
    }

    /// Words per bank when both operands are resident.
    pub fn bank_depth(&self) -> usize {
        2 * self.d
    }

    /// Butterfly layers that move data between words.
    pub fn word_stages(&self) -> usize {
        (2 * self.d).trailing_zeros() as usize
    }

    /// Butterfly layers that stay inside one word.
    pub fn lane_stages(&self) -> usize {
        self.scheme.stages() as usize - self.word_stages()
    }

    pub fn pack_word(&self, coeffs: &[u32]) -> u128 {
        debug_assert_eq!(coeffs.len(), self.t);
        coeffs.iter().enumerate().fold(0u128, |w, (i, &c)| {
            w | (c as u128) << (i as u32 * self.slot_bits())
        })
    }

    pub fn unpack_word(&self, word: u128, out: &mut [u32]) {
        let mask = (1u128 << self.slot_bits()) - 1;
        for (i, slot) in out.iter_mut().enumerate().take(self.t) {
            *slot = ((word >> (i as u32 * self.slot_bits())) & mask) as u32;
        }
    }

    /// `(bank, row)` of logical word `w` for a polynomial in `domain`.
    ///
    /// Normal order keeps the first half in bank A and mirrors the second
    /// half into bank B; after a forward transform even words sit in A and
    /// odd words in B.
    pub fn locate(&self, w: usize, domain: Domain) -> (bool, usize) {
        let d = self.d;
        match domain {
            Domain::Normal | Domain::NttStandardOrder => {
                if w < d {
                    (false, w)
                } else {
                    (true, 2 * d - 1 - w)
                }
            }
            Domain::NttBitReversed => (w % 2 == 1, w / 2),
        }
    }
}

/// Splits a polynomial over the two banks, one region of `d` words each.
pub fn pack_coefficients(a: &Polynomial, geom: &MemoryGeometry) -> Result<(Vec<u128>, Vec<u128>)> {
    if a.scheme() != geom.scheme {
        return Err(Error::SchemeMismatch {
            expected: geom.scheme,
            found: a.scheme(),
        });
    }
    if a.domain() == Domain::NttStandardOrder {
        return Err(Error::DomainMismatch {
            expected: Domain::NttBitReversed,
            found: a.domain(),
        });
    }
    let mut bank_a = vec![0u128; geom.d];
    let mut bank_b = vec![0u128; geom.d];
    for (w, chunk) in a.coeffs().chunks(geom.t).enumerate() {
        let (in_b, row) = geom.locate(w, a.domain());
        let word = geom.pack_word(chunk);
        if in_b {
            bank_b[row] = word;
        } else {
            bank_a[row] = word;
        }
    }
    Ok((bank_a, bank_b))
}

pub fn unpack_coefficients(
    bank_a: &[u128],
    bank_b: &[u128],
    geom: &MemoryGeometry,
    domain: Domain,
) -> Result<Polynomial> {
    if bank_a.len() < geom.d || bank_b.len() < geom.d {
        return Err(Error::Geometry(format!(
            "banks shorter than depth {}",
            geom.d
        )));
    }
    let mut coeffs = [0u32; N];
    for (w, chunk) in coeffs.chunks_mut(geom.t).enumerate() {
        let (in_b, row) = geom.locate(w, domain);
        let word = if in_b { bank_b[row] } else { bank_a[row] };
        geom.unpack_word(word, chunk);
    }
    Polynomial::new(geom.scheme, domain, &coeffs)
}
