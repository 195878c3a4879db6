use std::ops::Range;

use crate::arith::{ModulusParams, Scheme};
use crate::error::{Error, Result};
use crate::memory::schedule::{AddressSchedule, Direction};
use crate::reference::bitrev;

/// Montgomery-scaled twiddle factors for one scheme.
///
/// Forward entry `k` holds `γ^brv(k) · R`, inverse entry `k` holds
/// `γ^-brv(k) · 2^-1 · R`, and Kyber's basecase region holds
/// `ζ^(2·brv7(i)+1) · R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwiddleRom {
    scheme: Scheme,
    entries: Vec<u32>,
}

impl TwiddleRom {
    /// Number of distinct twiddles per direction.
    pub fn region_len(scheme: Scheme) -> usize {
        match scheme {
            Scheme::Kyber => 128,
            Scheme::Dilithium => 256,
        }
    }

    pub fn total_len(scheme: Scheme) -> usize {
        match scheme {
            Scheme::Kyber => 3 * 128,
            Scheme::Dilithium => 2 * 256,
        }
    }

    pub fn forward_region(&self) -> Range<usize> {
        0..Self::region_len(self.scheme)
    }

    pub fn inverse_region(&self) -> Range<usize> {
        let n = Self::region_len(self.scheme);
        n..2 * n
    }

    pub fn psi_region(&self) -> Option<Range<usize>> {
        match self.scheme {
            Scheme::Kyber => Some(256..384),
            Scheme::Dilithium => None,
        }
    }

    /// Wraps an externally supplied image, e.g. a ROM override file.
    pub fn from_entries(scheme: Scheme, entries: Vec<u32>) -> Result<Self> {
        let want = Self::total_len(scheme);
        if entries.len() != want {
            return Err(Error::Length {
                expected: want,
                found: entries.len(),
            });
        }
        scheme.params().ensure(&entries)?;
        Ok(TwiddleRom { scheme, entries })
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    #[inline]
    pub fn forward(&self, k: usize) -> u32 {
        self.entries[k]
    }

    #[inline]
    pub fn inverse(&self, k: usize) -> u32 {
        self.entries[Self::region_len(self.scheme) + k]
    }

    /// Basecase twiddle for coefficient pair `i` in bit-reversed order.
    #[inline]
    pub fn psi(&self, i: usize) -> u32 {
        debug_assert_eq!(self.scheme, Scheme::Kyber);
        self.entries[256 + i]
    }
}

pub fn build_twiddle_rom(scheme: Scheme, p: &ModulusParams) -> TwiddleRom {
    debug_assert_eq!(scheme, p.scheme);
    let n = TwiddleRom::region_len(scheme);
    let bits = n.trailing_zeros();
    let root_inv = p.inv(p.root);
    let half = p.inv(2);
    let mut entries = Vec::with_capacity(TwiddleRom::total_len(scheme));
    for k in 0..n {
        entries.push(p.to_mont(p.pow(p.root, bitrev(k, bits) as u64)));
    }
    for k in 0..n {
        let w = p.mul_plain(p.pow(root_inv, bitrev(k, bits) as u64), half);
        entries.push(p.to_mont(w));
    }
    if scheme == Scheme::Kyber {
        for i in 0..128 {
            entries.push(p.to_mont(p.pow(p.root, 2 * bitrev(i, 7) as u64 + 1)));
        }
    }
    TwiddleRom { scheme, entries }
}

/// Hex digits needed for a `bits`-wide word.
pub fn hex_digits(bits: u32) -> usize {
    bits.div_ceil(4) as usize
}

/// One zero-padded hexadecimal word per line, most significant nibble first.
pub fn to_hex_image(words: impl IntoIterator<Item = u64>, bits: u32) -> String {
    let width = hex_digits(bits);
    let mut out = String::new();
    for w in words {
        out.push_str(&format!("{w:0width$x}\n"));
    }
    out
}

pub fn parse_hex_image(text: &str, bits: u32) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v = u64::from_str_radix(line, 16).map_err(|e| Error::RomParse {
            line: i + 1,
            reason: e.to_string(),
        })?;
        if bits < 64 && v >> bits != 0 {
            return Err(Error::RomParse {
                line: i + 1,
                reason: format!("value exceeds {bits} bits"),
            });
        }
        out.push(v);
    }
    Ok(out)
}

/// Address ROM: one word per cycle, `addr_a | addr_b | swap`, forward
/// schedule followed by the inverse schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddressRom {
    pub d: usize,
    pub words: Vec<u64>,
    /// Number of leading words belonging to the forward schedule.
    pub forward_len: usize,
}

impl AddressRom {
    pub fn addr_bits(d: usize) -> u32 {
        d.trailing_zeros()
    }

    pub fn word_bits(d: usize) -> u32 {
        2 * Self::addr_bits(d) + 1
    }

    pub fn encode(forward: &AddressSchedule, inverse: &AddressSchedule) -> Self {
        debug_assert_eq!(forward.d, inverse.d);
        let aw = Self::addr_bits(forward.d);
        let enc = |s: &AddressSchedule| -> Vec<u64> {
            s.entries()
                .map(|e| ((e.addr_a as u64) << (aw + 1)) | ((e.addr_b as u64) << 1) | e.swap as u64)
                .collect()
        };
        let mut words = enc(forward);
        let forward_len = words.len();
        words.extend(enc(inverse));
        AddressRom {
            d: forward.d,
            words,
            forward_len,
        }
    }

    /// Rebuilds both schedules; stage boundaries and twiddle indices come
    /// from the cycle counter, as in hardware.
    pub fn decode(d: usize, words: &[u64]) -> Result<(AddressSchedule, AddressSchedule)> {
        let per_dir = AddressSchedule::cycles(d)?;
        if words.len() != 2 * per_dir {
            return Err(Error::Length {
                expected: 2 * per_dir,
                found: words.len(),
            });
        }
        let aw = Self::addr_bits(d);
        let mask = (1u64 << aw) - 1;
        let triple = |w: u64| {
            (
                (w >> (aw + 1)) as usize,
                ((w >> 1) & mask) as usize,
                w & 1 == 1,
            )
        };
        let fwd: Vec<_> = words[..per_dir].iter().map(|&w| triple(w)).collect();
        let inv: Vec<_> = words[per_dir..].iter().map(|&w| triple(w)).collect();
        Ok((
            AddressSchedule::from_triples(Direction::Ntt, d, &fwd)?,
            AddressSchedule::from_triples(Direction::Intt, d, &inv)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::memory::schedule::generate_addresses;

    #[test]
    fn forward_entry_zero_is_one() {
        for s in Scheme::ALL {
            let p = s.params();
            let rom = build_twiddle_rom(s, p);
            assert_eq!(p.from_mont(rom.forward(0)), 1);
            assert_eq!(rom.entries().len(), TwiddleRom::total_len(s));
        }
    }

    #[test]
    fn kyber_root_half_order() {
        let p = &ModulusParams::KYBER;
        let rom = build_twiddle_rom(Scheme::Kyber, p);
        // Entry 1 is ζ^brv7(1) = ζ^64; squaring gives ζ^128.
        let z64 = p.from_mont(rom.forward(1));
        assert_eq!(p.mul_plain(z64, z64), 3328);
        assert_eq!(p.pow(17, 128), 3328);
    }

    #[test]
    fn inverse_entries_are_halved_inverses() {
        for s in Scheme::ALL {
            let p = s.params();
            let rom = build_twiddle_rom(s, p);
            for k in 0..TwiddleRom::region_len(s) {
                let f = p.from_mont(rom.forward(k));
                let i = p.from_mont(rom.inverse(k));
                assert_eq!(p.mul_plain(p.mul_plain(f, i), 2), 1);
            }
        }
    }

    #[test]
    fn rom_is_deterministic() {
        let a = build_twiddle_rom(Scheme::Dilithium, &ModulusParams::DILITHIUM);
        let b = build_twiddle_rom(Scheme::Dilithium, &ModulusParams::DILITHIUM);
        assert_eq!(
            to_hex_image(a.entries().iter().map(|&x| x as u64), 23),
            to_hex_image(b.entries().iter().map(|&x| x as u64), 23)
        );
    }

    #[test]
    fn hex_roundtrip_and_errors() {
        let img = to_hex_image([0x1u64, 0xabc, 0xfff], 12);
        assert_eq!(img, "001\nabc\nfff\n");
        assert_eq!(parse_hex_image(&img, 12).unwrap(), vec![1, 0xabc, 0xfff]);
        assert!(parse_hex_image("zz\n", 12).is_err());
        assert!(parse_hex_image("1000\n", 12).is_err());
    }

    #[test]
    fn address_rom_roundtrip() {
        for d in [2usize, 8, 64, 128] {
            let f = generate_addresses(Direction::Ntt, d).unwrap();
            let i = generate_addresses(Direction::Intt, d).unwrap();
            let rom = AddressRom::encode(&f, &i);
            let (f2, i2) = AddressRom::decode(d, &rom.words).unwrap();
            assert_eq!(f, f2);
            assert_eq!(i, i2);
        }
    }
}
