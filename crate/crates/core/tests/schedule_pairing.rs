//! The address schedule must perform exactly the butterflies of an in-place
//! radix-2 transform on whole memory words.

use std::collections::BTreeSet;

use proptest::prelude::*;
use unified_ntt::memory::{generate_addresses, AddressRom, Direction};

/// Tracks which logical word sits in each bank row while replaying the
/// schedule, and returns the word pairs touched per stage.
fn replay(
    dir: Direction,
    d: usize,
    a: &mut [usize],
    b: &mut [usize],
) -> Vec<BTreeSet<(usize, usize)>> {
    let s = generate_addresses(dir, d).unwrap();
    let mut out = Vec::new();
    for st in &s.stages {
        let mut pairs = BTreeSet::new();
        for e in &st.entries {
            let (x, y) = (a[e.addr_a], b[e.addr_b]);
            let (lo, hi) = (x.min(y), x.max(y));
            assert_eq!(
                e.b_is_lower_on_read(dir),
                y < x,
                "read orientation flag, d={d} {dir:?}"
            );
            pairs.insert((lo, hi));
            if e.out1_to_b(dir) {
                (a[e.addr_a], b[e.addr_b]) = (hi, lo);
            } else {
                (a[e.addr_a], b[e.addr_b]) = (lo, hi);
            }
        }
        assert_eq!(pairs.len(), d);
        out.push(pairs);
    }
    out
}

/// Word pairs of a radix-2 stage with distance `span`.
fn expected_pairs(d: usize, span: usize) -> BTreeSet<(usize, usize)> {
    (0..2 * d)
        .filter(|w| (w / span).is_multiple_of(2))
        .map(|w| (w, w + span))
        .collect()
}

#[test]
fn forward_and_inverse_pairings_match_radix2_trace() {
    for d in [2usize, 4, 8, 16, 32, 64, 128] {
        let mut a: Vec<usize> = (0..d).collect();
        let mut b: Vec<usize> = (0..d).map(|v| 2 * d - 1 - v).collect();
        let fwd = replay(Direction::Ntt, d, &mut a, &mut b);
        for (i, pairs) in fwd.iter().enumerate() {
            assert_eq!(pairs, &expected_pairs(d, d >> i), "forward d={d} stage {i}");
        }
        assert_eq!(a, (0..d).map(|r| 2 * r).collect::<Vec<_>>());
        assert_eq!(b, (0..d).map(|r| 2 * r + 1).collect::<Vec<_>>());
        let inv = replay(Direction::Intt, d, &mut a, &mut b);
        for (i, pairs) in inv.iter().enumerate() {
            assert_eq!(pairs, &expected_pairs(d, 1 << i), "inverse d={d} stage {i}");
        }
        assert_eq!(a, (0..d).collect::<Vec<_>>());
        assert_eq!(b, (0..d).map(|v| 2 * d - 1 - v).collect::<Vec<_>>());
    }
}

#[test]
fn twiddle_index_follows_block_of_lower_word() {
    for d in [4usize, 16, 64] {
        let mut a: Vec<usize> = (0..d).collect();
        let mut b: Vec<usize> = (0..d).map(|v| 2 * d - 1 - v).collect();
        let s = generate_addresses(Direction::Ntt, d).unwrap();
        for st in &s.stages {
            for e in &st.entries {
                let (x, y) = (a[e.addr_a], b[e.addr_b]);
                let lo = x.min(y);
                assert_eq!(e.twiddle_index, d / st.span + lo / (2 * st.span));
                let hi = x.max(y);
                if e.out1_to_b(Direction::Ntt) {
                    (a[e.addr_a], b[e.addr_b]) = (hi, lo);
                } else {
                    (a[e.addr_a], b[e.addr_b]) = (lo, hi);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn address_rom_decode_rejects_truncation(cut in 1usize..10) {
        let d = 16;
        let rom = AddressRom::encode(&generate_addresses(Direction::Ntt, d).unwrap(), &generate_addresses(Direction::Intt, d).unwrap());
        prop_assert!(AddressRom::decode(d, &rom.words[..rom.words.len() - cut]).is_err());
    }
}
