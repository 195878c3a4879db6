//! Quadratic-time oracles. Everything here uses plain `%` arithmetic on
//! wide integers and shares no code with the fast datapath.

use crate::arith::{ModulusParams, Scheme, N};
use crate::error::{Error, Result};
use crate::poly::{Domain, Polynomial};

/// Reverses the low `bits` bits of `x`.
pub fn bitrev(x: usize, bits: u32) -> usize {
    if bits == 0 {
        return 0;
    }
    x.reverse_bits() >> (usize::BITS - bits)
}

fn check_params(a: &Polynomial, p: &ModulusParams) -> Result<()> {
    if a.scheme() != p.scheme {
        return Err(Error::SchemeMismatch {
            expected: p.scheme,
            found: a.scheme(),
        });
    }
    Ok(())
}

fn powmod(b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    let mut b = b % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc
}

/// Evaluation points of the transform in standard order: `γ^(2j+1)`.
///
/// For Kyber there are 128 points, shared by the even and odd halves.
pub fn evaluation_points(p: &ModulusParams) -> Vec<u32> {
    let count = match p.scheme {
        Scheme::Kyber => N / 2,
        Scheme::Dilithium => N,
    };
    (0..count)
        .map(|j| powmod(p.root as u64, 2 * j as u64 + 1, p.q as u64) as u32)
        .collect()
}

/// Σ coeffs[i] · x^i mod q.
fn eval(coeffs: impl DoubleEndedIterator<Item = u32>, x: u64, q: u64) -> u64 {
    coeffs.rev().fold(0u64, |acc, c| (acc * x + c as u64) % q)
}

/// Transform by direct evaluation, standard-order output.
///
/// Dilithium: `Â_j = A(γ^(2j+1))`. Kyber: the even and odd coefficient
/// streams are evaluated separately at `ζ^(2j+1)` and interleaved as
/// `(Â_2j, Â_2j+1)`.
pub fn direct_ntt(a: &Polynomial, p: &ModulusParams) -> Result<Polynomial> {
    check_params(a, p)?;
    a.expect(p.scheme, Domain::Normal)?;
    let q = p.q as u64;
    let c = a.coeffs();
    let pts = evaluation_points(p);
    let mut out = [0u32; N];
    match p.scheme {
        Scheme::Dilithium => {
            for (j, &x) in pts.iter().enumerate() {
                out[j] = eval(c.iter().copied(), x as u64, q) as u32;
            }
        }
        Scheme::Kyber => {
            for (j, &x) in pts.iter().enumerate() {
                out[2 * j] = eval(c.iter().step_by(2).copied(), x as u64, q) as u32;
                out[2 * j + 1] = eval(c.iter().skip(1).step_by(2).copied(), x as u64, q) as u32;
            }
        }
    }
    Ok(Polynomial::from_array(
        p.scheme,
        Domain::NttStandardOrder,
        out,
    ))
}

/// Inverse of [`direct_ntt`] with an explicit `m^-1` factor, where `m` is
/// the number of evaluation points.
pub fn direct_intt(a: &Polynomial, p: &ModulusParams) -> Result<Polynomial> {
    check_params(a, p)?;
    a.expect(p.scheme, Domain::NttStandardOrder)?;
    let q = p.q as u64;
    let c = a.coeffs();
    let pts = evaluation_points(p);
    let m = pts.len() as u64;
    let m_inv = powmod(m, q - 2, q);
    let inv_pts: Vec<u64> = pts.iter().map(|&x| powmod(x as u64, q - 2, q)).collect();
    // A_i = m^-1 Σ_j Â_j x_j^-i, accumulated with running powers.
    let invert = |vals: &dyn Fn(usize) -> u64| -> Vec<u32> {
        let mut acc = vec![0u64; pts.len()];
        for (j, &xi) in inv_pts.iter().enumerate() {
            let v = vals(j);
            let mut w = 1u64;
            for slot in acc.iter_mut() {
                *slot = (*slot + v * w) % q;
                w = w * xi % q;
            }
        }
        acc.into_iter().map(|x| (x * m_inv % q) as u32).collect()
    };
    let mut out = [0u32; N];
    match p.scheme {
        Scheme::Dilithium => {
            out.copy_from_slice(&invert(&|j| c[j] as u64));
        }
        Scheme::Kyber => {
            let even = invert(&|j| c[2 * j] as u64);
            let odd = invert(&|j| c[2 * j + 1] as u64);
            for i in 0..N / 2 {
                out[2 * i] = even[i];
                out[2 * i + 1] = odd[i];
            }
        }
    }
    Ok(Polynomial::from_array(p.scheme, Domain::Normal, out))
}

/// Product in Z_q[X]/(X^256 + 1).
pub fn schoolbook_negacyclic(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.expect(a.scheme(), Domain::Normal)?;
    b.expect(a.scheme(), Domain::Normal)?;
    let q = a.scheme().params().q as u64;
    let mut acc = [0u64; 2 * N];
    for (i, &x) in a.coeffs().iter().enumerate() {
        for (j, &y) in b.coeffs().iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % q;
        }
    }
    let mut out = [0u32; N];
    for k in 0..N {
        out[k] = ((acc[k] + q - acc[k + N]) % q) as u32;
    }
    Ok(Polynomial::from_array(a.scheme(), Domain::Normal, out))
}

/// `(a0 + a1 X)(b0 + b1 X) mod (X^2 - psi)` over Z_3329.
pub fn kyber_basecase_ref(a: (u32, u32), b: (u32, u32), psi: u32) -> (u32, u32) {
    let q = ModulusParams::KYBER.q as u64;
    let (a0, a1, b0, b1, psi) = (a.0 as u64, a.1 as u64, b.0 as u64, b.1 as u64, psi as u64);
    let r0 = (a0 * b0 + a1 * b1 % q * psi) % q;
    let r1 = (a0 * b1 + a1 * b0) % q;
    (r0 as u32, r1 as u32)
}

/// Pointwise product of two standard-order transforms.
pub fn pointwise_ref(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    a.expect(a.scheme(), Domain::NttStandardOrder)?;
    b.expect(a.scheme(), Domain::NttStandardOrder)?;
    let p = a.scheme().params();
    let q = p.q as u64;
    let (x, y) = (a.coeffs(), b.coeffs());
    let mut out = [0u32; N];
    match p.scheme {
        Scheme::Dilithium => {
            for i in 0..N {
                out[i] = (x[i] as u64 * y[i] as u64 % q) as u32;
            }
        }
        Scheme::Kyber => {
            for (j, &psi) in evaluation_points(p).iter().enumerate() {
                let (r0, r1) =
                    kyber_basecase_ref((x[2 * j], x[2 * j + 1]), (y[2 * j], y[2 * j + 1]), psi);
                out[2 * j] = r0;
                out[2 * j + 1] = r1;
            }
        }
    }
    Ok(Polynomial::from_array(
        p.scheme,
        Domain::NttStandardOrder,
        out,
    ))
}

/// Permutes `data` in chunks so that chunk `i` moves to `bitrev(i, width)`.
pub fn bitrev_chunks<T: Copy>(data: &[T], width: u32) -> Result<Vec<T>> {
    let groups = 1usize.checked_shl(width).unwrap_or(0);
    if groups == 0 || !data.len().is_multiple_of(groups) {
        return Err(Error::InvalidWidth {
            width,
            context: "the slice length",
        });
    }
    let chunk = data.len() / groups;
    let mut out = data.to_vec();
    for g in 0..groups {
        let dst = bitrev(g, width);
        out[dst * chunk..(dst + 1) * chunk].copy_from_slice(&data[g * chunk..(g + 1) * chunk]);
    }
    Ok(out)
}

/// Converts between standard and bit-reversed transform order.
///
/// Kyber permutes its 128 coefficient pairs (`width` 7); Dilithium permutes
/// single coefficients (`width` 8).
pub fn bit_reverse_permutation(a: &Polynomial, width: u32) -> Result<Polynomial> {
    let expected = match a.scheme() {
        Scheme::Kyber => 7,
        Scheme::Dilithium => 8,
    };
    if width != expected {
        return Err(Error::InvalidWidth {
            width,
            context: "the scheme's transform length",
        });
    }
    let v = bitrev_chunks(a.coeffs(), width)?;
    let mut out = [0u32; N];
    out.copy_from_slice(&v);
    let domain = match a.domain() {
        Domain::Normal => Domain::Normal,
        Domain::NttStandardOrder => Domain::NttBitReversed,
        Domain::NttBitReversed => Domain::NttStandardOrder,
    };
    Ok(Polynomial::from_array(a.scheme(), domain, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(scheme: Scheme, domain: Domain, seed: &[u32]) -> Polynomial {
        Polynomial::from_fn(scheme, domain, |i| {
            seed[i % seed.len()]
                .wrapping_mul(2654435761)
                .wrapping_add(i as u32 * 40503)
        })
    }

    #[test]
    fn bitrev_matches_string_reversal() {
        for i in 0..256usize {
            let s: String = format!("{i:08b}").chars().rev().collect();
            assert_eq!(bitrev(i, 8), usize::from_str_radix(&s, 2).unwrap());
        }
        assert_eq!(bitrev(1, 3), 4);
    }

    #[test]
    fn bit_reverse_is_involution() {
        for s in Scheme::ALL {
            let a = poly(s, Domain::NttStandardOrder, &[3, 9]);
            let w = s.stages();
            let b = bit_reverse_permutation(&a, w).unwrap();
            assert_eq!(b.domain(), Domain::NttBitReversed);
            assert_eq!(bit_reverse_permutation(&b, w).unwrap(), a);
        }
        let a = Polynomial::zero(Scheme::Kyber);
        assert!(bit_reverse_permutation(&a, 8).is_err());
        assert!(bitrev_chunks(&[0u8; 6], 2).is_err());
    }

    #[test]
    fn ntt_of_zero_and_delta() {
        for s in Scheme::ALL {
            let p = s.params();
            let z = direct_ntt(&Polynomial::zero(s), p).unwrap();
            assert!(z.coeffs().iter().all(|&c| c == 0));
            let d = direct_ntt(&Polynomial::delta(s, 0), p).unwrap();
            match s {
                Scheme::Dilithium => assert!(d.coeffs().iter().all(|&c| c == 1)),
                Scheme::Kyber => assert!(d
                    .coeffs()
                    .iter()
                    .enumerate()
                    .all(|(i, &c)| c == (i % 2 == 0) as u32)),
            }
            let back = direct_intt(&z, p).unwrap();
            assert_eq!(back, Polynomial::zero(s));
        }
        let ones = Polynomial::from_fn(Scheme::Dilithium, Domain::NttStandardOrder, |_| 1);
        assert_eq!(
            direct_intt(&ones, &ModulusParams::DILITHIUM).unwrap(),
            Polynomial::delta(Scheme::Dilithium, 0)
        );
    }

    #[test]
    fn scheme_mismatch_is_rejected() {
        let a = Polynomial::zero(Scheme::Kyber);
        assert!(matches!(
            direct_ntt(&a, &ModulusParams::DILITHIUM),
            Err(Error::SchemeMismatch { .. })
        ));
        assert!(direct_intt(&a, &ModulusParams::KYBER).is_err());
        assert!(schoolbook_negacyclic(&a, &Polynomial::zero(Scheme::Dilithium)).is_err());
    }

    #[test]
    fn schoolbook_identities() {
        for s in Scheme::ALL {
            let a = poly(s, Domain::Normal, &[17, 5]);
            assert_eq!(
                schoolbook_negacyclic(&a, &Polynomial::delta(s, 0)).unwrap(),
                a
            );
            let c = schoolbook_negacyclic(&Polynomial::delta(s, 1), &Polynomial::delta(s, 255))
                .unwrap();
            assert_eq!(c.coeffs()[0], s.params().q - 1);
            assert!(c.coeffs()[1..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn basecase_identities() {
        assert_eq!(kyber_basecase_ref((1, 0), (1, 0), 17), (1, 0));
        assert_eq!(kyber_basecase_ref((0, 1), (0, 1), 1234), (1234, 0));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn roundtrip_linearity_and_convolution(seed_a in prop::collection::vec(any::<u32>(), 1..8),
                                               seed_b in prop::collection::vec(any::<u32>(), 1..8),
                                               dil in any::<bool>()) {
            let s = if dil { Scheme::Dilithium } else { Scheme::Kyber };
            let p = s.params();
            let a = poly(s, Domain::Normal, &seed_a);
            let b = poly(s, Domain::Normal, &seed_b);
            let ah = direct_ntt(&a, p).unwrap();
            let bh = direct_ntt(&b, p).unwrap();
            prop_assert_eq!(&direct_intt(&ah, p).unwrap(), &a);
            prop_assert_eq!(direct_ntt(&a.add(&b).unwrap(), p).unwrap(), ah.add(&bh).unwrap());
            let c = direct_intt(&pointwise_ref(&ah, &bh).unwrap(), p).unwrap();
            prop_assert_eq!(c, schoolbook_negacyclic(&a, &b).unwrap());
        }

        #[test]
        fn basecase_matches_quadratic_ring(a0 in 0u32..3329, a1 in 0u32..3329, b0 in 0u32..3329, b1 in 0u32..3329, psi in 0u32..3329) {
            // Full product then reduce X^2 -> psi.
            let q = 3329u128;
            let c0 = a0 as u128 * b0 as u128;
            let c1 = a0 as u128 * b1 as u128 + a1 as u128 * b0 as u128;
            let c2 = a1 as u128 * b1 as u128;
            let want = (((c0 + c2 * psi as u128) % q) as u32, (c1 % q) as u32);
            prop_assert_eq!(kyber_basecase_ref((a0, a1), (b0, b1), psi), want);
        }
    }
}
