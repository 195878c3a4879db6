use proptest::prelude::*;
use unified_ntt::bfu::{ntt_forward, pwm_bit_reversed};
use unified_ntt::memory::TwiddleRom;
use unified_ntt::reference::schoolbook_negacyclic;
use unified_ntt::{CoreConfig, Design, Domain, Error, Op, Polynomial, Scheme, Simulator};

fn poly(s: Scheme, seed: u64) -> Polynomial {
    let mut x = seed | 1;
    Polynomial::from_fn(s, Domain::Normal, |_| {
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        x as u32
    })
}

#[test]
fn polymul_by_one_and_zero() {
    for design in Design::ALL {
        let sim = Simulator::new(CoreConfig::for_design(design)).unwrap();
        for s in sim.config().schemes() {
            let a = poly(s, 11);
            let (c, rep) = sim.run_polymul(s, &a, &Polynomial::delta(s, 0)).unwrap();
            assert_eq!(c, a);
            let (z, rep0) = sim
                .run_polymul(s, &Polynomial::zero(s), &Polynomial::zero(s))
                .unwrap();
            assert_eq!(z, Polynomial::zero(s));
            assert_eq!(rep.busy_cycles, rep0.busy_cycles);
            assert_eq!(rep.operand_prep_cycles, rep0.operand_prep_cycles);
        }
    }
}

#[test]
fn pwm_matches_software_path() {
    let sim = Simulator::new(CoreConfig::for_design(Design::D2)).unwrap();
    for s in Scheme::ALL {
        let rom = sim.rom(s).unwrap();
        let a = ntt_forward(&poly(s, 3), rom).unwrap();
        let b = ntt_forward(&poly(s, 5), rom).unwrap();
        let (c, _) = sim.run_op(s, Op::Pwm, &[&a, &b]).unwrap();
        assert_eq!(c, pwm_bit_reversed(&a, &b, rom).unwrap());
    }
}

#[test]
fn report_serializes_flat() {
    let sim = Simulator::new(CoreConfig::for_design(Design::StandaloneKyber)).unwrap();
    let (_, rep) = sim
        .run_polymul(
            Scheme::Kyber,
            &poly(Scheme::Kyber, 1),
            &poly(Scheme::Kyber, 2),
        )
        .unwrap();
    let kv = rep.to_kv();
    assert!(kv.contains("busy_cycles=1152\n"));
    assert!(kv.contains("operand_prep_cycles=448\n"));
    assert!(kv.contains("hazards=0\n"));
    assert!(kv.lines().all(|l| l.split_once('=').is_some()));
}

#[test]
fn rejects_mismatched_requests() {
    let sim = Simulator::new(CoreConfig::for_design(Design::StandaloneKyber)).unwrap();
    let k = poly(Scheme::Kyber, 1);
    assert!(matches!(
        sim.run_op(Scheme::Dilithium, Op::Ntt, &[&poly(Scheme::Dilithium, 1)]),
        Err(Error::Config(_))
    ));
    assert!(sim.run_op(Scheme::Kyber, Op::Intt, &[&k]).is_err());
    assert!(sim.run_op(Scheme::Kyber, Op::Pwm, &[&k]).is_err());
    assert!(sim.run_op(Scheme::Kyber, Op::PolyMul, &[&k]).is_err());
}

#[test]
fn corrupted_twiddle_rom_breaks_products() {
    let s = Scheme::Dilithium;
    let sim = Simulator::new(CoreConfig::for_design(Design::D1)).unwrap();
    let mut entries = sim.rom(s).unwrap().entries().to_vec();
    entries[5] = (entries[5] + 1) % s.params().q;
    let bad = sim
        .clone()
        .with_twiddle_rom(TwiddleRom::from_entries(s, entries).unwrap())
        .unwrap();
    let (a, b) = (poly(s, 8), poly(s, 9));
    let (c, _) = bad.run_polymul(s, &a, &b).unwrap();
    assert_ne!(c, schoolbook_negacyclic(&a, &b).unwrap());
}

#[test]
fn depth_just_within_bound_is_clean() {
    for design in Design::ALL {
        let cfg = CoreConfig::for_design(design);
        for s in cfg.schemes() {
            let d = cfg.geometry(s).unwrap().d;
            let sim = Simulator::new(cfg.with_pipeline_depth(d / 2)).unwrap();
            let a = poly(s, 4);
            let (c, rep) = sim.run_polymul(s, &a, &Polynomial::delta(s, 1)).unwrap();
            assert!(rep.hazards.is_empty());
            assert_eq!(
                c,
                schoolbook_negacyclic(&a, &Polynomial::delta(s, 1)).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn busy_cycles_are_data_independent(seed in any::<u64>(), design_idx in 0usize..5) {
        let design = Design::ALL[design_idx];
        let cfg = CoreConfig::for_design(design);
        let sim = Simulator::new(cfg).unwrap();
        for s in cfg.schemes() {
            let (c, rep) = sim.run_polymul(s, &poly(s, seed), &poly(s, seed.rotate_left(17))).unwrap();
            let (_, base) = sim.run_polymul(s, &Polynomial::zero(s), &Polynomial::zero(s)).unwrap();
            prop_assert_eq!(rep.busy_cycles, base.busy_cycles);
            prop_assert_eq!(c, schoolbook_negacyclic(&poly(s, seed), &poly(s, seed.rotate_left(17))).unwrap());
        }
    }
}
