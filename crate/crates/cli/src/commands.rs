use std::fmt::Write as _;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use unified_ntt::memory::rom::{parse_hex_image, to_hex_image};
use unified_ntt::memory::{generate_addresses, AddressRom, Direction, TwiddleRom};
use unified_ntt::reference::{
    bit_reverse_permutation, direct_ntt, pointwise_ref, schoolbook_negacyclic,
};
use unified_ntt::{
    latency_model, CoreConfig, Design, Domain, Op, Polynomial, Scheme, SimReport, Simulator,
};

use crate::error::{CliError, CliResult};
use crate::{polyfile, CoreArgs, DesignArg, OutArgs, SchemeArg, TableKind};

fn design(d: DesignArg) -> Design {
    match d {
        DesignArg::D1 => Design::D1,
        DesignArg::D2 => Design::D2,
        DesignArg::D3 => Design::D3,
        DesignArg::StandaloneKyber => Design::StandaloneKyber,
        DesignArg::StandaloneDilithium => Design::StandaloneDilithium,
    }
}

fn scheme(s: SchemeArg) -> Scheme {
    match s {
        SchemeArg::Kyber => Scheme::Kyber,
        SchemeArg::Dilithium => Scheme::Dilithium,
    }
}

fn config(core: &CoreArgs) -> CliResult<CoreConfig> {
    let mut cfg = CoreConfig::for_design(design(core.design));
    if let Some(depth) = core.pipeline_depth {
        cfg = cfg.with_pipeline_depth(depth);
    }
    cfg.validate()
        .map_err(|e| CliError::Config(format!("--design {}: {e}", cfg.design)))?;
    Ok(cfg)
}

fn simulator(core: &CoreArgs) -> CliResult<Simulator> {
    Ok(Simulator::new(config(core)?)?)
}

/// Picks the scheme from the flag or the input file and checks the design
/// supports it.
fn pick_scheme(cfg: &CoreConfig, flag: Option<SchemeArg>, from_file: Scheme) -> CliResult<Scheme> {
    let s = flag.map(scheme).unwrap_or(from_file);
    if s != from_file {
        return Err(CliError::Input(format!(
            "--scheme {s} does not match input file scheme {from_file}"
        )));
    }
    if !cfg.supports(s) {
        return Err(CliError::Config(format!(
            "--design {} has no {s} datapath",
            cfg.design
        )));
    }
    Ok(s)
}

/// Accepts either transform order and returns the bit-reversed one.
fn to_bit_reversed(p: Polynomial, origin: &Path) -> CliResult<Polynomial> {
    match p.domain() {
        Domain::NttBitReversed => Ok(p),
        Domain::NttStandardOrder => Ok(bit_reverse_permutation(&p, p.scheme().stages())?),
        Domain::Normal => Err(CliError::Input(format!(
            "{}: expected a transformed polynomial (domain=ntt or ntt-br)",
            origin.display()
        ))),
    }
}

fn expect_normal(p: &Polynomial, origin: &Path) -> CliResult<()> {
    if p.domain() != Domain::Normal {
        return Err(CliError::Input(format!(
            "{}: expected domain=normal, found {}",
            origin.display(),
            p.domain()
        )));
    }
    Ok(())
}

fn emit(out: &OutArgs, result: &Polynomial, report: &SimReport) -> CliResult<()> {
    polyfile::write(&out.out, result)?;
    match out.report.as_deref() {
        None => {}
        Some(p) if p == Path::new("-") => print!("{}", report.to_kv()),
        Some(p) => std::fs::write(p, report.to_kv()).map_err(|e| CliError::io(p, e))?,
    }
    Ok(())
}

pub fn polymul(
    core: &CoreArgs,
    flag: Option<SchemeArg>,
    a: &Path,
    b: &Path,
    out: &OutArgs,
) -> CliResult<()> {
    let sim = simulator(core)?;
    let (pa, pb) = (polyfile::read(a)?, polyfile::read(b)?);
    expect_normal(&pa, a)?;
    expect_normal(&pb, b)?;
    let s = pick_scheme(sim.config(), flag, pa.scheme())?;
    pick_scheme(sim.config(), Some(arg_of(s)), pb.scheme())?;
    let (c, rep) = sim.run_polymul(s, &pa, &pb)?;
    emit(out, &c, &rep)
}

fn arg_of(s: Scheme) -> SchemeArg {
    match s {
        Scheme::Kyber => SchemeArg::Kyber,
        Scheme::Dilithium => SchemeArg::Dilithium,
    }
}

pub fn transform(
    core: &CoreArgs,
    flag: Option<SchemeArg>,
    input: &Path,
    out: &OutArgs,
    op: Op,
) -> CliResult<()> {
    let sim = simulator(core)?;
    let mut p = polyfile::read(input)?;
    let s = pick_scheme(sim.config(), flag, p.scheme())?;
    if op == Op::Ntt {
        expect_normal(&p, input)?;
    } else {
        p = to_bit_reversed(p, input)?;
    }
    let (c, rep) = sim.run_op(s, op, &[&p])?;
    emit(out, &c, &rep)
}

pub fn pwm(
    core: &CoreArgs,
    flag: Option<SchemeArg>,
    a: &Path,
    b: &Path,
    out: &OutArgs,
) -> CliResult<()> {
    let sim = simulator(core)?;
    let pa = to_bit_reversed(polyfile::read(a)?, a)?;
    let pb = to_bit_reversed(polyfile::read(b)?, b)?;
    let s = pick_scheme(sim.config(), flag, pa.scheme())?;
    pick_scheme(sim.config(), Some(arg_of(s)), pb.scheme())?;
    let (c, rep) = sim.run_op(s, Op::Pwm, &[&pa, &pb])?;
    emit(out, &c, &rep)
}

fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn gen_roms(core: &CoreArgs, flag: Option<SchemeArg>, dir: &Path) -> CliResult<()> {
    let cfg = config(core)?;
    let sim = Simulator::new(cfg)?;
    let schemes = match flag.map(scheme) {
        Some(s) if !cfg.supports(s) => {
            return Err(CliError::Config(format!(
                "--design {} has no {s} datapath",
                cfg.design
            )))
        }
        Some(s) => vec![s],
        None => cfg.schemes(),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    for s in schemes {
        let geom = cfg.geometry(s)?;
        let rom = sim.rom(s)?;
        let bits = s.params().coeff_bits;
        let tw_name = format!("twiddle_{s}.hex");
        write_file(
            &dir.join(&tw_name),
            &to_hex_image(rom.entries().iter().map(|&x| x as u64), bits),
        )?;

        let fwd = generate_addresses(Direction::Ntt, geom.d)?;
        let inv = generate_addresses(Direction::Intt, geom.d)?;
        let arom = AddressRom::encode(&fwd, &inv);
        let abits = AddressRom::word_bits(geom.d);
        let addr_name = format!("address_{s}.hex");
        write_file(
            &dir.join(&addr_name),
            &to_hex_image(arom.words.iter().copied(), abits),
        )?;

        let mut m = String::new();
        let psi = rom
            .psi_region()
            .map(|r| r.start.to_string())
            .unwrap_or_else(|| "none".into());
        for (k, v) in [
            ("scheme", s.to_string()),
            ("design", cfg.design.to_string()),
            ("pipeline_depth", cfg.pipeline_depth.to_string()),
            ("coefficients_per_word", geom.t.to_string()),
            ("d", geom.d.to_string()),
            ("bank_depth", geom.bank_depth().to_string()),
            ("word_width", geom.word_width().to_string()),
            ("twiddle_file", tw_name),
            ("twiddle_bits", bits.to_string()),
            ("twiddle_entries", rom.entries().len().to_string()),
            ("forward_offset", rom.forward_region().start.to_string()),
            ("inverse_offset", rom.inverse_region().start.to_string()),
            ("psi_offset", psi),
            ("address_file", addr_name),
            ("address_bits", abits.to_string()),
            ("address_forward_words", arom.forward_len.to_string()),
            (
                "address_inverse_words",
                (arom.words.len() - arom.forward_len).to_string(),
            ),
            ("lane_stages", geom.lane_stages().to_string()),
        ] {
            let _ = writeln!(m, "{k}={v}");
        }
        write_file(&dir.join(format!("manifest_{s}.txt")), &m)?;
    }
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, s: Scheme) -> Polynomial {
    let q = s.params().q;
    Polynomial::from_fn(s, Domain::Normal, |_| rng.gen_range(0..q))
}

pub fn verify(
    core: &CoreArgs,
    flag: Option<SchemeArg>,
    trials: usize,
    seed: u64,
    delta: bool,
    rom_override: Option<&Path>,
) -> CliResult<()> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    let mut sim = simulator(core)?;
    let cfg = *sim.config();
    let schemes = match flag.map(scheme) {
        Some(s) if !cfg.supports(s) => {
            return Err(CliError::Config(format!(
                "--design {} has no {s} datapath",
                cfg.design
            )))
        }
        Some(s) => vec![s],
        None => cfg.schemes(),
    };
    if let Some(path) = rom_override {
        let [s] = schemes[..] else {
            return Err(CliError::Input(
                "--rom-override needs --scheme on a unified design".into(),
            ));
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let words = parse_hex_image(&text, s.params().coeff_bits)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let entries = words.into_iter().map(|w| w as u32).collect();
        let rom = TwiddleRom::from_entries(s, entries)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        sim = sim.with_twiddle_rom(rom)?;
    }

    for s in schemes {
        let p = s.params();
        let mut passed = 0;
        for i in 0..trials {
            let trial_seed = seed.wrapping_add(i as u64);
            let fail = |what: &str| {
                CliError::Verify(format!(
                    "{s} {what} mismatch at trial {i} (seed {trial_seed})"
                ))
            };
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
            let a = random_poly(&mut rng, s);
            let b = if delta {
                Polynomial::delta(s, 0)
            } else {
                random_poly(&mut rng, s)
            };

            let (c, _) = sim.run_polymul(s, &a, &b)?;
            if c != schoolbook_negacyclic(&a, &b)? {
                return Err(fail("polymul"));
            }
            let (ah, _) = sim.run_op(s, Op::Ntt, &[&a])?;
            let (bh, _) = sim.run_op(s, Op::Ntt, &[&b])?;
            let (da, db) = (direct_ntt(&a, p)?, direct_ntt(&b, p)?);
            if bit_reverse_permutation(&ah, s.stages())? != da {
                return Err(fail("forward transform"));
            }
            let (back, _) = sim.run_op(s, Op::Intt, &[&ah])?;
            if back != a {
                return Err(fail("round trip"));
            }
            let (prod, _) = sim.run_op(s, Op::Pwm, &[&ah, &bh])?;
            if bit_reverse_permutation(&prod, s.stages())? != pointwise_ref(&da, &db)? {
                return Err(fail("pointwise product"));
            }
            passed += 1;
        }
        println!(
            "{} {s}: {passed}/{trials} trials passed (polymul, transform, round trip, pointwise)",
            cfg.design
        );
    }
    Ok(())
}

pub fn table(which: TableKind) -> CliResult<()> {
    let mut out = String::new();
    match which {
        TableKind::Latency => {
            let _ = writeln!(
                out,
                "{:<22} {:<10} {:>6} {:>6} {:>6} {:>8} {:>6}",
                "design", "scheme", "ntt", "intt", "pwm", "polymul", "depth"
            );
            for d in Design::ALL {
                let cfg = CoreConfig::for_design(d);
                for s in cfg.schemes() {
                    let l = |op| latency_model(&cfg, s, op);
                    let _ = writeln!(
                        out,
                        "{:<22} {:<10} {:>6} {:>6} {:>6} {:>8} {:>6}",
                        d.name(),
                        s.name(),
                        l(Op::Ntt)?,
                        l(Op::Intt)?,
                        l(Op::Pwm)?,
                        l(Op::PolyMul)?,
                        cfg.pipeline_depth
                    );
                }
            }
        }
        TableKind::Bram => {
            let _ = writeln!(
                out,
                "{:<22} {:>12} {:>8} {:>8} {:>6}",
                "design", "coefficient", "twiddle", "address", "total"
            );
            for d in Design::ALL {
                let e = CoreConfig::for_design(d).bram_estimate()?;
                let _ = writeln!(
                    out,
                    "{:<22} {:>12} {:>8} {:>8} {:>6}",
                    d.name(),
                    e.coefficient,
                    e.twiddle,
                    e.address,
                    e.total()
                );
            }
        }
    }
    print!("{out}");
    Ok(())
}
