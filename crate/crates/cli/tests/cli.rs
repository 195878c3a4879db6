use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use unified_ntt::memory::rom::parse_hex_image;
use unified_ntt::memory::{check_conflict_free, AddressRom};
use unified_ntt::reference::schoolbook_negacyclic;
use unified_ntt::{Domain, Polynomial, Scheme};

fn untt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_untt"))
        .args(args)
        .output()
        .expect("spawn untt")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_poly(path: &Path, p: &Polynomial) {
    let mut s = format!("scheme={} n=256 domain={}\n", p.scheme(), p.domain());
    for c in p.coeffs() {
        s.push_str(&format!("{c}\n"));
    }
    fs::write(path, s).unwrap();
}

fn read_poly(path: &Path) -> Polynomial {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let scheme: Scheme = header
        .split_whitespace()
        .next()
        .unwrap()
        .trim_start_matches("scheme=")
        .parse()
        .unwrap();
    let domain: Domain = header
        .split_whitespace()
        .nth(2)
        .unwrap()
        .trim_start_matches("domain=")
        .parse()
        .unwrap();
    let v: Vec<u32> = lines.map(|l| l.parse().unwrap()).collect();
    Polynomial::new(scheme, domain, &v).unwrap()
}

fn sample(s: Scheme, k: u32) -> Polynomial {
    Polynomial::from_fn(s, Domain::Normal, |i| {
        (i as u32 ^ k).wrapping_mul(2_654_435_761)
    })
}

#[test]
fn polymul_by_delta_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c, r) = (
        dir.path().join("a.poly"),
        dir.path().join("b.poly"),
        dir.path().join("c.poly"),
        dir.path().join("r.txt"),
    );
    let pa = sample(Scheme::Kyber, 5);
    write_poly(&a, &pa);
    write_poly(&b, &Polynomial::delta(Scheme::Kyber, 0));
    let args = [
        "polymul",
        "--design",
        "standalone-kyber",
        "--scheme",
        "kyber",
    ];
    let o = untt(
        &[
            &args[..],
            &[
                a.to_str().unwrap(),
                b.to_str().unwrap(),
                "--out",
                c.to_str().unwrap(),
                "--report",
                r.to_str().unwrap(),
            ],
        ]
        .concat(),
    );
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(read_poly(&c), pa);
    assert!(fs::read_to_string(&r)
        .unwrap()
        .contains("busy_cycles=1152\n"));
}

#[test]
fn polymul_random_matches_schoolbook() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b, c) = (
        dir.path().join("a.poly"),
        dir.path().join("b.poly"),
        dir.path().join("c.poly"),
    );
    let (pa, pb) = (sample(Scheme::Dilithium, 1), sample(Scheme::Dilithium, 2));
    write_poly(&a, &pa);
    write_poly(&b, &pb);
    let o = untt(&[
        "polymul",
        "--design",
        "d1",
        a.to_str().unwrap(),
        b.to_str().unwrap(),
        "--out",
        c.to_str().unwrap(),
        "--report",
        "-",
    ]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("busy_cycles=2304"));
    assert_eq!(read_poly(&c), schoolbook_negacyclic(&pa, &pb).unwrap());
}

#[test]
fn ntt_intt_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, t, back) = (
        dir.path().join("a.poly"),
        dir.path().join("t.poly"),
        dir.path().join("back.poly"),
    );
    let pa = sample(Scheme::Kyber, 9);
    write_poly(&a, &pa);
    assert_eq!(
        code(&untt(&[
            "ntt",
            "--design",
            "d2",
            a.to_str().unwrap(),
            "--out",
            t.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(read_poly(&t).domain(), Domain::NttBitReversed);
    let sq = dir.path().join("sq.poly");
    assert_eq!(
        code(&untt(&[
            "pwm",
            "--design",
            "d2",
            t.to_str().unwrap(),
            t.to_str().unwrap(),
            "--out",
            sq.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(
        code(&untt(&[
            "intt",
            "--design",
            "d2",
            t.to_str().unwrap(),
            "--out",
            back.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(read_poly(&back), pa);
    let sq_back = dir.path().join("sqb.poly");
    assert_eq!(
        code(&untt(&[
            "intt",
            "--design",
            "d2",
            sq.to_str().unwrap(),
            "--out",
            sq_back.to_str().unwrap()
        ])),
        0
    );
    assert_eq!(
        read_poly(&sq_back),
        schoolbook_negacyclic(&pa, &pa).unwrap()
    );
}

#[test]
fn gen_roms_is_deterministic_and_conflict_free() {
    let d1 = tempfile::tempdir().unwrap();
    let d2 = tempfile::tempdir().unwrap();
    for d in [&d1, &d2] {
        assert_eq!(
            code(&untt(&[
                "gen-roms",
                "--design",
                "d1",
                "--out",
                d.path().to_str().unwrap()
            ])),
            0
        );
    }
    for name in [
        "twiddle_kyber.hex",
        "address_kyber.hex",
        "manifest_kyber.txt",
        "twiddle_dilithium.hex",
        "address_dilithium.hex",
        "manifest_dilithium.txt",
    ] {
        assert_eq!(
            fs::read(d1.path().join(name)).unwrap(),
            fs::read(d2.path().join(name)).unwrap(),
            "{name}"
        );
    }
    let tw = parse_hex_image(
        &fs::read_to_string(d1.path().join("twiddle_kyber.hex")).unwrap(),
        12,
    )
    .unwrap();
    let k = Scheme::Kyber.params();
    assert_eq!(k.from_mont(tw[0] as u32), 1);

    let manifest = fs::read_to_string(d1.path().join("manifest_kyber.txt")).unwrap();
    let get = |key: &str| {
        manifest
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{key}=")))
            .unwrap()
            .to_string()
    };
    let d: usize = get("d").parse().unwrap();
    let depth: usize = get("pipeline_depth").parse().unwrap();
    let bits: u32 = get("address_bits").parse().unwrap();
    let words = parse_hex_image(
        &fs::read_to_string(d1.path().join("address_kyber.hex")).unwrap(),
        bits,
    )
    .unwrap();
    let (fwd, inv) = AddressRom::decode(d, &words).unwrap();
    assert!(check_conflict_free(&fwd, depth, d).is_clean());
    assert!(check_conflict_free(&inv, depth, d).is_clean());
}

#[test]
fn verify_passes_and_detects_rom_corruption() {
    let o = untt(&["verify", "--design", "d3", "--trials", "2", "--seed", "7"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        code(&untt(&[
            "verify",
            "--design",
            "standalone-kyber",
            "--trials",
            "1",
            "--delta"
        ])),
        0
    );

    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        code(&untt(&[
            "gen-roms",
            "--design",
            "d1",
            "--scheme",
            "dilithium",
            "--out",
            dir.path().to_str().unwrap()
        ])),
        0
    );
    let rom = dir.path().join("twiddle_dilithium.hex");
    let text = fs::read_to_string(&rom).unwrap();
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    lines[3] = if lines[3] == "000001" {
        "000002".into()
    } else {
        "000001".into()
    };
    let bad = dir.path().join("bad.hex");
    fs::write(&bad, lines.join("\n")).unwrap();
    let args = [
        "verify",
        "--design",
        "d1",
        "--scheme",
        "dilithium",
        "--trials",
        "1",
        "--rom-override",
    ];
    let o = untt(&[&args[..], &[bad.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("seed"));
    let o = untt(&[&args[..], &[rom.to_str().unwrap()]].concat());
    assert_eq!(code(&o), 0);
}

#[test]
fn exit_codes_by_error_class() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.poly");
    write_poly(&good, &sample(Scheme::Kyber, 3));
    let bad = dir.path().join("bad.poly");
    fs::write(&bad, "scheme=kyber n=256 domain=normal\n1\n2\nnope\n").unwrap();
    let out = dir.path().join("o.poly");
    let o = untt(&["ntt", bad.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains(":4"));

    let o = untt(&[
        "ntt",
        "--design",
        "standalone-dilithium",
        good.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    let o = untt(&[
        "ntt",
        "--design",
        "d1",
        "--pipeline-depth",
        "33",
        good.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);

    let missing = dir.path().join("missing.poly");
    assert_eq!(
        code(&untt(&[
            "ntt",
            missing.to_str().unwrap(),
            "--out",
            out.to_str().unwrap()
        ])),
        4
    );
    let blocker = dir.path().join("file");
    fs::write(&blocker, "x").unwrap();
    assert_eq!(
        code(&untt(&[
            "gen-roms",
            "--out",
            blocker.join("sub").to_str().unwrap()
        ])),
        4
    );
    assert_eq!(code(&untt(&["verify", "--trials", "0"])), 2);
}

#[test]
fn tables_are_stable() {
    let a = untt(&["table", "--which", "latency"]);
    let b = untt(&["table", "--which", "latency"]);
    assert_eq!(a.stdout, b.stdout);
    let t = String::from_utf8(a.stdout).unwrap();
    let row = t
        .lines()
        .find(|l| l.starts_with("d3 ") && l.contains("kyber"))
        .unwrap();
    assert_eq!(row.split_whitespace().nth(2), Some("112"));
    let bram = String::from_utf8(untt(&["table", "--which", "bram"]).stdout).unwrap();
    let d1 = bram.lines().find(|l| l.starts_with("d1 ")).unwrap();
    assert_eq!(d1.split_whitespace().last(), Some("4.5"));
}
