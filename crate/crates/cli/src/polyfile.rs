//! Text polynomial files: a header line
//! `scheme=<kyber|dilithium> n=256 domain=<normal|ntt|ntt-br>` followed by
//! one decimal coefficient per line.

use std::fmt::Write as _;
use std::path::Path;

use unified_ntt::{Domain, Polynomial, Scheme, N};

use crate::error::{CliError, CliResult};

pub fn parse(text: &str, origin: &str) -> CliResult<Polynomial> {
    let err = |line: usize, msg: String| CliError::Input(format!("{origin}:{line}: {msg}"));
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let (mut scheme, mut n, mut domain) = (None, None, None);
    for field in header.split_whitespace() {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| err(1, format!("malformed header field '{field}'")))?;
        match k {
            "scheme" => scheme = Some(v.parse::<Scheme>().map_err(|e| err(1, e.to_string()))?),
            "n" => n = Some(v.parse::<usize>().map_err(|e| err(1, format!("n: {e}")))?),
            "domain" => domain = Some(v.parse::<Domain>().map_err(|e| err(1, e))?),
            other => return Err(err(1, format!("unknown header key '{other}'"))),
        }
    }
    let scheme = scheme.ok_or_else(|| err(1, "header lacks scheme=".into()))?;
    let domain = domain.ok_or_else(|| err(1, "header lacks domain=".into()))?;
    if n != Some(N) {
        return Err(err(1, format!("header must declare n={N}")));
    }
    let q = scheme.params().q;
    let mut coeffs = Vec::with_capacity(N);
    for (i, line) in lines {
        let v: u32 = line
            .trim()
            .parse()
            .map_err(|e| err(i + 1, format!("'{}': {e}", line.trim())))?;
        if v >= q {
            return Err(err(i + 1, format!("coefficient {v} is not below q={q}")));
        }
        coeffs.push(v);
    }
    if coeffs.len() != N {
        return Err(err(
            0,
            format!("expected {N} coefficients, found {}", coeffs.len()),
        ));
    }
    Ok(Polynomial::new(scheme, domain, &coeffs)?)
}

pub fn render(p: &Polynomial) -> String {
    let mut s = format!("scheme={} n={N} domain={}\n", p.scheme(), p.domain());
    for c in p.coeffs() {
        let _ = writeln!(s, "{c}");
    }
    s
}

pub fn read(path: &Path) -> CliResult<Polynomial> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text, &path.display().to_string())
}

pub fn write(path: &Path, p: &Polynomial) -> CliResult<()> {
    std::fs::write(path, render(p)).map_err(|e| CliError::io(path, e))
}
