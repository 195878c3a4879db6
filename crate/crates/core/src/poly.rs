use std::fmt;

use crate::arith::{Scheme, N};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Normal,
    NttStandardOrder,
    NttBitReversed,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Normal => "normal",
            Domain::NttStandardOrder => "ntt",
            Domain::NttBitReversed => "ntt-br",
        }
    }

    pub fn is_ntt(self) -> bool {
        self != Domain::Normal
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Domain {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "normal" => Ok(Domain::Normal),
            "ntt" => Ok(Domain::NttStandardOrder),
            "ntt-br" => Ok(Domain::NttBitReversed),
            other => Err(format!("unknown domain '{other}'")),
        }
    }
}

/// A degree-255 polynomial over Z_q with canonical coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: [u32; N],
    scheme: Scheme,
    domain: Domain,
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Polynomial({}, {}, {:?}..)",
            self.scheme,
            self.domain,
            &self.coeffs[..8]
        )
    }
}

impl Polynomial {
    pub fn new(scheme: Scheme, domain: Domain, coeffs: &[u32]) -> Result<Self> {
        if coeffs.len() != N {
            return Err(Error::Length {
                expected: N,
                found: coeffs.len(),
            });
        }
        scheme.params().ensure(coeffs)?;
        let mut c = [0u32; N];
        c.copy_from_slice(coeffs);
        Ok(Polynomial {
            coeffs: c,
            scheme,
            domain,
        })
    }

    /// Builds a polynomial from values already known to be reduced.
    pub(crate) fn from_array(scheme: Scheme, domain: Domain, coeffs: [u32; N]) -> Self {
        debug_assert!(scheme.params().ensure(&coeffs).is_ok());
        Polynomial {
            coeffs,
            scheme,
            domain,
        }
    }

    pub fn zero(scheme: Scheme) -> Self {
        Polynomial {
            coeffs: [0; N],
            scheme,
            domain: Domain::Normal,
        }
    }

    /// `X^index`.
    pub fn delta(scheme: Scheme, index: usize) -> Self {
        let mut p = Self::zero(scheme);
        p.coeffs[index % N] = 1;
        p
    }

    /// Maps arbitrary words onto coefficients by reduction mod q.
    pub fn from_fn(scheme: Scheme, domain: Domain, mut f: impl FnMut(usize) -> u32) -> Self {
        let q = scheme.params().q;
        let mut c = [0u32; N];
        for (i, slot) in c.iter_mut().enumerate() {
            *slot = f(i) % q;
        }
        Polynomial {
            coeffs: c,
            scheme,
            domain,
        }
    }

    pub fn coeffs(&self) -> &[u32; N] {
        &self.coeffs
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Relabels the domain without touching coefficients.
    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    pub fn expect(&self, scheme: Scheme, domain: Domain) -> Result<()> {
        if self.scheme != scheme {
            return Err(Error::SchemeMismatch {
                expected: scheme,
                found: self.scheme,
            });
        }
        if self.domain != domain {
            return Err(Error::DomainMismatch {
                expected: domain,
                found: self.domain,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        other.expect(self.scheme, self.domain)?;
        let q = self.scheme.params().q;
        let mut c = self.coeffs;
        for (x, &y) in c.iter_mut().zip(other.coeffs.iter()) {
            *x = crate::arith::mod_add(*x, y, q);
        }
        Ok(Polynomial { coeffs: c, ..*self })
    }
}
