use std::fmt;
use std::str::FromStr;

use crate::arith::Scheme;
use crate::error::{Error, Result};
use crate::memory::bram::{estimate_bram_usage, BramEstimate, Primitive};
use crate::memory::layout::MemoryGeometry;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Design {
    D1,
    D2,
    D3,
    StandaloneKyber,
    StandaloneDilithium,
}

impl Design {
    pub const ALL: [Design; 5] = [
        Design::D1,
        Design::D2,
        Design::D3,
        Design::StandaloneKyber,
        Design::StandaloneDilithium,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Design::D1 => "d1",
            Design::D2 => "d2",
            Design::D3 => "d3",
            Design::StandaloneKyber => "standalone-kyber",
            Design::StandaloneDilithium => "standalone-dilithium",
        }
    }
}

impl fmt::Display for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Design {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Design::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown design '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoreConfig {
    pub design: Design,
    pub kyber_bfus: Option<usize>,
    pub dilithium_bfus: Option<usize>,
    /// Cycles from operand read to result write-back.
    pub pipeline_depth: usize,
}

impl CoreConfig {
    pub fn for_design(design: Design) -> Self {
        let (k, d, depth) = match design {
            Design::D1 => (Some(2), Some(1), 15),
            Design::D2 => (Some(4), Some(2), 15),
            Design::D3 => (Some(8), Some(4), 8),
            Design::StandaloneKyber => (Some(2), None, 11),
            Design::StandaloneDilithium => (None, Some(1), 15),
        };
        CoreConfig {
            design,
            kyber_bfus: k,
            dilithium_bfus: d,
            pipeline_depth: depth,
        }
    }

    pub fn with_pipeline_depth(mut self, depth: usize) -> Self {
        self.pipeline_depth = depth;
        self
    }

    pub fn schemes(&self) -> Vec<Scheme> {
        Scheme::ALL
            .into_iter()
            .filter(|&s| self.supports(s))
            .collect()
    }

    pub fn supports(&self, scheme: Scheme) -> bool {
        match scheme {
            Scheme::Kyber => self.kyber_bfus.is_some(),
            Scheme::Dilithium => self.dilithium_bfus.is_some(),
        }
    }

    /// Butterflies per cycle for `scheme`, which is also the number of
    /// coefficients per memory word.
    pub fn bfus(&self, scheme: Scheme) -> Result<usize> {
        let n = match scheme {
            Scheme::Kyber => self.kyber_bfus,
            Scheme::Dilithium => self.dilithium_bfus,
        };
        n.ok_or_else(|| Error::Config(format!("design {} has no {scheme} datapath", self.design)))
    }

    /// Unified butterfly units: each runs two Kyber or one Dilithium
    /// butterfly per cycle.
    pub fn units(&self) -> usize {
        match (self.kyber_bfus, self.dilithium_bfus) {
            (Some(k), _) => k / 2,
            (None, Some(d)) => d,
            (None, None) => 0,
        }
    }

    pub fn geometry(&self, scheme: Scheme) -> Result<MemoryGeometry> {
        MemoryGeometry::new(scheme, self.bfus(scheme)?)
    }

    /// Shape checks that do not involve timing.
    pub fn validate_structure(&self) -> Result<()> {
        if self.schemes().is_empty() {
            return Err(Error::Config("no datapath configured".into()));
        }
        if let (Some(k), Some(d)) = (self.kyber_bfus, self.dilithium_bfus) {
            if k != 2 * d {
                return Err(Error::Config(format!(
                    "{k} Kyber BFUs cannot fuse into {d} Dilithium BFUs"
                )));
            }
        }
        for s in self.schemes() {
            self.geometry(s)?;
        }
        if self.pipeline_depth == 0 {
            return Err(Error::Config("pipeline depth must be at least 1".into()));
        }
        Ok(())
    }

    /// Full check, including `pipeline_depth <= d/2` for the shallowest
    /// active memory.
    pub fn validate(&self) -> Result<()> {
        self.validate_structure()?;
        let d = self
            .schemes()
            .iter()
            .map(|&s| self.geometry(s).map(|g| g.d))
            .collect::<Result<Vec<_>>>()?;
        let d_min = d.into_iter().min().unwrap_or(0);
        if self.pipeline_depth > d_min / 2 {
            return Err(Error::Config(format!(
                "pipeline depth {} exceeds d/2 = {} for memory depth {}",
                self.pipeline_depth,
                d_min / 2,
                d_min
            )));
        }
        Ok(())
    }

    /// ROM primitives `(twiddle, address)` allocated by each design.
    pub fn rom_primitives(&self) -> (Vec<Primitive>, Vec<Primitive>) {
        use Primitive::{B18, B36};
        match self.design {
            Design::StandaloneKyber => (vec![B18], vec![B18]),
            Design::StandaloneDilithium => (vec![B18], vec![B36]),
            Design::D1 => (vec![B36], vec![B36, B36, B18]),
            Design::D2 => (vec![B36], vec![B18, B36]),
            Design::D3 => (vec![B36, B18], vec![B36]),
        }
    }

    pub fn bram_estimate(&self) -> Result<BramEstimate> {
        // Both schemes share the same physical banks in unified designs.
        let scheme = self.schemes()[0];
        let (tw, addr) = self.rom_primitives();
        Ok(estimate_bram_usage(&self.geometry(scheme)?, &tw, &addr))
    }
}
