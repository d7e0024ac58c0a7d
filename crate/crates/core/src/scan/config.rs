//! Scan configurations, one per subcommand.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::OccupationMode;
use crate::number_theory::fibonacci;

/// Inclusive uniform grid `start:stop:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Grid {
    /// Points `start + (stop − start) i / n`, so the endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step).round() as usize;
        if n == 0 {
            return vec![self.start];
        }
        (0..=n)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / n as f64)
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidConfig(format!("grid {s:?}: {e}")))?;
        let [start, stop, step] = parts[..] else {
            return Err(Error::InvalidConfig(format!(
                "grid {s:?} must be start:stop:step"
            )));
        };
        if !(step > 0.0 && stop >= start) {
            return Err(Error::InvalidConfig(format!(
                "grid {s:?} needs step > 0 and stop >= start"
            )));
        }
        Ok(Grid { start, stop, step })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeChoice {
    Fdd,
    Fdld,
    Both,
}

impl FromStr for SchemeChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fdd" => Ok(SchemeChoice::Fdd),
            "fdld" => Ok(SchemeChoice::Fdld),
            "both" => Ok(SchemeChoice::Both),
            _ => Err(Error::InvalidConfig(format!(
                "scheme {s:?} is not one of fdd, fdld, both"
            ))),
        }
    }
}

/// How SSH characteristic sequences are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SshRoute {
    Bloch,
    RealSpace,
}

/// Periodic uniform chains, `U4` against the stencil order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermiPbcConfig {
    pub sites: Vec<usize>,
    pub particles: Vec<usize>,
    pub mu_max: u32,
    pub t: f64,
    pub mode: OccupationMode,
}

/// Open uniform chains, `U4` of the single-particle position distribution.
/// An empty particle list means half filling `⌊L/2⌋` for each size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FermiObcConfig {
    pub sites: Vec<usize>,
    pub particles: Vec<usize>,
    pub t: f64,
}

/// SSH chains at half filling, `J_o = J̄ + δJ`, `J_e = J̄ − δJ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SshConfig {
    pub sites: Vec<usize>,
    pub dj: Vec<f64>,
    pub mean: f64,
    pub mu_max: u32,
    pub route: SshRoute,
}

/// Aubry-André variance against the stencil order. An empty particle list
/// selects the nearest half filling of parity opposite to `L`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AaVarianceConfig {
    pub fib_index: Vec<u32>,
    pub particles: Vec<usize>,
    pub w_list: Vec<f64>,
    pub mu_max: u32,
    pub scheme: SchemeChoice,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AaFidelityConfig {
    pub fib_index: u32,
    pub particles: Vec<usize>,
    pub w_grid: Grid,
    pub delta: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeckendorfConfig {
    pub sites: u64,
    pub particles: Vec<u64>,
    pub small_index: u32,
    pub shift: u32,
}

/// Two-level loops of unit radius centered at `(h_z, 0)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BerryConfig {
    pub samples: Vec<usize>,
    pub centers: Vec<f64>,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum ScanConfig {
    FermiPbc(FermiPbcConfig),
    FermiObc(FermiObcConfig),
    Ssh(SshConfig),
    AaVariance(AaVarianceConfig),
    AaFidelity(AaFidelityConfig),
    Zeckendorf(ZeckendorfConfig),
    Berry(BerryConfig),
}

fn non_empty<T>(name: &str, v: &[T]) -> Result<()> {
    if v.is_empty() {
        Err(Error::InvalidConfig(format!("{name} grid is empty")))
    } else {
        Ok(())
    }
}

fn positive_order(mu_max: u32) -> Result<()> {
    if mu_max == 0 || mu_max > crate::genfun::MAX_MU {
        Err(Error::InvalidConfig(format!(
            "mu-max must be in 1..={}, got {mu_max}",
            crate::genfun::MAX_MU
        )))
    } else {
        Ok(())
    }
}

/// Nearest half filling whose parity differs from that of `sites`.
pub fn opposite_parity_half_filling(sites: usize) -> usize {
    let n = sites / 2;
    if n % 2 == sites % 2 {
        n - 1
    } else {
        n
    }
}

impl ScanConfig {
    pub fn name(&self) -> &'static str {
        match self {
            ScanConfig::FermiPbc(_) => "fermi-pbc",
            ScanConfig::FermiObc(_) => "fermi-obc",
            ScanConfig::Ssh(_) => "ssh",
            ScanConfig::AaVariance(_) => "aa-variance",
            ScanConfig::AaFidelity(_) => "aa-fidelity",
            ScanConfig::Zeckendorf(_) => "zeckendorf",
            ScanConfig::Berry(_) => "berry",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ScanConfig::FermiPbc(c) => {
                non_empty("sites", &c.sites)?;
                non_empty("particles", &c.particles)?;
                positive_order(c.mu_max)
            }
            ScanConfig::FermiObc(c) => non_empty("sites", &c.sites),
            ScanConfig::Ssh(c) => {
                non_empty("sites", &c.sites)?;
                non_empty("dj", &c.dj)?;
                positive_order(c.mu_max)
            }
            ScanConfig::AaVariance(c) => {
                non_empty("fib-index", &c.fib_index)?;
                non_empty("w-list", &c.w_list)?;
                for &n in &c.fib_index {
                    fibonacci(n)?;
                }
                positive_order(c.mu_max)
            }
            ScanConfig::AaFidelity(c) => {
                non_empty("particles", &c.particles)?;
                fibonacci(c.fib_index)?;
                if c.delta.is_nan() || c.delta <= 0.0 {
                    return Err(Error::InvalidConfig(format!(
                        "delta must be positive, got {}",
                        c.delta
                    )));
                }
                Ok(())
            }
            ScanConfig::Zeckendorf(c) => non_empty("particles", &c.particles),
            ScanConfig::Berry(c) => {
                non_empty("samples", &c.samples)?;
                non_empty("centers", &c.centers)
            }
        }
    }

    /// `(N, L)` pairs of Aubry-André scans whose parities coincide.
    pub fn parity_warnings(&self) -> Vec<String> {
        let pairs: Vec<(usize, usize)> = match self {
            ScanConfig::AaVariance(c) => c
                .fib_index
                .iter()
                .filter_map(|&n| fibonacci(n).ok())
                .flat_map(|l| {
                    let l = l as usize;
                    c.particles.iter().map(move |&p| (p, l))
                })
                .collect(),
            ScanConfig::AaFidelity(c) => match fibonacci(c.fib_index) {
                Ok(l) => c.particles.iter().map(|&p| (p, l as usize)).collect(),
                Err(_) => Vec::new(),
            },
            _ => Vec::new(),
        };
        pairs
            .into_iter()
            .filter(|(n, l)| n % 2 == l % 2)
            .map(|(n, l)| {
                format!(
                    "N = {n} and L = {l} have the same parity; the ground state may be degenerate"
                )
            })
            .collect()
    }
}
