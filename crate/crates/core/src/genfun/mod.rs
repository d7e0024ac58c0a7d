//! Moments and cumulants of a periodic distribution from its characteristic
//! sequence, via central finite differences in `q`.
//!
//! Two extraction schemes are provided:
//!
//! * **FDD** applies the stencils to `|Z_q|`. Taking magnitudes centers the
//!   distribution, so only even moments `M2`, `M4` appear and no logarithms
//!   are needed; the scheme stays finite in metals.
//! * **FDLD** applies the stencils to `Log Z_q` (principal branch). At `μ = 1`
//!   this is the Resta polarization and the Resta–Sorella variance. It
//!   diverges as `|Z_q| → 0`.
//!
//! Lengths carry the factor `L/2π`; the reduced cumulants `c_n` omit it.

mod stencil;

pub use stencil::{stencil, window_radius, StencilTable, MAX_DERIVATIVE, MAX_MU};

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::diagnostics::binder_u4;
use crate::error::{Error, Result};
use crate::slater::{principal_arg, CharSeq};

/// Magnitude below which `Log Z_q` is treated as divergent.
pub const DEFAULT_LOG_THRESHOLD: f64 = 1e-12;

/// A report entry: a value, or the reason it could not be formed.
pub type Flagged = std::result::Result<f64, Error>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scheme {
    Fdd,
    Fdld,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Fdd => "FDD",
            Scheme::Fdld => "FDLD",
        }
    }
}

/// Centered FDD moments `(M2, M4)` at accuracy order `μ`.
pub fn fdd_moments(cs: &CharSeq, mu: u32) -> Result<(f64, f64)> {
    let required = window_radius(4, mu);
    if cs.q_max() < required {
        return Err(Error::SequenceTooShort {
            required,
            available: cs.q_max(),
        });
    }
    let scale = cs.length() / (2.0 * PI);
    let magnitude = |q: usize| cs.magnitude(q).expect("checked q_max");
    let m2 = -scale.powi(2) * fold_even(&*stencil(2, mu)?, magnitude);
    let m4 = scale.powi(4) * fold_even(&*stencil(4, mu)?, magnitude);
    Ok((m2, m4))
}

/// `Σ_j c_j f(|j|)` for a symmetric stencil.
fn fold_even(s: &StencilTable, f: impl Fn(usize) -> f64) -> f64 {
    let tail: f64 = (1..=s.radius()).map(|j| s.at(j as i64) * f(j)).sum();
    s.central() * f(0) + 2.0 * tail
}

/// `Σ_{j>0} c_j f(j)` over the positive half of an antisymmetric stencil.
fn fold_odd(s: &StencilTable, f: impl Fn(usize) -> f64) -> f64 {
    (1..=s.radius()).map(|j| s.at(j as i64) * f(j)).sum()
}

/// Reduced cumulant `c_n = (1/iⁿ) δⁿ Log Z_q / δqⁿ |_{q=0}`.
fn reduced_one(cs: &CharSeq, n: u32, mu: u32, threshold: f64) -> Flagged {
    let s = stencil(n, mu)?;
    if cs.q_max() < s.radius() {
        return Err(Error::SequenceTooShort {
            required: s.radius(),
            available: cs.q_max(),
        });
    }
    for q in 1..=s.radius() {
        let magnitude = cs.magnitude(q).expect("checked q_max");
        if magnitude < threshold {
            return Err(Error::LogDivergence {
                q,
                magnitude,
                threshold,
            });
        }
    }
    let z = |q: usize| cs.values()[q];
    // Log Z_{-q} = conj(Log Z_q), so even stencils see only Re Log and odd
    // stencils only Im Log.
    Ok(match n % 4 {
        1 => 2.0 * fold_odd(&s, |q| principal_arg(z(q))),
        2 => -fold_even(&s, |q| z(q).norm().ln()),
        3 => -2.0 * fold_odd(&s, |q| principal_arg(z(q))),
        _ => fold_even(&s, |q| z(q).norm().ln()),
    })
}

/// Reduced cumulants `c_1..c_4`; errors if any needed `|Z_q|` is below the
/// logarithm threshold.
pub fn reduced_cumulants(cs: &CharSeq, mu: u32) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (n, slot) in (1..=4).zip(out.iter_mut()) {
        *slot = reduced_one(cs, n, mu, DEFAULT_LOG_THRESHOLD)?;
    }
    Ok(out)
}

/// Everything extractable from one characteristic sequence at one order.
#[derive(Debug, Clone, PartialEq)]
pub struct CumulantReport {
    pub scheme: Scheme,
    pub mu: u32,
    pub length: f64,
    pub m2: Flagged,
    pub m4: Flagged,
    /// `C_1..C_4` in length units.
    pub cumulants: [Flagged; 4],
    /// Dimensionless `c_1..c_4`.
    pub reduced: [Flagged; 4],
    pub u4: Flagged,
    pub skew: Flagged,
    pub excess_kurtosis: Flagged,
}

/// FDLD cumulants. Entries whose logarithms diverge are flagged, not fatal.
pub fn fdld_cumulants(cs: &CharSeq, mu: u32) -> Result<CumulantReport> {
    fdld_cumulants_with(cs, mu, DEFAULT_LOG_THRESHOLD)
}

pub fn fdld_cumulants_with(cs: &CharSeq, mu: u32, threshold: f64) -> Result<CumulantReport> {
    stencil(4, mu)?;
    let scale = cs.length() / (2.0 * PI);
    let reduced: [Flagged; 4] =
        std::array::from_fn(|i| reduced_one(cs, i as u32 + 1, mu, threshold));
    let cumulants: [Flagged; 4] =
        std::array::from_fn(|i| reduced[i].clone().map(|c| c * scale.powi(i as i32 + 1)));
    let c2 = cumulants[1].clone();
    let skew = c2.clone().and_then(|c2| {
        let c3 = cumulants[2].clone()?;
        positive(c2).map(|c2| c3 / c2.powf(1.5))
    });
    let excess_kurtosis = c2.and_then(|c2| {
        let c4 = cumulants[3].clone()?;
        positive(c2).map(|c2| c4 / (c2 * c2))
    });
    let u4 = excess_kurtosis.clone().map(|k| -k / 3.0);
    let missing = Err(Error::NotInScheme(Scheme::Fdld.name()));
    Ok(CumulantReport {
        scheme: Scheme::Fdld,
        mu,
        length: cs.length(),
        m2: missing.clone(),
        m4: missing,
        cumulants,
        reduced,
        u4,
        skew,
        excess_kurtosis,
    })
}

/// FDD moments with the Binder cumulant and excess kurtosis built from them.
pub fn fdd_report(cs: &CharSeq, mu: u32) -> Result<CumulantReport> {
    let (m2, m4) = fdd_moments(cs, mu)?;
    let binder = binder_u4(m2, m4);
    let missing = || Err(Error::NotInScheme(Scheme::Fdd.name()));
    Ok(CumulantReport {
        scheme: Scheme::Fdd,
        mu,
        length: cs.length(),
        m2: Ok(m2),
        m4: Ok(m4),
        cumulants: std::array::from_fn(|_| missing()),
        reduced: std::array::from_fn(|_| missing()),
        u4: binder.clone().map(|b| b.u4),
        skew: missing(),
        excess_kurtosis: binder.map(|b| b.excess_kurtosis),
    })
}

pub fn report(cs: &CharSeq, mu: u32, scheme: Scheme) -> Result<CumulantReport> {
    match scheme {
        Scheme::Fdd => fdd_report(cs, mu),
        Scheme::Fdld => fdld_cumulants(cs, mu),
    }
}

fn positive(x: f64) -> Flagged {
    if x > 0.0 {
        Ok(x)
    } else {
        Err(Error::NonPositiveVariance(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferenceDistribution {
    Flat,
    RaisedCosine,
    Gaussian,
}

/// Closed-form excess kurtosis of the reference distributions.
pub fn reference_kurtosis(kind: ReferenceDistribution) -> f64 {
    match kind {
        ReferenceDistribution::Flat => -1.2,
        ReferenceDistribution::RaisedCosine => {
            let pi2 = PI * PI;
            6.0 / 5.0 * (90.0 - pi2 * pi2) / (pi2 - 6.0).powi(2)
        }
        ReferenceDistribution::Gaussian => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    const L: f64 = 37.0;

    #[test]
    fn flat_sequence_moments() {
        let cs = CharSeq::flat(L, 4);
        let (m2, m4) = fdd_moments(&cs, 1).unwrap();
        assert!((m2 - L * L / (2.0 * PI * PI)).abs() < 1e-12 * m2);
        assert!((m4 - 3.0 * L.powi(4) / (8.0 * PI.powi(4))).abs() < 1e-12 * m4);
    }

    #[test]
    fn half_z1_moments() {
        let cs = CharSeq::from_magnitudes(L, &[1.0, 0.5, 0.0, 0.0]).unwrap();
        let (m2, m4) = fdd_moments(&cs, 1).unwrap();
        assert!((m2 - L * L / (4.0 * PI * PI)).abs() < 1e-12 * m2);
        assert!((m4 - L.powi(4) / (8.0 * PI.powi(4))).abs() < 1e-12 * m4);
    }

    #[test]
    fn second_order_closed_forms() {
        let mags = [1.0, 0.83, 0.41, 0.17, 0.02];
        let cs = CharSeq::from_magnitudes(L, &mags).unwrap();
        let (m2, m4) = fdd_moments(&cs, 2).unwrap();
        let m2_ref = L * L / (24.0 * PI * PI) * (mags[2] - 16.0 * mags[1] + 15.0);
        let m4_ref =
            L.powi(4) / (48.0 * PI.powi(4)) * (-mags[3] + 12.0 * mags[2] - 39.0 * mags[1] + 28.0);
        assert!((m2 - m2_ref).abs() <= 1e-14 * m2_ref.abs());
        assert!((m4 - m4_ref).abs() <= 1e-14 * m4_ref.abs());
    }

    #[test]
    fn short_sequence_rejected() {
        let cs = CharSeq::flat(L, 2);
        assert!(matches!(
            fdd_moments(&cs, 2),
            Err(Error::SequenceTooShort { required: 3, .. })
        ));
    }

    #[test]
    fn point_distribution_cumulants() {
        // Phases stay below π on the whole window, so no branch wrap.
        let cs = CharSeq::point(L, 2.0, 6);
        for mu in 1..=4 {
            let r = fdld_cumulants(&cs, mu).unwrap();
            assert!((r.cumulants[0].clone().unwrap() - 2.0).abs() < 1e-10);
            for c in &r.cumulants[1..] {
                assert!(c.clone().unwrap().abs() < 1e-10);
            }
            let red = reduced_cumulants(&cs, mu).unwrap();
            assert!((red[0] - 2.0 * PI * 2.0 / L).abs() < 1e-12);
        }
    }

    #[test]
    fn flat_sequence_is_flagged() {
        let cs = CharSeq::flat(L, 4);
        let r = fdld_cumulants(&cs, 1).unwrap();
        for c in &r.cumulants {
            assert!(matches!(c, Err(Error::LogDivergence { .. })));
        }
        assert!(r.u4.is_err());
        assert!(reduced_cumulants(&cs, 1).is_err());
    }

    #[test]
    fn fdd_report_fills_binder() {
        let r = fdd_report(&CharSeq::flat(L, 2), 1).unwrap();
        assert_eq!(r.u4.clone().unwrap(), 0.5);
        assert!((r.excess_kurtosis.clone().unwrap() + 1.5).abs() < 1e-15);
        assert!(r.cumulants[0].is_err());
    }

    #[test]
    fn gaussian_sequence_recovers_variance() {
        // Z_q = exp(i k x0 − σ² k² / 2) with k = 2πq/L: both schemes approach σ².
        let sigma2 = 4.0;
        let len = 400.0;
        let values = (0..=12)
            .map(|q| {
                let k = 2.0 * PI * q as f64 / len;
                Complex64::from_polar((-sigma2 * k * k / 2.0).exp(), k * 3.0)
            })
            .collect();
        let cs = CharSeq::new(len, values, crate::slater::CharSource::Analytic).unwrap();
        let fdld = fdld_cumulants(&cs, 3).unwrap();
        assert!((fdld.cumulants[1].clone().unwrap() - sigma2).abs() < 1e-8);
        assert!(fdld.cumulants[3].clone().unwrap().abs() < 1e-4);
        let (m2, _) = fdd_moments(&cs, 3).unwrap();
        assert!((m2 - sigma2).abs() < 1e-6);
    }

    #[test]
    fn reference_values() {
        assert_eq!(reference_kurtosis(ReferenceDistribution::Flat), -1.2);
        assert_eq!(reference_kurtosis(ReferenceDistribution::Gaussian), 0.0);
        let rc = reference_kurtosis(ReferenceDistribution::RaisedCosine);
        assert!((rc + 0.593762).abs() < 1e-6);
    }
}
