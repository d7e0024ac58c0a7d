//! Geometric Binder cumulant and fidelity susceptibility.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genfun::fdd_moments;
use crate::lattice::{
    build_model, eigensolve, occupy_ground, ModelMatrix, ModelSpec, OccupationMode, Spectrum,
};
use crate::slater::{state_overlap, CharSeq};

/// Default finite-difference step for the fidelity susceptibility.
pub const DEFAULT_FIDELITY_DELTA: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinderCumulant {
    /// `U4 = 1 − M4/(3 M2²)`.
    pub u4: f64,
    /// `κ̃4 = M4/M2² − 3 = −3 U4`.
    pub excess_kurtosis: f64,
}

pub fn binder_u4(m2: f64, m4: f64) -> Result<BinderCumulant> {
    if m2.is_nan() || m2 <= 0.0 {
        return Err(Error::NonPositiveVariance(m2));
    }
    let ratio = m4 / (m2 * m2);
    Ok(BinderCumulant {
        u4: 1.0 - ratio / 3.0,
        excess_kurtosis: ratio - 3.0,
    })
}

/// `U4` from FDD moments at each requested accuracy order.
pub fn u4_vs_order(cs: &CharSeq, mu_list: &[u32]) -> Result<Vec<(u32, f64)>> {
    mu_list
        .iter()
        .map(|&mu| {
            let (m2, m4) = fdd_moments(cs, mu)?;
            Ok((mu, binder_u4(m2, m4)?.u4))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityPoint {
    pub parameter: f64,
    pub delta: f64,
    /// `χ_F = −ln|⟨Ψ(W−δ)|Ψ(W+δ)⟩| / (2δ²)`.
    pub chi_f: f64,
    pub overlap: f64,
}

/// Fidelity susceptibility of the `particles`-fermion ground state of a
/// one-parameter family of Hamiltonians, by the symmetric finite difference
/// with step `delta`.
pub fn fidelity_susceptibility<F>(
    family: F,
    parameter: f64,
    delta: f64,
    particles: usize,
) -> Result<FidelityPoint>
where
    F: Fn(f64) -> Result<ModelMatrix>,
{
    let lower = eigensolve(&family(parameter - delta)?)?;
    let upper = eigensolve(&family(parameter + delta)?)?;
    fidelity_from_spectra(&lower, &upper, parameter, delta, particles)
}

/// `χ_F` from spectra already computed at `parameter ∓ delta`. Lets scans
/// over several particle numbers share the diagonalizations.
pub fn fidelity_from_spectra(
    lower: &Spectrum,
    upper: &Spectrum,
    parameter: f64,
    delta: f64,
    particles: usize,
) -> Result<FidelityPoint> {
    let ground = |s: &Spectrum, w: f64| -> Result<_> {
        let state = occupy_ground(s, particles, OccupationMode::Numeric)?;
        if state.is_degenerate() {
            return Err(Error::FidelityDegenerate(w));
        }
        Ok(state)
    };
    let a = ground(lower, parameter - delta)?;
    let b = ground(upper, parameter + delta)?;
    let overlap = state_overlap(&a, &b)?.norm();
    if overlap == 0.0 {
        return Err(Error::FidelityDivergent(parameter));
    }
    Ok(FidelityPoint {
        parameter,
        delta,
        chi_f: -overlap.ln() / (2.0 * delta * delta),
        overlap,
    })
}

/// Adapts a `W ↦ ModelSpec` closure to a matrix family.
pub fn spec_family<S>(spec: S) -> impl Fn(f64) -> Result<ModelMatrix>
where
    S: Fn(f64) -> Result<ModelSpec>,
{
    move |w| build_model(&spec(w)?)
}

/// Aubry-André chain `L = F_n` as a function of the potential strength `W`.
pub fn aubry_andre_family(fib_index: u32, t: f64) -> impl Fn(f64) -> Result<ModelMatrix> {
    spec_family(move |w| ModelSpec::aubry_andre(fib_index, t, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::stencil;
    use crate::lattice::Boundary;
    use ndarray::arr2;
    use std::f64::consts::PI;

    fn two_level(w: f64) -> Result<ModelMatrix> {
        ModelMatrix::from_symmetric(arr2(&[[w, 1.0], [1.0, -w]]))
    }

    #[test]
    fn flat_limits() {
        let flat = CharSeq::flat(10.0, 4);
        let u = u4_vs_order(&flat, &[1, 2]).unwrap();
        assert_eq!(u[0].1, 0.5);
        assert!((u[1].1 - (0.5 + 1.0 / 450.0)).abs() < 1e-12);
    }

    #[test]
    fn raised_cosine_first_order() {
        let cs = CharSeq::from_magnitudes(10.0, &[1.0, 0.5, 0.0]).unwrap();
        let u = u4_vs_order(&cs, &[1]).unwrap();
        assert!((u[0].1 - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn binder_identity_and_errors() {
        let b = binder_u4(2.0, 7.0).unwrap();
        assert!((b.u4 + b.excess_kurtosis / 3.0).abs() < 1e-15);
        assert!(binder_u4(0.0, 1.0).is_err());
        assert!(binder_u4(-1.0, 1.0).is_err());
        assert!(binder_u4(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn parameter_independent_family_has_zero_susceptibility() {
        let family = spec_family(|_| Ok(ModelSpec::ssh(6, 1.0, 0.4, Boundary::Periodic)));
        let p = fidelity_susceptibility(family, 0.3, 0.01, 6).unwrap();
        // Only rounding in the overlap determinant survives.
        assert!(p.chi_f.abs() < 1e-9, "{}", p.chi_f);
    }

    #[test]
    fn two_level_oracle() {
        // Ground state polar angle θ(W) = atan2(1, W): χ_F → (1/4)(1 + W²)^{-2}.
        let p = fidelity_susceptibility(two_level, 0.0, 1e-3, 1).unwrap();
        assert!((p.chi_f - 0.25).abs() < 1e-6);
    }

    #[test]
    fn degenerate_endpoint_rejected() {
        // Periodic chain of 4 sites at half filling is two-fold degenerate.
        let family = spec_family(|_| Ok(ModelSpec::uniform_chain(4, 1.0, Boundary::Periodic)));
        assert!(matches!(
            fidelity_susceptibility(family, 0.0, 0.01, 2),
            Err(Error::FidelityDegenerate(_))
        ));
    }

    #[test]
    fn stencil_spectral_limits() {
        // Central weights approach −π²/3 and π⁴/5 from inside, error ~ 1/μ.
        let gap = |mu| {
            let c2 = stencil(2, mu).unwrap().central();
            let c4 = stencil(4, mu).unwrap().central();
            (c2 + PI * PI / 3.0, PI.powi(4) / 5.0 - c4)
        };
        let mut last = gap(1);
        for mu in [2, 4, 8, 16, 32, 64] {
            let next = gap(mu);
            assert!(next.0 > 0.0 && next.0 < last.0);
            assert!(next.1 > 0.0 && next.1 < last.1);
            last = next;
        }
        assert!(last.0 < 0.01 * PI * PI / 3.0);
        assert!(last.1 < 0.04 * PI.powi(4) / 5.0);
    }
}
