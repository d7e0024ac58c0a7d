//! Characteristic sequences `Z_q = ⟨Ψ| exp(i 2π q X̂ / L) |Ψ⟩` of Slater
//! determinants, determinant overlaps and the Resta polarization.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::SlaterState;
use crate::linalg::{log_det, overlap_matrix};

/// `|Z_1|` below which the polarization phase is treated as undefined.
pub const DEFAULT_POLARIZATION_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CharSource {
    Slater,
    Bloch,
    Analytic,
}

/// Discrete characteristic sequence `Z_0..=Z_{q_max}` with its length scale.
///
/// Negative indices follow from `Z_{−q} = conj(Z_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharSeq {
    length: f64,
    values: Vec<Complex64>,
    source: CharSource,
}

impl CharSeq {
    pub fn new(length: f64, values: Vec<Complex64>, source: CharSource) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::SequenceTooShort {
                required: 0,
                available: 0,
            });
        }
        Ok(CharSeq {
            length,
            values,
            source,
        })
    }

    /// Sequence with given magnitudes and zero phases, e.g. the flat
    /// (`Z_q = δ_{q0}`) or raised-cosine (`|Z_1| = 1/2`) limits.
    pub fn from_magnitudes(length: f64, magnitudes: &[f64]) -> Result<Self> {
        Self::new(
            length,
            magnitudes.iter().map(|&m| Complex64::new(m, 0.0)).collect(),
            CharSource::Analytic,
        )
    }

    /// `Z_q = δ_{q0}` up to `q_max`.
    pub fn flat(length: f64, q_max: usize) -> Self {
        let mut m = vec![0.0; q_max + 1];
        m[0] = 1.0;
        Self::from_magnitudes(length, &m).expect("non-empty")
    }

    /// Point distribution at `x0`: `Z_q = exp(i 2π q x0 / L)`.
    pub fn point(length: f64, x0: f64, q_max: usize) -> Self {
        let values = (0..=q_max)
            .map(|q| Complex64::from_polar(1.0, 2.0 * PI * q as f64 * x0 / length))
            .collect();
        Self::new(length, values, CharSource::Analytic).expect("non-empty")
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn q_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn source(&self) -> CharSource {
        self.source
    }

    /// `Z_q` for any `|q| ≤ q_max`.
    pub fn get(&self, q: i64) -> Option<Complex64> {
        let z = *self.values.get(q.unsigned_abs() as usize)?;
        Some(if q < 0 { z.conj() } else { z })
    }

    pub fn magnitude(&self, q: usize) -> Option<f64> {
        self.values.get(q).map(|z| z.norm())
    }
}

/// `Z_q` for `q = 0..=q_max`, summing `conj(c_r) c_s det(A^{rs}_q)` over all
/// pairs of superposed determinants.
pub fn char_seq(state: &SlaterState, q_max: usize) -> Result<CharSeq> {
    if q_max < 1 {
        return Err(Error::SequenceTooShort {
            required: 1,
            available: q_max,
        });
    }
    let l = state.sites();
    let values: Vec<Complex64> = (0..=q_max)
        .into_par_iter()
        .map(|q| {
            let twist: Vec<Complex64> = (0..l)
                .map(|x| {
                    // Reduce q·x mod L first so large q does not lose phase bits.
                    let k = (q * x) % l;
                    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / l as f64)
                })
                .collect();
            expectation(state, state, Some(&twist))
        })
        .collect();
    CharSeq::new(l as f64, values, CharSource::Slater)
}

/// `⟨a|b⟩` for two (superposed) Slater determinants over the same orbital
/// space.
pub fn state_overlap(a: &SlaterState, b: &SlaterState) -> Result<Complex64> {
    if a.sites() != b.sites() || a.particles() != b.particles() {
        return Err(Error::DimensionMismatch(format!(
            "(N, L) = ({}, {}) vs ({}, {})",
            a.particles(),
            a.sites(),
            b.particles(),
            b.sites()
        )));
    }
    Ok(expectation(a, b, None))
}

fn expectation(a: &SlaterState, b: &SlaterState, weight: Option<&[Complex64]>) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for ta in a.terms() {
        for tb in b.terms() {
            let m = overlap_matrix(&ta.orbitals, &tb.orbitals, weight);
            total += ta.coeff.conj() * tb.coeff * log_det(m.view()).value();
        }
    }
    total
}

/// Single-point Berry phase `γ_R = Im Log Z_1` on `(−π, π]` and the position
/// expectation `(L/2π) γ_R`, defined modulo `L`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization {
    pub phase: f64,
    pub position: f64,
}

pub fn resta_polarization(cs: &CharSeq) -> Result<Polarization> {
    resta_polarization_with(cs, DEFAULT_POLARIZATION_THRESHOLD)
}

pub fn resta_polarization_with(cs: &CharSeq, threshold: f64) -> Result<Polarization> {
    let z1 = cs.get(1).ok_or(Error::SequenceTooShort {
        required: 1,
        available: cs.q_max(),
    })?;
    let magnitude = z1.norm();
    if magnitude < threshold {
        return Err(Error::PolarizationUndefined {
            magnitude,
            threshold,
        });
    }
    let phase = principal_arg(z1);
    Ok(Polarization {
        phase,
        position: cs.length() / (2.0 * PI) * phase,
    })
}

/// Argument on `(−π, π]`.
pub fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a == -PI {
        PI
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{
        build_model, eigensolve, occupy_ground, Boundary, ModelSpec, OccupationMode,
    };
    use ndarray::Array2;

    fn pinned(l: usize, j0: usize) -> SlaterState {
        let mut orb = Array2::zeros((1, l));
        orb[(0, j0)] = Complex64::new(1.0, 0.0);
        SlaterState::determinant(orb).unwrap()
    }

    #[test]
    fn pinned_particle_is_a_point_distribution() {
        let cs = char_seq(&pinned(100, 7), 5).unwrap();
        for q in 0..=5 {
            let expected = Complex64::from_polar(1.0, 2.0 * PI * q as f64 * 7.0 / 100.0);
            assert!((cs.values()[q] - expected).norm() < 1e-12);
        }
        let p = resta_polarization(&cs).unwrap();
        assert!((p.position - 7.0).abs() < 1e-10);
    }

    #[test]
    fn closed_shell_metal_is_flat() {
        let s = eigensolve(
            &build_model(&ModelSpec::uniform_chain(100, 1.0, Boundary::Periodic)).unwrap(),
        )
        .unwrap();
        let st = occupy_ground(&s, 49, OccupationMode::PlaneWave).unwrap();
        let cs = char_seq(&st, 5).unwrap();
        assert!((cs.values()[0] - 1.0).norm() < 1e-12);
        for q in 1..=5 {
            assert!(cs.magnitude(q).unwrap() < 1e-10);
        }
        assert!(matches!(
            resta_polarization(&cs),
            Err(Error::PolarizationUndefined { .. })
        ));
    }

    #[test]
    fn open_shell_superposition_has_half_z1() {
        let s = eigensolve(
            &build_model(&ModelSpec::uniform_chain(100, 1.0, Boundary::Periodic)).unwrap(),
        )
        .unwrap();
        for mode in [OccupationMode::Numeric, OccupationMode::PlaneWave] {
            let st = occupy_ground(&s, 50, mode).unwrap();
            assert!(st.is_degenerate());
            let cs = char_seq(&st, 3).unwrap();
            assert!((cs.magnitude(1).unwrap() - 0.5).abs() < 1e-10, "{mode:?}");
            assert!(cs.magnitude(2).unwrap() < 1e-10);
        }
    }

    #[test]
    fn overlaps() {
        let a = pinned(10, 3);
        assert!((state_overlap(&a, &a).unwrap() - 1.0).norm() < 1e-12);
        let b = pinned(10, 4);
        assert_eq!(state_overlap(&a, &b).unwrap().norm(), 0.0);
        assert!(state_overlap(&a, &pinned(11, 3)).is_err());
    }

    #[test]
    fn single_orbital_overlap_is_inner_product() {
        let mut a = Array2::zeros((1, 3));
        let mut b = Array2::zeros((1, 3));
        for x in 0..3 {
            a[(0, x)] = Complex64::new(0.5 + x as f64, 0.1 * x as f64);
            b[(0, x)] = Complex64::new(1.0 - x as f64, -0.3);
        }
        let direct: Complex64 = (0..3).map(|x| a[(0, x)].conj() * b[(0, x)]).sum();
        let via_det = state_overlap(
            &SlaterState::determinant(a).unwrap(),
            &SlaterState::determinant(b).unwrap(),
        )
        .unwrap();
        assert!((direct - via_det).norm() < 1e-12);
    }

    #[test]
    fn principal_branch() {
        assert_eq!(principal_arg(Complex64::new(-1.0, -0.0)), PI);
        assert_eq!(principal_arg(Complex64::new(-1.0, 0.0)), PI);
    }
}
