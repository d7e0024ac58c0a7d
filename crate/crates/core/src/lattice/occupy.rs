use std::f64::consts::{FRAC_1_SQRT_2, PI};

use ndarray::{Array2, ArrayView1};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{Boundary, ModelKind, Spectrum};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OccupationMode {
    /// Occupy the numerically computed eigenvectors.
    Numeric,
    /// Occupy analytic plane waves by ascending `|k|` shell (periodic uniform
    /// chains only).
    PlaneWave,
}

/// One Slater determinant with its amplitude in the superposition.
#[derive(Debug, Clone)]
pub struct SlaterTerm {
    pub coeff: Complex64,
    /// One row per occupied orbital, one column per site.
    pub orbitals: Array2<Complex64>,
}

/// Free-fermion ground state: a single determinant or the equal-weight
/// superposition of two degenerate determinants.
#[derive(Debug, Clone)]
pub struct SlaterState {
    sites: usize,
    particles: usize,
    terms: Vec<SlaterTerm>,
    degenerate: bool,
}

impl SlaterState {
    /// Single-determinant state from `particles × sites` orbitals, which are
    /// assumed orthonormal.
    pub fn determinant(orbitals: Array2<Complex64>) -> Result<Self> {
        let (particles, sites) = orbitals.dim();
        if particles == 0 || particles > sites {
            return Err(Error::ParticleCount {
                particles,
                dim: sites,
            });
        }
        Ok(SlaterState {
            sites,
            particles,
            terms: vec![SlaterTerm {
                coeff: Complex64::new(1.0, 0.0),
                orbitals,
            }],
            degenerate: false,
        })
    }

    /// Superposition of determinants. Coefficients are used as given; the
    /// caller is responsible for normalization.
    pub fn superposition(terms: Vec<SlaterTerm>, degenerate: bool) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::DimensionMismatch("empty superposition".into()))?;
        let (particles, sites) = first.orbitals.dim();
        for t in &terms {
            if t.orbitals.dim() != (particles, sites) {
                return Err(Error::DimensionMismatch(format!(
                    "terms disagree on (N, L): {:?} vs {:?}",
                    t.orbitals.dim(),
                    (particles, sites)
                )));
            }
        }
        Ok(SlaterState {
            sites,
            particles,
            terms,
            degenerate,
        })
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn terms(&self) -> &[SlaterTerm] {
        &self.terms
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }
}

/// Fills the `particles` lowest levels.
///
/// A two-fold degenerate Fermi level with one vacancy yields the equal-weight
/// superposition `(|Ψ_a⟩ + |Ψ_b⟩)/√2` of the two frontier determinants. Deeper
/// degeneracies are rejected.
pub fn occupy_ground(s: &Spectrum, particles: usize, mode: OccupationMode) -> Result<SlaterState> {
    let dim = s.dim();
    if particles == 0 || particles > dim {
        return Err(Error::ParticleCount { particles, dim });
    }
    let state = match mode {
        OccupationMode::Numeric => occupy_numeric(s, particles)?,
        OccupationMode::PlaneWave => occupy_plane_waves(s, particles)?,
    };
    if let Some(spec) = s.spec() {
        if spec.boundary == Boundary::Periodic {
            let parity_rule = (particles % 2) != (spec.sites % 2);
            if parity_rule != state.degenerate {
                log::debug!(
                    "N = {particles}, L = {}: spectral degeneracy {} disagrees with the N/L parity rule",
                    spec.sites,
                    state.degenerate
                );
            }
        }
    }
    Ok(state)
}

pub(crate) fn degeneracy_tolerance(s: &Spectrum) -> f64 {
    1e-9 * s.width().max(1.0)
}

fn occupy_numeric(s: &Spectrum, particles: usize) -> Result<SlaterState> {
    let dim = s.dim();
    let ev = s.eigenvalues();
    let vecs = s.eigenvectors();
    let column = |m: usize| vecs.column(m).mapv(|x| Complex64::new(x, 0.0));
    let tol = degeneracy_tolerance(s);

    if particles == dim || ev[particles] - ev[particles - 1] >= tol {
        let orbitals = stack((0..particles).map(&column).collect(), dim);
        return SlaterState::determinant(orbitals);
    }

    // Degenerate Fermi level: find the full multiplet around E_N.
    let fermi = ev[particles - 1];
    let lo = (0..particles)
        .rev()
        .take_while(|&m| fermi - ev[m] < tol)
        .last()
        .unwrap_or(particles - 1);
    let hi = (particles..dim)
        .take_while(|&m| ev[m] - fermi < tol)
        .last()
        .map_or(particles, |m| m + 1);
    let multiplicity = hi - lo;
    let vacancies = particles - lo;
    if multiplicity != 2 || vacancies != 1 {
        return Err(Error::DeepDegeneracy {
            multiplicity,
            vacancies,
        });
    }

    let core: Vec<_> = (0..lo).map(&column).collect();
    let with = |extra: usize| {
        let mut rows = core.clone();
        rows.push(column(extra));
        stack(rows, dim)
    };
    let amp = Complex64::new(FRAC_1_SQRT_2, 0.0);
    SlaterState::superposition(
        vec![
            SlaterTerm {
                coeff: amp,
                orbitals: with(lo),
            },
            SlaterTerm {
                coeff: amp,
                orbitals: with(lo + 1),
            },
        ],
        true,
    )
}

fn occupy_plane_waves(s: &Spectrum, particles: usize) -> Result<SlaterState> {
    let spec = s.spec().ok_or(Error::PlaneWaveUnsupported)?;
    let t = match (spec.kind, spec.boundary) {
        (ModelKind::UniformChain { t }, Boundary::Periodic) => t,
        _ => return Err(Error::PlaneWaveUnsupported),
    };
    let l = spec.sites;
    let wave = |k: i64| {
        let norm = 1.0 / (l as f64).sqrt();
        ndarray::Array1::from_iter(
            (0..l)
                .map(|x| Complex64::from_polar(norm, 2.0 * PI * (k * x as i64) as f64 / l as f64)),
        )
    };

    // Momenta in [-L/2, L/2), ordered by single-particle energy.
    let half = (l / 2) as i64;
    let lowest = -half;
    let mut momenta: Vec<i64> = (lowest..lowest + l as i64).collect();
    let energy = |k: i64| -2.0 * t * (2.0 * PI * k as f64 / l as f64).cos();
    momenta.sort_by(|&a, &b| {
        energy(a)
            .total_cmp(&energy(b))
            .then(a.abs().cmp(&b.abs()))
            .then(b.cmp(&a))
    });

    let tol = degeneracy_tolerance(s);
    if particles == l || energy(momenta[particles]) - energy(momenta[particles - 1]) >= tol {
        let orbitals = stack(momenta[..particles].iter().map(|&k| wave(k)).collect(), l);
        return SlaterState::determinant(orbitals);
    }

    let core: Vec<_> = momenta[..particles - 1].iter().map(|&k| wave(k)).collect();
    let frontier = [momenta[particles - 1], momenta[particles]];
    if particles + 1 < l && energy(momenta[particles + 1]) - energy(frontier[0]) < tol {
        return Err(Error::DeepDegeneracy {
            multiplicity: 3,
            vacancies: 1,
        });
    }
    let amp = Complex64::new(FRAC_1_SQRT_2, 0.0);
    let terms = frontier
        .iter()
        .map(|&k| {
            let mut rows = core.clone();
            rows.push(wave(k));
            SlaterTerm {
                coeff: amp,
                orbitals: stack(rows, l),
            }
        })
        .collect();
    SlaterState::superposition(terms, true)
}

fn stack(rows: Vec<ndarray::Array1<Complex64>>, sites: usize) -> Array2<Complex64> {
    let mut out = Array2::zeros((rows.len(), sites));
    for (mut dst, src) in out.rows_mut().into_iter().zip(rows) {
        dst.assign(&src);
    }
    out
}

/// Centered second and fourth moments of the single-particle position
/// distribution `ρ(x) = (1/N) Σ_m |φ_m(x)|²` of the `particles` lowest
/// orbitals of an open chain, positions `x_j = j + 1`.
pub fn obc_position_moments(s: &Spectrum, particles: usize) -> Result<(f64, f64)> {
    match s.spec() {
        Some(spec) if spec.boundary == Boundary::Open => {}
        _ => return Err(Error::NotOpenBoundary),
    }
    let dim = s.dim();
    if particles == 0 || particles > dim {
        return Err(Error::ParticleCount { particles, dim });
    }
    let vecs = s.eigenvectors();
    let mut density = vec![0.0; dim];
    for m in 0..particles {
        let phi: ArrayView1<f64> = vecs.column(m);
        let norm: f64 = phi.iter().map(|x| x * x).sum();
        for (rho, x) in density.iter_mut().zip(phi) {
            *rho += x * x / norm;
        }
    }
    let n = particles as f64;
    let position = |j: usize| (j + 1) as f64;
    let mean = density
        .iter()
        .enumerate()
        .map(|(j, rho)| position(j) * rho)
        .sum::<f64>()
        / n;
    let (mut m2, mut m4) = (0.0, 0.0);
    for (j, rho) in density.iter().enumerate() {
        let dx2 = (position(j) - mean).powi(2);
        m2 += dx2 * rho;
        m4 += dx2 * dx2 * rho;
    }
    Ok((m2 / n, m4 / n))
}
