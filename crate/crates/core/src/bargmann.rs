//! Extended Bargmann invariants `Γ_q = Π_J ⟨Ψ(ξ_J)|Ψ(ξ_{J+q})⟩` of discrete
//! state paths, the discrete Berry phase, and their Bloch-band specialization
//! for the SSH chain.

use std::f64::consts::PI;

use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genfun::{reduced_cumulants, window_radius};
use crate::slater::{principal_arg, CharSeq, CharSource};

/// Link magnitude below which a path is treated as passing a degeneracy.
pub const GAPLESS_THRESHOLD: f64 = 1e-12;

/// How kets that run past the last state are brought back into the path.
#[derive(Debug, Clone, PartialEq)]
pub enum Closure {
    /// `ξ_M ≡ ξ_0`.
    Cyclic,
    /// `|Ψ(ξ_{J+M})⟩ = S |Ψ(ξ_J)⟩` with `S` diagonal; entries are its
    /// unit-modulus diagonal.
    SymmetryClosed(Vec<Complex64>),
}

#[derive(Debug, Clone)]
pub struct StatePath {
    states: Vec<Array1<Complex64>>,
    closure: Closure,
}

impl StatePath {
    pub fn new(states: Vec<Array1<Complex64>>, closure: Closure) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::InvalidPath(format!(
                "need at least 2 states, got {}",
                states.len()
            )));
        }
        let dim = states[0].len();
        for (j, s) in states.iter().enumerate() {
            if s.len() != dim {
                return Err(Error::InvalidPath(format!(
                    "state {j} has dimension {} instead of {dim}",
                    s.len()
                )));
            }
            let norm = s.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-10 {
                return Err(Error::InvalidPath(format!("state {j} has norm {norm}")));
            }
        }
        if let Closure::SymmetryClosed(diag) = &closure {
            if diag.len() != dim {
                return Err(Error::InvalidPath(format!(
                    "symmetry action has dimension {} instead of {dim}",
                    diag.len()
                )));
            }
        }
        Ok(StatePath { states, closure })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[Array1<Complex64>] {
        &self.states
    }

    /// `⟨Ψ_J | Ψ_{J+q}⟩` with the closure applied to wrapped kets.
    fn link(&self, j: usize, q: usize) -> Complex64 {
        let m = self.len();
        let bra = &self.states[j];
        let target = j + q;
        let ket = &self.states[target % m];
        let wraps = target / m;
        match (&self.closure, wraps) {
            (Closure::SymmetryClosed(diag), w) if w > 0 => bra
                .iter()
                .zip(ket)
                .zip(diag)
                .map(|((b, k), s)| b.conj() * s.powu(w as u32) * k)
                .sum(),
            _ => bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum(),
        }
    }

    /// Index and magnitude of the weakest nearest-neighbour link.
    pub fn min_link(&self) -> (usize, f64) {
        (0..self.len())
            .map(|j| (j, self.link(j, 1).norm()))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }
}

/// `Γ_q`, multiplied in path order.
pub fn gamma_q(path: &StatePath, q: usize) -> Result<Complex64> {
    if q >= path.len() {
        return Err(Error::ShiftOutOfRange { q, len: path.len() });
    }
    Ok((0..path.len())
        .map(|j| path.link(j, q))
        .fold(Complex64::new(1.0, 0.0), |acc, l| acc * l))
}

/// `Im Log Γ_1` on `(−π, π]`.
pub fn discrete_berry_phase(path: &StatePath) -> Result<f64> {
    let (link, magnitude) = path.min_link();
    if magnitude < GAPLESS_THRESHOLD {
        return Err(Error::DegeneracyCrossed { link, magnitude });
    }
    Ok(principal_arg(gamma_q(path, 1)?))
}

/// Ground states of `H(θ) = h_z(θ) σ_z + h_x(θ) σ_x` on a circle of radius
/// `radius` about `center = (h_z, h_x)` in the `(h_z, h_x)` plane, sampled at
/// `θ_J = 2π J / samples`. The degeneracy point is the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelLoop {
    pub center: (f64, f64),
    pub radius: f64,
    pub samples: usize,
}

impl TwoLevelLoop {
    pub fn field(&self, theta: f64) -> (f64, f64) {
        (
            self.center.0 + self.radius * theta.cos(),
            self.center.1 + self.radius * theta.sin(),
        )
    }

    /// Real lower eigenvectors. A sample sitting on the degeneracy point has
    /// no ground state, which is reported as a crossed degeneracy.
    pub fn path(&self) -> Result<StatePath> {
        let states = (0..self.samples)
            .map(|j| {
                let theta = 2.0 * PI * j as f64 / self.samples as f64;
                let (hz, hx) = self.field(theta);
                let gap = 2.0 * hz.hypot(hx);
                if gap < GAPLESS_THRESHOLD {
                    return Err(Error::DegeneracyCrossed {
                        link: j,
                        magnitude: gap,
                    });
                }
                let half = hx.atan2(hz) / 2.0;
                Ok(Array1::from_vec(vec![
                    Complex64::new(-half.sin(), 0.0),
                    Complex64::new(half.cos(), 0.0),
                ]))
            })
            .collect::<Result<Vec<_>>>()?;
        StatePath::new(states, Closure::Cyclic)
    }
}

/// Intracell coordinates of the two SSH sublattices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Embedding {
    /// Sites at `0` and `1` within a cell of length 2, as in the real-space
    /// chain. Matches `slater::char_seq` on the same model.
    SitePositions,
    /// Both sublattices at the cell origin: the textbook gauge in which the
    /// Zak phase is `0` or `π` for the two dimer limits.
    CellOrigin,
}

/// Lower SSH band on the grid `k_m = 2π m / (N_c l_cell)`, `l_cell = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochBand {
    pub j_odd: f64,
    pub j_even: f64,
    pub cells: usize,
    pub embedding: Embedding,
}

impl BlochBand {
    pub fn new(j_odd: f64, j_even: f64, cells: usize) -> Self {
        BlochBand {
            j_odd,
            j_even,
            cells,
            embedding: Embedding::SitePositions,
        }
    }

    pub fn with_embedding(mut self, embedding: Embedding) -> Self {
        self.embedding = embedding;
        self
    }

    pub const CELL_LENGTH: f64 = 2.0;

    pub fn length(&self) -> f64 {
        self.cells as f64 * Self::CELL_LENGTH
    }

    /// Grid spacing `Δk = 2π / (N_c l_cell)`.
    pub fn dk(&self) -> f64 {
        2.0 * PI / self.length()
    }

    fn tau_b(&self) -> f64 {
        match self.embedding {
            Embedding::SitePositions => 1.0,
            Embedding::CellOrigin => 0.0,
        }
    }

    /// Lower-band Bloch vector at momentum `k`, first component real-positive.
    pub fn vector(&self, k: f64) -> Array1<Complex64> {
        // h_AB(k) = −Σ_bonds J e^{ik(x_B − x_A)} for the two bonds leaving A.
        let tau = self.tau_b();
        let z = -(Complex64::from_polar(self.j_odd, k * tau)
            + Complex64::from_polar(self.j_even, k * (tau - Self::CELL_LENGTH)));
        let r = z.norm();
        // Lower eigenvector of [[0, z], [z*, 0]] is (1, −z*/|z|)/√2; at a
        // band touching pick the symmetric combination.
        let w = if r == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            -z.conj() / r
        };
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Array1::from_vec(vec![Complex64::new(s, 0.0), w * s])
    }

    /// Diagonal of `e^{−i G x}` with `G = 2π / l_cell`, relating `u_{k+G}` to `u_k`.
    pub fn symmetry_action(&self) -> Vec<Complex64> {
        let g = 2.0 * PI / Self::CELL_LENGTH;
        vec![
            Complex64::new(1.0, 0.0),
            Complex64::from_polar(1.0, -g * self.tau_b()),
        ]
    }

    pub fn path(&self) -> Result<StatePath> {
        let dk = self.dk();
        let states = (0..self.cells)
            .map(|m| self.vector(m as f64 * dk))
            .collect();
        StatePath::new(states, Closure::SymmetryClosed(self.symmetry_action()))
    }
}

/// `Z_q = Γ_q^{(Z)}` of the filled lower band, `q = 0..=q_max < N_c`.
pub fn bloch_char_seq(band: &BlochBand, q_max: usize) -> Result<CharSeq> {
    if band.cells < 2 {
        return Err(Error::InvalidPath(format!(
            "need at least 2 cells, got {}",
            band.cells
        )));
    }
    let path = band.path()?;
    let values = (0..=q_max)
        .map(|q| gamma_q(&path, q))
        .collect::<Result<Vec<_>>>()?;
    CharSeq::new(band.length(), values, CharSource::Bloch)
}

/// Grid estimates of the gauge-invariant cumulants,
/// `C_n^(G) ≈ c_n^(Z) / Δk^{n−1}` (so `C_1^(G)` is the Zak phase), for
/// `n = 1..=n_max`, `n_max ≤ 4`.
pub fn swm_discrete_cumulants(band: &BlochBand, n_max: usize) -> Result<Vec<f64>> {
    if n_max == 0 || n_max > 4 {
        return Err(Error::StencilRange {
            n: n_max as u32,
            mu: 1,
        });
    }
    let path = band.path()?;
    let (_, magnitude) = path.min_link();
    if magnitude < GAPLESS_THRESHOLD {
        return Err(Error::Gapless { magnitude });
    }
    let cs = bloch_char_seq(band, window_radius(4, 1))?;
    let reduced = reduced_cumulants(&cs, 1)?;
    let dk = band.dk();
    Ok((0..n_max).map(|i| reduced[i] / dk.powi(i as i32)).collect())
}
