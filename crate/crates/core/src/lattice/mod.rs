//! One-dimensional tight-binding models, their dense eigendecomposition and
//! ground-state occupation.
//!
//! Sites are labelled `j = 0..L`, the lattice constant is one, and the site
//! index doubles as the position coordinate everywhere in the crate.

mod eigen;
mod occupy;

pub use eigen::{eigensolve, Spectrum};
pub use occupy::{obc_position_moments, occupy_ground, OccupationMode, SlaterState, SlaterTerm};

use std::f64::consts::PI;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::number_theory::fibonacci;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Boundary {
    Open,
    Periodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ModelKind {
    /// Uniform nearest-neighbour chain with hopping `t`.
    UniformChain { t: f64 },
    /// Su-Schrieffer-Heeger chain: bond `(j, j+1)` carries `j_odd` for even `j`
    /// (intracell) and `j_even` for odd `j` (intercell).
    Ssh { j_odd: f64, j_even: f64 },
    /// Aubry-André chain of `F_n` sites with on-site potential
    /// `w cos(2π α j + phase_offset)`, `α = F_{n+1}/F_n`.
    AubryAndre {
        t: f64,
        w: f64,
        fib_index: u32,
        phase_offset: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub sites: usize,
    pub boundary: Boundary,
}

impl ModelSpec {
    pub fn uniform_chain(sites: usize, t: f64, boundary: Boundary) -> Self {
        ModelSpec {
            kind: ModelKind::UniformChain { t },
            sites,
            boundary,
        }
    }

    /// SSH chain of `cells` two-site cells.
    pub fn ssh(cells: usize, j_odd: f64, j_even: f64, boundary: Boundary) -> Self {
        ModelSpec {
            kind: ModelKind::Ssh { j_odd, j_even },
            sites: 2 * cells,
            boundary,
        }
    }

    /// SSH chain parametrized by mean hopping and alternation,
    /// `J_o = J̄ + δJ`, `J_e = J̄ − δJ`.
    pub fn ssh_dimerized(cells: usize, mean: f64, alternation: f64, boundary: Boundary) -> Self {
        Self::ssh(cells, mean + alternation, mean - alternation, boundary)
    }

    /// Periodic Aubry-André chain with `L = F_n`.
    pub fn aubry_andre(fib_index: u32, t: f64, w: f64) -> Result<Self> {
        let sites = fibonacci(fib_index)?;
        let sites = usize::try_from(sites)
            .map_err(|_| Error::InvalidModel(format!("F_{fib_index} does not fit in usize")))?;
        Ok(ModelSpec {
            kind: ModelKind::AubryAndre {
                t,
                w,
                fib_index,
                phase_offset: 0.0,
            },
            sites,
            boundary: Boundary::Periodic,
        })
    }

    pub fn with_boundary(mut self, boundary: Boundary) -> Self {
        self.boundary = boundary;
        self
    }

    /// `α = F_{n+1}/F_n` as an exact `(numerator, denominator)` pair, for
    /// Aubry-André models only.
    pub fn aa_alpha(&self) -> Option<(u128, u128)> {
        match self.kind {
            ModelKind::AubryAndre { fib_index, .. } => {
                let num = fibonacci(fib_index + 1).ok()?;
                let den = fibonacci(fib_index).ok()?;
                Some((num, den))
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(Error::InvalidModel(format!(
                "need at least 2 sites, got {}",
                self.sites
            )));
        }
        match self.kind {
            ModelKind::Ssh { .. } if !self.sites.is_multiple_of(2) => {
                Err(Error::InvalidModel(format!(
                    "SSH chain needs an even site count (two sites per cell), got {}",
                    self.sites
                )))
            }
            ModelKind::AubryAndre { fib_index, .. } => {
                let expected = fibonacci(fib_index)?;
                if expected != self.sites as u128 {
                    Err(Error::InvalidModel(format!(
                        "Aubry-André chain must have L = F_{fib_index} = {expected} sites so that α = F_{{n+1}}/F_n is commensurate, got {}",
                        self.sites
                    )))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Hopping on the bond `(j, j+1 mod L)`, as a positive amplitude.
    fn bond(&self, j: usize) -> f64 {
        match self.kind {
            ModelKind::UniformChain { t } | ModelKind::AubryAndre { t, .. } => t,
            ModelKind::Ssh { j_odd, j_even } => {
                if j.is_multiple_of(2) {
                    j_odd
                } else {
                    j_even
                }
            }
        }
    }

    fn onsite(&self, j: usize) -> f64 {
        match self.kind {
            ModelKind::AubryAndre {
                w,
                fib_index,
                phase_offset,
                ..
            } => {
                // α j mod 1 computed exactly in integers keeps the potential
                // L-periodic to the last bit.
                let num = fibonacci(fib_index + 1).expect("validated index");
                let den = fibonacci(fib_index).expect("validated index");
                let frac = ((num * j as u128) % den) as f64 / den as f64;
                w * (2.0 * PI * frac + phase_offset).cos()
            }
            _ => 0.0,
        }
    }
}

/// Dense real symmetric single-particle Hamiltonian.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelMatrix {
    entries: Array2<f64>,
    spec: Option<ModelSpec>,
}

impl ModelMatrix {
    /// Wraps an arbitrary real symmetric matrix (symmetry checked exactly).
    pub fn from_symmetric(entries: Array2<f64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols || rows == 0 {
            return Err(Error::DimensionMismatch(format!(
                "expected a non-empty square matrix, got {rows}x{cols}"
            )));
        }
        for i in 0..rows {
            for j in 0..i {
                if entries[(i, j)] != entries[(j, i)] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(ModelMatrix {
            entries,
            spec: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<f64> {
        &self.entries
    }

    /// The model this matrix was built from, if any.
    pub fn spec(&self) -> Option<&ModelSpec> {
        self.spec.as_ref()
    }
}

/// Realizes the model's Hamiltonian as a dense matrix.
pub fn build_model(spec: &ModelSpec) -> Result<ModelMatrix> {
    spec.validate()?;
    let l = spec.sites;
    let mut h = Array2::<f64>::zeros((l, l));
    for j in 0..l {
        h[(j, j)] = spec.onsite(j);
    }
    for j in 0..l - 1 {
        let v = -spec.bond(j);
        h[(j, j + 1)] = v;
        h[(j + 1, j)] = v;
    }
    if spec.boundary == Boundary::Periodic {
        let v = -spec.bond(l - 1);
        // For L = 2 the corner bond doubles the single bond.
        h[(0, l - 1)] += v;
        if l > 2 {
            h[(l - 1, 0)] += v;
        } else {
            h[(1, 0)] = h[(0, 1)];
        }
    }
    Ok(ModelMatrix {
        entries: h,
        spec: Some(*spec),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_triangle() {
        let m = build_model(&ModelSpec::uniform_chain(3, 1.0, Boundary::Periodic)).unwrap();
        let h = m.entries();
        for i in 0..3 {
            assert_eq!(h[(i, i)], 0.0);
            for j in 0..3 {
                if i != j {
                    assert_eq!(h[(i, j)], -1.0);
                }
            }
        }
    }

    #[test]
    fn ssh_alternation() {
        let m = build_model(&ModelSpec::ssh(2, 1.0, 0.5, Boundary::Periodic)).unwrap();
        let h = m.entries();
        assert_eq!(h[(0, 1)], -1.0);
        assert_eq!(h[(1, 2)], -0.5);
        assert_eq!(h[(2, 3)], -1.0);
        assert_eq!(h[(3, 0)], -0.5);
        assert_eq!(h[(0, 3)], -0.5);
        assert_eq!(h[(0, 2)], 0.0);

        let open = build_model(&ModelSpec::ssh(2, 1.0, 0.5, Boundary::Open)).unwrap();
        assert_eq!(open.entries()[(0, 3)], 0.0);
    }

    #[test]
    fn aubry_andre_diagonal() {
        let spec = ModelSpec::aubry_andre(5, 1.0, 2.0).unwrap();
        assert_eq!(spec.sites, 5);
        assert_eq!(spec.aa_alpha(), Some((8, 5)));
        let m = build_model(&spec).unwrap();
        for j in 0..5 {
            let expected = 2.0 * (2.0 * PI * 8.0 / 5.0 * j as f64).cos();
            assert!((m.entries()[(j, j)] - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn aubry_andre_potential_is_l_periodic() {
        let spec = ModelSpec::aubry_andre(10, 1.0, 1.3).unwrap();
        for j in 0..spec.sites {
            assert_eq!(spec.onsite(j), spec.onsite(j + spec.sites));
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        let mut spec = ModelSpec::aubry_andre(6, 1.0, 2.0).unwrap();
        spec.sites = 9;
        assert!(matches!(build_model(&spec), Err(Error::InvalidModel(_))));

        let ssh = ModelSpec {
            kind: ModelKind::Ssh {
                j_odd: 1.0,
                j_even: 0.5,
            },
            sites: 5,
            boundary: Boundary::Open,
        };
        assert!(matches!(build_model(&ssh), Err(Error::InvalidModel(_))));

        let tiny = ModelSpec::uniform_chain(1, 1.0, Boundary::Open);
        assert!(build_model(&tiny).is_err());
    }

    #[test]
    fn from_symmetric_checks_exactly() {
        let mut a = Array2::<f64>::zeros((2, 2));
        a[(0, 1)] = 1.0;
        a[(1, 0)] = 1.0 + 1e-15;
        assert!(matches!(
            ModelMatrix::from_symmetric(a),
            Err(Error::NotSymmetric { .. })
        ));
    }
}
