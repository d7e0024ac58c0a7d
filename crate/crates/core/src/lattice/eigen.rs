//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! implicitly shifted QL iteration with eigenvector accumulation.
//!
//! The working matrix is kept column-major so that both the Householder
//! updates and the QL plane rotations sweep contiguous memory.

use ndarray::{Array2, ShapeBuilder};

use super::{ModelMatrix, ModelSpec};
use crate::error::{Error, Result};

/// QL sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS: usize = 60;

/// Full eigendecomposition of a [`ModelMatrix`].
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    /// Column `m` is the eigenvector of `eigenvalues[m]`.
    eigenvectors: Array2<f64>,
    residual_bound: f64,
    norm_estimate: f64,
    spec: Option<ModelSpec>,
}

impl Spectrum {
    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &Array2<f64> {
        &self.eigenvectors
    }

    /// Largest `‖Hv − λv‖` over all eigenpairs.
    pub fn residual_bound(&self) -> f64 {
        self.residual_bound
    }

    /// Spectral norm estimate, `max |λ|`.
    pub fn norm_estimate(&self) -> f64 {
        self.norm_estimate
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn width(&self) -> f64 {
        self.eigenvalues[self.dim() - 1] - self.eigenvalues[0]
    }

    pub fn spec(&self) -> Option<&ModelSpec> {
        self.spec.as_ref()
    }

    /// Records the model the spectrum belongs to, for spectra of matrices
    /// assembled by hand.
    pub fn with_spec(mut self, spec: ModelSpec) -> Self {
        self.spec = Some(spec);
        self
    }
}

pub fn eigensolve(m: &ModelMatrix) -> Result<Spectrum> {
    let n = m.dim();
    let a = m.entries();

    let mut v = vec![0.0; n * n];
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    if is_tridiagonal(a) {
        for i in 0..n {
            d[i] = a[(i, i)];
            v[i * n + i] = 1.0;
            if i > 0 {
                e[i] = a[(i, i - 1)];
            }
        }
    } else {
        for j in 0..n {
            for i in 0..n {
                v[j * n + i] = a[(i, j)];
            }
        }
        tred2(n, &mut v, &mut d, &mut e);
    }
    tql2(n, &mut v, &mut d, &mut e)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| d[x].total_cmp(&d[y]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| d[k]).collect();
    let mut sorted = Vec::with_capacity(n * n);
    for &k in &order {
        sorted.extend_from_slice(&v[k * n..(k + 1) * n]);
    }
    let eigenvectors = Array2::from_shape_vec((n, n).f(), sorted).expect("n*n buffer");

    let hv = a.dot(&eigenvectors);
    let mut residual_bound: f64 = 0.0;
    for (col, &lambda) in eigenvalues.iter().enumerate() {
        let r = hv
            .column(col)
            .iter()
            .zip(eigenvectors.column(col))
            .map(|(x, y)| (x - lambda * y).powi(2))
            .sum::<f64>()
            .sqrt();
        residual_bound = residual_bound.max(r);
    }
    let norm_estimate = eigenvalues.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    if residual_bound > 1e-10 * norm_estimate.max(1.0) {
        return Err(Error::NoConvergence {
            iterations: MAX_SWEEPS,
            residual: residual_bound,
        });
    }

    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        residual_bound,
        norm_estimate,
        spec: m.spec().copied(),
    })
}

fn is_tridiagonal(a: &Array2<f64>) -> bool {
    a.indexed_iter()
        .all(|((i, j), &x)| x == 0.0 || i.abs_diff(j) <= 1)
}

/// Householder reduction to tridiagonal form. On entry `v` holds the matrix
/// (column-major, `v[j * n + i]` is row `i`, column `j`); on exit it holds the
/// accumulated orthogonal transformation, `d` the diagonal and `e[1..]` the
/// subdiagonal.
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    let at = |i: usize, j: usize| j * n + i;

    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }

            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                let col = &v[j * n..j * n + i];
                for k in j + 1..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                let col = &mut v[j * n..j * n + i];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }

    for i in 0..n.saturating_sub(1) {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                let col = &mut v[j * n..j * n + i + 1];
                for k in 0..=i {
                    col[k] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicitly shifted QL on the tridiagonal `(d, e)`, rotating the columns of
/// `v` along. Eigenvalues are left unsorted in `d`.
fn tql2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }

        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence {
                        iterations: sweeps - 1,
                        residual: e[l].abs(),
                    });
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (left, right) = v.split_at_mut((i + 1) * n);
                    let zi = &mut left[i * n..];
                    let zi1 = &mut right[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let hk = *b;
                        *b = s * *a + c * hk;
                        *a = c * *a - s * hk;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
