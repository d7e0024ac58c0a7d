//! Complex dense kernels for determinant overlaps.

use ndarray::{Array2, ArrayView2, Zip};
use num_complex::Complex64;

/// Determinant stored as `phase · exp(ln_abs)` so that products of many small
/// pivots neither underflow nor lose their phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDet {
    pub ln_abs: f64,
    /// Unit-modulus phase; zero for a singular matrix.
    pub phase: Complex64,
}

impl LogDet {
    pub fn value(&self) -> Complex64 {
        if self.ln_abs == f64::NEG_INFINITY {
            Complex64::new(0.0, 0.0)
        } else {
            self.phase * self.ln_abs.exp()
        }
    }
}

/// Determinant by LU factorization with partial pivoting.
pub fn log_det(a: ArrayView2<Complex64>) -> LogDet {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "log_det needs a square matrix");
    let mut m: Vec<Complex64> = a.iter().copied().collect();
    let mut ln_abs = 0.0;
    let mut phase = Complex64::new(1.0, 0.0);

    for k in 0..n {
        let (pivot, pivot_abs) =
            (k..n)
                .map(|i| (i, m[i * n + k].norm()))
                .fold(
                    (k, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if pivot_abs == 0.0 {
            return LogDet {
                ln_abs: f64::NEG_INFINITY,
                phase: Complex64::new(0.0, 0.0),
            };
        }
        if pivot != k {
            for j in 0..n {
                m.swap(k * n + j, pivot * n + j);
            }
            phase = -phase;
        }
        let p = m[k * n + k];
        ln_abs += pivot_abs.ln();
        phase *= p / pivot_abs;

        let (upper, lower) = m.split_at_mut((k + 1) * n);
        let pivot_row = &upper[k * n + k + 1..k * n + n];
        for row in lower.chunks_exact_mut(n) {
            let factor = row[k] / p;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x -= factor * y;
            }
        }
    }
    // Re-normalize the accumulated phase against drift.
    let norm = phase.norm();
    LogDet {
        ln_abs,
        phase: phase / norm,
    }
}

/// Orbital overlap matrix `A_ij = Σ_x conj(a_i(x)) w(x) b_j(x)` for row-wise
/// orbitals `a`, `b` and an optional diagonal weight `w`.
///
/// Real and imaginary parts are contracted with real matrix products, which
/// skips half of the work when the orbitals are real.
pub fn overlap_matrix(
    a: &Array2<Complex64>,
    b: &Array2<Complex64>,
    weight: Option<&[Complex64]>,
) -> Array2<Complex64> {
    let (ar, ai) = split(a);
    let mut weighted = b.clone();
    if let Some(w) = weight {
        for mut row in weighted.rows_mut() {
            for (x, &wx) in row.iter_mut().zip(w) {
                *x *= wx;
            }
        }
    }
    let (br, bi) = split(&weighted);

    // conj(a) · b^T = (ar − i ai)(br + i bi)^T
    let mut re = ar.dot(&br.t());
    let mut im = match &bi {
        Some(bi) => ar.dot(&bi.t()),
        None => Array2::zeros(re.dim()),
    };
    if let Some(ai) = &ai {
        if let Some(bi) = &bi {
            re = re + ai.dot(&bi.t());
        }
        im = im - ai.dot(&br.t());
    }
    let mut out = Array2::zeros(re.dim());
    Zip::from(&mut out)
        .and(&re)
        .and(&im)
        .for_each(|o, &r, &i| *o = Complex64::new(r, i));
    out
}

/// Splits into real part and (if not identically zero) imaginary part.
fn split(m: &Array2<Complex64>) -> (Array2<f64>, Option<Array2<f64>>) {
    let re = m.mapv(|z| z.re);
    if m.iter().all(|z| z.im == 0.0) {
        (re, None)
    } else {
        (re, Some(m.mapv(|z| z.im)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::arr2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn determinant_of_small_matrices() {
        let a = arr2(&[[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]]);
        let d = log_det(a.view()).value();
        assert!((d - c(-2.0, 0.0)).norm() < 1e-14);

        let b = arr2(&[[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 1.0)]]);
        assert!((log_det(b.view()).value() - c(-1.0, 0.0)).norm() < 1e-14);

        let z = arr2(&[[c(1.0, 0.0), c(2.0, 0.0)], [c(2.0, 0.0), c(4.0, 0.0)]]);
        assert_eq!(log_det(z.view()).value(), c(0.0, 0.0));
    }

    #[test]
    fn tiny_determinants_keep_their_phase() {
        let n = 400;
        let mut a = Array2::<Complex64>::zeros((n, n));
        for i in 0..n {
            a[(i, i)] = Complex64::from_polar(1e-3, 0.01);
        }
        let d = log_det(a.view());
        assert!((d.ln_abs - n as f64 * 1e-3f64.ln()).abs() < 1e-9);
        let expected = Complex64::from_polar(1.0, 0.01 * n as f64);
        assert!((d.phase - expected).norm() < 1e-12);
    }

    #[test]
    fn overlap_with_weight() {
        let a = arr2(&[[c(1.0, 0.0), c(0.0, 0.0)]]);
        let b = arr2(&[[c(0.0, 1.0), c(0.0, 0.0)]]);
        let w = [c(0.0, 1.0), c(1.0, 0.0)];
        let m = overlap_matrix(&a, &b, Some(&w));
        assert!((m[(0, 0)] - c(-1.0, 0.0)).norm() < 1e-15);
        let m = overlap_matrix(&b, &b, None);
        assert!((m[(0, 0)] - c(1.0, 0.0)).norm() < 1e-15);
    }
}
