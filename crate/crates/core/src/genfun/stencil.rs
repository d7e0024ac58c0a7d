//! Exact central finite-difference stencils.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported accuracy order.
pub const MAX_MU: u32 = 64;
/// Largest supported derivative order.
pub const MAX_DERIVATIVE: u32 = 4;

/// Central stencil for the `n`th derivative at `q = 0`, accurate to
/// `O(h^{2μ})`, on the symmetric window `−radius..=radius`.
#[derive(Debug, Clone)]
pub struct StencilTable {
    n: u32,
    mu: u32,
    exact: Vec<BigRational>,
    coeffs: Vec<f64>,
}

impl StencilTable {
    pub fn derivative(&self) -> u32 {
        self.n
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn radius(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn offsets(&self) -> impl Iterator<Item = i64> + '_ {
        let r = self.radius() as i64;
        -r..=r
    }

    /// Coefficients for offsets `−radius..=radius`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn exact(&self) -> &[BigRational] {
        &self.exact
    }

    /// Coefficient at offset `j`.
    pub fn at(&self, j: i64) -> f64 {
        self.coeffs[(j + self.radius() as i64) as usize]
    }

    pub fn central(&self) -> f64 {
        self.coeffs[self.radius()]
    }
}

/// Half-width of the minimal central window for derivative `n` at accuracy `2μ`.
pub fn window_radius(n: u32, mu: u32) -> usize {
    (n.div_ceil(2) + mu - 1) as usize
}

/// Cached stencil for `(n, μ)`.
pub fn stencil(n: u32, mu: u32) -> Result<Arc<StencilTable>> {
    if n == 0 || n > MAX_DERIVATIVE || mu == 0 || mu > MAX_MU {
        return Err(Error::StencilRange { n, mu });
    }
    type Cache = RwLock<HashMap<(u32, u32), Arc<StencilTable>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.read().expect("stencil cache poisoned").get(&(n, mu)) {
        return Ok(Arc::clone(hit));
    }
    let table = Arc::new(build(n, mu));
    cache
        .write()
        .expect("stencil cache poisoned")
        .entry((n, mu))
        .or_insert_with(|| Arc::clone(&table));
    Ok(table)
}

fn build(n: u32, mu: u32) -> StencilTable {
    let r = window_radius(n, mu) as i64;
    let points: Vec<i64> = (-r..=r).collect();
    let exact = fornberg(&points, n as usize);
    let coeffs = exact.iter().map(to_f64).collect();
    StencilTable {
        n,
        mu,
        exact,
        coeffs,
    }
}

fn to_f64(x: &BigRational) -> f64 {
    // Scale before dividing so huge numerators/denominators stay in range.
    let num = x.numer();
    let den = x.denom();
    match (num.to_f64(), den.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            let shift = num.bits().max(den.bits()).saturating_sub(1000);
            let a = (num >> shift).to_f64().unwrap_or(0.0);
            let b = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
            a / b
        }
    }
}

/// Fornberg's recursion for the weights of the `order`th derivative at zero
/// on the given integer nodes, in exact arithmetic.
fn fornberg(nodes: &[i64], order: usize) -> Vec<BigRational> {
    let rat = |v: i64| BigRational::from_integer(BigInt::from(v));
    let count = nodes.len();
    // c[j][k]: weight of node j for derivative k.
    let mut c = vec![vec![BigRational::zero(); order + 1]; count];
    c[0][0] = BigRational::one();
    let mut c1 = BigRational::one();
    let mut c4 = rat(nodes[0]);
    for i in 1..count {
        let mn = i.min(order);
        let mut c2 = BigRational::one();
        let c5 = c4.clone();
        c4 = rat(nodes[i]);
        for j in 0..i {
            let c3 = rat(nodes[i] - nodes[j]);
            c2 = &c2 * &c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    let kk = rat(k as i64);
                    c[i][k] = &c1 * (&kk * &c[i - 1][k - 1] - &c5 * &c[i - 1][k]) / &c2;
                }
                c[i][0] = -&c1 * &c5 * &c[i - 1][0] / &c2;
            }
            for k in (1..=mn).rev() {
                let kk = rat(k as i64);
                c[j][k] = (&c4 * &c[j][k] - &kk * &c[j][k - 1]) / &c3;
            }
            c[j][0] = &c4 * &c[j][0] / &c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_coeffs(n: u32, mu: u32, expected: &[f64]) {
        let s = stencil(n, mu).unwrap();
        assert_eq!(s.coeffs().len(), expected.len(), "(n={n}, mu={mu})");
        for (a, e) in s.coeffs().iter().zip(expected) {
            assert!((a - e).abs() < 1e-14, "(n={n}, mu={mu}): {a} vs {e}");
        }
    }

    #[test]
    fn known_tables() {
        assert_coeffs(1, 1, &[-0.5, 0.0, 0.5]);
        assert_coeffs(2, 1, &[1.0, -2.0, 1.0]);
        assert_coeffs(3, 1, &[-0.5, 1.0, 0.0, -1.0, 0.5]);
        assert_coeffs(4, 1, &[1.0, -4.0, 6.0, -4.0, 1.0]);
        assert_coeffs(
            2,
            2,
            &[-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0],
        );
        assert_coeffs(
            4,
            2,
            &[-1.0 / 6.0, 2.0, -6.5, 28.0 / 3.0, -6.5, 2.0, -1.0 / 6.0],
        );
    }

    #[test]
    fn window_sizes() {
        assert_eq!(window_radius(1, 1), 1);
        assert_eq!(window_radius(2, 1), 1);
        assert_eq!(window_radius(3, 1), 2);
        assert_eq!(window_radius(4, 2), 3);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(stencil(0, 1).is_err());
        assert!(stencil(5, 1).is_err());
        assert!(stencil(2, 0).is_err());
        assert!(stencil(2, MAX_MU + 1).is_err());
    }

    #[test]
    fn symmetry_parity() {
        for n in 1..=4 {
            for mu in 1..=8 {
                let s = stencil(n, mu).unwrap();
                let r = s.radius() as i64;
                for j in 1..=r {
                    let right = &s.exact()[(r + j) as usize];
                    let left = &s.exact()[(r - j) as usize];
                    if n % 2 == 0 {
                        assert_eq!(right, left);
                    } else {
                        assert_eq!(right, &-left);
                    }
                }
            }
        }
    }
}
