//! Fibonacci numbers, Zeckendorf decompositions and the good/bad filling
//! classification of Aubry-André chains with `L = F_n`.
//!
//! Indexing follows `F_1 = F_2 = 1`, `F_3 = 2`, ..., `F_15 = 610`. Values are
//! exact `u128`; indices above 186 overflow and are rejected.

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest index whose Fibonacci number fits in `u128`.
pub const MAX_FIB_INDEX: u32 = 186;

/// Default small-index cutoff: terms `F_1`, `F_2`, `F_3` make a filling "bad".
pub const DEFAULT_SMALL_INDEX: u32 = 3;

/// Default index shift used to estimate irrational limits.
pub const DEFAULT_LIMIT_SHIFT: u32 = 60;

pub fn fibonacci(n: u32) -> Result<u128> {
    if n == 0 || n > MAX_FIB_INDEX {
        return Err(Error::FibonacciIndex(n));
    }
    let (mut a, mut b) = (1u128, 1u128);
    for _ in 2..n {
        let next = a + b;
        a = b;
        b = next;
    }
    Ok(b)
}

/// Index `n ≥ 2` with `F_n = value`, if `value` is a Fibonacci number.
pub fn fibonacci_index(value: u128) -> Option<u32> {
    (2..=MAX_FIB_INDEX).find(|&n| fibonacci(n).ok() == Some(value))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeckendorfDecomposition {
    pub n: u64,
    /// Strictly decreasing, pairwise non-consecutive indices `≥ 2`.
    pub indices: Vec<u32>,
    pub values: Vec<u128>,
}

impl ZeckendorfDecomposition {
    pub fn terms(&self) -> usize {
        self.indices.len()
    }
}

/// Greedy largest-Fibonacci-first decomposition of `n ≥ 1`.
///
/// `1` is reported as `F_2` so that indices are unique.
pub fn zeckendorf(n: u64) -> Result<ZeckendorfDecomposition> {
    if n == 0 {
        return Err(Error::InvalidFilling(
            "Zeckendorf decomposition needs n >= 1".into(),
        ));
    }
    let mut fibs = vec![(2u32, 1u128)];
    while let Ok(next) = fibonacci(fibs.len() as u32 + 2) {
        if next > n as u128 {
            break;
        }
        fibs.push((fibs.len() as u32 + 2, next));
    }
    let mut rest = n as u128;
    let mut indices = Vec::new();
    let mut values = Vec::new();
    for &(i, f) in fibs.iter().rev() {
        if f <= rest {
            rest -= f;
            indices.push(i);
            values.push(f);
        }
    }
    debug_assert_eq!(rest, 0);
    Ok(ZeckendorfDecomposition { n, indices, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FillingClass {
    /// "Good" filling: every Zeckendorf term is a good approximant of its
    /// limit; the chain is localized for all `W > 0`.
    LocalizedForAllW,
    /// "Bad" filling: a small-index term is present; a localization
    /// transition near `W/t = 2` is expected.
    TransitionNearWc2,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermReport {
    pub index: u32,
    pub value: u128,
    /// `F_i / F_n`.
    pub ratio: f64,
    /// `F_{i+s} / F_{n+s}` for the shift `s` used.
    pub limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FillingReport {
    pub particles: u64,
    pub sites: u64,
    pub fib_index: u32,
    pub class: FillingClass,
    pub decomposition: ZeckendorfDecomposition,
    pub terms: Vec<TermReport>,
    pub shift: u32,
}

pub fn classify_filling(particles: u64, sites: u64) -> Result<FillingReport> {
    classify_filling_with(particles, sites, DEFAULT_SMALL_INDEX, DEFAULT_LIMIT_SHIFT)
}

/// Classifies `N/L` with a configurable small-index cutoff and limit shift.
pub fn classify_filling_with(
    particles: u64,
    sites: u64,
    small_index: u32,
    shift: u32,
) -> Result<FillingReport> {
    let fib_index = fibonacci_index(sites as u128).ok_or(Error::NotFibonacci(sites))?;
    if particles == 0 || particles >= sites {
        return Err(Error::InvalidFilling(format!(
            "need 1 <= N < L, got N = {particles}, L = {sites}"
        )));
    }
    let decomposition = zeckendorf(particles)?;
    let shift = shift.min(MAX_FIB_INDEX - fib_index);
    let denominator = fibonacci(fib_index + shift)? as f64;
    let terms = decomposition
        .indices
        .iter()
        .zip(&decomposition.values)
        .map(|(&index, &value)| {
            Ok(TermReport {
                index,
                value,
                ratio: value as f64 / sites as f64,
                limit: fibonacci(index + shift)? as f64 / denominator,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let bad = decomposition.indices.iter().any(|&i| i <= small_index);
    Ok(FillingReport {
        particles,
        sites,
        fib_index,
        class: if bad {
            FillingClass::TransitionNearWc2
        } else {
            FillingClass::LocalizedForAllW
        },
        decomposition,
        terms,
        shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(1).unwrap(), 1);
        assert_eq!(fibonacci(2).unwrap(), 1);
        assert_eq!(fibonacci(3).unwrap(), 2);
        assert_eq!(fibonacci(14).unwrap(), 377);
        assert_eq!(fibonacci(15).unwrap(), 610);
        assert!(fibonacci(MAX_FIB_INDEX).is_ok());
        assert!(fibonacci(MAX_FIB_INDEX + 1).is_err());
        assert!(fibonacci(0).is_err());
    }

    #[test]
    fn worked_decompositions() {
        assert_eq!(zeckendorf(17).unwrap().values, vec![13, 3, 1]);
        assert_eq!(zeckendorf(72).unwrap().values, vec![55, 13, 3, 1]);
        assert_eq!(zeckendorf(305).unwrap().values, vec![233, 55, 13, 3, 1]);
        assert_eq!(zeckendorf(1).unwrap().values, vec![1]);
        assert_eq!(zeckendorf(379).unwrap().indices, vec![14, 3]);
        assert!(zeckendorf(0).is_err());
    }

    #[test]
    fn classification() {
        let good = classify_filling(377, 610).unwrap();
        assert_eq!(good.class, FillingClass::LocalizedForAllW);
        assert_eq!(good.fib_index, 15);

        let bad = classify_filling(379, 610).unwrap();
        assert_eq!(bad.class, FillingClass::TransitionNearWc2);
        // 2/610 tends to φ^{-12} ≈ 0.00310562.
        let small = &bad.terms[1];
        assert_eq!(small.index, 3);
        assert!((small.ratio - 0.003_278_688_52).abs() < 1e-10);
        assert!((small.limit - 0.003_105_620_015).abs() < 1e-12);

        let half = classify_filling(305, 610).unwrap();
        assert_eq!(half.class, FillingClass::TransitionNearWc2);

        assert!(matches!(
            classify_filling(3, 600),
            Err(Error::NotFibonacci(600))
        ));
        assert!(classify_filling(610, 610).is_err());
    }
}
