use std::f64::consts::PI;

use ndarray::{Array1, Array2};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use geobinder::bargmann::{gamma_q, Closure, StatePath};
use geobinder::diagnostics::{binder_u4, fidelity_susceptibility, u4_vs_order};
use geobinder::genfun::{fdd_moments, stencil};
use geobinder::lattice::{
    build_model, eigensolve, occupy_ground, Boundary, ModelMatrix, ModelSpec, OccupationMode,
    SlaterState,
};
use geobinder::number_theory::{classify_filling_with, fibonacci, zeckendorf};
use geobinder::scan::{run_scan, AaFidelityConfig, ScanConfig, SshConfig, SshRoute};
use geobinder::slater::{char_seq, CharSeq};

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

fn symmetric(l: usize, entries: &[f64]) -> ModelMatrix {
    let mut a = Array2::zeros((l, l));
    let mut k = 0;
    for i in 0..l {
        for j in i..l {
            a[[i, j]] = entries[k % entries.len()];
            a[[j, i]] = a[[i, j]];
            k += 1;
        }
    }
    ModelMatrix::from_symmetric(a).unwrap()
}

fn model_strategy() -> impl Strategy<Value = ModelSpec> {
    prop_oneof![
        (4usize..40, any::<bool>()).prop_map(|(l, pbc)| ModelSpec::uniform_chain(
            l,
            1.0,
            if pbc {
                Boundary::Periodic
            } else {
                Boundary::Open
            }
        )),
        (2usize..20, 0.1f64..2.0, 0.1f64..2.0).prop_map(|(c, a, b)| ModelSpec::ssh(
            c,
            a,
            b,
            Boundary::Periodic
        )),
        (6u32..11, 0.0f64..4.0).prop_map(|(n, w)| ModelSpec::aubry_andre(n, 1.0, w).unwrap()),
    ]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn stencil_monomial_exactness(n in 1u32..=4, mu in 1u32..=8) {
        let s = stencil(n, mu).unwrap();
        let r = s.radius() as i64;
        let factorial: BigInt = (1..=n as i64).map(BigInt::from).product();
        for p in 0..=(n + 2 * mu - 1) {
            let mut sum = BigRational::zero();
            for (j, c) in (-r..=r).zip(s.exact()) {
                sum += c * BigRational::from_integer(BigInt::from(j).pow(p));
            }
            let expected = if p == n {
                BigRational::from_integer(factorial.clone())
            } else {
                BigRational::zero()
            };
            prop_assert_eq!(sum, expected, "p = {}", p);
        }
    }

    #[test]
    fn spectral_reconstruction(l in 2usize..60, entries in prop::collection::vec(-2.0f64..2.0, 1..64)) {
        let m = symmetric(l, &entries);
        let s = eigensolve(&m).unwrap();
        let v = s.eigenvectors();
        let d = Array2::from_diag(&Array1::from(s.eigenvalues().to_vec()));
        let rebuilt = v.dot(&d).dot(&v.t());
        let norm = m.entries().iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-300);
        let err = (&rebuilt - m.entries()).iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!(err <= 1e-9 * norm, "relative error {}", err / norm);
        prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn char_seq_gauge_invariance(spec in model_strategy(), frac in 0.1f64..0.9,
                                 phases in prop::collection::vec(-PI..PI, 64)) {
        let l = spec.sites;
        let n = ((l as f64 * frac) as usize).clamp(1, l - 1);
        let s = eigensolve(&build_model(&spec).unwrap()).unwrap();
        let Ok(state) = occupy_ground(&s, n, OccupationMode::Numeric) else { return Ok(()) };
        prop_assume!(!state.is_degenerate());
        let mut orbitals = state.terms()[0].orbitals.clone();
        for (i, mut row) in orbitals.rows_mut().into_iter().enumerate() {
            row *= Complex64::from_polar(1.0, phases[i % phases.len()]);
        }
        let redressed = SlaterState::determinant(orbitals).unwrap();
        let q_max = 4.min(l - 1);
        let a = char_seq(&state, q_max).unwrap();
        let b = char_seq(&redressed, q_max).unwrap();
        for q in 0..=q_max {
            prop_assert!((a.values()[q] - b.values()[q]).norm() < 1e-12);
            prop_assert!((a.magnitude(q).unwrap() - b.magnitude(q).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_shift_is_conjugate(spec in model_strategy(), frac in 0.1f64..0.9) {
        // e^{i2π(L−q)x/L} = e^{−i2πqx/L} on integer sites, so Z_{L−q} is Z_{−q}
        // computed directly.
        let l = spec.sites;
        let n = ((l as f64 * frac) as usize).clamp(1, l - 1);
        let s = eigensolve(&build_model(&spec).unwrap()).unwrap();
        let Ok(state) = occupy_ground(&s, n, OccupationMode::Numeric) else { return Ok(()) };
        let cs = char_seq(&state, l - 1).unwrap();
        for q in 1..l.min(6) {
            let direct = cs.values()[l - q];
            prop_assert!((direct - cs.values()[q].conj()).norm() < 1e-10);
        }
    }

    #[test]
    fn full_band_is_a_point(spec in model_strategy()) {
        let l = spec.sites;
        let s = eigensolve(&build_model(&spec).unwrap()).unwrap();
        let cs = char_seq(&occupy_ground(&s, l, OccupationMode::Numeric).unwrap(), 3.min(l - 1)).unwrap();
        for q in 0..=cs.q_max() {
            prop_assert!((cs.magnitude(q).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn numeric_and_plane_wave_agree(l in 4usize..80, frac in 0.05f64..0.95) {
        let n = ((l as f64 * frac) as usize).clamp(1, l - 1);
        let s = eigensolve(&build_model(&ModelSpec::uniform_chain(l, 1.0, Boundary::Periodic)).unwrap()).unwrap();
        let numeric = occupy_ground(&s, n, OccupationMode::Numeric);
        let waves = occupy_ground(&s, n, OccupationMode::PlaneWave);
        let (Ok(a), Ok(b)) = (numeric, waves) else { return Ok(()) };
        prop_assert_eq!(a.is_degenerate(), b.is_degenerate());
        let q_max = 5.min(l - 1);
        let (za, zb) = (char_seq(&a, q_max).unwrap(), char_seq(&b, q_max).unwrap());
        for q in 0..=q_max {
            prop_assert!((za.magnitude(q).unwrap() - zb.magnitude(q).unwrap()).abs() < 1e-9);
        }
    }

    #[test]
    fn bargmann_gauge_invariance(m in 2usize..12, dim in 1usize..5,
                                 raw in prop::collection::vec(-1.0f64..1.0, 128),
                                 phases in prop::collection::vec(-PI..PI, 12)) {
        let states: Vec<Array1<Complex64>> = (0..m)
            .map(|j| {
                let v: Array1<Complex64> = (0..dim)
                    .map(|i| Complex64::new(raw[(j * dim + i) % 128], raw[(j * dim + i + 61) % 128]) + 0.1)
                    .collect();
                let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                v / Complex64::from(norm)
            })
            .collect();
        let redressed = states
            .iter()
            .zip(&phases)
            .map(|(s, &p)| s * Complex64::from_polar(1.0, p))
            .collect();
        let a = StatePath::new(states, Closure::Cyclic).unwrap();
        let b = StatePath::new(redressed, Closure::Cyclic).unwrap();
        for q in 0..m {
            let (ga, gb) = (gamma_q(&a, q).unwrap(), gamma_q(&b, q).unwrap());
            prop_assert!((ga - gb).norm() < 1e-12);
        }
    }

    #[test]
    fn u4_is_scale_invariant(l in 2.0f64..500.0, scale in 0.1f64..10.0,
                             mags in prop::collection::vec(0.0f64..0.4, 6)) {
        let mut m = vec![1.0];
        m.extend(mags);
        let a = CharSeq::from_magnitudes(l, &m).unwrap();
        let b = CharSeq::from_magnitudes(l * scale, &m).unwrap();
        for mu in 1..=4 {
            let (Ok((a2, a4)), Ok((b2, b4))) = (fdd_moments(&a, mu), fdd_moments(&b, mu)) else { continue };
            let (Ok(ua), Ok(ub)) = (binder_u4(a2, a4), binder_u4(b2, b4)) else { continue };
            prop_assert!((ua.u4 - ub.u4).abs() < 1e-12 * ua.u4.abs().max(1.0));
        }
    }

    #[test]
    fn fidelity_is_non_negative(w in -3.0f64..3.0, delta in 1e-3f64..0.2) {
        let h = |w: f64| ModelMatrix::from_symmetric(ndarray::arr2(&[[w, 1.0], [1.0, -w]]));
        let p = fidelity_susceptibility(h, w, delta, 1).unwrap();
        prop_assert!(p.chi_f >= 0.0);
    }

    #[test]
    fn limit_shift_converges(s in 20u32..120) {
        let r = classify_filling_with(377, 610, 3, s).unwrap();
        prop_assert!((r.terms[0].limit - 0.618_033_988_75).abs() < 1e-10);
    }
}

#[test]
fn fidelity_converges_quadratically_in_delta() {
    let h = |w: f64| ModelMatrix::from_symmetric(ndarray::arr2(&[[w, 1.0], [1.0, -w]]));
    for w in [0.0f64, 0.3, 1.0] {
        let exact = 0.25 / (1.0 + w * w).powi(2);
        let errs: Vec<f64> = [0.1, 0.05, 0.025]
            .iter()
            .map(|&d| (fidelity_susceptibility(h, w, d, 1).unwrap().chi_f - exact).abs())
            .collect();
        for pair in errs.windows(2) {
            let ratio = pair[0] / pair[1];
            assert!((ratio - 4.0).abs() < 0.3, "W = {w}: ratio {ratio}");
        }
    }
}

#[test]
fn zeckendorf_matches_exhaustive_search() {
    let fibs: Vec<u64> = (2..=15).map(|i| fibonacci(i).unwrap() as u64).collect();
    // Every subset of non-consecutive indices with sum <= 500.
    let mut reps: Vec<Vec<Vec<usize>>> = vec![Vec::new(); 501];
    fn walk(
        start: usize,
        sum: u64,
        picked: &mut Vec<usize>,
        fibs: &[u64],
        reps: &mut [Vec<Vec<usize>>],
    ) {
        for i in start..fibs.len() {
            let total = sum + fibs[i];
            if total > 500 {
                break;
            }
            picked.push(i);
            reps[total as usize].push(picked.clone());
            walk(i + 2, total, picked, fibs, reps);
            picked.pop();
        }
    }
    walk(0, 0, &mut Vec::new(), &fibs, &mut reps);
    for n in 1..=500u64 {
        let found = &reps[n as usize];
        assert_eq!(
            found.len(),
            1,
            "N = {n} has {} representations",
            found.len()
        );
        let mut expected: Vec<u64> = found[0].iter().map(|&i| fibs[i]).collect();
        expected.reverse();
        let got: Vec<u64> = zeckendorf(n)
            .unwrap()
            .values
            .iter()
            .map(|&v| v as u64)
            .collect();
        assert_eq!(got, expected, "N = {n}");
    }
}

#[test]
fn flat_order_sequence_is_monotone_after_two() {
    let flat = CharSeq::flat(1.0, 40);
    let orders: Vec<u32> = (2..=30).collect();
    let u = u4_vs_order(&flat, &orders).unwrap();
    assert!(u.windows(2).all(|w| w[1].1 < w[0].1));
    assert!(u.iter().all(|(_, v)| *v > 0.4));
}

#[test]
fn csv_is_identical_across_thread_counts() {
    let configs = [
        ScanConfig::Ssh(SshConfig {
            sites: vec![20, 40],
            dj: vec![-0.2, 0.0, 0.3],
            mean: 1.0,
            mu_max: 2,
            route: SshRoute::RealSpace,
        }),
        ScanConfig::AaFidelity(AaFidelityConfig {
            fib_index: 10,
            particles: vec![34, 36],
            w_grid: "1.5:2.5:0.25".parse().unwrap(),
            delta: 0.01,
            t: 1.0,
        }),
    ];
    for cfg in &configs {
        let reference = run_scan(cfg, 1).unwrap().table.to_csv().unwrap();
        for threads in [2, 3, 5] {
            let csv = run_scan(cfg, threads).unwrap().table.to_csv().unwrap();
            assert_eq!(csv, reference, "{} with {threads} threads", cfg.name());
        }
    }
}
