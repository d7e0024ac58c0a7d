// Fidelity susceptibility of the Aubry-André chain for a "good" and a
// "bad" filling (L = 233: N = 144 and N = 146). Only the bad filling peaks
// at W/t = 2. The two-level model checks the finite-difference estimate.

use geobinder::diagnostics::{aubry_andre_family, fidelity_susceptibility};
use geobinder::lattice::ModelMatrix;
use geobinder::number_theory::classify_filling;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let two_level = |w: f64| ModelMatrix::from_symmetric(ndarray::arr2(&[[w, 1.0], [1.0, -w]]));
    let p = fidelity_susceptibility(two_level, 0.5, 1e-3, 1)?;
    println!(
        "two-level W = 0.5: chi_F = {:.6} (exact {:.6})",
        p.chi_f,
        0.25 / 1.25f64.powi(2)
    );

    let family = aubry_andre_family(13, 1.0);
    for n in [144, 146] {
        println!("N = {n}: {:?}", classify_filling(n, 233)?.class);
        for i in 0..=8 {
            let w = 1.6 + 0.1 * i as f64;
            let p = fidelity_susceptibility(&family, w, 0.01, n as usize)?;
            println!("  W/t = {w:.1}  chi_F = {:>10.3}", p.chi_f);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
