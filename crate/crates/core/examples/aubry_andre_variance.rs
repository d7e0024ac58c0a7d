// Aubry-André chain near W/t = 2: FDD variance against its FDLD
// (Resta-Sorella and higher order) counterpart as the stencil order grows.
// Run with a Fibonacci index argument for larger chains, e.g. `-- 18`.

use geobinder::genfun::{fdd_moments, fdld_cumulants, window_radius};
use geobinder::lattice::{build_model, eigensolve, occupy_ground, ModelSpec, OccupationMode};
use geobinder::number_theory::classify_filling;
use geobinder::scan::opposite_parity_half_filling;
use geobinder::slater::char_seq;

pub fn run(fib_index: u32) -> Result<(), Box<dyn std::error::Error>> {
    for w in [1.99, 2.00, 2.01] {
        let spec = ModelSpec::aubry_andre(fib_index, 1.0, w)?;
        let n = opposite_parity_half_filling(spec.sites);
        let state = occupy_ground(
            &eigensolve(&build_model(&spec)?)?,
            n,
            OccupationMode::Numeric,
        )?;
        let cs = char_seq(&state, window_radius(4, 6))?;
        let class = classify_filling(n as u64, spec.sites as u64)?.class;
        println!("L = {}, N = {n} ({class:?}), W/t = {w}", spec.sites);
        for mu in 1..=6 {
            let (m2, _) = fdd_moments(&cs, mu)?;
            let c2 = fdld_cumulants(&cs, mu)?.cumulants[1].clone();
            match c2 {
                Ok(c2) => println!(
                    "  mu = {mu}: FDD M2/N = {:>9.4}  FDLD C2/N = {:>9.4}",
                    m2 / n as f64,
                    c2 / n as f64
                ),
                Err(e) => println!("  mu = {mu}: FDD M2/N = {:>9.4}  FDLD: {e}", m2 / n as f64),
            }
        }
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    run(13)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    match std::env::args().nth(1) {
        Some(n) => run(n.parse()?),
        None => run_example(),
    }
}
