// Discrete Berry phase of a spin-1/2 loop that encircles, misses, or hits
// the degeneracy point, and the O(1/M) convergence of the encircling case.

use geobinder::bargmann::{discrete_berry_phase, gamma_q, TwoLevelLoop};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (label, center) in [("encircling", 0.0), ("missing", 2.5), ("hitting", 1.0)] {
        let lp = TwoLevelLoop {
            center: (center, 0.0),
            radius: 1.0,
            samples: 200,
        };
        match lp.path().and_then(|p| discrete_berry_phase(&p)) {
            Ok(phase) => println!("{label:>10}: gamma_1 = {phase:+.8}"),
            Err(e) => println!("{label:>10}: {e}"),
        }
    }
    for m in [50, 100, 200, 400] {
        let path = TwoLevelLoop {
            center: (0.0, 0.0),
            radius: 1.0,
            samples: m,
        }
        .path()?;
        let g = gamma_q(&path, 1)?;
        println!(
            "M = {m:>3}: |Gamma_1| = {:.6}, 1 - |Gamma_1| = {:.3e}",
            g.norm(),
            1.0 - g.norm()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
