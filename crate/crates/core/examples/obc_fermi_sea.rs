// Open chain: U4 of the single-particle position distribution approaches
// the flat value 0.4 with system size.

use geobinder::diagnostics::binder_u4;
use geobinder::lattice::{build_model, eigensolve, obc_position_moments, Boundary, ModelSpec};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for l in [50, 100, 200, 400] {
        let spectrum = eigensolve(&build_model(&ModelSpec::uniform_chain(
            l,
            1.0,
            Boundary::Open,
        ))?)?;
        let (m2, m4) = obc_position_moments(&spectrum, l / 2)?;
        let u4 = binder_u4(m2, m4)?.u4;
        println!(
            "L = {l:>4}, N = {:>4}: M2 = {m2:>10.3}, U4 = {u4:.5}",
            l / 2
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
