// Periodic Fermi sea: the closed-shell ground state has a flat polarization
// distribution (U4 -> 0.4 as the stencil order grows), the two-fold
// degenerate open shell a raised cosine (U4 -> 0.19792...).

use geobinder::diagnostics::u4_vs_order;
use geobinder::genfun::{reference_kurtosis, window_radius, ReferenceDistribution};
use geobinder::lattice::{
    build_model, eigensolve, occupy_ground, Boundary, ModelSpec, OccupationMode,
};
use geobinder::slater::char_seq;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let orders: Vec<u32> = vec![1, 2, 5, 10, 20];
    let spectrum = eigensolve(&build_model(&ModelSpec::uniform_chain(
        100,
        1.0,
        Boundary::Periodic,
    ))?)?;

    for (label, n) in [("closed shell", 49), ("open shell", 50)] {
        let state = occupy_ground(&spectrum, n, OccupationMode::Numeric)?;
        let cs = char_seq(&state, window_radius(4, 20))?;
        println!(
            "{label}: L = 100, N = {n}, degenerate = {}, |Z_1| = {:.3e}",
            state.is_degenerate(),
            cs.magnitude(1).unwrap()
        );
        for (mu, u4) in u4_vs_order(&cs, &orders)? {
            println!("  mu = {mu:>2}  U4 = {u4:.6}");
        }
    }
    let rc = -reference_kurtosis(ReferenceDistribution::RaisedCosine) / 3.0;
    println!("limits: flat 0.4, raised cosine {rc:.6}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
