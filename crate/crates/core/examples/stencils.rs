// Exact central finite-difference stencils and the flat-distribution U4
// they imply at each order.

use geobinder::diagnostics::u4_vs_order;
use geobinder::genfun::{stencil, window_radius};
use geobinder::slater::CharSeq;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in 1..=4 {
        let s = stencil(n, 2)?;
        let exact: Vec<String> = s.exact().iter().map(|c| c.to_string()).collect();
        println!("d^{n}, mu = 2: [{}]", exact.join(", "));
    }
    let flat = CharSeq::flat(1.0, window_radius(4, 40));
    let orders = [1, 2, 4, 8, 16, 32, 40];
    for (mu, u4) in u4_vs_order(&flat, &orders)? {
        println!("flat U4(mu = {mu:>2}) = {u4:.6}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
