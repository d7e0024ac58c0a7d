// Zeckendorf decompositions and the good/bad filling classification for
// L = 610.

use geobinder::number_theory::{classify_filling, zeckendorf};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for n in [17, 72, 305] {
        println!("{n} = {:?}", zeckendorf(n)?.values);
    }
    for n in [305, 377, 379] {
        let r = classify_filling(n, 610)?;
        println!("N/L = {n}/610: {:?}", r.class);
        for t in &r.terms {
            println!(
                "  F_{:<2} = {:>3}: F_i/L = {:.8}, limit {:.8}",
                t.index, t.value, t.ratio, t.limit
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
