// Runs a scan through the library API and writes the CSV, manifest and
// plot script that the command-line tool would produce.

use geobinder::lattice::OccupationMode;
use geobinder::scan::{run_scan, write_outputs, FermiPbcConfig, OutputPaths, ScanConfig};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("geobinder-scan-example");
    std::fs::create_dir_all(&dir)?;
    let cfg = ScanConfig::FermiPbc(FermiPbcConfig {
        sites: vec![60, 100],
        particles: vec![29, 30],
        mu_max: 4,
        t: 1.0,
        mode: OccupationMode::Numeric,
    });
    let mut out = run_scan(&cfg, 2)?;
    let paths = OutputPaths {
        csv: Some(dir.join("fermi.csv")),
        manifest: Some(dir.join("fermi.json")),
        plot_script: Some(dir.join("plot_fermi.py")),
    };
    write_outputs(&mut out, &paths)?;
    print!("{}", std::fs::read_to_string(dir.join("fermi.csv"))?);
    println!("wrote {}", dir.display());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
