//! Batch scans behind the command-line subcommands: grid evaluation on a
//! bounded worker pool, CSV tables, JSON manifests and plot scripts.
//!
//! Grid points are evaluated independently and reassembled in grid order,
//! so the CSV does not depend on the thread count. A failing point yields
//! `NA` entries and an error message in its `status` column.

mod config;
mod plot;
mod table;

pub use config::{
    opposite_parity_half_filling, AaFidelityConfig, AaVarianceConfig, BerryConfig, FermiObcConfig,
    FermiPbcConfig, Grid, ScanConfig, SchemeChoice, SshConfig, SshRoute, ZeckendorfConfig,
};
pub use plot::plot_script;
pub use table::{status, Cell, Table, NA};

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::bargmann::{bloch_char_seq, discrete_berry_phase, gamma_q, BlochBand, TwoLevelLoop};
use crate::diagnostics::{binder_u4, fidelity_from_spectra};
use crate::error::{Error, Result};
use crate::genfun::{
    fdd_moments, fdd_report, fdld_cumulants, window_radius, CumulantReport, Flagged, Scheme,
};
use crate::lattice::{
    build_model, eigensolve, obc_position_moments, occupy_ground, Boundary, ModelSpec,
    OccupationMode,
};
use crate::number_theory::{classify_filling_with, fibonacci, FillingClass};
use crate::slater::{char_seq, CharSeq};

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub subcommand: &'static str,
    pub config: ScanConfig,
    pub threads: usize,
    pub columns: Vec<&'static str>,
    pub rows: usize,
    pub failed_rows: usize,
    pub warnings: Vec<String>,
    pub wall_time_seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct ScanOutput {
    pub table: Table,
    pub manifest: Manifest,
}

/// Evaluates every grid point of `cfg` on `threads` workers (0 = rayon default).
pub fn run_scan(cfg: &ScanConfig, threads: usize) -> Result<ScanOutput> {
    cfg.validate()?;
    let warnings = cfg.parity_warnings();
    for w in &warnings {
        log::warn!("{w}");
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let table = pool.install(|| match cfg {
        ScanConfig::FermiPbc(c) => fermi_pbc(c),
        ScanConfig::FermiObc(c) => fermi_obc(c),
        ScanConfig::Ssh(c) => ssh(c),
        ScanConfig::AaVariance(c) => aa_variance(c),
        ScanConfig::AaFidelity(c) => aa_fidelity(c),
        ScanConfig::Zeckendorf(c) => zeckendorf(c),
        ScanConfig::Berry(c) => berry(c),
    });
    let status_col = table
        .column_index("status")
        .expect("every table has a status column");
    let failed_rows = table
        .rows()
        .iter()
        .filter(|r| r[status_col] != Cell::Text("ok".into()))
        .count();
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        subcommand: cfg.name(),
        config: cfg.clone(),
        threads: pool.current_num_threads(),
        columns: table.columns().to_vec(),
        rows: table.rows().len(),
        failed_rows,
        warnings,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        csv: None,
    };
    Ok(ScanOutput { table, manifest })
}

/// Output destinations; any may be omitted.
#[derive(Debug, Clone, Default)]
pub struct OutputPaths {
    pub csv: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub plot_script: Option<PathBuf>,
}

pub fn write_outputs(out: &mut ScanOutput, paths: &OutputPaths) -> std::io::Result<()> {
    let csv = out.table.to_csv().map_err(std::io::Error::other)?;
    match &paths.csv {
        Some(p) => fs::write(p, csv)?,
        None => print!("{csv}"),
    }
    out.manifest.csv = paths.csv.clone();
    if let Some(p) = &paths.manifest {
        let json = serde_json::to_string_pretty(&out.manifest).map_err(std::io::Error::other)?;
        fs::write(p, json + "\n")?;
    }
    if let Some(p) = &paths.plot_script {
        let csv_path = paths.csv.as_deref().unwrap_or(Path::new("scan.csv"));
        fs::write(p, plot_script(out.manifest.subcommand, csv_path))?;
    }
    Ok(())
}

/// Evaluates `points` in parallel and concatenates their rows in order.
fn collect<P, F>(columns: Vec<&'static str>, points: &[P], eval: F) -> Table
where
    P: Sync,
    F: Fn(&P) -> Vec<Vec<Cell>> + Send + Sync,
{
    let chunks: Vec<Vec<Vec<Cell>>> = points.par_iter().map(eval).collect();
    let mut table = Table::new(columns);
    for row in chunks.into_iter().flatten() {
        table.push(row);
    }
    table
}

/// Row made of `prefix`, `width` `NA`s and the error as status.
fn failed(mut prefix: Vec<Cell>, width: usize, err: &Error) -> Vec<Cell> {
    prefix.extend(std::iter::repeat_n(Cell::Na, width));
    prefix.push(status([err]));
    prefix
}

fn moments_cells(cs: &CharSeq, mu: u32) -> Vec<Cell> {
    let moments = fdd_moments(cs, mu);
    let u4 = moments.clone().and_then(|(m2, m4)| binder_u4(m2, m4));
    let abs_z1 = cs.magnitude(1);
    vec![
        abs_z1.into(),
        moments.clone().map(|m| m.0).into(),
        moments.clone().map(|m| m.1).into(),
        u4.clone().map(|b| b.u4).into(),
        status(moments.err().iter().chain(u4.err().iter())),
    ]
}

fn fermi_pbc(c: &FermiPbcConfig) -> Table {
    let columns = vec![
        "L",
        "N",
        "mu",
        "degenerate",
        "abs_Z1",
        "M2",
        "M4",
        "U4",
        "status",
    ];
    let points: Vec<(usize, usize)> = c
        .sites
        .iter()
        .flat_map(|&l| c.particles.iter().map(move |&n| (l, n)))
        .collect();
    collect(columns, &points, |&(l, n)| {
        let prepared = (|| {
            let spec = ModelSpec::uniform_chain(l, c.t, Boundary::Periodic);
            let spectrum = eigensolve(&build_model(&spec)?)?;
            let state = occupy_ground(&spectrum, n, c.mode)?;
            let cs = char_seq(&state, window_radius(4, c.mu_max))?;
            Ok::<_, Error>((state.is_degenerate(), cs))
        })();
        (1..=c.mu_max)
            .map(|mu| {
                let prefix = vec![l.into(), n.into(), mu.into()];
                match &prepared {
                    Ok((degenerate, cs)) => {
                        let mut row = prefix;
                        row.push((*degenerate).into());
                        row.extend(moments_cells(cs, mu));
                        row
                    }
                    Err(e) => failed(prefix, 5, e),
                }
            })
            .collect()
    })
}

fn fermi_obc(c: &FermiObcConfig) -> Table {
    let columns = vec!["L", "N", "M2", "M4", "U4", "status"];
    let points: Vec<(usize, usize)> = c
        .sites
        .iter()
        .flat_map(|&l| {
            let ns = if c.particles.is_empty() {
                vec![l / 2]
            } else {
                c.particles.clone()
            };
            ns.into_iter().map(move |n| (l, n))
        })
        .collect();
    collect(columns, &points, |&(l, n)| {
        let prefix = vec![l.into(), n.into()];
        let result = (|| {
            let spec = ModelSpec::uniform_chain(l, c.t, Boundary::Open);
            let spectrum = eigensolve(&build_model(&spec)?)?;
            let (m2, m4) = obc_position_moments(&spectrum, n)?;
            Ok::<_, Error>((m2, m4, binder_u4(m2, m4)?.u4))
        })();
        vec![match result {
            Ok((m2, m4, u4)) => {
                let mut row = prefix;
                row.extend([m2.into(), m4.into(), u4.into(), status([])]);
                row
            }
            Err(e) => failed(prefix, 3, &e),
        }]
    })
}

fn ssh_char_seq(c: &SshConfig, l: usize, dj: f64) -> Result<CharSeq> {
    if !l.is_multiple_of(2) || l < 4 {
        return Err(Error::InvalidModel(format!(
            "SSH needs an even site count of at least 4, got {l}"
        )));
    }
    let cells = l / 2;
    let q_max = window_radius(4, c.mu_max);
    let (j_odd, j_even) = (c.mean + dj, c.mean - dj);
    match c.route {
        SshRoute::Bloch => bloch_char_seq(&BlochBand::new(j_odd, j_even, cells), q_max),
        SshRoute::RealSpace => {
            let spec = ModelSpec::ssh(cells, j_odd, j_even, Boundary::Periodic);
            let spectrum = eigensolve(&build_model(&spec)?)?;
            let state = occupy_ground(&spectrum, cells, OccupationMode::Numeric)?;
            char_seq(&state, q_max)
        }
    }
}

fn ssh(c: &SshConfig) -> Table {
    let columns = vec![
        "L",
        "N_c",
        "dJ",
        "J_o",
        "J_e",
        "route",
        "mu",
        "abs_Z1",
        "M2",
        "M4",
        "U4",
        "U4_times_L",
        "status",
    ];
    let route = match c.route {
        SshRoute::Bloch => "bloch",
        SshRoute::RealSpace => "real-space",
    };
    let points: Vec<(usize, f64)> = c
        .sites
        .iter()
        .flat_map(|&l| c.dj.iter().map(move |&dj| (l, dj)))
        .collect();
    collect(columns, &points, |&(l, dj)| {
        let cs = ssh_char_seq(c, l, dj);
        (1..=c.mu_max)
            .map(|mu| {
                let prefix = vec![
                    l.into(),
                    (l / 2).into(),
                    dj.into(),
                    (c.mean + dj).into(),
                    (c.mean - dj).into(),
                    route.into(),
                    mu.into(),
                ];
                match &cs {
                    Ok(cs) => {
                        let mut cells = moments_cells(cs, mu);
                        let u4l = cells[3].as_f64().map(|u| u * l as f64);
                        cells.insert(4, u4l.into());
                        let mut row = prefix;
                        row.extend(cells);
                        row
                    }
                    Err(e) => failed(prefix, 5, e),
                }
            })
            .collect()
    })
}

fn report_cells(r: &Result<CumulantReport>, particles: usize) -> Vec<Cell> {
    let r = match r {
        Ok(r) => r,
        Err(e) => return failed(Vec::new(), 8, e),
    };
    let fdd = r.scheme == Scheme::Fdd;
    let variance = if fdd { &r.m2 } else { &r.cumulants[1] };
    // Entries outside the scheme are NA by construction and do not count as failures.
    let entries: [(&Flagged, bool); 6] = [
        (&r.m2, fdd),
        (&r.m4, fdd),
        (&r.cumulants[0], !fdd),
        (&r.cumulants[1], !fdd),
        (&r.cumulants[2], !fdd),
        (&r.cumulants[3], !fdd),
    ];
    let failures = entries
        .into_iter()
        .chain([(&r.u4, true)])
        .filter(|(_, counts)| *counts)
        .filter_map(|(v, _)| v.as_ref().err());
    let mut row: Vec<Cell> = entries.iter().map(|(v, _)| (*v).clone().into()).collect();
    row.push(variance.as_ref().map(|v| v / particles as f64).ok().into());
    row.push(r.u4.clone().into());
    row.push(status(failures));
    row
}

fn aa_variance(c: &AaVarianceConfig) -> Table {
    let columns = vec![
        "fib_index",
        "L",
        "N",
        "W",
        "scheme",
        "mu",
        "M2",
        "M4",
        "C1",
        "C2",
        "C3",
        "C4",
        "variance_over_N",
        "U4",
        "status",
    ];
    let schemes: &[Scheme] = match c.scheme {
        SchemeChoice::Fdd => &[Scheme::Fdd],
        SchemeChoice::Fdld => &[Scheme::Fdld],
        SchemeChoice::Both => &[Scheme::Fdd, Scheme::Fdld],
    };
    let mut points = Vec::new();
    for &n in &c.fib_index {
        let l = fibonacci(n).map(|l| l as usize).unwrap_or(0);
        let ns = if c.particles.is_empty() {
            vec![opposite_parity_half_filling(l)]
        } else {
            c.particles.clone()
        };
        for particles in ns {
            for &w in &c.w_list {
                points.push((n, l, particles, w));
            }
        }
    }
    collect(columns, &points, |&(n, l, particles, w)| {
        let cs = (|| {
            let spectrum = eigensolve(&build_model(&ModelSpec::aubry_andre(n, c.t, w)?)?)?;
            let state = occupy_ground(&spectrum, particles, OccupationMode::Numeric)?;
            char_seq(&state, window_radius(4, c.mu_max))
        })();
        let mut rows = Vec::new();
        for &scheme in schemes {
            for mu in 1..=c.mu_max {
                let mut row: Vec<Cell> = vec![
                    n.into(),
                    l.into(),
                    particles.into(),
                    w.into(),
                    scheme.name().into(),
                    mu.into(),
                ];
                let report = cs
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|cs| match scheme {
                        Scheme::Fdd => fdd_report(cs, mu),
                        Scheme::Fdld => fdld_cumulants(cs, mu),
                    });
                row.extend(report_cells(&report, particles));
                rows.push(row);
            }
        }
        rows
    })
}

fn class_name(class: FillingClass) -> &'static str {
    match class {
        FillingClass::LocalizedForAllW => "localized-for-all-W",
        FillingClass::TransitionNearWc2 => "transition-near-W2",
    }
}

fn aa_fidelity(c: &AaFidelityConfig) -> Table {
    let columns = vec![
        "fib_index",
        "L",
        "N",
        "W",
        "delta",
        "chi_F",
        "overlap",
        "class",
        "status",
    ];
    let l = fibonacci(c.fib_index).map(|l| l as usize).unwrap_or(0);
    let classes: Vec<Cell> = c
        .particles
        .iter()
        .map(|&n| {
            crate::number_theory::classify_filling(n as u64, l as u64)
                .map(|r| Cell::from(class_name(r.class)))
                .unwrap_or(Cell::Na)
        })
        .collect();
    let points = c.w_grid.values();
    collect(columns, &points, |&w| {
        let spectra = (|| {
            let at = |x: f64| -> Result<_> {
                eigensolve(&build_model(&ModelSpec::aubry_andre(c.fib_index, c.t, x)?)?)
            };
            Ok::<_, Error>((at(w - c.delta)?, at(w + c.delta)?))
        })();
        c.particles
            .iter()
            .zip(&classes)
            .map(|(&n, class)| {
                let point = spectra
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|(a, b)| fidelity_from_spectra(a, b, w, c.delta, n));
                let mut row: Vec<Cell> = vec![
                    c.fib_index.into(),
                    l.into(),
                    n.into(),
                    w.into(),
                    c.delta.into(),
                ];
                match point {
                    Ok(p) => {
                        row.extend([p.chi_f.into(), p.overlap.into(), class.clone(), status([])])
                    }
                    Err(e) => row.extend([Cell::Na, Cell::Na, class.clone(), status([&e])]),
                }
                row
            })
            .collect()
    })
}

fn zeckendorf(c: &ZeckendorfConfig) -> Table {
    let columns = vec![
        "N",
        "L",
        "fib_index",
        "decomposition",
        "indices",
        "class",
        "smallest_index",
        "smallest_ratio",
        "smallest_limit",
        "status",
    ];
    collect(columns, &c.particles, |&n| {
        let prefix = vec![n.into(), c.sites.into()];
        vec![
            match classify_filling_with(n, c.sites, c.small_index, c.shift) {
                Ok(r) => {
                    let join = |it: Vec<String>, sep| it.join(sep);
                    let smallest = r.terms.last().expect("decomposition is non-empty");
                    let mut row = prefix;
                    row.extend([
                        r.fib_index.into(),
                        join(
                            r.decomposition.values.iter().map(u128::to_string).collect(),
                            "+",
                        )
                        .into(),
                        join(
                            r.decomposition.indices.iter().map(u32::to_string).collect(),
                            " ",
                        )
                        .into(),
                        class_name(r.class).into(),
                        smallest.index.into(),
                        smallest.ratio.into(),
                        smallest.limit.into(),
                        status([]),
                    ]);
                    row
                }
                Err(e) => failed(prefix, 7, &e),
            },
        ]
    })
}

fn berry(c: &BerryConfig) -> Table {
    let columns = vec![
        "samples",
        "center_z",
        "radius",
        "gamma1",
        "abs_Gamma1",
        "min_link",
        "status",
    ];
    let points: Vec<(usize, f64)> = c
        .samples
        .iter()
        .flat_map(|&m| c.centers.iter().map(move |&z| (m, z)))
        .collect();
    collect(columns, &points, |&(m, z)| {
        let prefix = vec![m.into(), z.into(), c.radius.into()];
        let lp = TwoLevelLoop {
            center: (z, 0.0),
            radius: c.radius,
            samples: m,
        };
        let result = lp.path().and_then(|path| {
            let gamma = gamma_q(&path, 1)?;
            let (_, weakest) = path.min_link();
            Ok::<_, Error>((discrete_berry_phase(&path), gamma.norm(), weakest))
        });
        vec![match result {
            Ok((phase, modulus, weakest)) => {
                let mut row = prefix;
                row.extend([
                    phase.clone().into(),
                    modulus.into(),
                    weakest.into(),
                    status(phase.err().iter()),
                ]);
                row
            }
            Err(e) => failed(prefix, 3, &e),
        }]
    })
}
