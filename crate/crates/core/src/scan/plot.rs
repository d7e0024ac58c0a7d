//! Generated matplotlib scripts that render scan CSVs.

use std::path::Path;

/// `(x column, y column, grouping columns)` for each subcommand.
fn layout(subcommand: &str) -> (&'static str, &'static str, &'static [&'static str]) {
    match subcommand {
        "fermi-pbc" => ("mu", "U4", &["L", "N"]),
        "fermi-obc" => ("L", "U4", &["N"]),
        "ssh" => ("dJ", "U4", &["L", "mu"]),
        "aa-variance" => ("mu", "variance_over_N", &["L", "W", "scheme"]),
        "aa-fidelity" => ("W", "chi_F", &["N"]),
        "zeckendorf" => ("N", "smallest_index", &[]),
        "berry" => ("samples", "gamma1", &["center_z"]),
        _ => ("", "", &[]),
    }
}

/// Python script plotting `csv` for the given subcommand. Rows whose
/// `y` entry is `NA` are skipped.
pub fn plot_script(subcommand: &str, csv: &Path) -> String {
    let (x, y, groups) = layout(subcommand);
    let groups = groups
        .iter()
        .map(|g| format!("{g:?}"))
        .collect::<Vec<_>>()
        .join(", ");
    let csv = csv.display().to_string();
    let png = Path::new(&csv).with_extension("png").display().to_string();
    format!(
        r#"#!/usr/bin/env python3
# {subcommand} scan plot, generated by geobinder.
import csv
from collections import defaultdict

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

CSV = {csv:?}
X, Y = {x:?}, {y:?}
GROUPS = [{groups}]

series = defaultdict(list)
with open(CSV, newline="") as fh:
    for row in csv.DictReader(fh):
        if row[X] == "NA" or row[Y] == "NA":
            continue
        key = ", ".join(f"{{g}}={{row[g]}}" for g in GROUPS)
        series[key].append((float(row[X]), float(row[Y])))

fig, ax = plt.subplots(figsize=(6, 4))
for key, pts in series.items():
    pts.sort()
    ax.plot([p[0] for p in pts], [p[1] for p in pts], "o-", ms=3, label=key or None)
ax.set_xlabel(X)
ax.set_ylabel(Y)
ax.set_title({subcommand:?})
if len(series) > 1:
    ax.legend(fontsize="small")
fig.tight_layout()
fig.savefig({png:?}, dpi=150)
"#
    )
}
