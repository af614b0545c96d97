//! Delimited-text and TOML artifacts.
//!
//! Every file starts with `#`-prefixed lines echoing the resolved
//! configuration; data rows carry no timestamps, so identical configs give
//! byte-identical files. Floats use the shortest round-trip scientific form
//! and invalid values are written as `NaN`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use crate::config::RunConfig;
use crate::dynamics::SimulationTrace;
use crate::model::{Basis, SUBSPACE_LABELS};
use crate::sweep::{RobustnessScan, SweepGrid};

pub(crate) fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:e}")
    }
}

pub fn write_config_header(w: &mut impl Write, cfg: &RunConfig) -> io::Result<()> {
    for line in cfg.to_toml().lines() {
        if line.is_empty() {
            writeln!(w, "#")?;
        } else {
            writeln!(w, "# {line}")?;
        }
    }
    Ok(())
}

/// Columns: `t`, the five subspace populations, `P_outside`, `norm2`,
/// `dark_overlap`. Population columns sum to `norm2`.
pub fn write_trace(w: &mut impl Write, cfg: &RunConfig, trace: &SimulationTrace) -> io::Result<()> {
    write_config_header(w, cfg)?;
    let mut header = vec!["t".to_string()];
    header.extend(SUBSPACE_LABELS.iter().map(|l| format!("P_{}", l.tag())));
    header.extend(["P_outside", "norm2", "dark_overlap"].map(String::from));
    writeln!(w, "{}", header.join(","))?;
    let idx: [usize; 5] = match trace.basis {
        Basis::Subspace => [0, 1, 2, 3, 4],
        Basis::Full => Basis::subspace_in_full(),
    };
    for k in 0..trace.len() {
        let pops: Vec<f64> = idx.iter().map(|&i| trace.populations[i][k]).collect();
        let norm2 = trace.norm[k] * trace.norm[k];
        let all: f64 = trace.populations.iter().map(|p| p[k]).sum();
        let outside = (all - pops.iter().sum::<f64>()).max(0.0);
        let dark = trace.dark_overlap.as_ref().map_or(f64::NAN, |d| d[k]);
        let mut row = vec![fmt_f64(trace.times[k])];
        row.extend(pops.iter().map(|&p| fmt_f64(p)));
        row.extend([outside, norm2, dark].map(fmt_f64));
        writeln!(w, "{}", row.join(","))?;
    }
    Ok(())
}

/// Matrix with one row per `z0` and one column per `d`.
pub fn write_grid(w: &mut impl Write, cfg: &RunConfig, grid: &SweepGrid) -> io::Result<()> {
    write_config_header(w, cfg)?;
    writeln!(w, "# metric = {}; rows follow z0, columns follow d", grid.metric.name())?;
    for row in grid.rows() {
        let cells: Vec<String> = row.iter().map(|&x| fmt_f64(x)).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn write_axis(w: &mut impl Write, cfg: &RunConfig, name: &str, values: &[f64]) -> io::Result<()> {
    write_config_header(w, cfg)?;
    writeln!(w, "{name}")?;
    for &v in values {
        writeln!(w, "{}", fmt_f64(v))?;
    }
    Ok(())
}

pub fn write_robustness(w: &mut impl Write, cfg: &RunConfig, scan: &RobustnessScan) -> io::Result<()> {
    write_config_header(w, cfg)?;
    writeln!(w, "offset,{},fidelity", scan.parameter.name())?;
    for k in 0..scan.offsets.len() {
        writeln!(
            w,
            "{},{},{}",
            fmt_f64(scan.offsets[k]),
            fmt_f64(scan.values[k]),
            fmt_f64(scan.fidelity[k])
        )?;
    }
    Ok(())
}

/// Writes a TOML document after the config header.
pub fn write_summary(w: &mut impl Write, cfg: &RunConfig, summary: &toml::Table) -> io::Result<()> {
    write_config_header(w, cfg)?;
    let body = toml::to_string(summary).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e))?;
    w.write_all(body.as_bytes())
}

/// Creates `<dir>/<prefix>_<suffix>` through a buffered writer.
pub(crate) fn create_artifact(
    cfg: &RunConfig,
    suffix: &str,
    f: impl FnOnce(&mut io::BufWriter<fs::File>) -> io::Result<()>,
) -> io::Result<PathBuf> {
    fs::create_dir_all(&cfg.output.dir)?;
    let path = artifact_path(&cfg.output.dir, &cfg.output.prefix, suffix);
    let mut w = io::BufWriter::new(fs::File::create(&path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(path)
}

pub fn artifact_path(dir: &Path, prefix: &str, suffix: &str) -> PathBuf {
    dir.join(format!("{prefix}_{suffix}"))
}
