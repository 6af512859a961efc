//! Bit-stable output writers: CSV tables, JSON documents, and the
//! edge-list/weights text formats.
//!
//! Floating-point values are printed in the shortest decimal that
//! round-trips, absent/infinite values as empty CSV fields and JSON nulls.
//! Record terminator is LF.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use sfperc_core::graph::Graph;
use sfperc_core::lattice::Boundary;

use crate::config::ExperimentConfig;
use crate::error::{CliError, Result};

pub const FORMAT_VERSION: u32 = 1;

/// Shortest round-trip decimal for a float; empty string for non-finite.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else {
        String::new()
    }
}

pub fn fmt_opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_csv<P: AsRef<Path>>(
    path: P,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<()> {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        out.push_str(&row.join(","));
        out.push('\n');
    }
    fs::write(path.as_ref(), out)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.as_ref().display())))
}

pub fn write_json<P: AsRef<Path>, T: Serialize>(path: P, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Io(format!("serializing {}: {e}", path.as_ref().display())))?;
    text.push('\n');
    fs::write(path.as_ref(), text)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.as_ref().display())))
}

/// Compact weight-law descriptor used in file headers.
pub fn weights_descriptor(cfg: &ExperimentConfig) -> String {
    let w = &cfg.model.weights;
    match w.kind.as_str() {
        "constant" => format!(
            "constant(value={},normalize_mean={})",
            fmt_f64(w.value.unwrap_or(f64::NAN)),
            w.normalize_mean
        ),
        _ => format!(
            "pareto(tau={},min={},normalize_mean={})",
            fmt_f64(w.tau.unwrap_or(f64::NAN)),
            fmt_f64(w.min.unwrap_or(1.0)),
            w.normalize_mean
        ),
    }
}

fn header_lines(cfg: &ExperimentConfig, side: u32, boundary: Boundary) -> String {
    let boundary_name = match boundary {
        Boundary::Torus => "torus",
        Boundary::Free => "free",
    };
    format!(
        "# d={}\n# L={side}\n# boundary={boundary_name}\n# alpha={}\n# lambda={}\n\
         # weights={}\n# seed={}\n# norm=l2\n# version={FORMAT_VERSION}\n",
        cfg.model.dimension,
        fmt_f64(cfg.model.alpha),
        fmt_f64(cfg.model.lambda),
        weights_descriptor(cfg),
        cfg.seed,
    )
}

/// Edge-list file: `#` key=value header, then `i j` lines with `i < j`
/// in ascending lexicographic order.
pub fn write_edge_list(
    path: &Path,
    cfg: &ExperimentConfig,
    graph: &Graph,
) -> Result<()> {
    let mut out = String::with_capacity(64 * graph.edge_count as usize + 256);
    out.push_str(&header_lines(cfg, graph.geometry.side, graph.geometry.boundary));
    for (i, list) in graph.adjacency.iter().enumerate() {
        for &j in list {
            if (j as usize) > i {
                out.push_str(&format!("{i} {j}\n"));
            }
        }
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

/// Weights file: same header, `i w` lines with shortest round-trip decimals.
pub fn write_weights_file(path: &Path, cfg: &ExperimentConfig, graph: &Graph) -> Result<()> {
    let mut out = String::with_capacity(24 * graph.weights.values.len() + 256);
    out.push_str(&header_lines(cfg, graph.geometry.side, graph.geometry.boundary));
    for (i, w) in graph.weights.values.iter().enumerate() {
        out.push_str(&format!("{i} {w}\n"));
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

/// Parse an edge-list file back into header pairs and edges.
pub fn parse_edge_list(path: &Path) -> Result<(Vec<(String, String)>, Vec<(u32, u32)>)> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    let mut header = Vec::new();
    let mut edges = Vec::new();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("# ") {
            if let Some((k, v)) = rest.split_once('=') {
                header.push((k.to_string(), v.to_string()));
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let i: u32 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::Io(format!("bad edge line {line:?}")))?;
        let j: u32 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::Io(format!("bad edge line {line:?}")))?;
        edges.push((i, j));
    }
    Ok((header, edges))
}

/// Parse a weights file back into (index, weight) pairs.
pub fn parse_weights_file(path: &Path) -> Result<Vec<(u32, f64)>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for line in text.lines() {
        if line.starts_with('#') || line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let i: u32 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::Io(format!("bad weight line {line:?}")))?;
        let w: f64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| CliError::Io(format!("bad weight line {line:?}")))?;
        out.push((i, w));
    }
    Ok(out)
}

/// Ensure the output directory exists and return the path of a file in it.
pub fn out_file(dir: &Path, name: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
    Ok(dir.join(name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_round_trips() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 12345.6789, f64::MIN_POSITIVE] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(fmt_f64(f64::INFINITY), "");
        assert_eq!(fmt_opt::<u32>(&None), "");
        assert_eq!(fmt_opt(&Some(3u32)), "3");
    }
}
