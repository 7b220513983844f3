//! File formats: graph manifests and edge lists, dense matrices, signal and
//! tap vectors, sample pairs, vertex-frequency maps, and SVG heatmaps. All
//! floats are written with 17 significant digits so CSV round-trips are
//! lossless, and every writer goes through an atomic temp-file rename.

use crate::CliError;
use gsp::Graph;
use ndarray::{Array1, Array2};
use serde::Deserialize;
use std::fs;
use std::path::{Path, PathBuf};

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn malformed(path: &Path, why: impl std::fmt::Display) -> CliError {
    CliError::Malformed(format!("{}: {why}", path.display()))
}

/// A file that cannot be read at all is a validation problem (the run
/// references inputs that must exist); only parse failures count as
/// malformed.
fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

pub fn atomic_write(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)
                .map_err(|e| CliError::Validation(format!("{}: {e}", dir.display())))?;
        }
    }
    let tmp = path.with_extension("tmp-write");
    fs::write(&tmp, contents)
        .map_err(|e| CliError::Validation(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
    Ok(())
}

#[derive(Debug, Deserialize)]
struct GraphManifest {
    n: usize,
    directed: bool,
    edges: String,
}

/// Load a graph from a JSON manifest (`{"n": N, "directed": bool, "edges":
/// "edges.csv"}` with the edge list resolved relative to the manifest) or
/// from a dense N x N CSV weight matrix.
pub fn load_graph(path: &Path) -> Result<Graph<f64>, CliError> {
    let text = read_input(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("json") {
        let manifest: GraphManifest =
            serde_json::from_str(&text).map_err(|e| malformed(path, e))?;
        let base = path.parent().map(PathBuf::from).unwrap_or_default();
        let edges_path = base.join(&manifest.edges);
        let rows = read_edge_list(&edges_path)?;
        Graph::from_edge_list(&rows, manifest.n, manifest.directed)
            .map_err(|e| CliError::Validation(e.to_string()))
    } else {
        let w = read_matrix(path)?;
        let symmetric = {
            let n = w.nrows();
            n == w.ncols() && (0..n).all(|i| (0..n).all(|j| (w[[i, j]] - w[[j, i]]).abs() <= 1e-12))
        };
        Graph::from_weight_matrix(&w, !symmetric).map_err(|e| CliError::Validation(e.to_string()))
    }
}

/// Edge list CSV with header `src,dst,weight`.
pub fn read_edge_list(path: &Path) -> Result<Vec<(usize, usize, f64)>, CliError> {
    let text = read_input(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if i == 0 && line.starts_with("src") {
            continue;
        }
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(malformed(
                path,
                format!("line {}: expected src,dst,weight", i + 1),
            ));
        }
        let src = parts[0]
            .parse::<usize>()
            .map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?;
        let dst = parts[1]
            .parse::<usize>()
            .map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?;
        let weight = parts[2]
            .parse::<f64>()
            .map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?;
        rows.push((src, dst, weight));
    }
    Ok(rows)
}

/// Dense CSV matrix: comma-separated reals, one row per line.
pub fn read_matrix(path: &Path) -> Result<Array2<f64>, CliError> {
    let text = read_input(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<f64>, _> = line.split(',').map(|v| v.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(malformed(path, format!("line {}: ragged row", i + 1)));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(malformed(path, "empty matrix"));
    }
    let (n, m) = (rows.len(), rows[0].len());
    Ok(Array2::from_shape_fn((n, m), |(i, j)| rows[i][j]))
}

/// Column vector CSV: one real per line.
pub fn read_vector(path: &Path) -> Result<Array1<f64>, CliError> {
    let text = read_input(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(
            line.parse::<f64>()
                .map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?,
        );
    }
    if out.is_empty() {
        return Err(malformed(path, "empty vector"));
    }
    Ok(Array1::from_vec(out))
}

/// Sample pairs CSV `vertex,value`, optional header.
pub fn read_samples(path: &Path) -> Result<(Vec<usize>, Array1<f64>), CliError> {
    let text = read_input(path)?;
    let mut vertices = Vec::new();
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if i == 0 && line.starts_with("vertex") {
            continue;
        }
        let parts: Vec<&str> = line.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(malformed(
                path,
                format!("line {}: expected vertex,value", i + 1),
            ));
        }
        vertices.push(
            parts[0]
                .parse::<usize>()
                .map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?,
        );
        values.push(
            parts[1]
                .parse::<f64>()
                .map_err(|e| malformed(path, format!("line {}: {e}", i + 1)))?,
        );
    }
    Ok((vertices, Array1::from_vec(values)))
}

pub fn write_vector(path: &Path, v: &Array1<f64>) -> Result<(), CliError> {
    let body: Vec<String> = v.iter().map(|&x| fmt_float(x)).collect();
    atomic_write(path, &(body.join("\n") + "\n"))
}

pub fn write_vector_json(path: &Path, v: &Array1<f64>) -> Result<(), CliError> {
    let values: Vec<f64> = v.to_vec();
    atomic_write(
        path,
        &(serde_json::to_string_pretty(&values).expect("serializable") + "\n"),
    )
}

pub fn write_matrix(path: &Path, m: &Array2<f64>) -> Result<(), CliError> {
    let mut lines = Vec::with_capacity(m.nrows());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
        lines.push(cells.join(","));
    }
    atomic_write(path, &(lines.join("\n") + "\n"))
}

pub fn write_spectrum_json(
    path: &Path,
    lambdas: &Array1<f64>,
    spectrum: &Array1<f64>,
) -> Result<(), CliError> {
    let rows: Vec<serde_json::Value> = (0..lambdas.len())
        .map(|k| serde_json::json!({"k": k, "lambda": lambdas[k], "X": spectrum[k]}))
        .collect();
    atomic_write(
        path,
        &(serde_json::to_string_pretty(&rows).expect("serializable") + "\n"),
    )
}

/// Spectrum CSV with header `k,lambda,X`.
pub fn write_spectrum(
    path: &Path,
    lambdas: &Array1<f64>,
    spectrum: &Array1<f64>,
) -> Result<(), CliError> {
    let mut lines = vec!["k,lambda,X".to_string()];
    for k in 0..lambdas.len() {
        lines.push(format!(
            "{k},{},{}",
            fmt_float(lambdas[k]),
            fmt_float(spectrum[k])
        ));
    }
    atomic_write(path, &(lines.join("\n") + "\n"))
}

/// Vertex-frequency map CSV: header row of channel labels, one row per
/// vertex.
pub fn write_map(path: &Path, values: &Array2<f64>, labels: &[String]) -> Result<(), CliError> {
    let mut lines = vec![labels.join(",")];
    for row in values.rows() {
        let cells: Vec<String> = row.iter().map(|&x| fmt_float(x)).collect();
        lines.push(cells.join(","));
    }
    atomic_write(path, &(lines.join("\n") + "\n"))
}

/// Simple SVG heatmap (row-major cells, fixed blue-white-red palette).
/// Rendering is derived output; the CSV holds the authoritative data.
pub fn write_heatmap_svg(path: &Path, values: &Array2<f64>) -> Result<(), CliError> {
    let (rows, cols) = values.dim();
    let cell = 6usize;
    let peak = values
        .iter()
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1e-300);
    let mut body = String::new();
    body.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\">\n",
        cols * cell,
        rows * cell
    ));
    for i in 0..rows {
        for j in 0..cols {
            let t = (values[[i, j]] / peak).clamp(-1.0, 1.0);
            let (r, g, b) = if t >= 0.0 {
                let s = 1.0 - t;
                (255, (255.0 * s) as u8, (255.0 * s) as u8)
            } else {
                let s = 1.0 + t;
                ((255.0 * s) as u8, (255.0 * s) as u8, 255)
            };
            body.push_str(&format!(
                "<rect x=\"{}\" y=\"{}\" width=\"{cell}\" height=\"{cell}\" fill=\"rgb({r},{g},{b})\"/>\n",
                j * cell,
                i * cell
            ));
        }
    }
    body.push_str("</svg>\n");
    atomic_write(path, &body)
}
