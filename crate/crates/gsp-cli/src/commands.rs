//! Implementations of the CLI verbs. Every command returns a JSON metrics
//! object printed on stdout as `{"ok": true, "metrics": ...}`.

use crate::args::*;
use crate::io;
use crate::CliError;
use gsp::vf;
use gsp::{
    apply_taps, check_bipartite, denoise, design_response, fb_analyze, fb_synthesize, gdft,
    mp_recover, operator_matrix, qmf_from_lowpass, taubin, DenoiseVariant, DesignMode, FilterTaps,
    Graph, MeasurementSet, MpStop, OperatorKind, OperatorMatrix, QmfKind, SpectralBasis,
};
use ndarray::{Array1, Array2};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn load_graph_and_signal(
    graph: &Path,
    signal: &Path,
) -> Result<(Graph<f64>, Array1<f64>), CliError> {
    let g = io::load_graph(graph)?;
    let x = io::read_vector(signal)?;
    if x.len() != g.n_vertices() {
        return Err(CliError::Validation(format!(
            "signal length {} does not match graph size {}",
            x.len(),
            g.n_vertices()
        )));
    }
    Ok((g, x))
}

fn basis_for(
    g: &Graph<f64>,
    operator: OperatorArg,
) -> Result<(OperatorMatrix<f64>, SpectralBasis<f64>), CliError> {
    let op = operator_matrix(g, operator.kind()).map_err(validation)?;
    let basis = SpectralBasis::from_operator(&op).map_err(validation)?;
    Ok((op, basis))
}

fn out_path(out_dir: &Path, opt: &Option<PathBuf>, default: &str) -> PathBuf {
    match opt {
        Some(p) if p.is_absolute() => p.clone(),
        Some(p) => out_dir.join(p),
        None => out_dir.join(default),
    }
}

/// Default output name honoring the global format flag.
fn named(base: &str, format: FileFormat) -> String {
    match format {
        FileFormat::Csv => format!("{base}.csv"),
        FileFormat::Json => format!("{base}.json"),
    }
}

fn write_vector_fmt(path: &Path, v: &Array1<f64>, format: FileFormat) -> Result<(), CliError> {
    match format {
        FileFormat::Csv => io::write_vector(path, v),
        FileFormat::Json => io::write_vector_json(path, v),
    }
}

fn write_spectrum_fmt(
    path: &Path,
    lambdas: &Array1<f64>,
    spectrum: &Array1<f64>,
    format: FileFormat,
) -> Result<(), CliError> {
    match format {
        FileFormat::Csv => io::write_spectrum(path, lambdas, spectrum),
        FileFormat::Json => io::write_spectrum_json(path, lambdas, spectrum),
    }
}

fn energy(v: &Array1<f64>) -> f64 {
    v.iter().map(|x| x * x).sum()
}

pub fn dispatch(cli: &Cli) -> Result<Value, CliError> {
    match &cli.command {
        Command::Graph { action } => graph_cmd(cli, action),
        Command::Spectrum {
            graph,
            signal,
            operator,
            out,
        } => spectrum_cmd(cli, graph, signal, *operator, out),
        Command::Filter { action } => filter_cmd(cli, action),
        Command::Denoise {
            graph,
            signal,
            alpha,
            beta,
            quadratic,
            out,
        } => denoise_cmd(cli, graph, signal, *alpha, *beta, *quadratic, out),
        Command::Taubin {
            graph,
            signal,
            alpha,
            beta,
            iters,
            out,
        } => taubin_cmd(cli, graph, signal, *alpha, *beta, *iters, out),
        Command::Fbank { action } => fbank_cmd(cli, action),
        Command::Cs { action } => cs_cmd(cli, action),
        Command::Gwss { action } => gwss_cmd(cli, action),
        Command::Lgft {
            graph,
            signal,
            windows,
            out,
            svg,
        } => lgft_cmd(cli, graph, signal, windows, out, svg),
        Command::Sgwt {
            graph,
            signal,
            progression,
            scales,
            cheb,
            out,
            svg,
        } => sgwt_cmd(cli, graph, signal, *progression, *scales, *cheb, out, svg),
        Command::Vfd {
            graph,
            signal,
            kind,
            out,
            svg,
        } => vfd_cmd(cli, graph, signal, *kind, out, svg),
        Command::Smoothness { graph, signal, out } => smoothness_cmd(cli, graph, signal, out),
    }
}

fn graph_cmd(cli: &Cli, action: &GraphAction) -> Result<Value, CliError> {
    match action {
        GraphAction::Info { graph } => {
            let g = io::load_graph(graph)?;
            Ok(json!({
                "n": g.n_vertices(),
                "edges": g.edges().len(),
                "directed": g.is_directed(),
                "connected": g.is_connected(),
            }))
        }
        GraphAction::Operator {
            graph,
            operator,
            out,
        } => {
            let g = io::load_graph(graph)?;
            let op = operator_matrix(&g, operator.kind()).map_err(validation)?;
            let path = out_path(&cli.out_dir, out, &format!("{}.csv", op.kind.name()));
            io::write_matrix(&path, &op.values)?;
            Ok(json!({
                "operator": op.kind.name(),
                "n": op.n(),
                "out": path.display().to_string(),
            }))
        }
    }
}

fn spectrum_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    operator: OperatorArg,
    out: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let (_, basis) = basis_for(&g, operator)?;
    let spectrum = gdft(&x, &basis).map_err(validation)?;
    let path = out_path(&cli.out_dir, out, &named("spectrum", cli.format));
    write_spectrum_fmt(&path, &basis.eigenvalues, &spectrum, cli.format)?;
    Ok(json!({
        "n": spectrum.len(),
        "energy": energy(&x),
        "spectral_energy": energy(&spectrum),
        "out": path.display().to_string(),
    }))
}

fn filter_cmd(cli: &Cli, action: &FilterAction) -> Result<Value, CliError> {
    match action {
        FilterAction::Design {
            response,
            lambdas,
            graph,
            operator,
            order,
            mode,
            out,
        } => {
            let g = io::read_vector(response)?;
            let lam = match (lambdas, graph) {
                (Some(path), _) => io::read_vector(path)?,
                (None, Some(path)) => {
                    let gr = io::load_graph(path)?;
                    let (_, basis) = basis_for(&gr, *operator)?;
                    basis.eigenvalues.clone()
                }
                (None, None) => {
                    return Err(CliError::Validation(
                        "filter design needs --lambdas or --graph".into(),
                    ))
                }
            };
            let mode = match mode {
                DesignModeArg::Ls => DesignMode::LeastSquares,
                DesignModeArg::Exact => DesignMode::Exact,
            };
            let taps = design_response(&g, &lam, *order, mode).map_err(validation)?;
            let fitted: Array1<f64> = taps.sampled_response(&lam);
            let residual: f64 = fitted
                .iter()
                .zip(g.iter())
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            let path = out_path(&cli.out_dir, out, &named("taps", cli.format));
            write_vector_fmt(&path, &Array1::from_vec(taps.taps.clone()), cli.format)?;
            Ok(json!({
                "order": taps.order(),
                "residual": residual,
                "out": path.display().to_string(),
            }))
        }
        FilterAction::Apply {
            taps,
            graph,
            signal,
            operator,
            out,
        } => {
            let coeffs = io::read_vector(taps)?;
            let (g, x) = load_graph_and_signal(graph, signal)?;
            let op = operator_matrix(&g, operator.kind()).map_err(validation)?;
            let filter = FilterTaps::new(coeffs.to_vec(), operator.kind());
            let y = apply_taps(&filter, &op, &x).map_err(validation)?;
            let path = out_path(&cli.out_dir, out, &named("filtered", cli.format));
            write_vector_fmt(&path, &y, cli.format)?;
            Ok(json!({
                "input_energy": energy(&x),
                "output_energy": energy(&y),
                "out": path.display().to_string(),
            }))
        }
    }
}

fn denoise_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    alpha: f64,
    beta: Option<f64>,
    quadratic: bool,
    out: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let (lap, basis) = basis_for(&g, OperatorArg::Laplacian)?;
    let variant = match (beta, quadratic) {
        (Some(beta), _) => DenoiseVariant::Combined { alpha, beta },
        (None, true) => DenoiseVariant::Quadratic { alpha },
        (None, false) => DenoiseVariant::Smooth { alpha },
    };
    let y = denoise(&x, &basis, variant).map_err(validation)?;
    let quad = |v: &Array1<f64>| v.dot(&lap.values.dot(v));
    let path = out_path(&cli.out_dir, out, &named("denoised", cli.format));
    write_vector_fmt(&path, &y, cli.format)?;
    Ok(json!({
        "input_roughness": quad(&x),
        "output_roughness": quad(&y),
        "out": path.display().to_string(),
    }))
}

fn taubin_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    alpha: f64,
    beta: f64,
    iters: usize,
    out: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let lap = operator_matrix(&g, OperatorKind::Laplacian).map_err(validation)?;
    let y = taubin(&x, &lap, alpha, beta, iters).map_err(validation)?;
    let path = out_path(&cli.out_dir, out, &named("smoothed", cli.format));
    write_vector_fmt(&path, &y, cli.format)?;
    Ok(json!({
        "iterations": iters,
        "input_energy": energy(&x),
        "output_energy": energy(&y),
        "out": path.display().to_string(),
    }))
}

fn fbank_cmd(cli: &Cli, action: &FbankAction) -> Result<Value, CliError> {
    let FbankAction::Roundtrip {
        graph,
        signal,
        kind,
        out,
    } = action;
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let part = check_bipartite(&g).map_err(validation)?;
    let (_, basis) = basis_for(&g, OperatorArg::NormalizedLaplacian)?;
    let qmf_kind = match kind {
        QmfKindArg::Sqrt => QmfKind::SqrtTwoMinusLambda,
        QmfKindArg::Cos => QmfKind::Cosine,
    };
    let clamped = basis.eigenvalues.mapv(|v: f64| v.clamp(0.0, 2.0));
    let bank = qmf_from_lowpass(qmf_kind, &clamped).map_err(validation)?;
    let (f_low, f_high) = fb_analyze(&x, &bank, &part, &basis).map_err(validation)?;
    let y = fb_synthesize(&f_low, &f_high).map_err(validation)?;
    let err = y
        .iter()
        .zip(x.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    let low_path = out_path(&cli.out_dir, out, "channel_low.csv");
    let high_path = low_path.with_file_name(format!(
        "{}_high.csv",
        low_path
            .file_stem()
            .unwrap()
            .to_string_lossy()
            .replace("_low", "")
    ));
    io::write_vector(&low_path, &f_low)?;
    io::write_vector(&high_path, &f_high)?;
    Ok(json!({
        "low_energy": energy(&f_low),
        "high_energy": energy(&f_high),
        "reconstruction_error": err,
        "out_low": low_path.display().to_string(),
        "out_high": high_path.display().to_string(),
    }))
}

fn cs_cmd(cli: &Cli, action: &CsAction) -> Result<Value, CliError> {
    let CsAction::Recover {
        graph,
        samples,
        sparsity,
        epsilon,
        raw_correlation,
        operator,
        out,
    } = action;
    let g = io::load_graph(graph)?;
    let (vertices, values) = io::read_samples(samples)?;
    let (_, basis) = basis_for(&g, *operator)?;
    let m = MeasurementSet::new(vertices.clone(), values).map_err(validation)?;
    let stop = match (sparsity, epsilon) {
        (Some(k), _) => MpStop::Sparsity(*k),
        (None, Some(e)) => MpStop::Residual(*e),
        (None, None) => MpStop::Residual(gsp::sampling::default_residual_bound(&m)),
    };
    let rec = mp_recover(&m, &basis, stop, *raw_correlation).map_err(validation)?;
    let (mu, threshold) =
        gsp::coherence_bound(&basis, &vertices, *raw_correlation).map_err(validation)?;
    let sig_path = out_path(&cli.out_dir, out, "recovered.csv");
    let spec_path = sig_path.with_file_name(format!(
        "{}_spectrum.csv",
        sig_path.file_stem().unwrap().to_string_lossy()
    ));
    write_vector_fmt(&sig_path, &rec.signal, cli.format)?;
    write_spectrum_fmt(&spec_path, &basis.eigenvalues, &rec.spectrum, cli.format)?;
    Ok(json!({
        "support": rec.support.indices,
        "residual": rec.residual_norms.last().copied().unwrap_or(0.0),
        "stagnated": rec.stagnated,
        "coherence": mu,
        "uniqueness_threshold": if threshold.is_finite() { json!(threshold) } else { json!("unbounded") },
        "out": sig_path.display().to_string(),
        "out_spectrum": spec_path.display().to_string(),
    }))
}

fn gwss_cmd(cli: &Cli, action: &GwssAction) -> Result<Value, CliError> {
    match action {
        GwssAction::Generate {
            taps,
            graph,
            count,
            operator,
            out,
        } => {
            let coeffs = io::read_vector(taps)?;
            let g = io::load_graph(graph)?;
            let op = operator_matrix(&g, operator.kind()).map_err(validation)?;
            let filter = FilterTaps::new(coeffs.to_vec(), operator.kind());
            let seed = cli.seed.unwrap_or(0);
            let xs = gsp::generate_gwss(&filter, &op, *count, seed).map_err(validation)?;
            let path = out_path(&cli.out_dir, out, "realizations.csv");
            io::write_matrix(&path, &xs)?;
            Ok(json!({
                "count": count,
                "n": op.n(),
                "seed": seed,
                "out": path.display().to_string(),
            }))
        }
        GwssAction::Psd {
            realizations,
            graph,
            operator,
            out,
        } => {
            let xs = io::read_matrix(realizations)?;
            let g = io::load_graph(graph)?;
            let (_, basis) = basis_for(&g, *operator)?;
            let psd = gsp::periodogram(&xs, &basis).map_err(validation)?;
            let path = out_path(&cli.out_dir, out, &named("psd", cli.format));
            write_spectrum_fmt(&path, &basis.eigenvalues, &psd, cli.format)?;
            Ok(json!({
                "realizations": xs.nrows(),
                "out": path.display().to_string(),
            }))
        }
    }
}

/// Parse the window argument of the `lgft` verb.
enum WindowChoice {
    Spectral {
        tau: f64,
        amplitude: f64,
    },
    Vertex {
        width: usize,
    },
    Bands {
        kind: String,
        k: usize,
        cheb: Option<usize>,
    },
}

fn parse_windows(spec: &str) -> Result<WindowChoice, CliError> {
    let bad = || CliError::Validation(format!("cannot parse window spec `{spec}`"));
    let (head, rest) = spec.split_once(':').ok_or_else(bad)?;
    let fields: Vec<&str> = rest.split(',').map(str::trim).collect();
    match head {
        "spectral" => {
            let mut tau = None;
            let mut amplitude = 1.0;
            for f in fields {
                let (k, v) = f.split_once('=').ok_or_else(bad)?;
                match k {
                    "tau" => tau = Some(v.parse().map_err(|_| bad())?),
                    "amplitude" => amplitude = v.parse().map_err(|_| bad())?,
                    _ => return Err(bad()),
                }
            }
            Ok(WindowChoice::Spectral {
                tau: tau.ok_or_else(bad)?,
                amplitude,
            })
        }
        "vertex" => {
            if fields.first() != Some(&"hann") {
                return Err(bad());
            }
            let mut width = None;
            for f in &fields[1..] {
                let (k, v) = f.split_once('=').ok_or_else(bad)?;
                if k == "D" {
                    width = Some(v.parse().map_err(|_| bad())?);
                } else {
                    return Err(bad());
                }
            }
            Ok(WindowChoice::Vertex {
                width: width.ok_or_else(bad)?,
            })
        }
        "bands" => {
            let kind = fields.first().ok_or_else(bad)?.to_string();
            if !["hann", "meyer", "binomial"].contains(&kind.as_str()) {
                return Err(bad());
            }
            let mut k = None;
            let mut cheb = None;
            for f in &fields[1..] {
                let (key, v) = f.split_once('=').ok_or_else(bad)?;
                match key {
                    "K" => k = Some(v.parse().map_err(|_| bad())?),
                    "cheb" => cheb = Some(v.parse().map_err(|_| bad())?),
                    _ => return Err(bad()),
                }
            }
            Ok(WindowChoice::Bands {
                kind,
                k: k.ok_or_else(bad)?,
                cheb,
            })
        }
        _ => Err(bad()),
    }
}

#[allow(clippy::too_many_arguments)]
fn lgft_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    windows: &str,
    out: &Option<PathBuf>,
    svg: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let (lap, basis) = basis_for(&g, OperatorArg::Laplacian)?;
    let choice = parse_windows(windows)?;
    let (map, labels) = match choice {
        WindowChoice::Spectral { tau, amplitude } => {
            let bank = vf::build_window_bank(
                &vf::WindowSpec::SpectralExponential { tau, amplitude },
                &basis,
                &g,
            )
            .map_err(validation)?;
            let map = vf::lgft_windowed(&x, &bank, &basis).map_err(validation)?;
            let labels: Vec<String> = basis
                .eigenvalues
                .iter()
                .map(|l| io::fmt_float(*l))
                .collect();
            (map, labels)
        }
        WindowChoice::Vertex { width } => {
            let bank = vf::build_window_bank(
                &vf::WindowSpec::VertexNeighborhood {
                    taps: vf::hann_taps(width),
                    width,
                },
                &basis,
                &g,
            )
            .map_err(validation)?;
            let map = vf::lgft_windowed(&x, &bank, &basis).map_err(validation)?;
            let labels: Vec<String> = basis
                .eigenvalues
                .iter()
                .map(|l| io::fmt_float(*l))
                .collect();
            (map, labels)
        }
        WindowChoice::Bands { kind, k, cheb } => {
            let lambda_max = basis.lambda_max();
            let band_kind = match kind.as_str() {
                "hann" => vf::BandKind::RaisedCosine { k, lambda_max },
                "binomial" => vf::BandKind::Binomial { k, lambda_max },
                "meyer" => vf::BandKind::MeyerLike {
                    bounds: vf::BandBounds::uniform(lambda_max, k).map_err(validation)?,
                },
                _ => unreachable!("validated in parse_windows"),
            };
            let set = vf::build_band_filters(band_kind, &basis.eigenvalues).map_err(validation)?;
            let how = match cheb {
                Some(order) => vf::ChannelApply::Chebyshev {
                    operator: &lap,
                    lambda_max,
                    order,
                },
                None => vf::ChannelApply::Exact(&basis),
            };
            let map = vf::lgft_bands(&x, &set, how).map_err(validation)?;
            let labels: Vec<String> = (0..set.channels()).map(|c| c.to_string()).collect();
            (map, labels)
        }
    };
    let path = out_path(&cli.out_dir, out, "lgft.csv");
    io::write_map(&path, &map.values, &labels)?;
    let mut metrics = json!({
        "vertices": map.n_vertices(),
        "channels": map.n_channels(),
        "concentration": vf::concentration(&map).map_err(validation)?,
        "out": path.display().to_string(),
    });
    if let Some(svg_name) = svg {
        let svg_path = out_path(&cli.out_dir, &Some(svg_name.clone()), "lgft.svg");
        io::write_heatmap_svg(&svg_path, &map.values)?;
        metrics["svg"] = json!(svg_path.display().to_string());
    }
    Ok(metrics)
}

#[allow(clippy::too_many_arguments)]
fn sgwt_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    progression: f64,
    scales: usize,
    cheb: Option<usize>,
    out: &Option<PathBuf>,
    svg: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let (lap, basis) = basis_for(&g, OperatorArg::Laplacian)?;
    let spec = vf::SgwtSpec::new(progression, scales).map_err(validation)?;
    let how = match cheb {
        Some(order) => vf::ChannelApply::Chebyshev {
            operator: &lap,
            lambda_max: basis.lambda_max(),
            order,
        },
        None => vf::ChannelApply::Exact(&basis),
    };
    let map = vf::sgwt(&x, &spec, how).map_err(validation)?;
    let mut labels = vec!["scale-fn".to_string()];
    labels.extend((1..=scales).map(|i| format!("scale-{i}")));
    let path = out_path(&cli.out_dir, out, "sgwt.csv");
    io::write_map(&path, &map.values, &labels)?;
    let map_energy: f64 = map.values.iter().map(|v| v * v).sum();
    let mut metrics = json!({
        "scales": scales,
        "progression": progression,
        "signal_energy": energy(&x),
        "map_energy": map_energy,
        "out": path.display().to_string(),
    });
    if let Some(svg_name) = svg {
        let svg_path = out_path(&cli.out_dir, &Some(svg_name.clone()), "sgwt.svg");
        io::write_heatmap_svg(&svg_path, &map.values)?;
        metrics["svg"] = json!(svg_path.display().to_string());
    }
    Ok(metrics)
}

fn vfd_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    kind: VfdKind,
    out: &Option<PathBuf>,
    svg: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let (_, basis) = basis_for(&g, OperatorArg::Laplacian)?;
    let map = match kind {
        VfdKind::Energy => vf::energy_distribution(&x, &basis).map_err(validation)?,
        VfdKind::Rid => {
            let kernel = vf::RidKernel::sinc(basis.n());
            vf::rid(&x, &basis, &kernel).map_err(validation)?
        }
    };
    // marginal deviations as a built-in self check
    let spectrum = gdft(&x, &basis).map_err(validation)?;
    let mut vertex_dev = 0.0f64;
    for (v, row) in map.values.rows().into_iter().enumerate() {
        vertex_dev = vertex_dev.max((row.sum() - x[v] * x[v]).abs());
    }
    let mut spectral_dev = 0.0f64;
    for (k, col) in map.values.columns().into_iter().enumerate() {
        spectral_dev = spectral_dev.max((col.sum() - spectrum[k] * spectrum[k]).abs());
    }
    let labels = basis
        .eigenvalues
        .iter()
        .map(|l| io::fmt_float(*l))
        .collect::<Vec<_>>();
    let path = out_path(&cli.out_dir, out, "vfd.csv");
    io::write_map(&path, &map.values, &labels)?;
    let mut metrics = json!({
        "kind": match kind { VfdKind::Energy => "energy", VfdKind::Rid => "rid" },
        "vertex_marginal_deviation": vertex_dev,
        "spectral_marginal_deviation": spectral_dev,
        "out": path.display().to_string(),
    });
    if let Some(svg_name) = svg {
        let svg_path = out_path(&cli.out_dir, &Some(svg_name.clone()), "vfd.svg");
        io::write_heatmap_svg(&svg_path, &map.values)?;
        metrics["svg"] = json!(svg_path.display().to_string());
    }
    Ok(metrics)
}

fn smoothness_cmd(
    cli: &Cli,
    graph: &Path,
    signal: &Path,
    out: &Option<PathBuf>,
) -> Result<Value, CliError> {
    let (g, x) = load_graph_and_signal(graph, signal)?;
    let lap = operator_matrix(&g, OperatorKind::Laplacian).map_err(validation)?;
    let global = vf::smoothness_index(&x, &lap).map_err(validation)?;
    let local = vf::local_smoothness(&x, &lap).map_err(validation)?;
    let mut lines = vec!["vertex,lambda".to_string()];
    let mut defined = 0usize;
    for (v, value) in local.iter().enumerate() {
        match value {
            Some(l) => {
                defined += 1;
                lines.push(format!("{v},{}", io::fmt_float(*l)));
            }
            None => lines.push(format!("{v},undefined")),
        }
    }
    let path = out_path(&cli.out_dir, out, "smoothness.csv");
    io::atomic_write(&path, &(lines.join("\n") + "\n"))?;
    Ok(json!({
        "global_index": global,
        "defined_vertices": defined,
        "out": path.display().to_string(),
    }))
}

/// Write a 2D matrix CSV (used by tests through the library interface).
pub fn write_matrix_for_tests(path: &Path, m: &Array2<f64>) -> Result<(), CliError> {
    io::write_matrix(path, m)
}
