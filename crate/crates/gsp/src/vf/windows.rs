//! Vertex localization windows for the windowed LGFT: spectral-exponential
//! windows shifted by generalized convolution, and hop-distance windows
//! built from reach matrices.

use crate::graph::Graph;
use crate::operators::reach_matrices;
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

#[derive(Debug, Clone)]
pub enum WindowSpec<T> {
    /// Spectral-domain window `H(k) = amplitude · exp(-λ_k τ)`; its shift to
    /// vertex `m` is `h_m(n) = Σ_k H(k) u_k(m) u_k(n)`.
    SpectralExponential { tau: T, amplitude: T },
    /// Window as a function of hop distance: `h_m(n) = taps[d(m, n)]` for
    /// distances below `width`.
    VertexNeighborhood { taps: Vec<T>, width: usize },
}

/// Hann taps `g(d) = (1 + cos(π d / width)) / 2` for a vertex window.
pub fn hann_taps<T: Real>(width: usize) -> Vec<T> {
    (0..width)
        .map(|d| (T::one() + (T::PI() * T::of(d as f64) / T::of(width as f64)).cos()) / T::of(2.0))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowKind {
    Spectral,
    Vertex,
}

/// All localized windows of a graph at once: column `m` holds `h_m(n)`.
#[derive(Debug, Clone)]
pub struct WindowBank<T> {
    /// `columns[[n, m]] = h_m(n)`
    pub columns: Array2<T>,
    pub kind: WindowKind,
    /// Spectral-domain samples `H(k)` for the spectral kind.
    pub spectrum: Option<Array1<T>>,
}

impl<T: Real> WindowBank<T> {
    pub fn n(&self) -> usize {
        self.columns.nrows()
    }

    pub fn window_at(&self, m: usize) -> Array1<T> {
        self.columns.column(m).to_owned()
    }

    /// `Σ_m h_m(n)` for each vertex `n` (the sum-inversion normalizer).
    pub fn sums_over_windows(&self) -> Array1<T> {
        self.columns.rows().into_iter().map(|r| r.sum()).collect()
    }

    /// `Σ_m h_m(n)²` for each vertex `n` (the kernel-inversion normalizer).
    pub fn square_sums_over_windows(&self) -> Array1<T> {
        self.columns
            .rows()
            .into_iter()
            .map(|r| r.iter().map(|&v| v * v).sum())
            .collect()
    }

    /// Rescale so `Σ_m h_m(n) = 1` holds exactly at every vertex, which makes
    /// the summation inversion vertex-invariant.
    pub fn normalized_for_sum(&self) -> Result<WindowBank<T>> {
        let sums = self.sums_over_windows();
        if sums.iter().any(|&s| s.abs() <= T::of(1e-12)) {
            return Err(GspError::InvalidParameter(
                "window bank has a vertex not covered by any window".into(),
            ));
        }
        let mut columns = self.columns.clone();
        for (n, mut row) in columns.rows_mut().into_iter().enumerate() {
            row.mapv_inplace(|v| v / sums[n]);
        }
        Ok(WindowBank {
            columns,
            kind: self.kind,
            spectrum: None,
        })
    }

    /// Rescale so `Σ_m h_m(n)² = 1` holds exactly at every vertex, which
    /// makes the kernel inversion vertex-invariant and the spectrogram
    /// energy-unbiased.
    pub fn normalized_for_kernel(&self) -> Result<WindowBank<T>> {
        let sums = self.square_sums_over_windows();
        if sums.iter().any(|&s| s <= T::of(1e-12)) {
            return Err(GspError::InvalidParameter(
                "window bank has a vertex not covered by any window".into(),
            ));
        }
        let mut columns = self.columns.clone();
        for (n, mut row) in columns.rows_mut().into_iter().enumerate() {
            let scale = sums[n].sqrt();
            row.mapv_inplace(|v| v / scale);
        }
        Ok(WindowBank {
            columns,
            kind: self.kind,
            spectrum: None,
        })
    }
}

/// Build the bank of localized windows. For the vertex kind, widths past the
/// graph diameter simply contribute empty reach levels.
pub fn build_window_bank<T: Real>(
    spec: &WindowSpec<T>,
    basis: &SpectralBasis<T>,
    graph: &Graph<T>,
) -> Result<WindowBank<T>> {
    let n = basis.n();
    if graph.n_vertices() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: graph.n_vertices(),
        });
    }
    match spec {
        WindowSpec::SpectralExponential { tau, amplitude } => {
            if *tau <= T::zero() {
                return Err(GspError::InvalidParameter(
                    "spectral window needs tau > 0".into(),
                ));
            }
            let spectrum: Array1<T> = basis.eigenvalues.mapv(|l| *amplitude * (-l * *tau).exp());
            let columns = basis.response_matrix(&spectrum);
            Ok(WindowBank {
                columns,
                kind: WindowKind::Spectral,
                spectrum: Some(spectrum),
            })
        }
        WindowSpec::VertexNeighborhood { taps, width } => {
            if *width == 0 || taps.len() != *width {
                return Err(GspError::InvalidParameter(
                    "vertex window needs one tap per hop in 0..width".into(),
                ));
            }
            if taps.iter().any(|v| !v.is_finite()) {
                return Err(GspError::NonFiniteInput);
            }
            let mut columns = Array2::<T>::eye(n).mapv(|v| v * taps[0]);
            if *width >= 2 {
                let reach = reach_matrices(graph, *width)?;
                for (d, &tap) in taps.iter().enumerate().skip(1) {
                    let a = reach.at_distance(d).expect("level within width");
                    for i in 0..n {
                        for j in 0..n {
                            if a[[i, j]] == 1 {
                                columns[[i, j]] += tap;
                            }
                        }
                    }
                }
            }
            Ok(WindowBank {
                columns,
                kind: WindowKind::Vertex,
                spectrum: None,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_graph, Graph};
    use crate::operators::{operator_matrix, OperatorKind};
    use crate::random::SplitMix64;

    fn setup(n: usize, seed: u64) -> (Graph<f64>, SpectralBasis<f64>) {
        let mut rng = SplitMix64::new(seed);
        let mut rows = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            rows.push((i.min(j), i.max(j), 0.5 + rng.next_f64()));
        }
        for i in 0..n {
            for j in (i + 2)..n {
                if rng.next_f64() < 0.2 && !(i == 0 && j == n - 1) {
                    rows.push((i, j, 0.5 + rng.next_f64()));
                }
            }
        }
        let g = Graph::from_edge_list(&rows, n, false).unwrap();
        let l = operator_matrix(&g, OperatorKind::Laplacian).unwrap();
        let b = SpectralBasis::from_operator(&l).unwrap();
        (g, b)
    }

    #[test]
    fn spectral_window_properties() {
        let (g, b) = setup(12, 3);
        let bank = build_window_bank(
            &WindowSpec::SpectralExponential {
                tau: 0.7,
                amplitude: 1.0,
            },
            &b,
            &g,
        )
        .unwrap();
        // symmetry h_m(n) = h_n(m)
        for m in 0..12 {
            for n in 0..12 {
                assert!((bank.columns[[n, m]] - bank.columns[[m, n]]).abs() <= 1e-12);
            }
        }
        // column sums equal H(0) on a connected graph
        let h0 = bank.spectrum.as_ref().unwrap()[0];
        for m in 0..12 {
            let s: f64 = bank.window_at(m).sum();
            assert!((s - h0).abs() <= 1e-10, "column {m}: {s} vs {h0}");
        }
        // window Parseval: sum_n h_m(n)^2 = sum_k |H(k) u_k(m)|^2
        let spectrum = bank.spectrum.as_ref().unwrap();
        for m in 0..12 {
            let lhs: f64 = bank.window_at(m).iter().map(|v| v * v).sum();
            let rhs: f64 = (0..12)
                .map(|k| (spectrum[k] * b.eigenvectors[[m, k]]).powi(2))
                .sum();
            assert!((lhs - rhs).abs() <= 1e-10);
        }
    }

    #[test]
    fn tiny_tau_window_approaches_delta() {
        let (g, b) = setup(8, 5);
        let bank = build_window_bank(
            &WindowSpec::SpectralExponential {
                tau: 1e-9,
                amplitude: 1.0,
            },
            &b,
            &g,
        )
        .unwrap();
        for m in 0..8 {
            for n in 0..8 {
                let want = if m == n { 1.0 } else { 0.0 };
                assert!((bank.columns[[n, m]] - want).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn rectangular_vertex_window_covers_one_hop() {
        let (g, b) = setup(10, 7);
        let bank = build_window_bank(
            &WindowSpec::VertexNeighborhood {
                taps: vec![1.0, 1.0],
                width: 2,
            },
            &b,
            &g,
        )
        .unwrap();
        for m in 0..10 {
            let dist = g.bfs_distances(m);
            for n in 0..10 {
                let want = if dist[n] <= 1 { 1.0 } else { 0.0 };
                assert_eq!(bank.columns[[n, m]], want, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn width_past_diameter_is_tolerated() {
        let g = path_graph::<f64>(4);
        let l = operator_matrix(&g, OperatorKind::Laplacian).unwrap();
        let b = SpectralBasis::from_operator(&l).unwrap();
        let bank = build_window_bank(
            &WindowSpec::VertexNeighborhood {
                taps: hann_taps(8),
                width: 8,
            },
            &b,
            &g,
        )
        .unwrap();
        assert_eq!(bank.n(), 4);
    }

    #[test]
    fn normalizations_hold_exactly() {
        let (g, b) = setup(9, 11);
        let bank = build_window_bank(
            &WindowSpec::VertexNeighborhood {
                taps: hann_taps(3),
                width: 3,
            },
            &b,
            &g,
        )
        .unwrap();
        let sum_bank = bank.normalized_for_sum().unwrap();
        for s in sum_bank.sums_over_windows() {
            assert!((s - 1.0).abs() <= 1e-12);
        }
        let ker_bank = bank.normalized_for_kernel().unwrap();
        for s in ker_bank.square_sums_over_windows() {
            assert!((s - 1.0).abs() <= 1e-12);
        }
    }
}
