//! Localized graph Fourier transform in its windowed and band-pass
//! formulations, its inversions, spectrogram views, concentration-driven
//! window optimization, reassignment, and vertex-varying filtering.

use super::bands::{BandFilterSet, BandNormalization};
use super::map::{MapAxis, VertexFrequencyMap};
use super::sgwt::ChannelApply;
use super::windows::{WindowBank, WindowSpec};
use crate::filters::{chebyshev_apply, chebyshev_fit};
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Windowed LGFT: `S(m, k) = Σ_n x(n) h_m(n) u_k(n)`, i.e. row `m` is the
/// GDFT of the signal windowed at vertex `m`.
pub fn lgft_windowed<T: Real>(
    x: &Array1<T>,
    windows: &WindowBank<T>,
    basis: &SpectralBasis<T>,
) -> Result<VertexFrequencyMap<T>> {
    let n = basis.n();
    if x.len() != n || windows.n() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len().max(windows.n()),
        });
    }
    let mut windowed = windows.columns.clone();
    for (mut col, _) in windowed.columns_mut().into_iter().zip(0..) {
        col.zip_mut_with(x, |w, &xv| *w *= xv);
    }
    // S = (Uᵀ (h ∘ x))ᵀ, one column per vertex
    let values = basis.eigenvectors.t().dot(&windowed).t().to_owned();
    Ok(VertexFrequencyMap {
        values,
        axis: MapAxis::SpectralIndex,
    })
}

/// Band LGFT: channel `k` is `H_k(L) x`, evaluated exactly through the basis
/// or by Chebyshev polynomials in the vertex domain.
pub fn lgft_bands<T: Real>(
    x: &Array1<T>,
    bands: &BandFilterSet<T>,
    how: ChannelApply<'_, T>,
) -> Result<VertexFrequencyMap<T>> {
    let channels = bands.channels();
    match how {
        ChannelApply::Exact(basis) => {
            let n = basis.n();
            if x.len() != n || bands.lambdas.len() != n {
                return Err(GspError::DimensionMismatch {
                    expected: n,
                    got: x.len().max(bands.lambdas.len()),
                });
            }
            let mut values = Array2::<T>::zeros((n, channels));
            for k in 0..channels {
                let gains = bands.sampled.row(k).to_owned();
                values
                    .column_mut(k)
                    .assign(&basis.apply_response(&gains, x)?);
            }
            Ok(VertexFrequencyMap {
                values,
                axis: MapAxis::BandIndex,
            })
        }
        ChannelApply::Chebyshev {
            operator,
            lambda_max,
            order,
        } => {
            if order < 1 {
                return Err(GspError::InvalidParameter(
                    "chebyshev application needs order >= 1".into(),
                ));
            }
            let n = operator.n();
            if x.len() != n {
                return Err(GspError::DimensionMismatch {
                    expected: n,
                    got: x.len(),
                });
            }
            let mut values = Array2::<T>::zeros((n, channels));
            for k in 0..channels {
                let f = |l: T| bands.kind.evaluate(k, l);
                let series = chebyshev_fit(f, T::zero(), lambda_max, order)?;
                values
                    .column_mut(k)
                    .assign(&chebyshev_apply(&series, operator, x)?);
            }
            Ok(VertexFrequencyMap {
                values,
                axis: MapAxis::BandIndex,
            })
        }
    }
}

/// Chebyshev tap sets per band, in monomial form (`h_{i,k}` such that
/// channel `k` is `Σ_i h_{i,k} Lⁱ x`).
pub fn band_polynomial_taps<T: Real>(
    bands: &BandFilterSet<T>,
    lambda_max: T,
    order: usize,
) -> Result<Vec<Vec<T>>> {
    let mut out = Vec::with_capacity(bands.channels());
    for k in 0..bands.channels() {
        let f = |l: T| bands.kind.evaluate(k, l);
        let series = chebyshev_fit(f, T::zero(), lambda_max, order)?;
        out.push(series.to_monomial());
    }
    Ok(out)
}

/// Inversion modes of the LGFT. Each checks its vertex-invariance condition
/// and reports the measured deviation when it is violated beyond `1e-6`.
pub enum LgftInversion<'a, T> {
    /// Inverse-transform each row and sum over vertices; needs
    /// `Σ_m h_m(n) = 1`.
    WindowSum {
        windows: &'a WindowBank<T>,
        basis: &'a SpectralBasis<T>,
    },
    /// Project back on the window kernels; needs `Σ_m h_m(n)² = 1`.
    WindowKernel {
        windows: &'a WindowBank<T>,
        basis: &'a SpectralBasis<T>,
    },
    /// Band map inversion: plain channel sum for a sum-one bank, kernel
    /// re-filtering for a sum-of-squares-one bank.
    Bands {
        bands: &'a BandFilterSet<T>,
        basis: &'a SpectralBasis<T>,
    },
}

pub fn invert_lgft<T: Real>(
    map: &VertexFrequencyMap<T>,
    mode: LgftInversion<'_, T>,
) -> Result<Array1<T>> {
    let tol = T::of(1e-6);
    match mode {
        LgftInversion::WindowSum { windows, basis } => {
            let n = basis.n();
            if map.values.dim() != (n, n) {
                return Err(GspError::DimensionMismatch {
                    expected: n,
                    got: map.values.nrows(),
                });
            }
            let sums = windows.sums_over_windows();
            let dev = sums
                .iter()
                .map(|&s| (s - T::one()).abs())
                .fold(T::zero(), |m, v| m.max(v));
            if dev > tol {
                return Err(GspError::NormalizationViolated {
                    deviation: dev.to_f64().unwrap_or(f64::NAN),
                });
            }
            // x(n) = Σ_k (Σ_m S(m,k)) u_k(n)
            let collapsed: Array1<T> = (0..n).map(|k| map.values.column(k).sum()).collect();
            Ok(basis.eigenvectors.dot(&collapsed))
        }
        LgftInversion::WindowKernel { windows, basis } => {
            let n = basis.n();
            if map.values.dim() != (n, n) {
                return Err(GspError::DimensionMismatch {
                    expected: n,
                    got: map.values.nrows(),
                });
            }
            let sums = windows.square_sums_over_windows();
            let dev = sums
                .iter()
                .map(|&s| (s - T::one()).abs())
                .fold(T::zero(), |m, v| m.max(v));
            if dev > tol {
                return Err(GspError::NormalizationViolated {
                    deviation: dev.to_f64().unwrap_or(f64::NAN),
                });
            }
            // x(n) = Σ_m h_m(n) · IGDFT{S(m, ·)}(n)
            let mut acc = Array1::<T>::zeros(n);
            for m in 0..n {
                let row = map.values.row(m).to_owned();
                let local = basis.eigenvectors.dot(&row);
                for v in 0..n {
                    acc[v] += windows.columns[[v, m]] * local[v];
                }
            }
            Ok(acc)
        }
        LgftInversion::Bands { bands, basis } => {
            let n = basis.n();
            let channels = bands.channels();
            if map.values.dim() != (n, channels) {
                return Err(GspError::DimensionMismatch {
                    expected: channels,
                    got: map.values.ncols(),
                });
            }
            let dev = bands.normalization_deviation();
            if dev > tol {
                return Err(GspError::NormalizationViolated {
                    deviation: dev.to_f64().unwrap_or(f64::NAN),
                });
            }
            match bands.normalization {
                BandNormalization::SumOne => {
                    let mut acc = Array1::<T>::zeros(n);
                    for k in 0..channels {
                        acc += &map.values.column(k);
                    }
                    Ok(acc)
                }
                BandNormalization::SumSquaresOne => {
                    let mut acc = Array1::<T>::zeros(n);
                    for k in 0..channels {
                        let gains = bands.sampled.row(k).to_owned();
                        let refiltered =
                            basis.apply_response(&gains, &map.values.column(k).to_owned())?;
                        acc += &refiltered;
                    }
                    Ok(acc)
                }
            }
        }
    }
}

/// Squared map with its marginals.
#[derive(Debug, Clone)]
pub struct Spectrogram<T> {
    pub power: Array2<T>,
    /// `Σ_k |S(m, k)|²` per vertex.
    pub vertex_marginal: Array1<T>,
    /// `Σ_m |S(m, k)|²` per channel.
    pub spectral_marginal: Array1<T>,
    pub total_energy: T,
}

pub fn spectrogram<T: Real>(map: &VertexFrequencyMap<T>) -> Spectrogram<T> {
    let power = map.values.mapv(|v| v * v);
    let vertex_marginal: Array1<T> = power.rows().into_iter().map(|r| r.sum()).collect();
    let spectral_marginal: Array1<T> = power.columns().into_iter().map(|c| c.sum()).collect();
    let total_energy = vertex_marginal.sum();
    Spectrogram {
        power,
        vertex_marginal,
        spectral_marginal,
        total_energy,
    }
}

/// Concentration measure `‖S‖₁ / ‖S‖_F`; equals 1 for a single nonzero
/// entry and `√(count)` for flat-magnitude supports.
pub fn concentration<T: Real>(map: &VertexFrequencyMap<T>) -> Result<T> {
    let mut one = T::zero();
    let mut two = T::zero();
    for &v in map.values.iter() {
        one += v.abs();
        two += v * v;
    }
    if two == T::zero() {
        return Err(GspError::EmptyInput("concentration of an all-zero map"));
    }
    Ok(one / two.sqrt())
}

#[derive(Debug, Clone, Copy)]
pub struct TauOptimizer<T> {
    pub tau0: T,
    pub tau1: T,
    pub step: T,
    pub max_iter: usize,
    pub tolerance: T,
    /// Log-spaced fallback scan guarding against step-size divergence.
    pub grid_points: usize,
}

impl<T: Real> Default for TauOptimizer<T> {
    fn default() -> Self {
        TauOptimizer {
            tau0: T::one(),
            tau1: T::of(2.0),
            step: T::of(5.0),
            max_iter: 50,
            tolerance: T::of(1e-3),
            grid_points: 32,
        }
    }
}

/// Minimize the spectrogram concentration over the spectral-window width
/// `τ` by the two-point difference iteration
/// `τ_k = τ_{k-1} - step · (M(τ_{k-1}) - M(τ_{k-2}))`, backed by a
/// log-spaced grid scan. Returns the best `τ` encountered and its map.
pub fn optimize_tau<T: Real>(
    x: &Array1<T>,
    amplitude: T,
    basis: &SpectralBasis<T>,
    graph: &crate::graph::Graph<T>,
    opts: &TauOptimizer<T>,
) -> Result<(T, VertexFrequencyMap<T>)> {
    if opts.tau0 == opts.tau1 {
        return Err(GspError::InvalidParameter(
            "tau optimizer needs two distinct starting points".into(),
        ));
    }
    let evaluate = |tau: T| -> Result<(T, VertexFrequencyMap<T>)> {
        let bank = super::windows::build_window_bank(
            &WindowSpec::SpectralExponential { tau, amplitude },
            basis,
            graph,
        )?;
        let map = lgft_windowed(x, &bank, basis)?;
        let measure = concentration(&map)?;
        Ok((measure, map))
    };

    let mut best_tau = opts.tau0;
    let (mut best_measure, mut best_map) = evaluate(opts.tau0)?;

    let consider = |tau: T,
                    best_tau: &mut T,
                    best_measure: &mut T,
                    best_map: &mut VertexFrequencyMap<T>|
     -> Result<T> {
        let (measure, map) = evaluate(tau)?;
        if measure < *best_measure {
            *best_measure = measure;
            *best_tau = tau;
            *best_map = map;
        }
        Ok(measure)
    };

    // difference iteration from (tau0, tau1)
    let mut m_prev = best_measure;
    let mut tau_cur = opts.tau1;
    let mut m_cur = consider(tau_cur, &mut best_tau, &mut best_measure, &mut best_map)?;
    for _ in 0..opts.max_iter {
        let tau_next = tau_cur - opts.step * (m_cur - m_prev);
        if !tau_next.is_finite() || tau_next <= T::of(1e-4) {
            break;
        }
        if (tau_next - tau_cur).abs() < opts.tolerance {
            break;
        }
        m_prev = m_cur;
        tau_cur = tau_next;
        m_cur = consider(tau_cur, &mut best_tau, &mut best_measure, &mut best_map)?;
    }

    // grid fallback over a range that excludes the degenerate delta-window
    // regime at tiny tau
    let lo = T::of(0.5);
    let hi = T::of(50.0);
    let ratio = (hi / lo).ln();
    for i in 0..opts.grid_points {
        let t = T::of(i as f64) / T::of((opts.grid_points - 1) as f64);
        let tau = lo * (ratio * t).exp();
        consider(tau, &mut best_tau, &mut best_measure, &mut best_map)?;
    }
    Ok((best_tau, best_map))
}

/// Move each vertex row's total mass to its largest-magnitude channel (ties
/// to the lowest channel index).
pub fn reassign_to_band_max<T: Real>(map: &VertexFrequencyMap<T>) -> VertexFrequencyMap<T> {
    let (n, channels) = map.values.dim();
    let mut values = Array2::<T>::zeros((n, channels));
    for m in 0..n {
        let row = map.values.row(m);
        let mut best = 0usize;
        let mut best_mag = T::zero();
        let mut mass = T::zero();
        for (k, &v) in row.iter().enumerate() {
            mass += v;
            if v.abs() > best_mag {
                best_mag = v.abs();
                best = k;
            }
        }
        values[[m, best]] = mass;
    }
    VertexFrequencyMap {
        values,
        axis: map.axis,
    }
}

/// Vertex-varying filtering: zero all coefficients below the threshold and
/// invert in the given mode.
pub fn vertex_varying_filter<T: Real>(
    map: &VertexFrequencyMap<T>,
    threshold: T,
    mode: LgftInversion<'_, T>,
) -> Result<Array1<T>> {
    let kept = map.thresholded(threshold);
    invert_lgft(&kept, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::operators::{operator_matrix, OperatorKind, OperatorMatrix};
    use crate::random::SplitMix64;
    use crate::vf::bands::{build_band_filters, BandKind};
    use crate::vf::windows::{build_window_bank, hann_taps};

    fn setup(n: usize, seed: u64) -> (Graph<f64>, OperatorMatrix<f64>, SpectralBasis<f64>) {
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
        (g, l, b)
    }

    fn random_signal(n: usize, rng: &mut SplitMix64) -> Array1<f64> {
        (0..n).map(|_| rng.next_f64() - 0.5).collect()
    }

    #[test]
    fn all_ones_window_reduces_to_plain_gdft() {
        let (_g, _l, b) = setup(10, 3);
        let mut rng = SplitMix64::new(4);
        let x = random_signal(10, &mut rng);
        let windows = WindowBank {
            columns: Array2::<f64>::ones((10, 10)),
            kind: crate::vf::windows::WindowKind::Vertex,
            spectrum: None,
        };
        let map = lgft_windowed(&x, &windows, &b).unwrap();
        let spec = crate::spectral::gdft(&x, &b).unwrap();
        for m in 0..10 {
            for k in 0..10 {
                assert!((map.values[[m, k]] - spec[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn delta_window_puts_sample_in_dc_bin() {
        let (_g, _l, b) = setup(9, 5);
        let mut rng = SplitMix64::new(6);
        let x = random_signal(9, &mut rng);
        let windows = WindowBank {
            columns: Array2::<f64>::eye(9),
            kind: crate::vf::windows::WindowKind::Vertex,
            spectrum: None,
        };
        let map = lgft_windowed(&x, &windows, &b).unwrap();
        for m in 0..9 {
            let want = x[m] / 3.0; // x(m) / sqrt(N)
            assert!((map.values[[m, 0]] - want).abs() < 1e-10);
        }
    }

    #[test]
    fn binomial_two_band_split_sums_back() {
        let (_g, _l, b) = setup(8, 7);
        let mut rng = SplitMix64::new(8);
        let x = random_signal(8, &mut rng);
        let set = build_band_filters(
            BandKind::Binomial {
                k: 1,
                lambda_max: b.lambda_max(),
            },
            &b.eigenvalues,
        )
        .unwrap();
        let map = lgft_bands(&x, &set, ChannelApply::Exact(&b)).unwrap();
        for m in 0..8 {
            let sum = map.values[[m, 0]] + map.values[[m, 1]];
            assert!((sum - x[m]).abs() <= 1e-10);
        }
    }

    #[test]
    fn inversion_modes_round_trip() {
        let (g, _l, b) = setup(12, 9);
        let mut rng = SplitMix64::new(10);
        let x = random_signal(12, &mut rng);

        // bands mode, sum-one raised cosine bank
        let set = build_band_filters(
            BandKind::RaisedCosine {
                k: 6,
                lambda_max: b.lambda_max(),
            },
            &b.eigenvalues,
        )
        .unwrap();
        let map = lgft_bands(&x, &set, ChannelApply::Exact(&b)).unwrap();
        let back = invert_lgft(
            &map,
            LgftInversion::Bands {
                bands: &set,
                basis: &b,
            },
        )
        .unwrap();
        for (u, w) in back.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-10);
        }

        // bands mode, sum-of-squares-one Meyer bank (kernel re-filtering)
        let bounds = crate::vf::bands::BandBounds::uniform(b.lambda_max(), 6).unwrap();
        let set2 = build_band_filters(BandKind::MeyerLike { bounds }, &b.eigenvalues).unwrap();
        let map2 = lgft_bands(&x, &set2, ChannelApply::Exact(&b)).unwrap();
        let back2 = invert_lgft(
            &map2,
            LgftInversion::Bands {
                bands: &set2,
                basis: &b,
            },
        )
        .unwrap();
        for (u, w) in back2.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-10);
        }

        // window sum mode with column-normalized vertex windows
        let bank = build_window_bank(
            &WindowSpec::VertexNeighborhood {
                taps: hann_taps(3),
                width: 3,
            },
            &b,
            &g,
        )
        .unwrap()
        .normalized_for_sum()
        .unwrap();
        let map3 = lgft_windowed(&x, &bank, &b).unwrap();
        let back3 = invert_lgft(
            &map3,
            LgftInversion::WindowSum {
                windows: &bank,
                basis: &b,
            },
        )
        .unwrap();
        for (u, w) in back3.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-10);
        }

        // window kernel mode with energy-normalized windows
        let bank2 = build_window_bank(
            &WindowSpec::SpectralExponential {
                tau: 1.5,
                amplitude: 1.0,
            },
            &b,
            &g,
        )
        .unwrap()
        .normalized_for_kernel()
        .unwrap();
        let map4 = lgft_windowed(&x, &bank2, &b).unwrap();
        let back4 = invert_lgft(
            &map4,
            LgftInversion::WindowKernel {
                windows: &bank2,
                basis: &b,
            },
        )
        .unwrap();
        for (u, w) in back4.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-10);
        }
    }

    #[test]
    fn violated_normalization_is_detected() {
        let (_g, _l, b) = setup(10, 11);
        let mut rng = SplitMix64::new(12);
        let x = random_signal(10, &mut rng);
        let mut set = build_band_filters(
            BandKind::RaisedCosine {
                k: 5,
                lambda_max: b.lambda_max(),
            },
            &b.eigenvalues,
        )
        .unwrap();
        // rescale one band
        for p in 0..10 {
            set.sampled[[2, p]] *= 1.5;
        }
        let map = lgft_bands(&x, &set, ChannelApply::Exact(&b)).unwrap();
        let err = invert_lgft(
            &map,
            LgftInversion::Bands {
                bands: &set,
                basis: &b,
            },
        );
        match err {
            Err(GspError::NormalizationViolated { deviation }) => assert!(deviation > 1e-6),
            other => panic!("expected normalization violation, got {other:?}"),
        }
    }

    #[test]
    fn chebyshev_band_path_improves_with_order() {
        let (_g, l, b) = setup(16, 13);
        let mut rng = SplitMix64::new(14);
        let x = random_signal(16, &mut rng);
        let set = build_band_filters(
            BandKind::RaisedCosine {
                k: 8,
                lambda_max: b.lambda_max(),
            },
            &b.eigenvalues,
        )
        .unwrap();
        let exact = lgft_bands(&x, &set, ChannelApply::Exact(&b)).unwrap();
        let mut prev_err = f64::INFINITY;
        for order in [6usize, 20, 80] {
            let approx = lgft_bands(
                &x,
                &set,
                ChannelApply::Chebyshev {
                    operator: &l,
                    lambda_max: b.lambda_max(),
                    order,
                },
            )
            .unwrap();
            let err = exact
                .values
                .iter()
                .zip(approx.values.iter())
                .map(|(a, c)| (a - c).abs())
                .fold(0.0f64, f64::max);
            assert!(err <= prev_err + 1e-12, "order {order}: {err} > {prev_err}");
            prev_err = err;
        }
        let scale = exact
            .values
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
            .max(1.0);
        assert!(prev_err <= 1e-3 * scale);
    }

    #[test]
    fn spectrogram_marginals_and_energy() {
        let (g, _l, b) = setup(11, 15);
        let mut rng = SplitMix64::new(16);
        let x = random_signal(11, &mut rng);
        let bank = build_window_bank(
            &WindowSpec::SpectralExponential {
                tau: 2.0,
                amplitude: 1.0,
            },
            &b,
            &g,
        )
        .unwrap();
        let map = lgft_windowed(&x, &bank, &b).unwrap();
        let sg = spectrogram(&map);
        // vertex marginal equals the windowed power
        for m in 0..11 {
            let want: f64 = (0..11).map(|v| (x[v] * bank.columns[[v, m]]).powi(2)).sum();
            assert!((sg.vertex_marginal[m] - want).abs() < 1e-10);
        }
        // energy-normalized windows make the total energy unbiased
        let nbank = bank.normalized_for_kernel().unwrap();
        let map2 = lgft_windowed(&x, &nbank, &b).unwrap();
        let sg2 = spectrogram(&map2);
        let input: f64 = x.iter().map(|v| v * v).sum();
        assert!((sg2.total_energy - input).abs() <= 1e-9 * input.max(1.0));
        // zero signal -> all-zero outputs
        let zmap = lgft_windowed(&Array1::<f64>::zeros(11), &bank, &b).unwrap();
        let zsg = spectrogram(&zmap);
        assert_eq!(zsg.total_energy, 0.0);
    }

    #[test]
    fn concentration_extremes() {
        let mut one = Array2::<f64>::zeros((4, 4));
        one[[1, 2]] = 3.5;
        let m1 = VertexFrequencyMap {
            values: one,
            axis: MapAxis::SpectralIndex,
        };
        assert!((concentration(&m1).unwrap() - 1.0).abs() < 1e-12);
        let flat = VertexFrequencyMap {
            values: Array2::<f64>::ones((4, 4)).mapv(|v| v * 0.3),
            axis: MapAxis::SpectralIndex,
        };
        assert!((concentration(&flat).unwrap() - 4.0).abs() < 1e-12);
        let zero = VertexFrequencyMap {
            values: Array2::<f64>::zeros((4, 4)),
            axis: MapAxis::SpectralIndex,
        };
        assert!(concentration(&zero).is_err());
    }

    #[test]
    fn reassignment_rules() {
        let mut values = Array2::<f64>::zeros((3, 4));
        // one-hot row stays put
        values[[0, 2]] = 1.5;
        // uniform row collapses to the lowest band
        for k in 0..4 {
            values[[1, k]] = 0.25;
        }
        // mixed row moves to its max
        values[[2, 1]] = -0.2;
        values[[2, 3]] = 0.9;
        let map = VertexFrequencyMap {
            values,
            axis: MapAxis::BandIndex,
        };
        let out = reassign_to_band_max(&map);
        assert_eq!(out.values[[0, 2]], 1.5);
        assert_eq!(out.values[[1, 0]], 1.0);
        assert!((out.values[[2, 3]] - 0.7).abs() < 1e-12);
    }

    #[test]
    fn threshold_filter_limits() {
        let (_g, _l, b) = setup(10, 17);
        let mut rng = SplitMix64::new(18);
        let x = random_signal(10, &mut rng);
        let set = build_band_filters(
            BandKind::RaisedCosine {
                k: 5,
                lambda_max: b.lambda_max(),
            },
            &b.eigenvalues,
        )
        .unwrap();
        let map = lgft_bands(&x, &set, ChannelApply::Exact(&b)).unwrap();
        // T = 0: perfect inversion
        let y = vertex_varying_filter(
            &map,
            0.0,
            LgftInversion::Bands {
                bands: &set,
                basis: &b,
            },
        )
        .unwrap();
        for (u, w) in y.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-10);
        }
        // T = infinity: zero output
        let y = vertex_varying_filter(
            &map,
            f64::INFINITY,
            LgftInversion::Bands {
                bands: &set,
                basis: &b,
            },
        )
        .unwrap();
        assert!(y.iter().all(|v| *v == 0.0));
    }
}
