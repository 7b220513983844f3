//! Spectral graph wavelet transform: Meyer-shaped band-pass kernels at a
//! geometric sequence of scales plus a complementary low-pass scale
//! function, forming a Parseval tight frame.

use super::bands::meyer_argument;
use super::map::{MapAxis, VertexFrequencyMap};
use crate::filters::{chebyshev_apply, chebyshev_fit};
use crate::operators::OperatorMatrix;
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Scale layout of the wavelet transform: `K` wavelet channels at scales
/// `s_i = Mⁱ/λ_max` (scale index grows toward low frequencies) and one scale
/// function channel.
#[derive(Debug, Clone, Copy)]
pub struct SgwtSpec<T> {
    /// Scale progression `M > 1` (dyadic when `M = 2`).
    pub progression: T,
    /// Number of wavelet channels.
    pub n_scales: usize,
}

impl<T: Real> SgwtSpec<T> {
    pub fn new(progression: T, n_scales: usize) -> Result<Self> {
        if progression <= T::one() {
            return Err(GspError::InvalidParameter(
                "scale progression must exceed 1".into(),
            ));
        }
        if n_scales == 0 {
            return Err(GspError::InvalidParameter(
                "need at least one wavelet scale".into(),
            ));
        }
        Ok(SgwtSpec {
            progression,
            n_scales,
        })
    }

    pub fn q(&self) -> T {
        T::one() / (self.progression - T::one())
    }

    /// `s_i = Mⁱ / λ_max`, `i = 1..=n_scales`.
    pub fn scale(&self, i: usize, lambda_max: T) -> T {
        self.progression.powi(i as i32) / lambda_max
    }

    /// Band-pass wavelet response at scale index `i`:
    /// a rising Meyer sine on `1 < s_i λ ≤ M` and a falling Meyer cosine on
    /// `M < s_i λ ≤ M²`.
    pub fn wavelet_response(&self, i: usize, lambda: T, lambda_max: T) -> T {
        let m = self.progression;
        let q = self.q();
        let sl = self.scale(i, lambda_max) * lambda;
        let half_pi = T::PI() / T::of(2.0);
        if sl > T::one() && sl <= m {
            (half_pi * meyer_argument(q * (sl - T::one()))).sin()
        } else if sl > m && sl <= m * m {
            (half_pi * meyer_argument(q * (sl / m - T::one()))).cos()
        } else {
            T::zero()
        }
    }

    /// Low-pass scale function complementing the largest-scale wavelet:
    /// flat at one below the last wavelet's support, falling Meyer cosine
    /// across it. Together with the wavelets this yields
    /// `Σ_i H²(s_i λ) + G²(λ) = 1` over the whole spectrum.
    pub fn scale_response(&self, lambda: T, lambda_max: T) -> T {
        let m = self.progression;
        let q = self.q();
        let sl = self.scale(self.n_scales, lambda_max) * lambda;
        let half_pi = T::PI() / T::of(2.0);
        if sl <= T::one() {
            T::one()
        } else if sl <= m {
            (half_pi * meyer_argument(q * (sl - T::one()))).cos()
        } else {
            T::zero()
        }
    }

    /// `Σ_i H²(s_i λ) + G²(λ)` at one spectral point; equals one on
    /// `[0, λ_max]` by construction.
    pub fn partition_value(&self, lambda: T, lambda_max: T) -> T {
        let g = self.scale_response(lambda, lambda_max);
        let mut acc = g * g;
        for i in 1..=self.n_scales {
            let h = self.wavelet_response(i, lambda, lambda_max);
            acc += h * h;
        }
        acc
    }
}

/// How band/scale channels are applied to the signal.
pub enum ChannelApply<'a, T> {
    /// Exact spectral evaluation through an eigendecomposition.
    Exact(&'a SpectralBasis<T>),
    /// Chebyshev polynomial application in the vertex domain; never touches
    /// an eigendecomposition. `lambda_max` bounds the operator spectrum.
    Chebyshev {
        operator: &'a OperatorMatrix<T>,
        lambda_max: T,
        order: usize,
    },
}

/// Wavelet analysis: column 0 holds the scale-function channel, columns
/// `1..=K` the wavelet channels from smallest scale (highest frequencies) to
/// largest.
pub fn sgwt<T: Real>(
    x: &Array1<T>,
    spec: &SgwtSpec<T>,
    how: ChannelApply<'_, T>,
) -> Result<VertexFrequencyMap<T>> {
    let channels = spec.n_scales + 1;
    match how {
        ChannelApply::Exact(basis) => {
            let n = basis.n();
            if x.len() != n {
                return Err(GspError::DimensionMismatch {
                    expected: n,
                    got: x.len(),
                });
            }
            let lambda_max = basis.lambda_max();
            let mut values = Array2::<T>::zeros((n, channels));
            let g = basis
                .eigenvalues
                .mapv(|l| spec.scale_response(l, lambda_max));
            values.column_mut(0).assign(&basis.apply_response(&g, x)?);
            for i in 1..=spec.n_scales {
                let h = basis
                    .eigenvalues
                    .mapv(|l| spec.wavelet_response(i, l, lambda_max));
                values.column_mut(i).assign(&basis.apply_response(&h, x)?);
            }
            Ok(VertexFrequencyMap {
                values,
                axis: MapAxis::Scale,
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
            let fit_apply = |f: &dyn Fn(T) -> T| -> Result<Array1<T>> {
                let series = chebyshev_fit(f, T::zero(), lambda_max, order)?;
                chebyshev_apply(&series, operator, x)
            };
            let g = |l: T| spec.scale_response(l, lambda_max);
            values.column_mut(0).assign(&fit_apply(&g)?);
            for i in 1..=spec.n_scales {
                let h = |l: T| spec.wavelet_response(i, l, lambda_max);
                values.column_mut(i).assign(&fit_apply(&h)?);
            }
            Ok(VertexFrequencyMap {
                values,
                axis: MapAxis::Scale,
            })
        }
    }
}

/// Invert wavelet coefficients by projecting back on the channel kernels;
/// exact for the tight-frame construction.
pub fn sgwt_invert<T: Real>(
    map: &VertexFrequencyMap<T>,
    spec: &SgwtSpec<T>,
    basis: &SpectralBasis<T>,
) -> Result<Array1<T>> {
    let n = basis.n();
    if map.values.nrows() != n || map.values.ncols() != spec.n_scales + 1 {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: map.values.nrows(),
        });
    }
    let lambda_max = basis.lambda_max();
    let mut acc = Array1::<T>::zeros(n);
    let g = basis
        .eigenvalues
        .mapv(|l| spec.scale_response(l, lambda_max));
    acc += &basis.apply_response(&g, &map.values.column(0).to_owned())?;
    for i in 1..=spec.n_scales {
        let h = basis
            .eigenvalues
            .mapv(|l| spec.wavelet_response(i, l, lambda_max));
        acc += &basis.apply_response(&h, &map.values.column(i).to_owned())?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::operators::{operator_matrix, OperatorKind};
    use crate::random::SplitMix64;

    fn setup(n: usize, seed: u64) -> (OperatorMatrix<f64>, SpectralBasis<f64>) {
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
        (l, b)
    }

    #[test]
    fn dyadic_partition_is_tight_everywhere() {
        let spec = SgwtSpec::new(2.0, 9).unwrap();
        let lambda_max = 7.63;
        for i in 0..=2000 {
            let l = lambda_max * i as f64 / 2000.0;
            let v = spec.partition_value(l, lambda_max);
            assert!((v - 1.0).abs() <= 1e-9, "lambda {l}: {v}");
        }
    }

    #[test]
    fn adjacent_scales_pair_on_overlap() {
        let spec = SgwtSpec::new(2.0, 9).unwrap();
        let lambda_max = 4.0;
        for i in 1..9 {
            // scale i rises and scale i+1 falls over the same interval
            let lo = lambda_max / 2f64.powi(i as i32);
            let hi = lambda_max / 2f64.powi(i as i32 - 1);
            for t in 1..20 {
                let l = lo + (hi - lo) * t as f64 / 20.0;
                let a = spec.wavelet_response(i, l, lambda_max);
                let b = spec.wavelet_response(i + 1, l, lambda_max);
                assert!((a * a + b * b - 1.0).abs() <= 1e-12, "i={i} l={l}");
            }
        }
    }

    #[test]
    fn low_eigenvalue_energy_lands_in_scale_channel() {
        let (_, b) = setup(12, 3);
        let spec = SgwtSpec::new(2.0, 5).unwrap();
        // the constant eigenvector has lambda_0 = 0, far below
        // lambda_max / M^{K-1}
        let u0 = b.eigenvectors.column(0).to_owned();
        let map = sgwt(&u0, &spec, ChannelApply::Exact(&b)).unwrap();
        let scale_energy: f64 = map.values.column(0).iter().map(|v| v * v).sum();
        let total: f64 = map.values.iter().map(|v| v * v).sum();
        assert!((scale_energy - 1.0).abs() < 1e-9);
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn parseval_energy_equality() {
        let (_, b) = setup(14, 5);
        let spec = SgwtSpec::new(2.0, 7).unwrap();
        let mut rng = SplitMix64::new(6);
        let x: ndarray::Array1<f64> = (0..14).map(|_| rng.next_f64() - 0.5).collect();
        let map = sgwt(&x, &spec, ChannelApply::Exact(&b)).unwrap();
        let energy: f64 = map.values.iter().map(|v| v * v).sum();
        let input: f64 = x.iter().map(|v| v * v).sum();
        assert!((energy - input).abs() <= 1e-9 * input.max(1.0));
        // tight frame also inverts by kernel projection
        let back = sgwt_invert(&map, &spec, &b).unwrap();
        for (u, w) in back.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-9);
        }
    }

    #[test]
    fn chebyshev_path_approaches_exact() {
        let (l, b) = setup(16, 7);
        let spec = SgwtSpec::new(2.0, 5).unwrap();
        let mut rng = SplitMix64::new(8);
        let x: ndarray::Array1<f64> = (0..16).map(|_| rng.next_f64() - 0.5).collect();
        let exact = sgwt(&x, &spec, ChannelApply::Exact(&b)).unwrap();
        let mut errs = Vec::new();
        for order in [10usize, 40, 120] {
            let approx = sgwt(
                &x,
                &spec,
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
            errs.push(err);
        }
        assert!(errs[1] <= errs[0] + 1e-12);
        assert!(errs[2] <= errs[1] + 1e-12);
        assert!(errs[2] < 1e-2);
    }

    #[test]
    fn invalid_progression_rejected() {
        assert!(SgwtSpec::<f64>::new(1.0, 4).is_err());
        assert!(SgwtSpec::<f64>::new(0.5, 4).is_err());
    }
}
