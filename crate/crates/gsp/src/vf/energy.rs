//! Window-free vertex-frequency energy analysis: the pointwise energy
//! distribution `E(n, k) = x(n) X(k) u_k(n)` with exact marginals, reduced
//! interference smoothing with a marginal-preserving kernel, the local
//! smoothness index, and the vertex-spectral uncertainty bound.

use super::map::{MapAxis, VertexFrequencyMap};
use crate::operators::OperatorMatrix;
use crate::scalar::Real;
use crate::spectral::{gdft, SpectralBasis};
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Energy distribution `E(n, k) = x(n) X(k) u_k(n)`; its row sums are
/// `x(n)²` and its column sums are `X(k)²`, both exactly.
pub fn energy_distribution<T: Real>(
    x: &Array1<T>,
    basis: &SpectralBasis<T>,
) -> Result<VertexFrequencyMap<T>> {
    let n = basis.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let spectrum = gdft(x, basis)?;
    let mut values = Array2::<T>::zeros((n, n));
    for v in 0..n {
        for k in 0..n {
            values[[v, k]] = x[v] * spectrum[k] * basis.eigenvectors[[v, k]];
        }
    }
    Ok(VertexFrequencyMap {
        values,
        axis: MapAxis::SpectralIndex,
    })
}

/// Local smoothness index `λ(n) = (L x)(n) / x(n)`, undefined where
/// `|x(n)| <= 1e-12`.
pub fn local_smoothness<T: Real>(
    x: &Array1<T>,
    laplacian: &OperatorMatrix<T>,
) -> Result<Vec<Option<T>>> {
    let n = laplacian.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let lx = laplacian.values.dot(x);
    Ok((0..n)
        .map(|v| {
            if x[v].abs() > T::of(1e-12) {
                Some(lx[v] / x[v])
            } else {
                None
            }
        })
        .collect())
}

/// Global smoothness index (Rayleigh quotient) `xᵀLx / xᵀx`.
pub fn smoothness_index<T: Real>(x: &Array1<T>, laplacian: &OperatorMatrix<T>) -> Result<T> {
    let n = laplacian.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let denom = x.dot(x);
    if denom == T::zero() {
        return Err(GspError::EmptyInput("smoothness of the zero signal"));
    }
    Ok(x.dot(&laplacian.values.dot(x)) / denom)
}

/// Per-vertex spectral-index estimate: the channel of largest magnitude in
/// each row of a distribution (ties to the lowest index).
pub fn estimate_spectral_index<T: Real>(map: &VertexFrequencyMap<T>) -> Vec<usize> {
    map.values
        .rows()
        .into_iter()
        .map(|row| {
            let mut best = 0usize;
            let mut best_mag = T::zero();
            for (k, &v) in row.iter().enumerate() {
                if v.abs() > best_mag {
                    best_mag = v.abs();
                    best = k;
                }
            }
            best
        })
        .collect()
}

/// Center of mass of a distribution row on the eigenvalue axis:
/// `Σ_k λ_k E(n, k) / Σ_k E(n, k)`, undefined where the row sums to zero.
pub fn row_center_of_mass<T: Real>(
    map: &VertexFrequencyMap<T>,
    eigenvalues: &Array1<T>,
) -> Result<Vec<Option<T>>> {
    if map.n_channels() != eigenvalues.len() {
        return Err(GspError::DimensionMismatch {
            expected: eigenvalues.len(),
            got: map.n_channels(),
        });
    }
    Ok(map
        .values
        .rows()
        .into_iter()
        .map(|row| {
            let mass: T = row.sum();
            if mass.abs() <= T::of(1e-12) {
                return None;
            }
            let weighted: T = row
                .iter()
                .zip(eigenvalues.iter())
                .map(|(&e, &l)| e * l)
                .sum();
            Some(weighted / mass)
        })
        .collect())
}

/// Spectral-shift kernel of a reduced interference distribution. The kernel
/// must satisfy `Σ_k φ(p, k, q) = 1` (vertex marginal) and
/// `φ(p, k, p) = δ(p - k)` (frequency marginal); both are validated on
/// construction.
pub struct RidKernel<T> {
    n: usize,
    phi: Box<dyn Fn(usize, usize, usize) -> T>,
}

impl<T: Real> RidKernel<T> {
    pub fn new(n: usize, phi: Box<dyn Fn(usize, usize, usize) -> T>) -> Result<Self> {
        let kernel = RidKernel { n, phi };
        kernel.validate()?;
        Ok(kernel)
    }

    /// Flat averaging kernel over the window `|k - p| <= |p - q|`, clipped to
    /// valid indices and renormalized so both marginal conditions hold
    /// exactly on finite spectra (the interior weights reduce to
    /// `1/(1 + 2|p - q|)`).
    pub fn sinc(n: usize) -> Self {
        let phi = move |p: usize, k: usize, q: usize| -> T {
            let radius = p.abs_diff(q);
            if k.abs_diff(p) > radius {
                return T::zero();
            }
            let lo = p.saturating_sub(radius);
            let hi = (p + radius).min(n - 1);
            T::one() / T::of((hi - lo + 1) as f64)
        };
        RidKernel {
            n,
            phi: Box::new(phi),
        }
    }

    /// Identity kernel `φ(p, k, q) = δ(q - k)`, for which the reduced
    /// interference distribution collapses to the energy distribution.
    pub fn identity(n: usize) -> Self {
        let phi = move |_p: usize, k: usize, q: usize| -> T {
            if k == q {
                T::one()
            } else {
                T::zero()
            }
        };
        RidKernel {
            n,
            phi: Box::new(phi),
        }
    }

    pub fn value(&self, p: usize, k: usize, q: usize) -> T {
        (self.phi)(p, k, q)
    }

    fn validate(&self) -> Result<()> {
        let tol = T::of(1e-9);
        for p in 0..self.n {
            for q in 0..self.n {
                let mut acc = T::zero();
                for k in 0..self.n {
                    acc += self.value(p, k, q);
                }
                if (acc - T::one()).abs() > tol {
                    return Err(GspError::InvalidParameter(format!(
                        "kernel violates vertex marginal at (p={p}, q={q})"
                    )));
                }
            }
            for k in 0..self.n {
                let want = if k == p { T::one() } else { T::zero() };
                if (self.value(p, k, p) - want).abs() > tol {
                    return Err(GspError::InvalidParameter(format!(
                        "kernel violates frequency marginal at (p={p}, k={k})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Reduced interference distribution
/// `G(n, k) = Σ_p Σ_q X(p) X(q) u_p(n) u_q(n) φ(p, k, q)`.
pub fn rid<T: Real>(
    x: &Array1<T>,
    basis: &SpectralBasis<T>,
    kernel: &RidKernel<T>,
) -> Result<VertexFrequencyMap<T>> {
    let n = basis.n();
    if x.len() != n || kernel.n != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len().max(kernel.n),
        });
    }
    let spectrum = gdft(x, basis)?;
    let mut values = Array2::<T>::zeros((n, n));
    for p in 0..n {
        for q in 0..n {
            let cross = spectrum[p] * spectrum[q];
            if cross == T::zero() {
                continue;
            }
            // distribute the (p, q) interference over the kernel's k-window
            let radius = p.abs_diff(q);
            let lo = p.saturating_sub(radius);
            let hi = (p + radius).min(n - 1);
            for k in lo..=hi {
                let w = kernel.value(p, k, q);
                if w == T::zero() {
                    continue;
                }
                for v in 0..n {
                    values[[v, k]] +=
                        cross * w * basis.eigenvectors[[v, p]] * basis.eigenvectors[[v, q]];
                }
            }
        }
    }
    Ok(VertexFrequencyMap {
        values,
        axis: MapAxis::SpectralIndex,
    })
}

/// Vertex-spectral uncertainty bound `1 / max_{k,m} |u_k(m)|²`: a lower
/// bound on the product of vertex- and spectral-domain support sizes.
pub fn uncertainty_bound<T: Real>(basis: &SpectralBasis<T>) -> T {
    let peak = basis
        .eigenvectors
        .iter()
        .fold(T::zero(), |m, &v| m.max(v.abs()));
    T::one() / (peak * peak)
}
