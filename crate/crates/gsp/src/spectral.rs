//! Spectral decomposition of symmetric graph operators and the transforms
//! built on it: the graph Fourier pair, generalized convolution, the shift
//! in the spectral domain, variation ordering for adjacency bases, and the
//! polynomial-coefficient mapping of a signal.

use crate::linalg;
use crate::operators::{OperatorKind, OperatorMatrix};
use crate::scalar::Real;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric
/// operator, with a deterministic sign convention: in every eigenvector the
/// entry of largest magnitude (lowest index on ties) is made positive.
#[derive(Debug, Clone)]
pub struct SpectralBasis<T> {
    pub eigenvalues: Array1<T>,
    /// Columns are the eigenvectors `u_k`.
    pub eigenvectors: Array2<T>,
    pub operator_kind: OperatorKind,
}

/// Symmetric eigendecomposition with ordering and sign conventions applied.
/// The input must be symmetric within `1e-10` (scaled by its magnitude).
pub fn eig_sym<T: Real>(m: &Array2<T>, kind: OperatorKind) -> Result<SpectralBasis<T>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(GspError::NotSquare(n, m.ncols()));
    }
    let scale = linalg::max_abs(m).max(T::one());
    if !linalg::is_symmetric(m, T::of(1e-10) * scale) {
        return Err(GspError::AsymmetricInput);
    }
    let (vals, vecs) = linalg::jacobi_eigh(m, T::eig_tolerance())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[i].partial_cmp(&vals[j]).unwrap());

    let mut eigenvalues = Array1::<T>::zeros(n);
    let mut eigenvectors = Array2::<T>::zeros((n, n));
    for (col, &idx) in order.iter().enumerate() {
        eigenvalues[col] = vals[idx];
        let mut best = 0usize;
        let mut best_mag = T::zero();
        for r in 0..n {
            let mag = vecs[[r, idx]].abs();
            if mag > best_mag {
                best_mag = mag;
                best = r;
            }
        }
        let flip = vecs[[best, idx]] < T::zero();
        for r in 0..n {
            eigenvectors[[r, col]] = if flip {
                -vecs[[r, idx]]
            } else {
                vecs[[r, idx]]
            };
        }
    }
    Ok(SpectralBasis {
        eigenvalues,
        eigenvectors,
        operator_kind: kind,
    })
}

impl<T: Real> SpectralBasis<T> {
    pub fn from_operator(op: &OperatorMatrix<T>) -> Result<Self> {
        eig_sym(&op.values, op.kind)
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_max(&self) -> T {
        self.eigenvalues[self.n() - 1]
    }

    /// Indices of eigenvalue clusters closer than `1e-9 · max|λ|`; eigenvectors
    /// inside a cluster are individually ambiguous and comparisons should use
    /// spectral projectors.
    pub fn degenerate_clusters(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let scale = self
            .eigenvalues
            .iter()
            .fold(T::zero(), |m, &v| m.max(v.abs()))
            .max(T::one());
        let tol = T::of(1e-9) * scale;
        let mut clusters = Vec::new();
        let mut start = 0;
        for i in 1..=n {
            if i == n || (self.eigenvalues[i] - self.eigenvalues[i - 1]).abs() > tol {
                if i - start > 1 {
                    clusters.push((start, i));
                }
                start = i;
            }
        }
        clusters
    }

    /// Apply a spectral transfer function given by its samples `g(λ_k)`:
    /// `y = U diag(g) Uᵀ x`.
    pub fn apply_response(&self, g: &Array1<T>, x: &Array1<T>) -> Result<Array1<T>> {
        if g.len() != self.n() || x.len() != self.n() {
            return Err(GspError::DimensionMismatch {
                expected: self.n(),
                got: g.len().max(x.len()),
            });
        }
        let mut spec = self.eigenvectors.t().dot(x);
        spec.zip_mut_with(g, |s, &gain| *s *= gain);
        Ok(self.eigenvectors.dot(&spec))
    }

    /// Dense matrix of a spectral transfer function, `U diag(g) Uᵀ`.
    pub fn response_matrix(&self, g: &Array1<T>) -> Array2<T> {
        let mut scaled = self.eigenvectors.clone();
        for (mut col, &gain) in scaled.columns_mut().into_iter().zip(g.iter()) {
            col.mapv_inplace(|v| v * gain);
        }
        scaled.dot(&self.eigenvectors.t())
    }
}

/// Graph Fourier transform: `X = Uᵀ x`.
pub fn gdft<T: Real>(x: &Array1<T>, basis: &SpectralBasis<T>) -> Result<Array1<T>> {
    if x.len() != basis.n() {
        return Err(GspError::DimensionMismatch {
            expected: basis.n(),
            got: x.len(),
        });
    }
    Ok(basis.eigenvectors.t().dot(x))
}

/// Inverse graph Fourier transform: `x = U X`.
pub fn igdft<T: Real>(spectrum: &Array1<T>, basis: &SpectralBasis<T>) -> Result<Array1<T>> {
    if spectrum.len() != basis.n() {
        return Err(GspError::DimensionMismatch {
            expected: basis.n(),
            got: spectrum.len(),
        });
    }
    Ok(basis.eigenvectors.dot(spectrum))
}

/// Generalized convolution: inverse transform of the elementwise spectral
/// product, `y = U (X ∘ H)`.
pub fn graph_convolution<T: Real>(
    x: &Array1<T>,
    h: &Array1<T>,
    basis: &SpectralBasis<T>,
) -> Result<Array1<T>> {
    let mut spec = gdft(x, basis)?;
    let hs = gdft(h, basis)?;
    spec.zip_mut_with(&hs, |a, &b| *a *= b);
    igdft(&spec, basis)
}

/// Signal shifted "toward" vertex `m` through convolution with a delta:
/// `h_m(n) = Σ_k H(k) u_k(m) u_k(n)`.
pub fn shift_toward_vertex<T: Real>(
    spectrum_h: &Array1<T>,
    m: usize,
    basis: &SpectralBasis<T>,
) -> Result<Array1<T>> {
    let n = basis.n();
    if m >= n {
        return Err(GspError::VertexOutOfRange { index: m, n });
    }
    let mut scaled = spectrum_h.clone();
    for k in 0..n {
        scaled[k] *= basis.eigenvectors[[m, k]];
    }
    igdft(&scaled, basis)
}

/// Shift of a spectrum by `i` spectral indices:
/// `Y_i(k) = Σ_n y(n) u_i(n) u_k(n)` where `y` is the inverse transform of
/// the input spectrum.
pub fn spectral_shift<T: Real>(
    spectrum: &Array1<T>,
    i: usize,
    basis: &SpectralBasis<T>,
) -> Result<Array1<T>> {
    let n = basis.n();
    if i >= n {
        return Err(GspError::VertexOutOfRange { index: i, n });
    }
    let y = igdft(spectrum, basis)?;
    let mut windowed = y;
    for r in 0..n {
        windowed[r] *= basis.eigenvectors[[r, i]];
    }
    gdft(&windowed, basis)
}

/// Ranking of adjacency eigenpairs from smoothest to fastest-varying by the
/// two-norm total variation `|1 - λ/λ_max|²` (`λ_max` the spectral radius).
/// Returns the permutation of spectral indices and the variation energies.
pub fn adjacency_variation_order<T: Real>(
    basis: &SpectralBasis<T>,
) -> Result<(Vec<usize>, Vec<T>)> {
    if basis.operator_kind != OperatorKind::Adjacency
        && basis.operator_kind != OperatorKind::NormalizedAdjacency
    {
        return Err(GspError::InvalidParameter(
            "variation ordering applies to adjacency bases".into(),
        ));
    }
    let radius = basis
        .eigenvalues
        .iter()
        .fold(T::zero(), |m, &v| m.max(v.abs()));
    if radius == T::zero() {
        return Err(GspError::InvalidParameter(
            "variation ordering undefined for zero spectral radius".into(),
        ));
    }
    let energies: Vec<T> = basis
        .eigenvalues
        .iter()
        .map(|&l| {
            let d = T::one() - l / radius;
            d * d
        })
        .collect();
    let mut order: Vec<usize> = (0..basis.n()).collect();
    order.sort_by(|&a, &b| energies[a].partial_cmp(&energies[b]).unwrap());
    Ok((order, energies))
}

/// Polynomial coefficients of a system whose transfer function matches the
/// signal spectrum: `taps = V_λ⁻¹ Uᵀ x`, so `Σ_m taps_m λ_kᵐ = X(k)`.
#[derive(Debug, Clone)]
pub struct ZCoefficients<T> {
    pub taps: Array1<T>,
    /// Condition estimate of the Vandermonde system; values above `1e12`
    /// mean the coefficients are numerically unreliable.
    pub vandermonde_cond: T,
}

pub fn signal_to_z_coeffs<T: Real>(
    x: &Array1<T>,
    basis: &SpectralBasis<T>,
) -> Result<ZCoefficients<T>> {
    let n = basis.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let scale = basis
        .eigenvalues
        .iter()
        .fold(T::zero(), |m, &v| m.max(v.abs()))
        .max(T::one());
    for i in 1..n {
        if (basis.eigenvalues[i] - basis.eigenvalues[i - 1]).abs() <= T::of(1e-9) * scale {
            return Err(GspError::RepeatedEigenvalues);
        }
    }
    let spectrum = gdft(x, basis)?;
    let mut vand = Array2::<T>::ones((n, n));
    for r in 0..n {
        for c in 1..n {
            vand[[r, c]] = vand[[r, c - 1]] * basis.eigenvalues[r];
        }
    }
    let taps = linalg::lu_solve(&vand, &spectrum)?;
    let sol = linalg::lstsq(&vand, &spectrum)?;
    Ok(ZCoefficients {
        taps,
        vandermonde_cond: sol.cond.sqrt(),
    })
}

/// Evaluate the transfer function `Σ_m taps_m λᵐ` at a point.
pub fn eval_taps_at<T: Real>(taps: &Array1<T>, lambda: T) -> T {
    let mut acc = T::zero();
    for &t in taps.iter().rev() {
        acc = acc * lambda + t;
    }
    acc
}
