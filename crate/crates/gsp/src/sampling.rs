//! Subsampling and recovery of spectrally sparse graph signals: known-support
//! least-squares reconstruction, greedy matching-pursuit support estimation,
//! coherence and restricted-isometry certificates, and measurement
//! constructions (vertex samples, random projections, aggregate shifts).

use crate::linalg;
use crate::operators::OperatorMatrix;
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Samples of a graph signal at an ordered vertex subset.
#[derive(Debug, Clone)]
pub struct MeasurementSet<T> {
    pub vertices: Vec<usize>,
    pub values: Array1<T>,
}

impl<T: Real> MeasurementSet<T> {
    pub fn new(vertices: Vec<usize>, values: Array1<T>) -> Result<Self> {
        if vertices.len() != values.len() {
            return Err(GspError::DimensionMismatch {
                expected: vertices.len(),
                got: values.len(),
            });
        }
        let mut seen = std::collections::HashSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(GspError::InvalidParameter(format!(
                    "vertex {v} sampled twice"
                )));
            }
        }
        Ok(MeasurementSet { vertices, values })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Take samples of a full signal at the given vertices.
    pub fn sample(x: &Array1<T>, vertices: Vec<usize>) -> Result<Self> {
        for &v in &vertices {
            if v >= x.len() {
                return Err(GspError::VertexOutOfRange {
                    index: v,
                    n: x.len(),
                });
            }
        }
        let values = vertices.iter().map(|&v| x[v]).collect();
        MeasurementSet::new(vertices, values)
    }
}

/// Spectral support (set of GDFT indices with allowed nonzeros).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub indices: Vec<usize>,
}

impl SupportSet {
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        for w in indices.windows(2) {
            if w[0] == w[1] {
                return Err(GspError::InvalidParameter(format!(
                    "spectral index {} repeated",
                    w[0]
                )));
            }
        }
        if let Some(&last) = indices.last() {
            if last >= n {
                return Err(GspError::VertexOutOfRange { index: last, n });
            }
        }
        Ok(SupportSet { indices })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Rows of the eigenvector matrix at the measured vertices, restricted to
/// the spectral columns in `cols`.
fn measurement_matrix<T: Real>(
    basis: &SpectralBasis<T>,
    vertices: &[usize],
    cols: &[usize],
) -> Array2<T> {
    let mut a = Array2::<T>::zeros((vertices.len(), cols.len()));
    for (r, &v) in vertices.iter().enumerate() {
        for (c, &k) in cols.iter().enumerate() {
            a[[r, c]] = basis.eigenvectors[[v, k]];
        }
    }
    a
}

#[derive(Debug, Clone)]
pub struct Reconstruction<T> {
    /// Full-length spectrum, zero outside the support.
    pub spectrum: Array1<T>,
    /// Recovered vertex-domain signal `U X`.
    pub signal: Array1<T>,
    /// `cond(A_MKᵀ A_MK)` of the reduced system.
    pub condition_number: T,
}

/// Least-squares recovery of a signal with known spectral support from
/// vertex samples: `X_K = pinv(A_MK) y`.
pub fn reconstruct_known_support<T: Real>(
    measurements: &MeasurementSet<T>,
    basis: &SpectralBasis<T>,
    support: &SupportSet,
) -> Result<Reconstruction<T>> {
    let n = basis.n();
    if measurements.len() < support.len() {
        return Err(GspError::InvalidParameter(format!(
            "need at least {} samples for support of size {}",
            support.len(),
            support.len()
        )));
    }
    for &v in &measurements.vertices {
        if v >= n {
            return Err(GspError::VertexOutOfRange { index: v, n });
        }
    }
    let a = measurement_matrix(basis, &measurements.vertices, &support.indices);
    let sol = linalg::lstsq(&a, &measurements.values)?;
    if sol.rank < support.len() {
        return Err(GspError::RankDeficient {
            rank: sol.rank,
            needed: support.len(),
        });
    }
    let mut spectrum = Array1::<T>::zeros(n);
    for (i, &k) in support.indices.iter().enumerate() {
        spectrum[k] = sol.x[i];
    }
    let signal = basis.eigenvectors.dot(&spectrum);
    Ok(Reconstruction {
        spectrum,
        signal,
        condition_number: sol.cond,
    })
}

#[derive(Debug, Clone, Copy)]
pub enum MpStop<T> {
    /// Stop after recovering this many atoms.
    Sparsity(usize),
    /// Stop once the residual two-norm drops below the bound.
    Residual(T),
}

#[derive(Debug, Clone)]
pub struct MpRecovery<T> {
    pub support: SupportSet,
    pub spectrum: Array1<T>,
    pub signal: Array1<T>,
    /// Residual norm after each iteration.
    pub residual_norms: Vec<T>,
    /// Set when the residual stopped improving before the target was met.
    pub stagnated: bool,
}

/// Greedy support recovery: repeatedly pick the spectral column best
/// correlated with the residual, refit all selected coefficients by least
/// squares, and subtract. Columns are normalized before correlation unless
/// `raw_correlation` is set; ties go to the lowest spectral index.
pub fn mp_recover<T: Real>(
    measurements: &MeasurementSet<T>,
    basis: &SpectralBasis<T>,
    stop: MpStop<T>,
    raw_correlation: bool,
) -> Result<MpRecovery<T>> {
    let n = basis.n();
    let m = measurements.len();
    if m == 0 {
        return Err(GspError::EmptyInput("matching pursuit needs measurements"));
    }
    let target_k = match stop {
        MpStop::Sparsity(k) => {
            if m <= k {
                return Err(GspError::InvalidParameter(format!(
                    "need more than {k} samples to recover {k} atoms"
                )));
            }
            k
        }
        MpStop::Residual(_) => m.saturating_sub(1).max(1),
    };
    let all: Vec<usize> = (0..n).collect();
    let a_full = measurement_matrix(basis, &measurements.vertices, &all);
    let col_norms: Vec<T> = (0..n)
        .map(|c| {
            let s: T = (0..m).map(|r| a_full[[r, c]] * a_full[[r, c]]).sum();
            s.sqrt()
        })
        .collect();

    let mut residual = measurements.values.clone();
    let mut chosen: Vec<usize> = Vec::new();
    let mut residual_norms = Vec::new();
    let mut spectrum = Array1::<T>::zeros(n);
    let mut prev_norm = residual.iter().map(|&v| v * v).sum::<T>().sqrt();
    let mut stagnated = false;

    while chosen.len() < target_k {
        let mut best = None;
        let mut best_score = T::zero();
        for c in 0..n {
            if chosen.contains(&c) {
                continue;
            }
            let mut corr = T::zero();
            for r in 0..m {
                corr += a_full[[r, c]] * residual[r];
            }
            let score = if raw_correlation || col_norms[c] <= T::of(1e-12) {
                corr.abs()
            } else {
                corr.abs() / col_norms[c]
            };
            if best.is_none() || score > best_score {
                best = Some(c);
                best_score = score;
            }
        }
        let Some(pick) = best else { break };
        chosen.push(pick);
        chosen.sort_unstable();

        let a_sel = measurement_matrix(basis, &measurements.vertices, &chosen);
        let sol = linalg::lstsq(&a_sel, &measurements.values)?;
        spectrum.fill(T::zero());
        for (i, &k) in chosen.iter().enumerate() {
            spectrum[k] = sol.x[i];
        }
        let fitted = a_sel.dot(&sol.x);
        residual = &measurements.values - &fitted;
        let norm = residual.iter().map(|&v| v * v).sum::<T>().sqrt();
        residual_norms.push(norm);

        if let MpStop::Residual(eps) = stop {
            if norm < eps {
                break;
            }
        }
        if norm >= prev_norm - T::of(1e-14) && matches!(stop, MpStop::Residual(_)) {
            stagnated = true;
            break;
        }
        prev_norm = norm;
    }

    let signal = basis.eigenvectors.dot(&spectrum);
    Ok(MpRecovery {
        support: SupportSet::new(chosen, n)?,
        spectrum,
        signal,
        residual_norms,
        stagnated,
    })
}

/// Default residual bound for unknown-sparsity pursuit: `1e-6 · ‖y‖₂`.
pub fn default_residual_bound<T: Real>(measurements: &MeasurementSet<T>) -> T {
    let norm = measurements.values.iter().map(|&v| v * v).sum::<T>().sqrt();
    T::of(1e-6) * norm
}

/// Coherence of the measurement rows: the largest normalized inner product
/// between two distinct spectral columns, plus the uniqueness threshold
/// `(1 + 1/μ)/2`. A coherence at numerical zero returns an infinite
/// threshold.
pub fn coherence_bound<T: Real>(
    basis: &SpectralBasis<T>,
    vertices: &[usize],
    raw_correlation: bool,
) -> Result<(T, T)> {
    if vertices.is_empty() {
        return Err(GspError::EmptyInput("coherence needs a vertex subset"));
    }
    let n = basis.n();
    for &v in vertices {
        if v >= n {
            return Err(GspError::VertexOutOfRange { index: v, n });
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let a = measurement_matrix(basis, vertices, &all);
    let m = vertices.len();
    let norms: Vec<T> = (0..n)
        .map(|c| (0..m).map(|r| a[[r, c]] * a[[r, c]]).sum::<T>().sqrt())
        .collect();
    let mut mu = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut dot = T::zero();
            for r in 0..m {
                dot += a[[r, i]] * a[[r, j]];
            }
            let v = if raw_correlation {
                dot.abs()
            } else if norms[i] > T::of(1e-12) && norms[j] > T::of(1e-12) {
                dot.abs() / (norms[i] * norms[j])
            } else {
                T::zero()
            };
            mu = mu.max(v);
        }
    }
    let threshold = if mu <= T::of(1e-10) {
        T::infinity()
    } else {
        (T::one() + T::one() / mu) / T::of(2.0)
    };
    Ok((mu, threshold))
}

/// Reconstruction through vertex/spectral support indicators:
/// `X = pinv(B U C) x_s` where `B` keeps measured vertices and `C` keeps the
/// spectral support. Equivalent to [`reconstruct_known_support`] on the
/// same data.
pub fn support_matrix_reconstruct<T: Real>(
    x_s: &Array1<T>,
    vertex_mask: &[bool],
    spectral_mask: &[bool],
    basis: &SpectralBasis<T>,
) -> Result<Array1<T>> {
    let n = basis.n();
    if x_s.len() != n || vertex_mask.len() != n || spectral_mask.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x_s.len().max(vertex_mask.len()).max(spectral_mask.len()),
        });
    }
    for v in 0..n {
        if !vertex_mask[v] && x_s[v] != T::zero() {
            return Err(GspError::InvalidParameter(format!(
                "upsampled signal nonzero at unmeasured vertex {v}"
            )));
        }
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| vertex_mask[v]).collect();
    let cols: Vec<usize> = (0..n).filter(|&k| spectral_mask[k]).collect();
    let k = cols.len();
    let a = measurement_matrix(basis, &vertices, &cols);
    let y: Array1<T> = vertices.iter().map(|&v| x_s[v]).collect();
    let sol = linalg::lstsq(&a, &y)?;
    if sol.rank < k {
        return Err(GspError::RankDeficient {
            rank: sol.rank,
            needed: k,
        });
    }
    let mut spectrum = Array1::<T>::zeros(n);
    for (i, &c) in cols.iter().enumerate() {
        spectrum[c] = sol.x[i];
    }
    Ok(spectrum)
}

/// Generic linear measurements `y = B x`.
pub fn random_measurements<T: Real>(x: &Array1<T>, b: &Array2<T>) -> Result<Array1<T>> {
    if b.ncols() != x.len() {
        return Err(GspError::DimensionMismatch {
            expected: b.ncols(),
            got: x.len(),
        });
    }
    Ok(b.dot(x))
}

/// Measurement matrix whose GDFT-domain columns are `B U`, for running
/// pursuit on projected measurements.
pub fn projected_basis<T: Real>(b: &Array2<T>, basis: &SpectralBasis<T>) -> Result<Array2<T>> {
    if b.ncols() != basis.n() {
        return Err(GspError::DimensionMismatch {
            expected: basis.n(),
            got: b.ncols(),
        });
    }
    Ok(b.dot(&basis.eigenvectors))
}

/// Aggregate sampling: observe the signal at one vertex while repeatedly
/// shifting it, `y(m) = (Sᵐ x)(vertex)` for `m = 0..count`.
pub fn aggregate_measurements<T: Real>(
    x: &Array1<T>,
    shift: &OperatorMatrix<T>,
    vertex: usize,
    count: usize,
) -> Result<Array1<T>> {
    let n = shift.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    if vertex >= n {
        return Err(GspError::VertexOutOfRange { index: vertex, n });
    }
    if count > n {
        return Err(GspError::InvalidParameter(format!(
            "aggregate sampling limited to {n} shifts"
        )));
    }
    let mut out = Array1::<T>::zeros(count);
    let mut cur = x.clone();
    for m in 0..count {
        out[m] = cur[vertex];
        if m + 1 < count {
            cur = shift.values.dot(&cur);
        }
    }
    Ok(out)
}

/// Implied measurement matrix of aggregate sampling: row `m` is row `vertex`
/// of `Sᵐ`.
pub fn aggregate_measurement_matrix<T: Real>(
    shift: &OperatorMatrix<T>,
    vertex: usize,
    count: usize,
) -> Result<Array2<T>> {
    let n = shift.n();
    if vertex >= n {
        return Err(GspError::VertexOutOfRange { index: vertex, n });
    }
    if count > n {
        return Err(GspError::InvalidParameter(format!(
            "aggregate sampling limited to {n} shifts"
        )));
    }
    let mut b = Array2::<T>::zeros((count, n));
    let mut row = Array1::<T>::zeros(n);
    row[vertex] = T::one();
    for m in 0..count {
        b.row_mut(m).assign(&row);
        if m + 1 < count {
            row = shift.values.t().dot(&row);
        }
    }
    Ok(b)
}

/// Exhaustive restricted-isometry estimate `δ_2K`: over every `2K`-subset of
/// spectral columns, the worst eigenvalue deviation of `A_M2Kᵀ A_M2K` from
/// the identity. Desk-scale only; larger instances are refused.
pub fn ric_bruteforce<T: Real>(
    basis: &SpectralBasis<T>,
    vertices: &[usize],
    k: usize,
) -> Result<T> {
    let n = basis.n();
    if n > 16 {
        return Err(GspError::InstanceTooLarge {
            n,
            limit: 16,
            what: "restricted isometry enumeration",
        });
    }
    let two_k = 2 * k;
    if two_k == 0 || two_k > n {
        return Err(GspError::InvalidParameter(format!(
            "sparsity {k} out of range for n = {n}"
        )));
    }
    let n_subsets = binomial(n, two_k);
    if n_subsets > 20_000 {
        return Err(GspError::InstanceTooLarge {
            n: n_subsets,
            limit: 20_000,
            what: "restricted isometry subset count",
        });
    }
    let mut delta = T::zero();
    let mut subset: Vec<usize> = (0..two_k).collect();
    loop {
        let a = measurement_matrix(basis, vertices, &subset);
        let gram = a.t().dot(&a);
        let (vals, _) = linalg::jacobi_eigh(&gram, T::eig_tolerance())?;
        for &d in vals.iter() {
            delta = delta.max((d - T::one()).abs());
        }
        // next lexicographic subset
        let mut i = two_k;
        loop {
            if i == 0 {
                return Ok(delta);
            }
            i -= 1;
            if subset[i] != i + n - two_k {
                break;
            }
        }
        subset[i] += 1;
        for j in (i + 1)..two_k {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
