//! Dense linear algebra kernels used across the crate: a cyclic Jacobi
//! eigensolver for symmetric matrices, LU factorization (solve/determinant),
//! an SVD assembled from symmetric eigendecompositions, and SVD-backed least
//! squares. Everything is deterministic; no BLAS/LAPACK backend is involved.

use crate::scalar::Real;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Sweep cap for the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

pub fn max_abs<T: Real>(a: &Array2<T>) -> T {
    a.iter().fold(T::zero(), |m, &v| m.max(v.abs()))
}

pub fn is_symmetric<T: Real>(a: &Array2<T>, tol: T) -> bool {
    let n = a.nrows();
    if n != a.ncols() {
        return false;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (a[[i, j]] - a[[j, i]]).abs() > tol {
                return false;
            }
        }
    }
    true
}

fn off_diagonal_frobenius<T: Real>(a: &Array2<T>) -> T {
    let n = a.nrows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[[i, j]] * a[[i, j]];
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.
///
/// Returns `(eigenvalues, eigenvectors)` with eigenvectors in the columns,
/// unsorted. The iteration stops once the off-diagonal Frobenius norm drops
/// below `tol` relative to the Frobenius norm of the input, or errors after
/// [`JACOBI_MAX_SWEEPS`] sweeps.
pub fn jacobi_eigh<T: Real>(a: &Array2<T>, tol: T) -> Result<(Array1<T>, Array2<T>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(GspError::NotSquare(n, a.ncols()));
    }
    let mut d = a.clone();
    let mut v = Array2::<T>::eye(n);
    if n <= 1 {
        return Ok((d.diag().to_owned(), v));
    }
    let scale = {
        let f: T = a.iter().map(|&x| x * x).sum::<T>().sqrt();
        if f > T::zero() {
            f
        } else {
            T::one()
        }
    };

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_frobenius(&d) <= tol * scale {
            return Ok((d.diag().to_owned(), v));
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = d[[p, q]];
                if apq.abs() <= scale * T::epsilon() {
                    continue;
                }
                let app = d[[p, p]];
                let aqq = d[[q, q]];
                let tau = (aqq - app) / (T::of(2.0) * apq);
                let t = if tau >= T::zero() {
                    T::one() / (tau + (T::one() + tau * tau).sqrt())
                } else {
                    -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                };
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = t * c;

                for i in 0..n {
                    if i != p && i != q {
                        let dip = d[[i, p]];
                        let diq = d[[i, q]];
                        d[[i, p]] = c * dip - s * diq;
                        d[[p, i]] = d[[i, p]];
                        d[[i, q]] = s * dip + c * diq;
                        d[[q, i]] = d[[i, q]];
                    }
                }
                let two = T::of(2.0);
                d[[p, p]] = c * c * app - two * s * c * apq + s * s * aqq;
                d[[q, q]] = s * s * app + two * s * c * apq + c * c * aqq;
                d[[p, q]] = T::zero();
                d[[q, p]] = T::zero();

                for i in 0..n {
                    let vip = v[[i, p]];
                    let viq = v[[i, q]];
                    v[[i, p]] = c * vip - s * viq;
                    v[[i, q]] = s * vip + c * viq;
                }
            }
        }
    }
    if off_diagonal_frobenius(&d) <= tol * scale {
        return Ok((d.diag().to_owned(), v));
    }
    Err(GspError::EigNoConvergence(JACOBI_MAX_SWEEPS))
}

/// LU factorization with partial pivoting. Returns `(lu, perm, sign)`.
fn lu_factor<T: Real>(a: &Array2<T>) -> Result<(Array2<T>, Vec<usize>, T)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(GspError::NotSquare(n, a.ncols()));
    }
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut sign = T::one();
    for k in 0..n {
        let mut piv = k;
        let mut max = lu[[k, k]].abs();
        for i in (k + 1)..n {
            if lu[[i, k]].abs() > max {
                max = lu[[i, k]].abs();
                piv = i;
            }
        }
        if max == T::zero() {
            return Err(GspError::SingularMatrix);
        }
        if piv != k {
            for j in 0..n {
                let t = lu[[k, j]];
                lu[[k, j]] = lu[[piv, j]];
                lu[[piv, j]] = t;
            }
            perm.swap(k, piv);
            sign = -sign;
        }
        for i in (k + 1)..n {
            let f = lu[[i, k]] / lu[[k, k]];
            lu[[i, k]] = f;
            for j in (k + 1)..n {
                let delta = f * lu[[k, j]];
                lu[[i, j]] -= delta;
            }
        }
    }
    Ok((lu, perm, sign))
}

pub fn lu_det<T: Real>(a: &Array2<T>) -> T {
    match lu_factor(a) {
        Ok((lu, _, sign)) => {
            let mut det = sign;
            for i in 0..lu.nrows() {
                det *= lu[[i, i]];
            }
            det
        }
        Err(_) => T::zero(),
    }
}

pub fn lu_solve<T: Real>(a: &Array2<T>, b: &Array1<T>) -> Result<Array1<T>> {
    let n = a.nrows();
    if b.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: b.len(),
        });
    }
    let (lu, perm, _) = lu_factor(a)?;
    let mut y = Array1::<T>::zeros(n);
    for i in 0..n {
        let mut s = b[perm[i]];
        for j in 0..i {
            s -= lu[[i, j]] * y[j];
        }
        y[i] = s;
    }
    let mut x = Array1::<T>::zeros(n);
    for i in (0..n).rev() {
        let mut s = y[i];
        for j in (i + 1)..n {
            s -= lu[[i, j]] * x[j];
        }
        x[i] = s / lu[[i, i]];
    }
    Ok(x)
}

/// Thin singular value decomposition of a square matrix, assembled from the
/// symmetric eigendecomposition of `AᵀA`. Left vectors are paired through
/// `u = A v / σ`; singular values at or below
/// `σ_max · max(1e-12, sqrt(n · eps))` are treated as zero (the Gram route
/// cannot resolve anything smaller) and the corresponding left vectors are
/// completed by orthonormal extension.
///
/// Returns `(u, sigma, v)` with `a = u · diag(sigma) · vᵀ` and the singular
/// values sorted in descending order.
pub fn svd_square<T: Real>(a: &Array2<T>) -> Result<(Array2<T>, Array1<T>, Array2<T>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(GspError::NotSquare(n, a.ncols()));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(GspError::NonFiniteInput);
    }
    let gram = a.t().dot(a);
    let (vals, vecs) = jacobi_eigh(&gram, T::eig_tolerance())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());

    let mut sigma = Array1::<T>::zeros(n);
    let mut v = Array2::<T>::zeros((n, n));
    for (col, &idx) in order.iter().enumerate() {
        sigma[col] = vals[idx].max(T::zero()).sqrt();
        for r in 0..n {
            v[[r, col]] = vecs[[r, idx]];
        }
    }

    let sigma_max = sigma[0];
    // the Gram route cannot resolve singular values below sqrt(eps) * sigma_max:
    // their squared magnitude drowns in the eigensolver's absolute error
    let noise_floor = (T::of(n as f64) * T::epsilon()).sqrt();
    let cut = sigma_max * T::of(1e-12).max(noise_floor);
    // two orthogonalization passes keep the accumulating basis orthonormal
    // even when a new vector is nearly inside the accepted span
    let orthogonalize = |u: &Array2<T>, w: &mut Array1<T>, cols: usize| {
        for _ in 0..2 {
            for j in 0..cols {
                let d: T = (0..n).map(|r| u[[r, j]] * w[r]).sum();
                for r in 0..n {
                    let delta = d * u[[r, j]];
                    w[r] -= delta;
                }
            }
        }
    };
    let mut u = Array2::<T>::zeros((n, n));
    let mut filled = 0;
    for col in 0..n {
        if sigma[col] > cut {
            let mut w = a.dot(&v.column(col).to_owned()).mapv(|x| x / sigma[col]);
            orthogonalize(&u, &mut w, filled);
            let norm = w.iter().map(|&x| x * x).sum::<T>().sqrt();
            if norm > T::of(0.5) {
                for r in 0..n {
                    u[[r, col]] = w[r] / norm;
                }
                filled = col + 1;
                continue;
            }
            // pairing collapsed: the singular value was noise after all
        }
        sigma[col] = T::zero();
    }
    // complete the null part greedily from the standard basis
    let mut col = filled;
    let mut cand = 0usize;
    while col < n && cand < n {
        let mut w = Array1::<T>::zeros(n);
        w[cand] = T::one();
        orthogonalize(&u, &mut w, col);
        let norm = w.iter().map(|&x| x * x).sum::<T>().sqrt();
        if norm > T::of(1e-3) {
            for r in 0..n {
                u[[r, col]] = w[r] / norm;
            }
            col += 1;
        }
        cand += 1;
    }
    debug_assert_eq!(col, n, "left basis completion fell short");
    Ok((u, sigma, v))
}

/// Least-squares solution of `a · x = b` through the SVD-based pseudo-inverse
/// of the Gram matrix, with singular-value cutoff
/// `max(m, n) · eps · σ_max`. Returns the solution, the numerical rank and
/// `cond(aᵀa) = (σ_max/σ_min)²` over the retained spectrum.
pub fn lstsq<T: Real>(a: &Array2<T>, b: &Array1<T>) -> Result<LstsqSolution<T>> {
    let (m, n) = a.dim();
    if b.len() != m {
        return Err(GspError::DimensionMismatch {
            expected: m,
            got: b.len(),
        });
    }
    if n == 0 {
        return Err(GspError::EmptyInput("least-squares system"));
    }
    let gram = a.t().dot(a);
    let (vals, vecs) = jacobi_eigh(&gram, T::eig_tolerance())?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let sig_max = vals[order[0]].max(T::zero()).sqrt();
    // the cutoff max(m, n) · eps · sigma_max acts on the Gram spectrum, where
    // singular values appear squared
    let gram_cutoff = T::of(m.max(n) as f64) * T::epsilon() * vals[order[0]].max(T::zero());

    let atb = a.t().dot(b);
    let mut x = Array1::<T>::zeros(n);
    let mut rank = 0;
    let mut sig_min = sig_max;
    for &idx in &order {
        if vals[idx] <= gram_cutoff {
            continue;
        }
        let sig = vals[idx].sqrt();
        rank += 1;
        sig_min = sig_min.min(sig);
        let vi = vecs.column(idx);
        let coef: T = vi
            .iter()
            .zip(atb.iter())
            .map(|(&vv, &bb)| vv * bb)
            .sum::<T>()
            / (sig * sig);
        for r in 0..n {
            x[r] += coef * vi[r];
        }
    }
    let cond = if rank == 0 || sig_min == T::zero() {
        T::infinity()
    } else {
        (sig_max / sig_min) * (sig_max / sig_min)
    };
    Ok(LstsqSolution { x, rank, cond })
}

#[derive(Debug, Clone)]
pub struct LstsqSolution<T> {
    pub x: Array1<T>,
    pub rank: usize,
    /// Condition number of the normal matrix `aᵀa` over the retained spectrum.
    pub cond: T,
}

/// Sparse view over a dense operator: only the nonzero entries participate in
/// matrix-vector products, so polynomial filters cost `O(M · nnz)`.
#[derive(Debug, Clone)]
pub struct SparseOp<T> {
    n: usize,
    entries: Vec<(usize, usize, T)>,
}

impl<T: Real> SparseOp<T> {
    pub fn from_dense(a: &Array2<T>) -> Self {
        let n = a.nrows();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..a.ncols() {
                if a[[i, j]] != T::zero() {
                    entries.push((i, j, a[[i, j]]));
                }
            }
        }
        SparseOp { n, entries }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn apply(&self, x: &Array1<T>) -> Array1<T> {
        let mut y = Array1::<T>::zeros(self.n);
        for &(i, j, v) in &self.entries {
            y[i] += v * x[j];
        }
        y
    }
}
