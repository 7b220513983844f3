//! Shift-operator matrices derived from a graph: adjacency and Laplacian
//! forms, random-walk variants, the energy-preserving shift obtained by
//! symmetric orthogonalization, and binary reach matrices for vertex
//! neighborhoods at exact hop distances.

use crate::graph::Graph;
use crate::linalg;
use crate::scalar::Real;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    Adjacency,
    NormalizedAdjacency,
    Laplacian,
    NormalizedLaplacian,
    RandomWalk,
    Grw,
    IsometricSvd,
}

impl OperatorKind {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorKind::Adjacency => "adjacency",
            OperatorKind::NormalizedAdjacency => "normalized-adjacency",
            OperatorKind::Laplacian => "laplacian",
            OperatorKind::NormalizedLaplacian => "normalized-laplacian",
            OperatorKind::RandomWalk => "random-walk",
            OperatorKind::Grw => "grw",
            OperatorKind::IsometricSvd => "isometric-svd",
        }
    }
}

#[derive(Debug, Clone)]
pub struct OperatorMatrix<T> {
    pub kind: OperatorKind,
    pub values: Array2<T>,
}

impl<T: Real> OperatorMatrix<T> {
    pub fn n(&self) -> usize {
        self.values.nrows()
    }
}

/// Build the requested operator matrix for a graph.
pub fn operator_matrix<T: Real>(g: &Graph<T>, kind: OperatorKind) -> Result<OperatorMatrix<T>> {
    let n = g.n_vertices();
    let w = g.weight_matrix();
    let deg = g.degrees();
    let values = match kind {
        OperatorKind::Adjacency => w,
        OperatorKind::NormalizedAdjacency => {
            if g.is_directed() {
                return Err(GspError::InvalidParameter(
                    "normalized adjacency requires an undirected graph".into(),
                ));
            }
            let (vals, _) = linalg::jacobi_eigh(&w, T::eig_tolerance())?;
            let radius = vals.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
            if radius == T::zero() {
                return Err(GspError::InvalidParameter(
                    "cannot normalize an edgeless graph".into(),
                ));
            }
            w.mapv(|v| v / radius)
        }
        OperatorKind::Laplacian => {
            let mut l = -w;
            for i in 0..n {
                l[[i, i]] += deg[i];
            }
            l
        }
        OperatorKind::NormalizedLaplacian => {
            let mut l = Array2::<T>::zeros((n, n));
            let inv_sqrt: Vec<T> = deg
                .iter()
                .map(|&d| {
                    if d > T::zero() {
                        T::one() / d.sqrt()
                    } else {
                        T::zero()
                    }
                })
                .collect();
            for i in 0..n {
                if deg[i] > T::zero() {
                    l[[i, i]] = T::one();
                }
                for j in 0..n {
                    if i != j && w[[i, j]] != T::zero() {
                        l[[i, j]] = -inv_sqrt[i] * w[[i, j]] * inv_sqrt[j];
                    }
                }
            }
            l
        }
        OperatorKind::RandomWalk => {
            let mut p = Array2::<T>::zeros((n, n));
            for i in 0..n {
                if deg[i] <= T::zero() {
                    return Err(GspError::IsolatedVertex(i));
                }
                for j in 0..n {
                    p[[i, j]] = w[[i, j]] / deg[i];
                }
            }
            p
        }
        OperatorKind::Grw => {
            // (I + D)^{-1} (I + W): implicit self-connection keeps rows
            // stochastic even at isolated vertices.
            let mut p = Array2::<T>::zeros((n, n));
            for i in 0..n {
                let scale = T::one() / (T::one() + deg[i]);
                for j in 0..n {
                    let a = if i == j { T::one() } else { w[[i, j]] };
                    p[[i, j]] = a * scale;
                }
            }
            p
        }
        OperatorKind::IsometricSvd => isometric_shift(&w)?,
    };
    Ok(OperatorMatrix { kind, values })
}

/// Energy-preserving shift operator: the symmetric orthogonalization of an
/// adjacency matrix. `S = U Q Vᵀ` from the SVD `A = U Σ Vᵀ`, where
/// `Q = diag(1, ..., 1, det(U Vᵀ))` forces `det(S) = 1`.
pub fn isometric_shift<T: Real>(a: &Array2<T>) -> Result<Array2<T>> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(GspError::NotSquare(n, a.ncols()));
    }
    let (u, _sigma, v) = linalg::svd_square(a)?;
    let uvt = u.dot(&v.t());
    let det = linalg::lu_det(&uvt);
    let mut q = Array2::<T>::eye(n);
    q[[n - 1, n - 1]] = if det < T::zero() { -T::one() } else { T::one() };
    Ok(u.dot(&q).dot(&v.t()))
}

/// Binary matrices `A_1 .. A_{D-1}` with `A_d(m, n) = 1` exactly when the
/// shortest walk between `m` and `n` has length `d`.
#[derive(Debug, Clone)]
pub struct ReachMatrices {
    pub matrices: Vec<Array2<u8>>,
    pub width: usize,
}

impl ReachMatrices {
    /// `A_d` for `d` in `1..width`.
    pub fn at_distance(&self, d: usize) -> Option<&Array2<u8>> {
        if d == 0 || d >= self.width {
            None
        } else {
            Some(&self.matrices[d - 1])
        }
    }
}

/// Compute reach matrices by the Boolean-product recursion
/// `A_d = (A ⊙ A_{d-1}) ∘ ¬reached`, where `reached` accumulates the
/// diagonal and all shorter distances. Masking against every earlier level
/// (not only `A_{d-1}`) is what keeps the supports pairwise disjoint.
pub fn reach_matrices<T: Real>(g: &Graph<T>, width: usize) -> Result<ReachMatrices> {
    if width < 2 {
        return Err(GspError::InvalidParameter(
            "reach matrices need width >= 2".into(),
        ));
    }
    if g.is_directed() {
        return Err(GspError::InvalidParameter(
            "reach matrices are defined for undirected graphs".into(),
        ));
    }
    let n = g.n_vertices();
    let w = g.weight_matrix();
    let mut adj = Array2::<u8>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            if w[[i, j]] != T::zero() {
                adj[[i, j]] = 1;
            }
        }
    }

    let mut reached = Array2::<u8>::from_shape_fn((n, n), |(i, j)| u8::from(i == j));
    let mut prev = adj.clone();
    let mut out = Vec::with_capacity(width - 1);
    reached.zip_mut_with(&adj, |r, &a| *r |= a);
    out.push(adj.clone());

    for _ in 2..width {
        let mut next = Array2::<u8>::zeros((n, n));
        for i in 0..n {
            for k in 0..n {
                if adj[[i, k]] == 1 {
                    for j in 0..n {
                        if prev[[k, j]] == 1 {
                            next[[i, j]] = 1;
                        }
                    }
                }
            }
        }
        next.zip_mut_with(&reached, |v, &r| {
            if r == 1 {
                *v = 0;
            }
        });
        reached.zip_mut_with(&next, |r, &a| *r |= a);
        out.push(next.clone());
        prev = next;
    }
    Ok(ReachMatrices {
        matrices: out,
        width,
    })
}

/// Row sums, used by tests and validity checks.
pub fn row_sums<T: Real>(a: &Array2<T>) -> Array1<T> {
    a.rows().into_iter().map(|r| r.sum()).collect()
}
