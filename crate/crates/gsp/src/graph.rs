//! Graph representation: vertex count, weighted edge set, directedness.
//!
//! Undirected graphs store each edge once and expand symmetrically when a
//! dense matrix is materialized. Vertex indices are `0..n`, weights are
//! finite and nonnegative, self-loops are rejected.

use crate::scalar::Real;
use crate::{GspError, Result};
use ndarray::Array2;
use std::collections::{HashSet, VecDeque};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge<T> {
    pub src: usize,
    pub dst: usize,
    pub weight: T,
}

#[derive(Debug, Clone)]
pub struct Graph<T> {
    n: usize,
    edges: Vec<Edge<T>>,
    directed: bool,
}

impl<T: Real> Graph<T> {
    /// Build a graph from an explicit edge list.
    ///
    /// Duplicate `(src, dst)` pairs are an error; for undirected graphs the
    /// reversed pair counts as a duplicate too.
    pub fn from_edge_list(
        rows: &[(usize, usize, T)],
        n: usize,
        directed: bool,
    ) -> Result<Graph<T>> {
        let mut seen = HashSet::new();
        let mut edges = Vec::with_capacity(rows.len());
        for &(src, dst, weight) in rows {
            if src >= n || dst >= n {
                return Err(GspError::VertexOutOfRange {
                    index: src.max(dst),
                    n,
                });
            }
            if src == dst {
                return Err(GspError::SelfLoop(src));
            }
            if !weight.is_finite() || weight < T::zero() {
                return Err(GspError::BadWeight {
                    src,
                    dst,
                    weight: weight.to_f64().unwrap_or(f64::NAN),
                });
            }
            let key = if directed {
                (src, dst)
            } else {
                (src.min(dst), src.max(dst))
            };
            if !seen.insert(key) {
                return Err(GspError::DuplicateEdge { src, dst });
            }
            edges.push(Edge { src, dst, weight });
        }
        Ok(Graph { n, edges, directed })
    }

    /// Geometry-based graph construction: vertices live at planar positions
    /// with an altitude, and two vertices are linked with weight
    /// `exp(-alpha * r - beta * h)` (`r` horizontal distance, `h` altitude
    /// difference) whenever that weight exceeds `threshold`.
    pub fn geometric_weights(
        positions: &[([T; 2], T)],
        alpha: T,
        beta: T,
        threshold: T,
    ) -> Result<Graph<T>> {
        if positions.len() < 2 {
            return Err(GspError::EmptyInput(
                "geometric_weights needs >= 2 vertices",
            ));
        }
        if alpha < T::zero() || beta < T::zero() {
            return Err(GspError::InvalidParameter(
                "geometric weight exponents must be nonnegative".into(),
            ));
        }
        let n = positions.len();
        let mut edges = Vec::new();
        for m in 0..n {
            for k in (m + 1)..n {
                let dx = positions[m].0[0] - positions[k].0[0];
                let dy = positions[m].0[1] - positions[k].0[1];
                let r = (dx * dx + dy * dy).sqrt();
                let h = (positions[m].1 - positions[k].1).abs();
                let w = (-alpha * r - beta * h).exp();
                if w > threshold {
                    edges.push(Edge {
                        src: m,
                        dst: k,
                        weight: w,
                    });
                }
            }
        }
        Ok(Graph {
            n,
            edges,
            directed: false,
        })
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Dense weight matrix; undirected edges are expanded symmetrically.
    pub fn weight_matrix(&self) -> Array2<T> {
        let mut w = Array2::<T>::zeros((self.n, self.n));
        for e in &self.edges {
            w[[e.src, e.dst]] = e.weight;
            if !self.directed {
                w[[e.dst, e.src]] = e.weight;
            }
        }
        w
    }

    /// Build a graph directly from a dense weight matrix (inverse of
    /// [`Graph::weight_matrix`]); entries on the diagonal must be zero.
    pub fn from_weight_matrix(w: &Array2<T>, directed: bool) -> Result<Graph<T>> {
        let n = w.nrows();
        if n != w.ncols() {
            return Err(GspError::NotSquare(n, w.ncols()));
        }
        if !directed {
            let scale = crate::linalg::max_abs(w).max(T::one());
            if !crate::linalg::is_symmetric(w, T::of(1e-10) * scale) {
                return Err(GspError::InvalidParameter(
                    "undirected graph requires a symmetric weight matrix".into(),
                ));
            }
        }
        let mut rows = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if w[[i, j]] != T::zero() {
                    if i == j {
                        return Err(GspError::SelfLoop(i));
                    }
                    if directed || i < j {
                        rows.push((i, j, w[[i, j]]));
                    }
                }
            }
        }
        Graph::from_edge_list(&rows, n, directed)
    }

    /// Weighted degree of each vertex (row sums of the weight matrix).
    pub fn degrees(&self) -> Vec<T> {
        let mut d = vec![T::zero(); self.n];
        for e in &self.edges {
            d[e.src] += e.weight;
            if !self.directed {
                d[e.dst] += e.weight;
            }
        }
        d
    }

    /// Undirected neighbor lists (edge direction ignored).
    pub fn neighbor_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in &self.edges {
            adj[e.src].push(e.dst);
            if !self.directed {
                adj[e.dst].push(e.src);
            }
        }
        adj
    }

    /// Breadth-first shortest-walk distances from `start`; unreachable
    /// vertices get `usize::MAX`. Edge direction is ignored.
    pub fn bfs_distances(&self, start: usize) -> Vec<usize> {
        let mut adj = self.neighbor_lists();
        if self.directed {
            for e in &self.edges {
                adj[e.dst].push(e.src);
            }
        }
        let mut dist = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        self.bfs_distances(0).iter().all(|&d| d != usize::MAX)
    }

    /// Relabel vertices: `perm[new_index] = old_index`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph<T>> {
        if perm.len() != self.n {
            return Err(GspError::DimensionMismatch {
                expected: self.n,
                got: perm.len(),
            });
        }
        let mut inv = vec![usize::MAX; self.n];
        for (new, &old) in perm.iter().enumerate() {
            if old >= self.n || inv[old] != usize::MAX {
                return Err(GspError::InvalidParameter("not a permutation".into()));
            }
            inv[old] = new;
        }
        let rows: Vec<(usize, usize, T)> = self
            .edges
            .iter()
            .map(|e| (inv[e.src], inv[e.dst], e.weight))
            .collect();
        Graph::from_edge_list(&rows, self.n, self.directed)
    }
}

/// Unweighted path graph 0 - 1 - ... - (n-1).
pub fn path_graph<T: Real>(n: usize) -> Graph<T> {
    let rows: Vec<(usize, usize, T)> = (0..n.saturating_sub(1))
        .map(|i| (i, i + 1, T::one()))
        .collect();
    Graph::from_edge_list(&rows, n, false).expect("path graph is valid")
}

/// Unweighted undirected cycle on `n` vertices.
pub fn cycle_graph<T: Real>(n: usize) -> Graph<T> {
    let rows: Vec<(usize, usize, T)> = (0..n).map(|i| (i, (i + 1) % n, T::one())).collect();
    Graph::from_edge_list(&rows, n, false).expect("cycle graph is valid")
}

/// Directed cycle 0 -> 1 -> ... -> (n-1) -> 0.
pub fn directed_cycle_graph<T: Real>(n: usize) -> Graph<T> {
    let rows: Vec<(usize, usize, T)> = (0..n).map(|i| (i, (i + 1) % n, T::one())).collect();
    Graph::from_edge_list(&rows, n, true).expect("directed cycle graph is valid")
}

/// Unweighted complete graph on `n` vertices.
pub fn complete_graph<T: Real>(n: usize) -> Graph<T> {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            rows.push((i, j, T::one()));
        }
    }
    Graph::from_edge_list(&rows, n, false).expect("complete graph is valid")
}
