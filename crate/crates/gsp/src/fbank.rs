//! Two-channel analysis/synthesis filter bank on bipartite graphs.
//!
//! The spectral folding of bipartite graphs under the normalized Laplacian
//! pairs every eigenvalue `λ` with `2 - λ`, which lets a quadratic-mirror
//! filter pair cancel aliasing exactly and reconstruct perfectly from the
//! two downsampled-upsampled channels.

use crate::graph::Graph;
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::Array1;

/// Two-coloring of a bipartite graph. `set_e`/`set_h` partition the vertex
/// set and no edge runs inside either class.
#[derive(Debug, Clone)]
pub struct Bipartition {
    pub set_e: Vec<usize>,
    pub set_h: Vec<usize>,
    in_e: Vec<bool>,
}

impl Bipartition {
    pub fn n(&self) -> usize {
        self.in_e.len()
    }

    pub fn contains_e(&self, v: usize) -> bool {
        self.in_e[v]
    }

    /// Signature of the downsample-upsample operator: `+1` on E, `-1` on H.
    pub fn signature<T: Real>(&self) -> Array1<T> {
        self.in_e
            .iter()
            .map(|&e| if e { T::one() } else { -T::one() })
            .collect()
    }

    /// Check that no edge of `g` runs inside either class.
    pub fn verify<T: Real>(&self, g: &Graph<T>) -> Result<()> {
        if g.n_vertices() != self.n() {
            return Err(GspError::DimensionMismatch {
                expected: self.n(),
                got: g.n_vertices(),
            });
        }
        for e in g.edges() {
            if self.in_e[e.src] == self.in_e[e.dst] {
                return Err(GspError::NotBipartite {
                    witness: (e.src, e.dst),
                });
            }
        }
        Ok(())
    }
}

/// Two-color an undirected graph by breadth-first search; each component is
/// rooted at its lowest-index vertex, which lands in `set_e`. Odd cycles are
/// reported as an error with a witness edge.
pub fn check_bipartite<T: Real>(g: &Graph<T>) -> Result<Bipartition> {
    if g.is_directed() {
        return Err(GspError::InvalidParameter(
            "bipartite check expects an undirected graph".into(),
        ));
    }
    let n = g.n_vertices();
    let adj = g.neighbor_lists();
    let mut color = vec![u8::MAX; n];
    for start in 0..n {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if color[u] == u8::MAX {
                    color[u] = 1 - color[v];
                    queue.push_back(u);
                } else if color[u] == color[v] {
                    return Err(GspError::NotBipartite { witness: (v, u) });
                }
            }
        }
    }
    let mut set_e = Vec::new();
    let mut set_h = Vec::new();
    let mut in_e = vec![false; n];
    for (v, &c) in color.iter().enumerate() {
        if c == 0 {
            set_e.push(v);
            in_e[v] = true;
        } else {
            set_h.push(v);
        }
    }
    Ok(Bipartition { set_e, set_h, in_e })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmfKind {
    /// `H_L(λ) = sqrt(2 - λ)`
    SqrtTwoMinusLambda,
    /// `H_L(λ) = sqrt(2) cos(π λ / 4)`
    Cosine,
}

impl QmfKind {
    pub fn lowpass<T: Real>(&self, lambda: T) -> T {
        match self {
            QmfKind::SqrtTwoMinusLambda => (T::of(2.0) - lambda).max(T::zero()).sqrt(),
            QmfKind::Cosine => T::of(2.0).sqrt() * (T::PI() * lambda / T::of(4.0)).cos(),
        }
    }
}

/// Quadratic-mirror bank sampled on a normalized-Laplacian spectrum:
/// `G_L = H_L`, `H_H(λ) = H_L(2 - λ)`, `G_H = H_H`, with
/// `H_L²(λ) + H_L²(2-λ) = 2` by construction.
#[derive(Debug, Clone)]
pub struct QmfBank<T> {
    pub kind: QmfKind,
    pub h_low: Array1<T>,
    pub h_high: Array1<T>,
    pub g_low: Array1<T>,
    pub g_high: Array1<T>,
}

pub fn qmf_from_lowpass<T: Real>(kind: QmfKind, lambdas: &Array1<T>) -> Result<QmfBank<T>> {
    let tol = T::of(1e-9);
    for &l in lambdas.iter() {
        if l < -tol || l > T::of(2.0) + tol {
            return Err(GspError::InvalidParameter(format!(
                "qmf bank needs a normalized-Laplacian spectrum in [0, 2]; got {l}"
            )));
        }
    }
    // snap eigensolver noise at the interval endpoints; the square-root
    // responses would otherwise amplify it into the channels
    let snapped = lambdas.mapv(|l| {
        if l.abs() <= tol {
            T::zero()
        } else if (l - T::of(2.0)).abs() <= tol {
            T::of(2.0)
        } else {
            l
        }
    });
    let h_low = snapped.mapv(|l| kind.lowpass(l));
    let h_high = snapped.mapv(|l| kind.lowpass(T::of(2.0) - l));
    Ok(QmfBank {
        kind,
        g_low: h_low.clone(),
        g_high: h_high.clone(),
        h_low,
        h_high,
    })
}

impl<T: Real> QmfBank<T> {
    /// Residual of the design equation `H_L² + H_H² = 2` over the samples.
    pub fn design_residual(&self) -> T {
        self.h_low
            .iter()
            .zip(self.h_high.iter())
            .map(|(&l, &h)| (l * l + h * h - T::of(2.0)).abs())
            .fold(T::zero(), |m, v| m.max(v))
    }
}

/// One analysis/synthesis pass of the two-channel bank. Both returned
/// channels are full-length signals (filtered, downsampled to its vertex
/// class, upsampled with zeros, and synthesis-filtered); adding them
/// reconstructs the input on bipartite graphs.
pub fn fb_analyze<T: Real>(
    x: &Array1<T>,
    bank: &QmfBank<T>,
    part: &Bipartition,
    basis: &SpectralBasis<T>,
) -> Result<(Array1<T>, Array1<T>)> {
    let n = basis.n();
    if x.len() != n || part.n() != n || bank.h_low.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len().max(part.n()).max(bank.h_low.len()),
        });
    }
    let half = T::of(0.5);
    let sig = part.signature::<T>();

    let analyzed_low = basis.apply_response(&bank.h_low, x)?;
    let mut kept_low = analyzed_low.clone();
    kept_low.zip_mut_with(&sig, |v, &s| *v += s * *v); // (I + J_E) t = 2t on E, 0 on H
    let f_low = basis
        .apply_response(&bank.g_low, &kept_low)?
        .mapv(|v| v * half);

    let analyzed_high = basis.apply_response(&bank.h_high, x)?;
    let mut kept_high = analyzed_high.clone();
    kept_high.zip_mut_with(&sig, |v, &s| *v -= s * *v); // (I + J_H) = (I - J_E)
    let f_high = basis
        .apply_response(&bank.g_high, &kept_high)?
        .mapv(|v| v * half);

    Ok((f_low, f_high))
}

/// Synthesis is the sum of the two channel outputs.
pub fn fb_synthesize<T: Real>(f_low: &Array1<T>, f_high: &Array1<T>) -> Result<Array1<T>> {
    if f_low.len() != f_high.len() {
        return Err(GspError::DimensionMismatch {
            expected: f_low.len(),
            got: f_high.len(),
        });
    }
    Ok(f_low + f_high)
}

/// Alias-cancellation residual `max_k |G_L(λ)H_L(2-λ) - G_H(λ)H_H(2-λ)|`,
/// evaluated by resampling the bank kinds at the folded eigenvalues.
pub fn alias_cancellation_residual<T: Real>(bank: &QmfBank<T>, lambdas: &Array1<T>) -> T {
    let mut worst = T::zero();
    for &l in lambdas.iter() {
        let folded = T::of(2.0) - l;
        let term = bank.kind.lowpass(l) * bank.kind.lowpass(folded)
            - bank.kind.lowpass(folded) * bank.kind.lowpass(l);
        worst = worst.max(term.abs());
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path_graph, Graph};
    use crate::operators::{operator_matrix, OperatorKind};
    use crate::random::SplitMix64;

    /// Perfect-matching pair graph: edges (0,1), (2,3), ..., (n-2, n-1).
    pub fn pair_graph(n: usize) -> Graph<f64> {
        let rows: Vec<(usize, usize, f64)> = (0..n / 2).map(|i| (2 * i, 2 * i + 1, 1.0)).collect();
        Graph::from_edge_list(&rows, n, false).unwrap()
    }

    fn random_bipartite(n_e: usize, n_h: usize, seed: u64) -> Graph<f64> {
        let mut rng = SplitMix64::new(seed);
        let n = n_e + n_h;
        let mut rows = Vec::new();
        for i in 0..n_e {
            for j in 0..n_h {
                if rng.next_f64() < 0.45 {
                    rows.push((i, n_e + j, 0.5 + rng.next_f64()));
                }
            }
        }
        // ensure no isolated vertices
        for i in 0..n_e {
            if !rows.iter().any(|&(a, _, _)| a == i) {
                rows.push((i, n_e + (i % n_h), 1.0));
            }
        }
        for j in 0..n_h {
            if !rows.iter().any(|&(_, b, _)| b == n_e + j) {
                rows.push((j % n_e, n_e + j, 1.0));
            }
        }
        Graph::from_edge_list(&rows, n, false).unwrap()
    }

    #[test]
    fn pair_graph_partition_is_even_odd() {
        let g = pair_graph(16);
        let part = check_bipartite(&g).unwrap();
        assert_eq!(part.set_e, vec![0, 2, 4, 6, 8, 10, 12, 14]);
        assert_eq!(part.set_h, vec![1, 3, 5, 7, 9, 11, 13, 15]);
    }

    #[test]
    fn triangle_is_not_bipartite() {
        let g = Graph::<f64>::from_edge_list(&[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)], 3, false)
            .unwrap();
        assert!(matches!(
            check_bipartite(&g),
            Err(GspError::NotBipartite { .. })
        ));
    }

    #[test]
    fn path_partition_alternates() {
        let g = path_graph::<f64>(5);
        let part = check_bipartite(&g).unwrap();
        assert_eq!(part.set_e, vec![0, 2, 4]);
        assert_eq!(part.set_h, vec![1, 3]);
    }

    #[test]
    fn qmf_kinds_satisfy_design_equation() {
        let lambdas: Array1<f64> = (0..21).map(|i| i as f64 * 0.1).collect();
        for kind in [QmfKind::SqrtTwoMinusLambda, QmfKind::Cosine] {
            let bank = qmf_from_lowpass(kind, &lambdas).unwrap();
            assert!(bank.design_residual() <= 1e-12);
            assert!(alias_cancellation_residual(&bank, &lambdas) <= 1e-10);
        }
        // endpoint values of the sqrt kind
        let bank =
            qmf_from_lowpass(QmfKind::SqrtTwoMinusLambda, &ndarray::array![0.0f64, 2.0]).unwrap();
        assert!((bank.h_low[0] - 2.0f64.sqrt()).abs() < 1e-15);
        assert!(bank.h_low[1].abs() < 1e-15);
        // cosine kind at lambda = 1
        assert!((QmfKind::Cosine.lowpass(1.0f64) - 1.0).abs() < 1e-15);
        // out-of-range spectrum rejected
        assert!(qmf_from_lowpass(QmfKind::Cosine, &ndarray::array![0.0f64, 2.5]).is_err());
    }

    #[test]
    fn spectral_folding_on_random_bipartite() {
        for seed in [3u64, 5, 8] {
            let g = random_bipartite(5, 5, seed);
            let l = operator_matrix(&g, OperatorKind::NormalizedLaplacian).unwrap();
            let b = SpectralBasis::from_operator(&l).unwrap();
            if !b.degenerate_clusters().is_empty() {
                continue; // folding is only vector-wise testable on simple spectra
            }
            let part = check_bipartite(&g).unwrap();
            let sig = part.signature::<f64>();
            let n = b.n();
            // eigenvalues symmetric about 1
            for k in 0..n {
                assert!((b.eigenvalues[k] + b.eigenvalues[n - 1 - k] - 2.0).abs() < 1e-8);
            }
            // J_E u_k = ± u_{N-1-k}
            for k in 0..n {
                let mut folded = b.eigenvectors.column(k).to_owned();
                folded.zip_mut_with(&sig, |v, &s| *v *= s);
                let mirror = b.eigenvectors.column(n - 1 - k);
                let dot: f64 = folded.iter().zip(mirror.iter()).map(|(a, c)| a * c).sum();
                assert!(
                    (dot.abs() - 1.0).abs() < 1e-8,
                    "seed {seed} k {k} dot {dot}"
                );
            }
        }
    }

    #[test]
    fn haar_channels_are_pairwise_averages_and_differences() {
        let n = 16;
        let g = pair_graph(n);
        let part = check_bipartite(&g).unwrap();
        let l = operator_matrix(&g, OperatorKind::NormalizedLaplacian).unwrap();
        let b = SpectralBasis::from_operator(&l).unwrap();
        let bank = qmf_from_lowpass(QmfKind::SqrtTwoMinusLambda, &b.eigenvalues).unwrap();
        let mut rng = SplitMix64::new(31);
        let x: Array1<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        let (f_low, f_high) = fb_analyze(&x, &bank, &part, &b).unwrap();
        for i in 0..n / 2 {
            let mean = (x[2 * i] + x[2 * i + 1]) / 2.0;
            let half_diff = (x[2 * i] - x[2 * i + 1]) / 2.0;
            assert!((f_low[2 * i] - mean).abs() < 1e-6);
            assert!((f_low[2 * i + 1] - mean).abs() < 1e-6);
            assert!((f_high[2 * i] - half_diff).abs() < 1e-6);
            assert!((f_high[2 * i + 1] + half_diff).abs() < 1e-6);
        }
        let y = fb_synthesize(&f_low, &f_high).unwrap();
        // the doubled eigenvalues at 0 and 2 amplify eigensolver noise by a
        // square root; reconstruction still lands well under 1e-8
        for (u, w) in y.iter().zip(x.iter()) {
            assert!((u - w).abs() <= 1e-8);
        }
    }

    #[test]
    fn channel_support_limits() {
        // constant on a regular bipartite graph -> high channel vanishes;
        // top eigenvector -> low channel vanishes
        let g = pair_graph(12); // 1-regular
        let part = check_bipartite(&g).unwrap();
        let l = operator_matrix(&g, OperatorKind::NormalizedLaplacian).unwrap();
        let b = SpectralBasis::from_operator(&l).unwrap();
        let bank = qmf_from_lowpass(QmfKind::SqrtTwoMinusLambda, &b.eigenvalues).unwrap();
        let c = Array1::<f64>::ones(12);
        let (_, f_high) = fb_analyze(&c, &bank, &part, &b).unwrap();
        assert!(f_high.iter().all(|v| v.abs() < 1e-6));
        let top = b.eigenvectors.column(11).to_owned();
        let (f_low, _) = fb_analyze(&top, &bank, &part, &b).unwrap();
        assert!(f_low.iter().all(|v| v.abs() < 1e-6));
        // zero input -> zero output
        let z = Array1::<f64>::zeros(12);
        let (fl, fh) = fb_analyze(&z, &bank, &part, &b).unwrap();
        let y = fb_synthesize(&fl, &fh).unwrap();
        assert!(y.iter().all(|v| v.abs() == 0.0));
    }

    #[test]
    fn perfect_reconstruction_fails_off_bipartite() {
        // documented negative: a graph with an odd cycle cannot use the
        // bank; forcing a partition breaks reconstruction
        let g = Graph::<f64>::from_edge_list(
            &[
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 3, 1.0),
                (3, 0, 1.0),
                (0, 2, 1.0),
            ],
            4,
            false,
        )
        .unwrap();
        assert!(check_bipartite(&g).is_err());
        let l = operator_matrix(&g, OperatorKind::NormalizedLaplacian).unwrap();
        let b = SpectralBasis::from_operator(&l).unwrap();
        // clamp the (now out-of-range-free but unfolded) spectrum into [0,2]
        let clamped = b.eigenvalues.mapv(|v: f64| v.clamp(0.0, 2.0));
        let bank = qmf_from_lowpass(QmfKind::SqrtTwoMinusLambda, &clamped).unwrap();
        let part = Bipartition {
            set_e: vec![0, 2],
            set_h: vec![1, 3],
            in_e: vec![true, false, true, false],
        };
        let mut rng = SplitMix64::new(9);
        let x: Array1<f64> = (0..4).map(|_| rng.next_f64() - 0.5).collect();
        let (fl, fh) = fb_analyze(&x, &bank, &part, &b).unwrap();
        let y = fb_synthesize(&fl, &fh).unwrap();
        let err = y
            .iter()
            .zip(x.iter())
            .map(|(a, c)| (a - c).abs())
            .fold(0.0f64, f64::max);
        assert!(err > 1e-3, "reconstruction unexpectedly succeeded: {err}");
    }

    #[test]
    fn perfect_reconstruction_on_random_bipartite_both_kinds() {
        let mut rng = SplitMix64::new(55);
        for seed in 0..6u64 {
            let g = random_bipartite(5 + (seed as usize % 3), 5, 100 + seed);
            let part = check_bipartite(&g).unwrap();
            part.verify(&g).unwrap();
            let l = operator_matrix(&g, OperatorKind::NormalizedLaplacian).unwrap();
            let b = SpectralBasis::from_operator(&l).unwrap();
            let n = b.n();
            let x: Array1<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
            for kind in [QmfKind::SqrtTwoMinusLambda, QmfKind::Cosine] {
                let lam = b.eigenvalues.mapv(|v: f64| v.clamp(0.0, 2.0));
                let bank = qmf_from_lowpass(kind, &lam).unwrap();
                let (fl, fh) = fb_analyze(&x, &bank, &part, &b).unwrap();
                let y = fb_synthesize(&fl, &fh).unwrap();
                for (u, w) in y.iter().zip(x.iter()) {
                    assert!((u - w).abs() <= 1e-8, "kind {kind:?} seed {seed}");
                }
            }
        }
    }
}
