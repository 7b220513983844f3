//! Bundled reference data: transcriptions of the 16-sensor temperature
//! network matrices and the 8-vertex test spectrum, plus a deterministic
//! synthetic manifold fixture used by the vertex-frequency tests.

use crate::graph::Graph;
use crate::operators::{operator_matrix, OperatorKind};
use crate::random::SplitMix64;
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

const MONTENEGRO16_A: &str = include_str!("../fixtures/montenegro16_a.csv");
const MONTENEGRO16_W: &str = include_str!("../fixtures/montenegro16_w.csv");
const MONTENEGRO16_L: &str = include_str!("../fixtures/montenegro16_l.csv");
const ADRIA8_LAMBDAS: &str = include_str!("../fixtures/adria8_lambdas.csv");
const EXAMPLE4_RESPONSE: &str = include_str!("../fixtures/example4_response.csv");

#[derive(Debug, Clone)]
pub enum Fixture {
    Matrix(Array2<f64>),
    Vector(Array1<f64>),
}

fn parse_matrix(text: &str) -> Array2<f64> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(',')
                .map(|v| v.trim().parse::<f64>().expect("fixture entry"))
                .collect()
        })
        .collect();
    let n = rows.len();
    let m = rows[0].len();
    Array2::from_shape_fn((n, m), |(i, j)| rows[i][j])
}

fn parse_vector(text: &str) -> Array1<f64> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.trim().parse::<f64>().expect("fixture entry"))
        .collect()
}

/// Fixture registry. Known names:
/// `montenegro16-A` / `montenegro16-W` / `montenegro16-L` (16-sensor network
/// connectivity, weights, and Laplacian as printed in the source tables) and
/// `adria8-lambdas` / `example4-response` (8-vertex adjacency spectrum with a
/// matching desired filter response).
pub fn load_fixture(name: &str) -> Result<Fixture> {
    match name {
        "montenegro16-A" => Ok(Fixture::Matrix(parse_matrix(MONTENEGRO16_A))),
        "montenegro16-W" => Ok(Fixture::Matrix(parse_matrix(MONTENEGRO16_W))),
        "montenegro16-L" => Ok(Fixture::Matrix(parse_matrix(MONTENEGRO16_L))),
        "adria8-lambdas" => Ok(Fixture::Vector(parse_vector(ADRIA8_LAMBDAS))),
        "example4-response" => Ok(Fixture::Vector(parse_vector(EXAMPLE4_RESPONSE))),
        other => Err(GspError::UnknownFixture(other.to_string())),
    }
}

impl Fixture {
    pub fn into_matrix(self) -> Result<Array2<f64>> {
        match self {
            Fixture::Matrix(m) => Ok(m),
            Fixture::Vector(_) => Err(GspError::InvalidParameter(
                "fixture is a vector, expected a matrix".into(),
            )),
        }
    }

    pub fn into_vector(self) -> Result<Array1<f64>> {
        match self {
            Fixture::Vector(v) => Ok(v),
            Fixture::Matrix(_) => Err(GspError::InvalidParameter(
                "fixture is a matrix, expected a vector".into(),
            )),
        }
    }
}

/// The 16-sensor temperature network as a [`Graph`].
pub fn montenegro16_graph() -> Graph<f64> {
    let w = parse_matrix(MONTENEGRO16_W);
    Graph::from_weight_matrix(&w, false).expect("fixture weight matrix is valid")
}

/// Deterministic manifold fixture: `n` vertices sampled along a rolled-up
/// sheet, connected by thresholded Gaussian weights of the unrolled
/// (arc-length, height) distance, vertices reordered so the Fiedler vector
/// is nondecreasing.
pub struct ManifoldFixture<T> {
    pub graph: Graph<T>,
    pub basis: SpectralBasis<T>,
}

pub fn manifold_fixture<T: Real>(n: usize, seed: u64) -> Result<ManifoldFixture<T>> {
    let mut rng = SplitMix64::new(seed);
    // spiral parameter and height, quasi-uniform with jitter
    let mut positions: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t =
                1.5 * std::f64::consts::PI * (1.0 + 2.0 * (i as f64 + rng.next_f64()) / n as f64);
            let y = 2.0 * rng.next_f64();
            (t, y)
        })
        .collect();
    positions.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    // arc length of the spiral r = t
    let arc = |t: f64| 0.5 * (t * (1.0 + t * t).sqrt() + (t + (1.0 + t * t).sqrt()).ln());
    let pts: Vec<([T; 2], T)> = positions
        .iter()
        .map(|&(t, y)| ([T::of(arc(t)), T::of(y)], T::zero()))
        .collect();
    // distances measured along the unrolled sheet; the decay rate scales
    // with sampling density so that only each vertex's nearest few edges
    // survive the hard threshold while the graph stays connected
    let alpha = T::of(0.8 * n as f64 / 100.0);
    let graph = Graph::geometric_weights(&pts, alpha, T::zero(), T::of(0.1))?;
    if !graph.is_connected() {
        return Err(GspError::InvalidParameter(
            "manifold fixture disconnected; adjust seed".into(),
        ));
    }
    let lap = operator_matrix(&graph, OperatorKind::Laplacian)?;
    let basis = SpectralBasis::from_operator(&lap)?;
    // reorder vertices by the Fiedler vector
    let fiedler = basis.eigenvectors.column(1).to_owned();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| fiedler[a].partial_cmp(&fiedler[b]).unwrap());
    let graph = graph.permute(&order)?;
    let lap = operator_matrix(&graph, OperatorKind::Laplacian)?;
    let basis = SpectralBasis::from_operator(&lap)?;
    // the sign convention may have flipped the recomputed Fiedler vector;
    // reverse the ordering if it came out decreasing
    if basis.eigenvectors[[0, 1]] > basis.eigenvectors[[n - 1, 1]] {
        let reversed: Vec<usize> = (0..n).rev().collect();
        let graph = graph.permute(&reversed)?;
        let lap = operator_matrix(&graph, OperatorKind::Laplacian)?;
        let basis = SpectralBasis::from_operator(&lap)?;
        return Ok(ManifoldFixture { graph, basis });
    }
    Ok(ManifoldFixture { graph, basis })
}

/// Piecewise-eigenvector signal: on each vertex range, the signal equals the
/// eigenvector of the given spectral index, scaled to unit peak magnitude
/// over that range.
pub fn piecewise_eigenvector_signal<T: Real>(
    basis: &SpectralBasis<T>,
    pieces: &[(std::ops::Range<usize>, usize)],
) -> Array1<T> {
    let n = basis.n();
    let mut x = Array1::<T>::zeros(n);
    for (range, k) in pieces {
        let col = basis.eigenvectors.column(*k);
        let peak = range
            .clone()
            .map(|v| col[v].abs())
            .fold(T::zero(), |m, v| m.max(v));
        let scale = if peak > T::zero() {
            T::one() / peak
        } else {
            T::one()
        };
        for v in range.clone() {
            x[v] = col[v] * scale;
        }
    }
    x
}
