//! # gsp
//!
//! Graph signal processing on dense graphs at desk scale: shift operators
//! and spectral bases, the graph Fourier transform, polynomial and Chebyshev
//! filtering, denoising and smoothing, two-channel filter banks on bipartite
//! graphs, subsampling with sparse recovery, stationary random graph
//! signals, and joint vertex-frequency analysis (localized transforms,
//! spectral graph wavelets, energy distributions).
//!
//! Everything is generic over the scalar type through [`Real`] (`f32` or
//! `f64`); the crate-level re-exports default to `f64`. All numerics are
//! deterministic: the eigensolver is a cyclic Jacobi iteration, random
//! campaigns are seeded, and no external linear-algebra backend is used.
//!
//! ```
//! use gsp::{operator_matrix, OperatorKind, SpectralBasis};
//!
//! let g = gsp::graph::path_graph::<f64>(4);
//! let lap = operator_matrix(&g, OperatorKind::Laplacian).unwrap();
//! let basis = SpectralBasis::from_operator(&lap).unwrap();
//! assert!(basis.eigenvalues[0].abs() < 1e-12);
//! ```

use thiserror::Error;

pub mod fbank;
pub mod filters;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod operators;
pub mod random;
pub mod sampling;
pub mod scalar;
pub mod spectral;
pub mod vf;

pub use fbank::{
    alias_cancellation_residual, check_bipartite, fb_analyze, fb_synthesize, qmf_from_lowpass,
    Bipartition, QmfBank, QmfKind,
};
pub use filters::{
    apply_taps, chebyshev_apply, chebyshev_fit, chebyshev_fit_smoothed, denoise, denoise_gain,
    design_response, inverse_transfer, taubin, wiener_gain, ChebyshevSeries, DenoiseVariant,
    DesignMode, FilterTaps,
};
pub use fixtures::{load_fixture, manifold_fixture, Fixture, ManifoldFixture};
pub use graph::{Edge, Graph};
pub use operators::{
    isometric_shift, operator_matrix, reach_matrices, OperatorKind, OperatorMatrix, ReachMatrices,
};
pub use random::{generate_gwss, periodogram, stationarity_check, SplitMix64};
pub use sampling::{
    aggregate_measurement_matrix, aggregate_measurements, coherence_bound, mp_recover,
    random_measurements, reconstruct_known_support, ric_bruteforce, support_matrix_reconstruct,
    MeasurementSet, MpRecovery, MpStop, Reconstruction, SupportSet,
};
pub use scalar::Real;
pub use spectral::{
    adjacency_variation_order, eig_sym, gdft, graph_convolution, igdft, signal_to_z_coeffs,
    spectral_shift, SpectralBasis, ZCoefficients,
};
pub use vf::{
    build_band_filters, build_window_bank, concentration, energy_distribution, invert_lgft,
    lgft_bands, lgft_windowed, local_smoothness, optimize_tau, reassign_to_band_max, rid, sgwt,
    spectrogram, uncertainty_bound, vertex_varying_filter, BandFilterSet, BandKind,
    BandNormalization, ChannelApply, LgftInversion, MapAxis, RidKernel, SgwtSpec,
    VertexFrequencyMap, WindowBank, WindowSpec,
};

#[derive(Debug, Error)]
pub enum GspError {
    #[error("matrix is not square: {0} x {1}")]
    NotSquare(usize, usize),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("vertex index {index} out of range for {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("edge ({src}, {dst}) has invalid weight {weight}")]
    BadWeight { src: usize, dst: usize, weight: f64 },

    #[error("duplicate edge ({src}, {dst})")]
    DuplicateEdge { src: usize, dst: usize },

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("input matrix is not symmetric")]
    AsymmetricInput,

    #[error("eigensolver did not converge within {0} sweeps")]
    EigNoConvergence(usize),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("system rank {rank} below required {needed}")]
    RankDeficient { rank: usize, needed: usize },

    #[error("eigenvalues repeat within tolerance; system is singular")]
    RepeatedEigenvalues,

    #[error("graph is not bipartite: edge ({}, {}) joins same class", witness.0, witness.1)]
    NotBipartite { witness: (usize, usize) },

    #[error("normalization condition violated by {deviation:.3e}")]
    NormalizationViolated { deviation: f64 },

    #[error("non-finite value in input")]
    NonFiniteInput,

    #[error("{what} refused: size {n} exceeds limit {limit}")]
    InstanceTooLarge {
        n: usize,
        limit: usize,
        what: &'static str,
    },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, GspError>;
