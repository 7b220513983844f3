//! Vertex-frequency analysis: localized transforms, band filter sets,
//! wavelet scales, inversions, spectrograms, and energy distributions.

pub mod bands;
pub mod energy;
pub mod lgft;
pub mod map;
pub mod sgwt;
pub mod windows;

pub use bands::{
    adaptive_bounds_from_spectrum, build_band_filters, BandBounds, BandFilterSet, BandKind,
    BandNormalization,
};
pub use energy::{
    energy_distribution, estimate_spectral_index, local_smoothness, rid, row_center_of_mass,
    smoothness_index, uncertainty_bound, RidKernel,
};
pub use lgft::{
    band_polynomial_taps, concentration, invert_lgft, lgft_bands, lgft_windowed, optimize_tau,
    reassign_to_band_max, spectrogram, vertex_varying_filter, LgftInversion, Spectrogram,
    TauOptimizer,
};
pub use map::{MapAxis, VertexFrequencyMap};
pub use sgwt::{sgwt, sgwt_invert, ChannelApply, SgwtSpec};
pub use windows::{build_window_bank, hann_taps, WindowBank, WindowKind, WindowSpec};
