//! Joint vertex-frequency maps: rows are vertices, columns are spectral
//! indices, band indices, or wavelet scales.

use crate::scalar::Real;
use ndarray::Array2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapAxis {
    /// Column `k` corresponds to eigenvalue index `k` (N columns).
    SpectralIndex,
    /// Column `k` corresponds to band-pass channel `k`.
    BandIndex,
    /// Column 0 is the scale-function channel, the rest wavelet scales.
    Scale,
}

#[derive(Debug, Clone)]
pub struct VertexFrequencyMap<T> {
    /// `values[[m, k]]` is the coefficient at vertex `m`, channel `k`.
    pub values: Array2<T>,
    pub axis: MapAxis,
}

impl<T: Real> VertexFrequencyMap<T> {
    pub fn n_vertices(&self) -> usize {
        self.values.nrows()
    }

    pub fn n_channels(&self) -> usize {
        self.values.ncols()
    }

    /// Zero out entries below the magnitude threshold.
    pub fn thresholded(&self, threshold: T) -> Self {
        VertexFrequencyMap {
            values: self
                .values
                .mapv(|v| if v.abs() < threshold { T::zero() } else { v }),
            axis: self.axis,
        }
    }
}
