//! Band-pass transfer-function sets for the band LGFT: binomial, raised
//! cosine, Meyer-like (smooth-argument), and adaptive variants, each with a
//! declared partition-of-unity normalization, plus frame bounds.

use crate::scalar::Real;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Chained band edges: band `k` rises on `(a_k, b_k]` and falls on
/// `(b_k, c_k]`, with `b_k = a_{k+1}` and `c_k = b_{k+1}`.
#[derive(Debug, Clone)]
pub struct BandBounds<T> {
    pub a: Vec<T>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

impl<T: Real> BandBounds<T> {
    pub fn new(a: Vec<T>, b: Vec<T>, c: Vec<T>) -> Result<Self> {
        let k = a.len();
        if k == 0 || b.len() != k || c.len() != k {
            return Err(GspError::InvalidParameter(
                "band bounds need equal-length a, b, c lists".into(),
            ));
        }
        for i in 0..k {
            if !(a[i] < b[i] && b[i] < c[i]) {
                return Err(GspError::InvalidParameter(format!(
                    "band {i} bounds not increasing"
                )));
            }
            if i + 1 < k {
                let tol = T::of(1e-9) * c[k - 1].abs().max(T::one());
                if (b[i] - a[i + 1]).abs() > tol || (c[i] - b[i + 1]).abs() > tol {
                    return Err(GspError::InvalidParameter(format!(
                        "band bounds not chained at {i}"
                    )));
                }
            }
        }
        Ok(BandBounds { a, b, c })
    }

    /// Uniform bands over `[0, lambda_max]` split into `k` intervals.
    pub fn uniform(lambda_max: T, k: usize) -> Result<Self> {
        if k == 0 || lambda_max <= T::zero() {
            return Err(GspError::InvalidParameter(
                "uniform bands need k >= 1 and lambda_max > 0".into(),
            ));
        }
        let w = lambda_max / T::of(k as f64);
        let a: Vec<T> = (0..k).map(|i| T::of(i as f64) * w).collect();
        let b: Vec<T> = (0..k).map(|i| T::of((i + 1) as f64) * w).collect();
        let c: Vec<T> = (0..k).map(|i| T::of((i + 2) as f64) * w).collect();
        BandBounds::new(a, b, c)
    }

    pub fn segments(&self) -> usize {
        self.a.len()
    }
}

/// Smooth argument map of the Meyer construction:
/// `v(x) = x⁴ (35 - 84x + 70x² - 20x³)` with `v(0) = 0`, `v(1) = 1`.
pub fn meyer_argument<T: Real>(x: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    if x >= T::one() {
        return T::one();
    }
    x * x * x * x * (T::of(35.0) - T::of(84.0) * x + T::of(70.0) * x * x - T::of(20.0) * x * x * x)
}

#[derive(Debug, Clone)]
pub enum BandKind<T> {
    /// `H_k(λ) = C(K, k) (1 - λ/λ_max)^{K-k} (λ/λ_max)^k`, `k = 0..=K`.
    Binomial { k: usize, lambda_max: T },
    /// Squared-sine/cosine (Hann) bands on uniform intervals; sums to one.
    RaisedCosine { k: usize, lambda_max: T },
    /// Unsquared sine/cosine with the Meyer argument map on explicit chained
    /// bounds; squares sum to one.
    MeyerLike { bounds: BandBounds<T> },
    /// Meyer shapes on caller-supplied (signal-adaptive) chained bounds;
    /// squares sum to one.
    Adaptive { bounds: BandBounds<T> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BandNormalization {
    /// `Σ_k H_k(λ) = 1`
    SumOne,
    /// `Σ_k H_k²(λ) = 1`
    SumSquaresOne,
}

/// A sampled band filter set: `sampled[[k, p]] = H_k(λ_p)`, together with the
/// parametric form so the same bands can be refit by polynomials at any `λ`.
#[derive(Debug, Clone)]
pub struct BandFilterSet<T> {
    pub kind: BandKind<T>,
    pub normalization: BandNormalization,
    pub sampled: Array2<T>,
    pub lambdas: Array1<T>,
}

fn binomial_coeff(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// Raised-cosine band `k` of `0..=segments`: rising `sin²` half on
/// `(a_k, b_k]`, falling `cos²` half on `(b_k, c_k]`; the first band keeps
/// only its falling half (anchored at `λ = 0`), the last only its rising
/// half. `squared = false` drops the squares, turning the sum-one partition
/// into a sum-of-squares-one partition.
fn cosine_band<T: Real>(
    bounds: &BandBounds<T>,
    band: usize,
    lambda: T,
    squared: bool,
    meyer: bool,
) -> T {
    let segs = bounds.segments();
    let half_pi = T::PI() / T::of(2.0);
    let shape = |x: T, rising: bool| -> T {
        let arg = if meyer { meyer_argument(x) } else { x };
        let v = if rising {
            (half_pi * arg).sin()
        } else {
            (half_pi * arg).cos()
        };
        if squared {
            v * v
        } else {
            v
        }
    };
    if band == 0 {
        // falling half over (0, b_1]; value 1 at and below lambda = 0
        // (eigensolver noise can put the zero eigenvalue at -1e-16)
        let lo = bounds.a[0];
        let hi = bounds.b[0];
        if lambda <= hi {
            return shape(((lambda - lo).max(T::zero())) / (hi - lo), false);
        }
        return T::zero();
    }
    let i = band - 1;
    let (a, b, c) = (bounds.a[i], bounds.b[i], bounds.c[i]);
    if band == segs && lambda > b {
        // rising half saturates at the top of the covered interval
        shape(T::one(), true)
    } else if lambda > a && lambda <= b {
        shape((lambda - a) / (b - a), true)
    } else if band < segs && lambda > b && lambda <= c {
        shape((lambda - b) / (c - b), false)
    } else {
        T::zero()
    }
}

impl<T: Real> BandKind<T> {
    /// Number of band channels produced by the kind.
    pub fn channels(&self) -> usize {
        match self {
            BandKind::Binomial { k, .. } => k + 1,
            BandKind::RaisedCosine { k, .. } => k + 1,
            BandKind::MeyerLike { bounds } | BandKind::Adaptive { bounds } => bounds.segments() + 1,
        }
    }

    pub fn normalization(&self) -> BandNormalization {
        match self {
            BandKind::Binomial { .. } | BandKind::RaisedCosine { .. } => BandNormalization::SumOne,
            BandKind::MeyerLike { .. } | BandKind::Adaptive { .. } => {
                BandNormalization::SumSquaresOne
            }
        }
    }

    /// Evaluate band `band` at an arbitrary spectral point.
    pub fn evaluate(&self, band: usize, lambda: T) -> T {
        match self {
            BandKind::Binomial { k, lambda_max } => {
                let t = (lambda / *lambda_max).clamp(T::zero(), T::one());
                T::of(binomial_coeff(*k, band))
                    * (T::one() - t).powi((*k - band) as i32)
                    * t.powi(band as i32)
            }
            BandKind::RaisedCosine { k, lambda_max } => {
                let bounds = BandBounds::uniform(*lambda_max, *k).expect("validated on build");
                cosine_band(&bounds, band, lambda, true, false)
            }
            BandKind::MeyerLike { bounds } | BandKind::Adaptive { bounds } => {
                cosine_band(bounds, band, lambda, false, true)
            }
        }
    }
}

/// Sample a band filter set on a spectrum and validate its declared
/// normalization to `1e-9` at every eigenvalue.
pub fn build_band_filters<T: Real>(
    kind: BandKind<T>,
    lambdas: &Array1<T>,
) -> Result<BandFilterSet<T>> {
    match &kind {
        BandKind::Binomial { k, lambda_max } | BandKind::RaisedCosine { k, lambda_max } => {
            if *k == 0 {
                return Err(GspError::InvalidParameter("need at least one band".into()));
            }
            if *lambda_max <= T::zero() {
                return Err(GspError::InvalidParameter("lambda_max must be > 0".into()));
            }
        }
        BandKind::MeyerLike { .. } | BandKind::Adaptive { .. } => {}
    }
    let channels = kind.channels();
    let n = lambdas.len();
    let mut sampled = Array2::<T>::zeros((channels, n));
    for band in 0..channels {
        for (p, &l) in lambdas.iter().enumerate() {
            sampled[[band, p]] = kind.evaluate(band, l);
        }
    }
    let normalization = kind.normalization();
    let set = BandFilterSet {
        kind,
        normalization,
        sampled,
        lambdas: lambdas.clone(),
    };
    let dev = set.normalization_deviation();
    if dev > T::of(1e-9) {
        return Err(GspError::NormalizationViolated {
            deviation: dev.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(set)
}

impl<T: Real> BandFilterSet<T> {
    pub fn channels(&self) -> usize {
        self.sampled.nrows()
    }

    /// Worst deviation from the declared partition of unity over the samples.
    pub fn normalization_deviation(&self) -> T {
        let mut worst = T::zero();
        for p in 0..self.lambdas.len() {
            let mut acc = T::zero();
            for k in 0..self.channels() {
                let v = self.sampled[[k, p]];
                acc += match self.normalization {
                    BandNormalization::SumOne => v,
                    BandNormalization::SumSquaresOne => v * v,
                };
            }
            worst = worst.max((acc - T::one()).abs());
        }
        worst
    }

    /// Frame bounds `(A, B)`: extrema over the sampled spectrum of
    /// `g(λ_p) = Σ_k H_k²(λ_p)`.
    pub fn frame_bounds(&self) -> (T, T) {
        let mut lo = T::infinity();
        let mut hi = T::zero();
        for p in 0..self.lambdas.len() {
            let mut acc = T::zero();
            for k in 0..self.channels() {
                let v = self.sampled[[k, p]];
                acc += v * v;
            }
            lo = lo.min(acc);
            hi = hi.max(acc);
        }
        (lo, hi)
    }

    /// Spectral-index relabeling: eigenvalue `λ_p` is assigned to the band
    /// whose display interval `((a_k + b_k)/2, (b_k + c_k)/2]` contains it.
    pub fn eigenvalue_axis_assignment(&self) -> Vec<usize> {
        let channels = self.channels();
        let (a, b, c): (Vec<T>, Vec<T>, Vec<T>) = match &self.kind {
            BandKind::RaisedCosine { k, lambda_max } | BandKind::Binomial { k, lambda_max } => {
                let bounds = BandBounds::uniform(*lambda_max, *k).expect("validated");
                (bounds.a, bounds.b, bounds.c)
            }
            BandKind::MeyerLike { bounds } | BandKind::Adaptive { bounds } => {
                (bounds.a.clone(), bounds.b.clone(), bounds.c.clone())
            }
        };
        self.lambdas
            .iter()
            .map(|&l| {
                // band 0 owns everything up to (a_1 + b_1)/2
                let mut assigned = 0usize;
                for i in 0..a.len() {
                    let lo = (a[i] + b[i]) / T::of(2.0);
                    let hi = if i + 1 < a.len() {
                        (a[i + 1] + b[i + 1]) / T::of(2.0)
                    } else {
                        (b[i] + c[i]) / T::of(2.0)
                    };
                    if l > lo && (l <= hi || i + 1 == a.len()) {
                        assigned = i + 1;
                    }
                }
                assigned.min(channels - 1)
            })
            .collect()
    }
}

/// Place `k` chained band bounds at empirical quantiles of the spectral
/// energy `|X(λ_p)|²`, for signal-adaptive bands.
pub fn adaptive_bounds_from_spectrum<T: Real>(
    spectrum: &Array1<T>,
    lambdas: &Array1<T>,
    k: usize,
) -> Result<BandBounds<T>> {
    if k == 0 || lambdas.len() < 2 {
        return Err(GspError::InvalidParameter(
            "adaptive bounds need k >= 1 and a spectrum".into(),
        ));
    }
    let total: T = spectrum.iter().map(|&v| v * v).sum();
    if total <= T::zero() {
        return Err(GspError::EmptyInput("spectral energy is zero"));
    }
    let lambda_max = lambdas[lambdas.len() - 1];
    // cut points where cumulative energy crosses i/k of the total
    let mut cuts = Vec::with_capacity(k + 1);
    cuts.push(T::zero());
    let mut acc = T::zero();
    let mut target_idx = 1usize;
    for (p, &v) in spectrum.iter().enumerate() {
        acc += v * v;
        while target_idx < k && acc >= total * T::of(target_idx as f64) / T::of(k as f64) {
            let lam = lambdas[p].max(cuts[target_idx - 1] + lambda_max * T::of(1e-3));
            cuts.push(lam.min(lambda_max));
            target_idx += 1;
        }
    }
    while cuts.len() < k {
        let last = *cuts.last().unwrap();
        cuts.push(last + lambda_max * T::of(1e-3));
    }
    cuts.push(lambda_max);
    let a: Vec<T> = cuts[0..k].to_vec();
    let b: Vec<T> = cuts[1..=k].to_vec();
    let mut c: Vec<T> = cuts[2..=k].to_vec();
    c.push(lambda_max + (lambda_max - cuts[k - 1]));
    BandBounds::new(a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_lambdas(n: usize, lmax: f64) -> Array1<f64> {
        (0..n).map(|i| lmax * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn binomial_k1_is_linear_split() {
        let lam = test_lambdas(11, 4.0);
        let set = build_band_filters(
            BandKind::Binomial {
                k: 1,
                lambda_max: 4.0,
            },
            &lam,
        )
        .unwrap();
        for (p, &l) in lam.iter().enumerate() {
            assert!((set.sampled[[0, p]] - (1.0 - l / 4.0)).abs() < 1e-12);
            assert!((set.sampled[[1, p]] - l / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn meyer_argument_fixpoints() {
        assert_eq!(meyer_argument(0.0f64), 0.0);
        assert_eq!(meyer_argument(1.0f64), 1.0);
        assert!((meyer_argument(0.5f64) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn raised_cosine_sums_to_one() {
        let lam = test_lambdas(257, 7.63);
        let set = build_band_filters(
            BandKind::RaisedCosine {
                k: 25,
                lambda_max: 7.63,
            },
            &lam,
        )
        .unwrap();
        assert!(set.normalization_deviation() <= 1e-9);
        assert_eq!(set.normalization, BandNormalization::SumOne);
    }

    #[test]
    fn meyer_squares_sum_to_one() {
        let lam = test_lambdas(201, 5.0);
        let bounds = BandBounds::uniform(5.0, 16).unwrap();
        let set = build_band_filters(BandKind::MeyerLike { bounds }, &lam).unwrap();
        assert!(set.normalization_deviation() <= 1e-9);
        let (a, b) = set.frame_bounds();
        assert!((a - 1.0).abs() <= 1e-9);
        assert!((b - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn unchained_bounds_rejected() {
        let r = BandBounds::<f64>::new(vec![0.0, 1.5], vec![1.0, 2.5], vec![2.0, 3.5]);
        assert!(r.is_err());
        assert!(BandBounds::<f64>::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn adaptive_bounds_cover_spectrum_and_chain() {
        let lam = test_lambdas(50, 6.0);
        let mut spec = Array1::<f64>::zeros(50);
        spec[5] = 2.0;
        spec[20] = 1.5;
        spec[40] = 1.0;
        let bounds = adaptive_bounds_from_spectrum(&spec, &lam, 8).unwrap();
        assert_eq!(bounds.segments(), 8);
        let set = build_band_filters(BandKind::Adaptive { bounds }, &lam).unwrap();
        assert!(set.normalization_deviation() <= 1e-9);
    }

    #[test]
    fn single_all_pass_band_is_a_unit_frame() {
        let lam = test_lambdas(33, 2.0);
        let set = BandFilterSet {
            kind: BandKind::Binomial {
                k: 1,
                lambda_max: 2.0,
            },
            normalization: BandNormalization::SumOne,
            sampled: Array2::<f64>::ones((1, 33)),
            lambdas: lam,
        };
        let (a, b) = set.frame_bounds();
        assert!((a - 1.0).abs() < 1e-15 && (b - 1.0).abs() < 1e-15);
    }

    #[test]
    fn frame_bounds_for_sum_one_bank_straddle_one() {
        let lam = test_lambdas(101, 3.0);
        let set = build_band_filters(
            BandKind::RaisedCosine {
                k: 6,
                lambda_max: 3.0,
            },
            &lam,
        )
        .unwrap();
        let (a, b) = set.frame_bounds();
        assert!(a < 1.0 && 1.0 <= b + 1e-12, "A={a} B={b}");
    }
}
