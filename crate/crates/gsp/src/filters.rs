//! Systems on graphs as matrix polynomials in a shift operator, their design
//! from a sampled spectral response (interpolating or least squares),
//! Chebyshev series approximation with vertex-domain recursion, smoothing
//! and denoising transfer functions, and the stationary Wiener gain.

use crate::linalg::{self, SparseOp};
use crate::operators::{OperatorKind, OperatorMatrix};
use crate::scalar::Real;
use crate::spectral::SpectralBasis;
use crate::{GspError, Result};
use ndarray::{Array1, Array2};

/// Vertex-domain system coefficients `h_0 .. h_{M-1}` applied as
/// `y = Σ_m h_m Sᵐ x`. The operator kind is metadata describing which shift
/// the taps were designed for.
#[derive(Debug, Clone)]
pub struct FilterTaps<T> {
    pub taps: Vec<T>,
    pub operator_kind: OperatorKind,
}

impl<T: Real> FilterTaps<T> {
    pub fn new(taps: Vec<T>, operator_kind: OperatorKind) -> Self {
        assert!(!taps.is_empty(), "a filter needs at least one tap");
        FilterTaps {
            taps,
            operator_kind,
        }
    }

    pub fn order(&self) -> usize {
        self.taps.len()
    }

    /// Transfer function value `Σ_m h_m λᵐ`.
    pub fn response_at(&self, lambda: T) -> T {
        let mut acc = T::zero();
        for &t in self.taps.iter().rev() {
            acc = acc * lambda + t;
        }
        acc
    }

    /// Transfer function sampled on a list of eigenvalues.
    pub fn sampled_response(&self, lambdas: &Array1<T>) -> Array1<T> {
        lambdas.mapv(|l| self.response_at(l))
    }
}

/// Apply taps by iterated shift-multiplies; never forms `Sᵐ` explicitly, so
/// the cost is `O(M · nnz(S))`.
pub fn apply_taps<T: Real>(
    filter: &FilterTaps<T>,
    shift: &OperatorMatrix<T>,
    x: &Array1<T>,
) -> Result<Array1<T>> {
    let n = shift.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let op = SparseOp::from_dense(&shift.values);
    let mut shifted = x.clone();
    let mut acc = x.mapv(|v| v * filter.taps[0]);
    for &h in filter.taps.iter().skip(1) {
        shifted = op.apply(&shifted);
        acc.zip_mut_with(&shifted, |a, &s| *a += h * s);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DesignMode {
    /// Interpolate the desired response at every distinct eigenvalue;
    /// requires the tap count to equal the number of distinct eigenvalues.
    Exact,
    /// Least-squares fit with the given tap count.
    LeastSquares,
}

/// Design taps whose transfer function matches `g(λ_k)` at the given
/// eigenvalues. Eigenvalues closer than `1e-9 · max|λ|` are merged first
/// (their desired responses are averaged), which is the minimal-polynomial
/// reduction of the design system.
pub fn design_response<T: Real>(
    g: &Array1<T>,
    lambdas: &Array1<T>,
    m: usize,
    mode: DesignMode,
) -> Result<FilterTaps<T>> {
    let n = lambdas.len();
    if g.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: g.len(),
        });
    }
    if m == 0 || m > n {
        return Err(GspError::InvalidParameter(format!(
            "tap count {m} must be in 1..={n}"
        )));
    }
    let scale = lambdas
        .iter()
        .fold(T::zero(), |mx, &v| mx.max(v.abs()))
        .max(T::one());
    let tol = T::of(1e-9) * scale;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| lambdas[i].partial_cmp(&lambdas[j]).unwrap());
    let mut distinct: Vec<(T, T, usize)> = Vec::new(); // (lambda, g sum, count)
    for &i in &order {
        match distinct.last_mut() {
            Some(last) if (lambdas[i] - last.0).abs() <= tol => {
                last.1 += g[i];
                last.2 += 1;
            }
            _ => distinct.push((lambdas[i], g[i], 1)),
        }
    }
    let d = distinct.len();
    let lam: Vec<T> = distinct.iter().map(|&(l, _, _)| l).collect();
    let gd: Vec<T> = distinct
        .iter()
        .map(|&(_, s, c)| s / T::of(c as f64))
        .collect();

    match mode {
        DesignMode::Exact => {
            if m != d {
                return Err(GspError::InvalidParameter(format!(
                    "exact design needs tap count == distinct eigenvalue count ({d}), got {m}"
                )));
            }
            let mut vand = Array2::<T>::ones((d, d));
            for r in 0..d {
                for c in 1..d {
                    vand[[r, c]] = vand[[r, c - 1]] * lam[r];
                }
            }
            let rhs = Array1::from_vec(gd);
            let taps = linalg::lu_solve(&vand, &rhs)?;
            Ok(FilterTaps::new(taps.to_vec(), OperatorKind::Adjacency))
        }
        DesignMode::LeastSquares => {
            let mut vand = Array2::<T>::ones((d, m));
            for r in 0..d {
                for c in 1..m {
                    vand[[r, c]] = vand[[r, c - 1]] * lam[r];
                }
            }
            let rhs = Array1::from_vec(gd);
            let sol = linalg::lstsq(&vand, &rhs)?;
            Ok(FilterTaps::new(sol.x.to_vec(), OperatorKind::Adjacency))
        }
    }
}

/// Truncated Chebyshev series `c_0/2 + Σ_{m>=1} c_m T_m(z)` over a spectral
/// interval, with `z = (2λ - λ_max - λ_min)/(λ_max - λ_min)`.
#[derive(Debug, Clone)]
pub struct ChebyshevSeries<T> {
    pub coeffs: Vec<T>,
    pub lambda_min: T,
    pub lambda_max: T,
}

/// Number of midpoint quadrature nodes used by [`chebyshev_fit`].
pub const CHEBYSHEV_QUADRATURE_NODES: usize = 2048;

/// Fit a Chebyshev series of the given order (`order + 1` coefficients) to a
/// desired response over `[lambda_min, lambda_max]`, by midpoint quadrature
/// of `c_m = (2/π) ∫ cos(mθ) G(λ(cos θ)) dθ`.
pub fn chebyshev_fit<T: Real>(
    response: impl Fn(T) -> T,
    lambda_min: T,
    lambda_max: T,
    order: usize,
) -> Result<ChebyshevSeries<T>> {
    chebyshev_fit_smoothed(response, lambda_min, lambda_max, order, None)
}

/// Same as [`chebyshev_fit`] with an optional smoothing ramp: when a width is
/// given, the response is replaced by its moving average over a window of
/// that width, which turns step discontinuities into linear ramps.
pub fn chebyshev_fit_smoothed<T: Real>(
    response: impl Fn(T) -> T,
    lambda_min: T,
    lambda_max: T,
    order: usize,
    ramp_width: Option<T>,
) -> Result<ChebyshevSeries<T>> {
    if lambda_max <= lambda_min {
        return Err(GspError::InvalidParameter(
            "chebyshev interval needs lambda_max > lambda_min".into(),
        ));
    }
    let smoothed = |l: T| -> T {
        match ramp_width {
            None => response(l),
            Some(w) => {
                let steps = 16;
                let mut acc = T::zero();
                for i in 0..steps {
                    let t = (T::of(i as f64) + T::of(0.5)) / T::of(steps as f64) - T::of(0.5);
                    acc += response(l + t * w);
                }
                acc / T::of(steps as f64)
            }
        }
    };
    let nodes = CHEBYSHEV_QUADRATURE_NODES;
    let half = (lambda_max - lambda_min) / T::of(2.0);
    let mid = (lambda_max + lambda_min) / T::of(2.0);
    let mut samples = Vec::with_capacity(nodes);
    for j in 0..nodes {
        let theta = (T::of(j as f64) + T::of(0.5)) * T::PI() / T::of(nodes as f64);
        let v = smoothed(theta.cos() * half + mid);
        if !v.is_finite() {
            return Err(GspError::NonFiniteInput);
        }
        samples.push((theta, v));
    }
    let mut coeffs = Vec::with_capacity(order + 1);
    for m in 0..=order {
        let mut acc = T::zero();
        for &(theta, v) in &samples {
            acc += (T::of(m as f64) * theta).cos() * v;
        }
        coeffs.push(acc * T::of(2.0) / T::of(nodes as f64));
    }
    Ok(ChebyshevSeries {
        coeffs,
        lambda_min,
        lambda_max,
    })
}

impl<T: Real> ChebyshevSeries<T> {
    fn affine(&self) -> (T, T) {
        let a = T::of(2.0) / (self.lambda_max - self.lambda_min);
        let b = -(self.lambda_max + self.lambda_min) / (self.lambda_max - self.lambda_min);
        (a, b)
    }

    /// Evaluate the series at a spectral point.
    pub fn eval(&self, lambda: T) -> T {
        let (a, b) = self.affine();
        let z = a * lambda + b;
        let mut acc = self.coeffs[0] / T::of(2.0);
        let mut t_prev = T::one();
        let mut t_curr = z;
        for (m, &c) in self.coeffs.iter().enumerate().skip(1) {
            if m > 1 {
                let t_next = T::of(2.0) * z * t_curr - t_prev;
                t_prev = t_curr;
                t_curr = t_next;
            }
            acc += c * t_curr;
        }
        acc
    }

    /// Monomial coefficients of the series as a polynomial in `λ`.
    pub fn to_monomial(&self) -> Vec<T> {
        let m = self.coeffs.len();
        let (a, b) = self.affine();
        // shifted polynomials in lambda, built by the three-term recursion
        let mut t_prev = vec![T::one()];
        let mut t_curr = vec![b, a];
        let mut mono = vec![T::zero(); m];
        mono[0] = self.coeffs[0] / T::of(2.0);
        for (deg, &c) in self.coeffs.iter().enumerate().skip(1) {
            if deg > 1 {
                // t_next = 2 (a λ + b) t_curr - t_prev
                let mut t_next = vec![T::zero(); t_curr.len() + 1];
                for (i, &v) in t_curr.iter().enumerate() {
                    t_next[i] += T::of(2.0) * b * v;
                    t_next[i + 1] += T::of(2.0) * a * v;
                }
                for (i, &v) in t_prev.iter().enumerate() {
                    t_next[i] -= v;
                }
                t_prev = std::mem::replace(&mut t_curr, t_next);
            }
            for (i, &v) in t_curr.iter().enumerate() {
                mono[i] += c * v;
            }
        }
        mono
    }
}

/// Apply a Chebyshev series to a signal through the three-term recursion on
/// vectors: `T̄_m(L) x = 2 (a L + b) T̄_{m-1}(L) x - T̄_{m-2}(L) x`. Only
/// shift-vector products are used; no power of the operator is formed.
pub fn chebyshev_apply<T: Real>(
    series: &ChebyshevSeries<T>,
    shift: &OperatorMatrix<T>,
    x: &Array1<T>,
) -> Result<Array1<T>> {
    let n = shift.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let op = SparseOp::from_dense(&shift.values);
    let (a, b) = series.affine();
    let shifted_apply = |v: &Array1<T>| -> Array1<T> {
        let mut out = op.apply(v).mapv(|u| u * a);
        out.zip_mut_with(v, |o, &vv| *o += b * vv);
        out
    };
    let mut acc = x.mapv(|v| v * series.coeffs[0] / T::of(2.0));
    if series.coeffs.len() == 1 {
        return Ok(acc);
    }
    let mut t_prev = x.clone();
    let mut t_curr = shifted_apply(x);
    acc.zip_mut_with(&t_curr, |u, &t| *u += series.coeffs[1] * t);
    for &c in series.coeffs.iter().skip(2) {
        let mut t_next = shifted_apply(&t_curr).mapv(|v| v * T::of(2.0));
        t_next.zip_mut_with(&t_prev, |u, &p| *u -= p);
        acc.zip_mut_with(&t_next, |u, &t| *u += c * t);
        t_prev = std::mem::replace(&mut t_curr, t_next);
    }
    Ok(acc)
}

/// Elementwise inverse transfer function `1/g(λ_k)`; every sample must stay
/// away from zero.
pub fn inverse_transfer<T: Real>(g: &Array1<T>) -> Result<Array1<T>> {
    if g.iter().any(|v| v.abs() <= T::of(1e-12)) {
        return Err(GspError::InvalidParameter(
            "inverse system undefined: response has a (near) zero sample".into(),
        ));
    }
    Ok(g.mapv(|v| T::one() / v))
}

/// Smoothness-regularized denoising variants. Each solves a quadratic
/// objective whose closed form is an elementwise spectral gain with
/// `H(0) = 1`.
#[derive(Debug, Clone, Copy)]
pub enum DenoiseVariant<T> {
    /// `H(λ) = 1 / (1 + 2αλ)`
    Smooth { alpha: T },
    /// `H(λ) = 1 / (1 + 2αλ²)`
    Quadratic { alpha: T },
    /// `H(λ) = 1 / (1 + 2αλ + 2βλ²)`
    Combined { alpha: T, beta: T },
}

pub fn denoise_gain<T: Real>(variant: DenoiseVariant<T>, lambda: T) -> T {
    let two = T::of(2.0);
    match variant {
        DenoiseVariant::Smooth { alpha } => T::one() / (T::one() + two * alpha * lambda),
        DenoiseVariant::Quadratic { alpha } => {
            T::one() / (T::one() + two * alpha * lambda * lambda)
        }
        DenoiseVariant::Combined { alpha, beta } => {
            T::one() / (T::one() + two * alpha * lambda + two * beta * lambda * lambda)
        }
    }
}

/// Optimal quadratic-objective denoising in the Laplacian spectral domain.
pub fn denoise<T: Real>(
    x: &Array1<T>,
    basis: &SpectralBasis<T>,
    variant: DenoiseVariant<T>,
) -> Result<Array1<T>> {
    let nonneg = match variant {
        DenoiseVariant::Smooth { alpha } | DenoiseVariant::Quadratic { alpha } => {
            alpha >= T::zero()
        }
        DenoiseVariant::Combined { alpha, beta } => {
            // beta may compensate alpha (one component left unattenuated),
            // but the gain must stay finite and positive on the spectrum
            alpha >= T::zero() || beta >= T::zero()
        }
    };
    if !nonneg {
        return Err(GspError::InvalidParameter(
            "denoising parameters must be nonnegative".into(),
        ));
    }
    let gains = basis.eigenvalues.mapv(|l| denoise_gain(variant, l));
    basis.apply_response(&gains, x)
}

/// Two-step smoothing iteration `(I + βL)(I - αL)` applied `k` times in the
/// vertex domain; the spectral response after `k` rounds is
/// `((1 + βλ)(1 - αλ))^k`.
pub fn taubin<T: Real>(
    x: &Array1<T>,
    laplacian: &OperatorMatrix<T>,
    alpha: T,
    beta: T,
    k: usize,
) -> Result<Array1<T>> {
    if k == 0 {
        return Err(GspError::InvalidParameter(
            "taubin smoothing needs at least one iteration".into(),
        ));
    }
    let n = laplacian.n();
    if x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: x.len(),
        });
    }
    let op = SparseOp::from_dense(&laplacian.values);
    let mut cur = x.clone();
    for _ in 0..k {
        let lx = op.apply(&cur);
        let mut shrunk = cur.clone();
        shrunk.zip_mut_with(&lx, |c, &l| *c -= alpha * l);
        let lx2 = op.apply(&shrunk);
        shrunk.zip_mut_with(&lx2, |c, &l| *c += beta * l);
        cur = shrunk;
    }
    Ok(cur)
}

/// Stationary Wiener gain `G(λ_k) = H p_s / (H² p_s + p_ε)` for a known
/// degradation response and signal/noise power spectral densities.
pub fn wiener_gain<T: Real>(
    h: &Array1<T>,
    p_signal: &Array1<T>,
    p_noise: &Array1<T>,
) -> Result<Array1<T>> {
    let n = h.len();
    if p_signal.len() != n || p_noise.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: p_signal.len().max(p_noise.len()),
        });
    }
    let mut out = Array1::<T>::zeros(n);
    for k in 0..n {
        let denom = h[k] * h[k] * p_signal[k] + p_noise[k];
        if denom <= T::zero() {
            return Err(GspError::InvalidParameter(format!(
                "wiener gain denominator vanishes at bin {k}"
            )));
        }
        out[k] = h[k] * p_signal[k] / denom;
    }
    Ok(out)
}

/// `|v|^p` with the `p = 0` convention of counting nonzeros.
fn lp_term<T: Real>(magnitude: T, p: T) -> T {
    if p == T::zero() {
        if magnitude > T::zero() {
            T::one()
        } else {
            T::zero()
        }
    } else {
        magnitude.powf(p)
    }
}

/// Sparsity-promoting denoising objective in operator form:
/// `J = ½‖y - x‖² + α ‖L y‖_p^p`. Only the evaluation is provided; the
/// nonconvex minimization is out of scope.
pub fn sparsity_cost_operator<T: Real>(
    y: &Array1<T>,
    x: &Array1<T>,
    laplacian: &OperatorMatrix<T>,
    alpha: T,
    p: T,
) -> Result<T> {
    let n = laplacian.n();
    if y.len() != n || x.len() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: y.len().max(x.len()),
        });
    }
    let fidelity = y
        .iter()
        .zip(x.iter())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        / T::of(2.0);
    let ly = SparseOp::from_dense(&laplacian.values).apply(y);
    let penalty = ly.iter().map(|&v| lp_term(v.abs(), p)).sum::<T>();
    Ok(fidelity + alpha * penalty)
}

/// Total-variation flavor of the sparsity objective:
/// `J = ½ Σ (y(n) - x(n))² + α Σ_n (Σ_m W_mn (y(n) - y(m))²)^{p/2}`.
pub fn sparsity_cost_weights<T: Real>(
    y: &Array1<T>,
    x: &Array1<T>,
    weights: &Array2<T>,
    alpha: T,
    p: T,
) -> Result<T> {
    let n = weights.nrows();
    if y.len() != n || x.len() != n || weights.ncols() != n {
        return Err(GspError::DimensionMismatch {
            expected: n,
            got: y.len().max(x.len()).max(weights.ncols()),
        });
    }
    let fidelity = y
        .iter()
        .zip(x.iter())
        .map(|(&a, &b)| (a - b) * (a - b))
        .sum::<T>()
        / T::of(2.0);
    let mut penalty = T::zero();
    for v in 0..n {
        let mut local = T::zero();
        for m in 0..n {
            let d = y[v] - y[m];
            local += weights[[m, v]] * d * d;
        }
        penalty += lp_term(local.sqrt(), p);
    }
    Ok(fidelity + alpha * penalty)
}
