//! Two-pinhole interference on the fuzzy sphere.
//!
//! Pinholes sit at `(0, 0, ±d)` and the screen point is `D = (L, y_D, z_D)`.
//! Each pinhole emits an `l = 0` outgoing wave; `P(D)` is the coherent-state
//! Born probability of finding the particle at `D`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::su2::{cross, dot, norm, Vec3};

/// Screen point relative to the pinhole pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinholeGeometry<T> {
    pub l: T,
    pub d: T,
    pub y: T,
    pub z: T,
    /// `|D|`.
    pub r: T,
    pub r_plus: T,
    pub r_minus: T,
    pub d_hat: Vec3<T>,
    pub k_plus: Vec3<T>,
    pub k_minus: Vec3<T>,
    pub cos_alpha: T,
    pub cos_beta: T,
    /// `cos(α+β) = k̂₊·k̂₋`.
    pub cos_ab: T,
}

/// Builds the geometry for barrier distance `l`, half-separation `d` and
/// screen coordinates `(y, z)`.
pub fn make_geometry<T: Real>(l: T, d: T, y: T, z: T) -> Result<PinholeGeometry<T>> {
    if !(l > T::zero()) || !l.is_finite() {
        return Err(Error::InvalidParameter(format!("L must be positive, got {l}")));
    }
    if !(d > T::zero()) || !d.is_finite() {
        return Err(Error::InvalidParameter(format!("d must be positive, got {d}")));
    }
    if !y.is_finite() || !z.is_finite() {
        return Err(Error::InvalidParameter("screen coordinates must be finite".into()));
    }
    let big_d = [l, y, z];
    let to_plus = [l, y, z - d];
    let to_minus = [l, y, z + d];
    let (r, r_plus, r_minus) = (norm(&big_d), norm(&to_plus), norm(&to_minus));
    let unit = |v: Vec3<T>, n: T| [v[0] / n, v[1] / n, v[2] / n];
    let (d_hat, k_plus, k_minus) = (unit(big_d, r), unit(to_plus, r_plus), unit(to_minus, r_minus));
    Ok(PinholeGeometry {
        l,
        d,
        y,
        z,
        r,
        r_plus,
        r_minus,
        d_hat,
        k_plus,
        k_minus,
        cos_alpha: dot(&k_plus, &d_hat),
        cos_beta: dot(&k_minus, &d_hat),
        cos_ab: dot(&k_plus, &k_minus),
    })
}

impl<T: Real> PinholeGeometry<T> {
    /// `(r² − d²)/√((r²+d²)² − 4z²d²)`, which must agree with `cos_ab`.
    pub fn cos_ab_cosine_rule(&self) -> T {
        let (r2, d2) = (self.r * self.r, self.d * self.d);
        let four = T::lit(4.0);
        (r2 - d2) / ((r2 + d2) * (r2 + d2) - four * self.z * self.z * d2).sqrt()
    }

    /// `D̂·(k̂₊×k̂₋)`, zero by coplanarity.
    pub fn triple_product(&self) -> T {
        dot(&self.d_hat, &cross(&self.k_plus, &self.k_minus))
    }

    /// Default regularisation volume, `(10 L)³`.
    pub fn default_volume(&self) -> T {
        (T::lit(10.0) * self.l).powi(3)
    }
}

/// Constants entering `P(D)`; `p` and `v` are filled by [`probability`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceResult<T> {
    pub r_big: T,
    pub r_plus_big: T,
    pub r_minus_big: T,
    pub eta_plus: T,
    pub eta_minus: T,
    pub k: Complex<T>,
    pub a: T,
    pub b: T,
    pub p: Option<T>,
    pub v: Option<T>,
}

fn check_open_kappa<T: Real>(kappa: T) -> Result<()> {
    if kappa > T::zero() && kappa < T::PI() {
        Ok(())
    } else {
        Err(Error::KappaDomain(kappa.to_f64_lossy()))
    }
}

/// `ln η = (R± − R)(cos κ − 1) − ln R±`.
fn ln_eta<T: Real>(rx: T, rb: T, cos_kappa: T) -> T {
    (rx - rb) * (cos_kappa - T::one()) - rx.ln()
}

/// `K`, `A`, `B`, `η±` for wavenumber `k` at non-commutativity `lambda`.
pub fn interference_constants<T: Real>(g: &PinholeGeometry<T>, lambda: T, k: T) -> Result<InterferenceResult<T>> {
    if !(lambda > T::zero()) {
        return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
    }
    let kappa = lambda * k;
    check_open_kappa(kappa)?;
    let (s, c) = kappa.sin_cos();
    let (rb, rp, rm) = (g.r / lambda, g.r_plus / lambda, g.r_minus / lambda);
    // R(cos²κ + cos(α+β) sin²κ), arranged so rounding cannot push A above R
    let a = rb - rb * s * s * (T::one() - g.cos_ab).max(T::zero());
    let b = rb * s * c * (g.cos_alpha - g.cos_beta);
    Ok(InterferenceResult {
        r_big: rb,
        r_plus_big: rp,
        r_minus_big: rm,
        eta_plus: ln_eta(rp, rb, c).exp(),
        eta_minus: ln_eta(rm, rb, c).exp(),
        k: Complex::new(a, b),
        a,
        b,
        p: None,
        v: None,
    })
}

/// `P(D)` with regularisation volume `v`.
///
/// `v` sets only the overall scale; [`PinholeGeometry::default_volume`] is a
/// reasonable choice. Far off axis at large `κ` the value can exceed the
/// floating-point range, in which case it saturates to `+∞`.
pub fn probability<T: Real>(g: &PinholeGeometry<T>, lambda: T, k: T, v: T) -> Result<InterferenceResult<T>> {
    if !(v > T::zero()) {
        return Err(Error::InvalidParameter(format!("volume must be positive, got {v}")));
    }
    let mut res = interference_constants(g, lambda, k)?;
    let (a, b, rb) = (res.a, res.b, res.r_big);
    // η± alone can overflow or underflow far from the axis; factoring out
    // the larger one keeps the bracket finite and positive.
    let c = (lambda * k).cos();
    let (lp, lm) = (ln_eta(res.r_plus_big, rb, c), ln_eta(res.r_minus_big, rb, c));
    let top = lp.max(lm);
    let (two, half) = (T::lit(2.0), T::lit(0.5));
    let direct = ((two * (lp - top)).exp() + (two * (lm - top)).exp()) * half * (rb + T::one());
    let cross = (lp + lm - two * top + a - rb).exp() * ((a + T::one()) * b.cos() - b * b.sin());
    res.p = Some(lambda / v.cbrt() * (direct + cross) * (two * top).exp());
    res.v = Some(v);
    Ok(res)
}

/// `P/(4π r λ²)`; zero if `res` carries no probability.
pub fn spatial_density<T: Real>(res: &InterferenceResult<T>, r: T, lambda: T) -> T {
    res.p.map_or(T::zero(), |p| p / (T::lit(4.0) * T::PI() * r * lambda * lambda))
}

/// The ordinary-space density the fuzzy result reduces to as `λ → 0`.
pub fn probability_commutative<T: Real>(g: &PinholeGeometry<T>, k: T, v: T) -> T {
    let rr = g.r_plus * g.r_minus;
    let two = T::lit(2.0);
    let phase = g.r * k * (g.cos_alpha - g.cos_beta);
    (two * g.d * g.d / rr + g.cos_ab + phase.cos()) / (T::lit(4.0) * T::PI() * v.cbrt() * rr)
}

/// Outcome of [`commutative_limit_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct LimitReport<T> {
    pub lambdas: Vec<T>,
    pub errors: Vec<T>,
    /// `errors[i+1]/errors[i]`; `→ λ[i+1]/λ[i]` for an `O(λ)` error.
    pub ratios: Vec<T>,
    pub decreasing: bool,
    pub converged: bool,
}

/// Distance between the fuzzy spatial density and the commutative density
/// along a decreasing ladder of `λ`.
pub fn commutative_limit_check<T: Real>(
    g: &PinholeGeometry<T>,
    k: T,
    v: T,
    ladder: &[T],
    tol: T,
) -> Result<LimitReport<T>> {
    if ladder.len() < 2 {
        return Err(Error::InvalidParameter("ladder needs at least two values".into()));
    }
    if ladder.iter().any(|&x| !(x > T::zero())) || ladder.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::InvalidParameter("ladder must be positive and strictly decreasing".into()));
    }
    let target = probability_commutative(g, k, v);
    let errors = ladder
        .iter()
        .map(|&lambda| Ok((spatial_density(&probability(g, lambda, k, v)?, g.r, lambda) - target).abs()))
        .collect::<Result<Vec<T>>>()?;
    let ratios: Vec<T> = errors.windows(2).map(|w| w[1] / w[0]).collect();
    let decreasing = errors.windows(2).all(|w| w[1] < w[0]);
    let converged = decreasing && errors[errors.len() - 1] < tol;
    Ok(LimitReport { lambdas: ladder.to_vec(), errors, ratios, decreasing, converged })
}

/// `4λd²mE/ħ²`: below this distance interference is suppressed.
pub fn classicality_radius<T: Real>(lambda: T, d: T, m: T, e: T, hbar: T) -> T {
    T::lit(4.0) * lambda * d * d * m * e / (hbar * hbar)
}

/// [`classicality_radius`] for `n` particles of mean energy `e_avg`.
///
/// The centre-of-mass rescaling leaves `λ̃M = λm`, so only the total energy
/// changes.
pub fn macroscopic_classicality_radius<T: Real>(lambda: T, d: T, m: T, e_avg: T, n: T, hbar: T) -> T {
    classicality_radius(lambda, d, m, n * e_avg, hbar)
}

/// `(P_max − P_min)/(P_max + P_min)` over the interior local extrema of a
/// sampled trace.
///
/// A trace whose interior extrema are all of one kind has no fringes and
/// scores 0, as does a constant trace.
pub fn fringe_visibility<T: Real>(values: &[T]) -> Result<T> {
    if values.len() < 5 {
        return Err(Error::InsufficientSampling { needed: 5, got: values.len() });
    }
    let (lo, hi) = values.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    if hi - lo <= T::epsilon() * hi.abs() {
        return Ok(T::zero());
    }
    let mut maxima = Vec::new();
    let mut minima = Vec::new();
    for w in values.windows(3) {
        if w[1] > w[0] && w[1] > w[2] {
            maxima.push(w[1]);
        } else if w[1] < w[0] && w[1] < w[2] {
            minima.push(w[1]);
        }
    }
    match (maxima.is_empty(), minima.is_empty()) {
        (true, true) => Err(Error::InsufficientSampling { needed: 1, got: 0 }),
        (false, false) => {
            let pmax = maxima.into_iter().fold(T::neg_infinity(), T::max);
            let pmin = minima.into_iter().fold(T::infinity(), T::min);
            Ok((pmax - pmin) / (pmax + pmin))
        }
        _ => Ok(T::zero()),
    }
}
