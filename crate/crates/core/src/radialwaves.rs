//! Radial solutions of the free fuzzy Schrödinger equation.
//!
//! `g_J` and `g_Y` are the analogues of the spherical Bessel and Neumann
//! functions on the radial index `n`. Both are terminating Gauss series in
//! `-tan²κ` whose terms grow like `(1 + tan κ)^n` while the result is
//! `O(1/n)`, so the series is summed exactly in rational arithmetic and only
//! the final value is rounded.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which radial solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadialKind {
    /// Regular at the origin (Bessel-like).
    J,
    /// Irregular, defined for `n ≥ 1` (Neumann-like).
    Y,
    /// Outgoing wave `J + iY`.
    H,
}

/// `(l, κ, kind)` with `κ` validated to lie in `(0, π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialFunctionSpec<T> {
    pub l: usize,
    kappa: T,
    pub kind: RadialKind,
}

impl<T: Real> RadialFunctionSpec<T> {
    pub fn new(l: usize, kappa: T, kind: RadialKind) -> Result<Self> {
        check_kappa(kappa)?;
        Ok(Self { l, kappa, kind })
    }

    pub fn kappa(&self) -> T {
        self.kappa
    }

    /// Exact value at radial index `n`; `Y` and `H` vanish at `n = 0` by convention.
    pub fn eval(&self, n: usize) -> Complex<T> {
        match self.kind {
            RadialKind::J => Complex::from(g_bessel_unchecked(self.l, n, self.kappa)),
            RadialKind::Y if n == 0 => Complex::zero(),
            RadialKind::Y => Complex::from(g_neumann_unchecked(self.l, n, self.kappa)),
            RadialKind::H if n == 0 => Complex::zero(),
            RadialKind::H => {
                Complex::new(g_bessel_unchecked(self.l, n, self.kappa), g_neumann_unchecked(self.l, n, self.kappa))
            }
        }
    }

    pub fn asymptotic(&self, n: usize) -> Result<Complex<T>> {
        g_asymptotic(self.l, n, self.kappa, self.kind)
    }
}

pub(crate) fn check_kappa<T: Real>(kappa: T) -> Result<()> {
    if kappa > T::zero() && kappa < T::PI() {
        Ok(())
    } else {
        Err(Error::KappaDomain(kappa.to_f64_lossy()))
    }
}

/// Scalars the terminating Gauss series can be summed in.
pub trait SeriesField: Clone + Num + Signed + PartialOrd {
    /// `Some(k)` when `self == -k` for an integer `k ≥ 0`.
    fn nonpositive_integer(&self) -> Option<u64>;
}

macro_rules! float_series_field {
    ($t:ty) => {
        impl SeriesField for $t {
            fn nonpositive_integer(&self) -> Option<u64> {
                if *self <= 0.0 && self.fract() == 0.0 && *self > -(u64::MAX as $t) {
                    Some((-*self) as u64)
                } else {
                    None
                }
            }
        }
    };
}
float_series_field!(f32);
float_series_field!(f64);

impl SeriesField for BigRational {
    fn nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !self.is_positive() {
            (-self.to_integer()).to_u64()
        } else {
            None
        }
    }
}

/// `₂F₁(a, b; c; x)` for a terminating series.
///
/// The series stops at `J = k` where `-k` is the first non-positive integer
/// among `a`, `b`. Terms are accumulated with Neumaier compensation, which
/// is exact (and harmless) for rational input.
pub fn gauss_2f1_terminating<F: SeriesField>(a: F, b: F, c: F, x: F) -> Result<F> {
    let stop = match (a.nonpositive_integer(), b.nonpositive_integer()) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) | (None, Some(p)) => p,
        (None, None) => return Err(Error::NonTerminating),
    };
    if let Some(q) = c.nonpositive_integer() {
        if q < stop {
            return Err(Error::InvalidParameter(format!("c = -{q} hits a pole before the series terminates")));
        }
    }
    Ok(sum_terminating(stop, a, b, c, x))
}

fn sum_terminating<F: SeriesField>(stop: u64, a: F, b: F, c: F, x: F) -> F {
    let mut term = F::one();
    let mut sum = F::one();
    let mut comp = F::zero();
    let (mut aj, mut bj, mut cj, mut j1) = (a, b, c, F::one());
    for _ in 0..stop {
        term = term * aj.clone() * bj.clone() * x.clone() / (cj.clone() * j1.clone());
        let t = sum.clone() + term.clone();
        if sum.abs() >= term.abs() {
            comp = comp + ((sum - t.clone()) + term.clone());
        } else {
            comp = comp + ((term.clone() - t.clone()) + sum);
        }
        sum = t;
        aj = aj + F::one();
        bj = bj + F::one();
        cj = cj + F::one();
        j1 = j1 + F::one();
    }
    sum + comp
}

/// Exact-rational sum for half-integer parameters `a2/2, b2/2, c2/2`.
///
/// Works with a common denominator so that no gcd is taken inside the loop.
fn exact_half_integer_series(stop: u64, a2: i64, b2: i64, c2: i64, x: &BigRational) -> BigRational {
    // term_{j+1} / term_j = (a2+2j)(b2+2j) x / (2 (c2+2j)(j+1))
    let (xn, xd) = (x.numer().clone(), x.denom().clone());
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut sum_num = BigInt::one();
    let mut sum_den = BigInt::one();
    for j in 0..stop as i64 {
        let p = BigInt::from((a2 + 2 * j) * (b2 + 2 * j));
        let q = BigInt::from(2 * (c2 + 2 * j) * (j + 1));
        num = num * p * &xn;
        den = den * q * &xd;
        // sum += num/den with den_j a multiple of sum_den
        let factor = &den / &sum_den;
        sum_num = sum_num * factor + &num;
        sum_den = den.clone();
    }
    BigRational::new(sum_num, sum_den)
}

/// `(sign, ln|x|)` of a big rational without overflowing `f64`.
fn ln_abs_rational(x: &BigRational) -> (f64, f64) {
    if x.is_zero() {
        return (0.0, f64::NEG_INFINITY);
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    (sign, ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude()))
}

fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().expect("64-bit prefix fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_double_factorial(k: i64) -> f64 {
    (1..=k).rev().step_by(2).map(|j| (j as f64).ln()).sum()
}

/// `-tan²κ` as an exact rational.
fn minus_tan_squared(kappa: f64) -> (f64, BigRational) {
    let t = kappa.tan();
    let tr = BigRational::from_f64(t).expect("finite tangent");
    (t, -(&tr * &tr))
}

fn g_bessel_f64(l: usize, n: usize, kappa: f64) -> f64 {
    let (sk, ck) = kappa.sin_cos();
    let (_, x) = minus_tan_squared(kappa);
    // For integer n exactly one of (1-n)/2, -n/2 is a non-positive integer.
    let stop = (n / 2) as u64;
    let f = exact_half_integer_series(stop, 1 - n as i64, -(n as i64), 3 + 2 * l as i64, &x);
    let (fsign, lnf) = ln_abs_rational(&f);
    let ln = (l as f64 + 1.0) * sk.ln() - ln_double_factorial(2 * l as i64 + 1) + n as f64 * ck.abs().ln() + lnf;
    let csign = if ck < 0.0 && n % 2 == 1 { -1.0 } else { 1.0 };
    fsign * csign * ln.exp()
}

fn g_neumann_f64(l: usize, n: usize, kappa: f64) -> f64 {
    let ck = kappa.cos();
    let (t, x) = minus_tan_squared(kappa);
    let (l, ni) = (l as i64, n as i64);
    // Parameters ((-1-2l-n)/2, -l-n/2; 1/2-l): the first terminates for odd n,
    // the second for even n.
    let stop = if n.is_multiple_of(2) { l + ni / 2 } else { l + (ni + 1) / 2 } as u64;
    let f = exact_half_integer_series(stop, -1 - 2 * l - ni, -2 * l - ni, 1 - 2 * l, &x);
    let (fsign, lnf) = ln_abs_rational(&f);
    let ln_ratio: f64 = -((ni + 1)..=(ni + 2 * l + 1)).map(|j| (j as f64).ln()).sum::<f64>();
    let ln = ln_double_factorial(2 * l - 1) + (l as f64 + 1.0 + ni as f64) * ck.abs().ln() - l as f64 * t.abs().ln()
        + ln_ratio
        + lnf;
    let mut sign = -fsign;
    if ck < 0.0 && (l + 1 + ni) % 2 == 1 {
        sign = -sign;
    }
    if t < 0.0 && l % 2 == 1 {
        sign = -sign;
    }
    sign * ln.exp()
}

fn g_bessel_unchecked<T: Real>(l: usize, n: usize, kappa: T) -> T {
    T::lit(g_bessel_f64(l, n, kappa.to_f64_lossy()))
}

fn g_neumann_unchecked<T: Real>(l: usize, n: usize, kappa: T) -> T {
    T::lit(g_neumann_f64(l, n, kappa.to_f64_lossy()))
}

/// Regular radial solution `g_{J,l}(n)`.
///
/// `sin^{l+1}κ / (2l+1)!! · cosⁿκ · ₂F₁((1-n)/2, -n/2; 3/2+l; -tan²κ)`.
/// The series is summed exactly, so accuracy is limited only by the
/// final rounding (and by `κ` itself being a float).
pub fn g_bessel<T: Real>(l: usize, n: usize, kappa: T) -> Result<T> {
    check_kappa(kappa)?;
    Ok(g_bessel_unchecked(l, n, kappa))
}

/// Irregular radial solution `g_{Y,l}(n)` for `n ≥ 1`.
///
/// `-(2l-1)!! cos^{l+1}κ / tan^l κ · n!/(n+2l+1)! · cosⁿκ
///  · ₂F₁((-1-2l-n)/2, -l-n/2; 1/2-l; -tan²κ)`.
pub fn g_neumann<T: Real>(l: usize, n: usize, kappa: T) -> Result<T> {
    check_kappa(kappa)?;
    if n == 0 {
        return Err(Error::OriginExcluded);
    }
    Ok(g_neumann_unchecked(l, n, kappa))
}

/// `g_J + i g_Y`, for `n ≥ 1`.
pub fn g_hankel<T: Real>(l: usize, n: usize, kappa: T) -> Result<Complex<T>> {
    Ok(Complex::new(g_bessel(l, n, kappa)?, g_neumann(l, n, kappa)?))
}

/// Leading large-`n` form.
///
/// With `ψ = (n+l+1)κ - lπ/2`: `J ≈ sin ψ / n^{l+1}`, `Y ≈ -cos ψ / n^{l+1}`,
/// `H ≈ e^{i(n+l+1)κ} / (in)^{l+1}`, so that `H = J + iY` holds exactly.
pub fn g_asymptotic<T: Real>(l: usize, n: usize, kappa: T, kind: RadialKind) -> Result<Complex<T>> {
    if n == 0 {
        return Err(Error::OriginExcluded);
    }
    let nf = T::from_usize_lossy(n);
    let lf = T::from_usize_lossy(l);
    let envelope = nf.powi(l as i32 + 1).recip();
    let psi = (nf + lf + T::one()) * kappa - lf * T::FRAC_PI_2();
    Ok(match kind {
        RadialKind::J => Complex::from(psi.sin() * envelope),
        RadialKind::Y => Complex::from(-psi.cos() * envelope),
        RadialKind::H => {
            // (in)^{-(l+1)} = (-i)^{l+1} n^{-(l+1)}
            let phase = Complex::from_polar(T::one(), (nf + lf + T::one()) * kappa);
            phase * neg_i_pow(l + 1) * envelope
        }
    })
}

/// `(-i)^p` without complex logarithms.
pub(crate) fn neg_i_pow<T: Real>(p: usize) -> Complex<T> {
    match p % 4 {
        0 => Complex::new(T::one(), T::zero()),
        1 => Complex::new(T::zero(), -T::one()),
        2 => Complex::new(-T::one(), T::zero()),
        _ => Complex::new(T::zero(), T::one()),
    }
}

/// Envelope-scaled deviation from the asymptotic form over one period.
///
/// Returns `max_{m ∈ [n, n+⌈2π/κ⌉]} m^{l+1} |g(m) - g_asym(m)|`. Pointwise
/// relative error is meaningless near the zeros of an oscillating function,
/// so the deviation is measured against the `n^{-(l+1)}` envelope instead.
pub fn asymptotic_deviation<T: Real>(l: usize, n: usize, kappa: T, kind: RadialKind) -> Result<T> {
    if n == 0 {
        return Err(Error::OriginExcluded);
    }
    let spec = RadialFunctionSpec::new(l, kappa, kind)?;
    let period = (T::TAU() / kappa).ceil().to_usize().unwrap_or(1);
    let mut worst = T::zero();
    for m in n..=n + period {
        let exact = spec.eval(m);
        let approx = spec.asymptotic(m)?;
        let scaled = (exact - approx).norm() * T::from_usize_lossy(m).powi(l as i32 + 1);
        worst = worst.max(scaled);
    }
    Ok(worst)
}
