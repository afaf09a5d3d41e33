//! Coherent-state matrix elements of functions of the number operator.
//!
//! For `g(n̂)` between `|z¹⟩` and `|z²⟩`,
//! `⟨z¹|g(n̂)|z²⟩ = e^{-(R₁+R₂)/2} Σₙ g(n) Kⁿ/n!` with `K = z̄¹ₐ z²ₐ`.
//! Polynomials give Touchard closed forms; the outgoing radial wave gives a
//! hypergeometric series that is summed here in arbitrary precision.

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigUint;
use num_complex::Complex;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fockspace::{coherent_vector, inner, BlockOperator, FockBasis};
use crate::radialwaves::neg_i_pow;
use crate::scalar::Real;
use crate::su2::CoherentPoint;

/// The pair of coherent points entering a matrix element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MelContext<T> {
    pub z1: CoherentPoint<T>,
    pub z2: CoherentPoint<T>,
}

impl<T: Real> MelContext<T> {
    pub fn new(z1: CoherentPoint<T>, z2: CoherentPoint<T>) -> Self {
        Self { z1, z2 }
    }

    pub fn r1(&self) -> T {
        self.z1.big_r()
    }

    pub fn r2(&self) -> T {
        self.z2.big_r()
    }

    /// `K = z̄¹ₐ z²ₐ`, with `|K| ≤ √(R₁R₂)`.
    pub fn kernel(&self) -> Complex<T> {
        self.z1.kernel(&self.z2)
    }

    /// Context with z1 and z2 exchanged.
    pub fn swapped(&self) -> Self {
        Self { z1: self.z2, z2: self.z1 }
    }

    fn log_prefactor(&self) -> T {
        -(self.r1() + self.r2()) * T::lit(0.5)
    }
}

/// Largest supported Touchard degree.
pub const MAX_TOUCHARD_DEGREE: usize = 64;

/// `T_k(x) = Σ_m S(k, m) xᵐ` with exact Stirling numbers of the second kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TouchardPolynomial {
    degree: usize,
    coefficients: Vec<BigUint>,
}

impl TouchardPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `S(k, m)` for `m = 0..=k`.
    pub fn coefficients(&self) -> &[BigUint] {
        &self.coefficients
    }

    /// `T_k(1)`, the Bell number.
    pub fn bell(&self) -> BigUint {
        self.coefficients.iter().sum()
    }

    pub fn eval<T: Real>(&self, x: Complex<T>) -> Complex<T> {
        self.coefficients.iter().rev().fold(Complex::zero(), |acc, c| {
            acc * x + Complex::from(T::lit(c.to_f64().unwrap_or(f64::INFINITY)))
        })
    }
}

/// Builds `T_k` from `S(k+1, m) = m S(k, m) + S(k, m-1)`.
pub fn touchard(k: usize) -> Result<TouchardPolynomial> {
    if k > MAX_TOUCHARD_DEGREE {
        return Err(Error::DegreeRange(k, MAX_TOUCHARD_DEGREE));
    }
    let mut row = vec![BigUint::one()];
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); row.len() + 1];
        for (m, s) in row.iter().enumerate() {
            next[m] += s * BigUint::from(m);
            next[m + 1] += s;
        }
        row = next;
    }
    Ok(TouchardPolynomial { degree: k, coefficients: row })
}

/// Result of a truncated series with its estimated remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue<T> {
    pub value: Complex<T>,
    pub tail_bound: T,
    pub terms: usize,
}

/// `e^{-(R₁+R₂)/2} Σₙ g(n) Kⁿ/n!`.
///
/// Stops once `n ≥ 2|K|` and the remainder estimate drops below `tol`. Past
/// `2|K|` the factor `Kⁿ/n!` at least halves per step, so for `g` of
/// polynomial growth the remainder is bounded by twice the last two terms.
pub fn mel_general<T: Real>(
    g: impl Fn(usize) -> Complex<T>,
    ctx: &MelContext<T>,
    tol: T,
    max_terms: usize,
) -> Result<SeriesValue<T>> {
    let k = ctx.kernel();
    let two_k = T::lit(2.0) * k.norm();
    let mut power = Complex::from(ctx.log_prefactor().exp());
    let mut sum = Complex::zero();
    let mut prev = T::zero();
    for n in 0..max_terms {
        if n > 0 {
            power = power * k / T::from_usize_lossy(n);
        }
        let term = g(n) * power;
        sum += term;
        let tail = T::lit(2.0) * (term.norm() + prev);
        prev = term.norm();
        if T::from_usize_lossy(n) >= two_k && tail < tol {
            return Ok(SeriesValue { value: sum, tail_bound: tail, terms: n + 1 });
        }
    }
    Err(Error::Convergence { terms: max_terms, partial_re: sum.re.to_f64_lossy(), partial_im: sum.im.to_f64_lossy() })
}

/// `⟨z¹| n̂ᵏ |z²⟩ = e^{-(R₁+R₂)/2+K} T_k(K)`.
pub fn mel_monomial<T: Real>(k: usize, ctx: &MelContext<T>) -> Result<Complex<T>> {
    let t = touchard(k)?;
    let kk = ctx.kernel();
    Ok((kk + Complex::from(ctx.log_prefactor())).exp() * t.eval(kk))
}

/// `⟨z¹| g(n̂) |z²⟩` by brute force in the truncated Fock space.
pub fn mel_fock<T: Real>(g: impl Fn(usize) -> Complex<T>, ctx: &MelContext<T>, basis: FockBasis) -> Result<Complex<T>> {
    let u = coherent_vector(&ctx.z1, basis)?;
    let v = coherent_vector(&ctx.z2, basis)?;
    let op = BlockOperator::function_of_number(basis, g);
    Ok(inner(&u, &op.apply(&v)))
}

/// Controls for [`hankel_mel_exact_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelSeriesOptions {
    /// Relative size below which a term counts as negligible.
    pub tol: f64,
    pub max_terms: usize,
}

impl Default for HankelSeriesOptions {
    fn default() -> Self {
        Self { tol: 1e-20, max_terms: 1_000_000 }
    }
}

/// Coherent symbol of the outgoing radial wave, `⟨z|g_H(n̂)|z⟩` to leading
/// order, as an entire hypergeometric series.
///
/// `(e^{i(l+2)κ}/i^{l+1}) R e^{-R} ₗ₊₂F_{l+2}(1,…,1; 2,…,2; e^{iκ}R)`, which
/// equals `e^{-R} Σ_{n≥1} e^{i(n+l+1)κ} Rⁿ / (n! (in)^{l+1})`.
pub fn hankel_mel_exact<T: Real>(l: usize, kappa: T, r: T) -> Result<Complex<T>> {
    hankel_mel_exact_with(l, kappa, r, HankelSeriesOptions::default())
}

/// [`hankel_mel_exact`] with explicit tolerance and term limit.
///
/// The terms peak near `n ≈ R` with size `~1/R^{l+1}` while the sum is
/// `~e^{-R(1-cos κ)}/R^{l+1}`, so the working precision grows with
/// `R(1 - cos κ)`. Terms are generated outward from the peak by their ratio
/// recurrence, and the walk in each direction stops after three consecutive
/// terms below `tol·|partial sum|`.
pub fn hankel_mel_exact_with<T: Real>(l: usize, kappa: T, r: T, opts: HankelSeriesOptions) -> Result<Complex<T>> {
    let (kappa, r) = (kappa.to_f64_lossy(), r.to_f64_lossy());
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidParameter(format!("R must be positive, got {r}")));
    }
    if !(0.0..std::f64::consts::PI).contains(&kappa) {
        return Err(Error::KappaDomain(kappa));
    }
    let lost_bits = (r * (1.0 - kappa.cos()) + (l as f64 + 2.0) * (r + 2.0).ln()) / std::f64::consts::LN_2;
    let tol_bits = -opts.tol.log2();
    let p = (((64.0 + lost_bits + tol_bits) / 64.0).ceil() as usize + 1) * 64;
    let mut hp = HighPrecision::new(p)?;

    let peak = (r.floor() as usize).max(1);
    let (ck, sk) = (hp.cos(kappa), hp.sin(kappa));
    let step_up = (ck.clone(), sk.clone());
    let step_down = (ck, sk.neg());
    let rr = hp.float(r);
    let l1 = l + 1;

    // v_n = e^{inκ} (Rⁿ/n!) / (R^{peak}/peak!) / n^{l+1}
    let peak_angle = hp.mul(&hp.int(peak as u64), &hp.float(kappa));
    let inv_peak_pow = hp.powi(&hp.div(&hp.one(), &hp.int(peak as u64)), l1);
    let (pc, ps) = (hp.cos_big(&peak_angle), hp.sin_big(&peak_angle));
    let v_peak = (hp.mul(&pc, &inv_peak_pow), hp.mul(&ps, &inv_peak_pow));

    // The sum can sit ~2^{-lost_bits} below the peak term, so a term only
    // counts as small once it is also below that floor.
    let depth = hp.float(opts.tol.ln() - lost_bits * std::f64::consts::LN_2);
    let floor = hp.exp(&depth);
    let floor = hp.mul(&hp.magnitude(&v_peak), &floor);
    let mut sum = v_peak.clone();
    let mut terms = 1usize;

    let mut v = v_peak.clone();
    let mut n = peak;
    let mut small = 0;
    while small < 3 {
        // v_{n+1} = v_n e^{iκ} R/(n+1) (n/(n+1))^{l+1}
        let ratio = hp.div(&hp.int(n as u64), &hp.int(n as u64 + 1));
        let f = hp.mul(&hp.div(&rr, &hp.int(n as u64 + 1)), &hp.powi(&ratio, l1));
        v = hp.cmul_real(&hp.cmul(&v, &step_up), &f);
        sum = hp.cadd(&sum, &v);
        n += 1;
        terms += 1;
        small = if hp.is_negligible(&v, &sum, &floor, opts.tol) { small + 1 } else { 0 };
        if terms > opts.max_terms {
            return Err(hp.convergence_error(terms, &sum));
        }
    }

    let mut v = v_peak;
    let mut n = peak;
    let mut small = 0;
    while n > 1 && small < 3 {
        // v_{n-1} = v_n e^{-iκ} (n/R) (n/(n-1))^{l+1}
        let ratio = hp.div(&hp.int(n as u64), &hp.int(n as u64 - 1));
        let f = hp.mul(&hp.div(&hp.int(n as u64), &rr), &hp.powi(&ratio, l1));
        v = hp.cmul_real(&hp.cmul(&v, &step_down), &f);
        sum = hp.cadd(&sum, &v);
        n -= 1;
        terms += 1;
        small = if hp.is_negligible(&v, &sum, &floor, opts.tol) { small + 1 } else { 0 };
        if terms > opts.max_terms {
            return Err(hp.convergence_error(terms, &sum));
        }
    }

    // e^{-R} R^{peak} / peak!
    let mut ln_scale = hp.neg(&rr);
    let ln_r = hp.ln(&rr);
    ln_scale = hp.add(&ln_scale, &hp.mul(&hp.int(peak as u64), &ln_r));
    let factorial = (2..=peak as u64).fold(hp.one(), |acc, j| hp.mul(&acc, &hp.int(j)));
    let ln_factorial = hp.ln(&factorial);
    ln_scale = hp.sub(&ln_scale, &ln_factorial);
    let scale = hp.exp(&ln_scale);
    let total = (hp.to_f64(&hp.mul(&sum.0, &scale)), hp.to_f64(&hp.mul(&sum.1, &scale)));

    let phase = Complex::from_polar(1.0, (l as f64 + 1.0) * kappa) * neg_i_pow::<f64>(l1);
    let out = phase * Complex::new(total.0, total.1);
    Ok(Complex::new(T::lit(out.re), T::lit(out.im)))
}

/// Leading large-`R` form `e^{R(cos κ - 1) + iR sin κ} / (iR)^{l+1}`.
///
/// Quality degrades as `κ → π`, where the exponent kills the signal.
pub fn hankel_mel_asymptotic<T: Real>(l: usize, kappa: T, r: T) -> Complex<T> {
    let (s, c) = kappa.sin_cos();
    let e = Complex::new(r * (c - T::one()), r * s).exp();
    e * neg_i_pow::<T>(l + 1) / r.powi(l as i32 + 1)
}

/// Thin wrapper over `astro-float` with a fixed precision and rounding mode.
struct HighPrecision {
    p: usize,
    rm: RoundingMode,
    cc: Consts,
}

type BigComplex = (BigFloat, BigFloat);

impl HighPrecision {
    fn new(p: usize) -> Result<Self> {
        let cc = Consts::new().map_err(|e| Error::InvalidParameter(format!("high-precision context: {e:?}")))?;
        Ok(Self { p, rm: RoundingMode::ToEven, cc })
    }

    fn float(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p)
    }

    fn int(&self, x: u64) -> BigFloat {
        BigFloat::from_u64(x, self.p)
    }

    fn one(&self) -> BigFloat {
        self.int(1)
    }

    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, self.rm)
    }

    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, self.rm)
    }

    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, self.rm)
    }

    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, self.rm)
    }

    fn neg(&self, a: &BigFloat) -> BigFloat {
        a.neg()
    }

    fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, self.p, self.rm)
    }

    fn cos(&mut self, x: f64) -> BigFloat {
        let b = self.float(x);
        self.cos_big(&b)
    }

    fn sin(&mut self, x: f64) -> BigFloat {
        let b = self.float(x);
        self.sin_big(&b)
    }

    fn cos_big(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(self.p, self.rm, &mut self.cc)
    }

    fn sin_big(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(self.p, self.rm, &mut self.cc)
    }

    fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(self.p, self.rm, &mut self.cc)
    }

    fn exp(&mut self, x: &BigFloat) -> BigFloat {
        x.exp(self.p, self.rm, &mut self.cc)
    }

    fn cadd(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        (self.add(&a.0, &b.0), self.add(&a.1, &b.1))
    }

    fn cmul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let re = self.sub(&self.mul(&a.0, &b.0), &self.mul(&a.1, &b.1));
        let im = self.add(&self.mul(&a.0, &b.1), &self.mul(&a.1, &b.0));
        (re, im)
    }

    fn cmul_real(&self, a: &BigComplex, s: &BigFloat) -> BigComplex {
        (self.mul(&a.0, s), self.mul(&a.1, s))
    }

    /// Larger of the two component magnitudes.
    fn magnitude(&self, z: &BigComplex) -> BigFloat {
        let (a, b) = (z.0.abs(), z.1.abs());
        if a.cmp(&b) == Some(1) {
            a
        } else {
            b
        }
    }

    /// `|v| < tol·|sum|` and `|v| < floor`.
    fn is_negligible(&self, v: &BigComplex, sum: &BigComplex, floor: &BigFloat, tol: f64) -> bool {
        let m = self.magnitude(v);
        let bound = self.mul(&self.magnitude(sum), &self.float(tol));
        m.cmp(&bound) == Some(-1) && m.cmp(floor) == Some(-1)
    }

    fn to_f64(&self, x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        format!("{x}").parse::<f64>().unwrap_or(f64::NAN)
    }

    fn convergence_error(&self, terms: usize, sum: &BigComplex) -> Error {
        Error::Convergence { terms, partial_re: self.to_f64(&sum.0), partial_im: self.to_f64(&sum.1) }
    }
}
