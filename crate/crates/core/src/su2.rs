//! Plane waves as SU(2) elements.
//!
//! A plane wave `exp(i k·x̂)` on the fuzzy sphere is represented by the group
//! element `cos κ + i sin κ k̂·σ` with `κ = λk`. Elements are stored as the
//! quaternion pair `(c, s)` and composed in closed form.

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::scalar::Real;

pub type Vec3<T> = [T; 3];

#[inline]
pub fn dot<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross<T: Real>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

#[inline]
pub fn norm<T: Real>(a: &Vec3<T>) -> T {
    dot(a, a).sqrt()
}

#[inline]
fn scale<T: Real>(a: &Vec3<T>, s: T) -> Vec3<T> {
    [a[0] * s, a[1] * s, a[2] * s]
}

#[inline]
fn canonical_z<T: Real>() -> Vec3<T> {
    [T::zero(), T::zero(), T::one()]
}

/// Rotates `v` by `angle` about the unit vector `axis` (Rodrigues).
pub fn rotate_vector<T: Real>(v: &Vec3<T>, axis: &Vec3<T>, angle: T) -> Vec3<T> {
    let (s, c) = angle.sin_cos();
    let kxv = cross(axis, v);
    let kdv = dot(axis, v);
    let mut out = [T::zero(); 3];
    for i in 0..3 {
        out[i] = v[i] * c + kxv[i] * s + axis[i] * kdv * (T::one() - c);
    }
    out
}

/// A momentum `k·k̂` together with the non-commutative length `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector<T> {
    k: T,
    dir: Vec3<T>,
    lambda: T,
}

impl<T: Real> WaveVector<T> {
    /// `dir` need not be normalized. It is ignored when `k == 0`.
    pub fn new(k: T, dir: Vec3<T>, lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        if !(k >= T::zero()) || !k.is_finite() {
            return Err(Error::InvalidParameter(format!("k must be non-negative, got {k}")));
        }
        if k == T::zero() {
            return Ok(Self { k, dir: canonical_z(), lambda });
        }
        let n = norm(&dir);
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidParameter("direction must be a non-zero finite vector".into()));
        }
        Ok(Self { k, dir: scale(&dir, T::one() / n), lambda })
    }

    /// From a Cartesian momentum vector.
    pub fn from_vector(kvec: Vec3<T>, lambda: T) -> Result<Self> {
        Self::new(norm(&kvec), kvec, lambda)
    }

    pub fn k(&self) -> T {
        self.k
    }

    pub fn dir(&self) -> Vec3<T> {
        self.dir
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// Dimensionless `κ = λk`.
    pub fn kappa(&self) -> T {
        self.lambda * self.k
    }

    pub fn vector(&self) -> Vec3<T> {
        scale(&self.dir, self.k)
    }
}

/// Axis-angle view of a group element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisAngle<T> {
    /// `κ ∈ [0, π]`.
    pub kappa: T,
    pub axis: Vec3<T>,
    /// Set when `|sin κ|` is below the axis tolerance; `axis` is then `ẑ`.
    pub degenerate: bool,
}

/// `c·I + i s·σ` with `c² + |s|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Element<T> {
    pub c: T,
    pub s: Vec3<T>,
}

impl<T: Real> Su2Element<T> {
    pub fn identity() -> Self {
        Self { c: T::one(), s: [T::zero(); 3] }
    }

    /// Normalizes `(c, s)` onto the unit quaternion sphere.
    pub fn new(c: T, s: Vec3<T>) -> Result<Self> {
        let n = (c * c + dot(&s, &s)).sqrt();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidParameter("zero or non-finite quaternion".into()));
        }
        Ok(Self { c: c / n, s: scale(&s, T::one() / n) })
    }

    pub fn from_wavevector(kv: &WaveVector<T>) -> Self {
        let (sk, ck) = kv.kappa().sin_cos();
        Self { c: ck, s: scale(&kv.dir(), sk) }
    }

    /// `exp(-i φ/2 u·σ)`, which conjugates `k̂·σ` into `(R_u(φ) k̂)·σ`.
    pub fn rotation(axis: &Vec3<T>, angle: T) -> Result<Self> {
        let n = norm(axis);
        if !(n > T::zero()) {
            return Err(Error::InvalidParameter("rotation axis must be non-zero".into()));
        }
        let half = angle * T::lit(0.5);
        Ok(Self { c: half.cos(), s: scale(axis, -half.sin() / n) })
    }

    pub fn adjoint(&self) -> Self {
        Self { c: self.c, s: scale(&self.s, -T::one()) }
    }

    pub fn norm_deviation(&self) -> T {
        (self.c * self.c + dot(&self.s, &self.s) - T::one()).abs()
    }

    pub fn axis_angle(&self) -> AxisAngle<T> {
        let sn = norm(&self.s);
        let kappa = sn.atan2(self.c);
        if sn < T::axis_tol() {
            AxisAngle { kappa, axis: canonical_z(), degenerate: true }
        } else {
            AxisAngle { kappa, axis: scale(&self.s, T::one() / sn), degenerate: false }
        }
    }

    /// The wavevector in `[0, π/λ]` represented by this element.
    pub fn to_wavevector(&self, lambda: T) -> Result<WaveVector<T>> {
        let aa = self.axis_angle();
        WaveVector::new(aa.kappa / lambda, aa.axis, lambda)
    }

    pub fn to_matrix(&self) -> CMatrix<T> {
        let [s1, s2, s3] = self.s;
        let c = self.c;
        CMatrix::from_row_major(
            2,
            2,
            vec![Complex::new(c, s3), Complex::new(s2, s1), Complex::new(-s2, s1), Complex::new(c, -s3)],
        )
    }

    /// `self · other`, renormalized.
    pub fn compose(&self, other: &Self) -> Self {
        let c = self.c * other.c - dot(&self.s, &other.s);
        let x = cross(&self.s, &other.s);
        let mut s = [T::zero(); 3];
        for i in 0..3 {
            s[i] = self.c * other.s[i] + other.c * self.s[i] - x[i];
        }
        let n = (c * c + dot(&s, &s)).sqrt();
        Self { c: c / n, s: scale(&s, T::one() / n) }
    }

    /// `self · g · self†`
    pub fn conjugate(&self, g: &Self) -> Self {
        self.compose(g).compose(&self.adjoint())
    }

    /// Multiplies the coherent amplitudes by the 2×2 matrix of `self`.
    pub fn apply_to_coherent(&self, z: &CoherentPoint<T>) -> CoherentPoint<T> {
        let m = self.to_matrix();
        let v = m.matvec(&[z.z1, z.z2]);
        CoherentPoint { z1: v[0], z2: v[1], lambda: z.lambda }
    }
}

pub fn su2_from_wavevector<T: Real>(kv: &WaveVector<T>) -> Su2Element<T> {
    Su2Element::from_wavevector(kv)
}

pub fn compose<T: Real>(g1: &Su2Element<T>, g2: &Su2Element<T>) -> Su2Element<T> {
    g1.compose(g2)
}

/// Whether two plane waves are the same operator.
pub fn plane_waves_equal<T: Real>(kv1: &WaveVector<T>, kv2: &WaveVector<T>) -> Result<bool> {
    if kv1.lambda() != kv2.lambda() {
        return Err(Error::LambdaMismatch(kv1.lambda().to_f64_lossy(), kv2.lambda().to_f64_lossy()));
    }
    let a = Su2Element::from_wavevector(kv1).to_matrix();
    let b = Su2Element::from_wavevector(kv2).to_matrix();
    Ok(a.max_abs_diff(&b) < T::structural_tol())
}

/// Pauli matrices σ₁, σ₂, σ₃.
pub fn pauli<T: Real>() -> [CMatrix<T>; 3] {
    let (o, z, i) = (Complex::one(), Complex::zero(), Complex::i());
    [
        CMatrix::from_row_major(2, 2, vec![z, o, o, z]),
        CMatrix::from_row_major(2, 2, vec![z, -i, i, z]),
        CMatrix::from_row_major(2, 2, vec![o, z, z, -o]),
    ]
}

/// Coherent-state amplitudes `(z₁, z₂)` encoding a point of space.
///
/// `z₁ = √R cos(θ/2) e^{-iφ/2} e^{iγ}`, `z₂ = √R sin(θ/2) e^{iφ/2} e^{iγ}`
/// with `R = r/λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentPoint<T> {
    pub z1: Complex<T>,
    pub z2: Complex<T>,
    pub lambda: T,
}

impl<T: Real> CoherentPoint<T> {
    pub fn from_amplitudes(z1: Complex<T>, z2: Complex<T>, lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self { z1, z2, lambda })
    }

    pub fn from_polar(r: T, theta: T, phi: T, gamma: T, lambda: T) -> Result<Self> {
        if !(lambda > T::zero()) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        if !(r >= T::zero()) {
            return Err(Error::InvalidParameter(format!("radius must be non-negative, got {r}")));
        }
        let half = T::lit(0.5);
        let sq = (r / lambda).sqrt();
        let z1 = Complex::from_polar(sq * (theta * half).cos(), gamma - phi * half);
        let z2 = Complex::from_polar(sq * (theta * half).sin(), gamma + phi * half);
        Ok(Self { z1, z2, lambda })
    }

    /// Encodes a Cartesian position with zero global phase.
    pub fn from_position(x: Vec3<T>, lambda: T) -> Result<Self> {
        let r = norm(&x);
        let theta = if r > T::zero() { (x[2] / r).max(-T::one()).min(T::one()).acos() } else { T::zero() };
        let phi = x[1].atan2(x[0]);
        Self::from_polar(r, theta, phi, T::zero(), lambda)
    }

    /// Dimensionless radius `R = |z₁|² + |z₂|²`.
    pub fn big_r(&self) -> T {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn r(&self) -> T {
        self.lambda * self.big_r()
    }

    pub fn theta(&self) -> T {
        T::lit(2.0) * self.z2.norm().atan2(self.z1.norm())
    }

    /// Azimuth in `(-π, π]`; zero when either amplitude vanishes.
    pub fn phi(&self) -> T {
        if self.z1.is_zero() || self.z2.is_zero() {
            return T::zero();
        }
        (self.z2 / self.z1).arg()
    }

    /// Global phase, defined up to the sign ambiguity of the half angles.
    pub fn gamma(&self) -> T {
        if self.z1.is_zero() {
            return self.z2.arg() - self.phi() * T::lit(0.5);
        }
        self.z1.arg() + self.phi() * T::lit(0.5)
    }

    /// `⟨z| x̂ |z⟩ = λ z†σz`.
    pub fn position(&self) -> Vec3<T> {
        let p = self.z1.conj() * self.z2;
        let two = T::lit(2.0);
        [
            self.lambda * two * p.re,
            self.lambda * two * p.im,
            self.lambda * (self.z1.norm_sqr() - self.z2.norm_sqr()),
        ]
    }

    /// `z̄₁ᵃ z₂ᵃ`, the kernel appearing in coherent overlaps.
    pub fn kernel(&self, other: &Self) -> Complex<T> {
        self.z1.conj() * other.z1 + self.z2.conj() * other.z2
    }

    /// `⟨self | other⟩ = exp(-(R₁+R₂)/2 + z̄₁·z₂)`.
    pub fn overlap(&self, other: &Self) -> Complex<T> {
        let half = T::lit(0.5);
        (self.kernel(other) - Complex::from(half * (self.big_r() + other.big_r()))).exp()
    }
}
