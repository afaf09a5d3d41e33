//! Plane-wave dispersion: single particle, N free particles, and the
//! centre-of-mass mode with `M = N m` and `λ̃ = λ/N`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Mass, ħ, λ and particle count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleParams<T> {
    mass: T,
    hbar: T,
    lambda: T,
    n: usize,
}

impl<T: Real> ParticleParams<T> {
    /// A single particle.
    pub fn new(mass: T, hbar: T, lambda: T) -> Result<Self> {
        Self::with_count(mass, hbar, lambda, 1)
    }

    pub fn with_count(mass: T, hbar: T, lambda: T, n: usize) -> Result<Self> {
        for (name, v) in [("mass", mass), ("hbar", hbar), ("lambda", lambda)] {
            if !(v > T::zero()) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        if n == 0 {
            return Err(Error::InvalidParameter("particle count must be at least 1".into()));
        }
        Ok(Self { mass, hbar, lambda, n })
    }

    pub fn mass(&self) -> T {
        self.mass
    }

    pub fn hbar(&self) -> T {
        self.hbar
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn count(&self) -> usize {
        self.n
    }

    /// `M = N m`.
    pub fn total_mass(&self) -> T {
        self.mass * T::from_usize_lossy(self.n)
    }

    /// `λ̃ = λ/N`.
    pub fn reduced_lambda(&self) -> T {
        self.lambda / T::from_usize_lossy(self.n)
    }

    /// `2ħ²/(mλ²)`, the single-particle energy ceiling.
    pub fn max_energy(&self) -> T {
        band_energy(T::one(), self.hbar, self.mass, self.lambda)
    }
}

fn band_energy<T: Real>(sin2: T, hbar: T, mass: T, lambda: T) -> T {
    T::lit(2.0) * hbar * hbar / (mass * lambda * lambda) * sin2
}

fn sin2_half<T: Real>(x: T) -> T {
    let s = (x * T::lit(0.5)).sin();
    s * s
}

/// `(2ħ²/(mλ²)) sin²(kλ/2)`.
pub fn plane_wave_energy<T: Real>(k: T, p: &ParticleParams<T>) -> T {
    band_energy(sin2_half(k * p.lambda), p.hbar, p.mass, p.lambda)
}

/// Sum of single-particle energies.
pub fn n_particle_energy<T: Real>(ks: &[T], p: &ParticleParams<T>) -> T {
    let s = ks.iter().fold(T::zero(), |acc, &k| acc + sin2_half(k * p.lambda));
    band_energy(s, p.hbar, p.mass, p.lambda)
}

/// `(2ħ²/(Mλ̃²)) sin²(k_tot λ̃/2)`.
pub fn cm_energy<T: Real>(k_tot: T, p: &ParticleParams<T>) -> T {
    let lt = p.reduced_lambda();
    band_energy(sin2_half(k_tot * lt), p.hbar, p.total_mass(), lt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockspace::{hamiltonian_interior, plane_wave_operator, FockBasis};
    use crate::su2::WaveVector;
    use std::f64::consts::PI;

    fn params() -> ParticleParams<f64> {
        ParticleParams::new(1.7, 0.9, 0.3).unwrap()
    }

    #[test]
    fn single_particle_band() {
        let p = params();
        assert_eq!(plane_wave_energy(0.0, &p), 0.0);
        let emax = 2.0 * 0.81 / (1.7 * 0.09);
        assert!((plane_wave_energy(PI / 0.3, &p) - emax).abs() < 1e-12 * emax);
        assert!((p.max_energy() - emax).abs() < 1e-12 * emax);
        let period = 2.0 * PI / 0.3;
        let mut last = 0.0;
        for i in 0..=100 {
            let k = i as f64 * 0.01 * PI / 0.3;
            let e = plane_wave_energy(k, &p);
            assert!(e >= last - 1e-15);
            last = e;
            assert!((plane_wave_energy(k + period, &p) - e).abs() < 1e-12 * emax);
            assert!((plane_wave_energy(2.0 * PI / 0.3 - k, &p) - e).abs() < 1e-12 * emax);
        }
    }

    #[test]
    fn matches_fock_laplacian() {
        let (lambda, hbar, mass) = (0.3, 0.9, 1.7);
        let p = ParticleParams::new(mass, hbar, lambda).unwrap();
        let k = 0.7 / lambda;
        let basis = FockBasis::new(40).unwrap();
        let kv = WaveVector::new(k, [0.3, -0.5, 0.8], lambda).unwrap();
        let psi = plane_wave_operator(&kv, basis).unwrap();
        let h = hamiltonian_interior(&psi, lambda, hbar, mass).unwrap();
        let e = plane_wave_energy(k, &p);
        let scaled = psi.scale(e.into()).truncated(basis.cutoff() - 1);
        let diff = h.truncated(basis.cutoff() - 1).max_abs_diff(&scaled);
        assert!(diff < 1e-10 * e, "{diff}");
    }

    #[test]
    fn many_particles() {
        let p = params();
        let k = 2.3;
        assert_eq!(n_particle_energy(&[k], &p), plane_wave_energy(k, &p));
        let e4 = n_particle_energy(&[k; 4], &p);
        assert!((e4 - 4.0 * plane_wave_energy(k, &p)).abs() < 1e-12 * e4);
        let pi = PI / p.lambda();
        assert!((n_particle_energy(&[pi, 0.0], &p) - p.max_energy()).abs() < 1e-12 * p.max_energy());
    }

    #[test]
    fn centre_of_mass() {
        let p1 = params();
        assert!((cm_energy(2.3, &p1) - plane_wave_energy(2.3, &p1)).abs() < 1e-15);
        for n in [2usize, 3, 7, 50] {
            let p = ParticleParams::with_count(1.7, 0.9, 0.3, n).unwrap();
            assert_eq!(p.reduced_lambda() * n as f64, p.lambda());
            assert_eq!(p.total_mass(), n as f64 * p.mass());
            for k_tot in [0.1, 5.0, 40.0] {
                let ks = vec![k_tot / n as f64; n];
                let full = n_particle_energy(&ks, &p);
                assert!((cm_energy(k_tot, &p) - full).abs() <= 1e-12 * full.max(1e-300));
            }
            let k_small = 0.04 / p.reduced_lambda();
            let quad = p.hbar().powi(2) * k_small * k_small / (2.0 * p.total_mass());
            assert!((cm_energy(k_small, &p) - quad).abs() < 0.01 * quad);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ParticleParams::new(0.0, 1.0, 1.0).is_err());
        assert!(ParticleParams::with_count(1.0, 1.0, 1.0, 0).is_err());
        assert!(ParticleParams::new(1.0, f64::NAN, 1.0).is_err());
    }
}
