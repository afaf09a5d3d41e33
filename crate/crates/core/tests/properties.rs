use std::f64::consts::PI;

use num_complex::Complex;
use proptest::prelude::*;

use fuzzysphere::coherent::{mel_monomial, MelContext};
use fuzzysphere::dispersion::{plane_wave_energy, ParticleParams};
use fuzzysphere::pinhole::{make_geometry, probability};
use fuzzysphere::su2::{compose, CoherentPoint, Su2Element, WaveVector};

fn unit(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (n > 1e-3).then(|| [v[0] / n, v[1] / n, v[2] / n])
}

fn element() -> impl Strategy<Value = Su2Element<f64>> {
    (0.0..6.0f64, prop::array::uniform3(-1.0..1.0f64)).prop_filter_map("degenerate direction", |(k, d)| {
        unit(d).map(|dir| Su2Element::from_wavevector(&WaveVector::new(k, dir, 0.5).unwrap()))
    })
}

fn point() -> impl Strategy<Value = CoherentPoint<f64>> {
    (0.0..2.0f64, 0.0..PI, -PI..PI, -PI..PI)
        .prop_map(|(r, t, p, g)| CoherentPoint::from_polar(r, t, p, g, 0.1).unwrap())
}

proptest! {
    #[test]
    fn composition_is_associative(a in element(), b in element(), c in element()) {
        let lhs = compose(&compose(&a, &b), &c).to_matrix();
        let rhs = compose(&a, &compose(&b, &c)).to_matrix();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn inverse_composes_to_identity(a in element()) {
        let id = a.compose(&a.adjoint());
        prop_assert!((id.c - 1.0).abs() < 1e-12);
        prop_assert!(id.axis_angle().degenerate);
    }

    #[test]
    fn plane_waves_preserve_radius(g in element(), z in point()) {
        let w = g.apply_to_coherent(&z);
        prop_assert!((w.big_r() - z.big_r()).abs() < 1e-12 * z.big_r().max(1.0));
    }

    #[test]
    fn monomials_are_hermitian(z1 in point(), z2 in point(), k in 0usize..9) {
        let ctx = MelContext::new(z1, z2);
        let a = mel_monomial(k, &ctx).unwrap();
        let b: Complex<f64> = mel_monomial(k, &ctx.swapped()).unwrap();
        prop_assert!((a - b.conj()).norm() < 1e-12 * a.norm().max(1.0));
    }

    #[test]
    fn dispersion_is_periodic_and_bounded(k in 0.0..100.0f64) {
        let p = ParticleParams::new(1.3, 0.7, 0.25).unwrap();
        let e = plane_wave_energy(k, &p);
        let period = 2.0 * std::f64::consts::PI / 0.25;
        prop_assert!((plane_wave_energy(k + period, &p) - e).abs() < 1e-12 * p.max_energy());
        prop_assert!(e >= 0.0 && e <= p.max_energy() * (1.0 + 1e-15));
    }

    #[test]
    fn probability_is_nonnegative_and_symmetric(
        l in 1.0..100.0f64, d in 0.1..100.0f64, y in -150.0..150.0f64, z in -150.0..150.0f64,
        lambda in 0.02..1.0f64, kappa in 0.01..3.1f64,
    ) {
        let p = |y, z| probability(&make_geometry(l, d, y, z).unwrap(), lambda, kappa / lambda, 1e6).unwrap();
        let base = p(y, z);
        prop_assert!(base.p.unwrap() >= 0.0);
        prop_assert!(base.a <= base.r_big);
        prop_assert!(base.k.norm() <= base.r_big * (1.0 + 1e-10));
        prop_assert_eq!(base.p, p(-y, z).p);
        prop_assert_eq!(base.p, p(y, -z).p);
    }
}
