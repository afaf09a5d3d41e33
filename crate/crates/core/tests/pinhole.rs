use fuzzysphere::dispersion::{plane_wave_energy, ParticleParams};
use fuzzysphere::pinhole::*;

#[test]
fn golden_probability_at_figure_parameters() {
    // tests/oracles/pinhole_golden.py, 40-digit arithmetic
    let golden = 1.520_667_320_718_717_4e-7;
    let g = make_geometry(70.0f64, 70.0, 0.0, 0.0).unwrap();
    let p = probability(&g, 0.1, 0.22, g.default_volume()).unwrap().p.unwrap();
    assert!((p - golden).abs() < 1e-12 * golden, "{p}");
}

#[test]
fn reflections_are_exact() {
    for &(y, z) in &[(0.0, 13.0), (4.0, -60.0), (-25.0, 0.5)] {
        let p = |y, z| probability(&make_geometry(70.0, 70.0, y, z).unwrap(), 0.1, 0.22, 1e6).unwrap().p.unwrap();
        assert_eq!(p(y, z), p(y, -z));
        assert_eq!(p(y, z), p(-y, z));
    }
}

#[test]
fn figure_trace_shows_fringes() {
    let g0 = make_geometry(70.0f64, 70.0, 0.0, 0.0).unwrap();
    let trace: Vec<f64> = (0..401)
        .map(|i| {
            let g = make_geometry(70.0, 70.0, 0.0, -100.0 + 0.5 * i as f64).unwrap();
            probability(&g, 0.1, 0.22, g0.default_volume()).unwrap().p.unwrap()
        })
        .collect();
    let maxima = trace.windows(3).filter(|w| w[1] > w[0] && w[1] > w[2]).count();
    assert!(maxima >= 3);
    assert!(fringe_visibility(&trace).unwrap() > 0.7);
}

#[test]
fn commutative_self_comparison_and_fringe_spacing() {
    let g = make_geometry(70.0, 70.0, 0.0, 5.0).unwrap();
    let v = g.default_volume();
    assert_eq!(probability_commutative(&g, 0.22, v) - probability_commutative(&g, 0.22, v), 0.0);

    // Maxima sit where r k (cos α − cos β) steps by 2π. Expanding in z gives
    // a phase ≈ −2k z d³/ρ³ with ρ² = L² + d², so Δz ≈ π ρ³/(k d³).
    let (l, d, k): (f64, f64, f64) = (70.0, 70.0, 2.0);
    let phase = |z: f64| {
        let g = make_geometry(l, d, 0.0, z).unwrap();
        -g.r * k * (g.cos_alpha - g.cos_beta)
    };
    let root = |target: f64| {
        let (mut lo, mut hi) = (0.0, 50.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if phase(mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    };
    let spacing = root(2.0 * std::f64::consts::PI) - root(0.0);
    let rho = (l * l + d * d).sqrt();
    let small_angle = std::f64::consts::PI * rho.powi(3) / (k * d.powi(3));
    assert!((spacing - small_angle).abs() < 0.01 * small_angle, "{spacing} {small_angle}");
}

#[test]
fn classicality_from_dispersion() {
    let (lambda, m, hbar) = (1e-35f64, 1e-31, 1e-34);
    let p = ParticleParams::new(m, hbar, lambda).unwrap();
    let k = 1e-3 / lambda * 1e-30;
    let e_fuzzy = plane_wave_energy(k, &p);
    let e_free = hbar * hbar * k * k / (2.0 * m);
    let r1 = classicality_radius(lambda, 1e-2, m, e_fuzzy, hbar);
    let r2 = classicality_radius(lambda, 1e-2, m, e_free, hbar);
    assert!((r1 - r2).abs() < 0.01 * r2);
}
