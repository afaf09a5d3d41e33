use std::path::Path;
use std::process::ExitCode;

use serde_json::json;

use fuzzysphere::dispersion::{cm_energy, n_particle_energy, plane_wave_energy, ParticleParams};
use fuzzysphere::pinhole::{
    classicality_radius, commutative_limit_check, fringe_visibility, macroscopic_classicality_radius, make_geometry,
    probability, probability_commutative, spatial_density, PinholeGeometry,
};
use fuzzysphere::su2::{Su2Element, WaveVector};

use crate::output::{num, write_report, write_table, CliError, Format, Metadata, Table};
use crate::{GeometryArgs, Mode, Range1d, Units};

const HBAR_SI: f64 = 1.054_571_817e-34;

fn volume(g: &GeometryArgs, geom: &PinholeGeometry<f64>) -> Result<f64, CliError> {
    match g.volume {
        Some(v) if v > 0.0 && v.is_finite() => Ok(v),
        Some(v) => Err(CliError::Domain(format!("volume must be positive, got {v}"))),
        None => Ok(geom.default_volume()),
    }
}

fn geometry_metadata(meta: &mut Metadata, g: &GeometryArgs, v: f64) {
    meta.push("L", num(g.l));
    meta.push("d", num(g.d));
    meta.push("k", num(g.k));
    meta.push("volume", num(v));
}

pub fn pattern(
    g: &GeometryArgs,
    lambda: f64,
    grid_y: Range1d,
    grid_z: Range1d,
    mode: Mode,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let v = volume(g, &make_geometry(g.l, g.d, 0.0, 0.0)?)?;
    let (ys, zs) = (grid_y.values(), grid_z.values());
    let columns = match mode {
        Mode::Nc => vec!["yD", "zD", "P", "spatial_density"],
        Mode::Comm => vec!["yD", "zD", "P_comm"],
        Mode::Both => vec!["yD", "zD", "P", "spatial_density", "P_comm"],
    };
    let mut rows = Vec::with_capacity(ys.len() * zs.len());
    for &z in &zs {
        for &y in &ys {
            let geom = make_geometry(g.l, g.d, y, z)?;
            let mut row = vec![y, z];
            if mode != Mode::Comm {
                let res = probability(&geom, lambda, g.k, v)?;
                row.push(res.p.unwrap_or(f64::NAN));
                row.push(spatial_density(&res, geom.r, lambda));
            }
            if mode != Mode::Nc {
                row.push(probability_commutative(&geom, g.k, v));
            }
            rows.push(row);
        }
    }

    let mut meta = Metadata::default();
    meta.push("command", "pattern");
    geometry_metadata(&mut meta, g, v);
    meta.push("lambda", num(lambda));
    meta.push("mode", format!("{mode:?}").to_lowercase());
    meta.push("grid_y", grid_y);
    meta.push("grid_z", grid_z);
    meta.push("order", "zD-major");
    // A single y line is a zD trace; report its fringe visibility.
    if ys.len() == 1 {
        for (col, name) in columns.iter().enumerate().skip(2) {
            if *name == "P" || *name == "P_comm" {
                let trace: Vec<f64> = rows.iter().map(|r| r[col]).collect();
                let vis = fringe_visibility(&trace).map(num).unwrap_or_else(|e| format!("n/a ({e})"));
                meta.push(&format!("visibility_{name}"), vis);
            }
        }
    }
    write_table(&Table { metadata: meta, columns, rows }, format, out)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn limits(
    g: &GeometryArgs,
    y: f64,
    z: f64,
    ladder: &[f64],
    tol: f64,
    self_check: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    if ladder.len() < 3 {
        return Err(CliError::Usage(format!("ladder needs at least 3 values to judge monotonicity, got {}", ladder.len())));
    }
    let geom = make_geometry(g.l, g.d, y, z)?;
    let v = volume(g, &geom)?;
    let (errors, ratios, decreasing, converged) = if self_check {
        let errors = ladder
            .iter()
            .map(|_| (probability_commutative(&geom, g.k, v) - probability_commutative(&geom, g.k, v)).abs())
            .collect();
        (errors, vec![], true, true)
    } else {
        let rep = commutative_limit_check(&geom, g.k, v, ladder, tol)?;
        (rep.errors, rep.ratios, rep.decreasing, rep.converged)
    };
    let report = json!({
        "command": "limits",
        "L": g.l, "d": g.d, "k": g.k, "yD": y, "zD": z, "volume": v, "tol": tol,
        "self_check": self_check,
        "lambdas": ladder,
        "errors": errors,
        "ratios": ratios,
        "decreasing": decreasing,
        "converged": converged,
    });
    write_report(&report, format, out)?;
    Ok(if converged { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

pub struct ClassicalityArgs {
    pub lambda: f64,
    pub d: f64,
    pub m: f64,
    pub e: Option<f64>,
    pub k: Option<f64>,
    pub n: f64,
    pub hbar: Option<f64>,
    pub r: Option<f64>,
    pub units: Units,
}

pub fn classicality(a: &ClassicalityArgs, format: Format, out: Option<&Path>) -> Result<ExitCode, CliError> {
    let hbar = a.hbar.unwrap_or(match a.units {
        Units::Si => HBAR_SI,
        Units::Natural => 1.0,
    });
    for (name, x) in [("lambda", a.lambda), ("d", a.d), ("m", a.m), ("hbar", hbar)] {
        if !(x > 0.0 && x.is_finite()) {
            return Err(CliError::Usage(format!("--{name} must be positive, got {x}")));
        }
    }
    if !(a.n >= 1.0) {
        return Err(CliError::Usage(format!("--N must be at least 1, got {}", a.n)));
    }
    let e = match (a.e, a.k) {
        (Some(e), _) => e,
        (None, Some(k)) => plane_wave_energy(k, &ParticleParams::new(a.m, hbar, a.lambda)?),
        (None, None) => return Err(CliError::Usage("one of --E or --k is required".into())),
    };
    if !(e > 0.0) {
        return Err(CliError::Usage(format!("energy must be positive, got {e}")));
    }
    let r_max = if a.n == 1.0 {
        classicality_radius(a.lambda, a.d, a.m, e, hbar)
    } else {
        macroscopic_classicality_radius(a.lambda, a.d, a.m, e, a.n, hbar)
    };
    let unit = if a.units == Units::Si { "m" } else { "" };
    let mut report = json!({
        "command": "classicality",
        "lambda": a.lambda, "d": a.d, "m": a.m, "E": e, "N": a.n, "hbar": hbar,
        "units": if a.units == Units::Si { "si" } else { "natural" },
        "r_max": r_max,
        "r_max_order_of_magnitude": format!("1e{}", r_max.log10().floor()),
        "length_unit": unit,
        // The estimate assumes d ≪ r ≪ r_max.
        "validity_window": [a.d, r_max],
        "window_nonempty": r_max > a.d,
    });
    if let Some(k) = a.k {
        report["lambda_k"] = json!(a.lambda * k);
    }
    if let Some(r) = a.r {
        report["r"] = json!(r);
        report["suppressed"] = json!(r < r_max);
        report["r_in_validity_window"] = json!(r > a.d && r < r_max);
    }
    write_report(&report, format, out)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn compose(
    k1: f64,
    dir1: [f64; 3],
    k2: f64,
    dir2: [f64; 3],
    lambda: f64,
    verbose: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let w1 = WaveVector::new(k1, dir1, lambda)?;
    let w2 = WaveVector::new(k2, dir2, lambda)?;
    let (g1, g2) = (Su2Element::from_wavevector(&w1), Su2Element::from_wavevector(&w2));
    let g3 = g1.compose(&g2);
    let aa = g3.axis_angle();
    let mut report = json!({
        "command": "compose",
        "lambda": lambda,
        "kappa1": w1.kappa(), "kappa2": w2.kappa(),
        "kappa3": aa.kappa,
        "k3": aa.kappa / lambda,
        "axis3": aa.axis,
        "degenerate_axis": aa.degenerate,
    });
    if verbose {
        let dev = g3.to_matrix().max_abs_diff(&g1.to_matrix().matmul(&g2.to_matrix()));
        report["matrix_oracle_deviation"] = json!(dev);
    }
    write_report(&report, format, out)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
pub fn energy(
    ks: Option<&[f64]>,
    k_tot: Option<f64>,
    n: usize,
    mass: f64,
    hbar: f64,
    lambda: f64,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    if ks.is_none() && k_tot.is_none() {
        return Err(CliError::Usage("give --k and/or --k-tot".into()));
    }
    let p = ParticleParams::with_count(mass, hbar, lambda, n).map_err(|e| CliError::Usage(e.to_string()))?;
    let single = ParticleParams::new(mass, hbar, lambda)?;
    let mut report = json!({
        "command": "energy",
        "mass": mass, "hbar": hbar, "lambda": lambda, "N": n,
        "E_max": single.max_energy(),
    });
    if let Some(ks) = ks {
        if ks.iter().any(|&k| !(k >= 0.0)) {
            return Err(CliError::Domain("wavenumbers must be non-negative".into()));
        }
        report["k"] = json!(ks);
        report["energies"] = json!(ks.iter().map(|&k| plane_wave_energy(k, &single)).collect::<Vec<_>>());
        report["total_energy"] = json!(n_particle_energy(ks, &single));
    }
    if let Some(kt) = k_tot {
        if !(kt >= 0.0) {
            return Err(CliError::Domain("--k-tot must be non-negative".into()));
        }
        report["k_tot"] = json!(kt);
        report["reduced_lambda"] = json!(p.reduced_lambda());
        report["total_mass"] = json!(p.total_mass());
        report["cm_energy"] = json!(cm_energy(kt, &p));
    }
    write_report(&report, format, out)?;
    Ok(ExitCode::SUCCESS)
}
