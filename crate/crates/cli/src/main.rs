//! `fuzzysphere` command-line front end.

// `!(x > 0)` deliberately rejects NaN along with non-positive values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "fuzzysphere", version, about = "Quantum mechanics on the three-dimensional fuzzy sphere")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// `min:max:count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range1d {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Range1d {
    pub fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.min];
        }
        let step = (self.max - self.min) / (self.count - 1) as f64;
        (0..self.count).map(|i| if i + 1 == self.count { self.max } else { self.min + step * i as f64 }).collect()
    }
}

impl std::fmt::Display for Range1d {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", output::num(self.min), output::num(self.max), self.count)
    }
}

fn parse_range(s: &str) -> Result<Range1d, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, count] = parts.as_slice() else {
        return Err(format!("expected min:max:count, got '{s}'"));
    };
    let min: f64 = min.trim().parse().map_err(|e| format!("bad min '{min}': {e}"))?;
    let max: f64 = max.trim().parse().map_err(|e| format!("bad max '{max}': {e}"))?;
    let count: usize = count.trim().parse().map_err(|e| format!("bad count '{count}': {e}"))?;
    if !min.is_finite() || !max.is_finite() {
        return Err("range bounds must be finite".into());
    }
    if count < 2 && !(count == 1 && min == max) {
        return Err("count must be at least 2 (or 1 with min == max)".into());
    }
    if max < min {
        return Err("max must not be below min".into());
    }
    Ok(Range1d { min, max, count })
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let v = s.split(',').map(|x| x.trim().parse::<f64>().map_err(|e| format!("bad number '{x}': {e}"))).collect::<Result<Vec<f64>, _>>()?;
    <[f64; 3]>::try_from(v).map_err(|_| format!("expected three comma-separated numbers, got '{s}'"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Nc,
    Comm,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Units {
    Si,
    Natural,
}

#[derive(Debug, Clone, clap::Args)]
pub struct GeometryArgs {
    /// Barrier-to-screen distance.
    #[arg(long = "L", default_value_t = 70.0)]
    pub l: f64,
    /// Pinhole half-separation.
    #[arg(long, default_value_t = 70.0)]
    pub d: f64,
    /// Wavenumber.
    #[arg(long, default_value_t = 0.22)]
    pub k: f64,
    /// Regularisation volume; defaults to (10 L)³.
    #[arg(long)]
    pub volume: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate P(D) on a screen grid.
    Pattern {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        /// Screen y range.
        #[arg(long = "grid-y", value_parser = parse_range, default_value = "0:0:1", allow_hyphen_values = true)]
        grid_y: Range1d,
        /// Screen z range.
        #[arg(long = "grid-z", value_parser = parse_range, default_value = "-100:100:401", allow_hyphen_values = true)]
        grid_z: Range1d,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Check convergence to the commutative pattern as λ shrinks.
    Limits {
        #[command(flatten)]
        geometry: GeometryArgs,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        z: f64,
        /// Strictly decreasing λ values.
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.05,0.025,0.0125")]
        ladder: Vec<f64>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Compare the commutative density with itself.
        #[arg(long)]
        self_check: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Distance below which interference is suppressed.
    Classicality {
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        d: f64,
        /// Particle mass.
        #[arg(long)]
        m: f64,
        /// Energy per particle.
        #[arg(long = "E", conflicts_with = "k")]
        e: Option<f64>,
        /// Wavenumber; the energy then follows from the fuzzy dispersion.
        #[arg(long, required_unless_present = "e")]
        k: Option<f64>,
        /// Number of particles.
        #[arg(long = "N", default_value_t = 1.0)]
        n: f64,
        /// Defaults to the CODATA value in SI units and 1 otherwise.
        #[arg(long)]
        hbar: Option<f64>,
        /// Observation distance to classify.
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, value_enum, default_value_t = Units::Si)]
        units: Units,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Compose two plane waves.
    Compose {
        #[arg(long)]
        k1: f64,
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        dir1: [f64; 3],
        #[arg(long)]
        k2: f64,
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
        dir2: [f64; 3],
        #[arg(long)]
        lambda: f64,
        /// Also compare with the 2×2 matrix product.
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Plane-wave energies.
    Energy {
        /// Wavenumbers, one per particle.
        #[arg(long, value_delimiter = ',')]
        k: Option<Vec<f64>>,
        /// Total wavenumber of the centre-of-mass mode.
        #[arg(long)]
        k_tot: Option<f64>,
        #[arg(long = "N", default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 1.0)]
        hbar: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Pattern { geometry, lambda, grid_y, grid_z, mode, format, out } => {
            commands::pattern(&geometry, lambda, grid_y, grid_z, mode, format, out.as_deref())
        }
        Command::Limits { geometry, y, z, ladder, tol, self_check, format, out } => {
            commands::limits(&geometry, y, z, &ladder, tol, self_check, format, out.as_deref())
        }
        Command::Classicality { lambda, d, m, e, k, n, hbar, r, units, format, out } => {
            commands::classicality(&commands::ClassicalityArgs { lambda, d, m, e, k, n, hbar, r, units }, format, out.as_deref())
        }
        Command::Compose { k1, dir1, k2, dir2, lambda, verbose, format, out } => {
            commands::compose(k1, dir1, k2, dir2, lambda, verbose, format, out.as_deref())
        }
        Command::Energy { k, k_tot, n, mass, hbar, lambda, format, out } => {
            commands::energy(k.as_deref(), k_tot, n, mass, hbar, lambda, format, out.as_deref())
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
