//! `sweep`: evaluate the cycle on a 1-parameter grid and emit CSV.
//!
//! CSV format: UTF-8, LF, `#`-prefixed metadata comments (fixed parameters,
//! cutoff kind, tool version, tolerances, grid description), one header row,
//! 12 significant digits, rows in ascending parameter order. Grid points are
//! evaluated concurrently up to `--jobs`, but rows are written in order, so
//! identical inputs produce byte-identical files.

use crate::config::FileConfig;
use crate::{build_spectral_density, CutoffArg, Settings, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};
use clap::{Args, ValueEnum};
use cl_battery::energetics::{n_copy_energetics, CycleEnergetics};
use cl_battery::Result as CoreResult;
use std::io::Write;
use std::path::PathBuf;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParameter {
    Gamma,
    Omegac,
    Temp,
    Omega0,
    NCopies,
}

impl SweepParameter {
    pub fn column(self) -> &'static str {
        match self {
            SweepParameter::Gamma => "gamma",
            SweepParameter::Omegac => "omegac",
            SweepParameter::Temp => "temp",
            SweepParameter::Omega0 => "omega0",
            SweepParameter::NCopies => "n_copies",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Which parameter to sweep
    #[arg(long, value_enum)]
    pub parameter: SweepParameter,

    #[arg(long)]
    pub from: f64,

    #[arg(long)]
    pub to: f64,

    /// Number of grid points (>= 2)
    #[arg(long)]
    pub points: usize,

    #[arg(long, value_enum, default_value = "linear")]
    pub scale: Scale,

    /// Output CSV path
    #[arg(long)]
    pub out: PathBuf,

    /// Fixed parameters (the swept one is ignored)
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub omega0: Option<f64>,
    #[arg(long)]
    pub omegac: Option<f64>,
    #[arg(long)]
    pub temp: Option<f64>,
    #[arg(long, value_enum)]
    pub cutoff: Option<CutoffArg>,
    #[arg(long)]
    pub n: Option<u32>,
}

pub const ROW_COLUMNS: [&str; 11] = [
    "sigma11",
    "sigma22",
    "w_c",
    "w_d",
    "w_cd",
    "ergotropy",
    "eta",
    "t_sigma",
    "beta_p",
    "sum_rule_1_residual",
    "sum_rule_2_residual",
];

/// The grid values in ascending order.
pub fn grid(from: f64, to: f64, points: usize, scale: Scale) -> Vec<f64> {
    let n = points.max(2);
    (0..n)
        .map(|i| {
            let t = i as f64 / (n - 1) as f64;
            match scale {
                Scale::Linear => from + t * (to - from),
                Scale::Log => (from.ln() + t * (to.ln() - from.ln())).exp(),
            }
        })
        .collect()
}

struct Fixed {
    gamma: f64,
    omega0: f64,
    omegac: f64,
    temp: f64,
    cutoff: CutoffArg,
    n: u32,
}

fn evaluate(fixed: &Fixed, parameter: SweepParameter, value: f64, settings: &Settings) -> CoreResult<CycleEnergetics> {
    let mut gamma = fixed.gamma;
    let mut omega0 = fixed.omega0;
    let mut omegac = fixed.omegac;
    let mut temp = fixed.temp;
    let mut n = fixed.n;
    match parameter {
        SweepParameter::Gamma => gamma = value,
        SweepParameter::Omegac => omegac = value,
        SweepParameter::Temp => temp = value,
        SweepParameter::Omega0 => omega0 = value,
        SweepParameter::NCopies => n = value.round().max(1.0) as u32,
    }
    let sd = build_spectral_density(gamma, omega0, omegac, fixed.cutoff)?;
    n_copy_energetics(&sd, n, temp, &settings.quad)
}

fn fmt12(v: f64) -> String {
    format!("{v:.11e}")
}

pub fn run(args: &SweepArgs, settings: &Settings, file: &FileConfig) -> u8 {
    if !(args.from < args.to) {
        eprintln!("error: sweep needs from < to");
        return EXIT_USAGE;
    }
    if args.points < 2 {
        eprintln!("error: sweep needs at least 2 points");
        return EXIT_USAGE;
    }
    if args.scale == Scale::Log && !(args.from > 0.0) {
        eprintln!("error: log scale needs from > 0");
        return EXIT_USAGE;
    }

    let cutoff = match (&args.cutoff, &file.cutoff) {
        (Some(c), _) => *c,
        (None, Some(name)) => match CutoffArg::parse_name(name) {
            Some(c) => c,
            None => {
                eprintln!("error: unknown cutoff '{name}' in config");
                return EXIT_USAGE;
            }
        },
        (None, None) => CutoffArg::LorentzDrude,
    };
    // the swept parameter's fixed value is a placeholder, never used
    let fixed = Fixed {
        gamma: args.gamma.or(file.gamma).unwrap_or(1.0),
        omega0: args.omega0.or(file.omega0).unwrap_or(1.0),
        omegac: args.omegac.or(file.omegac).unwrap_or(1.0),
        temp: args.temp.or(file.temp).unwrap_or(0.0),
        cutoff,
        n: args.n.or(file.n).unwrap_or(1),
    };

    let mut values = grid(args.from, args.to, args.points, args.scale);
    if args.parameter == SweepParameter::NCopies {
        // the copy count is an integer; report the value actually used
        for v in &mut values {
            *v = v.round().max(1.0);
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build()
        .expect("thread pool");
    let results: Vec<CoreResult<CycleEnergetics>> = pool.install(|| {
        use rayon::prelude::*;
        values
            .par_iter()
            .map(|&v| evaluate(&fixed, args.parameter, v, settings))
            .collect()
    });

    for (value, r) in values.iter().zip(&results) {
        match r {
            Err(e) => {
                eprintln!(
                    "error: grid point {} = {value} failed: {e}",
                    args.parameter.column()
                );
                // no partial output is left behind
                let _ = std::fs::remove_file(&args.out);
                return EXIT_NUMERICAL;
            }
            Ok(c) => {
                if c.t_sigma < -1e-9 * c.w_cd.max(1.0) {
                    eprintln!(
                        "error: grid point {} = {value} violates dissipated-work positivity (T*Sigma = {})",
                        args.parameter.column(),
                        c.t_sigma
                    );
                    let _ = std::fs::remove_file(&args.out);
                    return EXIT_NUMERICAL;
                }
            }
        }
    }

    let mut text = String::new();
    text.push_str(&format!(
        "# cl-battery sweep v{}\n",
        env!("CARGO_PKG_VERSION")
    ));
    text.push_str(&format!(
        "# fixed: gamma={:e} omega0={:e} omegac={:e} temp={:e} cutoff={} n={}\n",
        fixed.gamma,
        fixed.omega0,
        fixed.omegac,
        fixed.temp,
        fixed.cutoff.name(),
        fixed.n
    ));
    text.push_str(&format!(
        "# sweep: parameter={} from={:e} to={:e} points={} scale={}\n",
        args.parameter.column(),
        args.from,
        args.to,
        args.points,
        match args.scale {
            Scale::Linear => "linear",
            Scale::Log => "log",
        }
    ));
    text.push_str(&format!(
        "# tolerances: rel_tol={:e} abs_tol={:e}\n",
        settings.quad.rel_tol, settings.quad.abs_tol
    ));
    text.push_str(args.parameter.column());
    for c in ROW_COLUMNS {
        text.push(',');
        text.push_str(c);
    }
    text.push('\n');

    for (value, r) in values.iter().zip(&results) {
        let c = r.as_ref().expect("failures handled above");
        let cells = [
            *value,
            c.steady.sigma11,
            c.steady.sigma22,
            c.w_c,
            c.w_d,
            c.w_cd,
            c.ergotropy,
            c.efficiency,
            c.t_sigma,
            c.beta_p,
            c.steady.sum_rule_1_residual,
            c.steady.sum_rule_2_residual,
        ];
        let row: Vec<String> = cells.iter().map(|&v| fmt12(v)).collect();
        text.push_str(&row.join(","));
        text.push('\n');
    }

    match std::fs::File::create(&args.out).and_then(|mut f| f.write_all(text.as_bytes())) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: cannot write {}: {e}", args.out.display());
            let _ = std::fs::remove_file(&args.out);
            EXIT_NUMERICAL
        }
    }
}
