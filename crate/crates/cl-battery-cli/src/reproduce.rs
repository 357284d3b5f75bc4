//! `reproduce`: figure-style CSV curves.
//!
//! `fig1` sweeps the coupling at ω₀ = 2, ω_c = 4 (Lorentz-Drude) and writes
//! η(γ) and ℰ(γ), one column per temperature. Only T = 0.1 carries
//! prose-anchored expectations; the temperature set is a flag defaulting to
//! 0.1, 0.5, 1.0. `fig2` sweeps the cutoff at ω₀ = 2, T = 0.1 and writes
//! η(ω_c), ℰ(ω_c), and W_c:d(ω_c), one column per coupling.

use crate::{build_spectral_density, CutoffArg, Settings, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};
use clap::{Args, ValueEnum};
use cl_battery::energetics::CycleEnergetics;
use cl_battery::Result as CoreResult;
use rayon::prelude::*;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Figure {
    Fig1,
    Fig2,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    /// Which figure's data to generate
    #[arg(long, value_enum)]
    pub figure: Figure,

    /// Output directory (created if missing)
    #[arg(long)]
    pub out_dir: PathBuf,

    /// fig1: temperature per curve
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.5, 1.0])]
    pub temps: Vec<f64>,

    /// fig2: coupling per curve
    #[arg(long, value_delimiter = ',', default_values_t = vec![5.0, 10.0, 15.0])]
    pub gammas: Vec<f64>,

    /// Grid points per curve
    #[arg(long, default_value_t = 120)]
    pub points: usize,
}

fn log_grid(from: f64, to: f64, n: usize) -> Vec<f64> {
    crate::sweep::grid(from, to, n, crate::sweep::Scale::Log)
}

fn fmt12(v: f64) -> String {
    format!("{v:.11e}")
}

fn write_curve_file(
    path: &Path,
    meta: &[String],
    x_name: &str,
    curve_names: &[String],
    xs: &[f64],
    columns: &[Vec<f64>],
) -> std::io::Result<()> {
    let mut text = String::new();
    for m in meta {
        text.push_str(&format!("# {m}\n"));
    }
    text.push_str(x_name);
    for c in curve_names {
        text.push(',');
        text.push_str(c);
    }
    text.push('\n');
    for (i, &x) in xs.iter().enumerate() {
        text.push_str(&fmt12(x));
        for col in columns {
            text.push(',');
            text.push_str(&fmt12(col[i]));
        }
        text.push('\n');
    }
    std::fs::File::create(path)?.write_all(text.as_bytes())
}

pub fn run(args: &ReproduceArgs, settings: &Settings) -> u8 {
    if args.points < 2 {
        eprintln!("error: need at least 2 grid points");
        return EXIT_USAGE;
    }
    if let Err(e) = std::fs::create_dir_all(&args.out_dir) {
        eprintln!("error: cannot create {}: {e}", args.out_dir.display());
        return EXIT_USAGE;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build()
        .expect("thread pool");

    match args.figure {
        Figure::Fig1 => fig1(args, settings, &pool),
        Figure::Fig2 => fig2(args, settings, &pool),
    }
}

fn compute_curves<F>(
    pool: &rayon::ThreadPool,
    xs: &[f64],
    curves: &[f64],
    eval: F,
) -> Result<Vec<Vec<CycleEnergetics>>, String>
where
    F: Fn(f64, f64) -> CoreResult<CycleEnergetics> + Sync,
{
    let mut out = Vec::new();
    for &c in curves {
        let results: Vec<CoreResult<CycleEnergetics>> =
            pool.install(|| xs.par_iter().map(|&x| eval(c, x)).collect());
        let mut col = Vec::with_capacity(xs.len());
        for (x, r) in xs.iter().zip(results) {
            match r {
                Ok(v) => col.push(v),
                Err(e) => return Err(format!("point {x} on curve {c} failed: {e}")),
            }
        }
        out.push(col);
    }
    Ok(out)
}

fn fig1(args: &ReproduceArgs, settings: &Settings, pool: &rayon::ThreadPool) -> u8 {
    let (omega0, omegac) = (2.0, 4.0);
    let gammas = log_grid(0.05, 50.0, args.points);
    let curves = match compute_curves(pool, &gammas, &args.temps, |temp, gamma| {
        let sd = build_spectral_density(gamma, omega0, omegac, CutoffArg::LorentzDrude)?;
        cl_battery::energetics::cycle_energetics(&sd, temp, &settings.quad)
    }) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_NUMERICAL;
        }
    };

    let meta = vec![
        format!("cl-battery reproduce fig1 v{}", env!("CARGO_PKG_VERSION")),
        format!("fixed: omega0={omega0:e} omegac={omegac:e} cutoff=lorentz-drude"),
        format!(
            "tolerances: rel_tol={:e} abs_tol={:e}",
            settings.quad.rel_tol, settings.quad.abs_tol
        ),
    ];
    let names: Vec<String> = args.temps.iter().map(|t| format!("T={t}")).collect();
    let eta: Vec<Vec<f64>> = curves
        .iter()
        .map(|col| col.iter().map(|c| c.efficiency).collect())
        .collect();
    let erg: Vec<Vec<f64>> = curves
        .iter()
        .map(|col| col.iter().map(|c| c.ergotropy).collect())
        .collect();

    let r1 = write_curve_file(
        &args.out_dir.join("fig1_eta.csv"),
        &meta,
        "gamma",
        &names,
        &gammas,
        &eta,
    );
    let r2 = write_curve_file(
        &args.out_dir.join("fig1_ergotropy.csv"),
        &meta,
        "gamma",
        &names,
        &gammas,
        &erg,
    );
    if let Err(e) = r1.and(r2) {
        eprintln!("error: cannot write fig1 data: {e}");
        return EXIT_NUMERICAL;
    }
    EXIT_OK
}

fn fig2(args: &ReproduceArgs, settings: &Settings, pool: &rayon::ThreadPool) -> u8 {
    let (omega0, temp) = (2.0, 0.1);
    let omegacs = log_grid(0.05, 8.0, args.points);
    let curves = match compute_curves(pool, &omegacs, &args.gammas, |gamma, omegac| {
        let sd = build_spectral_density(gamma, omega0, omegac, CutoffArg::LorentzDrude)?;
        cl_battery::energetics::cycle_energetics(&sd, temp, &settings.quad)
    }) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_NUMERICAL;
        }
    };

    let meta = vec![
        format!("cl-battery reproduce fig2 v{}", env!("CARGO_PKG_VERSION")),
        format!("fixed: omega0={omega0:e} temp={temp:e} cutoff=lorentz-drude"),
        format!(
            "tolerances: rel_tol={:e} abs_tol={:e}",
            settings.quad.rel_tol, settings.quad.abs_tol
        ),
    ];
    let names: Vec<String> = args.gammas.iter().map(|g| format!("gamma={g}")).collect();

    let pick = |f: fn(&CycleEnergetics) -> f64| -> Vec<Vec<f64>> {
        curves
            .iter()
            .map(|col| col.iter().map(f).collect())
            .collect()
    };
    let writes = [
        ("fig2_eta.csv", pick(|c| c.efficiency)),
        ("fig2_ergotropy.csv", pick(|c| c.ergotropy)),
        ("fig2_w_cd.csv", pick(|c| c.w_cd)),
    ];
    for (name, cols) in &writes {
        if let Err(e) = write_curve_file(
            &args.out_dir.join(name),
            &meta,
            "omegac",
            &names,
            &omegacs,
            cols,
        ) {
            eprintln!("error: cannot write {name}: {e}");
            return EXIT_NUMERICAL;
        }
    }
    EXIT_OK
}
