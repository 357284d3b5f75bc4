//! `point`: one steady cycle, all fields printed.

use crate::config::FileConfig;
use crate::{build_spectral_density, exit_code_for, CutoffArg, Settings, EXIT_OK, EXIT_USAGE};
use clap::Args;
use cl_battery::energetics::{n_copy_energetics, CycleEnergetics};
use serde::Serialize;

#[derive(Args, Debug)]
pub struct PointArgs {
    /// Dimensionless coupling γ
    #[arg(long)]
    pub gamma: Option<f64>,

    /// Oscillator frequency ω₀
    #[arg(long)]
    pub omega0: Option<f64>,

    /// Cutoff frequency ω_c
    #[arg(long)]
    pub omegac: Option<f64>,

    /// Bath temperature T
    #[arg(long)]
    pub temp: Option<f64>,

    /// Cutoff function
    #[arg(long, value_enum)]
    pub cutoff: Option<CutoffArg>,

    /// Number of identical oscillators on the common bath
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Debug, Clone, Copy)]
pub struct PointParams {
    pub gamma: f64,
    pub omega0: f64,
    pub omegac: f64,
    pub temp: f64,
    pub cutoff: CutoffArg,
    pub n: u32,
}

pub fn merge_params(args: &PointArgs, file: &FileConfig) -> Result<PointParams, String> {
    let cutoff = match (&args.cutoff, &file.cutoff) {
        (Some(c), _) => *c,
        (None, Some(name)) => CutoffArg::parse_name(name)
            .ok_or_else(|| format!("unknown cutoff '{name}' in config"))?,
        (None, None) => CutoffArg::LorentzDrude,
    };
    let need = |v: Option<f64>, f: Option<f64>, name: &str| {
        v.or(f).ok_or_else(|| format!("missing --{name}"))
    };
    Ok(PointParams {
        gamma: need(args.gamma, file.gamma, "gamma")?,
        omega0: need(args.omega0, file.omega0, "omega0")?,
        omegac: need(args.omegac, file.omegac, "omegac")?,
        temp: need(args.temp, file.temp, "temp")?,
        cutoff,
        n: args.n.or(file.n).unwrap_or(1),
    })
}

#[derive(Serialize)]
struct PointReport<'a> {
    gamma: f64,
    omega0: f64,
    omegac: f64,
    temp: f64,
    cutoff: &'a str,
    n: u32,
    #[serde(flatten)]
    cycle: &'a CycleEnergetics,
}

pub fn run(args: &PointArgs, settings: &Settings, file: &FileConfig) -> u8 {
    let params = match merge_params(args, file) {
        Ok(p) => p,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_USAGE;
        }
    };

    let sd = match build_spectral_density(params.gamma, params.omega0, params.omegac, params.cutoff)
    {
        Ok(sd) => sd,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };

    let cycle = match n_copy_energetics(&sd, params.n, params.temp, &settings.quad) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };

    if settings.json {
        let report = PointReport {
            gamma: params.gamma,
            omega0: params.omega0,
            omegac: params.omegac,
            temp: params.temp,
            cutoff: params.cutoff.name(),
            n: params.n,
            cycle: &cycle,
        };
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print_human(&params, &cycle);
    }
    EXIT_OK
}

fn print_human(p: &PointParams, c: &CycleEnergetics) {
    println!(
        "parameters   gamma = {} (n = {}), omega0 = {}, omegac = {}, T = {}, cutoff = {}",
        p.gamma, p.n, p.omega0, p.omegac, p.temp, p.cutoff.name()
    );
    println!("steady state");
    println!(
        "  sigma11 = {:.12e}   (quadrature error {:.2e})",
        c.steady.sigma11, c.steady.err11
    );
    println!(
        "  sigma22 = {:.12e}   (quadrature error {:.2e})",
        c.steady.sigma22, c.steady.err22
    );
    println!(
        "  sum-rule residuals: {:.3e}, {:.3e}",
        c.steady.sum_rule_1_residual, c.steady.sum_rule_2_residual
    );
    println!("cycle energetics");
    println!("  W_c        = {:.12e}", c.w_c);
    println!("  W_d        = {:.12e}", c.w_d);
    println!("  W_c:d      = {:.12e}", c.w_cd);
    println!("  ergotropy  = {:.12e}", c.ergotropy);
    println!("  efficiency = {:.12e}", c.efficiency);
    println!("  T*Sigma    = {:.12e}", c.t_sigma);
    println!("  beta_p     = {:.12e}", c.beta_p);
}
