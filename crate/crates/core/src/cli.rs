//! Command-line front end. Exit status: 0 success, 1 validation or usage
//! error, 2 numerical blow-up.

use crate::ansatz::{residual_eval, transport_growth_probe, AnsatzSetup, KTrajectory, SourceMode};
use crate::boussinesq::{self, stability_dt, BoussinesqState};
use crate::error::{Error, Result};
use crate::experiments::{
    make_profile, parse_mu_list, run_comparison, sweep_mu, Profile, ProfileSpec, RunConfig,
    DT_SAFETY,
};
use crate::regimes::{boussinesq_params, params_for, recommend_model, RegimeKind, ScaleClass};
use crate::scalar::{self, stable_dt};
use crate::spectral::{ScalarField, VectorField2};
use clap::{Args, Parser, Subcommand};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "coriolis-kp",
    about = "Long-wave reductions of the Boussinesq-Coriolis system"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one model: the regime's scalar equation, or the Boussinesq system.
    Solve(Common),
    /// Compare Boussinesq against the scalar reconstruction for one μ.
    Compare(Common),
    /// μ-sweep with slope fit; writes sweep.csv and report.json.
    Sweep(Common),
    /// Residuals of the multiscale ansatz; writes residual.json.
    Residual {
        #[command(flatten)]
        common: Common,
        /// reduced | full
        #[arg(long, default_value = "reduced")]
        source: String,
        /// Scalar model generating k (defaults to the regime's own).
        #[arg(long)]
        k_model: Option<String>,
    },
    /// Transport growth probe; writes probe.csv.
    Probe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        c1: f64,
        #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
        c2: f64,
        /// Profile of the same-speed source, or "zero".
        #[arg(long, default_value = "zero")]
        k1: String,
        /// Profile of the other source, or "zero".
        #[arg(long, default_value = "gaussian_dx")]
        k2: String,
        #[arg(long, default_value_t = 200.0)]
        t_end: f64,
        #[arg(long, default_value_t = 400)]
        steps: usize,
    },
    /// Regime parameters, or the regime recommended for given size classes.
    Regime {
        #[arg(long)]
        regime: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        /// sqrt_mu | mu
        #[arg(long)]
        gamma_class: Option<String>,
        /// sqrt_mu | mu
        #[arg(long)]
        rot_class: Option<String>,
    },
}

#[derive(Args, Debug, Default)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    regime: Option<String>,
    /// One value or a comma-separated list.
    #[arg(long)]
    mu: Option<String>,
    #[arg(long)]
    nx: Option<usize>,
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long)]
    t0: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    profile: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    amplitude: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// auto | balanced | zero
    #[arg(long)]
    v0: Option<String>,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(v) = &self.regime {
            c.regime = v.parse()?;
        }
        if let Some(v) = &self.mu {
            c.mu = parse_mu_list(v)?;
        }
        if let Some(v) = self.nx {
            c.nx = v;
        }
        if let Some(v) = self.ny {
            c.ny = v;
        }
        if let Some(v) = self.t0 {
            c.t0 = v;
        }
        if let Some(v) = self.dt {
            c.dt = Some(v);
        }
        if let Some(v) = &self.out {
            c.out = v.clone();
        }
        if let Some(v) = &self.profile {
            c.profile.profile = v.parse()?;
        }
        if let Some(v) = self.amplitude {
            c.profile.amplitude = v;
        }
        if let Some(v) = self.samples {
            c.samples = v;
        }
        if let Some(v) = self.seed {
            c.profile.seed = v;
        }
        if let Some(v) = &self.v0 {
            c.v0 = v.parse()?;
        }
        c.validate()?;
        Ok(c)
    }
}

fn first_mu(c: &RunConfig) -> f64 {
    c.mu[0]
}

fn solve(c: &RunConfig, out: &mut dyn Write) -> Result<()> {
    std::fs::create_dir_all(&c.out)?;
    let k0 = c.initial_k()?;
    match c.regime.scalar_model() {
        Some(model) => {
            let dt = c.scalar_dt.min(0.5 * stable_dt(&k0));
            let every = ((c.t0 / dt / c.samples as f64).round() as usize).max(1);
            let traj = scalar::solve(&k0, model, c.t0, dt, every)?;
            traj.write_csv(&c.out.join("scalar.csv"))?;
            traj.write_snapshots(&c.out.join("snapshots"))?;
            writeln!(
                out,
                "{model}: tau_end={} steps_dt={:.3e} l2_drift={:.3e} -> {}",
                traj.horizon(),
                traj.dt,
                traj.l2_drift(),
                c.out.display()
            )?;
        }
        None => {
            let mu = first_mu(c);
            let p = boussinesq_params(
                mu,
                c.eps.unwrap_or(mu),
                c.gamma.unwrap_or(1.0),
                c.rot.unwrap_or(0.0),
            )?;
            let dt = c.dt.unwrap_or(DT_SAFETY * stability_dt(&p, k0.grid()));
            let t_end = c.t0 / mu;
            let every = ((t_end / dt / c.samples as f64).round() as usize).max(1);
            let v = VectorField2::new(k0.clone(), ScalarField::zeros(*k0.grid()))?;
            let traj =
                boussinesq::solve(&BoussinesqState::new(k0, v, 0.0)?, &p, t_end, dt, every, 1)?;
            traj.write_csv(&c.out.join("boussinesq.csv"))?;
            traj.write_snapshots(&c.out.join("snapshots"))?;
            writeln!(out, "boussinesq: t_end={t_end} -> {}", c.out.display())?;
        }
    }
    Ok(())
}

fn probe_field(c: &RunConfig, name: &str) -> Result<ScalarField> {
    let g = c.grid()?;
    if name == "zero" {
        return Ok(ScalarField::zeros(g));
    }
    let spec = ProfileSpec {
        profile: name.parse::<Profile>()?,
        ..c.profile
    };
    make_profile(g, &spec)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Solve(common) => solve(&common.config()?, out),
        Command::Compare(common) => {
            let c = common.config()?;
            let r = run_comparison(&c)?;
            std::fs::create_dir_all(&c.out)?;
            r.write_csv(&c.out.join("compare.csv"))?;
            std::fs::write(
                c.out.join("compare.json"),
                serde_json::to_string_pretty(&r)?,
            )?;
            writeln!(
                out,
                "{} mu={} E(T)={:.4e} max_ratio={:.4} partial={}",
                r.regime,
                r.mu,
                r.end_error(),
                r.max_ratio(),
                r.partial
            )?;
            if let Some(reason) = r.failure {
                return Err(Error::PartialRun {
                    last_valid_time: r.last_valid_time,
                    reason,
                });
            }
            Ok(())
        }
        Command::Sweep(common) => {
            let c = common.config()?;
            let r = sweep_mu(&c)?;
            r.write(&c.out)?;
            let fmt = |x: Option<f64>| x.map_or("n/a".to_string(), |v| format!("{v:.4}"));
            writeln!(
                out,
                "{} p={} (±{}) r2={} spread={} -> {}",
                r.regime,
                fmt(r.slope_p),
                fmt(r.slope_stderr),
                fmt(r.slope_r2),
                fmt(r.max_ratio_spread),
                c.out.display()
            )?;
            for mu in &r.excluded_mu {
                writeln!(
                    out,
                    "warning: run at mu={mu} stopped early and was left out of the fit"
                )?;
            }
            Ok(())
        }
        Command::Residual {
            common,
            source,
            k_model,
        } => {
            let c = common.config()?;
            let mu = first_mu(&c);
            let model = match k_model {
                Some(m) => m.parse()?,
                None => c
                    .regime
                    .scalar_model()
                    .ok_or_else(|| Error::Config("residual needs a long-wave regime".into()))?,
            };
            let k0 = c.initial_k()?;
            let dt = c.scalar_dt.min(0.5 * stable_dt(&k0));
            let every = ((0.02 / dt).round() as usize).max(1);
            let traj = KTrajectory::generate(&k0, model, c.t0, dt, every)?;
            let setup =
                AnsatzSetup::with_choice(c.regime, mu, traj, c.v0, source.parse::<SourceMode>()?)?;
            let t_end = setup.time_horizon();
            let times: Vec<f64> = (0..=c.samples)
                .map(|j| t_end * j as f64 / c.samples as f64)
                .collect();
            let r = residual_eval(&setup, &times)?;
            std::fs::create_dir_all(&c.out)?;
            r.write_json(&c.out.join("residual.json"))?;
            writeln!(
                out,
                "{} mu={mu} k from {model}: max targeted L∞={:.3e} reconstruction={:.3e}",
                c.regime,
                r.max_targeted_linf(),
                r.max_reconstruction_error()
            )?;
            Ok(())
        }
        Command::Probe {
            common,
            c1,
            c2,
            k1,
            k2,
            t_end,
            steps,
        } => {
            let c = common.config()?;
            let r = transport_growth_probe(
                c1,
                c2,
                &probe_field(&c, &k1)?,
                &probe_field(&c, &k2)?,
                t_end,
                steps,
            )?;
            std::fs::create_dir_all(&c.out)?;
            r.write_csv(&c.out.join("probe.csv"))?;
            let (slope, r2) = r.fit.map_or((f64::NAN, f64::NAN), |f| (f.slope, f.r2));
            writeln!(
                out,
                "sup[0,{}]={:.4e} sup[0,{}]={:.4e} slope={slope:.4e} r2={r2:.4}",
                t_end / 10.0,
                r.sup_until(t_end / 10.0),
                t_end,
                r.sup_until(t_end),
            )?;
            Ok(())
        }
        Command::Regime {
            regime,
            mu,
            gamma_class,
            rot_class,
        } => {
            if let (Some(g), Some(r)) = (&gamma_class, &rot_class) {
                let kind = recommend_model(g.parse::<ScaleClass>()?, r.parse::<ScaleClass>()?);
                writeln!(out, "{kind}")?;
                return Ok(());
            }
            let regime: RegimeKind = regime
                .ok_or_else(|| {
                    Error::Config("regime needs --regime, or --gamma-class and --rot-class".into())
                })?
                .parse()?;
            let mu = parse_mu_list(mu.as_deref().unwrap_or("0.04"))?;
            for m in mu {
                let p = params_for(regime, m)?;
                writeln!(out, "ε={} γ={} rot={}", p.eps, p.gamma, p.rot)?;
            }
            Ok(())
        }
    }
}

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numerical() {
                2
            } else {
                1
            }
        }
    }
}
