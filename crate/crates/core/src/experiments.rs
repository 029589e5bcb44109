//! Run configuration, Boussinesq-vs-scalar comparisons and μ-sweeps.

use crate::ansatz::{initial_transverse, leading_order_state, KTrajectory, V0Choice};
use crate::boussinesq::{stability_dt, BoussinesqIntegrator, BoussinesqState, BoussinesqStepper};
use crate::error::{Error, Result};
use crate::fit::fit_power_law;
use crate::regimes::{params_for, RegimeKind};
use crate::scalar::{self, stable_dt};
use crate::spectral::{linf_norm, Grid, ScalarField, VectorField2, DEFAULT_BOX};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

/// Safety factor applied to the Boussinesq stability bound.
pub const DT_SAFETY: f64 = 0.5;

/// Target spacing in τ of the stored scalar samples.
pub const TAU_SAMPLE_SPACING: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// `∂x` of a Gaussian, scaled to peak `amplitude`.
    GaussianDx,
    /// `−σ²∂x²` of a Gaussian, peak `amplitude`.
    GaussianDx2,
    /// `a sech²(√(3a)/2 (x − x_c))` with `a = amplitude`, y-independent.
    KdvSoliton,
    /// Soliton whose amplitude varies slowly in y, with each row's x-mean
    /// removed so that it lies in the range of ∂x.
    LineSolitonYModulated,
    /// Random smooth field with no kx = 0 content, seeded.
    RandomDx,
    /// Plain Gaussian (nonzero x-mean).
    Gaussian,
}

impl Profile {
    pub const ALL: [Profile; 6] = [
        Self::GaussianDx,
        Self::GaussianDx2,
        Self::KdvSoliton,
        Self::LineSolitonYModulated,
        Self::RandomDx,
        Self::Gaussian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::GaussianDx => "gaussian_dx",
            Self::GaussianDx2 => "gaussian_dx2",
            Self::KdvSoliton => "kdv_soliton",
            Self::LineSolitonYModulated => "line_soliton_y_modulated",
            Self::RandomDx => "random_dx",
            Self::Gaussian => "gaussian",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Profile {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|p| p.name()).collect();
                Error::Config(format!(
                    "unknown profile '{s}' (expected {})",
                    names.join("|")
                ))
            })
    }
}

/// Initial profile parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileSpec {
    pub profile: Profile,
    pub amplitude: f64,
    pub width: f64,
    pub width_y: f64,
    pub seed: u64,
}

/// Sample a profile centred in the box.
pub fn make_profile(grid: Grid, spec: &ProfileSpec) -> Result<ScalarField> {
    let (a, sx, sy) = (spec.amplitude, spec.width, spec.width_y);
    if !(a.is_finite() && sx > 0.0 && sy > 0.0) {
        return Err(Error::InvalidParameter(
            "profile needs finite amplitude and positive widths".into(),
        ));
    }
    let (cx, cy) = (grid.lx / 2.0, grid.ly / 2.0);
    let gauss = move |x: f64, y: f64| {
        let (dx, dy) = ((x - cx) / sx, (y - cy) / sy);
        (-(dx * dx + dy * dy) / 2.0).exp()
    };
    let soliton = |amp: f64, x: f64| {
        if amp <= 0.0 {
            return 0.0;
        }
        let c = (3.0 * amp).sqrt() / 2.0 * (x - cx);
        amp / c.cosh().powi(2)
    };
    match spec.profile {
        Profile::GaussianDx => {
            ScalarField::from_fn(grid, |x, y| -a * 0.5f64.exp() * (x - cx) / sx * gauss(x, y))
        }
        Profile::GaussianDx2 => ScalarField::from_fn(grid, |x, y| {
            let d = (x - cx) / sx;
            a * (1.0 - d * d) * gauss(x, y)
        }),
        Profile::Gaussian => ScalarField::from_fn(grid, |x, y| a * gauss(x, y)),
        Profile::KdvSoliton => ScalarField::from_fn(grid, |x, _| soliton(a, x)),
        Profile::LineSolitonYModulated => {
            let raw = ScalarField::from_fn(grid, |x, y| {
                let m = 1.0 + 0.25 * (2.0 * std::f64::consts::PI * (y - cy) / grid.ly).cos();
                soliton(a * m / 1.25, x)
            })?;
            let mut v = raw.into_values();
            for row in v.chunks_mut(grid.nx) {
                let mean = row.iter().sum::<f64>() / grid.nx as f64;
                row.iter_mut().for_each(|x| *x -= mean);
            }
            ScalarField::new(grid, v)
        }
        Profile::RandomDx => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut modes = Vec::new();
            for m in 1..=8i32 {
                for n in -8..=8i32 {
                    let (kx, ky) = (
                        2.0 * std::f64::consts::PI * m as f64 / grid.lx,
                        2.0 * std::f64::consts::PI * n as f64 / grid.ly,
                    );
                    let env = (-(kx * kx * sx * sx + ky * ky * sy * sy) / 2.0).exp();
                    let c: f64 = rng.gen_range(-1.0..1.0);
                    let phase: f64 = rng.gen_range(0.0..2.0 * std::f64::consts::PI);
                    modes.push((kx, ky, c * env, phase));
                }
            }
            let raw = ScalarField::from_fn(grid, |x, y| {
                modes
                    .iter()
                    .map(|(kx, ky, c, p)| c * (kx * x + ky * y + p).cos())
                    .sum()
            })?;
            let peak = raw.max_abs();
            if peak == 0.0 {
                return Ok(raw);
            }
            Ok(raw.scaled(a / peak))
        }
    }
}

/// Everything a comparison, sweep or CLI run needs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub regime: RegimeKind,
    pub mu: Vec<f64>,
    pub nx: usize,
    pub ny: usize,
    pub lx: f64,
    pub ly: f64,
    /// Slow-time horizon; physical runs last `t0/μ`.
    pub t0: f64,
    /// Boussinesq step; `None` picks `DT_SAFETY` times the stability bound.
    pub dt: Option<f64>,
    /// Scalar-model step in τ.
    pub scalar_dt: f64,
    pub profile: ProfileSpec,
    /// Comparison samples per run (plus t = 0).
    pub samples: usize,
    pub out: PathBuf,
    pub v0: V0Choice,
    /// General-regime parameters for `solve` with the Boussinesq regime.
    pub eps: Option<f64>,
    pub gamma: Option<f64>,
    pub rot: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            regime: RegimeKind::RKP,
            mu: vec![0.04, 0.02, 0.01],
            nx: 128,
            ny: 128,
            lx: DEFAULT_BOX,
            ly: DEFAULT_BOX,
            t0: 1.0,
            dt: None,
            scalar_dt: 5e-3,
            profile: ProfileSpec {
                profile: Profile::GaussianDx,
                amplitude: 1.0,
                width: 4.0,
                width_y: 4.0,
                seed: 0,
            },
            samples: 20,
            out: PathBuf::from("runs"),
            v0: V0Choice::Auto,
            eps: None,
            gamma: None,
            rot: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::Config(format!("bad value '{v}' for '{key}'")))
}

/// Parse a comma-separated list of μ values.
pub fn parse_mu_list(v: &str) -> Result<Vec<f64>> {
    let out: Vec<f64> = v
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_num("mu", s))
        .collect::<Result<_>>()?;
    if out.is_empty() {
        return Err(Error::Config("empty mu list".into()));
    }
    Ok(out)
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "regime" => self.regime = v.parse()?,
            "mu" => self.mu = parse_mu_list(v)?,
            "nx" => self.nx = parse_num(key, v)?,
            "ny" => self.ny = parse_num(key, v)?,
            "lx" => self.lx = parse_num(key, v)?,
            "ly" => self.ly = parse_num(key, v)?,
            "t0" => self.t0 = parse_num(key, v)?,
            "dt" => self.dt = Some(parse_num(key, v)?),
            "scalar_dt" => self.scalar_dt = parse_num(key, v)?,
            "profile" => self.profile.profile = v.parse()?,
            "amplitude" => self.profile.amplitude = parse_num(key, v)?,
            "width" => self.profile.width = parse_num(key, v)?,
            "width_y" => self.profile.width_y = parse_num(key, v)?,
            "seed" => self.profile.seed = parse_num(key, v)?,
            "samples" => self.samples = parse_num(key, v)?,
            "out" => self.out = PathBuf::from(v),
            "v0" => self.v0 = v.parse()?,
            "eps" => self.eps = Some(parse_num(key, v)?),
            "gamma" => self.gamma = Some(parse_num(key, v)?),
            "rot" => self.rot = Some(parse_num(key, v)?),
            other => return Err(Error::Config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Flat `key = value` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", n + 1)))?;
            cfg.set(k, v)
                .map_err(|e| Error::Config(format!("line {}: {e}", n + 1)))?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config '{}': {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.nx, self.ny, self.lx, self.ly)
    }

    pub fn initial_k(&self) -> Result<ScalarField> {
        make_profile(self.grid()?, &self.profile)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid()?;
        if self.mu.is_empty() {
            return Err(Error::Config("no mu given".into()));
        }
        if !(self.t0 > 0.0 && self.t0.is_finite()) {
            return Err(Error::Config(format!(
                "t0 must be positive, got {}",
                self.t0
            )));
        }
        if !(self.scalar_dt > 0.0) {
            return Err(Error::Config("scalar_dt must be positive".into()));
        }
        if let Some(dt) = self.dt {
            if !(dt > 0.0) {
                return Err(Error::Config("dt must be positive".into()));
            }
        }
        if self.samples == 0 {
            return Err(Error::Config("samples must be >= 1".into()));
        }
        Ok(())
    }
}

/// `μt/(1+t)·(1+√μ t)`.
pub fn error_bound(mu: f64, t: f64) -> f64 {
    mu * t / (1.0 + t) * (1.0 + mu.sqrt() * t)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ErrorSample {
    pub t: f64,
    pub error_linf: f64,
    pub bound: f64,
    /// `error_linf / bound`, 0 where the bound vanishes.
    pub ratio: f64,
}

/// Outcome of one comparison run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub regime: RegimeKind,
    pub mu: f64,
    pub t0: f64,
    pub dt: f64,
    pub samples: Vec<ErrorSample>,
    /// Set when the Boussinesq run stopped early.
    pub partial: bool,
    pub last_valid_time: f64,
    pub failure: Option<String>,
    #[serde(skip)]
    pub runtime_s: f64,
}

impl ErrorReport {
    pub fn end_error(&self) -> f64 {
        self.samples.last().map_or(0.0, |s| s.error_linf)
    }

    pub fn max_ratio(&self) -> f64 {
        self.samples.iter().map(|s| s.ratio).fold(0.0, f64::max)
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(f, "t,error_linf,bound,ratio")?;
        for s in &self.samples {
            writeln!(f, "{},{},{},{}", s.t, s.error_linf, s.bound, s.ratio)?;
        }
        Ok(())
    }
}

/// `run_comparison_at` with the first μ of the config.
pub fn run_comparison(config: &RunConfig) -> Result<ErrorReport> {
    let mu = *config
        .mu
        .first()
        .ok_or_else(|| Error::Config("no mu given".into()))?;
    run_comparison_at(config, mu)
}

/// Solve the regime's scalar model for `τ ∈ [0, t0]` and the Boussinesq
/// system for `t ∈ [0, t0/μ]` from `(k⁰, k⁰, v⁰)`, then record the L∞
/// distance of `(ζ, u)` to the leading-order reconstruction.
pub fn run_comparison_at(config: &RunConfig, mu: f64) -> Result<ErrorReport> {
    config.validate()?;
    let started = Instant::now();
    let regime = config.regime;
    let model = regime.scalar_model().ok_or_else(|| {
        Error::Config("compare needs one of the long-wave regimes rkp|kp|ostrovsky|kdv".into())
    })?;
    let params = params_for(regime, mu)?;
    let grid = config.grid()?;
    let k0 = config.initial_k()?;

    let sdt = config.scalar_dt.min(0.5 * stable_dt(&k0));
    let every = ((TAU_SAMPLE_SPACING / sdt).round() as usize).max(1);
    let k_traj = KTrajectory::from_trajectory(&scalar::solve(&k0, model, config.t0, sdt, every)?);

    let (vh, vo) = initial_transverse(regime, &k0, config.v0)?;
    let s = mu.sqrt();
    let v0 = vh.scaled(s).axpy(mu, &vo)?;
    let state0 = BoussinesqState::new(k0.clone(), VectorField2::new(k0, v0)?, 0.0)?;

    let t_end = config.t0 / mu;
    let limit = stability_dt(&params, &grid);
    let dt_max = match config.dt {
        Some(dt) if dt > limit => {
            return Err(Error::InvalidParameter(format!(
                "dt = {dt} exceeds the stability bound {limit:.4} for mu = {mu}"
            )))
        }
        Some(dt) => dt,
        None => DT_SAFETY * limit,
    };
    let interval = t_end / config.samples as f64;
    let per = (interval / dt_max).ceil().max(1.0) as usize;
    let dt = interval / per as f64;
    let mut integ = BoussinesqIntegrator::new(&state0, BoussinesqStepper::new(params, grid, dt)?)?;

    let measure = |st: &BoussinesqState, t: f64| -> Result<ErrorSample> {
        let lo = leading_order_state(&k_traj, t, mu)?;
        let e = linf_norm(&st.zeta.sub(&lo.zeta)?).max(linf_norm(&st.vbar.u.sub(&lo.vbar.u)?));
        let bound = error_bound(mu, t);
        Ok(ErrorSample {
            t,
            error_linf: e,
            bound,
            ratio: if bound > 0.0 { e / bound } else { 0.0 },
        })
    };
    let mut report = ErrorReport {
        regime,
        mu,
        t0: config.t0,
        dt,
        samples: vec![measure(&state0, 0.0)?],
        partial: false,
        last_valid_time: 0.0,
        failure: None,
        runtime_s: 0.0,
    };
    for j in 1..=config.samples {
        match integ.advance(per) {
            Ok(()) => {}
            Err(e) if e.is_numerical() => {
                report.partial = true;
                report.failure = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
        let t = if j == config.samples {
            t_end
        } else {
            j as f64 * interval
        };
        report.samples.push(measure(&integ.state()?, t)?);
        report.last_valid_time = t;
    }
    report.runtime_s = started.elapsed().as_secs_f64();
    Ok(report)
}

/// Aggregated μ-sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub regime: RegimeKind,
    /// Descending.
    pub mu_list: Vec<f64>,
    /// Exponent p in `E(T_end) ≈ C μ^p` over the complete runs.
    pub slope_p: Option<f64>,
    pub slope_r2: Option<f64>,
    pub slope_stderr: Option<f64>,
    /// `max_μ sup_t ratio / min_μ sup_t ratio` over the complete runs.
    pub max_ratio_spread: Option<f64>,
    /// μ values of runs left out because they stopped early.
    pub excluded_mu: Vec<f64>,
    pub runtimes_s: Vec<f64>,
    #[serde(skip)]
    pub runs: Vec<ErrorReport>,
}

fn check_sweep_mu(mu: &[f64]) -> Result<()> {
    if mu.len() < 3 {
        return Err(Error::Config(format!(
            "a sweep needs at least 3 mu values, got {}",
            mu.len()
        )));
    }
    let mut m = mu.to_vec();
    m.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let q = m[1] / m[0];
    if m.windows(2).any(|w| ((w[1] / w[0]) / q - 1.0).abs() > 1e-6) {
        return Err(Error::Config(
            "sweep mu values must be geometrically spaced".into(),
        ));
    }
    Ok(())
}

/// Run [`run_comparison_at`] for every μ, in parallel when `parallel`.
pub fn sweep_mu_with(config: &RunConfig, parallel: bool) -> Result<SweepReport> {
    config.validate()?;
    check_sweep_mu(&config.mu)?;
    let mut runs: Vec<ErrorReport> = if parallel {
        config
            .mu
            .par_iter()
            .map(|&mu| run_comparison_at(config, mu))
            .collect::<Result<_>>()?
    } else {
        config
            .mu
            .iter()
            .map(|&mu| run_comparison_at(config, mu))
            .collect::<Result<_>>()?
    };
    runs.sort_by(|a, b| b.mu.partial_cmp(&a.mu).unwrap_or(std::cmp::Ordering::Equal));
    let complete: Vec<&ErrorReport> = runs.iter().filter(|r| !r.partial).collect();
    let mus: Vec<f64> = complete.iter().map(|r| r.mu).collect();
    let ends: Vec<f64> = complete.iter().map(|r| r.end_error()).collect();
    let fit = fit_power_law(&mus, &ends);
    let ratios: Vec<f64> = complete.iter().map(|r| r.max_ratio()).collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Ok(SweepReport {
        regime: config.regime,
        mu_list: runs.iter().map(|r| r.mu).collect(),
        slope_p: fit.map(|f| f.slope),
        slope_r2: fit.map(|f| f.r2),
        slope_stderr: fit.map(|f| f.slope_stderr),
        max_ratio_spread: if complete.len() >= 2 && lo > 0.0 {
            Some(hi / lo)
        } else {
            None
        },
        excluded_mu: runs.iter().filter(|r| r.partial).map(|r| r.mu).collect(),
        runtimes_s: runs.iter().map(|r| r.runtime_s).collect(),
        runs,
    })
}

pub fn sweep_mu(config: &RunConfig) -> Result<SweepReport> {
    sweep_mu_with(config, true)
}

impl SweepReport {
    /// `regime,mu,t,error_linf,bound,ratio`, one row per sample.
    pub fn csv(&self) -> String {
        let mut s = String::from("regime,mu,t,error_linf,bound,ratio\n");
        for r in &self.runs {
            for x in &r.samples {
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.regime, r.mu, x.t, x.error_linf, x.bound, x.ratio
                ));
            }
        }
        s
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Write `sweep.csv`, `report.json` and append timing lines to `run.log`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("sweep.csv"), self.csv())?;
        std::fs::write(dir.join("report.json"), self.to_json()?)?;
        let stamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let mut log = std::fs::OpenOptions::new()
            .create(true)
            .append(true)
            .open(dir.join("run.log"))?;
        for r in &self.runs {
            writeln!(
                log,
                "unix={stamp} regime={} mu={} runtime_s={:.3} partial={}",
                r.regime, r.mu, r.runtime_s, r.partial
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_hand_values() {
        assert_eq!(error_bound(0.04, 0.0), 0.0);
        let mu: f64 = 0.04;
        assert!((error_bound(mu, 1.0) - mu / 2.0 * (1.0 + mu.sqrt())).abs() < 1e-16);
    }

    #[test]
    fn config_parse_and_errors() {
        let c = RunConfig::parse(
            "# sweep\nregime = kdv\nmu = 0.04, 0.02,0.01 # list\nnx=64\nprofile = kdv_soliton\n",
        )
        .unwrap();
        assert_eq!(c.regime, RegimeKind::KdV);
        assert_eq!(c.mu, vec![0.04, 0.02, 0.01]);
        assert_eq!(c.nx, 64);
        assert_eq!(c.profile.profile, Profile::KdvSoliton);
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("nx = many").is_err());
        assert!(RunConfig::parse("profile = tophat").is_err());
        assert!(RunConfig::parse("just words").is_err());
    }

    #[test]
    fn profiles_zero_mean_where_promised() {
        let g = Grid::square(64, DEFAULT_BOX).unwrap();
        for p in [
            Profile::GaussianDx,
            Profile::GaussianDx2,
            Profile::LineSolitonYModulated,
            Profile::RandomDx,
        ] {
            let spec = ProfileSpec {
                profile: p,
                amplitude: 1.0,
                width: 4.0,
                width_y: 4.0,
                seed: 7,
            };
            let f = make_profile(g, &spec).unwrap();
            assert!(f.zero_x_mean_defect().1 < 1e-10, "{p}");
        }
        let spec = ProfileSpec {
            profile: Profile::KdvSoliton,
            amplitude: 0.5,
            width: 1.0,
            width_y: 1.0,
            seed: 0,
        };
        assert!((make_profile(g, &spec).unwrap().max_abs() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn random_profile_is_seeded() {
        let g = Grid::square(32, DEFAULT_BOX).unwrap();
        let mut spec = ProfileSpec {
            profile: Profile::RandomDx,
            amplitude: 1.0,
            width: 4.0,
            width_y: 4.0,
            seed: 3,
        };
        let a = make_profile(g, &spec).unwrap();
        let b = make_profile(g, &spec).unwrap();
        assert_eq!(a.values(), b.values());
        spec.seed = 4;
        assert_ne!(a.values(), make_profile(g, &spec).unwrap().values());
    }

    #[test]
    fn sweep_needs_geometric_mu() {
        assert!(check_sweep_mu(&[0.04, 0.02]).is_err());
        assert!(check_sweep_mu(&[0.04, 0.02, 0.015]).is_err());
        assert!(check_sweep_mu(&[0.01, 0.04, 0.02]).is_ok());
    }

    #[test]
    fn zero_data_gives_zero_error() {
        let mut c = RunConfig::default();
        c.nx = 32;
        c.ny = 32;
        c.mu = vec![0.04];
        c.samples = 4;
        c.profile.amplitude = 0.0;
        let r = run_comparison(&c).unwrap();
        assert!(r.samples.iter().all(|s| s.error_linf == 0.0));
        assert_eq!(r.samples.len(), 5);
        assert!((r.samples[4].t - 25.0).abs() < 1e-12);
    }
}
