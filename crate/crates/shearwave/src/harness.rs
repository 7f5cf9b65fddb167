//! Flat key–value configuration, pipeline dispatch, and artifact output.

use crate::error::{Error, Result};
use crate::field::ModeField;
use crate::functionals;
use crate::grid::YGrid;
use crate::linear::{self, SemigroupOptions};
use crate::multiplier::{self, MultiplierSpec};
use crate::nonlinear::{self, Field2D, NonlinearOptions, ScanOptions};
use crate::profile::{make_profile, ProfileSpec, ShearProfile};
use crate::rayleigh;
use crate::waveop::{self, WaveOperatorContext};
use crate::{fmt17, Complex64};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// `key = value` lines; `#` starts a comment. Each entry keeps its line number.
#[derive(Clone, Debug, Default)]
pub struct Config {
    entries: BTreeMap<String, (String, usize)>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body.split_once('=').ok_or_else(|| Error::Config { line, msg: format!("expected `key = value`, found `{body}`") })?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || k.contains(char::is_whitespace) {
                return Err(Error::Config { line, msg: format!("invalid key `{k}`") });
            }
            if let Some((_, first)) = entries.insert(k.to_string(), (v.to_string(), line)) {
                return Err(Error::Config { line, msg: format!("duplicate key `{k}` (first on line {first})") });
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Set or replace a key; line 0 marks command-line overrides.
    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(key.to_string(), (value.to_string(), 0));
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(v, _)| v.as_str())
    }

    fn parse_value<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.entries.get(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|_| Error::Config { line: *line, msg: format!("cannot parse `{v}` for `{key}`") }),
        }
    }

    pub fn f64_or(&self, key: &str, default: f64) -> Result<f64> {
        Ok(self.parse_value(key)?.unwrap_or(default))
    }

    pub fn usize_or(&self, key: &str, default: usize) -> Result<usize> {
        Ok(self.parse_value(key)?.unwrap_or(default))
    }

    pub fn bool_or(&self, key: &str, default: bool) -> Result<bool> {
        Ok(self.parse_value(key)?.unwrap_or(default))
    }

    /// Comma-separated list of numbers.
    pub fn list_or(&self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.entries.get(key) {
            None => Ok(default.to_vec()),
            Some((v, line)) => v
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Config { line: *line, msg: format!("cannot parse `{s}` in list `{key}`") }))
                .collect(),
        }
    }

    /// `auto` or a number.
    pub fn auto_or(&self, key: &str, auto: f64) -> Result<f64> {
        match self.get_str(key) {
            None | Some("auto") => Ok(auto),
            Some(_) => self.f64_or(key, auto),
        }
    }

    fn line_of(&self, key: &str) -> usize {
        self.entries.get(key).map(|e| e.1).unwrap_or(0)
    }

    /// Canonical text: sorted `key=value` lines.
    pub fn canonical(&self) -> String {
        self.entries.iter().map(|(k, (v, _))| format!("{k}={v}\n")).collect()
    }

    pub fn hash(&self) -> String {
        let d = Sha256::digest(self.canonical().as_bytes());
        d.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// The common fields every pipeline reads.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub profile: ProfileSpec,
    pub grid: YGrid,
    pub ks: Vec<f64>,
    pub nus: Vec<f64>,
    pub c0: f64,
    pub tolerance: f64,
    pub out_dir: PathBuf,
    pub seed: u64,
    pub raw: Config,
}

impl ExperimentConfig {
    pub fn from_config(cfg: Config, base_dir: &Path) -> Result<Self> {
        let l = cfg.f64_or("L", 20.0)?;
        let n = cfg.usize_or("n", 2001)?;
        let grid = YGrid::new(l, n).map_err(|e| Error::Config { line: cfg.line_of("n").max(cfg.line_of("L")), msg: e.to_string() })?;
        let kind = cfg.get_str("profile").unwrap_or("gauss_bump");
        let profile = match kind {
            "couette" => ProfileSpec::Couette,
            "gauss_bump" => ProfileSpec::GaussBump { a: cfg.f64_or("profile_a", 1.0)? },
            "tanh_perturbed" => ProfileSpec::TanhPerturbed { a: cfg.f64_or("profile_a", 0.5)?, w: cfg.f64_or("profile_w", 1.0)? },
            "samples" => {
                let line = cfg.line_of("profile_file");
                let file = cfg.get_str("profile_file").ok_or(Error::Config { line: cfg.line_of("profile"), msg: "samples profile needs `profile_file`".into() })?;
                let path = base_dir.join(file);
                let text = std::fs::read_to_string(&path).map_err(|e| Error::Config { line, msg: format!("{}: {e}", path.display()) })?;
                let b = text
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<f64>().map_err(|_| Error::Config { line, msg: format!("bad sample `{s}`") }))
                    .collect::<Result<Vec<_>>>()?;
                ProfileSpec::Samples { b }
            }
            other => return Err(Error::Config { line: cfg.line_of("profile"), msg: format!("unknown profile `{other}`") }),
        };
        let tolerance = cfg.f64_or("tolerance", 1e-3)?;
        if !(tolerance > 0.0) {
            return Err(Error::Config { line: cfg.line_of("tolerance"), msg: "tolerance must be positive".into() });
        }
        Ok(Self {
            profile,
            grid,
            ks: cfg.list_or("k", &[1.0])?,
            nus: cfg.list_or("nu", &[1e-3])?,
            c0: cfg.f64_or("c0", multiplier::DEFAULT_C0)?,
            tolerance,
            out_dir: PathBuf::from(cfg.get_str("out_dir").unwrap_or("shearwave-out")),
            seed: cfg.usize_or("seed", 7)? as u64,
            raw: cfg,
        })
    }

    pub fn nu(&self) -> f64 {
        self.nus[0]
    }

    pub fn k(&self) -> f64 {
        self.ks[0]
    }

    pub fn make_profile(&self) -> Result<ShearProfile> {
        make_profile(self.profile.clone(), self.grid, self.nu())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pipeline {
    ValidateFlow,
    SolveRayleigh,
    CheckSpectrum,
    BuildWaveop,
    CheckWaveop,
    DumpMultiplier,
    SimulateLinear,
    SimulateNonlinear,
    ScanThreshold,
}

impl Pipeline {
    pub const ALL: [Pipeline; 9] = [
        Pipeline::ValidateFlow,
        Pipeline::SolveRayleigh,
        Pipeline::CheckSpectrum,
        Pipeline::BuildWaveop,
        Pipeline::CheckWaveop,
        Pipeline::DumpMultiplier,
        Pipeline::SimulateLinear,
        Pipeline::SimulateNonlinear,
        Pipeline::ScanThreshold,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Pipeline::ValidateFlow => "validate-flow",
            Pipeline::SolveRayleigh => "solve-rayleigh",
            Pipeline::CheckSpectrum => "check-spectrum",
            Pipeline::BuildWaveop => "build-waveop",
            Pipeline::CheckWaveop => "check-waveop",
            Pipeline::DumpMultiplier => "dump-multiplier",
            Pipeline::SimulateLinear => "simulate-linear",
            Pipeline::SimulateNonlinear => "simulate-nonlinear",
            Pipeline::ScanThreshold => "scan-threshold",
        }
    }

    fn module(&self) -> &'static str {
        match self {
            Pipeline::ValidateFlow => "background_flow",
            Pipeline::SolveRayleigh => "rayleigh_solver",
            Pipeline::CheckSpectrum => "spectral_functionals",
            Pipeline::BuildWaveop | Pipeline::CheckWaveop => "wave_operator",
            Pipeline::DumpMultiplier => "ghost_multiplier",
            Pipeline::SimulateLinear => "linear_dynamics",
            Pipeline::SimulateNonlinear | Pipeline::ScanThreshold => "nonlinear_sim",
        }
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Pipeline::ALL.iter().copied().find(|p| p.name() == s).ok_or_else(|| Error::Config { line: 0, msg: format!("unknown pipeline `{s}`") })
    }
}

/// Files written by one pipeline run and its JSON summary.
#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub dir: PathBuf,
    pub artifacts: Vec<PathBuf>,
    pub summary: Value,
}

/// Failure of a pipeline, tagged with the module it came from.
#[derive(Debug)]
pub struct SuiteError {
    pub module: &'static str,
    pub error: Error,
}

impl SuiteError {
    pub fn exit_code(&self) -> i32 {
        exit_code(&self.error)
    }
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.module, self.error)
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config { .. } | Error::InvalidGrid { .. } => EXIT_CONFIG,
        _ => EXIT_NUMERICAL,
    }
}

/// Cap rayon's pool with SHEARWAVE_THREADS when set.
pub fn init_threads() {
    if let Some(n) = std::env::var("SHEARWAVE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

struct Writer {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Writer {
    fn new(dir: PathBuf) -> Result<Self> {
        std::fs::create_dir_all(&dir)?;
        Ok(Self { dir, files: Vec::new() })
    }

    fn text(&mut self, name: &str, body: &str) -> Result<()> {
        let p = self.dir.join(name);
        std::fs::write(&p, body)?;
        self.files.push(p);
        Ok(())
    }

    fn json(&mut self, name: &str, v: &Value) -> Result<()> {
        self.text(name, &(serde_json::to_string_pretty(v).map_err(|e| Error::Invalid(e.to_string()))? + "\n"))
    }
}

fn csv(header: &str, rows: impl IntoIterator<Item = Vec<f64>>) -> String {
    let mut s = format!("{header}\n");
    for r in rows {
        s.push_str(&r.iter().map(|x| fmt17(*x)).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

fn default_y_grid(p: &ShearProfile, count: usize) -> Vec<f64> {
    let l = 0.5 * p.grid.half_width;
    let count = count.max(2);
    (0..count).map(|i| -l + 2.0 * l * i as f64 / (count - 1) as f64).collect()
}

fn gaussian(grid: &YGrid, center: f64) -> ModeField {
    ModeField::from_real(grid, |y| (-(y - center) * (y - center)).exp())
}

/// Run one pipeline; artifacts land in `<out_dir>/<pipeline>/` with a manifest.
pub fn run_suite(pipeline: Pipeline, cfg: &ExperimentConfig) -> std::result::Result<RunOutcome, SuiteError> {
    let tag = |error: Error| SuiteError { module: pipeline.module(), error };
    let start = Instant::now();
    let mut w = Writer::new(cfg.out_dir.join(pipeline.name())).map_err(tag)?;
    let summary = dispatch(pipeline, cfg, &mut w).map_err(tag)?;
    let manifest = json!({
        "pipeline": pipeline.name(),
        "config_hash": cfg.raw.hash(),
        "config": cfg.raw.canonical(),
        "version": env!("CARGO_PKG_VERSION"),
        "grid": { "L": cfg.grid.half_width, "n": cfg.grid.n, "h": cfg.grid.h },
        "tolerance": cfg.tolerance,
        "seed": cfg.seed,
        "wall_time_s": start.elapsed().as_secs_f64(),
        "measured": summary,
    });
    w.json("manifest.json", &manifest).map_err(tag)?;
    Ok(RunOutcome { dir: w.dir, artifacts: w.files, summary })
}

fn dispatch(pipeline: Pipeline, cfg: &ExperimentConfig, w: &mut Writer) -> Result<Value> {
    let raw = &cfg.raw;
    match pipeline {
        Pipeline::ValidateFlow => {
            let p = cfg.make_profile()?;
            let rep = p.validate_assumptions();
            let kmax = raw.usize_or("kmax", 2)? as u32;
            let ys = raw.list_or("y_grid", &default_y_grid(&p, raw.usize_or("y_count", 9)?))?;
            let spec = functionals::check_spectrum(&p, kmax, &[0.0], &ys)?;
            let all_pass = rep.pass && spec.eigenvalue_free;
            w.text("profile.csv", &p.to_csv())?;
            let v = json!({
                "profile": p.spec.name(),
                "assumptions": rep,
                "delta_min": spec.delta_min,
                "wronskian_min_modulus": spec.wronskian_min_modulus,
                "eigenvalue_free": spec.eigenvalue_free,
                "all_pass": all_pass,
            });
            w.json("report.json", &v)?;
            Ok(v)
        }
        Pipeline::SolveRayleigh => {
            let p = cfg.make_profile()?;
            let k = cfg.k();
            let yc = raw.f64_or("yc", 0.0)?;
            let sol = rayleigh::solve_phi1(&p, k, yc)?;
            let eps = raw.f64_or("eps", 0.0)?;
            let phi2 = if eps > 0.0 { Some(rayleigh::solve_phi2(&sol, eps, raw.f64_or("sign", 1.0)?)?) } else { None };
            let rows = rayleigh::solution_table(&sol, phi2.as_ref());
            w.text("rayleigh.csv", &csv("y,phi1,dphi1,F,re_phi2,im_phi2", rows.iter().map(|r| r.to_vec())))?;
            let v = json!({
                "k": k, "yc": yc, "eps": eps,
                "phi2_iterations": phi2.as_ref().map(|f| f.iterations),
                "phi1_max": sol.phi1().iter().cloned().fold(0.0, f64::max),
            });
            w.json("summary.json", &v)?;
            Ok(v)
        }
        Pipeline::CheckSpectrum => {
            let p = cfg.make_profile()?;
            let kmax = raw.usize_or("kmax", 8)? as u32;
            let s_grid = raw.list_or("s", &[0.0])?;
            let ys = raw.list_or("y_grid", &default_y_grid(&p, raw.usize_or("y_count", 9)?))?;
            let rep = functionals::check_spectrum(&p, kmax, &s_grid, &ys)?;
            w.text("spectrum.csv", &csv("s,k,y_c,J1,J2", rep.rows.iter().map(|r| vec![r.s, r.k, r.y_c, r.j1, r.j2])))?;
            let v = serde_json::to_value(&rep).map_err(|e| Error::Invalid(e.to_string()))?;
            w.json("report.json", &v)?;
            Ok(json!({ "delta_min": rep.delta_min, "wronskian_min_modulus": rep.wronskian_min_modulus, "eigenvalue_free": rep.eigenvalue_free }))
        }
        Pipeline::BuildWaveop => {
            let p = cfg.make_profile()?.evolve_heat(raw.f64_or("s", 0.0)?)?;
            let ctx = WaveOperatorContext::new(&p, cfg.k())?;
            w.text("waveop.csv", &ctx.to_csv())?;
            let v = json!({ "k": cfg.k(), "s": p.s, "stride": ctx.stride, "centers": ctx.centers.len(), "delta_min": ctx.delta_min() });
            w.json("summary.json", &v)?;
            Ok(v)
        }
        Pipeline::CheckWaveop => {
            let p0 = cfg.make_profile()?;
            let p = p0.evolve_heat(raw.f64_or("s", 0.0)?)?;
            let count = raw.usize_or("samples", 5)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut per_k = Vec::new();
            for &k in &cfg.ks {
                let ctx = WaveOperatorContext::new(&p, k)?;
                let mut inter = 0.0f64;
                let mut dual = 0.0f64;
                let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
                for _ in 0..count {
                    let a = ModeField::random_band_limited(&p.grid, &mut rng, 2.0, 2.0);
                    let b = ModeField::random_band_limited(&p.grid, &mut rng, 2.0, 2.0);
                    inter = inter.max(waveop::check_intertwine(&ctx, &a)?);
                    dual = dual.max(waveop::duality_residual(&ctx, &a, &b)?);
                    let r = ctx.apply_d(&a)?.norm() / a.norm();
                    lo = lo.min(r);
                    hi = hi.max(r);
                }
                let com = waveop::commutators(&ctx, &gaussian(&p.grid, 0.0), raw.f64_or("ds", 1.0)?)?;
                per_k.push(json!({
                    "k": k,
                    "intertwine_residual": inter,
                    "duality_residual": dual,
                    "norm_ratio_min": lo,
                    "norm_ratio_max": hi,
                    "delta_min": ctx.delta_min(),
                    "commutators": com,
                }));
            }
            let worst = per_k.iter().map(|v| v["intertwine_residual"].as_f64().unwrap_or(f64::NAN)).fold(0.0, f64::max);
            let v = json!({ "s": p.s, "intertwine_residual": worst, "pass": worst <= cfg.tolerance, "per_k": per_k });
            w.json("report.json", &v)?;
            Ok(v)
        }
        Pipeline::DumpMultiplier => {
            let spec = MultiplierSpec { k: cfg.k(), t: raw.f64_or("t", 0.0)?, nu: cfg.nu(), c0: cfg.c0 };
            if spec.k == 0.0 {
                return Err(Error::ZeroWavenumber);
            }
            let lo = raw.f64_or("eta_min", -50.0)?;
            let hi = raw.f64_or("eta_max", 50.0)?;
            let m = raw.usize_or("eta_count", 1001)?.max(2);
            let rows = (0..m).map(|i| {
                let eta = lo + (hi - lo) * i as f64 / (m - 1) as f64;
                vec![eta, multiplier::eval_a_ring(&spec, eta), multiplier::eval_a(&spec, eta)]
            });
            w.text("multiplier.csv", &csv("eta,a_ring,a", rows))?;
            let v = json!({ "spec": spec, "lower_bound": spec.envelope(), "upper_bound": (2.0 * std::f64::consts::PI + 1.0) * spec.envelope() });
            w.json("summary.json", &v)?;
            Ok(v)
        }
        Pipeline::SimulateLinear => {
            let p = cfg.make_profile()?;
            let (k, nu) = (cfg.k(), cfg.nu());
            let t_end = raw.auto_or("T", 2.0 * nu.powf(-1.0 / 3.0))?;
            let init = initial_mode(raw, &p.grid)?;
            let mut o = SemigroupOptions::new(raw.f64_or("dt", 0.01)?, raw.usize_or("n_out", 40)?);
            if raw.bool_or("a_energy", false)? {
                o.a_energy_c0 = Some(cfg.c0);
            }
            let run = linear::run_semigroup(&init, k, nu, &p, t_end, &o)?;
            w.text("series.csv", &run.to_csv())?;
            let v = json!({
                "k": k, "nu": nu, "T": t_end, "steps": run.steps,
                "decay_rate": run.decay_rate(0.2 * t_end, t_end),
                "decay_rate_over_nu13": run.decay_rate(0.2 * t_end, t_end) / nu.cbrt(),
                "c0_constant": run.weighted_growth(cfg.c0),
                "int_ux2_sq": run.int_ux2_sq,
                "int_dxy_sq": run.int_dxy_sq,
                "int_dx_omega": run.int_dx_omega,
                "fitted_c1": if run.a_energy.is_empty() { None } else { Some(run.fitted_c1()) },
            });
            w.json("summary.json", &v)?;
            Ok(v)
        }
        Pipeline::SimulateNonlinear => {
            let nu = cfg.nu();
            let modes = raw.usize_or("modes", nonlinear::DEFAULT_MODES)?;
            let grid = cfg.grid;
            let p = cfg.make_profile()?;
            let amp = raw.f64_or("amp", 1e-3)?;
            let t_end = raw.auto_or("T", nu.powf(-1.0 / 3.0))?;
            let dt = raw.f64_or("dt", raw.f64_or("cfl", 0.25)? / (modes as f64 * p.max_abs_b()))?;
            let init = Field2D::canonical(grid, modes, nu, amp);
            let mut o = NonlinearOptions::new(dt);
            o.record_every = raw.usize_or("record_every", 10)?;
            if raw.bool_or("sponge", true)? {
                o.sponge = Some(linear::Sponge::standard(grid.half_width));
            }
            let run = nonlinear::run_nonlinear(&init, &p, t_end, &o)?;
            w.text("series.csv", &run.to_csv())?;
            if let Some(msg) = &run.aborted {
                let dump = serde_json::to_value(&run.final_state).map_err(|e| Error::Invalid(e.to_string()))?;
                w.json("state_dump.json", &dump)?;
                return Err(Error::Blowup(msg.clone()));
            }
            // C₁ defaults to the linear constant measured on the same discretization
            let c1 = match raw.get_str("C1") {
                Some(_) => raw.f64_or("C1", 1.0)?,
                None => {
                    let mut lo = o.clone();
                    lo.linear_only = true;
                    let lin = nonlinear::run_nonlinear(&init, &p, t_end, &lo)?;
                    lin.history.iter().map(|s| (cfg.c0 * nu.cbrt() * s.t).exp() * s.omega_hlog).fold(0.0, f64::max) / lin.omega_in_hlog.max(1e-300)
                }
            };
            // `beta` and `eps0` may be lists shared with scan-threshold; the first entry is used
            let beta = raw.list_or("beta", &[0.5])?[0];
            let eps0 = raw.list_or("eps0", &[(run.omega_in_hlog + run.u_in_l2) / nu.powf(beta)])?[0];
            let rep = nonlinear::monitor_bootstrap(&run.history, run.omega_in_hlog, nu, cfg.c0, c1, eps0, beta);
            let v = serde_json::to_value(&rep).map_err(|e| Error::Invalid(e.to_string()))?;
            w.json("bootstrap.json", &v)?;
            Ok(json!({ "all_pass": rep.all_pass(), "c1": c1, "steps": run.steps, "omega_in_hlog": run.omega_in_hlog }))
        }
        Pipeline::ScanThreshold => {
            let p = cfg.make_profile()?;
            let opts = ScanOptions {
                modes: raw.usize_or("modes", 4)?,
                grid: cfg.grid,
                cfl: raw.f64_or("cfl", 0.25)?,
                c0: cfg.c0,
                horizon: raw.f64_or("horizon", 3.0)?,
                sponge: raw.bool_or("sponge", true)?,
            };
            let rows = nonlinear::scan_threshold(&p, &raw.list_or("beta", &[0.5, 0.6])?, &raw.list_or("eps0", &[0.0, 0.1])?, &cfg.nus, &opts)?;
            w.text("scan.csv", &nonlinear::scan_csv(&rows))?;
            let viol = nonlinear::monotonicity_violations(&rows);
            let v = json!({ "rows": rows, "monotonicity_violations": viol });
            w.json("summary.json", &v)?;
            Ok(v)
        }
    }
}

fn initial_mode(raw: &Config, grid: &YGrid) -> Result<ModeField> {
    match raw.get_str("init").unwrap_or("gaussian") {
        "gaussian" => Ok(gaussian(grid, raw.f64_or("init_center", 0.0)?)),
        "wavepacket" => {
            let xi = raw.f64_or("init_freq", 1.0)?;
            Ok(ModeField::from_fn(grid, |y| Complex64::from_polar((-y * y).exp(), xi * y)))
        }
        other => Err(Error::Config { line: raw.line_of("init"), msg: format!("unknown init `{other}`") }),
    }
}
