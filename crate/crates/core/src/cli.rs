//! Configuration-driven front end. Each command reads one JSON document,
//! lets `--key value` flags override its top-level keys, and writes a
//! `manifest.json` plus CSV artifacts into the output directory.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::field::{write_boundary_csv, write_field_csv, BoundaryCurve, ScalarField};
use crate::minimizer::{
    bernoulli_residual, el_residual, lambda_sweep, minimize_with, MinimizeOptions, MinimizeResult,
    RadialGridProblem, SweepOrder, WARM_START_SMOOTHING,
};
use crate::quadrature::{radial_quadrature_domain, residual_report};
use crate::radial::{
    check_admissibility, frequency_constant, frequency_threshold, mass_constant, mass_threshold,
    mollified_chain, null_quadrature_radii, radial_solve, GProfile, RadialParams,
};
use crate::scattering::{
    build_contrast, incident_field, jump_relation_check, nonradiating_residual,
};
use crate::{Error, Result};

pub const ENV_OUT: &str = "QUADFORGE_OUT";
const DEFAULT_OUT: &str = "quadforge-out";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NO_CONVERGE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Radial,
    Thresholds,
    Minimize,
    Verify,
    Nonscatter,
    SweepLambda,
    NullRadii,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Radial => "radial",
            Command::Thresholds => "thresholds",
            Command::Minimize => "minimize",
            Command::Verify => "verify",
            Command::Nonscatter => "nonscatter",
            Command::SweepLambda => "sweep-lambda",
            Command::NullRadii => "null-radii",
        }
    }
}

/// Any other `--key value` pair overrides the config key `key` (dashes read
/// as underscores); values parse as JSON when possible, else as strings.
#[derive(Debug, Parser)]
#[command(
    name = "quadforge",
    version,
    about = "Hybrid Helmholtz quadrature domains"
)]
struct Args {
    command: Command,
    /// JSON config document.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory; defaults to $QUADFORGE_OUT, then ./quadforge-out.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    seed: Option<u64>,
}

const KNOWN_FLAGS: [&str; 4] = ["--config", "--out", "--threads", "--seed"];

/// Splits argv into the arguments clap owns and the config overrides.
fn split_overrides(
    argv: Vec<String>,
) -> std::result::Result<(Vec<String>, Vec<(String, Value)>), String> {
    let mut known = Vec::new();
    let mut overrides = Vec::new();
    let mut it = argv.into_iter();
    known.extend(it.next());
    while let Some(arg) = it.next() {
        let Some(body) = arg.strip_prefix("--") else {
            known.push(arg);
            continue;
        };
        let (key, inline) = match body.split_once('=') {
            Some((k, v)) => (k.to_string(), Some(v.to_string())),
            None => (body.to_string(), None),
        };
        if key.is_empty()
            || KNOWN_FLAGS.contains(&format!("--{key}").as_str())
            || key == "help"
            || key == "version"
        {
            known.push(arg);
            if inline.is_none() && key != "help" && key != "version" && !key.is_empty() {
                known.extend(it.next());
            }
            continue;
        }
        let raw = match inline {
            Some(v) => v,
            None => it
                .next()
                .ok_or_else(|| format!("override --{key} needs a value"))?,
        };
        let value = serde_json::from_str(&raw).unwrap_or(Value::String(raw));
        overrides.push((key.replace('-', "_"), value));
    }
    Ok((known, overrides))
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_non_convergence() || matches!(err, Error::PositivityLost(_)) {
        EXIT_NO_CONVERGE
    } else {
        EXIT_VALIDATION
    }
}

/// Parses argv, runs the command and returns the process exit status.
pub fn run(argv: Vec<String>) -> i32 {
    let (known, overrides) = match split_overrides(argv) {
        Ok(split) => split,
        Err(msg) => {
            eprintln!("error: {msg}");
            return EXIT_VALIDATION;
        }
    };
    let args = match Args::try_parse_from(known) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_VALIDATION
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return code;
        }
    };
    let out = args
        .out
        .clone()
        .or_else(|| std::env::var_os(ENV_OUT).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
    let outcome =
        load_config(args.config.as_deref(), args.command, &overrides).and_then(|config| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(args.threads.max(1))
                .build()
                .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
            pool.install(|| execute(args.command, config, &out, args.threads.max(1), args.seed))
        });
    match outcome {
        Ok(summary) => {
            println!("{summary}");
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn load_config(
    path: Option<&Path>,
    command: Command,
    overrides: &[(String, Value)],
) -> Result<Map<String, Value>> {
    let mut config = match path {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| {
                Error::InvalidParams(format!("config {} is not readable: {e}", path.display()))
            })?;
            match serde_json::from_str(&text)? {
                Value::Object(map) => map,
                _ => return Err(Error::InvalidParams("config must be a JSON object".into())),
            }
        }
        None => Map::new(),
    };
    for (key, value) in overrides {
        config.insert(key.clone(), value.clone());
    }
    if let Some(named) = config.remove("command") {
        if named.as_str() != Some(command.name()) {
            return Err(Error::InvalidParams(format!(
                "config names command {named} but {} was invoked",
                command.name()
            )));
        }
    }
    Ok(config)
}

fn parse<T: DeserializeOwned>(config: Map<String, Value>) -> Result<T> {
    serde_json::from_value(Value::Object(config))
        .map_err(|e| Error::InvalidParams(format!("config: {e}")))
}

/// Runs `command` and writes its artifacts into `out`. Returns the text
/// printed on success.
pub fn execute(
    command: Command,
    mut config: Map<String, Value>,
    out: &Path,
    threads: usize,
    seed: Option<u64>,
) -> Result<String> {
    let seed = match config.remove("seed") {
        Some(v) => Some(
            v.as_u64()
                .ok_or_else(|| Error::InvalidParams(format!("seed must be an integer, got {v}")))?,
        ),
        None => None,
    }
    .or(seed);
    let start = Instant::now();
    let mut writer = Artifacts::new(out)?;
    let (inputs, values) = match command {
        Command::Radial => radial(parse(config)?, &mut writer)?,
        Command::Thresholds => thresholds(parse(config)?)?,
        Command::Minimize => minimize(parse(config)?, &mut writer)?,
        Command::Verify => verify(parse(config)?, &mut writer)?,
        Command::Nonscatter => nonscatter(parse(config)?, &mut writer)?,
        Command::SweepLambda => sweep(parse(config)?, &mut writer)?,
        Command::NullRadii => null_radii(parse(config)?, &mut writer)?,
    };
    let manifest = json!({
        "command": command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "seed": seed,
        "threads": threads,
        "inputs": inputs,
        "values": values,
        "artifacts": writer.files,
    });
    writer.json("manifest.json", &manifest)?;
    let timing = json!({ "wall_seconds": start.elapsed().as_secs_f64() });
    fs::write(
        out.join("timing.json"),
        serde_json::to_string_pretty(&timing)? + "\n",
    )?;
    let printed = match command {
        Command::NullRadii => manifest["values"]["radii"].clone(),
        _ => manifest["values"].clone(),
    };
    Ok(serde_json::to_string(&printed)?)
}

struct Artifacts {
    dir: PathBuf,
    files: Vec<String>,
}

impl Artifacts {
    fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| {
            Error::InvalidParams(format!(
                "output directory {} is not writable: {e}",
                dir.display()
            ))
        })?;
        Ok(Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    fn create(&mut self, name: &str) -> Result<BufWriter<File>> {
        if name != "manifest.json" {
            self.files.push(name.to_string());
        }
        Ok(BufWriter::new(File::create(self.dir.join(name))?))
    }

    fn field(&mut self, name: &str, field: &ScalarField) -> Result<()> {
        write_field_csv(field, self.create(name)?)?;
        Ok(())
    }

    fn boundary(&mut self, name: &str, curve: &BoundaryCurve) -> Result<()> {
        write_boundary_csv(curve, self.create(name)?)?;
        Ok(())
    }

    fn json(&mut self, name: &str, value: &Value) -> Result<()> {
        use std::io::Write;
        let mut w = self.create(name)?;
        writeln!(w, "{}", serde_json::to_string_pretty(value)?)?;
        Ok(())
    }

    fn csv(
        &mut self,
        name: &str,
        header: &str,
        rows: impl IntoIterator<Item = Vec<f64>>,
    ) -> Result<()> {
        use std::io::Write;
        let mut w = self.create(name)?;
        writeln!(w, "{header}")?;
        for row in rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(w, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

type Output = (Value, Value);

fn one() -> f64 {
    1.0
}

fn two() -> usize {
    2
}

fn profile(g: f64, slope: f64, r1: f64) -> GProfile {
    if g == 0.0 && slope == 0.0 {
        GProfile::zero()
    } else if slope == 0.0 {
        GProfile::step(g, r1)
    } else {
        GProfile::ramp(g, slope, r1)
    }
}

/// f = a·χ{r<r1} − b on B_R with g = g + g_slope·(r − r1) beyond r1.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RadialConfig {
    #[serde(default = "two")]
    pub n: usize,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    #[serde(default = "one")]
    pub radius: f64,
    #[serde(default)]
    pub g: f64,
    #[serde(default)]
    pub g_slope: f64,
    #[serde(default = "default_ode_points")]
    pub ode_points: usize,
    #[serde(default = "default_profile_points")]
    pub profile_points: usize,
}

fn default_ode_points() -> usize {
    200
}

fn default_profile_points() -> usize {
    201
}

fn radial(c: RadialConfig, w: &mut Artifacts) -> Result<Output> {
    let params = RadialParams::new(
        c.n,
        c.lambda,
        c.a,
        c.b,
        c.r1,
        c.radius,
        profile(c.g, c.g_slope, c.r1),
    )?;
    let sol = radial_solve(&params)?;
    let count = c.profile_points.max(2);
    w.csv(
        "profile.csv",
        "r,u,du",
        (0..count).map(|i| {
            let r = c.radius * i as f64 / (count - 1) as f64;
            vec![r, sol.u(r), sol.du(r)]
        }),
    )?;
    let values = json!({
        "rho": sol.rho,
        "Rprime": sol.r_prime,
        "c1": sol.c1,
        "k": params.k(),
        "energy": sol.energy(),
        "ode_residual": sol.ode_residual(c.ode_points),
        "u_at_rho": sol.u(sol.rho),
        "du_at_rho": sol.du(sol.rho),
        "g_at_rho": params.g.eval(sol.rho),
    });
    Ok((serde_json::to_value(&c)?, values))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdsConfig {
    #[serde(default = "two")]
    pub n: usize,
    pub beta: f64,
    pub eps: f64,
    pub b: f64,
    pub b0: f64,
    pub mass: f64,
    /// Evaluates the chain at k = k_fraction·k_max.
    #[serde(default = "default_k_fraction")]
    pub k_fraction: f64,
}

fn default_k_fraction() -> f64 {
    0.9
}

fn thresholds(c: ThresholdsConfig) -> Result<Output> {
    let threshold = mass_threshold(c.n, c.b0, c.eps)?;
    if !(c.mass > threshold) {
        return Err(Error::InvalidParams(format!(
            "mass {} must exceed mass_threshold = {threshold}",
            c.mass
        )));
    }
    if !(c.k_fraction > 0.0 && c.k_fraction <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "k_fraction must lie in (0, 1], got {}",
            c.k_fraction
        )));
    }
    let k_max = frequency_threshold(c.n, c.beta, c.b, c.mass)?;
    let k = c.k_fraction * k_max;
    let chain = mollified_chain(c.n, c.beta, c.eps, c.b, c.b0, c.mass, k)?;
    let report = check_admissibility(&chain)?;
    let values = json!({
        "mass_constant": mass_constant(c.n)?,
        "mass_threshold": threshold,
        "frequency_constant": frequency_constant(c.n, c.beta)?,
        "k_max": k_max,
        "k": k,
        "chain": chain,
        "admissible": report.passed(),
        "admissibility": report,
    });
    Ok((serde_json::to_value(&c)?, values))
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum OrderConfig {
    Symmetric,
    RedBlack,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MinimizeConfig {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    #[serde(default = "one")]
    pub radius: f64,
    #[serde(default)]
    pub g: f64,
    #[serde(default)]
    pub g_slope: f64,
    pub m: usize,
    #[serde(default = "default_order")]
    pub order: OrderConfig,
    #[serde(default)]
    pub relaxation: Option<f64>,
    #[serde(default = "default_max_sweeps")]
    pub max_sweeps: usize,
    #[serde(default = "default_smoothing")]
    pub smoothing: f64,
}

fn default_order() -> OrderConfig {
    OrderConfig::Symmetric
}

fn default_max_sweeps() -> usize {
    crate::minimizer::MAX_SWEEPS
}

fn default_smoothing() -> f64 {
    WARM_START_SMOOTHING
}

impl MinimizeConfig {
    fn params(&self, lambda: f64) -> Result<RadialParams> {
        RadialParams::new(
            2,
            lambda,
            self.a,
            self.b,
            self.r1,
            self.radius,
            profile(self.g, self.g_slope, self.r1),
        )
    }

    fn options(&self) -> MinimizeOptions {
        MinimizeOptions {
            order: match self.order {
                OrderConfig::Symmetric => SweepOrder::Symmetric,
                OrderConfig::RedBlack => SweepOrder::RedBlack,
            },
            max_sweeps: self.max_sweeps,
            relaxation: self.relaxation,
            initial: None,
            smoothing: self.smoothing,
        }
    }
}

fn write_result(w: &mut Artifacts, result: &MinimizeResult) -> Result<()> {
    w.field("u.csv", &result.u)?;
    w.boundary("boundary.csv", &result.boundary)?;
    w.csv(
        "energy_log.csv",
        "sweep,energy,positive_nodes",
        result
            .log
            .iter()
            .map(|e| vec![e.sweep as f64, e.energy, e.positive_nodes as f64]),
    )
}

fn oracle(params: &RadialParams) -> Value {
    match radial_solve(params) {
        Ok(sol) => json!({ "rho": sol.rho, "energy": sol.energy() }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn minimize(c: MinimizeConfig, w: &mut Artifacts) -> Result<Output> {
    let params = c.params(c.lambda)?;
    let problem = RadialGridProblem::new(&params, c.m)?;
    let result = minimize_with(&problem.spec, &c.options())?;
    write_result(w, &result)?;
    let bernoulli = if result.boundary.is_empty() {
        None
    } else {
        Some(bernoulli_residual(&problem.spec, &result)?)
    };
    let values = json!({
        "h": problem.spec.grid().h(),
        "energy": result.energy,
        "sweeps": result.sweeps,
        "positivity_radius": result.positivity_radius(),
        "l2_norm": result.l2_norm(),
        "positive_nodes": result.positivity_mask.count(),
        "fixed_point_defect": result.fixed_point_defect,
        "max_update_increase": result.max_update_increase,
        "bernoulli": bernoulli,
        "el_residual": el_residual(&problem.spec, &result)?,
        "oracle": oracle(&params),
    });
    Ok((serde_json::to_value(&c)?, values))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    #[serde(default = "one")]
    pub radius: f64,
    #[serde(default)]
    pub g: f64,
    #[serde(default)]
    pub g_slope: f64,
    pub m: usize,
    /// Shifts the domain radius off the oracle ρ; nonzero gives a negative control.
    #[serde(default)]
    pub support_offset: f64,
    #[serde(default = "default_circle_nodes")]
    pub circle_nodes: usize,
    #[serde(default = "default_waves")]
    pub waves: usize,
    #[serde(default = "default_ring_points")]
    pub ring_points: usize,
    /// Defaults to 1.5·support + 0.1.
    #[serde(default)]
    pub ring_radius: Option<f64>,
}

fn default_circle_nodes() -> usize {
    2048
}

fn default_waves() -> usize {
    32
}

fn default_ring_points() -> usize {
    64
}

fn verify(c: VerifyConfig, w: &mut Artifacts) -> Result<Output> {
    let params = RadialParams::new(
        2,
        c.lambda,
        c.a,
        c.b,
        c.r1,
        c.radius,
        profile(c.g, c.g_slope, c.r1),
    )?;
    let sol = radial_solve(&params)?;
    let support = sol.rho + c.support_offset;
    let grid = crate::field::Grid::new(c.radius, c.m)?;
    let qd = radial_quadrature_domain(&sol, grid, support, c.circle_nodes)?;
    let ring_radius = c.ring_radius.unwrap_or(1.5 * support + 0.1);
    let report = residual_report(&qd, params.k(), c.waves, ring_radius, c.ring_points)?;
    let report = serde_json::to_value(&report)?;
    w.json("residuals.json", &report)?;
    let values = json!({
        "rho": sol.rho,
        "support": support,
        "ring_radius": ring_radius,
        "identity_residual": report["identity_residual"],
        "potential_residual": report["potential_residual"],
    });
    Ok((serde_json::to_value(&c)?, values))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NonscatterConfig {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    #[serde(default = "one")]
    pub radius: f64,
    #[serde(default)]
    pub g: f64,
    #[serde(default)]
    pub g_slope: f64,
    pub m: usize,
    /// Cutoff width δ: ρ = −h/v₀ within δ/3 of ∂D.
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_directions")]
    pub directions: usize,
    #[serde(default = "default_smoothing")]
    pub smoothing: f64,
}

fn default_delta() -> f64 {
    0.1
}

fn default_directions() -> usize {
    64
}

fn nonscatter(c: NonscatterConfig, w: &mut Artifacts) -> Result<Output> {
    let params = RadialParams::new(
        2,
        c.lambda,
        c.a,
        c.b,
        c.r1,
        c.radius,
        profile(c.g, c.g_slope, c.r1),
    )?;
    let problem = RadialGridProblem::new(&params, c.m)?;
    let k = params.k();
    let u0 = incident_field(2, k, *problem.spec.grid())?;
    let options = MinimizeOptions {
        smoothing: c.smoothing,
        ..MinimizeOptions::default()
    };
    let result = minimize_with(&problem.spec, &options)?;
    let contrast = build_contrast(&result, &problem.h, &problem.mu, k, &u0, c.delta)?;
    let g: Vec<f64> = result
        .boundary
        .segments
        .iter()
        .map(|s| params.g.eval(s.midpoint[0].hypot(s.midpoint[1])))
        .collect();
    let residual = nonradiating_residual(&contrast, &result.boundary, &g, k, c.directions)?;
    let total = result
        .u
        .values()
        .iter()
        .zip(u0.values())
        .map(|(a, b)| a + b)
        .collect();
    let jump = jump_relation_check(&u0.with_values(total)?, &result.boundary, &g)?;
    w.field("rho.csv", &contrast.rho)?;
    w.field("v.csv", &contrast.v)?;
    w.boundary("boundary.csv", &result.boundary)?;
    let report = json!({
        "band_stats": contrast.band_stats(),
        "invariants": contrast.invariants(),
        "nonradiating_residual": residual,
        "jump_relation": jump,
    });
    w.json("contrast.json", &report)?;
    Ok((serde_json::to_value(&c)?, report))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub lambdas: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    #[serde(default = "one")]
    pub radius: f64,
    #[serde(default)]
    pub g: f64,
    #[serde(default)]
    pub g_slope: f64,
    pub m: usize,
    #[serde(default = "default_smoothing")]
    pub smoothing: f64,
}

fn sweep(c: SweepConfig, w: &mut Artifacts) -> Result<Output> {
    let first = *c
        .lambdas
        .first()
        .ok_or_else(|| Error::InvalidParams("lambdas must not be empty".into()))?;
    let g = profile(c.g, c.g_slope, c.r1);
    for &lambda in &c.lambdas {
        RadialParams::new(2, lambda, c.a, c.b, c.r1, c.radius, g.clone())?;
    }
    let params = RadialParams::new(2, first, c.a, c.b, c.r1, c.radius, g)?;
    let problem = RadialGridProblem::new(&params, c.m)?;
    let options = MinimizeOptions {
        smoothing: c.smoothing,
        ..MinimizeOptions::default()
    };
    let result = lambda_sweep(&problem.spec, &c.lambdas, &options)?;
    w.csv(
        "sweep.csv",
        "lambda,l2_norm,energy,sweeps",
        result
            .points
            .iter()
            .zip(&result.results)
            .map(|(p, r)| vec![p.lambda, p.l2_norm, p.energy, r.sweeps as f64]),
    )?;
    let norms_nondecreasing = result
        .points
        .windows(2)
        .all(|p| p[1].l2_norm >= p[0].l2_norm - 1e-8);
    let energies_nonincreasing = result
        .points
        .windows(2)
        .all(|p| p[1].energy <= p[0].energy + 1e-8);
    let values = json!({
        "points": result.points,
        "norms_nondecreasing": norms_nondecreasing,
        "energies_nonincreasing": energies_nonincreasing,
    });
    Ok((serde_json::to_value(&c)?, values))
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct NullRadiiConfig {
    #[serde(default = "two")]
    pub n: usize,
    #[serde(default = "one")]
    pub k: f64,
    #[serde(default = "default_count")]
    pub count: usize,
}

fn default_count() -> usize {
    3
}

fn null_radii(c: NullRadiiConfig, w: &mut Artifacts) -> Result<Output> {
    let radii = null_quadrature_radii(c.n, c.k, c.count)?;
    w.json("radii.json", &json!(radii))?;
    Ok((serde_json::to_value(&c)?, json!({ "radii": radii })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    #[test]
    fn overrides_are_split_from_known_flags() {
        let (known, overrides) = split_overrides(argv(
            "quadforge null-radii --out d --n 3 --k=1.5 --threads 2 --g-slope 0.1 --name x",
        ))
        .unwrap();
        assert_eq!(known, argv("quadforge null-radii --out d --threads 2"));
        assert_eq!(
            overrides,
            vec![
                ("n".to_string(), json!(3)),
                ("k".to_string(), json!(1.5)),
                ("g_slope".to_string(), json!(0.1)),
                ("name".to_string(), json!("x")),
            ]
        );
    }

    #[test]
    fn dangling_override_is_rejected() {
        assert!(split_overrides(argv("quadforge radial --a")).is_err());
    }

    #[test]
    fn exit_codes_follow_error_kind() {
        assert_eq!(
            exit_code(&Error::InvalidParams("x".into())),
            EXIT_VALIDATION
        );
        assert_eq!(exit_code(&Error::EigNoConverge(3)), EXIT_NO_CONVERGE);
        assert_eq!(
            exit_code(&Error::PositivityLost("x".into())),
            EXIT_NO_CONVERGE
        );
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let mut map = Map::new();
        map.insert("n".into(), json!(2));
        map.insert("bogus".into(), json!(1));
        assert!(parse::<NullRadiiConfig>(map).is_err());
    }

    #[test]
    fn command_key_must_match() {
        let overrides = vec![("command".to_string(), json!("radial"))];
        assert!(load_config(None, Command::NullRadii, &overrides).is_err());
        assert!(load_config(None, Command::Radial, &overrides)
            .unwrap()
            .is_empty());
    }
}
