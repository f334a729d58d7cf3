//! Run configuration from command-line flags and an optional `key=value` file.

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;

use crate::diagnostics::Thresholds;
use crate::dynamics::{SimParams, TimeStep};
use crate::error::{Error, Result};
use crate::oracles::InitialCondition;
use crate::spectral::DealiasRule;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub params: SimParams,
    pub ic: InitialCondition,
    /// Simulation time between stored snapshots.
    pub snapshot_every: f64,
    pub output_dir: PathBuf,
    pub thresholds: Thresholds,
    pub detect_blowup: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n: 256,
            params: SimParams::default(),
            ic: InitialCondition::NegSine,
            snapshot_every: 0.1,
            output_dir: PathBuf::from("out"),
            thresholds: Thresholds::default(),
            detect_blowup: true,
        }
    }
}

/// Every accepted key, in flag spelling.
pub const KEYS: &[&str] = &[
    "n",
    "gamma",
    "alpha",
    "dt",
    "t-final",
    "ic",
    "dealias",
    "snapshot-every",
    "output",
    "detect-blowup",
    "slope-limit",
    "tail-limit",
    "linear-only",
];

fn number(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .trim()
        .parse()
        .map_err(|_| Error::usage(key, format!("`{value}` is not a number")))?;
    if !v.is_finite() {
        return Err(Error::usage(key, format!("`{value}` is not finite")));
    }
    Ok(v)
}

fn boolean(key: &str, value: &str) -> Result<bool> {
    match value.trim() {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(Error::usage(key, format!("`{other}` is not true/false"))),
    }
}

fn parse_ic(value: &str) -> Result<InitialCondition> {
    let parts: Vec<&str> = value.trim().split(':').collect();
    let ic = match parts.as_slice() {
        ["neg-sine"] => InitialCondition::NegSine,
        ["scaled-neg-sine", a] => InitialCondition::ScaledNegSine(number("ic", a)?),
        ["gaussian", w] => InitialCondition::GaussianBump {
            width: number("ic", w)?,
        },
        ["random", kmax, seed] => {
            let kmax = kmax
                .parse()
                .map_err(|_| Error::usage("ic", format!("bad mode count `{kmax}`")))?;
            let seed = seed
                .parse()
                .map_err(|_| Error::usage("ic", format!("bad seed `{seed}`")))?;
            InitialCondition::random_band(kmax, seed)
        }
        _ => {
            return Err(Error::usage(
                "ic",
                format!(
                "`{value}` is not one of neg-sine, scaled-neg-sine:A, gaussian:W, random:KMAX:SEED"
            ),
            ))
        }
    };
    ic.validate()
        .map_err(|e| Error::usage("ic", e.to_string()))?;
    Ok(ic)
}

impl RunConfig {
    /// Sets one option. `key` may use `-` or `_` as separator.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('_', "-");
        let key = key.as_str();
        match key {
            "n" => {
                self.n = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::usage(key, format!("`{value}` is not a node count")))?
            }
            "gamma" => self.params.gamma = number(key, value)?,
            "alpha" => self.params.alpha = number(key, value)?,
            "dt" => {
                self.params.dt = if value.trim() == "auto" {
                    TimeStep::Auto
                } else {
                    TimeStep::Fixed(number(key, value)?)
                }
            }
            "t-final" => self.params.t_final = number(key, value)?,
            "ic" => self.ic = parse_ic(value)?,
            "dealias" => {
                self.params.dealias = match value.trim() {
                    "off" => DealiasRule::Off,
                    "two-thirds" => DealiasRule::TwoThirds,
                    other => {
                        return Err(Error::usage(
                            key,
                            format!("`{other}` is not off or two-thirds"),
                        ))
                    }
                }
            }
            "snapshot-every" => self.snapshot_every = number(key, value)?,
            "output" => self.output_dir = PathBuf::from(value.trim()),
            "detect-blowup" => self.detect_blowup = boolean(key, value)?,
            "slope-limit" => self.thresholds.slope_limit = number(key, value)?,
            "tail-limit" => self.thresholds.tail_limit = number(key, value)?,
            "linear-only" => self.params.linear_only = boolean(key, value)?,
            _ => return Err(Error::usage(key, "unknown key")),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::usage(line, format!("line {} is not key=value", lineno + 1))
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::usage("config", format!("{}: {e}", path.display())))?;
        self.apply_file_contents(&text)
    }

    /// Checks every invariant, naming the offending key on failure.
    pub fn validate(&self) -> Result<()> {
        let p = &self.params;
        if self.n < 4 || !self.n.is_multiple_of(2) {
            return Err(Error::usage(
                "n",
                format!("{} must be even and >= 4", self.n),
            ));
        }
        if p.gamma < 0.0 {
            return Err(Error::usage("gamma", format!("{} must be >= 0", p.gamma)));
        }
        if !(p.alpha > 0.0 && p.alpha <= 2.0) {
            return Err(Error::usage(
                "alpha",
                format!("{} is outside (0, 2]", p.alpha),
            ));
        }
        if let TimeStep::Fixed(dt) = p.dt {
            if dt <= 0.0 {
                return Err(Error::usage("dt", format!("{dt} must be positive or auto")));
            }
        }
        if p.t_final <= 0.0 {
            return Err(Error::usage(
                "t-final",
                format!("{} must be positive", p.t_final),
            ));
        }
        if !(self.snapshot_every > 0.0 && self.snapshot_every <= p.t_final) {
            return Err(Error::usage(
                "snapshot-every",
                format!("{} must lie in (0, t-final]", self.snapshot_every),
            ));
        }
        if self.thresholds.slope_limit <= 0.0 {
            return Err(Error::usage("slope-limit", "must be positive"));
        }
        let tail = self.thresholds.tail_limit;
        if !(tail > 0.0 && tail < 1.0) {
            return Err(Error::usage(
                "tail-limit",
                format!("{tail} is outside (0, 1)"),
            ));
        }
        self.ic
            .validate()
            .map_err(|e| Error::usage("ic", e.to_string()))?;
        p.validate()
            .map_err(|e| Error::usage("params", e.to_string()))
    }
}

/// Fractional Burgers pseudo-spectral simulator.
#[derive(Debug, Parser)]
#[command(name = "fburgers", version, allow_negative_numbers = true)]
struct Cli {
    /// Number of grid nodes (even, >= 4)
    #[arg(long)]
    n: Option<String>,
    /// Dissipation strength (>= 0)
    #[arg(long)]
    gamma: Option<String>,
    /// Fractional order in (0, 2]
    #[arg(long)]
    alpha: Option<String>,
    /// Time step, or `auto`
    #[arg(long)]
    dt: Option<String>,
    #[arg(long = "t-final")]
    t_final: Option<String>,
    /// neg-sine | scaled-neg-sine:A | gaussian:W | random:KMAX:SEED
    #[arg(long)]
    ic: Option<String>,
    /// off | two-thirds
    #[arg(long)]
    dealias: Option<String>,
    #[arg(long = "snapshot-every")]
    snapshot_every: Option<String>,
    /// Output directory
    #[arg(long)]
    output: Option<String>,
    /// true | false
    #[arg(long = "detect-blowup")]
    detect_blowup: Option<String>,
    #[arg(long = "slope-limit")]
    slope_limit: Option<String>,
    #[arg(long = "tail-limit")]
    tail_limit: Option<String>,
    /// Drop the advective term
    #[arg(long = "linear-only")]
    linear_only: bool,
    /// key=value configuration file; flags take precedence
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Parses command-line arguments (without the program name).
///
/// `--help` and `--version` come back as [`Error::Help`] carrying the text to print.
pub fn parse_config<I, S>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("fburgers"))
        .chain(args.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Error::Help(e.to_string()),
        _ => {
            let key = e
                .get(clap::error::ContextKind::InvalidArg)
                .map(|v| v.to_string())
                .unwrap_or_else(|| "arguments".into());
            Error::Usage {
                key,
                message: e.kind().to_string(),
            }
        }
    })?;

    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        cfg.apply_file(path)?;
    }
    let flags = [
        ("n", &cli.n),
        ("gamma", &cli.gamma),
        ("alpha", &cli.alpha),
        ("dt", &cli.dt),
        ("t-final", &cli.t_final),
        ("ic", &cli.ic),
        ("dealias", &cli.dealias),
        ("snapshot-every", &cli.snapshot_every),
        ("output", &cli.output),
        ("detect-blowup", &cli.detect_blowup),
        ("slope-limit", &cli.slope_limit),
        ("tail-limit", &cli.tail_limit),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    if cli.linear_only {
        cfg.params.linear_only = true;
    }
    cfg.validate()?;
    Ok(cfg)
}
