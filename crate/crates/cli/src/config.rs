//! Command-line flags and the run configuration they fold into.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use plankcap::oscillation::Variant;
use plankcap_verify::criteria::TOLERANCES;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable holding the default seed.
pub const SEED_VAR: &str = "PLANKCAP_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    Billiard,
    CoverCheck,
    Oscillation,
    Fractional,
    BallCut,
    VerifyAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum FractionalOp {
    #[serde(rename = "W")]
    #[value(name = "W")]
    W,
    #[serde(rename = "rho")]
    Rho,
    #[serde(rename = "cyl")]
    Cyl,
    #[serde(rename = "bound")]
    Bound,
    #[serde(rename = "mahler")]
    Mahler,
    #[serde(rename = "sumnorm")]
    Sumnorm,
}

/// Everything one run needs. Built from flags, then overridden field by
/// field by an optional JSON file of the same shape.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub body: Option<PathBuf>,
    /// `euclidean`, `diff` or `body:PATH`.
    pub gauge: Option<String>,
    pub planks: Option<PathBuf>,
    pub field: Option<PathBuf>,
    pub params: Option<PathBuf>,
    pub variant: Option<Variant>,
    pub op: Option<FractionalOp>,
    pub threshold: Option<f64>,
    pub fractional: Option<bool>,
    pub starts: Option<usize>,
    pub tau0: Option<f64>,
    pub sweep: Option<usize>,
    pub criteria: Option<Vec<u32>>,
    pub seed: Option<u64>,
    pub tolerances: BTreeMap<String, f64>,
    pub output: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

impl RunConfig {
    /// Fields set in `over` win; tolerance maps are merged.
    pub fn overridden_by(self, over: RunConfig) -> RunConfig {
        let mut tolerances = self.tolerances;
        tolerances.extend(over.tolerances);
        RunConfig {
            command: over.command.or(self.command),
            body: over.body.or(self.body),
            gauge: over.gauge.or(self.gauge),
            planks: over.planks.or(self.planks),
            field: over.field.or(self.field),
            params: over.params.or(self.params),
            variant: over.variant.or(self.variant),
            op: over.op.or(self.op),
            threshold: over.threshold.or(self.threshold),
            fractional: over.fractional.or(self.fractional),
            starts: over.starts.or(self.starts),
            tau0: over.tau0.or(self.tau0),
            sweep: over.sweep.or(self.sweep),
            criteria: over.criteria.or(self.criteria),
            seed: over.seed.or(self.seed),
            tolerances,
            output: over.output.or(self.output),
            svg: over.svg.or(self.svg),
        }
    }

    /// Reads a config file; relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut cfg: RunConfig = serde_json::from_str(&text).map_err(|e| CliError::Parse {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new(""));
        let gauge_path = cfg.gauge.as_ref().and_then(|g| g.strip_prefix("body:")).map(PathBuf::from);
        for p in [
            &mut cfg.body,
            &mut cfg.planks,
            &mut cfg.field,
            &mut cfg.params,
            &mut cfg.output,
            &mut cfg.svg,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if let Some(g) = gauge_path.filter(|g| g.is_relative()) {
            cfg.gauge = Some(format!("body:{}", base.join(g).display()));
        }
        Ok(cfg)
    }

    /// Seed from the config, else from [`SEED_VAR`], else zero.
    pub fn resolved_seed(&self) -> Result<u64, CliError> {
        if let Some(s) = self.seed {
            return Ok(s);
        }
        match std::env::var(SEED_VAR) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("{SEED_VAR}={v} is not an unsigned integer"))),
            Err(_) => Ok(0),
        }
    }

    pub fn check_tolerances(&self) -> Result<(), CliError> {
        for (name, &t) in &self.tolerances {
            if !TOLERANCES.iter().any(|(n, _)| n == name) {
                let known: Vec<&str> = TOLERANCES.iter().map(|(n, _)| *n).collect();
                return Err(CliError::Input(format!("unknown tolerance {name}; known: {}", known.join(", "))));
            }
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Input(format!("tolerance {name} = {t} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Parser)]
#[command(name = "plankcap", version, about = "Billiard capacities, plank coverings and related bounds")]
pub struct Cli {
    /// JSON run configuration; its fields override the flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Tolerance override, e.g. `--tol billiard=1e-4`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE", value_parser = parse_tolerance)]
    pub tolerances: Vec<(String, f64)>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shortest closed billiard trajectory of a body in a gauge.
    Billiard(BilliardArgs),
    /// Does a family of planks cover a body.
    CoverCheck(CoverArgs),
    /// Oscillation of a polynomial against its smallest gradient.
    Oscillation(OscillationArgs),
    /// Constants and bounds for fractional plank coverings.
    Fractional(FractionalArgs),
    /// Capacities of the two pieces of a cut ball.
    BallCut(BallCutArgs),
    /// Runs the acceptance suite.
    VerifyAll(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BilliardArgs {
    #[arg(long)]
    pub body: Option<PathBuf>,
    /// `euclidean`, `diff` (unit ball K - K) or `body:B.json`.
    #[arg(long)]
    pub gauge: Option<String>,
    #[arg(long)]
    pub starts: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long)]
    pub body: Option<PathBuf>,
    #[arg(long)]
    pub planks: Option<PathBuf>,
    /// Required multiplicity.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Keep the plank weights; otherwise every plank counts once.
    #[arg(long)]
    pub fractional: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OscillationArgs {
    #[arg(long)]
    pub body: Option<PathBuf>,
    #[arg(long)]
    pub field: Option<PathBuf>,
    #[arg(long, value_parser = parse_variant)]
    pub variant: Option<Variant>,
    /// Gauge for the `billiard` variant; defaults to `diff`.
    #[arg(long)]
    pub gauge: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FractionalArgs {
    #[arg(long, value_enum)]
    pub op: Option<FractionalOp>,
    #[arg(long)]
    pub params: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BallCutArgs {
    #[arg(long)]
    pub tau0: Option<f64>,
    /// Check `N` evenly spaced interior cut angles instead of one.
    #[arg(long, value_name = "N")]
    pub sweep: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Run only these criteria (1 to 14), comma separated.
    #[arg(long, value_delimiter = ',')]
    pub criteria: Option<Vec<u32>>,
}

fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected NAME=VALUE, got {s}"))?;
    let value: f64 = value.parse().map_err(|e| format!("tolerance {name}: {e}"))?;
    Ok((name.to_string(), value))
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    serde_json::from_value(serde_json::Value::String(s.to_string()))
        .map_err(|_| format!("unknown variant {s}; expected ball2x, diff1x or billiard"))
}

impl Cli {
    /// Folds the flags, then the config file, into one configuration.
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig {
            output: self.out,
            tolerances: self.tolerances.into_iter().collect(),
            ..Default::default()
        };
        match self.command {
            None => {}
            Some(Command::Billiard(a)) => {
                cfg.command = Some(CommandKind::Billiard);
                cfg.body = a.body;
                cfg.gauge = a.gauge;
                cfg.starts = a.starts;
                cfg.seed = a.seed;
                cfg.svg = a.svg;
            }
            Some(Command::CoverCheck(a)) => {
                cfg.command = Some(CommandKind::CoverCheck);
                cfg.body = a.body;
                cfg.planks = a.planks;
                cfg.threshold = a.threshold;
                cfg.fractional = a.fractional.then_some(true);
                cfg.svg = a.svg;
            }
            Some(Command::Oscillation(a)) => {
                cfg.command = Some(CommandKind::Oscillation);
                cfg.body = a.body;
                cfg.field = a.field;
                cfg.variant = a.variant;
                cfg.gauge = a.gauge;
                cfg.seed = a.seed;
            }
            Some(Command::Fractional(a)) => {
                cfg.command = Some(CommandKind::Fractional);
                cfg.op = a.op;
                cfg.params = a.params;
            }
            Some(Command::BallCut(a)) => {
                cfg.command = Some(CommandKind::BallCut);
                cfg.tau0 = a.tau0;
                cfg.sweep = a.sweep;
            }
            Some(Command::VerifyAll(a)) => {
                cfg.command = Some(CommandKind::VerifyAll);
                cfg.seed = a.seed;
                cfg.criteria = a.criteria;
            }
        }
        match self.config {
            Some(path) => Ok(cfg.overridden_by(RunConfig::load(&path)?)),
            None => Ok(cfg),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_fields_override_flags() {
        let flags = RunConfig {
            command: Some(CommandKind::Billiard),
            seed: Some(1),
            starts: Some(8),
            tolerances: [("billiard".to_string(), 1e-3)].into(),
            ..Default::default()
        };
        let file: RunConfig = serde_json::from_str(r#"{"seed": 5, "tolerances": {"simplex": 0.1}}"#).unwrap();
        let cfg = flags.overridden_by(file);
        assert_eq!(cfg.seed, Some(5));
        assert_eq!(cfg.starts, Some(8));
        assert_eq!(cfg.command, Some(CommandKind::Billiard));
        assert_eq!(cfg.tolerances.len(), 2);
    }

    #[test]
    fn config_round_trips() {
        let cfg: RunConfig = serde_json::from_str(
            r#"{"command": "cover-check", "op": "W", "variant": "diff1x", "threshold": 2.0}"#,
        )
        .unwrap();
        assert_eq!(cfg.command, Some(CommandKind::CoverCheck));
        assert_eq!(cfg.op, Some(FractionalOp::W));
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert!(serde_json::from_str::<RunConfig>(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn tolerance_checks() {
        let mut cfg = RunConfig::default();
        cfg.tolerances.insert("billiard".into(), 1e-15);
        assert!(cfg.check_tolerances().is_ok());
        cfg.tolerances.insert("billiard".into(), 0.0);
        assert!(cfg.check_tolerances().is_err());
        let mut cfg = RunConfig::default();
        cfg.tolerances.insert("nope".into(), 1.0);
        assert!(cfg.check_tolerances().is_err());
        assert_eq!(parse_tolerance("a=0.5").unwrap(), ("a".to_string(), 0.5));
        assert!(parse_tolerance("a").is_err());
    }
}
