//! Command-line flags and the resolved, validated run configuration.

use std::ffi::OsString;
use std::fmt;

use akr_core::asymptotics::{OperatorKind, Schedule};
use akr_core::catalog::lookup;
use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Emit the AKR node table for (n, j).
    Nodes,
    /// Emit one operator value.
    Eval,
    /// Emit a scaled residual series and its extrapolated limit.
    Residual,
    /// Emit the remainder-sum series and check that it vanishes.
    Lemma,
    /// Emit the E/F/G split over a schedule.
    Decompose,
    /// Run every acceptance criterion.
    Verify,
}

impl Command {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Nodes => "nodes",
            Self::Eval => "eval",
            Self::Residual => "residual",
            Self::Lemma => "lemma",
            Self::Decompose => "decompose",
            Self::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

fn parse_kind(s: &str) -> Result<OperatorKind, String> {
    s.parse::<OperatorKind>().map_err(|e| e.to_string())
}

/// Raw flags as typed on the command line.
#[derive(Debug, Clone, Parser)]
#[command(name = "akr", version, about = "Bernstein and AKR operators with Voronovskaja-type asymptotic checks")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Degree for `nodes` and `eval`.
    #[arg(long)]
    pub n: Option<usize>,
    /// First degree of the doubling schedule.
    #[arg(long, default_value_t = Schedule::DEFAULT.n0)]
    pub n0: usize,
    /// Number of doublings after n0.
    #[arg(long, default_value_t = Schedule::DEFAULT.doublings)]
    pub doublings: u32,
    /// AKR exponent (fixed points e_0 and e_j).
    #[arg(long, default_value_t = 2)]
    pub j: usize,
    /// Operator kind for `eval` and `residual`.
    #[arg(long, value_parser = parse_kind)]
    pub kind: Option<OperatorKind>,
    /// Catalog function name.
    #[arg(long = "fn")]
    pub fn_name: Option<String>,
    /// Evaluation point: one coordinate in 1D, two on the square.
    #[arg(long, num_args = 1..=2, allow_negative_numbers = true, conflicts_with = "x")]
    pub point: Option<Vec<f64>>,
    /// Shorthand for a one-coordinate `--point`.
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Relative tolerance for limit verdicts (absolute when the target is 0).
    #[arg(long, default_value_t = 1e-2)]
    pub tolerance: f64,
    /// Write the report here instead of standard output.
    #[arg(long = "out")]
    pub out: Option<String>,
    /// Accepted for scripting; every command is deterministic.
    #[arg(long)]
    pub seedless: bool,
    /// Print the resolved configuration and exit.
    #[arg(long)]
    pub dry_run: bool,
}

/// Fully resolved configuration; defaults that depend on the command are
/// filled in, irrelevant fields are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub n0: usize,
    pub doublings: u32,
    pub j: usize,
    pub kind: Option<OperatorKind>,
    pub fn_name: Option<String>,
    pub point: Vec<f64>,
    pub format: Format,
    pub tolerance: f64,
    pub output_path: Option<String>,
    pub seedless: bool,
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::InvalidArguments(msg.into())
}

impl RunConfig {
    /// Parses argv (including the program name) into a validated config and
    /// the dry-run flag.
    pub fn try_parse_from<I, T>(args: I) -> Result<(Self, bool), CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(CliError::Usage)?;
        let dry = cli.dry_run;
        Ok((Self::resolve(cli)?, dry))
    }

    pub fn resolve(cli: Cli) -> Result<Self, CliError> {
        use Command::*;
        let command = cli.command;
        let kind = match (command, cli.kind) {
            (Eval | Residual, k) => Some(k.unwrap_or(OperatorKind::Akr2d)),
            (Lemma, None | Some(OperatorKind::LemmaSum)) => Some(OperatorKind::LemmaSum),
            (_, None) => None,
            (c, Some(k)) => {
                return Err(invalid(format!("--kind {k} is not accepted by `{}`", c.as_str())))
            }
        };
        let two_d = match (command, kind) {
            (Decompose, _) => true,
            (_, Some(k)) => k.is_2d(),
            _ => false,
        };
        let fn_name = match (command, kind) {
            (Eval | Residual, Some(OperatorKind::LemmaSum)) if cli.fn_name.is_some() => {
                return Err(invalid("--fn is not accepted by --kind lemma-sum"))
            }
            (Eval | Residual, Some(OperatorKind::LemmaSum)) => None,
            (Eval | Residual | Decompose, _) => Some(
                cli.fn_name
                    .unwrap_or_else(|| if two_d { "exp-sum" } else { "e1" }.to_owned()),
            ),
            _ if cli.fn_name.is_some() => {
                return Err(invalid(format!("--fn is not accepted by `{}`", command.as_str())))
            }
            _ => None,
        };
        let point = match (command, cli.point, cli.x) {
            (Nodes | Verify, None, None) => Vec::new(),
            (Nodes | Verify, ..) => {
                return Err(invalid(format!("`{}` takes no evaluation point", command.as_str())))
            }
            (_, Some(p), _) => p,
            (_, None, Some(x)) => vec![x],
            (_, None, None) if two_d => vec![0.5, 0.5],
            (_, None, None) => vec![0.5],
        };
        let n = match command {
            Nodes | Eval => Some(cli.n.ok_or_else(|| {
                invalid(format!("`{}` requires --n", command.as_str()))
            })?),
            _ if cli.n.is_some() => {
                return Err(invalid(format!("--n is not accepted by `{}`; use --n0", command.as_str())))
            }
            _ => None,
        };
        let config = Self {
            command,
            n,
            n0: cli.n0,
            doublings: cli.doublings,
            j: cli.j,
            kind,
            fn_name,
            point,
            format: cli.format,
            tolerance: cli.tolerance,
            output_path: cli.out,
            seedless: cli.seedless,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        use Command::*;
        if self.j < 2 {
            return Err(invalid(format!("--j {} must be at least 2", self.j)));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(invalid(format!("--tolerance {} must be positive", self.tolerance)));
        }
        let akr = self.kind.is_some_and(|k| k.uses_akr_nodes()) || matches!(self.command, Nodes | Decompose);
        if let Some(n) = self.n {
            let min = if akr { self.j } else { 1 };
            if n < min {
                return Err(invalid(format!("--n {n} must be at least {min}")));
            }
        }
        if let Some(name) = &self.fn_name {
            let entry = lookup(name).map_err(|e| invalid(e.to_string()))?;
            let want = if self.point.len() == 2 { 2 } else { 1 };
            if entry.arity() != want {
                return Err(invalid(format!(
                    "function `{name}` takes {} argument(s) but the command evaluates on {want}",
                    entry.arity()
                )));
            }
        }
        let dims = match (self.command, self.kind) {
            (Nodes | Verify, _) => 0,
            (Decompose, _) => 2,
            (_, Some(k)) if k.is_2d() => 2,
            _ => 1,
        };
        if self.point.len() != dims {
            return Err(invalid(format!(
                "`{}` needs {dims} point coordinate(s), got {}",
                self.command.as_str(),
                self.point.len()
            )));
        }
        for &c in &self.point {
            let ok = if akr { c > 0.0 && c <= 1.0 } else { (0.0..=1.0).contains(&c) };
            if !ok {
                let range = if akr { "(0, 1]" } else { "[0, 1]" };
                return Err(invalid(format!("point coordinate {c} is outside {range}")));
            }
        }
        if matches!(self.command, Residual | Lemma | Decompose) {
            let min_n0 = self.j.max(2);
            if self.n0 < min_n0 {
                return Err(invalid(format!("--n0 {} must be at least {min_n0}", self.n0)));
            }
            if self.doublings > 20 {
                return Err(invalid("--doublings must be at most 20"));
            }
        }
        if matches!(self.command, Residual | Lemma) && self.doublings < Schedule::MIN_DOUBLINGS {
            return Err(invalid(format!(
                "--doublings {} is too short to extrapolate (need at least {})",
                self.doublings,
                Schedule::MIN_DOUBLINGS
            )));
        }
        if matches!(self.command, Lemma | Decompose) && self.j != 2 {
            return Err(invalid(format!("`{}` is defined for j = 2 only", self.command.as_str())));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Schedule {
        Schedule::new(self.n0, self.doublings)
    }

    /// Argv (without the program name) that parses back to this config.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec![self.command.as_str().to_owned()];
        let mut push = |flag: &str, v: String| {
            a.push(flag.to_owned());
            a.push(v);
        };
        if let Some(n) = self.n {
            push("--n", n.to_string());
        }
        push("--n0", self.n0.to_string());
        push("--doublings", self.doublings.to_string());
        push("--j", self.j.to_string());
        if let Some(k) = self.kind {
            push("--kind", k.to_string());
        }
        if let Some(f) = &self.fn_name {
            push("--fn", f.clone());
        }
        push("--format", self.format.to_string());
        push("--tolerance", format!("{:?}", self.tolerance));
        if let Some(o) = &self.output_path {
            push("--out", o.clone());
        }
        if !self.point.is_empty() {
            a.push("--point".to_owned());
            a.extend(self.point.iter().map(|c| format!("{c:?}")));
        }
        if self.seedless {
            a.push("--seedless".to_owned());
        }
        a
    }
}
