//! Run configuration: command-line flags layered over an optional
//! `key = value` file with the same keys.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use markov_dyck::HeightData;

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "mdyck", version, about = "Markov-Dyck shifts: graphs, periodic points, zeta functions, entropy")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build, validate and export the rotational and companion graphs.
    Graph,
    /// Certified entropy with closed-form cross-checks.
    Entropy,
    /// Zeta function from excursion series against the periodic-point census.
    Zeta,
    /// Periodic points by period and multiplier class.
    Census,
    /// Block-code round trips and the height-reduction resolving check.
    Conjugacy,
    /// Parry-chain sample path and the maximal-entropy checks.
    Sample,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Graph => "graph",
            Command::Entropy => "entropy",
            Command::Zeta => "zeta",
            Command::Census => "census",
            Command::Conjugacy => "conjugacy",
            Command::Sample => "sample",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
    Dot,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| CliError::Input(format!("unknown format `{s}`")))
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
            Format::Dot => "dot",
        })
    }
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Height data as comma-separated counts, e.g. `1,1,2`.
    #[arg(long, global = true)]
    pub data: Option<String>,
    /// Named graph: `fibonacci` or `dyck:N`.
    #[arg(long, global = true)]
    pub graph: Option<String>,
    /// Largest period counted by the census, or the window length for `conjugacy`.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Truncation order of power series.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Path length for `sample`, number of windows for `conjugacy`.
    #[arg(long, global = true)]
    pub steps: Option<usize>,
    /// Number of stacked copies for height reduction and periodic data.
    #[arg(long, global = true)]
    pub copies: Option<usize>,
    #[arg(long, global = true)]
    pub format: Option<Format>,
    /// Upper bound on admissible prefixes the census may visit.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// File of `key = value` lines using the flag names above.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

/// Where the graph comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Data(HeightData),
    Fibonacci,
}

impl Source {
    pub fn name(&self) -> String {
        match self {
            Source::Data(d) => format!("data:{d}"),
            Source::Fibonacci => "fibonacci".into(),
        }
    }

    pub fn data(&self, command: Command) -> Result<&HeightData, CliError> {
        match self {
            Source::Data(d) => Ok(d),
            Source::Fibonacci => Err(CliError::Input(format!(
                "`{}` needs height data; the Fibonacci graph is not rotationally homogeneous",
                command.name()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub source: Source,
    pub n: Option<usize>,
    pub order: Option<usize>,
    pub seed: u64,
    pub steps: Option<usize>,
    pub copies: Option<usize>,
    pub format: Format,
    pub budget: Option<u64>,
}

fn parse_source(data: Option<&str>, graph: Option<&str>) -> Result<Source, CliError> {
    let parse_data = |s: &str| s.parse::<HeightData>().map_err(|e| CliError::Input(e.to_string()));
    match (data, graph) {
        (Some(_), Some(_)) => Err(CliError::Input("give either --data or --graph, not both".into())),
        (None, None) => Err(CliError::Input("missing --data or --graph".into())),
        (Some(d), None) => Ok(Source::Data(parse_data(d)?)),
        (None, Some(g)) => {
            let g = g.trim();
            if g.eq_ignore_ascii_case("fibonacci") {
                Ok(Source::Fibonacci)
            } else if let Some(n) = g.strip_prefix("dyck:") {
                Ok(Source::Data(parse_data(n)?))
            } else {
                Err(CliError::Input(format!("unknown graph `{g}`; expected `fibonacci` or `dyck:N`")))
            }
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Input(format!("invalid value `{value}` for `{key}`")))
}

/// Fills unset flags from `key = value` lines; blank lines and `#` comments
/// are skipped.
fn merge_file(flags: &mut Flags, text: &str) -> Result<(), CliError> {
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("config line {}: expected `key = value`", i + 1)))?;
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        match key {
            "data" => flags.data = flags.data.take().or(Some(value.to_string())),
            "graph" => flags.graph = flags.graph.take().or(Some(value.to_string())),
            "n" => flags.n = flags.n.or(Some(parse_value(key, value)?)),
            "order" => flags.order = flags.order.or(Some(parse_value(key, value)?)),
            "seed" => flags.seed = flags.seed.or(Some(parse_value(key, value)?)),
            "steps" => flags.steps = flags.steps.or(Some(parse_value(key, value)?)),
            "copies" => flags.copies = flags.copies.or(Some(parse_value(key, value)?)),
            "format" => flags.format = flags.format.or(Some(value.parse()?)),
            "budget" => flags.budget = flags.budget.or(Some(parse_value(key, value)?)),
            _ => return Err(CliError::Input(format!("config line {}: unknown key `{key}`", i + 1))),
        }
    }
    Ok(())
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<Self, CliError> {
        let mut flags = cli.flags;
        if let Some(path) = flags.config.take() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            merge_file(&mut flags, &text)?;
        }
        Ok(Self {
            command: cli.command,
            source: parse_source(flags.data.as_deref(), flags.graph.as_deref())?,
            n: flags.n,
            order: flags.order,
            seed: flags.seed.unwrap_or(0),
            steps: flags.steps,
            copies: flags.copies,
            format: flags.format.unwrap_or(Format::Json),
            budget: flags.budget,
        })
    }
}
