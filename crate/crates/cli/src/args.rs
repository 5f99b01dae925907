use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Single-qubit channels from two-qubit dynamics: Choi matrices, negativity and sweeps.
///
/// Angles are in radians. Parameters are given as repeated `--param name=value`.
#[derive(Debug, Parser)]
#[command(name = "negativity", version, propagate_version = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Assemble the Choi matrix of a channel and write it as JSON.
    Choi(ChoiArgs),
    /// Negativity report for a channel or a Choi matrix file.
    Negativity(NegativityArgs),
    /// Evaluate the negativity over a parameter grid and emit CSV.
    Sweep(SweepArgs),
    /// Like `sweep`, keeping only the grid points that are completely positive.
    Cpmap(CpmapArgs),
    /// Negativity distance and trace distance between an expected and an implemented gate.
    Distance(DistanceArgs),
    /// Convert between positivity and negativity.
    Convert(ConvertArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Human-readable, rounded to 3 significant digits.
    Text,
}

#[derive(Debug, Args)]
pub struct ChannelArgs {
    /// Coupling: rootswap, cz, czprime (delta), czdoubleprime (delta, xi), utheta (theta),
    /// rabi (kz, t; optional nu, omega) or custom (--unitary).
    #[arg(long)]
    pub coupling: Option<String>,

    /// JSON file with the 4x4 coupling unitary for `--coupling custom`.
    #[arg(long, value_name = "PATH")]
    pub unitary: Option<PathBuf>,

    #[command(flatten)]
    pub sharp: SharpArgs,
}

#[derive(Debug, Args)]
pub struct SharpArgs {
    /// Assignment map: hadamard, rotation (phi), alpha (alpha), product (p0) or
    /// conjugation (--sharp-unitary).
    #[arg(long, default_value = "hadamard")]
    pub sharp: String,

    /// JSON file with the 2x2 bath unitary for `--sharp conjugation`.
    #[arg(long, value_name = "PATH")]
    pub sharp_unitary: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChoiArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,

    /// Parameter assignment `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// json or text.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct NegativityArgs {
    #[command(flatten)]
    pub channel: ChannelArgs,

    /// Read the Choi matrix from a JSON file instead of building a channel.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["coupling", "unitary"])]
    pub choi: Option<PathBuf>,

    /// Parameter assignment `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// json or text.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Family: rabi, utheta, alpha, theta_alpha, czprime or czdoubleprime.
    #[arg(long)]
    pub family: String,

    /// Grid axis `name=start:stop:count`; repeatable, last axis varies fastest.
    #[arg(long = "axis", value_name = "NAME=START:STOP:COUNT", required = true)]
    pub axes: Vec<String>,

    /// Fixed parameter `name=value`; repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// csv or json.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct CpmapArgs {
    #[command(flatten)]
    pub grid: GridArgs,

    /// Points with eta below this threshold count as completely positive.
    #[arg(long, default_value_t = negativity_core::sweep::DEFAULT_CP_TOLERANCE)]
    pub eta_tol: f64,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// Expected coupling (same names as `--coupling`).
    #[arg(long, required_unless_present = "expected_choi", conflicts_with = "expected_choi")]
    pub expected: Option<String>,

    /// Implemented coupling (same names as `--coupling`).
    #[arg(
        long,
        required_unless_present = "implemented_choi",
        conflicts_with = "implemented_choi"
    )]
    pub implemented: Option<String>,

    /// Expected Choi matrix from a JSON file.
    #[arg(long, value_name = "PATH")]
    pub expected_choi: Option<PathBuf>,

    /// Implemented Choi matrix from a JSON file.
    #[arg(long, value_name = "PATH")]
    pub implemented_choi: Option<PathBuf>,

    /// JSON file with the expected 4x4 unitary when `--expected custom`.
    #[arg(long, value_name = "PATH")]
    pub expected_unitary: Option<PathBuf>,

    /// JSON file with the implemented 4x4 unitary when `--implemented custom`.
    #[arg(long, value_name = "PATH")]
    pub implemented_unitary: Option<PathBuf>,

    #[command(flatten)]
    pub sharp: SharpArgs,

    /// Parameter `name=value`, shared by both gates; prefix with `expected.` or
    /// `implemented.` to target one side. Repeatable.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    pub params: Vec<String>,

    /// json or text.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ConvertArgs {
    /// Positivity in [0, 1]; prints the negativity.
    #[arg(long)]
    pub positivity: Option<f64>,

    /// Negativity in [0, 1/2); prints the positivity.
    #[arg(long)]
    pub negativity: Option<f64>,
}
