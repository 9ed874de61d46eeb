//! Command-line flags and the equivalent JSON job file.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "confocal", version, about = "Confocal quadrics: coordinates, meshes, string lengths, verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Elliptic coordinates and axes table of a point.
    Elliptic(Common),
    /// OBJ or CSV export of confocal surfaces, focal sets, Apollonian curves or common edges.
    Mesh(Common),
    /// String length of the focal-conic construction at a point of the ellipsoid.
    Staude(Common),
    /// Seeded invariant suites.
    Verify(Common),
    /// Runs a JSON job file.
    Job {
        /// Path of the job file.
        path: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Elliptic,
    Mesh,
    Staude,
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Obj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MeshKind {
    Surfaces,
    Focal,
    Apollonian,
    Edges,
}

/// Flags shared by the subcommands; each command reads the ones it needs.
#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// Squared semi-axes, strictly decreasing.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub axes: Vec<f64>,
    /// Semi-axes; squared before use.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "axes")]
    pub lengths: Vec<f64>,
    /// Point coordinates (the apex for edges, the anchor for Apollonian curves).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub point: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Axis guard (elliptic) or surface tolerance (staude).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Sample count (mesh resolution, curve samples, staude sweep).
    #[arg(long)]
    pub samples: Option<usize>,
    /// Push coordinates inside the axis guard out to it.
    #[arg(long)]
    pub nudge: bool,
    /// Project an off-surface point radially onto the ellipsoid.
    #[arg(long)]
    pub project: bool,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write the result to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Suites to run (verify).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    /// Largest dimension of the verify sweep.
    #[arg(long)]
    pub n: Option<usize>,
    /// Perturb the Apollonius identity to exercise the failure path.
    #[arg(long)]
    pub force_failure: bool,
    #[arg(long, value_enum)]
    pub kind: Option<MeshKind>,
    /// Confocal parameters of the exported surfaces.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambdas: Vec<f64>,
}

/// One run of a command, from flags or from a job file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: CommandKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lengths: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<f64>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default)]
    pub nudge: bool,
    #[serde(default)]
    pub project: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub only: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub force_failure: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<MeshKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambdas: Option<Vec<f64>>,
}

fn non_empty(v: Vec<f64>) -> Option<Vec<f64>> {
    (!v.is_empty()).then_some(v)
}

impl JobSpec {
    pub fn from_flags(command: CommandKind, c: Common) -> Self {
        Self {
            command,
            axes: non_empty(c.axes),
            lengths: non_empty(c.lengths),
            point: non_empty(c.point),
            seed: c.seed,
            tol: c.tol,
            samples: c.samples,
            nudge: c.nudge,
            project: c.project,
            format: c.format,
            output: c.output,
            only: c.only,
            n: c.n,
            force_failure: c.force_failure,
            kind: c.kind,
            lambdas: non_empty(c.lambdas),
        }
    }

    /// Squared axes from `axes` or `lengths`, if either is given.
    pub fn sq_axes(&self) -> Result<Option<Vec<f64>>, String> {
        match (&self.axes, &self.lengths) {
            (Some(_), Some(_)) => Err("give either axes or lengths, not both".into()),
            (Some(a), None) => Ok(Some(a.clone())),
            (None, Some(l)) => Ok(Some(l.iter().map(|v| v * v).collect())),
            (None, None) => Ok(None),
        }
    }
}
