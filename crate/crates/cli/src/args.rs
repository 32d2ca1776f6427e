use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(
    name = "expcone",
    version,
    about = "Expanding cones of parabolic subgroups and lattice experiments"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write results here instead of stdout; a manifest is written next to it.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Family letter: A, B, C or D.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
    /// Scale of the invariant form, as an exact rational; defaults to the Killing form.
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<String>,
    /// 1-based simple roots removed from Π; `I` is the rest. Default: all.
    #[arg(long)]
    pub parabolic: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generators and facets of the expanding cone.
    Cone {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Whether a Cartan vector lies in the cone.
    Member {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated exact coordinates.
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "open")]
        mode: String,
    },
    /// Exact floor of `s` along the flow `w`.
    Floor {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Squared distance of `s` to the cone boundary under the invariant form.
    Drift {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Compare the cone cut to the fixed space of a diagram automorphism with
    /// the cone of the restricted system.
    Restrict {
        #[command(flatten)]
        system: SystemArgs,
        /// 1-based images of the simple roots, e.g. `3,2,1`.
        #[arg(long)]
        automorphism: String,
    },
    /// Run a lattice experiment from a TOML or JSON config.
    Simulate {
        /// nonescape, translate, periodic_orbit or pointwise.
        experiment: String,
        #[arg(long)]
        config: PathBuf,
    },
}
