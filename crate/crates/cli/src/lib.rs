//! Command-line front end: documents in, reports out.

pub mod commands;
pub mod doc;
pub mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::run_command;
pub use doc::{builtin, parse_input, InputDocument, Session};
pub use report::ReportDocument;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] tiltkit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Core(e) => match e {
                tiltkit::Error::Input(_) | tiltkit::Error::Precondition(_) | tiltkit::Error::NotFiniteDimensional(_) => 2,
                tiltkit::Error::Hypothesis(_) | tiltkit::Error::Internal(_) => 1,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "tiltkit", version, about = "Annihilator ideals, approximations and derived-equivalence certificates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Args)]
pub struct Flags {
    /// Coefficient field, `q` or `fp:<p>`; overrides the document.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the machine report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Half-width of the degree window for `--multiples`.
    #[arg(long, global = true)]
    pub window: Option<i64>,
    /// Number of approximation steps in the ν-stable pipeline.
    #[arg(long, global = true)]
    pub max_steps: Option<usize>,
    /// Record wall time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Input document: a file, or one of A2, A3, A3rad, nakayama4.
    #[arg(long = "doc", visible_alias = "a", global = true)]
    pub doc: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Args)]
pub struct OrbitArgs {
    /// `shift`, or the name of a quiver automorphism (`rotation` for cyclic quivers).
    #[arg(long, default_value = "shift")]
    pub functor: String,
    /// The degree set, e.g. `0,1`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "multiples")]
    pub set: Option<String>,
    /// Use the multiples of this integer inside the window.
    #[arg(long)]
    pub multiples: Option<i64>,
}

#[derive(Debug, Clone, Args)]
pub struct TriangleArgs {
    /// Source of the base map, in the homotopy category (`P2`, `P1[1]`, sums with `+`).
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    /// Coordinates of the base map in the Hom basis; defaults to the first basis element.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// The object M.
    #[arg(long)]
    pub sub: String,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide admissibility of a finite degree set.
    CheckAdmissible {
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Dimension of Hom(m, n).
    Hom {
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// An annihilator ideal component with the annihilator lemma clauses.
    Ideal {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        sub: String,
        #[arg(long)]
        m: String,
        #[arg(long)]
        n: String,
    },
    /// A left or right add(sub)-approximation of m.
    Approx {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        m: String,
        #[arg(long)]
        sub: String,
    },
    /// End(m), optionally modulo an ideal of add(sub).
    EndRing {
        #[arg(long)]
        m: String,
        #[arg(long, requires = "sub")]
        kind: Option<String>,
        #[arg(long)]
        sub: Option<String>,
    },
    /// The homological conditions on a named complex.
    CheckThm1 {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        sub: String,
    },
    /// Certificate for a named complex `X → Q^1 → … → Q^n → Y`.
    VerifyThm1 {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        sub: String,
    },
    /// The ν-stable construction from a projective p and a module y, then its certificate.
    NuPipeline {
        #[arg(long)]
        p: String,
        #[arg(long)]
        y: String,
    },
    /// Certificate for the cone triangle of a map in the homotopy category of projectives.
    VerifyThm2 {
        #[command(flatten)]
        tri: TriangleArgs,
    },
    /// The graded endomorphism algebra of x in an orbit category.
    OrbitYoneda {
        #[arg(long)]
        x: String,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// The ideals and the certificate for a cone triangle in an orbit category.
    OrbitVerify {
        #[command(flatten)]
        tri: TriangleArgs,
        #[command(flatten)]
        orbit: OrbitArgs,
    },
    /// Worked examples: nakayama, a2-triangle, a2-orbit.
    Example { name: String },
}

/// Output of one invocation.
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses `args` (without the program name) and runs the command.
pub fn main_with(args: Vec<String>) -> Outcome {
    let cli = match Cli::try_parse_from(std::iter::once("tiltkit".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match run_command(&cli.command, &cli.flags, args) {
        Ok(rep) => {
            let stdout = if cli.flags.json { rep.to_json() + "\n" } else { rep.to_text() };
            Outcome { stdout, stderr: String::new(), code: if rep.pass { 0 } else { 1 } }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("{e}\n"), code: e.exit_code() },
    }
}
