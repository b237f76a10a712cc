//! Argument parsing for the `rtp` binary.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cstar::DEFAULT_TOL;
use crate::harness::commands::{
    cmd_check, cmd_level_build, cmd_parabolic_demo, cmd_report, cmd_suite, cmd_validate, CheckKind, Outcome,
    EXIT_PARSE, EXIT_PASS,
};
use crate::harness::config::RunConfig;
use crate::harness::fixtures::{fixture_dir, write_all};
use crate::harness::suites::SuiteOptions;
use crate::parabolic::KChoice;

#[derive(Parser, Debug)]
#[command(name = "rtp", version, about = "Level-by-level checks of restricted tensor products and parabolic induction")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct GlobalArgs {
    /// Seed of the per-item random streams.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Tolerance for every defect without its own bound.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Keep wall-clock times in reports (they then differ between runs).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate any input document.
    Validate { file: PathBuf },
    /// Family documents.
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Level objects of a family.
    Level {
        #[command(subcommand)]
        action: LevelAction,
    },
    /// Run one check between two levels of a family.
    Check {
        kind: CheckArg,
        file: PathBuf,
        #[arg(long = "S", value_delimiter = ',', required = true)]
        s: Vec<usize>,
        #[arg(long = "Sprime", value_delimiter = ',', required = true)]
        sprime: Vec<usize>,
    },
    /// Run a seeded suite: isometry, compacts, coherence, induction, parabolic or factorization.
    Suite {
        name: String,
        #[command(flatten)]
        opts: SuiteArgs,
    },
    /// Merge report files into a per-check summary.
    Report { paths: Vec<PathBuf> },
    /// The GL_2 parabolic induction pipeline.
    Parabolic {
        #[command(subcommand)]
        action: ParabolicAction,
    },
    /// Shipped fixture documents.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum FamilyAction {
    Validate { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum LevelAction {
    Build {
        file: PathBuf,
        #[arg(long = "S", value_delimiter = ',', required = true)]
        s: Vec<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ParabolicAction {
    Demo {
        #[command(flatten)]
        opts: SuiteArgs,
        /// Same as `--out`.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FixturesAction {
    /// Regenerate every fixture under DIR (default: the fixture directory).
    Write { dir: Option<PathBuf> },
}

#[derive(Args, Debug, Clone)]
pub struct SuiteArgs {
    /// Number of random items.
    #[arg(long)]
    pub count: Option<usize>,
    /// Field sizes, one place each.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub q: Vec<u32>,
    /// Character labels of the tori, `trivial` or `char<i>`.
    #[arg(long, value_delimiter = ',')]
    pub rho: Vec<String>,
    /// `full` or `sl2` per place.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<KChoice>,
}

impl SuiteArgs {
    fn options(&self) -> SuiteOptions {
        SuiteOptions { count: self.count, fields: self.q.clone(), rhos: self.rho.clone(), k: self.k.clone() }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckArg {
    Isometry,
    Compacts,
    Coherence,
    Induction,
}

impl From<CheckArg> for CheckKind {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Isometry => CheckKind::Isometry,
            CheckArg::Compacts => CheckKind::Compacts,
            CheckArg::Coherence => CheckKind::Coherence,
            CheckArg::Induction => CheckKind::Induction,
        }
    }
}

fn dispatch(cli: Cli) -> Outcome {
    let g = cli.global;
    let mut cfg = RunConfig { seed: g.seed, tol: g.tol, parallelism: g.jobs, out: g.out, timing: g.timing };
    if let Err(e) = cfg.check() {
        return Outcome::from_error(&e);
    }
    match cli.command {
        Command::Validate { file } | Command::Family { action: FamilyAction::Validate { file } } => {
            cmd_validate(&file, &cfg)
        }
        Command::Level { action: LevelAction::Build { file, s } } => cmd_level_build(&file, &s, &cfg),
        Command::Check { kind, file, s, sprime } => cmd_check(kind.into(), &file, &s, &sprime, &cfg),
        Command::Suite { name, opts } => cmd_suite(&name, &opts.options(), &cfg),
        Command::Report { paths } => cmd_report(&paths),
        Command::Parabolic { action: ParabolicAction::Demo { opts, report } } => {
            if report.is_some() {
                cfg.out = report;
            }
            cmd_parabolic_demo(&opts.options(), &cfg)
        }
        Command::Fixtures { action: FixturesAction::Write { dir } } => {
            let dir = dir.unwrap_or_else(fixture_dir);
            match write_all(&dir) {
                Ok(paths) => Outcome {
                    code: EXIT_PASS,
                    json: String::new(),
                    message: Some(format!("wrote {} fixtures under {}", paths.len(), dir.display())),
                },
                Err(e) => Outcome::from_error(&e),
            }
        }
    }
    .with_out(&cfg)
}

impl Outcome {
    /// Writes the JSON to `cfg.out` when set; the outcome then carries no JSON.
    fn with_out(mut self, cfg: &RunConfig) -> Outcome {
        if let Some(path) = &cfg.out {
            if !self.json.is_empty() {
                if let Err(e) = std::fs::write(path, &self.json) {
                    return Outcome::from_error(&e.into());
                }
                self.json.clear();
            }
        }
        self
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run(args: impl IntoIterator<Item = String>, stdout: &mut impl Write, stderr: &mut impl Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let outcome = dispatch(cli);
    let _ = stdout.write_all(outcome.json.as_bytes());
    if let Some(m) = &outcome.message {
        let _ = writeln!(stderr, "{m}");
    }
    outcome.code
}
