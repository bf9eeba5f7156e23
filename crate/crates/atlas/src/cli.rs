use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use atlas_core::classify::{classify_trivial_source, liftable_catalog};

use crate::dot;
use crate::input::{Block, BlockInputFile, CliError};
use crate::report::{
    render_classify, render_hooks, render_liftable, render_pims, render_walk, to_json, BlockDto, ClassifyDto,
    HookDto, HooksDto, LiftableDto, PimDto, PimsDto, TrivialSourceDto, WalkDto,
};
use crate::verify::{self, SweepConfig};

#[derive(Debug, Parser)]
#[command(name = "atlas", version, about = "Trivial source and liftable modules of blocks with cyclic defect group")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DotTarget {
    Tree,
    Tube,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    /// Block description (JSON)
    #[arg(long)]
    pub tree: PathBuf,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Trivial source modules with vertex D_i, for one i or all of them
    Classify {
        #[command(flatten)]
        args: TreeArgs,
        #[arg(long)]
        vertex_index: Option<u32>,
    },
    /// All liftable modules with their tube positions and lifts
    Liftable {
        #[command(flatten)]
        args: TreeArgs,
    },
    /// The 2e hooks
    Hooks {
        #[command(flatten)]
        args: TreeArgs,
    },
    /// Green's walk from the first non-exceptional leaf
    Walk {
        #[command(flatten)]
        args: TreeArgs,
    },
    /// Projective indecomposables
    Pims {
        #[command(flatten)]
        args: TreeArgs,
    },
    /// DOT for the tree or the tube
    EmitDot {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, value_enum)]
        what: DotTarget,
    },
    /// Check every closed form against its oracle
    Verify {
        #[arg(long, default_value_t = 128)]
        max_pn: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random trees per block with e > 4
        #[arg(long, default_value_t = 2)]
        trees_per_point: usize,
        /// Primes for the matrix sweeps
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 5, 7, 11])]
        primes: Vec<u64>,
    },
}

fn load(args: &TreeArgs, err: &mut dyn Write) -> Result<Block, CliError> {
    let block = BlockInputFile::read(&args.tree)?.block()?;
    if block.dade_cleared {
        let _ = writeln!(err, "warning: a_(n-1) is always 0 for p = 2; the given bit was cleared");
    }
    Ok(block)
}

fn emit<T: serde::Serialize>(format: Format, dto: &T, table: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Table => table(dto),
        Format::Json => to_json(dto),
    }
}

fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let text = match cli.command {
        Command::Classify { args, vertex_index } => {
            let b = load(&args, err)?;
            let indices: Vec<u32> = match vertex_index {
                Some(i) => vec![i],
                None => (1..=b.tree.params().n()).collect(),
            };
            let reports = indices
                .into_iter()
                .map(|i| classify_trivial_source(&b.tree, &b.dade, i).map(|r| TrivialSourceDto::new(&b.tree, &r)))
                .collect::<Result<_, _>>()?;
            let dto = ClassifyDto { block: BlockDto::new(&b.tree, &b.dade), reports };
            emit(args.format, &dto, render_classify)
        }
        Command::Liftable { args } => {
            let b = load(&args, err)?;
            let dto = LiftableDto::new(&b.tree, &b.dade, &liftable_catalog(&b.tree)?);
            let text = emit(args.format, &dto, render_liftable);
            if !dto.count.holds() {
                return Err(CliError::Consistency(format!(
                    "{} liftable modules ({} non-projective), expected {} ({})",
                    dto.count.total, dto.count.non_projective, dto.count.expected_total, dto.count.expected_non_projective
                )));
            }
            text
        }
        Command::Hooks { args } => {
            let b = load(&args, err)?;
            let hooks = b.tree.hooks().iter().map(|h| HookDto::new(&b.tree, h)).collect();
            emit(args.format, &HooksDto { block: BlockDto::new(&b.tree, &b.dade), hooks }, render_hooks)
        }
        Command::Walk { args } => {
            let b = load(&args, err)?;
            let steps = b.tree.default_greens_walk()?.iter().map(|h| HookDto::new(&b.tree, h)).collect();
            emit(args.format, &WalkDto { block: BlockDto::new(&b.tree, &b.dade), steps }, render_walk)
        }
        Command::Pims { args } => {
            let b = load(&args, err)?;
            let pims = b.tree.pims().iter().map(|p| PimDto::new(&b.tree, p)).collect();
            emit(args.format, &PimsDto { block: BlockDto::new(&b.tree, &b.dade), pims }, render_pims)
        }
        Command::EmitDot { tree, what } => {
            let b = load(&TreeArgs { tree, format: Format::Table }, err)?;
            match what {
                DotTarget::Tree => dot::tree(&b.tree),
                DotTarget::Tube => dot::tube(&b.tree, &b.dade)?,
            }
        }
        Command::Verify { max_pn, seed, trees_per_point, primes } => {
            let cfg = SweepConfig { max_pn, seed, trees_per_point, primes, ..SweepConfig::default() };
            let report = verify::run(&cfg)?;
            let mut text = format!(
                "sweep: {} groups, {} trees ({} random, seed {})\n",
                report.groups, report.trees, report.random_trees, cfg.seed
            );
            for c in &report.checks {
                text.push_str(&format!("{c}\n"));
            }
            write_out(out, &text)?;
            if !report.passed() {
                return Err(CliError::Consistency("verification failed".into()));
            }
            return Ok(());
        }
    };
    write_out(out, &text)
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code: 0 on success, 2 for bad input, 3 for a consistency failure.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
