//! The `passage` command line. [`run`] takes arguments and output streams so it
//! can be driven from tests; [`main`] wires it to the process.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    geometry_correlation, overlap_curve, scale_similarity, sensitivity_curve, write_pgm, CurveSeries,
    SimilarityParams,
};
use crate::bitgrid::SheetKind;
use crate::engine::{self, LoadedRun, MemoryRun, Mode, RunConfig, RunStatus, SheetSource, VariantSource};
use crate::error::{Error, Result};
use crate::oracle::{self, Bound, BruteForce, DiffReport};
use crate::rules::Game;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_ABORT: i32 = 3;
pub const EXIT_CONFIG: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "passage", version, about = "Sheet recursions for 3-pile Nim and 3-row Chomp")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a run and write its sheets and manifest.
    Compute(ComputeArgs),
    /// Check a run against an oracle, or check the pass/generic equivalence.
    Verify(VerifyArgs),
    /// Run an experiment and write its curve as CSV.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Render sheets of one level as a PGM image.
    Render(RenderArgs),
    /// Summarize a run directory.
    Info {
        #[arg(long)]
        run: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GameArg {
    Nim,
    Chomp,
}

impl From<GameArg> for Game {
    fn from(g: GameArg) -> Game {
        match g {
            GameArg::Nim => Game::Nim3,
            GameArg::Chomp => Game::Chomp3,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Pure,
    Pass,
    Generic,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Pure => Mode::Pure,
            ModeArg::Pass => Mode::WithPass,
            ModeArg::Generic => Mode::Generic,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct Extents {
    /// Sheet width (default 4 X + 64).
    #[arg(long)]
    width: Option<usize>,
    /// Rows kept exact at every level (default half the width).
    #[arg(long)]
    height: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct VariantArgs {
    /// CSV of `x,y,z` variant positions.
    #[arg(long, conflicts_with = "per_column_sigma")]
    variant_file: Option<PathBuf>,
    /// One variant per row, normally scattered about the diagonal.
    #[arg(long)]
    per_column_sigma: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl VariantArgs {
    fn source(&self) -> Result<VariantSource> {
        if let Some(path) = &self.variant_file {
            return read_variant_file(path);
        }
        Ok(match self.per_column_sigma {
            Some(sigma) => VariantSource::PerColumnNormal { sigma, seed: self.seed },
            None => VariantSource::None,
        })
    }
}

#[derive(Args, Debug)]
struct ComputeArgs {
    #[arg(long, value_enum)]
    game: GameArg,
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    levels: u32,
    #[command(flatten)]
    extents: Extents,
    #[command(flatten)]
    variants: VariantArgs,
    /// Comma-separated sheet kinds to write (default: all of the mode's kinds).
    #[arg(long, value_delimiter = ',')]
    emit: Option<Vec<String>>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OracleArg {
    Bouton,
    ClosedForm,
    Brute,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EquivalenceArg {
    PassGeneric,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, required_unless_present = "equivalence", requires = "oracle")]
    run: Option<PathBuf>,
    #[arg(long, value_enum)]
    oracle: Option<OracleArg>,
    /// Nim box side or Chomp coordinate-sum bound for the brute-force oracle.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, value_enum, conflicts_with = "run", requires_all = ["game", "levels"])]
    equivalence: Option<EquivalenceArg>,
    #[arg(long, value_enum)]
    game: Option<GameArg>,
    #[arg(long)]
    levels: Option<u32>,
    #[command(flatten)]
    extents: Extents,
}

#[derive(Subcommand, Debug)]
enum Experiment {
    /// Per-level overlap of pass losers with the supermex of the pass winners.
    Overlap {
        /// A pass run; computed in memory from --game/--levels when absent.
        #[arg(long, required_unless_present = "levels")]
        run: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "nim")]
        game: GameArg,
        #[arg(long)]
        levels: Option<u32>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Fraction of P-positions moved by one extra variant cell.
    Sensitivity {
        #[arg(long, value_enum, default_value = "nim")]
        game: GameArg,
        #[arg(long)]
        levels: u32,
        #[arg(long)]
        perturb_level: u32,
        /// Row of the perturbed P-position (default half the perturbation level).
        #[arg(long)]
        perturb_row: Option<u32>,
        #[command(flatten)]
        extents: Extents,
        #[command(flatten)]
        variants: VariantArgs,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Density correlation of level X with level 2X.
    Scale {
        #[arg(long)]
        run: PathBuf,
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Density correlation of two runs' sheets at one level.
    Geometry {
        #[arg(long)]
        run_a: PathBuf,
        #[arg(long)]
        run_b: Option<PathBuf>,
        /// Sheet kind of run A (default: its mode's winners).
        #[arg(long)]
        kind_a: Option<String>,
        /// Sheet kind of run B (default: its mode's winners).
        #[arg(long)]
        kind_b: Option<String>,
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct GridArgs {
    #[arg(long, default_value_t = 32)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    c: usize,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    run: PathBuf,
    #[arg(long)]
    level: u32,
    /// `winners`, `losers`, or sheet kind names, comma-separated.
    #[arg(long, value_delimiter = ',', default_value = "winners")]
    compose: Vec<String>,
    #[arg(long)]
    out: PathBuf,
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Overflow { .. }
        | Error::DiagonalRowEmpty
        | Error::DiagonalRowAmbiguous { .. } => EXIT_ABORT,
        Error::Integrity(_) => EXIT_MISMATCH,
        _ => EXIT_CONFIG,
    }
}

/// Parse `args` (program name first), run the command, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn main() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Compute(args) => compute(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Experiment(e) => experiment(e, out),
        Command::Render(args) => render(args, out),
        Command::Info { run } => info(&run, out),
    }
}

fn say(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> Result<()> {
    out.write_fmt(text)
        .and_then(|()| out.write_all(b"\n"))
        .map_err(|e| Error::io("<stdout>", e))
}

macro_rules! say {
    ($out:expr, $($t:tt)*) => { say($out, format_args!($($t)*)) };
}

fn config_for(game: Game, mode: Mode, levels: u32, extents: &Extents) -> RunConfig {
    let mut c = RunConfig::new(game, mode, levels);
    if let Some(w) = extents.width {
        c = c.with_width(w);
        c = c.with_target_height(w / 2);
    }
    if let Some(h) = extents.height {
        c = c.with_target_height(h);
    }
    c
}

fn parse_kind(s: &str) -> Result<SheetKind> {
    s.trim().parse()
}

fn compute(args: ComputeArgs, out: &mut dyn Write) -> Result<i32> {
    let mode = Mode::from(args.mode);
    let variants = args.variants.source()?;
    if mode != Mode::Generic && (args.variants.variant_file.is_some() || args.variants.per_column_sigma.is_some()) {
        return Err(Error::config("variant flags are only valid with --mode generic"));
    }
    let mut config = config_for(args.game.into(), mode, args.levels, &args.extents)
        .with_variants(variants)
        .with_out_dir(&args.out);
    if let Some(kinds) = &args.emit {
        config.emit = kinds.iter().map(|k| parse_kind(k)).collect::<Result<_>>()?;
    }
    match engine::run(&config) {
        Ok(manifest) => {
            say!(out, "{} {} run: {} levels, {}x{} sheets, {} files in {}",
                manifest.game, manifest.mode, manifest.levels_completed, manifest.height,
                manifest.width, manifest.files.len(), args.out.display())?;
            let run = LoadedRun::open(&args.out)?;
            let last = manifest.levels_completed - 1;
            for kind in &manifest.emit {
                if let Some(sheet) = run.sheet(*kind, last)? {
                    say!(out, "  {kind} at level {last}: fill {:.6}", sheet.fill_fraction())?;
                }
            }
            Ok(EXIT_OK)
        }
        Err(e) => {
            if let Some(level) = e_level(&e) {
                say!(out, "aborted at level {level}")?;
            }
            Err(e)
        }
    }
}

fn e_level(e: &Error) -> Option<u32> {
    match e {
        Error::Overflow { level, .. } => *level,
        _ => None,
    }
}

fn report(out: &mut dyn Write, label: &str, r: &DiffReport) -> Result<i32> {
    say!(out, "{label}: {} cells compared, {} mismatches", r.compared, r.mismatch_count)?;
    for m in &r.mismatches {
        say!(out, "  mismatch {m}")?;
    }
    if r.mismatch_count as usize > r.mismatches.len() {
        say!(out, "  ({} more not listed)", r.mismatch_count as usize - r.mismatches.len())?;
    }
    Ok(if r.is_clean() { EXIT_OK } else { EXIT_MISMATCH })
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    if let Some(EquivalenceArg::PassGeneric) = args.equivalence {
        let game: Game = args.game.expect("clap requires --game").into();
        let levels = args.levels.expect("clap requires --levels");
        let base = config_for(game, Mode::WithPass, levels, &args.extents);
        let e = oracle::pass_generic_equivalence(game, levels, Some(base.width), Some(base.target_height))?;
        return match e.first_difference {
            None => {
                say!(out, "pass and generic runs agree bitwise on {levels} levels: 0 mismatches")?;
                Ok(EXIT_OK)
            }
            Some((level, a, b)) => {
                say!(out, "mismatch: {a} and {b} differ at level {level}")?;
                Ok(EXIT_MISMATCH)
            }
        };
    }

    let dir = args.run.expect("clap requires --run");
    let run = LoadedRun::open(&dir)?;
    let damaged = run.damaged_files();
    for path in &damaged {
        say!(out, "checksum mismatch: {}", path.display())?;
    }
    let run = run.without_checksums();
    let r = match args.oracle.expect("clap requires --oracle") {
        OracleArg::Bouton => oracle::diff_bouton(&run)?,
        OracleArg::ClosedForm => oracle::diff_closed_form(&run)?,
        OracleArg::Brute => {
            let game = run.game();
            let bound = args.bound.map_or(Bound::default_for(game), |b| Bound::for_game(game, b));
            let mut solver = BruteForce::new(game, bound).with_pass(run.mode() == Mode::WithPass);
            if run.mode() == Mode::Generic {
                solver = solver.with_variants(variant_cells(&run, bound)?);
            }
            oracle::diff_table(&run, &solver.solve()?)?
        }
    };
    let code = report(out, "verify", &r)?;
    Ok(if damaged.is_empty() { code } else { EXIT_MISMATCH })
}

/// Variant positions of a generic run inside `bound`, read from its stored V sheets.
fn variant_cells(run: &dyn SheetSource, bound: Bound) -> Result<Vec<(u32, u32, u32)>> {
    if !run.has_kind(SheetKind::V) {
        return Err(Error::config("brute-force checks of generic runs need the run's v sheets"));
    }
    let mut cells = Vec::new();
    for x in 0..run.levels() {
        let v = run.require(SheetKind::V, x)?;
        cells.extend(
            v.cells()
                .map(|(y, z)| (x, y as u32, z as u32))
                .filter(|&(x, y, z)| bound.contains(x, y, z)),
        );
    }
    Ok(cells)
}

fn write_curve(out: &mut dyn Write, curve: &CurveSeries, csv: Option<&Path>) -> Result<()> {
    match csv {
        Some(path) => {
            curve.write_csv(path)?;
            say!(out, "wrote {} points to {}", curve.len(), path.display())
        }
        None => out
            .write_all(curve.to_csv().as_bytes())
            .map_err(|e| Error::io("<stdout>", e)),
    }
}

fn print_mean(out: &mut dyn Write, curve: &CurveSeries, lo: u32, hi: u32) -> Result<Option<f64>> {
    let m = curve.mean_over(lo..=hi);
    match m {
        Some(v) => say!(out, "mean over [{lo},{hi}]: {v:.6}")?,
        None => say!(out, "mean over [{lo},{hi}]: no levels")?,
    }
    Ok(m)
}

fn print_correlation(out: &mut dyn Write, label: &str, value: Option<f64>) -> Result<i32> {
    match value {
        Some(v) => say!(out, "{label}: {v:.6}")?,
        None => say!(out, "{label}: undefined (constant density grid)")?,
    }
    Ok(EXIT_OK)
}

fn experiment(e: Experiment, out: &mut dyn Write) -> Result<i32> {
    match e {
        Experiment::Overlap { run, game, levels, csv } => {
            let curve = match (run, levels) {
                (Some(dir), _) => overlap_curve(&engine::load_run(dir)?)?,
                (None, Some(levels)) => {
                    let mem: MemoryRun = engine::run_in_memory(&RunConfig::new(game.into(), Mode::WithPass, levels))?;
                    overlap_curve(&mem)?
                }
                (None, None) => return Err(Error::config("overlap needs --run or --levels")),
            };
            write_curve(out, &curve, csv.as_deref())?;
            let early = print_mean(out, &curve, 1, 50)?;
            let late = print_mean(out, &curve, 150, 200)?;
            if let (Some(a), Some(b)) = (early, late) {
                say!(out, "late minus early: {:.6}", b - a)?;
            }
            Ok(EXIT_OK)
        }
        Experiment::Sensitivity { game, levels, perturb_level, perturb_row, extents, variants, csv } => {
            let base = config_for(game.into(), Mode::Generic, levels, &extents).with_variants(variants.source()?);
            let y0 = perturb_row.unwrap_or(perturb_level / 2);
            let outcome = sensitivity_curve(&base, perturb_level, y0)?;
            let (x0, y0, z0) = outcome.perturbed;
            say!(out, "perturbed P-position [{x0},{y0},{z0}]")?;
            write_curve(out, &outcome.curve, csv.as_deref())?;
            let before = outcome.curve.max_over(0..=x0.saturating_sub(1)).filter(|_| x0 > 0).unwrap_or(0.0);
            say!(out, "max before level {x0}: {before:.6}")?;
            if let Some(m) = outcome.curve.max_over(x0..=x0 + 25) {
                say!(out, "max over [{x0},{}]: {m:.6}", x0 + 25)?;
            }
            Ok(EXIT_OK)
        }
        Experiment::Scale { run, level, grid } => {
            let run = engine::load_run(run)?;
            let params = SimilarityParams { k: grid.k, c: grid.c, kind: None };
            let r = scale_similarity(&run, level, params)?;
            print_correlation(out, &format!("scale similarity {level} vs {}", 2 * level), r)
        }
        Experiment::Geometry { run_a, run_b, kind_a, kind_b, level, grid } => {
            let a = engine::load_run(&run_a)?;
            let b = match &run_b {
                Some(dir) => Some(engine::load_run(dir)?),
                None => None,
            };
            let b_ref: &dyn SheetSource = b.as_ref().map_or(&a as &dyn SheetSource, |b| b);
            let ka = kind_a.as_deref().map(parse_kind).transpose()?.unwrap_or(a.mode().primary_kinds().0);
            let kb = kind_b.as_deref().map(parse_kind).transpose()?.unwrap_or(b_ref.mode().primary_kinds().0);
            let params = SimilarityParams { k: grid.k, c: grid.c, kind: None };
            let r = geometry_correlation((&a, ka), (b_ref, kb), level, params)?;
            print_correlation(out, &format!("geometry correlation {ka} vs {kb} at level {level}"), r)
        }
    }
}

fn render(args: RenderArgs, out: &mut dyn Write) -> Result<i32> {
    let run = engine::load_run(&args.run)?;
    let (win_kind, lose_kind) = run.mode().primary_kinds();
    let (mut winners, mut losers) = (None, None);
    for token in &args.compose {
        let kind = match token.trim() {
            "winners" => win_kind,
            "losers" => lose_kind,
            other => parse_kind(other)?,
        };
        let slot = if kind.is_loser() { &mut losers } else { &mut winners };
        *slot = Some(run.require(kind, args.level)?);
    }
    write_pgm(&args.out, winners.as_ref(), losers.as_ref())?;
    say!(out, "wrote {}", args.out.display())?;
    Ok(EXIT_OK)
}

fn info(dir: &Path, out: &mut dyn Write) -> Result<i32> {
    let run = LoadedRun::open(dir)?;
    let m = run.manifest();
    say!(out, "game {} mode {} levels {}/{} status {}", m.game, m.mode, m.levels_completed, m.levels,
        match m.status {
            RunStatus::Complete => "complete",
            RunStatus::Overflow => "overflow",
            RunStatus::Aborted => "aborted",
        })?;
    say!(out, "sheets {}x{} (exact target {}), seed {}", m.height, m.width, m.target_height,
        m.seed.map_or("none".to_string(), |s| s.to_string()))?;
    let kinds: Vec<String> = m.emit.iter().map(|k| k.to_string()).collect();
    say!(out, "emitted kinds {}, {} files", kinds.join(","), m.files.len())?;
    if let Some(e) = &m.error {
        say!(out, "failed at level {}: {e}", m.failed_level.unwrap_or(0))?;
    }
    let damaged = run.damaged_files();
    say!(out, "checksums: {}", if damaged.is_empty() { "ok".to_string() } else { format!("{} damaged", damaged.len()) })?;
    Ok(if damaged.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
}

/// Parse a variant CSV: `x,y,z` per line, optional header, blank lines ignored.
pub fn read_variant_file(path: &Path) -> Result<VariantSource> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_variant_csv(&text)
}

pub fn parse_variant_csv(text: &str) -> Result<VariantSource> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Option<Vec<u32>> = fields.iter().map(|f| f.parse().ok()).collect();
        match parsed {
            Some(v) if v.len() == 3 => points.push((v[0], v[1], v[2])),
            None if i == 0 => continue,
            _ => return Err(Error::config(format!("variant file line {}: expected x,y,z", i + 1))),
        }
    }
    Ok(if points.is_empty() { VariantSource::None } else { VariantSource::points(points) })
}
