//! Command-line front end for the dappled tiling toolkit.
//!
//! Subcommands cover the full pipeline: generate a tiling, repair it into a
//! dappled (optionally cyclic) one, count dappled tilings exhaustively,
//! derive brick Wang textures, advect particles over the tiling read as a
//! street network, and render everything to SVG or PPM.
//!
//! Exit codes: 0 on success, 2 for condition or shape errors, 3 for
//! malformed inputs, 4 when an enumeration is refused as too large, 1 for
//! anything else.

use clap::{Parser, Subcommand, ValueEnum};
use dappled::flow::{FlowField, FlowState};
use dappled::oracle::{self, EnumerationOptions};
use dappled::render::{render_tiling_ppm, render_tiling_svg, render_wang_svg, Palette};
use dappled::wang::{validate_wang, wang_from_dappled, WangTiling};
use dappled::{
    dapple, dapple_cyclic, parse_conditions, ConditionSet, DappleOptions, TileSet, Tiling,
};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

fn long_version() -> &'static str {
    static VERSION: std::sync::OnceLock<String> = std::sync::OnceLock::new();
    VERSION
        .get_or_init(|| {
            format!(
                "{} (rng {})",
                env!("CARGO_PKG_VERSION"),
                dappled::rng::GENERATOR_ID
            )
        })
        .as_str()
}

#[derive(Parser)]
#[command(
    name = "dappled",
    version = long_version(),
    about = "Repair, count, texture and flow tools for dappled grid tilings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GenerateMode {
    /// Uniformly random cells
    Random,
    /// Random draughtboard, dappled for every bound of at least 2
    Draughtboard,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tiling file
    Generate {
        /// Columns
        #[arg(long)]
        m: usize,
        /// Rows
        #[arg(long)]
        n: usize,
        /// Alphabet size; symbols are 0, 1, ...
        #[arg(long, default_value_t = 2)]
        tiles: usize,
        #[arg(long, value_enum, default_value_t = GenerateMode::Random)]
        mode: GenerateMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Repair a tiling against a condition set
    Dapple {
        #[arg(long)]
        tiling: PathBuf,
        /// Condition set JSON
        #[arg(long)]
        conditions: PathBuf,
        /// Output file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the repair trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Read runs as wrapping across the grid edges even when the
        /// conditions file does not say so
        #[arg(long)]
        cyclic: bool,
        /// Also emit a KxL periodic repetition of the result, e.g. 3x2
        #[arg(long)]
        repeat: Option<String>,
        /// Output file for --repeat; stdout when omitted
        #[arg(long = "repeat-out")]
        repeat_out: Option<PathBuf>,
    },
    /// Exhaustively count the dappled tilings of a grid
    Count {
        /// Columns
        #[arg(long)]
        m: usize,
        /// Rows
        #[arg(long)]
        n: usize,
        /// Condition set JSON
        #[arg(long)]
        conditions: PathBuf,
        /// Print every tiling after the counts
        #[arg(long)]
        list: bool,
        /// Count cyclically dappled tilings
        #[arg(long)]
        cyclic: bool,
        /// Lift the search-space size guard
        #[arg(long = "allow-large")]
        allow_large: bool,
    },
    /// Derive a brick Wang tiling from a two-tile tiling
    Wang {
        #[arg(long)]
        tiling: PathBuf,
        /// Number of edge colors
        #[arg(long)]
        colors: u16,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output JSON file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also render the brick wall as SVG
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Advect particles over a two-tile tiling read as streets
    Flow {
        #[arg(long)]
        tiling: PathBuf,
        #[arg(long, default_value_t = 16)]
        particles: usize,
        #[arg(long, default_value_t = 256)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Time per step at unit speed
        #[arg(long, default_value_t = 0.25)]
        dt: f64,
        /// Wrap particles across the boundary instead of reflecting them
        #[arg(long)]
        wrap: bool,
        /// Output CSV file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a tiling (needs a palette) or a brick Wang tiling to SVG
    Render {
        /// Tiling text file; use together with --palette
        #[arg(long, conflicts_with = "wang", requires = "palette")]
        tiling: Option<PathBuf>,
        /// Palette JSON mapping tile symbols to colors
        #[arg(long)]
        palette: Option<PathBuf>,
        /// Brick Wang tiling JSON file
        #[arg(long)]
        wang: Option<PathBuf>,
        /// Output SVG file; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a binary PPM image (tiling mode only)
        #[arg(long)]
        ppm: Option<PathBuf>,
    },
}

enum CliError {
    Lib(dappled::Error),
    Read(PathBuf, std::io::Error),
    Write(PathBuf, std::io::Error),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Lib(e) => match e {
                dappled::Error::InvalidConditions(_)
                | dappled::Error::MismatchedShapes { .. }
                | dappled::Error::InvalidShape(_) => 2,
                dappled::Error::Parse(_)
                | dappled::Error::InvalidInput(_)
                | dappled::Error::PaletteMismatch(_)
                | dappled::Error::InvalidWang(_)
                | dappled::Error::NotInWang { .. }
                | dappled::Error::OutOfBounds { .. } => 3,
                dappled::Error::SizeLimit { .. } => 4,
            },
            CliError::Read(..) => 3,
            CliError::Write(..) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Read(p, e) => write!(f, "reading {}: {e}", p.display()),
            CliError::Write(p, e) => write!(f, "writing {}: {e}", p.display()),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl From<dappled::Error> for CliError {
    fn from(e: dappled::Error) -> Self {
        CliError::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dappled: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Read(path.to_path_buf(), e))
}

fn write_text(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| CliError::Write(p.to_path_buf(), e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_bytes(path: &Path, content: &[u8]) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Write(path.to_path_buf(), e))
}

/// Alphabet with symbols `0..count` for generated tilings.
fn numeric_alphabet(count: usize) -> Result<TileSet, CliError> {
    Ok(TileSet::new((0..count).map(|t| t.to_string()))?)
}

fn seeded_header(seed: u64) -> String {
    format!("# dappled seed={seed} rng={}\n", dappled::rng::GENERATOR_ID)
}

/// Condition set honouring both the file's `cyclic` flag and the CLI
/// override.
fn load_conditions(path: &Path, cyclic: bool) -> Result<(TileSet, ConditionSet), CliError> {
    let (tiles, set) = parse_conditions(&read(path)?)?;
    if cyclic && !set.is_cyclic() {
        let set = ConditionSet::cyclic_set(set.conditions().iter().cloned())?;
        return Ok((tiles, set));
    }
    Ok((tiles, set))
}

fn parse_repeat(spec: &str) -> Result<(usize, usize), CliError> {
    let mut parts = spec.split('x');
    let parse = |s: Option<&str>| {
        s.and_then(|v| v.parse::<usize>().ok())
            .filter(|&v| v > 0)
            .ok_or_else(|| {
                CliError::Usage(format!(
                    "--repeat wants KxL with positive K, L, got {spec:?}"
                ))
            })
    };
    let k = parse(parts.next())?;
    let l = parse(parts.next())?;
    if parts.next().is_some() {
        return Err(CliError::Usage(format!("--repeat wants KxL, got {spec:?}")));
    }
    Ok((k, l))
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate {
            m,
            n,
            tiles,
            mode,
            seed,
            out,
        } => {
            let alphabet = numeric_alphabet(tiles)?;
            let tiling = match mode {
                GenerateMode::Random => Tiling::random(m, n, &alphabet, seed)?,
                GenerateMode::Draughtboard => oracle::draughtboard(m, n, &alphabet, seed)?,
            };
            let text = seeded_header(seed) + &tiling.to_text(&alphabet);
            write_text(out.as_deref(), &text)
        }
        Command::Dapple {
            tiling,
            conditions,
            out,
            trace,
            cyclic,
            repeat,
            repeat_out,
        } => {
            let (tiles, set) = load_conditions(&conditions, cyclic)?;
            let f = Tiling::parse_with(&read(&tiling)?, &tiles)?;
            let (g, steps) = if set.is_cyclic() {
                dapple_cyclic(&f, &set)?
            } else {
                dapple(&f, &tiles, &set, &DappleOptions::default())?
            };
            if let Some(trace_path) = trace {
                write_text(Some(&trace_path), &steps.to_json())?;
            }
            write_text(
                out.as_deref(),
                &("# dappled\n".to_string() + &g.to_text(&tiles)),
            )?;
            if let Some(spec) = repeat {
                let (k, l) = parse_repeat(&spec)?;
                let repeated = g.repeat(k, l)?;
                let text = format!("# dappled repeat={k}x{l}\n{}", repeated.to_text(&tiles));
                write_text(repeat_out.as_deref(), &text)?;
            }
            Ok(())
        }
        Command::Count {
            m,
            n,
            conditions,
            list,
            cyclic,
            allow_large,
        } => {
            let (tiles, set) = load_conditions(&conditions, cyclic)?;
            let options = EnumerationOptions {
                allow_large,
                ..Default::default()
            };
            let result = oracle::enumerate_dappled(m, n, &tiles, &set, &options)?;
            let mut out = format!(
                "count {}\nblocks {}\nfull_blocks {}\n",
                result.count, result.blocks, result.full_blocks
            );
            match oracle::count_draughtboards(m, n, &tiles) {
                Ok(d) => out.push_str(&format!("draughtboards {d}\n")),
                Err(_) => out.push_str("draughtboards overflow\n"),
            }
            if list {
                match &result.tilings {
                    Some(tilings) => {
                        for t in tilings {
                            out.push('\n');
                            out.push_str(&t.to_text(&tiles));
                        }
                    }
                    None => eprintln!(
                        "dappled: listing omitted, more than {} tilings",
                        options.materialize_limit
                    ),
                }
            }
            write_text(None, &out)
        }
        Command::Wang {
            tiling,
            colors,
            seed,
            out,
            svg,
        } => {
            let (_, f) = Tiling::parse(&read(&tiling)?)?;
            let w = wang_from_dappled(&f, colors, seed)?;
            write_text(out.as_deref(), &w.to_json())?;
            if let Some(svg_path) = svg {
                write_text(Some(&svg_path), &render_wang_svg(&w)?)?;
            }
            Ok(())
        }
        Command::Flow {
            tiling,
            particles,
            steps,
            seed,
            dt,
            wrap,
            out,
        } => {
            let (_, f) = Tiling::parse(&read(&tiling)?)?;
            let field = FlowField::new(f, wrap)?;
            let mut state = FlowState::new(field, particles, seed)?;
            let csv = state.trajectories_csv(steps, dt)?;
            write_text(out.as_deref(), &csv)
        }
        Command::Render {
            tiling,
            palette,
            wang,
            out,
            ppm,
        } => match (tiling, wang) {
            (Some(tiling_path), None) => {
                let palette_path = palette.expect("clap enforces --palette with --tiling");
                let (tiles, f) = Tiling::parse(&read(&tiling_path)?)?;
                let pal = Palette::parse(&read(&palette_path)?)?;
                write_text(out.as_deref(), &render_tiling_svg(&f, &tiles, &pal)?)?;
                if let Some(ppm_path) = ppm {
                    write_bytes(&ppm_path, &render_tiling_ppm(&f, &tiles, &pal)?)?;
                }
                Ok(())
            }
            (None, Some(wang_path)) => {
                if ppm.is_some() {
                    return Err(CliError::Usage("--ppm only applies to --tiling".into()));
                }
                let w = WangTiling::from_json(&read(&wang_path)?)?;
                let report = validate_wang(&w);
                if !report.is_valid() {
                    return Err(dappled::Error::InvalidWang(format!(
                        "{} tile faults, {} adjacency faults",
                        report.tile_faults.len(),
                        report.adjacency_faults.len()
                    ))
                    .into());
                }
                write_text(out.as_deref(), &render_wang_svg(&w)?)
            }
            _ => Err(CliError::Usage(
                "render wants exactly one of --tiling (with --palette) or --wang".into(),
            )),
        },
    }
}
