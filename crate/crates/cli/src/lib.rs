//! The `tgl` command line: generation, crossing numbers, rendering and the
//! exhaustive searches, all with byte-stable `key value` output.

pub mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use tanglegram::construct::{d_star, fig4_tanglegram};
use tanglegram::extremal::max_crt;
use tanglegram::lights::{gb_exact, gb_greedy, SignMatrix};
use tanglegram::optimize::{crt_bruteforce, crt_exact_jobs, switching_chain_from, ChainOptions};
use tanglegram::tangle::{parse_tanglegram, random_instance};
use tanglegram::tree::{h_exact, h_formula};
use tanglegram::{rng, Layout};

use render::{render_svg, RenderSpec};

/// Largest size accepted by `gen --random`.
pub const RANDOM_LIMIT: usize = 100_000;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] tanglegram::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
}

impl CliError {
    /// 2 usage, 3 size limit, 4 malformed or unreadable input, 1 output failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(tanglegram::Error::SizeLimit { .. }) => 3,
            CliError::Core(tanglegram::Error::Invalid(_)) => 2,
            CliError::Core(_) | CliError::Read { .. } => 4,
            CliError::Write { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "tgl", version, about = "Tanglegram layouts and crossing numbers")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a tanglegram layout in .tgl format.
    Gen(GenArgs),
    /// Crossing number of a .tgl file.
    Crt(CrtArgs),
    /// Draw a layout as SVG.
    Render(RenderArgs),
    /// Tabulate the minimum special-vertex count against floor(n/4)+1.
    H(HArgs),
    /// Maximise sum a_ij x_i y_j over sign vectors.
    Gb(GbArgs),
    /// Largest crossing number over all tanglegrams of one size.
    SearchMax(SearchMaxArgs),
    /// Decide whether two .tgl files describe the same tanglegram.
    Iso(IsoArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Ti,
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["family", "fig4", "random"]))]
pub struct GenArgs {
    /// Bit-reversal family, drawn with both sides in integer order.
    #[arg(long, value_enum, requires = "i")]
    pub family: Option<Family>,
    /// Family level; the tanglegram has 2^i leaves.
    #[arg(long = "i", value_name = "K", requires = "family")]
    pub i: Option<u32>,
    /// The size-8 tanglegram with crossing number 9.
    #[arg(long)]
    pub fig4: bool,
    /// Uniform random trees, matching and orientations.
    #[arg(long, requires = "size")]
    pub random: bool,
    #[arg(long, requires = "random")]
    pub size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (standard output when absent).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exact,
    Brute,
    Heuristic,
}

#[derive(Args, Debug)]
pub struct CrtArgs {
    pub file: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    pub method: Method,
    #[arg(long, env = "TGL_JOBS", default_value_t = 1)]
    pub jobs: usize,
    /// Write the achieving layout here.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Heuristic: extra local searches from random orientations.
    #[arg(long, default_value_t = 0)]
    pub restarts: usize,
    /// Heuristic: seed for the restarts.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Heuristic: also run the chain with the trees exchanged.
    #[arg(long)]
    pub both_sides: bool,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    pub file: PathBuf,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 600)]
    pub width: u32,
    /// Defaults to the smallest height that fits every leaf.
    #[arg(long)]
    pub height: Option<u32>,
    #[arg(long, default_value_t = 24)]
    pub leaf_gap: u32,
    #[arg(long)]
    pub show_crossing_count: bool,
}

#[derive(Args, Debug)]
pub struct HArgs {
    #[arg(long, default_value_t = 12)]
    pub max_n: usize,
}

#[derive(Args, Debug)]
pub struct GbArgs {
    /// Matrix file with one row of +1/-1 entries per line ("-" for standard input).
    #[arg(long, conflicts_with = "random")]
    pub input: Option<PathBuf>,
    /// Use a random matrix of --size.
    #[arg(long, requires = "size")]
    pub random: bool,
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub greedy: bool,
}

#[derive(Args, Debug)]
pub struct SearchMaxArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, env = "TGL_JOBS", default_value_t = 1)]
    pub jobs: usize,
    /// Write the `hist <crt> <count>` lines here instead of standard output.
    #[arg(long)]
    pub histogram: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IsoArgs {
    pub a: PathBuf,
    pub b: PathBuf,
}

fn read_text(path: &Path) -> Result<String> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    Ok(s)
}

fn read_layout(path: &Path) -> Result<Layout> {
    Ok(parse_tanglegram(&read_text(path)?)?)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<()> {
    match target {
        Some(path) => write_file(path, text),
        None => out
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Write { path: "<stdout>".into(), source }),
    }
}

fn say(out: &mut dyn Write, line: String) -> Result<()> {
    writeln!(out, "{line}").map_err(|source| CliError::Write { path: "<stdout>".into(), source })
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Crt(a) => cmd_crt(a, out),
        Command::Render(a) => cmd_render(a, out),
        Command::H(a) => cmd_h(a, out),
        Command::Gb(a) => cmd_gb(a, out),
        Command::SearchMax(a) => cmd_search_max(a, out),
        Command::Iso(a) => cmd_iso(a, out),
    }
}

pub fn cmd_gen(a: GenArgs, out: &mut dyn Write) -> Result<()> {
    let layout = if let (Some(Family::Ti), Some(i)) = (a.family, a.i) {
        d_star(i)?
    } else if a.fig4 {
        fig4_tanglegram()
    } else {
        let n = a.size.ok_or_else(|| CliError::Usage("--random needs --size".into()))?;
        if n == 0 {
            return Err(CliError::Usage("--size must be at least 1".into()));
        }
        if n > RANDOM_LIMIT {
            return Err(tanglegram::Error::SizeLimit { what: "size", got: n, limit: RANDOM_LIMIT }.into());
        }
        random_instance(n, a.seed)
    };
    emit(out, a.output.as_deref(), &layout.to_tgl())
}

pub fn cmd_crt(a: CrtArgs, out: &mut dyn Write) -> Result<()> {
    let d = read_layout(&a.file)?;
    let t = d.tanglegram();
    let witness = match a.method {
        Method::Exact | Method::Brute => {
            let r = if a.method == Method::Exact { crt_exact_jobs(t, a.jobs.max(1))? } else { crt_bruteforce(t)? };
            say(out, format!("crt {}", r.value))?;
            r.witness
        }
        Method::Heuristic => {
            if d.n() < 2 {
                say(out, "ub 0 guarantee 0".into())?;
                d
            } else {
                let opts = ChainOptions { restarts: a.restarts, seed: a.seed, both_sides: a.both_sides };
                let (best, rep) = switching_chain_from(&d, &opts)?;
                say(out, format!("ub {} guarantee {}", rep.best, rep.guarantee))?;
                best
            }
        }
    };
    if let Some(path) = &a.witness {
        write_file(path, &witness.to_tgl())?;
    }
    Ok(())
}

pub fn cmd_render(a: RenderArgs, out: &mut dyn Write) -> Result<()> {
    let d = read_layout(&a.file)?;
    let height = a.height.unwrap_or_else(|| RenderSpec::fitted_height(d.n(), a.leaf_gap, a.show_crossing_count));
    let spec = RenderSpec { width: a.width, height, leaf_gap: a.leaf_gap, show_crossing_count: a.show_crossing_count };
    emit(out, a.output.as_deref(), &render_svg(&d, &spec)?)
}

pub fn cmd_h(a: HArgs, out: &mut dyn Write) -> Result<()> {
    if a.max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let mut rows = String::new();
    for n in 1..=a.max_n {
        let (exact, _) = h_exact(n)?;
        let formula = h_formula(n)?;
        let verdict = if exact == formula { "match" } else { "mismatch" };
        rows.push_str(&format!("n {n} exact {exact} formula {formula} {verdict}\n"));
    }
    emit(out, None, &rows)
}

pub fn cmd_gb(a: GbArgs, out: &mut dyn Write) -> Result<()> {
    let m = if a.random {
        let n = a.size.unwrap_or(0);
        if n == 0 {
            return Err(CliError::Usage("--size must be at least 1".into()));
        }
        SignMatrix::random(n, &mut rng::from_seed(a.seed))
    } else {
        let path = a.input.clone().unwrap_or_else(|| PathBuf::from("-"));
        let m: SignMatrix = read_text(&path)?.parse()?;
        if let Some(n) = a.size {
            if n != m.n() {
                return Err(CliError::Usage(format!("--size {n} but the matrix is {}x{}", m.n(), m.n())));
            }
        }
        m
    };
    say(out, format!("size {}", m.n()))?;
    if a.exact || !a.greedy {
        say(out, format!("exact {}", gb_exact(&m)?.value))?;
    }
    if a.greedy {
        say(out, format!("greedy {}", gb_greedy(&m, a.seed).value))?;
    }
    Ok(())
}

pub fn cmd_search_max(a: SearchMaxArgs, out: &mut dyn Write) -> Result<()> {
    let r = max_crt(a.n, a.jobs.max(1))?;
    match &a.histogram {
        Some(path) => {
            let text = r.to_text();
            let summary: String = text.lines().filter(|l| !l.starts_with("hist ")).map(|l| format!("{l}\n")).collect();
            emit(out, None, &summary)?;
            write_file(path, &r.histogram_text())
        }
        None => emit(out, None, &r.to_text()),
    }
}

pub fn cmd_iso(a: IsoArgs, out: &mut dyn Write) -> Result<()> {
    let x = read_layout(&a.a)?;
    let y = read_layout(&a.b)?;
    let verdict = if x.tanglegram().is_isomorphic(y.tanglegram()) { "isomorphic" } else { "not-isomorphic" };
    say(out, verdict.into())
}
