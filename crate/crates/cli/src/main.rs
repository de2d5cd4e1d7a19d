use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pezzo_cli::api::{self, ApiError, CollectionJson, MutateRequest};
use pezzo_core::fixtures::{self, Report};
use pezzo_core::mutation::Side;
use pezzo_core::svg::SvgOptions;
use pezzo_core::SurfaceKind;

#[derive(Parser)]
#[command(name = "pezzo", version, about = "Exceptional collections on del Pezzo surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where to read a collection from.
#[derive(Args)]
struct Input {
    /// Collection JSON file; `-` reads standard input.
    #[arg(short, long, default_value = "-")]
    input: String,
    /// Use a bundled table entry instead, written as `SURFACE:b,n` (for example `X4:3,5`).
    #[arg(long, conflicts_with = "input")]
    fixture: Option<String>,
}

impl Input {
    fn load(&self) -> anyhow::Result<CollectionJson> {
        if let Some(f) = &self.fixture {
            let (surface, label) = f.split_once(':').context("expected SURFACE:b,n")?;
            let kind: SurfaceKind = surface.parse()?;
            return Ok(api::fixture(kind, api::parse_label(label)?)?);
        }
        let text = if self.input == "-" {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(&self.input).with_context(|| format!("reading {}", self.input))?
        };
        Ok(serde_json::from_str(&text).map_err(ApiError::from)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Gram matrix and, for very strong input, the reduced Gram matrix.
    Gram(Input),
    /// Print the polygon of a collection, optionally writing an SVG drawing.
    Polygon {
        #[command(flatten)]
        input: Input,
        /// Write an SVG drawing to this file (`-` for standard output instead of JSON).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Mark the points subdividing each edge.
        #[arg(long)]
        lattice_points: bool,
        /// Mark the origin.
        #[arg(long)]
        origin: bool,
        /// Shade the forbidden region.
        #[arg(long)]
        forbidden: bool,
        /// Overlay the quiver.
        #[arg(long)]
        quiver: bool,
    },
    /// Print the quiver and the reduced block quiver.
    Quiver(Input),
    /// Apply one quiver mutation.
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Object position (or block index with `--block`).
        #[arg(long)]
        index: usize,
        #[arg(long, default_value = "right")]
        side: Side,
        /// Mutate a whole block.
        #[arg(long)]
        block: bool,
    },
    /// Check whether a collection is minimal; exits 1 when it is not.
    IsMinimal(Input),
    /// Reduce a collection to a minimal block-complete one.
    Reduce(Input),
    /// Validate a collection; exits 1 when any check fails.
    Validate(Input),
    /// Enumerate minimal block-complete collections with a given number of blocks.
    Enumerate {
        #[arg(long)]
        surface: SurfaceKind,
        #[arg(long)]
        blocks: usize,
        /// Print the full result as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Check every bundled table entry.
    VerifyFixtures {
        #[arg(long)]
        json: bool,
    },
    /// Check every bundled mutation relation.
    VerifyRelations {
        #[arg(long)]
        json: bool,
    },
    /// Check every bundled symmetry certificate.
    VerifyCertificates {
        #[arg(long)]
        json: bool,
    },
    /// Run the JSON service.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*), false) };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!($($t)*), true) };
}

/// Write to standard output, exiting quietly once the reader has gone away.
fn emit(args: std::fmt::Arguments, newline: bool) {
    let mut out = std::io::stdout().lock();
    let written = out.write_fmt(args).and_then(|_| if newline { out.write_all(b"\n") } else { Ok(()) });
    if let Err(e) = written {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(2);
    }
}

fn print_json<T: Serialize>(v: &T) -> anyhow::Result<()> {
    outln!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_report(name: &str, report: &Report, json: bool) -> anyhow::Result<ExitCode> {
    if json {
        print_json(report)?;
    } else {
        for c in report.failures() {
            outln!("FAIL {} [{}]: {}", c.subject, c.check, c.detail.as_deref().unwrap_or(""));
        }
        outln!(
            "{name}: {} checks, {} failures, {:.1} ms",
            report.checks.len(),
            report.failures().len(),
            report.elapsed.as_secs_f64() * 1000.0
        );
    }
    Ok(status(report.passed()))
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Gram(input) => print_json(&api::gram(&input.load()?)?)?,
        Command::Polygon { input, svg, lattice_points, origin, forbidden, quiver } => {
            let opts = SvgOptions { lattice_points, origin, forbidden_region: forbidden, quiver };
            let resp = api::polygon(&input.load()?, svg.as_ref().map(|_| &opts))?;
            match svg {
                Some(path) if path.as_os_str() == "-" => out!("{}", resp.svg.as_deref().unwrap_or_default()),
                Some(path) => {
                    std::fs::write(&path, resp.svg.as_deref().unwrap_or_default())
                        .with_context(|| format!("writing {}", path.display()))?;
                    print_json(&api::PolygonResponse { svg: None, ..resp })?;
                }
                None => print_json(&resp)?,
            }
        }
        Command::Quiver(input) => print_json(&api::quiver(&input.load()?)?)?,
        Command::Mutate { input, index, side, block } => {
            print_json(&api::mutate(&MutateRequest { collection: input.load()?, index, side, block, op: None })?)?
        }
        Command::IsMinimal(input) => {
            let v = api::validate(&input.load()?)?;
            let minimal = v.minimal.unwrap_or(false);
            print_json(&serde_json::json!({ "minimal": minimal, "total_rank": v.total_rank, "reasons": v.reasons }))?;
            return Ok(status(minimal));
        }
        Command::Reduce(input) => print_json(&api::minimal(&input.load()?)?)?,
        Command::Validate(input) => {
            let v = api::validate(&input.load()?)?;
            print_json(&v)?;
            return Ok(status(v.ok));
        }
        Command::Enumerate { surface, blocks, json } => {
            let start = std::time::Instant::now();
            let r = api::enumerate(surface, blocks)?;
            if json {
                print_json(&r)?;
            } else {
                for c in &r.enumeration.candidates {
                    let label = c.label.map(fixtures::format_label).unwrap_or_else(|| "unmatched".into());
                    outln!("{label:>9}  alphas {:?}  ranks {:?}  chi {:?}", c.alphas, c.ranks, c.chi_adjacent);
                }
                outln!(
                    "{surface} with {blocks} blocks: {} candidates from {} raw solutions, table {} ({:.2} s)",
                    r.enumeration.candidates.len(),
                    r.enumeration.raw_solutions,
                    if r.matches_table { "reproduced" } else { "NOT reproduced" },
                    start.elapsed().as_secs_f64()
                );
            }
            return Ok(status(r.matches_table));
        }
        Command::VerifyFixtures { json } => return print_report("tables", &fixtures::verify_tables(), json),
        Command::VerifyRelations { json } => return print_report("relations", &fixtures::verify_relations(), json),
        Command::VerifyCertificates { json } => {
            let r = fixtures::verify_certificates();
            if json {
                print_json(&r)?;
                return Ok(status(r.index_base.is_some()));
            }
            if let Some(base) = r.index_base {
                outln!("certificate word index base: {base:?}");
            } else {
                outln!("no index base verifies every certificate");
            }
            let code = print_report("certificates", &r.report, false)?;
            return Ok(if r.index_base.is_some() { code } else { status(false) });
        }
        Command::Serve { port, host } => {
            let rt = tokio::runtime::Runtime::new()?;
            eprintln!("listening on {host}:{port}");
            rt.block_on(pezzo_cli::service::serve(&host, port))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
