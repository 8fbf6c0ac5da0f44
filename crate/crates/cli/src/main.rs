use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use higgs_tft_cli::{cmd_roundtrip, cmd_table, cmd_verify, parse_coeffs, BundleSource, Convention, Family, Format, RunConfig};

#[derive(Parser)]
#[command(name = "higgs-tft", version, about = "Fiberwise transforms of Higgs bundles on hyperelliptic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample transform fibers and run the stability, P^g and HRR checks.
    Verify(Opts),
    /// Recover the Higgs field from cokernel presentations on two charts.
    Roundtrip(Opts),
    /// Print the cohomology table and Chern character for (g, r).
    Table(Opts),
}

#[derive(Args)]
struct Opts {
    /// Curve JSON file; defaults to y^2 = x^5 - x over F_101.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Higgs bundle JSON file; overrides --family.
    #[arg(long)]
    bundle: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "hitchin")]
    family: Family,
    /// Rank of the Hitchin family (2 or 3); for `table`, the rank r.
    #[arg(long)]
    rank: Option<usize>,
    /// Quadratic differential of the Hitchin family, coefficients lowest-first.
    #[arg(long, default_value = "0,0,1")]
    q: String,
    /// Cubic differential for rank 3, coefficients lowest-first.
    #[arg(long, default_value = "1,0,0,1")]
    q3: String,
    /// Genus for `table` when no curve is given.
    #[arg(long)]
    genus: Option<usize>,
    #[arg(long, default_value_t = 25)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long = "sign-convention", value_enum, default_value = "plus")]
    sign_convention: Convention,
    /// Largest |deg A| tried by the stability scan.
    #[arg(long = "degree-bound", default_value_t = 2)]
    degree_bound: i64,
    /// Presentation JSON to reconstruct from (roundtrip).
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Write the presentation on the first chart to this file (roundtrip).
    #[arg(long = "emit-presentation")]
    emit_presentation: Option<PathBuf>,
}

fn config(o: Opts, table: bool) -> Result<RunConfig, String> {
    let bundle = match (o.bundle, o.family) {
        (Some(p), _) => BundleSource::File(p),
        (None, Family::Trivial) => BundleSource::Trivial,
        (None, Family::Hitchin) => {
            let mut qs = vec![parse_coeffs(&o.q)?];
            match o.rank.filter(|_| !table).unwrap_or(2) {
                2 => {}
                3 => qs.push(parse_coeffs(&o.q3)?),
                r => return Err(format!("the Hitchin family is available in rank 2 and 3, not {}", r)),
            }
            BundleSource::Hitchin { qs }
        }
    };
    Ok(RunConfig {
        curve: o.curve,
        bundle,
        samples: o.samples,
        seed: o.seed,
        format: o.format,
        convention: o.sign_convention,
        degree_bound: o.degree_bound,
        presentation: o.presentation,
        emit_presentation: o.emit_presentation,
        genus: o.genus,
        rank: o.rank,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, opts, table): (fn(&RunConfig) -> _, _, _) = match cli.command {
        Command::Verify(o) => (cmd_verify as fn(&RunConfig) -> _, o, false),
        Command::Roundtrip(o) => (cmd_roundtrip, o, false),
        Command::Table(o) => (cmd_table, o, true),
    };
    let cfg = match config(opts, table) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("configuration error: {}", e);
            return ExitCode::from(2);
        }
    };
    match run(&cfg) {
        Ok(rep) => {
            print!("{}", rep.render(cfg.format));
            ExitCode::from(rep.exit_code())
        }
        Err(e) => {
            eprintln!("{}", e);
            ExitCode::from(e.exit_code())
        }
    }
}
