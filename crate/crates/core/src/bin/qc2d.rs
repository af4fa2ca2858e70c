use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qc2d::cli::{
    cmd_analyze, cmd_construct, cmd_ea, cmd_erasure, cmd_export, read_plan, ConstructOptions,
    EaFamily, ErasureOptions, ExportFormat, Outcome,
};
use qc2d::construct::Family;

#[derive(Parser)]
#[command(name = "qc2d", version, about = "Construct and verify 2-D quasi-cyclic LDPC tensor codes")]
struct Cli {
    /// Where to write the run manifest (defaults next to the plan or output file).
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Prime,
    Composite,
    Behrend,
}

#[derive(Clone, Copy, ValueEnum)]
enum EaArg {
    One,
    Two,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Alist,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a shift plan and write it to a file.
    Construct {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        /// Behrend digit-vector length.
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Behrend digit bound.
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Behrend squared norm; chosen to maximise the set when omitted.
        #[arg(long)]
        k_norm: Option<usize>,
        /// Comma-separated phi table.
        #[arg(long, value_delimiter = ',')]
        phi: Option<Vec<usize>>,
        /// Comma-separated psi table.
        #[arg(long, value_delimiter = ',')]
        psi: Option<Vec<usize>>,
        /// Per-segment eta bijections, `;`-separated, entries comma-separated.
        #[arg(long)]
        zeta: Option<String>,
        /// Draw phi, psi and eta at random from --seed.
        #[arg(long)]
        random_config: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "plan.txt")]
        out: PathBuf,
    },
    /// Girth, rank and layer inner-product audit of a plan.
    Analyze { plan: PathBuf },
    /// Burst-erasure certificate, exhaustive peeling and simulation.
    Erasure {
        plan: PathBuf,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        exhaustive: bool,
        /// Run this many Monte Carlo trials per configuration.
        #[arg(long)]
        simulate: Option<usize>,
        /// Comma-separated i.i.d. erasure probabilities; burst model when omitted.
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Entanglement-assisted quantum code parameters.
    Ea {
        plan: PathBuf,
        #[arg(long, value_enum)]
        family: EaArg,
        /// Block-layers of the first (or only) constituent.
        #[arg(long, value_delimiter = ',', required = true)]
        w1: Vec<usize>,
        /// Block-layers of the second constituent (family one).
        #[arg(long, value_delimiter = ',')]
        w2: Vec<usize>,
    },
    /// Write the unfolded parity-check matrix.
    Export {
        plan: PathBuf,
        #[arg(long, value_enum, default_value = "alist")]
        format: FormatArg,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_zetas(s: &str) -> Result<Vec<Vec<usize>>, qc2d::Error> {
    s.split(';')
        .map(|seg| {
            seg.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<usize>()
                        .map_err(|e| qc2d::Error::InvalidParameter(format!("zeta entry `{v}`: {e}")))
                })
                .collect()
        })
        .collect()
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn run(cli: Cli) -> qc2d::Result<(Outcome, PathBuf)> {
    Ok(match cli.command {
        Command::Construct { family, p, c, b, h, n, d, k_norm, phi, psi, zeta, random_config, seed, out } => {
            let family = match family {
                FamilyArg::Prime => Family::Prime,
                FamilyArg::Composite => Family::Composite,
                FamilyArg::Behrend => Family::Behrend,
            };
            let mut opts = ConstructOptions::new(family, p);
            opts.c = c;
            opts.b = b;
            opts.h = h;
            opts.behrend_n = n;
            opts.behrend_d = d;
            opts.behrend_k = k_norm;
            opts.phi = phi;
            opts.psi = psi;
            opts.zetas = zeta.as_deref().map(parse_zetas).transpose()?;
            opts.random_config = random_config;
            opts.seed = seed;
            (cmd_construct(&opts, &out)?, sibling(&out, ".manifest"))
        }
        Command::Analyze { plan } => (cmd_analyze(&read_plan(&plan)?)?, sibling(&plan, ".analyze.manifest")),
        Command::Erasure { plan, s, t, exhaustive, simulate, epsilon, seed, csv } => {
            let opts = ErasureOptions { s, t, exhaustive, simulate, epsilons: epsilon, seed };
            let csv = csv.or_else(|| simulate.map(|_| sibling(&plan, ".sim.csv")));
            let outcome = cmd_erasure(&read_plan(&plan)?, &opts, csv.as_deref())?;
            (outcome, sibling(&plan, ".erasure.manifest"))
        }
        Command::Ea { plan, family, w1, w2 } => {
            let family = match family {
                EaArg::One => EaFamily::One,
                EaArg::Two => EaFamily::Two,
            };
            (cmd_ea(&read_plan(&plan)?, family, &w1, &w2)?, sibling(&plan, ".ea.manifest"))
        }
        Command::Export { plan, format, out } => {
            let format = match format {
                FormatArg::Alist => ExportFormat::Alist,
                FormatArg::Csv => ExportFormat::Csv,
            };
            (cmd_export(&read_plan(&plan)?, format, &out)?, sibling(&out, ".manifest"))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let manifest_override = cli.manifest.clone();
    match run(cli) {
        Ok((mut outcome, default_manifest)) => {
            let path = manifest_override.unwrap_or(default_manifest);
            outcome.manifest.artifact(path.display().to_string());
            print!("{}", outcome.report);
            if let Err(e) = std::fs::write(&path, outcome.manifest.to_string()) {
                eprintln!("error: cannot write manifest {}: {e}", path.display());
                return ExitCode::from(2);
            }
            if outcome.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
