use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pfaffcubic::commands::{
    cmd_classify, cmd_curve, cmd_lattice, cmd_pfaffianize, cmd_verify, LatticeAction, Outcome, OutputFormat, RunConfig,
};
use pfaffcubic::FieldSpec;

#[derive(Parser)]
#[command(name = "pfaffcubic", version, about = "Classify cubic threefolds and build Pfaffian representations")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Coefficient field: `q` or `p:<prime>`
    #[arg(long, global = true, default_value = "p:13")]
    field: FieldSpec,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Attempts per randomized search
    #[arg(long, global = true, default_value_t = 8)]
    retries: usize,
    /// Starting degree bound for Hilbert polynomial interpolation
    #[arg(long, global = true, default_value_t = 12)]
    dmax: u32,
    #[arg(long, global = true)]
    json: bool,
    /// Worker count (scans are currently serial)
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Segre type of the singular locus
    Classify { input: PathBuf },
    /// Skew 6x6 matrix of linear forms whose Pfaffian is the cubic
    Pfaffianize { input: PathBuf },
    /// Check Pf(M) = lambda F for a matrix file and a cubic file
    Verify { matrix: PathBuf, cubic: PathBuf },
    /// Enumerations in the cubic surface lattice
    Lattice {
        #[command(subcommand)]
        action: LatticeCmd,
    },
    /// Build the quartic, scroll and residual elliptic quintic
    Curve { input: PathBuf },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// The 27 (-1)-classes
    MinusOne,
    /// The 72 roots
    Roots,
    /// A (-1)-class meeting the first root once and missing the others
    FindE {
        #[arg(long, default_value = "A1")]
        config: String,
    },
}

fn read(path: &Path) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: cannot read {}: {e}\n", path.display()),
    })
}

fn run(cli: Cli) -> Outcome {
    let o = cli.opts;
    let cfg = RunConfig {
        field: o.field,
        seed: o.seed,
        max_retries: o.retries,
        d_max: o.dmax,
        output: if o.json { OutputFormat::Json } else { OutputFormat::Text },
        jobs: o.jobs.max(1),
    };
    let r = (|| {
        Ok(match &cli.cmd {
            Cmd::Classify { input } => cmd_classify(&read(input)?, &cfg),
            Cmd::Pfaffianize { input } => cmd_pfaffianize(&read(input)?, &cfg),
            Cmd::Verify { matrix, cubic } => cmd_verify(&read(matrix)?, &read(cubic)?, &cfg),
            Cmd::Curve { input } => cmd_curve(&read(input)?, &cfg),
            Cmd::Lattice { action } => {
                let a = match action {
                    LatticeCmd::MinusOne => LatticeAction::MinusOne,
                    LatticeCmd::Roots => LatticeAction::Roots,
                    LatticeCmd::FindE { config } => LatticeAction::FindE(config.clone()),
                };
                cmd_lattice(&a, &cfg)
            }
        })
    })();
    r.unwrap_or_else(|e| e)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    ExitCode::from(out.code as u8)
}
