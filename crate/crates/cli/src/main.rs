use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hecke_cli::config::{default_checks, parse_checks};
use hecke_cli::tools::{dims_report, homdim_report, mackey_report};
use hecke_cli::{
    emit_report, exit_code, resolve, run_suite, save_symmetry, CheckConfig, CheckReport, FieldChoice, HResult,
    SymmetrySource, EXIT_INPUT,
};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact checks for Hecke symmetries and their quadratic algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// `rational`, `gaussian`, `cube-root`, or minimal polynomial coefficients (constant first)
    #[arg(long)]
    field: Option<String>,
    /// Hecke parameter as coefficients in the field generator, e.g. `2` or `0,1`
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

impl FieldArgs {
    fn choice(&self) -> FieldChoice {
        FieldChoice { field: self.field.clone(), q: self.q.clone() }
    }
}

#[derive(Args, Clone)]
struct SymmetryArgs {
    /// Builtin (`drinfeld_jimbo(k)`, `super(m,n)`, `hietarinta_counterexample`, `one_dim`) or a JSON file
    #[arg(long)]
    symmetry: String,
    #[arg(long)]
    symmetry2: Option<String>,
    #[arg(long)]
    symmetry3: Option<String>,
}

impl SymmetryArgs {
    fn sources(&self) -> Vec<SymmetrySource> {
        [Some(&self.symmetry), self.symmetry2.as_ref(), self.symmetry3.as_ref()]
            .into_iter()
            .flatten()
            .map(|s| SymmetrySource::parse(s))
            .collect()
    }
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Report path; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the timing section empty so whole files compare byte for byte
    #[arg(long)]
    no_timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run check suites and write a report
    Verify {
        #[command(flatten)]
        sym: SymmetryArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        /// Comma-separated checks, or `none`
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dimension of Hom between two induced modules, e.g. `--zeta 2,1:t,a --chi 3`
    Homdim {
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        chi: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Restriction of an induced module to a parabolic subalgebra
    Mackey {
        #[arg(long)]
        chi: String,
        #[arg(long)]
        mu: String,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hilbert coefficients of the symmetric and exterior algebras
    Dims {
        #[command(flatten)]
        sym: SymmetryArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 4)]
        nmax: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Write a symmetry as a JSON file
    Export {
        #[arg(long)]
        symmetry: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn finish(report: HResult<CheckReport>, output: &OutputArgs) -> HResult<i32> {
    let mut report = report?;
    if output.no_timing {
        report.timing = serde_json::json!({});
    }
    emit_report(&report, output.out.as_deref())?;
    Ok(exit_code(&report))
}

fn run(cli: Cli) -> HResult<i32> {
    match cli.cmd {
        Cmd::Verify { sym, field, nmax, checks, jobs, output } => {
            let sources = sym.sources();
            let checks = match checks {
                Some(c) => parse_checks(&c)?,
                None => default_checks(sources.len()),
            };
            let mut cfg = CheckConfig::new(sources, nmax, checks);
            cfg.field = field.choice();
            cfg.jobs = jobs;
            cfg.out = output.out.clone();
            cfg.timing = !output.no_timing;
            finish(run_suite(&cfg), &output)
        }
        Cmd::Homdim { zeta, chi, field, output } => finish(homdim_report(&zeta, &chi, &field.choice()), &output),
        Cmd::Mackey { chi, mu, field, output } => finish(mackey_report(&chi, &mu, &field.choice()), &output),
        Cmd::Dims { sym, field, nmax, output } => {
            let mut cfg = CheckConfig::new(sym.sources(), nmax, Vec::new());
            cfg.field = field.choice();
            finish(dims_report(&cfg), &output)
        }
        Cmd::Export { symmetry, field, out } => {
            let mut cfg = CheckConfig::new(vec![SymmetrySource::parse(&symmetry)], 2, Vec::new());
            cfg.field = field.choice();
            let res = resolve(&cfg)?;
            save_symmetry(&res.symmetries[0], &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hecke: {e}");
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
