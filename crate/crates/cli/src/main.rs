mod check;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hermrep::classifier::{enumerate_inducible, reduction_split, ClassifyInput, GroupSpec, RepData, Verdict};
use hermrep::kernelver::{cross_validate_with, gram_test, GramOptions, GramVerdict, KernelFamily, ScalarCharacter};
use hermrep::rational::{format_rational, parse_rational};
use hermrep::weights::IndexSet;
use hermrep::Rational;
use serde_json::json;

use crate::io::{key_values, parse_json, read_arg, CliError, Format, Output, EXIT_FAIL, EXIT_INPUT, EXIT_OK};

#[derive(Parser)]
#[command(name = "hermrep", version, about = "Inducibility classifier and finite-rank verifiers for hermitian Lie groups")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the result to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify one representation given as a JSON spec.
    Classify {
        /// Inline JSON or @path.
        #[arg(long)]
        spec: String,
    },
    /// List all inducible representations within bounds.
    Enumerate(EnumerateArgs),
    /// Gram-matrix positivity test of a scalar holomorphic kernel.
    VerifyKernel(VerifyArgs),
    /// Residual suites for triple axioms, Lie brackets and Fock operators.
    Check(check::CheckArgs),
    /// Classifier verdicts against the numerical kernel or Fock check over a charge grid.
    Crossval(CrossvalArgs),
    /// Report on a truncated Fock space.
    Fock(check::FockArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    /// Group spec JSON (inline or @path).
    #[arg(long)]
    spec: String,
    #[arg(long, value_parser = rational_arg)]
    max_charge: Rational,
    #[arg(long)]
    max_support: u32,
    #[arg(long)]
    max_entry: i64,
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum KernelFamilyArg {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    II,
    #[value(name = "III", alias = "iii")]
    III,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Expect {
    Positive,
    NotPositive,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    family: KernelFamilyArg,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = rational_arg)]
    charge: Rational,
    #[arg(long, default_value_t = 40)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0.6)]
    radius: f64,
    /// Exit with status 1 when the verdict differs.
    #[arg(long, value_enum)]
    expect: Option<Expect>,
}

#[derive(Args)]
struct CrossvalArgs {
    #[arg(long, default_value_t = 2)]
    p: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Flat (Heisenberg) case instead of type I.
    #[arg(long)]
    flat: bool,
    /// Comma-separated charges.
    #[arg(long, value_delimiter = ',', value_parser = rational_arg, default_value = "0,1/2,1,3/2,2")]
    grid: Vec<Rational>,
    #[arg(long, default_value_t = 40)]
    samples: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 0.6)]
    radius: f64,
    /// Replace the classifier by one that declares everything inducible.
    #[arg(long, hide = true)]
    fault_inject: bool,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn configure_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("HERMREP_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| CliError::new(format!("HERMREP_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(CliError::new("HERMREP_THREADS must be a positive integer"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn verdict_table(v: &Verdict) -> String {
    let mut s = format!("inducible            {}\n", v.inducible);
    let value = serde_json::to_value(v).unwrap_or_default();
    s += &format!("bounded              {}\n", value["bounded"]);
    s += &key_values(&value["parameters"]);
    s += &format!("reason               {} ({})\n", v.reason.message, v.reason.tag);
    for n in &v.notes {
        s += &format!("note                 {n}\n");
    }
    s
}

fn run_classify(spec: &str, out: &Output) -> Result<i32, CliError> {
    let input: ClassifyInput = parse_json(&read_arg(spec)?)?;
    let (verdict, _) = reduction_split(&input.descriptor())?;
    out.emit(&verdict, || verdict_table(&verdict))?;
    Ok(EXIT_OK)
}

fn run_enumerate(a: &EnumerateArgs, out: &Output) -> Result<i32, CliError> {
    let spec: GroupSpec = parse_json(&read_arg(&a.spec)?)?;
    let list = enumerate_inducible(&spec, a.max_charge, a.max_support, a.max_entry)?;
    let rows: Vec<serde_json::Value> = list.iter().map(|(rep, v)| json!({ "rep": rep, "verdict": v })).collect();
    out.emit(&rows, || {
        let mut s = String::new();
        for (rep, v) in &list {
            s += &format!("{}\n", rep_line(rep, v));
        }
        s
    })?;
    Ok(EXIT_OK)
}

fn rep_line(rep: &RepData, v: &Verdict) -> String {
    let c = v.parameters.charge.or(rep.c).map_or("-".into(), |c| format_rational(&c));
    format!("lambda_plus={} lambda_minus={} c={c}", rep.lambda_plus, rep.lambda_minus)
}

fn kernel_family(a: &VerifyArgs) -> Result<KernelFamily, CliError> {
    let need = |x: Option<usize>, name: &str| x.ok_or_else(|| CliError::new(format!("--{name} is required for this family")));
    Ok(match a.family {
        KernelFamilyArg::I => KernelFamily::I { p: need(a.p, "p")?, q: need(a.q, "q")? },
        KernelFamilyArg::II => KernelFamily::II { n: need(a.n, "n")? },
        KernelFamilyArg::III => KernelFamily::III { n: need(a.n, "n")? },
    })
}

fn run_verify(a: &VerifyArgs, out: &Output) -> Result<i32, CliError> {
    let family = kernel_family(a)?;
    let opts = GramOptions { samples: a.samples, seed: a.seed, tol: a.tol, radius: a.radius };
    let report = gram_test(family, ScalarCharacter::of_charge(a.charge), opts)?;
    out.emit(&report, || {
        format!(
            "family               {:?}\ncharge               {}\nsamples              {}\nmin_eigenvalue       {:.6e}\nhermitian_residual   {:.3e}\nverdict              {}\n",
            report.family,
            format_rational(&a.charge),
            report.options.samples,
            report.min_eigenvalue,
            report.hermitian_residual,
            if report.positive() { "positive" } else { "not_positive" }
        )
    })?;
    let mismatch = match a.expect {
        Some(Expect::Positive) => report.verdict != GramVerdict::Positive,
        Some(Expect::NotPositive) => report.verdict != GramVerdict::NotPositive,
        None => false,
    };
    Ok(if mismatch { EXIT_FAIL } else { EXIT_OK })
}

fn run_crossval(a: &CrossvalArgs, out: &Output) -> Result<i32, CliError> {
    let spec = if a.flat {
        GroupSpec::flat()
    } else {
        let set = |n| IndexSet::finite(n).map_err(CliError::from);
        GroupSpec::type_i(hermrep::classifier::Curvature::Domain, set(a.p)?, set(a.q)?)
    };
    let opts = GramOptions { samples: a.samples, seed: a.seed, tol: a.tol, radius: a.radius };
    let faulty = |s: &GroupSpec, rep: &RepData| {
        let mut v = hermrep::classifier::classify(s, rep)?;
        v.inducible = true;
        Ok(v)
    };
    let table = if a.fault_inject {
        cross_validate_with(&spec, &a.grid, &opts, &faulty)?
    } else {
        cross_validate_with(&spec, &a.grid, &opts, &hermrep::classifier::classify)?
    };
    out.emit(&table, || table.render())?;
    Ok(if table.all_agree { EXIT_OK } else { EXIT_FAIL })
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    configure_threads()?;
    let out = Output { format: cli.format, path: cli.output.clone() };
    match &cli.command {
        Command::Classify { spec } => run_classify(spec, &out),
        Command::Enumerate(a) => run_enumerate(a, &out),
        Command::VerifyKernel(a) => run_verify(a, &out),
        Command::Check(a) => check::run_check(a, &out),
        Command::Crossval(a) => run_crossval(a, &out),
        Command::Fock(a) => check::run_fock(a, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(EXIT_INPUT as u8)
        }
    }
}
