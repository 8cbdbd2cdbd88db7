//! `numrad` CLI: compute radius certificates, evaluate the bound catalog on
//! user matrices, run the randomized verification suite and the lemma
//! suite.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
//! 3 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use numrad::bounds::{
    bound_prop33, bound_th1_upper, bound_th1eqn_upper, bound_th2_upper_sq, bound_th3_lower_sq,
    bound_th4_lower_sq, bound_th5_lower, bound_th6_lower_sq, bound_th7_upper_4,
    bound_bk21_upper_4, bound_th25_upper_4, kittaneh2002_bound, BoundKind, BoundReport,
};
use numrad::harness::{
    all_check_names, records_to_csv, run_suite, summaries_to_json, EnsembleKind, SuiteReport,
};
use numrad::harness::ensemble::EnsembleSpec;
use numrad::lemmas::run_lemma_suite;
use numrad::linalg::leq_within;
use numrad::{numerical_radius, ComplexMatrix, Error};

#[derive(Parser)]
#[command(name = "numrad", about = "Numerical radius workbench", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a certified numerical radius from a matrix JSON file.
    Radius {
        /// Matrix JSON file: {"dim": n, "entries": [[re, im], ...]}.
        file: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Evaluate the bound catalog on [[0,B],[C,0]] (or [[A,B],[C,D]]).
    Bounds(BoundsArgs),
    /// Run inequality checks over a random matrix ensemble.
    Verify(VerifyArgs),
    /// Run the vector-level lemma suite.
    Lemmas {
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
}

#[derive(Args)]
struct BoundsArgs {
    /// Matrix JSON file for block B.
    b: PathBuf,
    /// Matrix JSON file for block C.
    c: PathBuf,
    /// Optional diagonal block A (with --D, switches to the full 2x2 form).
    #[arg(long = "A", value_name = "FILE")]
    a: Option<PathBuf>,
    /// Optional diagonal block D.
    #[arg(long = "D", value_name = "FILE")]
    d: Option<PathBuf>,
    /// Comma-separated alpha grid for the parametrized bounds.
    #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.25, 0.5, 0.75, 1.0])]
    alpha: Vec<f64>,
    /// Also print the self-adjoint sum bound and the Kittaneh comparison.
    #[arg(long)]
    prop33: bool,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    ensemble: String,
    #[arg(long)]
    dim: usize,
    #[arg(long)]
    trials: usize,
    #[arg(long)]
    seed: u64,
    /// Comma-separated check names, or "all".
    #[arg(long, value_delimiter = ',', default_value = "all")]
    checks: Vec<String>,
    /// Report file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Csv)]
    format: ReportFormat,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Csv,
}

/// Exit classification: usage/parse errors (2) vs numerical failures (3).
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::DimMismatch { .. }
        | Error::AlphaOutOfRange { .. }
        | Error::UnknownCheck { .. }
        | Error::InvalidMatrix(_) => 2,
        Error::NotHermitian { .. }
        | Error::NotPsd { .. }
        | Error::NoConvergence { .. }
        | Error::ToleranceUnreachable { .. } => 3,
    }
}

fn fail(err: Error) -> ExitCode {
    eprintln!("error: {err}");
    ExitCode::from(exit_code_for(&err))
}

fn load_matrix(path: &Path) -> Result<ComplexMatrix, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidMatrix(format!("{}: {e}", path.display())))?;
    ComplexMatrix::from_json(&text)
        .map_err(|e| Error::InvalidMatrix(format!("{}: {e}", path.display())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Radius { file, tol } => cmd_radius(&file, tol),
        Command::Bounds(args) => cmd_bounds(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Lemmas { trials, seed, dim } => cmd_lemmas(trials, seed, dim),
    }
}

fn cmd_radius(file: &Path, tol: f64) -> ExitCode {
    if tol <= 0.0 {
        return fail(Error::InvalidMatrix("tol must be positive".into()));
    }
    let matrix = match load_matrix(file) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let cert = match numerical_radius(&matrix, tol) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    println!("estimate          {:.11e}", cert.estimate);
    println!("lower_witness     {:.11e}", cert.lower_witness);
    println!("upper_certificate {:.11e}", cert.upper_certificate);
    println!("enclosure_width   {:.11e}", cert.width());
    println!("theta_star        {:.11e}", cert.theta_star);
    let witness = cert
        .witness_vector
        .iter()
        .map(|z| format!("[{:.11e}, {:.11e}]", z.re, z.im))
        .collect::<Vec<_>>()
        .join(", ");
    println!("witness_vector    [{witness}]");
    ExitCode::SUCCESS
}

fn print_report(report: &BoundReport, w_power: f64, tol: f64) {
    let (sign, ok) = match report.kind {
        BoundKind::Upper => ("<=", leq_within(w_power, report.value, tol)),
        BoundKind::Lower => (">=", leq_within(report.value, w_power, tol)),
    };
    let alpha = report
        .alpha
        .map(|a| format!(" alpha={a:.2}"))
        .unwrap_or_default();
    let flag = if ok { "" } else { "  VIOLATED (bug)" };
    println!(
        "w^{} {} {:.11e}  [{}{}]{}",
        report.exponent, sign, report.value, report.name, alpha, flag
    );
}

fn cmd_bounds(args: &BoundsArgs) -> ExitCode {
    if args.tol <= 0.0 {
        return fail(Error::InvalidMatrix("tol must be positive".into()));
    }
    for alpha in &args.alpha {
        if !(0.0..=1.0).contains(alpha) {
            return fail(Error::AlphaOutOfRange { alpha: *alpha });
        }
    }
    if args.a.is_some() != args.d.is_some() {
        return fail(Error::InvalidMatrix("--A and --D must be given together".into()));
    }
    let b = match load_matrix(&args.b) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let c = match load_matrix(&args.c) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let inner_tol = args.tol / 10.0;

    let run = || -> Result<(), Error> {
        let block = numrad::blockops::make_offdiag(&b, &c)?;
        let cert = numerical_radius(&block.assembled, inner_tol)?;
        let w = cert.estimate;
        println!("w([[0,B],[C,0]]) = {:.11e}  (enclosure width {:.11e})", w, cert.width());

        print_report(&bound_th1_upper(&b, &c)?, w, args.tol);
        print_report(&bound_th1eqn_upper(&b, &c)?, w, args.tol);
        print_report(&bound_th5_lower(&b, &c)?, w, args.tol);
        print_report(&bound_th2_upper_sq(&b, &c, inner_tol)?, w * w, args.tol);
        print_report(&bound_th6_lower_sq(&b, &c)?, w * w, args.tol);
        print_report(&bound_th3_lower_sq(&b, &c)?, w * w, args.tol);
        print_report(&bound_th4_lower_sq(&b, &c)?, w * w, args.tol);
        for &alpha in &args.alpha {
            print_report(&bound_th7_upper_4(&b, &c, alpha, inner_tol)?, w.powi(4), args.tol);
        }

        if let (Some(a_path), Some(d_path)) = (&args.a, &args.d) {
            let a = load_matrix(a_path)?;
            let d = load_matrix(d_path)?;
            let full = numrad::blockops::make_full(&a, &b, &c, &d)?;
            let full_cert = numerical_radius(&full.assembled, inner_tol)?;
            let w_full = full_cert.estimate;
            println!("w([[A,B],[C,D]]) = {:.11e}", w_full);
            for &alpha in &args.alpha {
                let th25 = bound_th25_upper_4(&a, &b, &c, &d, alpha, inner_tol)?;
                let bk21 = bound_bk21_upper_4(&a, &b, &c, &d, alpha, inner_tol)?;
                print_report(&th25, w_full.powi(4), args.tol);
                print_report(&bk21, w_full.powi(4), args.tol);
                if !leq_within(th25.value, bk21.value, args.tol) {
                    println!("  comparison VIOLATED: th25 > bk21 at alpha={alpha} (bug)");
                }
            }
        }

        if args.prop33 {
            let report = bound_prop33(&b, &c, inner_tol)?;
            let sum_norm = numrad::op_norm(&b.add(&c)?);
            println!(
                "prop33: ||B+C|| <= sqrt(value) = {:.11e}  (||B+C|| = {:.11e})",
                report.value.sqrt(),
                sum_norm
            );
            let kittaneh = kittaneh2002_bound(&b, &c)?;
            println!("kittaneh2002: ||B+C|| <= {:.11e}", kittaneh);
        }
        Ok(())
    };

    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    if args.tol <= 0.0 {
        return fail(Error::InvalidMatrix("tol must be positive".into()));
    }
    let kind = match EnsembleKind::parse(&args.ensemble) {
        Some(k) => k,
        None => {
            return fail(Error::InvalidMatrix(format!("unknown ensemble: {}", args.ensemble)))
        }
    };
    if args.dim == 0 || args.trials == 0 {
        return fail(Error::InvalidMatrix("dim and trials must be >= 1".into()));
    }
    let checks: Vec<String> = if args.checks.len() == 1 && args.checks[0] == "all" {
        all_check_names().iter().map(|s| s.to_string()).collect()
    } else {
        args.checks.clone()
    };
    let spec = EnsembleSpec::new(kind, args.dim, args.trials, args.seed);

    let report: SuiteReport = match run_suite(&[spec], &checks, args.tol) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let rendered = match args.format {
        ReportFormat::Csv => records_to_csv(&report.records),
        ReportFormat::Json => summaries_to_json(&report.summaries),
    };
    match &args.out {
        Some(path) => {
            if let Err(e) = fs::write(path, &rendered) {
                return fail(Error::InvalidMatrix(format!("{}: {e}", path.display())));
            }
        }
        None => print!("{rendered}"),
    }

    let failures = report.failures();
    for summary in &report.summaries {
        eprintln!(
            "{} {} dim={} trials={} failures={} min_gap={:.11e}",
            summary.check_name,
            summary.ensemble,
            summary.dim,
            summary.trials,
            summary.failures,
            summary.min_gap
        );
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        eprintln!("{failures} failed check instance(s)");
        ExitCode::from(1)
    }
}

fn cmd_lemmas(trials: usize, seed: u64, dim: usize) -> ExitCode {
    if trials == 0 || dim == 0 {
        return fail(Error::InvalidMatrix("trials and dim must be >= 1".into()));
    }
    let outcomes = run_lemma_suite(dim, trials, seed, 1e-9);
    let mut all_passed = true;
    for outcome in &outcomes {
        let status = if outcome.passed() { "pass" } else { "FAIL" };
        println!(
            "{:<18} {}  trials={} failures={} min_margin={:.11e}",
            outcome.name, status, outcome.trials, outcome.failures, outcome.min_margin
        );
        all_passed &= outcome.passed();
    }
    // The alpha = 0 slice of the refinement must coincide with the squared
    // Buzano bound on every instance.
    let agreement = numrad::lemmas::buzano_alpha_zero_agreement(dim, trials.min(1000), seed);
    let agree_ok = agreement <= 1e-12;
    println!(
        "buzano_alpha0_agreement {}  worst={:.11e}",
        if agree_ok { "pass" } else { "FAIL" },
        agreement
    );
    all_passed &= agree_ok;

    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
