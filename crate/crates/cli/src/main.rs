//! `polysum`: witnesses, range scans and certificates for sums of
//! generalized polygonal numbers.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use polysum::certify::{verify, Certificate};
use polysum::pipelines::{self, Domain, SumForm};
use polysum::ternary::{dickson_member, excluded_set_bruteforce, DicksonForm};
use polysum::universality::{self, Outcome, ScanReport};
use polysum::DiagonalForm;

/// Largest range bound accepted by the scanning commands.
const MAX_BOUND: u64 = 1_000_000_000;

/// Values per block when certifying a range.
const CERTIFY_BLOCK: u64 = 1024;

#[derive(Parser)]
#[command(
    name = "polysum",
    version,
    about = "Sums of generalized polygonal numbers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print indices representing n, optionally writing a certificate.
    Witness {
        #[arg(long)]
        sum: SumForm,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "Z")]
        over: Domain,
        /// Write the certificate as JSON to this file.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Find the least n <= max not represented by a sum.
    CheckRange {
        #[arg(long)]
        sum: SumForm,
        #[arg(long, value_parser = bound_parser())]
        max: u64,
        #[arg(long, default_value = "Z")]
        over: Domain,
        /// Check every n through the witness pipeline and its certificate.
        #[arg(long)]
        pipeline: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// List the values <= max not represented by a diagonal ternary form.
    Excluded {
        #[arg(long)]
        form: DiagonalForm,
        #[arg(long, value_parser = bound_parser())]
        max: u64,
    },
    /// Test membership in a closed-form excluded set.
    Dickson {
        #[arg(long)]
        form: DiagonalForm,
        #[arg(long)]
        n: u64,
    },
    /// Scan pairs b <= c for p5 + b p5 + c p5 over Z.
    Filter {
        #[arg(long)]
        b_max: u64,
        #[arg(long)]
        c_max: u64,
        #[arg(long, value_parser = bound_parser())]
        max: u64,
    },
    /// Scan the open candidate pairs up to max.
    Conjecture {
        #[arg(long, value_parser = bound_parser())]
        max: u64,
    },
    /// Produce and verify a certificate for every n <= max.
    CertifyRange {
        #[arg(long)]
        sum: SumForm,
        #[arg(long, value_parser = bound_parser())]
        max: u64,
        /// Write each certificate to DIR/<n>.json.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[command(flatten)]
        jobs: Jobs,
    },
    /// Check a certificate file.
    VerifyCert {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Args)]
struct Jobs {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, env = "POLYSUM_JOBS", value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: Option<u64>,
}

impl Jobs {
    fn count(&self) -> usize {
        match self.jobs {
            Some(j) => j as usize,
            None => std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

fn bound_parser() -> clap::builder::RangedU64ValueParser<u64> {
    clap::value_parser!(u64).range(0..=MAX_BOUND)
}

/// What a command concluded, mapped onto the exit status.
enum Status {
    Yes,
    No,
    Usage(String),
    Failed(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match run(cli.command) {
        Ok(s) => s,
        Err(e) => Status::Failed(format!("write failed: {e}")),
    };
    match status {
        Status::Yes => ExitCode::SUCCESS,
        Status::No => ExitCode::from(1),
        Status::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Status::Failed(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> io::Result<Status> {
    let mut out = io::stdout().lock();
    match command {
        Command::Witness { sum, n, over, cert } => {
            witness(&mut out, sum.with_domain(over), n, cert.as_deref())
        }
        Command::CheckRange {
            sum,
            max,
            over,
            pipeline,
            jobs,
        } => check_range(&mut out, sum.with_domain(over), max, pipeline, jobs.count()),
        Command::Excluded { form, max } => {
            let values: Vec<String> = excluded_set_bruteforce(&form, max)
                .iter()
                .map(u64::to_string)
                .collect();
            writeln!(out, "{}", values.join(" "))?;
            Ok(Status::Yes)
        }
        Command::Dickson { form, n } => {
            if DicksonForm::for_form(&form).is_err() {
                return Ok(Status::Usage(format!(
                    "no closed-form excluded set for {form}"
                )));
            }
            let member = dickson_member(&form, n).expect("form checked above");
            writeln!(out, "{member}")?;
            Ok(if member { Status::Yes } else { Status::No })
        }
        Command::Filter { b_max, c_max, max } => {
            if b_max == 0 || c_max == 0 {
                return Ok(Status::Usage("coefficient bounds must be positive".into()));
            }
            for ((b, c), cex) in universality::pair_scan(b_max, c_max, max) {
                match cex {
                    None => writeln!(out, "b={b} c={c} no-failure")?,
                    Some(n) => writeln!(out, "b={b} c={c} first-failure {n}")?,
                }
            }
            Ok(Status::Yes)
        }
        Command::Conjecture { max } => {
            let reports = universality::conjectured_pairs_check(max);
            for r in &reports {
                writeln!(out, "{} {}", r.sum, outcome_text(r))?;
            }
            Ok(if reports.iter().all(ScanReport::is_success) {
                Status::Yes
            } else {
                Status::No
            })
        }
        Command::CertifyRange {
            sum,
            max,
            dir,
            jobs,
        } => certify_range(&mut out, sum, max, dir.as_deref(), jobs.count()),
        Command::VerifyCert { file } => verify_cert(&mut out, &file),
    }
}

fn outcome_text(r: &ScanReport) -> String {
    match r.outcome {
        Outcome::NoFailure => "no-failure".to_string(),
        Outcome::FirstFailure(n) => format!("first-failure {n}"),
    }
}

fn unsupported(sum: &SumForm) -> String {
    format!("no witness pipeline for {sum} over {}", sum.domain)
}

fn witness(out: &mut impl Write, sum: SumForm, n: u64, cert: Option<&Path>) -> io::Result<Status> {
    if !pipelines::is_supported(&sum) {
        return Ok(Status::Usage(unsupported(&sum)));
    }
    let w = match pipelines::witness(&sum, n) {
        Ok(w) => w,
        Err(e) => return Ok(Status::Failed(e.to_string())),
    };
    let [x, y, z] = w.indices;
    writeln!(out, "n={n} indices=({x},{y},{z})")?;
    if let Some(path) = cert {
        if let Err(e) = fs::write(path, w.certificate.to_json()) {
            return Ok(Status::Failed(format!("{}: {e}", path.display())));
        }
    }
    Ok(Status::Yes)
}

fn check_range(
    out: &mut impl Write,
    sum: SumForm,
    max: u64,
    pipeline: bool,
    jobs: usize,
) -> io::Result<Status> {
    eprintln!(
        "scanning {sum} over {} for n <= {max} with {jobs} jobs",
        sum.domain
    );
    let report = if pipeline {
        if !pipelines::is_supported(&sum) {
            return Ok(Status::Usage(unsupported(&sum)));
        }
        match universality::check_range_pipeline(&sum, max, jobs) {
            Ok(r) => r,
            Err(e) => return Ok(Status::Failed(e.to_string())),
        }
    } else {
        let total = max + 1;
        universality::check_range_observed(&sum, max, jobs, |done| {
            eprintln!("scanned {done}/{total}");
        })
    };
    writeln!(out, "{}", outcome_text(&report))?;
    Ok(if report.is_success() {
        Status::Yes
    } else {
        Status::No
    })
}

/// Result of certifying one `n`: the record line, and whether it passed.
fn certify_one(sum: &SumForm, n: u64, dir: Option<&Path>) -> (String, bool) {
    let w = match pipelines::witness(sum, n) {
        Ok(w) => w,
        Err(e) => return (format!("n={n} error: {e}"), false),
    };
    let [x, y, z] = w.indices;
    let record = format!("n={n} indices=({x},{y},{z})");
    if let Err(e) = verify(&w.certificate) {
        return (format!("{record} invalid: {e}"), false);
    }
    if let Some(dir) = dir {
        let path = dir.join(format!("{n}.json"));
        if let Err(e) = fs::write(&path, w.certificate.to_json()) {
            return (format!("{record} error: {}: {e}", path.display()), false);
        }
    }
    (format!("{record} valid"), true)
}

fn certify_range(
    out: &mut impl Write,
    sum: SumForm,
    max: u64,
    dir: Option<&Path>,
    jobs: usize,
) -> io::Result<Status> {
    if !pipelines::is_supported(&sum) {
        return Ok(Status::Usage(unsupported(&sum)));
    }
    if let Some(dir) = dir {
        if let Err(e) = fs::create_dir_all(dir) {
            return Ok(Status::Failed(format!("{}: {e}", dir.display())));
        }
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(p) => p,
        Err(e) => return Ok(Status::Failed(e.to_string())),
    };
    let mut all_valid = true;
    let mut lo = 0;
    while lo <= max {
        let hi = max.min(lo + CERTIFY_BLOCK - 1);
        let records: Vec<(String, bool)> = pool.install(|| {
            (lo..=hi)
                .into_par_iter()
                .map(|n| certify_one(&sum, n, dir))
                .collect()
        });
        for (line, ok) in records {
            writeln!(out, "{line}")?;
            all_valid &= ok;
        }
        eprintln!("certified {}/{}", hi + 1, max + 1);
        lo = hi + 1;
    }
    Ok(if all_valid { Status::Yes } else { Status::No })
}

fn verify_cert(out: &mut impl Write, file: &Path) -> io::Result<Status> {
    let text = match fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return Ok(Status::Usage(format!("{}: {e}", file.display()))),
    };
    let verdict = Certificate::from_json(&text)
        .map_err(|e| format!("parse error at {e}"))
        .and_then(|c| verify(&c).map_err(|e| e.to_string()));
    match verdict {
        Ok(()) => {
            writeln!(out, "valid")?;
            Ok(Status::Yes)
        }
        Err(reason) => {
            writeln!(out, "invalid: {reason}")?;
            Ok(Status::No)
        }
    }
}
