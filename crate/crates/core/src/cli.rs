//! The `wreath` command-line tool.
//!
//! Three command families tie the library into reproducible workflows:
//! `present` builds presentations and writes them in a stable format,
//! `verify` runs order and homomorphism certificates against a file, and
//! `check` exposes the conormality, minimality and Frattini analyses.
//!
//! Exit codes: 0 success / all checks passed, 1 a verification or check
//! failed, 2 input or usage error, 3 a coset cap was exhausted where closure
//! was required. The default coset cap is one million and can be overridden
//! by `--cap` or the `WREATH_COSET_CAP` environment variable.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{
    conormality_gcd, frattini_check, minimality_drop_test, AnalysisError, DropVerdict,
};
use crate::builders::{
    cyclic_wreath_presentation, multi_wreath_presentation, sylow_presentation,
    wreath_presentation, BuildError, WreathFactor, WreathMeta,
};
use crate::enumeration::{group_order, GroupOrder, DEFAULT_COSET_CAP};
use crate::fileio;
use crate::oracle::{hom_certificate, realize_factor, OracleError, DEFAULT_ORACLE_LIMIT};
use crate::presentation::{to_canonical_json, Presentation};

const CAP_ENV: &str = "WREATH_COSET_CAP";

#[derive(Parser)]
#[command(
    name = "wreath",
    version,
    about = "Build, verify and analyse finite presentations of wreath products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a presentation and write it out
    #[command(subcommand)]
    Present(PresentCmd),
    /// Verify a presentation file against an expectation or its metadata
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Analyse a presentation file
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Gap,
    Text,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to a file instead of stdout
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CapOpt {
    /// Coset cap for enumerations (default: WREATH_COSET_CAP or 1000000)
    #[arg(long)]
    cap: Option<usize>,
}

impl CapOpt {
    fn resolve(&self) -> Result<usize, CliError> {
        let cap = match self.cap {
            Some(c) => c,
            None => match std::env::var(CAP_ENV) {
                Ok(v) => v
                    .parse()
                    .map_err(|_| CliError::input(format!("bad {CAP_ENV} value `{v}`")))?,
                Err(_) => DEFAULT_COSET_CAP,
            },
        };
        if cap == 0 {
            return Err(CliError::input("the coset cap must be positive"));
        }
        Ok(cap)
    }
}

#[derive(Subcommand)]
enum PresentCmd {
    /// Wreath product of two presented finite groups
    Wreath {
        /// Presentation file of the bottom (wreathed) factor
        #[arg(long)]
        left: PathBuf,
        /// Presentation file of the top (acting) factor
        #[arg(long)]
        right: PathBuf,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Iterated wreath product of presented finite groups, bottom-up
    Multi {
        /// Presentation files, bottom factor first
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        cap: CapOpt,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Wreath product of two cyclic groups C_n wr C_m
    Cyclic {
        /// Order of the bottom (wreathed) cyclic group
        #[arg(short)]
        n: usize,
        /// Order of the top (acting) cyclic group
        #[arg(short)]
        m: usize,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Sylow p-subgroup of the symmetric group on p^n points
    Sylow {
        /// The prime p
        #[arg(short)]
        p: u64,
        /// The nesting depth n
        #[arg(short)]
        n: u32,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Enumerate the presentation and compare its order
    Order {
        file: PathBuf,
        /// Expected group order
        #[arg(long, conflicts_with = "expect_infinite")]
        expect: Option<usize>,
        /// Pass when the enumeration does not close within the cap
        #[arg(long)]
        expect_infinite: bool,
        #[command(flatten)]
        cap: CapOpt,
    },
    /// Run the homomorphism certificate against the concrete wreath product
    /// (requires wreath_meta in the file)
    Hom {
        file: PathBuf,
        #[command(flatten)]
        cap: CapOpt,
        /// Maximum order of the concrete oracle group
        #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
        oracle_limit: usize,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Conormality of every generator (gcd of relator exponent sums)
    Conormal { file: PathBuf },
    /// Drop each relator in turn and re-enumerate
    Minimal {
        file: PathBuf,
        /// Expected order of the full presentation
        #[arg(long)]
        expect: usize,
        #[command(flatten)]
        cap: CapOpt,
    },
    /// Whether every relator abelianizes to zero modulo the prime q
    Frattini {
        file: PathBuf,
        /// The prime modulus
        #[arg(short)]
        q: u64,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    fn capped(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<fileio::FileError> for CliError {
    fn from(e: fileio::FileError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<crate::enumeration::EnumError> for CliError {
    fn from(e: crate::enumeration::EnumError) -> Self {
        CliError::input(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::FactorCapped { .. } => CliError::capped(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::BaselineCapped { .. } => CliError::capped(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

/// Parses the process arguments, runs the command, and maps the outcome to
/// the documented exit codes.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Present(cmd) => present(cmd),
        Command::Verify(cmd) => verify(cmd),
        Command::Check(cmd) => check(cmd),
    }
}

/// Loads a factor presentation and realizes it by enumeration, enforcing
/// that it presents a finite group within the cap.
fn load_factor(path: &Path, cap: usize) -> Result<WreathFactor, CliError> {
    let (presentation, _) = fileio::load(path)?;
    let (group, images) = realize_factor(&presentation, cap).map_err(|e| match e {
        OracleError::FactorCapped { stats, .. } => CliError::capped(format!(
            "{}: factor enumeration did not close within the cap ({} cosets defined)",
            path.display(),
            stats.defined
        )),
        other => CliError::input(other.to_string()),
    })?;
    Ok(WreathFactor {
        presentation,
        group,
        images,
    })
}

fn write_output(pres: &Presentation, meta: &WreathMeta, out: &OutputOpts) -> Result<(), CliError> {
    let rendered = match out.format {
        Format::Json => fileio::encode(pres, Some(meta)),
        Format::Gap => fileio::to_gap(pres),
        Format::Text => fileio::to_text(pres),
    };
    match &out.output {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::input(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn present(cmd: PresentCmd) -> Result<(), CliError> {
    let (pres, meta, out) = match cmd {
        PresentCmd::Wreath {
            left,
            right,
            cap,
            out,
        } => {
            let cap = cap.resolve()?;
            let bottom = load_factor(&left, cap)?;
            let top = load_factor(&right, cap)?;
            let (p, m) = wreath_presentation(
                &bottom.presentation,
                &top.presentation,
                &top.group,
                &top.images,
            )?;
            (p, m, out)
        }
        PresentCmd::Multi { files, cap, out } => {
            let cap = cap.resolve()?;
            let parts = files
                .iter()
                .map(|f| load_factor(f, cap))
                .collect::<Result<Vec<_>, _>>()?;
            let (p, m) = multi_wreath_presentation(&parts)?;
            (p, m, out)
        }
        PresentCmd::Cyclic { n, m, out } => {
            let (p, meta) = cyclic_wreath_presentation(n, m)?;
            (p, meta, out)
        }
        PresentCmd::Sylow { p, n, out } => {
            let (pres, meta) = sylow_presentation(p, n)?;
            (pres, meta, out)
        }
    };
    write_output(&pres, &meta, &out)
}

#[derive(Serialize)]
struct OrderReport {
    order: Option<usize>,
    expected: Option<usize>,
    expect_infinite: bool,
    pass: bool,
}

#[derive(Serialize)]
struct HomCertificateReport {
    oracle_order: usize,
    presented_order: Option<usize>,
    relators_all_pass: bool,
    generates: bool,
    pass: bool,
}

fn verify(cmd: VerifyCmd) -> Result<(), CliError> {
    match cmd {
        VerifyCmd::Order {
            file,
            expect,
            expect_infinite,
            cap,
        } => {
            if expect.is_none() && !expect_infinite {
                return Err(CliError::input(
                    "one of --expect or --expect-infinite is required",
                ));
            }
            let cap = cap.resolve()?;
            let (p, _) = fileio::load(&file)?;
            let (order, pass) = match group_order(&p, cap)? {
                GroupOrder::Finite(n) => (Some(n), expect == Some(n)),
                GroupOrder::Unknown(stats) => {
                    if !expect_infinite {
                        return Err(CliError::capped(format!(
                            "enumeration did not close within cap {cap} \
                             ({} cosets defined, {} deleted)",
                            stats.defined, stats.deleted
                        )));
                    }
                    (None, true)
                }
            };
            let report = OrderReport {
                order,
                expected: expect,
                expect_infinite,
                pass,
            };
            print!("{}", to_canonical_json(&report));
            if pass {
                Ok(())
            } else {
                Err(CliError::verification(match order {
                    Some(n) => format!("order {n} does not match the expectation"),
                    None => "expected a closed enumeration".to_string(),
                }))
            }
        }
        VerifyCmd::Hom {
            file,
            cap,
            oracle_limit,
        } => {
            let cap = cap.resolve()?;
            let (p, meta) = fileio::load(&file)?;
            let meta: WreathMeta = meta.ok_or_else(|| {
                CliError::input("the file carries no wreath_meta; `verify hom` needs it")
            })?;
            let cert = hom_certificate(&p, &meta, cap, oracle_limit)?;
            let report = HomCertificateReport {
                oracle_order: cert.oracle_order,
                presented_order: cert.presented_order,
                relators_all_pass: cert.relators.all_pass(),
                generates: cert.generates,
                pass: cert.pass(),
            };
            print!("{}", to_canonical_json(&report));
            if cert.pass() {
                Ok(())
            } else {
                Err(CliError::verification("homomorphism certificate failed"))
            }
        }
    }
}

#[derive(Serialize)]
struct FrattiniReport {
    prime: u64,
    passes: bool,
}

fn check(cmd: CheckCmd) -> Result<(), CliError> {
    match cmd {
        CheckCmd::Conormal { file } => {
            let (p, _) = fileio::load(&file)?;
            let report = conormality_gcd(&p);
            print!("{}", to_canonical_json(&report));
            if report.all_conormal() {
                Ok(())
            } else {
                Err(CliError::verification("some generators are not conormal"))
            }
        }
        CheckCmd::Minimal { file, expect, cap } => {
            let cap = cap.resolve()?;
            let (p, _) = fileio::load(&file)?;
            let reports = minimality_drop_test(&p, expect, cap)?;
            print!("{}", to_canonical_json(&reports));
            if reports.iter().all(|r| r.verdict != DropVerdict::Redundant) {
                Ok(())
            } else {
                Err(CliError::verification("some relators are redundant"))
            }
        }
        CheckCmd::Frattini { file, q } => {
            let (p, _) = fileio::load(&file)?;
            let passes = frattini_check(&p, q)?;
            let report = FrattiniReport { prime: q, passes };
            print!("{}", to_canonical_json(&report));
            if passes {
                Ok(())
            } else {
                Err(CliError::verification(
                    "some relator has an exponent sum not divisible by the prime",
                ))
            }
        }
    }
}
