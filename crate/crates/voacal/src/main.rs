use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use voacal::report::{document, render_text, Summary};
use voacal::suite::{run_suite, Suite, SuiteConfig, SuiteError};
use voacal::text::{format_series, parse_range, parse_vector};
use voacal_core::coordchange::{delta_apply, phi_apply, solve_a_coeffs, CoordChange, Expansion, Fault};
use voacal_core::formal::FracExp;
use voacal_core::heisenberg::Heisenberg;
use voacal_core::voa::Voa;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_DIVERGENT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "voacal",
    version,
    about = "Exact change-of-coordinate calculus for twisted and quasi modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients a_1..a_M of the coordinate change.
    Coeffs {
        #[arg(long = "N", default_value_t = 2)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        count: usize,
    },
    /// Apply Delta_N(x) or Phi(x) to a Fock vector.
    Apply {
        op: Op,
        #[arg(long = "N", default_value_t = 2)]
        n: u32,
        vector: String,
    },
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Print a short tour of the calculus.
    Demo,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Delta,
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    PhiScale,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long = "N", default_value_t = 2)]
    n: u32,
    #[arg(long, default_value_t = 3)]
    weight_cap: i64,
    /// Largest depth of target vectors.
    #[arg(long, default_value_t = 2)]
    depth_cap: i64,
    #[arg(long, default_value = "-6:6", allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 8)]
    kmax: i64,
    #[arg(long, default_value_t = 8)]
    lmax: i64,
    #[arg(long, default_value_t = 4)]
    x0_order: i64,
    /// Table length for the coeffs suite.
    #[arg(long, default_value_t = 8)]
    count: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; overrides VOACAL_THREADS.
    #[arg(long)]
    threads: Option<usize>,
    /// Zero all timing fields.
    #[arg(long)]
    deterministic: bool,
    #[arg(long, value_enum, hide = true)]
    inject_fault: Option<FaultArg>,
    /// Expand binomially before substituting negative powers.
    #[arg(long, hide = true)]
    naive_substitution: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match cli.command {
        Command::Coeffs { n, count } => coeffs(n, count),
        Command::Apply { op, n, vector } => apply(op, n, &vector),
        Command::Verify(args) => verify(args),
        Command::Demo => demo(),
    }
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn coeffs(n: u32, count: usize) -> ExitCode {
    if n == 0 || count == 0 {
        return usage("N and count must be positive");
    }
    for (i, a) in solve_a_coeffs(n, count).a.iter().enumerate() {
        println!("a_{} = {a}", i + 1);
    }
    ExitCode::SUCCESS
}

fn apply(op: Op, n: u32, text: &str) -> ExitCode {
    if n == 0 {
        return usage("N must be positive");
    }
    let v = match parse_vector(text, n) {
        Ok(v) => v,
        Err(e) => return usage(e),
    };
    let voa: Arc<dyn Voa> = Arc::new(Heisenberg::new());
    let cc = CoordChange::new(voa, n);
    let out = match op {
        Op::Delta => delta_apply(&cc, &v, false),
        Op::Phi => phi_apply(&cc, &v),
    };
    match out {
        Ok(s) => {
            println!("{}", format_series(&s));
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

fn verify(a: VerifyArgs) -> ExitCode {
    let Some(suite) = Suite::from_name(&a.suite) else {
        return usage(format!("unknown suite `{}`", a.suite));
    };
    let window = match parse_range(&a.window) {
        Ok(w) => w,
        Err(e) => return usage(e),
    };
    let cfg = SuiteConfig {
        suite,
        n: a.n,
        weight_cap: a.weight_cap,
        depth_cap: FracExp::int(a.depth_cap),
        window,
        kmax: a.kmax,
        lmax: a.lmax,
        x0_order: a.x0_order,
        count: a.count,
        threads: a.threads,
        deterministic: a.deterministic,
        fault: match a.inject_fault {
            Some(FaultArg::PhiScale) => Fault::PhiScale,
            None => Fault::None,
        },
        expansion: if a.naive_substitution {
            Expansion::BinomialFirst
        } else {
            Expansion::Convention
        },
        ..SuiteConfig::default()
    };
    let reports = match run_suite(&cfg) {
        Ok(r) => r,
        Err(e @ SuiteError::Config(_)) => return usage(e),
        Err(e @ SuiteError::Divergent(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_DIVERGENT);
        }
        Err(e) => return usage(e),
    };
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&document(&reports)).expect("json")),
        Format::Text => {
            for r in reports.iter().filter(|r| r.report.identity == "a_coeff_residual") {
                for line in r.report.get("table").unwrap_or("").split("; ") {
                    println!("{line}");
                }
                println!("residual = {}", if r.report.passed() { "0" } else { "nonzero" });
            }
            print!("{}", render_text(&reports));
        }
    }
    let s = Summary::of(reports.iter().map(|r| &r.report));
    if s.fail > 0 {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}

fn demo() -> ExitCode {
    println!("coordinate change coefficients for N = 2:");
    for (i, a) in solve_a_coeffs(2, 4).a.iter().enumerate() {
        println!("  a_{} = {a}", i + 1);
    }
    let voa: Arc<dyn Voa> = Arc::new(Heisenberg::new());
    let cc = CoordChange::new(voa, 2);
    for text in ["a[-1]|0>", "1/2 * a[-1]a[-1]|0>"] {
        let v = parse_vector(text, 2).expect("literal");
        let d = delta_apply(&cc, &v, false).expect("homogeneous");
        let p = phi_apply(&cc, &v).expect("homogeneous");
        println!("Delta_2(x) {text} = {}", format_series(&d));
        println!("Phi(x) {text} = {}", format_series(&p));
    }
    let cfg = SuiteConfig {
        suite: Suite::Roundtrip,
        weight_cap: 2,
        window: (-4, 4),
        deterministic: true,
        ..SuiteConfig::default()
    };
    match run_suite(&cfg) {
        Ok(r) => {
            print!("{}", render_text(&r));
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}
