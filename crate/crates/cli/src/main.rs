mod report;
mod spec;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rsw_core::conductors::{invariants, Character};
use rsw_core::local::LocalElem;
use rsw_core::snc::{divisor_report, GlobalCharacter};
use rsw_core::suites;
use rsw_core::witt::WittVec;
use serde::Serialize;

use spec::{parse_spec, CharacterSpec, Mode};

#[derive(Parser)]
#[command(name = "rsw", version, about = "Ramification invariants of Artin-Schreier-Witt characters over F_p(x)((t))")]
struct Cli {
    /// Output format for standard output.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lemmas,
    Qpolys,
    Crosscheck,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// sw, dt, rsw and cform of a local character.
    Conductor { spec: PathBuf },
    /// Swan and total-dimension divisors of a character on the plane.
    Divisor { spec: PathBuf },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random cases per suite; also caps the number of corpus characters.
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

fn load(path: &Path, want: Mode) -> Result<CharacterSpec, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let spec = parse_spec(&text).map_err(|e| Failure::Usage(format!("{}:{e}", path.display())))?;
    if spec.mode != want {
        let m = if want == Mode::Local { "local" } else { "global" };
        return Err(Failure::Usage(format!("{}: this command needs mode = {m}", path.display())));
    }
    Ok(spec)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) {
    let summary = text(value);
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(value).expect("output is serializable"));
            eprint!("{summary}");
        }
        Format::Text => print!("{summary}"),
    }
}

fn compute_error(e: rsw_core::Error) -> Failure {
    match e {
        rsw_core::Error::Precondition(_) | rsw_core::Error::Unsupported(_) | rsw_core::Error::Parse(_) => {
            Failure::Usage(e.to_string())
        }
        _ => Failure::Verification(e.to_string()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Conductor { spec } => {
            let spec = load(&spec, Mode::Local)?;
            let rep = WittVec::new(spec.p, spec.values.into_iter().map(LocalElem::new).collect());
            let chi = Character::new(rep).map_err(compute_error)?;
            let inv = invariants(&chi).map_err(compute_error)?;
            emit(cli.format, &report::conductor(&inv), report::conductor_text);
            Ok(())
        }
        Command::Divisor { spec } => {
            let spec = load(&spec, Mode::Global)?;
            let a = GlobalCharacter::new(WittVec::new(spec.p, spec.values)).map_err(compute_error)?;
            let r = divisor_report(&a).map_err(compute_error)?;
            let out = report::divisor(&r);
            emit(cli.format, &out, report::divisor_text);
            if r.germs_consistent() && r.supports_agree() {
                Ok(())
            } else {
                Err(Failure::Verification("divisor consistency checks failed".into()))
            }
        }
        Command::Verify { suite, seed, cases } => {
            let mut out = report::VerifyOut {
                suite: match suite {
                    Suite::Lemmas => "lemmas",
                    Suite::Qpolys => "qpolys",
                    Suite::Crosscheck => "crosscheck",
                    Suite::All => "all",
                }
                .to_string(),
                seed,
                cases,
                ok: true,
                warnings: Vec::new(),
                suites: Vec::new(),
            };
            if cases == 0 {
                out.warnings.push("--cases 0: nothing was checked".into());
            } else {
                if matches!(suite, Suite::Qpolys | Suite::All) {
                    out.suites.push(suites::qpoly_suite(seed, cases));
                }
                if matches!(suite, Suite::Lemmas | Suite::All) {
                    out.suites.push(suites::filtration_suite(seed, cases));
                    out.suites.push(suites::valuation_suite(cases));
                }
                if matches!(suite, Suite::Crosscheck | Suite::All) {
                    out.suites.push(suites::conductor_suite(seed, cases));
                    out.suites.push(suites::twist_suite(seed, cases.div_ceil(10)));
                    out.suites.push(suites::crosscheck_suite(cases));
                }
                out.ok = out.suites.iter().all(|s| s.ok());
            }
            emit(cli.format, &out, report::verify_text);
            if out.ok {
                Ok(())
            } else {
                Err(Failure::Verification("verification failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
