use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ksemiring::analysis::analyze;
use ksemiring::checks::{run_checks, FixtureSet, CHECK_IDS};
use ksemiring::classify::{census, search_k_simple, Constraints};
use ksemiring::congruence::{is_k_congruence, kappa, quotient, zero_class};
use ksemiring::dot::{export, DotTarget};
use ksemiring::ideals::k_closure;
use ksemiring::natsr::{nat_contains, nat_is_k_closed_upto, nat_k_closure_witness, NatError, NatIdeal};
use ksemiring::specfmt::{parse_semiring, render_semiring, SpecError};
use ksemiring::{Congruence, ElementSubset, Error, FiniteSemiring, Partition};

const EXIT_SEMANTIC: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BOUND: u8 = 3;

/// Ideals, subtractive closures and Bourne congruences of finite semirings.
#[derive(Parser)]
#[command(name = "ksemiring", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Hasse,
    IdealLattice,
    CongruenceLattice,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a semiring file and check the semiring laws.
    Validate { path: PathBuf },
    /// Ideals, congruences, the k-ideal/k-congruence correspondence and
    /// simplicity verdicts.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Subtractive closure of an ideal.
    Kclosure {
        path: PathBuf,
        /// Comma-separated element names.
        #[arg(long)]
        ideal: String,
    },
    /// Bourne congruence of an ideal.
    Kappa {
        path: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Quotient by a congruence given as classes, or by the Bourne
    /// congruence of an ideal.
    Quotient {
        path: PathBuf,
        /// Classes separated by `;`, elements by `,` (e.g. `0,a;b,c,d,1`).
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        classes: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Enumerate semirings of a small order up to isomorphism.
    Census(CensusArgs),
    /// Run the verification items; one PASS/FAIL line each.
    CheckPaper {
        /// Run only these items (repeatable).
        #[arg(long)]
        only: Vec<String>,
        /// Directory with replacement `<name>.sr` fixture files.
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Print the item identifiers and exit.
        #[arg(long)]
        list: bool,
    },
    /// Graphviz text for the natural order or the ideal/congruence lattice.
    ExportDot {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "hasse")]
        target: Target,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Finitely generated ideals of the nonnegative integers.
    Nat {
        #[command(subcommand)]
        command: NatCommand,
    },
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long)]
    order: usize,
    #[arg(long)]
    additively_idempotent: bool,
    #[arg(long)]
    commutative_mul: bool,
    #[arg(long)]
    incline: bool,
    #[arg(long)]
    with_zero: bool,
    #[arg(long)]
    ring: bool,
    /// List only the k-simple classes.
    #[arg(long)]
    k_simple_only: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum NatCommand {
    /// Membership of `x` in the ideal generated by `gens`.
    Contains {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        x: u64,
    },
    /// Whether `x` lies in the subtractive closure, with a witness.
    Kclosure {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        x: u64,
    },
    /// Smallest `x <= bound` in the closure but not in the ideal.
    Kclosed {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u64>,
        #[arg(long)]
        bound: u64,
    },
}

/// A message and the exit status it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn semantic(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_SEMANTIC,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::OrderTooLarge { .. } | Error::Unsupported(_) => EXIT_BOUND,
            Error::WidthMismatch { .. } => EXIT_INPUT,
            _ => EXIT_SEMANTIC,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<NatError> for Failure {
    fn from(e: NatError) -> Self {
        let code = match e {
            NatError::OutOfRange { .. } => EXIT_BOUND,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn spec_failure(path: &Path, e: SpecError) -> Failure {
    let mut message = format!("{}: {e}", path.display());
    if let Some((names, report)) = e.axiom_report() {
        message = format!("{}: not a semiring\n{}", path.display(), report.render(names).trim_end());
    }
    if e.is_input_error() {
        Failure::input(message)
    } else {
        Failure::semantic(message)
    }
}

fn load(path: &Path) -> Result<FiniteSemiring, Failure> {
    parse_semiring(&read(path)?).map_err(|e| spec_failure(path, e))
}

fn names(list: &str) -> Vec<&str> {
    list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn subset(sr: &FiniteSemiring, list: &str) -> Result<ElementSubset, Failure> {
    let names = names(list);
    if let Some(bad) = names.iter().find(|n| sr.element_by_name(n).is_none()) {
        return Err(Failure::input(format!("unknown element `{bad}`")));
    }
    Ok(ElementSubset::from_names(sr, &names).expect("names checked"))
}

fn write_out(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn validate(path: &Path) -> Outcome {
    let sr = load(path)?;
    println!("valid semiring {} of order {}", sr.name(), sr.order());
    Ok(())
}

fn cmd_analyze(path: &Path, format: Format) -> Outcome {
    let report = analyze(&load(path)?)?;
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Structured => print!("{}", report.to_json()),
    }
    Ok(())
}

fn cmd_kclosure(path: &Path, ideal: &str) -> Outcome {
    let sr = load(path)?;
    let a = subset(&sr, ideal)?;
    let closure = k_closure(&sr, &a).map_err(|e| Failure::semantic(format!("{}: {e}", a.display(&sr))))?;
    println!("closure {}", closure.display(&sr));
    println!("k-ideal {}", if closure == a { "yes" } else { "no" });
    Ok(())
}

fn cmd_kappa(path: &Path, ideal: &str) -> Outcome {
    let sr = load(path)?;
    let a = subset(&sr, ideal)?;
    let theta = kappa(&sr, &a).map_err(|e| Failure::semantic(format!("{}: {e}", a.display(&sr))))?;
    println!("classes {}", theta.display(&sr));
    println!("k-congruence {}", if is_k_congruence(&sr, &theta) { "yes" } else { "no" });
    Ok(())
}

fn cmd_quotient(path: &Path, classes: Option<&str>, ideal: Option<&str>) -> Outcome {
    let sr = load(path)?;
    let theta = match (classes, ideal) {
        (Some(spec), _) => {
            let blocks = spec.split(';').map(|c| subset(&sr, c)).collect::<Result<Vec<_>, _>>()?;
            let p = Partition::from_blocks(sr.order(), &blocks)
                .ok_or_else(|| Failure::input("classes must be disjoint and cover every element"))?;
            Congruence::new(&sr, p).map_err(|e| Failure::semantic(e.to_string()))?
        }
        (None, Some(list)) => {
            let a = subset(&sr, list)?;
            kappa(&sr, &a).map_err(|e| Failure::semantic(format!("{}: {e}", a.display(&sr))))?
        }
        (None, None) => return Err(Failure::input("give --classes or --ideal")),
    };
    let q = quotient(&sr, &theta);
    print!("{}", render_semiring(&q.quotient));
    let zero = zero_class(&sr, &theta).map_or("none".to_string(), |z| z.display(&sr));
    println!("# classes {}", theta.display(&sr));
    println!("# zero class {zero}");
    println!("# k-congruence {}", if is_k_congruence(&sr, &theta) { "yes" } else { "no" });
    Ok(())
}

fn cmd_census(args: &CensusArgs) -> Outcome {
    let c = Constraints {
        additively_idempotent: args.additively_idempotent,
        commutative_mul: args.commutative_mul,
        incline: args.incline,
        with_zero: args.with_zero,
        ring: args.ring,
    };
    let report = if args.k_simple_only {
        search_k_simple(args.order, &c)?
    } else {
        census(args.order, &c)?
    };
    let text = match args.format {
        Format::Text => report.to_text(),
        Format::Structured => report.to_json(),
    };
    write_out(args.output.as_deref(), &text)
}

fn cmd_check(only: &[String], fixtures: Option<&Path>, format: Format, list: bool) -> Outcome {
    if list {
        for id in CHECK_IDS {
            println!("{id}");
        }
        return Ok(());
    }
    let fx = match fixtures {
        Some(dir) => FixtureSet::from_dir(dir).map_err(|e| Failure::input(format!("{}: {e}", dir.display())))?,
        None => FixtureSet::shipped(),
    };
    // Failed items are reported in the output, not as panics on stderr.
    std::panic::set_hook(Box::new(|_| {}));
    let outcomes = run_checks(&fx, only).map_err(|bad| Failure::input(format!("unknown check: {}", bad.join(", "))))?;
    let _ = std::panic::take_hook();
    match format {
        Format::Text => {
            for o in &outcomes {
                println!("{}", o.line());
            }
        }
        Format::Structured => println!("{}", serde_json::to_string_pretty(&outcomes).expect("serializes")),
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    if failed > 0 {
        return Err(Failure::semantic(format!("{failed} of {} checks failed", outcomes.len())));
    }
    Ok(())
}

fn cmd_export_dot(path: &Path, target: Target, output: Option<&Path>) -> Outcome {
    let sr = load(path)?;
    let target = match target {
        Target::Hasse => DotTarget::Hasse,
        Target::IdealLattice => DotTarget::IdealLattice,
        Target::CongruenceLattice => DotTarget::CongruenceLattice,
    };
    let graph = export(&sr, target)?;
    write_out(output, &graph.render())
}

fn cmd_nat(command: &NatCommand) -> Outcome {
    match command {
        NatCommand::Contains { gens, x } => {
            let ideal = NatIdeal::new(gens)?;
            println!("{}", nat_contains(&ideal, *x)?);
        }
        NatCommand::Kclosure { gens, x } => {
            let ideal = NatIdeal::new(gens)?;
            match nat_k_closure_witness(&ideal, *x)? {
                Some(a) => println!("true (witness a = {a}: {x}+{a} = {})", x + a),
                None => println!("false"),
            }
        }
        NatCommand::Kclosed { gens, bound } => {
            let ideal = NatIdeal::new(gens)?;
            match nat_is_k_closed_upto(&ideal, *bound)? {
                Some(x) => println!("not k-closed: {x} is in the closure of {} but not in it", ideal.display()),
                None => println!("k-closed up to {bound}"),
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { path } => validate(path),
        Command::Analyze { path, format } => cmd_analyze(path, *format),
        Command::Kclosure { path, ideal } => cmd_kclosure(path, ideal),
        Command::Kappa { path, ideal } => cmd_kappa(path, ideal),
        Command::Quotient { path, classes, ideal } => cmd_quotient(path, classes.as_deref(), ideal.as_deref()),
        Command::Census(args) => cmd_census(args),
        Command::CheckPaper {
            only,
            fixtures,
            format,
            list,
        } => cmd_check(only, fixtures.as_deref(), *format, *list),
        Command::ExportDot { path, target, output } => cmd_export_dot(path, *target, output.as_deref()),
        Command::Nat { command } => cmd_nat(command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
