use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gradval::pattern::oracle::Window;
use gradval::scenario::{corpus_names, example_names, reproduce, run_checks, CheckOptions, Report, Scenario};
use gradval::ValuationMachinery;

const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_LOAD_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "gradval", version, about = "Groupoid valuation rings on concrete scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Seed for random samples
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Value window radius for scans
    #[arg(long, global = true)]
    window: Option<i64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,

    /// Wider windows
    #[arg(long, global = true, env = "GRADVAL_SLOW", value_parser = parse_flag, num_args = 0..=1, default_missing_value = "1")]
    slow: Option<bool>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every applicable check on a scenario file
    Check { path: PathBuf },
    /// Run the checks for a bundled example
    Reproduce { name: String },
    /// Print the value of an element
    Eval {
        path: PathBuf,
        #[arg(allow_hyphen_values = true)]
        element: String,
    },
    /// Print the Omega, Gbar and Gamma summaries
    Gamma { path: PathBuf },
    /// List bundled examples and corpus files
    List,
}

/// Accepts `--slow` on its own as well as `GRADVAL_SLOW=1`.
fn parse_flag(s: &str) -> Result<bool, String> {
    match s {
        "" | "1" | "true" | "yes" => Ok(true),
        "0" | "false" | "no" => Ok(false),
        other => Err(format!("expected 1 or 0, got {other:?}")),
    }
}

fn options(cli: &Cli) -> CheckOptions {
    let mut opts = if cli.slow == Some(true) { CheckOptions::slow() } else { CheckOptions::default() };
    opts.seed = cli.seed;
    if let Some(r) = cli.window {
        opts.window = Window::symmetric(r);
    }
    opts
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", report.to_text()),
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn load(path: &PathBuf) -> Result<Scenario, ExitCode> {
    Scenario::load(path).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_LOAD_ERROR)
    })
}

fn machinery(s: &Scenario) -> Result<ValuationMachinery, ExitCode> {
    let built = match &s.gbar_order {
        Some(pairs) => {
            let pairs: Vec<(&str, &str)> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            ValuationMachinery::build_unchecked(&s.ring).and_then(|v| v.with_gbar_order(&pairs))
        }
        None => ValuationMachinery::build(&s.ring),
    };
    built.map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    match &cli.command {
        Command::Check { path } => {
            let s = load(path)?;
            Ok(emit(&run_checks(&s, &options(cli)), cli.report))
        }
        Command::Reproduce { name } => match reproduce(name, &options(cli)) {
            Ok(report) => Ok(emit(&report, cli.report)),
            Err(e) => {
                eprintln!("error: {e}");
                Err(ExitCode::from(EXIT_LOAD_ERROR))
            }
        },
        Command::Eval { path, element } => {
            let s = load(path)?;
            let x = s.parent().parse_element(element).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_LOAD_ERROR)
            })?;
            let v = machinery(&s)?;
            let value = v.valuate(&x).map_err(|e| {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_CHECK_FAILED)
            })?;
            match cli.report {
                Format::Json => println!("{{\"element\": {:?}, \"value\": {:?}}}", element, v.format(&value)),
                Format::Text => println!("{}", v.format(&value)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma { path } => {
            let s = load(path)?;
            let v = machinery(&s)?;
            let om = v.omega();
            let grp = s.parent().groupoid();
            println!("Omega: {} unit orbit(s)", om.roots().len());
            for root in om.roots() {
                let orbit: Vec<&str> = om.orbit(root).into_iter().map(|g| grp.name(g)).collect();
                println!("  {} (modulus {}): {}", grp.name(root), om.modulus(root), orbit.join(" "));
            }
            let gb = v.gbar();
            println!("Gbar: {} class(es)", gb.classes());
            for c in 0..gb.classes() {
                let members: Vec<&str> = gb.members(c).into_iter().map(|g| grp.name(g)).collect();
                let above: Vec<&str> = (0..gb.classes()).filter(|&d| gb.lt(c, d)).map(|d| gb.name(d)).collect();
                println!("  {}: {} (above: {})", gb.name(c), members.join(" "), above.join(" "));
            }
            let idem = v.gamma_idempotents();
            let shown: Vec<String> = idem.iter().map(|e| v.format(e)).collect();
            println!("Gamma: {} idempotent(s), group: {}", idem.len(), v.gamma_is_group());
            for e in shown {
                println!("  {e}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            println!("examples:");
            for n in example_names() {
                println!("  {n}");
            }
            println!("corpus files:");
            for n in corpus_names() {
                println!("  {n}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli).unwrap_or_else(|code| code)
}
