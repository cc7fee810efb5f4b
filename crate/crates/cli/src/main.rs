use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use reflbound::bounds::omega;
use reflbound::error::Error;
use reflbound::fielddata::FieldTable;
use reflbound::forms::{
    enumerate_t_sets, local_global_check, named_form_invariants, rank_parameter, rational_budget,
    NamedForm, Parity,
};
use reflbound::numerics::{
    sphere_volume, BoundedReal, DeltaMode, EvalContext, DEFAULT_PRECISION, MIN_PRECISION,
};
use reflbound::sieve::{sieve, sieve_all, SieveReport};
use reflbound::spectral::{display_value, m_bound, table1, OutputFormat};

// stdout may be a closed pipe (`| head`); output errors are ignored
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outln {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

const EXIT_COMPUTATION: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "reflbound",
    version,
    about = "Certified bounds for congruence hyperbolic reflection groups"
)]
struct Cli {
    /// Working precision in bits (at least 64).
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION, value_parser = parse_precision)]
    precision: u32,

    #[arg(long, global = true, value_enum, default_value_t = Delta::Proven)]
    delta: Delta,

    /// Number field table to use instead of the embedded one.
    #[arg(long, global = true)]
    fields: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Delta {
    Proven,
    Conjectural,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// M(n), R_c(n) and R_nc(n) for n = 2..=n_max.
    Table1 {
        #[arg(long, default_value_t = 29, value_parser = clap::value_parser!(u32).range(2..=64))]
        n_max: u32,
    },
    /// Volume bound, M(n) and the ratio R for one dimension.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..=64))]
        n: u32,
        #[arg(long)]
        noncocompact: bool,
    },
    /// Totally real fields that can define a cocompact group in dimension n.
    Sieve(SieveArgs),
    /// T-sets under a λ budget, or the local profile of a named form.
    Forms {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=64))]
        n: u32,
        /// λ-product budget; defaults to M(n) Vol(S^n) / ν over Q.
        #[arg(long)]
        budget: Option<String>,
        #[arg(long, value_parser = parse_named)]
        named: Option<NamedForm>,
    },
    /// Number field table maintenance.
    Fields {
        #[command(subcommand)]
        action: FieldsAction,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SieveArgs {
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, num_args = 2, value_names = ["FROM", "TO"])]
    range: Option<Vec<u32>>,
}

#[derive(Subcommand, Debug)]
enum FieldsAction {
    /// Parse the table and check it against discriminant lower bounds.
    Validate,
}

fn parse_precision(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("'{s}' is not an integer"))?;
    if p < MIN_PRECISION {
        return Err(format!("precision must be at least {MIN_PRECISION} bits"));
    }
    Ok(p)
}

fn parse_named(s: &str) -> Result<NamedForm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_undecided() {
                EXIT_UNDECIDED
            } else {
                EXIT_COMPUTATION
            })
        }
    }
}

fn context(cli: &Cli) -> EvalContext {
    let mode = match cli.delta {
        Delta::Proven => DeltaMode::Proven,
        Delta::Conjectural => DeltaMode::Conjectural,
    };
    EvalContext::with_mode(cli.precision, mode)
}

fn field_table(cli: &Cli) -> Result<FieldTable, Error> {
    match &cli.fields {
        Some(p) => FieldTable::from_path(p),
        None => Ok(FieldTable::embedded()),
    }
}

fn no_csv(cli: &Cli, what: &str) -> Result<(), Failure> {
    if cli.format == Format::Csv {
        return Err(Failure::Usage(format!(
            "csv output is only available for table1, not {what}"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> CmdResult {
    let ctx = context(cli);
    match &cli.command {
        Command::Table1 { n_max } => cmd_table1(cli, *n_max, &ctx),
        Command::Bounds { n, noncocompact } => cmd_bounds(cli, *n, !noncocompact, &ctx),
        Command::Sieve(args) => cmd_sieve(cli, args, &ctx),
        Command::Forms { n, budget, named } => cmd_forms(cli, *n, budget.as_deref(), *named, &ctx),
        Command::Fields {
            action: FieldsAction::Validate,
        } => cmd_fields_validate(cli),
    }
}

fn cmd_table1(cli: &Cli, n_max: u32, ctx: &EvalContext) -> CmdResult {
    let report = table1(n_max, ctx)?;
    let format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    out!("{}", with_newline(report.render(format)));
    Ok(if report.all_decided() {
        0
    } else {
        EXIT_UNDECIDED
    })
}

fn cmd_bounds(cli: &Cli, n: u32, cocompact: bool, ctx: &EvalContext) -> CmdResult {
    no_csv(cli, "bounds")?;
    let vb = omega(n, cocompact, ctx)?;
    let m = m_bound(n, ctx)?;
    let vol = sphere_volume(n, ctx)?;
    let ratio = &(&m * &vol) / &vb.value;
    let one = ctx.int(1);
    let feasible = if ratio.definitely_greater(&one) {
        Some(true)
    } else if ratio.definitely_less(&one) {
        Some(false)
    } else {
        None
    };
    let label = if cocompact { "R_c" } else { "R_nc" };
    match cli.format {
        Format::Json => {
            let out = json!({
                "n": n,
                "cocompact": cocompact,
                "branch": vb.branch,
                "omega": vb.value,
                "M": m,
                "sphere_volume": vol,
                label: ratio,
                "feasible": feasible,
            });
            outln!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        _ => {
            outln!(
                "n = {n} ({})",
                if cocompact {
                    "cocompact"
                } else {
                    "non-cocompact"
                }
            );
            outln!("omega  = {}", display_value(&vb.value));
            outln!("M      = {}", display_value(&m));
            outln!("Vol    = {}", display_value(&vol));
            outln!("{label:<6} = {}", display_value(&ratio));
            let verdict = match feasible {
                Some(true) => "feasible",
                Some(false) => "excluded",
                None => "undecided",
            };
            outln!("{verdict}");
        }
    }
    Ok(if feasible.is_some() {
        0
    } else {
        EXIT_UNDECIDED
    })
}

fn print_sieve(cli: &Cli, reports: &[SieveReport]) {
    match cli.format {
        Format::Json if reports.len() == 1 => outln!("{}", reports[0].to_json()),
        Format::Json => outln!("{}", serde_json::to_string_pretty(reports).expect("json")),
        _ => {
            for r in reports {
                out!("{}", with_newline(r.to_text()));
            }
        }
    }
}

fn cmd_sieve(cli: &Cli, args: &SieveArgs, ctx: &EvalContext) -> CmdResult {
    no_csv(cli, "sieve")?;
    let table = field_table(cli)?;
    let reports = match (args.n, args.range.as_deref()) {
        (Some(n), _) => vec![sieve(n, &table, ctx)?],
        (None, Some([from, to])) => {
            if from > to {
                return Err(Failure::Usage(format!("empty range {from}..{to}")));
            }
            sieve_all(*from, *to, &table, ctx)?
        }
        _ => return Err(Failure::Usage("sieve needs --n or --range".into())),
    };
    print_sieve(cli, &reports);
    Ok(0)
}

fn cmd_forms(
    cli: &Cli,
    n: u32,
    budget: Option<&str>,
    named: Option<NamedForm>,
    ctx: &EvalContext,
) -> CmdResult {
    no_csv(cli, "forms")?;
    if let Some(form) = named {
        let profile = named_form_invariants(form, n, ctx.prec())?;
        let check = local_global_check(&profile);
        let accepted = check.accepted();
        match cli.format {
            Format::Json => {
                let out = json!({ "form": form.label(), "profile": profile, "check": check });
                outln!("{}", serde_json::to_string_pretty(&out).expect("json"));
            }
            _ => {
                outln!("{} n = {n}", form.label());
                outln!("disc class = {}", profile.disc_class);
                let minus: Vec<String> = profile
                    .hasse_minus_places
                    .iter()
                    .map(|p| p.to_string())
                    .collect();
                outln!("Hasse -1 at = {{{}}}", minus.join(", "));
                outln!("T = {:?}", profile.t);
                outln!(
                    "lambda product >= {}",
                    display_value(&profile.lambda_product_bound)
                );
                match &check {
                    reflbound::forms::CheckOutcome::Accept => outln!("accepted"),
                    reflbound::forms::CheckOutcome::Reject(r) => outln!("rejected: {r}"),
                }
            }
        }
        return Ok(if accepted { 0 } else { EXIT_COMPUTATION });
    }
    let budget = match budget {
        Some(text) => BoundedReal::from_decimal_str(text, ctx.prec())
            .ok_or_else(|| Failure::Usage(format!("budget '{text}' is not a decimal number")))?,
        None => {
            if n < 4 {
                return Err(Failure::Usage(
                    "the default budget needs n >= 4; pass --budget".into(),
                ));
            }
            rational_budget(n, None, ctx)?
        }
    };
    let sets = enumerate_t_sets(n, &budget)?;
    match cli.format {
        Format::Json => {
            let out = json!({
                "n": n,
                "r": rank_parameter(n),
                "parity": Parity::of(n),
                "budget": budget,
                "count": sets.len(),
                "sets": sets,
            });
            outln!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        _ => {
            outln!(
                "n = {n}, r = {}, budget = {}",
                rank_parameter(n),
                display_value(&budget)
            );
            outln!("{} T-sets", sets.len());
            for s in &sets {
                outln!("{s:?}");
            }
        }
    }
    Ok(0)
}

fn cmd_fields_validate(cli: &Cli) -> CmdResult {
    no_csv(cli, "fields validate")?;
    let table = field_table(cli)?;
    table.validate()?;
    let mut degrees: Vec<u32> = table.records().iter().map(|r| r.degree).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let counts: Vec<(u32, usize)> = degrees
        .iter()
        .map(|&d| (d, table.records().iter().filter(|r| r.degree == d).count()))
        .collect();
    match cli.format {
        Format::Json => {
            let out = json!({
                "valid": true,
                "records": table.records().len(),
                "per_degree": counts.iter().map(|(d, c)| json!({"degree": d, "count": c})).collect::<Vec<_>>(),
                "completeness": table.completeness(),
            });
            outln!("{}", serde_json::to_string_pretty(&out).expect("json"));
        }
        _ => {
            outln!("{} records, valid", table.records().len());
            for (d, c) in counts {
                outln!("degree {d}: {c}");
            }
            for c in table.completeness() {
                outln!(
                    "complete: degree {} up to {} ({:?})",
                    c.degree,
                    c.up_to,
                    c.scope
                );
            }
        }
    }
    Ok(0)
}

fn with_newline(s: String) -> String {
    if s.ends_with('\n') {
        s
    } else {
        s + "\n"
    }
}
