use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sct_core::cache::{enumerate_cached, env_cache_dir};
use sct_core::constructions::{
    direct_product, from_automorphisms, inversion_theory, max_theory, min_theory, star_product,
};
use sct_core::cyclic::{Subgroup, UnitSubgroup};
use sct_core::enumerate::{Budget, TheorySet};
use sct_core::lattice::{build_lattice, Lattice, Property};
use sct_core::partition::MAX_N;
use sct_core::verify::{render_json, render_text, verify_all, Workbench};
use sct_core::{SCTheory, SctError};

const EXIT_FAILED_CLAIM: u8 = 1;
const EXIT_RESOURCE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_IO: u8 = 74;
const EXIT_INTERNAL: u8 = 70;

/// Supercharacter theories of cyclic groups.
#[derive(Parser)]
#[command(name = "sct", version)]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Directory caching enumerations; overrides $SCT_CACHE.
    #[arg(long, global = true, value_name = "DIR")]
    cache: Option<PathBuf>,
    /// Abort an enumeration after this many search nodes.
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    /// Abort an enumeration after this many seconds.
    #[arg(long, global = true, value_name = "SECS")]
    time_limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every theory of Z_n.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Build one theory from a named construction.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(subcommand)]
        how: Construction,
    },
    /// Test a semimodularity property of Sup(Z_n).
    Check {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        property: PropertyArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the Hasse diagram of Sup(Z_n) in DOT; `-` for standard output.
    Hasse {
        #[arg(long)]
        n: u32,
        #[arg(long, value_name = "PATH")]
        dot: PathBuf,
    },
    /// Run the full claim suite for 2 <= n <= max-n.
    VerifyPaper {
        #[arg(long, default_value_t = 30)]
        max_n: u32,
        /// Write the report here instead of standard output.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Orbits of the unit subgroup generated by `--gens`.
    Aut {
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<u32>,
    },
    /// `inner * outer` over the subgroup of order `--subgroup`.
    Star(StarArgs),
    /// Direct product of theories of coprime orders.
    Direct {
        #[arg(long, value_name = "FILE")]
        a: PathBuf,
        #[arg(long, value_name = "FILE")]
        b: PathBuf,
    },
    Inversion,
    Min,
    Max,
}

#[derive(Args)]
struct StarArgs {
    #[arg(long)]
    subgroup: u32,
    #[arg(long, value_name = "FILE")]
    inner: PathBuf,
    #[arg(long, value_name = "FILE")]
    outer: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    Usm,
    Lsm,
    Modular,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Usm => Property::Upper,
            PropertyArg::Lsm => Property::Lower,
            PropertyArg::Modular => Property::Modular,
        }
    }
}

enum Failure {
    Core(SctError),
    Io(String),
    Usage(String),
    ClaimsFailed(usize),
}

impl From<SctError> for Failure {
    fn from(e: SctError) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::ClaimsFailed(_) => EXIT_FAILED_CLAIM,
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Io(_) => EXIT_IO,
            Failure::Core(e) => match e {
                SctError::ResourceLimit { .. } => EXIT_RESOURCE,
                SctError::InternalInconsistency(_) | SctError::IncompleteSet { .. } => {
                    EXIT_INTERNAL
                }
                SctError::Cache(_) => EXIT_IO,
                _ => EXIT_USAGE,
            },
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Io(m) | Failure::Usage(m) => m.clone(),
            Failure::ClaimsFailed(k) => format!("{k} claim(s) failed"),
        }
    }
}

type Outcome = Result<(), Failure>;

struct Context {
    cache: Option<PathBuf>,
    budget: Option<Budget>,
}

impl Context {
    fn check_n(n: u32) -> Result<(), Failure> {
        if n == 0 {
            return Err(Failure::Usage("--n must be at least 1".into()));
        }
        if n > MAX_N {
            return Err(SctError::TooLarge { n, max: MAX_N }.into());
        }
        Ok(())
    }

    fn theories(&self, n: u32) -> Result<TheorySet, Failure> {
        Self::check_n(n)?;
        Ok(enumerate_cached(n, self.budget, self.cache.as_deref())?)
    }

    fn lattice(&self, n: u32) -> Result<Lattice, Failure> {
        Ok(build_lattice(self.theories(n)?)?)
    }
}

fn read_theory(path: &Path) -> Result<SCTheory, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Outcome {
    if path == Path::new("-") {
        print!("{text}");
        return Ok(());
    }
    fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn theory_json(t: &SCTheory) -> String {
    serde_json::to_string(t).expect("theory serializes")
}

fn enumerate(ctx: &Context, n: u32, format: Format) -> Outcome {
    let set = ctx.theories(n)?;
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(set.theories()).expect("theories serialize")
        ),
        Format::Text => {
            for (i, t) in set.theories().iter().enumerate() {
                println!("{i}: {t}");
            }
        }
    }
    Ok(())
}

fn construct(n: u32, format: Format, how: &Construction) -> Outcome {
    Context::check_n(n)?;
    let t = match how {
        Construction::Aut { gens } => from_automorphisms(n, &UnitSubgroup::generated(n, gens)?)?,
        Construction::Star(args) => {
            let sub = Subgroup::of_order(n, args.subgroup)?;
            star_product(
                n,
                &sub,
                &read_theory(&args.inner)?,
                &read_theory(&args.outer)?,
            )?
        }
        Construction::Direct { a, b } => {
            let (a, b) = (read_theory(a)?, read_theory(b)?);
            if a.n() * b.n() != n {
                return Err(SctError::IncompatibleGroups {
                    left: n,
                    right: a.n() * b.n(),
                }
                .into());
            }
            direct_product(&a, &b)?
        }
        Construction::Inversion => inversion_theory(n),
        Construction::Min => min_theory(n),
        Construction::Max => max_theory(n),
    };
    match format {
        Format::Json => println!("{}", theory_json(&t)),
        Format::Text => println!("{t}"),
    }
    Ok(())
}

fn check(ctx: &Context, n: u32, property: PropertyArg, format: Format) -> Outcome {
    let l = ctx.lattice(n)?;
    let report = l.check_semimodularity(property.into());
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        ),
        Format::Text => {
            println!("{}", report.holds);
            if let Some(w) = report.witness {
                println!("witness: {} {}", w.a, w.b);
                for (name, id) in [("a", w.a), ("b", w.b), ("meet", w.meet), ("join", w.join)] {
                    println!("  {name} = {id}: {}", l.theory(id));
                }
            }
        }
    }
    Ok(())
}

fn hasse(ctx: &Context, n: u32, dot: &Path) -> Outcome {
    write_out(dot, &ctx.lattice(n)?.to_dot())
}

fn verify_paper(ctx: &Context, max_n: u32, report: Option<&Path>, format: Format) -> Outcome {
    Context::check_n(max_n)?;
    let wb = Workbench::new()
        .with_cache_dir(ctx.cache.clone())
        .with_budget(ctx.budget);
    let results = verify_all(&wb, max_n)?;
    let text = match format {
        Format::Json => render_json(&results),
        Format::Text => render_text(&results),
    };
    match report {
        Some(path) => write_out(path, &text)?,
        None => print!("{text}"),
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    if failed > 0 {
        return Err(Failure::ClaimsFailed(failed));
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let budget = (cli.max_nodes.is_some() || cli.time_limit.is_some()).then(|| Budget {
        max_nodes: cli.max_nodes,
        time_limit: cli.time_limit.map(Duration::from_secs),
    });
    let ctx = Context {
        cache: cli.cache.or_else(env_cache_dir),
        budget,
    };
    match &cli.command {
        Command::Enumerate { n, format } => enumerate(&ctx, *n, *format),
        Command::Construct { n, format, how } => construct(*n, *format, how),
        Command::Check {
            n,
            property,
            format,
        } => check(&ctx, *n, *property, *format),
        Command::Hasse { n, dot } => hasse(&ctx, *n, dot),
        Command::VerifyPaper {
            max_n,
            report,
            format,
        } => verify_paper(&ctx, *max_n, report.as_deref(), *format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("sct: --jobs must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .expect("global pool is configured once");
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("sct: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
