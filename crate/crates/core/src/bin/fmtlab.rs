use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use fmtlab::families::{generate, Family};
use fmtlab::hom::{chromatic_number, count_homs, enumerate_homs, find_hom};
use fmtlab::lab::{run_suite, SuiteOptions, SUITE_NAMES};
use fmtlab::logic::{builtin, holds, parse, Formula};
use fmtlab::minor::{find_bottleneck, has_minor, Pattern};
use fmtlab::structure::{parse_structure, write_structure};
use fmtlab::{Constraints, Structure};

const GRAMMAR: &str = "usage:
  fmtlab gen <family:params> [-o FILE]
  fmtlab eval -f FORMULA -s FILE
  fmtlab hom -A FILE -B FILE [--exists|--all|--count] [--require injective|full|strong|embedding]
  fmtlab minor -G FILE -H PATTERN
  fmtlab chrom -G FILE
  fmtlab bottleneck -G FILE -r R -m M
  fmtlab verify SUITE [--size N] [--jobs N]";

#[derive(Parser)]
#[command(name = "fmtlab", version, about = "Finite model theory workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph family member: cycle:n, clique:n, biclique:a,b,
    /// wheel:n, bouquet:n1+n2+..., gn:n, dn:n, an:n, bn:n, cn:n
    Gen {
        family: String,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Evaluate a sentence (built-in name, file or inline text) on a structure
    Eval {
        #[arg(short = 'f')]
        formula: String,
        #[arg(short = 's')]
        structure: PathBuf,
    },
    /// Search homomorphisms A -> B
    Hom(HomArgs),
    /// Minor containment: k4, k5, k33, k23 or a structure file
    Minor {
        #[arg(short = 'G')]
        graph: PathBuf,
        #[arg(short = 'H')]
        pattern: String,
    },
    /// Chromatic number
    Chrom {
        #[arg(short = 'G')]
        graph: PathBuf,
    },
    /// Smallest bottleneck S with an r-scattered set of size m outside it
    Bottleneck {
        #[arg(short = 'G')]
        graph: PathBuf,
        #[arg(short = 'r')]
        r: usize,
        #[arg(short = 'm')]
        m: usize,
    },
    /// Run a verification suite
    Verify {
        suite: String,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args)]
struct HomArgs {
    #[arg(short = 'A')]
    source: PathBuf,
    #[arg(short = 'B')]
    target: PathBuf,
    #[arg(long, conflicts_with_all = ["all", "count"])]
    exists: bool,
    #[arg(long, conflicts_with = "count")]
    all: bool,
    #[arg(long)]
    count: bool,
    #[arg(long, value_enum)]
    require: Option<Require>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Require {
    Injective,
    Full,
    Strong,
    Embedding,
}

/// Bad input: reported with the grammar, exit 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn read_structure(path: &Path) -> Result<Structure, Usage> {
    let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    parse_structure(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

/// Built-in names first, then files, then inline formula text.
fn read_formula(spec: &str) -> Result<Formula, Usage> {
    if let Some(f) = builtin(spec) {
        return Ok(f);
    }
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| Usage(format!("{spec}: {e}")))?;
        return Ok(parse(&text)?);
    }
    if spec.trim_start().starts_with('(') || spec == "true" || spec == "false" {
        return Ok(parse(spec)?);
    }
    Err(Usage(format!("`{spec}` is neither a built-in formula nor a file")))
}

fn show_set<'a>(items: impl IntoIterator<Item = &'a usize>) -> String {
    let parts: Vec<String> = items.into_iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

fn run(cli: Cli) -> Result<ExitCode, Usage> {
    match cli.command {
        Command::Gen { family, output } => {
            let fam: Family = family.parse()?;
            let text = write_structure(&generate(&fam)?);
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Eval { formula, structure } => {
            let f = read_formula(&formula)?;
            let s = read_structure(&structure)?;
            println!("{}", holds(&f, &s)?);
        }
        Command::Hom(args) => {
            let a = read_structure(&args.source)?;
            let b = read_structure(&args.target)?;
            let cons = match args.require {
                None => Constraints::none(),
                Some(Require::Injective) => Constraints::injective(),
                Some(Require::Full) => Constraints::full(),
                Some(Require::Strong) => Constraints { strong: true, ..Constraints::none() },
                Some(Require::Embedding) => Constraints::embedding(),
            };
            if args.count {
                println!("{}", count_homs(&a, &b, &cons)?);
            } else if args.all {
                let homs = enumerate_homs(&a, &b, &cons)?;
                println!("{}", homs.len());
                println!("all-injective: {}", homs.iter().all(|h| h.kind().injective));
                println!("all-strong: {}", homs.iter().all(|h| h.kind().strong));
                println!("all-full: {}", homs.iter().all(|h| h.kind().full));
                for h in &homs {
                    let parts: Vec<String> = h.map().iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
                    println!("{}", parts.join(" "));
                }
            } else {
                match find_hom(&a, &b, &cons)? {
                    Some(h) => {
                        println!("true");
                        let parts: Vec<String> = h.map().iter().enumerate().map(|(x, y)| format!("{x}->{y}")).collect();
                        println!("{}", parts.join(" "));
                    }
                    None => println!("false"),
                }
            }
        }
        Command::Minor { graph, pattern } => {
            let g = read_structure(&graph)?;
            let h = match pattern.parse::<Pattern>() {
                Ok(p) => p.graph(),
                Err(_) if Path::new(&pattern).is_file() => read_structure(Path::new(&pattern))?,
                Err(e) => return Err(e.into()),
            };
            println!("{}", has_minor(&g, &h)?);
        }
        Command::Chrom { graph } => {
            println!("{}", chromatic_number(&read_structure(&graph)?)?);
        }
        Command::Bottleneck { graph, r, m } => {
            let g = read_structure(&graph)?;
            match find_bottleneck(&g, r, m)? {
                Some(b) => {
                    println!("bottleneck: {}", show_set(&b.bottleneck));
                    println!("scattered: {}", show_set(&b.scattered));
                    println!("complete: {}", b.complete);
                }
                None => println!("none"),
            }
        }
        Command::Verify { suite, size, jobs } => {
            if !SUITE_NAMES.contains(&suite.as_str()) {
                return Err(Usage(format!("unknown suite `{suite}`; expected one of: {}", SUITE_NAMES.join(", "))));
            }
            let report = run_suite(&suite, &SuiteOptions { size, jobs })?;
            print!("{report}");
            return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            eprintln!("{GRAMMAR}");
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{GRAMMAR}");
            ExitCode::from(2)
        }
    }
}
