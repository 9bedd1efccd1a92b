use std::process::ExitCode;

use clap::{Parser, Subcommand};
use width3::{
    assemble_split_retraction, build_section, build_segment_table, check_theo32,
    height_width, horizon, is_automorphic_width3, is_crown4_stack, is_nice, is_section,
    is_tower_of_nice_sections, oracle_4crown_stack_retract, run_suite, search_retractive_split,
    to_dot, verify_retraction, Budget, Error, Poset, Retraction, SectionCode,
    SplitSearchOptions,
};

#[derive(Parser)]
#[command(name = "width3", about = "Width-three poset sections: build, classify, and certify crown-stack retracts")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Method {
    Split,
    Oracle,
    Both,
}

#[derive(Subcommand)]
enum Verb {
    /// Print the section of a code as poset JSON.
    Build { code: String },
    /// Print height, width, section/nice flags, horizon and automorphism data of a code's section.
    Classify { code: String },
    /// Print the classification table as TSV.
    Table {
        #[arg(long, default_value_t = 6)]
        max_height: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Decide the 4-crown stack retract question; print a certificate as retraction JSON or "none".
    CheckRetract {
        code: String,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Search a three-segment tower decomposition; print it with its retraction or "none".
    Theo32 {
        code: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the Hasse diagram of a code's section as DOT, optionally with retraction arrows.
    Dot {
        code: String,
        #[arg(long)]
        retraction: Option<String>,
    },
    /// Run a named verification suite, or validate a certificate file against a code.
    Verify {
        #[arg(long)]
        suite: String,
        /// Code a certificate belongs to (certificates suite only).
        code: Option<String>,
        /// Certificate file with retraction JSON (certificates suite only).
        #[arg(long)]
        retraction: Option<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn parse_code(s: &str) -> Result<SectionCode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn budget_of(nodes: Option<u64>) -> Budget {
    match nodes {
        Some(n) => Budget::new(n),
        None => Budget::default(),
    }
}

fn flag(b: bool) -> &'static str {
    if b { "y" } else { "n" }
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.verb {
        Verb::Build { code } => {
            let code = parse_code(&code).map_err(CliError::Usage)?;
            let (p, _) = build_section(&code);
            println!("{}", p.to_json());
        }
        Verb::Classify { code } => {
            let code = parse_code(&code).map_err(CliError::Usage)?;
            let (p, _) = build_section(&code);
            let (h, w) = height_width(&p).map_err(CliError::Internal)?;
            println!("height\t{h}");
            println!("width\t{w}");
            println!("section\t{}", flag(is_section(&p)));
            println!("nice\t{}", flag(is_nice(&p) == Ok(true)));
            match horizon(&p) {
                Ok(eta) => println!("horizon\t{eta}"),
                Err(_) => println!("horizon\t-"),
            }
            println!(
                "automorphic\t{}",
                flag(is_automorphic_width3(&p) == Ok(true))
            );
        }
        Verb::Table { max_height, budget } => {
            let _ = budget_of(budget);
            let table = build_segment_table(max_height, SplitSearchOptions::default())
                .map_err(CliError::Internal)?;
            print!("{}", table.to_tsv());
        }
        Verb::CheckRetract { code, method, budget } => {
            let code = parse_code(&code).map_err(CliError::Usage)?;
            let mut b = budget_of(budget);
            let (p, _) = build_section(&code);
            let split_result = if method != Method::Oracle {
                if !code.is_n2() {
                    return Err(CliError::Usage(
                        "the split method needs a code crowned at both ends".into(),
                    ));
                }
                let table = build_segment_table(code.height(), SplitSearchOptions::default())
                    .map_err(CliError::Internal)?;
                let cert =
                    search_retractive_split(&p, &code, &table, SplitSearchOptions::default(), &mut b)
                        .map_err(CliError::Internal)?;
                Some(match cert {
                    Some(c) => Some(assemble_split_retraction(&p, &c).map_err(CliError::Internal)?),
                    None => None,
                })
            } else {
                None
            };
            let oracle_result = if method != Method::Split {
                Some(oracle_4crown_stack_retract(&p, &mut b).map_err(CliError::Internal)?)
            } else {
                None
            };
            if let (Some(s), Some(o)) = (&split_result, &oracle_result) {
                if s.is_some() != o.is_some() {
                    return Err(CliError::Internal(Error::Condition));
                }
            }
            let witness = split_result.flatten().or(oracle_result.flatten());
            match witness {
                Some(r) => println!("{}", r.to_json()),
                None => println!("none"),
            }
        }
        Verb::Theo32 { code, budget } => {
            let code = parse_code(&code).map_err(CliError::Usage)?;
            if !code.is_n2() {
                return Err(CliError::Usage(
                    "the decomposition search needs a code crowned at both ends".into(),
                ));
            }
            let mut b = budget_of(budget);
            let (p, _) = build_section(&code);
            match check_theo32(&p, &code, &mut b).map_err(CliError::Internal)? {
                Some(d) => {
                    println!(
                        "cut\th_u={} h_v={} h_w={} dual={}",
                        d.h_u,
                        d.h_v,
                        code.height() - d.h_u - d.h_v,
                        flag(d.dual)
                    );
                    println!("{}", d.retraction.to_json());
                }
                None => println!("none"),
            }
        }
        Verb::Dot { code, retraction } => {
            let code = parse_code(&code).map_err(CliError::Usage)?;
            let (p, _) = build_section(&code);
            let r = match retraction {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
                    Some(load_retraction(&p, &text)?)
                }
                None => None,
            };
            print!("{}", to_dot(&p, r.as_ref()));
        }
        Verb::Verify { suite, code, retraction, budget } => {
            let mut b = budget_of(budget);
            if suite == "certificates" {
                let (Some(code), Some(path)) = (code, retraction) else {
                    return Err(CliError::Usage(
                        "the certificates suite needs a code and --retraction <file>".into(),
                    ));
                };
                let code = parse_code(&code).map_err(CliError::Usage)?;
                let (p, _) = build_section(&code);
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
                let r = load_retraction(&p, &text)?;
                let valid = verify_retraction(&p, &r).is_ok()
                    && (is_crown4_stack(&p, r.image) || is_tower_of_nice_sections(&p, r.image));
                println!(
                    "{}: certificate for {code} {}",
                    if valid { "pass" } else { "fail" },
                    if valid { "re-validates" } else { "is invalid" }
                );
                if !valid {
                    return Err(CliError::Failed);
                }
            } else {
                let results = run_suite(&suite, &mut b).map_err(|e| match e {
                    Error::BadCode(msg) => CliError::Usage(msg),
                    other => CliError::Internal(other),
                })?;
                let mut all_pass = true;
                for r in &results {
                    println!("{}: {} ({})", if r.pass { "pass" } else { "fail" }, r.name, r.detail);
                    all_pass &= r.pass;
                }
                if !all_pass {
                    return Err(CliError::Failed);
                }
            }
        }
    }
    Ok(())
}

fn load_retraction(p: &Poset, text: &str) -> Result<Retraction, CliError> {
    Retraction::from_json(text, p).map_err(|e| CliError::Usage(e.to_string()))
}

enum CliError {
    Usage(String),
    Failed,
    Internal(Error),
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Failed) => ExitCode::from(1),
        Err(CliError::Internal(Error::BudgetExceeded)) => {
            eprintln!("error: search budget exceeded");
            ExitCode::from(2)
        }
        Err(CliError::Internal(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
