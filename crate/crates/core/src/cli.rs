//! The `csl` command line.
//!
//! Exit codes: 0 for pass / true / no countermodel, 1 for fail / false /
//! countermodel found, 2 for usage, parse and validation errors. Reports
//! are `key: value` lines on stdout; diagnostics go to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::contact::{check, check_d1plus, Axiom, AxiomReport, ContactSemilattice};
use crate::error::{Error, Result};
use crate::fixtures::load_fixture;
use crate::logic::{
    describe_assignment, enumerate_structures, eval, parse_sentence, refute_with,
    CountermodelResult, Filter, SearchOptions, Theory,
};
use crate::representation::{overlap_embed, weak_embed};
use crate::structure_file::{load_structure, print_structure};

#[derive(Debug, Parser)]
#[command(name = "csl", version, about = "Weak contact join-semilattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Overlap,
    Weak,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Load a structure file and report its shape.
    Validate { file: PathBuf },
    /// Check contact axioms.
    Axioms {
        file: PathBuf,
        /// Comma-separated axioms: sym, emp, ext, ref, add, d1, d1plus, d2.
        #[arg(long, value_delimiter = ',', default_values_t = Axiom::ALL)]
        axioms: Vec<Axiom>,
        /// Largest number of pairs tried by the d1plus check.
        #[arg(long, default_value_t = 3)]
        d1plus_max: usize,
    },
    /// Embed into a powerset algebra and print a certificate.
    Embed {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Overlap)]
        mode: Mode,
        /// Drop the top element from the base.
        #[arg(long)]
        bounded: bool,
        /// Write the certificate here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Evaluate a universal sentence.
    Eval {
        file: PathBuf,
        #[arg(long)]
        sentence: String,
    },
    /// Search for a finite countermodel to a universal sentence.
    Refute {
        #[arg(long)]
        sentence: String,
        #[arg(long, default_value = "d1")]
        theory: Theory,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long)]
        prune_iso: bool,
    },
    /// List weak contact semilattices up to a size.
    Enumerate {
        #[arg(long)]
        max_size: usize,
        /// Comma-separated filters: weak, add, d1, d2.
        #[arg(long, value_delimiter = ',')]
        filter: Vec<Filter>,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        prune_iso: bool,
    },
    /// Print a built-in example structure.
    Fixture {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::new(0, text)
            };
        }
    };
    match execute(cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn write_or_print(output: &Option<PathBuf>, text: &str, out: &mut String) -> Result<()> {
    match output {
        Some(path) => {
            std::fs::write(path, text)?;
            let _ = writeln!(out, "written: {}", path.display());
        }
        None => out.push_str(text),
    }
    Ok(())
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { file } => {
            let cs = load_structure(&file)?;
            Ok(Outcome::new(0, validate_report(&cs)))
        }
        Command::Axioms {
            file,
            axioms,
            d1plus_max,
        } => {
            let cs = load_structure(&file)?;
            let reports: Vec<AxiomReport> = axioms
                .iter()
                .map(|&a| match a {
                    Axiom::D1Plus => check_d1plus(&cs, d1plus_max),
                    other => check(&cs, other),
                })
                .collect();
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "{}", r.describe(cs.lattice()));
            }
            Ok(Outcome::new(code(reports.iter().all(AxiomReport::passed)), out))
        }
        Command::Embed {
            file,
            mode,
            bounded,
            output,
        } => {
            let cs = load_structure(&file)?;
            let attempt = match mode {
                Mode::Overlap => overlap_embed(&cs, bounded),
                Mode::Weak => weak_embed(&cs, bounded),
            };
            let witness = match attempt {
                Ok(w) => w,
                Err(Error::PreconditionFailed(report)) => {
                    let out = format!(
                        "precondition: {}\nverified: no\n",
                        report.describe(cs.lattice())
                    );
                    return Ok(Outcome::new(1, out));
                }
                Err(e) => return Err(e),
            };
            let mut out = String::new();
            let certificate = witness.certificate();
            write_or_print(&output, &certificate, &mut out)?;
            let verified = witness.report.verified();
            if output.is_some() {
                let _ = writeln!(out, "verified: {}", if verified { "yes" } else { "no" });
            }
            Ok(Outcome::new(code(verified), out))
        }
        Command::Eval { file, sentence } => {
            let cs = load_structure(&file)?;
            let sentence = parse_sentence(&sentence)?;
            let result = eval(&sentence, &cs);
            let mut out = format!("holds: {}\n", result.holds());
            if let Some(a) = &result.falsifying {
                let _ = writeln!(out, "assignment: {}", describe_assignment(&sentence, &cs, a));
            }
            Ok(Outcome::new(code(result.holds()), out))
        }
        Command::Refute {
            sentence,
            theory,
            max_size,
            prune_iso,
        } => {
            let sentence = parse_sentence(&sentence)?;
            let options = SearchOptions {
                prune_iso,
                ..SearchOptions::default()
            };
            let mut out = String::new();
            match refute_with(&sentence, theory, max_size, options)? {
                CountermodelResult::Found {
                    structure,
                    assignment,
                    structures_checked,
                } => {
                    let _ = writeln!(out, "result: countermodel");
                    let _ = writeln!(out, "theory: {theory}");
                    let _ = writeln!(out, "size: {}", structure.size());
                    let _ = writeln!(out, "structures checked: {structures_checked}");
                    let _ = writeln!(
                        out,
                        "assignment: {}",
                        describe_assignment(&sentence, &structure, &assignment)
                    );
                    out.push_str(&print_structure(&structure));
                    Ok(Outcome::new(1, out))
                }
                CountermodelResult::NoneUpTo {
                    bound,
                    structures_checked,
                } => {
                    let _ = writeln!(out, "result: none up to size {bound}");
                    let _ = writeln!(out, "theory: {theory}");
                    let _ = writeln!(out, "structures checked: {structures_checked}");
                    Ok(Outcome::new(0, out))
                }
            }
        }
        Command::Enumerate {
            max_size,
            filter,
            count_only,
            prune_iso,
        } => {
            let mut out = String::new();
            let mut count = 0;
            for cs in enumerate_structures(max_size, &filter, prune_iso)? {
                count += 1;
                if !count_only {
                    let _ = writeln!(out, "# structure {count}");
                    out.push_str(&print_structure(&cs));
                }
            }
            let _ = writeln!(out, "count: {count}");
            Ok(Outcome::new(0, out))
        }
        Command::Fixture { name, output } => {
            let f = load_fixture(&name)?;
            let mut text = format!("# fixture {}\n", f.name);
            for note in &f.notes {
                let _ = writeln!(text, "# note: {note}");
            }
            text.push_str(&print_structure(&f.structure));
            let mut out = String::new();
            write_or_print(&output, &text, &mut out)?;
            Ok(Outcome::new(0, out))
        }
    }
}

fn validate_report(cs: &ContactSemilattice) -> String {
    let s = cs.lattice();
    let mut out = String::new();
    let _ = writeln!(out, "elements: {}", s.size());
    let _ = writeln!(out, "zero: {}", s.name(s.zero()));
    let _ = writeln!(out, "top: {}", s.name(s.top()));
    let distributive = match s.is_distributive() {
        crate::order::Distributivity::Holds => "yes".to_string(),
        crate::order::Distributivity::Fails(a, b, c) => {
            format!("no ({},{},{})", s.name(a), s.name(b), s.name(c))
        }
    };
    let _ = writeln!(out, "distributive: {distributive}");
    if cs.is_overlap() {
        let _ = writeln!(out, "contact: overlap");
    } else {
        let _ = writeln!(out, "contact: {} pairs", cs.contact().pairs().len());
    }
    let _ = writeln!(out, "valid: yes");
    out
}
